#pragma once

#include "ahcert/cohomology.hpp"
#include "ahcert/schedule.hpp"
#include "ahcert/system.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

namespace ahcert {

struct InequalityLine {
  std::string name;
  Rat lhs;
  std::string op;  // "<" or "<=" rendered for the transcript
  Rat rhs;
  bool holds = false;
};

struct ObstructionEntry {
  int m = 0;
  Int bundle_rank;   // s(m): rank of the line-bundle part at stage m
  Int witness_rank;  // M * r(m) / r(n): rank of the pushed trivial witness
  bool divisible = false;
  bool rank_below_double = false;  // witness_rank < 2 s(m)
  bool obstructed = false;         // embeds_in_trivial verdict
};

/// Replayable transcript of the comparison-failure witness pair: a trace gap
/// that exceeds rho while a characteristic-class obstruction blocks the
/// embedding at every later stage. Every stored line re-evaluates exactly.
struct ComparisonCertificate {
  Rat rho;
  Rat kappa_lo;
  int kappa_stage_used = 0;
  int stage_n = 0;  // minimal stage with 1/r(n) < 2 kappa_lo - 1 - rho
  Int rank_M;       // minimal integer with rho + 1 < M/r(n) < 2 kappa_lo
  std::vector<InequalityLine> inequalities;
  std::vector<ObstructionEntry> obstructions;  // m = n+1 .. n+check_depth
  InequalityLine universal;                    // M/r(n) < 2 kappa_lo covers every m
  Schedule schedule;                           // echo for integrity checks
};

/// Builds the certificate. Requires a certified kappa interval and
/// rho < 2*kappa_lo - 1; the M-window then has length > 1/r(n) and must
/// contain an integer (asserted).
ComparisonCertificate certify(const Rat& rho, const Sequences& seq, const KappaInterval& kappa,
                              int check_depth = 6);

struct ReplayLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ReplayReport {
  std::vector<ReplayLine> lines;
  bool ok() const;
};

/// Re-verifies everything from scratch: the schedule echo, the kappa lower
/// bound, minimality of (n, M), every inequality, divisibility and the
/// obstruction for each checked m, the trace gap recomputed through the
/// class-propagation machinery (explicit paths where tractable, the
/// closed-form route beyond), and the universal bound. Any failed line names
/// itself.
ReplayReport replay(const ComparisonCertificate& cert, const Sequences& seq, int check_depth);

/// M/r(n) - trace(b_m) = M/r(n) - 1, exact; requires m >= cert.stage_n.
Rat trace_gap(const ComparisonCertificate& cert, int m);

nlohmann::json certificate_to_json(const ComparisonCertificate& cert);
ComparisonCertificate certificate_from_json(const nlohmann::json& j);

}  // namespace ahcert
