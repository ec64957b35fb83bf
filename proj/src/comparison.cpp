#include "ahcert/comparison.hpp"

#include "ahcert/json_io.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>

namespace ahcert {

namespace {

Int floor_rat(const Rat& q) {
  Int num = numerator(q), den = denominator(q);
  Int quot = num / den;
  if (num < 0 && quot * den != num) --quot;  // round toward -infinity
  return quot;
}

int minimal_stage(const Rat& gap, const Sequences& seq) {
  for (int n = 1; n <= seq.cap(); ++n) {
    if (Rat(1, seq.r(n)) < gap) return n;
  }
  throw std::invalid_argument("no stage with 1/r(n) < " + rat_to_string(gap) +
                              " within cap " + std::to_string(seq.cap()) +
                              "; raise the stage cap");
}

Int minimal_rank(const Rat& rho, const Sequences& seq, int n, const Rat& two_kappa_lo) {
  // smallest integer strictly above r(n) * (rho + 1)
  const Int M = floor_rat(Rat(seq.r(n)) * (rho + 1)) + 1;
  if (!(Rat(M, seq.r(n)) < two_kappa_lo)) {
    // impossible once 1/r(n) < 2 kappa_lo - 1 - rho: the open window is wider than 1/r(n)
    throw std::logic_error("no integer in the open window (" +
                           rat_to_string(Rat(seq.r(n)) * (rho + 1)) + ", " +
                           rat_to_string(Rat(seq.r(n)) * two_kappa_lo) + ")");
  }
  return M;
}

InequalityLine make_line(std::string name, Rat lhs, Rat rhs) {
  InequalityLine line;
  line.name = std::move(name);
  line.lhs = std::move(lhs);
  line.op = "<";
  line.rhs = std::move(rhs);
  line.holds = line.lhs < line.rhs;
  return line;
}

ObstructionEntry make_obstruction(const Sequences& seq, int n, const Int& M, int m) {
  ObstructionEntry e;
  e.m = m;
  e.bundle_rank = seq.s(m);
  const Int numerator = M * seq.r(m);
  e.divisible = numerator % seq.r(n) == 0;
  e.witness_rank = numerator / seq.r(n);
  e.rank_below_double = e.witness_rank < 2 * seq.s(m);
  e.obstructed = embeds_in_trivial(seq.s(m), e.witness_rank).obstructed;
  return e;
}

std::vector<InequalityLine> canonical_lines(const Rat& rho, const Rat& kappa_lo,
                                            const Sequences& seq, int n, const Int& M) {
  const Rat two_kappa = 2 * kappa_lo;
  const Rat ratio_M(M, seq.r(n));
  std::vector<InequalityLine> lines;
  lines.push_back(make_line("stage-choice", Rat(1, seq.r(n)), two_kappa - 1 - rho));
  lines.push_back(make_line("window-lower", rho + 1, ratio_M));
  lines.push_back(make_line("window-upper", ratio_M, two_kappa));
  lines.push_back(make_line("trace-gap", rho, ratio_M - 1));
  return lines;
}

}  // namespace

ComparisonCertificate certify(const Rat& rho, const Sequences& seq, const KappaInterval& kappa,
                              int check_depth) {
  if (!kappa.certified) {
    throw std::invalid_argument(
        "certify requires a certified kappa interval (geometric schedule)");
  }
  if (rho < 0) throw std::invalid_argument("rho must be >= 0");
  if (check_depth < 0) throw std::invalid_argument("check_depth must be >= 0");
  const Rat two_kappa = 2 * kappa.lo;
  if (!(rho < two_kappa - 1)) {
    throw std::invalid_argument("rho = " + rat_to_string(rho) +
                                " is outside the certifiable regime rho < 2*kappa_lo - 1 = " +
                                rat_to_string(two_kappa - 1) +
                                "; raise kappa's stage_used or lower rho");
  }

  ComparisonCertificate cert;
  cert.rho = rho;
  cert.kappa_lo = kappa.lo;
  cert.kappa_stage_used = kappa.stage_used;
  cert.schedule = seq.schedule();
  cert.stage_n = minimal_stage(two_kappa - 1 - rho, seq);
  cert.rank_M = minimal_rank(rho, seq, cert.stage_n, two_kappa);
  cert.inequalities = canonical_lines(rho, kappa.lo, seq, cert.stage_n, cert.rank_M);
  cert.universal =
      make_line("universal", Rat(cert.rank_M, seq.r(cert.stage_n)), two_kappa);

  if (cert.stage_n + check_depth > seq.cap()) {
    throw std::invalid_argument("check_depth " + std::to_string(check_depth) +
                                " reaches stage " + std::to_string(cert.stage_n + check_depth) +
                                " beyond cap " + std::to_string(seq.cap()));
  }
  for (int m = cert.stage_n + 1; m <= cert.stage_n + check_depth; ++m) {
    cert.obstructions.push_back(make_obstruction(seq, cert.stage_n, cert.rank_M, m));
  }
  return cert;
}

bool ReplayReport::ok() const {
  for (const auto& line : lines) {
    if (!line.pass) return false;
  }
  return true;
}

namespace {

// explicit-path budget for the trace cross-checks; beyond it the closed-form
// uniform-class route carries the check alone
constexpr std::int64_t kTraceLevelBudget = 200'000;
constexpr std::int64_t kTraceClassBudget = 4'000'000;

bool schedules_equal(const Schedule& a, const Schedule& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == Schedule::Kind::Geometric) return a.coeff == b.coeff && a.base == b.base;
  return a.prefix == b.prefix;
}

bool lines_equal(const InequalityLine& a, const InequalityLine& b) {
  return a.name == b.name && a.lhs == b.lhs && a.op == b.op && a.rhs == b.rhs &&
         a.holds == b.holds;
}

// iterated single-level pushes; refuses when any level exceeds the budget
std::optional<Rat> explicit_pushed_trace(const ProjectionClass& start, const Sequences& seq,
                                         int to_stage) {
  ProjectionClass cur = start;
  for (int level = start.stage + 1; level <= to_stage; ++level) {
    if (seq.l(level) > kTraceLevelBudget) return std::nullopt;
    Int atoms = 0;
    for (const auto& comp : cur.components) atoms += Int(comp.lines.size()) + 1;
    if (atoms * seq.l(level) > kTraceClassBudget) return std::nullopt;
    cur = push_class(cur, connecting_map(seq, level - 1, kTraceLevelBudget), seq);
  }
  return trace_of_class(cur, seq);
}

}  // namespace

ReplayReport replay(const ComparisonCertificate& cert, const Sequences& seq, int check_depth) {
  if (check_depth < 0) throw std::invalid_argument("check_depth must be >= 0");
  ReplayReport rep;
  auto line = [&rep](std::string name, bool pass, std::string detail = "") {
    rep.lines.push_back(ReplayLine{std::move(name), pass, std::move(detail)});
  };

  // the certificate must describe the sequences it is replayed against
  const bool schedule_ok = schedules_equal(cert.schedule, seq.schedule());
  line("schedule-echo", schedule_ok,
       schedule_ok ? "" : "certificate schedule differs from the supplied sequences");
  if (!schedule_ok) return rep;

  // kappa_lo must be exactly the certified lower bound for the echoed stage
  bool kappa_ok = false;
  std::string kappa_detail;
  Rat kappa_lo_recomputed;
  try {
    const KappaInterval k = kappa_interval(cert.schedule, cert.kappa_stage_used);
    kappa_lo_recomputed = k.lo;
    kappa_ok = k.certified && k.lo == cert.kappa_lo;
    if (!kappa_ok) {
      kappa_detail = "stored kappa_lo " + rat_to_string(cert.kappa_lo) +
                     " != recomputed " + rat_to_string(k.lo);
    }
  } catch (const std::exception& e) {
    kappa_detail = e.what();
  }
  line("kappa-lower-bound", kappa_ok, kappa_detail);
  if (!kappa_ok) return rep;

  const Rat two_kappa = 2 * cert.kappa_lo;
  const bool regime = cert.rho >= 0 && cert.rho < two_kappa - 1;
  line("certifiable-regime", regime,
       regime ? "" : "rho outside [0, 2*kappa_lo - 1)");
  if (!regime) return rep;

  // minimality of the stored choices; later lines still replay the stored
  // values so a tamper is named everywhere it bites
  if (cert.stage_n < 1 || cert.stage_n > seq.cap()) {
    line("minimal-stage", false, "stored stage out of range");
    return rep;
  }
  {
    const int n_min = minimal_stage(two_kappa - 1 - cert.rho, seq);
    line("minimal-stage", n_min == cert.stage_n,
         n_min == cert.stage_n ? "" : "recomputed n = " + std::to_string(n_min) +
                                          ", certificate stores " + std::to_string(cert.stage_n));
  }
  {
    const Int m_min = floor_rat(Rat(seq.r(cert.stage_n)) * (cert.rho + 1)) + 1;
    line("minimal-rank", m_min == cert.rank_M,
         m_min == cert.rank_M ? "" : "recomputed M = " + m_min.str() + ", certificate stores " +
                                         cert.rank_M.str());
  }

  const int n = cert.stage_n;
  const Int& M = cert.rank_M;

  // every stored inequality line must match the canonical recomputation and hold
  {
    const auto canonical = canonical_lines(cert.rho, cert.kappa_lo, seq, n, M);
    bool all = cert.inequalities.size() == canonical.size();
    std::string detail;
    for (std::size_t i = 0; all && i < canonical.size(); ++i) {
      if (!lines_equal(cert.inequalities[i], canonical[i]) || !canonical[i].holds) {
        all = false;
        detail = "line '" + canonical[i].name + "' tampered or violated: expected " +
                 rat_to_string(canonical[i].lhs) + " " + canonical[i].op + " " +
                 rat_to_string(canonical[i].rhs);
      }
    }
    if (!all && detail.empty()) detail = "stored line count differs from the canonical four";
    line("inequalities", all, detail);
  }

  {
    const InequalityLine expect =
        make_line("universal", Rat(M, seq.r(n)), two_kappa);
    const bool pass = lines_equal(cert.universal, expect) && expect.holds;
    line("universal", pass,
         pass ? "M/r(n) < 2*kappa_lo <= 2*s(m)/r(m) for every m"
              : "universal-argument line fails: " + rat_to_string(Rat(M, seq.r(n))) +
                    " vs 2*kappa_lo = " + rat_to_string(two_kappa));
  }

  if (n + check_depth > seq.cap()) {
    line("depth-within-cap", false,
         "check_depth reaches stage " + std::to_string(n + check_depth) + " beyond cap");
    return rep;
  }

  for (int m = n + 1; m <= n + check_depth; ++m) {
    const ObstructionEntry fresh = make_obstruction(seq, n, M, m);
    // kappa_lo really is a lower bound for this stage's ratio
    const bool covers = cert.kappa_lo <= seq.ratio(m);
    bool entry_ok = fresh.divisible && fresh.rank_below_double && fresh.obstructed && covers;
    std::string detail = "rank " + fresh.witness_rank.str() + " < 2 s(m) = " +
                         Int(2 * fresh.bundle_rank).str();
    // stored entries, when present for this m, must agree exactly
    for (const ObstructionEntry& stored : cert.obstructions) {
      if (stored.m != m) continue;
      if (stored.bundle_rank != fresh.bundle_rank || stored.witness_rank != fresh.witness_rank ||
          stored.divisible != fresh.divisible ||
          stored.rank_below_double != fresh.rank_below_double ||
          stored.obstructed != fresh.obstructed) {
        entry_ok = false;
        detail = "stored obstruction entry tampered";
      }
    }
    line("obstruction:m=" + std::to_string(m), entry_ok, detail);

    // trace side, recomputed through the propagation machinery
    const Rat expect_e(M, seq.r(n));
    const UniformClassSummary pushed_e =
        push_summary(UniformClassSummary{n, 0, M}, seq, m);
    const UniformClassSummary pushed_b =
        push_summary(UniformClassSummary{0, 1, 0}, seq, m);
    bool trace_ok = trace_of_summary(pushed_e, seq) == expect_e &&
                    trace_of_summary(pushed_b, seq) == 1;
    std::string route = "closed-form";
    if (trace_ok) {
      if (auto te = explicit_pushed_trace(trivial_class(n, M), seq, m)) {
        trace_ok = *te == expect_e;
        route += "+explicit(e)";
      }
      if (trace_ok) {
        if (auto tb = explicit_pushed_trace(bott_class(), seq, m)) {
          trace_ok = *tb == 1;
          route += "+explicit(b)";
        }
      }
    }
    const Rat gap = expect_e - 1;
    const bool gap_ok = gap > cert.rho;
    line("trace:m=" + std::to_string(m), trace_ok && gap_ok,
         "tau(Gamma(e)) = " + rat_to_string(expect_e) + ", tau(b_m) = 1, gap " +
             rat_to_string(gap) + " > rho via " + route);
  }

  return rep;
}

Rat trace_gap(const ComparisonCertificate& cert, int m) {
  if (m < cert.stage_n) {
    throw std::invalid_argument("trace_gap: m = " + std::to_string(m) +
                                " below certificate stage " + std::to_string(cert.stage_n));
  }
  Sequences seq(cert.schedule, cert.stage_n);
  return Rat(cert.rank_M, seq.r(cert.stage_n)) - 1;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace {

nlohmann::json line_to_json(const InequalityLine& line) {
  nlohmann::json j;
  j["name"] = line.name;
  j["lhs"] = rat_json(line.lhs);
  j["op"] = line.op;
  j["rhs"] = rat_json(line.rhs);
  j["holds"] = line.holds;
  return j;
}

InequalityLine line_from_json(const nlohmann::json& j) {
  InequalityLine line;
  line.name = j.at("name").get<std::string>();
  line.lhs = rat_from_json(j.at("lhs"));
  line.op = j.at("op").get<std::string>();
  line.rhs = rat_from_json(j.at("rhs"));
  line.holds = j.at("holds").get<bool>();
  return line;
}

}  // namespace

nlohmann::json certificate_to_json(const ComparisonCertificate& cert) {
  nlohmann::json j;
  j["schema"] = "comparison-certificate/1";
  j["schedule"] = schedule_to_json(cert.schedule);
  j["kappa"] = {{"lo", rat_json(cert.kappa_lo)}, {"stage_used", cert.kappa_stage_used}};
  j["rho"] = rat_json(cert.rho);
  j["stage_n"] = cert.stage_n;
  j["rank_M"] = int_json(cert.rank_M);
  nlohmann::json lines = nlohmann::json::array();
  for (const auto& line : cert.inequalities) lines.push_back(line_to_json(line));
  j["inequalities"] = lines;
  j["universal"] = line_to_json(cert.universal);
  nlohmann::json obs = nlohmann::json::array();
  for (const auto& e : cert.obstructions) {
    obs.push_back({{"m", e.m},
                   {"bundle_rank", int_json(e.bundle_rank)},
                   {"witness_rank", int_json(e.witness_rank)},
                   {"divisible", e.divisible},
                   {"rank_below_double", e.rank_below_double},
                   {"obstructed", e.obstructed}});
  }
  j["obstructions"] = obs;
  return j;
}

ComparisonCertificate certificate_from_json(const nlohmann::json& j) {
  if (j.at("schema").get<std::string>() != "comparison-certificate/1") {
    throw std::invalid_argument("unknown certificate schema");
  }
  ComparisonCertificate cert;
  cert.schedule = schedule_from_json(j.at("schedule"));
  cert.kappa_lo = rat_from_json(j.at("kappa").at("lo"));
  cert.kappa_stage_used = j.at("kappa").at("stage_used").get<int>();
  cert.rho = rat_from_json(j.at("rho"));
  cert.stage_n = j.at("stage_n").get<int>();
  cert.rank_M = int_from_json(j.at("rank_M"));
  for (const auto& l : j.at("inequalities")) cert.inequalities.push_back(line_from_json(l));
  cert.universal = line_from_json(j.at("universal"));
  for (const auto& o : j.at("obstructions")) {
    ObstructionEntry e;
    e.m = o.at("m").get<int>();
    e.bundle_rank = int_from_json(o.at("bundle_rank"));
    e.witness_rank = int_from_json(o.at("witness_rank"));
    e.divisible = o.at("divisible").get<bool>();
    e.rank_below_double = o.at("rank_below_double").get<bool>();
    e.obstructed = o.at("obstructed").get<bool>();
    cert.obstructions.push_back(std::move(e));
  }
  return cert;
}

}  // namespace ahcert
