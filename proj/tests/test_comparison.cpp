#include "ahcert/comparison.hpp"

#include "ahcert/json_io.hpp"
#include "oracles.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

using namespace ahcert;

namespace {

Schedule ten() { return Schedule::geometric(1, 10); }

struct Setup {
  Sequences seq;
  KappaInterval kappa;
  Setup() : seq(ten(), 10), kappa(kappa_interval(ten(), 6)) {}
};

}  // namespace

TEST_CASE("certify picks the minimal stage and rank") {
  Setup s;
  SUBCASE("rho = 1/2") {
    const ComparisonCertificate cert = certify(Rat(1, 2), s.seq, s.kappa, 6);
    CHECK(cert.stage_n == 1);
    CHECK(cert.rank_M == 17);
    // independent scan oracle
    const auto scan = oracles::certificate_scan(Rat(1, 2), s.kappa.lo, s.seq);
    CHECK(scan.n == cert.stage_n);
    CHECK(scan.M == cert.rank_M);
    CHECK(cert.obstructions.size() == 6);
  }
  SUBCASE("rho = 0") {
    const ComparisonCertificate cert = certify(Rat(0), s.seq, s.kappa, 3);
    CHECK(cert.stage_n == 1);
    CHECK(cert.rank_M == 12);
    const auto scan = oracles::certificate_scan(Rat(0), s.kappa.lo, s.seq);
    CHECK(scan.M == 12);
  }
  SUBCASE("boundary rho rejected") {
    const Rat boundary = 2 * s.kappa.lo - 1;
    CHECK_THROWS_WITH_AS(certify(boundary, s.seq, s.kappa, 3),
                         doctest::Contains("certifiable regime"), std::invalid_argument);
    CHECK_THROWS_AS(certify(Rat(-1, 2), s.seq, s.kappa, 3), std::invalid_argument);
  }
  SUBCASE("non-certified kappa rejected") {
    Sequences tiny(Schedule::explicit_prefix({2, 3, 5}), 3);
    const KappaInterval ke = kappa_interval(tiny.schedule(), 3);
    CHECK_THROWS_AS(certify(Rat(0), tiny, ke, 1), std::invalid_argument);
  }
}

TEST_CASE("replay verifies every line") {
  Setup s;
  const ComparisonCertificate cert = certify(Rat(1, 2), s.seq, s.kappa, 6);
  SUBCASE("check_depth 3") {
    const ReplayReport rep = replay(cert, s.seq, 3);
    CHECK(rep.ok());
    // m = 2: witness rank 17 * 1122 / 11 = 1734 < 2 s(2) = 2000
    bool saw_m2 = false;
    for (const auto& e : cert.obstructions) {
      if (e.m == 2) {
        saw_m2 = true;
        CHECK(e.witness_rank == 1734);
        CHECK(e.bundle_rank == 1000);
        CHECK(e.rank_below_double);
        CHECK(e.obstructed);
      }
    }
    CHECK(saw_m2);
  }
  SUBCASE("check_depth 0 leaves only the stage-level lines") {
    const ReplayReport rep = replay(cert, s.seq, 0);
    CHECK(rep.ok());
    for (const auto& line : rep.lines) {
      CHECK(line.name.find("obstruction:") == std::string::npos);
      CHECK(line.name.find("trace:") == std::string::npos);
    }
  }
  SUBCASE("full depth 6") {
    CHECK(replay(cert, s.seq, 6).ok());
  }
}

TEST_CASE("trace gap") {
  Setup s;
  const ComparisonCertificate half = certify(Rat(1, 2), s.seq, s.kappa, 2);
  CHECK(trace_gap(half, 1) == Rat(6, 11));
  CHECK(trace_gap(half, 5) == Rat(6, 11));  // independent of m
  CHECK(trace_gap(half, 1) > Rat(1, 2));
  CHECK_THROWS_AS(trace_gap(half, 0), std::invalid_argument);

  const ComparisonCertificate zero = certify(Rat(0), s.seq, s.kappa, 2);
  CHECK(trace_gap(zero, 1) == Rat(1, 11));

  // tau(b_m) recomputed through propagation stays 1 (inside replay's trace lines)
  for (int m = 2; m <= 5; ++m) {
    const UniformClassSummary b = push_summary(UniformClassSummary{0, 1, 0}, s.seq, m);
    CHECK(trace_of_summary(b, s.seq) == 1);
  }
}

TEST_CASE("monotone certifiable regime") {
  Setup s;
  const ComparisonCertificate cert = certify(Rat(1, 2), s.seq, s.kappa, 3);
  // every smaller rho certifies as well (possibly with its own minimal pair)
  for (const Rat& smaller : {Rat(0), Rat(1, 4), Rat(49, 100)}) {
    const ComparisonCertificate c2 = certify(smaller, s.seq, s.kappa, 3);
    CHECK(replay(c2, s.seq, 3).ok());
    // the larger-rho window is contained in the smaller-rho window
    CHECK(smaller + 1 < Rat(cert.rank_M, s.seq.r(cert.stage_n)));
    CHECK(Rat(cert.rank_M, s.seq.r(cert.stage_n)) < 2 * s.kappa.lo);
  }
}

TEST_CASE("divisibility across stages") {
  Setup s;
  const ComparisonCertificate cert = certify(Rat(1, 2), s.seq, s.kappa, 6);
  for (int m = cert.stage_n; m <= s.seq.cap(); ++m) {
    CHECK(cert.rank_M * s.seq.r(m) % s.seq.r(cert.stage_n) == 0);
  }
}

TEST_CASE("tampering any field breaks replay") {
  Setup s;
  const ComparisonCertificate good = certify(Rat(1, 2), s.seq, s.kappa, 4);
  REQUIRE(replay(good, s.seq, 4).ok());

  SUBCASE("rank_M = 22 fails the universal argument") {
    ComparisonCertificate cert = good;
    cert.rank_M = 22;  // 22/11 = 2 > 2 kappa_lo
    const ReplayReport rep = replay(cert, s.seq, 4);
    CHECK_FALSE(rep.ok());
    bool universal_failed = false;
    for (const auto& line : rep.lines) {
      if (line.name == "universal" && !line.pass) universal_failed = true;
    }
    CHECK(universal_failed);
  }
  SUBCASE("stage_n") {
    ComparisonCertificate cert = good;
    cert.stage_n = 2;
    CHECK_FALSE(replay(cert, s.seq, 4).ok());
  }
  SUBCASE("rho") {
    ComparisonCertificate cert = good;
    cert.rho = Rat(1, 4);
    CHECK_FALSE(replay(cert, s.seq, 4).ok());
  }
  SUBCASE("kappa_lo") {
    ComparisonCertificate cert = good;
    cert.kappa_lo += Rat(1, 1000000);
    CHECK_FALSE(replay(cert, s.seq, 4).ok());
  }
  SUBCASE("kappa stage echo") {
    ComparisonCertificate cert = good;
    cert.kappa_stage_used = 5;
    CHECK_FALSE(replay(cert, s.seq, 4).ok());
  }
  SUBCASE("inequality line value") {
    ComparisonCertificate cert = good;
    cert.inequalities[0].rhs += Rat(1, 7);
    CHECK_FALSE(replay(cert, s.seq, 4).ok());
  }
  SUBCASE("universal line") {
    ComparisonCertificate cert = good;
    cert.universal.lhs = Rat(1, 100);
    CHECK_FALSE(replay(cert, s.seq, 4).ok());
  }
  SUBCASE("obstruction entry") {
    ComparisonCertificate cert = good;
    cert.obstructions[1].witness_rank += 1;
    CHECK_FALSE(replay(cert, s.seq, 4).ok());
  }
  SUBCASE("schedule echo") {
    ComparisonCertificate cert = good;
    cert.schedule = Schedule::geometric(2, 10);
    CHECK_FALSE(replay(cert, s.seq, 4).ok());
  }
}

TEST_CASE("certificate JSON round trip") {
  Setup s;
  const ComparisonCertificate cert = certify(Rat(1, 2), s.seq, s.kappa, 4);
  const nlohmann::json j = certificate_to_json(cert);
  CHECK(j.at("schema") == "comparison-certificate/1");
  CHECK(j.at("rho") == "1/2");
  CHECK(j.at("rank_M") == "17");

  const ComparisonCertificate back = certificate_from_json(j);
  CHECK(back.rho == cert.rho);
  CHECK(back.kappa_lo == cert.kappa_lo);
  CHECK(back.rank_M == cert.rank_M);
  CHECK(back.stage_n == cert.stage_n);
  CHECK(replay(back, s.seq, 4).ok());
  CHECK(certificate_to_json(back) == j);

  SUBCASE("tamper in the serialized form") {
    nlohmann::json bad = j;
    bad["rank_M"] = "18";
    CHECK_FALSE(replay(certificate_from_json(bad), s.seq, 4).ok());
  }
}
