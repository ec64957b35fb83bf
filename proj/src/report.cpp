#include "ahcert/report.hpp"

#include "ahcert/dynamics.hpp"
#include "ahcert/json_io.hpp"
#include "ahcert/sampling.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

namespace ahcert {

namespace {

constexpr std::int64_t kPipelineBottAtomBudget = 2'000'000;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

RunConfig run_config_from_json(const nlohmann::json& j) {
  RunConfig c;
  c.schedule = schedule_from_json(j.at("schedule"));
  c.stage_cap = j.at("stage_cap").get<int>();
  c.kappa_stage = j.value("kappa_stage", 6);
  c.rho = rat_from_json(j.at("rho"));
  c.check_depth = j.value("check_depth", 6);
  c.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("density")) {
    const auto& d = j.at("density");
    c.density.target_stage = d.value("target_stage", 0);
    c.density.cutoff = d.value("cutoff", 0);
    c.density.samples = d.value("samples", 0);
  }
  c.intertwine_max_stage = j.value("intertwine_max_stage", 8);
  c.spot_samples = j.value("spot_samples", 25);
  if (c.stage_cap < 0) throw std::invalid_argument("stage_cap must be >= 0");
  if (c.density.target_stage > c.stage_cap || c.density.cutoff > c.stage_cap) {
    throw std::invalid_argument("density stages must be <= stage_cap");
  }
  if (c.kappa_stage > c.stage_cap) {
    throw std::invalid_argument("kappa_stage must be <= stage_cap");
  }
  return c;
}

nlohmann::json run_config_to_json(const RunConfig& c) {
  nlohmann::json j;
  j["schedule"] = schedule_to_json(c.schedule);
  j["stage_cap"] = c.stage_cap;
  j["kappa_stage"] = c.kappa_stage;
  j["rho"] = rat_json(c.rho);
  j["check_depth"] = c.check_depth;
  j["seed"] = c.seed;
  j["density"] = {{"target_stage", c.density.target_stage},
                  {"cutoff", c.density.cutoff},
                  {"samples", c.density.samples}};
  j["intertwine_max_stage"] = c.intertwine_max_stage;
  j["spot_samples"] = c.spot_samples;
  return j;
}

RunReport run_pipeline(const RunConfig& config) {
  RunReport report;
  std::ostringstream log;
  bool exact_pass = true;
  const auto t0 = std::chrono::steady_clock::now();

  nlohmann::json& body = report.body;
  body["schema"] = "run-report/1";
  body["config"] = run_config_to_json(config);

  // ---- validation ----
  const ValidationReport validation = validate_schedule(config.schedule, config.stage_cap);
  {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : validation.checks) {
      nlohmann::json line{{"name", c.name}, {"pass", c.pass}};
      if (c.first_fail_stage) line["first_fail_stage"] = *c.first_fail_stage;
      if (!c.detail.empty()) line["detail"] = c.detail;
      checks.push_back(std::move(line));
    }
    body["validation"] = {{"checks", checks}, {"ok", validation.ok()}};
    log << "validation: " << (validation.ok() ? "pass" : "FAIL") << "\n";
  }
  if (!validation.ok()) {
    report.all_exact_pass = false;
    report.transcript = log.str();
    return report;
  }

  // ---- sequences ----
  Sequences seq(config.schedule, config.stage_cap);
  {
    nlohmann::json rows = nlohmann::json::array();
    for (int n = 0; n <= seq.cap(); ++n) {
      rows.push_back({{"n", n},
                      {"d", int_json(seq.d(n))},
                      {"l", int_json(seq.l(n))},
                      {"r", int_json(seq.r(n))},
                      {"s", int_json(seq.s(n))},
                      {"ratio", rat_json(seq.ratio(n))}});
    }
    bool decreasing = true;
    for (int n = 1; n <= seq.cap(); ++n) decreasing &= seq.ratio(n) < seq.ratio(n - 1);
    exact_pass &= decreasing;
    body["sequences"] = {{"rows", rows}, {"ratio_strictly_decreasing", decreasing}};
    log << "sequences: derived to stage " << seq.cap() << ", ratio "
        << (decreasing ? "strictly decreasing" : "NOT DECREASING") << " ("
        << seconds_since(t0) << " s)\n";
  }

  // ---- kappa ----
  std::optional<KappaInterval> kappa;
  {
    nlohmann::json k;
    try {
      kappa = kappa_interval(config.schedule,
                             config.schedule.kind == Schedule::Kind::Geometric
                                 ? config.kappa_stage
                                 : config.schedule.max_stage());
      k["lo"] = rat_json(kappa->lo);
      k["hi"] = rat_json(kappa->hi);
      k["tail_bound"] = rat_json(kappa->tail_bound);
      k["stage_used"] = kappa->stage_used;
      k["certified"] = kappa->certified;
      k["above_half"] = kappa->above_half;
      log << "kappa: [" << rat_to_string(kappa->lo) << ", " << rat_to_string(kappa->hi)
          << "] certified=" << kappa->certified << " above_half=" << kappa->above_half << "\n";
    } catch (const std::exception& e) {
      k["error"] = e.what();
      exact_pass = false;
      log << "kappa: FAIL (" << e.what() << ")\n";
    }
    body["kappa"] = k;
  }

  // ---- intertwining ----
  {
    nlohmann::json arr = nlohmann::json::array();
    const int top = std::min(config.stage_cap - 1, config.intertwine_max_stage);
    for (int n = 0; n <= top; ++n) {
      const IntertwineReport r = verify_intertwine(seq, n);
      exact_pass &= r.ok();
      nlohmann::json jr{{"n", n},
                        {"slots", r.slots},
                        {"ok", r.ok()},
                        {"layout_ok", r.layout_ok},
                        {"quotient_shift_ok", r.quotient_shift_ok},
                        {"slots_ok", r.slots_ok},
                        {"unitary_consistent", r.unitary_consistent}};
      if (!r.detail.empty()) jr["detail"] = r.detail;
      // numerical diagnostic where the dense guard permits; never gates
      if (config.spot_samples > 0 && seq.r(n + 1) <= 2000) {
        jr["spot_max_deviation"] =
            spot_check_intertwine(seq, n, config.seed, config.spot_samples);
      }
      arr.push_back(std::move(jr));
      log << "intertwine n=" << n << ": " << (r.ok() ? "pass" : "FAIL") << " (" << r.slots
          << " slots, " << seconds_since(t0) << " s)\n";
    }
    body["intertwine"] = arr;
  }

  // ---- towers ----
  {
    nlohmann::json arr = nlohmann::json::array();
    const int top = std::min(config.stage_cap, 10);
    for (int n = 1; n <= top; ++n) {
      const TowerReport r = verify_tower(rokhlin_tower(seq, n), seq);
      const Int uorder = order_of_unitary(permutation_unitary(seq, n));
      const bool order_ok = pow2(n) % uorder == 0;  // order divides 2^n
      exact_pass &= r.ok() && order_ok;
      arr.push_back({{"n", n},
                     {"length", int_json(r.length)},
                     {"ok", r.ok()},
                     {"epsilon", r.epsilon},
                     {"unitary_order", int_json(uorder)},
                     {"order_divides_2n", order_ok}});
    }
    body["towers"] = arr;
    log << "towers: verified n=1.." << top << " (" << seconds_since(t0) << " s)\n";
  }

  // ---- line-class decomposition ----
  {
    nlohmann::json arr = nlohmann::json::array();
    for (int m = 1; m <= std::min(config.stage_cap, 6); ++m) {
      nlohmann::json entry{{"m", m}};
      const UniformClassSummary closed = push_summary(UniformClassSummary{0, 1, 0}, seq, m);
      const bool closed_ok = closed.line_block == seq.s(m) &&
                             closed.trivial == seq.r(m) - seq.s(m);
      bool ok = closed_ok;
      entry["line_block"] = int_json(closed.line_block);
      entry["trivial_rank"] = int_json(closed.trivial);
      entry["route"] = "closed-form";
      // explicit route within budget: distinct coordinates per component
      const Int atoms = seq.s(m) * pow2(m);
      if (atoms <= kPipelineBottAtomBudget && seq.l(m) <= kPipelineBottAtomBudget) {
        ProjectionClass cls = bott_class();
        for (int level = 1; level <= m; ++level) {
          cls = push_class(cls, connecting_map(seq, level - 1), seq);
        }
        const auto summary = summarize_uniform(cls);
        const bool explicit_ok = cls.lines_distinct() && summary.has_value() &&
                                 summary->line_block == seq.s(m) &&
                                 summary->trivial == seq.r(m) - seq.s(m);
        ok = ok && explicit_ok;
        entry["route"] = "closed-form+explicit";
        entry["components"] = static_cast<std::int64_t>(cls.components.size());
      }
      entry["ok"] = ok;
      exact_pass &= ok;
      arr.push_back(std::move(entry));
    }
    body["bott"] = arr;
    log << "line-class decomposition: checked (" << seconds_since(t0) << " s)\n";
  }

  // ---- certificate + replay ----
  if (kappa && kappa->certified && config.rho < 2 * kappa->lo - 1) {
    try {
      const ComparisonCertificate cert = certify(config.rho, seq, *kappa, config.check_depth);
      body["certificate"] = certificate_to_json(cert);
      const ReplayReport rr = replay(cert, seq, config.check_depth);
      nlohmann::json lines = nlohmann::json::array();
      for (const auto& line : rr.lines) {
        nlohmann::json jl{{"name", line.name}, {"pass", line.pass}};
        if (!line.detail.empty()) jl["detail"] = line.detail;
        lines.push_back(std::move(jl));
      }
      body["replay"] = {{"lines", lines}, {"ok", rr.ok()}};
      exact_pass &= rr.ok();
      log << "certificate: n=" << cert.stage_n << " M=" << cert.rank_M.str() << "; replay "
          << (rr.ok() ? "pass" : "FAIL") << " (" << seconds_since(t0) << " s)\n";
    } catch (const std::exception& e) {
      body["certificate"] = {{"error", e.what()}};
      exact_pass = false;
      log << "certificate: FAIL (" << e.what() << ")\n";
    }
  } else {
    std::string reason = !kappa ? "kappa interval unavailable"
                         : !kappa->certified
                             ? "kappa not certified (explicit prefix); certification skipped"
                             : "rho outside the certifiable regime";
    body["certificate"] = {{"skipped", reason}};
    log << "certificate: skipped (" << reason << ")\n";
  }

  // ---- density diagnostic (never gates) ----
  if (config.density.samples > 0) {
    nlohmann::json d;
    try {
      const DensityEstimate est =
          density_estimate(PointScheme{config.seed}, seq, config.density.target_stage,
                           config.density.cutoff, config.density.samples, config.seed);
      d["covering_radius_estimate"] = est.covering_radius;
      d["eval_blocks"] = est.eval_blocks;
      d["samples"] = est.samples;
      d["empty_set"] = est.empty_set;
      log << "density: estimate " << est.covering_radius << " rad over " << est.eval_blocks
          << " blocks (diagnostic)\n";
    } catch (const std::exception& e) {
      d["error"] = e.what();  // guard trips are reported, not fatal
      log << "density: skipped (" << e.what() << ")\n";
    }
    body["density"] = d;
  }

  body["all_exact_checks_pass"] = exact_pass;
  report.all_exact_pass = exact_pass;
  log << "total: " << seconds_since(t0) << " s; exact checks "
      << (exact_pass ? "ALL PASS" : "FAILED") << "\n";
  report.transcript = log.str();
  return report;
}

}  // namespace ahcert
