#include "ahcert/cli.hpp"

#include "ahcert/comparison.hpp"
#include "ahcert/dot.hpp"
#include "ahcert/dynamics.hpp"
#include "ahcert/json_io.hpp"
#include "ahcert/report.hpp"
#include "ahcert/sampling.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace ahcert {

namespace {

struct ScheduleArgs {
  std::string geometric = "1,10";  // "c,g"
  std::string explicit_list;       // "2,3,5"
  int cap = 3;
};

std::vector<Int> parse_int_list(const std::string& text) {
  std::vector<Int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.emplace_back(item);
  }
  return out;
}

Schedule schedule_from_args(const ScheduleArgs& args) {
  if (!args.explicit_list.empty()) {
    return Schedule::explicit_prefix(parse_int_list(args.explicit_list));
  }
  const auto parts = parse_int_list(args.geometric);
  if (parts.size() != 2) throw std::invalid_argument("--geometric expects \"c,g\"");
  return Schedule::geometric(parts[0], parts[1]);
}

void add_schedule_options(CLI::App* cmd, ScheduleArgs& args) {
  cmd->add_option("--geometric", args.geometric, "geometric schedule \"c,g\": d(n) = c*g^n");
  cmd->add_option("--explicit", args.explicit_list, "explicit schedule \"d1,d2,...\"");
  cmd->add_option("--cap", args.cap, "stage cap");
}

void write_or_print(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write to '" + path + "'");
  out << content;
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read '" + path + "'");
  nlohmann::json j;
  in >> j;
  return j;
}

int run_validate(const ScheduleArgs& args) {
  const ValidationReport report = validate_schedule(schedule_from_args(args), args.cap);
  for (const auto& c : report.checks) {
    std::cout << (c.pass ? "[pass] " : "[FAIL] ") << c.name;
    if (c.first_fail_stage) std::cout << " (first failure at stage " << *c.first_fail_stage << ")";
    if (!c.detail.empty()) std::cout << " -- " << c.detail;
    std::cout << "\n";
  }
  return report.ok() ? 0 : 1;
}

int run_sequences(const ScheduleArgs& args) {
  Sequences seq(schedule_from_args(args), args.cap);
  std::cout << "n\td(n)\tl(n)\tr(n)\ts(n)\tratio(n)\n";
  for (int n = 0; n <= seq.cap(); ++n) {
    std::cout << n << "\t" << seq.d(n) << "\t" << seq.l(n) << "\t" << seq.r(n) << "\t"
              << seq.s(n) << "\t" << rat_to_string(seq.ratio(n)) << "\n";
  }
  return 0;
}

int run_kappa(const ScheduleArgs& args, int stage_used) {
  const KappaInterval k = kappa_interval(schedule_from_args(args), stage_used);
  std::cout << "kappa in [" << rat_to_string(k.lo) << ", " << rat_to_string(k.hi) << "]\n"
            << "  = [" << static_cast<double>(k.lo) << ", " << static_cast<double>(k.hi)
            << "]\n  stage_used " << k.stage_used << ", tail bound "
            << rat_to_string(k.tail_bound) << "\n  certified: " << (k.certified ? "yes" : "no")
            << ", lo > 1/2: " << (k.above_half ? "yes" : "no") << "\n";
  return 0;
}

int run_intertwine(const ScheduleArgs& args, int n, bool upto, int spot_samples,
                   std::uint64_t seed) {
  Sequences seq(schedule_from_args(args), args.cap);
  bool all_ok = true;
  for (int stage = upto ? 0 : n; stage <= n; ++stage) {
    const IntertwineReport r = verify_intertwine(seq, stage);
    all_ok &= r.ok();
    std::cout << (r.ok() ? "[pass] " : "[FAIL] ") << "intertwine n=" << stage << " ("
              << r.slots << " slots)";
    if (!r.detail.empty()) std::cout << " -- " << r.detail;
    if (spot_samples > 0 && seq.r(stage + 1) <= 2000) {
      std::cout << "; spot max deviation "
                << spot_check_intertwine(seq, stage, seed, spot_samples);
    }
    std::cout << "\n";
  }
  return all_ok ? 0 : 1;
}

int run_towers(const ScheduleArgs& args, int n) {
  Sequences seq(schedule_from_args(args), args.cap);
  bool all_ok = true;
  for (int stage = 1; stage <= n; ++stage) {
    const TowerReport r = verify_tower(rokhlin_tower(seq, stage), seq);
    const Int uorder = order_of_unitary(permutation_unitary(seq, stage));
    const bool order_ok = pow2(stage) % uorder == 0;
    all_ok &= r.ok() && order_ok;
    std::cout << (r.ok() && order_ok ? "[pass] " : "[FAIL] ") << "tower n=" << stage
              << " length " << r.length << ", unitary order " << uorder << "\n";
  }
  return all_ok ? 0 : 1;
}

int run_bott(const ScheduleArgs& args, int m) {
  Sequences seq(schedule_from_args(args), args.cap);
  ProjectionClass cls = bott_class();
  for (int level = 1; level <= m; ++level) {
    cls = push_class(cls, connecting_map(seq, level - 1), seq);
  }
  const auto summary = summarize_uniform(cls);
  const bool ok = summary && cls.lines_distinct() && summary->line_block == seq.s(m) &&
                  summary->trivial == seq.r(m) - seq.s(m);
  std::cout << (ok ? "[pass] " : "[FAIL] ") << "stage " << m << ": "
            << (summary ? summary->line_block.str() : Int(0).str())
            << " distinct line coordinates + trivial rank "
            << (summary ? summary->trivial.str() : std::string("?")) << " over "
            << cls.components.size() << " components (expect s(m) = " << seq.s(m)
            << ", r(m)-s(m) = " << (seq.r(m) - seq.s(m)) << ")\n";
  return ok ? 0 : 1;
}

int run_certify(const ScheduleArgs& args, const std::string& rho_text, int kappa_stage,
                int check_depth, const std::string& out_path) {
  const Schedule schedule = schedule_from_args(args);
  Sequences seq(schedule, args.cap);
  const KappaInterval kappa = kappa_interval(schedule, kappa_stage);
  const ComparisonCertificate cert =
      certify(rat_from_string(rho_text), seq, kappa, check_depth);
  write_or_print(out_path, certificate_to_json(cert).dump(2) + "\n");
  std::cerr << "certificate: stage n = " << cert.stage_n << ", rank M = " << cert.rank_M
            << ", trace gap " << rat_to_string(trace_gap(cert, cert.stage_n)) << "\n";
  return 0;
}

int run_replay(const ScheduleArgs& args, const std::string& cert_path, int check_depth) {
  const ComparisonCertificate cert = certificate_from_json(load_json(cert_path));
  Sequences seq(cert.schedule, std::max(args.cap, cert.stage_n + check_depth));
  const ReplayReport rep = replay(cert, seq, check_depth);
  for (const auto& line : rep.lines) {
    std::cout << (line.pass ? "[pass] " : "[FAIL] ") << line.name;
    if (!line.detail.empty()) std::cout << " -- " << line.detail;
    std::cout << "\n";
  }
  return rep.ok() ? 0 : 1;
}

int run_density(const ScheduleArgs& args, int target_stage, int cutoff, int samples,
                std::uint64_t seed) {
  Sequences seq(schedule_from_args(args), args.cap);
  const DensityEstimate est =
      density_estimate(PointScheme{seed}, seq, target_stage, cutoff, samples, seed);
  std::cout << "covering radius estimate " << est.covering_radius << " rad ("
            << est.eval_blocks << " evaluation blocks, " << est.samples << " samples"
            << (est.empty_set ? ", EMPTY SET sentinel" : "") << ")\n";
  return 0;
}

int run_dot(const ScheduleArgs& args, int depth, bool cross, bool chain,
            const std::string& out_path) {
  Sequences seq(schedule_from_args(args), args.cap);
  const DiagramStyle style = chain ? DiagramStyle::Chain
                             : cross ? DiagramStyle::TreeCross
                                     : DiagramStyle::Tree;
  write_or_print(out_path, emit_dot(seq, depth, style));
  return 0;
}

int run_run(const std::string& config_path, const std::string& out_path,
            const std::string& transcript_path) {
  const RunConfig config = run_config_from_json(load_json(config_path));
  const RunReport report = run_pipeline(config);
  if (!out_path.empty()) write_or_print(out_path, report.body.dump(2) + "\n");
  if (transcript_path.empty()) {
    std::cout << report.transcript;
  } else {
    write_or_print(transcript_path, report.transcript);
  }
  return report.exit_code();
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{
      "Exact finite-stage verifier for a sphere-product inductive system with an "
      "odometer overlay: sequence conditions, intertwining, towers, line-class "
      "decomposition, and a replayable comparison-failure certificate."};
  app.require_subcommand(1);

  ScheduleArgs sched;
  int stage_used = 6, n = 0, m = 1, check_depth = 6, target_stage = 0, cutoff = 0,
      samples = 2000, depth = 2, spot = 0;
  bool upto = false, cross = false, chain = false;
  std::uint64_t seed = 0;
  std::string rho = "1/2", out_path, cert_path = "certificate.json", config_path,
              transcript_path;

  auto* validate = app.add_subcommand("validate", "check the schedule's validity conditions");
  add_schedule_options(validate, sched);

  auto* sequences = app.add_subcommand("sequences", "print the derived sequence table");
  add_schedule_options(sequences, sched);

  auto* kappa = app.add_subcommand("kappa", "certified enclosure of inf s(n)/r(n)");
  add_schedule_options(kappa, sched);
  kappa->add_option("--stage-used", stage_used, "partial-product stage for the enclosure");

  auto* intertwine = app.add_subcommand("intertwine", "verify the automorphism intertwining");
  add_schedule_options(intertwine, sched);
  intertwine->add_option("--n", n, "stage to verify");
  intertwine->add_flag("--upto", upto, "verify 0..n");
  intertwine->add_option("--spot-samples", spot, "numerical diagnostic sample count");
  intertwine->add_option("--seed", seed, "diagnostic seed");

  auto* towers = app.add_subcommand("towers", "verify the cyclic projection towers");
  add_schedule_options(towers, sched);
  towers->add_option("--n", n, "verify stages 1..n");

  auto* bott = app.add_subcommand("bott", "push the stage-0 line class and decompose");
  add_schedule_options(bott, sched);
  bott->add_option("--m", m, "target stage");

  auto* certify_cmd = app.add_subcommand("certify", "emit a comparison-failure certificate");
  add_schedule_options(certify_cmd, sched);
  certify_cmd->add_option("--rho", rho, "comparison constant, e.g. \"1/2\"");
  certify_cmd->add_option("--kappa-stage", stage_used, "stage for the kappa enclosure");
  certify_cmd->add_option("--check-depth", check_depth, "per-stage checks past n");
  certify_cmd->add_option("--out", out_path, "certificate path (stdout if empty)");

  auto* replay_cmd = app.add_subcommand("replay", "re-verify a certificate line by line");
  add_schedule_options(replay_cmd, sched);
  replay_cmd->add_option("--cert", cert_path, "certificate path")->required();
  replay_cmd->add_option("--check-depth", check_depth, "per-stage checks past n");

  auto* density = app.add_subcommand("density", "covering-radius diagnostic (non-gating)");
  add_schedule_options(density, sched);
  density->add_option("--target-stage", target_stage, "stage whose space is probed");
  density->add_option("--cutoff", cutoff, "largest anchor stage used");
  density->add_option("--samples", samples, "Monte-Carlo sample count");
  density->add_option("--seed", seed, "scheme and sampling seed");

  auto* dot = app.add_subcommand("dot", "emit the layered stage diagram");
  add_schedule_options(dot, sched);
  dot->add_option("--depth", depth, "ranks to draw (max 4)");
  dot->add_flag("--cross", cross, "include cross-branch point evaluations");
  dot->add_flag("--chain", chain, "single-node-per-rank variant");
  dot->add_option("--out", out_path, "output path (stdout if empty)");

  auto* run = app.add_subcommand("run", "full pipeline from a config file");
  run->add_option("--config", config_path, "run-config JSON")->required();
  run->add_option("--out", out_path, "canonical JSON report path");
  run->add_option("--transcript", transcript_path, "human-readable transcript path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // help/version exit cleanly; bad flags are config errors
  }

  try {
    if (validate->parsed()) return run_validate(sched);
    if (sequences->parsed()) return run_sequences(sched);
    if (kappa->parsed()) return run_kappa(sched, stage_used);
    if (intertwine->parsed()) return run_intertwine(sched, n, upto, spot, seed);
    if (towers->parsed()) return run_towers(sched, n);
    if (bott->parsed()) return run_bott(sched, m);
    if (certify_cmd->parsed()) return run_certify(sched, rho, stage_used, check_depth, out_path);
    if (replay_cmd->parsed()) return run_replay(sched, cert_path, check_depth);
    if (density->parsed()) return run_density(sched, target_stage, cutoff, samples, seed);
    if (dot->parsed()) return run_dot(sched, depth, cross, chain, out_path);
    if (run->parsed()) return run_run(config_path, out_path, transcript_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace ahcert
