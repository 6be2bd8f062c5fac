#include "lplc2/cli/app.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>

#include "lplc2/io/pgm.hpp"
#include "lplc2/pipeline.hpp"
#include "lplc2/sim/protocols.hpp"
#include "lplc2/sim/scenario.hpp"
#include "lplc2/synth.hpp"

namespace lplc2::cli {

namespace {

namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kUsageError = 1;
constexpr int kRuntimeError = 2;

struct CommonOpts {
  std::vector<std::string> set_pairs;
  std::optional<std::int64_t> frames;
  std::optional<std::uint64_t> seed;
  std::string mode;  // "", "escape", "spin"
  bool compat_eq6 = false;
  bool compat_eq9 = false;
  bool compact = false;
};

void add_common(CLI::App* cmd, CommonOpts* c) {
  cmd->add_option("--set", c->set_pairs,
                  "Parameter override key=value (repeatable)");
  cmd->add_option("--frames", c->frames, "Override the trial frame count");
  cmd->add_option("--seed", c->seed, "Override the scenario seed");
  cmd->add_option("--mode", c->mode, "Behavior mode: escape|spin")
      ->check(CLI::IsMember({"escape", "spin"}));
  cmd->add_flag("--compat-eq6", c->compat_eq6,
                "Use the printed (non-opponent) correlator form");
  cmd->add_flag("--compat-eq9", c->compat_eq9,
                "Use the printed nonzero-product response gate");
  cmd->add_flag("--compact", c->compact,
                "Store delayed channels as 16-bit fixed point");
}

// Returns kOk or kUsageError (diagnostic already printed).
int build_run_options(const CommonOpts& c, RunOptions* out,
                      std::vector<std::string>* echo) {
  for (const auto& pair : c.set_pairs) {
    const auto eq = pair.find('=');
    if (eq == std::string::npos) {
      std::cerr << "--set expects key=value, got '" << pair << "'\n";
      return kUsageError;
    }
    const std::string key = pair.substr(0, eq);
    const std::string value = pair.substr(eq + 1);
    std::string err;
    if (!out->params.set_key(key, value, &err)) {
      std::cerr << "--set " << pair << ": " << err << "\nknown keys:";
      for (const auto& k : RuntimeParams::known_keys()) std::cerr << ' ' << k;
      std::cerr << "\n";
      return kUsageError;
    }
    echo->push_back(pair);
  }
  const std::string verr = out->params.model.validate();
  if (!verr.empty()) {
    std::cerr << "invalid parameters after overrides: " << verr << "\n";
    return kUsageError;
  }
  out->compat_eq6 = c.compat_eq6;
  out->compat_eq9 = c.compat_eq9;
  out->compact = c.compact;
  if (c.frames) out->duration_override = *c.frames;
  if (c.seed) out->seed_override = *c.seed;
  if (c.mode == "escape") out->mode_override = BehaviorMode::Escape;
  if (c.mode == "spin") out->mode_override = BehaviorMode::Spin;
  return kOk;
}

void write_trial_outputs(const fs::path& out_dir, const ScenarioConfig& cfg,
                         const RunOptions& opts, const TrialLog& log,
                         const std::vector<std::string>& echo) {
  fs::create_directories(out_dir);
  write_trajectories_csv(out_dir / "trajectories.csv", log);
  write_events_csv(out_dir / "events.csv", log);
  write_behavior_csv(out_dir / "behavior.csv", log);
  for (const auto& [robot, rows] : log.attention) {
    write_attention_csv(
        out_dir / ("attention_robot" + std::to_string(robot) + ".csv"), rows);
  }
  std::ofstream sum(out_dir / "summary.txt");
  sum << summary_text(cfg, opts, log, echo);
}

// ---- run ------------------------------------------------------------------

int do_run(const std::string& scenario_path, const std::string& out_dir,
           const CommonOpts& common) {
  RunOptions opts;
  std::vector<std::string> echo;
  if (int rc = build_run_options(common, &opts, &echo); rc != kOk) return rc;

  std::string err;
  auto cfg = parse_scenario_file(scenario_path, &err);
  if (!cfg) {
    std::cerr << "scenario error: " << err << "\n";
    return kRuntimeError;
  }
  const TrialLog log = run_trial(*cfg, opts);
  write_trial_outputs(out_dir, *cfg, opts, log, echo);
  std::cout << "wrote " << out_dir << ": " << log.frames << " frames, "
            << log.wall_episodes + log.pair_episodes << " collision episodes, "
            << log.opportunities << " avoidance opportunities\n";
  return kOk;
}

// ---- sweep ----------------------------------------------------------------

struct EscapeEntry {
  bool found = false;
  std::int64_t frame = -1;
  double heading = 0.0;
};

EscapeEntry find_escape_entry(const TrialLog& log, int robot) {
  EscapeEntry e;
  for (const auto& b : log.behavior) {
    if (b.robot == robot && b.state == "escape") {
      e.found = true;
      e.frame = b.frame;
      break;
    }
  }
  if (!e.found) return e;
  // Heading in effect when the escape state was entered: pose at the end of
  // the previous frame.
  for (const auto& t : log.trajectories) {
    if (t.robot == robot && t.frame == e.frame - 1) {
      e.heading = t.heading;
      return e;
    }
  }
  e.found = e.frame == 0;  // degenerate: escape on frame 0 is impossible
  return e;
}

int do_sweep(const std::string& out_dir, const std::string& angles_arg,
             bool no_dual, int dual_trials, const CommonOpts& common) {
  RunOptions opts;
  std::vector<std::string> echo;
  if (int rc = build_run_options(common, &opts, &echo); rc != kOk) return rc;

  std::vector<double> angles;
  if (angles_arg == "default") {
    angles = nine_angles();
  } else if (!angles_arg.empty()) {
    std::string tok;
    std::istringstream ss(angles_arg);
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      try {
        angles.push_back(std::stod(tok));
      } catch (...) {
        std::cerr << "--angles: cannot parse '" << tok << "'\n";
        return kUsageError;
      }
    }
  }

  fs::create_directories(out_dir);
  std::ofstream csv(fs::path(out_dir) / "sweep.csv");
  csv << "angle,escape_frame,escape_heading,expected,error,pass\n";
  int passed = 0;
  char buf[160];
  for (double a : angles) {
    ScenarioConfig cfg = make_angle_scenario(a);
    const TrialLog log = run_trial(cfg, opts);
    const EscapeEntry e = find_escape_entry(log, 0);
    const double expected = wrap_deg(a + 180.0);
    const double error = e.found ? wrap_deg(e.heading - expected) : 0.0;
    const bool pass = e.found && std::abs(error) <= 10.0;
    passed += pass ? 1 : 0;
    if (e.found) {
      std::snprintf(buf, sizeof(buf), "%.2f,%lld,%.2f,%.2f,%.2f,%s\n", a,
                    static_cast<long long>(e.frame), e.heading, expected, error,
                    pass ? "yes" : "no");
    } else {
      std::snprintf(buf, sizeof(buf), "%.2f,,,%.2f,,no\n", a, expected);
    }
    csv << buf;
    std::snprintf(buf, sizeof(buf),
                  "angle %7.2f  escape %-8s expected %8.2f  error %7.2f  %s\n",
                  a, e.found ? "yes" : "no", expected, error,
                  pass ? "PASS" : "FAIL");
    std::cout << buf;
  }
  if (!angles.empty()) {
    std::cout << "sweep: " << passed << "/" << angles.size()
              << " within +/-10 deg of the opposite heading\n";
  }

  if (!no_dual) {
    std::ofstream dual_csv(fs::path(out_dir) / "dual.csv");
    dual_csv << "trial,seed,fast_bearing,escape_heading,expected,error,pass\n";
    int dual_pass = 0;
    const std::uint64_t base_seed = opts.seed_override.value_or(1);
    for (int t = 0; t < dual_trials; ++t) {
      const DualScenario ds = make_dual_scenario(base_seed + t);
      RunOptions trial_opts = opts;
      trial_opts.seed_override.reset();  // geometry carries the seed already
      const TrialLog log = run_trial(ds.cfg, trial_opts);
      const EscapeEntry e = find_escape_entry(log, 0);
      const double expected = wrap_deg(ds.fast_bearing + 180.0);
      const double error = e.found ? wrap_deg(e.heading - expected) : 0.0;
      const bool pass = e.found && std::abs(error) <= 25.0;
      dual_pass += pass ? 1 : 0;
      std::snprintf(buf, sizeof(buf), "%d,%llu,%.2f,%.2f,%.2f,%.2f,%s\n", t,
                    static_cast<unsigned long long>(base_seed + t),
                    ds.fast_bearing, e.found ? e.heading : 0.0, expected, error,
                    pass ? "yes" : "no");
      dual_csv << buf;
    }
    std::cout << "dual-threat: " << dual_pass << "/" << dual_trials
              << " escapes opposed the faster robot within +/-25 deg\n";
  }
  return kOk;
}

// ---- stimuli ---------------------------------------------------------------

int do_stimuli(const std::string& scenario_path, const std::string& out_dir,
               const CommonOpts& common) {
  RunOptions opts;
  std::vector<std::string> echo;
  if (int rc = build_run_options(common, &opts, &echo); rc != kOk) return rc;

  std::string err;
  auto cfg = parse_scenario_file(scenario_path, &err);
  if (!cfg) {
    std::cerr << "scenario error: " << err << "\n";
    return kRuntimeError;
  }
  opts.dump_frames_dir = out_dir;
  const TrialLog log = run_trial(*cfg, opts);
  std::cout << "wrote " << log.frames << " frames to " << out_dir << "\n";
  return kOk;
}

// ---- inspect ---------------------------------------------------------------

bool parse_range(const std::string& arg, std::int64_t* a, std::int64_t* b) {
  const auto colon = arg.find(':');
  try {
    if (colon == std::string::npos) {
      *a = *b = std::stoll(arg);
    } else {
      *a = std::stoll(arg.substr(0, colon));
      *b = std::stoll(arg.substr(colon + 1));
    }
  } catch (...) {
    return false;
  }
  return *a >= 0 && *b >= *a;
}

void dump_traces(const fs::path& out_dir, const std::vector<FrameTrace>& traces) {
  fs::create_directories(out_dir);
  std::vector<AttentionRow> att;
  std::ofstream quad(out_dir / "quadrants.csv");
  quad << "frame,af_id,q1,q2,q3,q4\n";
  char name[64];
  for (const auto& tr : traces) {
    const long long f = static_cast<long long>(tr.frame_index);
    std::snprintf(name, sizeof(name), "p_layer_%05lld.pgm", f);
    write_pgm(out_dir / name, tr.input.img);
    std::snprintf(name, sizeof(name), "l_on_%05lld.pgm", f);
    write_rescaled_pgm(out_dir / name, tr.raw.on);
    std::snprintf(name, sizeof(name), "l_off_%05lld.pgm", f);
    write_rescaled_pgm(out_dir / name, tr.raw.off);
    std::snprintf(name, sizeof(name), "motion_saliency_%05lld.pgm", f);
    write_rescaled_pgm(out_dir / name, tr.sal);
    std::snprintf(name, sizeof(name), "dir_r_%05lld.pgm", f);
    write_rescaled_pgm(out_dir / name, tr.lm.r);
    std::snprintf(name, sizeof(name), "dir_l_%05lld.pgm", f);
    write_rescaled_pgm(out_dir / name, tr.lm.l);
    std::snprintf(name, sizeof(name), "dir_u_%05lld.pgm", f);
    write_rescaled_pgm(out_dir / name, tr.lm.u);
    std::snprintf(name, sizeof(name), "dir_d_%05lld.pgm", f);
    write_rescaled_pgm(out_dir / name, tr.lm.d);
    char qbuf[200];
    for (const auto& fl : tr.fields) {
      att.push_back(AttentionRow{tr.frame_index, fl.af_id, fl.cx, fl.cy,
                                 fl.resp.value});
      std::snprintf(qbuf, sizeof(qbuf), "%lld,%d,%.4f,%.4f,%.4f,%.4f\n", f,
                    fl.af_id, fl.q.q1, fl.q.q2, fl.q.q3, fl.q.q4);
      quad << qbuf;
    }
  }
  write_attention_csv(out_dir / "attention.csv", att);
}

int do_inspect(const std::string& scenario_path, const std::string& frames_dir,
               const std::string& range_arg, const std::string& out_dir,
               const CommonOpts& common) {
  RunOptions opts;
  std::vector<std::string> echo;
  if (int rc = build_run_options(common, &opts, &echo); rc != kOk) return rc;

  std::int64_t from = 0, to = 0;
  if (!parse_range(range_arg, &from, &to)) {
    std::cerr << "--range expects A:B with 0 <= A <= B\n";
    return kUsageError;
  }

  std::vector<FrameTrace> traces;
  if (!scenario_path.empty()) {
    std::string err;
    auto cfg = parse_scenario_file(scenario_path, &err);
    if (!cfg) {
      std::cerr << "scenario error: " << err << "\n";
      return kRuntimeError;
    }
    const std::int64_t duration =
        opts.duration_override.value_or(cfg->duration_frames);
    if (to >= duration) {
      std::cerr << "frame range out of bounds; valid range is 0.."
                << duration - 1 << "\n";
      return kRuntimeError;
    }
    opts.trace_from = from;
    opts.trace_to = to;
    opts.traces = &traces;
    run_trial(*cfg, opts);
  } else {
    std::vector<fs::path> files;
    if (!fs::is_directory(frames_dir)) {
      std::cerr << "not a directory: " << frames_dir << "\n";
      return kRuntimeError;
    }
    for (const auto& e : fs::directory_iterator(frames_dir)) {
      if (e.path().extension() == ".pgm") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    if (to >= static_cast<std::int64_t>(files.size())) {
      std::cerr << "frame range out of bounds; valid range is 0.."
                << static_cast<std::int64_t>(files.size()) - 1 << "\n";
      return kRuntimeError;
    }
    PipelineConfig pc;
    pc.params = opts.params.model;
    pc.motor = opts.params.motor;
    pc.compat_eq6 = opts.compat_eq6;
    pc.compat_eq9 = opts.compat_eq9;
    pc.compact = opts.compact;
    Pipeline pipe(pc);
    for (std::int64_t i = 0; i <= to; ++i) {
      const Frame frame = read_frame_pgm(files[static_cast<std::size_t>(i)], i);
      FrameTrace tr;
      const bool want = i >= from;
      pipe.process_frame(frame, 0.0, want ? &tr : nullptr);
      if (want) traces.push_back(std::move(tr));
    }
  }
  dump_traces(out_dir, traces);
  std::cout << "dumped " << traces.size() << " frames to " << out_dir << "\n";
  return kOk;
}

// ---- bench / report ---------------------------------------------------------

int do_bench(std::int64_t frames, const CommonOpts& common) {
  RunOptions opts;
  std::vector<std::string> echo;
  if (int rc = build_run_options(common, &opts, &echo); rc != kOk) return rc;

  const std::int64_t n = std::max<std::int64_t>(frames, 1000);
  ScenarioConfig cfg = make_bench_scenario(n);
  std::vector<double> ms;
  ms.reserve(static_cast<std::size_t>(n));
  opts.focus_frame_ms = &ms;
  run_trial(cfg, opts);

  std::vector<double> sorted = ms;
  std::sort(sorted.begin(), sorted.end());
  const double mean =
      std::accumulate(sorted.begin(), sorted.end(), 0.0) / sorted.size();
  const double p95 = sorted[static_cast<std::size_t>(0.95 * (sorted.size() - 1))];
  const double budget_ms = opts.params.model.t_i_ms;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "frames %zu\nmin %.3f ms\nmean %.3f ms\np95 %.3f ms\nmax %.3f "
                "ms\nbudget %.2f ms/frame: %s (mean margin %.1fx)\n",
                sorted.size(), sorted.front(), mean, p95, sorted.back(),
                budget_ms, mean < budget_ms ? "OK" : "EXCEEDED",
                mean > 0 ? budget_ms / mean : 0.0);
  std::cout << buf;
  return mean < budget_ms ? kOk : kRuntimeError;
}

std::vector<double> timing_samples(const PipelineConfig& pc, int frames) {
  Pipeline pipe(pc);
  std::vector<double> ms;
  // Expanding/contracting disc cycles keep the attention machinery busy.
  for (int i = 0; i < frames; ++i) {
    const int phase = i % 30;
    const double radius = 4.0 + (phase < 15 ? phase : 30 - phase) * 2.0;
    const Frame f = disc_frame(49.0, 35.0, radius, 30, 200, i);
    const auto t0 = std::chrono::steady_clock::now();
    pipe.process_frame(f, 0.0);
    const auto t1 = std::chrono::steady_clock::now();
    ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return ms;
}

int do_report(const std::string& out_dir, const CommonOpts& common) {
  RunOptions opts;
  std::vector<std::string> echo;
  if (int rc = build_run_options(common, &opts, &echo); rc != kOk) return rc;

  std::string csv = "mode,buffer,bytes\n";
  for (const bool compact : {true, false}) {
    PipelineConfig pc;
    pc.params = opts.params.model;
    pc.motor = opts.params.motor;
    pc.compact = compact;
    const std::vector<double> ms = timing_samples(pc, 200);
    Pipeline pipe(pc);
    pipe.process_frame(flat_frame(128), 0.0);
    const BudgetReport rep = pipe.budget_report(ms);
    std::cout << rep.table() << "\n";
    // strip the duplicate header line from the per-mode csv
    const std::string mode_csv = rep.csv();
    csv += mode_csv.substr(mode_csv.find('\n') + 1);
  }
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    std::ofstream out(fs::path(out_dir) / "budget.csv");
    out << csv;
    std::cout << "wrote " << (fs::path(out_dir) / "budget.csv").string() << "\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Fly-inspired looming detection and escape control simulator"};
  app.require_subcommand(1);

  // run
  auto* run_cmd =
      app.add_subcommand("run", "Execute a scenario file and write CSV logs");
  std::string run_scenario, run_out;
  CommonOpts run_common;
  run_cmd->add_option("--scenario", run_scenario, "Scenario file")->required();
  run_cmd->add_option("--out", run_out, "Output directory")->required();
  add_common(run_cmd, &run_common);

  // sweep
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Nine-angle evasion protocol plus the dual-threat trials");
  std::string sweep_out, sweep_angles = "default";
  bool sweep_no_dual = false;
  int sweep_dual_trials = 10;
  CommonOpts sweep_common;
  sweep_cmd->add_option("--out", sweep_out, "Output directory")->required();
  sweep_cmd->add_option("--angles", sweep_angles,
                        "Comma-separated approach angles (default: the nine)");
  sweep_cmd->add_flag("--no-dual", sweep_no_dual, "Skip the dual-threat runs");
  sweep_cmd->add_option("--dual-trials", sweep_dual_trials,
                        "Number of seeded dual-threat trials");
  add_common(sweep_cmd, &sweep_common);

  // stimuli
  auto* stim_cmd = app.add_subcommand(
      "stimuli", "Render a scenario's observer view as numbered graymaps");
  std::string stim_scenario, stim_out;
  CommonOpts stim_common;
  stim_cmd->add_option("--scenario", stim_scenario, "Scenario file")->required();
  stim_cmd->add_option("--out", stim_out, "Output directory")->required();
  add_common(stim_cmd, &stim_common);

  // inspect
  auto* ins_cmd = app.add_subcommand(
      "inspect", "Dump intermediate layers and attention logs for a frame range");
  std::string ins_scenario, ins_frames_dir, ins_range = "0:0", ins_out;
  CommonOpts ins_common;
  auto* opt_scn = ins_cmd->add_option("--scenario", ins_scenario, "Scenario file");
  auto* opt_dir =
      ins_cmd->add_option("--frames-dir", ins_frames_dir, "Directory of .pgm frames");
  opt_scn->excludes(opt_dir);
  ins_cmd->add_option("--range", ins_range, "Frame range A:B (inclusive)")
      ->required();
  ins_cmd->add_option("--out", ins_out, "Output directory")->required();
  add_common(ins_cmd, &ins_common);

  // bench
  auto* bench_cmd = app.add_subcommand(
      "bench", "Measure per-frame processing latency on a standard scenario");
  CommonOpts bench_common;
  add_common(bench_cmd, &bench_common);

  // report
  auto* rep_cmd = app.add_subcommand(
      "report", "Itemized memory budget for compact and float storage modes");
  std::string rep_out;
  CommonOpts rep_common;
  rep_cmd->add_option("--out", rep_out, "Directory for budget.csv");
  add_common(rep_cmd, &rep_common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*run_cmd) return do_run(run_scenario, run_out, run_common);
    if (*sweep_cmd) {
      return do_sweep(sweep_out, sweep_angles, sweep_no_dual, sweep_dual_trials,
                      sweep_common);
    }
    if (*stim_cmd) return do_stimuli(stim_scenario, stim_out, stim_common);
    if (*ins_cmd) {
      if (ins_scenario.empty() && ins_frames_dir.empty()) {
        std::cerr << "inspect needs --scenario or --frames-dir\n";
        return kUsageError;
      }
      return do_inspect(ins_scenario, ins_frames_dir, ins_range, ins_out,
                        ins_common);
    }
    if (*bench_cmd) return do_bench(bench_common.frames.value_or(1000), bench_common);
    if (*rep_cmd) return do_report(rep_out, rep_common);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kUsageError;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace lplc2::cli
