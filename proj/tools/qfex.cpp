// qfex: channel error-exponent bounds and exact stabilizer-code simulation.
//
// Subcommands:
//   exponent  - E(R,P) over rate / noise grids (figure-ready CSV)
//   bounds    - capacity lower bound vs the hashing rival bound
//   simulate  - per-syndrome-code fidelity report for a stabilizer file
//   verify    - module invariant batteries
//   gnuplot   - plotting script for the CSV outputs

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "qfex/exponent.hpp"
#include "qfex/io.hpp"
#include "qfex/selfcheck.hpp"
#include "qfex/simkit.hpp"
#include "qfex/util.hpp"

namespace {

using namespace qfex;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct SweepSpec {
  std::string var;
  double start = 0.0, stop = 0.0, step = 0.0;
};

SweepSpec parse_sweep(const std::string& text) {
  SweepSpec s;
  std::istringstream in(text);
  std::string tok;
  std::vector<std::string> parts;
  while (std::getline(in, tok, ':')) parts.push_back(tok);
  if (parts.size() != 4)
    throw argument_error("sweep must be VAR:START:STOP:STEP, got " + text);
  s.var = parts[0];
  try {
    s.start = std::stod(parts[1]);
    s.stop = std::stod(parts[2]);
    s.step = std::stod(parts[3]);
  } catch (const std::exception&) {
    throw argument_error("sweep has a non-numeric bound: " + text);
  }
  if (s.var != "R" && s.var != "p" && s.var != "gamma")
    throw argument_error("sweep variable must be one of R, p, gamma");
  if (s.step <= 0.0) throw argument_error("sweep step must be positive");
  if (s.start > s.stop) throw argument_error("sweep start must not exceed stop");
  return s;
}

std::vector<double> sweep_grid(const SweepSpec& s) {
  const auto count = static_cast<std::size_t>(
      std::floor((s.stop - s.start) / s.step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = s.start + i * s.step;
  return grid;
}

// Evaluate rows in a worker pool but emit them in grid order.
std::vector<std::string> run_rows(
    std::size_t count, unsigned jobs,
    const std::function<std::string(std::size_t)>& task) {
  std::vector<std::string> rows(count);
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) rows[i] = task(i);
    return rows;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(jobs);
  for (unsigned w = 0; w < jobs; ++w)
    pool.emplace_back([&, w] {
      try {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= count) return;
          rows[i] = task(i);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw argument_error("cannot open output file: " + out_path);
  out << content;
}

void write_manifest(const std::string& path, const std::string& command,
                    const std::vector<std::string>& argv, std::uint64_t seed,
                    const std::vector<std::string>& input_files) {
  if (path.empty()) return;
  nlohmann::json j;
  j["command"] = command;
  j["arguments"] = argv;
  j["seed"] = seed;
  j["tool_version"] = kVersion;
  const auto now = std::chrono::system_clock::now();
  j["timestamp_unix"] =
      std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch())
          .count();
  auto& digests = j["input_digests"];
  digests = nlohmann::json::object();
  for (const auto& f : input_files) {
    std::ifstream in(f, std::ios::binary);
    if (!in) continue;
    std::ostringstream buf;
    buf << in.rdbuf();
    char hex[32];
    std::snprintf(hex, sizeof(hex), "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fnv1a64(buf.str())));
    digests[f] = hex;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw argument_error("cannot open manifest file: " + path);
  out << j.dump(2) << "\n";
}

struct CommonArgs {
  std::string channel;
  std::vector<std::string> sweeps;
  std::uint64_t seed = 1;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string out;
  std::string format = "csv";
  std::string manifest;
};

void require_csv(const CommonArgs& args) {
  if (args.format != "csv")
    throw argument_error("only --format csv is supported");
}

int cmd_exponent(const CommonArgs& args, double rate, bool rate_set,
                 const std::vector<std::string>& argv) {
  require_csv(args);
  const ChannelSpec spec = parse_channel_spec(args.channel);

  std::vector<SweepSpec> sweeps;
  for (const auto& s : args.sweeps) sweeps.push_back(parse_sweep(s));
  const SweepSpec* rate_sweep = nullptr;
  const SweepSpec* noise_sweep = nullptr;
  for (const auto& s : sweeps) {
    if (s.var == "R") {
      if (rate_sweep) throw argument_error("duplicate R sweep");
      rate_sweep = &s;
    } else {
      if (noise_sweep) throw argument_error("duplicate channel sweep");
      if (!spec.parametric_in(s.var))
        throw argument_error("channel spec is not parametric in " + s.var);
      noise_sweep = &s;
    }
  }
  if (rate_sweep && rate_set)
    throw argument_error("give either --rate or an R sweep, not both");
  if (!rate_sweep && !rate_set)
    throw argument_error("exponent needs --rate or an R sweep");

  const std::vector<double> rates =
      rate_sweep ? sweep_grid(*rate_sweep) : std::vector<double>{rate};
  const std::vector<double> noises =
      noise_sweep ? sweep_grid(*noise_sweep) : std::vector<double>{0.0};

  // One distribution per noise point; reused across the rate grid.
  std::vector<ErrorDistribution> dists;
  dists.reserve(noises.size());
  for (double v : noises)
    dists.push_back(error_distribution(
        noise_sweep ? spec.build_with(v) : spec.build()));

  std::ostringstream csv;
  if (noise_sweep) csv << noise_sweep->var << ",";
  csv << "R,E,H_Qstar,active_branch\n";

  const std::size_t total = rates.size() * noises.size();
  const auto rows = run_rows(total, args.jobs, [&](std::size_t i) {
    const std::size_t ni = i / rates.size();
    const std::size_t ri = i % rates.size();
    const ExponentResult res = error_exponent(rates[ri], dists[ni]);
    std::string row;
    if (noise_sweep) row += fmt(noises[ni]) + ",";
    row += fmt(rates[ri]) + "," + fmt(res.value) + "," +
           fmt(entropy(res.minimizer)) + "," +
           (res.positive_branch ? "1" : "0");
    return row;
  });
  for (const auto& r : rows) csv << r << "\n";

  write_output(args.out, csv.str());
  const bool is_file = spec.kind == ChannelSpec::Kind::kFile;
  write_manifest(args.manifest, "exponent", argv, args.seed,
                 is_file ? std::vector<std::string>{spec.path}
                         : std::vector<std::string>{});
  return 0;
}

int cmd_bounds(const CommonArgs& args, int search_samples,
               const std::vector<std::string>& argv) {
  require_csv(args);
  const ChannelSpec spec = parse_channel_spec(args.channel);

  std::vector<SweepSpec> sweeps;
  for (const auto& s : args.sweeps) sweeps.push_back(parse_sweep(s));
  if (sweeps.size() > 1) throw argument_error("bounds takes at most one sweep");
  const SweepSpec* noise_sweep = sweeps.empty() ? nullptr : &sweeps[0];
  if (noise_sweep) {
    if (noise_sweep->var == "R")
      throw argument_error("bounds sweeps the channel parameter, not R");
    if (!spec.parametric_in(noise_sweep->var))
      throw argument_error("channel spec is not parametric in " +
                           noise_sweep->var);
  }
  const std::vector<double> noises =
      noise_sweep ? sweep_grid(*noise_sweep) : std::vector<double>{0.0};

  std::ostringstream csv;
  if (noise_sweep) csv << noise_sweep->var << ",";
  csv << "capacity_lb,capacity_lb_preprocessed,rival_lb,p_prime,"
         "identity_mass,closed_form_lb,"
         "eta_re_0,eta_im_0,eta_re_1,eta_im_1,eta_re_2,eta_im_2,"
         "eta_re_3,eta_im_3,capacity_lb_search\n";

  const auto rows = run_rows(noises.size(), args.jobs, [&](std::size_t i) {
    const QuantumChannel ch =
        noise_sweep ? spec.build_with(noises[i]) : spec.build();
    std::string row;
    if (noise_sweep) row += fmt(noises[i]) + ",";
    const double closed_form =
        spec.kind == ChannelSpec::Kind::kAmplitudeDamping
            ? amplitude_damping_capacity_formula(
                  noise_sweep ? noises[i] : spec.param)
            : kNan;
    if (ch.d == 2 && ch.m == 1) {
      const BoundReport rep = bound_comparison(ch, args.seed ^ i);
      row += fmt(rep.capacity_lb) + "," + fmt(rep.capacity_lb_preprocessed) +
             "," + fmt(rep.rival_lb) + "," + fmt(rep.p_prime) + "," +
             fmt(rep.p_ua_identity) + "," + fmt(closed_form);
      for (int k = 0; k < 4; ++k)
        row += "," + fmt(rep.eta(k).real()) + "," + fmt(rep.eta(k).imag());
    } else {
      const double cap = capacity_lower_bound(error_distribution(ch));
      row += fmt(cap) + "," + fmt(kNan) + "," + fmt(kNan) + "," + fmt(kNan) +
             "," + fmt(kNan) + "," + fmt(closed_form);
      for (int k = 0; k < 8; ++k) row += "," + fmt(kNan);
    }
    row += "," + fmt(search_samples > 0
                         ? random_basis_search(ch, search_samples,
                                               args.seed ^ i)
                               .capacity_lb
                         : kNan);
    return row;
  });
  for (const auto& r : rows) csv << r << "\n";

  write_output(args.out, csv.str());
  const bool is_file = spec.kind == ChannelSpec::Kind::kFile;
  write_manifest(args.manifest, "bounds", argv, args.seed,
                 is_file ? std::vector<std::string>{spec.path}
                         : std::vector<std::string>{});
  return 0;
}

int cmd_simulate(const CommonArgs& args, const std::string& stabilizer_path,
                 int starts, bool leaders_only,
                 const std::vector<std::string>& argv) {
  require_csv(args);
  const ChannelSpec spec = parse_channel_spec(args.channel);
  const QuantumChannel ch = spec.build();
  if (ch.m != 1)
    throw argument_error("simulate expects a single-system channel");
  const StabilizerSpec stab = stabilizer_from_file(stabilizer_path);
  const SymplecticSubspace L = resolve_stabilizer(stab, ch.d);
  const ErrorBasis basis = ErrorBasis::standard(ch.d);

  EnsembleOptions options;
  options.degenerate_set = !leaders_only;
  options.build.leaders = resolve_leaders(stab, ch.d);
  options.optimizer.starts = starts;
  options.optimizer.seed = args.seed;
  const EnsembleReport report = check_ensemble_bound(L, ch, basis, options);

  std::ostringstream csv;
  csv << "code,syndrome,F_min,F_avg,F_e,rhs,verdict\n";
  const auto codes = build_codes(L, basis, options.build);
  const char* verdict = report.verdict == EnsembleVerdict::kConfirmed
                            ? "confirmed"
                            : "inconclusive";
  for (std::size_t i = 0; i < report.codes.size(); ++i) {
    const auto& row = report.codes[i];
    std::string syndrome;
    for (std::uint16_t s : codes[i].syndrome)
      syndrome += static_cast<char>('0' + s);
    csv << row.code_index << "," << syndrome << "," << fmt(row.min_upper)
        << "," << fmt(row.min_avg_upper) << "," << fmt(row.entanglement)
        << "," << fmt(report.rhs) << "," << verdict << "\n";
  }
  write_output(args.out, csv.str());
  std::vector<std::string> inputs = {stabilizer_path};
  if (spec.kind == ChannelSpec::Kind::kFile) inputs.push_back(spec.path);
  write_manifest(args.manifest, "simulate", argv, args.seed, inputs);
  return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed,
               const std::string& out_path) {
  const auto results = run_suite(suite, seed);
  std::ostringstream text;
  std::size_t passed = 0;
  for (const auto& r : results) {
    text << (r.pass ? "ok   " : "FAIL ") << r.name << " trials=" << r.trials
         << " worst=" << fmt(r.worst) << " limit=" << fmt(r.limit) << "\n";
    if (r.pass) ++passed;
  }
  text << "passed " << passed << "/" << results.size() << " (suite=" << suite
       << " seed=" << seed << ")\n";
  write_output(out_path, text.str());
  return all_passed(results) ? 0 : 1;
}

int cmd_gnuplot(const std::string& kind, const std::string& data,
                const std::string& out_path) {
  std::ostringstream script;
  script << "set datafile separator ','\n";
  if (kind == "fig1") {
    script << "set xlabel 'p'\nset ylabel 'R'\nset zlabel 'E(R,p)'\n"
           << "set dgrid3d 40,40\nset hidden3d\n"
           << "splot '" << data << "' every ::1 using 1:2:3 with lines "
           << "title 'error exponent'\n";
  } else if (kind == "fig2") {
    script << "set xlabel 'gamma'\nset ylabel 'capacity lower bound'\n"
           << "set yrange [0:1]\n"
           << "plot '" << data << "' every ::1 using 1:2 with lines "
           << "title 'this bound', \\\n     '" << data
           << "' every ::1 using 1:4 with lines dashtype 2 "
           << "title 'hashing bound 1-H1(p'')'\n";
  } else {
    throw argument_error("gnuplot kind must be fig1 or fig2");
  }
  write_output(out_path, script.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Channel error-exponent bounds and exact stabilizer-code "
               "simulation"};
  app.set_help_all_flag("--help-all");
  app.require_subcommand(1);

  CommonArgs common;
  double rate = 0.0;
  bool rate_set = false;
  std::string stabilizer_path;
  int starts = 32;
  bool leaders_only = false;
  std::string suite = "all";
  std::string gnuplot_kind, gnuplot_data;

  auto add_common = [&](CLI::App* sub, bool with_channel = true) {
    if (with_channel)
      sub->add_option("--channel", common.channel,
                      "Channel file or builtin spec")
          ->required();
    sub->add_option("--sweep", common.sweeps,
                    "Sweep VAR:START:STOP:STEP (VAR in {R, p, gamma})");
    sub->add_option("--seed", common.seed, "Deterministic seed");
    sub->add_option("--jobs", common.jobs, "Worker threads");
    sub->add_option("--out", common.out, "Output file (default stdout)");
    sub->add_option("--format", common.format, "Output format (csv)");
    sub->add_option("--manifest", common.manifest,
                    "Write a run manifest JSON to this path");
  };

  CLI::App* exponent = app.add_subcommand(
      "exponent", "Error exponent E(R,P) over rate / noise grids");
  add_common(exponent);
  exponent->add_option("--rate", rate, "Fixed rate R in [0,1]")
      ->check(CLI::Range(0.0, 1.0));

  CLI::App* bounds = app.add_subcommand(
      "bounds", "Capacity lower bound, rival hashing bound, and p'");
  add_common(bounds);
  int search_samples = 0;
  bounds->add_option("--search", search_samples,
                     "Random (basis, preprocessing) samples for the "
                     "capacity_lb_search column");

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Per-syndrome-code fidelity report for a stabilizer");
  add_common(simulate);
  simulate->add_option("--stabilizer", stabilizer_path, "Stabilizer file")
      ->required();
  simulate->add_option("--starts", starts, "Optimizer multi-starts");
  simulate->add_flag("--leaders-only", leaders_only,
                     "Use the plain leader set instead of the enlarged one");

  CLI::App* verify =
      app.add_subcommand("verify", "Run module invariant batteries");
  verify->add_option("--suite", suite,
                     "gfsym | channel | exponent | simkit | all");
  verify->add_option("--seed", common.seed, "Deterministic seed");
  verify->add_option("--out", common.out, "Output file (default stdout)");

  CLI::App* gnuplot =
      app.add_subcommand("gnuplot", "Emit a plotting script for CSV output");
  gnuplot->add_option("--kind", gnuplot_kind, "fig1 | fig2")->required();
  gnuplot->add_option("--data", gnuplot_data, "CSV file to plot")->required();
  gnuplot->add_option("--out", common.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
    rate_set = exponent->count("--rate") > 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    if (exponent->parsed())
      return cmd_exponent(common, rate, rate_set, args);
    if (bounds->parsed()) return cmd_bounds(common, search_samples, args);
    if (simulate->parsed())
      return cmd_simulate(common, stabilizer_path, starts, leaders_only, args);
    if (verify->parsed()) return cmd_verify(suite, common.seed, common.out);
    if (gnuplot->parsed())
      return cmd_gnuplot(gnuplot_kind, gnuplot_data, common.out);
  } catch (const resource_error& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const invariant_violation& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return 1;
  } catch (const argument_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const validation_error& e) {
    std::cerr << "input validation error: " << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
