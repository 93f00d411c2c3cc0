// densest: command-line front end.
//
//   densest generate   --sequence log-odd --n 100
//   densest trajectory --sequence kronecker:golden --n 1000 --format csv
//   densest verify     --suite example1 --n 100000
//   densest bench      --sequence log-odd --sequence kronecker:golden --n 10000
//   densest search     --n 10 --restarts 64 --seed 1
//   densest sweep      --horizons 2,3,4,5 --restarts 16
//
// Exit codes: 0 clean, 1 verification failure, 2 usage or input error,
// 3 anything else.
// A key = value config file (--config, or $DENSEST_CONFIG) supplies defaults
// for the chosen subcommand; keys are long flag names without dashes and
// explicit flags win.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "densest/densest.hpp"

namespace {

using namespace densest;

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct Output {
  std::string path;

  void write(const std::string& text) const {
    if (path.empty() || path == "-") {
      std::cout << text;
      std::cout.flush();
      return;
    }
    std::ofstream os(path);
    if (!os) throw input_error("cannot write '" + path + "'");
    os << text;
    if (!os) throw input_error("write failed for '" + path + "'");
  }
};

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---- config file ----------------------------------------------------------

std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string{};
      return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw input_error(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

/// Inserts config-file values as flags right after the subcommand name,
/// skipping keys given explicitly on the command line.
std::vector<std::string> merge_config(const CLI::App& app, std::vector<std::string> args) {
  std::optional<std::string> config_path;
  std::size_t sub_pos = args.size();
  for (std::size_t i = 1; i < args.size(); ++i) {
    const auto& a = args[i];
    if (a == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
    } else if (a.rfind("--config=", 0) == 0) {
      config_path = a.substr(9);
    } else if (sub_pos == args.size() && a.rfind("-", 0) != 0) {
      for (const auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
        if (sub->get_name() == a) sub_pos = i;
      }
    }
  }
  if (!config_path) {
    if (const char* env = std::getenv("DENSEST_CONFIG"); env && *env) config_path = env;
  }
  if (!config_path || sub_pos == args.size()) return args;

  const CLI::App* sub = app.get_subcommand_no_throw(args[sub_pos]);
  std::vector<std::string> injected;
  for (const auto& [key, value] : read_config(*config_path)) {
    const std::string flag = "--" + key;
    if (key == "config" || sub->get_option_no_throw(flag) == nullptr) {
      throw input_error("unknown config key '" + key + "' for '" + sub->get_name() + "'");
    }
    bool explicit_flag = false;
    for (std::size_t i = sub_pos + 1; i < args.size(); ++i) {
      if (args[i] == flag || args[i].rfind(flag + "=", 0) == 0) explicit_flag = true;
    }
    if (explicit_flag) continue;
    injected.push_back(flag);
    injected.push_back(value);
  }
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(sub_pos) + 1, injected.begin(), injected.end());
  return args;
}

// ---- subcommands ----------------------------------------------------------

struct SequenceOptions {
  std::string sequence = "log-odd";
  unsigned precision = kDefaultLogPrecision;

  SequenceSpec spec() const {
    auto s = SequenceSpec::parse(sequence);
    s.log_precision = precision;
    return s;
  }
};

int cmd_generate(const SequenceOptions& seq, std::uint64_t n, const Output& out) {
  std::ostringstream os;
  for (const auto& p : take(seq.spec(), n)) os << format_real(p.value()) << '\n';
  out.write(os.str());
  return 0;
}

int cmd_trajectory(const SequenceOptions& seq, std::uint64_t n, const std::string& format, const Output& out) {
  const auto records = track(seq.spec(), n);
  std::ostringstream os;
  if (format == "csv") {
    write_trajectory_csv(os, records);
  } else {
    os << Json(records).dump(2) << '\n';
  }
  out.write(os.str());
  return 0;
}

int cmd_verify(const std::string& suite, const std::vector<std::string>& sequences, std::uint64_t n,
               std::uint64_t witness_limit, const Output& out) {
  if (suite == "example1") {
    if (!sequences.empty()) throw input_error("example1 always checks the log-odd sequence; drop --sequence");
    const auto report = verify_example1(n, witness_limit);
    out.write(to_json(report).dump(2) + "\n");
    std::cerr << "example1 n_max=" << n << ": " << (report.clean() ? "clean" : "VIOLATIONS") << '\n';
    return report.clean() ? 0 : kExitViolation;
  }

  std::vector<SequenceSpec> specs;
  if (sequences.empty()) {
    specs = stock_sequences();
  } else {
    for (const auto& s : sequences) specs.push_back(SequenceSpec::parse(s));
  }

  std::vector<std::future<std::pair<Json, bool>>> jobs;
  for (const auto& spec : specs) {
    jobs.push_back(std::async(std::launch::async, [&suite, spec, n]() -> std::pair<Json, bool> {
      if (suite == "w1") {
        auto r = verify_w1(spec, n);
        return {to_json(r), r.clean()};
      }
      if (suite == "w2") {
        auto r = verify_w2(spec, n);
        return {to_json(r), r.clean()};
      }
      auto r = check_rank_inequalities(spec, n);
      return {to_json(r), r.clean()};
    }));
  }
  Json reports = Json::array();
  bool clean = true;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    auto [j, ok] = jobs[i].get();
    clean = clean && ok;
    std::cerr << suite << ' ' << specs[i].label() << ": " << (ok ? "clean" : "VIOLATION");
    if (j.contains("skipped_from_duplicate") && !j["skipped_from_duplicate"].is_null()) {
      std::cerr << " (skipped from duplicate at n=" << j["skipped_from_duplicate"] << ')';
    }
    std::cerr << '\n';
    reports.push_back(std::move(j));
  }
  Json doc = {{"suite", suite}, {"n_max", n}, {"clean", clean}, {"reports", std::move(reports)}};
  out.write(doc.dump(2) + "\n");
  return clean ? 0 : kExitViolation;
}

struct BenchSummary {
  std::string label;
  double max_nD = 0.0;
  double min_nd = 0.0;
  bool strictly_decreasing = true;
};

int cmd_bench(const std::vector<std::string>& sequences, std::uint64_t n, unsigned precision, const Output& out) {
  if (sequences.empty()) throw input_error("bench needs at least one --sequence");
  if (n < 2) throw input_error("bench needs --n >= 2");
  std::vector<SequenceSpec> specs;
  for (const auto& s : sequences) {
    specs.push_back(SequenceSpec::parse(s));
    specs.back().log_precision = precision;
  }

  std::vector<std::future<std::vector<TrajectoryRecord>>> jobs;
  for (const auto& spec : specs) jobs.push_back(std::async(std::launch::async, [spec, n] { return track(spec, n); }));
  std::vector<std::vector<TrajectoryRecord>> runs;
  for (auto& j : jobs) runs.push_back(j.get());

  std::vector<BenchSummary> summary;
  for (std::size_t s = 0; s < specs.size(); ++s) {
    BenchSummary b{specs[s].label(), 0.0, std::numeric_limits<double>::infinity(), true};
    const auto& r = runs[s];
    for (std::size_t i = 0; i < r.size(); ++i) {
      b.max_nD = std::max(b.max_nD, r[i].nD_n);
      if (r[i].nd_n) b.min_nd = std::min(b.min_nd, *r[i].nd_n);
      if (i >= 2 && !(*r[i].d_n < *r[i - 1].d_n)) b.strictly_decreasing = false;
    }
    summary.push_back(b);
  }

  std::ostringstream os;
  os << 'n';
  for (const auto& b : summary) os << ',' << b.label << ":nD_n," << b.label << ":nd_n";
  os << '\n';
  for (std::uint64_t i = 0; i < n; ++i) {
    os << i + 1;
    for (const auto& r : runs) {
      os << ',' << format_real(r[i].nD_n) << ',' << (r[i].nd_n ? format_real(*r[i].nd_n) : std::string{});
    }
    os << '\n';
  }
  os << "\nsequence,max_nD_n,min_nd_n,d_n_strictly_decreasing\n";
  for (const auto& b : summary) {
    os << b.label << ',' << format_real(b.max_nD) << ',' << format_real(b.min_nd) << ','
       << (b.strictly_decreasing ? "true" : "false") << '\n';
    std::cerr << b.label << ": max nD_n=" << b.max_nD << " min nd_n=" << b.min_nd
              << " d_n strictly decreasing=" << (b.strictly_decreasing ? "true" : "false") << '\n';
  }
  out.write(os.str());
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"Densest circle sequences: generation, dispersion trajectories, verification, search"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key = value defaults for the subcommand (env DENSEST_CONFIG)");

  SequenceOptions seq;
  std::uint64_t n = 0;
  std::string out_path;
  auto add_common = [&](CLI::App* sub, bool single_sequence) {
    if (single_sequence) sub->add_option("--sequence", seq.sequence, "log-odd | kronecker:<alpha|golden> | vdc:<base> | random:<seed> | file:<path>");
    sub->add_option("--precision", seq.precision, "bits of working precision for log-odd points")
        ->check(CLI::Range(53u, 256u));
    sub->add_option("--out", out_path, "output path (default stdout)");
  };

  auto* generate = app.add_subcommand("generate", "write the first n points, one per line");
  add_common(generate, true);
  generate->add_option("--n", n, "number of points")->required()->check(CLI::PositiveNumber);

  std::string format = "csv";
  auto* trajectory = app.add_subcommand("trajectory", "D_n, d_n and ratios for n = 1..N");
  add_common(trajectory, true);
  trajectory->add_option("--n", n, "horizon")->required()->check(CLI::PositiveNumber);
  trajectory->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  std::string suite;
  std::vector<std::string> sequences;
  std::uint64_t witness_limit = 1000;
  auto* verify = app.add_subcommand("verify", "run a verification suite; exit 1 on any violation");
  verify->add_option("--suite", suite, "example1 | w1 | w2 | rank")
      ->required()
      ->check(CLI::IsMember({"example1", "w1", "w2", "rank"}));
  verify->add_option("--sequence", sequences, "sequence(s) to check (default: the 15 stock sequences)");
  verify->add_option("--n", n, "horizon n_max")->required()->check(CLI::PositiveNumber);
  verify->add_option("--witness-limit", witness_limit, "example1: list witnesses for n up to this");
  verify->add_option("--out", out_path, "report path (default stdout)");

  auto* bench = app.add_subcommand("bench", "side-by-side nD_n / nd_n trajectories with a summary block");
  bench->add_option("--sequence", sequences, "sequence to include (repeatable)");
  bench->add_option("--n", n, "horizon")->required()->check(CLI::PositiveNumber);
  bench->add_option("--precision", seq.precision, "bits of working precision for log-odd points")
      ->check(CLI::Range(53u, 256u));
  bench->add_option("--out", out_path, "CSV path (default stdout)");

  SearchConfig cfg;
  unsigned threads = 0;
  std::vector<std::uint64_t> horizons;
  auto add_search = [&](CLI::App* sub) {
    sub->add_option("--restarts", cfg.restarts, "independent restarts")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "master seed");
    sub->add_option("--iterations", cfg.schedule.iterations, "iterations per restart")->check(CLI::PositiveNumber);
    sub->add_option("--step", cfg.schedule.initial_step, "initial perturbation step")->check(CLI::PositiveNumber);
    sub->add_option("--decay", cfg.schedule.decay, "step decay per iteration, in (0,1)");
    sub->add_option("--floor-n", cfg.objective_floor_n, "smallest n in the objective");
    sub->add_option("--threads", threads, "worker threads (0 = hardware)");
    sub->add_option("--out", out_path, "JSON path (default stdout)");
  };
  auto* search_cmd = app.add_subcommand("search", "maximize min_n d_n / (2 phi(2n-1)) over ordered N-point lists");
  search_cmd->add_option("--n", cfg.N, "horizon N")->required();
  add_search(search_cmd);
  auto* sweep_cmd = app.add_subcommand("sweep", "search at several horizons");
  sweep_cmd->add_option("--horizons", horizons, "ascending horizons, e.g. 2,3,4")->required()->delimiter(',');
  add_search(sweep_cmd);

  std::vector<std::string> args(argv, argv + argc);
  try {
    args = merge_config(app, args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  std::vector<const char*> cargs;
  for (const auto& a : args) cargs.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const Output out{out_path};
  try {
    if (*generate) return cmd_generate(seq, n, out);
    if (*trajectory) return cmd_trajectory(seq, n, format, out);
    if (*verify) return cmd_verify(suite, sequences, n, witness_limit, out);
    if (*bench) return cmd_bench(sequences, n, seq.precision, out);
    if (*search_cmd) {
      out.write(to_json(search(cfg, threads)).dump(2) + "\n");
      return 0;
    }
    if (*sweep_cmd) {
      out.write(to_json(sweep(horizons, cfg, threads)).dump(2) + "\n");
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << '\n';
    return 3;
  }
}
