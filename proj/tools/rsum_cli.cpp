#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rsum/baselines.hpp"
#include "rsum/digit_filter.hpp"
#include "rsum/instances.hpp"
#include "rsum/report_json.hpp"
#include "rsum/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct GenArgs {
  std::string family = "uniform";
  std::size_t n = 0;
  rsum::Value bound = 1000000;
  std::uint64_t seed = 0;
  int arity = 3;
  std::string out;
};

int run_gen(const GenArgs& args) {
  rsum::Instance instance;
  if (args.family == "uniform") {
    instance = rsum::gen_uniform(args.n, args.bound, args.seed);
  } else if (args.family == "planted") {
    instance = rsum::gen_planted(args.n, args.bound, args.arity, args.seed).first;
  } else if (args.family == "no_solution") {
    instance = rsum::gen_no_solution(args.n, args.bound, args.seed);
  } else if (args.family == "adversarial") {
    instance = rsum::gen_adversarial(args.n, args.bound, args.arity, args.seed);
  } else {
    std::cerr << "unknown family: " << args.family << "\n";
    return kExitUsage;
  }
  rsum::write_instance_file(instance, args.out);
  std::cout << args.out << "\n";
  return kExitOk;
}

struct SolveArgs {
  std::string in;
  int arity = 3;
  std::string threshold = "auto";
  std::string fallback = "mitm";
  int threads = 1;
  bool allow_repeats = false;
  std::string out;
};

bool parse_threshold(const std::string& text, rsum::SolverConfig& config, std::string& error) {
  if (text == "auto") {
    config.threshold_policy = rsum::ThresholdPolicy::paper_primary;
  } else if (text == "secondary") {
    config.threshold_policy = rsum::ThresholdPolicy::paper_secondary;
  } else if (text == "none") {
    config.threshold_policy = rsum::ThresholdPolicy::unlimited;
  } else {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      config.threshold_override = v;
    } catch (const std::exception&) {
      error = "bad --threshold value '" + text + "' (want auto|secondary|none|<integer>)";
      return false;
    }
  }
  return true;
}

bool parse_fallback(const std::string& text, rsum::SolverConfig& config, std::string& error) {
  if (text == "mitm") {
    config.fallback = rsum::FallbackPolicy::meet_in_the_middle;
  } else if (text == "brute") {
    config.fallback = rsum::FallbackPolicy::brute_force;
  } else if (text == "none") {
    config.fallback = rsum::FallbackPolicy::none;
  } else {
    error = "bad --fallback value '" + text + "' (want mitm|brute|none)";
    return false;
  }
  return true;
}

int emit_json(const nlohmann::json& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload.dump(2) << "\n";
    return kExitOk;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot open for writing: " << out_path << "\n";
    return kExitIo;
  }
  out << payload.dump(2) << "\n";
  return out ? kExitOk : kExitIo;
}

int run_solve(const SolveArgs& args) {
  rsum::SolverConfig config;
  config.arity = args.arity;
  config.threads = args.threads;
  config.allow_repeated_ordinals = args.allow_repeats;
  std::string error;
  if (!parse_threshold(args.threshold, config, error) ||
      !parse_fallback(args.fallback, config, error)) {
    std::cerr << error << "\n";
    return kExitUsage;
  }

  const rsum::Instance instance = rsum::read_instance_file(args.in);
  const auto omega = rsum::make_bounded(instance.values, config.arity);
  try {
    rsum::SolverReport report = rsum::solve(omega, config);
    report.poly_degree = instance.poly_degree;
    nlohmann::json payload = rsum::report_to_json(report);
    rsum::attach_instance_metadata(payload, instance);
    return emit_json(payload, args.out);
  } catch (const rsum::CapacityError& e) {
    nlohmann::json payload = rsum::report_to_json(e.report);
    rsum::attach_instance_metadata(payload, instance);
    payload["error"] = e.what();
    const int io = emit_json(payload, args.out);
    return io == kExitOk ? kExitCapacity : io;
  }
}

struct OracleArgs {
  std::string in;
  int arity = 3;
  std::string algo = "brute";
  std::string out;
};

int run_oracle(const OracleArgs& args) {
  if (args.algo != "brute" && args.algo != "mitm") {
    std::cerr << "bad --algo value '" << args.algo << "' (want brute|mitm)\n";
    return kExitUsage;
  }
  const rsum::Instance instance = rsum::read_instance_file(args.in);
  const auto omega = rsum::make_bounded(instance.values, args.arity);
  const auto start = Clock::now();
  const auto solutions = args.algo == "brute" ? rsum::brute_force_rsum(omega, args.arity)
                                              : rsum::meet_in_the_middle_rsum(omega, args.arity);
  nlohmann::json payload = rsum::oracle_report_to_json(omega.size(), args.arity, args.algo,
                                                       solutions, omega, ms_since(start));
  rsum::attach_instance_metadata(payload, instance);
  return emit_json(payload, args.out);
}

struct BenchArgs {
  std::string family = "uniform";
  std::vector<std::size_t> sizes;
  int arity = 3;
  int reps = 3;
  std::uint64_t seed = 1;
  rsum::Value bound = 0;  // 0: fixed default so digit geometry is size-independent
  std::vector<std::string> algos = {"digit_filter", "mitm"};
  std::vector<std::string> phases = {"filter", "total"};
  std::string out;
};

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t mid = xs.size() / 2;
  return xs.size() % 2 == 1 ? xs[mid] : (xs[mid - 1] + xs[mid]) / 2.0;
}

rsum::Instance bench_instance(const BenchArgs& args, std::size_t n, std::uint64_t seed,
                              rsum::Value bound) {
  if (args.family == "uniform") return rsum::gen_uniform(n, bound, seed);
  if (args.family == "planted") return rsum::gen_planted(n, bound, args.arity, seed).first;
  if (args.family == "no_solution") return rsum::gen_no_solution(n, bound, seed);
  if (args.family == "adversarial") return rsum::gen_adversarial(n, bound, args.arity, seed);
  throw std::runtime_error("unknown family: " + args.family);
}

int run_bench(const BenchArgs& args) {
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!args.out.empty()) {
    file.open(args.out);
    if (!file) {
      std::cerr << "cannot open for writing: " << args.out << "\n";
      return kExitIo;
    }
    out = &file;
  }
  auto has = [](const std::vector<std::string>& list, const char* name) {
    return std::find(list.begin(), list.end(), name) != list.end();
  };

  *out << "family,n,r,algo,phase,median_ms,variant_count\n";
  for (std::size_t size_index = 0; size_index < args.sizes.size(); ++size_index) {
    const std::size_t n = args.sizes[size_index];
    const rsum::Value bound = args.bound > 0 ? args.bound : (rsum::Value{1} << 30);
    const rsum::Instance instance =
        bench_instance(args, n, args.seed + 1000 * size_index, bound);
    const auto omega = rsum::make_bounded(instance.values, args.arity);

    if (has(args.algos, "digit_filter")) {
      if (has(args.phases, "filter")) {
        std::vector<double> times;
        std::uint64_t accepted = 0;
        const int log_arity = rsum::ceil_log2(static_cast<std::uint64_t>(args.arity));
        for (int rep = 0; rep < args.reps; ++rep) {
          const auto start = Clock::now();
          accepted = 0;
          for (int shift : {0, log_arity, 2 * log_arity}) {
            const rsum::PassConfig config{shift, shift == 0};
            const rsum::FilterPass pass = rsum::run_filter_pass(omega, args.arity, config);
            for (const auto& tuples : pass.tuples) accepted += tuples.tuples.size();
          }
          times.push_back(ms_since(start));
        }
        *out << args.family << ',' << n << ',' << args.arity << ",digit_filter,filter,"
             << median(times) << ',' << accepted << "\n";
      }
      if (has(args.phases, "total")) {
        std::vector<double> times;
        std::uint64_t variants = 0;
        for (int rep = 0; rep < args.reps; ++rep) {
          rsum::SolverConfig config;
          config.arity = args.arity;
          const auto start = Clock::now();
          const rsum::SolverReport report = rsum::solve(omega, config);
          times.push_back(ms_since(start));
          variants = report.variant_count;
        }
        *out << args.family << ',' << n << ',' << args.arity << ",digit_filter,total,"
             << median(times) << ',' << variants << "\n";
      }
    }
    if (has(args.algos, "mitm") && has(args.phases, "total")) {
      std::vector<double> times;
      for (int rep = 0; rep < args.reps; ++rep) {
        const auto start = Clock::now();
        const auto solutions = rsum::meet_in_the_middle_rsum(omega, args.arity);
        times.push_back(ms_since(start));
        (void)solutions;
      }
      *out << args.family << ',' << n << ',' << args.arity << ",mitm,total," << median(times)
           << ",0\n";
    }
    if (has(args.algos, "brute") && has(args.phases, "total")) {
      std::vector<double> times;
      for (int rep = 0; rep < args.reps; ++rep) {
        const auto start = Clock::now();
        const auto solutions = rsum::brute_force_rsum(omega, args.arity);
        times.push_back(ms_since(start));
        (void)solutions;
      }
      *out << args.family << ',' << n << ',' << args.arity << ",brute,total," << median(times)
           << ",0\n";
    }
  }
  return out->good() ? kExitOk : kExitIo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic rSUM solver based on digit-projection filtering"};
  app.require_subcommand(1);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "generate an instance file");
  gen->add_option("--family", gen_args.family, "uniform|planted|no_solution|adversarial");
  gen->add_option("--n", gen_args.n, "element count")->required();
  gen->add_option("--bound", gen_args.bound, "magnitude bound");
  gen->add_option("--seed", gen_args.seed, "generator seed");
  gen->add_option("--r", gen_args.arity, "tuple arity (planted/adversarial)");
  gen->add_option("--out", gen_args.out, "output path")->required();

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "run the digit-projection solver");
  solve->add_option("--in", solve_args.in, "instance file")->required();
  solve->add_option("--r", solve_args.arity, "tuple arity");
  solve->add_option("--threshold", solve_args.threshold, "auto|secondary|none|<integer>");
  solve->add_option("--fallback", solve_args.fallback, "mitm|brute|none");
  solve->add_option("--threads", solve_args.threads, "worker threads for block intersection");
  solve->add_flag("--allow-repeats", solve_args.allow_repeats,
                  "allow tuples that reuse one position");
  solve->add_option("--out", solve_args.out, "write the JSON report here instead of stdout");

  OracleArgs oracle_args;
  CLI::App* oracle = app.add_subcommand("oracle", "run a reference algorithm");
  oracle->add_option("--in", oracle_args.in, "instance file")->required();
  oracle->add_option("--r", oracle_args.arity, "tuple arity");
  oracle->add_option("--algo", oracle_args.algo, "brute|mitm");
  oracle->add_option("--out", oracle_args.out, "write the JSON report here instead of stdout");

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "benchmark solver phases against baselines");
  bench->add_option("--family", bench_args.family, "instance family");
  bench->add_option("--sizes", bench_args.sizes, "instance sizes")->required()->delimiter(',');
  bench->add_option("--r", bench_args.arity, "tuple arity");
  bench->add_option("--reps", bench_args.reps, "repetitions per row (median reported)");
  bench->add_option("--seed", bench_args.seed, "base seed");
  bench->add_option("--bound", bench_args.bound, "magnitude bound (default 2^30)");
  bench->add_option("--algos", bench_args.algos, "digit_filter|mitm|brute")->delimiter(',');
  bench->add_option("--phases", bench_args.phases, "filter|total")->delimiter(',');
  bench->add_option("--out", bench_args.out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return run_gen(gen_args);
    if (solve->parsed()) return run_solve(solve_args);
    if (oracle->parsed()) return run_oracle(oracle_args);
    if (bench->parsed()) return run_bench(bench_args);
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
