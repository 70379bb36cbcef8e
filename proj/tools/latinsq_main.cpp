#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "latinsq/counting.hpp"
#include "latinsq/sampler.hpp"
#include "latinsq/stats.hpp"
#include "latinsq/subsquares.hpp"
#include "latinsq/verify.hpp"

using namespace latinsq;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << content;
}

struct CommonFlags {
  std::uint64_t seed = kDefaultSeed;
  int workers = 0;
  bool allow_large = false;

  CountOptions count_options() const {
    CountOptions opts;
    opts.workers = workers;
    opts.allow_large = allow_large;
    return opts;
  }
};

PartialSquare corner_block(int n, int m) {
  const LatinSquare M = build_M(m);
  PartialSquare p(n, m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) p.set(r, c, M.at(r, c));
  return p;
}

int run_sample(int order, std::uint64_t samples, long long burn_in, long long thin,
               const CommonFlags& flags, bool stats_only, const std::string& out_path) {
  SamplerConfig config{order, burn_in, thin, flags.seed};
  const int workers = flags.workers ? flags.workers : default_workers();
  std::ostringstream out;
  if (stats_only) {
    const Estimate est =
        estimate_Em(order, std::min(order, 2), samples, flags.seed, workers);
    out << estimate_csv_header() << '\n' << estimate_csv_row(est) << '\n';
  } else {
    bool first = true;
    sample_many(config, samples, workers,
                [&](std::uint64_t, const LatinSquare& L) {
                  if (!first) out << '\n';
                  first = false;
                  out << serialize(L);
                });
  }
  write_output(out_path, out.str());
  return kExitPass;
}

int run_count(const std::string& input, std::optional<int> m) {
  const LatinSquare L = parse_square(read_input(input));
  std::ostringstream out;
  if (m) {
    out << *m << ' ' << count_subsquares(L, *m) << '\n';
  } else {
    for (int order = 1; order <= L.order(); ++order)
      out << order << ' ' << count_subsquares(L, order) << '\n';
  }
  write_output("", out.str());
  return kExitPass;
}

int run_enumerate(std::optional<int> order, const std::string& constraints,
                  bool count_only, const CommonFlags& flags,
                  const std::string& out_path) {
  ConstraintSpec spec;
  if (!constraints.empty()) {
    spec = parse_constraints(read_input(constraints));
    if (order && *order != spec.order)
      throw std::runtime_error("--order disagrees with the constraint file");
  } else if (order) {
    spec = ConstraintSpec::unconstrained(*order);
  } else {
    throw CLI::ValidationError("enumerate", "need --order or --constraints");
  }
  std::ostringstream out;
  if (!spec.consistent())
    std::cerr << "note: constraints are inconsistent (vacuous); count is 0\n";
  if (count_only) {
    out << count_constrained(spec, flags.count_options()).str() << '\n';
  } else {
    bool first = true;
    enumerate_constrained(spec, [&](const LatinSquare& L) {
      if (!first) out << '\n';
      first = false;
      out << serialize(L);
    }, flags.count_options());
  }
  write_output(out_path, out.str());
  return kExitPass;
}

int run_complete(const std::string& input) {
  const PartialSquare p = parse_partial(read_input(input));
  const auto done = complete(p);
  write_output("", done ? serialize(*done) : "no completion\n");
  return kExitPass;
}

int run_estimate(int n, int m, std::uint64_t samples, bool exact, bool histogram,
                 const CommonFlags& flags, const std::string& out_path) {
  std::ostringstream out;
  if (histogram) {
    const auto hist = intercalate_histogram(
        n, samples, flags.seed, flags.workers ? flags.workers : default_workers());
    for (const auto& [count, freq] : hist) out << count << ' ' << freq << '\n';
  } else if (exact) {
    out << estimate_csv_header() << '\n'
        << estimate_csv_row(exact_Em_estimate(n, m, flags.count_options())) << '\n';
  } else {
    const Estimate est = estimate_Em(
        n, m, samples, flags.seed, flags.workers ? flags.workers : default_workers());
    out << estimate_csv_header() << '\n' << estimate_csv_row(est) << '\n';
  }
  write_output(out_path, out.str());
  return kExitPass;
}

void print_report_text(const Report& rep) {
  std::cout << rep.statement;
  for (const auto& [key, value] : rep.params) std::cout << ' ' << key << '=' << value;
  std::cout << '\n';
  for (const Check& check : rep.checks) {
    std::cout << "  " << (check.pass ? "pass" : "FAIL") << ' ' << check.name << ": "
              << rational_str(check.lhs)
              << (check.relation == Relation::equal ? " = " : " <= ")
              << rational_str(check.rhs) << '\n';
  }
}

struct VerifyArgs {
  std::string statement;
  int n = 5, m = 2, alpha = 1, j = 1, index = 0;
  int r = 0, c = 0, r_prime = 0;  // 1-based on the CLI; 0 means default
  std::string axis = "row";
  std::string input;
  bool slow = false;
  bool monte_carlo = false;
  std::uint64_t samples = 10000;
  std::string json_path;
};

int run_verify(const VerifyArgs& args, const CommonFlags& flags) {
  const CountOptions opts = flags.count_options();
  const Axis axis = args.axis == "col" ? Axis::col : Axis::row;
  std::vector<Report> reports;

  if (args.statement == "setnrc") {
    reports.push_back(verify_setnrc(args.n, args.m, args.alpha, axis, opts));
  } else if (args.statement == "prelim") {
    PartialSquare p = args.input.empty()
                          ? corner_block(args.n, args.m)
                          : parse_partial(read_input(args.input));
    const int r = args.r ? args.r - 1 : p.symbol_bound() - 1;
    const int c = args.c ? args.c - 1 : p.symbol_bound() - 1;
    const int r_prime = args.r_prime ? args.r_prime - 1 : p.symbol_bound();
    reports.push_back(verify_prelim(p, r, c, r_prime, opts));
  } else if (args.statement == "boundary-row") {
    reports.push_back(verify_boundary(args.n, args.m, args.j, Axis::row, opts));
  } else if (args.statement == "boundary-col") {
    reports.push_back(verify_boundary(args.n, args.m, args.j, Axis::col, opts));
  } else if (args.statement == "step") {
    auto all = verify_chain_steps(args.n, args.m, opts);
    if (args.index) {
      if (args.index < 1 || args.index > int(all.size()))
        throw CLI::ValidationError("verify", "--index out of range");
      reports.push_back(std::move(all[args.index - 1]));
    } else {
      reports = std::move(all);
    }
  } else if (args.statement == "thm-subsqbound") {
    reports.push_back(verify_subsqbound(args.n, args.m, /*with_counts=*/true, opts));
  } else if (args.statement == "chain-schedule") {
    reports.push_back(verify_chain_schedule(args.m));
  } else if (args.statement == "e3") {
    if (args.monte_carlo) {
      const Estimate est = estimate_Em(args.n, 3, args.samples, flags.seed,
                                       flags.workers ? flags.workers
                                                     : default_workers());
      std::cout << "e3 monte-carlo n=" << args.n << " samples=" << args.samples
                << " mean=" << est.mean << " stderr=" << est.stderr_
                << " conjectured-limit=1/18 (~0.0556, no assertion)\n";
      return kExitPass;
    }
    reports.push_back(verify_e3(args.n, opts));
  } else if (args.statement == "all") {
    reports = verify_all(args.slow, opts);
  } else {
    throw CLI::ValidationError("verify", "unknown statement " + args.statement);
  }

  bool all_pass = true;
  for (const Report& rep : reports) {
    print_report_text(rep);
    all_pass = all_pass && rep.pass();
  }
  std::cout << (all_pass ? "PASS" : "FAIL") << " (" << reports.size()
            << (reports.size() == 1 ? " report)" : " reports)") << '\n';
  if (!args.json_path.empty())
    write_output(args.json_path, reports_to_json(reports) + "\n");
  return all_pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Latin square cycle switching, exact constrained enumeration, "
               "uniform sampling and subsquare statistics"};
  app.require_subcommand(1);

  CommonFlags flags;
  app.add_option("--seed", flags.seed, "Master seed for all randomized paths");
  app.add_option("--workers", flags.workers,
                 "Worker threads (default: LATINSQ_WORKERS or hardware)");
  app.add_flag("--allow-large", flags.allow_large,
               "Override the exhaustive order guard (n <= 6)");

  auto* sample = app.add_subcommand("sample", "Sample uniform random squares");
  int order = 0;
  std::uint64_t samples = 1;
  long long burn_in = -1, thin = -1;
  bool stats_only = false;
  std::string out_path;
  sample->add_option("--order", order, "Square order")->required();
  sample->add_option("--samples", samples, "Number of samples");
  sample->add_option("--burn-in", burn_in, "Chain burn-in steps (default 10n^3)");
  sample->add_option("--thin", thin, "Thinning interval (default n^3)");
  sample->add_flag("--stats-only", stats_only, "Emit intercalate statistics only");
  sample->add_option("--output,-o", out_path, "Output path (default stdout)");

  auto* count = app.add_subcommand("count", "Count subsquares of a square file");
  std::string count_input;
  int count_m = 0;
  count->add_option("--input,-i", count_input, "Square file ('-' for stdin)")
      ->required();
  count->add_option("--m", count_m, "Only this subsquare order");

  auto* enumerate = app.add_subcommand("enumerate",
                                       "Exhaustively enumerate or count squares");
  int enum_order = 0;
  std::string constraints;
  bool count_only = false;
  enumerate->add_option("--order", enum_order, "Square order");
  enumerate->add_option("--constraints", constraints, "Constraint file");
  enumerate->add_flag("--count-only", count_only, "Print the count only");
  enumerate->add_option("--output,-o", out_path, "Output path (default stdout)");

  auto* comp = app.add_subcommand("complete", "Complete a partial square");
  std::string comp_input;
  comp->add_option("--input,-i", comp_input, "Partial square file ('-' for stdin)")
      ->required();

  auto* estimate = app.add_subcommand("estimate", "Subsquare expectation statistics");
  int est_n = 0, est_m = 2;
  std::uint64_t est_samples = 10000;
  bool est_exact = false, est_hist = false;
  estimate->add_option("--n", est_n, "Square order")->required();
  estimate->add_option("--m", est_m, "Subsquare order");
  estimate->add_option("--samples", est_samples, "Monte Carlo sample count");
  estimate->add_flag("--exact", est_exact, "Exact expectation (guarded order)");
  estimate->add_flag("--histogram", est_hist, "Intercalate histogram");
  estimate->add_option("--csv,--output,-o", out_path, "Output path (default stdout)");

  auto* verify = app.add_subcommand("verify", "Run exact verifications");
  VerifyArgs vargs;
  verify->add_option("statement", vargs.statement,
                     "One of: setnrc prelim boundary-row boundary-col step "
                     "thm-subsqbound chain-schedule e3 all")
      ->required();
  verify->add_option("--n", vargs.n, "Square order");
  verify->add_option("--m", vargs.m, "Block order");
  verify->add_option("--alpha", vargs.alpha, "Symbol count parameter (setnrc)");
  verify->add_option("--j", vargs.j, "Boundary cell index (boundary-*)");
  verify->add_option("--variant,--axis", vargs.axis, "row or col (setnrc)");
  verify->add_option("--index", vargs.index, "Single chain step (step)");
  verify->add_option("--r", vargs.r, "Row of the tracked cell, 1-based (prelim)");
  verify->add_option("--c", vargs.c, "Column of the tracked cell, 1-based (prelim)");
  verify->add_option("--rprime", vargs.r_prime, "Row outside the block, 1-based");
  verify->add_option("--input", vargs.input, "Partial square file (prelim)");
  verify->add_flag("--slow", vargs.slow, "Include the order-6 tier (all)");
  verify->add_flag("--mc", vargs.monte_carlo, "Monte Carlo reporting path (e3)");
  verify->add_option("--samples", vargs.samples, "Samples for --mc");
  verify->add_option("--json", vargs.json_path, "Write a JSON report");

  // global flags remain usable after the subcommand name
  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*sample)
      return run_sample(order, samples, burn_in, thin, flags, stats_only, out_path);
    if (*count)
      return run_count(count_input,
                       count_m ? std::optional<int>(count_m) : std::nullopt);
    if (*enumerate)
      return run_enumerate(enum_order ? std::optional<int>(enum_order) : std::nullopt,
                           constraints, count_only, flags, out_path);
    if (*comp) return run_complete(comp_input);
    if (*estimate)
      return run_estimate(est_n, est_m, est_samples, est_exact, est_hist, flags,
                          out_path);
    if (*verify) return run_verify(vargs, flags);
  } catch (const CLI::Error& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const GuardExceeded& e) {
    std::cerr << "guard: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
