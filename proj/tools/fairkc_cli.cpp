// fairkc: generate, solve, reduce, verify and benchmark fair k-center
// instances from the command line.
//
// Exit codes: 0 success, 2 parse/flag/precondition error, 3 exact solver
// budget exhausted, 4 verification failure.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "fairkc/fairkc.hpp"

namespace {

using namespace fairkc;
using ojson = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kExitVerify = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class T>
struct instance_traits : std::false_type {};
template <class S>
struct instance_traits<FairInstance<S>> : std::true_type {
  static constexpr bool fair = true;
};
template <class S>
struct instance_traits<ForbiddenInstance<S>> : std::true_type {
  static constexpr bool fair = false;
};

void emit(const std::string& path, const std::string& text) {
  if (path == "-" || path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

// ---------------------------------------------------------------- generate

struct GenerateOptions {
  std::size_t n = 0, t = 1, k = 1;
  std::uint64_t seed = 0;
  std::string kind = "fair", quota = "balanced", metric = "euclidean", out = "-";
};

AnyInstance make_instance(const GenerateOptions& o) {
  const auto policy = o.quota == "one-per-group" ? QuotaPolicy::OnePerGroup : QuotaPolicy::Balanced;
  if (o.metric == "euclidean") {
    if (o.kind == "fair") return generate_euclidean(o.n, o.t, o.k, o.seed, policy);
    return generate_euclidean_forbidden(o.n, o.k, o.seed);
  }
  Rng rng(o.seed);
  auto metric = o.metric == "grid" ? random_grid_metric(o.n, rng) : random_graph_metric(o.n, rng);
  if (o.kind == "fair") return random_fair_instance(std::move(metric), o.t, o.k, policy, rng);
  return random_forbidden_instance(std::move(metric), o.k, rng);
}

int cmd_generate(const GenerateOptions& o) {
  try {
    emit(o.out, to_json_string(make_instance(o)));
  } catch (const InstanceError& e) {
    throw UsageError(e.what());
  }
  return kExitOk;
}

// ---------------------------------------------------------------- solve

struct SolveOptions {
  std::string in, algo = "exact", format = "csv";
  std::size_t start = 0;
  bool random_start = false, with_opt = false;
  std::uint64_t seed = 0, budget = kDefaultNodeBudget;
};

template <DistanceScalar S>
double exact_radius(const SolveResult<S>& r) {
  if (!r.solved()) throw BudgetError("exact solver budget exhausted after " + std::to_string(r.stats.nodes) + " nodes");
  return to_double(r.solution->radius);
}

template <class Inst>
BenchRecord solve_instance(const Inst& inst, const SolveOptions& o, const std::string& id) {
  BenchRecord rec;
  rec.instance_id = id;
  rec.n = inst.size();
  rec.k = inst.k();
  rec.algorithm = o.algo;
  rec.seed = o.seed;
  constexpr bool fair = instance_traits<Inst>::fair;
  if constexpr (fair) rec.t = inst.group_count();
  else rec.t = 1;

  std::size_t start = o.start;
  if (o.random_start) start = static_cast<std::size_t>(Rng(o.seed).index(inst.size()));
  if (start >= inst.size()) throw UsageError("--start " + std::to_string(start) + " out of range");

  const auto t0 = std::chrono::steady_clock::now();
  if (o.algo == "exact") {
    if constexpr (fair) rec.radius = exact_radius(solve_exact_fair(inst, o.budget));
    else rec.radius = exact_radius(solve_exact_forbidden(inst, o.budget));
    rec.wall_ms = elapsed_ms(t0);
    rec.set_optimum(rec.radius);
    return rec;
  }
  if (o.algo == "gonzalez") {
    rec.radius = to_double(gonzalez(inst.metric(), inst.k(), start).radius);
    rec.wall_ms = elapsed_ms(t0);
    if (o.with_opt) rec.set_optimum(exact_radius(solve_exact_kcenter(inst.metric(), inst.k(), o.budget)));
    return rec;
  }
  if constexpr (fair) {
    rec.radius = to_double(fair_match_3approx(inst, start).radius);
    rec.wall_ms = elapsed_ms(t0);
    if (o.with_opt) rec.set_optimum(exact_radius(solve_exact_fair(inst, o.budget)));
    return rec;
  } else {
    throw UsageError("fair3 needs a fair instance");
  }
}

int cmd_solve(const SolveOptions& o) {
  const auto inst = read_instance(o.in);
  const auto id = std::filesystem::path(o.in).stem().string();
  const auto rec = std::visit([&](const auto& i) { return solve_instance(i, o, id); }, inst);
  if (o.format == "json") std::cout << to_json(rec).dump(2) << "\n";
  else std::cout << bench_csv_header() << "\n" << to_csv(rec) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- reduce

struct ReduceOptions {
  std::string in, out, type = "forbidden2fair";
  std::size_t r2 = 1;
};

template <class Inst>
std::pair<std::string, ojson> reduce_instance(const Inst& inst, const ReduceOptions& o) {
  using S = typename std::decay_t<decltype(inst.metric())>::scalar_type;
  ojson side = ojson::object();
  side["type"] = o.type;
  side["source"] = o.in;
  if constexpr (instance_traits<Inst>::fair) {
    if (o.type != "fair2opg") throw UsageError("forbidden2fair needs a forbidden-centers instance");
    const auto red = reduce_two_group_to_one_per_group<S>(inst);
    side["delta"] = detail::encode_scalar(red.delta);
    side["origin_map"] = red.origin;
    return {to_json_string(red.target), side};
  } else {
    if (o.type != "forbidden2fair") throw UsageError("fair2opg needs a two-group fair instance");
    const auto red = reduce_forbidden_to_fair<S>(inst, o.r2);
    side["r2"] = red.r2;
    side["aux_distance"] = detail::encode_scalar(red.aux_distance);
    side["aux_points"] = red.aux_points;
    return {to_json_string(red.target), side};
  }
}

int cmd_reduce(const ReduceOptions& o) {
  const auto inst = read_instance(o.in);
  try {
    const auto [target, side] = std::visit([&](const auto& i) { return reduce_instance(i, o); }, inst);
    emit(o.out, target);
    emit(o.out + ".provenance.json", side.dump(2) + "\n");
  } catch (const ReductionError& e) {
    throw UsageError(e.what());
  }
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyCliOptions {
  std::string in, type = "forbidden2fair", report;
  std::size_t r2 = 1, start = 0;
  std::uint64_t budget = kDefaultNodeBudget;
};

template <class Inst>
ojson verify_instance(const Inst& inst, const VerifyCliOptions& o, bool& passed) {
  using S = typename std::decay_t<decltype(inst.metric())>::scalar_type;
  VerifyOptions options;
  options.budget = o.budget;
  options.start = o.start;
  auto show = [&](const auto& cert) {
    print_claim_table(std::cout, cert);
    passed = passed && cert.passed();
    return to_json(cert);
  };
  if constexpr (instance_traits<Inst>::fair) {
    if (o.type != "fair2opg") throw UsageError(o.type + " needs a forbidden-centers instance");
    return show(verify_claims(reduce_two_group_to_one_per_group<S>(inst), options));
  } else {
    if (o.type == "fair2opg") throw UsageError("fair2opg needs a two-group fair instance");
    const auto first = reduce_forbidden_to_fair<S>(inst, o.r2);
    if (o.type == "forbidden2fair") return show(verify_claims(first, options));
    // pipeline: both stages plus end-to-end optimum preservation
    const auto second = reduce_two_group_to_one_per_group(first.target);
    ojson doc = ojson::object();
    doc["stages"] = ojson::array({show(verify_claims(first, options)), show(verify_claims(second, options))});
    const auto src = solve_exact_forbidden(inst, o.budget);
    const auto dst = solve_exact_fair(second.target, o.budget);
    ClaimCheck end_to_end{"pipeline-opt-equality", Verdict::Skipped, "exact solver budget exhausted", {}};
    if (src.solved() && dst.solved()) {
      const bool equal = src.solution->radius == dst.solution->radius;
      end_to_end.verdict = equal ? Verdict::Pass : Verdict::Fail;
      end_to_end.detail = "opt(source) = " + to_string(src.solution->radius) +
                          ", opt(one-per-group) = " + to_string(dst.solution->radius);
      passed = passed && equal;
    }
    std::cout << "pipeline\n  " << end_to_end.id << "  " << to_string(end_to_end.verdict) << "  " << end_to_end.detail
              << "\n";
    doc["pipeline-opt-equality"] = {{"verdict", to_string(end_to_end.verdict)}, {"detail", end_to_end.detail}};
    doc["passed"] = passed;
    return doc;
  }
}

int cmd_verify(const VerifyCliOptions& o) {
  const auto inst = read_instance(o.in);
  bool passed = true;
  ojson report;
  try {
    report = std::visit([&](const auto& i) { return verify_instance(i, o, passed); }, inst);
  } catch (const ReductionError& e) {
    throw UsageError(e.what());
  }
  if (!o.report.empty()) emit(o.report, report.dump(2) + "\n");
  return passed ? kExitOk : kExitVerify;
}

// ---------------------------------------------------------------- mapback

struct MapBackOptions {
  std::string source, provenance, centers;
};

std::vector<PointIndex> parse_centers(const std::string& text) {
  std::vector<PointIndex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(static_cast<PointIndex>(std::stoull(item)));
    } catch (const std::exception&) {
      throw UsageError("bad center index '" + item + "'");
    }
  }
  return out;
}

template <class Inst>
std::string map_back_instance(const Inst& inst, const ojson& side, const std::vector<PointIndex>& centers) {
  using S = typename std::decay_t<decltype(inst.metric())>::scalar_type;
  const auto type = side.at("type").get<std::string>();
  auto describe = [](const Solution<S>& s) {
    std::ostringstream os;
    os << "centers";
    for (auto c : s.centers) os << ' ' << c;
    os << "\nradius " << to_string(s.radius) << "\n";
    return os.str();
  };
  if constexpr (instance_traits<Inst>::fair) {
    if (type != "fair2opg") throw UsageError("provenance type does not match a fair source");
    const auto red = reduce_two_group_to_one_per_group<S>(inst);
    return describe(map_back_one_per_group(red, Solution<S>::evaluate(red.target.metric(), centers)));
  } else {
    if (type != "forbidden2fair") throw UsageError("provenance type does not match a forbidden source");
    const auto red = reduce_forbidden_to_fair<S>(inst, side.at("r2").get<std::size_t>());
    return describe(map_back_two_group(red, Solution<S>::evaluate(red.target.metric(), centers)));
  }
}

int cmd_mapback(const MapBackOptions& o) {
  const auto inst = read_instance(o.source);
  std::ifstream in(o.provenance);
  if (!in) throw UsageError("cannot open " + o.provenance);
  ojson side;
  try {
    side = ojson::parse(in);
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad provenance file: ") + e.what());
  }
  const auto centers = parse_centers(o.centers);
  try {
    std::cout << std::visit([&](const auto& i) { return map_back_instance(i, side, centers); }, inst);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return kExitOk;
}

// ---------------------------------------------------------------- bench

struct BenchOptions {
  std::size_t trials = 20, jobs = 1;
  std::string n_range = "6:12", algos = "gonzalez,fair3,exact", out = "-";
  std::uint64_t seed = 1, budget = kDefaultNodeBudget;
};

std::vector<BenchRecord> bench_trial(std::size_t trial, std::size_t n_lo, std::size_t n_hi,
                                     const std::vector<std::string>& algos, const BenchOptions& o) {
  const std::uint64_t seed = o.seed + trial;
  Rng rng(seed);
  const auto n = static_cast<std::size_t>(rng.range(static_cast<std::int64_t>(n_lo), static_cast<std::int64_t>(n_hi)));
  const auto k = static_cast<std::size_t>(rng.range(1, static_cast<std::int64_t>(std::min<std::size_t>(n, 5))));
  const auto t = static_cast<std::size_t>(rng.range(1, static_cast<std::int64_t>(k)));
  const auto inst = generate_euclidean(n, t, k, seed, QuotaPolicy::Balanced);
  char id[32];
  std::snprintf(id, sizeof id, "trial-%04zu", trial);

  std::optional<double> fair_opt, free_opt;
  auto need_fair = [&] {
    if (!fair_opt) {
      const auto r = solve_exact_fair(inst, o.budget);
      if (r.solved()) fair_opt = to_double(r.solution->radius);
    }
    return fair_opt;
  };

  std::vector<BenchRecord> out;
  for (const auto& algo : algos) {
    BenchRecord rec;
    rec.instance_id = id;
    rec.n = n;
    rec.t = t;
    rec.k = k;
    rec.algorithm = algo;
    rec.seed = seed;
    const auto t0 = std::chrono::steady_clock::now();
    if (algo == "gonzalez") {
      rec.radius = to_double(gonzalez(inst.metric(), k, 0).radius);
      rec.wall_ms = elapsed_ms(t0);
      if (!free_opt) {
        const auto r = solve_exact_kcenter(inst.metric(), k, o.budget);
        if (r.solved()) free_opt = to_double(r.solution->radius);
      }
      if (free_opt) rec.set_optimum(*free_opt);
    } else if (algo == "fair3") {
      rec.radius = to_double(fair_match_3approx(inst, 0).radius);
      rec.wall_ms = elapsed_ms(t0);
      if (need_fair()) rec.set_optimum(*fair_opt);
    } else {
      const auto r = solve_exact_fair(inst, o.budget);
      rec.wall_ms = elapsed_ms(t0);
      if (!r.solved()) continue;
      fair_opt = to_double(r.solution->radius);
      rec.radius = *fair_opt;
      rec.set_optimum(*fair_opt);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

int cmd_bench(const BenchOptions& o) {
  std::size_t n_lo = 0, n_hi = 0;
  {
    const auto colon = o.n_range.find(':');
    try {
      n_lo = std::stoul(o.n_range.substr(0, colon));
      n_hi = colon == std::string::npos ? n_lo : std::stoul(o.n_range.substr(colon + 1));
    } catch (const std::exception&) {
      throw UsageError("--n-range must look like LO:HI");
    }
    if (n_lo < 1 || n_hi < n_lo) throw UsageError("--n-range needs 1 <= LO <= HI");
  }
  std::vector<std::string> algos;
  {
    std::stringstream ss(o.algos);
    std::string a;
    while (std::getline(ss, a, ',')) {
      if (a != "gonzalez" && a != "fair3" && a != "exact") throw UsageError("unknown algorithm '" + a + "'");
      algos.push_back(a);
    }
  }

  std::vector<std::vector<BenchRecord>> results(o.trials);
  const std::size_t jobs = std::max<std::size_t>(1, o.jobs);
  for (std::size_t begin = 0; begin < o.trials; begin += jobs) {
    std::vector<std::future<std::vector<BenchRecord>>> batch;
    for (std::size_t i = begin; i < std::min(o.trials, begin + jobs); ++i)
      batch.push_back(std::async(std::launch::async, bench_trial, i, n_lo, n_hi, std::cref(algos), std::cref(o)));
    for (std::size_t i = 0; i < batch.size(); ++i) results[begin + i] = batch[i].get();
  }

  std::ostringstream csv;
  csv << bench_csv_header() << "\n";
  std::map<std::string, double> max_ratio;
  for (const auto& trial : results)
    for (const auto& rec : trial) {
      csv << to_csv(rec) << "\n";
      if (rec.ratio) max_ratio[rec.algorithm] = std::max(max_ratio[rec.algorithm], *rec.ratio);
    }
  csv << "# max_ratio";
  bool within_bounds = true;
  for (const auto& algo : algos) {
    csv << ' ' << algo << '=';
    if (max_ratio.count(algo)) csv << max_ratio[algo];
    else csv << "na";
    const double bound = algo == "gonzalez" ? 2.0 : algo == "fair3" ? 3.0 : 1.0;
    if (max_ratio.count(algo) && max_ratio[algo] > bound * (1 + 1e-9)) within_bounds = false;
  }
  csv << "\n";
  emit(o.out, csv.str());
  return within_bounds ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fair k-center toolkit: exact and approximate solvers, optimum-preserving reductions, verifiers"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* g = app.add_subcommand("generate", "Write a random instance file");
  g->add_option("--n", gen.n, "Number of points")->required()->check(CLI::PositiveNumber);
  g->add_option("--t", gen.t, "Number of groups (fair instances)");
  g->add_option("--k", gen.k, "Number of centers")->required();
  g->add_option("--seed", gen.seed, "Random seed");
  g->add_option("--kind", gen.kind, "Instance kind")->check(CLI::IsMember({"fair", "forbidden"}));
  g->add_option("--quota", gen.quota, "Quota policy")->check(CLI::IsMember({"balanced", "one-per-group"}));
  g->add_option("--metric", gen.metric, "euclidean (unit square, L2), grid (integer L1) or graph (shortest paths)")
      ->check(CLI::IsMember({"euclidean", "grid", "graph"}));
  g->add_option("--out", gen.out, "Output path, - for stdout");

  SolveOptions sol;
  auto* s = app.add_subcommand("solve", "Solve an instance and print a benchmark record");
  s->add_option("--in", sol.in, "Instance file")->required()->check(CLI::ExistingFile);
  s->add_option("--algo", sol.algo, "Algorithm")->check(CLI::IsMember({"exact", "gonzalez", "fair3"}));
  s->add_option("--start", sol.start, "Start point of the farthest-first traversal");
  s->add_flag("--random-start", sol.random_start, "Draw the start point from --seed");
  s->add_option("--seed", sol.seed, "Seed for --random-start (recorded in the output)");
  s->add_option("--budget", sol.budget, "Branch node budget of the exact solver");
  s->add_flag("--with-opt", sol.with_opt, "Also solve exactly and report the ratio");
  s->add_option("--out", sol.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  ReduceOptions red;
  auto* r = app.add_subcommand("reduce", "Apply a reduction and write the target instance plus a provenance sidecar");
  r->add_option("--type", red.type, "Reduction")->check(CLI::IsMember({"forbidden2fair", "fair2opg"}));
  r->add_option("--r2", red.r2, "Number of aux points (forbidden2fair)")->check(CLI::PositiveNumber);
  r->add_option("--in", red.in, "Source instance")->required()->check(CLI::ExistingFile);
  r->add_option("--out", red.out, "Target instance path")->required();

  VerifyCliOptions ver;
  auto* v = app.add_subcommand("verify", "Reduce a source instance and check every claimed property");
  v->add_option("--in", ver.in, "Source instance")->required()->check(CLI::ExistingFile);
  v->add_option("--type", ver.type, "Reduction")->check(CLI::IsMember({"forbidden2fair", "fair2opg", "pipeline"}));
  v->add_option("--r2", ver.r2, "Number of aux points")->check(CLI::PositiveNumber);
  v->add_option("--budget", ver.budget, "Branch node budget of the exact solvers");
  v->add_option("--start", ver.start, "Start point for the transfer check");
  v->add_option("--report", ver.report, "Write the certificate JSON here (- for stdout)");

  MapBackOptions mb;
  auto* m = app.add_subcommand("mapback", "Map a target solution back to the source instance");
  m->add_option("--source", mb.source, "Source instance")->required()->check(CLI::ExistingFile);
  m->add_option("--provenance", mb.provenance, "Sidecar written by reduce")->required()->check(CLI::ExistingFile);
  m->add_option("--centers", mb.centers, "Comma-separated target center indices")->required();

  BenchOptions ben;
  auto* b = app.add_subcommand("bench", "Benchmark the solvers on random Euclidean instances (CSV)");
  b->add_option("--trials", ben.trials, "Number of random instances");
  b->add_option("--n-range", ben.n_range, "Point count range LO:HI");
  b->add_option("--seed", ben.seed, "Seed of the first trial");
  b->add_option("--algos", ben.algos, "Comma-separated subset of gonzalez,fair3,exact");
  b->add_option("--budget", ben.budget, "Branch node budget of the exact solver");
  b->add_option("--jobs", ben.jobs, "Trials run concurrently");
  b->add_option("--out", ben.out, "Output path, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (g->parsed()) return cmd_generate(gen);
    if (s->parsed()) return cmd_solve(sol);
    if (r->parsed()) return cmd_reduce(red);
    if (v->parsed()) return cmd_verify(ver);
    if (m->parsed()) return cmd_mapback(mb);
    if (b->parsed()) return cmd_bench(ben);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  }
  return kExitUsage;
}
