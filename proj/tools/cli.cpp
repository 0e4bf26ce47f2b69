#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "dchsbm/affinity.hpp"
#include "dchsbm/clustering.hpp"
#include "dchsbm/dyadic.hpp"
#include "dchsbm/estimation.hpp"
#include "dchsbm/io.hpp"
#include "dchsbm/metrics.hpp"
#include "dchsbm/synthetic.hpp"

namespace dchsbm::cli {

namespace {

// Raised for invalid combinations that CLI11 cannot express; exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

void write_manifest(const std::string& path, KeyValues values, const std::vector<std::string>& args) {
  values["version"] = kVersion;
  values["argv"] = join(args, " ");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_key_values(out, values);
}

std::string omega_line(const AffinityModel& omega) {
  std::string text = serialize(omega);
  std::replace(text.begin(), text.end(), '\n', ';');
  if (!text.empty() && text.back() == ';') text.pop_back();
  return text;
}

// ---- cluster ----

struct ClusterArgs {
  std::string input;
  bool weighted = false;
  std::string method = "aon-hmll";
  std::string affinity = "aon";
  int rounds = 20;
  bool regularize = false;
  std::optional<int> kmax;
  std::optional<std::uint64_t> seed;
  bool shuffle = false;
  bool unnormalized = false;
  std::string init_labels;
  std::string output;
  std::string report;
  std::string manifest;
};

int run_cluster(const ClusterArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
  const Family family = parse_family(a.affinity);
  if ((a.method != "sym-hmll") && family != Family::Aon)
    throw UsageError("method " + a.method + " supports only the aon affinity");
  if (a.rounds < 1) throw UsageError("--rounds must be at least 1");

  Hypergraph h = load_hypergraph(a.input, a.weighted);
  if (a.kmax) {
    if (*a.kmax < 2) throw UsageError("--kmax must be at least 2");
    h = filter_max_edge_size(h, *a.kmax);
    if (h.empty()) throw std::runtime_error("no edges left after the size filter");
  }
  const std::uint64_t seed = resolve_seed(a.seed);
  std::vector<int> init;
  if (!a.init_labels.empty()) {
    init = compact_labels(read_labels(std::filesystem::path(a.init_labels)));
    if (static_cast<int>(init.size()) != h.node_count())
      throw UsageError("--init-labels has " + std::to_string(init.size()) + " labels for " +
                       std::to_string(h.node_count()) + " nodes");
  }

  const auto start = std::chrono::steady_clock::now();
  FitReport fit;
  if (a.method == "aon-hmll" || a.method == "sym-hmll") {
    FitOptions options;
    options.family = family;
    options.optimizer = a.method == "aon-hmll" ? Optimizer::AonHmll : Optimizer::SymmetricHmll;
    options.rounds = a.rounds;
    options.regularize = a.regularize;
    options.seed = seed;
    options.shuffle = a.shuffle;
    options.initial_labels = init;
    fit = coordinate_ascent(h, options);
  } else {
    DyadicOptions options;
    options.rounds = a.rounds;
    options.regularize = a.regularize;
    options.seed = seed;
    options.shuffle = a.shuffle;
    options.initial_labels = init;
    const auto g = clique_projection(h, !a.unnormalized);
    fit = a.method == "gmll" ? gmll(g, options) : graph_louvain_modularity(g, options);
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  write_labels(a.output, fit.labels);

  KeyValues report;
  report["method"] = a.method;
  report["affinity"] = std::string(to_string(family));
  report["nodes"] = std::to_string(h.node_count());
  report["edges"] = num(h.total_weight());
  report["clusters"] = std::to_string(fit.clusters);
  report["q"] = num(fit.q_value);
  report["q_regularized"] = num(fit.regularized_value);
  report["best_round"] = std::to_string(fit.best_round + 1);
  report["rounds_run"] = std::to_string(fit.iterations);
  std::vector<std::string> trace;
  for (const auto& r : fit.trace) trace.push_back(num(r.objective));
  report["trace"] = join(trace, ",");
  report["omega"] = omega_line(fit.omega);
  if (family == Family::Aon) {
    const auto params = aon_params(fit.omega);
    std::vector<std::string> beta, gamma;
    for (std::size_t k = 2; k < params.beta.size(); ++k) {
      beta.push_back(num(params.beta[k]));
      gamma.push_back(num(params.gamma[k]));
    }
    report["beta"] = join(beta, ",");
    report["gamma"] = join(gamma, ",");
  }
  report["wall_time_s"] = num(seconds);
  report["sweep_cap_hit"] = fit.hit_sweep_cap ? "true" : "false";
  {
    const std::string path = a.report.empty() ? a.output + ".report" : a.report;
    std::ofstream rep(path);
    if (!rep) throw std::runtime_error("cannot write " + path);
    write_key_values(rep, report);
  }

  KeyValues manifest{{"command", "cluster"},
                     {"input", a.input},
                     {"weighted", a.weighted ? "true" : "false"},
                     {"method", a.method},
                     {"affinity", a.affinity},
                     {"rounds", std::to_string(a.rounds)},
                     {"regularize", a.regularize ? "true" : "false"},
                     {"kmax", a.kmax ? std::to_string(*a.kmax) : "none"},
                     {"seed", std::to_string(seed)},
                     {"shuffle", a.shuffle ? "true" : "false"},
                     {"init_labels", a.init_labels.empty() ? "none" : a.init_labels},
                     {"projection", a.unnormalized ? "unnormalized" : "normalized"},
                     {"output", a.output}};
  write_manifest(a.manifest.empty() ? a.output + ".manifest" : a.manifest, manifest, argv);

  out << "clusters " << fit.clusters << "  Q " << num(fit.q_value) << "  rounds " << fit.iterations << '\n';
  return 0;
}

// ---- bic ----

struct BicArgs {
  std::string input;
  std::string labels;
  bool weighted = false;
  std::vector<std::string> families{"aon", "gn", "rp", "p"};
  std::string csv;
  std::string manifest;
};

int run_bic(const BicArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
  if (a.families.empty()) throw UsageError("--families needs at least one family");
  std::vector<Family> families;
  for (const auto& name : a.families) {
    try {
      families.push_back(parse_family(name));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  const Hypergraph h = load_hypergraph(a.input, a.weighted);
  const auto labels = read_labels(a.labels);
  if (static_cast<int>(labels.size()) != h.node_count())
    throw std::runtime_error("label file has " + std::to_string(labels.size()) + " lines for " +
                             std::to_string(h.node_count()) + " nodes");

  std::vector<BicResult> rows;
  for (Family f : families) rows.push_back(bic(h, labels, f));
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].bic < rows[best].bic) best = i;

  std::ostringstream csv;
  csv.precision(17);
  csv << "family,parameters,log_likelihood,bic,winner\n";
  for (std::size_t i = 0; i < rows.size(); ++i)
    csv << to_string(rows[i].family) << ',' << rows[i].parameters << ',' << rows[i].log_likelihood << ','
        << rows[i].bic << ',' << (i == best ? 1 : 0) << '\n';

  KeyValues manifest{{"command", "bic"},
                     {"input", a.input},
                     {"labels", a.labels},
                     {"weighted", a.weighted ? "true" : "false"},
                     {"families", join(a.families, ",")}};
  if (!a.csv.empty()) {
    std::ofstream f(a.csv);
    if (!f) throw std::runtime_error("cannot write " + a.csv);
    f << csv.str();
  }
  if (!a.manifest.empty() || !a.csv.empty())
    write_manifest(a.manifest.empty() ? a.csv + ".manifest" : a.manifest, manifest, argv);
  else
    for (const auto& [k, v] : manifest) out << "# " << k << " = " << v << '\n';

  out << std::left << std::setw(8) << "family" << std::setw(12) << "params" << std::setw(22) << "log-lik"
      << std::setw(22) << "BIC" << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << std::left << std::setw(8) << to_string(rows[i].family) << std::setw(12) << rows[i].parameters
        << std::setw(22) << num(rows[i].log_likelihood) << std::setw(22) << num(rows[i].bic)
        << (i == best ? "*" : "") << '\n';
  }
  return 0;
}

// ---- generate ----

struct GenerateArgs {
  std::string kind = "detectability";
  int n = 500;
  double p2 = 0.9, p3 = 0.9, p4 = -1.0;
  double c2 = 5.0, c3 = 5.0;
  int clusters = 2;
  int kmax = 3;
  double omega_in = 0.05, omega_out = 0.005;
  std::optional<std::uint64_t> seed;
  std::string prefix;
};

int run_generate(const GenerateArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
  const std::uint64_t seed = resolve_seed(a.seed);
  KeyValues manifest{{"command", "generate"}, {"kind", a.kind}, {"seed", std::to_string(seed)},
                     {"n", std::to_string(a.n)}};
  PlantedInstance inst;
  try {
    if (a.kind == "runtime") {
      std::vector<double> within;
      if (a.p4 >= 0.0) within = {0.0, 0.0, a.p2, a.p3, a.p4};
      inst = generate_runtime_testbed(a.n, seed, within);
    } else if (a.kind == "detectability") {
      inst = generate_detectability(a.n, a.p2, a.p3, a.c2, a.c3, seed);
    } else if (a.kind == "exact") {
      if (a.clusters < 1 || a.clusters > a.n) throw std::invalid_argument("bad cluster count");
      inst.labels.resize(a.n);
      for (int i = 0; i < a.n; ++i) inst.labels[i] = static_cast<int>(static_cast<long long>(i) * a.clusters / a.n);
      const std::vector<double> theta(a.n, 1.0);
      const double w1 = a.omega_in, w0 = a.omega_out;
      inst.hypergraph = sample_dchsbm_exact(
          a.n, inst.labels, theta, [&](const PartitionVector& p) { return p.groups() == 1 ? w1 : w0; }, a.kmax,
          seed);
      inst.parameters = {{"clusters", std::to_string(a.clusters)}, {"kmax", std::to_string(a.kmax)},
                         {"omega_in", num(w1)}, {"omega_out", num(w0)}};
    } else {
      throw UsageError("unknown kind '" + a.kind + "'");
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  for (const auto& [k, v] : inst.parameters) manifest[k] = v;
  if (a.kind != "exact") {
    manifest["p2"] = num(a.p2);
    manifest["p3"] = num(a.p3);
  }
  if (inst.hypergraph.empty()) throw std::runtime_error("generated instance has no edges");

  write_hyperedges(a.prefix + ".edges", inst.hypergraph);
  write_labels(a.prefix + ".labels", inst.labels);
  write_manifest(a.prefix + ".manifest", manifest, argv);
  out << "wrote " << a.prefix << ".edges (" << num(inst.hypergraph.total_weight()) << " edges, "
      << inst.hypergraph.node_count() << " nodes)\n";
  return 0;
}

// ---- sweep ----

struct SweepArgs {
  std::vector<double> p2{0.1, 0.3, 0.5, 0.7, 0.9};
  std::vector<double> p3{0.1, 0.3, 0.5, 0.7, 0.9};
  int seeds = 20;
  std::uint64_t base_seed = 1;
  std::vector<std::string> methods{"hmll", "gmll"};
  int n = 500;
  double c2 = 5.0, c3 = 5.0;
  int rounds = 20;
  bool normalized = false;
  // first-round parameters: fitted on the planted partition, or strict modularity
  bool modularity_start = false;
  int workers = 1;
  std::string out;
};

struct SweepRow {
  double p2 = 0, p3 = 0;
  std::uint64_t seed = 0;
  std::string method;
  double ari = 0;
  int clusters = 0;
  std::string error;
};

int run_sweep(const SweepArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
  for (const auto& m : a.methods)
    if (m != "hmll" && m != "gmll") throw UsageError("unknown sweep method '" + m + "'");
  if (a.seeds < 1 || a.workers < 1 || a.rounds < 1) throw UsageError("seeds, workers and rounds must be positive");

  std::vector<SweepRow> rows;
  for (double p2 : a.p2)
    for (double p3 : a.p3)
      for (int s = 0; s < a.seeds; ++s)
        for (const auto& m : a.methods) rows.push_back({p2, p3, a.base_seed + s, m, 0, 0, ""});

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      SweepRow& row = rows[i];
      try {
        const auto inst = generate_detectability(a.n, row.p2, row.p3, a.c2, a.c3, row.seed);
        FitReport fit;
        if (row.method == "hmll") {
          FitOptions options;
          options.rounds = a.rounds;
          options.regularize = true;
          options.seed = row.seed;
          if (!a.modularity_start) options.initial_labels = inst.labels;
          fit = coordinate_ascent(inst.hypergraph, options);
        } else {
          DyadicOptions options;
          options.rounds = a.rounds;
          options.regularize = true;
          options.seed = row.seed;
          if (!a.modularity_start) options.initial_labels = inst.labels;
          fit = gmll(inst.hypergraph, a.normalized, options);
        }
        row.ari = ari(fit.labels, inst.labels);
        row.clusters = fit.clusters;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < a.workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::ofstream csv(a.out);
  if (!csv) throw std::runtime_error("cannot write " + a.out);
  csv.precision(17);
  csv << "p2,p3,seed,method,ari,clusters,c_in,c_out,threshold,detectable,threshold_2only,threshold_3only,error\n";
  int failures = 0;
  for (const auto& r : rows) {
    const auto both = projected_degrees(r.p2, r.p3, a.c2, a.c3);
    const auto two = projected_degrees(r.p2, r.p3, a.c2, 0.0);
    const auto three = projected_degrees(r.p2, r.p3, 0.0, a.c3);
    const auto d = dyadic_detectability(both.c_in, both.c_out);
    const double t2 = a.c2 > 0 ? dyadic_detectability(two.c_in, two.c_out).value : 0.0;
    const double t3 = a.c3 > 0 ? dyadic_detectability(three.c_in, three.c_out).value : 0.0;
    failures += !r.error.empty();
    csv << r.p2 << ',' << r.p3 << ',' << r.seed << ',' << r.method << ',' << r.ari << ',' << r.clusters << ','
        << both.c_in << ',' << both.c_out << ',' << d.value << ',' << (d.detectable ? 1 : 0) << ',' << t2 << ','
        << t3 << ',' << r.error << '\n';
  }

  std::vector<std::string> p2s, p3s;
  for (double v : a.p2) p2s.push_back(num(v));
  for (double v : a.p3) p3s.push_back(num(v));
  KeyValues manifest{{"command", "sweep"},       {"p2", join(p2s, ",")},
                     {"p3", join(p3s, ",")},      {"seeds", std::to_string(a.seeds)},
                     {"base_seed", std::to_string(a.base_seed)},
                     {"methods", join(a.methods, ",")},
                     {"n", std::to_string(a.n)},  {"c2", num(a.c2)},
                     {"c3", num(a.c3)},           {"rounds", std::to_string(a.rounds)},
                     {"projection", a.normalized ? "normalized" : "unnormalized"},
                     {"start", a.modularity_start ? "modularity" : "planted"},
                     {"workers", std::to_string(a.workers)}};
  write_manifest(a.out + ".manifest", manifest, argv);
  out << "wrote " << rows.size() << " rows to " << a.out;
  if (failures) out << " (" << failures << " failed cells)";
  out << '\n';
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hypergraph clustering with degree-corrected hypergraph blockmodels", "dchsbm"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  ClusterArgs ca;
  auto* cluster = app.add_subcommand("cluster", "Cluster a hypergraph");
  cluster->add_option("--input", ca.input, "Hyperedge list")->required()->check(CLI::ExistingFile);
  cluster->add_flag("--weighted", ca.weighted, "First column holds edge weights");
  cluster->add_option("--method", ca.method)
      ->check(CLI::IsMember({"aon-hmll", "sym-hmll", "gmll", "graph-louvain"}));
  cluster->add_option("--affinity", ca.affinity)->check(CLI::IsMember({"aon", "gn", "rp", "p"}));
  cluster->add_option("--rounds", ca.rounds, "Alternations of fitting and partitioning");
  cluster->add_flag("--regularize", ca.regularize, "Add -n log(#clusters)");
  cluster->add_option("--kmax", ca.kmax, "Drop edges larger than this");
  cluster->add_option("--seed", ca.seed);
  cluster->add_flag("--shuffle", ca.shuffle, "Seeded random visit order");
  cluster->add_flag("--unnormalized", ca.unnormalized, "Unnormalized clique projection (gmll, graph-louvain)");
  cluster->add_option("--init-labels", ca.init_labels, "Fit the first-round parameters on this partition")
      ->check(CLI::ExistingFile);
  cluster->add_option("--output", ca.output, "Partition file")->required();
  cluster->add_option("--report", ca.report);
  cluster->add_option("--manifest", ca.manifest);

  BicArgs ba;
  auto* bic_cmd = app.add_subcommand("bic", "Compare affinity families by BIC");
  bic_cmd->add_option("--input", ba.input)->required()->check(CLI::ExistingFile);
  bic_cmd->add_option("--labels", ba.labels)->required()->check(CLI::ExistingFile);
  bic_cmd->add_flag("--weighted", ba.weighted);
  bic_cmd->add_option("--families", ba.families)->delimiter(',')->expected(0, -1);
  bic_cmd->add_option("--csv", ba.csv);
  bic_cmd->add_option("--manifest", ba.manifest);

  GenerateArgs ga;
  auto* gen = app.add_subcommand("generate", "Write a synthetic instance");
  gen->add_option("--kind", ga.kind)->check(CLI::IsMember({"runtime", "detectability", "exact"}));
  gen->add_option("--n", ga.n);
  gen->add_option("--p2", ga.p2);
  gen->add_option("--p3", ga.p3);
  gen->add_option("--p4", ga.p4);
  gen->add_option("--c2", ga.c2);
  gen->add_option("--c3", ga.c3);
  gen->add_option("--clusters", ga.clusters);
  gen->add_option("--kmax", ga.kmax);
  gen->add_option("--omega-in", ga.omega_in);
  gen->add_option("--omega-out", ga.omega_out);
  gen->add_option("--seed", ga.seed);
  gen->add_option("--out-prefix", ga.prefix)->required();

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "Detectability sweep over (p2, p3)");
  sweep->add_option("--p2", sa.p2)->delimiter(',');
  sweep->add_option("--p3", sa.p3)->delimiter(',');
  sweep->add_option("--seeds", sa.seeds);
  sweep->add_option("--base-seed", sa.base_seed);
  sweep->add_option("--methods", sa.methods)->delimiter(',');
  sweep->add_option("--n", sa.n);
  sweep->add_option("--c2", sa.c2);
  sweep->add_option("--c3", sa.c3);
  sweep->add_option("--rounds", sa.rounds);
  sweep->add_flag("--normalized", sa.normalized, "Normalized projection for gmll");
  sweep->add_flag("--modularity-start", sa.modularity_start,
                  "Start from strict modularity instead of parameters fitted on the planted partition");
  sweep->add_option("--workers", sa.workers);
  sweep->add_option("--out", sa.out)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (*cluster) return run_cluster(ca, args, out);
    if (*bic_cmd) return run_bic(ba, args, out);
    if (*gen) return run_generate(ga, args, out);
    if (*sweep) return run_sweep(sa, args, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace dchsbm::cli
