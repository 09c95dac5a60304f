// fdepth: depth, similarity, and clustering pipeline for functional data.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fdepth/clustering.hpp"
#include "fdepth/dataset.hpp"
#include "fdepth/depth.hpp"
#include "fdepth/finite_dim.hpp"
#include "fdepth/local_depth.hpp"
#include "fdepth/montecarlo.hpp"
#include "fdepth/parallel.hpp"
#include "fdepth/similarity.hpp"
#include "json.hpp"

using namespace fdepth;

namespace {

struct InputOpts {
  std::string path;
  bool bycol = false;
  bool header = false;
  bool mad = false;
};

void add_input_opts(CLI::App* cmd, InputOpts& in) {
  cmd->add_option("input", in.path, "CSV file of curves")->required();
  cmd->add_flag("--bycol", in.bycol, "curves are columns, not rows");
  cmd->add_flag("--header", in.header, "first row is a header");
  cmd->add_flag("--mad", in.mad,
                "standardize each grid point by median/MAD first");
}

FunctionalDataset load_input(const InputOpts& in) {
  FunctionalDataset ds = load_csv(in.path, !in.bycol, in.header);
  if (in.mad) ds = mad_standardize(ds);
  return ds;
}

struct TauOpts {
  double scalar = -1.0;
  std::string file;
  double prob = -1.0;
  bool scalar_set = false;
};

void add_tau_opts(CLI::App* cmd, TauOpts& t) {
  cmd->add_option("--tau", t.scalar, "constant tau value")
      ->each([&t](const std::string&) { t.scalar_set = true; });
  cmd->add_option("--tau-file", t.file, "CSV with one tau value per grid point");
  cmd->add_option("--tau-prob", t.prob,
                  "tau as this quantile order of pairwise sup distances");
}

std::optional<TauFunction> resolve_tau(const TauOpts& t,
                                       const FunctionalDataset& ds,
                                       std::size_t threads) {
  std::size_t p = ds.n_points();
  if (t.scalar_set) return TauFunction::constant(t.scalar, p);
  if (!t.file.empty()) {
    FunctionalDataset row = load_csv(t.file, true, false);
    std::vector<double> vals(row.values());
    if (vals.size() != p)
      throw std::runtime_error("tau file must contain exactly " +
                               std::to_string(p) + " values");
    return TauFunction(std::move(vals));
  }
  if (t.prob >= 0.0) {
    TauSelection sel = select_tau(ds, {t.prob}, false, threads);
    return TauFunction::constant(sel.quantiles[0], p);
  }
  return std::nullopt;
}

void check_tau_nonnegative(const TauFunction& tau) {
  for (double v : tau.values)
    if (!(v >= 0.0)) throw std::runtime_error("tau must be nonnegative");
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open file for writing: " + path);
  return file;
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::istringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stod(item));
  if (out.empty()) throw std::runtime_error("empty list: " + csv);
  return out;
}

std::vector<int> parse_k_range(const std::string& spec, std::size_t n) {
  std::vector<int> ks;
  auto colon = spec.find(':');
  if (colon != std::string::npos) {
    int lo = std::stoi(spec.substr(0, colon));
    int hi = std::stoi(spec.substr(colon + 1));
    for (int k = lo; k <= hi; ++k) ks.push_back(k);
  } else {
    std::istringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) ks.push_back(std::stoi(item));
  }
  if (ks.empty()) throw std::runtime_error("empty k range: " + spec);
  for (int k : ks)
    if (k < 1 || static_cast<std::size_t>(k) > n)
      throw std::runtime_error("k=" + std::to_string(k) + " outside [1," +
                               std::to_string(n) + "]");
  return ks;
}

void write_depth_csv(std::ostream& out, const FunctionalDataset& ds,
                     const DepthReport& global,
                     const DepthReport* local) {
  out << "label,depth";
  if (local) out << ",local_depth";
  out << ",rank";
  if (local) out << ",local_rank";
  out << '\n';
  char buf[64];
  for (std::size_t i = 0; i < ds.n_curves(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", global.values[i]);
    out << ds.label(i) << ',' << buf;
    if (local) {
      std::snprintf(buf, sizeof(buf), "%.17g", local->values[i]);
      out << ',' << buf;
    }
    out << ',' << global.ranks[i];
    if (local) out << ',' << local->ranks[i];
    out << '\n';
  }
}

int run(int argc, char** argv) {
  CLI::App app{"half-region depth toolkit for functional data"};
  app.require_subcommand(1);
  std::size_t threads = 0;
  app.add_option("--threads", threads,
                 "worker threads (default: FDEPTH_THREADS or all cores)");

  // ---- tau
  auto* tau_cmd = app.add_subcommand(
      "tau", "quantiles of the pairwise sup-norm distance distribution");
  InputOpts tau_in;
  add_input_opts(tau_cmd, tau_in);
  std::string tau_probs = "0.05,0.1,0.2,0.3";
  bool tau_stats = false;
  tau_cmd->add_option("--probs", tau_probs, "comma-separated quantile orders");
  tau_cmd->add_flag("--stats", tau_stats, "include all pairwise distances");

  // ---- depth
  auto* depth_cmd =
      app.add_subcommand("depth", "global (and local, when tau given) depths");
  InputOpts depth_in;
  add_input_opts(depth_cmd, depth_in);
  std::string depth_method = "mhr";
  TauOpts depth_tau;
  std::string depth_out;
  bool depth_json = false, depth_finite = false;
  depth_cmd->add_option("--method", depth_method, "hr or mhr")
      ->check(CLI::IsMember({"hr", "mhr"}));
  add_tau_opts(depth_cmd, depth_tau);
  depth_cmd->add_option("--out", depth_out, "output path (default stdout)");
  depth_cmd->add_flag("--json", depth_json, "emit JSON instead of CSV");
  depth_cmd->add_flag("--finite", depth_finite,
                      "univariate tabular mode (local halfspace depth, p=1)");

  // ---- ddplot
  auto* dd_cmd = app.add_subcommand(
      "ddplot", "per-curve (depth, local depth) pairs for a DD plot");
  InputOpts dd_in;
  add_input_opts(dd_cmd, dd_in);
  std::string dd_method = "mhr";
  TauOpts dd_tau;
  std::string dd_out;
  dd_cmd->add_option("--method", dd_method, "hr or mhr")
      ->check(CLI::IsMember({"hr", "mhr"}));
  add_tau_opts(dd_cmd, dd_tau);
  dd_cmd->add_option("--out", dd_out, "output path (default stdout)");

  // ---- similarity
  auto* sim_cmd =
      app.add_subcommand("similarity", "pairwise depth-based similarity matrix");
  InputOpts sim_in;
  add_input_opts(sim_cmd, sim_in);
  std::string sim_method = "localmhr";
  TauOpts sim_tau;
  std::string sim_out;
  bool sim_binary = false, sim_gower = false;
  std::size_t sim_block = 0;
  sim_cmd->add_option("--method", sim_method, "hr, localhr or localmhr")
      ->check(CLI::IsMember({"hr", "localhr", "localmhr"}));
  add_tau_opts(sim_cmd, sim_tau);
  sim_cmd->add_option("--out", sim_out, "output path (default stdout)");
  sim_cmd->add_flag("--binary", sim_binary, "binary matrix format");
  sim_cmd->add_flag("--dissimilarity", sim_gower,
                    "apply the Gower transform and write dissimilarities");
  sim_cmd->add_option("--block-rows", sim_block,
                      "stream the matrix in blocks of this many rows");

  // ---- cluster
  auto* cl_cmd = app.add_subcommand(
      "cluster", "similarity -> Gower -> Ward dendrogram, cuts, silhouettes");
  InputOpts cl_in;
  add_input_opts(cl_cmd, cl_in);
  std::string cl_method = "localmhr";
  TauOpts cl_tau;
  std::string cl_k = "2";
  std::string cl_prefix = "clusters";
  bool cl_ward_d2 = false;
  cl_cmd->add_option("--method", cl_method, "hr, localhr or localmhr")
      ->check(CLI::IsMember({"hr", "localhr", "localmhr"}));
  add_tau_opts(cl_cmd, cl_tau);
  cl_cmd->add_option("--k", cl_k, "group counts: k, k1:k2, or k1,k2,...");
  cl_cmd->add_option("--out-prefix", cl_prefix, "output file prefix");
  cl_cmd->add_flag("--ward-d2", cl_ward_d2,
                   "Ward on squared dissimilarities (Ward.D2)");

  // ---- consistency
  auto* mc_cmd = app.add_subcommand(
      "consistency",
      "Monte Carlo check of sample local HR depth against the iid oracle");
  std::string mc_dist = "gaussian";
  double mc_mean = 0.0, mc_sd = 1.0, mc_lo = 0.0, mc_hi = 1.0;
  std::size_t mc_p = 2;
  double mc_y = 0.0, mc_tau_v = 1.0;
  std::string mc_sizes = "100,1000,10000";
  std::size_t mc_reps = 20;
  std::uint64_t mc_seed = 20260823;
  bool mc_json = false;
  mc_cmd->add_option("--dist", mc_dist, "gaussian or uniform")
      ->check(CLI::IsMember({"gaussian", "uniform"}));
  mc_cmd->add_option("--mean", mc_mean, "gaussian mean");
  mc_cmd->add_option("--sd", mc_sd, "gaussian standard deviation");
  mc_cmd->add_option("--lo", mc_lo, "uniform lower bound");
  mc_cmd->add_option("--hi", mc_hi, "uniform upper bound");
  mc_cmd->add_option("--p", mc_p, "grid size");
  mc_cmd->add_option("--y", mc_y, "constant query curve value");
  mc_cmd->add_option("--tau", mc_tau_v, "constant tau");
  mc_cmd->add_option("--sizes", mc_sizes, "comma-separated sample sizes");
  mc_cmd->add_option("--replicates", mc_reps, "replicates per size");
  mc_cmd->add_option("--seed", mc_seed, "RNG seed");
  mc_cmd->add_flag("--json", mc_json, "emit JSON instead of a table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (tau_cmd->parsed()) {
    FunctionalDataset ds = load_input(tau_in);
    TauSelection sel = select_tau(ds, parse_list(tau_probs), tau_stats, threads);
    std::cout << sel.to_json() << '\n';
    return 0;
  }

  if (depth_cmd->parsed()) {
    FunctionalDataset ds = load_input(depth_in);
    std::ofstream file;
    std::ostream& out = open_out(file, depth_out);

    if (depth_finite) {
      if (ds.n_points() != 1)
        throw std::runtime_error("--finite expects a single-column table");
      if (!depth_tau.scalar_set)
        throw std::runtime_error("--finite requires a scalar --tau");
      if (!(depth_tau.scalar >= 0.0))
        throw std::runtime_error("tau must be nonnegative");
      PointSample sample(ds.n_curves(), 1, ds.values());
      std::vector<double> values(ds.n_curves());
      for (std::size_t i = 0; i < ds.n_curves(); ++i)
        values[i] = local_halfspace_depth_1d(ds.at(i, 0), sample, depth_tau.scalar);
      std::vector<int> ranks = ranks_from_values(values);
      out << "label,local_depth,rank\n";
      for (std::size_t i = 0; i < values.size(); ++i)
        out << ds.label(i) << ',' << values[i] << ',' << ranks[i] << '\n';
      return 0;
    }

    DepthMethod method =
        depth_method == "hr" ? DepthMethod::HR : DepthMethod::MHR;
    DepthReport global = depth_all(ds, method, threads);
    std::optional<DepthReport> local;
    if (auto tau = resolve_tau(depth_tau, ds, threads)) {
      check_tau_nonnegative(*tau);
      local = local_depth_all(ds, *tau, method, threads);
    }
    if (depth_json) {
      nlohmann::json j;
      j["method"] = method_name(method);
      j["values"] = global.values;
      j["ranks"] = global.ranks;
      if (local) {
        j["tau"] = local->tau->values;
        j["local_values"] = local->values;
        j["local_ranks"] = local->ranks;
      }
      out << j.dump() << '\n';
    } else {
      write_depth_csv(out, ds, global, local ? &*local : nullptr);
    }
    return 0;
  }

  if (dd_cmd->parsed()) {
    FunctionalDataset ds = load_input(dd_in);
    auto tau = resolve_tau(dd_tau, ds, threads);
    if (!tau) throw std::runtime_error("ddplot requires a tau option");
    check_tau_nonnegative(*tau);
    DepthMethod method = dd_method == "hr" ? DepthMethod::HR : DepthMethod::MHR;
    DepthReport global = depth_all(ds, method, threads);
    DepthReport local = local_depth_all(ds, *tau, method, threads);
    std::ofstream file;
    std::ostream& out = open_out(file, dd_out);
    char buf[64];
    out << "label,depth,local_depth\n";
    for (std::size_t i = 0; i < ds.n_curves(); ++i) {
      out << ds.label(i);
      std::snprintf(buf, sizeof(buf), "%.17g", global.values[i]);
      out << ',' << buf;
      std::snprintf(buf, sizeof(buf), "%.17g", local.values[i]);
      out << ',' << buf << '\n';
    }
    return 0;
  }

  if (sim_cmd->parsed()) {
    FunctionalDataset ds = load_input(sim_in);
    SimilarityMethod method = sim_method == "hr" ? SimilarityMethod::HR
                              : sim_method == "localhr"
                                  ? SimilarityMethod::LocalHR
                                  : SimilarityMethod::LocalMHR;
    auto tau = resolve_tau(sim_tau, ds, threads);
    if (method == SimilarityMethod::HR && tau) {
      std::cerr << "warning: tau is ignored for method hr\n";
      tau.reset();
    }
    if (method != SimilarityMethod::HR) {
      if (!tau) throw std::runtime_error("local methods require a tau option");
      check_tau_nonnegative(*tau);
    }
    std::ofstream file;
    std::ostream& out = open_out(file, sim_out);
    stream_similarity(out, ds, method, tau, sim_gower, sim_binary, sim_block,
                      threads);
    return 0;
  }

  if (cl_cmd->parsed()) {
    FunctionalDataset ds = load_input(cl_in);
    SimilarityMethod method = cl_method == "hr" ? SimilarityMethod::HR
                              : cl_method == "localhr"
                                  ? SimilarityMethod::LocalHR
                                  : SimilarityMethod::LocalMHR;
    auto tau = resolve_tau(cl_tau, ds, threads);
    if (method != SimilarityMethod::HR) {
      if (!tau) throw std::runtime_error("local methods require a tau option");
      check_tau_nonnegative(*tau);
    }
    std::vector<int> ks = parse_k_range(cl_k, ds.n_curves());

    SimilarityMatrix sim = similarity_matrix(ds, method, tau, threads);
    DissimilarityMatrix diss = gower_dissimilarity(sim);
    Dendrogram dg = ward_linkage(diss, cl_ward_d2);
    {
      std::ofstream f(cl_prefix + ".dendrogram.json");
      if (!f) throw std::runtime_error("cannot write " + cl_prefix +
                                       ".dendrogram.json");
      f << dg.to_json() << '\n';
    }
    for (int k : ks) {
      ClusterLabels labels = cut_tree(dg, k);
      std::string base = cl_prefix + ".k" + std::to_string(k);
      {
        std::ofstream f(base + ".labels.csv");
        if (!f) throw std::runtime_error("cannot write " + base + ".labels.csv");
        f << "label,cluster\n";
        for (std::size_t i = 0; i < labels.labels.size(); ++i)
          f << ds.label(i) << ',' << labels.labels[i] << '\n';
      }
      SilhouetteReport sil = silhouette(labels, diss, threads);
      if (sil.degenerate)
        std::cerr << "warning: k=1, silhouette widths are all zero\n";
      std::vector<std::string> names(ds.n_curves());
      for (std::size_t i = 0; i < names.size(); ++i) names[i] = ds.label(i);
      sil.write_csv(base + ".silhouette.csv", labels, names);
      std::cout << "k=" << k << " mean_silhouette=" << sil.overall_mean << '\n';
    }
    return 0;
  }

  if (mc_cmd->parsed()) {
    Marginal marg = mc_dist == "gaussian" ? Marginal::gaussian(mc_mean, mc_sd)
                                          : Marginal::uniform(mc_lo, mc_hi);
    IidProcessSpec spec = IidProcessSpec::broadcast(marg, mc_p, mc_seed);
    std::vector<double> y(mc_p, mc_y);
    TauFunction tau = TauFunction::constant(mc_tau_v, mc_p);
    std::vector<std::size_t> sizes;
    for (double v : parse_list(mc_sizes))
      sizes.push_back(static_cast<std::size_t>(v));
    ConsistencyReport rep =
        consistency_experiment(spec, y, tau, sizes, mc_reps, mc_seed, threads);
    if (mc_json) {
      std::cout << rep.to_json() << '\n';
    } else {
      std::cout << "population local HR depth: " << rep.population_value << '\n';
      std::cout << "n\tmean_abs_error (" << rep.replicates << " replicates)\n";
      for (std::size_t s = 0; s < rep.sizes.size(); ++s)
        std::cout << rep.sizes[s] << '\t' << rep.mean_abs_error[s] << '\n';
    }
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const internal_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
