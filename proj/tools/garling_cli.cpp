// Command line front end: exact Lorentz/Garling norm computations, weight
// condition estimators, and the explicit vector-family constructions, with
// JSON or CSV reports. All floating point output is fixed at 12 significant
// digits so identical invocations produce identical bytes.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "garling/analysis.hpp"
#include "garling/constructions.hpp"
#include "garling/json_io.hpp"
#include "garling/norms.hpp"
#include "garling/weights.hpp"

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string kind_name(garling::WeightKind k) {
  switch (k) {
    case garling::WeightKind::power: return "power";
    case garling::WeightKind::harmonic: return "harmonic";
    case garling::WeightKind::explicit_values: return "explicit";
  }
  return "unknown";
}

std::string int_list(const std::vector<std::int64_t>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(xs[i]);
  }
  return out + "]";
}

std::string num_list(const std::vector<double>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += num(xs[i]);
  }
  return out + "]";
}

struct NormArgs {
  std::string space = "garling";
  double p = 1.0;
  std::string weights;
  std::string vector_text;
  bool witness = false;
};

int run_norm(const NormArgs& a, bool force_witness) {
  const garling::NormParams params(a.p);
  const garling::SparseVector x = garling::vector_from_text(a.vector_text);
  const bool want_witness = a.witness || force_witness;

  if (a.space == "lp") {
    if (want_witness) throw std::invalid_argument("--witness requires --space garling");
    std::printf("{\"value\":%s}\n", num(garling::lp_norm(x, params)).c_str());
    return 0;
  }
  if (a.weights.empty()) {
    throw std::invalid_argument("--weights is required for the lorentz and garling spaces");
  }
  const garling::Weights w = garling::weights_from_descriptor(a.weights);
  if (a.space == "lorentz") {
    if (want_witness) throw std::invalid_argument("--witness requires --space garling");
    std::printf("{\"value\":%s}\n", num(garling::lorentz_norm(x, params, w)).c_str());
    return 0;
  }
  if (a.space != "garling") {
    throw std::invalid_argument("unknown space: " + a.space + " (expected lp|lorentz|garling)");
  }
  if (want_witness) {
    const garling::Witness wit = garling::garling_witness(x, params, w);
    std::printf("{\"value\":%s,\"witness\":%s}\n", num(wit.value).c_str(),
                int_list(wit.selected).c_str());
  } else {
    std::printf("{\"value\":%s}\n", num(garling::garling_norm(x, params, w)).c_str());
  }
  return 0;
}

int run_weights_check(const std::string& weights, std::int64_t n_max) {
  const garling::Weights w = garling::weights_from_descriptor(weights);
  const double doubling = garling::doubling_ratio_inf(w, n_max);
  const garling::RegularityConstants rc = garling::regularity_constants(w, n_max);
  std::printf("{\"kind\":\"%s\",\"length\":%lld,\"n_max\":%lld,\"doubling_inf\":%s,"
              "\"a_est\":%s,\"b_est\":%s}\n",
              kind_name(w.kind()).c_str(), static_cast<long long>(w.length()),
              static_cast<long long>(n_max), num(doubling).c_str(), num(rc.a_est).c_str(),
              num(rc.b_est).c_str());
  return 0;
}

int run_asymmetry(double theta, double p, std::int64_t j_max) {
  const garling::NormParams params(p);
  const garling::Weights w = garling::Weights::power(theta, std::max<std::int64_t>(j_max, 2));
  std::printf("j,norm_y,norm_z,ratio\n");
  for (std::int64_t j = 1; j <= j_max; ++j) {
    const auto [y, z] = garling::asymmetry_pair(theta, params, j, w);
    const double ny = garling::garling_norm(y, params, w);
    const double nz = garling::garling_norm(z, params, w);
    std::printf("%lld,%s,%s,%s\n", static_cast<long long>(j), num(ny).c_str(), num(nz).c_str(),
                num(ny / nz).c_str());
  }
  std::printf("# weights=%s p=%s seed=none\n", w.descriptor().c_str(), num(p).c_str());
  return 0;
}

int run_convexity(const std::string& weights, double p, std::int64_t j_max) {
  const garling::NormParams params(p);
  const garling::Weights w = garling::weights_from_descriptor(weights);
  std::printf("j,alpha,norm_u,norm_v,norm_diff,norm_mid\n");
  for (std::int64_t j = 1; j <= j_max; ++j) {
    const garling::ConvexityPair pair = garling::convexity_pair(w, params, j);
    const double nu = garling::garling_norm(pair.u, params, w);
    const double nv = garling::garling_norm(pair.v, params, w);
    const double nd = garling::garling_norm(garling::subtract(pair.u, pair.v), params, w);
    const double nm = garling::garling_norm(
        garling::scaled(garling::add(pair.u, pair.v), 0.5), params, w);
    std::printf("%lld,%s,%s,%s,%s,%s\n", static_cast<long long>(j), num(pair.alpha).c_str(),
                num(nu).c_str(), num(nv).c_str(), num(nd).c_str(), num(nm).c_str());
  }
  std::printf("# weights=%s p=%s seed=none\n", w.descriptor().c_str(), num(p).c_str());
  return 0;
}

struct ProjectionArgs {
  std::string weights;
  double p = 1.0;
  double phi = 0.5;
  std::string basis = "dyadic";
  std::int64_t blocks = 12;
  std::int64_t trials = 1000;
  std::uint64_t seed = 1;
  std::int64_t probe_support = 64;
  std::int64_t index_limit = 0;
};

int run_construct_projection(const ProjectionArgs& a) {
  if (a.basis != "dyadic") {
    throw std::invalid_argument("unknown basis: " + a.basis + " (expected dyadic)");
  }
  const garling::NormParams params(a.p);
  const garling::Weights w = garling::weights_from_descriptor(a.weights);
  const garling::BlockBasis basis = garling::dyadic_block_basis(a.blocks, w, params);
  garling::PhiSelection sel = garling::phi_block_selection(basis, a.phi, params, w);
  const garling::ProjectionOperator proj =
      garling::build_projection(std::move(sel), params, w);

  std::int64_t index_limit = a.index_limit;
  if (index_limit <= 0) {
    index_limit = (std::int64_t{1} << a.blocks) - 1 + 256;
  }
  const garling::ProjectionProbeReport report = garling::probe_projection_norm(
      proj, params, w, a.trials, a.seed, index_limit, a.probe_support);

  std::string windows = "[";
  std::string masses = "[";
  for (std::int64_t k = 1; k <= proj.window_count(); ++k) {
    if (k > 1) {
      windows += ",";
      masses += ",";
    }
    windows += "{\"start\":" + std::to_string(proj.selection().window_start(k)) +
               ",\"end\":" + std::to_string(proj.selection().window_end(k)) +
               ",\"block\":" + std::to_string(proj.selection().chosen_block(k)) +
               ",\"mass\":" + num(proj.selection().mass(k)) + "}";
    masses += num(proj.selection().mass(k));
  }
  windows += "]";
  masses += "]";
  std::printf("{\"phi\":%s,\"windows\":%s,\"masses\":%s,\"empirical_norm\":%s,\"bound\":%s,"
              "\"trials\":%lld,\"seed\":%llu}\n",
              num(a.phi).c_str(), windows.c_str(), masses.c_str(),
              num(report.empirical_norm).c_str(), num(report.bound).c_str(),
              static_cast<long long>(report.trials),
              static_cast<unsigned long long>(report.seed));
  return 0;
}

int run_flatness(const std::string& weights, double eps, std::int64_t n_limit,
                 std::int64_t k_limit) {
  const garling::Weights w = garling::weights_from_descriptor(weights);
  const auto hit = garling::epsilon_flatness_search(w, eps, n_limit, k_limit);
  if (hit) {
    std::printf("{\"found\":true,\"n\":%lld,\"k\":%lld,\"ratio\":%s}\n",
                static_cast<long long>(hit->n), static_cast<long long>(hit->k),
                num(hit->ratio).c_str());
  } else {
    std::printf("{\"found\":false}\n");
  }
  return 0;
}

int run_defect(const std::string& vector_text, const std::string& weights, double p,
               std::int64_t trials, std::uint64_t seed) {
  const garling::NormParams params(p);
  const garling::Weights w = garling::weights_from_descriptor(weights);
  const garling::SparseVector x = garling::vector_from_text(vector_text);
  const garling::ConstantEstimate est = garling::symmetry_defect(x, params, w, trials, seed);
  std::printf("{\"lower_bound\":%s,\"witness\":%s}\n", num(est.lower_bound).c_str(),
              num_list(est.witness_coefficients).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lorentz and Garling sequence-space norms, witnesses, and constructions"};
  app.require_subcommand(1);

  NormArgs norm_args;
  CLI::App* norm = app.add_subcommand("norm", "compute a norm, optionally with a witness");
  norm->add_option("--space", norm_args.space, "lp|lorentz|garling")->required();
  norm->add_option("--p", norm_args.p, "exponent, 1 <= p")->required();
  norm->add_option("--weights", norm_args.weights, "power:T:N | harmonic:N | @file.json");
  norm->add_option("--vector", norm_args.vector_text, "JSON or @file.json")->required();
  norm->add_flag("--witness", norm_args.witness, "emit the maximizing selection");

  NormArgs witness_args;
  CLI::App* witness = app.add_subcommand("witness", "Garling norm with its witness");
  witness->add_option("--p", witness_args.p)->required();
  witness->add_option("--weights", witness_args.weights)->required();
  witness->add_option("--vector", witness_args.vector_text)->required();

  std::string wc_weights;
  std::int64_t wc_nmax = 0;
  CLI::App* wcheck = app.add_subcommand("weights-check", "doubling and regularity estimators");
  wcheck->add_option("--weights", wc_weights)->required();
  wcheck->add_option("--nmax", wc_nmax)->required();

  double asym_theta = 0.5, asym_p = 1.0;
  std::int64_t asym_jmax = 0;
  CLI::App* asym = app.add_subcommand("example-asymmetry",
                                      "increasing-entry family vs its rearrangement");
  asym->add_option("--theta", asym_theta)->required();
  asym->add_option("--p", asym_p)->required();
  asym->add_option("--jmax", asym_jmax)->required();

  std::string conv_weights;
  double conv_p = 1.0;
  std::int64_t conv_jmax = 0;
  CLI::App* conv = app.add_subcommand("example-convexity",
                                      "unit pairs with long midpoints");
  conv->add_option("--weights", conv_weights)->required();
  conv->add_option("--p", conv_p)->required();
  conv->add_option("--jmax", conv_jmax)->required();

  ProjectionArgs proj_args;
  CLI::App* proj = app.add_subcommand("construct-projection",
                                      "phi-selection and its explicit projection");
  proj->add_option("--weights", proj_args.weights)->required();
  proj->add_option("--p", proj_args.p)->required();
  proj->add_option("--phi", proj_args.phi)->required();
  proj->add_option("--basis", proj_args.basis, "dyadic");
  proj->add_option("--blocks", proj_args.blocks, "number of dyadic blocks");
  proj->add_option("--trials", proj_args.trials);
  proj->add_option("--seed", proj_args.seed);
  proj->add_option("--probe-support", proj_args.probe_support);
  proj->add_option("--index-limit", proj_args.index_limit);

  std::string flat_weights;
  double flat_eps = 0.1;
  std::int64_t flat_nlimit = 0, flat_klimit = 2;
  CLI::App* flat = app.add_subcommand("flatness-search", "near-flat prefix-sum windows");
  flat->add_option("--weights", flat_weights)->required();
  flat->add_option("--eps", flat_eps)->required();
  flat->add_option("--nlimit", flat_nlimit)->required();
  flat->add_option("--klimit", flat_klimit)->required();

  std::string def_vector, def_weights;
  double def_p = 1.0;
  std::int64_t def_trials = 100;
  std::uint64_t def_seed = 1;
  CLI::App* defect = app.add_subcommand("defect", "symmetry defect lower bound");
  defect->add_option("--vector", def_vector)->required();
  defect->add_option("--weights", def_weights)->required();
  defect->add_option("--p", def_p)->required();
  defect->add_option("--trials", def_trials);
  defect->add_option("--seed", def_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: %s\n%s", e.what(), app.help().c_str());
    return 2;
  }

  try {
    if (*norm) return run_norm(norm_args, false);
    if (*witness) {
      witness_args.space = "garling";
      return run_norm(witness_args, true);
    }
    if (*wcheck) return run_weights_check(wc_weights, wc_nmax);
    if (*asym) return run_asymmetry(asym_theta, asym_p, asym_jmax);
    if (*conv) return run_convexity(conv_weights, conv_p, conv_jmax);
    if (*proj) return run_construct_projection(proj_args);
    if (*flat) return run_flatness(flat_weights, flat_eps, flat_nlimit, flat_klimit);
    if (*defect) return run_defect(def_vector, def_weights, def_p, def_trials, def_seed);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::out_of_range& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::length_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::logic_error& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
