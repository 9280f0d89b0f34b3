// Command-line front end: verify residual identities, solve for derivation
// spaces, run the projection constructions, and emit deterministic JSON
// reports (sorted keys, no timestamps) to standard output.  Exit status:
// 0 = passed, 1 = failed residuals, 2 = invalid input or precondition.

#include "sdlab/constructions.hpp"
#include "sdlab/derivations.hpp"
#include "sdlab/example26.hpp"
#include "sdlab/randgen.hpp"
#include "sdlab/semidirect.hpp"
#include "sdlab/serialize.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <iostream>
#include <string>

namespace {

using sdlab::Json;

Json check_to_json(const sdlab::DerivationCheck& c) {
  Json w = Json::array({c.worst[0], c.worst[1]});
  if (c.worst[2] >= 0) w.push_back(c.worst[2]);
  return Json{{"residual", c.residual},
              {"passed", c.passed},
              {"scale", c.scale},
              {"worst", std::move(w)}};
}

Json tolerances_to_json(const sdlab::Tolerances& tol) {
  return Json{{"identity_tol", tol.identity_tol},
              {"rank_tol_factor", tol.rank_tol_factor}};
}

int emit(const Json& report, bool passed) {
  std::cout << sdlab::dump_report(report);
  return passed ? 0 : 1;
}

struct CommonOpts {
  std::string sigma_path;
  std::string tau_path;
  std::string d_path;
  sdlab::Tolerances tol;
};

void add_tol_options(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--tol", opts.tol.identity_tol, "identity tolerance");
  cmd->add_option("--rank-tol", opts.tol.rank_tol_factor,
                  "rank threshold factor");
}

int run_verify(const CommonOpts& opts) {
  const sdlab::SuperMap sigma =
      sdlab::supermap_from_json(sdlab::load_json_file(opts.sigma_path));
  const sdlab::SuperMap d =
      sdlab::supermap_from_json(sdlab::load_json_file(opts.d_path));
  Json inputs{{"sigma", sdlab::digest_file(opts.sigma_path)},
              {"d", sdlab::digest_file(opts.d_path)}};
  sdlab::DerivationCheck check;
  if (opts.tau_path.empty()) {
    check = sdlab::leibniz_residual(d, sigma, opts.tol);
  } else {
    const sdlab::SuperMap tau =
        sdlab::supermap_from_json(sdlab::load_json_file(opts.tau_path));
    inputs["tau"] = sdlab::digest_file(opts.tau_path);
    check = sdlab::sigma_tau_residual(d, sigma, tau, opts.tol);
  }
  Json report{{"command", "verify"},
              {"inputs", std::move(inputs)},
              {"tolerances", tolerances_to_json(opts.tol)},
              {"check", check_to_json(check)},
              {"passed", check.passed}};
  return emit(report, check.passed);
}

int run_solve(const CommonOpts& opts, bool star) {
  const sdlab::SuperMap sigma =
      sdlab::supermap_from_json(sdlab::load_json_file(opts.sigma_path));
  const auto space = sdlab::derivation_space(sigma, star, opts.tol);
  Json basis = Json::array();
  for (const sdlab::SuperMap& d : space)
    basis.push_back(sdlab::supermap_to_json(d));
  Json report{{"command", "solve"},
              {"inputs", Json{{"sigma", sdlab::digest_file(opts.sigma_path)}}},
              {"tolerances", tolerances_to_json(opts.tol)},
              {"star_constrained", star},
              {"dimension", space.size()},
              {"basis", std::move(basis)},
              {"passed", true}};
  return emit(report, true);
}

int run_construct(const CommonOpts& opts, const std::string& method) {
  const sdlab::SuperMap sigma =
      sdlab::supermap_from_json(sdlab::load_json_file(opts.sigma_path));
  const sdlab::SuperMap d =
      sdlab::supermap_from_json(sdlab::load_json_file(opts.d_path));
  sdlab::ConstructionReport rep;
  if (method == "thm32")
    rep = sdlab::construct_sigma_thm32(d, sigma, opts.tol);
  else if (method == "thm33")
    rep = sdlab::construct_sigma_thm33(d, sigma, opts.tol);
  else if (method == "prop34")
    rep = sdlab::reduce_to_hom_prop34(d, sigma, opts.tol);
  else
    rep = sdlab::reduce_general_prop36(d, sigma, opts.tol);
  Json report{{"command", "construct"},
              {"method", method},
              {"inputs", Json{{"sigma", sdlab::digest_file(opts.sigma_path)},
                              {"d", sdlab::digest_file(opts.d_path)}}},
              {"tolerances", tolerances_to_json(opts.tol)},
              {"report", sdlab::construction_report_to_json(rep)},
              {"passed", rep.passed}};
  return emit(report, rep.passed);
}

int run_symmetrize(const CommonOpts& opts) {
  const sdlab::SuperMap sigma =
      sdlab::supermap_from_json(sdlab::load_json_file(opts.sigma_path));
  const sdlab::SuperMap tau =
      sdlab::supermap_from_json(sdlab::load_json_file(opts.tau_path));
  const sdlab::SuperMap d =
      sdlab::supermap_from_json(sdlab::load_json_file(opts.d_path));
  const auto [mid, rep] = sdlab::symmetrize(d, sigma, tau, opts.tol);
  const bool passed =
      rep.forward.passed && rep.swapped.passed && rep.mid.passed;
  Json report{{"command", "symmetrize"},
              {"inputs", Json{{"sigma", sdlab::digest_file(opts.sigma_path)},
                              {"tau", sdlab::digest_file(opts.tau_path)},
                              {"d", sdlab::digest_file(opts.d_path)}}},
              {"tolerances", tolerances_to_json(opts.tol)},
              {"forward", check_to_json(rep.forward)},
              {"swapped", check_to_json(rep.swapped)},
              {"mid", check_to_json(rep.mid)},
              {"passed", passed}};
  return emit(report, passed);
}

int run_example26(const CommonOpts& opts, sdlab::Index grid_n,
                  const std::string& alpha, std::uint64_t seed) {
  const sdlab::AlphaKind kind = (alpha == "random")
                                    ? sdlab::AlphaKind::random_seeded
                                    : sdlab::AlphaKind::zero;
  const sdlab::Example26Instance inst =
      sdlab::build_example26(grid_n, kind, seed);

  const sdlab::DerivationCheck leib =
      sdlab::leibniz_residual(inst.d, inst.sigma, opts.tol);
  const sdlab::ConstructionReport rep =
      sdlab::construct_sigma_thm32(inst.d, inst.sigma, opts.tol);

  // The construction's projection must be the diagonal indicator of the
  // grid points where h > 0.
  double indicator_residual = 0.0;
  for (sdlab::Index i = 0; i < grid_n; ++i)
    for (sdlab::Index j = 0; j < grid_n; ++j) {
      const double expected = (i == j && inst.h(i) > 0.0) ? 1.0 : 0.0;
      indicator_residual =
          std::max(indicator_residual, std::abs(rep.P(i, j) - expected));
    }

  // The global candidate Sigma(f) = f/2 also satisfies the identity.
  const sdlab::SuperMap half =
      sdlab::scale(sdlab::Complex(0.5, 0.0), sdlab::identity_map(inst.alg));
  const sdlab::DerivationCheck leib_half =
      sdlab::leibniz_residual(inst.d, half, opts.tol);

  const bool indicator_ok = indicator_residual <= 1e-12;
  const bool passed =
      leib.passed && rep.passed && indicator_ok && leib_half.passed;
  Json report{{"command", "example26"},
              {"inputs", Json{{"grid_n", grid_n},
                              {"alpha", alpha},
                              {"seed", seed}}},
              {"tolerances", tolerances_to_json(opts.tol)},
              {"leibniz", check_to_json(leib)},
              {"construction", sdlab::construction_report_to_json(rep)},
              {"indicator_residual", indicator_residual},
              {"leibniz_half", check_to_json(leib_half)},
              {"passed", passed}};
  return emit(report, passed);
}

int run_semidirect(const CommonOpts& opts, sdlab::Index norm_budget,
                   std::uint64_t seed) {
  const sdlab::SuperMap sigma =
      sdlab::supermap_from_json(sdlab::load_json_file(opts.sigma_path));
  const sdlab::SuperMap d =
      sdlab::supermap_from_json(sdlab::load_json_file(opts.d_path));
  const sdlab::SemidirectContext ctx(sigma, opts.tol);
  const sdlab::PhiReport phi = sdlab::phi_d_report(ctx, d, opts.tol);

  // Associativity spot check on seeded random triples.
  sdlab::Rng rng(seed);
  const sdlab::StarAlgebra& alg = ctx.alg();
  double assoc = 0.0;
  double assoc_scale = 1.0;
  for (int trial = 0; trial < 10; ++trial) {
    const auto draw = [&]() {
      return sdlab::make_element(ctx, sdlab::gaussian_coeffs(rng, alg.dim()),
                                 sdlab::gaussian_matrix(rng, alg.space_dim()));
    };
    const auto u = draw(), v = draw(), w = draw();
    const auto left = semidirect_mul(ctx, semidirect_mul(ctx, u, v), w);
    const auto right = semidirect_mul(ctx, u, semidirect_mul(ctx, v, w));
    const sdlab::SemidirectElement diff{left.a - right.a, left.x - right.x};
    assoc = std::max(assoc, element_norm(ctx, diff));
    assoc_scale = std::max({assoc_scale, element_norm(ctx, left),
                            element_norm(ctx, right)});
  }
  const bool assoc_ok = assoc <= 1e-10 * assoc_scale;

  sdlab::NormBudget budget;
  budget.starts = norm_budget;
  budget.seed = seed;
  const sdlab::SemidirectElement unit =
      sdlab::phi_d_apply(ctx, d, alg.identity_coeffs());
  const sdlab::NormEstimate norm =
      sdlab::semidirect_norm_estimate(ctx, unit, budget);

  const bool passed = phi.passed && assoc_ok;
  Json report{{"command", "semidirect"},
              {"inputs", Json{{"sigma", sdlab::digest_file(opts.sigma_path)},
                              {"d", sdlab::digest_file(opts.d_path)}}},
              {"tolerances", tolerances_to_json(opts.tol)},
              {"phi", Json{{"hom_residual", phi.hom_residual},
                           {"passed", phi.passed},
                           {"injective", phi.injective},
                           {"scale", phi.scale}}},
              {"associativity",
               Json{{"residual", assoc},
                    {"scale", assoc_scale},
                    {"passed", assoc_ok}}},
              {"norm_phi_identity", Json{{"value", norm.value},
                                         {"lower_bound", norm.lower_bound},
                                         {"seed", seed},
                                         {"starts", budget.starts}}},
              {"passed", passed}};
  return emit(report, passed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale laboratory for twisted derivations of "
               "block-diagonal matrix algebras"};
  app.require_subcommand(1);

  CommonOpts opts;

  CLI::App* verify = app.add_subcommand("verify", "check a Leibniz identity");
  verify->add_option("--sigma", opts.sigma_path, "sigma map JSON")->required();
  verify->add_option("--d", opts.d_path, "derivation JSON")->required();
  verify->add_option("--tau", opts.tau_path, "tau map JSON (two-twist rule)");
  add_tol_options(verify, opts);

  bool star = false;
  CLI::App* solve = app.add_subcommand("solve", "compute the derivation space");
  solve->add_option("--sigma", opts.sigma_path, "sigma map JSON")->required();
  solve->add_flag("--star", star, "restrict to *-preserving solutions");
  add_tol_options(solve, opts);

  std::string method;
  CLI::App* construct =
      app.add_subcommand("construct", "run a projection construction");
  construct->add_option("--method", method, "construction to run")
      ->required()
      ->check(CLI::IsMember({"thm32", "thm33", "prop34", "prop36"}));
  construct->add_option("--sigma", opts.sigma_path, "sigma map JSON")
      ->required();
  construct->add_option("--d", opts.d_path, "derivation JSON")->required();
  add_tol_options(construct, opts);

  CLI::App* symmetrize =
      app.add_subcommand("symmetrize", "swap the two twists of a *-derivation");
  symmetrize->add_option("--sigma", opts.sigma_path, "sigma map JSON")
      ->required();
  symmetrize->add_option("--tau", opts.tau_path, "tau map JSON")->required();
  symmetrize->add_option("--d", opts.d_path, "derivation JSON")->required();
  add_tol_options(symmetrize, opts);

  sdlab::Index grid_n = 9;
  std::string alpha = "zero";
  std::uint64_t seed = 0;
  CLI::App* example26 =
      app.add_subcommand("example26", "run the grid instance");
  example26->add_option("--n", grid_n, "grid size (4m+1)");
  example26->add_option("--alpha", alpha, "lower-branch action")
      ->check(CLI::IsMember({"zero", "random"}));
  example26->add_option("--seed", seed, "seed for --alpha random");
  add_tol_options(example26, opts);

  sdlab::Index norm_budget = 6;
  std::uint64_t sd_seed = 0x5d1ab;
  CLI::App* semidirect =
      app.add_subcommand("semidirect", "embed via phi_d and estimate norms");
  semidirect->add_option("--sigma", opts.sigma_path, "sigma map JSON")
      ->required();
  semidirect->add_option("--d", opts.d_path, "derivation JSON")->required();
  semidirect->add_option("--norm-budget", norm_budget,
                         "starts for the norm estimator");
  semidirect->add_option("--seed", sd_seed, "seed for sampling");
  add_tol_options(semidirect, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    opts.tol.validate();
    if (verify->parsed()) return run_verify(opts);
    if (solve->parsed()) return run_solve(opts, star);
    if (construct->parsed()) return run_construct(opts, method);
    if (symmetrize->parsed()) return run_symmetrize(opts);
    if (example26->parsed()) return run_example26(opts, grid_n, alpha, seed);
    if (semidirect->parsed())
      return run_semidirect(opts, norm_budget, sd_seed);
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    // spec_error, shape_error, precondition_error
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
