// Command-line front end: every subcommand reads JSON arguments (inline,
// from a file, or "-" for stdin) and writes a single-line JSON result to
// stdout. Exit codes: 0 success, 2 domain-level refusal or bad input,
// 1 internal failure.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fbh/charts.hpp"
#include "fbh/normalize.hpp"

namespace {

using fbh::Json;

Json load_json_arg(const std::string& arg, const std::string& what) {
  std::string text;
  if (!arg.empty() && (arg[0] == '{' || arg[0] == '[')) {
    text = arg;
  } else if (arg == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(arg);
    fbh::require(in.good(), fbh::Err::Schema,
                 what + ": cannot read file \"" + arg + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return fbh::parse_json_text(text, what);
}

uint64_t env_seed() {
  const char* env = std::getenv("FBH_SEED");
  if (!env || !*env) return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  fbh::require(end && *end == '\0', fbh::Err::Schema,
               "FBH_SEED must be an unsigned integer");
  return v;
}

void emit(const Json& j) { std::cout << j.dump() << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proper holomorphic maps between Fock-Bargmann-Hartogs domains"};
  app.require_subcommand(1);
  int exit_code = 0;

  // ---- member ------------------------------------------------------------
  std::string mem_params, mem_point;
  double mem_mu = 0.0, mem_tol = fbh::kBoundaryTol;
  auto* member = app.add_subcommand(
      "member", "Classify a point against the domain boundary");
  auto* mem_params_opt =
      member->add_option("--params", mem_params, "domain parameters JSON");
  auto* mem_mu_opt = member->add_option(
      "--mu", mem_mu, "shorthand: mu alone, n and m taken from the point");
  mem_params_opt->excludes(mem_mu_opt);
  member->add_option("--point", mem_point, "point JSON")->required();
  member->add_option("--tol", mem_tol, "boundary tolerance");
  member->callback([&] {
    const fbh::DomainPoint p =
        fbh::point_from_json(load_json_arg(mem_point, "point"), "point");
    fbh::DomainParams par;
    if (*mem_mu_opt) {
      par = fbh::DomainParams{static_cast<int>(p.z.size()),
                              static_cast<int>(p.w.size()), mem_mu};
      par.validate();
    } else {
      fbh::require(mem_params_opt->count() > 0, fbh::Err::Schema,
                   "member: provide --params or --mu");
      par = fbh::params_from_json(load_json_arg(mem_params, "params"), "params");
    }
    emit(Json{{"region", fbh::to_string(fbh::classify(par, p, mem_tol))},
              {"r", fbh::fbh_defining(par, p)}});
  });

  // ---- aut ---------------------------------------------------------------
  auto* aut = app.add_subcommand("aut", "Automorphism group operations");
  aut->require_subcommand(1);

  std::string ac_params, ac_left, ac_right;
  auto* acompose =
      aut->add_subcommand("compose", "Normal form of left o right");
  acompose->add_option("--params", ac_params)->required();
  acompose->add_option("--left", ac_left, "outer automorphism JSON")->required();
  acompose->add_option("--right", ac_right, "inner automorphism JSON")->required();
  acompose->callback([&] {
    const fbh::DomainParams par =
        fbh::params_from_json(load_json_arg(ac_params, "params"), "params");
    const fbh::FbhAut g =
        fbh::aut_from_json(load_json_arg(ac_left, "left"), "left");
    const fbh::FbhAut h =
        fbh::aut_from_json(load_json_arg(ac_right, "right"), "right");
    emit(fbh::aut_to_json(fbh::compose(g, h, par.mu)));
  });

  std::string ai_g;
  auto* ainvert = aut->add_subcommand("invert", "Normal form of g^-1");
  ainvert->add_option("--g", ai_g)->required();
  ainvert->callback([&] {
    emit(fbh::aut_to_json(
        fbh::inverse(fbh::aut_from_json(load_json_arg(ai_g, "g"), "g"))));
  });

  std::string aa_params, aa_g, aa_point;
  auto* aapply = aut->add_subcommand("apply", "Evaluate g at a point");
  aapply->add_option("--params", aa_params)->required();
  aapply->add_option("--g", aa_g)->required();
  aapply->add_option("--point", aa_point)->required();
  aapply->callback([&] {
    const fbh::DomainParams par =
        fbh::params_from_json(load_json_arg(aa_params, "params"), "params");
    const fbh::FbhAut g = fbh::aut_from_json(load_json_arg(aa_g, "g"), "g");
    const fbh::DomainPoint p =
        fbh::point_from_json(load_json_arg(aa_point, "point"), "point");
    emit(fbh::point_to_json(fbh::apply(g, par, p)));
  });

  std::string ab_params, ab_point;
  double ab_tol = fbh::kBoundaryTol;
  auto* abase = aut->add_subcommand(
      "to-base", "Automorphism taking a boundary point to (0,...,0,1)");
  abase->add_option("--params", ab_params)->required();
  abase->add_option("--point", ab_point)->required();
  abase->add_option("--tol", ab_tol, "boundary tolerance");
  abase->callback([&] {
    const fbh::DomainParams par =
        fbh::params_from_json(load_json_arg(ab_params, "params"), "params");
    const fbh::DomainPoint q =
        fbh::point_from_json(load_json_arg(ab_point, "point"), "point");
    emit(fbh::aut_to_json(fbh::to_base(par, q, ab_tol)));
  });

  std::string ar_params;
  uint64_t ar_seed = 0;
  double ar_scale = 0.5;
  auto* arandom = aut->add_subcommand("random", "Seeded random automorphism");
  arandom->add_option("--params", ar_params)->required();
  auto* ar_seed_opt =
      arandom->add_option("--seed", ar_seed, "RNG seed (default FBH_SEED or 0)");
  arandom->add_option("--v-scale", ar_scale, "translation spread");
  arandom->callback([&] {
    if (ar_seed_opt->count() == 0) ar_seed = env_seed();
    const fbh::DomainParams par =
        fbh::params_from_json(load_json_arg(ar_params, "params"), "params");
    emit(fbh::aut_to_json(fbh::random_aut(par, ar_seed, ar_scale)));
  });

  // ---- transfer ----------------------------------------------------------
  auto* transfer =
      app.add_subcommand("transfer", "Domain <-> ball transfer chain");
  transfer->require_subcommand(1);

  std::string tb_point;
  double tb_mu = 1.0;
  auto* toball = transfer->add_subcommand(
      "to-ball", "Carry an fbh-stage point to the unit ball");
  toball->add_option("--mu", tb_mu)->required();
  toball->add_option("--point", tb_point, "chart point JSON")->required();
  toball->callback([&] {
    const fbh::ChartPoint p =
        fbh::chart_point_from_json(load_json_arg(tb_point, "point"), "point");
    emit(fbh::chart_point_to_json(fbh::to_ball(tb_mu, p)));
  });

  std::string fb_point;
  double fb_mu = 1.0;
  auto* fromball = transfer->add_subcommand(
      "from-ball", "Carry a ball-stage point back to the domain");
  fromball->add_option("--mu", fb_mu)->required();
  fromball->add_option("--point", fb_point, "chart point JSON")->required();
  fromball->callback([&] {
    const fbh::ChartPoint p =
        fbh::chart_point_from_json(load_json_arg(fb_point, "point"), "point");
    emit(fbh::chart_point_to_json(fbh::from_ball(fb_mu, p)));
  });

  // ---- ball --------------------------------------------------------------
  auto* ball = app.add_subcommand("ball", "Projective ball automorphisms");
  ball->require_subcommand(1);

  std::string bf_pairs;
  int bf_d = 2;
  auto* bfit = ball->add_subcommand(
      "fit", "Fit a projective automorphism from point pairs");
  bfit->add_option("--d", bf_d, "ball dimension")->required();
  bfit->add_option("--pairs", bf_pairs, "array of {\"x\":[...],\"y\":[...]}")
      ->required();
  bfit->callback([&] {
    const Json pj = load_json_arg(bf_pairs, "pairs");
    fbh::expect_array(pj, "pairs");
    std::vector<std::pair<fbh::CVector, fbh::CVector>> pairs;
    for (size_t i = 0; i < pj.size(); ++i) {
      const std::string path = "pairs[" + std::to_string(i) + "]";
      fbh::expect_only_keys(pj[i], {"x", "y"}, path);
      pairs.emplace_back(
          fbh::vector_from_json(fbh::member(pj[i], "x", path), path + ".x"),
          fbh::vector_from_json(fbh::member(pj[i], "y", path), path + ".y"));
    }
    const fbh::ProjectiveFit fit = fbh::fit_projective(pairs, bf_d);
    emit(Json{{"aut", fbh::projective_to_json(fit.aut)},
              {"sigma_min", fit.sigma_min},
              {"sigma_next", fit.sigma_next},
              {"h_residual", fit.aut.h_residual()}});
  });

  std::string bc_aut;
  double bc_fix_tol = 1e-9;
  auto* bcanon = ball->add_subcommand(
      "canonical", "Normal-form parameters of a Q-fixing automorphism");
  bcanon->add_option("--aut", bc_aut, "projective automorphism JSON")->required();
  bcanon->add_option("--fix-tol", bc_fix_tol, "Q-fixing tolerance");
  bcanon->callback([&] {
    const fbh::ProjectiveAut t =
        fbh::projective_from_json(load_json_arg(bc_aut, "aut"), "aut");
    emit(fbh::canonical_to_json(fbh::canonical_form(t, bc_fix_tol)));
  });

  std::string ba_aut, ba_point;
  auto* bact = ball->add_subcommand("act", "Apply a projective automorphism");
  bact->add_option("--aut", ba_aut)->required();
  bact->add_option("--point", ba_point, "ball point as a complex vector")
      ->required();
  bact->callback([&] {
    const fbh::ProjectiveAut t =
        fbh::projective_from_json(load_json_arg(ba_aut, "aut"), "aut");
    const fbh::CVector x =
        fbh::vector_from_json(load_json_arg(ba_point, "point"), "point");
    emit(fbh::vector_to_json(fbh::act(t, x)));
  });

  // ---- verify-proper -----------------------------------------------------
  std::string vp_map;
  int vp_samples = 400, vp_jobs = 1;
  uint64_t vp_seed = 0;
  double vp_gate = 1e-7;
  auto* vproper =
      app.add_subcommand("verify-proper", "Sampled properness check");
  vproper->add_option("--map", vp_map, "map JSON (extended schema)")->required();
  vproper->add_option("--samples", vp_samples, "samples per side");
  auto* vp_seed_opt =
      vproper->add_option("--seed", vp_seed, "RNG seed (default FBH_SEED or 0)");
  vproper->add_option("--jobs", vp_jobs, "worker threads");
  vproper->add_option("--boundary-gate", vp_gate, "max boundary residual");
  vproper->callback([&] {
    if (vp_seed_opt->count() == 0) vp_seed = env_seed();
    const auto oracle = fbh::oracle_from_json(load_json_arg(vp_map, "map"));
    const fbh::PropernessReport rep = fbh::verify_proper(
        *oracle, vp_seed, vp_samples, vp_gate, fbh::kBoundaryTol, vp_jobs);
    emit(fbh::properness_to_json(rep));
    if (!rep.pass) exit_code = 2;
  });

  // ---- normalize ---------------------------------------------------------
  std::string nm_map, nm_strategy = "direct";
  fbh::NormalizeConfig nm_cfg;
  bool nm_fd = false;
  double nm_fd_step = 1e-5;
  auto* norm = app.add_subcommand(
      "normalize", "Recover k and the conjugating automorphisms");
  norm->add_option("--map", nm_map, "map JSON (extended schema)")->required();
  norm->add_option("--strategy", nm_strategy, "direct | ballfit | both");
  norm->add_option("--seed", nm_cfg.seed, "RNG seed (default FBH_SEED or 0)");
  norm->add_option("--jobs", nm_cfg.jobs, "worker threads");
  norm->add_flag("--fd", nm_fd, "use finite-difference Jacobians");
  norm->add_option("--fd-step", nm_fd_step, "finite-difference step");
  norm->add_option("--samples", nm_cfg.proper_samples, "properness samples");
  norm->add_option("--grid-interior", nm_cfg.grid_interior,
                   "interior validation points");
  norm->add_option("--grid-boundary", nm_cfg.grid_boundary,
                   "boundary validation points");
  norm->add_option("--k-gate", nm_cfg.k_gate, "integer-recovery gate");
  norm->add_option("--residual-gate", nm_cfg.residual_gate,
                   "validation grid gate");
  norm->add_option("--constraint-gate", nm_cfg.constraint_gate,
                   "ball-fit constraint gate");
  norm->callback([&] {
    nm_cfg.seed = norm->count("--seed") ? nm_cfg.seed : env_seed();
    std::shared_ptr<const fbh::MapOracle> oracle =
        fbh::oracle_from_json(load_json_arg(nm_map, "map"));
    if (nm_fd)
      oracle = std::make_shared<fbh::FiniteDiffOracle>(oracle, nm_fd_step);
    const fbh::NormalizationResult res = fbh::normalize(
        *oracle, fbh::strategy_from_string(nm_strategy), nm_cfg);
    emit(fbh::normalization_to_json(res));
  });

  // ---- fiber-count -------------------------------------------------------
  std::string fc_map, fc_point;
  double fc_tol = 1e-9;
  auto* fiber = app.add_subcommand(
      "fiber-count", "Preimage count of a generic target point");
  fiber->add_option("--map", fc_map, "map JSON (descriptor schema)")->required();
  fiber->add_option("--point", fc_point, "target point JSON")->required();
  fiber->add_option("--tol", fc_tol, "matching tolerance");
  fiber->callback([&] {
    const fbh::MapDescriptor d =
        fbh::map_from_json(load_json_arg(fc_map, "map"));
    const fbh::DomainPoint p =
        fbh::point_from_json(load_json_arg(fc_point, "point"), "point");
    emit(Json{{"count", fbh::fiber_count(d, p, fc_tol)}});
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const fbh::Error& e) {
    emit(Json{{"error",
               Json{{"code", e.code_name()}, {"message", e.what()}}}});
    std::cerr << e.what() << "\n";
    return e.code() == fbh::Err::Internal ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
