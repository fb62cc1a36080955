#include "fbh/normalize.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <mutex>
#include <thread>

#include "fbh/charts.hpp"
#include "fbh/random.hpp"

namespace fbh {

namespace {

// Runs fn(i) for i in [0, count) across `jobs` threads and combines with
// `combine`; rethrows the first exception. Oracles must be stateless (all of
// ours are), so concurrent evaluate() calls are safe.
template <typename Fn, typename Acc, typename Combine>
Acc parallel_reduce(int count, int jobs, Acc init, Fn&& fn, Combine&& combine) {
  jobs = std::clamp(jobs, 1, std::max(1, count));
  if (jobs == 1) {
    Acc acc = init;
    for (int i = 0; i < count; ++i) acc = combine(acc, fn(i));
    return acc;
  }
  std::vector<Acc> partial(jobs, init);
  std::vector<std::thread> threads;
  std::exception_ptr first_error = nullptr;
  std::mutex guard;
  for (int t = 0; t < jobs; ++t) {
    threads.emplace_back([&, t]() {
      try {
        Acc acc = init;
        for (int i = t; i < count; i += jobs) acc = combine(acc, fn(i));
        partial[t] = acc;
      } catch (...) {
        const std::lock_guard<std::mutex> lk(guard);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  if (first_error) std::rethrow_exception(first_error);
  Acc acc = init;
  for (const Acc& p : partial) acc = combine(acc, p);
  return acc;
}

template <typename Fn>
double parallel_max(int count, int jobs, Fn&& fn) {
  return parallel_reduce(count, jobs, 0.0, fn,
                         [](double a, double b) { return std::max(a, b); });
}

double point_distance(const DomainPoint& a, const DomainPoint& b) {
  return std::max((a.z - b.z).cwiseAbs().maxCoeff(),
                  (a.w - b.w).cwiseAbs().maxCoeff());
}

struct DirectPieces {
  int k = 1;
  FbhAut tau;
  double residual_sup = 0.0;
};

// Shared core of the two direct cases: move F(P) back to the base point,
// read k and the unitary off the Jacobian at a reference point, then check
// the claimed identity tau o F = canonical on a sample grid.
DirectPieces direct_construct(const MapOracle& f, const NormalizeConfig& cfg) {
  const DomainParams& in = f.in_params();
  const DomainParams& out = f.out_params();
  require(in.m == 1 && out.m == 1, Err::HypothesisViolated,
          "normalization requires m = 1 on both sides");
  require(in.mu == out.mu, Err::HypothesisViolated,
          "normalization requires the same mu on both sides");
  require(out.n >= in.n, Err::HypothesisViolated,
          "target z-dimension is smaller than the source");
  const int n = in.n, big_n = out.n;
  const bool fd = !f.analytic_jacobian();
  const double k_gate = fd ? cfg.fd_k_gate : cfg.k_gate;
  const double res_gate = fd ? cfg.fd_residual_gate : cfg.residual_gate;

  const PropernessReport rep =
      verify_proper(f, cfg.seed + 101, cfg.proper_samples,
                    cfg.proper_boundary_gate, cfg.boundary_tol, cfg.jobs);
  require(rep.pass, Err::NotProper,
          "properness check failed (max boundary residual " +
              std::to_string(rep.max_boundary_residual) +
              ", interior violations " +
              std::to_string(rep.interior_violations) + ")");

  const DomainPoint q0 = f.evaluate(base_point(in));
  require(classify(out, q0, cfg.boundary_tol) == Region::Boundary,
          Err::NotProper, "image of the base boundary point left the boundary");
  const FbhAut tau1 = to_base(out, q0, cfg.boundary_tol);

  const DomainPoint ref{CVector::Zero(n),
                        CVector::Constant(1, Complex{cfg.base_w, 0.0})};
  const CMatrix j = aut_jacobian(tau1, out, f.evaluate(ref)) * f.jacobian(ref);
  const CMatrix b = j.topLeftCorner(big_n, n);
  const double mixed = std::max(max_abs(j.topRightCorner(big_n, 1)),
                                max_abs(j.bottomLeftCorner(1, n)));
  require(mixed <= k_gate, Err::NotClassifiedForm,
          "Jacobian mixes z and w blocks (defect " + std::to_string(mixed) +
              "); the map cannot be a conjugated power map");

  const CMatrix gram = b.adjoint() * b;
  const double kappa = gram.trace().real() / n;
  require(max_abs(gram - kappa * CMatrix::Identity(n, n)) <=
              k_gate * std::max(1.0, kappa),
          Err::NotClassifiedForm,
          "z-Jacobian block is not a scaled isometry");
  const long k = std::lround(kappa);
  require(k >= 1 && std::abs(kappa - static_cast<double>(k)) <=
                        k_gate * std::max(1.0, kappa),
          Err::NotClassifiedForm,
          "squared Jacobian scale is not a positive integer (kappa = " +
              std::to_string(kappa) + ")");

  CMatrix u_cols = b / std::sqrt(static_cast<double>(k));
  Eigen::JacobiSVD<CMatrix> svd(u_cols,
                                Eigen::ComputeThinU | Eigen::ComputeThinV);
  const CMatrix q_cols = svd.matrixU() * svd.matrixV().adjoint();
  require(max_abs(u_cols - q_cols) <= 10.0 * std::max(k_gate, 1e-9),
          Err::NotClassifiedForm, "z-Jacobian block is not a scaled unitary");
  const CMatrix u_full =
      (big_n == n) ? q_cols : unitary_complete(q_cols);

  const FbhAut tau =
      compose(FbhAut::z_unitary(u_full.adjoint(), 1), tau1, in.mu);

  const MapDescriptor target =
      MapDescriptor::canonical(n, in.mu, static_cast<int>(k), big_n);
  std::vector<DomainPoint> grid =
      sample_interior(in, cfg.seed + 202, cfg.grid_interior);
  std::vector<DomainPoint> bpts =
      sample_boundary(in, cfg.seed + 303, cfg.grid_boundary);
  grid.insert(grid.end(), bpts.begin(), bpts.end());
  const double residual_sup =
      parallel_max(static_cast<int>(grid.size()), cfg.jobs, [&](int i) {
        return point_distance(apply(tau, out, f.evaluate(grid[i])),
                              target.evaluate(grid[i]));
      });
  require(residual_sup <= res_gate, Err::NotClassifiedForm,
          "map is proper but does not match a conjugated power map "
          "(sup residual " + std::to_string(residual_sup) + ")");
  return DirectPieces{static_cast<int>(k), tau, residual_sup};
}

void append_roots(std::vector<DomainPoint>& out, const CVector& z, Complex w,
                  int k) {
  const double r = std::pow(std::abs(w), 1.0 / k);
  const double th = std::arg(w) / k;
  for (int j = 0; j < k; ++j) {
    DomainPoint p;
    p.z = z;
    p.w = CVector::Constant(1, std::polar(r, th + 2.0 * M_PI * j / k));
    out.push_back(std::move(p));
  }
}

}  // namespace

PropernessReport verify_proper(const MapOracle& f, uint64_t seed, int count,
                               double boundary_gate, double boundary_tol,
                               int jobs) {
  require(count >= 1, Err::Schema, "verify_proper: count must be >= 1");
  const DomainParams& in = f.in_params();
  const DomainParams& out = f.out_params();
  const std::vector<DomainPoint> bpts = sample_boundary(in, seed, count);
  const std::vector<DomainPoint> ipts = sample_interior(in, seed + 1, count);
  PropernessReport rep;
  rep.samples_used = 2 * count;
  rep.max_boundary_residual = parallel_max(count, jobs, [&](int i) {
    return std::abs(fbh_defining(out, f.evaluate(bpts[i])));
  });
  rep.interior_violations = parallel_reduce(
      count, jobs, 0,
      [&](int i) {
        return fbh_defining(out, f.evaluate(ipts[i])) > boundary_tol ? 1 : 0;
      },
      [](int a, int b) { return a + b; });
  rep.pass =
      rep.max_boundary_residual <= boundary_gate && rep.interior_violations == 0;
  return rep;
}

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::Direct: return "direct";
    case Strategy::BallFit: return "ballfit";
    case Strategy::Both: return "both";
  }
  return "direct";
}

Strategy strategy_from_string(const std::string& s) {
  if (s == "direct") return Strategy::Direct;
  if (s == "ballfit") return Strategy::BallFit;
  if (s == "both") return Strategy::Both;
  fail(Err::Schema, "unknown strategy \"" + s +
                        "\" (expected direct, ballfit, or both)");
}

NormalizationResult normalize_self(const MapOracle& f,
                                   const NormalizeConfig& cfg) {
  require(f.in_params().n == f.out_params().n, Err::HypothesisViolated,
          "normalize_self requires equal source and target dimensions");
  DirectPieces pieces = direct_construct(f, cfg);
  return NormalizationResult{pieces.k,
                             FbhAut::identity(f.in_params().n, 1),
                             std::move(pieces.tau),
                             pieces.residual_sup,
                             Strategy::Direct,
                             std::nullopt};
}

NormalizationResult normalize_nonequidim(const MapOracle& f,
                                         const NormalizeConfig& cfg) {
  const int n = f.in_params().n;
  const int big_n = f.out_params().n;
  require(big_n >= n, Err::HypothesisViolated,
          "target z-dimension is smaller than the source");
  require(big_n < 2 * n, Err::HypothesisViolated,
          "target z-dimension " + std::to_string(big_n) +
              " is outside the classified range n <= N < 2n (n = " +
              std::to_string(n) + ")");
  DirectPieces pieces = direct_construct(f, cfg);
  return NormalizationResult{pieces.k,
                             FbhAut::identity(n, 1),
                             std::move(pieces.tau),
                             pieces.residual_sup,
                             Strategy::Direct,
                             std::nullopt};
}

BallFitReport normalize_ballfit(const MapOracle& f, const NormalizeConfig& cfg) {
  const DomainParams& in = f.in_params();
  const DomainParams& out = f.out_params();
  require(in.m == 1 && out.m == 1, Err::HypothesisViolated,
          "the ball-fit route requires m = 1 on both sides");
  require(in.mu == out.mu, Err::HypothesisViolated,
          "the ball-fit route requires the same mu on both sides");
  require(out.n >= in.n, Err::HypothesisViolated,
          "target z-dimension is smaller than the source");
  const int n = in.n, big_n = out.n;
  const double mu = in.mu;

  const PropernessReport rep =
      verify_proper(f, cfg.seed + 101, cfg.proper_samples,
                    cfg.proper_boundary_gate, cfg.boundary_tol, cfg.jobs);
  require(rep.pass, Err::NotProper,
          "properness check failed (max boundary residual " +
              std::to_string(rep.max_boundary_residual) +
              ", interior violations " +
              std::to_string(rep.interior_violations) + ")");

  const DomainPoint q0 = f.evaluate(base_point(in));
  require(classify(out, q0, cfg.boundary_tol) == Region::Boundary,
          Err::NotProper, "image of the base boundary point left the boundary");
  const FbhAut tau1 = to_base(out, q0, cfg.boundary_tol);

  // Boundary pairs pushed through the transfer chain on both sides.
  const int want = cfg.fit_oversample * (big_n + 2) * (n + 2);
  std::vector<std::pair<CVector, CVector>> pairs;
  pairs.reserve(want);
  Rng rng(cfg.seed + 404);
  const double z_spread = cfg.ballfit_z_sigma / std::sqrt(mu);
  long attempts = 0;
  while (static_cast<int>(pairs.size()) < want) {
    require(++attempts <= 200L * want, Err::FitFailed,
            "could not sample enough boundary pairs clear of the branch cut");
    DomainPoint p;
    p.z = z_spread * rng.cgaussian_vector(n);
    const double theta =
        rng.uniform(-cfg.ballfit_theta_max, cfg.ballfit_theta_max);
    p.w = CVector::Constant(
        1, std::polar(std::exp(-0.5 * mu * p.z.squaredNorm()), theta));
    const DomainPoint q = apply(tau1, out, f.evaluate(p));
    const Complex w1 = q.w(0);
    if (std::abs(w1) < 1e-14) continue;
    // Keep the image phase well inside one branch of the logarithm: a sample
    // whose continuous phase wrapped past pi would reappear with a small
    // principal argument and poison the fit, so demand a half-circle margin.
    if (std::abs(std::arg(w1)) > M_PI_2) continue;
    pairs.emplace_back(to_ball(mu, chart_from_domain(in, p)).coords,
                       to_ball(mu, chart_from_domain(out, q)).coords);
  }

  BallFitReport r;
  if (big_n == n) {
    const ProjectiveFit pf =
        fit_projective(pairs, n + 1, cfg.fit_rel_gap_tol, cfg.h_tol);
    r.fit_sigma_min = pf.sigma_min;
    r.fit_sigma_next = pf.sigma_next;
    r.h_residual = pf.aut.h_residual();
    CVector qv = CVector::Zero(n + 1);
    qv(n) = 1.0;
    r.qfix_residual = (act(pf.aut, qv) - qv).cwiseAbs().maxCoeff();
    const CanonicalParams cp = canonical_form(pf.aut);
    r.lambda = cp.lambda;
    r.a0 = cp.a0;
    r.a_norm = cp.a.norm();
    r.constraint_residual = cp.constraint_residual();
    r.kappa = cp.kappa().real();
  } else {
    const MatrixFit mf =
        fit_projective_matrix(pairs, n + 1, big_n + 1, cfg.fit_rel_gap_tol);
    r.fit_sigma_min = mf.sigma_min;
    r.fit_sigma_next = mf.sigma_next;
    const HScaled hs = h_scale_normalize(mf.t, n + 1, big_n + 1, cfg.h_tol);
    r.h_residual = hs.residual;
    CVector qin = CVector::Zero(n + 2);
    qin(0) = 1.0;
    qin(n + 1) = 1.0;
    const CVector y = hs.t1 * qin;
    const Complex lam0 = 0.5 * (y(0) + y(big_n + 1));
    require(std::abs(lam0) > 1e-9, Err::Internal,
            "degenerate eigenvalue on the fixed lift");
    CVector qout = CVector::Zero(big_n + 2);
    qout(0) = 1.0;
    qout(big_n + 1) = 1.0;
    r.qfix_residual = (y - lam0 * qout).cwiseAbs().maxCoeff();
    require(r.qfix_residual <= 1e-6 * std::abs(lam0) + 1e-9, Err::DoesNotFixQ,
            "fitted matrix does not fix the base direction (defect " +
                std::to_string(r.qfix_residual) + ")");
    const Complex ph = std::exp(Complex{0.0, M_PI_2 - std::arg(lam0)});
    r.lambda = ph * lam0;
    r.a0 = ph * hs.t1(0, 0);
    r.a_norm = hs.t1.block(1, 0, big_n, 1).norm();
    r.constraint_residual = std::abs(2.0 * r.lambda - 4.0 * r.a0 - 2.0 / r.lambda);
    r.kappa = (-1.0 / (r.lambda * r.lambda)).real();
  }

  require(r.a_norm <= cfg.constraint_gate, Err::ConstraintResidualLarge,
          "translation-type parameter is nonzero (|a| = " +
              std::to_string(r.a_norm) + ")");
  require(r.constraint_residual <= cfg.constraint_gate,
          Err::ConstraintResidualLarge,
          "classification constraint violated (|2 lambda - 4 a0 - 2/lambda| = " +
              std::to_string(r.constraint_residual) + ")");
  const long k = std::lround(r.kappa);
  require(k >= 1 && std::abs(r.kappa - static_cast<double>(k)) <=
                        cfg.ballfit_k_gate,
          Err::NotClassifiedForm,
          "fitted kappa is not a positive integer (kappa = " +
              std::to_string(r.kappa) + ")");
  r.k = static_cast<int>(k);
  return r;
}

NormalizationResult normalize(const MapOracle& f, Strategy strategy,
                              const NormalizeConfig& cfg) {
  auto run_direct = [&]() {
    return (f.out_params().n == f.in_params().n) ? normalize_self(f, cfg)
                                                 : normalize_nonequidim(f, cfg);
  };
  if (strategy == Strategy::Direct) return run_direct();
  BallFitReport bf = normalize_ballfit(f, cfg);
  NormalizationResult res = run_direct();
  require(res.k == bf.k, Err::StrategyDisagreement,
          "direct construction recovered k = " + std::to_string(res.k) +
              " but the ball fit gave k = " + std::to_string(bf.k));
  res.strategy = strategy;
  res.ballfit = bf;
  return res;
}

int fiber_count(const MapDescriptor& d, const DomainPoint& target, double tol) {
  validate_point(d.out_params(), target, "fiber_count");
  require(std::isfinite(tol) && tol > 0.0, Err::Schema,
          "fiber_count: tol must be finite and > 0");
  require(target.w.norm() > 1e-12, Err::NonGenericTarget,
          "fiber_count requires a generic target (w != 0)");

  std::vector<DomainPoint> candidates{target};
  const auto& stages = d.stages();
  for (size_t si = stages.size(); si-- > 0;) {
    const DomainParams& par = d.params_before(si);
    std::vector<DomainPoint> next;
    if (const auto* a = std::get_if<AutStage>(&stages[si])) {
      const FbhAut inv = inverse(a->g);
      for (const auto& c : candidates) next.push_back(apply(inv, par, c));
    } else if (const auto* pw = std::get_if<PowerStage>(&stages[si])) {
      const double s = std::sqrt(static_cast<double>(pw->k));
      for (const auto& c : candidates) append_roots(next, c.z / s, c.w(0), pw->k);
    } else {
      const auto& e = std::get<EmbedStage>(stages[si]);
      const double s = std::sqrt(static_cast<double>(e.k));
      const int pad = e.big_n - par.n;
      for (const auto& c : candidates) {
        if (pad > 0 && c.z.tail(pad).cwiseAbs().maxCoeff() > tol) continue;
        append_roots(next, c.z.head(par.n) / s, c.w(0), e.k);
      }
    }
    candidates = std::move(next);
  }

  std::vector<DomainPoint> verified;
  for (auto& c : candidates) {
    if (point_distance(d.evaluate(c), target) > std::max(tol, 1e-8)) continue;
    bool dup = false;
    for (const auto& v : verified)
      if (point_distance(v, c) <= 1e-9) {
        dup = true;
        break;
      }
    if (!dup) verified.push_back(std::move(c));
  }
  return static_cast<int>(verified.size());
}

Json properness_to_json(const PropernessReport& r) {
  return Json{{"pass", r.pass},
              {"max_boundary_residual", r.max_boundary_residual},
              {"interior_violations", r.interior_violations},
              {"samples_used", r.samples_used}};
}

Json ballfit_to_json(const BallFitReport& r) {
  return Json{{"k", r.k},
              {"kappa", r.kappa},
              {"lambda", complex_to_json(r.lambda)},
              {"a0", complex_to_json(r.a0)},
              {"a_norm", r.a_norm},
              {"constraint_residual", r.constraint_residual},
              {"fit_sigma_min", r.fit_sigma_min},
              {"fit_sigma_next", r.fit_sigma_next},
              {"h_residual", r.h_residual},
              {"qfix_residual", r.qfix_residual}};
}

Json normalization_to_json(const NormalizationResult& r) {
  Json j{{"k", r.k},
         {"sigma", aut_to_json(r.sigma)},
         {"tau", aut_to_json(r.tau)},
         {"residual_sup", r.residual_sup},
         {"strategy", to_string(r.strategy)}};
  if (r.ballfit) j["ballfit"] = ballfit_to_json(*r.ballfit);
  return j;
}

}  // namespace fbh
