#pragma once

#include <optional>

#include "fbh/ballaut.hpp"
#include "fbh/oracle.hpp"

namespace fbh {

struct NormalizeConfig {
  uint64_t seed = 0;
  int jobs = 1;

  // Properness screen.
  int proper_samples = 400;
  double proper_boundary_gate = 1e-7;
  double boundary_tol = kBoundaryTol;

  // Direct (Jacobian) route. Gates marked fd_* replace their counterparts
  // when the oracle's Jacobian is a finite-difference approximation.
  double base_w = 0.5;          // reference interior point (0, ..., 0, base_w)
  double k_gate = 1e-6;
  double fd_k_gate = 1e-3;
  double residual_gate = 1e-8;
  double fd_residual_gate = 1e-6;
  int grid_interior = 500;
  int grid_boundary = 200;

  // Ball-fit route.
  double ballfit_theta_max = 0.45;  // |arg w| spread of boundary samples
  double ballfit_z_sigma = 0.3;     // z spread (divided by sqrt(mu))
  int fit_oversample = 3;           // pairs = oversample * (N+2) * (n+2)
  double constraint_gate = 1e-5;
  double ballfit_k_gate = 1e-6;
  double fit_rel_gap_tol = kFitTol;
  double h_tol = kBallAutTol;
};

struct PropernessReport {
  bool pass = false;
  double max_boundary_residual = 0.0;
  int interior_violations = 0;
  int samples_used = 0;
};

// Samples `count` boundary points (does |r(F(p))| stay ~0?) and `count`
// interior points (does F(p) stay inside the closed target domain?).
PropernessReport verify_proper(const MapOracle& f, uint64_t seed, int count,
                               double boundary_gate = 1e-7,
                               double boundary_tol = kBoundaryTol,
                               int jobs = 1);

enum class Strategy { Direct, BallFit, Both };
const char* to_string(Strategy s);
Strategy strategy_from_string(const std::string& s);

// Diagnostics of the ball-fit route: the conjugated candidate is fitted as a
// projective matrix between homogeneous sphere lifts and the normal-form
// parameters are read off.
struct BallFitReport {
  int k = 1;
  double kappa = 1.0;           // -1/lambda^2 under the pure-imaginary convention
  Complex lambda;
  Complex a0;
  double a_norm = 0.0;          // translation-type parameter; ~0 for power maps
  double constraint_residual = 0.0;  // |2 lambda - 4 a0 - 2/lambda|
  double fit_sigma_min = 0.0;
  double fit_sigma_next = 0.0;
  double h_residual = 0.0;
  double qfix_residual = 0.0;
};

// Result of normalization: automorphisms sigma (source) and tau (target)
// with  tau o F o sigma = (z,w) |-> (sqrt(k) z, 0, ..., 0, w^k),
// validated on a sample grid with sup-residual residual_sup.
struct NormalizationResult {
  int k = 1;
  FbhAut sigma;
  FbhAut tau;
  double residual_sup = 0.0;
  Strategy strategy = Strategy::Direct;
  std::optional<BallFitReport> ballfit;
};

// Equidimensional case D_{n,1} -> D_{n,1}: every proper self-map is an
// automorphism conjugate of a power map; recover k and the conjugators.
NormalizationResult normalize_self(const MapOracle& f,
                                   const NormalizeConfig& cfg = {});

// Different dimensions D_{n,1} -> D_{N,1} with n <= N < 2n: conjugate of the
// padded power map. Refuses N >= 2n (outside the classified range).
NormalizationResult normalize_nonequidim(const MapOracle& f,
                                         const NormalizeConfig& cfg = {});

// Fit-based route (works for n <= N): transfer the conjugated candidate to
// the ball, fit the projective matrix from sampled boundary pairs, extract
// the normal-form parameters, and gate on the classification constraints.
BallFitReport normalize_ballfit(const MapOracle& f,
                                const NormalizeConfig& cfg = {});

// Strategy dispatcher used by the CLI: direct, ballfit, or both (the two
// must agree on k).
NormalizationResult normalize(const MapOracle& f, Strategy strategy,
                              const NormalizeConfig& cfg = {});

// Number of preimages of a generic target (w != 0) under a descriptor map,
// by exact stage-by-stage inversion.
int fiber_count(const MapDescriptor& d, const DomainPoint& target,
                double tol = 1e-9);

Json properness_to_json(const PropernessReport& r);
Json ballfit_to_json(const BallFitReport& r);
Json normalization_to_json(const NormalizationResult& r);

}  // namespace fbh
