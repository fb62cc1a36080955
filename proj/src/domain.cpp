#include "fbh/domain.hpp"

#include <cmath>

#include "fbh/random.hpp"

namespace fbh {

void DomainParams::validate() const {
  require(n >= 1, Err::Schema, "domain parameter n must be >= 1");
  require(m >= 1, Err::Schema, "domain parameter m must be >= 1");
  require(std::isfinite(mu) && mu > 0.0, Err::Schema,
          "domain parameter mu must be finite and > 0");
}

double fbh_defining(const DomainParams& par, const DomainPoint& p) {
  validate_point(par, p, "fbh_defining");
  return p.w.squaredNorm() - std::exp(-par.mu * p.z.squaredNorm());
}

const char* to_string(Region r) {
  switch (r) {
    case Region::Interior: return "interior";
    case Region::Boundary: return "boundary";
    case Region::Exterior: return "exterior";
  }
  return "exterior";
}

Region classify(const DomainParams& par, const DomainPoint& p, double tol) {
  const double r = fbh_defining(par, p);
  if (std::abs(r) <= tol) return Region::Boundary;
  return r < 0.0 ? Region::Interior : Region::Exterior;
}

DomainPoint base_point(const DomainParams& par) {
  par.validate();
  DomainPoint p{CVector::Zero(par.n), CVector::Zero(par.m)};
  p.w(par.m - 1) = 1.0;
  return p;
}

std::vector<DomainPoint> sample_boundary(const DomainParams& par, uint64_t seed,
                                         int count) {
  par.validate();
  require(count >= 0, Err::Schema, "sample count must be >= 0");
  Rng rng(seed);
  std::vector<DomainPoint> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    DomainPoint p;
    p.z = rng.cgaussian_vector(par.n);
    const double radius = std::exp(-0.5 * par.mu * p.z.squaredNorm());
    p.w = radius * rng.unit_sphere(par.m);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<DomainPoint> sample_interior(const DomainParams& par, uint64_t seed,
                                         int count, double shrink) {
  par.validate();
  require(count >= 0, Err::Schema, "sample count must be >= 0");
  require(shrink > 0.0 && shrink < 1.0, Err::Schema,
          "shrink factor must lie in (0,1)");
  Rng rng(seed);
  std::vector<DomainPoint> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    DomainPoint p;
    p.z = rng.cgaussian_vector(par.n);
    const double radius = std::exp(-0.5 * par.mu * p.z.squaredNorm());
    // Uniform w.r.t. volume in the ball of radius shrink * boundary radius.
    const double u = std::pow(rng.uniform(), 1.0 / (2.0 * par.m));
    p.w = shrink * radius * u * rng.unit_sphere(par.m);
    out.push_back(std::move(p));
  }
  return out;
}

double siegel_defining(const CVector& z, Complex w_last) {
  require(all_finite(z) && std::isfinite(w_last.real()) &&
              std::isfinite(w_last.imag()),
          Err::NonFinite, "siegel_defining: non-finite entry");
  return w_last.imag() - z.squaredNorm();
}

double ball_defining(const CVector& x) {
  require(all_finite(x), Err::NonFinite, "ball_defining: non-finite entry");
  return x.squaredNorm() - 1.0;
}

Json params_to_json(const DomainParams& par) {
  return Json{{"n", par.n}, {"m", par.m}, {"mu", par.mu}};
}

DomainParams params_from_json(const Json& j, const std::string& path) {
  expect_only_keys(j, {"n", "m", "mu"}, path);
  DomainParams par;
  par.n = int_from_json(member(j, "n", path), path + ".n");
  par.m = int_from_json(member(j, "m", path), path + ".m");
  par.mu = number_from_json(member(j, "mu", path), path + ".mu");
  par.validate();
  return par;
}

Json point_to_json(const DomainPoint& p) {
  return Json{{"z", vector_to_json(p.z)}, {"w", vector_to_json(p.w)}};
}

DomainPoint point_from_json(const Json& j, const std::string& path) {
  expect_only_keys(j, {"z", "w"}, path);
  DomainPoint p;
  p.z = vector_from_json(member(j, "z", path), path + ".z");
  p.w = vector_from_json(member(j, "w", path), path + ".w");
  return p;
}

void validate_point(const DomainParams& par, const DomainPoint& p,
                    const std::string& what) {
  par.validate();
  require(p.z.size() == par.n && p.w.size() == par.m, Err::DimensionMismatch,
          what + ": point shape (" + std::to_string(p.z.size()) + "," +
              std::to_string(p.w.size()) + ") does not match domain (" +
              std::to_string(par.n) + "," + std::to_string(par.m) + ")");
  require(all_finite(p.z) && all_finite(p.w), Err::NonFinite,
          what + ": non-finite coordinate");
}

}  // namespace fbh
