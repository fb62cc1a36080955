#pragma once

#include <cstdint>
#include <vector>

#include "fbh/jsonio.hpp"
#include "fbh/linalg.hpp"

namespace fbh {

// Boundary membership in the defining function is decided at this scale;
// sampled boundary points land within ~1e-15 of the zero set, so 1e-9 keeps
// a wide safety margin in both directions.
inline constexpr double kBoundaryTol = 1e-9;

// The domain D_{n,m}(mu) = { (z,w) in C^n x C^m : ||w||^2 < exp(-mu ||z||^2) }.
struct DomainParams {
  int n = 1;
  int m = 1;
  double mu = 1.0;

  void validate() const;
  bool same_shape(const DomainParams& o) const {
    return n == o.n && m == o.m && mu == o.mu;
  }
};

struct DomainPoint {
  CVector z;
  CVector w;
};

// Defining function r(z,w) = ||w||^2 - exp(-mu ||z||^2); the domain is r < 0,
// the boundary r = 0.
double fbh_defining(const DomainParams& par, const DomainPoint& p);

enum class Region { Interior, Boundary, Exterior };
const char* to_string(Region r);

Region classify(const DomainParams& par, const DomainPoint& p,
                double tol = kBoundaryTol);

// The distinguished boundary point P = (0, ..., 0, 1) (w = last coordinate
// direction for m > 1).
DomainPoint base_point(const DomainParams& par);

// Deterministic boundary sampler: z has iid standard complex Gaussian
// entries, w is uniform on the sphere of radius exp(-mu ||z||^2 / 2).
std::vector<DomainPoint> sample_boundary(const DomainParams& par, uint64_t seed,
                                         int count);

// Interior sampler: same z law; w uniform (volume) in the open ball of the
// boundary radius, bounded away from the boundary by the shrink factor.
std::vector<DomainPoint> sample_interior(const DomainParams& par, uint64_t seed,
                                         int count, double shrink = 0.95);

// Siegel half-space model H = { (z,W) : Im W > ||z||^2 }: defining function
// Im W - ||z||^2 (positive inside, unlike the bounded models).
double siegel_defining(const CVector& z, Complex w_last);

// Unit ball: ||x||^2 - 1.
double ball_defining(const CVector& x);

Json params_to_json(const DomainParams& par);
DomainParams params_from_json(const Json& j, const std::string& path);
Json point_to_json(const DomainPoint& p);
DomainPoint point_from_json(const Json& j, const std::string& path);

// Checks p has the shape of a point of the domain and finite entries.
void validate_point(const DomainParams& par, const DomainPoint& p,
                    const std::string& what);

}  // namespace fbh
