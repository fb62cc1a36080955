#pragma once

#include "fbh/domain.hpp"

namespace fbh {

// Transfer chain for the m = 1 domains:
//
//   D_{n,1}(mu)  --log-->  Siegel half-space H in C^{n+1}  --Cayley-->  B^{n+1}
//
//   log:    (z, w) |-> ( sqrt(mu) z, -2i Log w )          (principal Log)
//   Cayley: (z, W) |-> ( 2z/(W+i), -(W-i)/(W+i) )
//
// The sqrt(mu) scaling makes the boundary inclusions exact for every mu:
// ||w||^2 = exp(-mu ||z||^2) maps onto Im W = ||z'||^2 and then onto the unit
// sphere, globally on the slit region w not in (-inf, 0]. The base boundary
// point P = (0,1) goes to the Siegel origin O = (0,0) and then to
// Q = (0,...,0,1) on the sphere.

enum class Stage { Fbh, Siegel, Ball };
const char* to_string(Stage s);

// Coordinates are stored as one vector of length n+1: the z-part (n entries)
// followed by the distinguished last coordinate (w, W, or eta respectively).
struct ChartPoint {
  Stage stage = Stage::Fbh;
  CVector coords;

  int n() const { return static_cast<int>(coords.size()) - 1; }
  Complex last() const { return coords(coords.size() - 1); }
  CVector head() const { return coords.head(coords.size() - 1); }
};

ChartPoint make_chart_point(Stage stage, const CVector& z_part, Complex last);

// D_{n,1} point <-> FBH-stage chart point.
ChartPoint chart_from_domain(const DomainParams& par, const DomainPoint& p);
DomainPoint domain_from_chart(const DomainParams& par, const ChartPoint& cp);

ChartPoint log_chart(double mu, const ChartPoint& p);      // Fbh -> Siegel
ChartPoint log_chart_inv(double mu, const ChartPoint& q);  // Siegel -> Fbh
ChartPoint cayley(const ChartPoint& q);                    // Siegel -> Ball
ChartPoint cayley_inv(const ChartPoint& x);                // Ball -> Siegel

// Full chain and its inverse.
ChartPoint to_ball(double mu, const ChartPoint& p);
ChartPoint from_ball(double mu, const ChartPoint& x);

Json chart_point_to_json(const ChartPoint& p);
ChartPoint chart_point_from_json(const Json& j, const std::string& path);

}  // namespace fbh
