#include "fbh/charts.hpp"

#include <cmath>

namespace fbh {

namespace {
void check_stage(const ChartPoint& p, Stage want, const char* op) {
  require(p.stage == want, Err::StageMismatch,
          std::string(op) + ": expected a " + to_string(want) +
              "-stage point, got " + to_string(p.stage));
  require(p.coords.size() >= 2, Err::DimensionMismatch,
          std::string(op) + ": chart point needs at least 2 coordinates");
  require(all_finite(p.coords), Err::NonFinite,
          std::string(op) + ": non-finite coordinate");
}

void check_mu(double mu, const char* op) {
  require(std::isfinite(mu) && mu > 0.0, Err::Schema,
          std::string(op) + ": mu must be finite and > 0");
}
}  // namespace

const char* to_string(Stage s) {
  switch (s) {
    case Stage::Fbh: return "fbh";
    case Stage::Siegel: return "siegel";
    case Stage::Ball: return "ball";
  }
  return "fbh";
}

ChartPoint make_chart_point(Stage stage, const CVector& z_part, Complex last) {
  ChartPoint p;
  p.stage = stage;
  p.coords.resize(z_part.size() + 1);
  p.coords.head(z_part.size()) = z_part;
  p.coords(z_part.size()) = last;
  return p;
}

ChartPoint chart_from_domain(const DomainParams& par, const DomainPoint& p) {
  validate_point(par, p, "chart_from_domain");
  require(par.m == 1, Err::DimensionMismatch,
          "the transfer chain requires m = 1");
  return make_chart_point(Stage::Fbh, p.z, p.w(0));
}

DomainPoint domain_from_chart(const DomainParams& par, const ChartPoint& cp) {
  require(par.m == 1, Err::DimensionMismatch,
          "the transfer chain requires m = 1");
  require(cp.stage == Stage::Fbh, Err::StageMismatch,
          "domain_from_chart: expected an fbh-stage point");
  require(cp.n() == par.n, Err::DimensionMismatch,
          "chart point dimension does not match the domain");
  DomainPoint p;
  p.z = cp.head();
  p.w = CVector::Constant(1, cp.last());
  return p;
}

ChartPoint log_chart(double mu, const ChartPoint& p) {
  check_stage(p, Stage::Fbh, "log_chart");
  check_mu(mu, "log_chart");
  const Complex w = p.last();
  require(w != Complex{0.0, 0.0}, Err::ZeroW, "log_chart: w = 0");
  require(w.imag() != 0.0 || w.real() > 0.0, Err::BranchCut,
          "log_chart: w on the branch cut (-inf, 0)");
  const Complex bigw = Complex{0.0, -2.0} * std::log(w);
  return make_chart_point(Stage::Siegel, std::sqrt(mu) * p.head(), bigw);
}

ChartPoint log_chart_inv(double mu, const ChartPoint& q) {
  check_stage(q, Stage::Siegel, "log_chart_inv");
  check_mu(mu, "log_chart_inv");
  const Complex w = std::exp(Complex{0.0, 0.5} * q.last());
  return make_chart_point(Stage::Fbh, q.head() / std::sqrt(mu), w);
}

ChartPoint cayley(const ChartPoint& q) {
  check_stage(q, Stage::Siegel, "cayley");
  const Complex w = q.last();
  const Complex den = w + kI;
  require(std::abs(den) > 1e-150, Err::PoleAtMinusI,
          "cayley: pole at W = -i");
  return make_chart_point(Stage::Ball, (2.0 / den) * q.head(),
                          -(w - kI) / den);
}

ChartPoint cayley_inv(const ChartPoint& x) {
  check_stage(x, Stage::Ball, "cayley_inv");
  const Complex eta = x.last();
  const Complex den = 1.0 + eta;
  require(std::abs(den) > 1e-150, Err::PoleAtMinusOne,
          "cayley_inv: pole at eta = -1");
  return make_chart_point(Stage::Siegel, (kI / den) * x.head(),
                          kI * (1.0 - eta) / den);
}

ChartPoint to_ball(double mu, const ChartPoint& p) {
  return cayley(log_chart(mu, p));
}

ChartPoint from_ball(double mu, const ChartPoint& x) {
  return log_chart_inv(mu, cayley_inv(x));
}

Json chart_point_to_json(const ChartPoint& p) {
  return Json{{"stage", to_string(p.stage)},
              {"coords", vector_to_json(p.coords)}};
}

ChartPoint chart_point_from_json(const Json& j, const std::string& path) {
  expect_only_keys(j, {"stage", "coords"}, path);
  const std::string tag =
      string_from_json(member(j, "stage", path), path + ".stage");
  ChartPoint p;
  if (tag == "fbh") p.stage = Stage::Fbh;
  else if (tag == "siegel") p.stage = Stage::Siegel;
  else if (tag == "ball") p.stage = Stage::Ball;
  else fail(Err::Schema, path + ".stage: unknown stage \"" + tag + "\"");
  p.coords = vector_from_json(member(j, "coords", path), path + ".coords");
  require(p.coords.size() >= 2, Err::Schema,
          path + ".coords: need at least 2 coordinates");
  return p;
}

}  // namespace fbh
