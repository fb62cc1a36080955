#pragma once

#include <memory>

#include "fbh/maps.hpp"

namespace fbh {

// Black-box view of a holomorphic map between two of the domains: the
// normalizer and properness checker only ever evaluate points and Jacobians,
// so candidate maps may come from descriptors, closed forms, or numerical
// differentiation alike.
class MapOracle {
 public:
  virtual ~MapOracle() = default;
  virtual const DomainParams& in_params() const = 0;
  virtual const DomainParams& out_params() const = 0;
  virtual DomainPoint evaluate(const DomainPoint& p) const = 0;
  virtual CMatrix jacobian(const DomainPoint& p) const = 0;
  // False when jacobian() is approximate (finite differences); consumers
  // should widen their gates accordingly.
  virtual bool analytic_jacobian() const { return true; }
};

class DescriptorOracle final : public MapOracle {
 public:
  explicit DescriptorOracle(MapDescriptor d) : d_(std::move(d)) {}
  const DomainParams& in_params() const override { return d_.in_params(); }
  const DomainParams& out_params() const override { return d_.out_params(); }
  DomainPoint evaluate(const DomainPoint& p) const override {
    return d_.evaluate(p);
  }
  CMatrix jacobian(const DomainPoint& p) const override {
    return d_.jacobian(p);
  }
  const MapDescriptor& descriptor() const { return d_; }

 private:
  MapDescriptor d_;
};

// F(p) = value for all p; the standard example of a non-proper map.
class ConstantOracle final : public MapOracle {
 public:
  ConstantOracle(DomainParams in, DomainParams out, DomainPoint value);
  const DomainParams& in_params() const override { return in_; }
  const DomainParams& out_params() const override { return out_; }
  DomainPoint evaluate(const DomainPoint& p) const override;
  CMatrix jacobian(const DomainPoint& p) const override;

 private:
  DomainParams in_, out_;
  DomainPoint value_;
};

// Post-scales the w-block of another map by a fixed complex factor; with
// |factor| < 1 this turns a proper map into an interior contraction.
class ScaleWOracle final : public MapOracle {
 public:
  ScaleWOracle(std::shared_ptr<const MapOracle> base, Complex factor);
  const DomainParams& in_params() const override { return base_->in_params(); }
  const DomainParams& out_params() const override { return base_->out_params(); }
  DomainPoint evaluate(const DomainPoint& p) const override;
  CMatrix jacobian(const DomainPoint& p) const override;
  bool analytic_jacobian() const override { return base_->analytic_jacobian(); }

 private:
  std::shared_ptr<const MapOracle> base_;
  Complex factor_;
};

// Replaces the Jacobian of a map with a central finite-difference
// approximation (real steps suffice for holomorphic maps).
class FiniteDiffOracle final : public MapOracle {
 public:
  explicit FiniteDiffOracle(std::shared_ptr<const MapOracle> base,
                            double step = 1e-5);
  const DomainParams& in_params() const override { return base_->in_params(); }
  const DomainParams& out_params() const override { return base_->out_params(); }
  DomainPoint evaluate(const DomainPoint& p) const override {
    return base_->evaluate(p);
  }
  CMatrix jacobian(const DomainPoint& p) const override;
  bool analytic_jacobian() const override { return false; }

 private:
  std::shared_ptr<const MapOracle> base_;
  double step_;
};

// Sequential composition with chain-rule Jacobians.
class ComposedOracle final : public MapOracle {
 public:
  explicit ComposedOracle(std::vector<std::shared_ptr<const MapOracle>> parts);
  const DomainParams& in_params() const override;
  const DomainParams& out_params() const override;
  DomainPoint evaluate(const DomainPoint& p) const override;
  CMatrix jacobian(const DomainPoint& p) const override;
  bool analytic_jacobian() const override;

 private:
  std::vector<std::shared_ptr<const MapOracle>> parts_;
};

// Pre/post-composition with automorphisms (used to conjugate candidates).
class AutOracle final : public MapOracle {
 public:
  AutOracle(DomainParams par, FbhAut g);
  const DomainParams& in_params() const override { return par_; }
  const DomainParams& out_params() const override { return par_; }
  DomainPoint evaluate(const DomainPoint& p) const override;
  CMatrix jacobian(const DomainPoint& p) const override;

 private:
  DomainParams par_;
  FbhAut g_;
};

// Extended map schema for the CLI: the descriptor schema plus the diagnostic
// stage types {"type":"scale_w","factor":[re,im]} and
// {"type":"constant","point":{...}} (constant must be the final stage).
// map_from_json keeps rejecting these, so descriptors stay exact-invertible.
std::shared_ptr<const MapOracle> oracle_from_json(const Json& j,
                                                  const std::string& path = "map");

}  // namespace fbh
