#include "fbh/oracle.hpp"

#include <cmath>

namespace fbh {

ConstantOracle::ConstantOracle(DomainParams in, DomainParams out,
                               DomainPoint value)
    : in_(in), out_(out), value_(std::move(value)) {
  in_.validate();
  validate_point(out_, value_, "ConstantOracle");
}

DomainPoint ConstantOracle::evaluate(const DomainPoint& p) const {
  validate_point(in_, p, "ConstantOracle::evaluate");
  return value_;
}

CMatrix ConstantOracle::jacobian(const DomainPoint& p) const {
  validate_point(in_, p, "ConstantOracle::jacobian");
  return CMatrix::Zero(out_.n + out_.m, in_.n + in_.m);
}

ScaleWOracle::ScaleWOracle(std::shared_ptr<const MapOracle> base, Complex factor)
    : base_(std::move(base)), factor_(factor) {
  require(base_ != nullptr, Err::Internal, "ScaleWOracle: null base");
  require(std::isfinite(factor.real()) && std::isfinite(factor.imag()),
          Err::NonFinite, "ScaleWOracle: non-finite factor");
}

DomainPoint ScaleWOracle::evaluate(const DomainPoint& p) const {
  DomainPoint q = base_->evaluate(p);
  q.w *= factor_;
  return q;
}

CMatrix ScaleWOracle::jacobian(const DomainPoint& p) const {
  CMatrix j = base_->jacobian(p);
  j.bottomRows(out_params().m) *= factor_;
  return j;
}

FiniteDiffOracle::FiniteDiffOracle(std::shared_ptr<const MapOracle> base,
                                   double step)
    : base_(std::move(base)), step_(step) {
  require(base_ != nullptr, Err::Internal, "FiniteDiffOracle: null base");
  require(std::isfinite(step) && step > 0.0, Err::Schema,
          "FiniteDiffOracle: step must be finite and > 0");
}

CMatrix FiniteDiffOracle::jacobian(const DomainPoint& p) const {
  const DomainParams& in = in_params();
  const DomainParams& out = out_params();
  validate_point(in, p, "FiniteDiffOracle::jacobian");
  CMatrix j(out.n + out.m, in.n + in.m);
  auto column = [&](int col, bool is_w, int idx) {
    DomainPoint hi = p, lo = p;
    if (is_w) {
      hi.w(idx) += step_;
      lo.w(idx) -= step_;
    } else {
      hi.z(idx) += step_;
      lo.z(idx) -= step_;
    }
    const DomainPoint fhi = base_->evaluate(hi);
    const DomainPoint flo = base_->evaluate(lo);
    j.col(col).head(out.n) = (fhi.z - flo.z) / (2.0 * step_);
    j.col(col).tail(out.m) = (fhi.w - flo.w) / (2.0 * step_);
  };
  for (int i = 0; i < in.n; ++i) column(i, false, i);
  for (int i = 0; i < in.m; ++i) column(in.n + i, true, i);
  return j;
}

ComposedOracle::ComposedOracle(
    std::vector<std::shared_ptr<const MapOracle>> parts)
    : parts_(std::move(parts)) {
  require(!parts_.empty(), Err::Internal, "ComposedOracle: empty chain");
  for (size_t i = 0; i + 1 < parts_.size(); ++i)
    require(parts_[i]->out_params().same_shape(parts_[i + 1]->in_params()),
            Err::DimensionMismatch,
            "ComposedOracle: stage " + std::to_string(i) +
                " output does not match stage " + std::to_string(i + 1) +
                " input");
}

const DomainParams& ComposedOracle::in_params() const {
  return parts_.front()->in_params();
}

const DomainParams& ComposedOracle::out_params() const {
  return parts_.back()->out_params();
}

DomainPoint ComposedOracle::evaluate(const DomainPoint& p) const {
  DomainPoint cur = p;
  for (const auto& part : parts_) cur = part->evaluate(cur);
  return cur;
}

CMatrix ComposedOracle::jacobian(const DomainPoint& p) const {
  DomainPoint cur = p;
  CMatrix j;
  for (size_t i = 0; i < parts_.size(); ++i) {
    const CMatrix js = parts_[i]->jacobian(cur);
    j = (i == 0) ? js : CMatrix(js * j);
    if (i + 1 < parts_.size()) cur = parts_[i]->evaluate(cur);
  }
  return j;
}

bool ComposedOracle::analytic_jacobian() const {
  for (const auto& part : parts_)
    if (!part->analytic_jacobian()) return false;
  return true;
}

AutOracle::AutOracle(DomainParams par, FbhAut g) : par_(par), g_(std::move(g)) {
  par_.validate();
  require(g_.n() == par_.n && g_.m() == par_.m, Err::DimensionMismatch,
          "AutOracle: automorphism shape does not match domain");
}

DomainPoint AutOracle::evaluate(const DomainPoint& p) const {
  return apply(g_, par_, p);
}

CMatrix AutOracle::jacobian(const DomainPoint& p) const {
  return aut_jacobian(g_, par_, p);
}

std::shared_ptr<const MapOracle> oracle_from_json(const Json& j,
                                                  const std::string& path) {
  expect_only_keys(j, {"in", "out", "stages"}, path);
  const DomainParams in = params_from_json(member(j, "in", path), path + ".in");
  const DomainParams out =
      params_from_json(member(j, "out", path), path + ".out");
  const Json& stages_json = member(j, "stages", path);
  expect_array(stages_json, path + ".stages");

  std::vector<std::shared_ptr<const MapOracle>> parts;
  std::vector<MapStage> run;
  DomainParams run_start = in;
  DomainParams cur = in;

  auto flush_run = [&]() {
    if (run.empty()) return;
    parts.push_back(std::make_shared<DescriptorOracle>(
        MapDescriptor(run_start, cur, std::move(run))));
    run.clear();
    run_start = cur;
  };

  for (size_t i = 0; i < stages_json.size(); ++i) {
    const std::string sp = path + ".stages[" + std::to_string(i) + "]";
    const Json& sj = stages_json[i];
    const std::string type =
        string_from_json(member(sj, "type", sp), sp + ".type");
    if (type == "aut") {
      expect_only_keys(sj, {"type", "g"}, sp);
      AutStage st{aut_from_json(member(sj, "g", sp), sp + ".g")};
      require(st.g.n() == cur.n && st.g.m() == cur.m, Err::DimensionMismatch,
              sp + ": automorphism shape does not match incoming domain");
      run.push_back(std::move(st));
    } else if (type == "power") {
      expect_only_keys(sj, {"type", "k"}, sp);
      PowerStage st{int_from_json(member(sj, "k", sp), sp + ".k")};
      require(st.k >= 1, Err::Schema, sp + ".k: must be >= 1");
      require(cur.m == 1, Err::DimensionMismatch, sp + ": power requires m = 1");
      run.push_back(st);
    } else if (type == "embed") {
      expect_only_keys(sj, {"type", "k", "N"}, sp);
      EmbedStage st{int_from_json(member(sj, "k", sp), sp + ".k"),
                    int_from_json(member(sj, "N", sp), sp + ".N")};
      require(st.k >= 1, Err::Schema, sp + ".k: must be >= 1");
      require(cur.m == 1, Err::DimensionMismatch, sp + ": embed requires m = 1");
      require(st.big_n >= cur.n, Err::DimensionMismatch,
              sp + ".N: below incoming z-dimension");
      run.push_back(st);
      cur.n = st.big_n;
    } else if (type == "scale_w") {
      expect_only_keys(sj, {"type", "factor"}, sp);
      const Complex factor =
          complex_from_json(member(sj, "factor", sp), sp + ".factor");
      flush_run();
      std::shared_ptr<const MapOracle> base =
          parts.empty() ? std::shared_ptr<const MapOracle>(
                              std::make_shared<AutOracle>(
                                  cur, FbhAut::identity(cur.n, cur.m)))
                        : parts.back();
      if (!parts.empty()) parts.pop_back();
      parts.push_back(std::make_shared<ScaleWOracle>(std::move(base), factor));
    } else if (type == "constant") {
      expect_only_keys(sj, {"type", "point"}, sp);
      require(i + 1 == stages_json.size(), Err::Schema,
              sp + ": constant must be the final stage");
      DomainPoint value =
          point_from_json(member(sj, "point", sp), sp + ".point");
      flush_run();
      parts.push_back(
          std::make_shared<ConstantOracle>(cur, out, std::move(value)));
      cur = out;
    } else {
      fail(Err::Schema,
           sp + ".type: unknown stage type \"" + type +
               "\" (expected aut, power, embed, scale_w, or constant)");
    }
  }
  flush_run();
  require(cur.same_shape(out), Err::DimensionMismatch,
          path + ": declared target does not match the chain result");
  if (parts.empty())
    parts.push_back(std::make_shared<AutOracle>(
        in, FbhAut::identity(in.n, in.m)));
  if (parts.size() == 1) return parts.front();
  return std::make_shared<ComposedOracle>(std::move(parts));
}

}  // namespace fbh
