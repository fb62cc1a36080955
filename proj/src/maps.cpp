#include "fbh/maps.hpp"

#include <cmath>

namespace fbh {

namespace {
DomainParams stage_output(const DomainParams& cur, const MapStage& st,
                          size_t idx) {
  const std::string at = "stages[" + std::to_string(idx) + "]";
  if (const auto* a = std::get_if<AutStage>(&st)) {
    require(a->g.n() == cur.n && a->g.m() == cur.m, Err::DimensionMismatch,
            at + ": automorphism shape (" + std::to_string(a->g.n()) + "," +
                std::to_string(a->g.m()) + ") does not match incoming domain (" +
                std::to_string(cur.n) + "," + std::to_string(cur.m) + ")");
    return cur;
  }
  if (const auto* p = std::get_if<PowerStage>(&st)) {
    require(p->k >= 1, Err::Schema, at + ": power exponent must be >= 1");
    require(cur.m == 1, Err::DimensionMismatch,
            at + ": power stage requires m = 1, incoming m = " +
                std::to_string(cur.m));
    return cur;
  }
  const auto& e = std::get<EmbedStage>(st);
  require(e.k >= 1, Err::Schema, at + ": embed exponent must be >= 1");
  require(cur.m == 1, Err::DimensionMismatch,
          at + ": embed stage requires m = 1, incoming m = " +
              std::to_string(cur.m));
  require(e.big_n >= cur.n, Err::DimensionMismatch,
          at + ": embed target dimension " + std::to_string(e.big_n) +
              " is below incoming z-dimension " + std::to_string(cur.n));
  DomainParams next = cur;
  next.n = e.big_n;
  return next;
}
}  // namespace

MapDescriptor::MapDescriptor(DomainParams in, DomainParams out,
                             std::vector<MapStage> stages)
    : in_(in), out_(out), stages_(std::move(stages)) {
  in_.validate();
  out_.validate();
  chain_.reserve(stages_.size() + 1);
  chain_.push_back(in_);
  for (size_t i = 0; i < stages_.size(); ++i)
    chain_.push_back(stage_output(chain_.back(), stages_[i], i));
  const DomainParams& got = chain_.back();
  require(got.same_shape(out_), Err::DimensionMismatch,
          "declared target domain (" + std::to_string(out_.n) + "," +
              std::to_string(out_.m) + ", mu=" + std::to_string(out_.mu) +
              ") does not match the chain result (" + std::to_string(got.n) +
              "," + std::to_string(got.m) + ", mu=" + std::to_string(got.mu) +
              ")");
}

MapDescriptor MapDescriptor::canonical(int n, double mu, int k, int big_n) {
  DomainParams in{n, 1, mu};
  DomainParams out{big_n, 1, mu};
  std::vector<MapStage> stages;
  if (big_n == n)
    stages.push_back(PowerStage{k});
  else
    stages.push_back(EmbedStage{k, big_n});
  return MapDescriptor(in, out, std::move(stages));
}

Complex ipow(Complex w, int k) {
  require(k >= 0, Err::Schema, "ipow: exponent must be >= 0");
  Complex acc{1.0, 0.0};
  for (int i = 0; i < k; ++i) acc *= w;
  return acc;
}

DomainPoint MapDescriptor::evaluate(const DomainPoint& p) const {
  validate_point(in_, p, "evaluate");
  DomainPoint cur = p;
  for (size_t i = 0; i < stages_.size(); ++i) {
    const DomainParams& par = chain_[i];
    if (const auto* a = std::get_if<AutStage>(&stages_[i])) {
      cur = apply(a->g, par, cur);
    } else if (const auto* pw = std::get_if<PowerStage>(&stages_[i])) {
      cur.z *= std::sqrt(static_cast<double>(pw->k));
      cur.w(0) = ipow(cur.w(0), pw->k);
    } else {
      const auto& e = std::get<EmbedStage>(stages_[i]);
      CVector z = CVector::Zero(e.big_n);
      z.head(par.n) = std::sqrt(static_cast<double>(e.k)) * cur.z;
      cur.z = std::move(z);
      cur.w(0) = ipow(cur.w(0), e.k);
    }
  }
  return cur;
}

CMatrix MapDescriptor::jacobian(const DomainPoint& p) const {
  validate_point(in_, p, "jacobian");
  DomainPoint cur = p;
  CMatrix j = CMatrix::Identity(in_.n + in_.m, in_.n + in_.m);
  for (size_t i = 0; i < stages_.size(); ++i) {
    const DomainParams& par = chain_[i];
    const DomainParams& nxt = chain_[i + 1];
    CMatrix js;
    if (const auto* a = std::get_if<AutStage>(&stages_[i])) {
      js = aut_jacobian(a->g, par, cur);
      cur = apply(a->g, par, cur);
    } else if (const auto* pw = std::get_if<PowerStage>(&stages_[i])) {
      js = CMatrix::Zero(par.n + 1, par.n + 1);
      js.topLeftCorner(par.n, par.n) =
          std::sqrt(static_cast<double>(pw->k)) *
          CMatrix::Identity(par.n, par.n);
      js(par.n, par.n) =
          static_cast<double>(pw->k) * ipow(cur.w(0), pw->k - 1);
      cur.z *= std::sqrt(static_cast<double>(pw->k));
      cur.w(0) = ipow(cur.w(0), pw->k);
    } else {
      const auto& e = std::get<EmbedStage>(stages_[i]);
      js = CMatrix::Zero(nxt.n + 1, par.n + 1);
      js.topLeftCorner(par.n, par.n) =
          std::sqrt(static_cast<double>(e.k)) * CMatrix::Identity(par.n, par.n);
      js(nxt.n, par.n) = static_cast<double>(e.k) * ipow(cur.w(0), e.k - 1);
      CVector z = CVector::Zero(e.big_n);
      z.head(par.n) = std::sqrt(static_cast<double>(e.k)) * cur.z;
      cur.z = std::move(z);
      cur.w(0) = ipow(cur.w(0), e.k);
    }
    j = js * j;
  }
  return j;
}

MapDescriptor map_from_json(const Json& j, const std::string& path) {
  expect_only_keys(j, {"in", "out", "stages"}, path);
  DomainParams in = params_from_json(member(j, "in", path), path + ".in");
  DomainParams out = params_from_json(member(j, "out", path), path + ".out");
  const Json& stages_json = member(j, "stages", path);
  expect_array(stages_json, path + ".stages");
  std::vector<MapStage> stages;
  for (size_t i = 0; i < stages_json.size(); ++i) {
    const std::string sp = path + ".stages[" + std::to_string(i) + "]";
    const Json& sj = stages_json[i];
    const std::string type =
        string_from_json(member(sj, "type", sp), sp + ".type");
    if (type == "aut") {
      expect_only_keys(sj, {"type", "g"}, sp);
      stages.push_back(AutStage{aut_from_json(member(sj, "g", sp), sp + ".g")});
    } else if (type == "power") {
      expect_only_keys(sj, {"type", "k"}, sp);
      stages.push_back(PowerStage{int_from_json(member(sj, "k", sp), sp + ".k")});
    } else if (type == "embed") {
      expect_only_keys(sj, {"type", "k", "N"}, sp);
      stages.push_back(
          EmbedStage{int_from_json(member(sj, "k", sp), sp + ".k"),
                     int_from_json(member(sj, "N", sp), sp + ".N")});
    } else {
      fail(Err::Schema, sp + ".type: unknown stage type \"" + type +
                            "\" (expected aut, power, or embed)");
    }
  }
  return MapDescriptor(in, out, std::move(stages));
}

Json map_to_json(const MapDescriptor& d) {
  Json stages = Json::array();
  for (const auto& st : d.stages()) {
    if (const auto* a = std::get_if<AutStage>(&st))
      stages.push_back(Json{{"type", "aut"}, {"g", aut_to_json(a->g)}});
    else if (const auto* p = std::get_if<PowerStage>(&st))
      stages.push_back(Json{{"type", "power"}, {"k", p->k}});
    else
      stages.push_back(Json{{"type", "embed"},
                            {"k", std::get<EmbedStage>(st).k},
                            {"N", std::get<EmbedStage>(st).big_n}});
  }
  return Json{{"in", params_to_json(d.in_params())},
              {"out", params_to_json(d.out_params())},
              {"stages", std::move(stages)}};
}

}  // namespace fbh
