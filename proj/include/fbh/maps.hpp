#pragma once

#include <variant>
#include <vector>

#include "fbh/aut.hpp"

namespace fbh {

// Building blocks for proper holomorphic maps between the domains:
//
//   aut    g in Aut(D_{n,m}(mu))                    (z,w) |-> g(z,w)
//   power  k >= 1, m = 1                            (z,w) |-> (sqrt(k) z, w^k)
//   embed  k >= 1, N >= n, m = 1        (z,w) |-> (sqrt(k) z, 0,...,0, w^k)
//
// A MapDescriptor is a finite composite of such stages (applied left to
// right) with declared source and target domains; shapes and mu must be
// consistent through the chain.
struct AutStage {
  FbhAut g;
};
struct PowerStage {
  int k = 1;
};
struct EmbedStage {
  int k = 1;
  int big_n = 1;
};
using MapStage = std::variant<AutStage, PowerStage, EmbedStage>;

class MapDescriptor {
 public:
  MapDescriptor(DomainParams in, DomainParams out, std::vector<MapStage> stages);

  // The canonical proper map (z,w) |-> (sqrt(k) z, 0, ..., 0, w^k) from
  // D_{n,1}(mu) into D_{N,1}(mu); a single power stage when N = n.
  static MapDescriptor canonical(int n, double mu, int k, int big_n);

  const DomainParams& in_params() const { return in_; }
  const DomainParams& out_params() const { return out_; }
  const std::vector<MapStage>& stages() const { return stages_; }
  // Domain the point lives in just before stage i (i = size() gives out).
  const DomainParams& params_before(size_t i) const { return chain_.at(i); }

  DomainPoint evaluate(const DomainPoint& p) const;

  // Complex Jacobian of the composite at p: (N+M) x (n+m), rows ordered
  // z then w of the target, columns z then w of the source.
  CMatrix jacobian(const DomainPoint& p) const;

 private:
  DomainParams in_, out_;
  std::vector<MapStage> stages_;
  std::vector<DomainParams> chain_;  // size stages_.size() + 1
};

// Integer power by repeated multiplication (deterministic, exact for k = 0,1).
Complex ipow(Complex w, int k);

MapDescriptor map_from_json(const Json& j, const std::string& path = "map");
Json map_to_json(const MapDescriptor& d);

}  // namespace fbh
