#pragma once

// Shared fixtures for the test binaries: gap measures, deterministic random
// group elements (indefinite-unitary matrices, ball automorphisms, Q-fixing
// ball automorphisms via the Cayley-conjugated Siegel stabilizer), fixture
// map builders, and a popen harness for driving the CLI binary.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fbh/aut.hpp"
#include "fbh/ballaut.hpp"
#include "fbh/charts.hpp"
#include "fbh/domain.hpp"
#include "fbh/maps.hpp"
#include "fbh/normalize.hpp"
#include "fbh/oracle.hpp"
#include "fbh/random.hpp"

namespace fbhtest {

using namespace fbh;

inline double vec_gap(const CVector& a, const CVector& b) {
  if (a.size() != b.size()) return 1e300;
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

inline double mat_gap(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return 1e300;
  return max_abs(a - b);
}

inline double point_gap(const DomainPoint& a, const DomainPoint& b) {
  return std::max(vec_gap(a.z, b.z), vec_gap(a.w, b.w));
}

inline double aut_gap(const FbhAut& a, const FbhAut& b) {
  return std::max({mat_gap(a.U(), b.U()), mat_gap(a.W(), b.W()),
                   vec_gap(a.v(), b.v())});
}

// Hyperbolic rotation in the (i, j) coordinate plane: preserves
// |x_i|^2 - |x_j|^2, hence any signature form with i on the positive and j
// on the negative side.
inline CMatrix hyperbolic_pair(int dim, int i, int j, double t) {
  CMatrix g = CMatrix::Identity(dim, dim);
  g(i, i) = std::cosh(t);
  g(j, j) = std::cosh(t);
  g(i, j) = std::sinh(t);
  g(j, i) = std::sinh(t);
  return g;
}

// Random element of U(p, q): block-diagonal compact part times a few
// hyperbolic plane rotations mixing the positive and negative blocks.
inline CMatrix random_h_unitary(const HermitianSignature& sig, uint64_t seed) {
  Rng rng(seed);
  const int dim = sig.dim();
  CMatrix m = CMatrix::Zero(dim, dim);
  if (sig.p > 0) m.topLeftCorner(sig.p, sig.p) = rng.unitary(sig.p);
  if (sig.q > 0) m.bottomRightCorner(sig.q, sig.q) = rng.unitary(sig.q);
  if (sig.p > 0 && sig.q > 0) {
    for (int s = 0; s < 3; ++s) {
      const int i = static_cast<int>(rng.uniform(0.0, 1.0) * sig.p) % sig.p;
      const int j =
          sig.p + static_cast<int>(rng.uniform(0.0, 1.0) * sig.q) % sig.q;
      m = m * hyperbolic_pair(dim, i, j, rng.uniform(-1.0, 1.0));
    }
  }
  return m;
}

// --- Projective matrices on Siegel lifts [1; z; W] (z in C^{d-1}) ---------
//
// The homogeneous form of the transfer Cayley map and the standard
// generators of the Siegel stabilizer of the boundary point O = (0, 0).
// Conjugating by the Cayley matrix turns them into ball automorphisms
// fixing Q = (0, ..., 0, 1), which is exactly the family the canonical-form
// machinery decomposes.

inline CMatrix cayley_lift(int d) {
  CMatrix c = CMatrix::Zero(d + 1, d + 1);
  c(0, 0) = kI;
  c(0, d) = 1.0;
  for (int i = 1; i < d; ++i) c(i, i) = 2.0;
  c(d, 0) = kI;
  c(d, d) = -1.0;
  return c;
}

// (z, W) -> (sqrt(r) z, r W), r > 0.
inline CMatrix siegel_dilation(int d, double r) {
  CMatrix m = CMatrix::Identity(d + 1, d + 1);
  for (int i = 1; i < d; ++i) m(i, i) = std::sqrt(r);
  m(d, d) = r;
  return m;
}

inline CMatrix siegel_rotation(int d, const CMatrix& u) {
  CMatrix m = CMatrix::Identity(d + 1, d + 1);
  m.block(1, 1, d - 1, d - 1) = u;
  return m;
}

// Heisenberg translation (z, W) -> (z + b, W + 2i<z,b> + i||b||^2); fixes
// the point at infinity of the Siegel boundary.
inline CMatrix heisenberg(int d, const CVector& b) {
  CMatrix m = CMatrix::Identity(d + 1, d + 1);
  m.block(1, 0, d - 1, 1) = b;
  m.block(d, 1, 1, d - 1) = 2.0 * kI * b.adjoint();
  m(d, 0) = kI * b.squaredNorm();
  return m;
}

// Siegel inversion (z, W) -> (z/W, -1/W); swaps O and infinity.
inline CMatrix siegel_flip(int d) {
  CMatrix m = CMatrix::Zero(d + 1, d + 1);
  m(0, d) = 1.0;
  for (int i = 1; i < d; ++i) m(i, i) = 1.0;
  m(d, 0) = -1.0;
  return m;
}

// Random ball automorphism of B^d fixing Q = (0, ..., 0, 1): a word in
// dilations, rotations, and flipped Heisenberg translations (all of which
// stabilize O in the Siegel model), conjugated to the ball by the Cayley
// matrix.
inline ProjectiveAut random_qfix_aut(int d, uint64_t seed) {
  Rng rng(seed);
  const CMatrix flip = siegel_flip(d);
  CMatrix m = siegel_dilation(d, rng.uniform(0.5, 2.0));
  if (d >= 2) m = m * siegel_rotation(d, rng.unitary(d - 1));
  const CVector b = 0.7 * rng.cgaussian_vector(d - 1);
  m = m * flip * heisenberg(d, b) * flip;
  m = m * siegel_dilation(d, rng.uniform(0.5, 2.0));
  const CMatrix c = cayley_lift(d);
  return ProjectiveAut(c * m * c.inverse());
}

// Random ball automorphism with no fixed-point constraint: Moebius factors
// along the first coordinate interleaved with rotations reach the whole
// group.
inline ProjectiveAut random_ball_aut(int d, uint64_t seed) {
  Rng rng(seed);
  const Complex a1 = 0.8 * rng.uniform(0.0, 1.0) *
                     std::exp(kI * rng.uniform(0.0, 6.283185307179586));
  const Complex a2 = 0.8 * rng.uniform(0.0, 1.0) *
                     std::exp(kI * rng.uniform(0.0, 6.283185307179586));
  CMatrix rot = CMatrix::Identity(d + 1, d + 1);
  rot.block(1, 1, d, d) = rng.unitary(d);
  const CMatrix m =
      psi_alpha(a1, d).matrix() * rot * psi_alpha(a2, d).matrix();
  return ProjectiveAut(m);
}

// Aut o Canonical(k, N) o Aut fixture with ground-truth degree k.
inline MapDescriptor conjugated_canonical(int n, int big_n, int k, double mu,
                                          uint64_t seed,
                                          double v_scale = 0.5) {
  const DomainParams in{n, 1, mu};
  const DomainParams out{big_n, 1, mu};
  std::vector<MapStage> stages;
  stages.push_back(AutStage{random_aut(in, seed, v_scale)});
  if (big_n == n)
    stages.push_back(PowerStage{k});
  else
    stages.push_back(EmbedStage{k, big_n});
  stages.push_back(AutStage{random_aut(out, seed + 1, v_scale)});
  return MapDescriptor(in, out, std::move(stages));
}

inline std::shared_ptr<const MapOracle> as_oracle(MapDescriptor d) {
  return std::make_shared<DescriptorOracle>(std::move(d));
}

// --- CLI harness -----------------------------------------------------------

#ifdef FBH_CLI_PATH

struct CliResult {
  int exit_code = -1;
  std::string out;
};

inline std::string shell_quote(const std::string& s) {
  std::string r = "'";
  for (char c : s) {
    if (c == '\'')
      r += "'\\''";
    else
      r += c;
  }
  r += "'";
  return r;
}

// Runs the built binary with `args` appended, optionally feeding `stdin_data`
// on standard input and prefixing `env` assignments; captures stdout, drops
// stderr diagnostics.
inline CliResult run_cli(const std::string& args,
                         const std::string& stdin_data = "",
                         const std::string& env = "") {
  std::string cmd;
  if (!stdin_data.empty())
    cmd += "printf '%s' " + shell_quote(stdin_data) + " | ";
  if (!env.empty()) cmd += env + " ";
  cmd += std::string(FBH_CLI_PATH) + " " + args + " 2>/dev/null";
  CliResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return res;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, got);
  const int status = pclose(pipe);
  res.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return res;
}

#endif  // FBH_CLI_PATH

}  // namespace fbhtest
