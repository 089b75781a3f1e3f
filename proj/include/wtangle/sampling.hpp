#pragma once

// Reproducible random W-subspace states and local unitaries.
//
// Every draw is a pure function of a 64-bit seed. Batch drivers derive the
// per-sample seed from (master seed, sample index) so results do not depend
// on evaluation order.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "wtangle/linalg.hpp"
#include "wtangle/states.hpp"

namespace wtangle {

enum class SamplerKind { PureSymmetric, PureAsymmetric, MixedGeneral, MixedZeroCoherence };

constexpr std::string_view to_string(SamplerKind kind) noexcept {
  switch (kind) {
    case SamplerKind::PureSymmetric: return "pure-symmetric";
    case SamplerKind::PureAsymmetric: return "pure-asymmetric";
    case SamplerKind::MixedGeneral: return "mixed-general";
    case SamplerKind::MixedZeroCoherence: return "mixed-zero-coherence";
  }
  return "unknown";
}

struct SamplerConfig {
  std::uint64_t seed = 0;
  int n = 3;
  SamplerKind kind = SamplerKind::MixedGeneral;
  // pure-symmetric: Re a and Im a uniform in [-a_max, a_max]
  double a_max = 2.0;
  // pure-asymmetric: complex coefficients unless false
  bool complex_k = true;
};

namespace sampling {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(mix64(master) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

inline SamplerKind parse_kind(std::string_view name) {
  for (auto k : {SamplerKind::PureSymmetric, SamplerKind::PureAsymmetric, SamplerKind::MixedGeneral,
                 SamplerKind::MixedZeroCoherence})
    if (to_string(k) == name) return k;
  throw Error(ErrorCode::InvalidConfig, "unknown sampler kind '" + std::string(name) + "'");
}

namespace detail {

inline complex gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

inline ComplexMatrix ginibre(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  ComplexMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = gaussian(rng);
  return g;
}

inline WSubspaceState mixed_general(std::mt19937_64& rng, int n) {
  const ComplexMatrix g = ginibre(rng, n + 1, n + 1);
  ComplexMatrix rho = g * g.adjoint();
  rho = (0.5 * (rho + rho.adjoint())).eval();
  rho /= rho.trace().real();
  return WSubspaceState::from_matrix(rho);
}

inline WSubspaceState mixed_zero_coherence(std::mt19937_64& rng, int n) {
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<double> p(static_cast<std::size_t>(n + 1));
  double total = 0.0;
  for (auto& w : p) total += (w = expo(rng));
  for (auto& w : p) w /= total;

  double A = p[0];
  ComplexVector X(n);
  ComplexMatrix B = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double radius = std::sqrt(unit(rng));
    const double phase = 2.0 * std::numbers::pi * unit(rng);
    const complex mu = std::polar(radius, phase);
    const double pi = p[static_cast<std::size_t>(i + 1)];
    const double vac = std::sqrt(1.0 - radius * radius);
    A += pi * vac * vac;
    X(i) = pi * vac * std::conj(mu);
    B(i, i) = pi * radius * radius;
  }
  return WSubspaceState::make(n, A, std::move(X), std::move(B));
}

}  // namespace detail

inline WSubspaceState sample_state(const SamplerConfig& cfg) {
  if (cfg.n < 3 || cfg.n > 4096)
    throw Error(ErrorCode::InvalidConfig, "n must lie in [3, 4096], got " + std::to_string(cfg.n));
  std::mt19937_64 rng(cfg.seed);
  switch (cfg.kind) {
    case SamplerKind::PureSymmetric: {
      if (!(cfg.a_max >= 0.0)) throw Error(ErrorCode::InvalidConfig, "a_max must be >= 0");
      std::uniform_real_distribution<double> u(-cfg.a_max, cfg.a_max);
      const double re = u(rng);
      const double im = u(rng);
      return states::build_symmetric(cfg.n, {re, im});
    }
    case SamplerKind::PureAsymmetric: {
      std::vector<complex> k(static_cast<std::size_t>(cfg.n));
      double norm2 = 0.0;
      for (auto& z : k) {
        z = detail::gaussian(rng);
        if (!cfg.complex_k) z = z.real();
        norm2 += std::norm(z);
      }
      for (auto& z : k) z /= std::sqrt(norm2);
      return states::build_asymmetric(cfg.n, k);
    }
    case SamplerKind::MixedGeneral: return detail::mixed_general(rng, cfg.n);
    case SamplerKind::MixedZeroCoherence: return detail::mixed_zero_coherence(rng, cfg.n);
  }
  throw Error(ErrorCode::InvalidConfig, "unhandled sampler kind");
}

/// Haar-random 2x2 unitary: QR of a complex Gaussian matrix with the phases
/// of R's diagonal moved into Q.
inline ComplexMatrix random_unitary_2x2(std::mt19937_64& rng) {
  const ComplexMatrix g = detail::ginibre(rng, 2, 2);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(2, 2);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < 2; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

/// n independent single-qubit unitaries, factor q acting on qubit q.
inline std::vector<ComplexMatrix> sample_local_unitary(std::uint64_t seed, int n,
                                                       bool force_identity = false) {
  if (n < 1) throw Error(ErrorCode::InvalidConfig, "n must be >= 1");
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(n));
  std::mt19937_64 rng(seed);
  for (int q = 0; q < n; ++q)
    out.push_back(force_identity ? linalg::identity(2) : random_unitary_2x2(rng));
  return out;
}

/// U_0 x U_1 x ... x U_(n-1)
inline ComplexMatrix tensor_all(const std::vector<ComplexMatrix>& factors) {
  ComplexMatrix u = linalg::identity(1);
  for (const auto& f : factors) u = linalg::kron(u, f);
  return u;
}

/// Scales every X_i and off-diagonal B_sr by (1 - strength).
inline WSubspaceState dephase(const WSubspaceState& state, double strength) {
  if (!(strength >= 0.0 && strength <= 1.0))
    throw Error(ErrorCode::StrengthOutOfRange, "strength must lie in [0, 1]");
  const double keep = 1.0 - strength;
  ComplexMatrix B = state.B() * keep;
  for (int i = 0; i < state.n(); ++i) B(i, i) = state.B()(i, i);
  return WSubspaceState::make(state.n(), state.A(), state.X() * keep, std::move(B));
}

}  // namespace sampling
}  // namespace wtangle
