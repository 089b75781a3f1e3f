#pragma once

// Entanglement quantities on two-qubit reductions and on whole W-class states.

#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wtangle/density_matrix.hpp"
#include "wtangle/linalg.hpp"
#include "wtangle/states.hpp"

namespace wtangle {

using QubitPair = std::pair<int, int>;

struct MeasureReport {
  int n = 0;
  std::map<QubitPair, double> pair_concurrence;  // keys (s, r) with s < r
  std::map<QubitPair, double> pair_negativity;
  std::optional<std::map<int, double>> one_tangle;  // pure inputs only
  std::map<int, double> pi_tangle;
  double sum_two_tangles = 0.0;
  double sum_pi_tangles = 0.0;
  double Z_two = 1.0;
  double Z_pi = 1.0;

  static QubitPair key(int s, int r) { return s < r ? QubitPair{s, r} : QubitPair{r, s}; }
  double concurrence(int s, int r) const { return pair_concurrence.at(key(s, r)); }
  double negativity(int s, int r) const { return pair_negativity.at(key(s, r)); }
};

namespace measures {

inline constexpr double kClampTol = 1e-9;

struct ZPreset {
  std::string_view name;
  double value;
};

inline constexpr ZPreset kZPresets[] = {
    {"three-qubit", 0.75},
    {"large-n-two-tangle", 0.5},
    {"large-n-pi", 0.25},
};

inline double z_preset(std::string_view name) {
  for (const auto& p : kZPresets)
    if (p.name == name) return p.value;
  throw Error(ErrorCode::InvalidConfig, "unknown Z preset '" + std::string(name) + "'");
}

inline void require_valid_z(double Z) {
  if (!(Z > 0.0) || !std::isfinite(Z)) {
    std::ostringstream os;
    os << "Z must be positive and finite, got " << Z;
    throw Error(ErrorCode::InvalidZ, os.str());
  }
}

/// Differences that land in [-1e-9, 0) are rounding noise and report as 0.
inline double clamp_difference(double x) { return (x < 0.0 && x >= -kClampTol) ? 0.0 : x; }

/// lambda1 - lambda2 - lambda3 - lambda4 before the max{0, .}.
inline double concurrence_raw(const ComplexMatrix& rho_pair, double tol = kDefaultTol) {
  const auto l = linalg::concurrence_spectrum(rho_pair, tol);
  return l[0] - l[1] - l[2] - l[3];
}

inline double concurrence(const ComplexMatrix& rho_pair, double tol = kDefaultTol) {
  return std::max(0.0, concurrence_raw(rho_pair, tol));
}

/// Twice the absolute sum of the negative eigenvalues of the partial
/// transpose over `partition`.
inline double negativity(const ComplexMatrix& rho, int n, const linalg::QubitIndexSet& partition,
                         double tol = kDefaultTol) {
  if (partition.empty() || partition.size() >= static_cast<std::size_t>(n))
    throw Error(ErrorCode::IndexError, "partition must be a nonempty proper subset");
  const auto eig = linalg::hermitian_eigenvalues(linalg::partial_transpose(rho, n, partition), tol);
  double acc = 0.0;
  for (double v : eig)
    if (v < 0.0) acc += -v;
  return 2.0 * acc;
}

inline double pair_negativity(const ComplexMatrix& rho_pair, double tol = kDefaultTol) {
  return negativity(rho_pair, 2, linalg::QubitIndexSet(2, {1}), tol);
}

// ---- whole-state quantities on full 2^n matrices -------------------------

inline ComplexMatrix pair_reduction(const DensityMatrix& rho, int s, int r) {
  const int n = rho.n();
  if (s == r || s < 0 || r < 0 || s >= n || r >= n)
    throw Error(ErrorCode::IndexError, "invalid pair");
  const ComplexMatrix red = linalg::partial_trace(rho.matrix(), n, linalg::QubitIndexSet(n, {s, r}));
  if (s < r) return red;
  // reorder so that s is the first tensor factor
  ComplexMatrix swapped(4, 4);
  const int perm[4] = {0, 2, 1, 3};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) swapped(i, j) = red(perm[i], perm[j]);
  return swapped;
}

inline void require_pure(double purity, double tol) {
  if (purity < 1.0 - tol) {
    std::ostringstream os;
    os << "state is not pure: tr(rho^2) = " << purity;
    throw Error(ErrorCode::NotPure, os.str());
  }
}

inline double det2(const ComplexMatrix& m) {
  return (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
}

/// C^2 between `pivot` and the rest: 4 det(rho_pivot).
inline double one_tangle(const DensityMatrix& psi, int pivot, double tol = kDefaultTol) {
  require_pure(psi.purity(), tol);
  const int n = psi.n();
  if (pivot < 0 || pivot >= n) throw Error(ErrorCode::IndexError, "pivot " + std::to_string(pivot));
  const auto single = linalg::partial_trace(psi.matrix(), n, linalg::QubitIndexSet(n, {pivot}));
  return std::max(0.0, 4.0 * det2(single));
}

inline double one_tangle(const WSubspaceState& psi, int pivot, double tol = kDefaultTol) {
  require_pure(psi.purity(), tol);
  return std::max(0.0, 4.0 * det2(states::reduce_single(psi, pivot)));
}

inline double three_tangle(const DensityMatrix& psi, double tol = kDefaultTol) {
  if (psi.n() != 3) throw Error(ErrorCode::WrongQubitCount, "three-tangle needs n = 3");
  const double c01 = concurrence(pair_reduction(psi, 0, 1), tol);
  const double c02 = concurrence(pair_reduction(psi, 0, 2), tol);
  return clamp_difference(one_tangle(psi, 0, tol) - c01 * c01 - c02 * c02);
}

inline double three_tangle(const WSubspaceState& psi, double tol = kDefaultTol) {
  if (psi.n() != 3) throw Error(ErrorCode::WrongQubitCount, "three-tangle needs n = 3");
  const double c01 = concurrence(states::reduce_pair(psi, 0, 1).rho, tol);
  const double c02 = concurrence(states::reduce_pair(psi, 0, 2).rho, tol);
  return clamp_difference(one_tangle(psi, 0, tol) - c01 * c01 - c02 * c02);
}

/// N between `pivot` and the rest via the full-space partial transpose.
inline double pivot_negativity(const DensityMatrix& rho, int pivot, double tol = kDefaultTol) {
  return negativity(rho.matrix(), rho.n(), linalg::QubitIndexSet(rho.n(), {pivot}), tol);
}

/// N between `pivot` and the rest from the compact representation.
///
/// Pure states use N = 2 sqrt(det rho_pivot). Mixed states are restricted to
/// the 2n-dimensional space C^2 (pivot) x span{rest vacuum, rest single
/// excitations}, which contains the support of the partial transpose.
inline double pivot_negativity(const WSubspaceState& state, int pivot, double tol = kDefaultTol) {
  const int n = state.n();
  if (pivot < 0 || pivot >= n) throw Error(ErrorCode::IndexError, "pivot " + std::to_string(pivot));
  if (state.is_pure(tol)) return 2.0 * std::sqrt(std::max(0.0, det2(states::reduce_single(state, pivot))));

  // compact index -> (pivot bit, rest index)
  const int pivot_slot = slot_of_qubit(n, pivot);
  std::vector<std::pair<int, int>> coords(static_cast<std::size_t>(n + 1));
  coords[0] = {0, 0};
  int next = 1;
  for (int j = 0; j < n; ++j)
    coords[static_cast<std::size_t>(j + 1)] = j == pivot_slot ? std::pair{1, 0} : std::pair{0, next++};

  const ComplexMatrix compact = state.assembled();
  auto at = [n](int a, int k) { return static_cast<Eigen::Index>(a * n + k); };
  ComplexMatrix pt = ComplexMatrix::Zero(2 * n, 2 * n);
  for (int c = 0; c <= n; ++c)
    for (int d = 0; d <= n; ++d) {
      const auto [a, k] = coords[static_cast<std::size_t>(c)];
      const auto [b, l] = coords[static_cast<std::size_t>(d)];
      pt(at(b, k), at(a, l)) = compact(c, d);
    }
  double acc = 0.0;
  for (double v : linalg::hermitian_eigenvalues(pt, tol))
    if (v < 0.0) acc += -v;
  return 2.0 * acc;
}

namespace detail {

template <class PairNegativity>
double pi_from(int n, int pivot, double n_pivot, PairNegativity&& pair_neg) {
  double value = n_pivot * n_pivot;
  for (int j = 0; j < n; ++j)
    if (j != pivot) {
      const double nj = pair_neg(pivot, j);
      value -= nj * nj;
    }
  return clamp_difference(value);
}

}  // namespace detail

inline double pi_tangle(const DensityMatrix& rho, int pivot, double tol = kDefaultTol) {
  const int n = rho.n();
  return detail::pi_from(n, pivot, pivot_negativity(rho, pivot, tol), [&](int s, int r) {
    return pair_negativity(pair_reduction(rho, s, r), tol);
  });
}

inline double pi_tangle(const WSubspaceState& state, int pivot, double tol = kDefaultTol) {
  return detail::pi_from(state.n(), pivot, pivot_negativity(state, pivot, tol), [&](int s, int r) {
    return pair_negativity(states::reduce_pair(state, s, r).rho, tol);
  });
}

/// 4 sum_{s<r} |B_sr|^2
inline double coherence_two_tangle_sum(const WSubspaceState& state) {
  double acc = 0.0;
  for (int i = 0; i < state.n(); ++i)
    for (int j = i + 1; j < state.n(); ++j) acc += std::norm(state.B()(i, j));
  return 4.0 * acc;
}

/// Z times the sum of squared concurrences over all unordered pairs.
///
/// Also checks the result against 4 sum |B_sr|^2: equal when every pair is on
/// the positive branch of max{0, .}, an upper bound otherwise.
inline double sum_two_tangles(const WSubspaceState& state, double Z, double tol = kDefaultTol) {
  require_valid_z(Z);
  const int n = state.n();
  double sum = 0.0;
  bool positive_branch = true;
  for (int s = 0; s < n; ++s)
    for (int r = s + 1; r < n; ++r) {
      const double raw = concurrence_raw(states::reduce_pair(state, s, r).rho, tol);
      if (raw < 0.0) positive_branch = false;
      const double c = std::max(0.0, raw);
      sum += c * c;
    }
  const double coherence = coherence_two_tangle_sum(state);
  const double slack = 1e-8 * std::max(1.0, coherence);
  if ((positive_branch && std::abs(sum - coherence) > slack) ||
      (!positive_branch && sum > coherence + slack)) {
    std::ostringstream os;
    os << "concurrence sum " << sum << " disagrees with coherence sum " << coherence;
    throw Error(ErrorCode::NumericalInstability, os.str());
  }
  return Z * sum;
}

inline double sum_two_tangles(const DensityMatrix& rho, double Z, double tol = kDefaultTol) {
  require_valid_z(Z);
  double sum = 0.0;
  for (int s = 0; s < rho.n(); ++s)
    for (int r = s + 1; r < rho.n(); ++r) {
      const double c = concurrence(pair_reduction(rho, s, r), tol);
      sum += c * c;
    }
  return Z * sum;
}

inline double sum_pi_tangles(const WSubspaceState& state, double Z, double tol = kDefaultTol) {
  require_valid_z(Z);
  const int n = state.n();
  // pair negativities are symmetric; evaluate each pair once
  std::map<QubitPair, double> pair;
  for (int s = 0; s < n; ++s)
    for (int r = s + 1; r < n; ++r)
      pair[{s, r}] = pair_negativity(states::reduce_pair(state, s, r).rho, tol);
  double sum = 0.0;
  for (int q = 0; q < n; ++q)
    sum += detail::pi_from(n, q, pivot_negativity(state, q, tol),
                           [&](int s, int r) { return pair.at(MeasureReport::key(s, r)); });
  return Z * sum;
}

inline double sum_pi_tangles(const DensityMatrix& rho, double Z, double tol = kDefaultTol) {
  require_valid_z(Z);
  double sum = 0.0;
  for (int q = 0; q < rho.n(); ++q) sum += pi_tangle(rho, q, tol);
  return Z * sum;
}

// ---- closed forms for the maximally entangled n-qubit W state ------------

inline void require_closed_form_n(int n) {
  if (n < 3) throw Error(ErrorCode::InvalidQubitCount, "closed forms need n >= 3");
}

inline double closed_form_pair_concurrence(int n) {
  require_closed_form_n(n);
  return 2.0 / n;
}

inline double closed_form_pair_negativity(int n) {
  require_closed_form_n(n);
  const double m = n - 2.0;
  return (std::sqrt(m * m + 4.0) - m) / n;
}

inline double closed_form_one_tangle(int n) {
  require_closed_form_n(n);
  return 4.0 * (n - 1.0) / (static_cast<double>(n) * n);
}

/// Z * 2(n-1)/n
inline double closed_form_sum_two_tangles(int n, double Z = 1.0) {
  require_closed_form_n(n);
  require_valid_z(Z);
  return Z * 2.0 * (n - 1.0) / n;
}

inline double closed_form_pi_tangle(int n) {
  const double pair = closed_form_pair_negativity(n);
  return closed_form_one_tangle(n) - (n - 1.0) * pair * pair;
}

/// Z * (n-1)/n * {4 - (sqrt((n-2)^2 + 4) - n + 2)^2}
inline double closed_form_sum_pi(int n, double Z = 1.0) {
  require_closed_form_n(n);
  require_valid_z(Z);
  const double m = n - 2.0;
  const double d = std::sqrt(m * m + 4.0) - m;
  return Z * (n - 1.0) / n * (4.0 - d * d);
}

/// Limit of closed_form_sum_pi as n grows.
inline double closed_form_sum_pi_limit(double Z = 1.0) {
  require_valid_z(Z);
  return 4.0 * Z;
}

/// Desk-scale stand-in for lim T(rho_n) != 0: every value in the tail of the
/// sequence (the last `tail_fraction` of entries, at least one) must stay at
/// or above `threshold`.
inline bool large_n_condition_check(const std::map<int, double>& values, double threshold,
                                    double tail_fraction = 0.25) {
  if (values.empty()) throw Error(ErrorCode::EmptySequence, "no values supplied");
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0))
    throw Error(ErrorCode::InvalidConfig, "tail fraction must lie in (0, 1]");
  const auto count = values.size();
  auto tail = static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(count)));
  tail = std::clamp<std::size_t>(tail, 1, count);
  auto it = values.begin();
  std::advance(it, static_cast<std::ptrdiff_t>(count - tail));
  for (; it != values.end(); ++it)
    if (it->second < threshold) return false;
  return true;
}

// ---- reports --------------------------------------------------------------

inline MeasureReport measure_report(const WSubspaceState& state, double Z_two, double Z_pi,
                                    double tol = kDefaultTol) {
  require_valid_z(Z_two);
  require_valid_z(Z_pi);
  const int n = state.n();
  MeasureReport rep;
  rep.n = n;
  rep.Z_two = Z_two;
  rep.Z_pi = Z_pi;
  double csum = 0.0;
  for (int s = 0; s < n; ++s)
    for (int r = s + 1; r < n; ++r) {
      const auto red = states::reduce_pair(state, s, r);
      const double c = concurrence(red.rho, tol);
      rep.pair_concurrence[{s, r}] = c;
      rep.pair_negativity[{s, r}] = pair_negativity(red.rho, tol);
      csum += c * c;
    }
  rep.sum_two_tangles = Z_two * csum;
  // cross-check against the coherence identity
  (void)sum_two_tangles(state, 1.0, tol);

  if (state.is_pure(tol)) {
    std::map<int, double> ones;
    for (int q = 0; q < n; ++q) ones[q] = one_tangle(state, q, tol);
    rep.one_tangle = std::move(ones);
  }
  std::map<int, double> pis;
  double psum = 0.0;
  for (int q = 0; q < n; ++q) {
    pis[q] = detail::pi_from(n, q, pivot_negativity(state, q, tol),
                             [&](int s, int r) { return rep.negativity(s, r); });
    psum += pis[q];
  }
  rep.pi_tangle = std::move(pis);
  rep.sum_pi_tangles = Z_pi * psum;
  return rep;
}

inline MeasureReport measure_report(const DensityMatrix& rho, double Z_two, double Z_pi,
                                    double tol = kDefaultTol) {
  require_valid_z(Z_two);
  require_valid_z(Z_pi);
  const int n = rho.n();
  MeasureReport rep;
  rep.n = n;
  rep.Z_two = Z_two;
  rep.Z_pi = Z_pi;
  double csum = 0.0;
  for (int s = 0; s < n; ++s)
    for (int r = s + 1; r < n; ++r) {
      const auto red = pair_reduction(rho, s, r);
      const double c = concurrence(red, tol);
      rep.pair_concurrence[{s, r}] = c;
      rep.pair_negativity[{s, r}] = pair_negativity(red, tol);
      csum += c * c;
    }
  rep.sum_two_tangles = Z_two * csum;
  if (rho.is_pure(tol)) {
    std::map<int, double> ones;
    for (int q = 0; q < n; ++q) ones[q] = one_tangle(rho, q, tol);
    rep.one_tangle = std::move(ones);
  }
  std::map<int, double> pis;
  double psum = 0.0;
  for (int q = 0; q < n; ++q) {
    pis[q] = detail::pi_from(n, q, pivot_negativity(rho, q, tol),
                             [&](int s, int r) { return rep.negativity(s, r); });
    psum += pis[q];
  }
  rep.pi_tangle = std::move(pis);
  rep.sum_pi_tangles = Z_pi * psum;
  return rep;
}

}  // namespace measures
}  // namespace wtangle
