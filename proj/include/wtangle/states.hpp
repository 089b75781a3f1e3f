#pragma once

// W-class states and their (n+1)-dimensional compact representation.
//
// The compact basis is {|0...0>, e_1, ..., e_n} with e_1 = |0...01>,
// e_2 = |0...010>, ..., e_n = |10...0>. Excitation slot j (0-based, holding
// e_(j+1)) therefore belongs to qubit n - 1 - j, and sits at full-space
// basis index 2^j.

#include <cmath>
#include <sstream>
#include <vector>

#include "wtangle/density_matrix.hpp"
#include "wtangle/linalg.hpp"

namespace wtangle {

inline constexpr double kStateTol = 1e-10;
inline constexpr double kPsdTol = 1e-9;

constexpr int slot_of_qubit(int n, int qubit) noexcept { return n - 1 - qubit; }
constexpr int qubit_of_slot(int n, int slot) noexcept { return n - 1 - slot; }

struct SymmetricWState {
  int n;
  complex a;

  /// Compact amplitudes (a, 1, ..., 1) / sqrt(|a|^2 + n).
  ComplexVector amplitudes() const {
    ComplexVector v = ComplexVector::Ones(n + 1);
    v(0) = a;
    return v / std::sqrt(std::norm(a) + n);
  }
};

struct AsymmetricWState {
  int n;
  std::vector<complex> k;  // k[i] multiplies e_(i+1)

  ComplexVector amplitudes() const {
    ComplexVector v = ComplexVector::Zero(n + 1);
    for (int i = 0; i < n; ++i) v(i + 1) = k[static_cast<std::size_t>(i)];
    return v;
  }
};

/// Density matrix confined to the vacuum-plus-single-excitation subspace.
///
///     | A    X_1 ... X_n |
///     | X_1* B_11 ... B_1n |
///     | ...               |
///
/// X holds the first row <0...0|rho|e_i>.
class WSubspaceState {
 public:
  /// Checked construction; enforces Hermitian B, unit trace and PSD.
  static WSubspaceState make(int n, double A, ComplexVector X, ComplexMatrix B) {
    auto s = unchecked(n, A, std::move(X), std::move(B));
    s.validate();
    return s;
  }

  /// Shape-checked only. For diagnostics on matrices that may not be states.
  static WSubspaceState unchecked(int n, double A, ComplexVector X, ComplexMatrix B) {
    if (n < 1) throw Error(ErrorCode::InvalidQubitCount, "n = " + std::to_string(n));
    if (X.size() != n || B.rows() != n || B.cols() != n)
      throw Error(ErrorCode::DimensionMismatch, "X must have n entries and B must be n x n");
    if (!std::isfinite(A) || !linalg::all_finite(X) || !linalg::all_finite(B))
      throw Error(ErrorCode::NonFinite, "state contains NaN or Inf");
    return WSubspaceState(n, A, std::move(X), std::move(B));
  }

  /// Reads (A, X, B) out of an (n+1) x (n+1) matrix.
  static WSubspaceState from_matrix(const ComplexMatrix& m) {
    linalg::require_square(m);
    const int n = static_cast<int>(m.rows()) - 1;
    if (std::abs(m(0, 0).imag()) > kStateTol)
      throw Error(ErrorCode::NotDensityLike, "vacuum population is not real");
    return make(n, m(0, 0).real(), m.row(0).tail(n).transpose(), m.bottomRightCorner(n, n));
  }

  /// Rank-one state from compact amplitudes (vacuum, e_1, ..., e_n).
  static WSubspaceState pure(const ComplexVector& amps) {
    const int n = static_cast<int>(amps.size()) - 1;
    const double norm2 = amps.squaredNorm();
    if (std::abs(norm2 - 1.0) > kStateTol) {
      std::ostringstream os;
      os << "amplitude norm^2 " << norm2;
      throw Error(ErrorCode::NormViolation, os.str());
    }
    const ComplexVector exc = amps.tail(n);
    ComplexVector X(n);
    for (int i = 0; i < n; ++i) X(i) = amps(0) * std::conj(exc(i));
    return make(n, std::norm(amps(0)), std::move(X), exc * exc.adjoint());
  }

  void validate() const {
    const double dev = linalg::hermiticity_deviation(B_);
    if (dev > kStateTol) {
      std::ostringstream os;
      os << "B not Hermitian: deviation " << dev;
      throw Error(ErrorCode::NotDensityLike, os.str());
    }
    const double tr = A_ + B_.diagonal().real().sum();
    if (std::abs(tr - 1.0) > kStateTol) {
      std::ostringstream os;
      os << "A + tr(B) = " << tr;
      throw Error(ErrorCode::NotDensityLike, os.str());
    }
    const double lo = min_eigenvalue();
    if (lo < -kPsdTol) {
      std::ostringstream os;
      os << "not positive semidefinite: minimum eigenvalue " << lo;
      throw Error(ErrorCode::NotPositive, os.str());
    }
  }

  int n() const noexcept { return n_; }
  double A() const noexcept { return A_; }
  const ComplexVector& X() const noexcept { return X_; }
  const ComplexMatrix& B() const noexcept { return B_; }

  /// The (n+1) x (n+1) matrix.
  ComplexMatrix assembled() const {
    ComplexMatrix m(n_ + 1, n_ + 1);
    m(0, 0) = A_;
    m.row(0).tail(n_) = X_.transpose();
    m.col(0).tail(n_) = X_.conjugate();
    m.bottomRightCorner(n_, n_) = B_;
    return m;
  }

  double min_eigenvalue() const {
    ComplexMatrix m = assembled();
    m = (0.5 * (m + m.adjoint())).eval();
    return linalg::hermitian_eigenvalues(m, 1.0).front();
  }

  double purity() const {
    const ComplexMatrix m = assembled();
    return (m * m).trace().real();
  }

  bool is_pure(double tol = kDefaultTol) const { return purity() >= 1.0 - tol; }

  /// Largest |B_ij| with i != j.
  double max_coherence() const {
    double best = 0.0;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (i != j) best = std::max(best, std::abs(B_(i, j)));
    return best;
  }

  DensityMatrix as_density_matrix() const {
    return DensityMatrix::validated(assembled(), n_, Representation::WSubspace, kPsdTol);
  }

 private:
  WSubspaceState(int n, double A, ComplexVector X, ComplexMatrix B)
      : n_(n), A_(A), X_(std::move(X)), B_(std::move(B)) {}

  int n_;
  double A_;
  ComplexVector X_;
  ComplexMatrix B_;
};

/// Two-qubit reduction onto qubits s (first factor) and r (second factor),
/// basis {|00>, |01>, |10>, |11>}.
struct BipartiteReduction {
  int s;
  int r;
  ComplexMatrix rho;
};

namespace states {

inline void require_qubit_count(int n) {
  if (n < 3) throw Error(ErrorCode::InvalidQubitCount, "W-class states need n >= 3, got " +
                                                           std::to_string(n));
}

inline WSubspaceState build_symmetric(int n, complex a) {
  require_qubit_count(n);
  return WSubspaceState::pure(SymmetricWState{n, a}.amplitudes());
}

inline WSubspaceState build_asymmetric(int n, const std::vector<complex>& k) {
  require_qubit_count(n);
  if (k.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::LengthMismatch, "expected " + std::to_string(n) +
                                               " coefficients, got " + std::to_string(k.size()));
  }
  double norm2 = 0.0;
  for (auto z : k) norm2 += std::norm(z);
  if (std::abs(norm2 - 1.0) > kStateTol) {
    std::ostringstream os;
    os << "sum |k_i|^2 = " << norm2;
    throw Error(ErrorCode::NormViolation, os.str());
  }
  return WSubspaceState::pure(AsymmetricWState{n, k}.amplitudes());
}

/// Embeds the compact state into the 2^n dimensional space.
inline DensityMatrix to_full(const WSubspaceState& state, int cap = kDefaultFullSpaceCap) {
  const int n = state.n();
  if (n > cap) {
    throw Error(ErrorCode::CapExceeded,
                "n = " + std::to_string(n) + " exceeds full-space cap " + std::to_string(cap));
  }
  const auto dim = static_cast<Eigen::Index>(linalg::dimension_of(n));
  const ComplexMatrix compact = state.assembled();
  std::vector<Eigen::Index> index(static_cast<std::size_t>(n + 1));
  index[0] = 0;
  for (int j = 0; j < n; ++j) index[static_cast<std::size_t>(j + 1)] = Eigen::Index{1} << j;

  ComplexMatrix full = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) full(index[i], index[j]) = compact(i, j);
  return DensityMatrix::full(std::move(full), n, kPsdTol);
}

/// Pair reduction computed directly from (A, X, B).
inline BipartiteReduction reduce_pair(const WSubspaceState& state, int s, int r) {
  const int n = state.n();
  if (s == r || s < 0 || r < 0 || s >= n || r >= n) {
    throw Error(ErrorCode::IndexError, "invalid qubit pair (" + std::to_string(s) + ", " +
                                           std::to_string(r) + ") for n = " + std::to_string(n));
  }
  const int js = slot_of_qubit(n, s);
  const int jr = slot_of_qubit(n, r);
  const auto& B = state.B();
  const auto& X = state.X();

  double vacuum = state.A();
  for (int m = 0; m < n; ++m)
    if (m != js && m != jr) vacuum += B(m, m).real();

  ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
  rho(0, 0) = vacuum;
  rho(0, 1) = X(jr);
  rho(0, 2) = X(js);
  rho(1, 0) = std::conj(X(jr));
  rho(2, 0) = std::conj(X(js));
  rho(1, 1) = B(jr, jr).real();
  rho(1, 2) = B(jr, js);
  rho(2, 1) = B(js, jr);
  rho(2, 2) = B(js, js).real();
  return {s, r, std::move(rho)};
}

/// Drops every off-diagonal B entry. Throws NotPositive when the result is
/// not a density matrix.
inline WSubspaceState zero_coherences(const WSubspaceState& state) {
  ComplexMatrix B = state.B().diagonal().asDiagonal();
  return WSubspaceState::make(state.n(), state.A(), state.X(), std::move(B));
}

/// Single-qubit reduction of qubit q.
inline ComplexMatrix reduce_single(const WSubspaceState& state, int q) {
  const int n = state.n();
  if (q < 0 || q >= n) throw Error(ErrorCode::IndexError, "qubit " + std::to_string(q));
  const int j = slot_of_qubit(n, q);
  const double excited = state.B()(j, j).real();
  ComplexMatrix rho(2, 2);
  rho << complex{1.0 - excited}, state.X()(j), std::conj(state.X()(j)), complex{excited};
  return rho;
}

}  // namespace states
}  // namespace wtangle
