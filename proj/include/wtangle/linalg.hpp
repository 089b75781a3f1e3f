#pragma once

// Dense complex matrix algebra over n-qubit spaces.
//
// Qubit ordering convention: qubit 0 is the leftmost tensor factor of a ket,
// so in |b0 b1 ... b(n-1)> qubit q is stored at bit (n - 1 - q) of the basis
// index. |001> is index 1 and means qubit 2 is excited.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "wtangle/error.hpp"

namespace wtangle {

using complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kDefaultTol = 1e-9;
inline constexpr int kDefaultFullSpaceCap = 12;

namespace linalg {

/// Sorted, duplicate-free set of qubit labels drawn from [0, n).
class QubitIndexSet {
 public:
  QubitIndexSet(int n, std::vector<int> members) : n_(n), members_(std::move(members)) {
    if (n_ < 1) throw Error(ErrorCode::InvalidQubitCount, "qubit count must be >= 1");
    std::sort(members_.begin(), members_.end());
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (members_[i] < 0 || members_[i] >= n_) {
        throw Error(ErrorCode::IndexError,
                    "qubit index " + std::to_string(members_[i]) + " outside [0, " +
                        std::to_string(n_) + ")");
      }
      if (i > 0 && members_[i] == members_[i - 1]) {
        throw Error(ErrorCode::IndexError, "duplicate qubit index " + std::to_string(members_[i]));
      }
    }
  }

  QubitIndexSet(int n, std::initializer_list<int> members)
      : QubitIndexSet(n, std::vector<int>(members)) {}

  int n() const noexcept { return n_; }
  const std::vector<int>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }

  bool contains(int q) const noexcept {
    return std::binary_search(members_.begin(), members_.end(), q);
  }

  QubitIndexSet complement() const {
    std::vector<int> rest;
    for (int q = 0; q < n_; ++q)
      if (!contains(q)) rest.push_back(q);
    return {n_, std::move(rest)};
  }

  /// Bit mask of the members in basis-index space.
  std::uint64_t mask() const noexcept {
    std::uint64_t m = 0;
    for (int q : members_) m |= std::uint64_t{1} << (n_ - 1 - q);
    return m;
  }

 private:
  int n_;
  std::vector<int> members_;
};

inline std::size_t dimension_of(int n) { return std::size_t{1} << n; }

inline bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

inline void require_valid(const ComplexMatrix& m) {
  if (m.rows() < 1 || m.cols() < 1)
    throw Error(ErrorCode::DimensionMismatch, "matrix must be at least 1x1");
  if (!all_finite(m)) throw Error(ErrorCode::NonFinite, "matrix contains NaN or Inf");
}

inline void require_square(const ComplexMatrix& m) {
  require_valid(m);
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::NonSquare, std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

/// Largest entrywise |m - m^dagger|.
inline double hermiticity_deviation(const ComplexMatrix& m) {
  double dev = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i; j < m.cols(); ++j)
      dev = std::max(dev, std::abs(m(i, j) - std::conj(m(j, i))));
  return dev;
}

inline void require_qubit_dimension(const ComplexMatrix& rho, int n) {
  if (n < 1 || n > 62) throw Error(ErrorCode::InvalidQubitCount, "n = " + std::to_string(n));
  const auto dim = static_cast<Eigen::Index>(dimension_of(n));
  if (rho.rows() != dim || rho.cols() != dim) {
    std::ostringstream os;
    os << "expected " << dim << "x" << dim << " for n = " << n << ", got " << rho.rows() << "x"
       << rho.cols();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

namespace detail {

// Splits the index set into connected components of the nonzero pattern of m.
// A Hermitian matrix is permutation-similar to the direct sum of its
// components, so eigenvalues can be taken block by block.
inline std::vector<std::vector<Eigen::Index>> connected_blocks(const ComplexMatrix& m) {
  const Eigen::Index dim = m.rows();
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(dim));
  std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  auto find = [&](Eigen::Index x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = i + 1; j < dim; ++j)
      if (m(i, j) != complex{} || m(j, i) != complex{}) {
        const auto a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }

  std::vector<std::vector<Eigen::Index>> blocks;
  std::vector<Eigen::Index> slot(static_cast<std::size_t>(dim), -1);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto root = find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<Eigen::Index>(blocks.size());
      blocks.emplace_back();
    }
    blocks[slot[root]].push_back(i);
  }
  return blocks;
}

}  // namespace detail

/// Real spectrum of a Hermitian matrix, ascending.
///
/// Throws NonSquare, or NotHermitian when some entry deviates from its
/// conjugate transpose partner by more than tol.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double tol = kDefaultTol) {
  require_square(m);
  const double dev = hermiticity_deviation(m);
  if (dev > tol) {
    std::ostringstream os;
    os << "deviation " << dev << " exceeds tolerance " << tol;
    throw Error(ErrorCode::NotHermitian, os.str());
  }

  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(m.rows()));
  for (const auto& block : detail::connected_blocks(m)) {
    const auto k = static_cast<Eigen::Index>(block.size());
    if (k == 1) {
      values.push_back(m(block[0], block[0]).real());
      continue;
    }
    ComplexMatrix sub(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = 0; j < k; ++j) sub(i, j) = m(block[i], block[j]);
    sub = (0.5 * (sub + sub.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
      throw Error(ErrorCode::NumericalInstability, "Hermitian eigensolver did not converge");
    for (Eigen::Index i = 0; i < k; ++i) values.push_back(solver.eigenvalues()(i));
  }
  std::sort(values.begin(), values.end());
  return values;
}

inline ComplexMatrix identity(Eigen::Index dim) { return ComplexMatrix::Identity(dim, dim); }

inline ComplexMatrix pauli_y() {
  ComplexMatrix y(2, 2);
  y << complex{0, 0}, complex{0, -1}, complex{0, 1}, complex{0, 0};
  return y;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_valid(a);
  require_valid(b);
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Reduced matrix on the qubits in `keep`, in their increasing order.
inline ComplexMatrix partial_trace(const ComplexMatrix& rho, int n, const QubitIndexSet& keep) {
  require_qubit_dimension(rho, n);
  if (keep.n() != n) throw Error(ErrorCode::DimensionMismatch, "index set built for other n");

  const auto traced = keep.complement();
  auto expand = [n](const QubitIndexSet& set) {
    const std::size_t count = dimension_of(static_cast<int>(set.size()));
    std::vector<std::uint64_t> table(count, 0);
    const auto& qs = set.members();
    for (std::size_t local = 0; local < count; ++local) {
      std::uint64_t full = 0;
      for (std::size_t b = 0; b < qs.size(); ++b) {
        const bool bit = (local >> (qs.size() - 1 - b)) & 1U;
        if (bit) full |= std::uint64_t{1} << (n - 1 - qs[b]);
      }
      table[local] = full;
    }
    return table;
  };
  const auto kept_bits = expand(keep);
  const auto traced_bits = expand(traced);

  const auto k = static_cast<Eigen::Index>(kept_bits.size());
  ComplexMatrix out = ComplexMatrix::Zero(k, k);
  for (Eigen::Index a = 0; a < k; ++a)
    for (Eigen::Index b = 0; b < k; ++b) {
      complex acc{};
      for (auto t : traced_bits)
        acc += rho(static_cast<Eigen::Index>(kept_bits[a] | t),
                   static_cast<Eigen::Index>(kept_bits[b] | t));
      out(a, b) = acc;
    }
  return out;
}

/// Transposes the tensor factors listed in `transpose_set`. A pure index
/// permutation, so applying it twice reproduces the input bit for bit.
inline ComplexMatrix partial_transpose(const ComplexMatrix& rho, int n,
                                       const QubitIndexSet& transpose_set) {
  require_qubit_dimension(rho, n);
  if (transpose_set.n() != n)
    throw Error(ErrorCode::DimensionMismatch, "index set built for other n");
  const std::uint64_t mask = transpose_set.mask();
  const auto dim = rho.rows();
  ComplexMatrix out(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) {
      const auto ui = static_cast<std::uint64_t>(i), uj = static_cast<std::uint64_t>(j);
      const auto si = (ui & ~mask) | (uj & mask);
      const auto sj = (uj & ~mask) | (ui & mask);
      out(i, j) = rho(static_cast<Eigen::Index>(si), static_cast<Eigen::Index>(sj));
    }
  return out;
}

/// Square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy), descending.
///
/// The values are computed as the singular values of Psi^T (sy x sy) Psi with
/// rho = Psi Psi^dagger, which avoids taking square roots of eigenvalues that
/// are rounding noise around zero. The eigenvalues of the non-Hermitian
/// product R are still evaluated and must be real and nonnegative within tol.
inline std::array<double, 4> concurrence_spectrum(const ComplexMatrix& rho,
                                                  double tol = kDefaultTol) {
  require_square(rho);
  if (rho.rows() != 4) throw Error(ErrorCode::NotDensityLike, "expected a 4x4 matrix");
  const double dev = hermiticity_deviation(rho);
  if (dev > tol) {
    std::ostringstream os;
    os << "hermiticity deviation " << dev;
    throw Error(ErrorCode::NotDensityLike, os.str());
  }
  const complex tr = rho.trace();
  if (std::abs(tr - complex{1.0, 0.0}) > tol) {
    std::ostringstream os;
    os << "trace " << tr.real() << (tr.imag() < 0 ? "-" : "+") << std::abs(tr.imag()) << "i";
    throw Error(ErrorCode::NotDensityLike, os.str());
  }

  const ComplexMatrix yy = kron(pauli_y(), pauli_y());

  const ComplexMatrix r = rho * yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<ComplexMatrix> r_solver(r, false);
  if (r_solver.info() != Eigen::Success)
    throw Error(ErrorCode::NumericalInstability, "eigensolver failed on spin-flip product");
  for (Eigen::Index i = 0; i < 4; ++i) {
    const complex ev = r_solver.eigenvalues()(i);
    if (std::abs(ev.imag()) > tol || ev.real() < -tol) {
      std::ostringstream os;
      os << "spin-flip product eigenvalue " << ev.real() << (ev.imag() < 0 ? "-" : "+")
         << std::abs(ev.imag()) << "i";
      throw Error(ErrorCode::NumericalInstability, os.str());
    }
  }

  const ComplexMatrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::NumericalInstability, "Hermitian eigensolver did not converge");
  const double cutoff = 64.0 * std::numeric_limits<double>::epsilon();
  ComplexMatrix psi = solver.eigenvectors();
  for (Eigen::Index i = 0; i < 4; ++i) {
    const double p = solver.eigenvalues()(i);
    if (p < -tol) {
      std::ostringstream os;
      os << "negative eigenvalue " << p;
      throw Error(ErrorCode::NotDensityLike, os.str());
    }
    psi.col(i) *= p > cutoff ? std::sqrt(p) : 0.0;
  }
  const ComplexMatrix tau = psi.transpose() * yy * psi;
  Eigen::JacobiSVD<ComplexMatrix> svd(tau);
  std::array<double, 4> out{};
  for (Eigen::Index i = 0; i < 4; ++i) out[i] = std::max(0.0, svd.singularValues()(i));
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

/// Max entrywise |a - b|.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::DimensionMismatch, "shape mismatch in comparison");
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace linalg
}  // namespace wtangle
