#pragma once

#include <sstream>

#include "wtangle/linalg.hpp"

namespace wtangle {

enum class Representation { Full, WSubspace };

/// A Hermitian, unit-trace, positive semidefinite matrix. Full matrices are
/// 2^n x 2^n; W-subspace matrices are (n+1) x (n+1) in the basis
/// {|0...0>, e_1, ..., e_n}.
class DensityMatrix {
 public:
  static DensityMatrix validated(ComplexMatrix m, int n, Representation kind,
                                 double tol = kDefaultTol) {
    linalg::require_square(m);
    const auto expected = kind == Representation::Full
                              ? static_cast<Eigen::Index>(linalg::dimension_of(n))
                              : static_cast<Eigen::Index>(n + 1);
    if (n < 1) throw Error(ErrorCode::InvalidQubitCount, "n = " + std::to_string(n));
    if (m.rows() != expected) {
      std::ostringstream os;
      os << "expected dimension " << expected << ", got " << m.rows();
      throw Error(ErrorCode::DimensionMismatch, os.str());
    }
    const double dev = linalg::hermiticity_deviation(m);
    if (dev > tol) {
      std::ostringstream os;
      os << "not Hermitian: deviation " << dev;
      throw Error(ErrorCode::NotDensityLike, os.str());
    }
    const complex tr = m.trace();
    if (std::abs(tr - complex{1.0, 0.0}) > tol) {
      std::ostringstream os;
      os << "trace " << tr.real() << " differs from 1";
      throw Error(ErrorCode::NotDensityLike, os.str());
    }
    const auto eig = linalg::hermitian_eigenvalues(m, tol);
    if (eig.front() < -tol) {
      std::ostringstream os;
      os << "not positive semidefinite: minimum eigenvalue " << eig.front();
      throw Error(ErrorCode::NotPositive, os.str());
    }
    return DensityMatrix(std::move(m), n, kind);
  }

  static DensityMatrix full(ComplexMatrix m, int n, double tol = kDefaultTol) {
    return validated(std::move(m), n, Representation::Full, tol);
  }

  /// |psi><psi| for a normalized 2^n amplitude vector.
  static DensityMatrix from_pure(const ComplexVector& psi, int n, double tol = kDefaultTol) {
    return full(psi * psi.adjoint(), n, tol);
  }

  const ComplexMatrix& matrix() const noexcept { return m_; }
  int n() const noexcept { return n_; }
  Representation representation() const noexcept { return kind_; }
  Eigen::Index dimension() const noexcept { return m_.rows(); }

  /// tr(rho^2)
  double purity() const { return (m_ * m_).trace().real(); }

  bool is_pure(double tol = kDefaultTol) const { return purity() >= 1.0 - tol; }

 private:
  DensityMatrix(ComplexMatrix m, int n, Representation kind)
      : m_(std::move(m)), n_(n), kind_(kind) {}

  ComplexMatrix m_;
  int n_;
  Representation kind_;
};

}  // namespace wtangle
