#pragma once

// Test-only oracles. Nothing here calls into the library routines it is used
// to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace wtangle::testing {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat random_hermitian(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> g;
  Mat m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = cd(g(rng), g(rng));
  return 0.5 * (m + m.adjoint());
}

inline Mat random_density(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> g;
  Mat m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = cd(g(rng), g(rng));
  Mat rho = m * m.adjoint();
  rho = 0.5 * (rho + rho.adjoint());
  return rho / rho.trace().real();
}

inline Vec random_pure(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> g;
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = cd(g(rng), g(rng));
  return v / v.norm();
}

inline Mat ket_bra(const Vec& v) { return v * v.adjoint(); }

/// Amplitude vector of a computational basis ket given as a bit string,
/// leftmost character = qubit 0.
inline Vec basis_ket(const std::string& bits) {
  Vec v = Vec::Zero(std::int64_t{1} << bits.size());
  std::int64_t idx = 0;
  for (char c : bits) idx = 2 * idx + (c == '1');
  v(idx) = 1.0;
  return v;
}

/// Partial trace by brute-force enumeration of every (i, j) pair of the full
/// space: entries contribute when the traced bits agree.
inline Mat brute_partial_trace(const Mat& rho, int n, const std::vector<int>& keep) {
  const int k = static_cast<int>(keep.size());
  Mat out = Mat::Zero(1 << k, 1 << k);
  auto bit = [n](std::int64_t idx, int q) { return (idx >> (n - 1 - q)) & 1; };
  auto local = [&](std::int64_t idx) {
    std::int64_t l = 0;
    for (int q : keep) l = 2 * l + bit(idx, q);
    return l;
  };
  const std::int64_t dim = std::int64_t{1} << n;
  for (std::int64_t i = 0; i < dim; ++i)
    for (std::int64_t j = 0; j < dim; ++j) {
      bool same = true;
      for (int q = 0; q < n && same; ++q) {
        bool kept = false;
        for (int kq : keep) kept |= kq == q;
        if (!kept && bit(i, q) != bit(j, q)) same = false;
      }
      if (same) out(local(i), local(j)) += rho(i, j);
    }
  return out;
}

/// Concurrence from the textbook recipe: square roots of the eigenvalues of
/// R = rho (sy x sy) rho* (sy x sy). Only reliable for full-rank rho.
inline double textbook_concurrence(const Mat& rho) {
  Mat yy = Mat::Zero(4, 4);
  yy(0, 3) = -1;
  yy(1, 2) = 1;
  yy(2, 1) = 1;
  yy(3, 0) = -1;
  const Mat r = rho * yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<Mat> es(r);
  std::vector<double> l;
  for (int i = 0; i < 4; ++i) l.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i).real())));
  std::sort(l.rbegin(), l.rend());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

/// Roots of the real quadratic x^2 - t x + d.
inline std::pair<double, double> quadratic_roots(double t, double d) {
  const double disc = std::sqrt(t * t - 4.0 * d);
  return {(t - disc) / 2.0, (t + disc) / 2.0};
}

/// Maximally entangled n-qubit W state as a 2^n amplitude vector.
inline Vec w_ket(int n) {
  Vec v = Vec::Zero(std::int64_t{1} << n);
  for (int q = 0; q < n; ++q) v(std::int64_t{1} << q) = 1.0 / std::sqrt(double(n));
  return v;
}

/// Pair density matrix (1/n) [[n-2,0,0,0],[0,1,1,0],[0,1,1,0],[0,0,0,0]].
inline Mat w_pair_matrix(int n) {
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = n - 2.0;
  m(1, 1) = m(1, 2) = m(2, 1) = m(2, 2) = 1.0;
  return m / double(n);
}

}  // namespace wtangle::testing
