#pragma once

// Explicit separable decompositions of zero-coherence W-subspace states.
//
// A state whose excitation block B is diagonal is written as
//
//   rho = p_0 |0...0><0...0| + sum_i p_i |psi_i><psi_i|,
//   |psi_i> = (X_i / sqrt(B_ii) |0...0> + sqrt(B_ii) e_i) / sqrt(p_i),
//
// with p_i = B_ii + |X_i|^2 / B_ii and p_0 = A - sum_i |X_i|^2 / B_ii. Each
// |psi_i> only superposes |0> and |1> on a single qubit, so it is a product
// state.

#include <cmath>
#include <optional>
#include <sstream>
#include <vector>

#include "wtangle/linalg.hpp"
#include "wtangle/states.hpp"

namespace wtangle {

struct ProductVector {
  enum class Kind { Vacuum, TwoTerm };

  int n = 0;
  Kind kind = Kind::Vacuum;
  int slot = -1;  // excitation slot (e_(slot+1)); unused for Vacuum
  complex vacuum_amp{1.0, 0.0};
  complex exc_amp{0.0, 0.0};

  static ProductVector vacuum(int n) { return {n, Kind::Vacuum, -1, {1.0, 0.0}, {0.0, 0.0}}; }

  static ProductVector two_term(int n, int slot, complex vacuum_amp, complex exc_amp) {
    const double norm2 = std::norm(vacuum_amp) + std::norm(exc_amp);
    if (std::abs(norm2 - 1.0) > 1e-12) {
      std::ostringstream os;
      os << "product vector norm^2 " << norm2;
      throw Error(ErrorCode::NormViolation, os.str());
    }
    return {n, Kind::TwoTerm, slot, vacuum_amp, exc_amp};
  }

  /// The qubit carrying the superposition, or -1 for the vacuum.
  int qubit() const noexcept { return kind == Kind::Vacuum ? -1 : qubit_of_slot(n, slot); }

  ComplexVector compact_amplitudes() const {
    ComplexVector v = ComplexVector::Zero(n + 1);
    v(0) = vacuum_amp;
    if (kind == Kind::TwoTerm) v(slot + 1) = exc_amp;
    return v;
  }

  ComplexVector full_amplitudes() const {
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(linalg::dimension_of(n)));
    v(0) = vacuum_amp;
    if (kind == Kind::TwoTerm) v(Eigen::Index{1} << slot) = exc_amp;
    return v;
  }
};

struct SeparabilityCertificate {
  int n = 0;
  std::vector<double> weights;
  std::vector<ProductVector> vectors;
  double reconstruction_residual = 0.0;
  double max_accepted_coherence = 0.0;
};

struct PositivityReport {
  double determinant = 0.0;
  std::vector<double> sylvester_minors;  // A B_ii - |X_i|^2 for each slot
  double slack = 0.0;                    // A - sum_i |X_i|^2 / B_ii over nondegenerate slots
  bool feasible = false;
};

namespace separability {

inline constexpr double kNegativeWeightTol = 1e-9;
inline constexpr double kWeightSumTol = 1e-10;

/// sum_k p_k |psi_k><psi_k| in the compact basis.
inline ComplexMatrix reconstruct(const SeparabilityCertificate& cert) {
  ComplexMatrix m = ComplexMatrix::Zero(cert.n + 1, cert.n + 1);
  for (std::size_t k = 0; k < cert.vectors.size(); ++k) {
    const ComplexVector v = cert.vectors[k].compact_amplitudes();
    m += cert.weights[k] * (v * v.adjoint());
  }
  return m;
}

/// Determinant and 2x2 principal minors of the arrow-shaped matrix, and the
/// feasibility test A >= sum_i |X_i|^2 / B_ii. Slots with B_ii <= tol are
/// dropped from the sum provided |X_i| <= sqrt(tol).
inline PositivityReport check_positivity(const WSubspaceState& state, double tol = kDefaultTol) {
  const int n = state.n();
  const double A = state.A();
  PositivityReport rep;
  bool ok = A >= -tol;

  double prod = 1.0;
  for (int i = 0; i < n; ++i) prod *= state.B()(i, i).real();
  double det = A * prod;
  for (int i = 0; i < n; ++i) {
    double others = 1.0;
    for (int j = 0; j < n; ++j)
      if (j != i) others *= state.B()(j, j).real();
    det -= std::norm(state.X()(i)) * others;
  }
  rep.determinant = det;

  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double b = state.B()(i, i).real();
    const double x2 = std::norm(state.X()(i));
    rep.sylvester_minors.push_back(A * b - x2);
    if (b < -tol) {
      ok = false;
    } else if (b > tol) {
      acc += x2 / b;
    } else if (std::sqrt(x2) > std::sqrt(tol)) {
      ok = false;
    }
  }
  rep.slack = A - acc;
  rep.feasible = ok && rep.slack >= -tol;
  return rep;
}

/// Builds the ensemble for a state whose off-diagonal B entries are all
/// within coherence_tol of zero.
inline SeparabilityCertificate certify(const WSubspaceState& state,
                                       double coherence_tol = kDefaultTol) {
  state.validate();
  const int n = state.n();

  double worst = 0.0;
  int ws = -1, wr = -1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double mag = std::abs(state.B()(i, j));
      if (mag > worst) {
        worst = mag;
        ws = i;
        wr = j;
      }
    }
  if (worst > coherence_tol) {
    std::ostringstream os;
    os.precision(17);
    os << "coherence between qubits " << qubit_of_slot(n, ws) << " and " << qubit_of_slot(n, wr)
       << " has magnitude " << worst;
    throw Error(ErrorCode::CoherencesNotZero, os.str());
  }

  SeparabilityCertificate cert;
  cert.n = n;
  cert.max_accepted_coherence = worst;

  std::vector<double> weights;
  std::vector<ProductVector> vectors;
  double removed = 0.0;  // sum of |X_i|^2 / B_ii moved out of the vacuum weight
  for (int i = 0; i < n; ++i) {
    const double b = state.B()(i, i).real();
    const complex x = state.X()(i);
    const double x2 = std::norm(x);
    bool keep_term = b > coherence_tol;
    if (!keep_term) {
      if (std::sqrt(x2) > std::sqrt(coherence_tol)) {
        std::ostringstream os;
        os << "slot " << i + 1 << " (qubit " << qubit_of_slot(n, i) << "): population " << b
           << " but vacuum coherence " << std::sqrt(x2);
        throw Error(ErrorCode::SylvesterViolation, os.str());
      }
      // tiny population: keep the exact term while it stays consistent with
      // the 2x2 minor, otherwise read |X_i|^2 / B_ii as 0
      keep_term = b > 0.0 && x2 / b <= state.A() + coherence_tol;
    }
    if (keep_term) {
      const double term = x2 / b;
      const double p = b + term;
      removed += term;
      const double sb = std::sqrt(b);
      const double sp = std::sqrt(p);
      weights.push_back(p);
      vectors.push_back(ProductVector::two_term(n, i, x / (sb * sp), complex{sb / sp, 0.0}));
    } else if (b > 0.0) {
      weights.push_back(b);
      vectors.push_back(ProductVector::two_term(n, i, complex{}, complex{1.0, 0.0}));
    }
  }

  const double p0 = state.A() - removed;
  if (p0 < -kNegativeWeightTol) {
    std::ostringstream os;
    os << "vacuum weight " << p0 << " is negative: A < sum |X_i|^2 / B_ii";
    throw Error(ErrorCode::NegativeWeight, os.str());
  }

  // vacuum first, then excitations in slot order
  if (p0 > 0.0) {
    cert.weights.push_back(p0);
    cert.vectors.push_back(ProductVector::vacuum(n));
  }
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] <= 0.0) continue;
    cert.weights.push_back(weights[k]);
    cert.vectors.push_back(vectors[k]);
  }

  double total = 0.0;
  for (double w : cert.weights) total += w;
  if (std::abs(total - 1.0) > kWeightSumTol) {
    std::ostringstream os;
    os << "weights sum to " << total;
    throw Error(ErrorCode::NumericalInstability, os.str());
  }
  cert.reconstruction_residual = linalg::max_abs_diff(reconstruct(cert), state.assembled());
  return cert;
}

}  // namespace separability
}  // namespace wtangle
