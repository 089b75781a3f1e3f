#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "wtangle/linalg.hpp"

namespace {

using namespace wtangle;
using namespace wtangle::linalg;
using namespace wtangle::testing;

TEST(HermitianEigenvalues, Identity) {
  const auto ev = hermitian_eigenvalues(identity(2));
  ASSERT_EQ(ev.size(), 2u);
  EXPECT_NEAR(ev[0], 1.0, 1e-15);
  EXPECT_NEAR(ev[1], 1.0, 1e-15);
}

TEST(HermitianEigenvalues, PauliY) {
  const auto ev = hermitian_eigenvalues(pauli_y());
  EXPECT_NEAR(ev[0], -1.0, 1e-15);
  EXPECT_NEAR(ev[1], 1.0, 1e-15);
}

TEST(HermitianEigenvalues, WPairMatrix) {
  const auto ev = hermitian_eigenvalues(w_pair_matrix(3));
  ASSERT_EQ(ev.size(), 4u);
  EXPECT_NEAR(ev[0], 0.0, 1e-15);
  EXPECT_NEAR(ev[1], 0.0, 1e-15);
  EXPECT_NEAR(ev[2], 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(ev[3], 2.0 / 3.0, 1e-15);
}

TEST(HermitianEigenvalues, Errors) {
  try {
    hermitian_eigenvalues(ComplexMatrix::Ones(2, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonSquare);
  }
  ComplexMatrix m = identity(2);
  m(0, 1) = 0.1;
  try {
    hermitian_eigenvalues(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotHermitian);
  }
  m(0, 1) = std::nan("");
  EXPECT_THROW(hermitian_eigenvalues(m), Error);
}

TEST(HermitianEigenvalues, TraceMatchesSumOnRandomMatrices) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const int dim = 1 + trial % 16;
    const Mat m = random_hermitian(rng, dim);
    const auto ev = hermitian_eigenvalues(m);
    ASSERT_TRUE(std::is_sorted(ev.begin(), ev.end()));
    double sum = 0.0;
    for (double v : ev) sum += v;
    EXPECT_NEAR(sum, m.trace().real(), dim * kDefaultTol);
  }
}

TEST(HermitianEigenvalues, BlockSplittingMatchesDenseSolver) {
  std::mt19937_64 rng(5);
  // direct sum of random blocks, scrambled by a permutation
  Mat m = Mat::Zero(9, 9);
  m.block(0, 0, 3, 3) = random_hermitian(rng, 3);
  m.block(3, 3, 4, 4) = random_hermitian(rng, 4);
  m.block(7, 7, 2, 2) = random_hermitian(rng, 2);
  Eigen::PermutationMatrix<Eigen::Dynamic> p(9);
  p.indices() << 4, 0, 8, 2, 6, 1, 3, 7, 5;
  const Mat scrambled = p * m * p.transpose();
  const auto ev = hermitian_eigenvalues(scrambled);
  Eigen::SelfAdjointEigenSolver<Mat> dense(scrambled);
  for (int i = 0; i < 9; ++i) EXPECT_NEAR(ev[i], dense.eigenvalues()(i), 1e-12);
}

TEST(Kron, Examples) {
  EXPECT_EQ(kron(identity(2), identity(2)), identity(4));

  const auto yy = kron(pauli_y(), pauli_y());
  Mat expected = Mat::Zero(4, 4);
  expected(0, 3) = -1;
  expected(1, 2) = 1;
  expected(2, 1) = 1;
  expected(3, 0) = -1;
  EXPECT_EQ(yy, expected);

  const Mat p0 = ket_bra(basis_ket("0"));
  const Mat p1 = ket_bra(basis_ket("1"));
  Mat diag = Mat::Zero(4, 4);
  diag(1, 1) = 1;
  EXPECT_EQ(kron(p0, p1), diag);
}

TEST(PartialTrace, ProductFactorRecovery) {
  const Mat rho = ket_bra(basis_ket("01"));
  const auto red = partial_trace(rho, 2, QubitIndexSet(2, {0}));
  EXPECT_LT(max_abs_diff(red, ket_bra(basis_ket("0"))), 1e-15);
  const auto red1 = partial_trace(rho, 2, QubitIndexSet(2, {1}));
  EXPECT_LT(max_abs_diff(red1, ket_bra(basis_ket("1"))), 1e-15);
}

TEST(PartialTrace, WStatePairIsTheKnownPairMatrix) {
  const Mat rho = ket_bra(w_ket(3));
  const auto red = partial_trace(rho, 3, QubitIndexSet(3, {1, 2}));
  EXPECT_LT(max_abs_diff(red, w_pair_matrix(3)), 1e-15);
}

TEST(PartialTrace, MatchesBruteForceOracle) {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 5; ++n)
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<int> keep;
      for (int q = 0; q < n; ++q)
        if (mask & (1 << q)) keep.push_back(q);
      const Mat rho = random_density(rng, 1 << n);
      const auto fast = partial_trace(rho, n, QubitIndexSet(n, keep));
      EXPECT_LT(max_abs_diff(fast, brute_partial_trace(rho, n, keep)), 1e-13);
      EXPECT_NEAR(fast.trace().real(), 1.0, 1e-13);
    }
}

TEST(PartialTrace, TwoStepsEqualOneStep) {
  std::mt19937_64 rng(4);
  const Mat rho = random_density(rng, 16);
  const auto one = partial_trace(rho, 4, QubitIndexSet(4, {1, 3}));
  const auto step = partial_trace(rho, 4, QubitIndexSet(4, {1, 2, 3}));
  const auto two = partial_trace(step, 3, QubitIndexSet(3, {0, 2}));
  EXPECT_LT(max_abs_diff(one, two), 1e-14);
}

TEST(PartialTrace, DimensionMismatch) {
  try {
    partial_trace(identity(8), 2, QubitIndexSet(2, {0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(QubitIndexSet, RejectsBadMembers) {
  EXPECT_THROW(QubitIndexSet(3, {3}), Error);
  EXPECT_THROW(QubitIndexSet(3, {1, 1}), Error);
  const QubitIndexSet s(4, {2, 0});
  EXPECT_EQ(s.members(), (std::vector<int>{0, 2}));
  EXPECT_EQ(s.mask(), 0b1010u);
}

TEST(PartialTranspose, ProductStateStaysPositive) {
  std::mt19937_64 rng(8);
  const Mat a = random_density(rng, 2), b = random_density(rng, 2);
  const auto pt = partial_transpose(kron(a, b), 2, QubitIndexSet(2, {1}));
  EXPECT_LT(max_abs_diff(pt, kron(a, b.transpose())), 1e-15);
  EXPECT_GE(hermitian_eigenvalues(pt).front(), -1e-15);
}

TEST(PartialTranspose, BellPairMinimumEigenvalue) {
  const Vec bell = (basis_ket("01") + basis_ket("10")) / std::sqrt(2.0);
  const auto pt = partial_transpose(ket_bra(bell), 2, QubitIndexSet(2, {1}));
  EXPECT_NEAR(hermitian_eigenvalues(pt).front(), -0.5, 1e-15);
}

TEST(PartialTranspose, WPairMinimumEigenvalue) {
  const auto pt = partial_transpose(w_pair_matrix(3), 2, QubitIndexSet(2, {1}));
  // the |00>,|11> block is [[1,1],[1,0]]/3
  const auto [lo, hi] = quadratic_roots(1.0 / 3.0, -1.0 / 9.0);
  (void)hi;
  EXPECT_NEAR(hermitian_eigenvalues(pt).front(), lo, 1e-15);
  EXPECT_NEAR(lo, (1.0 - std::sqrt(5.0)) / 6.0, 1e-15);
}

TEST(PartialTranspose, ExactInvolutionAndInvariants) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 4;
    const Mat rho = random_density(rng, 1 << n);
    const QubitIndexSet set(n, {trial % n});
    const auto pt = partial_transpose(rho, n, set);
    EXPECT_TRUE(partial_transpose(pt, n, set) == rho);
    EXPECT_LE(hermiticity_deviation(pt), 1e-15);
    EXPECT_NEAR(pt.trace().real(), 1.0, 1e-13);
  }
}

TEST(PartialTranspose, CommutesWithPartialTraceOnDisjointQubits) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat rho = random_density(rng, 16);
    // transpose qubit 1, trace out qubits 2 and 3
    const auto a = partial_trace(partial_transpose(rho, 4, QubitIndexSet(4, {1})), 4,
                                 QubitIndexSet(4, {0, 1}));
    const auto b = partial_transpose(partial_trace(rho, 4, QubitIndexSet(4, {0, 1})), 2,
                                     QubitIndexSet(2, {1}));
    EXPECT_LT(max_abs_diff(a, b), 1e-12);
  }
}

TEST(ConcurrenceSpectrum, Examples) {
  const auto mixed = concurrence_spectrum(identity(4) / 4.0);
  for (double l : mixed) EXPECT_NEAR(l, 0.25, 1e-15);

  const auto zero = concurrence_spectrum(ket_bra(basis_ket("00")));
  for (double l : zero) EXPECT_NEAR(l, 0.0, 1e-15);

  const Vec bell = (basis_ket("01") + basis_ket("10")) / std::sqrt(2.0);
  const auto b = concurrence_spectrum(ket_bra(bell));
  EXPECT_NEAR(b[0], 1.0, 1e-14);
  EXPECT_NEAR(b[1], 0.0, 1e-14);
  EXPECT_NEAR(b[2], 0.0, 1e-14);
  EXPECT_NEAR(b[3], 0.0, 1e-14);
}

TEST(ConcurrenceSpectrum, RankOneHasSingleNonzeroValue) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto l = concurrence_spectrum(ket_bra(random_pure(rng, 4)));
    EXPECT_NEAR(l[1], 0.0, kDefaultTol);
    EXPECT_NEAR(l[2], 0.0, kDefaultTol);
    EXPECT_NEAR(l[3], 0.0, kDefaultTol);
  }
}

TEST(ConcurrenceSpectrum, AgreesWithTextbookRouteOnFullRankStates) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const Mat rho = random_density(rng, 4);
    const auto l = concurrence_spectrum(rho);
    EXPECT_TRUE(std::is_sorted(l.rbegin(), l.rend()));
    EXPECT_NEAR(std::max(0.0, l[0] - l[1] - l[2] - l[3]), textbook_concurrence(rho), 1e-10);
  }
}

TEST(ConcurrenceSpectrum, RejectsNonDensityInput) {
  try {
    concurrence_spectrum(identity(4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotDensityLike);
  }
  EXPECT_THROW(concurrence_spectrum(identity(2) / 2.0), Error);
}

}  // namespace
