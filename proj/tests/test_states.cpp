#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "wtangle/json_io.hpp"
#include "wtangle/states.hpp"

namespace {

using namespace wtangle;
using namespace wtangle::testing;
using linalg::max_abs_diff;
using linalg::QubitIndexSet;

WSubspaceState random_w_state(std::mt19937_64& rng, int n) {
  return WSubspaceState::from_matrix(random_density(rng, n + 1));
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::ParseError;
}

TEST(BuildSymmetric, MaximallyEntangled) {
  const auto w = states::build_symmetric(3, 0.0);
  EXPECT_NEAR(w.A(), 0.0, 1e-15);
  EXPECT_NEAR(w.X().cwiseAbs().maxCoeff(), 0.0, 1e-15);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(std::abs(w.B()(i, j) - 1.0 / 3.0), 0.0, 1e-15);
}

TEST(BuildSymmetric, FirstRowConvention) {
  const auto s = states::build_symmetric(3, 1.0);
  const auto m = s.assembled();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(std::abs(m(i, j) - 0.25), 0.0, 1e-15);

  const complex a{0.3, -0.7};
  const auto c = states::build_symmetric(4, a);
  const double norm = std::norm(a) + 4.0;
  EXPECT_NEAR(c.A(), std::norm(a) / norm, 1e-15);
  EXPECT_NEAR(std::abs(c.X()(2) - a / norm), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c.B()(1, 3) - 1.0 / norm), 0.0, 1e-15);
}

TEST(BuildSymmetric, FiveQubitsIsPure) {
  const auto s = states::build_symmetric(5, 0.0);
  const auto m = s.assembled();
  EXPECT_NEAR(m.trace().real(), 1.0, 1e-15);
  const auto ev = linalg::hermitian_eigenvalues(m);
  EXPECT_NEAR(ev.back(), 1.0, 1e-14);
  for (std::size_t i = 0; i + 1 < ev.size(); ++i) EXPECT_NEAR(ev[i], 0.0, 1e-14);
}

TEST(BuildSymmetric, RejectsSmallN) {
  EXPECT_EQ(code_of([] { states::build_symmetric(2, 0.0); }), ErrorCode::InvalidQubitCount);
}

TEST(BuildAsymmetric, ProductCorner) {
  const auto s = states::build_asymmetric(3, {1.0, 0.0, 0.0});
  const auto full = states::to_full(s);
  EXPECT_LT(max_abs_diff(full.matrix(), ket_bra(basis_ket("001"))), 1e-15);
}

TEST(BuildAsymmetric, EqualCoefficientsGiveW) {
  for (int n = 3; n <= 8; ++n) {
    const double k = 1.0 / std::sqrt(double(n));
    const auto a = states::build_asymmetric(n, std::vector<complex>(n, k));
    const auto s = states::build_symmetric(n, 0.0);
    EXPECT_LT(max_abs_diff(a.assembled(), s.assembled()), 1e-12);
  }
}

TEST(BuildAsymmetric, BiseparableCorner) {
  const double h = 1.0 / std::sqrt(2.0);
  const auto s = states::build_asymmetric(3, {0.0, h, h});
  const auto full = states::to_full(s);
  const Vec expected = (basis_ket("010") + basis_ket("100")) / std::sqrt(2.0);
  EXPECT_LT(max_abs_diff(full.matrix(), ket_bra(expected)), 1e-15);
  const auto third = linalg::partial_trace(full.matrix(), 3, QubitIndexSet(3, {2}));
  EXPECT_LT(max_abs_diff(third, ket_bra(basis_ket("0"))), 1e-15);
}

TEST(BuildAsymmetric, Errors) {
  EXPECT_EQ(code_of([] { states::build_asymmetric(3, {1.0, 0.0}); }), ErrorCode::LengthMismatch);
  EXPECT_EQ(code_of([] { states::build_asymmetric(3, {1.0, 1.0, 0.0}); }), ErrorCode::NormViolation);
}

TEST(ToFull, WStateBlock) {
  const auto full = states::to_full(states::build_symmetric(3, 0.0));
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const bool inside = (i == 1 || i == 2 || i == 4) && (j == 1 || j == 2 || j == 4);
      EXPECT_NEAR(std::abs(full.matrix()(i, j) - (inside ? 1.0 / 3.0 : 0.0)), 0.0, 1e-15);
    }
}

TEST(ToFull, GeneralThreeQubitState) {
  std::mt19937_64 rng(21);
  const auto s = random_w_state(rng, 3);
  const auto full = states::to_full(s).matrix();
  const int idx[4] = {0, 1, 2, 4};
  const auto compact = s.assembled();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_EQ(full(idx[i], idx[j]), compact(i, j));
  double outside = 0.0;
  for (int i : {3, 5, 6, 7}) outside += full.row(i).cwiseAbs().sum() + full.col(i).cwiseAbs().sum();
  EXPECT_EQ(outside, 0.0);
}

TEST(ToFull, VacuumAndCap) {
  const auto vac = WSubspaceState::make(4, 1.0, ComplexVector::Zero(4), ComplexMatrix::Zero(4, 4));
  const auto full = states::to_full(vac).matrix();
  EXPECT_EQ(full(0, 0), complex(1.0));
  EXPECT_EQ(full.cwiseAbs().sum(), 1.0);
  EXPECT_EQ(code_of([] { states::to_full(states::build_symmetric(13, 0.0)); }), ErrorCode::CapExceeded);
  EXPECT_NO_THROW(states::to_full(states::build_symmetric(5, 0.0), 5));
  EXPECT_EQ(code_of([] { states::to_full(states::build_symmetric(6, 0.0), 5); }), ErrorCode::CapExceeded);
}

TEST(ReducePair, WPairMatrixForEveryPair) {
  for (int n = 3; n <= 7; ++n) {
    const auto w = states::build_symmetric(n, 0.0);
    for (int s = 0; s < n; ++s)
      for (int r = 0; r < n; ++r) {
        if (s != r) EXPECT_LT(max_abs_diff(states::reduce_pair(w, s, r).rho, w_pair_matrix(n)), 1e-15);
      }
  }
}

TEST(ReducePair, ThreeQubitEntryPlacement) {
  std::mt19937_64 rng(22);
  const auto st = random_w_state(rng, 3);
  const double alpha = st.A();
  auto x = [&](int i) { return st.X()(i - 1); };
  auto beta = [&](int i) { return st.B()(i - 1, i - 1); };
  const complex g = st.B()(0, 1), h = st.B()(0, 2), t = st.B()(1, 2);

  auto check = [](const ComplexMatrix& m, complex p00, complex p01, complex p02, complex p11,
                  complex p12, complex p22) {
    EXPECT_NEAR(std::abs(m(0, 0) - p00), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(m(0, 1) - p01), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(m(0, 2) - p02), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(m(1, 1) - p11), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(m(1, 2) - p12), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(m(2, 2) - p22), 0.0, 1e-15);
    EXPECT_EQ(m.row(3).cwiseAbs().sum() + m.col(3).cwiseAbs().sum(), 0.0);
  };
  // qubits A, B, C = 0, 1, 2
  check(states::reduce_pair(st, 0, 1).rho, alpha + beta(1), x(2), x(3), beta(2), t, beta(3));
  check(states::reduce_pair(st, 0, 2).rho, alpha + beta(2), x(1), x(3), beta(1), h, beta(3));
  check(states::reduce_pair(st, 1, 2).rho, alpha + beta(3), x(1), x(2), beta(1), g, beta(2));
}

TEST(ReducePair, VacuumAndErrors) {
  const auto vac = WSubspaceState::make(3, 1.0, ComplexVector::Zero(3), ComplexMatrix::Zero(3, 3));
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = 1.0;
  EXPECT_EQ(states::reduce_pair(vac, 0, 2).rho, expected);
  EXPECT_EQ(code_of([&] { states::reduce_pair(vac, 1, 1); }), ErrorCode::IndexError);
  EXPECT_EQ(code_of([&] { states::reduce_pair(vac, 0, 3); }), ErrorCode::IndexError);
}

TEST(ReducePair, MatchesFullSpacePartialTrace) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 3 + trial % 6;
    const auto st = random_w_state(rng, n);
    const auto full = states::to_full(st).matrix();
    for (int s = 0; s < n; ++s)
      for (int r = s + 1; r < n; ++r) {
        const auto red = states::reduce_pair(st, s, r).rho;
        EXPECT_LT(max_abs_diff(red, brute_partial_trace(full, n, {s, r})), 1e-12);
        EXPECT_NEAR(red.trace().real(), 1.0, 1e-12);
        EXPECT_EQ(red.row(3).cwiseAbs().sum() + red.col(3).cwiseAbs().sum(), 0.0);
      }
  }
}

TEST(ZeroCoherences, FixedPointAndWState) {
  std::mt19937_64 rng(24);
  const auto st = random_w_state(rng, 4);
  ComplexMatrix diag = st.B().diagonal().asDiagonal();
  // shrink X so the diagonal form stays positive
  const auto already = WSubspaceState::make(4, st.A(), st.X() * 0.01, diag);
  const auto again = states::zero_coherences(already);
  EXPECT_EQ(again.assembled(), already.assembled());

  const auto w = states::zero_coherences(states::build_symmetric(3, 0.0));
  EXPECT_NEAR(w.A(), 0.0, 1e-15);
  EXPECT_EQ(w.X().cwiseAbs().maxCoeff(), 0.0);
  EXPECT_LT(max_abs_diff(w.B(), ComplexMatrix::Identity(3, 3) / 3.0), 1e-15);
}

TEST(ZeroCoherences, UnreachableInputIsRejected) {
  // zeroing B of the a = 1 state leaves A = 1/4 < sum |X_i|^2 / B_ii = 3/4
  EXPECT_EQ(code_of([] { states::zero_coherences(states::build_symmetric(3, 1.0)); }),
            ErrorCode::NotPositive);
}

TEST(WSubspaceState, ValidationErrors) {
  EXPECT_EQ(code_of([] {
              WSubspaceState::make(3, 0.5, ComplexVector::Zero(3), ComplexMatrix::Identity(3, 3) * 0.1);
            }),
            ErrorCode::NotDensityLike);
  ComplexMatrix B = ComplexMatrix::Identity(3, 3) / 3.0;
  B(0, 1) = 0.2;
  EXPECT_EQ(code_of([&] { WSubspaceState::make(3, 0.0, ComplexVector::Zero(3), B); }),
            ErrorCode::NotDensityLike);
  B(1, 0) = 0.2;
  B(0, 2) = B(2, 0) = 0.4;  // |B_02| > sqrt(B_00 B_22) breaks positivity
  EXPECT_EQ(code_of([&] { WSubspaceState::make(3, 0.0, ComplexVector::Zero(3), B); }),
            ErrorCode::NotPositive);
}

TEST(StateJson, RoundTripPreservesEveryEntry) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 30; ++trial) {
    const auto st = random_w_state(rng, 3 + trial % 5);
    const auto text = io::to_json(st).dump();
    const auto back = io::state_from_json(io::json::parse(text));
    EXPECT_EQ(back.assembled(), st.assembled());
  }
}

TEST(StateJson, MalformedInput) {
  EXPECT_EQ(code_of([] { io::state_from_json(io::json::parse(R"({"n": 3})")); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] {
              io::state_from_json(io::json::parse(R"({"n": 3, "A": 1, "X": [[0,0]], "B": []})"));
            }),
            ErrorCode::ParseError);
}

}  // namespace
