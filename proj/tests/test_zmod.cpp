#include <gtest/gtest.h>

#include <random>
#include <set>

#include "qstab/zmod.hpp"
#include "test_util.hpp"

using namespace qstab;
using qstab::testing::all_vectors;
using qstab::testing::determinant;
using qstab::testing::random_matrix;
using qstab::testing::span_enumeration;

namespace {

void expect_valid_smith(const ZdMatrix& A, const SmithForm& s) {
  const Int d = A.modulus();
  ZdMatrix D = s.U * A * s.V;
  for (std::size_t i = 0; i < D.rows(); ++i)
    for (std::size_t j = 0; j < D.cols(); ++j) {
      if (i == j) {
        EXPECT_EQ(D(i, j), mod(s.diag[i], d));
      } else {
        EXPECT_EQ(D(i, j), 0);
      }
    }
  for (std::size_t i = 0; i + 1 < s.diag.size(); ++i) EXPECT_EQ(s.diag[i + 1] % s.diag[i], 0);
  for (Int a : s.diag) EXPECT_EQ(d % a, 0);
  EXPECT_EQ(gcd(determinant(s.U), d), 1);
  EXPECT_EQ(gcd(determinant(s.V), d), 1);
  EXPECT_EQ(s.V * s.V_inv, ZdMatrix::identity(d, A.cols()));
}

}  // namespace

TEST(SmithForm, ZeroMatrix) {
  ZdMatrix A(6, 2, 2);
  auto s = smith_normal_form(A);
  EXPECT_EQ(s.diag, (Vec{6, 6}));
  expect_valid_smith(A, s);
}

TEST(SmithForm, Identity) {
  auto A = ZdMatrix::identity(6, 2);
  EXPECT_EQ(smith_normal_form(A).diag, (Vec{1, 1}));
}

TEST(SmithForm, CyclicOfTwoGenerators) {
  auto A = ZdMatrix::from_rows(6, {{2, 0}, {0, 3}}, 2);
  auto s = smith_normal_form(A);
  EXPECT_EQ(s.diag, (Vec{1, 6}));
  expect_valid_smith(A, s);
  Submodule N(6, 2, {{2, 0}, {0, 3}});
  EXPECT_TRUE(N.contains(Vec{2, 3}));
  EXPECT_EQ(N, Submodule(6, 2, {{2, 3}}));
}

TEST(SmithForm, RandomShapesAreValid) {
  std::mt19937_64 rng(7);
  for (Int d : {2, 4, 6, 8, 9, 12, 30}) {
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
      auto A = random_matrix(d, r, c, rng);
      expect_valid_smith(A, smith_normal_form(A));
    }
  }
}

TEST(InvariantFactors, Examples) {
  EXPECT_TRUE(Submodule::zero(6, 2).invariant_factors().empty());
  EXPECT_EQ(Submodule(6, 2, {{2, 0}, {0, 3}}).invariant_factors(), (Vec{6}));
  EXPECT_EQ(Submodule(4, 2, {{2, 0}, {0, 2}}).invariant_factors(), (Vec{2, 2}));
}

TEST(InvariantFactors, CardinalityMatchesEnumeration) {
  std::mt19937_64 rng(11);
  for (Int d = 2; d <= 8; ++d) {
    for (int trial = 0; trial < 25; ++trial) {
      std::size_t m = 1 + rng() % 3, k = rng() % 4;
      auto G = random_matrix(d, k, m, rng);
      Submodule N(d, m, G.row_list());
      auto span = span_enumeration(d, m, G.row_list());
      EXPECT_EQ(N.cardinality(), BigCount(span.size()));
      // #{x : k x = 0} = prod gcd(d_r, k) pins down the chain
      auto chain = N.invariant_factors();
      for (std::size_t i = 1; i < chain.size(); ++i) EXPECT_EQ(chain[i] % chain[i - 1], 0);
      for (Int f : chain) EXPECT_GT(f, 1);
      for (Int k : divisors(d)) {
        std::size_t killed = 0;
        for (auto& v : span) killed += is_zero(scale(v, k, d));
        BigCount predicted = 1;
        for (Int f : chain) predicted *= gcd(f, k);
        EXPECT_EQ(predicted, BigCount(killed));
      }
      for (auto& v : all_vectors(d, m)) EXPECT_EQ(N.contains(v), span.count(v) == 1);
    }
  }
}

TEST(SolveLinear, Examples) {
  auto I = ZdMatrix::identity(5, 3);
  EXPECT_EQ(*solve_linear(I, Vec{1, 2, 3}), (Vec{1, 2, 3}));
  auto A = ZdMatrix::from_rows(4, {{2}}, 1);
  EXPECT_FALSE(solve_linear(A, Vec{1}).has_value());
  auto x = solve_linear(A, Vec{2});
  ASSERT_TRUE(x);
  EXPECT_EQ(A.apply(*x), (Vec{2}));
}

TEST(SolveLinear, AgreesWithExhaustiveSearch) {
  std::mt19937_64 rng(3);
  for (Int d : {4, 6, 8}) {
    for (int trial = 0; trial < 30; ++trial) {
      std::size_t r = 1 + rng() % 3, c = 1 + rng() % 3;
      auto A = random_matrix(d, r, c, rng);
      Vec b(r);
      for (auto& v : b) v = static_cast<Int>(rng() % d);
      bool exists = false;
      for (auto& x : all_vectors(d, c)) exists = exists || A.apply(x) == b;
      auto x = solve_linear(A, b);
      EXPECT_EQ(x.has_value(), exists);
      if (x) EXPECT_EQ(A.apply(*x), b);
    }
  }
}

TEST(Kernel, MatchesEnumeration) {
  std::mt19937_64 rng(5);
  for (Int d : {4, 6, 9}) {
    for (int trial = 0; trial < 20; ++trial) {
      auto A = random_matrix(d, 1 + rng() % 3, 1 + rng() % 3, rng);
      auto gens = kernel(A);
      Submodule K(d, A.cols(), gens);
      std::size_t count = 0;
      for (auto& x : all_vectors(d, A.cols())) {
        bool in = is_zero(A.apply(x));
        count += in;
        EXPECT_EQ(K.contains(x), in);
      }
      EXPECT_EQ(K.cardinality(), BigCount(count));
    }
  }
}

TEST(Submodule, IntersectionAndSum) {
  std::mt19937_64 rng(9);
  for (Int d : {4, 6, 12}) {
    for (int trial = 0; trial < 15; ++trial) {
      auto A = random_matrix(d, 2, 2, rng), B = random_matrix(d, 1 + rng() % 2, 2, rng);
      Submodule N1(d, 2, A.row_list()), N2(d, 2, B.row_list());
      auto I = intersect(N1, N2);
      auto S = sum(N1, N2);
      for (auto& v : all_vectors(d, 2)) {
        EXPECT_EQ(I.contains(v), N1.contains(v) && N2.contains(v));
      }
      EXPECT_EQ(S.cardinality() * I.cardinality(), N1.cardinality() * N2.cardinality());
    }
  }
}

TEST(ExtendLinearForm, Examples) {
  auto f = extend_linear_form(Submodule(4, 2, {{2, 0}}), Vec{2});
  EXPECT_EQ(f(Vec{2, 0}), 2);
  try {
    extend_linear_form(Submodule(4, 2, {{2, 0}}), Vec{1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InconsistentValues);
  }
  auto id = extend_linear_form(Submodule::whole(7, 3), Vec{3, 1, 4});
  EXPECT_EQ(id.coefficients, (Vec{3, 1, 4}));
}

TEST(ExtendLinearForm, RestrictsToPrescription) {
  std::mt19937_64 rng(21);
  for (Int d : {4, 6, 8}) {
    for (int trial = 0; trial < 20; ++trial) {
      auto G = random_matrix(d, 1 + rng() % 3, 3, rng);
      // values coming from an actual form are always consistent
      Vec c(3);
      for (auto& x : c) x = static_cast<Int>(rng() % d);
      Vec vals;
      for (auto& g : G.row_list()) vals.push_back(dot(c, g, d));
      auto f = extend_linear_form(Submodule(d, 3, G.row_list()), vals);
      for (std::size_t j = 0; j < vals.size(); ++j) EXPECT_EQ(f(G.row(j)), vals[j]);
    }
  }
}

TEST(CompleteFreeBasis, Examples) {
  auto b = complete_free_basis(Submodule(6, 2, {{1, 1}}), {{1, 1}});
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[0], (Vec{1, 1}));
  EXPECT_EQ(gcd(determinant(ZdMatrix::from_rows(6, b, 2)), 6), 1);

  auto e = complete_free_basis(Submodule(5, 2, {{1, 0}}), {{1, 0}});
  EXPECT_EQ(gcd(determinant(ZdMatrix::from_rows(5, e, 2)), 5), 1);

  try {
    complete_free_basis(Submodule(4, 2, {{2, 0}}), {{2, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotFree);
  }
}

TEST(Inverse, RoundTrip) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    auto A = random_matrix(12, 3, 3, rng);
    auto inv = inverse(A);
    EXPECT_EQ(inv.has_value(), gcd(determinant(A), 12) == 1);
    if (inv) EXPECT_EQ(A * *inv, ZdMatrix::identity(12, 3));
  }
}
