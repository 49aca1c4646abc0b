#include <gtest/gtest.h>

#include <random>
#include <set>

#include "qstab/heisenberg.hpp"
#include "test_util.hpp"

using namespace qstab;
using namespace qstab::testing;

namespace {

SymplecticMap map_of(const RandomSymplectic& g, std::size_t n) {
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < 2 * n; ++i) rows.push_back(g(basis_vector(2 * n, i)));
  return SymplecticMap::from_rows(g.space->modulus(), rows);
}

// every combination sum mu_k y_k with mu_k in Z_{d_k} is distinct
bool unique_expressions(Int d, std::size_t m, const QuasiBasis& q) {
  std::set<Vec> seen;
  std::vector<Int> mu(q.elements.size(), 0);
  while (true) {
    Vec v(m, 0);
    for (std::size_t k = 0; k < mu.size(); ++k) v = add(v, scale(q.elements[k], mu[k], d), d);
    if (!seen.insert(v).second) return false;
    std::size_t k = 0;
    while (k < mu.size() && ++mu[k] == q.orders[k]) mu[k++] = 0;
    if (k == mu.size()) return true;
  }
}

}  // namespace

TEST(QuasiBasis, Examples) {
  auto free = quasi_basis(Submodule::whole(5, 3));
  EXPECT_EQ(free.orders, (Vec{5, 5, 5}));

  Submodule M(6, 2, {{2, 0}, {0, 3}});
  auto q = quasi_basis(M);
  ASSERT_EQ(q.elements.size(), 1u);
  EXPECT_EQ(q.orders, (Vec{6}));
  EXPECT_EQ(Submodule(6, 2, q.elements), M);
  EXPECT_TRUE(is_quasi_basis(M, {{2, 3}}));

  EXPECT_TRUE(quasi_basis(Submodule::zero(6, 2)).elements.empty());
}

TEST(QuasiBasis, UniqueExpressionProperty) {
  std::mt19937_64 rng(12);
  for (Int d : {4, 6, 8, 12}) {
    for (int trial = 0; trial < 20; ++trial) {
      auto G = random_matrix(d, 1 + rng() % 3, 3, rng);
      Submodule M(d, 3, G.row_list());
      auto q = quasi_basis(M);
      EXPECT_TRUE(is_quasi_basis(M, q.elements));
      EXPECT_TRUE(unique_expressions(d, 3, q));
      EXPECT_EQ(span_enumeration(d, 3, q.elements).size(), span_enumeration(d, 3, G.row_list()).size());
    }
  }
  // generators of a free module that are not a quasi-basis
  EXPECT_FALSE(is_quasi_basis(Submodule::whole(4, 1), {{1}, {2}}));
}

TEST(CanonicalChain, CrtRegrouping) {
  EXPECT_EQ(canonical_chain({2, 3}), (Vec{6}));
  EXPECT_EQ(canonical_chain({4, 2, 3, 9}), (Vec{6, 36}));
  EXPECT_TRUE(canonical_chain({}).empty());
  std::mt19937_64 rng(2);
  auto divs = divisors(360);
  for (int trial = 0; trial < 100; ++trial) {
    Vec in;
    for (std::size_t i = 0; i < 1 + rng() % 5; ++i) in.push_back(divs[1 + rng() % (divs.size() - 1)]);
    Vec out = canonical_chain(in);
    EXPECT_EQ(prime_power_parts(in), prime_power_parts(out));
    for (std::size_t i = 1; i < out.size(); ++i) EXPECT_EQ(out[i] % out[i - 1], 0);
  }
}

TEST(HeisenbergStructure, FreeModuleIsPauliGroup) {
  auto S = SymplecticSpace::standard(6, 2);
  auto hs = heisenberg_structure(S, S.whole());
  EXPECT_EQ(hs.block_divisors, (Vec{6, 6}));
  EXPECT_EQ(hs.canonical_chain, (Vec{6, 6}));
  EXPECT_EQ(hs.order, BigCount(12) * 36 * 36);
  EXPECT_TRUE(verify_presentation(hs.lifts, hs.quasi_orders, hs.gram));
}

TEST(HeisenbergStructure, QubitInsideDimensionEight) {
  // <2z, 2x> / <4z, 4x> at d = 8: one S_2 block, Heis has 16 * 4 elements
  auto S = SymplecticSpace::standard(8, 1);
  auto H = [](const Pauli& p) { return p.phase() == 0 && p.a()[0] % 4 == 0 && p.b()[0] % 4 == 0; };
  auto lift = [&](const Vec& v, Int o) {
    auto g = Pauli::monomial(8, v);
    for (Int t = 0; t < 16; ++t)
      if (H(power(g.with_phase(t), o))) return g.with_phase(t);
    return g;
  };
  auto hs = heisenberg_structure(S, S.span({{2, 0}, {0, 2}}), S.span({{4, 0}, {0, 4}}), lift);
  EXPECT_EQ(hs.block_divisors, (Vec{2}));
  EXPECT_EQ(hs.order, 64);
  EXPECT_EQ(hs.gram(0, 1), 4);
  EXPECT_TRUE(verify_presentation(hs.lifts, hs.quasi_orders, hs.gram, H));
}

TEST(HeisenbergStructure, CoprimeBlocks) {
  auto S = SymplecticSpace::standard(6, 2);
  auto hs = heisenberg_structure(S, S.span({{3, 0, 0, 0}, {0, 0, 3, 0}, {0, 2, 0, 0}, {0, 0, 0, 2}}));
  EXPECT_EQ(hs.canonical_chain, (Vec{6}));
  // P_1^{(2)} x_zeta P_1^{(3)} and P_1^{(6)} have the same order
  EXPECT_EQ(hs.order, BigCount(12) * 4 * 9);
  EXPECT_TRUE(verify_presentation(hs.lifts, hs.quasi_orders, hs.gram));
}

TEST(HeisenbergStructure, CardinalityIdentity) {
  std::mt19937_64 rng(5);
  for (Int d : {4, 6, 8, 12}) {
    auto S = SymplecticSpace::standard(d, 2);
    for (int trial = 0; trial < 6; ++trial) {
      Int a = divisors(d)[rng() % divisors(d).size()];
      auto g = random_symplectic(S, rng);
      auto carrier = S.span(g(std::vector<Vec>{{d / a, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}}));
      auto radical = S.span({g(Vec{0, 0, a, 0})});
      auto hs = heisenberg_structure(S, carrier, radical, [&](const Vec& v, Int) { return Pauli::monomial(d, v); });
      BigCount quotient = carrier.cardinality() / radical.cardinality();
      EXPECT_EQ(hs.order, dbar(d) * quotient);
      BigCount prod = 1;
      for (Int r : hs.block_divisors) prod *= r;
      EXPECT_EQ(prod * prod, quotient);
    }
  }
}

TEST(LiftSymplectic, Examples) {
  auto S2 = SymplecticSpace::standard(2, 1);
  auto id = lift_symplectic(S2, SymplecticMap{2, {{1, 0}}, {{0, 1}}});
  EXPECT_EQ(id.z_images[0], Pauli::Z(2, 1, 0));
  EXPECT_EQ(id.x_images[0], Pauli::X(2, 1, 0));

  auto shear = lift_symplectic(S2, SymplecticMap{2, {{1, 1}}, {{0, 1}}});
  EXPECT_EQ(shear.z_images[0], Pauli(2, 1, {1}, {1}));
  EXPECT_EQ(shear.x_images[0], Pauli::X(2, 1, 0));
  EXPECT_EQ(order(shear.z_images[0]), 2);

  auto S3 = SymplecticSpace::standard(3, 1);
  auto rot = lift_symplectic(S3, SymplecticMap{3, {{0, 1}}, {{-1, 0}}});
  EXPECT_EQ(rot.z_images[0].tau(), (Vec{0, 1}));
  EXPECT_EQ(rot.x_images[0].tau(), (Vec{2, 0}));

  try {
    lift_symplectic(S3, SymplecticMap{3, {{1, 0}}, {{0, 2}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotSymplectic);
  }
}

TEST(LiftSymplectic, RandomMapsLiftAndCompose) {
  std::mt19937_64 rng(41);
  for (Int d : {2, 3, 4, 6, 8}) {
    for (std::size_t n : {1u, 2u, 3u}) {
      auto S = SymplecticSpace::standard(d, n);
      for (int trial = 0; trial < 8; ++trial) {
        auto psi1 = map_of(random_symplectic(S, rng), n);
        auto psi2 = map_of(random_symplectic(S, rng), n);
        auto L1 = lift_symplectic(S, psi1), L2 = lift_symplectic(S, psi2);
        auto induced = L1.compose(L2).induced();
        for (std::size_t i = 0; i < 2 * n; ++i) {
          Vec e = basis_vector(2 * n, i);
          EXPECT_EQ(induced(e), psi1(psi2(e)));
        }
        // the lift is a homomorphism fixing scalars
        auto p = random_pauli(d, n, rng), q = random_pauli(d, n, rng);
        EXPECT_EQ(L1.apply(multiply(p, q)), multiply(L1.apply(p), L1.apply(q)));
        EXPECT_EQ(L1.apply(Pauli::scalar(d, n, 1)), Pauli::scalar(d, n, 1));
      }
    }
  }
}

TEST(VerifyPresentation, Examples) {
  const Int d = 5;
  const std::size_t n = 2;
  auto S = SymplecticSpace::standard(d, n);
  std::vector<Pauli> std_gens{Pauli::Z(d, n, 0), Pauli::Z(d, n, 1), Pauli::X(d, n, 0), Pauli::X(d, n, 1)};
  EXPECT_TRUE(verify_presentation(std_gens, Vec(4, d), S.gram()));

  auto S2 = SymplecticSpace::standard(2, 1);
  EXPECT_FALSE(verify_presentation({Pauli(2, 1, {0}, {1}), Pauli::X(2, 1, 0)}, {2, 2}, S2.gram()));

  auto H = [](const Pauli& p) { return p.phase() == 0 && p.a()[0] % 4 == 0 && p.b()[0] % 4 == 0; };
  ZdMatrix g(8, 2, 2);
  g.set(0, 1, 4);
  g.set(1, 0, -4);
  EXPECT_TRUE(verify_presentation({Pauli::Z(8, 1, 0, 2), Pauli::X(8, 1, 0, 2)}, {2, 2}, g, H));
}
