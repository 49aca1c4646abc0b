#pragma once

// Brute-force helpers shared by the test binaries. Nothing here calls into
// the Smith reduction, so the results can serve as independent oracles.

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "qstab/pauli.hpp"
#include "qstab/symplectic.hpp"
#include "qstab/zmod.hpp"

namespace qstab::testing {

/// Every vector of Z_d^m in lexicographic order.
inline std::vector<Vec> all_vectors(Int d, std::size_t m) {
  std::vector<Vec> out;
  Vec v(m, 0);
  while (true) {
    out.push_back(v);
    std::size_t i = m;
    while (i > 0) {
      --i;
      if (++v[i] < d) break;
      v[i] = 0;
      if (i == 0) return out;
    }
    if (m == 0) return out;
  }
}

/// Leibniz expansion, fine for n <= 6.
inline Int determinant(const ZdMatrix& A) {
  const std::size_t n = A.rows();
  const Int d = A.modulus();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Int total = 0;
  do {
    Int sign = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    Int term = sign;
    for (std::size_t i = 0; i < n; ++i) term = mod(term * A(i, perm[i]), d);
    total = mod(total + term, d);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline ZdMatrix random_matrix(Int d, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  ZdMatrix A(d, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) A.set(i, j, static_cast<Int>(rng() % static_cast<std::uint64_t>(d)));
  return A;
}

/// Closure of {0} under adding generators.
inline std::set<Vec> span_enumeration(Int d, std::size_t m, const std::vector<Vec>& gens) {
  std::set<Vec> seen{Vec(m, 0)};
  std::vector<Vec> frontier{Vec(m, 0)};
  while (!frontier.empty()) {
    Vec v = frontier.back();
    frontier.pop_back();
    for (const Vec& g : gens) {
      Vec w = add(v, g, d);
      if (seen.insert(w).second) frontier.push_back(w);
    }
  }
  return seen;
}


/// Random element of Sp(2n, Z_d) as a product of transvections
/// w -> w + phi(w, v) v, applied in order.
struct RandomSymplectic {
  const SymplecticSpace* space;
  std::vector<Vec> vs;

  Vec operator()(Vec w) const {
    for (const Vec& v : vs) w = add(w, scale(v, space->phi(w, v), space->modulus()), space->modulus());
    return w;
  }
  std::vector<Vec> operator()(const std::vector<Vec>& ws) const {
    std::vector<Vec> out;
    for (const Vec& w : ws) out.push_back((*this)(w));
    return out;
  }
};

inline RandomSymplectic random_symplectic(const SymplecticSpace& space, std::mt19937_64& rng, int steps = 12) {
  RandomSymplectic g{&space, {}};
  const auto d = static_cast<std::uint64_t>(space.modulus());
  for (int s = 0; s < steps; ++s) {
    Vec v(space.ambient_rank());
    for (auto& x : v) x = static_cast<Int>(rng() % d);
    g.vs.push_back(v);
  }
  return g;
}

/// Random re-presentation of the same span: a few random row operations.
inline std::vector<Vec> shuffle_generators(std::vector<Vec> gens, Int d, std::mt19937_64& rng) {
  if (gens.size() < 2) return gens;
  for (int s = 0; s < 10; ++s) {
    std::size_t i = rng() % gens.size(), j = rng() % gens.size();
    if (i == j) continue;
    gens[i] = add(gens[i], scale(gens[j], static_cast<Int>(rng() % static_cast<std::uint64_t>(d)), d), d);
  }
  std::shuffle(gens.begin(), gens.end(), rng);
  gens.push_back(add(gens[0], gens[1], d));
  return gens;
}

inline Vec basis_vector(std::size_t m, std::size_t i, Int scale_by = 1) {
  Vec v(m, 0);
  v[i] = scale_by;
  return v;
}

/// Prime-power refinement of a divisor multiset, sorted.
inline std::vector<Int> prime_power_parts(const std::vector<Int>& divs) {
  std::vector<Int> out;
  for (Int a : divs)
    for (auto [p, e] : factorize(a)) {
      Int q = 1;
      for (int i = 0; i < e; ++i) q *= p;
      out.push_back(q);
    }
  std::sort(out.begin(), out.end());
  return out;
}

/// Monomial d^n x d^n matrix: column i maps to zeta^{phase[i]} e_{target[i]}.
/// Built only from the defining action X e_j = e_{j+1}, Z e_j = xi^j e_j,
/// one factor at a time, so it checks the normal-form phase bookkeeping.
struct MonoMat {
  Int D;  // order of zeta
  std::vector<std::size_t> target;
  std::vector<Int> phase;

  friend bool operator==(const MonoMat&, const MonoMat&) = default;
};

inline std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

inline MonoMat mono_identity(Int d, std::size_t n) {
  Int D = d % 2 == 0 ? 2 * d : d;
  std::size_t N = ipow(static_cast<std::size_t>(d), n);
  MonoMat m{D, std::vector<std::size_t>(N), std::vector<Int>(N, 0)};
  std::iota(m.target.begin(), m.target.end(), 0);
  return m;
}

/// (A B) e_i = A (B e_i)
inline MonoMat compose(const MonoMat& A, const MonoMat& B) {
  MonoMat out = B;
  for (std::size_t i = 0; i < B.target.size(); ++i) {
    out.target[i] = A.target[B.target[i]];
    out.phase[i] = mod(B.phase[i] + A.phase[B.target[i]], A.D);
  }
  return out;
}

// qudit k (0-based) is digit k of the index, most significant first
inline std::size_t digit(std::size_t idx, std::size_t k, Int d, std::size_t n) {
  return idx / ipow(static_cast<std::size_t>(d), n - 1 - k) % static_cast<std::size_t>(d);
}

inline MonoMat mono_X(Int d, std::size_t n, std::size_t k) {
  MonoMat m = mono_identity(d, n);
  std::size_t w = ipow(static_cast<std::size_t>(d), n - 1 - k);
  for (std::size_t i = 0; i < m.target.size(); ++i) {
    std::size_t j = digit(i, k, d, n);
    m.target[i] = i - j * w + ((j + 1) % static_cast<std::size_t>(d)) * w;
  }
  return m;
}

inline MonoMat mono_Z(Int d, std::size_t n, std::size_t k) {
  MonoMat m = mono_identity(d, n);
  for (std::size_t i = 0; i < m.target.size(); ++i) m.phase[i] = mod(2 * static_cast<Int>(digit(i, k, d, n)), m.D);
  return m;
}

inline MonoMat dense(const Pauli& p) {
  const Int d = p.d();
  const std::size_t n = p.n();
  MonoMat m = mono_identity(d, n);
  for (auto& ph : m.phase) ph = p.phase();
  for (std::size_t k = 0; k < n; ++k) {
    for (Int t = 0; t < p.a()[k]; ++t) m = compose(m, mono_X(d, n, k));
    for (Int t = 0; t < p.b()[k]; ++t) m = compose(m, mono_Z(d, n, k));
  }
  return m;
}

inline Pauli random_pauli(Int d, std::size_t n, std::mt19937_64& rng) {
  Vec a(n), b(n);
  auto ud = static_cast<std::uint64_t>(d);
  for (auto& x : a) x = static_cast<Int>(rng() % ud);
  for (auto& x : b) x = static_cast<Int>(rng() % ud);
  return Pauli(d, static_cast<Int>(rng() % static_cast<std::uint64_t>(dbar(d))), a, b);
}

}  // namespace qstab::testing
