#pragma once

// Heisenberg extensions of (M, phi): quasi-bases, the block structure of
// a symplectic quotient C / R as a zeta-product of one-qudit Pauli groups,
// and lifts of symplectic maps of Z_d^{2n} to automorphisms of P_n.

#include <algorithm>
#include <functional>
#include <map>
#include <vector>

#include "qstab/pauli.hpp"
#include "qstab/symplectic.hpp"

namespace qstab {

struct QuasiBasis {
  std::vector<Vec> elements;
  Vec orders;
};

/// Smith generators of M; M is the direct sum of the cyclic groups they span.
inline QuasiBasis quasi_basis(const Submodule& M) {
  QuasiBasis q;
  for (auto& [v, o] : M.smith_basis()) {
    q.elements.push_back(v);
    q.orders.push_back(o);
  }
  return q;
}

/// Spans M and the order product equals #M, which rules out any relation
/// beyond the orders themselves.
inline bool is_quasi_basis(const Submodule& M, const std::vector<Vec>& ys) {
  Submodule S(M.modulus(), M.ambient_rank(), ys);
  if (!(S == M)) return false;
  BigCount prod = 1;
  for (const Vec& y : ys) prod *= vector_order(y, M.modulus());
  return prod == M.cardinality();
}

/// Regroups prime-power parts into a divisibility chain: the j-th largest
/// power of every prime goes into the same factor.
inline Vec canonical_chain(const Vec& divisors) {
  std::map<Int, std::vector<Int>> by_prime;
  for (Int a : divisors)
    for (auto [p, e] : factorize(a)) {
      Int q = 1;
      for (int i = 0; i < e; ++i) q *= p;
      by_prime[p].push_back(q);
    }
  std::size_t len = 0;
  for (auto& [p, qs] : by_prime) {
    std::sort(qs.rbegin(), qs.rend());
    len = std::max(len, qs.size());
  }
  Vec chain(len, 1);
  for (auto& [p, qs] : by_prime)
    for (std::size_t j = 0; j < qs.size(); ++j) chain[j] *= qs[j];
  std::sort(chain.begin(), chain.end());
  return chain;
}

struct HeisenbergStructure {
  Int d = 0;
  Vec block_divisors;   // ascending
  Vec canonical_chain;  // d_1 | d_2 | ... after CRT regrouping
  BigCount order;       // dbar * prod d_r^2
  /// Symplectic quasi-basis (e_1, f_1, e_2, f_2, ...) in block order.
  std::vector<Vec> quasi_basis;
  Vec quasi_orders;
  ZdMatrix gram{1, 0, 0};  // phi(y_k, y_r)
  std::vector<Pauli> lifts;
};

/// Y_k^{d_k} trivial and Y_k Y_r = zeta^{2 gram(k, r)} Y_r Y_k, evaluated on
/// normal forms. `trivial` decides when a power counts as the identity;
/// for quotients N(H)/H it tests membership in H.
inline bool verify_presentation(const std::vector<Pauli>& ys, const Vec& orders, const ZdMatrix& gram,
                                const std::function<bool(const Pauli&)>& trivial = {}) {
  if (ys.size() != orders.size() || gram.rows() != ys.size() || gram.cols() != ys.size()) return false;
  auto is_trivial = [&](const Pauli& p) { return trivial ? trivial(p) : p.is_identity(); };
  for (std::size_t k = 0; k < ys.size(); ++k) {
    if (!is_trivial(power(ys[k], orders[k]))) return false;
    for (std::size_t r = 0; r < ys.size(); ++r) {
      const Pauli lhs = multiply(ys[k], ys[r]);
      const Pauli rhs = multiply(Pauli::scalar(ys[k].d(), ys[k].n(), 2 * gram(k, r)), multiply(ys[r], ys[k]));
      if (!(lhs == rhs)) return false;
    }
  }
  return true;
}

using LiftFn = std::function<Pauli(const Vec&, Int)>;

/// Structure of Heis(carrier / radical). `lift` maps a module vector and
/// its order in the quotient to a Pauli element of that order; by default
/// the order-matched monomial lift, valid when the radical is zero.
inline HeisenbergStructure heisenberg_structure(const SymplecticSpace& space, const Submodule& carrier,
                                                const Submodule& radical, const LiftFn& lift = {}) {
  const Int d = space.modulus();
  HeisenbergStructure hs;
  hs.d = d;
  auto blocks = structure_decomposition(space, carrier, radical);
  BigCount prod = 1;
  for (auto& b : blocks) {
    hs.block_divisors.push_back(b.divisor);
    hs.quasi_basis.push_back(b.e);
    hs.quasi_basis.push_back(b.f);
    hs.quasi_orders.push_back(b.divisor);
    hs.quasi_orders.push_back(b.divisor);
    prod *= b.divisor;
  }
  std::sort(hs.block_divisors.begin(), hs.block_divisors.end());
  hs.canonical_chain = canonical_chain(hs.block_divisors);
  hs.order = dbar(d) * prod * prod;
  if (prod * prod * radical.cardinality() != carrier.cardinality())
    throw Error(ErrorKind::Degenerate, "block decomposition does not exhaust the quotient");
  const std::size_t t = hs.quasi_basis.size();
  hs.gram = ZdMatrix(d, t, t);
  for (std::size_t k = 0; k < t; ++k)
    for (std::size_t r = 0; r < t; ++r) hs.gram.set(k, r, space.phi(hs.quasi_basis[k], hs.quasi_basis[r]));
  if (space.ambient_rank() % 2 == 0) {
    for (std::size_t k = 0; k < t; ++k)
      hs.lifts.push_back(lift ? lift(hs.quasi_basis[k], hs.quasi_orders[k])
                              : order_matched_lift(d, hs.quasi_basis[k]));
  }
  return hs;
}

inline HeisenbergStructure heisenberg_structure(const SymplecticSpace& space, const Submodule& carrier) {
  return heisenberg_structure(space, carrier, Submodule::zero(space.modulus(), space.ambient_rank()));
}

/// A linear map of Z_d^{2n} given by the images of z_1..z_n, x_1..x_n.
struct SymplecticMap {
  Int d;
  std::vector<Vec> z_images;
  std::vector<Vec> x_images;

  std::size_t n() const { return z_images.size(); }

  Vec operator()(const Vec& v) const {
    Vec out(2 * n(), 0);
    for (std::size_t k = 0; k < n(); ++k) {
      out = add(out, scale(z_images[k], v[k], d), d);
      out = add(out, scale(x_images[k], v[n() + k], d), d);
    }
    return out;
  }

  /// Rows are the images of the standard basis (z..., x...).
  static SymplecticMap from_rows(Int d, const std::vector<Vec>& rows) {
    std::size_t n = rows.size() / 2;
    return {d, std::vector<Vec>(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(n)),
            std::vector<Vec>(rows.begin() + static_cast<std::ptrdiff_t>(n), rows.end())};
  }
};

inline bool preserves_form(const SymplecticSpace& space, const SymplecticMap& psi) {
  const std::size_t n = psi.n();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (space.phi(psi.z_images[i], psi.z_images[j]) != 0) return false;
      if (space.phi(psi.x_images[i], psi.x_images[j]) != 0) return false;
      if (space.phi(psi.z_images[i], psi.x_images[j]) != (i == j ? 1 : 0)) return false;
    }
  return true;
}

/// Automorphism of P_n fixing zeta, stored by the images of Z_k and X_k.
struct PauliAutomorphism {
  Int d;
  std::vector<Pauli> z_images;
  std::vector<Pauli> x_images;

  std::size_t n() const { return z_images.size(); }

  Pauli apply(const Pauli& p) const {
    Pauli out = Pauli::scalar(d, n(), p.phase());
    for (std::size_t k = 0; k < n(); ++k) {
      out = multiply(out, power(x_images[k], p.a()[k]));
      out = multiply(out, power(z_images[k], p.b()[k]));
    }
    return out;
  }

  SymplecticMap induced() const {
    SymplecticMap m{d, {}, {}};
    for (auto& p : z_images) m.z_images.push_back(p.tau());
    for (auto& p : x_images) m.x_images.push_back(p.tau());
    return m;
  }

  /// (this ∘ other)(g) = this(other(g))
  PauliAutomorphism compose(const PauliAutomorphism& other) const {
    PauliAutomorphism out{d, {}, {}};
    for (auto& p : other.z_images) out.z_images.push_back(apply(p));
    for (auto& p : other.x_images) out.x_images.push_back(apply(p));
    return out;
  }
};

inline PauliAutomorphism lift_symplectic(const SymplecticSpace& space, const SymplecticMap& psi) {
  const Int d = space.modulus();
  const std::size_t n = psi.n();
  if (space.ambient_rank() != 2 * n || psi.x_images.size() != n)
    throw Error(ErrorKind::DimensionMismatch, "map does not act on Z_d^{2n}");
  if (!preserves_form(space, psi)) throw Error(ErrorKind::NotSymplectic, "map does not preserve the Gram matrix");
  PauliAutomorphism out{d, {}, {}};
  std::vector<Pauli> ys;
  for (auto& v : psi.z_images) out.z_images.push_back(order_matched_lift(d, v));
  for (auto& v : psi.x_images) out.x_images.push_back(order_matched_lift(d, v));
  ys = out.z_images;
  ys.insert(ys.end(), out.x_images.begin(), out.x_images.end());
  if (!verify_presentation(ys, Vec(2 * n, d), space.gram()))
    throw Error(ErrorKind::NotSymplectic, "lifted images violate the Pauli relations");
  return out;
}

}  // namespace qstab
