#pragma once

// Alternating forms on submodules of Z_d^m: orthogonal complements,
// decomposition into elementary blocks S_a, symplectic bases and the
// canonical shape of Lagrangians.

#include <functional>
#include <vector>

#include "qstab/zmod.hpp"

namespace qstab {

/// Z_d^m with an alternating form given by its Gram matrix on the
/// standard basis.
class SymplecticSpace {
 public:
  SymplecticSpace(ZdMatrix gram) : gram_(std::move(gram)) {
    if (gram_.rows() != gram_.cols()) throw Error(ErrorKind::DimensionMismatch, "Gram matrix not square");
    for (std::size_t i = 0; i < gram_.rows(); ++i) {
      if (gram_(i, i) != 0) throw Error(ErrorKind::DimensionMismatch, "form is not alternating");
      for (std::size_t j = 0; j < i; ++j)
        if (mod(gram_(i, j) + gram_(j, i), gram_.modulus()) != 0)
          throw Error(ErrorKind::DimensionMismatch, "form is not antisymmetric");
    }
  }

  /// Coordinates (z_1..z_n, x_1..x_n) with phi(z_i, x_j) = delta_ij.
  static SymplecticSpace standard(Int d, std::size_t n) {
    ZdMatrix g(d, 2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      g.set(i, n + i, 1);
      g.set(n + i, i, -1);
    }
    return SymplecticSpace(std::move(g));
  }

  Int modulus() const { return gram_.modulus(); }
  std::size_t ambient_rank() const { return gram_.rows(); }
  const ZdMatrix& gram() const { return gram_; }

  Int phi(const Vec& u, const Vec& v) const { return dot(u, gram_.apply(v), modulus()); }

  bool is_symplectic() const { return inverse(gram_).has_value(); }

  Submodule whole() const { return Submodule::whole(modulus(), ambient_rank()); }
  Submodule span(std::vector<Vec> gens) const {
    return Submodule(modulus(), ambient_rank(), std::move(gens));
  }

 private:
  ZdMatrix gram_;
};

/// Pair (e, f) with phi(e, f) = d / divisor, spanning a copy of S_divisor.
struct ElementaryBlock {
  Vec e;
  Vec f;
  Int divisor;
};

/// Symplectic basis with L = <d_r e_r, (d / d_r) f_r>, d_1 | ... | d_n | d | d_1^2.
struct LagrangianForm {
  std::vector<Vec> e;
  std::vector<Vec> f;
  Vec divisors;
};

struct SymplecticBasis {
  std::vector<Vec> e;
  std::vector<Vec> f;
};

/// N inside one free block: N = <a e, b f> with d | ab and a | b.
struct IsotropicBlockClass {
  Int a;
  Int b;
  Vec e;
  Vec f;
};

inline Submodule perp(const SymplecticSpace& space, const Submodule& N) {
  const Int d = space.modulus();
  const std::size_t m = space.ambient_rank();
  if (N.generators().empty()) return Submodule::whole(d, m);
  std::vector<Vec> rows;
  for (const Vec& g : N.generators()) rows.push_back(space.gram().apply(g));
  return Submodule(d, m, kernel(ZdMatrix::from_rows(d, rows, m))).canonical();
}

/// Element of maximal order in the group generated by `gens`, where `order`
/// gives orders in the relevant quotient. Generators are folded left to
/// right: two elements of orders p, q are combined into one of order
/// lcm(p, q) by splitting the lcm into coprime prime-power parts.
inline std::pair<Vec, Int> max_order_element(const std::vector<Vec>& gens, std::size_t m, Int d,
                                             const std::function<Int(const Vec&)>& order) {
  Vec cur(m, 0);
  Int ord = 1;
  auto primes = factorize(d);
  for (const Vec& g : gens) {
    Int o = order(g);
    if (ord % o == 0) continue;
    Int keep = 1, take = 1;
    for (auto [p, e] : primes) {
      (void)e;
      Int pa = 1, pb = 1;
      while (ord % (pa * p) == 0) pa *= p;
      while (o % (pb * p) == 0) pb *= p;
      if (pa >= pb)
        keep *= pa;
      else
        take *= pb;
    }
    cur = add(scale(cur, ord / keep, d), scale(g, o / take, d), d);
    ord = keep * take;
  }
  return {cur, ord};
}

/// Splits `carrier` / `radical` into orthogonal elementary blocks, largest
/// divisor first. `radical` must lie in carrier ∩ carrier^perp; the form
/// has to be nondegenerate on the quotient.
inline std::vector<ElementaryBlock> structure_decomposition(const SymplecticSpace& space, const Submodule& carrier,
                                                            const Submodule& radical) {
  const Int d = space.modulus();
  const std::size_t m = space.ambient_rank();
  std::vector<ElementaryBlock> blocks;
  Submodule cur = carrier.canonical();
  auto order = [&](const Vec& v) { return radical.order_modulo(v); };
  while (!radical.contains(cur)) {
    auto [e, a] = max_order_element(cur.generators(), m, d, order);
    const auto& gens = cur.generators();
    ZdMatrix row(d, 1, gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j) row.set(0, j, space.phi(e, gens[j]));
    auto lambda = solve_linear(row, Vec{d / a});
    if (!lambda) throw Error(ErrorKind::Degenerate, "form has a nonzero kernel on the carrier");
    Vec f(m, 0);
    for (std::size_t j = 0; j < gens.size(); ++j) f = add(f, scale(gens[j], (*lambda)[j], d), d);
    blocks.push_back({e, f, a});
    cur = intersect(cur, perp(space, space.span({e, f})));
  }
  return blocks;
}

inline std::vector<ElementaryBlock> structure_decomposition(const SymplecticSpace& space, const Submodule& carrier) {
  return structure_decomposition(space, carrier, Submodule::zero(space.modulus(), space.ambient_rank()));
}

inline SymplecticBasis symplectic_basis(const SymplecticSpace& space, const Submodule& carrier) {
  if (!carrier.is_free()) throw Error(ErrorKind::NotFreeSymplectic, "carrier is not a free module");
  SymplecticBasis out;
  for (auto& b : structure_decomposition(space, carrier)) {
    if (b.divisor != space.modulus())
      throw Error(ErrorKind::NotFreeSymplectic, "carrier has an elementary block S_" + std::to_string(b.divisor));
    out.e.push_back(b.e);
    out.f.push_back(b.f);
  }
  return out;
}

namespace detail {

/// Some e in the free direct summand C with (d / o) e = m and e primitive,
/// where m has order o. `unit` is any primitive vector of C.
inline std::optional<Vec> primitive_root(const Submodule& C, const Vec& m, Int o, const Vec& unit) {
  const Int d = C.modulus();
  const Int s = d / o;
  const auto& gens = C.generators();
  ZdMatrix A(d, m.size(), gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (std::size_t i = 0; i < m.size(); ++i) A.set(i, j, s * gens[j][i]);
  auto lambda = solve_linear(A, m);
  if (!lambda) return std::nullopt;
  Vec e(m.size(), 0);
  for (std::size_t j = 0; j < gens.size(); ++j) e = add(e, scale(gens[j], (*lambda)[j], d), d);
  // Primes dividing the content of e do not divide o; push e off them.
  Int content = d;
  for (Int x : e) content = gcd(content, x);
  Int c = 1;
  for (auto [p, k] : factorize(d)) {
    (void)k;
    if (o % p != 0 && content % p != 0) c *= p;
  }
  if (content != 1) e = add(e, scale(unit, o * c, d), d);
  return e;
}

inline Vec combine(const std::vector<Vec>& gens, const Vec& lambda, std::size_t m, Int d) {
  Vec out(m, 0);
  for (std::size_t j = 0; j < gens.size(); ++j) out = add(out, scale(gens[j], lambda[j], d), d);
  return out;
}

/// f in C with phi(e, f) = 1.
inline std::optional<Vec> unit_partner(const SymplecticSpace& space, const Submodule& C, const Vec& e) {
  const auto& gens = C.generators();
  ZdMatrix row(space.modulus(), 1, gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j) row.set(0, j, space.phi(e, gens[j]));
  auto lambda = solve_linear(row, Vec{1});
  if (!lambda) return std::nullopt;
  return combine(gens, *lambda, space.ambient_rank(), space.modulus());
}

inline Vec first_primitive(const Submodule& C) {
  for (auto& [v, o] : C.smith_basis())
    if (o == C.modulus()) return v;
  throw Error(ErrorKind::NotFree, "carrier has no primitive vector");
}

}  // namespace detail

inline SymplecticBasis extend_isotropic_basis(const SymplecticSpace& space, const Submodule& L,
                                              const std::vector<Vec>& basis) {
  const Int d = space.modulus();
  const std::size_t m = space.ambient_rank();
  Submodule B = space.span(basis);
  if (!L.is_free() || basis.size() != L.free_rank() || !(B == L))
    throw Error(ErrorKind::NotFree, "vectors are not a basis of a free submodule");
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (space.phi(basis[i], basis[j]) != 0)
        throw Error(ErrorKind::NotIsotropic, "phi(e_" + std::to_string(i + 1) + ", e_" + std::to_string(j + 1) +
                                                 ") != 0");
  const std::size_t k = basis.size();
  ZdMatrix A(d, k, m);
  for (std::size_t i = 0; i < k; ++i) {
    Vec r = space.gram().transpose().apply(basis[i]);  // phi(e_i, x) = r . x
    for (std::size_t c = 0; c < m; ++c) A.set(i, c, r[c]);
  }
  SmithForm snf = smith_normal_form(A);
  SymplecticBasis out;
  for (std::size_t j = 0; j < k; ++j) {
    Vec delta(k, 0);
    delta[j] = 1;
    auto f = solve_linear(A, snf, delta);
    if (!f) throw Error(ErrorKind::NotSymplectic, "form is not symplectic on the ambient module");
    out.f.push_back(*f);
  }
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < j; ++i)
      out.f[j] = add(out.f[j], scale(basis[i], space.phi(out.f[i], out.f[j]), d), d);
  out.e = basis;
  for (auto& v : out.e) v = reduce(v, d);

  std::vector<Vec> block = out.e;
  block.insert(block.end(), out.f.begin(), out.f.end());
  if (block.empty() || !(space.span(block) == space.whole())) {
    auto rest = symplectic_basis(space, perp(space, space.span(block)));
    out.e.insert(out.e.end(), rest.e.begin(), rest.e.end());
    out.f.insert(out.f.end(), rest.f.begin(), rest.f.end());
  }
  return out;
}

inline LagrangianForm lagrangian_canonical_form(const SymplecticSpace& space, const Submodule& L) {
  const Int d = space.modulus();
  const std::size_t m = space.ambient_rank();
  if (!(perp(space, L) == L)) throw Error(ErrorKind::NotLagrangian, "L differs from its orthogonal");
  std::vector<Vec> es, fs;
  Vec divs;
  Submodule C = space.whole();
  Submodule LC = L.canonical();
  while (C.cardinality() > 1) {
    auto [mv, a] = max_order_element(LC.generators(), m, d, [&](const Vec& v) { return vector_order(v, d); });
    // a maximal-order element of a Lagrangian always has order > 1 here
    auto e = detail::primitive_root(C, mv, a, detail::first_primitive(C));
    if (!e) throw Error(ErrorKind::NotLagrangian, "maximal element is not divisible in the carrier");
    auto f = detail::unit_partner(space, C, *e);
    if (!f) throw Error(ErrorKind::Degenerate, "no symplectic partner in the carrier");
    if (!L.contains(scale(*f, a, d))) throw Error(ErrorKind::NotLagrangian, "a f is not in L");
    // L ∩ <e, f> = <b e, a f>; relabel so that L meets the block in <a e', b f'>.
    es.push_back(*f);
    fs.push_back(scale(*e, -1, d));
    divs.push_back(a);
    Submodule Nperp = perp(space, space.span({*e, *f}));
    C = intersect(C, Nperp);
    LC = intersect(LC, Nperp);
  }
  std::reverse(es.begin(), es.end());
  std::reverse(fs.begin(), fs.end());
  std::reverse(divs.begin(), divs.end());
  return {es, fs, divs};
}

inline IsotropicBlockClass classify_isotropic_block(const SymplecticSpace& space, const Vec& u, const Vec& v,
                                                    const Submodule& N) {
  const Int d = space.modulus();
  const std::size_t m = space.ambient_rank();
  if (space.phi(u, v) != 1) throw Error(ErrorKind::NotFreeSymplectic, "block pair must satisfy phi(u, v) = 1");
  Submodule block = space.span({u, v});
  if (!block.contains(N)) throw Error(ErrorKind::DimensionMismatch, "N is not inside the block");
  for (const Vec& g : N.generators())
    for (const Vec& h : N.generators())
      if (space.phi(g, h) != 0) throw Error(ErrorKind::NotIsotropic, "N is not isotropic");
  auto [mv, c] = max_order_element(N.generators(), m, d, [&](const Vec& x) { return vector_order(x, d); });
  Vec e = reduce(u, d);
  if (c > 1) e = *detail::primitive_root(block, mv, c, reduce(u, d));
  Vec f = *detail::unit_partner(space, block, e);
  Int a = d / c, b = d;
  for (Int t : divisors(d))
    if (N.contains(scale(f, t, d))) {
      b = t;
      break;
    }
  return {a, b, e, f};
}

}  // namespace qstab
