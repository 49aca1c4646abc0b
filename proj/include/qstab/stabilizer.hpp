#pragma once

// Stabiliser subgroups H of P_n: validation (abelian, no scalars), the
// quotient tau(H)^perp / tau(H) and its block divisors, protected-space
// dimension, classification, logical operators, Clifford normal form for
// free H, and the action of P_n on characters of H.

#include <optional>
#include <string>
#include <vector>

#include "qstab/heisenberg.hpp"
#include "qstab/pauli.hpp"
#include "qstab/symplectic.hpp"

namespace qstab {

class StabilizerGroup {
 public:
  /// Validates and builds. Throws NotAbelian (detail = offending pair) or
  /// ContainsScalar (detail = relation vector whose product is a scalar).
  StabilizerGroup(Int d, std::size_t n, std::vector<Pauli> generators)
      : d_(d), n_(n), gens_(std::move(generators)), tau_(Submodule::zero(d, 2 * n)) {
    for (const Pauli& g : gens_)
      if (g.d() != d_ || g.n() != n_) throw Error(ErrorKind::DimensionMismatch, "generator has wrong (d, n)");
    for (std::size_t i = 0; i < gens_.size(); ++i)
      for (std::size_t j = i + 1; j < gens_.size(); ++j)
        if (!commute(gens_[i], gens_[j]))
          throw Error(ErrorKind::NotAbelian,
                      "generators " + std::to_string(i) + " and " + std::to_string(j) + " do not commute",
                      {static_cast<Int>(i), static_cast<Int>(j)});
    std::vector<Vec> taus;
    for (const Pauli& g : gens_) taus.push_back(g.tau());
    tau_ = Submodule(d_, 2 * n_, taus);

    const std::size_t k = gens_.size();
    // Relations over Z are generated by d e_j and lifts of the Z_d-kernel.
    for (std::size_t j = 0; j < k; ++j) {
      if (!power(gens_[j], d_).is_identity()) {
        Vec w(k, 0);
        w[j] = d_;
        throw Error(ErrorKind::ContainsScalar, "generator " + std::to_string(j) + " has a scalar d-th power", w);
      }
    }
    if (k == 0) return;
    ZdMatrix cols(d_, 2 * n_, k);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < 2 * n_; ++i) cols.set(i, j, taus[j][i]);
    for (const Vec& lambda : kernel(cols)) {
      if (!product(lambda).is_identity())
        throw Error(ErrorKind::ContainsScalar, "a relation among the generators multiplies to a nontrivial scalar",
                    lambda);
    }
  }

  Int d() const { return d_; }
  std::size_t n() const { return n_; }
  const std::vector<Pauli>& generators() const { return gens_; }
  const Submodule& tau() const { return tau_; }
  BigCount cardinality() const { return tau_.cardinality(); }

  /// prod h_j^{lambda_j}, in generator order.
  Pauli product(const Vec& lambda) const {
    Pauli acc = Pauli::identity(d_, n_);
    for (std::size_t j = 0; j < gens_.size(); ++j) acc = multiply(acc, power(gens_[j], mod(lambda[j], d_)));
    return acc;
  }

  bool contains(const Pauli& p) const {
    if (p.d() != d_ || p.n() != n_) return false;
    auto lambda = tau_.coefficients(p.tau());
    return lambda && product(*lambda) == p;
  }

  /// N(H) is the centraliser: phi(tau(p), tau(h_j)) = 0 for every generator.
  bool normalizes(const Pauli& p) const {
    for (const Pauli& g : gens_)
      if (!commute(p, g)) return false;
    return true;
  }

 private:
  Int d_;
  std::size_t n_;
  std::vector<Pauli> gens_;
  Submodule tau_;
};

inline StabilizerGroup validate(Int d, std::size_t n, std::vector<Pauli> generators) {
  return StabilizerGroup(d, n, std::move(generators));
}

inline bool membership(const StabilizerGroup& H, const Pauli& p) { return H.contains(p); }
inline bool normalizer_membership(const StabilizerGroup& H, const Pauli& p) { return H.normalizes(p); }

enum class Classification { Free, ShiftedFree, General };

inline std::string to_string(Classification c) {
  switch (c) {
    case Classification::Free: return "FREE";
    case Classification::ShiftedFree: return "SHIFTED_FREE";
    case Classification::General: return "GENERAL";
  }
  return "GENERAL";
}

struct CssSplit {
  std::vector<Pauli> z_part;
  std::vector<Pauli> x_part;
};

/// Generators that are pure Z or pure X with phase 0 split into (H^Z, H^X).
inline std::optional<CssSplit> css_split(const StabilizerGroup& H) {
  CssSplit out;
  for (const Pauli& g : H.generators()) {
    if (g.phase() != 0) return std::nullopt;
    if (is_zero(g.a()))
      out.z_part.push_back(g);
    else if (is_zero(g.b()))
      out.x_part.push_back(g);
    else
      return std::nullopt;
  }
  return out;
}

struct LogicalPair {
  Pauli e;
  Pauli f;
  Int divisor;
};

struct StabilizerReport {
  Int d = 0;
  std::size_t n = 0;
  BigCount cardinality;
  BigCount dim_protected;
  Vec tau_invariant_factors;
  Vec quotient_divisors;  // ascending
  Vec canonical_chain;
  Classification classification = Classification::General;
  std::size_t k = 0;  // FREE(k) / SHIFTED_FREE(k)
  std::vector<LogicalPair> logical_operators;
  HeisenbergStructure heisenberg;
  std::optional<CssSplit> css;
};

/// Lift of v in N(H) whose order modulo H is `o`: the bare monomial with the
/// smallest zeta correction t such that (zeta^t g)^o lies in H.
inline Pauli logical_lift(const StabilizerGroup& H, const Vec& v, Int o) {
  Pauli g = Pauli::monomial(H.d(), v);
  for (Int t = 0; t < g.dbar(); ++t) {
    Pauli c = g.with_phase(t);
    if (H.contains(power(c, o))) return c;
  }
  throw Error(ErrorKind::ContainsScalar, "no lift of matching order modulo H");
}

inline StabilizerReport analyze(const StabilizerGroup& H) {
  const Int d = H.d();
  const std::size_t n = H.n();
  auto S = SymplecticSpace::standard(d, n);
  const Submodule& T = H.tau();
  Submodule P = perp(S, T);

  StabilizerReport r;
  r.d = d;
  r.n = n;
  r.cardinality = H.cardinality();
  r.dim_protected = big_pow(d, n) / r.cardinality;
  r.tau_invariant_factors = T.invariant_factors();
  r.heisenberg = heisenberg_structure(S, P, T, [&](const Vec& v, Int o) { return logical_lift(H, v, o); });
  r.quotient_divisors = r.heisenberg.block_divisors;
  r.canonical_chain = r.heisenberg.canonical_chain;

  BigCount prod = 1;
  for (Int a : r.quotient_divisors) prod *= a;
  if (prod != r.dim_protected)
    throw Error(ErrorKind::Degenerate, "block divisors do not multiply to d^n / #H");

  const bool quotient_free =
      std::all_of(r.quotient_divisors.begin(), r.quotient_divisors.end(), [&](Int a) { return a == d; });
  if (T.is_free()) {
    r.classification = Classification::Free;
    r.k = T.free_rank();
  } else if (quotient_free) {
    r.classification = Classification::ShiftedFree;
    r.k = n - r.quotient_divisors.size();
  } else {
    r.classification = Classification::General;
  }

  const auto& lifts = r.heisenberg.lifts;
  for (std::size_t i = 0; i + 1 < lifts.size(); i += 2) {
    if (!H.normalizes(lifts[i]) || !H.normalizes(lifts[i + 1]))
      throw Error(ErrorKind::Degenerate, "logical operator outside the normaliser");
    r.logical_operators.push_back({lifts[i], lifts[i + 1], r.heisenberg.quasi_orders[i]});
  }
  if (!verify_presentation(lifts, r.heisenberg.quasi_orders, r.heisenberg.gram,
                           [&](const Pauli& p) { return H.contains(p); }))
    throw Error(ErrorKind::Degenerate, "logical operators violate the Heisenberg relations modulo H");
  r.css = css_split(H);
  return r;
}

/// For a shifted-free H: generators of a free symplectic submodule W of
/// Z_d^{2n} in which tau(H) is Lagrangian. Empty when H is not shifted free.
inline std::optional<std::vector<Vec>> shifted_free_witness(const StabilizerGroup& H, const StabilizerReport& report) {
  if (report.classification == Classification::General) return std::nullopt;
  auto S = SymplecticSpace::standard(H.d(), H.n());
  std::vector<Vec> logical;
  for (const auto& lp : report.logical_operators) {
    logical.push_back(lp.e.tau());
    logical.push_back(lp.f.tau());
  }
  Submodule W = perp(S, S.span(logical));
  return W.generators();
}

struct CanonicalConjugation {
  SymplecticMap beta;  // beta(tau(H)) = <z_1..z_k>
  PauliAutomorphism psi;
  Pauli phase_fix;  // X_1^{a_1} ... X_k^{a_k}
  std::vector<Pauli> conjugated;  // generators of H after psi and phase_fix
};

inline Pauli conjugate(const Pauli& by, const Pauli& p) { return multiply(by, multiply(p, inverse(by))); }

inline CanonicalConjugation canonical_conjugation(const StabilizerGroup& H) {
  const Int d = H.d();
  const std::size_t n = H.n();
  const Submodule& T = H.tau();
  if (!T.is_free()) throw Error(ErrorKind::NotFree, "tau(H) is not free");
  auto S = SymplecticSpace::standard(d, n);
  std::vector<Vec> basis;
  for (auto& [v, o] : T.smith_basis()) basis.push_back(v);
  const std::size_t k = basis.size();
  auto sb = extend_isotropic_basis(S, T, basis);

  std::vector<Vec> rows = sb.e;
  rows.insert(rows.end(), sb.f.begin(), sb.f.end());
  auto Binv = inverse(ZdMatrix::from_rows(d, rows, 2 * n));
  if (!Binv) throw Error(ErrorKind::NotSymplectic, "symplectic basis is not invertible");
  CanonicalConjugation out{SymplecticMap::from_rows(d, Binv->row_list()), {}, Pauli::identity(d, n), {}};
  out.psi = lift_symplectic(S, out.beta);

  Vec a(n, 0);
  for (std::size_t i = 0; i < k; ++i) {
    Pauli g = H.product(*T.coefficients(basis[i]));
    Pauli img = out.psi.apply(g);  // zeta^c Z_i
    Int c = img.phase();
    // zeta^c = xi^{a_i}
    a[i] = d % 2 == 0 ? mod(c / 2, d) : mod(c * ((d + 1) / 2), d);
  }
  out.phase_fix = Pauli(d, 0, a, Vec(n, 0));
  for (const Pauli& h : H.generators()) out.conjugated.push_back(conjugate(out.phase_fix, out.psi.apply(h)));

  std::vector<Pauli> zs;
  for (std::size_t i = 0; i < k; ++i) zs.push_back(Pauli::Z(d, n, i));
  StabilizerGroup target(d, n, zs), image(d, n, out.conjugated);
  for (const Pauli& p : out.conjugated)
    if (!target.contains(p)) throw Error(ErrorKind::NotSymplectic, "conjugated generator outside <Z_1..Z_k>");
  for (const Pauli& z : zs)
    if (!image.contains(z)) throw Error(ErrorKind::NotSymplectic, "conjugated group misses a Z_i");
  return out;
}

/// chi(h_j) = xi^{v_j}.
struct CharacterMap {
  Vec v;

  friend bool operator==(const CharacterMap&, const CharacterMap&) = default;
};

/// chi respects every relation among the generators.
inline bool is_consistent(const StabilizerGroup& H, const CharacterMap& chi) {
  const Int d = H.d();
  const std::size_t k = H.generators().size();
  if (chi.v.size() != k) return false;
  if (k == 0) return true;
  ZdMatrix cols(d, 2 * H.n(), k);
  for (std::size_t j = 0; j < k; ++j) {
    Vec t = H.generators()[j].tau();
    for (std::size_t i = 0; i < t.size(); ++i) cols.set(i, j, t[i]);
  }
  for (const Vec& lambda : kernel(cols))
    if (dot(lambda, chi.v, d) != 0) return false;
  return true;
}

/// (p . chi)(h) = chi(h) - phi(tau(p), tau(h)); p maps V_chi onto V_{p . chi}.
inline CharacterMap character_action(const StabilizerGroup& H, const CharacterMap& chi, const Pauli& p) {
  if (!is_consistent(H, chi)) throw Error(ErrorKind::InconsistentCharacter, "character violates a relation of H");
  CharacterMap out = chi;
  for (std::size_t j = 0; j < out.v.size(); ++j)
    out.v[j] = mod(out.v[j] - commutation_phase(p, H.generators()[j]), H.d());
  return out;
}

/// Some p with p . trivial = chi, showing the action is transitive.
inline Pauli transport_from_trivial(const StabilizerGroup& H, const CharacterMap& chi) {
  if (!is_consistent(H, chi)) throw Error(ErrorKind::InconsistentCharacter, "character violates a relation of H");
  const Int d = H.d();
  const std::size_t k = H.generators().size();
  auto S = SymplecticSpace::standard(d, H.n());
  if (k == 0) return Pauli::identity(d, H.n());
  // phi(u, t_j) = u . (Gram t_j) = -v_j
  std::vector<Vec> rows;
  for (const Pauli& g : H.generators()) rows.push_back(S.gram().apply(g.tau()));
  Vec rhs = chi.v;
  for (auto& x : rhs) x = mod(-x, d);
  auto u = solve_linear(ZdMatrix::from_rows(d, rows, 2 * H.n()), rhs);
  if (!u) throw Error(ErrorKind::InconsistentCharacter, "no Pauli element realises the character");
  return Pauli::monomial(d, *u);
}

}  // namespace qstab
