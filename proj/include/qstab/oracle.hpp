#pragma once

// Exact brute-force oracle. A Pauli element acts on the standard basis of
// (C^d)^{(x)n} as a permutation with zeta-power phases, so eigenspaces of a
// stabiliser group can be counted from orbits of basis states and the
// phase cocycle along them. No floating point anywhere.

#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qstab/labeled_union_find.hpp"
#include "qstab/stabilizer.hpp"

namespace qstab {

/// Largest d^n the oracle accepts; QSTAB_ORACLE_BOUND overrides.
inline std::size_t oracle_bound() {
  if (const char* env = std::getenv("QSTAB_ORACLE_BOUND")) {
    try {
      return static_cast<std::size_t>(std::stoull(env));
    } catch (...) {
    }
  }
  return 200000;
}

inline std::size_t state_count(Int d, std::size_t n, std::size_t bound) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= static_cast<std::size_t>(d);
    if (total > bound)
      throw Error(ErrorKind::TooLarge, "d^n exceeds the oracle bound of " + std::to_string(bound));
  }
  return total;
}

/// p v_i = zeta^{phase[i]} v_{perm[i]}. Qudit 1 is the most significant digit.
struct PhasePermutation {
  Int d = 0;
  std::size_t n = 0;
  std::vector<std::size_t> perm;
  std::vector<Int> phase;

  Int dbar() const { return qstab::dbar(d); }

  friend bool operator==(const PhasePermutation&, const PhasePermutation&) = default;
};

inline PhasePermutation represent(const Pauli& p, std::size_t bound = oracle_bound()) {
  const Int d = p.d();
  const std::size_t n = p.n(), N = state_count(d, n, bound);
  const Int D = p.dbar();
  PhasePermutation out{d, n, std::vector<std::size_t>(N), std::vector<Int>(N)};
  std::vector<Int> digits(n, 0);
  for (std::size_t i = 0; i < N; ++i) {
    // X^a Z^b v_j = xi^{b j} v_{j+a} per qudit
    Int ph = p.phase();
    std::size_t target = 0;
    for (std::size_t k = 0; k < n; ++k) {
      ph += 2 * p.b()[k] * digits[k];
      target = target * static_cast<std::size_t>(d) + static_cast<std::size_t>((digits[k] + p.a()[k]) % d);
    }
    out.perm[i] = target;
    out.phase[i] = mod(ph, D);
    for (std::size_t k = n; k-- > 0;) {
      if (++digits[k] < d) break;
      digits[k] = 0;
    }
  }
  return out;
}

/// (P o Q) v_i = P(Q v_i)
inline PhasePermutation compose(const PhasePermutation& P, const PhasePermutation& Q) {
  PhasePermutation out{P.d, P.n, std::vector<std::size_t>(Q.perm.size()), std::vector<Int>(Q.perm.size())};
  for (std::size_t i = 0; i < Q.perm.size(); ++i) {
    out.perm[i] = P.perm[Q.perm[i]];
    out.phase[i] = mod(Q.phase[i] + P.phase[Q.perm[i]], P.dbar());
  }
  return out;
}

/// Sparse vector with coefficients zeta^{exponent}; a basis index appears once.
using ExactVector = std::map<std::size_t, Int>;

inline ExactVector act(const PhasePermutation& P, const ExactVector& v) {
  ExactVector out;
  for (auto [i, e] : v) out[P.perm[i]] = mod(e + P.phase[i], P.dbar());
  return out;
}

/// u = zeta^s v for some s; returns s.
inline std::optional<Int> proportional(const ExactVector& u, const ExactVector& v, Int D) {
  if (u.size() != v.size() || u.empty()) return std::nullopt;
  std::optional<Int> s;
  auto it = v.begin();
  for (auto [i, e] : u) {
    if (it->first != i) return std::nullopt;
    Int t = mod(e - it->second, D);
    if (s && *s != t) return std::nullopt;
    s = t;
    ++it;
  }
  return s;
}

/// Per H-orbit: representative, size, closing relations (distinct), and
/// whether the trivial character is consistent on it.
struct OrbitCertificate {
  std::size_t representative;
  std::size_t size;
  std::vector<LabeledUnionFind::Relation> relations;
  bool trivially_consistent;
};

class OrbitData {
 public:
  OrbitData(const StabilizerGroup& H, std::size_t bound = oracle_bound())
      : d_(H.d()), D_(qstab::dbar(H.d())), k_(H.generators().size()),
        uf_(state_count(H.d(), H.n(), bound), qstab::dbar(H.d()), H.d(), H.generators().size()) {
    for (const Pauli& g : H.generators()) reps_.push_back(represent(g, bound));
    const std::size_t N = uf_.size();
    std::vector<std::pair<std::size_t, LabeledUnionFind::Relation>> closing;
    for (std::size_t s = 0; s < N; ++s)
      for (std::size_t j = 0; j < k_; ++j)
        if (auto r = uf_.link(s, reps_[j].perm[s], j, reps_[j].phase[s])) closing.push_back({s, std::move(*r)});
    std::map<std::size_t, std::size_t> index;
    for (std::size_t s = 0; s < N; ++s) {
      auto [it, fresh] = index.try_emplace(uf_.find(s), orbits_.size());
      if (fresh) {
        orbits_.push_back({it->first, 0, {}, true});
        members_.emplace_back();
      }
      ++orbits_[it->second].size;
      members_[it->second].push_back(s);
    }
    std::vector<std::set<std::pair<Vec, Int>>> rels(orbits_.size());
    for (auto& [s, r] : closing) rels[index[uf_.find(s)]].insert({r.w, r.delta});
    for (std::size_t o = 0; o < orbits_.size(); ++o)
      for (auto& [w, delta] : rels[o]) {
        orbits_[o].relations.push_back({w, delta});
        if (delta != 0) orbits_[o].trivially_consistent = false;
      }
  }

  const std::vector<OrbitCertificate>& orbits() const { return orbits_; }
  const std::vector<PhasePermutation>& generator_actions() const { return reps_; }
  Int dbar() const { return D_; }

  /// chi (exponents v, chi(h_j) = xi^{v_j}) is consistent on the orbit iff
  /// every closing relation has delta = 2 v . w mod dbar.
  bool consistent(const OrbitCertificate& c, const Vec& v) const {
    for (auto& r : c.relations)
      if (mod(2 * dot(v, r.w, d_), D_) != r.delta) return false;
    return true;
  }

  /// All characters consistent on the orbit, as an affine coset in Z_d^k.
  std::vector<Vec> consistent_characters(const OrbitCertificate& c) const {
    if (k_ == 0) return {Vec{}};
    std::vector<std::pair<Vec, Int>> key;
    for (auto& r : c.relations) key.emplace_back(r.w, r.delta);
    auto [it, fresh] = memo_.try_emplace(std::move(key));
    if (fresh) it->second = solve_characters(c);
    return it->second;
  }

 private:
  std::vector<Vec> solve_characters(const OrbitCertificate& c) const {
    std::vector<Vec> rows;
    Vec rhs;
    for (auto& r : c.relations) {
      Int target;
      if (d_ % 2 == 0) {
        if (r.delta % 2 != 0) return {};
        target = r.delta / 2;
      } else {
        target = mod(r.delta * ((d_ + 1) / 2), d_);
      }
      rows.push_back(r.w);
      rhs.push_back(target);
    }
    if (rows.empty()) rows.push_back(Vec(k_, 0)), rhs.push_back(0);
    ZdMatrix W = ZdMatrix::from_rows(d_, rows, k_);
    auto base = solve_linear(W, rhs);
    if (!base) return {};
    Submodule K(d_, k_, kernel(W));
    std::vector<Vec> out{*base};
    for (auto& [g, o] : K.smith_basis()) {
      std::vector<Vec> next;
      for (const Vec& v : out)
        for (Int m = 0; m < o; ++m) next.push_back(add(v, scale(g, m, d_), d_));
      out = std::move(next);
    }
    return out;
  }

 public:
  /// sum over h in H of chi(h)^{-1} h v_rep, normalised to coefficient 1 at
  /// the representative: zeta^{Theta_s - 2 v . W_s} on each orbit state s.
  ExactVector projected_vector(std::size_t orbit, const Vec& v) {
    ExactVector out;
    for (std::size_t s : members_[orbit]) out[s] = mod(uf_.theta(s) - 2 * dot(v, uf_.word(s), d_), D_);
    return out;
  }

 private:
  Int d_, D_;
  std::size_t k_;
  LabeledUnionFind uf_;
  std::vector<PhasePermutation> reps_;
  std::vector<OrbitCertificate> orbits_;
  std::vector<std::vector<std::size_t>> members_;
  mutable std::map<std::vector<std::pair<Vec, Int>>, std::vector<Vec>> memo_;
};

/// Nonzero dim V_chi for every character chi of H.
inline std::map<Vec, BigCount> eigenspace_dimensions(const StabilizerGroup& H, std::size_t bound = oracle_bound()) {
  OrbitData data(H, bound);
  std::map<Vec, BigCount> hist;
  for (const auto& c : data.orbits())
    for (Vec& v : data.consistent_characters(c)) hist[std::move(v)] += 1;
  return hist;
}

inline BigCount fixed_space_dimension(const StabilizerGroup& H, std::size_t bound = oracle_bound()) {
  OrbitData data(H, bound);
  BigCount dim = 0;
  for (const auto& c : data.orbits())
    if (c.trivially_consistent) dim += 1;
  return dim;
}

/// Basis of V_chi, one vector per chi-consistent orbit; each checked to be
/// an exact eigenvector of every generator.
inline std::vector<ExactVector> eigenspace_basis(const StabilizerGroup& H, const CharacterMap& chi,
                                                 std::size_t bound = oracle_bound()) {
  if (chi.v.size() != H.generators().size())
    throw Error(ErrorKind::DimensionMismatch, "character length differs from the generator count");
  OrbitData data(H, bound);
  std::vector<ExactVector> out;
  for (std::size_t o = 0; o < data.orbits().size(); ++o) {
    if (!data.consistent(data.orbits()[o], chi.v)) continue;
    ExactVector psi = data.projected_vector(o, chi.v);
    for (std::size_t j = 0; j < H.generators().size(); ++j) {
      auto s = proportional(act(data.generator_actions()[j], psi), psi, data.dbar());
      if (!s || *s != mod(2 * chi.v[j], data.dbar()))
        throw Error(ErrorKind::InconsistentCharacter, "orbit vector is not an eigenvector");
    }
    out.push_back(std::move(psi));
  }
  return out;
}

inline std::vector<ExactVector> protected_basis(const StabilizerGroup& H, std::size_t bound = oracle_bound()) {
  return eigenspace_basis(H, CharacterMap{Vec(H.generators().size(), 0)}, bound);
}

struct OracleVerdict {
  bool dimension = false;  // (a)
  bool invariance = false;  // (b)
  bool relations = false;  // (c)
  bool count = false;  // (d)
  BigCount oracle_dim;
  std::map<Vec, BigCount> histogram;
  std::vector<std::string> failures;

  bool passed() const { return dimension && invariance && relations && count; }
};

/// Checks a report against brute force: (a) dim V^H, (b) logical operators
/// preserve V^H, (c) Heisenberg relations modulo H and on V^H, (d) order of
/// the reported structure against the oracle's #H.
inline OracleVerdict verify_report(const StabilizerGroup& H, const StabilizerReport& report,
                                   std::size_t bound = oracle_bound()) {
  OracleVerdict v;
  const Int d = H.d(), D = qstab::dbar(d);
  const std::size_t n = H.n();
  v.histogram = eigenspace_dimensions(H, bound);
  const Vec trivial(H.generators().size(), 0);
  auto it = v.histogram.find(trivial);
  v.oracle_dim = it == v.histogram.end() ? BigCount(0) : it->second;
  v.dimension = v.oracle_dim == report.dim_protected;
  if (!v.dimension) v.failures.push_back("(a) dim V^H: oracle " + to_string(v.oracle_dim) + ", report " +
                                         to_string(report.dim_protected));

  auto basis = protected_basis(H, bound);
  std::vector<PhasePermutation> gen_actions;
  for (const Pauli& g : H.generators()) gen_actions.push_back(represent(g, bound));
  auto fixed = [&](const ExactVector& psi) {
    for (auto& P : gen_actions)
      if (act(P, psi) != psi) return false;
    return true;
  };
  v.invariance = true;
  std::vector<PhasePermutation> logical;
  for (auto& lp : report.logical_operators) {
    logical.push_back(represent(lp.e, bound));
    logical.push_back(represent(lp.f, bound));
  }
  for (auto& L : logical)
    for (auto& psi : basis)
      if (!fixed(act(L, psi))) v.invariance = false;
  if (!v.invariance) v.failures.push_back("(b) a logical operator leaves V^H");

  v.relations = true;
  const auto& ops = report.logical_operators;
  for (std::size_t r = 0; r < ops.size(); ++r) {
    const Int dr = ops[r].divisor;
    // E F E^-1 F^-1 xi^{-d/d_r} in H, powers in H, and the same on V^H
    Pauli comm = multiply(multiply(ops[r].e, ops[r].f), multiply(inverse(ops[r].e), inverse(ops[r].f)));
    if (dr <= 0 || d % dr != 0 || !H.contains(multiply(comm, Pauli::scalar(d, n, -2 * (d / dr)))))
      v.relations = false;
    if (!H.contains(power(ops[r].e, dr)) || !H.contains(power(ops[r].f, dr))) v.relations = false;
    for (std::size_t s = r + 1; s < ops.size(); ++s)
      for (const Pauli* a : {&ops[r].e, &ops[r].f})
        for (const Pauli* b : {&ops[s].e, &ops[s].f})
          if (!commute(*a, *b)) v.relations = false;
    if (!v.relations) break;
    const auto& E = logical[2 * r];
    const auto& F = logical[2 * r + 1];
    auto Er = represent(power(ops[r].e, dr), bound), Fr = represent(power(ops[r].f, dr), bound);
    for (auto& psi : basis) {
      auto s = proportional(act(E, act(F, psi)), act(F, act(E, psi)), D);
      if (!s || *s != mod(2 * (d / dr), D)) v.relations = false;
      if (act(Er, psi) != psi || act(Fr, psi) != psi) v.relations = false;
    }
  }
  if (!v.relations) v.failures.push_back("(c) logical operators violate the reported relations");

  // #H from the oracle is the number of characters that occur
  BigCount oracle_h = v.histogram.size();
  BigCount prod = 1;
  for (Int a : report.quotient_divisors) prod *= a;
  BigCount expected = BigCount(D) * big_pow(d, 2 * n) / (oracle_h * oracle_h);
  v.count = prod * prod * D == report.heisenberg.order && report.heisenberg.order == expected;
  if (!v.count) v.failures.push_back("(d) order of the reported structure: expected " + to_string(expected));
  return v;
}

}  // namespace qstab
