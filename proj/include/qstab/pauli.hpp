#pragma once

// n-qudit generalized Pauli group over Z_d, kept in the normal form
//   zeta^c X_1^{a_1} Z_1^{b_1} ... X_n^{a_n} Z_n^{b_n}
// with zeta of order dbar (d for odd d, 2d for even d) and xi = zeta^2.
// Z X = xi X Z on each qudit.

#include <cstddef>
#include <vector>

#include "qstab/errors.hpp"
#include "qstab/zmod.hpp"

namespace qstab {

inline Int dbar(Int d) { return d % 2 == 0 ? 2 * d : d; }

class Pauli {
 public:
  Pauli(Int d, std::size_t n) : d_(d), phase_(0), a_(n, 0), b_(n, 0) {
    if (d < 2) throw Error(ErrorKind::DimensionMismatch, "qudit dimension must be >= 2");
  }
  /// Phase is a zeta exponent; exponents may be negative and are reduced.
  Pauli(Int d, Int phase, Vec a, Vec b) : d_(d), phase_(mod(phase, qstab::dbar(d))), a_(std::move(a)), b_(std::move(b)) {
    if (d < 2) throw Error(ErrorKind::DimensionMismatch, "qudit dimension must be >= 2");
    if (a_.size() != b_.size()) throw Error(ErrorKind::DimensionMismatch, "X and Z exponent vectors differ in length");
    a_ = reduce(a_, d_);
    b_ = reduce(b_, d_);
  }

  static Pauli identity(Int d, std::size_t n) { return Pauli(d, n); }
  static Pauli scalar(Int d, std::size_t n, Int phase) { return Pauli(d, phase, Vec(n, 0), Vec(n, 0)); }
  /// X_k^e on qudit k (0-based).
  static Pauli X(Int d, std::size_t n, std::size_t k, Int e = 1) {
    Pauli p(d, n);
    p.a_.at(k) = mod(e, d);
    return p;
  }
  static Pauli Z(Int d, std::size_t n, std::size_t k, Int e = 1) {
    Pauli p(d, n);
    p.b_.at(k) = mod(e, d);
    return p;
  }
  /// Bare monomial with phase 0 for a module vector (z-part, x-part).
  static Pauli monomial(Int d, const Vec& v) {
    if (v.size() % 2 != 0) throw Error(ErrorKind::DimensionMismatch, "module vector has odd length");
    std::size_t n = v.size() / 2;
    return Pauli(d, 0, Vec(v.begin() + static_cast<std::ptrdiff_t>(n), v.end()),
                 Vec(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n)));
  }

  Int d() const { return d_; }
  Int dbar() const { return qstab::dbar(d_); }
  std::size_t n() const { return a_.size(); }
  Int phase() const { return phase_; }
  const Vec& a() const { return a_; }
  const Vec& b() const { return b_; }

  bool is_scalar() const { return is_zero(a_) && is_zero(b_); }
  bool is_identity() const { return is_scalar() && phase_ == 0; }

  /// (z-part, x-part) = (b, a).
  Vec tau() const {
    Vec v = b_;
    v.insert(v.end(), a_.begin(), a_.end());
    return v;
  }

  Pauli with_phase(Int phase) const {
    Pauli p = *this;
    p.phase_ = mod(phase, dbar());
    return p;
  }

  friend bool operator==(const Pauli& p, const Pauli& q) {
    return p.d_ == q.d_ && p.phase_ == q.phase_ && p.a_ == q.a_ && p.b_ == q.b_;
  }
  friend bool operator<(const Pauli& p, const Pauli& q) {
    return std::tie(p.d_, p.a_, p.b_, p.phase_) < std::tie(q.d_, q.a_, q.b_, q.phase_);
  }

 private:
  Int d_;
  Int phase_;
  Vec a_, b_;
};

inline void check_compatible(const Pauli& p, const Pauli& q) {
  if (p.d() != q.d() || p.n() != q.n())
    throw Error(ErrorKind::DimensionMismatch, "Pauli operands differ in (d, n)");
}

inline Pauli multiply(const Pauli& p, const Pauli& q) {
  check_compatible(p, q);
  const Int d = p.d();
  Int c = p.phase() + q.phase();
  Vec a(p.n()), b(p.n());
  for (std::size_t i = 0; i < p.n(); ++i) {
    // Z^{b1} X^{a2} = xi^{b1 a2} X^{a2} Z^{b1}
    c = mod(c + 2 * p.b()[i] * q.a()[i], p.dbar());
    a[i] = p.a()[i] + q.a()[i];
    b[i] = p.b()[i] + q.b()[i];
  }
  return Pauli(d, c, std::move(a), std::move(b));
}

inline Pauli operator*(const Pauli& p, const Pauli& q) { return multiply(p, q); }

inline Pauli inverse(const Pauli& p) {
  Int c = -p.phase();
  for (std::size_t i = 0; i < p.n(); ++i) c += 2 * p.a()[i] * p.b()[i];
  Vec a = p.a(), b = p.b();
  for (auto& x : a) x = -x;
  for (auto& x : b) x = -x;
  return Pauli(p.d(), c, a, b);
}

/// p^m in closed form: (X^a Z^b)^m = xi^{ab m(m-1)/2} X^{ma} Z^{mb}.
inline Pauli power(const Pauli& p, Int m) {
  if (m < 0) return power(inverse(p), -m);
  const Int d = p.d(), D = p.dbar();
  const Int mr = m % D;
  // m(m-1) mod D only depends on m mod D
  const Int tri = mod(mr * mod(mr - 1, D), D);
  Int c = mod(p.phase() * mr, D);
  Vec a(p.n()), b(p.n());
  for (std::size_t i = 0; i < p.n(); ++i) {
    c = mod(c + mod(p.a()[i] * p.b()[i], D) * tri, D);
    a[i] = mod(p.a()[i] * (m % d), d);
    b[i] = mod(p.b()[i] * (m % d), d);
  }
  return Pauli(d, c, std::move(a), std::move(b));
}

/// Least m >= 1 with p^m = I; always a divisor of dbar.
inline Int order(const Pauli& p) {
  for (Int m : divisors(p.dbar()))
    if (power(p, m).is_identity()) return m;
  return p.dbar();
}

/// phi(tau(p), tau(q)); p q = xi^{result} q p.
inline Int commutation_phase(const Pauli& p, const Pauli& q) {
  check_compatible(p, q);
  Int s = 0;
  for (std::size_t i = 0; i < p.n(); ++i) s += p.b()[i] * q.a()[i] - p.a()[i] * q.b()[i];
  return mod(s, p.d());
}

inline bool commute(const Pauli& p, const Pauli& q) { return commutation_phase(p, q) == 0; }

/// A preimage of v under tau whose order equals the order of v.
inline Pauli order_matched_lift(Int d, const Vec& v) {
  Pauli g = Pauli::monomial(d, v);
  const Int o = vector_order(v, d);
  const Int D = g.dbar();
  const Int s = power(g, o).phase();  // g^o is a scalar
  for (Int t = 0; t < D; ++t)
    if (mod(t * o + s, D) == 0) return g.with_phase(t);
  throw Error(ErrorKind::InconsistentValues, "no order-matched phase exists");
}

}  // namespace qstab
