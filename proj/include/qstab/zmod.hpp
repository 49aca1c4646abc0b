#pragma once

// Exact linear algebra over Z/dZ for composite d: matrices, Smith normal
// form with tracked unimodular transforms, linear solving, kernels and
// finitely generated submodules of Z_d^m.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qstab/errors.hpp"

namespace qstab {

using Int = std::int64_t;
using Vec = std::vector<Int>;
/// Cardinalities (#H, d^n, group orders) overflow 64 bits quickly.
using BigCount = boost::multiprecision::cpp_int;

inline Int mod(Int x, Int d) {
  Int r = x % d;
  return r < 0 ? r + d : r;
}

inline Int gcd(Int a, Int b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

/// Extended Euclid on non-negative inputs: returns (g, s, t) with s*a + t*b = g.
/// When a divides b the trivial combination (s, t) = (1, 0) is returned.
struct Bezout {
  Int g, s, t;
};

inline Bezout bezout(Int a, Int b) {
  if (a != 0 && b % a == 0) return {a, 1, 0};
  Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
  }
  return {old_r, old_s, old_t};
}

inline std::vector<Int> divisors(Int d) {
  std::vector<Int> out;
  for (Int i = 1; i * i <= d; ++i) {
    if (d % i == 0) {
      out.push_back(i);
      if (i != d / i) out.push_back(d / i);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Prime factorisation as (prime, exponent) pairs in increasing prime order.
inline std::vector<std::pair<Int, int>> factorize(Int d) {
  std::vector<std::pair<Int, int>> out;
  for (Int p = 2; p * p <= d; ++p) {
    if (d % p != 0) continue;
    int e = 0;
    while (d % p == 0) {
      d /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (d > 1) out.emplace_back(d, 1);
  return out;
}

/// Multiplicative inverse of x modulo d, if x is a unit.
inline std::optional<Int> inverse_mod(Int x, Int d) {
  if (d == 1) return 0;
  auto [g, s, t] = bezout(mod(x, d), d);
  (void)t;
  if (g != 1) return std::nullopt;
  return mod(s, d);
}

inline bool is_unit(Int x, Int d) { return gcd(mod(x, d), d) == 1; }

/// Unit w with w * x == gcd(x, d) (mod d). Requires x != 0 mod d.
inline Int normalizing_unit(Int x, Int d) {
  x = mod(x, d);
  Int g = gcd(x, d);
  Int dp = d / g;
  Int w0 = dp == 1 ? 0 : *inverse_mod(x / g, dp);
  for (Int w = w0;; w += dp) {
    if (gcd(w, d) == 1) return mod(w, d);
  }
}

/// Order of a vector in Z_d^m.
inline Int vector_order(const Vec& v, Int d) {
  Int g = d;
  for (Int x : v) g = gcd(g, mod(x, d));
  return d / g;
}

inline Vec reduce(Vec v, Int d) {
  for (auto& x : v) x = mod(x, d);
  return v;
}

inline Vec add(const Vec& a, const Vec& b, Int d) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = mod(a[i] + b[i], d);
  return out;
}

inline Vec scale(const Vec& a, Int k, Int d) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = mod((k % d) * a[i], d);
  return out;
}

inline Int dot(const Vec& a, const Vec& b, Int d) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = mod(s + mod(a[i], d) * mod(b[i], d), d);
  return s;
}

inline bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Int x) { return x == 0; });
}

inline std::string to_string(const BigCount& n) { return n.str(); }

inline BigCount big_pow(Int base, std::size_t exp) {
  BigCount out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= base;
  return out;
}

/// Dense matrix with entries kept canonically in [0, d).
class ZdMatrix {
 public:
  ZdMatrix(Int modulus, std::size_t rows, std::size_t cols)
      : d_(modulus), rows_(rows), cols_(cols), data_(rows * cols, 0) {
    if (modulus < 1) throw Error(ErrorKind::DimensionMismatch, "modulus must be >= 1");
  }

  static ZdMatrix identity(Int modulus, std::size_t n) {
    ZdMatrix m(modulus, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  static ZdMatrix from_rows(Int modulus, const std::vector<Vec>& rows, std::size_t cols) {
    ZdMatrix m(modulus, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw Error(ErrorKind::DimensionMismatch, "ragged row");
      for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
  }

  Int modulus() const { return d_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Int v) { data_[r * cols_ + c] = mod(v, d_); }

  Vec row(std::size_t r) const {
    return Vec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
               data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }
  Vec col(std::size_t c) const {
    Vec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }
  std::vector<Vec> row_list() const {
    std::vector<Vec> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
    return out;
  }

  ZdMatrix transpose() const {
    ZdMatrix t(d_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, (*this)(r, c));
    return t;
  }

  /// A x for a column vector x.
  Vec apply(const Vec& x) const {
    if (x.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "apply: length mismatch");
    Vec out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
      Int s = 0;
      for (std::size_t c = 0; c < cols_; ++c) s = mod(s + (*this)(r, c) * mod(x[c], d_), d_);
      out[r] = s;
    }
    return out;
  }

  /// x A for a row vector x.
  Vec apply_left(const Vec& x) const {
    if (x.size() != rows_) throw Error(ErrorKind::DimensionMismatch, "apply_left: length mismatch");
    Vec out(cols_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
      Int xr = mod(x[r], d_);
      if (xr == 0) continue;
      for (std::size_t c = 0; c < cols_; ++c) out[c] = mod(out[c] + xr * (*this)(r, c), d_);
    }
    return out;
  }

  friend ZdMatrix operator*(const ZdMatrix& a, const ZdMatrix& b) {
    if (a.cols_ != b.rows_ || a.d_ != b.d_)
      throw Error(ErrorKind::DimensionMismatch, "matrix product shape/modulus mismatch");
    ZdMatrix out(a.d_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        Int x = a(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          out.data_[i * out.cols_ + j] = mod(out.data_[i * out.cols_ + j] + x * b(k, j), a.d_);
      }
    return out;
  }

  friend bool operator==(const ZdMatrix& a, const ZdMatrix& b) {
    return a.d_ == b.d_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  // Elementary operations used by the Smith reduction.
  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap(data_[i * cols_ + c], data_[j * cols_ + c]);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap(data_[r * cols_ + i], data_[r * cols_ + j]);
  }
  /// [row_i; row_j] <- [[p, q], [r, s]] [row_i; row_j]
  void combine_rows(std::size_t i, std::size_t j, Int p, Int q, Int r, Int s) {
    p = mod(p, d_), q = mod(q, d_), r = mod(r, d_), s = mod(s, d_);
    for (std::size_t c = 0; c < cols_; ++c) {
      Int a = data_[i * cols_ + c], b = data_[j * cols_ + c];
      data_[i * cols_ + c] = mod(p * a + q * b, d_);
      data_[j * cols_ + c] = mod(r * a + s * b, d_);
    }
  }
  /// [col_i, col_j] <- [col_i, col_j] [[p, q], [r, s]]
  void combine_cols(std::size_t i, std::size_t j, Int p, Int q, Int r, Int s) {
    p = mod(p, d_), q = mod(q, d_), r = mod(r, d_), s = mod(s, d_);
    for (std::size_t k = 0; k < rows_; ++k) {
      Int a = data_[k * cols_ + i], b = data_[k * cols_ + j];
      data_[k * cols_ + i] = mod(p * a + r * b, d_);
      data_[k * cols_ + j] = mod(q * a + s * b, d_);
    }
  }
  void scale_row(std::size_t i, Int w) {
    for (std::size_t c = 0; c < cols_; ++c) data_[i * cols_ + c] = mod(w * data_[i * cols_ + c], d_);
  }

 private:
  Int d_;
  std::size_t rows_, cols_;
  std::vector<Int> data_;
};

/// U * A * V = diag(diag) with U, V invertible over Z_d. Each diagonal entry
/// is a positive divisor of d, d standing for a zero entry, and
/// diag[0] | diag[1] | ... . `V_inv` is tracked alongside V.
struct SmithForm {
  ZdMatrix U;
  ZdMatrix V;
  ZdMatrix V_inv;
  Vec diag;  // length min(rows, cols)
};

inline SmithForm smith_normal_form(const ZdMatrix& A) {
  const Int d = A.modulus();
  const std::size_t r = A.rows(), c = A.cols(), k = std::min(r, c);
  ZdMatrix W = A;
  ZdMatrix U = ZdMatrix::identity(d, r);
  ZdMatrix V = ZdMatrix::identity(d, c);
  ZdMatrix Vi = ZdMatrix::identity(d, c);

  // Column op [col_i, col_j] <- [col_i, col_j] E with det(E) = 1, mirrored on V and V^{-1}.
  auto col_op = [&](std::size_t i, std::size_t j, Int p, Int q, Int rr, Int s) {
    W.combine_cols(i, j, p, q, rr, s);
    V.combine_cols(i, j, p, q, rr, s);
    Vi.combine_rows(i, j, s, -q, -rr, p);
  };
  auto row_op = [&](std::size_t i, std::size_t j, Int p, Int q, Int rr, Int s) {
    W.combine_rows(i, j, p, q, rr, s);
    U.combine_rows(i, j, p, q, rr, s);
  };

  std::size_t t = 0;
  for (; t < k; ++t) {
    // Pivot: smallest nonzero entry, lowest (row, col) on ties.
    std::size_t pr = r, pc = c;
    Int best = 0;
    for (std::size_t i = t; i < r; ++i)
      for (std::size_t j = t; j < c; ++j) {
        Int v = W(i, j);
        if (v != 0 && (best == 0 || v < best)) best = v, pr = i, pc = j;
      }
    if (best == 0) break;
    W.swap_rows(t, pr);
    U.swap_rows(t, pr);
    W.swap_cols(t, pc);
    V.swap_cols(t, pc);
    Vi.swap_rows(t, pc);

    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (std::size_t i = t + 1; i < r; ++i) {
        Int b = W(i, t);
        if (b == 0) continue;
        Int a = W(t, t);
        auto [g, s, u] = bezout(a, b);
        row_op(t, i, s, u, -(b / g), a / g);
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        Int b = W(t, j);
        if (b == 0) continue;
        Int a = W(t, t);
        auto [g, s, u] = bezout(a, b);
        col_op(t, j, s, -(b / g), u, a / g);
      }
      for (std::size_t i = t + 1; i < r && !dirty; ++i) dirty = W(i, t) != 0;
    }
    // The pivot can only vanish mod d if every entry of the block was zero.
    if (W(t, t) == 0) break;
    Int w = normalizing_unit(W(t, t), d);
    W.scale_row(t, w);
    U.scale_row(t, w);
  }

  Vec diag(k, d);
  for (std::size_t i = 0; i < k; ++i) diag[i] = W(i, i) == 0 ? d : W(i, i);

  // Enforce the divisor chain: (a, b) -> (gcd, lcm) with unimodular moves.
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      Int a = diag[i], b = diag[j];
      if (b % a == 0) continue;
      auto [g, s, u] = bezout(a, b);
      Int l = a / g * b;
      // row_i += row_j : row i becomes (a, b)
      row_op(i, j, 1, 1, 0, 1);
      // columns: (a, b) -> (g, 0); row j (0, b) -> (u b, a b / g)
      col_op(i, j, s, -(b / g), u, a / g);
      // row_j -= (u b / g) row_i
      row_op(i, j, 1, 0, -(u * (b / g)), 1);
      diag[i] = g;
      diag[j] = l;
    }
  return SmithForm{std::move(U), std::move(V), std::move(Vi), std::move(diag)};
}

/// Some x with A x = b (mod d), or nullopt when no solution exists.
inline std::optional<Vec> solve_linear(const ZdMatrix& A, const SmithForm& snf, const Vec& b) {
  const Int d = A.modulus();
  if (b.size() != A.rows()) throw Error(ErrorKind::DimensionMismatch, "solve_linear: rhs length");
  Vec ub = snf.U.apply(b);
  const std::size_t k = snf.diag.size();
  Vec y(A.cols(), 0);
  for (std::size_t i = 0; i < ub.size(); ++i) {
    if (i < k) {
      Int g = snf.diag[i];
      if (g == d) {
        if (ub[i] != 0) return std::nullopt;
      } else {
        if (ub[i] % g != 0) return std::nullopt;
        y[i] = ub[i] / g;
      }
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return snf.V.apply(y);
}

inline std::optional<Vec> solve_linear(const ZdMatrix& A, const Vec& b) {
  return solve_linear(A, smith_normal_form(A), b);
}

/// Generators of {x : A x = 0}.
inline std::vector<Vec> kernel(const ZdMatrix& A) {
  const Int d = A.modulus();
  SmithForm snf = smith_normal_form(A);
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < A.cols(); ++i) {
    Int mult = 1;
    if (i < snf.diag.size()) {
      Int g = snf.diag[i];
      mult = g == d ? 1 : d / g;
      if (mult == d) continue;
    }
    Vec col = snf.V.col(i);
    gens.push_back(scale(col, mult, d));
  }
  return gens;
}

/// A^{-1} for a square matrix invertible over Z_d.
inline std::optional<ZdMatrix> inverse(const ZdMatrix& A) {
  if (A.rows() != A.cols()) throw Error(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
  SmithForm snf = smith_normal_form(A);
  for (Int g : snf.diag)
    if (g != 1 && A.modulus() != 1) return std::nullopt;
  return snf.V * snf.U;
}

/// A linear form m -> sum coeff_i m_i on Z_d^m.
struct LinearForm {
  Int modulus;
  Vec coefficients;

  Int operator()(const Vec& m) const { return dot(coefficients, m, modulus); }
};

/// Finitely generated submodule of Z_d^m. The Smith form of the generator
/// matrix (rows = generators) is computed once at construction.
class Submodule {
 public:
  Submodule(Int modulus, std::size_t ambient_rank, std::vector<Vec> generators)
      : d_(modulus),
        m_(ambient_rank),
        gens_(std::move(generators)),
        G_(ZdMatrix::from_rows(modulus, gens_, ambient_rank)),
        snf_(smith_normal_form(G_)) {
    for (auto& g : gens_) g = reduce(g, d_);
    diag_.assign(m_, d_);
    for (std::size_t i = 0; i < snf_.diag.size(); ++i) diag_[i] = snf_.diag[i];
  }

  static Submodule zero(Int modulus, std::size_t m) { return Submodule(modulus, m, {}); }
  static Submodule whole(Int modulus, std::size_t m) {
    return Submodule(modulus, m, ZdMatrix::identity(modulus, m).row_list());
  }

  Int modulus() const { return d_; }
  std::size_t ambient_rank() const { return m_; }
  const std::vector<Vec>& generators() const { return gens_; }
  const ZdMatrix& generator_matrix() const { return G_; }
  const SmithForm& smith() const { return snf_; }
  /// Smith divisors padded with d to the ambient rank.
  const Vec& smith_divisors() const { return diag_; }

  /// The unique chain 1 < d_1 | ... | d_t | d with N = (+) Z_{d_r}.
  Vec invariant_factors() const {
    Vec out;
    for (Int a : diag_)
      if (a != d_) out.push_back(d_ / a);
    std::reverse(out.begin(), out.end());
    return out;
  }

  BigCount cardinality() const {
    BigCount n = 1;
    for (Int a : diag_) n *= d_ / a;
    return n;
  }

  bool is_free() const {
    return std::all_of(diag_.begin(), diag_.end(), [&](Int a) { return a == 1 || a == d_; });
  }
  std::size_t free_rank() const {
    return static_cast<std::size_t>(std::count(diag_.begin(), diag_.end(), Int{1}));
  }

  /// Quasi-basis from the Smith form: vectors a_i e_i with orders d / a_i,
  /// largest order first.
  std::vector<std::pair<Vec, Int>> smith_basis() const {
    std::vector<std::pair<Vec, Int>> out;
    for (std::size_t i = 0; i < m_; ++i) {
      if (diag_[i] == d_) continue;
      out.emplace_back(scale(snf_.V_inv.row(i), diag_[i], d_), d_ / diag_[i]);
    }
    return out;
  }

  /// Coefficients lambda with sum lambda_j g_j = v, if v lies in the span.
  std::optional<Vec> coefficients(const Vec& v) const {
    if (v.size() != m_) throw Error(ErrorKind::DimensionMismatch, "coefficients: vector length");
    // U G V = D  =>  G^T = V^{-T} D^T U^{-T}; solve D^T y = V^T v, lambda = U^T y.
    const std::size_t k = gens_.size();
    Vec w = snf_.V.transpose().apply(v);
    Vec y(k, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (i < k) {
        Int g = diag_[i];
        if (g == d_) {
          if (w[i] != 0) return std::nullopt;
        } else {
          if (w[i] % g != 0) return std::nullopt;
          y[i] = w[i] / g;
        }
      } else if (w[i] != 0) {
        return std::nullopt;
      }
    }
    return snf_.U.transpose().apply(y);
  }

  bool contains(const Vec& v) const { return coefficients(v).has_value(); }

  bool contains(const Submodule& other) const {
    return std::all_of(other.gens_.begin(), other.gens_.end(),
                       [&](const Vec& g) { return contains(g); });
  }

  friend bool operator==(const Submodule& a, const Submodule& b) {
    return a.d_ == b.d_ && a.m_ == b.m_ && a.contains(b) && b.contains(a);
  }

  /// Least t | d with t v in this submodule.
  Int order_modulo(const Vec& v) const {
    for (Int t : divisors(d_))
      if (contains(scale(v, t, d_))) return t;
    return d_;
  }

  /// Same submodule re-generated by its Smith quasi-basis (at most m generators).
  Submodule canonical() const {
    std::vector<Vec> g;
    for (auto& [v, ord] : smith_basis()) g.push_back(v);
    return Submodule(d_, m_, std::move(g));
  }

 private:
  Int d_;
  std::size_t m_;
  std::vector<Vec> gens_;
  ZdMatrix G_;
  SmithForm snf_;
  Vec diag_;
};

inline Submodule sum(const Submodule& a, const Submodule& b) {
  std::vector<Vec> g = a.generators();
  g.insert(g.end(), b.generators().begin(), b.generators().end());
  return Submodule(a.modulus(), a.ambient_rank(), std::move(g)).canonical();
}

/// N1 ∩ N2 from the joint system sum lambda_i g_i = sum mu_j h_j.
inline Submodule intersect(const Submodule& a, const Submodule& b) {
  const Int d = a.modulus();
  const std::size_t m = a.ambient_rank();
  const auto& ga = a.generators();
  const auto& gb = b.generators();
  if (ga.empty() || gb.empty()) return Submodule::zero(d, m);
  ZdMatrix C(d, m, ga.size() + gb.size());
  for (std::size_t j = 0; j < ga.size(); ++j)
    for (std::size_t i = 0; i < m; ++i) C.set(i, j, ga[j][i]);
  for (std::size_t j = 0; j < gb.size(); ++j)
    for (std::size_t i = 0; i < m; ++i) C.set(i, ga.size() + j, -gb[j][i]);
  std::vector<Vec> out;
  for (const Vec& k : kernel(C)) {
    Vec v(m, 0);
    for (std::size_t j = 0; j < ga.size(); ++j) v = add(v, scale(ga[j], k[j], d), d);
    if (!is_zero(v)) out.push_back(std::move(v));
  }
  return Submodule(d, m, std::move(out)).canonical();
}

/// Extends a form prescribed on the generators of N (values[j] = f(g_j)) to
/// all of Z_d^m. Throws InconsistentValues if the values violate a relation.
inline LinearForm extend_linear_form(const Submodule& N, const Vec& values) {
  if (values.size() != N.generators().size())
    throw Error(ErrorKind::DimensionMismatch, "one value per generator required");
  auto c = solve_linear(N.generator_matrix(), N.smith(), reduce(values, N.modulus()));
  if (!c) throw Error(ErrorKind::InconsistentValues, "prescribed values do not define a form on N");
  return LinearForm{N.modulus(), std::move(*c)};
}

/// Completes a basis of a free submodule N to a basis of Z_d^m.
inline std::vector<Vec> complete_free_basis(const Submodule& N, const std::vector<Vec>& basis_of_N) {
  const Int d = N.modulus();
  const std::size_t m = N.ambient_rank();
  if (!N.is_free()) throw Error(ErrorKind::NotFree, "submodule has an invariant factor below d");
  Submodule B(d, m, basis_of_N);
  if (basis_of_N.size() != N.free_rank() || !(B == N))
    throw Error(ErrorKind::NotFree, "given vectors are not a basis of N");
  std::vector<Vec> out;
  for (const Vec& v : basis_of_N) out.push_back(reduce(v, d));
  for (std::size_t i = basis_of_N.size(); i < m; ++i) out.push_back(B.smith().V_inv.row(i));
  return out;
}

}  // namespace qstab
