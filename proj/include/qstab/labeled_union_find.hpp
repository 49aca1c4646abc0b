#pragma once

// Union-find whose elements carry a label in Z_D x Z_d^k relative to their
// parent. Label (theta, w) on x means g^w v_parent = zeta^theta v_x, where
// g^w is a word in k commuting generators. Labels add along paths.

#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include "qstab/zmod.hpp"

namespace qstab {

class LabeledUnionFind {
 public:
  /// A closing relation at a root: g^w v_root = zeta^delta v_root.
  struct Relation {
    Vec w;
    Int delta;
  };

  LabeledUnionFind(std::size_t size, Int D, Int d, std::size_t k)
      : D_(D), d_(d), k_(k), parent_(size), size_(size, 1), theta_(size, 0), w_(size * k, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t size() const { return parent_.size(); }
  std::size_t word_length() const { return k_; }

  /// Root of x; afterwards x's label is relative to the root.
  std::size_t find(std::size_t x) {
    std::size_t r = x;
    while (parent_[r] != r) r = parent_[r];
    // second pass: collect path, then fold labels from the top down
    path_.clear();
    for (std::size_t y = x; parent_[y] != y; y = parent_[y]) path_.push_back(y);
    for (std::size_t i = path_.size(); i-- > 0;) {
      std::size_t y = path_[i], p = parent_[y];
      if (p != r) {
        theta_[y] = mod(theta_[y] + theta_[p], D_);
        for (std::size_t j = 0; j < k_; ++j) w_[y * k_ + j] = mod(w_[y * k_ + j] + w_[p * k_ + j], d_);
      }
      parent_[y] = r;
    }
    return r;
  }

  Int theta(std::size_t x) {
    find(x);
    return theta_[x];
  }
  Vec word(std::size_t x) {
    find(x);
    return Vec(w_.begin() + static_cast<std::ptrdiff_t>(x * k_), w_.begin() + static_cast<std::ptrdiff_t>((x + 1) * k_));
  }

  /// Records generator j acting as h_j v_s = zeta^phase v_t. Returns the
  /// closing relation when s and t were already connected.
  std::optional<Relation> link(std::size_t s, std::size_t t, std::size_t j, Int phase) {
    std::size_t rs = find(s), rt = find(t);
    // g^{W_s + e_j - W_t} v_{rs} = zeta^{Theta_s + phase - Theta_t} v_{rt}
    Vec w(k_);
    for (std::size_t i = 0; i < k_; ++i) w[i] = mod(w_[s * k_ + i] - w_[t * k_ + i] + (i == j ? 1 : 0), d_);
    Int th = mod(theta_[s] + phase - theta_[t], D_);
    if (rs == rt) return Relation{std::move(w), th};
    if (size_[rs] < size_[rt]) {
      // attach rs under rt with the inverse label
      for (auto& x : w) x = mod(-x, d_);
      th = mod(-th, D_);
      std::swap(rs, rt);
    }
    parent_[rt] = rs;
    size_[rs] += size_[rt];
    theta_[rt] = th;
    for (std::size_t i = 0; i < k_; ++i) w_[rt * k_ + i] = w[i];
    return std::nullopt;
  }

 private:
  Int D_, d_;
  std::size_t k_;
  std::vector<std::size_t> parent_, size_;
  std::vector<Int> theta_;
  std::vector<Int> w_;
  std::vector<std::size_t> path_;
};

}  // namespace qstab
