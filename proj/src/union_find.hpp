#pragma once

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

namespace hsp::detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1), sets_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --sets_;
    return true;
  }

  std::size_t num_sets() const noexcept { return sets_; }

  /// Labels 0..k-1 in order of first appearance.
  std::vector<std::size_t> labels() {
    std::vector<std::size_t> root_label(parent_.size(), SIZE_MAX);
    std::vector<std::size_t> out(parent_.size());
    std::size_t next = 0;
    for (std::size_t v = 0; v < parent_.size(); ++v) {
      const std::size_t r = find(v);
      if (root_label[r] == SIZE_MAX) root_label[r] = next++;
      out[v] = root_label[r];
    }
    return out;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::size_t sets_;
};

}  // namespace hsp::detail
