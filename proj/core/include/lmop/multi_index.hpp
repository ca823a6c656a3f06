#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "lmop/error.hpp"

namespace lmop {

/// Multi-index n = (n_1, ..., n_r) of nonnegative orthogonality orders.
struct MultiIndex {
  std::vector<int> parts;

  MultiIndex() = default;
  MultiIndex(std::initializer_list<int> init) : parts(init) { validate(); }
  explicit MultiIndex(std::vector<int> p) : parts(std::move(p)) { validate(); }

  static MultiIndex zero(int r) { return MultiIndex(std::vector<int>(r, 0)); }

  int r() const { return static_cast<int>(parts.size()); }
  int operator[](int j) const { return parts[j]; }
  int total() const { return std::accumulate(parts.begin(), parts.end(), 0); }
  bool is_zero() const { return total() == 0; }
  bool all_even() const {
    for (int p : parts)
      if (p % 2 != 0) return false;
    return true;
  }

  MultiIndex shifted(int j, int delta) const {
    MultiIndex out = *this;
    out.parts[j] += delta;
    if (out.parts[j] < 0) fail(Errc::Unsupported, "multi-index component below zero");
    return out;
  }

  MultiIndex doubled() const {
    MultiIndex out = *this;
    for (int& p : out.parts) p *= 2;
    return out;
  }

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

  std::string str() const {
    std::string s = "(";
    for (int j = 0; j < r(); ++j) s += (j ? "," : "") + std::to_string(parts[j]);
    return s + ")";
  }

 private:
  void validate() const {
    for (int p : parts)
      if (p < 0) fail(Errc::Unsupported, "multi-index components must be nonnegative");
  }
};

/// All indices with given length and |n| <= max_total, in lexicographic order.
std::vector<MultiIndex> indices_up_to(int r, int max_total);

}  // namespace lmop
