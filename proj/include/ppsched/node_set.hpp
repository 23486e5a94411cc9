// Copyright 2026 The ppsched Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace ppsched {

/// Fixed-capacity bitset over dense node ids. All binary operations require
/// both operands to share the same capacity.
class NodeSet {
 public:
  static constexpr int npos = -1;

  NodeSet() = default;
  explicit NodeSet(int capacity)
      : capacity_(capacity), words_((capacity + 63) / 64, 0) {}

  static NodeSet full(int capacity) {
    NodeSet s(capacity);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    s.trim();
    return s;
  }

  int capacity() const { return capacity_; }

  bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(int i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  int first() const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k]) return static_cast<int>(k * 64) + std::countr_zero(words_[k]);
    return npos;
  }

  /// Smallest member strictly greater than i, or npos.
  int next(int i) const {
    ++i;
    if (i >= capacity_) return npos;
    std::size_t k = static_cast<std::size_t>(i >> 6);
    std::uint64_t w = words_[k] & (~std::uint64_t{0} << (i & 63));
    while (true) {
      if (w) return static_cast<int>(k * 64) + std::countr_zero(w);
      if (++k == words_.size()) return npos;
      w = words_[k];
    }
  }

  NodeSet& operator&=(const NodeSet& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  NodeSet& operator|=(const NodeSet& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  /// Removes every member of o.
  NodeSet& subtract(const NodeSet& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
    return *this;
  }

  bool intersects(const NodeSet& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & o.words_[k]) return true;
    return false;
  }

  int intersection_count(const NodeSet& o) const {
    int c = 0;
    for (std::size_t k = 0; k < words_.size(); ++k) c += std::popcount(words_[k] & o.words_[k]);
    return c;
  }

  friend NodeSet operator&(NodeSet a, const NodeSet& b) { return a &= b; }

  friend bool operator==(const NodeSet&, const NodeSet&) = default;

  std::vector<int> to_vector() const {
    std::vector<int> out;
    for (int i = first(); i != npos; i = next(i)) out.push_back(i);
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w) {
        f(static_cast<int>(k * 64) + std::countr_zero(w));
        w &= w - 1;
      }
    }
  }

 private:
  void trim() {
    if (capacity_ % 64 && !words_.empty())
      words_.back() &= (std::uint64_t{1} << (capacity_ % 64)) - 1;
  }

  int capacity_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace ppsched
