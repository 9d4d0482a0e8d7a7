#pragma once

#include <cstdint>
#include <vector>

#include "laakso/errors.hpp"
#include "laakso/rational.hpp"

namespace laakso {

/// The branching sequence {j_i} of a Laakso space. A single value means a
/// constant sequence (the common case in the numerical experiments); a list
/// of two or more values is used verbatim and must cover every level asked
/// for.
class JSequence {
 public:
  explicit JSequence(std::vector<int> values) : values_(std::move(values)) {
    if (values_.empty()) throw InvalidJError("JSequence: empty j list");
    for (int v : values_)
      if (v < 2)
        throw InvalidJError("JSequence: every j_i must be >= 2, got " +
                            std::to_string(v));
  }

  static JSequence constant(int j) { return JSequence(std::vector<int>{j}); }

  /// j_i for 1-based level i.
  int j(int i) const {
    if (i < 1) throw InvalidJError("JSequence: level index must be >= 1");
    if (values_.size() == 1) return values_[0];
    if (static_cast<std::size_t>(i) > values_.size())
      throw InvalidJError("JSequence: j_" + std::to_string(i) +
                          " not defined by the given list");
    return values_[static_cast<std::size_t>(i) - 1];
  }

  bool is_constant() const { return values_.size() == 1; }

  const std::vector<int>& values() const { return values_; }

  /// J_n = prod_{i<=n} j_i, with J_0 = 1.
  std::int64_t big_j(int n) const {
    std::int64_t p = 1;
    for (int i = 1; i <= n; ++i) {
      p *= j(i);
      if (p > (std::int64_t{1} << 60))
        throw TooLargeError("JSequence: J_n overflows");
    }
    return p;
  }

  /// d_n = prod_{i<=n} 1/j_i, with d_0 = 1.
  Rational d(int n) const { return Rational(1, big_j(n)); }

  friend bool operator==(const JSequence& a, const JSequence& b) {
    return a.values_ == b.values_;
  }

 private:
  std::vector<int> values_;
};

}  // namespace laakso
