#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "afpp/sparse_point.hpp"

namespace afpp {

// Tail descriptors let a functional with finite head act on all indices
// beyond the head, so bounded sequences like (1,1,1,...) or alternating
// signs pair exactly against finitely supported points.
struct TailZero {};

struct TailConstant {
  double value = 0.0;
};

struct TailPeriodic {
  std::vector<int> pattern;  // entries in {-1, +1}
  double scale = 1.0;
};

using Tail = std::variant<TailZero, TailConstant, TailPeriodic>;

/// Element of the dual pairing class: a finite head map plus a tail rule
/// applying to every index beyond the head's maximum index.
class Functional {
 public:
  Functional() : tail_(TailZero{}) {}

  Functional(std::map<int, double> head, Tail tail)
      : head_(std::move(head)), tail_(std::move(tail)) {
    for (auto it = head_.begin(); it != head_.end();) {
      if (it->first < 1 || it->first > kIndexCap)
        throw std::out_of_range("Functional: head index out of range");
      if (it->second == 0.0)
        it = head_.erase(it);
      else
        ++it;
    }
    if (const auto* p = std::get_if<TailPeriodic>(&tail_)) {
      if (p->pattern.empty())
        throw std::invalid_argument("Functional: empty periodic pattern");
      for (int s : p->pattern)
        if (s != 1 && s != -1)
          throw std::invalid_argument(
              "Functional: periodic pattern entries must be +1 or -1");
    }
  }

  static Functional coordinate(int index) {
    return Functional({{index, 1.0}}, TailZero{});
  }

  static Functional all_ones() { return Functional({}, TailConstant{1.0}); }

  static Functional constant_tail(double value) {
    return Functional({}, TailConstant{value});
  }

  static Functional periodic(std::vector<int> pattern, double scale = 1.0) {
    return Functional({}, TailPeriodic{std::move(pattern), scale});
  }

  const std::map<int, double>& head() const { return head_; }
  const Tail& tail() const { return tail_; }

  int head_max_index() const {
    return head_.empty() ? 0 : head_.rbegin()->first;
  }

  /// Coefficient at a coordinate: head value if present, tail rule beyond
  /// the head's max index, zero in between.
  double coefficient(int index) const {
    auto it = head_.find(index);
    if (it != head_.end()) return it->second;
    if (index <= head_max_index()) return 0.0;
    const int offset = index - head_max_index() - 1;
    if (std::holds_alternative<TailZero>(tail_)) return 0.0;
    if (const auto* c = std::get_if<TailConstant>(&tail_)) return c->value;
    const auto& p = std::get<TailPeriodic>(tail_);
    return p.scale * p.pattern[offset % p.pattern.size()];
  }

  double sup_norm() const {
    double s = tail_magnitude();
    for (const auto& [i, v] : head_) s = std::max(s, std::abs(v));
    return s;
  }

  double tail_magnitude() const {
    if (std::holds_alternative<TailZero>(tail_)) return 0.0;
    if (const auto* c = std::get_if<TailConstant>(&tail_))
      return std::abs(c->value);
    return std::abs(std::get<TailPeriodic>(tail_).scale);
  }

  friend bool operator==(const Functional& a, const Functional& b) {
    if (a.head_ != b.head_) return false;
    if (a.tail_.index() != b.tail_.index()) return false;
    if (const auto* c = std::get_if<TailConstant>(&a.tail_))
      return c->value == std::get<TailConstant>(b.tail_).value;
    if (const auto* p = std::get_if<TailPeriodic>(&a.tail_)) {
      const auto& q = std::get<TailPeriodic>(b.tail_);
      return p->pattern == q.pattern && p->scale == q.scale;
    }
    return true;
  }

 private:
  std::map<int, double> head_;
  Tail tail_;
};

/// Exact dual pairing <x*, x>: a finite sum over the point's support.
inline double pair(const Functional& f, const SparsePoint& x) {
  double s = 0.0;
  for (const auto& [i, v] : x.entries()) s += f.coefficient(i) * v;
  return s;
}

/// The evaluation map x |-> (x_1*(x), ..., x_n*(x)).
inline std::vector<double> phi_map(std::span<const Functional> functionals,
                                   const SparsePoint& x) {
  if (functionals.empty())
    throw std::invalid_argument("phi_map: functional list must be nonempty");
  std::vector<double> out;
  out.reserve(functionals.size());
  for (const auto& f : functionals) out.push_back(pair(f, x));
  return out;
}

}  // namespace afpp
