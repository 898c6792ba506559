#pragma once

#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace afpp {

// Hard ceiling on coordinate indices. Exceeding it is an error, never a
// silent truncation.
inline constexpr int kIndexCap = 10'000;

/// Finitely supported real sequence, indices 1-based. Entries with value
/// exactly zero are never stored.
class SparsePoint {
 public:
  SparsePoint() = default;

  static SparsePoint basis(int index) {
    SparsePoint p;
    p.set(index, 1.0);
    return p;
  }

  static SparsePoint from_entries(
      const std::vector<std::pair<int, double>>& entries) {
    SparsePoint p;
    for (const auto& [i, v] : entries) p.set(i, p.at(i) + v);
    return p;
  }

  /// Assigns the coordinate; a zero value erases the entry.
  void set(int index, double value) {
    check_index(index);
    if (value == 0.0) {
      entries_.erase(index);
    } else {
      entries_[index] = value;
    }
  }

  double at(int index) const {
    auto it = entries_.find(index);
    return it == entries_.end() ? 0.0 : it->second;
  }

  const std::map<int, double>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }
  int support_size() const { return static_cast<int>(entries_.size()); }

  int max_index() const {
    return entries_.empty() ? 0 : entries_.rbegin()->first;
  }

  double l1_norm() const {
    double s = 0.0;
    for (const auto& [i, v] : entries_) s += std::abs(v);
    return s;
  }

  double sup_norm() const {
    double s = 0.0;
    for (const auto& [i, v] : entries_) s = std::max(s, std::abs(v));
    return s;
  }

  /// Sum of coordinates (not absolute values); the all-ones pairing.
  double coordinate_sum() const {
    double s = 0.0;
    for (const auto& [i, v] : entries_) s += v;
    return s;
  }

  SparsePoint& add_scaled(const SparsePoint& other, double factor) {
    if (factor == 0.0) return *this;
    for (const auto& [i, v] : other.entries_) set(i, at(i) + factor * v);
    return *this;
  }

  SparsePoint scaled(double factor) const {
    SparsePoint p;
    if (factor == 0.0) return p;
    for (const auto& [i, v] : entries_) p.entries_[i] = factor * v;
    return p;
  }

  friend SparsePoint operator+(const SparsePoint& a, const SparsePoint& b) {
    SparsePoint p = a;
    p.add_scaled(b, 1.0);
    return p;
  }

  friend SparsePoint operator-(const SparsePoint& a, const SparsePoint& b) {
    SparsePoint p = a;
    p.add_scaled(b, -1.0);
    return p;
  }

  friend bool operator==(const SparsePoint& a, const SparsePoint& b) {
    return a.entries_ == b.entries_;
  }

 private:
  static void check_index(int index) {
    if (index < 1)
      throw std::out_of_range("SparsePoint: index must be positive, got " +
                              std::to_string(index));
    if (index > kIndexCap)
      throw std::out_of_range("SparsePoint: index " + std::to_string(index) +
                              " exceeds dimension cap " +
                              std::to_string(kIndexCap));
  }

  std::map<int, double> entries_;
};

inline double l1_distance(const SparsePoint& a, const SparsePoint& b) {
  return (a - b).l1_norm();
}

}  // namespace afpp
