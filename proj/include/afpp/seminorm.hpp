#pragma once

#include <stdexcept>
#include <variant>
#include <vector>

#include "afpp/functional.hpp"
#include "afpp/sparse_point.hpp"

namespace afpp {

// Seminorm family kinds. All three are increasing in the level, which is
// what makes the family generate a metrizable locally convex topology model.
struct Ell1Prefix {};

struct SupPrefix {
  // Per-index positive weights; indices past the end reuse the last weight.
  std::vector<double> weights = {1.0};
};

struct FunctionalSup {
  // Batch k of functionals enters at level k; level n takes the sup over
  // the union of batches 1..n.
  std::vector<std::vector<Functional>> batches;
};

using SeminormKind = std::variant<Ell1Prefix, SupPrefix, FunctionalSup>;

/// Increasing family (p_1 <= p_2 <= ... <= p_levels) of seminorms.
class SeminormFamily {
 public:
  SeminormFamily(SeminormKind kind, int levels)
      : kind_(std::move(kind)), levels_(levels) {
    if (levels_ < 1)
      throw std::invalid_argument("SeminormFamily: levels must be >= 1");
    if (const auto* s = std::get_if<SupPrefix>(&kind_)) {
      if (s->weights.empty())
        throw std::invalid_argument("SeminormFamily: empty weight list");
      for (double w : s->weights)
        if (w <= 0.0)
          throw std::invalid_argument("SeminormFamily: weights must be > 0");
    }
    if (const auto* f = std::get_if<FunctionalSup>(&kind_)) {
      if (static_cast<int>(f->batches.size()) < levels_)
        throw std::invalid_argument(
            "SeminormFamily: needs one functional batch per level");
    }
  }

  static SeminormFamily ell1_prefix(int levels) {
    return SeminormFamily(Ell1Prefix{}, levels);
  }

  static SeminormFamily sup_prefix(std::vector<double> weights, int levels) {
    return SeminormFamily(SupPrefix{std::move(weights)}, levels);
  }

  static SeminormFamily functional_sup(
      std::vector<std::vector<Functional>> batches) {
    const int levels = static_cast<int>(batches.size());
    return SeminormFamily(FunctionalSup{std::move(batches)}, levels);
  }

  int levels() const { return levels_; }
  const SeminormKind& kind() const { return kind_; }

  double eval(int level, const SparsePoint& x) const {
    if (level < 1 || level > levels_)
      throw std::out_of_range("SeminormFamily: level out of range");
    if (std::holds_alternative<Ell1Prefix>(kind_)) {
      double s = 0.0;
      for (const auto& [i, v] : x.entries())
        if (i <= level) s += std::abs(v);
      return s;
    }
    if (const auto* sp = std::get_if<SupPrefix>(&kind_)) {
      double s = 0.0;
      for (const auto& [i, v] : x.entries()) {
        if (i > level) continue;
        const size_t wi = std::min<size_t>(i - 1, sp->weights.size() - 1);
        s = std::max(s, sp->weights[wi] * std::abs(v));
      }
      return s;
    }
    const auto& fs = std::get<FunctionalSup>(kind_);
    double s = 0.0;
    for (int k = 0; k < level; ++k)
      for (const auto& f : fs.batches[k]) s = std::max(s, std::abs(pair(f, x)));
    return s;
  }

 private:
  SeminormKind kind_;
  int levels_;
};

inline double seminorm_eval(const SeminormFamily& family, int level,
                            const SparsePoint& x) {
  return family.eval(level, x);
}

}  // namespace afpp
