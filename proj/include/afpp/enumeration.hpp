#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "afpp/functional.hpp"

namespace afpp {

/// Deterministic stream of pairing functionals; prefixes feed the
/// diagonal residual schedule.
class FunctionalEnumeration {
 public:
  virtual ~FunctionalEnumeration() = default;
  virtual const Functional& at(std::size_t index) = 0;  // 0-based
  virtual std::string name() const = 0;

  std::vector<Functional> prefix(std::size_t count) {
    std::vector<Functional> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(at(i));
    return out;
  }
};

/// All finitely supported functionals with dyadic coefficients j / 2^k of
/// magnitude <= 1, emitted by increasing weight (support bound + exponent)
/// and deduplicated in reduced form. The stream starts
/// -e1*, e1*, -e1*/2, e1*/2, then the two-index integer patterns.
class DyadicEnumeration : public FunctionalEnumeration {
 public:
  const Functional& at(std::size_t index) override;
  std::string name() const override { return "dyadic"; }

 private:
  void grow();
  bool advance_odometer();

  std::vector<Functional> cache_;
  std::set<std::string> seen_;
  int weight_ = 0;
  int support_ = 1;   // current max support index b
  int exponent_ = 0;  // current dyadic exponent k
  std::vector<long long> numerators_;
  bool odometer_live_ = false;
};

/// Coordinate functionals e1*, e2*, e3*, ...
class CoordinateEnumeration : public FunctionalEnumeration {
 public:
  const Functional& at(std::size_t index) override;
  std::string name() const override { return "coordinate"; }

 private:
  std::vector<Functional> cache_;
};

/// Factory by tag: "dyadic" or "coordinate".
std::unique_ptr<FunctionalEnumeration> make_enumeration(
    const std::string& tag);

}  // namespace afpp
