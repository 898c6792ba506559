#include "afpp/enumeration.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace afpp {

namespace {

// Canonical key of a dyadic head: sorted "index:num/den" with each
// fraction fully reduced, so equal functionals from different (b, k)
// passes collide.
std::string canonical_key(const std::vector<long long>& numerators,
                          int exponent) {
  std::ostringstream os;
  for (std::size_t i = 0; i < numerators.size(); ++i) {
    long long num = numerators[i];
    if (num == 0) continue;
    long long den = 1ll << exponent;
    while (num % 2 == 0 && den > 1) {
      num /= 2;
      den /= 2;
    }
    os << (i + 1) << ':' << num << '/' << den << ';';
  }
  return os.str();
}

}  // namespace

const Functional& DyadicEnumeration::at(std::size_t index) {
  while (cache_.size() <= index) grow();
  return cache_[index];
}

bool DyadicEnumeration::advance_odometer() {
  if (!odometer_live_) {
    ++weight_;
    support_ = 1;
    exponent_ = weight_ - 1;
    numerators_.assign(support_, -(1ll << exponent_));
    odometer_live_ = true;
    return true;
  }
  const long long cap = 1ll << exponent_;
  for (int pos = support_ - 1; pos >= 0; --pos) {
    if (numerators_[pos] < cap) {
      ++numerators_[pos];
      for (int t = pos + 1; t < support_; ++t) numerators_[t] = -cap;
      return true;
    }
  }
  // exhausted this (b, k); next pair within the weight, else next weight
  if (support_ < weight_) {
    ++support_;
    exponent_ = weight_ - support_;
  } else {
    ++weight_;
    support_ = 1;
    exponent_ = weight_ - 1;
  }
  numerators_.assign(support_, -(1ll << exponent_));
  return true;
}

void DyadicEnumeration::grow() {
  for (;;) {
    advance_odometer();
    bool all_zero = true;
    for (long long n : numerators_) {
      if (n != 0) {
        all_zero = false;
        break;
      }
    }
    if (all_zero) continue;
    std::string key = canonical_key(numerators_, exponent_);
    if (!seen_.insert(key).second) continue;
    std::map<int, double> head;
    const double den = static_cast<double>(1ll << exponent_);
    for (int i = 0; i < support_; ++i) {
      if (numerators_[i] != 0) {
        head[i + 1] = static_cast<double>(numerators_[i]) / den;
      }
    }
    cache_.emplace_back(std::move(head), TailZero{});
    return;
  }
}

const Functional& CoordinateEnumeration::at(std::size_t index) {
  while (cache_.size() <= index) {
    cache_.push_back(
        Functional::coordinate(static_cast<int>(cache_.size()) + 1));
  }
  return cache_[index];
}

std::unique_ptr<FunctionalEnumeration> make_enumeration(
    const std::string& tag) {
  if (tag == "dyadic") return std::make_unique<DyadicEnumeration>();
  if (tag == "coordinate") return std::make_unique<CoordinateEnumeration>();
  throw std::invalid_argument("unknown enumeration tag: " + tag);
}

}  // namespace afpp
