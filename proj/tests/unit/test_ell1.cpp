#include <doctest.h>

#include <cmath>
#include <vector>

#include "afpp/ell1.hpp"
#include "afpp/errors.hpp"

using namespace afpp;

namespace {

std::vector<SparsePoint> canonical(int n) {
  std::vector<SparsePoint> v;
  for (int i = 1; i <= n; ++i) v.push_back(SparsePoint::basis(i));
  return v;
}

}  // namespace

TEST_CASE("canonical basis under the ambient l1 norm has constant one") {
  auto r = basis_constant(canonical(4), AmbientL1Norm{});
  CHECK(r.value == doctest::Approx(1.0));
  CHECK(r.method == BasisMethod::OrthantExact);
  CHECK(!r.rank_deficient);
}

TEST_CASE("sup norm spreads mass evenly") {
  // min sup over sum |a_i| = 1 puts a quarter on each vector.
  auto r = basis_constant(canonical(4), AmbientSupNorm{});
  CHECK(r.value == doctest::Approx(0.25));
  CHECK(r.orthants.size() == 8);  // first sign fixed to plus
  for (const auto& o : r.orthants) {
    CHECK(o.signs.size() == 4);
    CHECK(o.signs[0] == 1);
    CHECK(o.value >= r.value - 1e-12);
  }
  double l1 = 0.0;
  for (double a : r.argmin) l1 += std::abs(a);
  CHECK(l1 == doctest::Approx(1.0));
}

TEST_CASE("collinear vectors are caught by the kernel shortcut") {
  std::vector<SparsePoint> v = {SparsePoint::basis(1),
                                SparsePoint::basis(1).scaled(0.5),
                                SparsePoint::basis(1).scaled(0.25)};
  auto r = basis_constant(v, AmbientL1Norm{});
  CHECK(r.value == 0.0);
  CHECK(r.rank_deficient);
  // The argmin is an exactly vanishing normalized combination.
  SparsePoint combo;
  double l1 = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    combo.add_scaled(v[i], r.argmin[i]);
    l1 += std::abs(r.argmin[i]);
  }
  CHECK(l1 == doctest::Approx(1.0));
  CHECK(combo.l1_norm() <= 1e-12);
}

TEST_CASE("exact mode matches a hand optimum") {
  // x1 = e1, x2 = (e1 + e2) / 2: the optimum is 1/3 at a = (-1/3, 2/3).
  std::vector<SparsePoint> v = {
      SparsePoint::basis(1),
      SparsePoint::from_entries({{1, 0.5}, {2, 0.5}})};
  auto r = basis_constant(v, AmbientL1Norm{});
  CHECK(r.value == doctest::Approx(1.0 / 3.0));

  auto g = basis_constant_grid(v, AmbientL1Norm{}, 1e-3);
  CHECK(g.method == BasisMethod::GridBruteForce);
  CHECK(std::abs(g.value - r.value) <= 2e-3);
  CHECK(g.value >= r.value - 1e-12);  // grid restricts the feasible set
}

TEST_CASE("family level norms feed the constant") {
  SeminormFamily fam = SeminormFamily::functional_sup(
      {{Functional::coordinate(1)}, {Functional::coordinate(2)}});
  FamilyLevelNorm norm{fam, 2};

  // Level-2 norm is max(|x1|, |x2|): n = 2 gives 1/2.
  auto r2 = basis_constant(canonical(2), norm);
  CHECK(r2.value == doctest::Approx(0.5));
  // n = 3 exceeds the rank of the two functionals: exact zero.
  auto r3 = basis_constant(canonical(3), norm);
  CHECK(r3.value == 0.0);
  CHECK(r3.rank_deficient);
}

TEST_CASE("exact cap throws instead of guessing") {
  CHECK_THROWS_AS(basis_constant(canonical(6), AmbientL1Norm{}, 4),
                  BudgetError);
}

TEST_CASE("profile splits levels into l1-like and decayed") {
  SeminormFamily fam = SeminormFamily::functional_sup(
      {{Functional::coordinate(1)}, {Functional::coordinate(2)}});
  auto prof = ell1_profile(canonical(8), fam, {1, 2, 4, 8}, 0.01);

  REQUIRE(prof.horizons == std::vector<int>{1, 2, 4, 8});
  REQUIRE(prof.constants.size() == 4);
  CHECK(prof.constants[0][0] == doctest::Approx(1.0));
  CHECK(prof.constants[0][1] == doctest::Approx(1.0));
  CHECK(prof.constants[1][1] == doctest::Approx(0.5));
  CHECK(prof.constants[1][0] == doctest::Approx(0.0));
  CHECK(prof.constants[3][1] == doctest::Approx(0.0));
  // Both levels eventually decay: two functionals cannot dominate l1.
  CHECK(prof.verdicts == std::vector<std::string>{"decayed", "decayed"});
}

TEST_CASE("full l1 profile stays l1-like") {
  SeminormFamily fam = SeminormFamily::ell1_prefix(4);
  auto prof = ell1_profile(canonical(4), fam, {1, 2, 4}, 0.01);
  // Level 4 sees the whole prefix: the constant is 1 at every horizon.
  CHECK(prof.constants[2][3] == doctest::Approx(1.0));
  CHECK(prof.verdicts[3] == "l1-like");
}

TEST_CASE("tail oscillation of a norm convergent sequence") {
  std::vector<SparsePoint> seq;
  for (int n = 1; n <= 40; ++n) {
    seq.push_back(SparsePoint::basis(1).scaled(1.0 - 1.0 / n));
  }
  std::vector<Functional> fns = {Functional::coordinate(1)};
  auto reports = weak_cauchy_check(seq, fns, 10, 0.1);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].oscillation == doctest::Approx(1.0 / 10 - 1.0 / 40));
  CHECK(reports[0].within);
}

TEST_CASE("refuter finds full oscillation on the canonical basis") {
  auto r = weak_cauchy_refute(canonical(20), 20);
  CHECK(r.oscillation == doctest::Approx(2.0));
  CHECK(r.functional.sup_norm() <= 1.0);
}

TEST_CASE("refuter cannot beat a constant sequence") {
  std::vector<SparsePoint> seq(10, SparsePoint::basis(3));
  auto r = weak_cauchy_refute(seq, 10);
  CHECK(r.oscillation == doctest::Approx(0.0));
}
