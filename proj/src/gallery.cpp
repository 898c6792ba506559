#include "afpp/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "afpp/afp_engine.hpp"
#include "afpp/ell1.hpp"
#include "afpp/rng.hpp"

namespace afpp {

bool ConeNeighborhood::contains(const SparsePoint& y) const {
  for (const auto& [i, v] : y.entries()) {
    if (v < 0.0) return false;
  }
  std::set<int> window(f_set.begin(), f_set.end());
  for (int i : f_set) {
    if (!(std::abs(y.at(i) - center.at(i)) < u_bound)) return false;
  }
  double off_mass = 0.0;
  for (const auto& [i, v] : y.entries()) {
    if (!window.count(i)) off_mass += v;
  }
  return off_mass < v_bound;
}

ConeNeighborhood cone_neighborhood(const SparsePoint& center, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  for (const auto& [i, v] : center.entries()) {
    if (v < 0.0) {
      throw std::invalid_argument("center must lie in the positive cone");
    }
  }
  ConeNeighborhood nbhd;
  nbhd.center = center;
  nbhd.epsilon = epsilon;

  // Largest coordinates first; the smallest prefix holding more than
  // |x| - eps/4 of the mass becomes the window set.
  std::vector<std::pair<double, int>> order;
  for (const auto& [i, v] : center.entries()) order.push_back({v, i});
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  const double total = center.l1_norm();
  double head = 0.0;
  for (const auto& [v, i] : order) {
    if (head > total - epsilon / 4.0) break;
    nbhd.f_set.push_back(i);
    head += v;
  }
  if (nbhd.f_set.empty()) nbhd.f_set.push_back(1);
  std::sort(nbhd.f_set.begin(), nbhd.f_set.end());

  double window_mass = 0.0;
  for (int i : nbhd.f_set) window_mass += center.at(i);
  nbhd.center_tail = total - window_mass;
  nbhd.u_bound = epsilon / (4.0 * static_cast<double>(nbhd.f_set.size()));
  nbhd.v_bound = epsilon / 4.0 + nbhd.center_tail;
  return nbhd;
}

ConeVerification verify_cone_coincidence(const ConeNeighborhood& nbhd,
                                         int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  ConeVerification ver;
  ver.center_tail = nbhd.center_tail;

  std::mt19937_64 rng(seed);
  std::set<int> window(nbhd.f_set.begin(), nbhd.f_set.end());

  // Off-window slots: the center's own tail support plus fresh indices.
  std::vector<int> tail_slots;
  for (const auto& [i, v] : nbhd.center.entries()) {
    if (!window.count(i)) tail_slots.push_back(i);
  }
  int fresh = std::max(nbhd.center.max_index(),
                       *std::max_element(nbhd.f_set.begin(), nbhd.f_set.end()));
  for (int t = 1; t <= 3 && fresh + t <= kIndexCap; ++t) {
    tail_slots.push_back(fresh + t);
  }

  for (int s = 0; s < samples; ++s) {
    SparsePoint y;
    for (int i : nbhd.f_set) {
      double v = nbhd.center.at(i) +
                 uniform(rng, -1.0, 1.0) * nbhd.u_bound * 0.999;
      y.set(i, std::max(0.0, v));
    }
    const double tail_mass = uniform01(rng) * nbhd.v_bound * 0.999;
    if (!tail_slots.empty() && tail_mass > 0.0) {
      std::vector<double> split = simplex_sample(rng, tail_slots.size());
      for (std::size_t t = 0; t < tail_slots.size(); ++t) {
        const double v = tail_mass * split[t];
        if (v > 0.0) y.set(tail_slots[t], v);
      }
    }

    if (!nbhd.contains(y)) {
      ++ver.samples_rejected;
      continue;
    }
    ++ver.samples_accepted;

    double f_gap = 0.0;
    for (int i : nbhd.f_set) f_gap += std::abs(y.at(i) - nbhd.center.at(i));
    double off_mass = 0.0;
    for (const auto& [i, v] : y.entries()) {
      if (!window.count(i)) off_mass += v;
    }
    const double tail_gain = off_mass - nbhd.center_tail;
    const double dist = l1_distance(y, nbhd.center);

    ver.worst_f_gap = std::max(ver.worst_f_gap, f_gap);
    ver.worst_tail_gain = std::max(ver.worst_tail_gain, tail_gain);
    ver.worst_distance = std::max(ver.worst_distance, dist);
    if (!(dist < nbhd.epsilon)) ver.all_within_epsilon = false;
  }

  ver.starved = ver.samples_accepted == 0;
  const double quarter = nbhd.epsilon / 4.0;
  ver.bounds_hold = ver.worst_f_gap < quarter &&
                    ver.worst_tail_gain < quarter &&
                    ver.center_tail < quarter;
  if (ver.starved) {
    ver.all_within_epsilon = false;
    ver.bounds_hold = false;
  }
  return ver;
}

namespace {

GalleryInstance make_shift_instance() {
  GalleryInstance g;
  g.name = "l1-simplex-shift-c0dual";
  g.claim =
      "the cyclic shift on a 16-index probability face has weak approximate "
      "fixed points of every quality along the dyadic functional stream";
  std::vector<int> indices;
  for (int i = 1; i <= 16; ++i) indices.push_back(i);
  g.body = ConvexBody::simplex_face(indices);
  g.map = SelfMap::shift(*g.body);
  g.enumeration_tag = "dyadic";
  return g;
}

GalleryInstance make_canonical_instance() {
  GalleryInstance g;
  g.name = "canonical-basis-weak";
  g.claim =
      "the canonical basis drifts to zero against any fixed functional "
      "window (level constants decay like 1/n) yet a sign functional keeps "
      "its oscillation at 2, so no subsequence settles in norm";
  for (int i = 1; i <= 400; ++i) g.sequence.push_back(SparsePoint::basis(i));
  g.family = SeminormFamily::functional_sup(
      {{Functional::coordinate(1)}, {Functional::coordinate(2)}});
  return g;
}

GalleryInstance make_schur_instance() {
  GalleryInstance g;
  g.name = "schur-demo";
  g.claim =
      "on the positive cone the weak and norm views agree: a sequence that "
      "settles against every probe functional settles in the l1 norm, and "
      "conforming points of a weak window stay norm-close";
  SparsePoint x;
  double v = 0.5;
  for (int i = 1; i <= 5; ++i) {
    x.set(i, v);
    v /= 2.0;
  }
  for (int n = 1; n <= 60; ++n) {
    g.sequence.push_back(x.scaled(1.0 - 1.0 / static_cast<double>(n)));
  }
  g.body = ConvexBody::positive_cone_cap({1, 2, 3, 4, 5}, 1.0);
  return g;
}

GalleryInstance make_kyfan_instance() {
  GalleryInstance g;
  g.name = "compact-kyfan";
  g.claim =
      "a norm-compact hull with a contracting affine map yields a point "
      "whose l1 residual is below any requested tolerance";
  std::vector<SparsePoint> gens = {SparsePoint::basis(1),
                                   SparsePoint::basis(2),
                                   SparsePoint::basis(3)};
  SparsePoint c;
  c.set(1, 0.2);
  c.set(2, 0.3);
  c.set(3, 0.5);
  std::vector<SparsePoint> images;
  for (const auto& gen : gens) {
    SparsePoint img = gen.scaled(0.5);
    img.add_scaled(c, 0.5);
    images.push_back(img);
  }
  ConvexBody body = ConvexBody::hull(gens);
  g.map = SelfMap::affine(body, images);
  g.body = std::move(body);
  return g;
}

}  // namespace

const std::vector<std::string>& gallery_names() {
  static const std::vector<std::string> names = {
      "l1-simplex-shift-c0dual",
      "canonical-basis-weak",
      "schur-demo",
      "compact-kyfan",
  };
  return names;
}

GalleryInstance gallery_instance(const std::string& name) {
  if (name == "l1-simplex-shift-c0dual") return make_shift_instance();
  if (name == "canonical-basis-weak") return make_canonical_instance();
  if (name == "schur-demo") return make_schur_instance();
  if (name == "compact-kyfan") return make_kyfan_instance();
  throw std::invalid_argument("unknown gallery instance: " + name);
}

GalleryOutcome run_gallery_expectation(const GalleryInstance& instance,
                                       std::uint64_t seed) {
  GalleryOutcome out;

  if (instance.name == "l1-simplex-shift-c0dual") {
    auto enumeration = make_enumeration(instance.enumeration_tag);
    SequenceReport seq =
        afp_sequence(*instance.body, *instance.map, *enumeration, 10);
    double worst_scaled = 0.0;
    for (std::size_t n = 0; n < seq.residuals.size(); ++n) {
      for (double r : seq.residuals[n]) {
        worst_scaled = std::max(worst_scaled,
                                r * static_cast<double>(n + 1));
      }
    }
    out.metrics.push_back({"stages", 10.0});
    out.metrics.push_back({"worstScaledResidual", worst_scaled});
    out.passed =
        seq.status == AfpStatus::Converged && worst_scaled < 1.0;
    out.detail = "residual[n][i] * n stays below 1";
    return out;
  }

  if (instance.name == "canonical-basis-weak") {
    const std::vector<int> horizons = {1,  2,  3,  4,   6,   8,   12,  16, 24,
                                       32, 48, 64, 96, 128, 192, 256, 400};
    DichotomyProfile prof =
        ell1_profile(instance.sequence, *instance.family, horizons);
    bool envelope_ok = true;
    for (std::size_t hi = 0; hi < prof.horizons.size(); ++hi) {
      for (int level = 1; level <= instance.family->levels(); ++level) {
        const double bound =
            2.0 * static_cast<double>(level) / prof.horizons[hi];
        if (prof.constants[hi][level - 1] > bound + 1e-12) {
          envelope_ok = false;
        }
      }
    }
    const auto& last = prof.constants.back();
    const double final_max = *std::max_element(last.begin(), last.end());
    RefuteResult ref = weak_cauchy_refute(instance.sequence, 40);
    out.metrics.push_back({"finalConstant", final_max});
    out.metrics.push_back({"oscillation", ref.oscillation});
    out.passed = envelope_ok && final_max < 0.01 &&
                 std::abs(ref.oscillation - 2.0) < 1e-12;
    out.detail = "level constants under 2k/n, refuted with oscillation 2";
    return out;
  }

  if (instance.name == "schur-demo") {
    const std::vector<Functional> probes = {
        Functional::all_ones(), Functional::coordinate(1),
        Functional::periodic({1, -1})};
    const int tail_start = 20;
    const double tol = 0.1;
    auto reports =
        weak_cauchy_check(instance.sequence, probes, tail_start, tol);
    double weak_osc = 0.0;
    bool weak_ok = true;
    for (const auto& r : reports) {
      weak_osc = std::max(weak_osc, r.oscillation);
      weak_ok = weak_ok && r.within;
    }
    double norm_osc = 0.0;
    for (std::size_t j = tail_start - 1; j < instance.sequence.size(); ++j) {
      for (std::size_t k = j + 1; k < instance.sequence.size(); ++k) {
        norm_osc = std::max(
            norm_osc, l1_distance(instance.sequence[j], instance.sequence[k]));
      }
    }
    const SparsePoint& limit = instance.sequence.back();
    ConeNeighborhood nbhd = cone_neighborhood(limit, 0.5);
    ConeVerification ver = verify_cone_coincidence(nbhd, 500, seed);
    out.metrics.push_back({"weakOscillation", weak_osc});
    out.metrics.push_back({"normOscillation", norm_osc});
    out.metrics.push_back({"worstConeDistance", ver.worst_distance});
    out.passed = weak_ok && norm_osc <= tol && ver.all_within_epsilon &&
                 ver.bounds_hold && !ver.starved;
    out.detail = "weak settling matches norm settling; cone window is tight";
    return out;
  }

  if (instance.name == "compact-kyfan") {
    KyFanResult res = ky_fan_fixed_point(*instance.body, *instance.map, 1e-7);
    SparsePoint target;
    target.set(1, 0.2);
    target.set(2, 0.3);
    target.set(3, 0.5);
    const double dist = l1_distance(res.point, target);
    out.metrics.push_back({"l1Residual", res.l1_residual});
    out.metrics.push_back({"distanceToFixedPoint", dist});
    out.passed = res.status == AfpStatus::Converged &&
                 res.l1_residual < 1e-6 && dist < 1e-6;
    out.detail = "residual and distance to the exact fixed point under 1e-6";
    return out;
  }

  throw std::invalid_argument("unknown gallery instance: " + instance.name);
}

}  // namespace afpp
