#include "afpp/runner.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>

#include "afpp/afp_engine.hpp"
#include "afpp/ell1.hpp"
#include "afpp/errors.hpp"
#include "afpp/gallery.hpp"
#include "afpp/serialization.hpp"

namespace afpp {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

std::string timestamp_utc() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

const json& require(const json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end()) {
    throw ConfigError(std::string("missing field: ") + field);
  }
  return *it;
}

template <typename T>
T as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("bad value for ") + what);
  }
}

EngineBudgets parse_budgets(const json& config, const RunOptions& opts,
                            std::uint64_t seed) {
  EngineBudgets b;
  b.seed = seed;
  if (config.contains("budgets")) {
    const json& j = config["budgets"];
    if (!j.is_object()) throw ConfigError("budgets must be an object");
    if (j.contains("netPoints")) b.net_points = as<int>(j["netPoints"], "netPoints");
    if (j.contains("netSamples")) b.net_samples = as<int>(j["netSamples"], "netSamples");
    if (j.contains("coverCenters")) b.cover_centers = as<int>(j["coverCenters"], "coverCenters");
    if (j.contains("rungs")) b.rungs = as<int>(j["rungs"], "rungs");
    if (j.contains("brouwerWork")) b.brouwer_work = as<long long>(j["brouwerWork"], "brouwerWork");
    if (j.contains("cells")) b.cells = as<long long>(j["cells"], "cells");
    if (j.contains("orbitBurst")) b.orbit_burst = as<int>(j["orbitBurst"], "orbitBurst");
  }
  if (opts.budget_override) {
    b.brouwer_work = std::min(b.brouwer_work, *opts.budget_override);
    b.cells = std::min(b.cells, *opts.budget_override);
  }
  if (b.net_points < 1 || b.net_samples < 1 || b.rungs < 1 ||
      b.brouwer_work < 1 || b.orbit_burst < 1) {
    throw ConfigError("budgets must be positive");
  }
  return b;
}

std::vector<Functional> parse_functionals(const json& config) {
  std::vector<Functional> fns;
  for (const auto& f : require(config, "functionals")) {
    fns.push_back(functional_from_json(f));
  }
  if (fns.empty()) throw ConfigError("functional list must be nonempty");
  return fns;
}

std::vector<SparsePoint> parse_sequence(const json& j) {
  std::vector<SparsePoint> seq;
  if (j.is_object() && j.contains("generator")) {
    const std::string gen = as<std::string>(j["generator"], "generator");
    const int count = as<int>(require(j, "count"), "count");
    if (count < 1 || count > kIndexCap) throw ConfigError("bad count");
    if (gen == "canonical-basis") {
      for (int i = 1; i <= count; ++i) seq.push_back(SparsePoint::basis(i));
      return seq;
    }
    throw ConfigError("unknown sequence generator: " + gen);
  }
  if (!j.is_array()) throw ConfigError("sequence must be an array");
  for (const auto& p : j) seq.push_back(point_from_json(p));
  if (seq.empty()) throw ConfigError("sequence must be nonempty");
  return seq;
}

const char* status_name(AfpStatus s) {
  return s == AfpStatus::Converged ? "converged" : "budget-exceeded";
}

ordered_json brouwer_to_json(const SearchStats& st) {
  return {{"cellsVisited", st.cells_visited},
          {"mapEvaluations", st.map_evaluations},
          {"maxDepth", st.max_depth}};
}

ordered_json afp_result_json(const AfpReport& r) {
  ordered_json out;
  out["point"] = point_to_json(r.point);
  out["residuals"] = r.residuals;
  out["epsilon"] = r.epsilon;
  out["status"] = status_name(r.status);
  out["rungsUsed"] = r.rungs_used;
  out["netSizes"] = r.net_sizes;
  out["coverSizes"] = r.cover_sizes;
  out["brouwer"] = brouwer_to_json(r.brouwer);
  out["membershipError"] = r.membership_error;
  return out;
}

std::string residual_csv(
    const std::vector<std::vector<double>>& rows) {
  std::ostringstream os;
  os << "stage,functional,residual\n";
  for (std::size_t n = 0; n < rows.size(); ++n) {
    for (std::size_t i = 0; i < rows[n].size(); ++i) {
      os << (n + 1) << ',' << (i + 1) << ',';
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.17g", rows[n][i]);
      os << buf << '\n';
    }
  }
  return os.str();
}

struct KindOutcome {
  ordered_json result;
  std::string status;
  int exit_code = kExitOk;
  std::string summary;
  std::optional<RunArtifact> csv;
};

KindOutcome run_afp(const json& config, const EngineBudgets& budgets,
                    bool want_csv) {
  ConvexBody body = body_from_json(require(config, "body"));
  SelfMap map = map_from_json(require(config, "map"), body);
  auto fns = parse_functionals(config);
  const double eps = as<double>(require(config, "epsilon"), "epsilon");
  if (!(eps > 0.0)) throw ConfigError("epsilon must be positive");

  AfpReport r = approx_fixed_point(body, map, fns, eps, budgets);
  KindOutcome out;
  out.result = afp_result_json(r);
  out.status = status_name(r.status);
  out.exit_code = r.status == AfpStatus::Converged ? kExitOk : kExitBudget;
  double worst = 0.0;
  for (double v : r.residuals) worst = std::max(worst, v);
  std::ostringstream os;
  os << "afp " << out.status << ": worst residual " << worst << " vs epsilon "
     << eps;
  out.summary = os.str();
  if (want_csv) out.csv = RunArtifact{"report.csv", residual_csv({r.residuals})};
  return out;
}

KindOutcome run_afp_sequence(const json& config, const EngineBudgets& budgets,
                             bool want_csv) {
  ConvexBody body = body_from_json(require(config, "body"));
  SelfMap map = map_from_json(require(config, "map"), body);
  const int stages = as<int>(require(config, "stages"), "stages");
  if (stages < 1 || stages > 64) throw ConfigError("stages must be in 1..64");
  const std::string tag =
      config.contains("enumeration")
          ? as<std::string>(config["enumeration"], "enumeration")
          : "dyadic";
  std::unique_ptr<FunctionalEnumeration> enumeration;
  try {
    enumeration = make_enumeration(tag);
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(ex.what());
  }

  SequenceReport seq = afp_sequence(body, map, *enumeration, stages, budgets);
  KindOutcome out;
  ordered_json points = ordered_json::array();
  for (const auto& p : seq.points) {
    points.push_back(ordered_json(point_to_json(p)));
  }
  out.result["stages"] = stages;
  out.result["enumeration"] = tag;
  out.result["points"] = points;
  out.result["residuals"] = seq.residuals;
  out.result["status"] = status_name(seq.status);
  out.status = status_name(seq.status);
  out.exit_code = seq.status == AfpStatus::Converged ? kExitOk : kExitBudget;
  double worst_scaled = 0.0;
  for (std::size_t n = 0; n < seq.residuals.size(); ++n) {
    for (double v : seq.residuals[n]) {
      worst_scaled = std::max(worst_scaled, v * static_cast<double>(n + 1));
    }
  }
  std::ostringstream os;
  os << "afp-sequence " << out.status << ": " << stages
     << " stages, worst scaled residual " << worst_scaled;
  out.summary = os.str();
  if (want_csv) out.csv = RunArtifact{"report.csv", residual_csv(seq.residuals)};
  return out;
}

KindOutcome run_kyfan(const json& config, const EngineBudgets& budgets) {
  ConvexBody body = body_from_json(require(config, "body"));
  SelfMap map = map_from_json(require(config, "map"), body);
  const double tol = as<double>(require(config, "tol"), "tol");
  if (!(tol > 0.0)) throw ConfigError("tol must be positive");

  KyFanResult r = ky_fan_fixed_point(body, map, tol, budgets);
  KindOutcome out;
  out.result["point"] = point_to_json(r.point);
  out.result["l1Residual"] = r.l1_residual;
  out.result["refinements"] = r.refinements;
  out.result["status"] = status_name(r.status);
  out.status = status_name(r.status);
  out.exit_code = r.status == AfpStatus::Converged ? kExitOk : kExitBudget;
  std::ostringstream os;
  os << "kyfan " << out.status << ": l1 residual " << r.l1_residual
     << " vs tol " << tol;
  out.summary = os.str();
  return out;
}

KindOutcome run_ell1_profile(const json& config, bool want_csv) {
  auto seq = parse_sequence(require(config, "sequence"));
  SeminormFamily family = family_from_json(require(config, "family"));
  auto horizons = as<std::vector<int>>(require(config, "horizons"), "horizons");
  const double threshold =
      config.contains("threshold")
          ? as<double>(config["threshold"], "threshold")
          : 0.01;
  const int cap = config.contains("exactCap")
                      ? as<int>(config["exactCap"], "exactCap")
                      : 12;
  DichotomyProfile prof;
  try {
    prof = ell1_profile(seq, family, horizons, threshold, cap);
  } catch (const std::out_of_range& ex) {
    throw ConfigError(ex.what());
  }

  KindOutcome out;
  out.result["horizons"] = prof.horizons;
  out.result["constants"] = prof.constants;
  out.result["verdicts"] = prof.verdicts;
  out.result["threshold"] = prof.threshold;
  out.status = "ok";
  std::ostringstream os;
  os << "ell1-profile: " << prof.horizons.size() << " horizons, verdicts";
  for (const auto& v : prof.verdicts) os << ' ' << v;
  out.summary = os.str();
  if (want_csv) {
    std::ostringstream csv;
    csv << "horizon,level,constant,verdict\n";
    for (std::size_t hi = 0; hi < prof.horizons.size(); ++hi) {
      for (std::size_t l = 0; l < prof.constants[hi].size(); ++l) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.17g", prof.constants[hi][l]);
        csv << prof.horizons[hi] << ',' << (l + 1) << ',' << buf << ','
            << prof.verdicts[l] << '\n';
      }
    }
    out.csv = RunArtifact{"report.csv", csv.str()};
  }
  return out;
}

KindOutcome run_basis_constant(const json& config) {
  std::vector<SparsePoint> vectors;
  for (const auto& v : require(config, "vectors")) {
    vectors.push_back(point_from_json(v));
  }
  if (vectors.empty()) throw ConfigError("vectors must be nonempty");
  BasisNorm norm = norm_from_json(require(config, "norm"));
  const std::string mode = config.contains("mode")
                               ? as<std::string>(config["mode"], "mode")
                               : "exact";
  BasisConstantResult r;
  if (mode == "exact") {
    const int cap = config.contains("exactCap")
                        ? as<int>(config["exactCap"], "exactCap")
                        : 12;
    r = basis_constant(vectors, norm, cap);
  } else if (mode == "grid") {
    const double step = as<double>(require(config, "step"), "step");
    r = basis_constant_grid(vectors, norm, step);
  } else {
    throw ConfigError("unknown mode: " + mode);
  }

  KindOutcome out;
  out.result["value"] = r.value;
  out.result["argmin"] = r.argmin;
  out.result["method"] =
      r.method == BasisMethod::OrthantExact ? "orthant-exact" : "grid";
  out.result["rankDeficient"] = r.rank_deficient;
  out.result["orthantCount"] = r.orthants.size();
  if (!r.orthants.empty() && r.orthants.size() <= 256) {
    ordered_json arr = ordered_json::array();
    for (const auto& o : r.orthants) {
      arr.push_back({{"signs", o.signs}, {"value", o.value}});
    }
    out.result["orthants"] = std::move(arr);
  }
  out.status = "ok";
  std::ostringstream os;
  os << "basis-constant: value " << r.value << " (" << out.result["method"]
     << ")";
  out.summary = os.str();
  return out;
}

KindOutcome run_cone_verify(const json& config, std::uint64_t seed) {
  SparsePoint center = point_from_json(require(config, "center"));
  const double eps = as<double>(require(config, "epsilon"), "epsilon");
  const int samples = config.contains("samples")
                          ? as<int>(config["samples"], "samples")
                          : 200;
  if (samples < 1 || samples > 1'000'000) throw ConfigError("bad samples");
  ConeNeighborhood nbhd;
  try {
    nbhd = cone_neighborhood(center, eps);
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(ex.what());
  }
  ConeVerification ver = verify_cone_coincidence(nbhd, samples, seed);

  KindOutcome out;
  out.result["fSet"] = nbhd.f_set;
  out.result["uBound"] = nbhd.u_bound;
  out.result["vBound"] = nbhd.v_bound;
  out.result["centerTail"] = nbhd.center_tail;
  out.result["samplesAccepted"] = ver.samples_accepted;
  out.result["samplesRejected"] = ver.samples_rejected;
  out.result["worstDistance"] = ver.worst_distance;
  out.result["worstWindowGap"] = ver.worst_f_gap;
  out.result["worstTailGain"] = ver.worst_tail_gain;
  out.result["allWithinEpsilon"] = ver.all_within_epsilon;
  out.result["boundsHold"] = ver.bounds_hold;
  out.result["starved"] = ver.starved;
  const bool ok = ver.all_within_epsilon && ver.bounds_hold && !ver.starved;
  out.status = ok ? "ok" : "failed";
  out.exit_code = ok ? kExitOk : kExitExpectation;
  std::ostringstream os;
  os << "cone-verify " << out.status << ": worst distance "
     << ver.worst_distance << " vs epsilon " << eps;
  out.summary = os.str();
  return out;
}

KindOutcome run_gallery(const json& config, std::uint64_t seed) {
  const std::string name = as<std::string>(require(config, "name"), "name");
  GalleryInstance instance;
  try {
    instance = gallery_instance(name);
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(ex.what());
  }
  GalleryOutcome res = run_gallery_expectation(instance, seed);

  KindOutcome out;
  out.result["name"] = instance.name;
  out.result["claim"] = instance.claim;
  out.result["passed"] = res.passed;
  ordered_json metrics;
  for (const auto& [k, v] : res.metrics) metrics[k] = v;
  out.result["metrics"] = std::move(metrics);
  out.result["detail"] = res.detail;
  out.status = res.passed ? "ok" : "failed";
  out.exit_code = res.passed ? kExitOk : kExitExpectation;
  out.summary = "gallery " + instance.name + ": " + out.status;
  return out;
}

}  // namespace

RunOutcome run_config(const json& config, const RunOptions& opts) {
  RunOutcome out;
  try {
    if (!config.is_object()) throw ConfigError("config must be an object");
    const std::string kind = as<std::string>(require(config, "kind"), "kind");
    if (opts.format != "json" && opts.format != "csv") {
      throw ConfigError("format must be json or csv");
    }
    const bool want_csv = opts.format == "csv";

    std::uint64_t seed = 0;
    if (opts.seed_override) {
      seed = *opts.seed_override;
    } else if (config.contains("seed")) {
      seed = as<std::uint64_t>(config["seed"], "seed");
    }
    json effective = config;
    effective["seed"] = seed;
    const std::string hash = fnv1a_hex(effective.dump());
    const EngineBudgets budgets = parse_budgets(config, opts, seed);

    KindOutcome k;
    if (kind == "afp") {
      k = run_afp(config, budgets, want_csv);
    } else if (kind == "afp-sequence") {
      k = run_afp_sequence(config, budgets, want_csv);
    } else if (kind == "kyfan") {
      k = run_kyfan(config, budgets);
    } else if (kind == "ell1-profile") {
      k = run_ell1_profile(config, want_csv);
    } else if (kind == "basis-constant") {
      k = run_basis_constant(config);
    } else if (kind == "cone-verify") {
      k = run_cone_verify(config, seed);
    } else if (kind == "gallery") {
      k = run_gallery(config, seed);
    } else {
      throw ConfigError("unknown config kind: " + kind);
    }
    if (want_csv && !k.csv) {
      throw ConfigError("csv format is not available for kind " + kind);
    }

    out.report["schema"] = "afpp-report/1";
    out.report["kind"] = kind;
    out.report["configHash"] = hash;
    out.report["seed"] = seed;
    out.report["timestamp"] = timestamp_utc();
    out.report["status"] = k.status;
    out.report["result"] = std::move(k.result);
    out.exit_code = k.exit_code;
    out.summary = k.summary;
    out.files.push_back({"report.json", out.report.dump(2) + "\n"});
    if (k.csv) out.files.push_back(std::move(*k.csv));
  } catch (const ConfigError& ex) {
    out.exit_code = kExitConfig;
    out.error = ex.what();
  } catch (const BudgetError& ex) {
    out.exit_code = kExitBudget;
    out.error = ex.what();
  } catch (const std::exception& ex) {
    out.exit_code = kExitConfig;
    out.error = ex.what();
  }
  return out;
}

}  // namespace afpp
