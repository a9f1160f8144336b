#include "report.hpp"

#include <cstdio>

#include <json.hpp>

#include "errors.hpp"

namespace dofbc {

namespace {

using njson = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

njson rational_array(const std::vector<Rational>& v) {
  njson arr = njson::array();
  for (const auto& r : v) arr.push_back(r.str());
  return arr;
}

}  // namespace

std::string curve_mode_name(CurveMode mode) {
  return mode == CurveMode::kAlternating ? "alternating" : "delayed";
}

CurveMode parse_curve_mode(const std::string& name) {
  if (name == "alternating") return CurveMode::kAlternating;
  if (name == "delayed") return CurveMode::kDelayed;
  throw ParseError("unknown curve mode '" + name +
                   "' (expected alternating or delayed)");
}

std::vector<CurveRow> build_curve(const SystemConfig& cfg, CurveMode mode,
                                  int grid_points) {
  if (grid_points < 2) throw DomainError("curve grid needs at least 2 points");
  const Rational lambda = mat_dof(cfg);
  std::vector<CurveRow> rows;
  rows.reserve(grid_points);
  for (int i = 0; i < grid_points; ++i) {
    CurveRow row;
    row.delta = Rational(i, grid_points - 1);
    if (mode == CurveMode::kAlternating) {
      row.outer = sum_dof_outer_alternating(cfg, row.delta);
      row.inner = inner_sum_dof(cfg, row.delta);
    } else {
      row.outer = lambda;
      row.inner = inner_sum_dof_delayed(cfg, row.delta);
    }
    if (row.inner == row.outer) row.optimal = row.inner;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string curve_csv(const std::vector<CurveRow>& rows) {
  std::string out = "delta,outer,inner,optimal\n";
  for (const auto& row : rows) {
    out += row.delta.str() + "," + row.outer.str() + "," + row.inner.str() + ",";
    if (row.optimal) out += row.optimal->str();
    out += "\n";
  }
  return out;
}

std::string bound_report_json(const BoundReport& report) {
  njson doc;
  doc["m"] = report.cfg.m;
  doc["k"] = report.cfg.k;
  doc["averages"] = rational_array(report.averages);
  doc["lambda_mat"] = report.lambda_mat.str();
  if (report.gamma) doc["gamma"] = report.gamma->str();
  doc["outer_sum_dof"] = report.outer_sum_dof.str();
  doc["outer_sum_dof_unclamped"] = report.outer_sum_dof_unclamped.str();
  doc["inner_sum_dof"] = report.inner_sum_dof.str();
  if (report.optimal_sum_dof) doc["optimal_sum_dof"] = report.optimal_sum_dof->str();
  return doc.dump();
}

std::string membership_json(const MembershipVerdict& verdict) {
  njson doc;
  doc["inside"] = verdict.inside;
  doc["slack"] = verdict.slack.str();
  doc["tightest_permutation"] = verdict.tightest;
  return doc.dump();
}

std::string min_cost_target_json(const SystemConfig& cfg,
                                 const Rational& target) {
  njson doc;
  doc["cost"] = min_cost_m2k3(cfg, target).str();
  return doc.dump();
}

std::string max_dof_cost_json(const SystemConfig& cfg) {
  const MaxDofCostReport rep = min_cost_max_dof(cfg);
  njson doc;
  doc["m"] = cfg.m;
  doc["k"] = cfg.k;
  doc["max_sum_dof"] = rep.max_sum_dof.str();
  doc["min_total_cost"] = rep.min_total_cost.str();
  doc["lower_bound_applies"] = rep.lower_bound_applies;
  doc["min_active_users"] = rep.min_active_users;
  doc["tdma_note"] = rep.tdma_note;
  return doc.dump();
}

std::string max_sum_dof_json(const MaxSumDof& result) {
  njson doc;
  doc["value"] = result.value.str();
  doc["argmax"] = rational_array(result.argmax);
  return doc.dump();
}

std::string time_share_json(const ShareResult& result) {
  njson doc;
  doc["fraction_a"] = result.fraction_a.str();
  doc["dof"] = result.dof.str();
  return doc.dump();
}

std::string zf_points_csv(const ZfResult& result) {
  std::string out = "snr_db,mean_value,stderr\n";
  for (const auto& p : result.points) {
    out += format_double(p.snr_db) + "," + format_double(p.mean_rate) + "," +
           format_double(p.stderr_mean) + "\n";
  }
  return out;
}

std::string zf_fit_json(const ZfResult& result) {
  njson doc;
  doc["slope"] = result.fit.slope;
  doc["slope_stderr"] = result.fit.slope_stderr;
  doc["points"] = result.points.size();
  doc["resampled"] = result.resampled_total;
  doc["fallback"] = result.fallback_total;
  return doc.dump();
}

namespace {

njson sweep_json(const char* check, long trials, std::uint64_t seed,
                 const BoundSweep& sweep) {
  njson doc;
  doc["check"] = check;
  doc["trials"] = trials;
  doc["seed"] = seed;
  doc["pass"] = sweep.pass;
  doc["samples"] = sweep.samples;
  doc["checks"] = sweep.checks;
  doc["violations"] = sweep.violations;
  doc["worst_margin"] = sweep.worst_margin;
  return doc;
}

njson slope_case_json(const SlopeCase& cs) {
  njson jc;
  jc["label"] = cs.label;
  jc["slope"] = cs.slope;
  jc["bound"] = cs.expected;
  jc["tol"] = cs.tol;
  jc["two_sided"] = !cs.one_sided;
  jc["pass"] = cs.pass;
  if (cs.floored > 0) jc["floored"] = cs.floored;
  return jc;
}

void append_case_csv(std::string& csv, const SlopeCase& cs) {
  for (size_t i = 0; i < cs.fit.snr_db.size(); ++i) {
    const double se = i < cs.point_stderr.size() ? cs.point_stderr[i] : 0.0;
    csv += cs.label + "," + format_double(cs.fit.snr_db[i]) + "," +
           format_double(cs.fit.values[i]) + "," + format_double(se) + "\n";
  }
}

}  // namespace

VerifyOutput run_verification(const std::string& check, long trials,
                              std::uint64_t seed) {
  VerifyOutput out;
  out.csv = "case,snr_db,mean_value,stderr\n";
  const std::vector<double> grid = {40.0, 50.0, 60.0, 70.0};

  if (check == "lemma2") {
    if (trials <= 0) trials = 1000;
    const BoundSweep sweep = pivoted_qr_bound_check(trials, seed);
    out.pass = sweep.pass;
    out.json = sweep_json("lemma2", trials, seed, sweep).dump();
    return out;
  }
  if (check == "lemma3") {
    if (trials <= 0) trials = 200;
    const BoundSweep sweep = gram_subset_bound_check(trials, seed);
    out.pass = sweep.pass;
    out.json = sweep_json("lemma3", trials, seed, sweep).dump();
    return out;
  }
  if (check == "lemma1") {
    if (trials <= 0) trials = 10000;
    const std::vector<std::vector<Rational>> configs = {
        {Rational(1), Rational(0)},
        {Rational(1, 2), Rational(1, 4), Rational(0)},
        {Rational(0), Rational(0)},
    };
    njson doc;
    doc["check"] = "lemma1";
    doc["trials"] = trials;
    doc["seed"] = seed;
    bool pass = true;
    njson cases = njson::array();
    std::uint64_t salt = 0;
    for (const auto& b : configs) {
      const SlopeCase cs = logdet_growth_check(b, trials, seed + salt, grid);
      ++salt;
      pass = pass && cs.pass;
      cases.push_back(slope_case_json(cs));
      append_case_csv(out.csv, cs);
    }
    doc["pass"] = pass;
    doc["cases"] = std::move(cases);
    out.pass = pass;
    out.json = doc.dump();
    return out;
  }
  if (check == "prop4") {
    if (trials <= 0) trials = 10000;
    njson doc;
    doc["check"] = "prop4";
    doc["trials"] = trials;
    doc["seed"] = seed;
    bool pass = true;
    njson cases = njson::array();
    for (const auto& nc : nested_logdet_sweep(trials, seed, grid)) {
      pass = pass && nc.result.pass;
      cases.push_back(slope_case_json(nc.result));
      append_case_csv(out.csv, nc.result);
    }
    doc["pass"] = pass;
    doc["cases"] = std::move(cases);
    out.pass = pass;
    out.json = doc.dump();
    return out;
  }
  throw ParseError("unknown verification suite '" + check +
                   "' (expected lemma1, lemma2, lemma3, or prop4)");
}

}  // namespace dofbc
