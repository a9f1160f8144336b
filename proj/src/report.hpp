#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "checks.hpp"
#include "model.hpp"
#include "montecarlo.hpp"
#include "region.hpp"
#include "scheduler.hpp"

namespace dofbc {

// Rendering layer: every externally visible JSON/CSV string is produced here
// so the shared library and the CLI emit byte-identical output.

enum class CurveMode { kAlternating, kDelayed };

std::string curve_mode_name(CurveMode mode);
CurveMode parse_curve_mode(const std::string& name);  // "alternating"|"delayed"

struct CurveRow {
  Rational delta;
  Rational outer;
  Rational inner;
  std::optional<Rational> optimal;  // present iff inner == outer
};

// Evenly spaced grid delta_i = i/(n-1) over [0,1]; n >= 2. Alternating mode
// pairs the alternating-CSIT outer bound with the best inner bound; delayed
// mode pairs the delayed-CSIT ceiling (constant Lambda) with the delayed
// inner bound and requires M = 2, K >= 3.
std::vector<CurveRow> build_curve(const SystemConfig& cfg, CurveMode mode,
                                  int grid_points);

// Header "delta,outer,inner,optimal"; rationals as "p/q", optimal empty when
// absent.
std::string curve_csv(const std::vector<CurveRow>& rows);

std::string bound_report_json(const BoundReport& report);
std::string membership_json(const MembershipVerdict& verdict);

// Exactly {"cost":"p/q"}: the least total perfect-feedback cost reaching
// `target` sum DoF (M=2, K=3 only).
std::string min_cost_target_json(const SystemConfig& cfg,
                                 const Rational& target);

// Max-DoF cost report: full sum DoF, its minimum feedback cost, and the
// fewest simultaneously active users.
std::string max_dof_cost_json(const SystemConfig& cfg);

std::string max_sum_dof_json(const MaxSumDof& result);
std::string time_share_json(const ShareResult& result);

// "snr_db,mean_value,stderr" rows of a zero-forcing sweep.
std::string zf_points_csv(const ZfResult& result);
std::string zf_fit_json(const ZfResult& result);

// A named randomized verification suite: "lemma1" (log-det growth slopes),
// "lemma2" (pivoted-QR diagonal bounds), "lemma3" (subset Gram determinant
// bounds), "prop4" (nested log-det slope bounds).
struct VerifyOutput {
  bool pass = false;
  std::string json;  // summary object; slope suites list per-case results
  std::string csv;   // case,snr_db,mean_value,stderr rows (slope suites only)
};

// trials <= 0 selects the suite default (lemma1: 10000, lemma2: 1000,
// lemma3: 200, prop4: 10000). Throws ParseError for an unknown suite name.
VerifyOutput run_verification(const std::string& check, long trials,
                              std::uint64_t seed);

}  // namespace dofbc
