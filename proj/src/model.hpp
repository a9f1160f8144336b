#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rational.hpp"

namespace dofbc {

// K-user MISO broadcast system: M transmit antennas, K single-antenna users.
struct SystemConfig {
  int m = 1;
  int k = 1;

  int min_mk() const { return m < k ? m : k; }
};

// Validates m >= 1, k >= 1.
SystemConfig make_config(int m, int k);

enum class FeedbackMode {
  kQuality,             // per-user quality exponents in [0,1]
  kAlternatingPerfect,  // binary exponents: perfect CSIT some slots, none otherwise
  kDelayedOnly,         // no current CSIT; delayed feedback budget instead
};

std::string feedback_mode_name(FeedbackMode mode);
FeedbackMode parse_feedback_mode(const std::string& name);

// Per-user channel state feedback description. `averages` holds the long-run
// per-user exponent means; `per_slot` optionally holds the full slots x users
// exponent matrix the averages were taken from.
struct FeedbackProfile {
  std::optional<std::vector<std::vector<Rational>>> per_slot;
  std::vector<Rational> averages;
  FeedbackMode mode = FeedbackMode::kQuality;
};

// Column means of a slots x users exponent matrix. Rejects empty input and
// ragged rows; every entry must lie in [0,1].
std::vector<Rational> average_exponents(
    const std::vector<std::vector<Rational>>& per_slot);

// Builds a profile from an explicit exponent matrix; averages are derived.
// kAlternatingPerfect additionally requires every entry to be 0 or 1.
FeedbackProfile make_profile(const SystemConfig& cfg,
                             const std::vector<std::vector<Rational>>& per_slot,
                             FeedbackMode mode);

// Builds a profile directly from per-user averages.
FeedbackProfile make_profile(const SystemConfig& cfg,
                             const std::vector<Rational>& averages,
                             FeedbackMode mode);

// Total feedback cost: sum of per-user exponent averages. Every average must
// lie in [0,1]; the result lies in [0, K].
Rational total_cost(const std::vector<Rational>& averages);

// A candidate degrees-of-freedom point, one entry per user. Entries must be
// nonnegative rationals; the d_k <= 1 box is checked by region membership.
using DoFPoint = std::vector<Rational>;

// Validates sizes and nonnegativity.
DoFPoint make_dof_point(const SystemConfig& cfg, const std::vector<Rational>& d);

// Validates a per-user exponent vector against cfg (size K, entries in [0,1]).
std::vector<Rational> validate_exponents(const SystemConfig& cfg,
                                         const std::vector<Rational>& averages);

}  // namespace dofbc
