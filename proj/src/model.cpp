#include "model.hpp"

#include "errors.hpp"

namespace dofbc {

SystemConfig make_config(int m, int k) {
  if (m < 1) throw DomainError("antenna count m must be >= 1");
  if (k < 1) throw DomainError("user count k must be >= 1");
  return SystemConfig{m, k};
}

std::string feedback_mode_name(FeedbackMode mode) {
  switch (mode) {
    case FeedbackMode::kQuality: return "quality";
    case FeedbackMode::kAlternatingPerfect: return "alternating-perfect";
    case FeedbackMode::kDelayedOnly: return "delayed-only";
  }
  return "quality";
}

FeedbackMode parse_feedback_mode(const std::string& name) {
  if (name == "quality") return FeedbackMode::kQuality;
  if (name == "alternating-perfect") return FeedbackMode::kAlternatingPerfect;
  if (name == "delayed-only") return FeedbackMode::kDelayedOnly;
  throw ParseError("unknown feedback mode '" + name + "'");
}

namespace {

void check_unit_interval(const Rational& x, const std::string& what) {
  if (x < Rational(0) || x > Rational(1)) {
    throw RangeError(what + " " + x.str() + " outside [0,1]");
  }
}

}  // namespace

std::vector<Rational> average_exponents(
    const std::vector<std::vector<Rational>>& per_slot) {
  if (per_slot.empty() || per_slot[0].empty()) {
    throw DomainError("exponent matrix must have at least one slot and one user");
  }
  const size_t users = per_slot[0].size();
  std::vector<Rational> acc(users, Rational(0));
  for (const auto& row : per_slot) {
    if (row.size() != users) throw DomainError("ragged exponent matrix");
    for (size_t u = 0; u < users; ++u) {
      check_unit_interval(row[u], "exponent");
      acc[u] += row[u];
    }
  }
  Rational slots(static_cast<long>(per_slot.size()));
  for (auto& a : acc) a /= slots;
  return acc;
}

FeedbackProfile make_profile(const SystemConfig& cfg,
                             const std::vector<std::vector<Rational>>& per_slot,
                             FeedbackMode mode) {
  auto averages = average_exponents(per_slot);
  if (averages.size() != static_cast<size_t>(cfg.k)) {
    throw DomainError("exponent matrix user count does not match k");
  }
  if (mode == FeedbackMode::kAlternatingPerfect) {
    for (const auto& row : per_slot) {
      for (const auto& x : row) {
        if (x != Rational(0) && x != Rational(1)) {
          throw DomainError(
              "alternating-perfect profiles require binary per-slot exponents");
        }
      }
    }
  }
  FeedbackProfile p;
  p.per_slot = per_slot;
  p.averages = std::move(averages);
  p.mode = mode;
  return p;
}

FeedbackProfile make_profile(const SystemConfig& cfg,
                             const std::vector<Rational>& averages,
                             FeedbackMode mode) {
  FeedbackProfile p;
  p.averages = validate_exponents(cfg, averages);
  p.mode = mode;
  return p;
}

Rational total_cost(const std::vector<Rational>& averages) {
  if (averages.empty()) throw DomainError("cost of an empty exponent vector");
  Rational t;
  for (const auto& a : averages) {
    check_unit_interval(a, "exponent average");
    t += a;
  }
  return t;
}

DoFPoint make_dof_point(const SystemConfig& cfg, const std::vector<Rational>& d) {
  if (d.size() != static_cast<size_t>(cfg.k)) {
    throw DomainError("dof point must have one entry per user");
  }
  for (const auto& x : d) {
    if (x.sign() < 0) throw DomainError("dof entries must be nonnegative");
  }
  return d;
}

std::vector<Rational> validate_exponents(const SystemConfig& cfg,
                                         const std::vector<Rational>& averages) {
  if (averages.size() != static_cast<size_t>(cfg.k)) {
    throw DomainError("exponent vector must have one entry per user");
  }
  for (const auto& a : averages) check_unit_interval(a, "exponent average");
  return averages;
}

}  // namespace dofbc
