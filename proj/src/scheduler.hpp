#pragma once

#include <map>
#include <string>
#include <vector>

#include "model.hpp"
#include "rational.hpp"

namespace dofbc {

enum class FeedbackKind { kPerfect, kDelayed, kNone };

enum class BlockKind {
  kZf,          // current-CSIT zero-forcing slots
  kMat2User,    // retrospective 2-user block: 4 symbols over 3 slots
  kMat3UserM2,  // retrospective 3-user block at m=2: 12 symbols over 8 slots
};

std::string block_kind_name(BlockKind kind);
BlockKind parse_block_kind(const std::string& name);

struct SlotPlan {
  int t = 0;                            // 1-based slot index
  std::vector<int> active;              // ascending user ids
  std::map<int, FeedbackKind> feedback; // every user id -> mode this slot
  Rational symbols;                     // DoF-slots delivered in this slot
};

struct Block {
  BlockKind kind;
  int first = 0;  // 1-based slot range, inclusive
  int last = 0;
};

struct Schedule {
  SystemConfig cfg;
  std::vector<SlotPlan> slots;
  std::vector<Block> blocks;  // partition of the slot range
};

struct ScheduleAudit {
  std::vector<Rational> perfect_fraction;  // per user
  std::vector<Rational> delayed_fraction;  // per user
  Rational sum_dof;                        // total symbols / total slots
  Rational total_perfect_cost;             // sum of perfect fractions
};

// Least period over which rational per-user budgets become whole slot counts:
// the LCM of the budget denominators.
long minimal_period(const std::vector<Rational>& deltas);

// Budgeted user selection: over n = minimal_period slots, each slot activates
// the min{M,K} users with the largest remaining budget (ties resolved toward
// the larger user index), granting them perfect feedback. Requires
// sum(deltas) = min{M,K}, every delta <= 1, and min{M,K} > 1.
Schedule greedy_schedule(const SystemConfig& cfg,
                         const std::vector<Rational>& deltas);

// Perfect-feedback block followed by retrospective 3-user blocks, for m=2,
// k=3. Budgets must satisfy delta_k <= sum(deltas)/2 for every user. The
// audit reproduces `deltas` exactly and sum DoF equals 3/2 + sum(deltas)/4.
Schedule two_block_schedule(const SystemConfig& cfg,
                            const std::vector<Rational>& deltas);

// Delayed-feedback-only block schedules for m=2 and k >= 3 users at the two
// supported rates: target 4/3 cycles 2-user blocks (per-user delayed fraction
// 2/(3k)); target 3/2 cycles 3-user blocks (fraction 9/(8k)).
Schedule delayed_block_schedule(int k, const Rational& target);

struct SharePoint {
  Rational delta;
  Rational dof;
};

struct ShareResult {
  Rational fraction_a;  // time fraction spent on scheme a
  Rational dof;
};

// Linear time sharing between two operating points; target must lie in
// [a.delta, b.delta] with a.delta < b.delta.
ShareResult time_share(const SharePoint& a, const SharePoint& b,
                       const Rational& target);

// Validates the schedule structure and returns exact per-user feedback
// fractions and the delivered sum DoF. Throws ValidationError naming the
// violated invariant on malformed input.
ScheduleAudit audit_schedule(const Schedule& s);

// Stable-field-order JSON encoding (includes a fresh audit), and its inverse.
std::string schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const std::string& text);

}  // namespace dofbc
