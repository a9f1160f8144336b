#pragma once

#include <vector>

#include "model.hpp"
#include "rational.hpp"

namespace dofbc {

// Weighted-sum DoF constraints for the feedback-limited broadcast channel.
// A user ordering pi (1-based user ids, position 1 first) induces
//   sum_k d_{pi(k)} / min{k,M}
//     <= 1 + sum_{k=1}^{K-1} (1/min{k,M} - 1/min{K,M}) * alpha_{pi(k)},
// and the DoF region is the intersection over all K! orderings plus the
// per-user box 0 <= d_k <= 1.

struct ConstraintEval {
  Rational lhs;
  Rational rhs;
  Rational slack;  // rhs - lhs
};

ConstraintEval evaluate_constraint(const SystemConfig& cfg,
                                   const std::vector<Rational>& averages,
                                   const DoFPoint& d,
                                   const std::vector<int>& perm);

struct TightestConstraint {
  std::vector<int> perm;  // lexicographically least among minimizers
  Rational slack;
};

// Minimum-slack ordering via a cubic assignment solve (placing user u at
// position k contributes d_u/min{k,M} minus that position's budget credit).
TightestConstraint tightest_permutation(const SystemConfig& cfg,
                                        const std::vector<Rational>& averages,
                                        const DoFPoint& d);

// Same result by exhaustive enumeration; the cross-check oracle for the
// assignment solver. Intended for k <= 8.
TightestConstraint tightest_permutation_bruteforce(const SystemConfig& cfg,
                                                   const std::vector<Rational>& averages,
                                                   const DoFPoint& d);

struct MembershipVerdict {
  bool inside;
  Rational slack;            // slack of the tightest ordering constraint
  std::vector<int> tightest; // the ordering achieving it
};

// Point is inside iff the tightest ordering has slack >= 0 and every d_k <= 1.
MembershipVerdict check_point(const SystemConfig& cfg,
                              const std::vector<Rational>& averages,
                              const DoFPoint& d);

struct MaxSumDof {
  Rational value;
  DoFPoint argmax;
};

// Exact maximum of sum_k d_k over the region, via rational simplex on the
// deduplicated ordering constraints plus the box. Supported for k <= 6;
// larger systems should use the closed-form sum_dof_outer bound instead.
MaxSumDof max_sum_dof_lp(const SystemConfig& cfg,
                         const std::vector<Rational>& averages);

}  // namespace dofbc
