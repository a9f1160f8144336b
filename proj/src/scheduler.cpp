#include "scheduler.hpp"

#include <algorithm>
#include <numeric>

#include <json.hpp>

#include "errors.hpp"

namespace dofbc {

namespace {

constexpr long kMaxSlots = 1000000;

std::string feedback_kind_name(FeedbackKind f) {
  switch (f) {
    case FeedbackKind::kPerfect: return "perfect";
    case FeedbackKind::kDelayed: return "delayed";
    case FeedbackKind::kNone: return "none";
  }
  return "none";
}

FeedbackKind parse_feedback_kind(const std::string& name) {
  if (name == "perfect") return FeedbackKind::kPerfect;
  if (name == "delayed") return FeedbackKind::kDelayed;
  if (name == "none") return FeedbackKind::kNone;
  throw ParseError("unknown feedback kind '" + name + "'");
}

long to_slot_count(const mpz_class& n, const char* what) {
  if (!n.fits_slong_p() || n.get_si() > kMaxSlots) {
    throw UnsupportedSizeError(std::string(what) +
                               " needs more than 1000000 slots");
  }
  return n.get_si();
}

// Appends `count` slots starting at slot index `t0`, all belonging to one
// retrospective block family; `roles` lists the active users in role order.
// Role j feeds back delayed CSIT in relative slots (j + roles.size()*r) %
// span + 1, placing `per_user` events per user within each span.
void append_retro_block(Schedule& s, int t0, int span, const std::vector<int>& roles,
                        int per_user, const Rational& per_slot_symbols) {
  std::vector<std::vector<bool>> delayed(span, std::vector<bool>(s.cfg.k + 1, false));
  const int r = static_cast<int>(roles.size());
  for (int j = 0; j < r; ++j) {
    for (int rep = 0; rep < per_user; ++rep) {
      delayed[(j + r * rep) % span][roles[j]] = true;
    }
  }
  std::vector<int> active = roles;
  std::sort(active.begin(), active.end());
  for (int i = 0; i < span; ++i) {
    SlotPlan slot;
    slot.t = t0 + i;
    slot.active = active;
    for (int u = 1; u <= s.cfg.k; ++u) {
      slot.feedback[u] =
          delayed[i][u] ? FeedbackKind::kDelayed : FeedbackKind::kNone;
    }
    slot.symbols = per_slot_symbols;
    s.slots.push_back(std::move(slot));
  }
}

// Core budgeted selection over a fixed horizon; budgets are whole slot counts.
void greedy_fill(Schedule& s, std::vector<long> budgets, long n) {
  const int j = s.cfg.min_mk();
  const int k = s.cfg.k;
  for (long t = 1; t <= n; ++t) {
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return budgets[a] < budgets[b]; });
    SlotPlan slot;
    slot.t = static_cast<int>(t);
    for (int i = k - j; i < k; ++i) slot.active.push_back(order[i] + 1);
    std::sort(slot.active.begin(), slot.active.end());
    for (int u = 1; u <= k; ++u) slot.feedback[u] = FeedbackKind::kNone;
    for (int u : slot.active) {
      slot.feedback[u] = FeedbackKind::kPerfect;
      budgets[u - 1] -= 1;
    }
    slot.symbols = Rational(j);
    s.slots.push_back(std::move(slot));
  }
  for (int u = 0; u < k; ++u) {
    if (budgets[u] != 0) {
      throw InfeasibleError("budget for user " + std::to_string(u + 1) +
                            " not exhausted by the selection horizon");
    }
  }
}

std::vector<Rational> validated_deltas(const SystemConfig& cfg,
                                       const std::vector<Rational>& deltas) {
  if (deltas.size() != static_cast<size_t>(cfg.k)) {
    throw DomainError("budget vector must have one entry per user");
  }
  for (size_t i = 0; i < deltas.size(); ++i) {
    if (deltas[i] < Rational(0) || deltas[i] > Rational(1)) {
      throw InfeasibleError("budget for user " + std::to_string(i + 1) + " is " +
                            deltas[i].str() + ", outside [0,1]");
    }
  }
  return deltas;
}

}  // namespace

std::string block_kind_name(BlockKind kind) {
  switch (kind) {
    case BlockKind::kZf: return "zf";
    case BlockKind::kMat2User: return "mat2user";
    case BlockKind::kMat3UserM2: return "mat3user-m2";
  }
  return "zf";
}

BlockKind parse_block_kind(const std::string& name) {
  if (name == "zf") return BlockKind::kZf;
  if (name == "mat2user") return BlockKind::kMat2User;
  if (name == "mat3user-m2") return BlockKind::kMat3UserM2;
  throw ParseError("unknown block kind '" + name + "'");
}

long minimal_period(const std::vector<Rational>& deltas) {
  if (deltas.empty()) throw DomainError("minimal period of an empty budget vector");
  for (const auto& d : deltas) {
    if (d.sign() < 0) throw DomainError("budgets must be nonnegative");
  }
  return to_slot_count(lcm_of_denominators(deltas), "budget period");
}

Schedule greedy_schedule(const SystemConfig& cfg,
                         const std::vector<Rational>& deltas) {
  auto d = validated_deltas(cfg, deltas);
  const int j = cfg.min_mk();
  if (j < 2) {
    throw InfeasibleError(
        "budgeted selection requires min(m,k) > 1; a single-stream system "
        "needs no selection");
  }
  if (sum(d) != Rational(j)) {
    throw InfeasibleError("budgets must sum to min(m,k) = " + std::to_string(j) +
                          ", got " + sum(d).str());
  }
  const long n = minimal_period(d);
  std::vector<long> budgets;
  budgets.reserve(cfg.k);
  for (const auto& x : d) {
    const Rational b = x * Rational(n);
    budgets.push_back(static_cast<long>(b.num().get_si()));
  }
  Schedule s;
  s.cfg = cfg;
  greedy_fill(s, std::move(budgets), n);
  s.blocks.push_back(Block{BlockKind::kZf, 1, static_cast<int>(n)});
  return s;
}

Schedule two_block_schedule(const SystemConfig& cfg,
                            const std::vector<Rational>& deltas) {
  if (cfg.m != 2 || cfg.k != 3) {
    throw DomainError("two-block composition is defined for m=2, k=3");
  }
  auto d = validated_deltas(cfg, deltas);
  const Rational cost = sum(d);
  if (cost > Rational(2)) {
    throw InfeasibleError("total perfect-feedback cost " + cost.str() +
                          " exceeds the maximum useful cost 2");
  }

  Schedule s;
  s.cfg = cfg;
  if (cost.sign() == 0) {
    // No perfect feedback at all: one retrospective 3-user block.
    append_retro_block(s, 1, 8, {1, 2, 3}, 3, Rational(3, 2));
    s.blocks.push_back(Block{BlockKind::kMat3UserM2, 1, 8});
    return s;
  }

  for (size_t i = 0; i < d.size(); ++i) {
    if (d[i] * Rational(2) > cost) {
      throw InfeasibleError("budget for user " + std::to_string(i + 1) + " (" +
                            d[i].str() + ") exceeds half the total cost " +
                            cost.str() + "; no two-block split exists");
    }
  }

  // Block 1 serves scaled budgets 2*delta_k/cost over n slots; block 2 spends
  // the rest of the horizon on retrospective blocks. n is the least multiple
  // of the budget period that makes the retrospective part whole 8-slot
  // blocks.
  std::vector<Rational> scaled;
  scaled.reserve(d.size());
  for (const auto& x : d) scaled.push_back(Rational(2) * x / cost);
  const Rational tail_ratio = (Rational(2) - cost) / cost;  // n'/n
  std::vector<Rational> periods = scaled;
  periods.push_back(tail_ratio);
  const long n0 = minimal_period(periods);
  const Rational tail0 = tail_ratio * Rational(n0);
  long scale = 1;
  if (tail0.sign() != 0) {
    const long t0 = static_cast<long>(tail0.num().get_si());
    scale = 8 / std::gcd(t0, 8L);
  }
  const long n = n0 * scale;
  const Rational tail = tail_ratio * Rational(n);
  const long n_tail = static_cast<long>(tail.num().get_si());
  if (n + n_tail > kMaxSlots) {
    throw UnsupportedSizeError("two-block horizon needs more than 1000000 slots");
  }

  std::vector<long> budgets;
  for (const auto& x : scaled) {
    budgets.push_back(static_cast<long>((x * Rational(n)).num().get_si()));
  }
  greedy_fill(s, std::move(budgets), n);
  s.blocks.push_back(Block{BlockKind::kZf, 1, static_cast<int>(n)});
  for (long b = 0; b < n_tail / 8; ++b) {
    const int t0 = static_cast<int>(n + 8 * b + 1);
    append_retro_block(s, t0, 8, {1, 2, 3}, 3, Rational(3, 2));
    s.blocks.push_back(Block{BlockKind::kMat3UserM2, t0, t0 + 7});
  }
  return s;
}

Schedule delayed_block_schedule(int k, const Rational& target) {
  if (k < 3) {
    throw DomainError("delayed-feedback block schedules require k >= 3");
  }
  Schedule s;
  s.cfg = make_config(2, k);
  if (target == Rational(4, 3)) {
    for (int b = 0; b < k; ++b) {
      const int t0 = 3 * b + 1;
      append_retro_block(s, t0, 3, {b + 1, (b + 1) % k + 1}, 1, Rational(4, 3));
      s.blocks.push_back(Block{BlockKind::kMat2User, t0, t0 + 2});
    }
    return s;
  }
  if (target == Rational(3, 2)) {
    for (int b = 0; b < k; ++b) {
      const int t0 = 8 * b + 1;
      append_retro_block(s, t0, 8,
                         {b + 1, (b + 1) % k + 1, (b + 2) % k + 1}, 3,
                         Rational(3, 2));
      s.blocks.push_back(Block{BlockKind::kMat3UserM2, t0, t0 + 7});
    }
    return s;
  }
  throw DomainError("supported delayed block rates are 4/3 and 3/2, got " +
                    target.str());
}

ShareResult time_share(const SharePoint& a, const SharePoint& b,
                       const Rational& target) {
  if (!(a.delta < b.delta)) {
    throw RangeError("time sharing requires delta_a < delta_b");
  }
  if (target < a.delta || target > b.delta) {
    throw RangeError("share target " + target.str() + " outside [" +
                     a.delta.str() + ", " + b.delta.str() + "]");
  }
  ShareResult r;
  r.fraction_a = (b.delta - target) / (b.delta - a.delta);
  r.dof = r.fraction_a * a.dof + (Rational(1) - r.fraction_a) * b.dof;
  return r;
}

ScheduleAudit audit_schedule(const Schedule& s) {
  const int k = s.cfg.k;
  const int j = s.cfg.min_mk();
  if (s.slots.empty()) throw ValidationError("schedule has no slots");
  const int n = static_cast<int>(s.slots.size());
  for (int i = 0; i < n; ++i) {
    if (s.slots[i].t != i + 1) {
      throw ValidationError("slot indices must run 1..n without gaps");
    }
  }
  if (s.blocks.empty()) throw ValidationError("schedule has no blocks");
  int expect = 1;
  for (const auto& b : s.blocks) {
    if (b.first != expect || b.last < b.first) {
      throw ValidationError("blocks must partition the slot range in order");
    }
    expect = b.last + 1;
  }
  if (expect != n + 1) {
    throw ValidationError("blocks must cover every slot exactly once");
  }

  std::vector<long> perfect_slots(k, 0), delayed_slots(k, 0);
  Rational symbols;
  for (const auto& b : s.blocks) {
    const int span = b.last - b.first + 1;
    const auto& anchor = s.slots[b.first - 1].active;
    std::vector<long> block_delayed(k, 0);
    for (int t = b.first; t <= b.last; ++t) {
      const auto& slot = s.slots[t - 1];
      if (slot.feedback.size() != static_cast<size_t>(k)) {
        throw ValidationError("slot " + std::to_string(t) +
                              " must list a feedback mode for every user");
      }
      std::vector<bool> seen(k + 1, false);
      for (int u : slot.active) {
        if (u < 1 || u > k || seen[u]) {
          throw ValidationError("slot " + std::to_string(t) +
                                " has an invalid active-user list");
        }
        seen[u] = true;
      }
      if (b.kind != BlockKind::kZf && slot.active != anchor) {
        throw ValidationError("retrospective block starting at slot " +
                              std::to_string(b.first) +
                              " must keep one active-user set");
      }
      for (const auto& [u, mode] : slot.feedback) {
        if (u < 1 || u > k) {
          throw ValidationError("feedback entry for unknown user in slot " +
                                std::to_string(t));
        }
        const bool active = seen[u];
        switch (mode) {
          case FeedbackKind::kPerfect:
            if (b.kind != BlockKind::kZf) {
              throw ValidationError("perfect feedback inside a retrospective "
                                    "block at slot " + std::to_string(t));
            }
            if (!active) {
              throw ValidationError("perfect feedback from inactive user " +
                                    std::to_string(u) + " in slot " +
                                    std::to_string(t));
            }
            perfect_slots[u - 1] += 1;
            break;
          case FeedbackKind::kDelayed:
            if (b.kind != BlockKind::kZf && !active) {
              throw ValidationError("delayed feedback from user " +
                                    std::to_string(u) +
                                    " outside its block at slot " +
                                    std::to_string(t));
            }
            delayed_slots[u - 1] += 1;
            if (active) block_delayed[u - 1] += 1;
            break;
          case FeedbackKind::kNone:
            if (b.kind == BlockKind::kZf && active) {
              throw ValidationError("active user " + std::to_string(u) +
                                    " without perfect feedback in slot " +
                                    std::to_string(t));
            }
            break;
        }
      }
      if (b.kind == BlockKind::kZf) {
        if (slot.active.empty() ||
            static_cast<int>(slot.active.size()) > j) {
          throw ValidationError("zf slot " + std::to_string(t) +
                                " must serve between 1 and min(m,k) users");
        }
        for (int u : slot.active) {
          if (slot.feedback.at(u) != FeedbackKind::kPerfect) {
            throw ValidationError("active user " + std::to_string(u) +
                                  " without perfect feedback in slot " +
                                  std::to_string(t));
          }
        }
        symbols += Rational(static_cast<long>(slot.active.size()));
      }
    }
    switch (b.kind) {
      case BlockKind::kZf:
        break;
      case BlockKind::kMat2User: {
        if (span != 3 || anchor.size() != 2 || s.cfg.m < 2) {
          throw ValidationError("mat2user blocks span 3 slots with 2 active "
                                "users and need m >= 2");
        }
        for (int u : anchor) {
          if (block_delayed[u - 1] != 1) {
            throw ValidationError("mat2user block at slot " +
                                  std::to_string(b.first) + " needs exactly 1 "
                                  "delayed-feedback slot per active user");
          }
        }
        symbols += Rational(4);
        break;
      }
      case BlockKind::kMat3UserM2: {
        if (span != 8 || anchor.size() != 3 || s.cfg.m != 2) {
          throw ValidationError("mat3user-m2 blocks span 8 slots with 3 active "
                                "users and are defined for m = 2");
        }
        for (int u : anchor) {
          if (block_delayed[u - 1] != 3) {
            throw ValidationError("mat3user-m2 block at slot " +
                                  std::to_string(b.first) + " needs exactly 3 "
                                  "delayed-feedback slots per active user");
          }
        }
        symbols += Rational(12);
        break;
      }
    }
  }

  ScheduleAudit a;
  const Rational slots(static_cast<long>(n));
  for (int u = 0; u < k; ++u) {
    a.perfect_fraction.push_back(Rational(perfect_slots[u]) / slots);
    a.delayed_fraction.push_back(Rational(delayed_slots[u]) / slots);
    a.total_perfect_cost += a.perfect_fraction.back();
  }
  a.sum_dof = symbols / slots;
  return a;
}

std::string schedule_to_json(const Schedule& s) {
  const ScheduleAudit audit = audit_schedule(s);
  nlohmann::ordered_json doc;
  doc["m"] = s.cfg.m;
  doc["k"] = s.cfg.k;
  doc["slots"] = nlohmann::ordered_json::array();
  for (const auto& slot : s.slots) {
    nlohmann::ordered_json js;
    js["t"] = slot.t;
    js["active"] = slot.active;
    nlohmann::ordered_json fb;
    for (int u = 1; u <= s.cfg.k; ++u) {
      fb[std::to_string(u)] = feedback_kind_name(slot.feedback.at(u));
    }
    js["feedback"] = std::move(fb);
    doc["slots"].push_back(std::move(js));
  }
  doc["blocks"] = nlohmann::ordered_json::array();
  for (const auto& b : s.blocks) {
    nlohmann::ordered_json jb;
    jb["kind"] = block_kind_name(b.kind);
    jb["first"] = b.first;
    jb["last"] = b.last;
    doc["blocks"].push_back(std::move(jb));
  }
  nlohmann::ordered_json ja;
  ja["perfect"] = nlohmann::ordered_json::array();
  ja["delayed"] = nlohmann::ordered_json::array();
  for (const auto& x : audit.perfect_fraction) ja["perfect"].push_back(x.str());
  for (const auto& x : audit.delayed_fraction) ja["delayed"].push_back(x.str());
  ja["sum_dof"] = audit.sum_dof.str();
  doc["audit"] = std::move(ja);
  return doc.dump();
}

Schedule schedule_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("schedule JSON: ") + e.what());
  }
  try {
    Schedule s;
    s.cfg = make_config(doc.at("m").get<int>(), doc.at("k").get<int>());
    for (const auto& jb : doc.at("blocks")) {
      Block b;
      b.kind = parse_block_kind(jb.at("kind").get<std::string>());
      b.first = jb.at("first").get<int>();
      b.last = jb.at("last").get<int>();
      s.blocks.push_back(b);
    }
    for (const auto& js : doc.at("slots")) {
      SlotPlan slot;
      slot.t = js.at("t").get<int>();
      for (const auto& u : js.at("active")) slot.active.push_back(u.get<int>());
      for (int u = 1; u <= s.cfg.k; ++u) {
        slot.feedback[u] = parse_feedback_kind(
            js.at("feedback").at(std::to_string(u)).get<std::string>());
      }
      s.slots.push_back(std::move(slot));
    }
    // Symbols are a function of the containing block kind.
    for (const auto& b : s.blocks) {
      for (int t = b.first; t <= b.last && t <= static_cast<int>(s.slots.size());
           ++t) {
        auto& slot = s.slots[t - 1];
        switch (b.kind) {
          case BlockKind::kZf:
            slot.symbols = Rational(static_cast<long>(slot.active.size()));
            break;
          case BlockKind::kMat2User:
            slot.symbols = Rational(4, 3);
            break;
          case BlockKind::kMat3UserM2:
            slot.symbols = Rational(3, 2);
            break;
        }
      }
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("schedule JSON: ") + e.what());
  }
}

}  // namespace dofbc
