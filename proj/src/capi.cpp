#include "dofbc/dofbc.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include <json.hpp>

#include "bounds.hpp"
#include "errors.hpp"
#include "model.hpp"
#include "montecarlo.hpp"
#include "region.hpp"
#include "report.hpp"
#include "scheduler.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

dofbc_status fail(dofbc_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

// Runs `f` and folds the exception taxonomy onto C status codes.
template <typename F>
dofbc_status guarded(F&& f) {
  try {
    f();
    return DOFBC_OK;
  } catch (const dofbc::ParseError& e) {
    return fail(DOFBC_ERR_PARSE, e.what());
  } catch (const dofbc::DomainError& e) {
    return fail(DOFBC_ERR_DOMAIN, e.what());
  } catch (const dofbc::RangeError& e) {
    return fail(DOFBC_ERR_RANGE, e.what());
  } catch (const dofbc::InfeasibleError& e) {
    return fail(DOFBC_ERR_INFEASIBLE, e.what());
  } catch (const dofbc::UnsupportedSizeError& e) {
    return fail(DOFBC_ERR_UNSUPPORTED, e.what());
  } catch (const dofbc::ValidationError& e) {
    return fail(DOFBC_ERR_VALIDATION, e.what());
  } catch (const std::exception& e) {
    return fail(DOFBC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(DOFBC_ERR_INTERNAL, "unknown failure");
  }
}

dofbc_status require(const void* p, const char* name) {
  if (p == nullptr) {
    return fail(DOFBC_ERR_NULL_ARGUMENT,
                std::string(name) + " must not be NULL");
  }
  return DOFBC_OK;
}

}  // namespace

struct dofbc_schedule {
  dofbc::Schedule impl;
};

extern "C" {

const char* dofbc_last_error(void) { return g_last_error.c_str(); }

void dofbc_string_free(char* s) { std::free(s); }

dofbc_status dofbc_mat_dof(int m, int k, char** out) {
  if (auto st = require(out, "out")) return st;
  return guarded([&] {
    *out = dup_string(dofbc::mat_dof(dofbc::make_config(m, k)).str());
  });
}

dofbc_status dofbc_gamma_dof(int m, int k, char** out) {
  if (auto st = require(out, "out")) return st;
  return guarded([&] {
    *out = dup_string(dofbc::gamma_dof(dofbc::make_config(m, k)).str());
  });
}

dofbc_status dofbc_bound_report_json(int m, int k, const char* alphas_csv,
                                     char** out) {
  if (auto st = require(out, "out")) return st;
  if (auto st = require(alphas_csv, "alphas_csv")) return st;
  return guarded([&] {
    const auto cfg = dofbc::make_config(m, k);
    const auto averages = dofbc::validate_exponents(
        cfg, dofbc::parse_rational_vector(alphas_csv));
    *out = dup_string(
        dofbc::bound_report_json(dofbc::build_bound_report(cfg, averages)));
  });
}

dofbc_status dofbc_curve_csv(int m, int k, const char* mode, int grid_points,
                             char** out) {
  if (auto st = require(out, "out")) return st;
  if (auto st = require(mode, "mode")) return st;
  return guarded([&] {
    const auto cfg = dofbc::make_config(m, k);
    const auto rows =
        dofbc::build_curve(cfg, dofbc::parse_curve_mode(mode), grid_points);
    *out = dup_string(dofbc::curve_csv(rows));
  });
}

dofbc_status dofbc_min_cost_json(int m, int k, const char* target, char** out) {
  if (auto st = require(out, "out")) return st;
  return guarded([&] {
    const auto cfg = dofbc::make_config(m, k);
    if (target != nullptr) {
      *out = dup_string(
          dofbc::min_cost_target_json(cfg, dofbc::Rational::parse(target)));
    } else {
      *out = dup_string(dofbc::max_dof_cost_json(cfg));
    }
  });
}

dofbc_status dofbc_check_point_json(int m, int k, const char* alphas_csv,
                                    const char* dof_csv, char** out) {
  if (auto st = require(out, "out")) return st;
  if (auto st = require(alphas_csv, "alphas_csv")) return st;
  if (auto st = require(dof_csv, "dof_csv")) return st;
  return guarded([&] {
    const auto cfg = dofbc::make_config(m, k);
    const auto averages = dofbc::validate_exponents(
        cfg, dofbc::parse_rational_vector(alphas_csv));
    const auto d =
        dofbc::make_dof_point(cfg, dofbc::parse_rational_vector(dof_csv));
    *out = dup_string(
        dofbc::membership_json(dofbc::check_point(cfg, averages, d)));
  });
}

dofbc_status dofbc_max_sum_dof_json(int m, int k, const char* alphas_csv,
                                    char** out) {
  if (auto st = require(out, "out")) return st;
  if (auto st = require(alphas_csv, "alphas_csv")) return st;
  return guarded([&] {
    const auto cfg = dofbc::make_config(m, k);
    const auto averages = dofbc::validate_exponents(
        cfg, dofbc::parse_rational_vector(alphas_csv));
    *out = dup_string(
        dofbc::max_sum_dof_json(dofbc::max_sum_dof_lp(cfg, averages)));
  });
}

dofbc_status dofbc_schedule_synthesize(int m, int k, const char* deltas_csv,
                                       const char* scheme,
                                       dofbc_schedule** out) {
  if (auto st = require(out, "out")) return st;
  return guarded([&] {
    const std::string name = scheme == nullptr ? "greedy" : scheme;
    const auto cfg = dofbc::make_config(m, k);
    dofbc::Schedule s;
    if (name == "greedy" || name == "two-block") {
      if (deltas_csv == nullptr) {
        throw dofbc::ParseError("scheme '" + name +
                                "' needs a per-user budget vector");
      }
      const auto deltas = dofbc::parse_rational_vector(deltas_csv);
      s = name == "greedy" ? dofbc::greedy_schedule(cfg, deltas)
                           : dofbc::two_block_schedule(cfg, deltas);
    } else if (name == "delayed-4/3" || name == "delayed-3/2") {
      if (m != 2) {
        throw dofbc::DomainError(
            "delayed block schedules are defined for m = 2");
      }
      const dofbc::Rational target = name == "delayed-4/3"
                                         ? dofbc::Rational(4, 3)
                                         : dofbc::Rational(3, 2);
      s = dofbc::delayed_block_schedule(k, target);
    } else {
      throw dofbc::ParseError(
          "unknown scheme '" + name +
          "' (expected greedy, two-block, delayed-4/3, or delayed-3/2)");
    }
    *out = new dofbc_schedule{std::move(s)};
  });
}

dofbc_status dofbc_schedule_from_json(const char* json, dofbc_schedule** out) {
  if (auto st = require(out, "out")) return st;
  if (auto st = require(json, "json")) return st;
  return guarded([&] {
    *out = new dofbc_schedule{dofbc::schedule_from_json(json)};
  });
}

dofbc_status dofbc_schedule_to_json(const dofbc_schedule* s, char** out) {
  if (auto st = require(out, "out")) return st;
  if (auto st = require(s, "schedule")) return st;
  return guarded([&] {
    *out = dup_string(dofbc::schedule_to_json(s->impl));
  });
}

dofbc_status dofbc_schedule_audit_json(const dofbc_schedule* s, char** out) {
  if (auto st = require(out, "out")) return st;
  if (auto st = require(s, "schedule")) return st;
  return guarded([&] {
    const dofbc::ScheduleAudit audit = dofbc::audit_schedule(s->impl);
    nlohmann::ordered_json doc;
    doc["perfect"] = nlohmann::ordered_json::array();
    for (const auto& r : audit.perfect_fraction) doc["perfect"].push_back(r.str());
    doc["delayed"] = nlohmann::ordered_json::array();
    for (const auto& r : audit.delayed_fraction) doc["delayed"].push_back(r.str());
    doc["sum_dof"] = audit.sum_dof.str();
    doc["total_perfect_cost"] = audit.total_perfect_cost.str();
    *out = dup_string(doc.dump());
  });
}

long dofbc_schedule_slot_count(const dofbc_schedule* s) {
  if (s == nullptr) return -1;
  return static_cast<long>(s->impl.slots.size());
}

void dofbc_schedule_free(dofbc_schedule* s) { delete s; }

dofbc_status dofbc_time_share_json(const char* delta_a, const char* dof_a,
                                   const char* delta_b, const char* dof_b,
                                   const char* target, char** out) {
  if (auto st = require(out, "out")) return st;
  if (auto st = require(delta_a, "delta_a")) return st;
  if (auto st = require(dof_a, "dof_a")) return st;
  if (auto st = require(delta_b, "delta_b")) return st;
  if (auto st = require(dof_b, "dof_b")) return st;
  if (auto st = require(target, "target")) return st;
  return guarded([&] {
    const dofbc::SharePoint a{dofbc::Rational::parse(delta_a),
                              dofbc::Rational::parse(dof_a)};
    const dofbc::SharePoint b{dofbc::Rational::parse(delta_b),
                              dofbc::Rational::parse(dof_b)};
    const auto r = dofbc::time_share(a, b, dofbc::Rational::parse(target));
    *out = dup_string(dofbc::time_share_json(r));
  });
}

dofbc_status dofbc_simulate_zf(int m, int k, const char* alphas_csv,
                               const char* active_csv, const char* snr_grid,
                               long trials, uint64_t seed, char** csv_out,
                               char** json_out) {
  if (auto st = require(alphas_csv, "alphas_csv")) return st;
  if (auto st = require(snr_grid, "snr_grid")) return st;
  return guarded([&] {
    dofbc::ZfOptions opt;
    opt.cfg = dofbc::make_config(m, k);
    opt.alphas = dofbc::validate_exponents(
        opt.cfg, dofbc::parse_rational_vector(alphas_csv));
    if (active_csv != nullptr && active_csv[0] != '\0') {
      for (const auto& r : dofbc::parse_rational_vector(active_csv)) {
        if (!r.is_integer()) {
          throw dofbc::ParseError("active user ids must be integers");
        }
        opt.active.push_back(static_cast<int>(r.to_double()));
      }
    }
    opt.snr_db = dofbc::parse_snr_grid(snr_grid);
    opt.trials = trials;
    opt.seed = seed;
    const dofbc::ZfResult res = dofbc::zf_sum_rate(opt);
    if (csv_out != nullptr) *csv_out = dup_string(dofbc::zf_points_csv(res));
    if (json_out != nullptr) *json_out = dup_string(dofbc::zf_fit_json(res));
  });
}

dofbc_status dofbc_verify(const char* check, long trials, uint64_t seed,
                          int* pass_out, char** csv_out, char** json_out) {
  if (auto st = require(check, "check")) return st;
  if (auto st = require(pass_out, "pass_out")) return st;
  return guarded([&] {
    const dofbc::VerifyOutput res = dofbc::run_verification(check, trials, seed);
    *pass_out = res.pass ? 1 : 0;
    if (csv_out != nullptr) *csv_out = dup_string(res.csv);
    if (json_out != nullptr) *json_out = dup_string(res.json);
  });
}

}  // extern "C"
