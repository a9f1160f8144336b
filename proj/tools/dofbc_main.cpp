// Command-line front end for the DoF / CSIT-feedback tradeoff library.
// Talks to the core exclusively through the C API in dofbc/dofbc.h.
//
// Exit codes: 0 success, 1 computation/input error reported by the library,
// 2 usage error (unknown flag, missing flag, bad config), 3 verification
// suite failure.

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dofbc/dofbc.h"

namespace {

// Every flag value is kept as text; numeric flags are converted at use time
// so that --config values and command-line values take the same path.
struct FlagSet {
  CLI::App* cmd = nullptr;
  std::string config_path;
  std::map<std::string, std::pair<CLI::Option*, std::string*>> bound;

  void attach(CLI::App* app) {
    cmd = app;
    app->add_option("--config", config_path,
                    "JSON file supplying any of this subcommand's flags; "
                    "flags given on the command line win");
  }

  void bind(const std::string& name, std::string* target,
            const std::string& help) {
    CLI::Option* opt = cmd->add_option("--" + name, *target, help);
    bound[name] = {opt, target};
  }

  // Applies config values for flags not set on the command line.
  // Returns 0 or the process exit code after printing a message.
  int merge() {
    if (config_path.empty()) return 0;
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "error: cannot open config file '" << config_path << "'\n";
      return 2;
    }
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const std::exception& e) {
      std::cerr << "error: config file '" << config_path << "': " << e.what()
                << "\n";
      return 2;
    }
    if (!doc.is_object()) {
      std::cerr << "error: config file '" << config_path
                << "' must hold a JSON object\n";
      return 2;
    }
    for (const auto& [key, value] : doc.items()) {
      auto it = bound.find(key);
      if (it == bound.end()) {
        std::cerr << "error: config key '" << key
                  << "' does not name a flag of this subcommand\n";
        return 2;
      }
      if (it->second.first->count() > 0) continue;  // explicit flag wins
      *it->second.second =
          value.is_string() ? value.get<std::string>() : value.dump();
    }
    return 0;
  }
};

bool to_long(const std::string& text, long long& out) {
  if (text.empty()) return false;
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(text.c_str(), &end, 10);
  if (errno != 0 || end == nullptr || *end != '\0') return false;
  out = v;
  return true;
}

bool to_u64(const std::string& text, unsigned long long& out) {
  if (text.empty() || text[0] == '-') return false;
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
  if (errno != 0 || end == nullptr || *end != '\0') return false;
  out = v;
  return true;
}

int usage_error(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return 2;
}

int api_error() {
  std::cerr << "error: " << dofbc_last_error() << "\n";
  return 1;
}

// Requires a nonempty flag, converting to int; exit-code 2 semantics.
int need_int(const std::string& text, const char* flag, long long& out) {
  if (text.empty()) return usage_error(std::string("missing --") + flag);
  if (!to_long(text, out)) {
    return usage_error(std::string("--") + flag + " expects an integer, got '" +
                       text + "'");
  }
  return 0;
}

int write_file(const std::string& path, const char* data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file '" << path << "'\n";
    return 1;
  }
  out << data;
  return out.good() ? 0 : 1;
}

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { dofbc_string_free(p); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact DoF vs. CSIT-feedback tradeoff toolkit for the K-user MISO "
      "broadcast channel: bounds, region queries, schedule synthesis, and "
      "Monte Carlo verification."};
  app.require_subcommand(1);

  // bounds
  FlagSet fb;
  std::string b_m, b_k, b_alpha;
  fb.attach(app.add_subcommand("bounds", "Bound report for per-user CSIT "
                                         "quality exponents (JSON)"));
  fb.bind("m", &b_m, "transmit antennas");
  fb.bind("k", &b_k, "users");
  fb.bind("alpha", &b_alpha, "per-user quality exponents, e.g. 1/3,1/3,1/3");

  // curve
  FlagSet fc;
  std::string c_m, c_k, c_mode = "alternating", c_grid = "96", c_out;
  fc.attach(app.add_subcommand(
      "curve", "Outer/inner sum-DoF tradeoff curve over a feedback-fraction "
               "grid (CSV)"));
  fc.bind("m", &c_m, "transmit antennas");
  fc.bind("k", &c_k, "users");
  fc.bind("mode", &c_mode, "alternating or delayed");
  fc.bind("grid", &c_grid, "number of grid points over [0,1]");
  fc.bind("out", &c_out, "write CSV to this file instead of stdout");

  // check-point
  FlagSet fp;
  std::string p_m, p_k, p_alpha, p_dof;
  fp.attach(app.add_subcommand(
      "check-point", "DoF region membership verdict for a point (JSON)"));
  fp.bind("m", &p_m, "transmit antennas");
  fp.bind("k", &p_k, "users");
  fp.bind("alpha", &p_alpha, "per-user quality exponents");
  fp.bind("dof", &p_dof, "candidate per-user DoF values, e.g. 3/4,1/2,1/2");

  // schedule
  FlagSet fs;
  std::string s_m, s_k, s_delta, s_scheme = "greedy";
  fs.attach(app.add_subcommand(
      "schedule", "Synthesize a feedback schedule and print it (JSON)"));
  fs.bind("m", &s_m, "transmit antennas");
  fs.bind("k", &s_k, "users");
  fs.bind("delta", &s_delta, "per-user perfect-feedback budgets");
  fs.bind("scheme", &s_scheme,
          "greedy, two-block, delayed-4/3, or delayed-3/2");

  // min-cost
  FlagSet fm;
  std::string m_m, m_k, m_target;
  fm.attach(app.add_subcommand(
      "min-cost", "Minimum feedback cost: for a target sum DoF (m=2, k=3) or "
                  "for the maximum sum DoF (JSON)"));
  fm.bind("m", &m_m, "transmit antennas");
  fm.bind("k", &m_k, "users");
  fm.bind("target", &m_target, "target sum DoF (omit for the max-DoF report)");

  // simulate zf
  auto* sim = app.add_subcommand("simulate", "Monte Carlo link simulations");
  sim->require_subcommand(1);
  FlagSet fz;
  std::string z_m, z_k, z_alpha, z_active, z_snr, z_trials = "10000",
                                                  z_seed = "1", z_out;
  fz.attach(sim->add_subcommand(
      "zf", "Zero-forcing sum-rate sweep against estimated CSIT (CSV + JSON "
            "slope fit)"));
  fz.bind("m", &z_m, "transmit antennas");
  fz.bind("k", &z_k, "users");
  fz.bind("alpha", &z_alpha, "per-user quality exponents");
  fz.bind("active", &z_active, "active user ids (default: 1..min(m,k))");
  fz.bind("snr", &z_snr, "SNR grid start:stop:step in dB, e.g. 30:70:10");
  fz.bind("trials", &z_trials, "Monte Carlo trials per grid point");
  fz.bind("seed", &z_seed, "random seed");
  fz.bind("out", &z_out, "write CSV to this file instead of stdout");

  // verify
  FlagSet fv;
  std::string v_check, v_trials = "0", v_seed = "1", v_out;
  auto* verify = app.add_subcommand(
      "verify", "Randomized verification suites (exit 3 on failure)");
  verify
      ->add_option("check", v_check,
                   "one of: lemma1, lemma2, lemma3, prop4")
      ->required();
  fv.attach(verify);
  fv.bind("trials", &v_trials, "trial count (0 = suite default)");
  fv.bind("seed", &v_seed, "random seed");
  fv.bind("out", &v_out, "write per-point CSV to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help() << std::flush;
    return 2;
  }

  if (*fb.cmd) {
    if (int rc = fb.merge()) return rc;
    long long m = 0, k = 0;
    if (int rc = need_int(b_m, "m", m)) return rc;
    if (int rc = need_int(b_k, "k", k)) return rc;
    if (b_alpha.empty()) return usage_error("missing --alpha");
    OwnedString out;
    if (dofbc_bound_report_json(static_cast<int>(m), static_cast<int>(k),
                                b_alpha.c_str(), &out.p) != DOFBC_OK) {
      return api_error();
    }
    std::cout << out.p << "\n";
    return 0;
  }

  if (*fc.cmd) {
    if (int rc = fc.merge()) return rc;
    long long m = 0, k = 0, grid = 0;
    if (int rc = need_int(c_m, "m", m)) return rc;
    if (int rc = need_int(c_k, "k", k)) return rc;
    if (int rc = need_int(c_grid, "grid", grid)) return rc;
    OwnedString out;
    if (dofbc_curve_csv(static_cast<int>(m), static_cast<int>(k),
                        c_mode.c_str(), static_cast<int>(grid),
                        &out.p) != DOFBC_OK) {
      return api_error();
    }
    if (!c_out.empty()) return write_file(c_out, out.p);
    std::cout << out.p;
    return 0;
  }

  if (*fp.cmd) {
    if (int rc = fp.merge()) return rc;
    long long m = 0, k = 0;
    if (int rc = need_int(p_m, "m", m)) return rc;
    if (int rc = need_int(p_k, "k", k)) return rc;
    if (p_alpha.empty()) return usage_error("missing --alpha");
    if (p_dof.empty()) return usage_error("missing --dof");
    OwnedString out;
    if (dofbc_check_point_json(static_cast<int>(m), static_cast<int>(k),
                               p_alpha.c_str(), p_dof.c_str(),
                               &out.p) != DOFBC_OK) {
      return api_error();
    }
    std::cout << out.p << "\n";
    return 0;
  }

  if (*fs.cmd) {
    if (int rc = fs.merge()) return rc;
    long long m = 0, k = 0;
    if (int rc = need_int(s_m, "m", m)) return rc;
    if (int rc = need_int(s_k, "k", k)) return rc;
    const bool needs_delta = s_scheme == "greedy" || s_scheme == "two-block";
    if (needs_delta && s_delta.empty()) {
      return usage_error("scheme '" + s_scheme + "' requires --delta");
    }
    dofbc_schedule* sched = nullptr;
    if (dofbc_schedule_synthesize(static_cast<int>(m), static_cast<int>(k),
                                  s_delta.empty() ? nullptr : s_delta.c_str(),
                                  s_scheme.c_str(), &sched) != DOFBC_OK) {
      return api_error();
    }
    OwnedString out;
    const dofbc_status st = dofbc_schedule_to_json(sched, &out.p);
    dofbc_schedule_free(sched);
    if (st != DOFBC_OK) return api_error();
    std::cout << out.p << "\n";
    return 0;
  }

  if (*fm.cmd) {
    if (int rc = fm.merge()) return rc;
    long long m = 0, k = 0;
    if (int rc = need_int(m_m, "m", m)) return rc;
    if (int rc = need_int(m_k, "k", k)) return rc;
    OwnedString out;
    if (dofbc_min_cost_json(static_cast<int>(m), static_cast<int>(k),
                            m_target.empty() ? nullptr : m_target.c_str(),
                            &out.p) != DOFBC_OK) {
      return api_error();
    }
    std::cout << out.p << "\n";
    return 0;
  }

  if (*fz.cmd) {
    if (int rc = fz.merge()) return rc;
    long long m = 0, k = 0, trials = 0;
    if (int rc = need_int(z_m, "m", m)) return rc;
    if (int rc = need_int(z_k, "k", k)) return rc;
    if (z_alpha.empty()) return usage_error("missing --alpha");
    if (z_snr.empty()) return usage_error("missing --snr");
    if (int rc = need_int(z_trials, "trials", trials)) return rc;
    unsigned long long seed = 0;
    if (!to_u64(z_seed, seed)) {
      return usage_error("--seed expects a nonnegative integer, got '" +
                         z_seed + "'");
    }
    OwnedString csv, json;
    if (dofbc_simulate_zf(static_cast<int>(m), static_cast<int>(k),
                          z_alpha.c_str(),
                          z_active.empty() ? nullptr : z_active.c_str(),
                          z_snr.c_str(), trials, seed, &csv.p,
                          &json.p) != DOFBC_OK) {
      return api_error();
    }
    if (!z_out.empty()) {
      if (int rc = write_file(z_out, csv.p)) return rc;
    } else {
      std::cout << csv.p;
    }
    std::cout << json.p << "\n";
    return 0;
  }

  if (*fv.cmd) {
    if (int rc = fv.merge()) return rc;
    long long trials = 0;
    if (int rc = need_int(v_trials, "trials", trials)) return rc;
    unsigned long long seed = 0;
    if (!to_u64(v_seed, seed)) {
      return usage_error("--seed expects a nonnegative integer, got '" +
                         v_seed + "'");
    }
    int pass = 0;
    OwnedString csv, json;
    if (dofbc_verify(v_check.c_str(), trials, seed, &pass, &csv.p,
                     &json.p) != DOFBC_OK) {
      return api_error();
    }
    if (!v_out.empty()) {
      if (int rc = write_file(v_out, csv.p)) return rc;
    }
    std::cout << json.p << "\n";
    return pass ? 0 : 3;
  }

  return usage_error("no subcommand given");  // unreachable; parse enforces it
}
