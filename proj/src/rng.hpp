#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace dofbc {

// Deterministic per-trial random substream. Trial i of a run seeded with s
// always sees the same values regardless of how trials are partitioned
// across workers, so results are reproducible for any execution order.
class TrialRng {
public:
  TrialRng(std::uint64_t seed, std::uint64_t trial, std::uint64_t lane = 0) {
    state_ = mix(mix(mix(0x9e3779b97f4a7c15ULL ^ seed) ^ trial) ^ lane);
    if (state_ == 0) state_ = 0x6a09e667f3bcc909ULL;
  }

  std::uint64_t next_u64() {
    // splitmix64 stream; plenty for Monte Carlo use here.
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix_out(state_);
  }

  // Uniform in (0, 1]; never returns 0 so log() stays finite.
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller (pairs cached).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // Circularly symmetric complex normal with unit variance.
  std::complex<double> cnormal() {
    const double re = normal();
    const double im = normal();
    return {re * 0.7071067811865475244, im * 0.7071067811865475244};
  }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

private:
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    return mix_out(x);
  }

  static std::uint64_t mix_out(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Compensated accumulator for Monte Carlo reductions; keeps cross-run drift
// below 1e-12 for the trial counts used here.
class KahanSum {
public:
  void add(double x) {
    const double y = x - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

private:
  double s_ = 0.0;
  double c_ = 0.0;
};

}  // namespace dofbc
