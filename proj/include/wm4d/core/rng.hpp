#pragma once

#include <cstdint>
#include <random>

namespace wm4d {

/// Seeded random stream. All randomness in the project flows through
/// explicitly constructed streams so every pipeline stage is reproducible.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return uni_(gen_); }                       // [0,1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal() { return gauss_(gen_); }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return std::uniform_int_distribution<int>(lo, hi)(gen_);
  }
  bool bernoulli(double p) { return uniform() < p; }

  std::mt19937_64& raw() { return gen_; }

  /// Derive an independent child stream; mixing constant keeps siblings apart.
  RngStream fork(std::uint64_t salt) {
    std::uint64_t s = gen_();
    return RngStream(s ^ (salt * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL));
  }

 private:
  std::mt19937_64 gen_;
  std::uniform_real_distribution<double> uni_{0.0, 1.0};
  std::normal_distribution<double> gauss_{0.0, 1.0};
};

}  // namespace wm4d
