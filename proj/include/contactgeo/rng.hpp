#ifndef CONTACTGEO_RNG_HPP
#define CONTACTGEO_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

#include "contactgeo/linalg.hpp"

namespace contactgeo {

/// Counter-based generator keyed by (seed, check name, sample index), so
/// samples are reproducible independently of evaluation order.
class CheckRng {
 public:
  CheckRng(std::uint64_t seed, std::string_view check, std::uint64_t index) {
    std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a over the check name
    for (const char c : check) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ull;
    }
    state_ = mix(mix(seed) ^ h) + (index + 1) * 0x9e3779b97f4a7c15ull;
  }

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u = std::max(uniform(), 0x1.0p-60);
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    spare_ = r * std::sin(2.0 * std::numbers::pi * v);
    have_spare_ = true;
    return r * std::cos(2.0 * std::numbers::pi * v);
  }

  Vec unit_vector(int dim) {
    Vec v(dim);
    double n = 0.0;
    do {
      for (int i = 0; i < dim; ++i) v[i] = normal();
      n = v.norm();
    } while (n < 1e-8);
    return v / n;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace contactgeo

#endif  // CONTACTGEO_RNG_HPP
