#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace dsspan {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seeded generator with hand-rolled bounded draws. std::uniform_*_distribution
// is implementation-defined, so reports would not be reproducible across
// standard libraries if we used it.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, bound); bound >= 1. Modulo bias is irrelevant at the
  // bounds used here (all far below 2^32).
  int below(int bound) { return static_cast<int>(next() % static_cast<std::uint64_t>(bound)); }

  int range(int lo, int hi) { return lo + below(hi - lo + 1); }  // inclusive

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return unit() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
      std::swap(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(below(i + 1))]);
    }
  }

  // Derives independent sub-seeds, e.g. per (repetition, fold) job.
  static std::uint64_t mix(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t p : parts) h = splitmix64(h ^ splitmix64(p));
    return h;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace dsspan
