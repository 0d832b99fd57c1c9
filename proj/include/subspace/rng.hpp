#pragma once

#include <cstdint>
#include <random>

namespace subspace {

// One step of the splitmix64 generator; also used to mix seed material.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic per-trial seed from (master, row, trial). Independent of
// thread scheduling by construction.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0) {
  std::uint64_t s = master;
  std::uint64_t m = splitmix64(s);
  s = m ^ (a * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
  m = splitmix64(s);
  s = m ^ (b * 0x9e3779b97f4a7c15ULL + 1);
  return splitmix64(s);
}

// Explicit-state RNG. Gaussian variates come from Box-Muller so the stream
// does not depend on the standard library's distribution implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on [0, 1).
  double uniform() { return (gen_() >> 11) * 0x1.0p-53; }

  double gaussian();

  int rademacher() { return (gen_() >> 63) ? 1 : -1; }

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace subspace
