#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "discrim/modarith.hpp"

namespace discrim {

struct DiscriminatorResult {
  u64 n = 0;
  unsigned k = 0;                         // ceil(log3 n)
  std::optional<unsigned> exceptional_s;  // n = 3^{6s+5} + 1 or + 2
  u64 delta = 0;
};

// A pair a < b with b^3 + b = a^3 + a (mod m), certifying non-injectivity.
struct CollisionWitness {
  u64 a = 0;
  u64 b = 0;
  u64 m = 0;

  // Re-checks the congruence by plain modular reduction (independent of the
  // incremental evaluation used by the searches). Never forms a full cube.
  bool valid() const;
};

// s such that n - 1 or n - 2 equals 3^{6s+5}, if any.
std::optional<unsigned> exceptional_index(u64 n);

// The two-branch closed form: 7 * 3^{6s+4} on the exceptional set, else 3^k.
DiscriminatorResult delta_closed_form(u64 n);

// Walks f(a) = a^3 + a mod m for a = 1, 2, ... using the constant third
// difference of a^3 (no multiplications in the loop).
class CubeWalker {
 public:
  explicit CubeWalker(u64 m)
      : m_(m), v_(2 % m), d1_(8 % m), d2_(12 % m) {}

  u64 value() const { return v_; }  // f(a) for the current a

  void step() {
    v_ += d1_;
    if (v_ >= m_) v_ -= m_;
    d1_ += d2_;
    if (d1_ >= m_) d1_ -= m_;
    d2_ += 6;
    while (d2_ >= m_) d2_ -= m_;
  }

 private:
  u64 m_, v_, d1_, d2_;
};

// Injectivity testing of a^3 + a with a reusable flag buffer cleared lazily
// via generation counters, so range sweeps over many moduli never reallocate.
// Not thread-safe: each worker owns a private instance.
class InjectivityTester {
 public:
  struct CollisionCount {
    u64 pairs = 0;
    std::optional<CollisionWitness> first;
  };

  // True iff a^3 + a are pairwise distinct mod m for a = 1..n.
  bool is_injective(u64 n, u64 m);

  // Lexicographically smallest (a, b), or nullopt when injective.
  std::optional<CollisionWitness> find_collision(u64 n, u64 m);

  // The collision with smallest b (cheapest existence check).
  std::optional<CollisionWitness> first_collision(u64 n, u64 m);

  // Exact number of colliding pairs plus the earliest witness.
  CollisionCount count_collisions(u64 n, u64 m);

  // Smallest m >= n with is_injective(n, m). The search is capped at 3^k,
  // which is itself tested, so termination does not presuppose the closed
  // form. Optionally records the first witness of each rejected modulus.
  DiscriminatorResult delta_bruteforce(u64 n,
                                       std::vector<CollisionWitness>* rejected = nullptr);

 private:
  void bump_generation();
  std::vector<u32> stamp_;
  std::vector<u32> first_;
  std::vector<u32> count_;
  u32 gen_ = 0;
};

// Existence-only collision search with a segmented bit buffer, for moduli
// too large for per-residue arrays. Memory use is segment_bytes.
std::optional<CollisionWitness> find_collision_segmented(u64 n, u64 m,
                                                         u64 segment_bytes = u64(1) << 26);

}  // namespace discrim
