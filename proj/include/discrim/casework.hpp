#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "discrim/cyclotomic.hpp"
#include "discrim/discriminator.hpp"
#include "discrim/modarith.hpp"

namespace discrim {

// The eight modulus shapes of the partition argument, plus the power-of-three
// sentinel (which never occurs strictly inside a window).
enum class CaseVariant {
  kPowerOfThree,
  kI,     // m = delta * p,   delta >= 6, p >= 5 prime, p != 7, p coprime to delta
  kII,    // m = delta * p^r, delta >= 4, r >= 2
  kIII,   // m = 2^r
  kIV,    // m = 2^r * t,     r >= 2, t >= 5 odd
  kV,     // m = 2^r * 3^s,   r, s >= 1
  kVI,    // m = 3^r * 14
  kVII,   // m = delta * p^t, 1 <= delta <= 3
  kVIII,  // m = 3^r * 7
};

struct CaseTag {
  CaseVariant variant = CaseVariant::kPowerOfThree;
  u64 m = 1;
  u64 delta = 0;  // cases I, II, VII; case IV holds the odd part here
  u64 p = 0;      // the prime > 3 involved (I, II, VII; 7 for VI, VIII)
  unsigned r = 0;  // exponent: on p for II/VII, on 2 for III/IV/V, on 3 for VI/VIII/PowerOfThree
  unsigned s = 0;  // case V only: exponent on 3

  u64 reconstruct() const;
  std::string describe() const;
};

// Deterministic classification following the precedence of the partition
// proof: powers of three, then no-large-prime shapes, then two distinct
// primes > 3 (choosing p != 7), then the single-large-prime routing by the
// exponents of 2 and 3. n is carried for window bookkeeping only.
CaseTag classify(const FactoredModulus& fm, u64 n);

// Is m strictly inside the window n <= m < 3^ceil(log3 n)?
bool in_window(u64 m, u64 n);

// Builds a witness pair by the constructive recipe of m's case: explicit
// small pairs and 2-adic roots for the even cases, gap search c = 1, 2, ...
// with a square root mod p^r for the delta*p^r cases, and the quadratic
// pair search for delta <= 3. Returns nullopt exactly when no pair with
// b <= n exists (the exceptional moduli 7 * 3^{6s+4}).
std::optional<CollisionWitness> construct_collision(const FactoredModulus& fm, u64 n,
                                                    const CaseTag& tag);

struct PairCount {
  u64 X = 0;        // floor(p/3) * p^{t-1}
  u64 total = 0;    // pairs 1 <= a, b <= X with d^2(a^2+ab+b^2)+1 = 0 (mod p^t)
  u64 offdiag = 0;  // the same excluding a = b
};

// Solution-pair count by solving the quadratic in b for each a (square roots
// mod p^t, singular classes included exactly). O(X log p).
PairCount count_quadratic_pairs(u64 p, unsigned t, u64 delta);

// The O(X^2) enumeration, kept as the oracle for the sieved counter.
// Refuses when X^2 exceeds the pair-operation budget.
PairCount count_quadratic_pairs_naive(u64 p, unsigned t, u64 delta,
                                      u64 budget = u64(10000000000));

struct WindowCollisionCount {
  u64 m = 0;       // delta * p^t
  unsigned k = 0;  // 3^{k-1} < m < 3^k
  u64 bound = 0;   // 1 + 3^{k-1}
  u64 pairs = 0;   // collisions of a^3 + a among 1 <= a < b <= bound
  std::optional<CollisionWitness> first;
};

// Exact count of cube collisions inside the 3-adic window of m = delta*p^t.
WindowCollisionCount count_window_collisions(u64 p, unsigned t, u64 delta,
                                             InjectivityTester& tester);

// Existence-only variant for the long-run range (bounded memory, early exit).
std::optional<CollisionWitness> window_collision_witness(u64 p, unsigned t, u64 delta);

// The level-j exponential sum: over c coprime to p^j and 1 <= a, b <= X, of
// e((c * (d^2(a^2+ab+b^2) + 1)) / p^j). Exact in Z[zeta_{p^j}].
CyclotomicInt level_sum(u64 p, unsigned t, u64 delta, unsigned j,
                        u64 budget = u64(10000000000));

// Closed form for j < t: X^2 p^{-j} (-3/p^j) mu(p^j).
i64 level_sum_closed_form(u64 p, unsigned t, u64 delta, unsigned j);

// X^2/p^t - (-3/p) X^2/p^{t+1} - 2 p^{t/2}(2 + ln p^t)^2 for t >= 2, and
// X^2/p^t - 2 p^{t/2}(2 + ln p^t)^2 for t = 1.
double pair_count_lower_bound(u64 p, unsigned t);

// min_collision_gap(7, 3^r mod 7) for r = 0..r_max; the value depends only
// on r mod 3 and follows the pattern 2, 3, 1.
std::vector<std::pair<unsigned, u64>> gap_pattern_mod7(unsigned r_max);

}  // namespace discrim
