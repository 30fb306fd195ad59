#pragma once

#include <cstdint>

#include "discrim/cyclotomic.hpp"
#include "discrim/modarith.hpp"

namespace discrim {

// Counts of the quadratic character of d^2 x^2 + 4 over x in [1, (p-1)/2].
struct ResidueProfile {
  u64 p = 0;
  u64 delta = 0;
  u64 n_plus = 0;
  u64 n_minus = 0;
  u64 n_zero = 0;
};

// sum over |x| <= (p-1)/2 of (d^2 x^2 + 4 / p) e(ux/p), exact in Z[zeta_p].
CyclotomicInt quad_char_sum_direct(u64 p, u64 delta, u64 u);

// The same sum written as a complete exponential sum
// sum over c in [1, p-1] of e((-inv(4 d^2 c) u^2 + 4c)/p); a Ramanujan sum
// when p | u and a Kloosterman sum otherwise. Must agree with the direct
// form on every input.
CyclotomicInt quad_char_sum_kloosterman(u64 p, u64 delta, u64 u);

// sum over c in [1, p-1] of (c/p) e(c/p); tau * conj(tau) = p exactly.
CyclotomicInt gauss_sum(u64 p);

// sum over x in [1, (p-1)/2] of (d^2 x^2 + 4 / p); equals -1 for every
// p >= 5 and every delta coprime to p.
i64 half_sum(u64 p, u64 delta);

ResidueProfile residue_profile(u64 p, u64 delta);

// Smallest c >= 1 with (-3 d^2 c^2 - 12 / p) in {0, +1}: the least gap
// multiplier for which the collision congruence is solvable mod p.
u64 min_collision_gap(u64 p, u64 delta);

// Case-by-p-mod-12 bound on min_collision_gap: (p+3)/4, (p-1)/4, (p+5)/4,
// (p+1)/4 for p = 1, 5, 7, 11 (mod 12).
u64 collision_gap_bound(u64 p);

// sum over |x| <= floor((p-1)/6) of (d^2 x^2 + 4 / p), exact.
i64 incomplete_sum(u64 p, u64 delta);

}  // namespace discrim
