#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace discrim {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

// All residue arithmetic goes through 128-bit intermediates so that moduli
// up to 2^63 never overflow.

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m);

// Least nonnegative residue of a signed value.
u64 reduce_signed(i64 a, u64 m);

// p^e, throws std::overflow_error past 2^63.
u64 checked_pow(u64 p, unsigned e);

// 3^k for k <= 40.
u64 pow3(unsigned k);

// Smallest k with 3^k >= n. Integer powering only, no floating point.
unsigned ceil_log3(u64 n);

// Deterministic Miller-Rabin, correct for every 64-bit input.
bool is_prime(u64 m);

// Jacobi symbol (a/n) for odd positive n.
int jacobi(i64 a, u64 n);

// Legendre symbol. p must be an odd prime; composite or even p is a
// contract violation and throws std::invalid_argument.
int legendre(i64 a, u64 p);

// Smallest x in [0, p-1] with x^2 = a (mod p), or nullopt for a non-residue.
std::optional<u64> sqrt_mod_prime(i64 a, u64 p);

// Hensel lift of x0 (a simple square root of a mod p) to the unique root
// x = x0 (mod p) of x^2 = a (mod p^r). Singular points (p | 2*x0) are
// reported as non-liftable (nullopt) rather than handled.
std::optional<u64> lift_sqrt(u64 x0, i64 a, u64 p, unsigned r);

// Smallest x >= 3 with 3x^2 + 5 = 0 (mod 2^r), r >= 3, found by 2-adic
// lifting from the residues mod 8 (each lift step doubles the modulus).
u64 solve_quadratic_mod_2r(unsigned r);

// d^{-1} mod q, in [1, q-1]. Throws std::domain_error when gcd(d, q) > 1.
u64 mod_inverse(u64 d, u64 q);

// Table of inverses of 1..p-1 mod prime p.
std::vector<u64> inverse_table(u64 p);

// mu(p^j): -1 for j = 1, 0 for j >= 2.
int mobius_prime_power(u64 p, unsigned j);

struct FactoredModulus {
  u64 m = 1;
  std::vector<std::pair<u64, unsigned>> factors;  // (prime, exponent), primes ascending

  unsigned exponent_of(u64 p) const;
  bool is_power_of_three() const;  // includes m = 1
  u64 reconstruct() const;
};

// Complete deterministic factorization: trial division, then Brent's cycle
// method with a fixed parameter sequence.
FactoredModulus factorize(u64 m);

// All z mod p^r with z^2 = e (mod p^r); p an odd prime, e reduced mod p^r.
// Handles singular e (p | e) exactly, returning every class.
std::vector<u64> sqrt_classes_mod_prime_power(u64 e, u64 p, unsigned r);

// A x^2 + B x + C = 0 (mod p^r) for an odd prime p not dividing 2A.
struct QuadraticCongruence {
  i64 A = 0;
  i64 B = 0;
  i64 C = 0;
  u64 p = 0;
  unsigned r = 1;

  std::vector<u64> solutions() const;  // sorted residues mod p^r, may be empty
};

std::vector<u32> primes_up_to(u32 limit);

}  // namespace discrim
