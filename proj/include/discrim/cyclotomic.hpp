#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "discrim/modarith.hpp"

namespace discrim {

// Exact element of Z[zeta_q] for a prime-power order q = p^j, stored as an
// integer coefficient vector indexed by e(i/q). The only Z-linear relations
// among these roots are generated by sum_{i<p} e((x + i*q/p)/q) = 0 for
// x in [0, q/p); the canonical form zeroes the coefficients at indices
// below q/p. For prime q this is the usual normalization coeff[0] = 0, and
// a value is rational exactly when the remaining coefficients are all equal
// (with rational value minus that common coefficient).
class CyclotomicInt {
 public:
  explicit CyclotomicInt(u64 order);

  static CyclotomicInt from_terms(u64 order,
                                  std::initializer_list<std::pair<u64, i64>> terms);

  u64 order() const { return q_; }
  u64 base_prime() const { return p_; }

  // += coeff * e(index/order)
  void add_root(u64 index, i64 coeff);
  void add_rational(i64 value) { add_root(0, value); }

  CyclotomicInt& canonicalize();

  bool operator==(const CyclotomicInt& other) const;
  bool operator!=(const CyclotomicInt& other) const { return !(*this == other); }

  CyclotomicInt operator*(const CyclotomicInt& other) const;
  CyclotomicInt operator+(const CyclotomicInt& other) const;

  CyclotomicInt conjugate() const;  // Galois action i -> q - i

  bool is_zero() const;
  bool is_rational() const;
  i64 rational_value() const;  // requires is_rational()

  // Complex absolute value from the exact coefficients, in double precision.
  double magnitude() const;

  const std::vector<i64>& coeffs() const { return c_; }

 private:
  u64 q_ = 0;      // order, a prime power
  u64 p_ = 0;      // base prime
  u64 block_ = 0;  // q / p
  std::vector<i64> c_;
  bool canonical_ = true;
};

}  // namespace discrim
