#include "discrim/charsum.hpp"

#include <stdexcept>
#include <string>

namespace discrim {

namespace {

void require_odd_prime(u64 p, u64 min_p, const char* fn) {
  if (p < min_p || p == 2 || !is_prime(p))
    throw std::invalid_argument(std::string(fn) + ": p must be an odd prime >= " +
                                std::to_string(min_p));
}

u64 require_coprime_delta(u64 p, u64 delta, const char* fn) {
  u64 d = delta % p;
  if (d == 0) throw std::invalid_argument(std::string(fn) + ": p must not divide delta");
  return d;
}

}  // namespace

CyclotomicInt quad_char_sum_direct(u64 p, u64 delta, u64 u) {
  require_odd_prime(p, 3, "quad_char_sum_direct");
  u64 d = require_coprime_delta(p, delta, "quad_char_sum_direct");
  u64 d2 = mulmod(d, d, p);
  u64 ur = u % p;
  CyclotomicInt s(p);
  // The symmetric system -(p-1)/2 .. (p-1)/2 is a complete residue system,
  // and every term depends on x only through its class mod p.
  for (u64 x = 0; x < p; ++x) {
    u64 val = (mulmod(d2, mulmod(x, x, p), p) + 4) % p;
    int sym = jacobi(i64(val), p);
    if (sym != 0) s.add_root(mulmod(ur, x, p), sym);
  }
  return s.canonicalize(), s;
}

CyclotomicInt quad_char_sum_kloosterman(u64 p, u64 delta, u64 u) {
  require_odd_prime(p, 3, "quad_char_sum_kloosterman");
  u64 d = require_coprime_delta(p, delta, "quad_char_sum_kloosterman");
  u64 d2 = mulmod(d, d, p);
  u64 u2 = mulmod(u % p, u % p, p);
  std::vector<u64> inv = inverse_table(p);
  u64 inv4d2 = inv[mulmod(4 % p, d2, p)];
  CyclotomicInt s(p);
  for (u64 c = 1; c < p; ++c) {
    u64 num = (4 * c) % p;
    u64 sub = mulmod(mulmod(inv4d2, inv[c], p), u2, p);
    s.add_root((num + p - sub) % p, 1);
  }
  return s.canonicalize(), s;
}

CyclotomicInt gauss_sum(u64 p) {
  require_odd_prime(p, 3, "gauss_sum");
  CyclotomicInt s(p);
  for (u64 c = 1; c < p; ++c) s.add_root(c, jacobi(i64(c), p));
  return s.canonicalize(), s;
}

i64 half_sum(u64 p, u64 delta) {
  require_odd_prime(p, 5, "half_sum");
  u64 d = require_coprime_delta(p, delta, "half_sum");
  u64 d2 = mulmod(d, d, p);
  i64 total = 0;
  for (u64 x = 1; x <= (p - 1) / 2; ++x) {
    u64 val = (mulmod(d2, mulmod(x, x, p), p) + 4) % p;
    total += jacobi(i64(val), p);
  }
  return total;
}

ResidueProfile residue_profile(u64 p, u64 delta) {
  require_odd_prime(p, 5, "residue_profile");
  u64 d = require_coprime_delta(p, delta, "residue_profile");
  u64 d2 = mulmod(d, d, p);
  ResidueProfile out;
  out.p = p;
  out.delta = delta;
  for (u64 x = 1; x <= (p - 1) / 2; ++x) {
    u64 val = (mulmod(d2, mulmod(x, x, p), p) + 4) % p;
    int sym = jacobi(i64(val), p);
    if (sym > 0)
      ++out.n_plus;
    else if (sym < 0)
      ++out.n_minus;
    else
      ++out.n_zero;
  }
  return out;
}

u64 min_collision_gap(u64 p, u64 delta) {
  require_odd_prime(p, 5, "min_collision_gap");
  u64 d = require_coprime_delta(p, delta, "min_collision_gap");
  u64 d2 = mulmod(d, d, p);
  for (u64 x = 1; x <= p; ++x) {
    u64 t = (mulmod(3 % p, mulmod(d2, mulmod(x, x, p), p), p) + 12) % p;
    if (jacobi(i64((p - t) % p), p) >= 0) return x;
  }
  throw std::logic_error("min_collision_gap: no admissible gap below p");
}

u64 collision_gap_bound(u64 p) {
  require_odd_prime(p, 5, "collision_gap_bound");
  switch (p % 12) {
    case 1: return (p + 3) / 4;
    case 5: return (p - 1) / 4;
    case 7: return (p + 5) / 4;
    default: return (p + 1) / 4;  // p = 11 (mod 12)
  }
}

i64 incomplete_sum(u64 p, u64 delta) {
  require_odd_prime(p, 5, "incomplete_sum");
  u64 d = require_coprime_delta(p, delta, "incomplete_sum");
  u64 d2 = mulmod(d, d, p);
  u64 y = (p - 1) / 6;
  i64 total = jacobi(4, p);  // x = 0 term
  for (u64 x = 1; x <= y; ++x) {
    u64 val = (mulmod(d2, mulmod(x, x, p), p) + 4) % p;
    total += 2 * jacobi(i64(val), p);  // the summand is even in x
  }
  return total;
}

}  // namespace discrim
