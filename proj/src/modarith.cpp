#include "discrim/modarith.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace discrim {

u64 powmod(u64 a, u64 e, u64 m) {
  if (m == 1) return 0;
  u64 x = 1;
  a %= m;
  while (e) {
    if (e & 1) x = mulmod(x, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return x;
}

u64 reduce_signed(i64 a, u64 m) {
  if (m == 0) throw std::invalid_argument("reduce_signed: zero modulus");
  if (a >= 0) return u64(a) % m;
  u64 r = u64(-(a + 1)) % m;  // avoids overflow at INT64_MIN
  return (m - 1 - r) % m;
}

u64 checked_pow(u64 p, unsigned e) {
  u64 x = 1;
  const u64 cap = u64(1) << 63;
  for (unsigned i = 0; i < e; ++i) {
    if (x > cap / p) throw std::overflow_error("checked_pow: exceeds 2^63");
    x *= p;
  }
  return x;
}

u64 pow3(unsigned k) {
  if (k > 40) throw std::overflow_error("pow3: exponent too large for u64");
  u64 x = 1;
  for (unsigned i = 0; i < k; ++i) x *= 3;
  return x;
}

unsigned ceil_log3(u64 n) {
  if (n == 0) throw std::invalid_argument("ceil_log3: n must be positive");
  unsigned k = 0;
  u64 pw = 1;
  while (pw < n) {
    pw *= 3;  // 3^40 > 2^63 >= n, never overflows u64
    ++k;
  }
  return k;
}

bool is_prime(u64 m) {
  if (m < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (m == p) return true;
    if (m % p == 0) return false;
  }
  if (m < 41 * 41) return true;
  u64 d = m - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Witness set valid for all m < 3.3e24, in particular all 64-bit inputs.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, m);
    if (x == 1 || x == m - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, m);
      if (x == m - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

int jacobi(i64 a, u64 n) {
  if (n == 0 || (n & 1) == 0) throw std::invalid_argument("jacobi: n must be odd and positive");
  u64 x = reduce_signed(a, n);
  int result = 1;
  while (x != 0) {
    while ((x & 1) == 0) {
      x >>= 1;
      u64 r = n & 7;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(x, n);
    if ((x & 3) == 3 && (n & 3) == 3) result = -result;
    x %= n;
  }
  return n == 1 ? result : 0;
}

int legendre(i64 a, u64 p) {
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("legendre: p must be an odd prime");
  return jacobi(a, p);
}

namespace {

// Tonelli-Shanks with a deterministic non-residue search.
u64 tonelli_shanks(u64 a, u64 p) {
  u64 q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  u64 z = 2;
  while (jacobi(i64(z), p) != -1) ++z;
  u64 m = s;
  u64 c = powmod(z, q, p);
  u64 t = powmod(a, q, p);
  u64 r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    u64 t2 = t;
    u64 i = 0;
    while (t2 != 1) {
      t2 = mulmod(t2, t2, p);
      ++i;
    }
    u64 b = c;
    for (u64 j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

}  // namespace

std::optional<u64> sqrt_mod_prime(i64 a, u64 p) {
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("sqrt_mod_prime: p must be an odd prime");
  u64 ar = reduce_signed(a, p);
  if (ar == 0) return u64(0);
  if (jacobi(i64(ar), p) == -1) return std::nullopt;
  u64 r = (p & 3) == 3 ? powmod(ar, (p + 1) / 4, p) : tonelli_shanks(ar, p);
  return std::min(r, p - r);
}

std::optional<u64> lift_sqrt(u64 x0, i64 a, u64 p, unsigned r) {
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("lift_sqrt: p must be an odd prime");
  if (r < 1) throw std::invalid_argument("lift_sqrt: r must be >= 1");
  u64 q = checked_pow(p, r);
  u64 ar = reduce_signed(a, q);
  x0 %= p;
  if (mulmod(x0, x0, p) != ar % p)
    throw std::invalid_argument("lift_sqrt: x0 is not a root of a mod p");
  if (x0 == 0) return std::nullopt;  // singular: p | 2*x0

  // Newton iteration mod p^r; each step at least doubles the precision.
  u64 x = x0;
  for (unsigned k = 1; k < r; k *= 2) {
    u64 fx = (mulmod(x, x, q) + q - ar) % q;
    u64 inv2x = mod_inverse(mulmod(2, x, q), q);
    x = (x + q - mulmod(fx, inv2x, q)) % q;
  }
  if (mulmod(x, x, q) != ar) throw std::logic_error("lift_sqrt: iteration failed to converge");
  return x;
}

u64 solve_quadratic_mod_2r(unsigned r) {
  if (r < 3 || r > 62) throw std::invalid_argument("solve_quadratic_mod_2r: need 3 <= r <= 62");
  const u64 mod = u64(1) << r;
  auto f = [](u64 x) { return u128(3) * x * x + 5; };

  std::vector<u64> candidates;
  for (u64 seed : {u64(1), u64(3)}) {
    u64 x = seed;
    // x is a root mod 2^j; the derivative 6x has 2-adic valuation exactly 1,
    // so the correction at each step lives at 2^{j-1}.
    for (unsigned j = 3; j < r; ++j) {
      if ((f(x) >> j) & 1) x += u64(1) << (j - 1);
    }
    u64 half = u64(1) << (r - 1);
    for (u64 c : {x % mod, (mod - x % mod) % mod, (half + x) % mod, (half + mod - x % mod) % mod})
      candidates.push_back(c);
  }
  u64 best = 0;
  for (u64 c : candidates) {
    if (c < 3) continue;
    if (f(c) % mod != 0) continue;
    if (best == 0 || c < best) best = c;
  }
  if (best == 0) throw std::logic_error("solve_quadratic_mod_2r: no root found");
  return best;
}

u64 mod_inverse(u64 d, u64 q) {
  if (q < 2) throw std::invalid_argument("mod_inverse: modulus must be >= 2");
  i64 t = 0, nt = 1;
  u64 r = q, nr = d % q;
  while (nr != 0) {
    u64 quot = r / nr;
    i64 tmp = t - i64(quot) * nt;
    t = nt;
    nt = tmp;
    u64 tmpr = r - quot * nr;
    r = nr;
    nr = tmpr;
  }
  if (r != 1) throw std::domain_error("mod_inverse: not invertible");
  return t < 0 ? u64(t + i64(q)) : u64(t);
}

std::vector<u64> inverse_table(u64 p) {
  if (p < 2 || !is_prime(p)) throw std::invalid_argument("inverse_table: p must be prime");
  std::vector<u64> inv(p);
  inv[1] = 1;
  for (u64 c = 2; c < p; ++c) inv[c] = mulmod(p - p / c, inv[p % c], p);
  return inv;
}

int mobius_prime_power(u64 p, unsigned j) {
  if (!is_prime(p)) throw std::invalid_argument("mobius_prime_power: p must be prime");
  if (j < 1) throw std::invalid_argument("mobius_prime_power: j must be >= 1");
  return j == 1 ? -1 : 0;
}

unsigned FactoredModulus::exponent_of(u64 p) const {
  for (const auto& [q, e] : factors)
    if (q == p) return e;
  return 0;
}

bool FactoredModulus::is_power_of_three() const {
  if (factors.empty()) return true;  // m = 1
  return factors.size() == 1 && factors[0].first == 3;
}

u64 FactoredModulus::reconstruct() const {
  u64 x = 1;
  for (const auto& [p, e] : factors)
    for (unsigned i = 0; i < e; ++i) x *= p;
  return x;
}

namespace {

u64 pollard_brent(u64 n) {
  // Deterministic parameter schedule so runs are reproducible.
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1;
    u64 power = 1, lam = 1;
    auto step = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    y = step(x);
    while (d == 1) {
      if (power == lam) {
        x = y;
        power *= 2;
        lam = 0;
      }
      y = step(y);
      ++lam;
      u64 diff = x > y ? x - y : y - x;
      d = std::gcd(diff, n);
    }
    if (d != n) return d;
  }
}

void factor_rec(u64 n, std::vector<u64>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  u64 d = pollard_brent(n);
  factor_rec(d, primes);
  factor_rec(n / d, primes);
}

}  // namespace

FactoredModulus factorize(u64 m) {
  if (m == 0) throw std::invalid_argument("factorize: m must be positive");
  FactoredModulus fm;
  fm.m = m;
  u64 n = m;
  std::vector<u64> primes;
  for (u64 p : {u64(2), u64(3), u64(5)}) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  for (u64 p = 7; p <= 1000000 && u128(p) * p <= n; p += 6) {
    for (u64 q : {p, p + 4}) {
      while (n % q == 0) {
        primes.push_back(q);
        n /= q;
      }
    }
  }
  factor_rec(n, primes);
  std::sort(primes.begin(), primes.end());
  for (u64 p : primes) {
    if (!fm.factors.empty() && fm.factors.back().first == p)
      ++fm.factors.back().second;
    else
      fm.factors.emplace_back(p, 1u);
  }
  return fm;
}

std::vector<u64> sqrt_classes_mod_prime_power(u64 e, u64 p, unsigned r) {
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("sqrt_classes: p must be an odd prime");
  u64 q = checked_pow(p, r);
  e %= q;
  std::vector<u64> roots;
  if (e == 0) {
    // z = 0 (mod p^{ceil(r/2)})
    u64 step = checked_pow(p, (r + 1) / 2);
    u64 cnt = checked_pow(p, r / 2);
    for (u64 i = 0; i < cnt; ++i) roots.push_back(i * step % q);
    std::sort(roots.begin(), roots.end());
    return roots;
  }
  unsigned v = 0;
  u64 eu = e;
  while (eu % p == 0) {
    eu /= p;
    ++v;
  }
  if (v & 1) return {};
  unsigned rv = r - v;
  if (jacobi(i64(eu % p), p) == -1) return {};
  auto w0 = lift_sqrt(*sqrt_mod_prime(i64(eu % p), p), i64(eu % checked_pow(p, rv)), p, rv);
  u64 qq = checked_pow(p, rv);
  u64 half = checked_pow(p, v / 2);
  for (u64 w : {*w0, qq - *w0}) {
    for (u64 i = 0; i < half; ++i) {
      u64 z = mulmod(half, (w + mulmod(i, qq, q)) % q, q);
      roots.push_back(z);
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

std::vector<u64> QuadraticCongruence::solutions() const {
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("QuadraticCongruence: p must be an odd prime");
  u64 q = checked_pow(p, r);
  u64 a2 = reduce_signed(A, q);
  if (a2 % p == 0) throw std::invalid_argument("QuadraticCongruence: p must not divide the leading coefficient");
  u64 b1 = reduce_signed(B, q);
  u64 c0 = reduce_signed(C, q);
  // Complete the square: (2A x + B)^2 = B^2 - 4AC (mod p^r).
  u64 disc = (mulmod(b1, b1, q) + q - mulmod(4 % q, mulmod(a2, c0, q), q) % q) % q;
  u64 inv2a = mod_inverse(mulmod(2 % q, a2, q), q);
  std::vector<u64> xs;
  for (u64 z : sqrt_classes_mod_prime_power(disc, p, r)) {
    u64 x = mulmod((z + q - b1) % q, inv2a, q);
    xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

std::vector<u32> primes_up_to(u32 limit) {
  std::vector<bool> sieve(size_t(limit) + 1, true);
  std::vector<u32> out;
  if (limit < 2) return out;
  sieve[0] = sieve[1] = false;
  for (u64 i = 2; i <= limit; ++i) {
    if (!sieve[i]) continue;
    out.push_back(u32(i));
    for (u64 j = i * i; j <= limit; j += i) sieve[j] = false;
  }
  return out;
}

}  // namespace discrim
