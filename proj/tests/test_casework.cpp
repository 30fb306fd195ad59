#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "discrim/casework.hpp"
#include "discrim/charsum.hpp"

using namespace discrim;

namespace {

u64 f_mod(u64 a, u64 m) {
  u64 ar = a % m;
  return (mulmod(ar, mulmod(ar, ar, m), m) + ar) % m;
}

u64 naive_window_pairs(u64 bound, u64 m) {
  u64 pairs = 0;
  for (u64 a = 1; a <= bound; ++a)
    for (u64 b = a + 1; b <= bound; ++b)
      if (f_mod(a, m) == f_mod(b, m)) ++pairs;
  return pairs;
}

// Direct term-by-term evaluation of the level sum, the oracle for the
// histogram-based implementation.
CyclotomicInt naive_level_sum(u64 p, unsigned t, u64 delta, unsigned j) {
  u64 q = checked_pow(p, j);
  u64 X = (p / 3) * checked_pow(p, t - 1);
  CyclotomicInt out(q);
  for (u64 c = 1; c < q; ++c) {
    if (c % p == 0) continue;
    for (u64 a = 1; a <= X; ++a)
      for (u64 b = 1; b <= X; ++b) {
        u64 w = (mulmod(delta * delta % q, (mulmod(a, a, q) + mulmod(a, b, q) + mulmod(b, b, q)) % q,
                        q) +
                 1) %
                q;
        out.add_root(mulmod(c, w, q), 1);
      }
  }
  out.canonicalize();
  return out;
}

}  // namespace

TEST_CASE("classify examples") {
  auto t567 = classify(factorize(567), 245);
  CHECK(t567.variant == CaseVariant::kVIII);
  CHECK(t567.r == 4);

  auto t126 = classify(factorize(126), 122);
  CHECK(t126.variant == CaseVariant::kVI);
  CHECK(t126.r == 2);

  auto t250 = classify(factorize(250), 244);
  CHECK(t250.variant == CaseVariant::kVII);
  CHECK(t250.delta == 2);
  CHECK(t250.p == 5);
  CHECK(t250.r == 3);
}

TEST_CASE("classify shapes") {
  CHECK(classify(factorize(8), 5).variant == CaseVariant::kIII);
  CHECK(classify(factorize(36), 15).variant == CaseVariant::kV);
  CHECK(classify(factorize(20), 7).variant == CaseVariant::kIV);
  CHECK(classify(factorize(14), 5).variant == CaseVariant::kVII);   // i=1, j=0
  CHECK(classify(factorize(27), 10).variant == CaseVariant::kPowerOfThree);
  CHECK(classify(factorize(1), 1).variant == CaseVariant::kPowerOfThree);
  CHECK(classify(factorize(55), 20).variant == CaseVariant::kI);    // 5 * 11
  CHECK(classify(factorize(175), 60).variant == CaseVariant::kII);  // 7 * 5^2
  CHECK(classify(factorize(63), 22).variant == CaseVariant::kVIII); // 3^2 * 7
  CHECK(classify(factorize(21), 8).variant == CaseVariant::kVII);   // i=0, j=1
  auto t35 = classify(factorize(35), 12);  // 5 * 7: the non-7 prime is chosen
  CHECK(t35.variant == CaseVariant::kI);
  CHECK(t35.p == 5);
  CHECK(t35.delta == 7);
}

TEST_CASE("classify tags reconstruct the modulus across whole windows") {
  for (u64 n : {u64(50), u64(244), u64(1000)}) {
    u64 cap = pow3(ceil_log3(n));
    for (u64 m = n; m < cap; ++m) {
      CaseTag tag = classify(factorize(m), n);
      REQUIRE(tag.reconstruct() == m);
      REQUIRE(tag.variant != CaseVariant::kPowerOfThree);
    }
  }
}

TEST_CASE("construct_collision explicit small cases") {
  auto w8 = construct_collision(factorize(8), 5, classify(factorize(8), 5));
  REQUIRE(w8.has_value());
  CHECK(w8->a == 1);
  CHECK(w8->b == 2);

  // the case (vi) recipe accepts m = 14 with r = 0 even though the partition
  // routes 14 elsewhere
  CaseTag vi14;
  vi14.variant = CaseVariant::kVI;
  vi14.m = 14;
  vi14.p = 7;
  vi14.r = 0;
  auto w14 = construct_collision(factorize(14), 5, vi14);
  REQUIRE(w14.has_value());
  CHECK(w14->a == 1);
  CHECK(w14->b == 3);

  auto none = construct_collision(factorize(567), 245, classify(factorize(567), 245));
  CHECK(!none.has_value());

  CHECK_THROWS_AS(construct_collision(factorize(27), 10, classify(factorize(27), 10)),
                  std::domain_error);
}

TEST_CASE("construct_collision per-case recipes") {
  // m = 567 = 3^4 * 7 and n = 246 (just past the exceptional pair): the
  // case (viii) recipe with gap multiplier 3 lands exactly on b = n.
  auto w567 = construct_collision(factorize(567), 246, classify(factorize(567), 246));
  REQUIRE(w567.has_value());
  CHECK(w567->a == 3);
  CHECK(w567->b == 246);
  CHECK(w567->valid());

  // case (ii): 175 = 7 * 5^2 needs a square-root lift mod 25
  auto w175 = construct_collision(factorize(175), 62, classify(factorize(175), 62));
  REQUIRE(w175.has_value());
  CHECK(w175->valid());
  CHECK(w175->b <= 62);

  // case (v) with r = 1: 486 = 2 * 3^5, witness (1, 1 + 3^5)
  auto w486 = construct_collision(factorize(486), 250, classify(factorize(486), 250));
  REQUIRE(w486.has_value());
  CHECK(w486->a == 1);
  CHECK(w486->b == 244);

  // case (v) with both exponents >= 2: 324 = 2^2 * 3^4
  auto w324 = construct_collision(factorize(324), 145, classify(factorize(324), 145));
  REQUIRE(w324.has_value());
  CHECK(w324->valid());
  CHECK(w324->b <= 145);

  // case (iii) past the lifting threshold: 2^8
  auto w256 = construct_collision(factorize(256), 100, classify(factorize(256), 100));
  REQUIRE(w256.has_value());
  CHECK(w256->valid());
  CHECK(w256->b - w256->a == 4);

  // case (viii) with r = 7 = 1 (mod 6): m = 3^7 * 7, witness (1, 1 + 3^8)
  u64 m8 = pow3(7) * 7;  // 15309
  u64 n8 = pow3(8) + 2;  // inside the window, not exceptional (8 != 5 mod 6)
  auto w8r = construct_collision(factorize(m8), n8, classify(factorize(m8), n8));
  REQUIRE(w8r.has_value());
  CHECK(w8r->a == 1);
  CHECK(w8r->b == pow3(8) + 1);
  CHECK(w8r->valid());
}

TEST_CASE("construct_collision covers every modulus in the window of 244 and 245") {
  InjectivityTester tester;
  for (u64 n : {u64(244), u64(245)}) {
    for (u64 m = n; m < 567; ++m) {
      auto tag = classify(factorize(m), n);
      auto w = construct_collision(factorize(m), n, tag);
      REQUIRE_MESSAGE(w.has_value(), "m=", m);
      REQUIRE(w->valid());
      REQUIRE(w->b <= n);
      REQUIRE(tester.find_collision(n, m).has_value());
    }
    CHECK(!construct_collision(factorize(567), n, classify(factorize(567), n)).has_value());
    CHECK(!tester.find_collision(n, 567).has_value());
  }
}

TEST_CASE("count_quadratic_pairs examples") {
  auto c7 = count_quadratic_pairs(7, 1, 1);
  CHECK(c7.X == 2);
  CHECK(c7.total == 0);

  auto c5 = count_quadratic_pairs(5, 2, 1);
  CHECK(c5.X == 5);
  auto naive5 = count_quadratic_pairs_naive(5, 2, 1);
  CHECK(c5.total == naive5.total);
  CHECK(c5.total == 2);  // (3,5) and (5,3): 9+15+25+1 = 50
  CHECK(c5.offdiag == 2);

  auto big = count_quadratic_pairs(4999, 1, 1);
  CHECK(big.total > 2);
}

TEST_CASE("sieved pair count equals the naive oracle") {
  for (u64 p : {u64(5), u64(7), u64(11), u64(13)}) {
    for (unsigned t = 1; t <= 2; ++t) {
      for (u64 delta = 1; delta <= 3; ++delta) {
        auto fast = count_quadratic_pairs(p, t, delta);
        auto slow = count_quadratic_pairs_naive(p, t, delta);
        REQUIRE(fast.X == slow.X);
        REQUIRE(fast.total == slow.total);
        REQUIRE(fast.offdiag == slow.offdiag);
        REQUIRE(fast.offdiag + 2 >= fast.total);  // N_ne >= N - 2
      }
    }
  }
}

TEST_CASE("naive pair count refuses past its budget") {
  CHECK_THROWS_AS(count_quadratic_pairs_naive(4999, 2, 1, 1000), std::domain_error);
}

TEST_CASE("window collision counts") {
  InjectivityTester tester;

  auto w10 = count_window_collisions(5, 1, 2, tester);
  CHECK(w10.m == 10);
  CHECK(w10.k == 3);  // 9 < 10 < 27
  CHECK(w10.bound == 10);
  CHECK(w10.pairs == naive_window_pairs(10, 10));
  CHECK(w10.pairs == 17);

  auto w49 = count_window_collisions(7, 2, 1, tester);
  CHECK(w49.m == 49);
  CHECK(w49.k == 4);
  CHECK(w49.bound == 28);
  CHECK(w49.pairs == naive_window_pairs(28, 49));

  auto w250 = count_window_collisions(5, 3, 2, tester);
  CHECK(w250.pairs > 0);

  // existence-only search agrees
  CHECK(window_collision_witness(5, 1, 2).has_value());
  CHECK(window_collision_witness(5, 3, 2).has_value());
}

TEST_CASE("level sums match the naive term-by-term oracle") {
  for (u64 delta = 1; delta <= 3; ++delta) {
    for (unsigned j = 1; j <= 2; ++j) {
      CHECK(level_sum(5, 2, delta, j) == naive_level_sum(5, 2, delta, j));
    }
    CHECK(level_sum(7, 2, delta, 1) == naive_level_sum(7, 2, delta, 1));
  }
}

TEST_CASE("level sum closed forms") {
  auto t1 = level_sum(5, 2, 1, 1);
  REQUIRE(t1.is_rational());
  CHECK(t1.rational_value() == 5);  // X=5, mu(5) = -1, (-3/5) = -1
  CHECK(level_sum_closed_form(5, 2, 1, 1) == 5);

  auto t2 = level_sum(5, 3, 1, 2);
  REQUIRE(t2.is_rational());
  CHECK(t2.rational_value() == 0);  // mu(25) = 0
  CHECK(level_sum_closed_form(5, 3, 1, 2) == 0);

  for (u64 p : {u64(5), u64(7), u64(11), u64(13)}) {
    for (unsigned t = 2; t <= 3; ++t) {
      for (u64 delta = 1; delta <= 3; ++delta) {
        for (unsigned j = 1; j < t; ++j) {
          auto tj = level_sum(p, t, delta, j);
          REQUIRE(tj.is_rational());
          REQUIRE(tj.rational_value() == level_sum_closed_form(p, t, delta, j));
        }
      }
    }
  }
}

TEST_CASE("level-t magnitude bound") {
  auto tt = level_sum(7, 2, 2, 2);
  double lnpt = 2.0 * std::log(7.0);
  CHECK(tt.magnitude() <= 2.0 * std::pow(7.0, 3.0) * (2.0 + lnpt) * (2.0 + lnpt));
}

TEST_CASE("decomposition identity at small prime powers") {
  for (u64 p : {u64(5), u64(7), u64(11), u64(13)}) {
    for (unsigned t = 1; checked_pow(p, t) <= 300; ++t) {
      for (u64 delta = 1; delta <= 3; ++delta) {
        auto n = count_quadratic_pairs(p, t, delta);
        i64 rhs = i64(n.X) * i64(n.X);
        for (unsigned j = 1; j <= t; ++j) {
          auto tj = level_sum(p, t, delta, j);
          REQUIRE(tj.is_rational());
          rhs += tj.rational_value();
        }
        REQUIRE(i64(checked_pow(p, t)) * i64(n.total) == rhs);
      }
    }
  }
}

TEST_CASE("analytic lower bound under the exact counts") {
  // (5, 2): 1 + 1/5 - 10 (2 + ln 25)^2
  double b52 = pair_count_lower_bound(5, 2);
  double want52 = 1.0 + 0.2 - 10.0 * std::pow(2.0 + std::log(25.0), 2);
  CHECK(std::abs(b52 - want52) < 1e-9);

  // (7, 1): 4/7 - 2 sqrt(7) (2 + ln 7)^2
  double b71 = pair_count_lower_bound(7, 1);
  double want71 = 4.0 / 7.0 - 2.0 * std::sqrt(7.0) * std::pow(2.0 + std::log(7.0), 2);
  CHECK(std::abs(b71 - want71) < 1e-9);

  // at p^t >= 20000^2 the bound is strongly positive
  CHECK(pair_count_lower_bound(20011, 2) > 2.0);

  for (u64 p : {u64(5), u64(7), u64(11), u64(13), u64(101)}) {
    for (unsigned t = 1; checked_pow(p, t) <= 2000; ++t)
      for (u64 delta = 1; delta <= 3; ++delta)
        REQUIRE(double(count_quadratic_pairs(p, t, delta).total) >=
                pair_count_lower_bound(p, t) - 1e-9);
  }
}

TEST_CASE("gap pattern for powers of three mod 7") {
  auto pat = gap_pattern_mod7(17);
  REQUIRE(pat.size() == 18);
  const u64 want[3] = {2, 3, 1};
  for (auto [r, gap] : pat) CHECK(gap == want[r % 3]);
}

TEST_CASE("collision algebra: witnesses satisfy the factored congruence") {
  InjectivityTester tester;
  for (u64 n : {u64(50), u64(244)}) {
    u64 cap = pow3(ceil_log3(n));
    for (u64 m = n; m < std::min(cap, n + 40); ++m) {
      auto w = tester.find_collision(n, m);
      if (!w) continue;
      // (b - a)(a^2 + ab + b^2 + 1) = 0 (mod m)
      u64 gap = (w->b - w->a) % m;
      u64 quad = (mulmod(w->a, w->a, m) + mulmod(w->a, w->b, m) + mulmod(w->b, w->b, m) + 1) % m;
      CHECK(mulmod(gap, quad, m) == 0);
    }
  }
}
