// Acceptance suite: one pass/fail line per criterion, exit 0 only if all
// pass. Scales and tolerances are fixed here, not configurable.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "discrim/casework.hpp"
#include "discrim/charsum.hpp"
#include "discrim/discriminator.hpp"
#include "discrim/suites.hpp"

using namespace discrim;

namespace {

int failures = 0;
unsigned workers() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 2;
}

struct Criterion {
  const char* name;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  explicit Criterion(const char* n) : name(n) {}

  void report(bool pass, const std::string& detail = "") {
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %s (%.1fs)%s%s\n", pass ? "PASS" : "FAIL", name, secs,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
  }
};

// 1. brute force == closed form for every n <= 3000, including 244/245.
void criterion_1() {
  Criterion c("1. closed form replication: brute force == closed form, n <= 3000");
  RecordSink sink;
  SweepOptions opt;
  opt.workers = workers();
  auto s = run_delta_verify(1, 3000, opt, sink);
  InjectivityTester t;
  bool exceptional = t.delta_bruteforce(244).delta == 567 && t.delta_bruteforce(245).delta == 567 &&
                     delta_closed_form(244).delta == 567 && delta_closed_form(245).delta == 567;
  c.report(s.conforming && s.rows == 3000 && exceptional,
           "rows=" + std::to_string(s.rows) + " failures=" + std::to_string(s.failures));
}

// 2 + 3. the exact identity sweep, Ramanujan value, Weil bound, Gauss norm.
void criteria_2_3() {
  Criterion c2("2. A_p identity: direct == Kloosterman form, 5 <= p <= 199, all delta, u");
  u64 id_fail = 0, ram_fail = 0, weil_fail = 0, gauss_fail = 0;
  std::string first;
  auto primes = primes_up_to(199);
  std::vector<u64> ps(primes.begin(), primes.end());
  std::mutex mu;
  parallel_sweep(ps.size(), workers(), [&](u64 i, int) {
    u64 p = ps[i];
    if (p < 5) return;
    CharSumCheck chk = check_char_sum_prime(p);
    std::lock_guard<std::mutex> lock(mu);
    if (!chk.identity_ok) ++id_fail;
    if (!chk.ramanujan_ok) ++ram_fail;
    if (!chk.weil_ok) ++weil_fail;
    if (!chk.gauss_ok) ++gauss_fail;
    if (!chk.all() && first.empty()) first = "p=" + std::to_string(p) + ": " + chk.detail;
  });
  c2.report(id_fail + ram_fail == 0, first);
  Criterion c3("3. Weil bound |A_p| <= 2 sqrt(p) + 1e-6 and Gauss norm == p, p <= 199");
  c3.report(weil_fail + gauss_fail == 0, first);
}

// 4. half sum == -1 for all primes 5 <= p <= 499, every delta.
void criterion_4() {
  Criterion c("4. half sum == -1 exactly, 5 <= p <= 499, all delta");
  auto primes = primes_up_to(499);
  std::vector<u64> ps(primes.begin(), primes.end());
  std::atomic<u64> bad{0};
  parallel_sweep(ps.size(), workers(), [&](u64 i, int) {
    u64 p = ps[i];
    if (p < 5) return;
    if (!check_half_sum_prime(p)) ++bad;
  });
  c.report(bad == 0);
}

// 5. minimal gap <= L_p and profile closed forms, 5 <= p <= 997, every delta.
void criterion_5() {
  Criterion c("5. gap <= L_p and residue profile closed forms, 5 <= p <= 997, all delta");
  auto primes = primes_up_to(997);
  std::vector<u64> ps(primes.begin(), primes.end());
  std::atomic<u64> bad{0};
  parallel_sweep(ps.size(), workers(), [&](u64 i, int) {
    u64 p = ps[i];
    if (p < 5) return;
    if (!check_gap_profile_prime(p)) ++bad;
  });
  c.report(bad == 0);
}

// 6. the inequality suites over primes up to 10^6 plus the L48 boundary.
void criterion_6() {
  Criterion c("6. inequality suites: L34 (except p=7), L35 (>=165), C1 (>=4000), L48 boundary");
  RecordSink sink;
  SweepOptions opt;
  opt.limit = 1000000;
  auto l34 = run_suite("L34", opt, sink);
  auto l35 = run_suite("L35", opt, sink);
  auto c1 = run_suite("C1", opt, sink);
  SweepOptions dflt;
  auto l48 = run_suite("L48", dflt, sink);
  c.report(l34.conforming && l35.conforming && c1.conforming && l48.conforming,
           "L34 " + l34.note + "; L35 " + l35.note + "; C1 " + c1.note);
}

// 7. level sums: closed forms, magnitude bound, exact decomposition, and the
// analytic lower bound, p^t <= 3000.
void criterion_7() {
  Criterion c("7. level sums: closed forms, decomposition (p^t <= 3000), lower bound");
  RecordSink sink;
  SweepOptions opt;
  opt.limit = 3000;
  opt.workers = workers();
  auto s46 = run_suite("4.6", opt, sink);
  auto s47 = run_suite("4.7", opt, sink);
  c.report(s46.conforming && s47.conforming,
           "rows=" + std::to_string(s46.rows + s47.rows));
}

// 8. window collision counts positive for every delta p^t <= 10^5.
void criterion_8() {
  Criterion c("8. window collisions > 0 for all 1<=delta<=3, p^t <= 10^5");
  RecordSink sink;
  SweepOptions opt;
  opt.limit = 100000;
  opt.workers = workers();
  auto s = run_suite("4.9", opt, sink);
  c.report(s.conforming && s.failures == 0, "rows=" + std::to_string(s.rows));
}

// 9. partition + constructive witnesses for every window modulus, n <= 2000,
// with the exceptional pair checked exhaustively at 567.
void criterion_9() {
  Criterion c("9. partition + constructed witnesses for n <= 2000; 244/245 injective at 567");
  RecordSink sink;
  SweepOptions opt;
  opt.limit = 2000;
  opt.workers = workers();
  auto s = run_suite("partition", opt, sink);
  InjectivityTester t;
  bool exceptional = !t.find_collision(244, 567) && !t.find_collision(245, 567) &&
                     t.count_collisions(245, 567).pairs == 0;
  c.report(s.conforming && exceptional, "rows=" + std::to_string(s.rows));
}

// 10. the gap pattern (2, 3, 1) by r mod 3 for r = 0..17.
void criterion_10() {
  Criterion c("10. gap pattern 2/3/1 for powers of three mod 7, r = 0..17");
  bool ok = true;
  const u64 want[3] = {2, 3, 1};
  for (auto [r, gap] : gap_pattern_mod7(17))
    if (gap != want[r % 3]) ok = false;
  c.report(ok);
}

}  // namespace

int main() {
  std::printf("acceptance: %u workers\n", workers());
  criterion_1();
  criteria_2_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (failures == 0)
    std::printf("acceptance: all criteria passed\n");
  else
    std::printf("acceptance: %d criterion(s) FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
