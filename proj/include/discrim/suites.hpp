#pragma once

#include <string>
#include <vector>

#include "discrim/discriminator.hpp"
#include "discrim/report.hpp"

namespace discrim {

struct SweepOptions {
  u64 limit = 0;  // 0 = suite default
  unsigned workers = 1;
  bool long_run = false;
  const ResumeLog* resume = nullptr;  // completed rows to skip
};

struct SuiteSummary {
  std::string suite;
  u64 rows = 0;     // rows emitted by this run
  u64 skipped = 0;  // rows skipped via resume
  u64 failures = 0;
  bool conforming = true;  // failures match the suite's claimed boundary set
  std::string note;
};

// Known suite ids: 3.1, 3.2, 3.6, 4.6, 4.7, 4.9, 5.1, 5.5, partition,
// 3.4/L34, 3.5/L35, C1, L41, L43, L48, C45.
std::vector<std::string> suite_ids();
bool is_suite_id(const std::string& id);

SuiteSummary run_suite(const std::string& id, const SweepOptions& opt, RecordSink& sink);

// Brute-force vs closed-form sweep over [from, to].
SuiteSummary run_delta_verify(u64 from, u64 to, const SweepOptions& opt, RecordSink& sink);

// Per-prime check bundles, shared between the suites and the acceptance
// harness so both exercise identical code paths.
struct CharSumCheck {
  bool identity_ok = true;   // direct form == Kloosterman form, every delta, u
  bool ramanujan_ok = true;  // value at u = 0 is exactly -1
  bool weil_ok = true;       // |A| <= 2 sqrt(p) + 1e-6 whenever p does not divide u
  bool gauss_ok = true;      // tau * conj(tau) = p exactly
  std::string detail;

  bool all() const { return identity_ok && ramanujan_ok && weil_ok && gauss_ok; }
};
CharSumCheck check_char_sum_prime(u64 p);

// half_sum(p, delta) = -1 for every delta in [1, p-1].
bool check_half_sum_prime(u64 p, std::string* detail = nullptr);

// min gap <= gap bound and the residue profile closed forms, every delta.
bool check_gap_profile_prime(u64 p, std::string* detail = nullptr);

// Partition + constructive witnesses for every modulus in n's window.
bool check_partition_n(u64 n, InjectivityTester& tester, std::string* detail = nullptr);

}  // namespace discrim
