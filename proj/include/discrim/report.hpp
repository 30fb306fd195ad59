#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <mutex>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "discrim/modarith.hpp"

namespace discrim {

// One row of a sweep. Serialized as JSON lines with exactly these field
// names; the optional CSV mirror uses the same column order.
struct VerificationRecord {
  std::string suite;
  std::vector<std::pair<std::string, i64>> params;  // insertion order is kept
  std::string computed;
  std::string expected;
  bool pass = false;
  i64 elapsed_us = 0;
  int worker = 0;

  // Stable identity of the row (suite + params), used for resumption.
  std::string key() const;
  std::string to_jsonl() const;
  std::string to_csv() const;
};

VerificationRecord make_record(std::string suite,
                               std::vector<std::pair<std::string, i64>> params,
                               std::string computed, std::string expected);

// Append-only, thread-safe sink. Each record is flushed as soon as it is
// written so an interrupted run loses at most one row.
class RecordSink {
 public:
  void open_jsonl(const std::string& path, bool append);
  void open_csv(const std::string& path, bool append);
  void set_stream(std::ostream* os) { stream_ = os; }  // e.g. &std::cout
  void emit(const VerificationRecord& rec);

  u64 rows() const { return rows_; }
  u64 failures() const { return failures_; }

 private:
  std::mutex mu_;
  std::ofstream jsonl_;
  std::ofstream csv_;
  std::ostream* stream_ = nullptr;
  u64 rows_ = 0;
  u64 failures_ = 0;
};

// Rows already present in a JSONL log, for resumption: completed keys plus
// aggregate counts, optionally restricted to one suite prefix.
struct ResumeLog {
  std::unordered_set<std::string> keys;
  std::unordered_set<std::string> failed_keys;
  u64 rows = 0;
  u64 failures = 0;

  bool contains(const std::string& key) const { return keys.count(key) != 0; }
  u64 failures_in_suite(const std::string& suite) const;
};

ResumeLog load_resume_log(const std::string& path);

// Runs items [0, count) across the given number of workers in contiguous
// blocks. fn may emit any number of records per item through the sink.
// With workers <= 1 the execution (and the log) is strictly sequential.
void parallel_sweep(u64 count, unsigned workers,
                    const std::function<void(u64 index, int worker)>& fn);

}  // namespace discrim
