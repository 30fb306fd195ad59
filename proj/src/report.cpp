#include "discrim/report.hpp"

#include <atomic>
#include <exception>
#include <iostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace discrim {

std::string VerificationRecord::key() const {
  std::string k = suite;
  k += '|';
  for (size_t i = 0; i < params.size(); ++i) {
    if (i) k += ',';
    k += params[i].first;
    k += '=';
    k += std::to_string(params[i].second);
  }
  return k;
}

std::string VerificationRecord::to_jsonl() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  nlohmann::ordered_json pj = nlohmann::ordered_json::object();
  for (const auto& [k, v] : params) pj[k] = v;
  j["params"] = pj;
  j["computed"] = computed;
  j["expected"] = expected;
  j["pass"] = pass;
  j["elapsed_us"] = elapsed_us;
  j["worker"] = worker;
  return j.dump();
}

std::string VerificationRecord::to_csv() const {
  std::string pstr;
  for (size_t i = 0; i < params.size(); ++i) {
    if (i) pstr += ';';
    pstr += params[i].first + "=" + std::to_string(params[i].second);
  }
  std::string row = suite;
  row += ',';
  row += pstr;
  row += ',';
  row += computed;
  row += ',';
  row += expected;
  row += ',';
  row += pass ? "true" : "false";
  row += ',';
  row += std::to_string(elapsed_us);
  row += ',';
  row += std::to_string(worker);
  return row;
}

VerificationRecord make_record(std::string suite,
                               std::vector<std::pair<std::string, i64>> params,
                               std::string computed, std::string expected) {
  VerificationRecord rec;
  rec.suite = std::move(suite);
  rec.params = std::move(params);
  rec.computed = std::move(computed);
  rec.expected = std::move(expected);
  rec.pass = rec.computed == rec.expected;
  return rec;
}

void RecordSink::open_jsonl(const std::string& path, bool append) {
  jsonl_.open(path, append ? std::ios::app : std::ios::out);
  if (!jsonl_) throw std::runtime_error("cannot open log file: " + path);
}

void RecordSink::open_csv(const std::string& path, bool append) {
  bool fresh = !append;
  csv_.open(path, append ? std::ios::app : std::ios::out);
  if (!csv_) throw std::runtime_error("cannot open csv file: " + path);
  if (fresh) csv_ << "suite,params,computed,expected,pass,elapsed_us,worker\n" << std::flush;
}

void RecordSink::emit(const VerificationRecord& rec) {
  std::lock_guard<std::mutex> lock(mu_);
  ++rows_;
  if (!rec.pass) ++failures_;
  if (jsonl_.is_open()) {
    jsonl_ << rec.to_jsonl() << '\n' << std::flush;
    if (!jsonl_) throw std::runtime_error("log write failed");
  }
  if (csv_.is_open()) {
    csv_ << rec.to_csv() << '\n' << std::flush;
    if (!csv_) throw std::runtime_error("csv write failed");
  }
  if (stream_) *stream_ << rec.to_jsonl() << '\n';
}

ResumeLog load_resume_log(const std::string& path) {
  ResumeLog log;
  std::ifstream in(path);
  if (!in) return log;  // nothing to resume
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("suite") || !j.contains("params")) continue;
    VerificationRecord rec;
    rec.suite = j["suite"].get<std::string>();
    for (auto it = j["params"].begin(); it != j["params"].end(); ++it)
      rec.params.emplace_back(it.key(), it.value().get<i64>());
    log.keys.insert(rec.key());
    ++log.rows;
    if (j.contains("pass") && !j["pass"].get<bool>()) {
      ++log.failures;
      log.failed_keys.insert(rec.key());
    }
  }
  return log;
}

u64 ResumeLog::failures_in_suite(const std::string& suite) const {
  u64 n = 0;
  std::string prefix = suite + "|";
  for (const auto& k : failed_keys)
    if (k.rfind(prefix, 0) == 0) ++n;
  return n;
}

void parallel_sweep(u64 count, unsigned workers,
                    const std::function<void(u64 index, int worker)>& fn) {
  if (count == 0) return;
  if (workers <= 1) {
    for (u64 i = 0; i < count; ++i) fn(i, 0);
    return;
  }
  const u64 block = 16;
  std::atomic<u64> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (;;) {
          u64 start = next.fetch_add(block);
          if (start >= count) return;
          u64 end = std::min(start + block, count);
          for (u64 i = start; i < end; ++i) fn(i, int(w));
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace discrim
