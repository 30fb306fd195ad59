// discrim: discriminator toolkit for f(x) = x^3 + x.
//
// Subcommands cover the discriminator itself (brute force and closed form),
// collision search, the character-sum identities, the lemma verification
// sweeps, modulus classification, and the counting sums. Sweeps write
// JSON-lines records (one flushed row per check) and can resume from a
// partial log.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "discrim/casework.hpp"
#include "discrim/charsum.hpp"
#include "discrim/cyclotomic.hpp"
#include "discrim/discriminator.hpp"
#include "discrim/suites.hpp"

using namespace discrim;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct GlobalOpts {
  std::string log_path;
  std::string csv_path;
  std::string resume_path;
  unsigned workers = 1;
  bool long_run = false;
  bool quiet = false;
};

// Builds the sink + resume state shared by the sweep commands. Without
// --log, records stream to stdout.
struct SweepContext {
  RecordSink sink;
  ResumeLog resume;
  SweepOptions opt;

  explicit SweepContext(const GlobalOpts& g) {
    if (!g.resume_path.empty()) {
      resume = load_resume_log(g.resume_path);
      opt.resume = &resume;
      sink.open_jsonl(g.resume_path, true);
    } else if (!g.log_path.empty()) {
      sink.open_jsonl(g.log_path, false);
    } else if (!g.quiet) {
      sink.set_stream(&std::cout);
    }
    if (!g.csv_path.empty()) sink.open_csv(g.csv_path, !g.resume_path.empty());
    opt.workers = g.workers;
    opt.long_run = g.long_run;
  }
};

void print_summary(const SuiteSummary& s) {
  std::fprintf(stderr, "suite %s: %llu rows (%llu resumed), %llu failures, %s%s%s\n",
               s.suite.c_str(), (unsigned long long)s.rows, (unsigned long long)s.skipped,
               (unsigned long long)s.failures, s.conforming ? "conforming" : "NOT CONFORMING",
               s.note.empty() ? "" : ": ", s.note.c_str());
}

std::string describe_value(const CyclotomicInt& v) {
  if (v.is_rational()) return std::to_string(v.rational_value());
  std::string out = "sum of";
  int shown = 0;
  const auto& c = v.coeffs();
  for (u64 i = 0; i < v.order() && shown < 6; ++i) {
    if (c[i] == 0) continue;
    out += " " + std::to_string(c[i]) + "*e(" + std::to_string(i) + "/" +
           std::to_string(v.order()) + ")";
    ++shown;
  }
  return out + " [canonical], |.| = " + std::to_string(v.magnitude());
}

int cmd_delta_compute(u64 n, const std::string& method) {
  DiscriminatorResult closed = delta_closed_form(n);
  std::printf("n = %llu, k = %u\n", (unsigned long long)n, closed.k);
  bool pass = true;
  if (method == "closed" || method == "both") {
    std::string tail;
    if (closed.exceptional_s)
      tail = " (exceptional, s = " + std::to_string(*closed.exceptional_s) + ")";
    std::printf("closed: %llu%s\n", (unsigned long long)closed.delta, tail.c_str());
  }
  if (method == "brute" || method == "both") {
    InjectivityTester t;
    DiscriminatorResult brute = t.delta_bruteforce(n);
    std::printf("brute:  %llu\n", (unsigned long long)brute.delta);
    if (method == "both") {
      pass = brute.delta == closed.delta;
      std::printf("match:  %s\n", pass ? "yes" : "NO");
    }
  }
  return pass ? kExitPass : kExitFail;
}

int cmd_delta_verify(u64 from, u64 to, const GlobalOpts& g) {
  SweepContext ctx(g);
  auto s = run_delta_verify(from, to, ctx.opt, ctx.sink);
  print_summary(s);
  return s.conforming ? kExitPass : kExitFail;
}

int cmd_collision_find(u64 n, u64 m) {
  InjectivityTester t;
  auto w = t.find_collision(n, m);
  if (w) {
    std::printf("collision: a = %llu, b = %llu with b^3+b == a^3+a (mod %llu)\n",
                (unsigned long long)w->a, (unsigned long long)w->b, (unsigned long long)m);
    return w->valid() ? kExitPass : kExitFail;
  }
  std::printf("injective: a^3 + a are pairwise distinct mod %llu for a <= %llu\n",
              (unsigned long long)m, (unsigned long long)n);
  return kExitPass;
}

int cmd_charsum_ap(u64 p, u64 delta, u64 u, const std::string& form) {
  bool pass = true;
  if (form == "direct" || form == "both")
    std::printf("direct:      %s\n", describe_value(quad_char_sum_direct(p, delta, u)).c_str());
  if (form == "kloosterman" || form == "both")
    std::printf("kloosterman: %s\n",
                describe_value(quad_char_sum_kloosterman(p, delta, u)).c_str());
  if (form == "both") {
    pass = quad_char_sum_direct(p, delta, u) == quad_char_sum_kloosterman(p, delta, u);
    std::printf("equal:       %s\n", pass ? "yes" : "NO");
  }
  return pass ? kExitPass : kExitFail;
}

int cmd_charsum_ell(u64 p, u64 delta) {
  std::printf("gap  = %llu\n", (unsigned long long)min_collision_gap(p, delta));
  std::printf("L_p  = %llu\n", (unsigned long long)collision_gap_bound(p));
  return kExitPass;
}

int cmd_charsum_profile(u64 p, u64 delta) {
  ResidueProfile pr = residue_profile(p, delta);
  std::printf("n_plus = %llu, n_minus = %llu, n_zero = %llu (half range %llu)\n",
              (unsigned long long)pr.n_plus, (unsigned long long)pr.n_minus,
              (unsigned long long)pr.n_zero, (unsigned long long)((p - 1) / 2));
  return kExitPass;
}

int cmd_lemma_verify(const std::string& id, u64 limit, const GlobalOpts& g) {
  SweepContext ctx(g);
  ctx.opt.limit = limit;
  auto s = run_suite(id, ctx.opt, ctx.sink);
  print_summary(s);
  return s.conforming ? kExitPass : kExitFail;
}

int cmd_cases_classify(u64 m, u64 n) {
  FactoredModulus fm = factorize(m);
  CaseTag tag = classify(fm, n);
  std::string factors;
  for (const auto& [p, e] : fm.factors) {
    if (!factors.empty()) factors += " * ";
    factors += std::to_string(p);
    if (e > 1) factors += "^" + std::to_string(e);
  }
  std::printf("m = %llu = %s\n", (unsigned long long)m, factors.empty() ? "1" : factors.c_str());
  std::printf("case: %s\n", tag.describe().c_str());
  std::printf("window: %s\n", in_window(m, n) ? "inside n <= m < 3^k" : "outside (exploratory)");
  return kExitPass;
}

int cmd_counting(const std::string& kind, u64 p, unsigned t, u64 delta, unsigned j) {
  if (kind == "N") {
    PairCount n = count_quadratic_pairs(p, t, delta);
    std::printf("X = %llu, N = %llu, offdiagonal = %llu\n", (unsigned long long)n.X,
                (unsigned long long)n.total, (unsigned long long)n.offdiag);
    std::printf("lower bound = %.6f\n", pair_count_lower_bound(p, t));
    return kExitPass;
  }
  if (kind == "Nstar") {
    InjectivityTester tester;
    WindowCollisionCount wc = count_window_collisions(p, t, delta, tester);
    std::printf("m = %llu, k = %u, range 1..%llu, pairs = %llu\n", (unsigned long long)wc.m, wc.k,
                (unsigned long long)wc.bound, (unsigned long long)wc.pairs);
    if (wc.first)
      std::printf("first: (%llu, %llu)\n", (unsigned long long)wc.first->a,
                  (unsigned long long)wc.first->b);
    return wc.pairs > 0 ? kExitPass : kExitFail;
  }
  // Tj
  CyclotomicInt tj = level_sum(p, t, delta, j);
  std::printf("T_%u = %s\n", j, describe_value(tj).c_str());
  if (j < t) {
    i64 want = level_sum_closed_form(p, t, delta, j);
    bool ok = tj.is_rational() && tj.rational_value() == want;
    std::printf("closed form = %lld: %s\n", (long long)want, ok ? "match" : "MISMATCH");
    return ok ? kExitPass : kExitFail;
  }
  double lnpt = double(t) * std::log(double(p));
  double cap = 2.0 * std::pow(double(p), 1.5 * double(t)) * (2.0 + lnpt) * (2.0 + lnpt);
  bool ok = tj.magnitude() <= cap * (1.0 + 1e-9);
  std::printf("|T_%u| = %.6f <= %.6f: %s\n", j, tj.magnitude(), cap, ok ? "yes" : "NO");
  return ok ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discriminator toolkit for f(x) = x^3 + x"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value config file");

  GlobalOpts g;
  app.add_option("--log", g.log_path, "write JSONL records to this file (truncates)")
      ->envname("DISCRIM_LOG");
  app.add_option("--csv", g.csv_path, "mirror records to CSV")->envname("DISCRIM_CSV");
  app.add_option("--resume", g.resume_path,
                 "resume from (and append to) this JSONL log, skipping completed rows")
      ->envname("DISCRIM_RESUME");
  app.add_option("--workers", g.workers, "worker threads for sweeps")
      ->envname("DISCRIM_WORKERS")
      ->check(CLI::Range(1u, 256u));
  app.add_flag("--long-run", g.long_run, "allow full-replication limits (hours-scale)")
      ->envname("DISCRIM_LONG_RUN");
  app.add_flag("--quiet", g.quiet, "suppress per-record stdout stream")
      ->envname("DISCRIM_QUIET");

  // delta
  auto* delta = app.add_subcommand("delta", "discriminator computation and verification");
  delta->fallthrough();
  delta->require_subcommand(1);
  u64 n = 0;
  std::string method = "both";
  auto* compute = delta->add_subcommand("compute", "compute the discriminator of n");
  compute->fallthrough();
  compute->add_option("--n", n, "upper end of 1..n")->required();
  compute->add_option("--method", method, "brute|closed|both")
      ->check(CLI::IsMember({"brute", "closed", "both"}));
  u64 from = 1, to = 1;
  auto* verify = delta->add_subcommand("verify", "brute force vs closed form over a range");
  verify->fallthrough();
  verify->add_option("--from", from, "first n")->required();
  verify->add_option("--to", to, "last n")->required();

  // collision
  auto* collision = app.add_subcommand("collision", "collision witness search");
  collision->fallthrough();
  collision->require_subcommand(1);
  u64 cn = 0, cm = 0;
  auto* cfind = collision->add_subcommand("find", "lexicographically smallest witness");
  cfind->fallthrough();
  cfind->add_option("--n", cn, "range bound")->required();
  cfind->add_option("--m", cm, "modulus")->required();

  // charsum
  auto* charsum = app.add_subcommand("charsum", "character and exponential sums");
  charsum->fallthrough();
  charsum->require_subcommand(1);
  u64 sp = 0, sdelta = 1, su = 0;
  std::string form = "both";
  auto* ap = charsum->add_subcommand("ap", "the twisted quadratic character sum");
  ap->fallthrough();
  ap->add_option("--p", sp, "odd prime")->required();
  ap->add_option("--delta", sdelta, "delta, coprime to p")->required();
  ap->add_option("--u", su, "frequency");
  ap->add_option("--form", form, "direct|kloosterman|both")
      ->check(CLI::IsMember({"direct", "kloosterman", "both"}));
  auto* ell = charsum->add_subcommand("ell", "minimal admissible gap multiplier");
  ell->fallthrough();
  ell->add_option("--p", sp, "prime >= 5")->required();
  ell->add_option("--delta", sdelta, "delta, coprime to p")->required();
  auto* profile = charsum->add_subcommand("profile", "residue class counts");
  profile->fallthrough();
  profile->add_option("--p", sp, "prime >= 5")->required();
  profile->add_option("--delta", sdelta, "delta, coprime to p")->required();

  // lemma
  auto* lemma = app.add_subcommand("lemma", "verification sweeps");
  lemma->fallthrough();
  lemma->require_subcommand(1);
  std::string id;
  u64 limit = 0;
  auto* lverify = lemma->add_subcommand("verify", "run one lemma suite");
  lverify->fallthrough();
  lverify->add_option("--id", id, "3.1 3.2 3.4 3.5 3.6 4.6 4.7 4.9 5.1 5.5 C1 L34 L35 L41 L43 L48 C45 partition")
      ->required()
      ->check(CLI::IsMember(suite_ids()));
  lverify->add_option("--limit", limit, "sweep limit (suite-specific default)");

  // cases
  auto* cases = app.add_subcommand("cases", "modulus classification");
  cases->fallthrough();
  cases->require_subcommand(1);
  u64 km = 0, kn = 0;
  auto* kclassify = cases->add_subcommand("classify", "which of the 8 cases m falls into");
  kclassify->fallthrough();
  kclassify->add_option("--m", km, "modulus")->required();
  kclassify->add_option("--n", kn, "range bound (window bookkeeping)")->required();

  // counting
  auto* counting = app.add_subcommand("counting", "counting sums");
  counting->fallthrough();
  counting->require_subcommand(1);
  u64 qp = 0, qdelta = 1;
  unsigned qt = 1, qj = 1;
  for (const char* kind : {"N", "Nstar", "Tj"}) {
    auto* sub = counting->add_subcommand(kind);
    sub->fallthrough();
    sub->add_option("--p", qp, "prime >= 5")->required();
    sub->add_option("--t", qt, "exponent")->required();
    sub->add_option("--delta", qdelta, "1..3");
    if (std::string(kind) == "Tj") sub->add_option("--j", qj, "level, 1..t")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (compute->parsed()) return cmd_delta_compute(n, method);
    if (verify->parsed()) return cmd_delta_verify(from, to, g);
    if (cfind->parsed()) return cmd_collision_find(cn, cm);
    if (ap->parsed()) return cmd_charsum_ap(sp, sdelta, su, form);
    if (ell->parsed()) return cmd_charsum_ell(sp, sdelta);
    if (profile->parsed()) return cmd_charsum_profile(sp, sdelta);
    if (lverify->parsed()) return cmd_lemma_verify(id, limit, g);
    if (kclassify->parsed()) return cmd_cases_classify(km, kn);
    for (const char* kind : {"N", "Nstar", "Tj"})
      if (counting->get_subcommand(kind)->parsed()) return cmd_counting(kind, qp, qt, qdelta, qj);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFail;
  }
  return kExitUsage;
}
