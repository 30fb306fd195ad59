#include "discrim/discriminator.hpp"

#include <algorithm>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace discrim {

namespace {

u64 cube_plus_a_mod(u64 a, u64 m) {
  u64 ar = a % m;
  return (mulmod(ar, mulmod(ar, ar, m), m) + ar) % m;
}

void require_range(u64 n, u64 m) {
  if (n == 0 || m == 0) throw std::invalid_argument("n and m must be positive");
  if (n > std::numeric_limits<u32>::max())
    throw std::invalid_argument("n exceeds the supported range");
}

}  // namespace

bool CollisionWitness::valid() const {
  if (a == 0 || a >= b || m == 0) return false;
  return cube_plus_a_mod(a, m) == cube_plus_a_mod(b, m);
}

std::optional<unsigned> exceptional_index(u64 n) {
  for (unsigned s = 0; 6 * s + 5 <= 40; ++s) {
    u64 base = pow3(6 * s + 5);
    if (n == base + 1 || n == base + 2) return s;
    if (base > n) break;
  }
  return std::nullopt;
}

DiscriminatorResult delta_closed_form(u64 n) {
  if (n == 0) throw std::invalid_argument("delta_closed_form: n must be positive");
  DiscriminatorResult out;
  out.n = n;
  out.k = ceil_log3(n);
  out.exceptional_s = exceptional_index(n);
  out.delta = out.exceptional_s ? 7 * pow3(6 * *out.exceptional_s + 4) : pow3(out.k);
  return out;
}

void InjectivityTester::bump_generation() {
  ++gen_;
  if (gen_ == 0) {  // wrapped: clear everything once
    std::fill(stamp_.begin(), stamp_.end(), 0);
    gen_ = 1;
  }
}

bool InjectivityTester::is_injective(u64 n, u64 m) {
  require_range(n, m);
  if (n > m) return false;  // n distinct residues need m >= n
  if (m == 1) return n <= 1;
  if (stamp_.size() < m) stamp_.resize(m, 0);
  bump_generation();
  CubeWalker f(m);
  for (u64 a = 1; a <= n; ++a) {
    u64 v = f.value();
    if (stamp_[v] == gen_) return false;
    stamp_[v] = gen_;
    f.step();
  }
  return true;
}

std::optional<CollisionWitness> InjectivityTester::first_collision(u64 n, u64 m) {
  require_range(n, m);
  if (m == 1) return n >= 2 ? std::optional<CollisionWitness>({1, 2, 1}) : std::nullopt;
  if (stamp_.size() < m) stamp_.resize(m, 0);
  if (first_.size() < m) first_.resize(m, 0);
  bump_generation();
  CubeWalker f(m);
  for (u64 a = 1; a <= n; ++a) {
    u64 v = f.value();
    if (stamp_[v] == gen_) return CollisionWitness{first_[v], a, m};
    stamp_[v] = gen_;
    first_[v] = u32(a);
    f.step();
  }
  return std::nullopt;
}

std::optional<CollisionWitness> InjectivityTester::find_collision(u64 n, u64 m) {
  require_range(n, m);
  if (m == 1) return n >= 2 ? std::optional<CollisionWitness>({1, 2, 1}) : std::nullopt;
  if (stamp_.size() < m) stamp_.resize(m, 0);
  if (first_.size() < m) first_.resize(m, 0);
  bump_generation();

  // The lexicographically smallest pair is, over all residues hit at least
  // twice, the smallest (first occupant, second occupant).
  CubeWalker f(m);
  std::optional<CollisionWitness> best;
  for (u64 a = 1; a <= n; ++a) {
    u64 v = f.value();
    if (stamp_[v] != gen_) {
      stamp_[v] = gen_;
      first_[v] = u32(a);
    } else if (first_[v] != 0) {
      if (!best || first_[v] < best->a) best = CollisionWitness{first_[v], a, m};
      first_[v] = 0;  // only the earliest partner matters per residue
    }
    f.step();
  }
  return best;
}

InjectivityTester::CollisionCount InjectivityTester::count_collisions(u64 n, u64 m) {
  require_range(n, m);
  CollisionCount out;
  if (m == 1) {
    out.pairs = n >= 2 ? n * (n - 1) / 2 : 0;
    if (n >= 2) out.first = CollisionWitness{1, 2, 1};
    return out;
  }
  if (stamp_.size() < m) stamp_.resize(m, 0);
  if (first_.size() < m) first_.resize(m, 0);
  if (count_.size() < m) count_.resize(m, 0);
  bump_generation();
  CubeWalker f(m);
  for (u64 a = 1; a <= n; ++a) {
    u64 v = f.value();
    if (stamp_[v] != gen_) {
      stamp_[v] = gen_;
      first_[v] = u32(a);
      count_[v] = 1;
    } else {
      out.pairs += count_[v];
      ++count_[v];
      if (!out.first) out.first = CollisionWitness{first_[v], a, m};
    }
    f.step();
  }
  return out;
}

DiscriminatorResult InjectivityTester::delta_bruteforce(u64 n,
                                                        std::vector<CollisionWitness>* rejected) {
  if (n == 0) throw std::invalid_argument("delta_bruteforce: n must be positive");
  DiscriminatorResult out;
  out.n = n;
  out.k = ceil_log3(n);
  out.exceptional_s = exceptional_index(n);
  u64 cap = pow3(out.k);
  for (u64 m = n; m <= cap; ++m) {
    if (rejected) {
      auto w = first_collision(n, m);
      if (!w) {
        out.delta = m;
        return out;
      }
      rejected->push_back(*w);
    } else if (is_injective(n, m)) {
      out.delta = m;
      return out;
    }
  }
  // Unreachable: a^3 + a are pairwise distinct mod 3^k, and the loop tests
  // m = 3^k itself rather than assuming it.
  throw std::logic_error("delta_bruteforce: no injective modulus up to 3^k");
}

std::optional<CollisionWitness> find_collision_segmented(u64 n, u64 m, u64 segment_bytes) {
  if (n == 0 || m == 0) throw std::invalid_argument("n and m must be positive");
  if (m == 1) return n >= 2 ? std::optional<CollisionWitness>({1, 2, 1}) : std::nullopt;
  u64 seg_bits = segment_bytes * 8;
  std::vector<u64> bits((std::min(seg_bits, m) + 63) / 64);
  for (u64 base = 0; base < m; base += seg_bits) {
    u64 hi = std::min(base + seg_bits, m);
    std::fill(bits.begin(), bits.end(), 0);
    CubeWalker f(m);
    for (u64 a = 1; a <= n; ++a) {
      u64 v = f.value();
      if (v >= base && v < hi) {
        u64 idx = v - base;
        u64& word = bits[idx >> 6];
        u64 mask = u64(1) << (idx & 63);
        if (word & mask) {
          // second visitor of this residue: rescan for the first one
          CubeWalker g(m);
          for (u64 a0 = 1; a0 < a; ++a0) {
            if (g.value() == v) return CollisionWitness{a0, a, m};
            g.step();
          }
        }
        word |= mask;
      }
      f.step();
    }
  }
  return std::nullopt;
}

}  // namespace discrim
