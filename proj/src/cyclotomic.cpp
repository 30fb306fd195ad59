#include "discrim/cyclotomic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace discrim {

CyclotomicInt::CyclotomicInt(u64 order) : q_(order) {
  if (order < 3) throw std::invalid_argument("CyclotomicInt: order must be >= 3");
  FactoredModulus fm = factorize(order);
  if (fm.factors.size() != 1 || fm.factors[0].first == 2)
    throw std::invalid_argument("CyclotomicInt: order must be an odd prime power");
  p_ = fm.factors[0].first;
  block_ = order / p_;
  c_.assign(order, 0);
}

CyclotomicInt CyclotomicInt::from_terms(u64 order,
                                        std::initializer_list<std::pair<u64, i64>> terms) {
  CyclotomicInt x(order);
  for (const auto& [idx, coeff] : terms) x.add_root(idx, coeff);
  return x.canonicalize(), x;
}

void CyclotomicInt::add_root(u64 index, i64 coeff) {
  c_[index % q_] += coeff;
  canonical_ = false;
}

CyclotomicInt& CyclotomicInt::canonicalize() {
  if (canonical_) return *this;
  for (u64 x = 0; x < block_; ++x) {
    i64 t = c_[x];
    if (t == 0) continue;
    for (u64 i = 0; i < p_; ++i) c_[x + i * block_] -= t;
  }
  canonical_ = true;
  return *this;
}

bool CyclotomicInt::operator==(const CyclotomicInt& other) const {
  if (q_ != other.q_) return false;
  CyclotomicInt a = *this, b = other;
  a.canonicalize();
  b.canonicalize();
  return a.c_ == b.c_;
}

CyclotomicInt CyclotomicInt::operator*(const CyclotomicInt& other) const {
  if (q_ != other.q_) throw std::invalid_argument("CyclotomicInt: order mismatch");
  CyclotomicInt out(q_);
  for (u64 i = 0; i < q_; ++i) {
    if (c_[i] == 0) continue;
    for (u64 j = 0; j < q_; ++j) {
      if (other.c_[j] == 0) continue;
      u64 k = i + j;
      if (k >= q_) k -= q_;
      out.c_[k] += c_[i] * other.c_[j];
    }
  }
  out.canonical_ = false;
  out.canonicalize();
  return out;
}

CyclotomicInt CyclotomicInt::operator+(const CyclotomicInt& other) const {
  if (q_ != other.q_) throw std::invalid_argument("CyclotomicInt: order mismatch");
  CyclotomicInt out(q_);
  for (u64 i = 0; i < q_; ++i) out.c_[i] = c_[i] + other.c_[i];
  out.canonical_ = false;
  out.canonicalize();
  return out;
}

CyclotomicInt CyclotomicInt::conjugate() const {
  CyclotomicInt out(q_);
  for (u64 i = 0; i < q_; ++i) out.c_[(q_ - i) % q_] = c_[i];
  out.canonical_ = false;
  out.canonicalize();
  return out;
}

bool CyclotomicInt::is_zero() const {
  CyclotomicInt a = *this;
  a.canonicalize();
  for (i64 v : a.c_)
    if (v != 0) return false;
  return true;
}

bool CyclotomicInt::is_rational() const {
  CyclotomicInt a = *this;
  a.canonicalize();
  i64 common = a.c_[block_ % q_ == 0 ? 0 : block_];
  for (u64 i = 0; i < q_; ++i) {
    bool on_lattice = (i % block_ == 0) && i != 0;
    if (on_lattice) {
      if (a.c_[i] != common) return false;
    } else if (a.c_[i] != 0) {
      return false;
    }
  }
  return true;
}

i64 CyclotomicInt::rational_value() const {
  CyclotomicInt a = *this;
  a.canonicalize();
  if (!a.is_rational()) throw std::domain_error("CyclotomicInt: value is not rational");
  return -a.c_[block_];
}

double CyclotomicInt::magnitude() const {
  double re = 0.0, im = 0.0;
  for (u64 i = 0; i < q_; ++i) {
    if (c_[i] == 0) continue;
    double ang = 2.0 * std::numbers::pi * double(i) / double(q_);
    re += double(c_[i]) * std::cos(ang);
    im += double(c_[i]) * std::sin(ang);
  }
  return std::hypot(re, im);
}

}  // namespace discrim
