#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace torusspace {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Field policies. Algorithms take a field object and call through it, so a
// prime chosen at runtime costs nothing extra.

class RationalField {
 public:
  using Element = Rational;

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_int(long long v) const { return Element(v); }
  Element from_integer(const Integer& v) const { return Element(v); }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  Element inv(const Element& a) const {
    if (a == 0) throw std::domain_error("division by zero in Q");
    return Element(1) / a;
  }
  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }

  bool is_zero(const Element& a) const { return a == 0; }
  bool equal(const Element& a, const Element& b) const { return a == b; }

  unsigned long characteristic() const { return 0; }
  std::string name() const { return "Q"; }
  std::string format(const Element& a) const { return a.str(); }

  bool operator==(const RationalField&) const { return true; }
};

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

class PrimeField {
 public:
  using Element = std::uint32_t;

  PrimeField() : p_(2) {}
  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (!is_prime(p) || p > (1u << 31)) throw std::invalid_argument("not a usable prime: " + std::to_string(p));
  }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    return static_cast<Element>(r < 0 ? r + p_ : r);
  }
  Element from_integer(const Integer& v) const {
    Integer r = v % p_;
    if (r < 0) r += p_;
    return static_cast<Element>(r.convert_to<unsigned long>());
  }

  Element add(Element a, Element b) const {
    std::uint64_t s = std::uint64_t(a) + b;
    return static_cast<Element>(s >= p_ ? s - p_ : s);
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : static_cast<Element>(std::uint64_t(a) + p_ - b); }
  Element mul(Element a, Element b) const { return static_cast<Element>((std::uint64_t(a) * b) % p_); }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element inv(Element a) const {
    if (a == 0) throw std::domain_error("division by zero in F_" + std::to_string(p_));
    // extended Euclid
    std::int64_t t = 0, nt = 1, r = p_, nr = a;
    while (nr != 0) {
      std::int64_t q = r / nr;
      std::int64_t tmp = t - q * nt; t = nt; nt = tmp;
      tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (t < 0) t += p_;
    return static_cast<Element>(t);
  }
  Element div(Element a, Element b) const { return mul(a, inv(b)); }

  bool is_zero(Element a) const { return a == 0; }
  bool equal(Element a, Element b) const { return a == b; }

  unsigned long characteristic() const { return p_; }
  std::uint32_t prime() const { return p_; }
  std::string name() const { return "F" + std::to_string(p_); }
  std::string format(Element a) const { return std::to_string(a); }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  std::uint32_t p_;
};

}  // namespace torusspace
