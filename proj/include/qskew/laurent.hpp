#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "qskew/common.hpp"

namespace qskew {

/// Integer-coefficient Laurent polynomial in one formal variable t.
/// Invariant: no stored coefficient is zero; the zero polynomial is the
/// empty term map.
class LaurentIntPoly {
 public:
  using Terms = std::map<long, Int>;

  LaurentIntPoly() = default;
  explicit LaurentIntPoly(Int constant) {
    if (constant != 0) terms_[0] = std::move(constant);
  }
  LaurentIntPoly(long exponent, Int coeff) {
    if (coeff != 0) terms_[exponent] = std::move(coeff);
  }

  static LaurentIntPoly zero() { return LaurentIntPoly(); }
  static LaurentIntPoly one() { return LaurentIntPoly(Int(1)); }
  static LaurentIntPoly t(long exponent = 1) { return LaurentIntPoly(exponent, Int(1)); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const { return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1; }
  bool is_monomial() const { return terms_.size() == 1; }

  Int coeff(long exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Int(0) : it->second;
  }

  long min_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }
  long max_exponent() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

  void add_term(long exponent, const Int& coeff) {
    if (coeff == 0) return;
    auto [it, fresh] = terms_.try_emplace(exponent, coeff);
    if (!fresh) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  friend LaurentIntPoly operator+(const LaurentIntPoly& a, const LaurentIntPoly& b) {
    LaurentIntPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
  }

  friend LaurentIntPoly operator-(const LaurentIntPoly& a, const LaurentIntPoly& b) {
    LaurentIntPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
    return r;
  }

  LaurentIntPoly operator-() const {
    LaurentIntPoly r;
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
  }

  friend LaurentIntPoly operator*(const LaurentIntPoly& a, const LaurentIntPoly& b) {
    LaurentIntPoly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }

  LaurentIntPoly& operator+=(const LaurentIntPoly& o) { return *this = *this + o; }
  LaurentIntPoly& operator-=(const LaurentIntPoly& o) { return *this = *this - o; }
  LaurentIntPoly& operator*=(const LaurentIntPoly& o) { return *this = *this * o; }

  friend bool operator==(const LaurentIntPoly& a, const LaurentIntPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const LaurentIntPoly& a, const LaurentIntPoly& b) { return !(a == b); }

  /// Exact division; returns nullopt when the quotient is not a Laurent
  /// polynomial over the integers.
  std::optional<LaurentIntPoly> divide_exact(const LaurentIntPoly& divisor) const {
    if (divisor.is_zero()) throw DomainError("LaurentIntPoly: division by zero");
    LaurentIntPoly rem = *this;
    LaurentIntPoly quot;
    const long dlead = divisor.max_exponent();
    const Int& dc = divisor.terms_.rbegin()->second;
    while (!rem.is_zero()) {
      long rlead = rem.max_exponent();
      Int rc = rem.terms_.rbegin()->second;
      if (rc % dc != 0) return std::nullopt;
      Int q = rc / dc;
      long shift = rlead - dlead;
      quot.add_term(shift, q);
      rem -= divisor * LaurentIntPoly(shift, q);
      if (!rem.is_zero() && rem.max_exponent() >= rlead) return std::nullopt;
    }
    return quot;
  }

  Int evaluate_at_one() const {
    Int s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
  }

  std::string to_string(const std::string& var = "t") const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      Int c = it->second;
      if (first) {
        if (c < 0) os << "-", c = -c;
      } else {
        os << (c < 0 ? " - " : " + ");
        if (c < 0) c = -c;
      }
      first = false;
      long e = it->first;
      if (e == 0) {
        os << c.get_str();
      } else {
        if (c != 1) os << c.get_str() << "*";
        os << var;
        if (e != 1) os << "^" << e;
      }
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const LaurentIntPoly& p) { return os << p.to_string(); }

 private:
  Terms terms_;
};

}  // namespace qskew
