#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qskew/common.hpp"

namespace qskew {

/// Sparse multivariate polynomial over Z with nonnegative exponents.
/// The number of variables is fixed per polynomial; terms are kept in a
/// lex-ordered map with no zero coefficients.
class MPoly {
 public:
  using Exp = std::vector<int>;
  using Terms = std::map<Exp, Int>;

  MPoly() : nvars_(0) {}
  explicit MPoly(int nvars) : nvars_(nvars) {}
  MPoly(int nvars, Int constant) : nvars_(nvars) {
    if (constant != 0) terms_[Exp(nvars, 0)] = std::move(constant);
  }

  static MPoly constant(int nvars, Int c) { return MPoly(nvars, std::move(c)); }
  static MPoly variable(int nvars, int idx, int power = 1) {
    MPoly p(nvars);
    Exp e(nvars, 0);
    e.at(idx) = power;
    p.terms_[e] = 1;
    return p;
  }
  static MPoly monomial(int nvars, Exp e, Int c) {
    MPoly p(nvars);
    if (c != 0) p.terms_[std::move(e)] = std::move(c);
    return p;
  }

  int nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && is_zero_exp(terms_.begin()->first));
  }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_one() const { return is_constant() && !terms_.empty() && terms_.begin()->second == 1; }

  Int constant_value() const {
    if (!is_constant()) throw DomainError("MPoly: not a constant");
    return terms_.empty() ? Int(0) : terms_.begin()->second;
  }

  int degree_in(int var) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
  }

  void add_term(const Exp& e, const Int& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  friend MPoly operator+(const MPoly& a, const MPoly& b) {
    a.check_same(b);
    MPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
  }
  friend MPoly operator-(const MPoly& a, const MPoly& b) {
    a.check_same(b);
    MPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
    return r;
  }
  MPoly operator-() const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
  }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    a.check_same(b);
    MPoly r(a.nvars_);
    if (a.terms_.empty() || b.terms_.empty()) return r;
    Exp e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }
  MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
  MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  MPoly operator*(const Int& c) const {
    MPoly r(nvars_);
    if (c == 0) return r;
    for (const auto& [e, k] : terms_) r.terms_[e] = k * c;
    return r;
  }

  MPoly pow(unsigned long e) const {
    MPoly r = MPoly::constant(nvars_, 1);
    MPoly base = *this;
    while (e) {
      if (e & 1) r *= base;
      base = (e >>= 1) ? base * base : base;
    }
    return r;
  }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }
  friend bool operator<(const MPoly& a, const MPoly& b) {
    if (a.nvars_ != b.nvars_) return a.nvars_ < b.nvars_;
    return a.terms_ < b.terms_;
  }

  /// Leading coefficient in the lex order.
  const Int& lead_coeff() const {
    if (terms_.empty()) throw DomainError("MPoly: lead_coeff of zero");
    return terms_.rbegin()->second;
  }
  const Exp& lead_exp() const {
    if (terms_.empty()) throw DomainError("MPoly: lead_exp of zero");
    return terms_.rbegin()->first;
  }

  /// gcd of all integer coefficients, nonnegative.
  Int content() const {
    Int g = 0;
    for (const auto& [e, c] : terms_) {
      g = int_gcd(g, c);
      if (g == 1) break;
    }
    return g;
  }

  /// Componentwise minimum of all exponent vectors (the common monomial factor).
  Exp monomial_content() const {
    if (terms_.empty()) return Exp(nvars_, 0);
    Exp m = terms_.begin()->first;
    for (const auto& [e, c] : terms_)
      for (int i = 0; i < nvars_; ++i) m[i] = std::min(m[i], e[i]);
    return m;
  }

  MPoly shift_exponents(const Exp& delta) const {
    MPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
      Exp ne = e;
      for (int i = 0; i < nvars_; ++i) {
        ne[i] += delta[i];
        if (ne[i] < 0) throw DomainError("MPoly: negative exponent after shift");
      }
      r.terms_[std::move(ne)] = c;
    }
    return r;
  }

  /// Exact division; nullopt if *this is not divisible by d in Z[x_1..x_k].
  std::optional<MPoly> divide_exact(const MPoly& d) const {
    check_same(d);
    if (d.is_zero()) throw DomainError("MPoly: division by zero");
    MPoly rem = *this;
    MPoly quot(nvars_);
    const Exp& dl = d.lead_exp();
    const Int& dc = d.lead_coeff();
    while (!rem.is_zero()) {
      Exp rl = rem.lead_exp();  // by value: rem is reassigned below
      Exp qe(nvars_);
      for (int i = 0; i < nvars_; ++i) {
        qe[i] = rl[i] - dl[i];
        if (qe[i] < 0) return std::nullopt;
      }
      Int rc = rem.lead_coeff();
      if (rc % dc != 0) return std::nullopt;
      Int qc = rc / dc;
      MPoly piece = MPoly::monomial(nvars_, qe, qc);
      quot += piece;
      rem -= d * piece;
      if (!rem.is_zero() && !(rem.lead_exp() < rl)) return std::nullopt;
    }
    return quot;
  }

  /// Substitutes values for every variable; Value must support *, +, pow.
  template <typename Value, typename PowFn>
  Value evaluate(const std::vector<Value>& vals, const Value& zero, const Value& one, PowFn pow_fn) const {
    Value acc = zero;
    for (const auto& [e, c] : terms_) {
      Value term = one * c;
      for (int i = 0; i < nvars_; ++i)
        if (e[i] != 0) term = term * pow_fn(vals[i], e[i]);
      acc = acc + term;
    }
    return acc;
  }

 private:
  static bool is_zero_exp(const Exp& e) {
    return std::all_of(e.begin(), e.end(), [](int v) { return v == 0; });
  }
  void check_same(const MPoly& o) const {
    if (nvars_ != o.nvars_) throw DomainError("MPoly: variable count mismatch");
  }

  int nvars_;
  Terms terms_;
};

namespace detail {

// Views p as a univariate polynomial in `var` with MPoly coefficients.
inline std::vector<MPoly> coeffs_in_var(const MPoly& p, int var) {
  std::vector<MPoly> out(p.degree_in(var) + 1, MPoly(p.nvars()));
  for (const auto& [e, c] : p.terms()) {
    MPoly::Exp r = e;
    int d = r[var];
    r[var] = 0;
    out[d].add_term(r, c);
  }
  return out;
}

inline MPoly from_coeffs_in_var(const std::vector<MPoly>& cs, int var, int nvars) {
  MPoly p(nvars);
  for (size_t d = 0; d < cs.size(); ++d) {
    for (const auto& [e, c] : cs[d].terms()) {
      MPoly::Exp r = e;
      r[var] += static_cast<int>(d);
      p.add_term(r, c);
    }
  }
  return p;
}

}  // namespace detail

MPoly mpoly_gcd(const MPoly& a, const MPoly& b);

namespace detail {

inline MPoly checked_div(const MPoly& a, const MPoly& d) {
  auto q = a.divide_exact(d);
  if (!q) throw std::logic_error("mpoly: expected exact division");
  return *q;
}


// Content of p w.r.t. var: gcd of its coefficients as polynomials in the
// remaining variables.
inline MPoly content_in_var(const MPoly& p, int var) {
  MPoly g(p.nvars());
  for (const auto& c : coeffs_in_var(p, var)) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c : mpoly_gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

// Pseudo-remainder of a by b w.r.t. var (both nonzero, deg_var(a) >= deg_var(b)).
inline MPoly pseudo_rem(MPoly a, const MPoly& b, int var) {
  int db = b.degree_in(var);
  auto bc = coeffs_in_var(b, var);
  const MPoly& blead = bc[db];
  int da = a.degree_in(var);
  while (!a.is_zero() && (da = a.degree_in(var)) >= db) {
    auto ac = coeffs_in_var(a, var);
    MPoly alead = ac[da];
    // a <- blead * a - alead * x^{da-db} * b
    MPoly shift = MPoly::variable(a.nvars(), var, da - db);
    a = a * blead - b * (alead * shift);
    if (!a.is_zero() && a.degree_in(var) >= da) throw std::logic_error("pseudo_rem: no progress");
  }
  return a;
}

}  // namespace detail

/// Polynomial gcd over Z, primitive PRS with recursive contents.
/// Normalized so the lex-leading coefficient is positive.
inline MPoly mpoly_gcd(const MPoly& a, const MPoly& b) {
  if (a.is_zero() && b.is_zero()) return a;
  auto normalize = [](MPoly p) { return p.lead_coeff() < 0 ? -p : p; };
  if (a.is_zero()) return normalize(b);
  if (b.is_zero()) return normalize(a);

  Int ic = int_gcd(a.content(), b.content());
  MPoly pa = detail::checked_div(a, MPoly::constant(a.nvars(), a.content()));
  MPoly pb = detail::checked_div(b, MPoly::constant(b.nvars(), b.content()));

  // Common monomial factor fast path.
  MPoly::Exp ma = pa.monomial_content(), mb = pb.monomial_content();
  MPoly::Exp mc(a.nvars());
  for (int i = 0; i < a.nvars(); ++i) mc[i] = std::min(ma[i], mb[i]);
  MPoly::Exp neg = mc;
  for (auto& v : neg) v = -v;
  pa = pa.shift_exponents([&] { MPoly::Exp d = ma; for (int i = 0; i < a.nvars(); ++i) d[i] = -ma[i]; return d; }());
  pb = pb.shift_exponents([&] { MPoly::Exp d = mb; for (int i = 0; i < a.nvars(); ++i) d[i] = -mb[i]; return d; }());

  MPoly result(a.nvars());
  if (pa.is_monomial() || pb.is_monomial()) {
    // gcd of primitive monomial-stripped parts: monomial x poly -> constant
    result = MPoly::constant(a.nvars(), 1);
  } else {
    int var = -1;
    for (int i = 0; i < a.nvars() && var < 0; ++i)
      if (pa.degree_in(i) > 0 || pb.degree_in(i) > 0) var = i;
    if (var < 0) {
      result = MPoly::constant(a.nvars(), 1);
    } else if (pa.degree_in(var) == 0 || pb.degree_in(var) == 0) {
      // One side free of the main variable: gcd divides its content side.
      const MPoly& free_side = pa.degree_in(var) == 0 ? pa : pb;
      const MPoly& other = pa.degree_in(var) == 0 ? pb : pa;
      result = mpoly_gcd(free_side, detail::content_in_var(other, var));
    } else {
      MPoly ca = detail::content_in_var(pa, var);
      MPoly cb = detail::content_in_var(pb, var);
      MPoly gcont = mpoly_gcd(ca, cb);
      MPoly u = detail::checked_div(pa, ca);
      MPoly v = detail::checked_div(pb, cb);
      if (u.degree_in(var) < v.degree_in(var)) std::swap(u, v);
      while (!v.is_zero()) {
        MPoly r = detail::pseudo_rem(u, v, var);
        u = std::move(v);
        if (r.is_zero()) {
          v = MPoly(a.nvars());
        } else {
          Int rc = r.content();
          r = detail::checked_div(r, MPoly::constant(a.nvars(), rc));
          MPoly rcont = detail::content_in_var(r, var);
          v = detail::checked_div(r, rcont);
        }
      }
      if (u.degree_in(var) == 0) {
        result = gcont;
      } else {
        MPoly ucont = detail::content_in_var(u, var);
        MPoly prim = detail::checked_div(u, ucont);
        Int pc = prim.content();
        if (pc != 1) prim = detail::checked_div(prim, MPoly::constant(a.nvars(), pc));
        result = gcont * prim;
        // Primitive PRS can pick up spurious factors; verify and fall back.
        if (!a.divide_exact(result) || !b.divide_exact(result)) result = gcont;
      }
    }
  }
  result = result * MPoly::monomial(a.nvars(), mc, ic);
  return normalize(result);
}

}  // namespace qskew
