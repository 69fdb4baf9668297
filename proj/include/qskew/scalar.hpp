#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qskew/cyclotomic.hpp"
#include "qskew/laurent.hpp"
#include "qskew/mpoly.hpp"

namespace qskew {

class Scalar;
class ScalarField;
using FieldPtr = std::shared_ptr<const ScalarField>;

/// Coefficient field descriptor. Two modes:
///  - Generic: field of fractions of Z[p_1,...,p_k], one formal variable per
///    named parameter (the "with sqrt" flavour adds s with q = s^2);
///  - Cyclotomic(r): Q(zeta_r) as polynomials modulo Phi_r, with named
///    parameters designating powers of zeta_r.
class ScalarField : public std::enable_shared_from_this<ScalarField> {
 public:
  enum class Mode { Generic, Cyclotomic };

  static FieldPtr generic(std::vector<std::string> vars);
  static FieldPtr generic_with_sqrt();
  /// Generic field with named parameters designating powers of the variables.
  static FieldPtr generic_with_param_powers(std::vector<std::string> vars,
                                            std::map<std::string, std::pair<int, int>> params);
  static FieldPtr cyclotomic(long r, std::map<std::string, long> param_exponents = {});
  /// Q(zeta_{2r}) with s = zeta_{2r} and q = zeta_{2r}^2, a primitive r-th root.
  static FieldPtr cyclotomic_with_sqrt(long r);

  Mode mode() const { return mode_; }
  bool is_generic() const { return mode_ == Mode::Generic; }
  bool is_cyclotomic() const { return mode_ == Mode::Cyclotomic; }
  bool with_sqrt() const { return with_sqrt_; }
  long order() const { return order_; }
  long phi() const { return phi_; }
  const std::vector<Int>& modulus() const { return modulus_; }
  const std::vector<std::string>& vars() const { return vars_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(const Int& v) const;
  Scalar from_int(long v) const;
  /// Generic: variable by index. Cyclotomic: zeta^power.
  Scalar unit_monomial(int var_idx, int power) const;
  Scalar generator() const;  // cyclotomic: zeta; generic: first variable
  bool has_param(const std::string& name) const;
  Scalar param(const std::string& name) const;
  std::vector<std::string> param_names() const;
  /// The scalar substituted for the formal variable t of Laurent polynomials:
  /// the designated parameter q when present, else the generator.
  Scalar t_substitute() const;

  friend bool same_field(const ScalarField& a, const ScalarField& b) {
    if (&a == &b) return true;
    return a.mode_ == b.mode_ && a.vars_ == b.vars_ && a.order_ == b.order_ &&
           a.gparams_ == b.gparams_ && a.cparams_ == b.cparams_;
  }

  std::map<std::string, long> cyclotomic_params() const { return cparams_; }

 private:
  friend class Scalar;
  ScalarField() = default;

  Mode mode_ = Mode::Generic;
  bool with_sqrt_ = false;
  std::vector<std::string> vars_;                    // generic variables, fixed order
  std::map<std::string, std::pair<int, int>> gparams_;  // name -> (var idx, power)
  long order_ = 0;                                   // cyclotomic r
  long phi_ = 0;
  std::vector<Int> modulus_;                         // dense Phi_r, size phi_+1, monic
  std::map<std::string, long> cparams_;              // name -> exponent of zeta
};

/// Element of the coefficient field, canonical:
///  - generic: reduced fraction of integer polynomials, denominator with
///    positive lex-leading coefficient;
///  - cyclotomic: integer polynomial of degree < phi(r) over a positive
///    integer denominator, gcd(content, den) = 1.
class Scalar {
 public:
  Scalar() = default;

  const FieldPtr& field() const { return field_; }

  bool is_zero() const {
    return field_->is_generic() ? num_.is_zero() : cpoly_.empty();
  }
  bool is_one() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar operator-() const;
  Scalar operator*(const Int& c) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  Scalar inverse() const;
  Scalar pow(long e) const;

  friend bool operator==(const Scalar& a, const Scalar& b) {
    a.check_field(b);
    if (a.field_->is_generic()) return a.num_ == b.num_ && a.den_ == b.den_;
    return a.cpoly_ == b.cpoly_ && a.cden_ == b.cden_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  friend bool operator<(const Scalar& a, const Scalar& b) {
    if (a.field_->is_generic()) {
      if (a.num_ != b.num_) return a.num_ < b.num_;
      return a.den_ < b.den_;
    }
    if (a.cden_ != b.cden_) return a.cden_ < b.cden_;
    return a.cpoly_ < b.cpoly_;
  }

  std::string to_string() const;

  /// Generic-mode access for structural checks.
  const MPoly& numerator() const { return num_; }
  const MPoly& denominator() const { return den_; }

  /// If this scalar is exactly a monomial with coefficient 1, returns the
  /// exponent of each field variable (generic mode only).
  std::optional<std::vector<long>> as_unit_monomial() const;

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

 private:
  friend class ScalarField;
  friend Scalar parse_scalar(const FieldPtr&, const std::string&);
  friend Scalar evaluate_laurent(const LaurentIntPoly&, const Scalar&);
  friend Scalar specialize_scalar(const Scalar&, const FieldPtr&);

  void check_field(const Scalar& o) const {
    if (!field_ || !o.field_ || !same_field(*field_, *o.field_))
      throw DomainError("Scalar: field mismatch");
  }

  void reduce_generic() {
    if (num_.is_zero()) {
      den_ = MPoly::constant(num_.nvars(), 1);
      return;
    }
    if (!den_.is_one()) {
      MPoly g = mpoly_gcd(num_, den_);
      if (!g.is_one()) {
        num_ = *num_.divide_exact(g);
        den_ = *den_.divide_exact(g);
      }
    }
    if (den_.lead_coeff() < 0) {
      num_ = -num_;
      den_ = -den_;
    }
  }

  void reduce_cyclotomic() {
    while (!cpoly_.empty() && cpoly_.back() == 0) cpoly_.pop_back();
    if (cpoly_.empty()) {
      cden_ = 1;
      return;
    }
    if (cden_ < 0) {
      cden_ = -cden_;
      for (auto& c : cpoly_) c = -c;
    }
    Int g = cden_;
    for (const auto& c : cpoly_) {
      g = int_gcd(g, c);
      if (g == 1) break;
    }
    if (g > 1) {
      cden_ /= g;
      for (auto& c : cpoly_) c /= g;
    }
  }

  // Reduces an integer-coefficient polynomial modulo the monic modulus.
  void mod_reduce(std::vector<Int>& p) const {
    const auto& m = field_->modulus();
    long phi = field_->phi();
    for (long d = static_cast<long>(p.size()) - 1; d >= phi; --d) {
      if (p[d] == 0) continue;
      Int lead = p[d];
      for (long i = 0; i <= phi; ++i) p[d - phi + i] -= lead * m[i];
    }
    p.resize(std::min<size_t>(p.size(), phi));
    while (!p.empty() && p.back() == 0) p.pop_back();
  }

  FieldPtr field_;
  // generic representation
  MPoly num_, den_;
  // cyclotomic representation
  std::vector<Int> cpoly_;
  Int cden_ = 1;
};

// ---------------------------------------------------------------------------
// ScalarField implementation

inline FieldPtr ScalarField::generic(std::vector<std::string> vars) {
  auto f = std::shared_ptr<ScalarField>(new ScalarField());
  f->mode_ = Mode::Generic;
  f->vars_ = std::move(vars);
  for (size_t i = 0; i < f->vars_.size(); ++i) f->gparams_[f->vars_[i]] = {static_cast<int>(i), 1};
  return f;
}

inline FieldPtr ScalarField::generic_with_param_powers(
    std::vector<std::string> vars, std::map<std::string, std::pair<int, int>> params) {
  auto f = std::shared_ptr<ScalarField>(new ScalarField());
  f->mode_ = Mode::Generic;
  f->vars_ = std::move(vars);
  for (size_t i = 0; i < f->vars_.size(); ++i) f->gparams_[f->vars_[i]] = {static_cast<int>(i), 1};
  for (auto& [name, vp] : params) f->gparams_[name] = vp;
  return f;
}

inline FieldPtr ScalarField::generic_with_sqrt() {
  auto f = std::shared_ptr<ScalarField>(new ScalarField());
  f->mode_ = Mode::Generic;
  f->with_sqrt_ = true;
  f->vars_ = {"s"};
  f->gparams_["s"] = {0, 1};
  f->gparams_["q"] = {0, 2};
  return f;
}

inline FieldPtr ScalarField::cyclotomic(long r, std::map<std::string, long> param_exponents) {
  if (r < 1) throw DomainError("ScalarField::cyclotomic: r must be positive");
  auto f = std::shared_ptr<ScalarField>(new ScalarField());
  f->mode_ = Mode::Cyclotomic;
  f->order_ = r;
  f->phi_ = euler_phi(r);
  const LaurentIntPoly& phi_poly = cyclotomic_poly(r);
  f->modulus_.assign(f->phi_ + 1, 0);
  for (const auto& [e, c] : phi_poly.terms()) f->modulus_[e] = c;
  f->cparams_ = std::move(param_exponents);
  if (!f->cparams_.count("q")) f->cparams_["q"] = 1;
  return f;
}

inline FieldPtr ScalarField::cyclotomic_with_sqrt(long r) {
  auto f = std::const_pointer_cast<ScalarField>(cyclotomic(2 * r, {{"q", 2}, {"s", 1}}));
  f->with_sqrt_ = true;
  return f;
}

inline Scalar ScalarField::zero() const { return from_int(Int(0)); }
inline Scalar ScalarField::one() const { return from_int(Int(1)); }
inline Scalar ScalarField::from_int(long v) const { return from_int(Int(v)); }

inline Scalar ScalarField::from_int(const Int& v) const {
  Scalar s;
  s.field_ = shared_from_this();
  if (is_generic()) {
    int n = static_cast<int>(vars_.size());
    s.num_ = MPoly::constant(n, v);
    s.den_ = MPoly::constant(n, 1);
  } else {
    if (v != 0) s.cpoly_ = {v};
    s.cden_ = 1;
  }
  return s;
}

inline Scalar ScalarField::unit_monomial(int var_idx, int power) const {
  Scalar s;
  s.field_ = shared_from_this();
  if (is_generic()) {
    int n = static_cast<int>(vars_.size());
    s.den_ = MPoly::constant(n, 1);
    if (power >= 0) {
      s.num_ = MPoly::variable(n, var_idx, power);
    } else {
      s.num_ = MPoly::constant(n, 1);
      s.den_ = MPoly::variable(n, var_idx, -power);
    }
    return s;
  }
  long e = ((power % order_) + order_) % order_;
  std::vector<Int> p(e + 1, 0);
  p[e] = 1;
  s.mod_reduce(p);
  s.cpoly_ = std::move(p);
  s.cden_ = 1;
  s.reduce_cyclotomic();
  return s;
}

inline Scalar ScalarField::generator() const { return unit_monomial(0, 1); }

inline bool ScalarField::has_param(const std::string& name) const {
  return is_generic() ? gparams_.count(name) > 0 : cparams_.count(name) > 0;
}

inline Scalar ScalarField::param(const std::string& name) const {
  if (is_generic()) {
    auto it = gparams_.find(name);
    if (it == gparams_.end()) throw DomainError("ScalarField: unknown parameter " + name);
    return unit_monomial(it->second.first, it->second.second);
  }
  auto it = cparams_.find(name);
  if (it == cparams_.end()) throw DomainError("ScalarField: unknown parameter " + name);
  return unit_monomial(0, static_cast<int>(it->second));
}

inline std::vector<std::string> ScalarField::param_names() const {
  std::vector<std::string> out;
  if (is_generic())
    for (const auto& [k, v] : gparams_) out.push_back(k);
  else
    for (const auto& [k, v] : cparams_) out.push_back(k);
  return out;
}

inline Scalar ScalarField::t_substitute() const {
  if (has_param("q")) return param("q");
  return generator();
}

// ---------------------------------------------------------------------------
// Scalar implementation

inline bool Scalar::is_one() const {
  if (field_->is_generic()) return num_.is_one() && den_.is_one();
  return cden_ == 1 && cpoly_.size() == 1 && cpoly_[0] == 1;
}

inline Scalar operator+(const Scalar& a, const Scalar& b) {
  a.check_field(b);
  Scalar r;
  r.field_ = a.field_;
  if (a.field_->is_generic()) {
    if (a.den_ == b.den_) {
      r.num_ = a.num_ + b.num_;
      r.den_ = a.den_;
    } else {
      r.num_ = a.num_ * b.den_ + b.num_ * a.den_;
      r.den_ = a.den_ * b.den_;
    }
    r.reduce_generic();
  } else {
    Int g = int_gcd(a.cden_, b.cden_);
    Int ma = b.cden_ / g, mb = a.cden_ / g;
    r.cpoly_.assign(std::max(a.cpoly_.size(), b.cpoly_.size()), 0);
    for (size_t i = 0; i < a.cpoly_.size(); ++i) r.cpoly_[i] += a.cpoly_[i] * ma;
    for (size_t i = 0; i < b.cpoly_.size(); ++i) r.cpoly_[i] += b.cpoly_[i] * mb;
    r.cden_ = a.cden_ * ma;
    r.reduce_cyclotomic();
  }
  return r;
}

inline Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

inline Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (field_->is_generic()) {
    r.num_ = -r.num_;
  } else {
    for (auto& c : r.cpoly_) c = -c;
  }
  return r;
}

inline Scalar Scalar::operator*(const Int& c) const {
  Scalar r = *this;
  if (field_->is_generic()) {
    r.num_ = r.num_ * c;
    r.reduce_generic();
  } else {
    for (auto& k : r.cpoly_) k *= c;
    r.reduce_cyclotomic();
  }
  return r;
}

inline Scalar operator*(const Scalar& a, const Scalar& b) {
  a.check_field(b);
  Scalar r;
  r.field_ = a.field_;
  if (a.field_->is_generic()) {
    if (a.num_.is_zero() || b.num_.is_zero()) {
      r = a.field_->zero();
      return r;
    }
    MPoly an = a.num_, bd = b.den_, bn = b.num_, ad = a.den_;
    if (!bd.is_one()) {
      MPoly g1 = mpoly_gcd(an, bd);
      if (!g1.is_one()) {
        an = *an.divide_exact(g1);
        bd = *bd.divide_exact(g1);
      }
    }
    if (!ad.is_one()) {
      MPoly g2 = mpoly_gcd(bn, ad);
      if (!g2.is_one()) {
        bn = *bn.divide_exact(g2);
        ad = *ad.divide_exact(g2);
      }
    }
    r.num_ = an * bn;
    r.den_ = ad * bd;
    if (r.den_.lead_coeff() < 0) {
      r.num_ = -r.num_;
      r.den_ = -r.den_;
    }
  } else {
    if (a.cpoly_.empty() || b.cpoly_.empty()) return a.field_->zero();
    std::vector<Int> p(a.cpoly_.size() + b.cpoly_.size() - 1, 0);
    for (size_t i = 0; i < a.cpoly_.size(); ++i)
      for (size_t j = 0; j < b.cpoly_.size(); ++j) p[i + j] += a.cpoly_[i] * b.cpoly_[j];
    r.mod_reduce(p);
    r.cpoly_ = std::move(p);
    r.cden_ = a.cden_ * b.cden_;
    r.reduce_cyclotomic();
  }
  return r;
}

inline Scalar Scalar::inverse() const {
  if (is_zero()) throw DomainError("Scalar: division by zero");
  Scalar r;
  r.field_ = field_;
  if (field_->is_generic()) {
    r.num_ = den_;
    r.den_ = num_;
    if (r.den_.lead_coeff() < 0) {
      r.num_ = -r.num_;
      r.den_ = -r.den_;
    }
    return r;
  }
  // Extended Euclid in Q[x] against the (irreducible) modulus.
  using QP = std::vector<Rat>;
  auto deg = [](const QP& p) { return static_cast<long>(p.size()) - 1; };
  auto trim = [](QP& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
  };
  QP a(field_->modulus().size());
  for (size_t i = 0; i < a.size(); ++i) a[i] = Rat(field_->modulus()[i]);
  QP b(cpoly_.size());
  for (size_t i = 0; i < b.size(); ++i) b[i] = Rat(cpoly_[i], cden_);
  QP u0 = {}, u1 = {Rat(1)};  // Bezout coefficients of b
  while (true) {
    trim(a);
    trim(b);
    if (b.empty()) throw std::logic_error("Scalar: element not invertible modulo Phi_r");
    if (deg(b) == 0) {
      Rat inv = 1 / b[0];
      QP res(u1.size());
      for (size_t i = 0; i < u1.size(); ++i) res[i] = u1[i] * inv;
      Int den = 1;
      for (auto& c : res) den = int_lcm(den, c.get_den());
      std::vector<Int> ip(res.size());
      for (size_t i = 0; i < res.size(); ++i) {
        Rat scaled = res[i] * Rat(den);
        ip[i] = scaled.get_num();
      }
      r.cpoly_ = std::move(ip);
      r.cden_ = den;
      std::vector<Int> tmp = r.cpoly_;
      r.mod_reduce(tmp);
      r.cpoly_ = std::move(tmp);
      r.reduce_cyclotomic();
      return r;
    }
    // a = q*b + rem; (a, b) <- (b, rem); track Bezout of b only.
    QP rem = a;
    QP q(deg(a) - deg(b) + 1);
    for (long d = deg(rem); d >= deg(b); --d) {
      if (rem[d] == 0) continue;
      Rat c = rem[d] / b.back();
      q[d - deg(b)] = c;
      for (long i = 0; i <= deg(b); ++i) rem[d - deg(b) + i] -= c * b[i];
      rem[d] = 0;
    }
    trim(rem);
    // u_new = u0 - q * u1
    QP u2 = u0;
    u2.resize(std::max(u2.size(), q.size() + u1.size()), Rat(0));
    for (size_t i = 0; i < q.size(); ++i)
      for (size_t j = 0; j < u1.size(); ++j) u2[i + j] -= q[i] * u1[j];
    trim(u2);
    a = std::move(b);
    b = std::move(rem);
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
}

inline Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

inline Scalar Scalar::pow(long e) const {
  if (e == 0) return field_->one();
  Scalar base = e < 0 ? inverse() : *this;
  unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Scalar r = field_->one();
  while (n) {
    if (n & 1) r = r * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return r;
}

inline std::optional<std::vector<long>> Scalar::as_unit_monomial() const {
  if (!field_->is_generic()) return std::nullopt;
  if (!num_.is_monomial() || !den_.is_monomial()) return std::nullopt;
  if (num_.lead_coeff() != 1 || den_.lead_coeff() != 1) return std::nullopt;
  std::vector<long> out(field_->vars().size());
  const auto& ne = num_.lead_exp();
  const auto& de = den_.lead_exp();
  for (size_t i = 0; i < out.size(); ++i) out[i] = ne[i] - de[i];
  return out;
}

// ---------------------------------------------------------------------------
// Printing

namespace detail {

inline std::string mpoly_to_string(const MPoly& p, const std::vector<std::string>& vars) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    Int c = it->second;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    bool any_var = false;
    std::ostringstream vs;
    for (size_t i = 0; i < vars.size(); ++i) {
      int e = it->first[i];
      if (e == 0) continue;
      if (any_var) vs << "*";
      any_var = true;
      vs << vars[i];
      if (e != 1) vs << "^" << e;
    }
    if (!any_var) {
      os << c.get_str();
    } else {
      if (c != 1) os << c.get_str() << "*";
      os << vs.str();
    }
  }
  return os.str();
}

inline std::string wrap_if_sum(const std::string& s) {
  bool needs = false;
  for (size_t i = 1; i < s.size(); ++i)
    if (s[i] == '+' || (s[i] == '-' && s[i - 1] == ' ')) needs = true;
  return needs ? "(" + s + ")" : s;
}

// Wraps anything that is not a single atom (with optional exponent), so it
// can stand as the right operand of '/'.
inline std::string wrap_unless_atom(const std::string& s) {
  size_t i = 0;
  if (i < s.size() && (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
  } else {
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  }
  if (i < s.size() && s[i] == '^') {
    ++i;
    if (i < s.size() && s[i] == '-') ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  }
  return (i == s.size() && i > 0) ? s : "(" + s + ")";
}

}  // namespace detail

inline std::string Scalar::to_string() const {
  if (field_->is_generic()) {
    std::string n = detail::mpoly_to_string(num_, field_->vars());
    if (den_.is_one()) return n;
    std::string d = detail::mpoly_to_string(den_, field_->vars());
    return detail::wrap_if_sum(n) + "/" + detail::wrap_unless_atom(d);
  }
  if (cpoly_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long i = static_cast<long>(cpoly_.size()) - 1; i >= 0; --i) {
    Int c = cpoly_[i];
    if (c == 0) continue;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    if (i == 0) {
      os << c.get_str();
    } else {
      if (c != 1) os << c.get_str() << "*";
      os << "z";
      if (i != 1) os << "^" << i;
    }
  }
  std::string n = os.str();
  if (cden_ == 1) return n;
  return detail::wrap_if_sum(n) + "/" + cden_.get_str();
}

// ---------------------------------------------------------------------------
// Parsing: integers, parameter names, + - * / ^ with integer exponents,
// parentheses.

namespace detail {

class ScalarParser {
 public:
  ScalarParser(const FieldPtr& field, const std::string& text) : field_(field), s_(text) {}

  Scalar parse() {
    Scalar v = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw DomainError("scalar parse error at position " + std::to_string(pos_) + ": " + msg +
                      " in \"" + s_ + "\"");
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Scalar expr() {
    Scalar v = term();
    while (true) {
      if (eat('+')) {
        v = v + term();
      } else if (eat('-')) {
        v = v - term();
      } else {
        return v;
      }
    }
  }

  Scalar term() {
    Scalar v = factor();
    while (true) {
      if (eat('*')) {
        v = v * factor();
      } else if (eat('/')) {
        v = v / factor();
      } else {
        return v;
      }
    }
  }

  Scalar factor() {
    if (eat('-')) return -factor();
    if (eat('+')) return factor();
    Scalar v = atom();
    if (eat('^')) {
      long e = integer();
      v = v.pow(e);
    }
    return v;
  }

  long integer() {
    skip_ws();
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = s_[pos_++] == '-';
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected integer exponent");
    long v = std::stol(s_.substr(start, pos_ - start));
    return neg ? -v : v;
  }

  Scalar atom() {
    skip_ws();
    if (eat('(')) {
      Scalar v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return field_->from_int(Int(s_.substr(start, pos_ - start)));
    }
    if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (field_->has_param(name)) return field_->param(name);
      if (field_->is_cyclotomic() && name == "z") return field_->generator();
      fail("unknown parameter " + name);
    }
    fail("expected atom");
  }

  FieldPtr field_;
  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace detail

inline Scalar parse_scalar(const FieldPtr& field, const std::string& text) {
  return detail::ScalarParser(field, text).parse();
}

/// Substitutes the field's designated root (or formal parameter) for t.
inline Scalar evaluate_laurent(const LaurentIntPoly& p, const Scalar& t_value) {
  Scalar acc = t_value.field()->zero();
  for (const auto& [e, c] : p.terms()) acc += t_value.pow(e) * c;
  return acc;
}

inline Scalar evaluate_at_root(const LaurentIntPoly& p, const FieldPtr& field) {
  return evaluate_laurent(p, field->t_substitute());
}

/// Maps a generic-field scalar into a target field by substituting, for each
/// generic variable, the target parameter of the same name.
inline Scalar specialize_scalar(const Scalar& s, const FieldPtr& target) {
  const FieldPtr& src = s.field();
  if (!src->is_generic()) throw DomainError("specialize_scalar: source must be generic");
  std::vector<Scalar> vals;
  vals.reserve(src->vars().size());
  for (const auto& name : src->vars()) vals.push_back(target->param(name));
  auto pow_fn = [](const Scalar& v, int e) { return v.pow(e); };
  Scalar num = s.numerator().evaluate(vals, target->zero(), target->one(), pow_fn);
  Scalar den = s.denominator().evaluate(vals, target->zero(), target->one(), pow_fn);
  if (den.is_zero()) throw DomainError("specialize_scalar: denominator vanishes at specialization");
  return num / den;
}

inline Scalar scalar_invert(const Scalar& a) { return a.inverse(); }

}  // namespace qskew
