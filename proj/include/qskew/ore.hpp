#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qskew/qarith.hpp"
#include "qskew/scalar.hpp"

namespace qskew {

using ExpVec = std::vector<int>;
using TermMap = std::map<ExpVec, Scalar>;

class OreSpec;
using SpecPtr = std::shared_ptr<const OreSpec>;

/// Presentation of an iterated skew polynomial ring
/// R[x_1; tau_1, delta_1]...[x_N; tau_N, delta_N] over the coefficient field,
/// with scalar-commuting automorphisms tau_i(x_j) = lambda[i][j] x_j.
class OreSpec : public std::enable_shared_from_this<OreSpec> {
 public:
  FieldPtr field;
  std::vector<std::string> vars;
  /// lambda[i][j] is the scalar in x_i x_j = lambda[i][j] x_j x_i (+ delta
  /// term when j < i); multiplicatively antisymmetric.
  std::vector<std::vector<Scalar>> lambda;
  /// q-skew parameter per variable; 1 means delta_i = 0.
  std::vector<Scalar> qskew;
  /// (i, j) with j < i maps to the terms of delta_i(x_j); absent means zero.
  std::map<std::pair<int, int>, TermMap> delta;
  /// Variables permitted negative exponents in plain elements.
  std::set<int> invertible;
  int max_index = 64;
  /// Generic-parameter lift when this spec is a cyclotomic specialization.
  SpecPtr lift;

  int size() const { return static_cast<int>(vars.size()); }

  bool has_delta(int i) const {
    auto it = delta.lower_bound({i, -1});
    return it != delta.end() && it->first.first == i;
  }
  const TermMap* delta_image(int i, int j) const {
    auto it = delta.find({i, j});
    return it == delta.end() ? nullptr : &it->second;
  }
  /// Largest variable index whose derivation is nonzero, or -1.
  int last_delta_var() const {
    int best = -1;
    for (const auto& [key, img] : delta)
      if (!img.empty()) best = std::max(best, key.first);
    return best;
  }
};

/// Normally ordered element: map from exponent vector to nonzero coefficient,
/// monomials read x_1^{e_1} ... x_N^{e_N}.
struct OreElement {
  SpecPtr spec;
  TermMap terms;

  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const OreElement& a, const OreElement& b) {
    return a.terms == b.terms;
  }
  friend bool operator!=(const OreElement& a, const OreElement& b) { return !(a == b); }
};

namespace ore {

// Multiplication context: spec plus the set of variables currently treated as
// invertible (the spec's own set, possibly extended by a localization).
struct Ctx {
  const OreSpec* spec;
  const std::set<int>* extra_inverted = nullptr;

  bool inverted(int j) const {
    return spec->invertible.count(j) || (extra_inverted && extra_inverted->count(j));
  }
};

inline void add_term(TermMap& m, const ExpVec& e, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = m.try_emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) m.erase(it);
  }
}

inline void add_scaled(TermMap& acc, const TermMap& src, const Scalar& c) {
  if (c.is_zero()) return;
  for (const auto& [e, k] : src) add_term(acc, e, k * c);
}

inline TermMap add(const TermMap& a, const TermMap& b) {
  TermMap r = a;
  for (const auto& [e, c] : b) add_term(r, e, c);
  return r;
}

inline TermMap scale(const TermMap& a, const Scalar& c) {
  TermMap r;
  add_scaled(r, a, c);
  return r;
}

inline TermMap negate(const TermMap& a) {
  TermMap r;
  for (const auto& [e, c] : a) r.emplace(e, -c);
  return r;
}

inline int max_support(const ExpVec& e) {
  for (int i = static_cast<int>(e.size()) - 1; i >= 0; --i)
    if (e[i] != 0) return i;
  return -1;
}

inline int min_support(const ExpVec& e) {
  for (int i = 0; i < static_cast<int>(e.size()); ++i)
    if (e[i] != 0) return i;
  return static_cast<int>(e.size());
}

inline int max_support(const TermMap& m) {
  int best = -1;
  for (const auto& [e, c] : m) best = std::max(best, max_support(e));
  return best;
}

inline void validate_exponents(const Ctx& ctx, const TermMap& m) {
  for (const auto& [e, c] : m)
    for (int j = 0; j < static_cast<int>(e.size()); ++j)
      if (e[j] < 0 && !ctx.inverted(j))
        throw DomainError("negative exponent on non-invertible variable " + ctx.spec->vars[j]);
}

/// tau_i^m applied to terms supported on variables < i (diagonal scaling).
inline TermMap tau_pow(const Ctx& ctx, int i, long m, const TermMap& r) {
  if (m == 0) return r;
  TermMap out;
  for (const auto& [e, c] : r) {
    if (max_support(e) >= i)
      throw DomainError("tau_" + ctx.spec->vars[i] + " applied above its domain");
    Scalar factor = ctx.spec->field->one();
    for (int j = 0; j < i; ++j)
      if (e[j] != 0) factor *= ctx.spec->lambda[i][j].pow(m * e[j]);
    add_term(out, e, c * factor);
  }
  return out;
}

TermMap mul(const Ctx& ctx, const TermMap& a, const TermMap& b);
TermMap delta_apply(const Ctx& ctx, int i, const TermMap& r);

// delta_i(x_j^e) for a single variable power.
inline TermMap delta_var_power(const Ctx& ctx, int i, int j, int e) {
  const int N = ctx.spec->size();
  const TermMap* img = ctx.spec->delta_image(i, j);
  TermMap out;
  if (img == nullptr || img->empty() || e == 0) return out;
  const Scalar& lam = ctx.spec->lambda[i][j];
  if (e > 0) {
    // delta(x^e) = sum_p tau(x)^p delta(x) x^{e-1-p}
    for (int p = 0; p < e; ++p) {
      ExpVec left(N, 0), right(N, 0);
      left[j] = p;
      right[j] = e - 1 - p;
      TermMap piece = mul(ctx, TermMap{{left, ctx.spec->field->one()}}, *img);
      piece = mul(ctx, piece, TermMap{{right, ctx.spec->field->one()}});
      add_scaled(out, piece, lam.pow(p));
    }
    return out;
  }
  // delta(x^{-1}) = -tau(x)^{-1} delta(x) x^{-1}, extended to deeper powers
  // by the product rule on x^{-1} * x^{e+1}.
  if (!ctx.inverted(j))
    throw DomainError("delta of negative power of non-invertible variable");
  ExpVec inv(N, 0);
  inv[j] = -1;
  TermMap dinv = mul(ctx, TermMap{{inv, -lam.inverse()}}, *img);
  dinv = mul(ctx, dinv, TermMap{{inv, ctx.spec->field->one()}});
  if (e == -1) return dinv;
  // delta(u v) = tau(u) delta(v) + delta(u) v with u = x^{-1}, v = x^{e+1}
  ExpVec rest(N, 0);
  rest[j] = e + 1;
  TermMap term1 = scale(delta_var_power(ctx, i, j, e + 1), lam.pow(-1));
  ExpVec shift(N, 0);
  shift[j] = -1;
  TermMap out1 = mul(ctx, TermMap{{shift, ctx.spec->field->one()}}, term1);
  TermMap out2 = mul(ctx, dinv, TermMap{{rest, ctx.spec->field->one()}});
  return add(out1, out2);
}

/// delta_i applied to an element supported on variables < i, by k-linearity
/// and the twisted product rule delta(uv) = tau(u) delta(v) + delta(u) v.
inline TermMap delta_apply(const Ctx& ctx, int i, const TermMap& r) {
  TermMap out;
  const int N = ctx.spec->size();
  for (const auto& [e, c] : r) {
    if (max_support(e) >= i)
      throw DomainError("delta_" + ctx.spec->vars[i] + " applied above its domain");
    // peel the first variable power: e = x_j^{ej} * rest
    int j = min_support(e);
    if (j == N) continue;  // delta(1) = 0
    ExpVec rest = e;
    rest[j] = 0;
    ExpVec head(N, 0);
    head[j] = e[j];
    TermMap rest_elem{{rest, ctx.spec->field->one()}};
    // tau(x_j^{ej}) delta(rest)
    if (max_support(rest) >= 0) {
      TermMap d_rest = delta_apply(ctx, i, rest_elem);
      if (!d_rest.empty()) {
        TermMap piece = mul(ctx, TermMap{{head, ctx.spec->lambda[i][j].pow(e[j])}}, d_rest);
        add_scaled(out, piece, c);
      }
    }
    // delta(x_j^{ej}) rest
    TermMap d_head = delta_var_power(ctx, i, j, e[j]);
    if (!d_head.empty()) {
      TermMap piece = mul(ctx, d_head, rest_elem);
      add_scaled(out, piece, c);
    }
  }
  return out;
}

/// x_m^a * r for r supported on variables < m, normally ordered.
/// Positive powers iterate the defining relation x r = tau(r) x + delta(r);
/// negative powers iterate x^{-1} r = sum_s (-1)^s tau^{-1}((delta tau^{-1})^s (r)) x^{-1-s}.
inline TermMap var_power_times(const Ctx& ctx, int m, int a, const TermMap& r) {
  if (r.empty()) return r;
  // working form: map exponent -> coefficient where the m-entry carries the
  // accumulated power of x_m and the rest is supported below m.
  TermMap cur = r;
  if (a >= 0) {
    for (int step = 0; step < a; ++step) {
      TermMap next;
      for (const auto& [e, c] : cur) {
        ExpVec below = e;
        int p = below[m];
        below[m] = 0;
        TermMap u{{below, c}};
        TermMap tu = tau_pow(ctx, m, 1, u);
        for (const auto& [te, tc] : tu) {
          ExpVec ne = te;
          ne[m] = p + 1;
          add_term(next, ne, tc);
        }
        TermMap du = delta_apply(ctx, m, u);
        for (const auto& [de, dc] : du) {
          ExpVec ne = de;
          ne[m] += p;
          add_term(next, ne, dc);
        }
      }
      cur = std::move(next);
    }
    return cur;
  }
  if (!ctx.inverted(m))
    throw DomainError("negative power of non-invertible variable " + ctx.spec->vars[m]);
  for (int step = 0; step < -a; ++step) {
    TermMap next;
    for (const auto& [e, c] : cur) {
      ExpVec below = e;
      int p = below[m];
      below[m] = 0;
      TermMap orbit{{below, c}};
      int s = 0;
      while (!orbit.empty()) {
        if (s > ctx.spec->max_index)
          throw NotLocallyNilpotent("inverse-variable normalization exceeded max index " +
                                    std::to_string(ctx.spec->max_index));
        TermMap shifted = tau_pow(ctx, m, -1, orbit);
        for (const auto& [se, sc] : shifted) {
          ExpVec ne = se;
          ne[m] = p - 1 - s;
          add_term(next, ne, (s % 2 == 0) ? sc : -sc);
        }
        orbit = delta_apply(ctx, m, tau_pow(ctx, m, -1, orbit));
        ++s;
      }
    }
    cur = std::move(next);
  }
  return cur;
}

// x^{ea} * x_j^k, normally ordered.
inline TermMap mono_times_var_power(const Ctx& ctx, const ExpVec& ea, int j, int k) {
  const int N = ctx.spec->size();
  if (k == 0) return TermMap{{ea, ctx.spec->field->one()}};
  int m = max_support(ea);
  if (m <= j) {
    ExpVec e = ea;
    e[j] += k;
    if (e[j] < 0 && !ctx.inverted(j))
      throw DomainError("negative exponent on non-invertible variable " + ctx.spec->vars[j]);
    return TermMap{{e, ctx.spec->field->one()}};
  }
  ExpVec head = ea;
  head[m] = 0;
  ExpVec unit(N, 0);
  unit[j] = k;
  TermMap moved = var_power_times(ctx, m, ea[m], TermMap{{unit, ctx.spec->field->one()}});
  // prepend x^{head}: head is supported below m and moved's terms live <= m,
  // so multiply recursively.
  TermMap out;
  for (const auto& [e, c] : moved) {
    // split e into the part at m (stays rightmost) and the part below m
    ExpVec lower = e;
    int pm = lower[m];
    lower[m] = 0;
    TermMap left = mul(ctx, TermMap{{head, ctx.spec->field->one()}}, TermMap{{lower, c}});
    for (const auto& [le, lc] : left) {
      ExpVec ne = le;
      ne[m] += pm;
      add_term(out, ne, lc);
    }
  }
  return out;
}

inline TermMap mul(const Ctx& ctx, const TermMap& a, const TermMap& b) {
  TermMap out;
  const int N = ctx.spec->size();
  for (const auto& [eb, cb] : b) {
    // fold the right monomial's variables, leftmost first, into each term
    TermMap partial = scale(a, cb);
    for (int j = 0; j < N; ++j) {
      if (eb[j] == 0) continue;
      TermMap next;
      for (const auto& [ea, ca] : partial) {
        TermMap piece = mono_times_var_power(ctx, ea, j, eb[j]);
        add_scaled(next, piece, ca);
      }
      partial = std::move(next);
    }
    for (const auto& [e, c] : partial) add_term(out, e, c);
  }
  return out;
}

inline TermMap unit(const Ctx& ctx) {
  return TermMap{{ExpVec(ctx.spec->size(), 0), ctx.spec->field->one()}};
}

inline TermMap var(const Ctx& ctx, int j, int e = 1) {
  ExpVec v(ctx.spec->size(), 0);
  v[j] = e;
  if (e < 0 && !ctx.inverted(j))
    throw DomainError("negative exponent on non-invertible variable");
  return TermMap{{v, ctx.spec->field->one()}};
}

inline TermMap pow(const Ctx& ctx, const TermMap& a, int e) {
  if (e < 0) throw DomainError("ore::pow: negative exponent");
  TermMap r = unit(ctx);
  for (int i = 0; i < e; ++i) r = mul(ctx, r, a);
  return r;
}

inline std::string to_string(const OreSpec& spec, const TermMap& m) {
  if (m.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = m.rbegin(); it != m.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    std::string cs = it->second.to_string();
    bool trivial_coeff = it->second.is_one();
    bool any = false;
    std::ostringstream vs;
    for (int j = 0; j < spec.size(); ++j) {
      int e = it->first[j];
      if (e == 0) continue;
      if (any) vs << "*";
      any = true;
      vs << spec.vars[j];
      if (e != 1) vs << "^" << e;
    }
    if (!any) {
      os << detail::wrap_if_sum(cs);
    } else {
      if (!trivial_coeff) os << detail::wrap_if_sum(cs) << "*";
      os << vs.str();
    }
  }
  return os.str();
}

}  // namespace ore

// ---------------------------------------------------------------------------
// Spec construction and public element operations

struct DeltaEntry {
  int var;  // the variable carrying the derivation
  int arg;  // the generator it acts on (arg < var)
  TermMap terms;
};

inline SpecPtr make_ore_spec(FieldPtr field, std::vector<std::string> vars,
                             std::vector<std::vector<Scalar>> lambda, std::vector<Scalar> qskew,
                             std::vector<DeltaEntry> deltas, std::set<int> invertible = {},
                             int max_index = 64, SpecPtr lift = nullptr) {
  auto spec = std::make_shared<OreSpec>();
  const int N = static_cast<int>(vars.size());
  spec->field = std::move(field);
  spec->vars = std::move(vars);
  spec->lambda = std::move(lambda);
  spec->qskew = std::move(qskew);
  spec->invertible = std::move(invertible);
  spec->max_index = max_index;
  spec->lift = std::move(lift);
  if (static_cast<int>(spec->lambda.size()) != N || static_cast<int>(spec->qskew.size()) != N)
    throw DomainError("make_ore_spec: dimension mismatch");
  for (int i = 0; i < N; ++i) {
    if (static_cast<int>(spec->lambda[i].size()) != N)
      throw DomainError("make_ore_spec: lambda row size mismatch");
    if (!spec->lambda[i][i].is_one())
      throw DomainError("make_ore_spec: lambda diagonal must be 1");
    for (int j = 0; j < i; ++j)
      if (!(spec->lambda[i][j] * spec->lambda[j][i]).is_one())
        throw DomainError("make_ore_spec: lambda must be multiplicatively antisymmetric");
  }
  for (auto& d : deltas) {
    if (d.arg >= d.var || d.arg < 0 || d.var >= N)
      throw DomainError("make_ore_spec: delta must act on earlier variables");
    for (const auto& [e, c] : d.terms)
      if (ore::max_support(e) >= d.var)
        throw DomainError("make_ore_spec: delta image mentions variables >= its own");
    if (spec->invertible.count(d.arg))
      throw DomainError("make_ore_spec: invertible variable cannot be differentiated");
    if (!d.terms.empty()) spec->delta[{d.var, d.arg}] = std::move(d.terms);
  }
  ore::Ctx ctx{spec.get()};
  for (const auto& [key, img] : spec->delta) ore::validate_exponents(ctx, img);
  return spec;
}

inline OreElement make_element(SpecPtr spec, TermMap terms) {
  ore::Ctx ctx{spec.get()};
  for (const auto& [e, c] : terms)
    if (static_cast<int>(e.size()) != spec->size())
      throw DomainError("make_element: exponent vector size mismatch");
  ore::validate_exponents(ctx, terms);
  TermMap clean;
  for (const auto& [e, c] : terms) ore::add_term(clean, e, c);
  return OreElement{std::move(spec), std::move(clean)};
}

inline OreElement element_var(const SpecPtr& spec, int j, int e = 1) {
  ore::Ctx ctx{spec.get()};
  return OreElement{spec, ore::var(ctx, j, e)};
}

inline OreElement element_const(const SpecPtr& spec, const Scalar& c) {
  TermMap t;
  ore::add_term(t, ExpVec(spec->size(), 0), c);
  return OreElement{spec, std::move(t)};
}

inline void check_same_spec(const OreElement& a, const OreElement& b) {
  if (a.spec.get() != b.spec.get())
    throw DomainError("operands belong to different Ore specs");
}

inline OreElement operator+(const OreElement& a, const OreElement& b) {
  check_same_spec(a, b);
  return OreElement{a.spec, ore::add(a.terms, b.terms)};
}

inline OreElement operator-(const OreElement& a, const OreElement& b) {
  check_same_spec(a, b);
  return OreElement{a.spec, ore::add(a.terms, ore::negate(b.terms))};
}

inline OreElement operator*(const OreElement& a, const OreElement& b) {
  check_same_spec(a, b);
  ore::Ctx ctx{a.spec.get()};
  return OreElement{a.spec, ore::mul(ctx, a.terms, b.terms)};
}

inline OreElement operator*(const Scalar& c, const OreElement& a) {
  return OreElement{a.spec, ore::scale(a.terms, c)};
}

inline std::string to_string(const OreElement& a) { return ore::to_string(*a.spec, a.terms); }

/// delta_i applied to an element supported on variables < i.
inline OreElement apply_delta(const SpecPtr& spec, int i, const OreElement& r) {
  if (r.spec.get() != spec.get()) throw DomainError("apply_delta: spec mismatch");
  ore::Ctx ctx{spec.get()};
  return OreElement{spec, ore::delta_apply(ctx, i, r.terms)};
}

/// tau_i^m applied to an element supported on variables < i.
inline OreElement apply_tau(const SpecPtr& spec, int i, long m, const OreElement& r) {
  if (r.spec.get() != spec.get()) throw DomainError("apply_tau: spec mismatch");
  ore::Ctx ctx{spec.get()};
  return OreElement{spec, ore::tau_pow(ctx, i, m, r.terms)};
}

/// Result of verifying delta_i tau_i = q_i tau_i delta_i on the generators.
struct QSkewCheck {
  bool ok = true;
  int failing_var = -1;
  Scalar q;
  std::string message;
};

/// Verifies the q-skew relation on every generator below i and returns the
/// declared parameter on success.
inline QSkewCheck check_qskew(const SpecPtr& spec, int i) {
  ore::Ctx ctx{spec.get()};
  QSkewCheck res;
  res.q = spec->qskew[i];
  for (int j = 0; j < i; ++j) {
    ExpVec e(spec->size(), 0);
    e[j] = 1;
    TermMap xj{{e, spec->field->one()}};
    // delta(tau(x_j)) = lambda_ij * delta(x_j)
    TermMap lhs = ore::scale(ore::delta_apply(ctx, i, xj), spec->lambda[i][j]);
    TermMap rhs = ore::scale(ore::tau_pow(ctx, i, 1, ore::delta_apply(ctx, i, xj)), spec->qskew[i]);
    if (lhs != rhs) {
      res.ok = false;
      res.failing_var = j;
      res.message = "q-skew relation fails on generator " + spec->vars[j] + " for variable " +
                    spec->vars[i];
      return res;
    }
  }
  return res;
}

}  // namespace qskew
