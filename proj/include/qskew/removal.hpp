#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qskew/higher_derivation.hpp"
#include "qskew/ore.hpp"

namespace qskew {

/// Element of a localization of the spec's algebra at powers of designated
/// variables: those variables admit negative exponents even when their
/// derivations are nonzero; normal ordering uses the inversion recurrence.
struct LocalizedElement {
  SpecPtr spec;
  std::set<int> inverted;  // in addition to spec->invertible
  TermMap terms;

  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const LocalizedElement& a, const LocalizedElement& b) {
    return a.terms == b.terms;
  }
  friend bool operator!=(const LocalizedElement& a, const LocalizedElement& b) { return !(a == b); }
};

inline LocalizedElement localize(const OreElement& e, std::set<int> inverted = {}) {
  return LocalizedElement{e.spec, std::move(inverted), e.terms};
}

inline std::set<int> merge_inverted(const LocalizedElement& a, const LocalizedElement& b) {
  std::set<int> s = a.inverted;
  s.insert(b.inverted.begin(), b.inverted.end());
  return s;
}

inline LocalizedElement operator+(const LocalizedElement& a, const LocalizedElement& b) {
  if (a.spec.get() != b.spec.get()) throw DomainError("localized operands from different specs");
  return LocalizedElement{a.spec, merge_inverted(a, b), ore::add(a.terms, b.terms)};
}

inline LocalizedElement operator-(const LocalizedElement& a, const LocalizedElement& b) {
  if (a.spec.get() != b.spec.get()) throw DomainError("localized operands from different specs");
  return LocalizedElement{a.spec, merge_inverted(a, b), ore::add(a.terms, ore::negate(b.terms))};
}

inline LocalizedElement operator*(const LocalizedElement& a, const LocalizedElement& b) {
  if (a.spec.get() != b.spec.get()) throw DomainError("localized operands from different specs");
  std::set<int> inv = merge_inverted(a, b);
  ore::Ctx ctx{a.spec.get(), &inv};
  TermMap prod = ore::mul(ctx, a.terms, b.terms);
  return LocalizedElement{a.spec, std::move(inv), std::move(prod)};
}

inline LocalizedElement operator*(const Scalar& c, const LocalizedElement& a) {
  return LocalizedElement{a.spec, a.inverted, ore::scale(a.terms, c)};
}

inline std::string to_string(const LocalizedElement& a) {
  return ore::to_string(*a.spec, a.terms);
}

/// Integer power of a localized element; negative exponents require a
/// single-term monomial (a unit of the localization).
inline LocalizedElement localized_pow(const LocalizedElement& a, int e) {
  LocalizedElement r{a.spec, a.inverted, ore::unit(ore::Ctx{a.spec.get()})};
  if (e >= 0) {
    for (int i = 0; i < e; ++i) r = r * a;
    return r;
  }
  if (a.terms.size() != 1)
    throw DomainError("localized_pow: negative power of a non-monomial element");
  const auto& [exp, coeff] = *a.terms.begin();
  std::set<int> inv = a.inverted;
  // invert the monomial one variable at a time, rightmost first
  LocalizedElement acc{a.spec, inv, ore::unit(ore::Ctx{a.spec.get()})};
  for (int rep = 0; rep < -e; ++rep) {
    LocalizedElement inv_elem{a.spec, inv, TermMap{}};
    TermMap cur{{ExpVec(a.spec->size(), 0), coeff.inverse()}};
    for (int j = 0; j < a.spec->size(); ++j) {
      if (exp[j] == 0) continue;
      ore::Ctx ctx{a.spec.get(), &inv};
      cur = ore::mul(ctx, ore::var(ctx, j, -exp[j]), cur);
    }
    inv_elem.terms = std::move(cur);
    acc = acc * inv_elem;
  }
  return acc;
}

/// The derivation-removing series for the last variable x:
///   f(r) = sum_n q^{n(n+1)/2} (q-1)^{-n} d_n tau^{-n}(r) x^{-n},
/// truncated at the first run of max_check consecutive vanishing terms.
inline LocalizedElement f_image(const SpecPtr& spec, const OreElement& r,
                                const HigherDerivation* hd_shared, int max_check = 4) {
  if (r.spec.get() != spec.get()) throw DomainError("f_image: spec mismatch");
  const int L = spec->size() - 1;
  for (const auto& [e, c] : r.terms)
    if (ore::max_support(e) >= L)
      throw DomainError("f_image: element must be supported below the last variable");
  if (!spec->has_delta(L)) return localize(r, {L});
  const Scalar q = spec->qskew[L];
  if (q.is_one())
    throw NotRemovable("f_image: the last variable's skew parameter is 1, (q-1) not invertible");
  const Scalar qm1_inv = (q - spec->field->one()).inverse();
  std::unique_ptr<HigherDerivation> own;
  if (hd_shared == nullptr) {
    own = std::make_unique<HigherDerivation>(spec, L);
    hd_shared = own.get();
  }
  TermMap out;
  int zero_run = 0;
  for (int n = 0;; ++n) {
    if (n > spec->max_index)
      throw NotLocallyNilpotent("f_image: series did not terminate within max index");
    OreElement term = hd_shared->apply(n, apply_tau(spec, L, -n, r));
    if (term.is_zero()) {
      if (++zero_run > max_check) break;
      continue;
    }
    zero_run = 0;
    Scalar coef = q.pow(static_cast<long>(n) * (n + 1) / 2) * qm1_inv.pow(n);
    for (const auto& [e, c] : term.terms) {
      ExpVec ne = e;
      ne[L] -= n;
      ore::add_term(out, ne, c * coef);
    }
  }
  return LocalizedElement{spec, {L}, std::move(out)};
}

inline LocalizedElement f_image(const SpecPtr& spec, const OreElement& r, int max_check = 4) {
  return f_image(spec, r, nullptr, max_check);
}

/// One removal step: per-generator images of the derivation-removing
/// homomorphism and the cleared-denominator Ore generator.
struct RemovalStep {
  int removed_var = -1;
  std::map<int, LocalizedElement> images;
  OreElement ore_generator;
};

struct RemovalResult {
  std::vector<std::vector<Scalar>> lambda_final;
  std::vector<RemovalStep> steps;
  std::vector<OreElement> ore_generators;  // one per original variable
};

/// Clears every negative exponent by right-multiplying with variable powers,
/// then rescales so the lex-largest monomial has coefficient 1.
inline OreElement clear_denominators(const LocalizedElement& le) {
  LocalizedElement cur = le;
  for (int round = 0; round < 32; ++round) {
    ExpVec deficit(cur.spec->size(), 0);
    bool any = false;
    for (const auto& [e, c] : cur.terms)
      for (int j = 0; j < cur.spec->size(); ++j)
        if (e[j] < 0 && !cur.spec->invertible.count(j)) {
          deficit[j] = std::max(deficit[j], -e[j]);
          any = true;
        }
    if (!any) {
      TermMap terms = cur.terms;
      if (terms.empty()) return OreElement{cur.spec, {}};
      Scalar lead = terms.rbegin()->second;
      OreElement out{cur.spec, ore::scale(terms, lead.inverse())};
      return out;
    }
    LocalizedElement mono{cur.spec, cur.inverted,
                          TermMap{{deficit, cur.spec->field->one()}}};
    cur = cur * mono;
  }
  throw NotLocallyNilpotent("clear_denominators: did not stabilize");
}

namespace detail {

// Zeroes the last variable's derivation and marks it invertible, without
// computing any images.
inline SpecPtr strip_last_delta(const SpecPtr& spec) {
  const int L = spec->size() - 1;
  auto ns = std::make_shared<OreSpec>();
  ns->field = spec->field;
  ns->vars = spec->vars;
  ns->lambda = spec->lambda;
  ns->qskew = spec->qskew;
  ns->qskew[L] = spec->field->one();
  for (const auto& [key, img] : spec->delta)
    if (key.first != L) ns->delta.emplace(key, img);
  ns->invertible = spec->invertible;
  ns->invertible.insert(L);
  ns->max_index = spec->max_index;
  if (spec->lift) ns->lift = strip_last_delta(spec->lift);
  return ns;
}

}  // namespace detail

/// Removes the last variable's derivation: the returned spec presents
/// R[y^{+-1}; tau] with y in the removed slot, and the step records f on every
/// generator of the input spec.
inline std::pair<SpecPtr, RemovalStep> remove_last_derivation(const SpecPtr& spec) {
  const int L = spec->size() - 1;
  RemovalStep step;
  step.removed_var = L;
  if (!spec->has_delta(L)) {
    for (int j = 0; j < spec->size(); ++j)
      step.images.emplace(j, localize(element_var(spec, j)));
    step.ore_generator = element_var(spec, L);
    return {spec, step};
  }
  HigherDerivation hd(spec, L);
  for (int j = 0; j < L; ++j) step.images.emplace(j, f_image(spec, element_var(spec, j), &hd));
  step.images.emplace(L, localize(element_var(spec, L), {L}));

  int partner = -1;
  for (const auto& [key, img] : spec->delta)
    if (key.first == L && !img.empty()) partner = std::max(partner, key.second);
  step.ore_generator = clear_denominators(step.images.at(partner));

  return {detail::strip_last_delta(spec), step};
}

/// Rewrites terms from one variable order to another; every flipped pair must
/// commute by a scalar, contributed as lambda^{e_u e_v}.
inline TermMap transport_terms(const OreSpec& from, const std::vector<int>& to_index_of_from_pos,
                               int to_size, const TermMap& terms) {
  TermMap out;
  const int N = from.size();
  for (const auto& [e, c] : terms) {
    Scalar factor = from.field->one();
    for (int u = 0; u < N; ++u) {
      if (e[u] == 0) continue;
      for (int v = u + 1; v < N; ++v) {
        if (e[v] == 0) continue;
        if (to_index_of_from_pos[u] > to_index_of_from_pos[v])
          factor *= from.lambda[u][v].pow(static_cast<long>(e[u]) * e[v]);
      }
    }
    ExpVec ne(to_size, 0);
    for (int u = 0; u < N; ++u) ne[to_index_of_from_pos[u]] = e[u];
    ore::add_term(out, ne, c * factor);
  }
  return out;
}

/// Re-presents the spec over a new variable order; perm[new] = old.
inline SpecPtr reorder_variables(const SpecPtr& spec, const std::vector<int>& perm) {
  const int N = spec->size();
  if (static_cast<int>(perm.size()) != N) throw DomainError("reorder_variables: bad permutation");
  std::vector<int> to_index(N, -1);
  for (int a = 0; a < N; ++a) {
    if (perm[a] < 0 || perm[a] >= N || to_index[perm[a]] != -1)
      throw DomainError("reorder_variables: not a permutation");
    to_index[perm[a]] = a;
  }
  for (const auto& [key, img] : spec->delta) {
    auto [i, j] = key;
    if (img.empty()) continue;
    if (to_index[i] < to_index[j])
      throw NotReorderable("cannot move " + spec->vars[j] + " past " + spec->vars[i] +
                           ", whose derivation involves it");
    for (const auto& [e, c] : img)
      for (int u = 0; u < N; ++u)
        if (e[u] != 0 && to_index[u] > to_index[i])
          throw NotReorderable("derivation image of " + spec->vars[i] +
                               " would mention a later variable after reordering");
  }
  auto ns = std::make_shared<OreSpec>();
  ns->field = spec->field;
  ns->max_index = spec->max_index;
  ns->vars.resize(N);
  ns->qskew.resize(N);
  ns->lambda.assign(N, std::vector<Scalar>(N, spec->field->one()));
  for (int a = 0; a < N; ++a) {
    ns->vars[a] = spec->vars[perm[a]];
    ns->qskew[a] = spec->qskew[perm[a]];
    for (int b = 0; b < N; ++b) ns->lambda[a][b] = spec->lambda[perm[a]][perm[b]];
  }
  for (int j : spec->invertible) ns->invertible.insert(to_index[j]);
  for (const auto& [key, img] : spec->delta) {
    auto [i, j] = key;
    ns->delta.emplace(std::make_pair(to_index[i], to_index[j]),
                      transport_terms(*spec, to_index, N, img));
  }
  if (spec->lift) ns->lift = reorder_variables(spec->lift, perm);
  return ns;
}

/// Transports an element between two presentations of the same algebra that
/// differ by a variable permutation.
inline OreElement transport_element(const SpecPtr& from, const SpecPtr& to,
                                    const std::vector<int>& perm, const OreElement& e) {
  const int N = from->size();
  std::vector<int> to_index(N);
  for (int a = 0; a < N; ++a) to_index[perm[a]] = a;
  return OreElement{to, transport_terms(*from, to_index, N, e.terms)};
}

namespace detail {

// Evaluates a work-spec element under the per-variable images, multiplying
// left to right in the work order.
inline LocalizedElement theta_eval(const std::vector<LocalizedElement>& images,
                                   const OreSpec& work, const TermMap& terms,
                                   const SpecPtr& base_spec, const std::set<int>& base_inverted) {
  LocalizedElement acc{base_spec, base_inverted, TermMap{}};
  for (const auto& [e, c] : terms) {
    LocalizedElement prod{base_spec, base_inverted,
                          TermMap{{ExpVec(base_spec->size(), 0), c}}};
    for (int p = 0; p < work.size(); ++p)
      if (e[p] != 0) prod = prod * localized_pow(images[p], e[p]);
    acc = acc + prod;
  }
  return acc;
}

}  // namespace detail

/// The iterated driver: removes derivations right to left, reordering
/// derivation-free variables out of the way, and tracks the pullbacks of the
/// final torus variables into the original algebra.
inline RemovalResult iterate_removal(const SpecPtr& spec0) {
  const int N = spec0->size();
  for (int i = 0; i < N; ++i)
    if (spec0->has_delta(i) && spec0->qskew[i].is_one())
      throw NotRemovable("variable " + spec0->vars[i] +
                         " carries a derivation with skew parameter 1");

  RemovalResult result;
  SpecPtr work = spec0;
  std::vector<int> cur_to_orig(N);
  for (int i = 0; i < N; ++i) cur_to_orig[i] = i;
  std::set<int> inverted_orig;
  std::vector<LocalizedElement> theta;
  theta.reserve(N);
  for (int i = 0; i < N; ++i) theta.push_back(localize(element_var(spec0, i)));

  while (true) {
    int p = work->last_delta_var();
    if (p < 0) break;
    if (p != N - 1) {
      std::vector<int> perm;
      for (int a = 0; a < N; ++a)
        if (a != p) perm.push_back(a);
      perm.push_back(p);
      work = reorder_variables(work, perm);
      std::vector<int> new_cto(N);
      std::vector<LocalizedElement> new_theta;
      new_theta.reserve(N);
      for (int a = 0; a < N; ++a) {
        new_cto[a] = cur_to_orig[perm[a]];
        new_theta.push_back(theta[perm[a]]);
      }
      cur_to_orig = std::move(new_cto);
      theta = std::move(new_theta);
    }
    auto [new_work, local_step] = remove_last_derivation(work);
    const int orig_removed = cur_to_orig[N - 1];
    inverted_orig.insert(orig_removed);
    for (auto& le : theta) le.inverted = inverted_orig;

    RemovalStep step;
    step.removed_var = orig_removed;
    std::vector<LocalizedElement> new_theta;
    new_theta.reserve(N);
    for (int pvar = 0; pvar < N; ++pvar) {
      const LocalizedElement& img = local_step.images.at(pvar);
      LocalizedElement composed =
          detail::theta_eval(theta, *work, img.terms, spec0, inverted_orig);
      new_theta.push_back(composed);
      // report the local image in original labels
      TermMap relabeled = transport_terms(*work, cur_to_orig, N, img.terms);
      step.images.emplace(cur_to_orig[pvar],
                          LocalizedElement{spec0, inverted_orig, std::move(relabeled)});
    }
    int partner_work = -1;
    for (const auto& [key, img] : work->delta)
      if (key.first == N - 1 && !img.empty()) partner_work = std::max(partner_work, key.second);
    step.ore_generator = clear_denominators(step.images.at(cur_to_orig[partner_work]));
    theta = std::move(new_theta);
    work = new_work;
    result.steps.push_back(std::move(step));
  }

  // restore the original variable order
  std::vector<int> perm_back(N);
  for (int a = 0; a < N; ++a) perm_back[cur_to_orig[a]] = a;  // position of orig var a in work
  {
    std::vector<int> perm(N);
    for (int orig = 0; orig < N; ++orig) perm[orig] = perm_back[orig];
    work = reorder_variables(work, perm);
  }
  result.lambda_final = work->lambda;

  result.ore_generators.reserve(N);
  std::vector<LocalizedElement> theta_orig(N, LocalizedElement{spec0, {}, {}});
  for (int p = 0; p < N; ++p) theta_orig[cur_to_orig[p]] = theta[p];
  for (int v = 0; v < N; ++v) result.ore_generators.push_back(clear_denominators(theta_orig[v]));
  return result;
}

}  // namespace qskew
