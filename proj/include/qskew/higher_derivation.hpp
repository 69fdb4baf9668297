#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qskew/ore.hpp"

namespace qskew {

namespace detail {

/// Maps a generic-field element into a target field by name-matched
/// parameter substitution.
inline TermMap specialize_terms(const TermMap& terms, const FieldPtr& target) {
  TermMap out;
  for (const auto& [e, c] : terms) ore::add_term(out, e, specialize_scalar(c, target));
  return out;
}

}  // namespace detail

/// The higher q-skew tau-derivation {d_n} attached to variable i, with
/// d_1 = delta_i. Over a generic-parameter field, d_n = delta^n / (n)!_q with
/// the division certified exact in the Laurent ring of the parameters; over a
/// cyclotomic field the images are computed on the generic lift and then
/// specialized, which is the only sound route at a root of unity.
class HigherDerivation {
 public:
  HigherDerivation(SpecPtr spec, int var) : spec_(std::move(spec)), var_(var) {
    if (var_ < 0 || var_ >= spec_->size()) throw DomainError("higher_derivation: bad variable");
    if (spec_->field->is_cyclotomic()) {
      if (!spec_->lift)
        throw DomainError(
            "higher_derivation: cyclotomic spec has no generic lift; construct the spec as a "
            "specialization");
      lift_ = std::make_unique<HigherDerivation>(spec_->lift, var_);
    }
  }

  int target_var() const { return var_; }
  const SpecPtr& spec() const { return spec_; }

  /// d_n(x_j) for j < target.
  OreElement image(int n, int j) const {
    std::lock_guard<std::mutex> lock(mu_);
    return OreElement{spec_, image_terms(n, j)};
  }

  /// d_n applied to an element supported on variables < target.
  OreElement apply(int n, const OreElement& r) const {
    if (r.spec.get() != spec_.get()) throw DomainError("higher_derivation: spec mismatch");
    std::lock_guard<std::mutex> lock(mu_);
    TermMap out;
    for (const auto& [e, c] : r.terms) {
      if (ore::max_support(e) >= var_)
        throw DomainError("higher_derivation: element not below target variable");
      ore::add_scaled(out, mono_apply(n, e), c);
    }
    return OreElement{spec_, std::move(out)};
  }

  /// Smallest n with d_i(r) = 0 for all i >= n, certified by max_check
  /// consecutive vanishing images.
  int nilpotence_index(const OreElement& r, int max_check = 4) const {
    if (r.is_zero()) return 0;
    int zero_run = 0;
    for (int n = 0; n <= spec_->max_index + max_check; ++n) {
      if (apply(n, r).is_zero()) {
        if (++zero_run > max_check) return n - max_check;
      } else {
        zero_run = 0;
      }
    }
    throw NotLocallyNilpotent("no nilpotence index up to max index " +
                              std::to_string(spec_->max_index));
  }

 private:
  // All private helpers assume the caller holds mu_.
  const TermMap& delta_pow_on_var(int n, int j) const {
    auto& column = delta_pows_[j];
    if (column.empty()) {
      ore::Ctx ctx{spec_.get()};
      column.push_back(ore::var(ctx, j, 1));
    }
    ore::Ctx ctx{spec_.get()};
    while (static_cast<int>(column.size()) <= n)
      column.push_back(ore::delta_apply(ctx, var_, column.back()));
    return column[n];
  }

  TermMap image_terms(int n, int j) const {
    if (j >= var_) throw DomainError("higher_derivation: image requested at or above target");
    if (n == 0) {
      ore::Ctx ctx{spec_.get()};
      return ore::var(ctx, j, 1);
    }
    auto key = std::make_pair(n, j);
    auto it = images_.find(key);
    if (it != images_.end()) return it->second;
    TermMap result;
    if (lift_) {
      std::lock_guard<std::mutex> lock(lift_->mu_);
      result = detail::specialize_terms(lift_->image_terms(n, j), spec_->field);
    } else {
      const TermMap& dn = delta_pow_on_var(n, j);
      Scalar fact = evaluate_laurent(t_factorial(n), spec_->qskew[var_]);
      if (fact.is_zero())
        throw NotExtendable("(n)!_q vanishes: construct the derivation on a generic lift");
      Scalar inv = fact.inverse();
      for (const auto& [e, c] : dn) {
        Scalar scaled = c * inv;
        if (!divides_in_laurent(c, scaled))
          throw NotExtendable("delta^" + std::to_string(n) + "(" + spec_->vars[j] +
                              ") is not divisible by (" + std::to_string(n) + ")!_t");
        ore::add_term(result, e, scaled);
      }
    }
    return images_.emplace(key, std::move(result)).first->second;
  }

  // Certifies that dividing kept the coefficient inside the Laurent ring of
  // the parameters: the reduced denominator stays a monomial (or is unchanged
  // for presentations that already carried polynomial denominators).
  static bool divides_in_laurent(const Scalar& before, const Scalar& after) {
    if (!after.field()->is_generic()) return true;
    if (after.denominator().is_monomial()) return true;
    return after.denominator() == before.denominator();
  }

  TermMap mono_apply(int n, const ExpVec& e) const {
    ore::Ctx ctx{spec_.get()};
    if (n == 0) return TermMap{{e, spec_->field->one()}};
    int j = ore::min_support(e);
    if (j == spec_->size()) return {};  // d_n(1) = 0 for n >= 1
    auto key = std::make_pair(n, e);
    auto it = mono_cache_.find(key);
    if (it != mono_cache_.end()) return it->second;

    TermMap out;
    if (e[j] < 0) {
      // Negative powers occur only on variables all of whose d-images vanish,
      // whence d_n(x_j^e * rest) = tau^n(x_j^e) * d_n(rest).
      for (int m = 1; m <= n; ++m)
        if (!image_terms(m, j).empty())
          throw DomainError("higher_derivation: negative power of a differentiated variable");
      ExpVec rest = e;
      rest[j] = 0;
      TermMap d_rest = mono_apply(n, rest);
      if (!d_rest.empty()) {
        ExpVec head(spec_->size(), 0);
        head[j] = e[j];
        TermMap scaled{{head, spec_->lambda[var_][j].pow(static_cast<long>(n) * e[j])}};
        out = ore::mul(ctx, scaled, d_rest);
      }
    } else {
      // d_n(x_j * v) = sum_i tau^{n-i}(d_i(x_j)) d_{n-i}(v)
      ExpVec rest = e;
      rest[j] -= 1;
      for (int i = 0; i <= n; ++i) {
        TermMap di = (i == 0) ? ore::var(ctx, j, 1) : image_terms(i, j);
        if (di.empty()) continue;
        TermMap rest_part = mono_apply(n - i, rest);
        if (rest_part.empty()) continue;
        TermMap left = ore::tau_pow(ctx, var_, n - i, di);
        ore::add_scaled(out, ore::mul(ctx, left, rest_part), spec_->field->one());
      }
    }
    return mono_cache_.emplace(key, std::move(out)).first->second;
  }

  SpecPtr spec_;
  int var_;
  std::unique_ptr<HigherDerivation> lift_;
  mutable std::mutex mu_;
  mutable std::map<int, std::vector<TermMap>> delta_pows_;        // j -> [delta^n(x_j)]
  mutable std::map<std::pair<int, int>, TermMap> images_;         // (n, j) -> d_n(x_j)
  mutable std::map<std::pair<int, ExpVec>, TermMap> mono_cache_;  // (n, e) -> d_n(x^e)
};

using HDPtr = std::shared_ptr<HigherDerivation>;

inline HDPtr higher_derivation(const SpecPtr& spec, int var) {
  return std::make_shared<HigherDerivation>(spec, var);
}

/// Property report for a higher derivation checked on sample elements.
struct HDReport {
  bool passed = true;
  std::vector<std::string> failures;
  std::vector<int> nilpotence_indices;  // one per sample

  void fail(const std::string& what) {
    passed = false;
    failures.push_back(what);
  }
  std::string to_string() const {
    std::ostringstream os;
    os << (passed ? "ok" : "FAILED");
    for (const auto& f : failures) os << "\n  counterexample: " << f;
    return os.str();
  }
};

/// Verifies d_0 = id, the twisted product rule, the q-skew relations,
/// iterativity, and local nilpotence on the given samples.
inline HDReport check_hd_properties(const HigherDerivation& hd,
                                    const std::vector<OreElement>& samples, int max_n = 6) {
  HDReport rep;
  const SpecPtr& spec = hd.spec();
  const Scalar q = spec->qskew[hd.target_var()];
  for (const auto& r : samples) {
    if (hd.apply(0, r) != r) rep.fail("d_0 != id on " + to_string(r));
    // q-skew: d_i tau = q^i tau d_i
    for (int i = 1; i <= max_n; ++i) {
      OreElement lhs = hd.apply(i, apply_tau(spec, hd.target_var(), 1, r));
      OreElement rhs = q.pow(i) * apply_tau(spec, hd.target_var(), 1, hd.apply(i, r));
      if (lhs != rhs) {
        rep.fail("d_" + std::to_string(i) + " tau != q^i tau d_" + std::to_string(i) + " on " +
                 to_string(r));
        break;
      }
    }
    // iterativity: d_i d_j = binom(i+j, j)_q d_{i+j}
    for (int i = 1; i <= max_n / 2; ++i) {
      for (int j = i; i + j <= max_n; ++j) {
        OreElement lhs = hd.apply(i, hd.apply(j, r));
        OreElement rhs = evaluate_laurent(t_binomial(i + j, j), q) * hd.apply(i + j, r);
        if (lhs != rhs) {
          rep.fail("iterativity fails at (i,j)=(" + std::to_string(i) + "," + std::to_string(j) +
                   ") on " + to_string(r));
          break;
        }
      }
    }
    try {
      rep.nilpotence_indices.push_back(hd.nilpotence_index(r));
    } catch (const NotLocallyNilpotent&) {
      rep.fail("no nilpotence index for " + to_string(r));
      rep.nilpotence_indices.push_back(-1);
    }
  }
  // product rule on all ordered pairs
  for (const auto& r : samples) {
    for (const auto& s : samples) {
      OreElement prod = r * s;
      for (int n = 0; n <= max_n; ++n) {
        OreElement lhs = hd.apply(n, prod);
        OreElement rhs = element_const(spec, spec->field->zero());
        for (int i = 0; i <= n; ++i) {
          OreElement left = apply_tau(spec, hd.target_var(), n - i, hd.apply(i, r));
          rhs = rhs + left * hd.apply(n - i, s);
        }
        if (lhs != rhs) {
          rep.fail("product rule fails at n=" + std::to_string(n) + " on (" + to_string(r) + ", " +
                   to_string(s) + ")");
          break;
        }
      }
    }
  }
  return rep;
}

}  // namespace qskew
