#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "mmc/partition.hpp"
#include "mmc/weyl.hpp"

namespace mmc {

/// Mode-0 current convention. The derivative form (k/N) d/dt_0 is the one the
/// Sugawara modes need; the alternative declares j_0 = 0 and is kept only to
/// document how the mixed bracket breaks under it.
enum class J0Convention { Derivative, Zero };

class Family;

namespace fam {

struct CurrentMode {
  int mode;
  int level = 2;
  J0Convention j0 = J0Convention::Derivative;
};
/// L_n for n >= -1: sum_{k>=1} k t_k d_{k+n} + (1/N^2) sum_{k=0}^{n} d_k d_{n-k}.
struct VirasoroConstraint {
  int mode;
};
/// L_{n;lambda}: the three-block companion of VirasoroConstraint whose action
/// factors as (prod_i d_{lambda_i}) after L_n. Indices may be 0.
struct GeneralizedConstraint {
  int mode;
  IndexMultiset lambda;
};
/// Level-2 Virasoro realization modes, both branches (n >= -1 and n <= -2).
struct HatL {
  int mode;
};
/// (1/2k) sum_m :j_m j_{n-m}: with derivative-type modes ordered right.
struct SugawaraMode {
  int mode;
  int level = 2;
  J0Convention j0 = J0Convention::Derivative;
};
struct Product {
  std::vector<Family> factors;  // applied right to left
};
struct Sum {
  std::vector<std::pair<NLaurent, Family>> terms;
};

using Node =
    std::variant<CurrentMode, VirasoroConstraint, GeneralizedConstraint, HatL, SugawaraMode,
                 Product, Sum>;

}  // namespace fam

/// Symbolic operator family with exact finite action: on any polynomial only
/// finitely many terms of the defining sums act, so no truncation parameter
/// leaks into results. `margin` widens every internal summation bound past the
/// automatically determined one; results must not depend on it.
class Family {
 public:
  Family(fam::Node node) : node_(std::make_shared<fam::Node>(std::move(node))) {}

  static Family current_mode(int n, int level = 2,
                             J0Convention j0 = J0Convention::Derivative) {
    return Family(fam::CurrentMode{n, level, j0});
  }
  static Family virasoro_constraint(int n) {
    if (n < -1) throw std::invalid_argument("virasoro_constraint: n must be >= -1");
    return Family(fam::VirasoroConstraint{n});
  }
  static Family generalized_constraint(int n, IndexMultiset lambda) {
    if (n < -1) throw std::invalid_argument("generalized_constraint: n must be >= -1");
    return Family(fam::GeneralizedConstraint{n, std::move(lambda)});
  }
  static Family generalized_constraint(int n, const Partition& lambda) {
    return generalized_constraint(n, IndexMultiset(lambda));
  }
  static Family hat_l(int n) { return Family(fam::HatL{n}); }
  static Family sugawara_mode(int n, int level = 2,
                              J0Convention j0 = J0Convention::Derivative) {
    if (level < 1) throw std::invalid_argument("sugawara_mode: level must be >= 1");
    return Family(fam::SugawaraMode{n, level, j0});
  }
  static Family product(std::vector<Family> factors) {
    return Family(fam::Product{std::move(factors)});
  }
  static Family sum(std::vector<std::pair<NLaurent, Family>> terms) {
    return Family(fam::Sum{std::move(terms)});
  }
  static Family identity() { return product({}); }

  const fam::Node& node() const { return *node_; }

  TPolynomial apply(const TPolynomial& p, int margin = 0) const;

  ordered_json to_json() const;

 private:
  std::shared_ptr<const fam::Node> node_;
};

namespace detail {

inline int action_bound(const TPolynomial& p, int margin) {
  return std::max(p.max_var(), 0) + margin;
}

/// Finite part of a CurrentMode as a Weyl operator.
inline WeylOperator current_weyl(const fam::CurrentMode& c) {
  if (c.mode < 0)
    return WeylOperator::term(NLaurent::monomial(1, -c.mode), {{-c.mode, 1}}, {});
  if (c.mode == 0 && c.j0 == J0Convention::Zero) return WeylOperator::zero();
  return WeylOperator::term(NLaurent::monomial(-1, c.level), {}, {{c.mode, 1}});
}

/// Derivative product d_{lambda_1} ... d_{lambda_l}.
inline ExpVec derivative_block(const std::vector<int>& parts) {
  ExpVec d;
  for (int v : parts) d.emplace_back(v, 1);
  return expvec_normalize(std::move(d));
}

inline WeylOperator expand_virasoro(int n, int bound) {
  WeylOperator w;
  for (int k = 1; k + n <= bound; ++k)
    if (k + n >= 0) w.add(NLaurent(k), {{k, 1}}, {{k + n, 1}});
  for (int k = 0; k <= n; ++k)
    w.add(NLaurent::monomial(-2, 1), {}, {{k, 1}, {n - k, 1}});
  return w;
}

inline WeylOperator expand_generalized(const fam::GeneralizedConstraint& g, int bound) {
  WeylOperator w;
  const int n = g.mode;
  const auto& parts = g.lambda.parts();
  const ExpVec dl = derivative_block(parts);
  for (int k = 0; k <= n; ++k) {
    ExpVec d = dl;
    d.emplace_back(k, 1);
    d.emplace_back(n - k, 1);
    w.add(NLaurent::monomial(-2, 1), {}, std::move(d));
  }
  for (int k = 1; k + n <= bound; ++k) {
    if (k + n < 0) continue;
    ExpVec d = dl;
    d.emplace_back(k + n, 1);
    w.add(NLaurent(k), {{k, 1}}, std::move(d));
  }
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] == 0) continue;  // zero coefficient
    ExpVec d;
    for (size_t j = 0; j < parts.size(); ++j)
      if (j != i) d.emplace_back(parts[j], 1);
    d.emplace_back(parts[i] + n, 1);
    w.add(NLaurent(parts[i]), {}, std::move(d));
  }
  return w;
}

inline WeylOperator expand_hat_l(int n, int bound) {
  if (n >= -1) return expand_virasoro(n, bound);
  WeylOperator w;
  for (int l = 0; l <= bound; ++l)
    w.add(NLaurent(-n + l), {{-n + l, 1}}, {{l, 1}});
  for (int l = 1; l <= -n - 1; ++l)
    w.add(NLaurent::monomial(2, Rational(l * (-n - l), 4)), {{l, 1}, {-n - l, 1}}, {});
  return w;
}

inline WeylOperator expand_sugawara(const fam::SugawaraMode& s, int bound) {
  WeylOperator w;
  const int n = s.mode;
  const Rational half_inv_level(1, 2 * s.level);
  for (int m = n - bound; m <= bound; ++m) {
    const int a = m, b = n - m;
    // normal order: creation (negative) modes left
    const int lo = std::min(a, b), hi = std::max(a, b);
    const int left = lo < 0 ? lo : hi, right = lo < 0 ? hi : lo;
    NLaurent coeff(half_inv_level);
    ExpVec t, d;
    bool zero = false;
    for (int mode : {left, right}) {
      if (mode < 0) {
        coeff *= NLaurent::monomial(1, -mode);
        t.emplace_back(-mode, 1);
      } else if (mode == 0 && s.j0 == J0Convention::Zero) {
        zero = true;
      } else {
        if (mode > bound) zero = true;  // annihilates everything in the window
        coeff *= NLaurent::monomial(-1, s.level);
        d.emplace_back(mode, 1);
      }
    }
    if (zero) continue;
    w.add(coeff, std::move(t), std::move(d));
  }
  return w;
}

}  // namespace detail

inline TPolynomial Family::apply(const TPolynomial& p, int margin) const {
  if (p.is_zero()) return {};
  const int bound = detail::action_bound(p, margin);
  return std::visit(
      [&](const auto& node) -> TPolynomial {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, fam::CurrentMode>) {
          return detail::current_weyl(node).apply(p);
        } else if constexpr (std::is_same_v<T, fam::VirasoroConstraint>) {
          return detail::expand_virasoro(node.mode, bound).apply(p);
        } else if constexpr (std::is_same_v<T, fam::GeneralizedConstraint>) {
          return detail::expand_generalized(node, bound).apply(p);
        } else if constexpr (std::is_same_v<T, fam::HatL>) {
          return detail::expand_hat_l(node.mode, bound).apply(p);
        } else if constexpr (std::is_same_v<T, fam::SugawaraMode>) {
          return detail::expand_sugawara(node, bound).apply(p);
        } else if constexpr (std::is_same_v<T, fam::Product>) {
          TPolynomial acc = p;
          for (auto it = node.factors.rbegin(); it != node.factors.rend(); ++it) {
            acc = it->apply(acc, margin);
            if (acc.is_zero()) return acc;
          }
          return acc;
        } else {
          TPolynomial acc;
          for (const auto& [c, f] : node.terms) acc += c * f.apply(p, margin);
          return acc;
        }
      },
      *node_);
}

inline ordered_json Family::to_json() const {
  return std::visit(
      [](const auto& node) -> ordered_json {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, fam::CurrentMode>) {
          return {{"family", "CurrentMode"}, {"n", node.mode}, {"level", node.level}};
        } else if constexpr (std::is_same_v<T, fam::VirasoroConstraint>) {
          return {{"family", "VirasoroConstraint"}, {"n", node.mode}};
        } else if constexpr (std::is_same_v<T, fam::GeneralizedConstraint>) {
          return {{"family", "GeneralizedConstraint"},
                  {"n", node.mode},
                  {"lambda", partition_to_json(node.lambda.parts())}};
        } else if constexpr (std::is_same_v<T, fam::HatL>) {
          return {{"family", "HatL"}, {"n", node.mode}};
        } else if constexpr (std::is_same_v<T, fam::SugawaraMode>) {
          return {{"family", "SugawaraMode"}, {"n", node.mode}, {"level", node.level}};
        } else if constexpr (std::is_same_v<T, fam::Product>) {
          ordered_json factors = ordered_json::array();
          for (const auto& f : node.factors) factors.push_back(f.to_json());
          return {{"family", "Product"}, {"factors", factors}};
        } else {
          ordered_json terms = ordered_json::array();
          for (const auto& [c, f] : node.terms)
            terms.push_back({{"coeff", c.to_json()}, {"factor", f.to_json()}});
          return {{"family", "Sum"}, {"terms", terms}};
        }
      },
      *node_);
}

/// apply(A, apply(B, p)) - apply(B, apply(A, p)).
template <typename OpA, typename OpB>
TPolynomial commutator_action(const OpA& a, const OpB& b, const TPolynomial& p) {
  return a.apply(b.apply(p)) - b.apply(a.apply(p));
}

struct WindowCheck {
  bool ok = true;
  std::optional<ExpVec> monomial;  // first failing monomial, graded order
  TPolynomial lhs, rhs;
};

/// Action equality on every monomial in t_0..t_max_var of degree <= max_deg.
template <typename OpA, typename OpB>
WindowCheck equal_on_window(const OpA& a, const OpB& b, int max_var, int max_deg) {
  WindowCheck res;
  for (const ExpVec& e : window_monomials(max_var, max_deg)) {
    const TPolynomial p = TPolynomial::monomial(e, NLaurent(1));
    TPolynomial la = a.apply(p), lb = b.apply(p);
    if (la != lb) {
      res.ok = false;
      res.monomial = e;
      res.lhs = std::move(la);
      res.rhs = std::move(lb);
      return res;
    }
  }
  return res;
}

}  // namespace mmc
