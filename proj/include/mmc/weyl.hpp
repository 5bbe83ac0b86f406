#pragma once

#include <map>
#include <sstream>
#include <vector>

#include "mmc/tpolynomial.hpp"

namespace mmc {

/// One normal-ordered term coeff * t^{t_exp} * d^{d_exp}: every multiplication
/// stands left of every derivative.
struct WeylMonomial {
  NLaurent coeff;
  ExpVec t_exp;
  ExpVec d_exp;
};

/// Finite normal-ordered differential operator on the coupling ring.
class WeylOperator {
 public:
  WeylOperator() = default;

  static WeylOperator zero() { return {}; }
  static WeylOperator identity() { return term(NLaurent(1), {}, {}); }
  static WeylOperator term(const NLaurent& coeff, ExpVec t_exp, ExpVec d_exp) {
    WeylOperator w;
    w.add(coeff, std::move(t_exp), std::move(d_exp));
    return w;
  }
  /// Multiplication by t_v.
  static WeylOperator t_var(int v) { return term(NLaurent(1), {{v, 1}}, {}); }
  /// d/dt_v.
  static WeylOperator d_var(int v) { return term(NLaurent(1), {}, {{v, 1}}); }

  void add(const NLaurent& coeff, ExpVec t_exp, ExpVec d_exp) {
    if (coeff.is_zero()) return;
    auto key = std::make_pair(expvec_normalize(std::move(t_exp)),
                              expvec_normalize(std::move(d_exp)));
    NLaurent& slot = terms_[key];
    slot += coeff;
    if (slot.is_zero()) terms_.erase(key);
  }

  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  std::vector<WeylMonomial> monomials() const {
    std::vector<WeylMonomial> out;
    out.reserve(terms_.size());
    for (const auto& [key, c] : terms_) out.push_back({c, key.first, key.second});
    return out;
  }

  WeylOperator& operator+=(const WeylOperator& o) {
    for (const auto& [key, c] : o.terms_) add(c, key.first, key.second);
    return *this;
  }
  WeylOperator& operator-=(const WeylOperator& o) {
    for (const auto& [key, c] : o.terms_) add(-c, key.first, key.second);
    return *this;
  }
  friend WeylOperator operator+(WeylOperator a, const WeylOperator& b) { return a += b; }
  friend WeylOperator operator-(WeylOperator a, const WeylOperator& b) { return a -= b; }
  friend WeylOperator operator*(const NLaurent& c, const WeylOperator& w) {
    WeylOperator r;
    for (const auto& [key, wc] : w.terms_) r.add(c * wc, key.first, key.second);
    return r;
  }
  friend bool operator==(const WeylOperator& a, const WeylOperator& b) {
    return a.terms_ == b.terms_;
  }

  TPolynomial apply(const TPolynomial& p) const {
    TPolynomial out;
    for (const auto& [key, coeff] : terms_)
      for (const auto& [pe, pc] : p.terms()) {
        Rational factor;
        ExpVec reduced;
        if (!differentiate(pe, key.second, reduced, factor)) continue;
        ExpVec e = reduced;
        e.insert(e.end(), key.first.begin(), key.first.end());
        out.add_term(expvec_normalize(std::move(e)), coeff * NLaurent(factor) * pc);
      }
    return out;
  }

  /// Normal-ordered product: apply(compose(A,B), p) == apply(A, apply(B, p)).
  /// Built from the per-variable rewrite
  ///   d^q t^r = sum_j C(q,j) C(r,j) j! t^{r-j} d^{q-j}.
  WeylOperator compose(const WeylOperator& rhs) const {
    WeylOperator out;
    for (const auto& [ka, ca] : terms_)
      for (const auto& [kb, cb] : rhs.terms_) {
        // Rewrite ka.d past kb.t, one variable at a time.
        // (t part of B, d part of A, factor)
        std::vector<std::tuple<ExpVec, ExpVec, Rational>> partial = {
            {kb.first, ka.second, Rational(1)}};
        std::vector<std::tuple<ExpVec, ExpVec, Rational>> next;
        for (const auto& [v, q] : ka.second) {
          next.clear();
          for (const auto& [tB, dA, f] : partial) {
            int r = 0;
            for (const auto& [tv, tk] : tB)
              if (tv == v) r = tk;
            for (int j = 0; j <= std::min(q, r); ++j) {
              Rational c = f * Rational(binomial(q, j) * binomial(r, j) * factorial(j));
              ExpVec t2, d2;
              for (const auto& [tv, tk] : tB) {
                if (tv == v) {
                  if (tk - j > 0) t2.emplace_back(tv, tk - j);
                } else {
                  t2.emplace_back(tv, tk);
                }
              }
              for (const auto& [dv, dk] : dA) {
                if (dv == v) {
                  if (dk - j > 0) d2.emplace_back(dv, dk - j);
                } else {
                  d2.emplace_back(dv, dk);
                }
              }
              next.emplace_back(std::move(t2), std::move(d2), std::move(c));
            }
          }
          partial = next;
        }
        for (const auto& [tB, dA, f] : partial) {
          ExpVec t_all = ka.first;
          t_all.insert(t_all.end(), tB.begin(), tB.end());
          ExpVec d_all = dA;
          d_all.insert(d_all.end(), kb.second.begin(), kb.second.end());
          out.add(ca * cb * NLaurent(f), std::move(t_all), std::move(d_all));
        }
      }
    return out;
  }

  ordered_json to_json() const {
    ordered_json arr = ordered_json::array();
    for (const auto& [key, c] : terms_)
      arr.push_back(ordered_json{{"coeff", c.to_json()},
                                 {"t", expvec_to_json(key.first)},
                                 {"d", expvec_to_json(key.second)}});
    return arr;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c.str() << ")";
      for (const auto& [v, k] : key.first) {
        os << "*t" << v;
        if (k != 1) os << "^" << k;
      }
      for (const auto& [v, k] : key.second) {
        os << "*d" << v;
        if (k != 1) os << "^" << k;
      }
    }
    return os.str();
  }

 private:
  // d^{d_exp} applied to the monomial pe: falling-factorial coefficient and
  // the reduced exponent vector; false when a derivative kills the term.
  static bool differentiate(const ExpVec& pe, const ExpVec& d_exp, ExpVec& reduced,
                            Rational& factor) {
    factor = 1;
    reduced = pe;
    for (const auto& [v, k] : d_exp) {
      int found = -1;
      for (size_t i = 0; i < reduced.size(); ++i)
        if (reduced[i].first == v) {
          found = static_cast<int>(i);
          break;
        }
      if (found < 0) return false;
      int e = reduced[static_cast<size_t>(found)].second;
      if (e < k) return false;
      for (int i = 0; i < k; ++i) factor *= (e - i);
      if (e - k > 0)
        reduced[static_cast<size_t>(found)].second = e - k;
      else
        reduced.erase(reduced.begin() + found);
    }
    return true;
  }

  std::map<std::pair<ExpVec, ExpVec>, NLaurent> terms_;
};

inline WeylOperator weyl_commutator(const WeylOperator& a, const WeylOperator& b) {
  return a.compose(b) - b.compose(a);
}

}  // namespace mmc
