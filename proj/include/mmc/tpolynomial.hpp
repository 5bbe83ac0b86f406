#pragma once

#include <map>
#include <sstream>
#include <vector>

#include "mmc/nlaurent.hpp"

namespace mmc {

/// Sparse exponent vector, sorted by variable index, exponents > 0.
using ExpVec = std::vector<std::pair<int, int>>;

inline ExpVec expvec_normalize(ExpVec e) {
  std::sort(e.begin(), e.end());
  ExpVec out;
  for (const auto& [v, k] : e) {
    if (v < 0) throw std::invalid_argument("variable index must be >= 0");
    if (k == 0) continue;
    if (!out.empty() && out.back().first == v)
      out.back().second += k;
    else
      out.emplace_back(v, k);
  }
  for (auto& [v, k] : out)
    if (k < 0) throw std::invalid_argument("negative exponent");
  return out;
}

inline int expvec_degree(const ExpVec& e) {
  int d = 0;
  for (const auto& [v, k] : e) d += k;
  return d;
}

/// Sum of variable-index * exponent; the grading the constraint operators shift.
inline int expvec_index_weight(const ExpVec& e) {
  int w = 0;
  for (const auto& [v, k] : e) w += v * k;
  return w;
}

inline std::string expvec_str(const ExpVec& e) {
  if (e.empty()) return "1";
  std::ostringstream os;
  for (const auto& [v, k] : e) {
    os << "t" << v;
    if (k != 1) os << "^" << k;
  }
  return os.str();
}

inline ordered_json expvec_to_json(const ExpVec& e) {
  ordered_json a = ordered_json::array();
  for (const auto& [v, k] : e) a.push_back(ordered_json::array({v, k}));
  return a;
}

/// Polynomial in the couplings t_0, t_1, t_2, ... over NLaurent.
class TPolynomial {
 public:
  TPolynomial() = default;
  TPolynomial(const NLaurent& c) {
    if (!c.is_zero()) terms_[{}] = c;
  }
  TPolynomial(int c) : TPolynomial(NLaurent(c)) {}

  static TPolynomial monomial(ExpVec e, const NLaurent& coeff) {
    TPolynomial p;
    if (!coeff.is_zero()) p.terms_[expvec_normalize(std::move(e))] = coeff;
    return p;
  }
  static TPolynomial variable(int v) { return monomial({{v, 1}}, NLaurent(1)); }

  const std::map<ExpVec, NLaurent>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int max_var() const {
    int m = -1;
    for (const auto& [e, c] : terms_)
      for (const auto& [v, k] : e) m = std::max(m, v);
    return m;
  }

  void add_term(const ExpVec& e, const NLaurent& c) {
    if (c.is_zero()) return;
    NLaurent& slot = terms_[e];
    slot += c;
    if (slot.is_zero()) terms_.erase(e);
  }

  TPolynomial& operator+=(const TPolynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  TPolynomial& operator-=(const TPolynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend TPolynomial operator+(TPolynomial a, const TPolynomial& b) { return a += b; }
  friend TPolynomial operator-(TPolynomial a, const TPolynomial& b) { return a -= b; }
  friend TPolynomial operator*(const TPolynomial& a, const TPolynomial& b) {
    TPolynomial r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        ExpVec e = ea;
        e.insert(e.end(), eb.begin(), eb.end());
        r.add_term(expvec_normalize(std::move(e)), ca * cb);
      }
    return r;
  }
  TPolynomial& operator*=(const TPolynomial& o) { return *this = *this * o; }
  friend TPolynomial operator*(const NLaurent& c, const TPolynomial& p) {
    TPolynomial r;
    for (const auto& [e, pc] : p.terms_) r.add_term(e, c * pc);
    return r;
  }

  friend bool operator==(const TPolynomial& a, const TPolynomial& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const TPolynomial& a, const TPolynomial& b) { return !(a == b); }

  ordered_json to_json() const {
    ordered_json arr = ordered_json::array();
    for (const auto& [e, c] : terms_)
      arr.push_back(ordered_json{{"t", expvec_to_json(e)}, {"coeff", c.to_json()}});
    return arr;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c.str() << ")";
      if (!e.empty()) os << "*" << expvec_str(e);
    }
    return os.str();
  }

 private:
  std::map<ExpVec, NLaurent> terms_;
};

/// All monomials in t_0..t_max_var of total degree <= max_deg, graded order
/// (degree ascending, then lexicographic in the variable multiset). The
/// constant monomial comes first.
inline std::vector<ExpVec> window_monomials(int max_var, int max_deg) {
  std::vector<ExpVec> out;
  std::vector<int> vars;  // multiset of variable indices, nondecreasing
  auto emit = [&out](const std::vector<int>& vs) {
    ExpVec e;
    for (int v : vs) {
      if (!e.empty() && e.back().first == v)
        e.back().second++;
      else
        e.emplace_back(v, 1);
    }
    out.push_back(std::move(e));
  };
  // combinations with repetition of {0..max_var}, size d, in lex order
  for (int d = 0; d <= max_deg; ++d) {
    vars.assign(static_cast<size_t>(d), 0);
    if (d == 0) {
      emit(vars);
      continue;
    }
    while (true) {
      emit(vars);
      int i = d - 1;
      while (i >= 0 && vars[static_cast<size_t>(i)] == max_var) --i;
      if (i < 0) break;
      const int next = vars[static_cast<size_t>(i)] + 1;
      for (int j = i; j < d; ++j) vars[static_cast<size_t>(j)] = next;
    }
  }
  return out;
}

}  // namespace mmc
