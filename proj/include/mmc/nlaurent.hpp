#pragma once

#include <map>
#include <sstream>
#include <utility>
#include <vector>

#include "mmc/json.hpp"
#include "mmc/rational.hpp"

namespace mmc {

/// Laurent polynomial in the formal matrix size N over exact rationals.
/// The universal coefficient ring of the whole library: an identity proved
/// over NLaurent holds for every matrix size at once.
class NLaurent {
 public:
  NLaurent() = default;
  NLaurent(const Rational& c) {
    if (c != 0) terms_[0] = c;
  }
  NLaurent(int c) : NLaurent(Rational(c)) {}

  static NLaurent monomial(int power, const Rational& coeff) {
    NLaurent r;
    if (coeff != 0) r.terms_[power] = coeff;
    return r;
  }
  /// N^power.
  static NLaurent n(int power = 1) { return monomial(power, 1); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
  }
  Rational constant_value() const {
    auto it = terms_.find(0);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  const std::map<int, Rational>& terms() const { return terms_; }

  NLaurent& operator+=(const NLaurent& o) {
    for (const auto& [p, c] : o.terms_) {
      Rational& slot = terms_[p];
      slot += c;
      if (slot == 0) terms_.erase(p);
    }
    return *this;
  }
  NLaurent& operator-=(const NLaurent& o) {
    for (const auto& [p, c] : o.terms_) {
      Rational& slot = terms_[p];
      slot -= c;
      if (slot == 0) terms_.erase(p);
    }
    return *this;
  }
  friend NLaurent operator+(NLaurent a, const NLaurent& b) { return a += b; }
  friend NLaurent operator-(NLaurent a, const NLaurent& b) { return a -= b; }
  friend NLaurent operator-(const NLaurent& a) {
    NLaurent r;
    for (const auto& [p, c] : a.terms_) r.terms_[p] = -c;
    return r;
  }
  friend NLaurent operator*(const NLaurent& a, const NLaurent& b) {
    NLaurent r;
    for (const auto& [pa, ca] : a.terms_)
      for (const auto& [pb, cb] : b.terms_) {
        Rational& slot = r.terms_[pa + pb];
        slot += ca * cb;
        if (slot == 0) r.terms_.erase(pa + pb);
      }
    return r;
  }
  NLaurent& operator*=(const NLaurent& b) { return *this = *this * b; }

  friend bool operator==(const NLaurent& a, const NLaurent& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const NLaurent& a, const NLaurent& b) { return !(a == b); }
  friend bool operator<(const NLaurent& a, const NLaurent& b) { return a.terms_ < b.terms_; }

  /// Substitute a concrete nonzero matrix size.
  Rational eval(const Rational& n_value) const {
    if (n_value == 0) throw std::domain_error("NLaurent::eval at N=0");
    Rational acc = 0;
    for (const auto& [p, c] : terms_) {
      Rational power = 1;
      const int a = p >= 0 ? p : -p;
      for (int i = 0; i < a; ++i) power *= n_value;
      if (p >= 0)
        acc += c * power;
      else
        acc += c / power;
    }
    return acc;
  }

  /// (power, coefficient) pairs, powers descending; this is the genus-style
  /// decomposition surface.
  std::vector<std::pair<int, Rational>> power_split() const {
    std::vector<std::pair<int, Rational>> out(terms_.rbegin(), terms_.rend());
    return out;
  }

  ordered_json to_json() const {
    ordered_json arr = ordered_json::array();
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
      arr.push_back(ordered_json::array({it->first, rational_str(it->second)}));
    return ordered_json{{"terms", arr}};
  }
  static NLaurent from_json(const ordered_json& j) {
    NLaurent r;
    for (const auto& t : j.at("terms")) {
      Rational c = rational_parse(t.at(1).get<std::string>());
      if (c != 0) r.terms_[t.at(0).get<int>()] = c;
    }
    return r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [p, c] = *it;
      if (!first) os << (c > 0 ? " + " : " - ");
      Rational a = (!first && c < 0) ? Rational(-c) : c;
      first = false;
      if (p == 0) {
        os << a;
        continue;
      }
      if (a == -1)
        os << "-";
      else if (a != 1)
        os << a << "*";
      os << "N";
      if (p != 1) os << "^" << p;
    }
    return os.str();
  }

 private:
  std::map<int, Rational> terms_;  // power -> coeff, no zeros stored
};

inline NLaurent nlaurent_pow(const NLaurent& base, int e) {
  NLaurent r(1);
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace mmc
