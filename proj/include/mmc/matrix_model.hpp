#pragma once

#include "mmc/partition.hpp"
#include "mmc/report.hpp"
#include "mmc/wick.hpp"

namespace mmc {

/// Verification base point: the exactly solvable Gaussian weight, tau_2 = 1/2
/// so that planar moments come out as bare Catalan numbers.
struct GaussPoint {
  static const std::map<int, Rational>& couplings() {
    static const std::map<int, Rational> c = {{2, Rational(1, 2)}};
    return c;
  }
};

/// Truncated multivariate series in the coupling shifts s_k, k in a finite
/// index set S, with NLaurent coefficients. Exponent keys are aligned with the
/// sorted index set and every stored total order is <= the truncation order.
class PerturbationSeries {
 public:
  PerturbationSeries(std::vector<int> coupling_set, int order)
      : vars_(std::move(coupling_set)), order_(order) {
    std::sort(vars_.begin(), vars_.end());
    if (std::adjacent_find(vars_.begin(), vars_.end()) != vars_.end())
      throw std::invalid_argument("duplicate coupling index");
    if (order_ < 0) throw std::invalid_argument("negative truncation order");
  }

  const std::vector<int>& coupling_set() const { return vars_; }
  int order() const { return order_; }
  const std::map<std::vector<int>, NLaurent>& coefficients() const { return coeffs_; }

  NLaurent coeff(const std::vector<int>& alpha) const {
    auto it = coeffs_.find(alpha);
    return it == coeffs_.end() ? NLaurent() : it->second;
  }
  void add_coeff(const std::vector<int>& alpha, const NLaurent& c) {
    if (c.is_zero()) return;
    if (static_cast<int>(alpha.size()) != static_cast<int>(vars_.size()))
      throw std::invalid_argument("exponent arity mismatch");
    int total = 0;
    for (int a : alpha) total += a;
    if (total > order_) return;
    NLaurent& slot = coeffs_[alpha];
    slot += c;
    if (slot.is_zero()) coeffs_.erase(alpha);
  }

  PerturbationSeries& operator+=(const PerturbationSeries& o) {
    for (const auto& [a, c] : o.coeffs_) add_coeff(a, c);
    return *this;
  }
  PerturbationSeries& operator-=(const PerturbationSeries& o) {
    for (const auto& [a, c] : o.coeffs_) add_coeff(a, -c);
    return *this;
  }
  friend PerturbationSeries operator*(const PerturbationSeries& x, const PerturbationSeries& y) {
    if (x.vars_ != y.vars_) throw std::invalid_argument("coupling set mismatch");
    PerturbationSeries r(x.vars_, std::min(x.order_, y.order_));
    for (const auto& [a, ca] : x.coeffs_)
      for (const auto& [b, cb] : y.coeffs_) {
        std::vector<int> sum(a.size());
        for (size_t i = 0; i < a.size(); ++i) sum[i] = a[i] + b[i];
        r.add_coeff(sum, ca * cb);
      }
    return r;
  }
  friend PerturbationSeries operator*(const NLaurent& c, PerturbationSeries s) {
    std::map<std::vector<int>, NLaurent> scaled;
    for (const auto& [a, sc] : s.coeffs_) {
      NLaurent v = c * sc;
      if (!v.is_zero()) scaled.emplace(a, std::move(v));
    }
    s.coeffs_ = std::move(scaled);
    return s;
  }

  /// d/ds_k; the result is trusted one order lower.
  PerturbationSeries derivative(int k) const {
    const auto it = std::find(vars_.begin(), vars_.end(), k);
    if (it == vars_.end()) throw std::invalid_argument("derivative in coupling outside the set");
    const size_t pos = static_cast<size_t>(it - vars_.begin());
    PerturbationSeries r(vars_, order_ - 1);
    for (const auto& [a, c] : coeffs_) {
      if (a[pos] == 0) continue;
      std::vector<int> b = a;
      b[pos] -= 1;
      r.add_coeff(b, NLaurent(a[pos]) * c);
    }
    return r;
  }

  bool equal_through(const PerturbationSeries& o, int ord,
                     std::vector<std::vector<int>>* failures = nullptr) const {
    bool ok = true;
    auto scan = [&](const std::map<std::vector<int>, NLaurent>& mine,
                    const PerturbationSeries& other) {
      for (const auto& [a, c] : mine) {
        int total = 0;
        for (int x : a) total += x;
        if (total > ord) continue;
        if (other.coeff(a) != c) {
          ok = false;
          if (failures &&
              std::find(failures->begin(), failures->end(), a) == failures->end())
            failures->push_back(a);
        }
      }
    };
    scan(coeffs_, o);
    scan(o.coeffs_, *this);
    return ok;
  }

  ordered_json to_json() const {
    ordered_json terms = ordered_json::array();
    for (const auto& [a, c] : coeffs_)
      terms.push_back(ordered_json{{"alpha", a}, {"coeff", c.to_json()}});
    return ordered_json{
        {"couplings", vars_}, {"order", order_}, {"terms", terms}};
  }

 private:
  std::vector<int> vars_;
  int order_;
  std::map<std::vector<int>, NLaurent> coeffs_;
};

namespace detail {

inline void for_each_exponent(int arity, int max_total,
                              const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> alpha(static_cast<size_t>(arity), 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == arity) {
      fn(alpha);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      alpha[static_cast<size_t>(pos)] = e;
      self(self, pos + 1, left - e);
      alpha[static_cast<size_t>(pos)] = 0;
    }
  };
  rec(rec, 0, max_total);
}

inline BigInt exponent_factorial(const std::vector<int>& alpha) {
  BigInt f = 1;
  for (int a : alpha) f *= factorial(a);
  return f;
}

inline TraceWord word_with_exponent(const TraceWord& base, const std::vector<int>& vars,
                                    const std::vector<int>& alpha) {
  std::vector<int> extra;
  for (size_t i = 0; i < vars.size(); ++i)
    for (int j = 0; j < alpha[i]; ++j) extra.push_back(vars[i]);
  return base.with(extra);
}

}  // namespace detail

/// Series of the unnormalized insertion average < (prod tr M^{w_i})
/// exp(-N sum_{k in S} s_k tr M^k) > / Z_0: the coefficient of s^alpha is
/// (-N)^{|alpha|} / alpha! times a Gaussian moment.
inline PerturbationSeries trace_moment_series(const TraceWord& w,
                                              const std::vector<int>& coupling_set, int order) {
  for (int k : coupling_set)
    if (k < 1)
      throw std::invalid_argument("coupling indices must be >= 1; the t0 sector is analytic");
  PerturbationSeries out(coupling_set, order);
  const std::vector<int>& vars = out.coupling_set();
  detail::for_each_exponent(static_cast<int>(vars.size()), order, [&](const std::vector<int>& a) {
    int total = 0;
    for (int x : a) total += x;
    const TraceWord full = detail::word_with_exponent(w, vars, a);
    NLaurent c = full.empty() ? NLaurent(1) : wick_moment(full);
    if (total % 2 != 0) c = -c;
    out.add_coeff(a, NLaurent(Rational(1, detail::exponent_factorial(a))) *
                         NLaurent::monomial(total, 1) * c);
  });
  return out;
}

/// Z(tau + s)/Z(tau) around the Gaussian point, truncated at `order`.
inline PerturbationSeries z_series(const std::vector<int>& coupling_set, int order) {
  return trace_moment_series(TraceWord(std::vector<int>{}), coupling_set, order);
}

/// log of a unit-constant series, truncated at the series order.
inline PerturbationSeries free_energy_series(const PerturbationSeries& z) {
  const std::vector<int> zero(z.coupling_set().size(), 0);
  if (z.coeff(zero) != NLaurent(1))
    throw std::invalid_argument("free_energy_series needs unit constant term");
  PerturbationSeries u = z;
  u.add_coeff(zero, NLaurent(-1));
  PerturbationSeries acc(z.coupling_set(), z.order());
  PerturbationSeries power(z.coupling_set(), z.order());
  power.add_coeff(zero, NLaurent(1));
  for (int j = 1; j <= z.order(); ++j) {
    power = power * u;
    const Rational sign = (j % 2 == 1) ? Rational(1, j) : Rational(-1, j);
    acc += NLaurent(sign) * power;
  }
  return acc;
}

namespace detail {

inline TraceWord empty_word() { return TraceWord(std::vector<int>{}); }

inline std::string alpha_label(const std::vector<int>& vars, const std::vector<int>& alpha) {
  std::ostringstream os;
  os << "s^(";
  for (size_t i = 0; i < vars.size(); ++i)
    os << (i ? "," : "") << vars[i] << ":" << alpha[i];
  os << ")";
  return os.str();
}

inline ExpVec alpha_expvec(const std::vector<int>& vars, const std::vector<int>& alpha) {
  ExpVec e;
  for (size_t i = 0; i < vars.size(); ++i)
    if (alpha[i] > 0) e.emplace_back(vars[i], alpha[i]);
  return e;
}

}  // namespace detail

/// d/ds_m of the w-insertion series equals -N times the series with an extra
/// tr M^m factor, exactly, through order D-1.
inline Report loop_insertion_check(int m, const TraceWord& w, std::vector<int> coupling_set,
                                   int order) {
  if (m < 1) throw std::invalid_argument("loop insertion index must be >= 1");
  if (order < 1) throw std::invalid_argument("loop_insertion_check needs order >= 1");
  if (std::find(coupling_set.begin(), coupling_set.end(), m) == coupling_set.end())
    coupling_set.push_back(m);

  Report rep;
  rep.suite = "loop-insertion";
  rep.case_label = "m=" + std::to_string(m) + ",w=[" + w.str() + "]";
  rep.window = ordered_json{{"couplings", coupling_set}, {"order", order}};

  const PerturbationSeries lhs = trace_moment_series(w, coupling_set, order).derivative(m);
  const PerturbationSeries rhs =
      NLaurent::monomial(1, -1) * trace_moment_series(w.with(m), coupling_set, order - 1);
  std::vector<std::vector<int>> failures;
  if (!lhs.equal_through(rhs, order - 1, &failures))
    for (const auto& a : failures)
      rep.add_counterexample(detail::alpha_expvec(lhs.coupling_set(), a),
                             TPolynomial(lhs.coeff(a)), TPolynomial(rhs.coeff(a)));
  return rep;
}

/// Moment form of the one-loop equation at the Gaussian point:
/// sum_{k=0}^{n} <tr M^k tr M^{n-k}> = N sum_k k tau_k <tr M^{k+n}>.
inline Report verify_loop_identity(int n) {
  if (n < -1) throw std::invalid_argument("loop identity needs n >= -1");
  Report rep;
  rep.suite = "loop";
  rep.case_label = "n=" + std::to_string(n);
  rep.window = ordered_json::object();

  NLaurent lhs;
  for (int k = 0; k <= n; ++k) lhs += wick_moment(TraceWord{k, n - k});
  NLaurent rhs;
  for (const auto& [k, tau] : GaussPoint::couplings())
    if (k + n >= 0)
      rhs += NLaurent::monomial(1, Rational(k) * tau) * wick_moment(TraceWord{k + n});
  if (lhs != rhs) rep.add_counterexample({}, TPolynomial(lhs), TPolynomial(rhs));
  return rep;
}

/// Moment form of the multi-loop equation, Gaussian point, arbitrary trace
/// insertions:
///   sum_{l=0}^{n} <tr M^l tr M^{n-l} prod_i tr M^{n_i}>
/// - N sum_k k tau_k <tr M^{n+k} prod_i tr M^{n_i}>
/// + sum_i n_i <tr M^{n_i+n} prod_{j != i} tr M^{n_j}>  = 0.
inline Report verify_multiloop_identity(int n, const std::vector<int>& insertions) {
  if (n < -1) throw std::invalid_argument("multiloop identity needs n >= -1");
  for (int ni : insertions)
    if (ni < 1) throw std::invalid_argument("insertions must be positive");

  Report rep;
  rep.suite = "multiloop";
  std::ostringstream label;
  label << "n=" << n << ",insertions=[";
  for (size_t i = 0; i < insertions.size(); ++i) label << (i ? "," : "") << insertions[i];
  label << "]";
  rep.case_label = label.str();
  rep.window = ordered_json::object();

  const TraceWord ins{insertions};
  NLaurent residual;
  for (int l = 0; l <= n; ++l) residual += wick_moment(ins.with({l, n - l}));
  for (const auto& [k, tau] : GaussPoint::couplings())
    if (k + n >= 0)
      residual -= NLaurent::monomial(1, Rational(k) * tau) * wick_moment(ins.with(n + k));
  for (size_t i = 0; i < insertions.size(); ++i) {
    std::vector<int> rest;
    for (size_t j = 0; j < insertions.size(); ++j)
      if (j != i) rest.push_back(insertions[j]);
    residual += NLaurent(insertions[i]) * wick_moment(TraceWord(rest).with(insertions[i] + n));
  }
  if (!residual.is_zero()) rep.add_counterexample({}, TPolynomial(residual), TPolynomial(0));
  return rep;
}

/// L_{n;lambda} Z = 0, checked coefficient by coefficient over the coupling
/// set through order D-1. Every derivative is taken at the Gaussian point via
/// Wick moments (a derivative d_j inserts a -N tr M^j factor; d_0 inserts
/// -N tr I = -N^2); only the explicit t_k multiplications consume an order.
inline Report verify_constraint_on_z(int n, const Partition& lambda,
                                     const std::vector<int>& coupling_set, int order) {
  if (n < -1) throw std::invalid_argument("constraint index must be >= -1");
  if (order < 1) throw std::invalid_argument("verify_constraint_on_z needs order >= 1");
  PerturbationSeries shape(coupling_set, order);  // validates or throws
  const std::vector<int>& vars = shape.coupling_set();
  for (int k : vars)
    if (k < 1) throw std::invalid_argument("coupling indices must be >= 1");

  Report rep;
  rep.suite = "constraint-z";
  std::ostringstream label;
  label << "n=" << n << ",lambda=(";
  const auto& lp = lambda.parts();
  for (size_t i = 0; i < lp.size(); ++i) label << (i ? "," : "") << lp[i];
  label << ")";
  rep.case_label = label.str();
  rep.window = ordered_json{{"couplings", vars}, {"order", order}};

  const int l = lambda.length();
  detail::for_each_exponent(static_cast<int>(vars.size()), order - 1,
                            [&](const std::vector<int>& alpha) {
    int atot = 0;
    for (int a : alpha) atot += a;
    const Rational inv_afact(1, detail::exponent_factorial(alpha));
    const TraceWord background =
        detail::word_with_exponent(TraceWord(lp), vars, alpha);
    auto deriv_weight = [&](int extra_derivs) {
      // (-N)^{#derivatives + |alpha|} / alpha!
      const int count = extra_derivs + l + atot;
      NLaurent w = NLaurent::monomial(count, inv_afact);
      return (count % 2 == 0) ? w : -w;
    };

    NLaurent residual;
    // double-derivative block
    for (int k = 0; k <= n; ++k)
      residual += NLaurent::monomial(-2, 1) * deriv_weight(2) *
                  wick_moment(background.with({k, n - k}));
    // potential block: base couplings act at this order, shifts s_k one lower
    for (const auto& [k, tau] : GaussPoint::couplings())
      if (k + n >= 0)
        residual += NLaurent(Rational(k) * tau) * deriv_weight(1) *
                    wick_moment(background.with(k + n));
    for (size_t i = 0; i < vars.size(); ++i) {
      const int k = vars[i];
      if (alpha[i] == 0 || k + n < 0) continue;
      std::vector<int> beta = alpha;
      beta[i] -= 1;
      const Rational inv_bfact(1, detail::exponent_factorial(beta));
      const int count = 1 + l + atot - 1;
      NLaurent w = NLaurent::monomial(count, Rational(k) * inv_bfact);
      if (count % 2 != 0) w = -w;
      residual += w * wick_moment(
          detail::word_with_exponent(TraceWord(lp), vars, beta).with(k + n));
    }
    // derivative-shift block
    for (size_t i = 0; i < lp.size(); ++i) {
      std::vector<int> rest;
      for (size_t j = 0; j < lp.size(); ++j)
        if (j != i) rest.push_back(lp[j]);
      const int count = 1 + (l - 1) + atot;
      NLaurent w = NLaurent::monomial(count, Rational(lp[i]) * inv_afact);
      if (count % 2 != 0) w = -w;
      residual += w * wick_moment(detail::word_with_exponent(TraceWord(rest), vars, alpha)
                                      .with(lp[i] + n));
    }

    if (!residual.is_zero())
      rep.add_counterexample(detail::alpha_expvec(vars, alpha), TPolynomial(residual),
                             TPolynomial(0));
  });
  return rep;
}

/// Truncated series in the spectral variable; used for the genus-0 resolvent
/// and the curve residual.
struct ResolventSeries {
  int order = 0;                   // coefficients of x^{-j} trusted for j <= order
  std::map<int, NLaurent> coeffs;  // power of x -> coefficient

  NLaurent coeff(int power) const {
    auto it = coeffs.find(power);
    return it == coeffs.end() ? NLaurent() : it->second;
  }
  void add(int power, const NLaurent& c) {
    if (c.is_zero()) return;
    NLaurent& slot = coeffs[power];
    slot += c;
    if (slot.is_zero()) coeffs.erase(power);
  }
};

/// W(x) = sum_j m_j x^{-j-1} with m_j the planar one-trace moments.
inline ResolventSeries genus0_resolvent(int order) {
  ResolventSeries w;
  w.order = order;
  for (int j = 0; j + 1 <= order; ++j) {
    if (j % 2 != 0) continue;
    const Rational m = planar_moments(j / 2).back();
    w.add(-j - 1, NLaurent(m));
  }
  return w;
}

/// Convention for the polynomial-part correlator entering the loop equation:
/// Derivative uses (V'(x)-V'(M))/(x-M); LiteralV uses (V(x)-V(M))/(x-M) and is
/// kept to document that it breaks the Gaussian spectral curve at order 0.
enum class VConvention { Derivative, LiteralV };

struct SpectralReport {
  VConvention convention = VConvention::Derivative;
  int order = 0;
  std::map<int, Rational> residual;  // nonzero coefficients by power of x
  bool pass() const { return residual.empty(); }

  ordered_json to_json() const {
    ordered_json res = ordered_json::array();
    for (auto it = residual.rbegin(); it != residual.rend(); ++it)
      res.push_back(ordered_json::array({it->first, rational_str(it->second)}));
    return ordered_json{
        {"suite", "spectral"},
        {"case", convention == VConvention::Derivative ? "convention=derivative"
                                                       : "convention=literal-V"},
        {"window", ordered_json{{"order", order}}},
        {"pass", pass()},
        {"residual", res}};
  }
};

/// Genus-0 loop equation as a series identity: W^2 - V' W + U = 0 with
/// V'(x) = x at the Gaussian point; equivalently Y^2 = x^2 - 4 for
/// Y = V' - 2W. Checked for every power of x down to x^{-order}.
inline SpectralReport spectral_curve_check(int order, VConvention conv) {
  SpectralReport rep;
  rep.convention = conv;
  rep.order = order;

  const ResolventSeries w = genus0_resolvent(order + 2);
  ResolventSeries residual;
  residual.order = order;
  for (const auto& [pa, ca] : w.coeffs)
    for (const auto& [pb, cb] : w.coeffs) residual.add(pa + pb, ca * cb);  // W^2
  for (const auto& [k, tau] : GaussPoint::couplings())                     // -V'W
    for (const auto& [p, c] : w.coeffs)
      residual.add(p + k - 1, NLaurent(Rational(-k) * tau) * c);

  // U(x): planar part of the polynomial correlator, from the same moments
  const std::vector<Rational> planar = planar_moments(3);
  auto planar_trace = [&](int b) {
    return (b % 2 == 0) ? planar[static_cast<size_t>(b / 2)] : Rational(0);
  };
  for (const auto& [k, tau] : GaussPoint::couplings()) {
    if (conv == VConvention::Derivative) {
      for (int a = 0; a <= k - 2; ++a)
        residual.add(a, NLaurent(Rational(k) * tau * planar_trace(k - 2 - a)));
    } else {
      for (int a = 0; a <= k - 1; ++a)
        residual.add(a, NLaurent(tau * planar_trace(k - 1 - a)));
    }
  }

  for (const auto& [power, c] : residual.coeffs) {
    if (power < -order) continue;  // beyond the trusted truncation
    if (!c.is_zero()) rep.residual[power] = c.constant_value();
  }
  return rep;
}

/// Topological-expansion parity over every connected moment of total degree
/// <= max_weight. genus_extract throws on any violation; this wraps the scan
/// as a report.
inline Report genus_parity_scan(int max_weight) {
  Report rep;
  rep.suite = "genus-parity";
  rep.case_label = "weight<=" + std::to_string(max_weight);
  rep.window = ordered_json{{"max_weight", max_weight}};

  std::vector<int> parts;
  auto word_expvec = [](const TraceWord& w) {
    ExpVec e;
    for (int k : w.entries()) {
      if (!e.empty() && e.back().first == k)
        e.back().second++;
      else
        e.emplace_back(k, 1);
    }
    return e;
  };
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (!parts.empty()) {
      const TraceWord w{parts};
      try {
        genus_extract(w);
      } catch (const std::domain_error&) {
        rep.add_counterexample(word_expvec(w), TPolynomial(connected_moment(w)),
                               TPolynomial(0));
      }
    }
    for (int p = 1; p <= std::min(remaining, max_part); ++p) {
      parts.push_back(p);
      self(self, remaining - p, p);
      parts.pop_back();
    }
  };
  rec(rec, max_weight, max_weight);
  return rep;
}

/// Free-energy coefficients must carry only powers N^{2-2g}.
inline Report free_energy_genus_report(const std::vector<int>& coupling_set, int order) {
  Report rep;
  rep.suite = "free-energy-genus";
  rep.window = ordered_json{{"couplings", coupling_set}, {"order", order}};
  std::ostringstream label;
  label << "S={";
  for (size_t i = 0; i < coupling_set.size(); ++i)
    label << (i ? "," : "") << coupling_set[i];
  label << "},D=" << order;
  rep.case_label = label.str();

  const PerturbationSeries f = free_energy_series(z_series(coupling_set, order));
  for (const auto& [alpha, c] : f.coefficients()) {
    bool ok = true;
    for (const auto& [power, coeff] : c.terms())
      if (power > 2 || power % 2 != 0) ok = false;
    if (!ok)
      rep.add_counterexample(detail::alpha_expvec(f.coupling_set(), alpha), TPolynomial(c),
                             TPolynomial(0));
  }
  return rep;
}

}  // namespace mmc
