#pragma once

#include <sstream>

#include "mmc/family.hpp"
#include "mmc/report.hpp"

namespace mmc {

// Constructors for the named operator families. The free functions are the
// public vocabulary; Family holds the representation.

inline Family virasoro_constraint(int n) { return Family::virasoro_constraint(n); }
inline Family generalized_constraint(int n, const IndexMultiset& lambda) {
  return Family::generalized_constraint(n, lambda);
}
inline Family generalized_constraint(int n, const Partition& lambda) {
  return Family::generalized_constraint(n, lambda);
}
inline Family current_mode(int n, int level = 2,
                           J0Convention j0 = J0Convention::Derivative) {
  return Family::current_mode(n, level, j0);
}
inline Family hat_l(int n) { return Family::hat_l(n); }
inline Family sugawara_mode(int n, int level = 2,
                            J0Convention j0 = J0Convention::Derivative) {
  return Family::sugawara_mode(n, level, j0);
}

namespace detail {

template <typename LhsFn, typename RhsFn>
Report check_on_window(std::string suite, std::string case_label, const Window& w,
                       LhsFn&& lhs_of, RhsFn&& rhs_of) {
  Report rep;
  rep.suite = std::move(suite);
  rep.case_label = std::move(case_label);
  rep.window = window_to_json(w);
  for (const ExpVec& e : window_monomials(w.max_var, w.max_deg)) {
    const TPolynomial p = TPolynomial::monomial(e, NLaurent(1));
    TPolynomial lhs = lhs_of(p), rhs = rhs_of(p);
    if (lhs != rhs) rep.add_counterexample(e, std::move(lhs), std::move(rhs));
  }
  return rep;
}

inline std::string parts_str(const std::vector<int>& parts) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i];
  os << ")";
  return os.str();
}

}  // namespace detail

/// [L_m, L_n] = (m-n) L_{m+n} + (1/12)(m^3-m) delta_{m+n,0}, central charge 1.
inline Report verify_virasoro_bracket(int m, int n, const Window& w) {
  const Family lm = hat_l(m), ln = hat_l(n), lmn = hat_l(m + n);
  const NLaurent scale(m - n);
  const NLaurent central =
      (m + n == 0) ? NLaurent(Rational(BigInt(m) * m * m - m, 12)) : NLaurent(0);
  std::ostringstream label;
  label << "m=" << m << ",n=" << n;
  return detail::check_on_window(
      "virasoro", label.str(), w,
      [&](const TPolynomial& p) { return commutator_action(lm, ln, p); },
      [&](const TPolynomial& p) { return scale * lmn.apply(p) + central * p; });
}

/// [j_m, j_n] = level * m * delta_{m+n,0}.
inline Report verify_kacmoody_bracket(int m, int n, const Window& w, int level = 2,
                                      J0Convention j0 = J0Convention::Derivative) {
  const Family jm = current_mode(m, level, j0), jn = current_mode(n, level, j0);
  const NLaurent central = (m + n == 0) ? NLaurent(level * m) : NLaurent(0);
  std::ostringstream label;
  label << "m=" << m << ",n=" << n;
  return detail::check_on_window(
      "kacmoody", label.str(), w,
      [&](const TPolynomial& p) { return commutator_action(jm, jn, p); },
      [&](const TPolynomial& p) { return central * p; });
}

/// [L_n, j_k] = -k j_{n+k}.
inline Report verify_mixed_bracket(int n, int j, const Window& w,
                                   J0Convention j0 = J0Convention::Derivative) {
  const Family ln = hat_l(n), jj = current_mode(j, 2, j0), jnj = current_mode(n + j, 2, j0);
  const NLaurent scale(-j);
  std::ostringstream label;
  label << "n=" << n << ",j=" << j;
  return detail::check_on_window(
      "mixed", label.str(), w,
      [&](const TPolynomial& p) { return commutator_action(ln, jj, p); },
      [&](const TPolynomial& p) { return scale * jnj.apply(p); });
}

/// sugawara_mode(n, 2) and hat_l(n) are the same operator.
inline Report verify_sugawara_consistency(int n, const Window& w) {
  std::ostringstream label;
  label << "n=" << n;
  return detail::check_on_window(
      "sugawara", label.str(), w,
      [f = sugawara_mode(n, 2)](const TPolynomial& p) { return f.apply(p); },
      [f = hat_l(n)](const TPolynomial& p) { return f.apply(p); });
}

/// [L_{n;lambda}, L_{m;mu}] = (n-m) L_{n+m; lambda u mu}
///   + sum_i lambda_i L_{n; lambda u mu u (m+lambda_i) \ lambda_i}
///   - sum_j mu_j     L_{m; lambda u mu u (n+mu_j)   \ mu_j}.
/// Bracket indices may hit 0, hence the IndexMultiset-indexed families.
inline Report verify_generalized_bracket(int n, const Partition& lambda, int m,
                                         const Partition& mu, const Window& w) {
  const Family a = generalized_constraint(n, lambda);
  const Family b = generalized_constraint(m, mu);

  const IndexMultiset base =
      partition_union(IndexMultiset(lambda), IndexMultiset(mu));
  std::vector<std::pair<NLaurent, Family>> rhs;
  rhs.emplace_back(NLaurent(n - m), generalized_constraint(n + m, base));
  for (int part : lambda.parts()) {
    IndexMultiset idx = partition_remove(partition_union(base, IndexMultiset({part + m})), part);
    rhs.emplace_back(NLaurent(part), generalized_constraint(n, idx));
  }
  for (int part : mu.parts()) {
    IndexMultiset idx = partition_remove(partition_union(base, IndexMultiset({part + n})), part);
    rhs.emplace_back(NLaurent(-part), generalized_constraint(m, idx));
  }
  const Family rhs_family = Family::sum(std::move(rhs));

  std::ostringstream label;
  label << "n=" << n << ",lambda=" << detail::parts_str(lambda.parts()) << ",m=" << m
        << ",mu=" << detail::parts_str(mu.parts());
  return detail::check_on_window(
      "generalized", label.str(), w,
      [&](const TPolynomial& p) { return commutator_action(a, b, p); },
      [&](const TPolynomial& p) { return rhs_family.apply(p); });
}

/// j_lambda L_n = (2/N)^{l(lambda)} L_{n;lambda} for n >= -1.
inline Report verify_scaling_identity(int n, const Partition& lambda, const Window& w) {
  std::vector<Family> factors;
  for (int part : lambda.parts()) factors.push_back(current_mode(part, 2));
  factors.push_back(hat_l(n));
  const Family lhs = Family::product(std::move(factors));
  const NLaurent scale = nlaurent_pow(NLaurent::monomial(-1, 2), lambda.length());  // (2/N)^l
  const Family rhs = generalized_constraint(n, lambda);
  std::ostringstream label;
  label << "n=" << n << ",lambda=" << detail::parts_str(lambda.parts());
  return detail::check_on_window(
      "scaling", label.str(), w,
      [&](const TPolynomial& p) { return lhs.apply(p); },
      [&](const TPolynomial& p) { return scale * rhs.apply(p); });
}

}  // namespace mmc
