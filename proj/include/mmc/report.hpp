#pragma once

#include <string>
#include <vector>

#include "mmc/tpolynomial.hpp"

namespace mmc {

struct Window {
  int max_var = 8;
  int max_deg = 3;
};

inline ordered_json window_to_json(const Window& w) {
  return ordered_json{{"max_var", w.max_var}, {"max_deg", w.max_deg}};
}

struct BracketCounterexample {
  ExpVec monomial;
  TPolynomial lhs, rhs;
};

/// Verdict of one identity check. `counterexamples` empty iff `pass`.
struct Report {
  std::string suite;
  std::string case_label;
  ordered_json window;
  bool pass = true;
  std::vector<BracketCounterexample> counterexamples;

  void add_counterexample(ExpVec monomial, TPolynomial lhs, TPolynomial rhs) {
    pass = false;
    counterexamples.push_back({std::move(monomial), std::move(lhs), std::move(rhs)});
  }

  ordered_json to_json() const {
    ordered_json ces = ordered_json::array();
    for (const auto& ce : counterexamples)
      ces.push_back(ordered_json{{"monomial", expvec_to_json(ce.monomial)},
                                 {"lhs", ce.lhs.to_json()},
                                 {"rhs", ce.rhs.to_json()}});
    return ordered_json{{"suite", suite},
                        {"case", case_label},
                        {"window", window},
                        {"pass", pass},
                        {"counterexamples", ces}};
  }
};

}  // namespace mmc
