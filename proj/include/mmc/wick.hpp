#pragma once

#include <map>
#include <mutex>
#include <sstream>
#include <vector>

#include "mmc/nlaurent.hpp"

namespace mmc {

/// Multiset of trace powers [k_1,...,k_r] standing for tr M^{k_1}...tr M^{k_r}.
/// A zero entry is the scalar tr(I) = N.
class TraceWord {
 public:
  TraceWord() = default;
  TraceWord(std::initializer_list<int> entries) : TraceWord(std::vector<int>(entries)) {}
  explicit TraceWord(std::vector<int> entries) : entries_(std::move(entries)) {
    for (int k : entries_)
      if (k < 0) throw std::invalid_argument("TraceWord entries must be >= 0");
    std::sort(entries_.begin(), entries_.end());
  }

  /// Comma list, e.g. "2,2".
  static TraceWord parse(const std::string& text) {
    std::vector<int> entries;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
      size_t pos = 0;
      const int v = std::stoi(item, &pos);
      if (pos != item.size()) throw std::invalid_argument("bad trace word: " + text);
      entries.push_back(v);
    }
    if (entries.empty()) throw std::invalid_argument("empty trace word");
    return TraceWord(std::move(entries));
  }

  const std::vector<int>& entries() const { return entries_; }
  int factors() const { return static_cast<int>(entries_.size()); }
  int letters() const {
    int n = 0;
    for (int k : entries_) n += k;
    return n;
  }
  bool empty() const { return entries_.empty(); }

  TraceWord with(int extra) const {
    std::vector<int> e = entries_;
    e.push_back(extra);
    return TraceWord(std::move(e));
  }
  TraceWord with(const std::vector<int>& extra) const {
    std::vector<int> e = entries_;
    e.insert(e.end(), extra.begin(), extra.end());
    return TraceWord(std::move(e));
  }

  friend bool operator==(const TraceWord& a, const TraceWord& b) = default;
  friend auto operator<=>(const TraceWord& a, const TraceWord& b) = default;

  std::string str() const {
    std::ostringstream os;
    for (size_t i = 0; i < entries_.size(); ++i) os << (i ? "," : "") << entries_[i];
    return os.str();
  }

 private:
  std::vector<int> entries_;  // sorted ascending
};

namespace detail {

/// Sum over perfect matchings of the letters: each matching contributes
/// N^{loops - pairs}, where loops counts the cycles of (trace successor
/// permutation) o (matching). Counts per power stay well inside int64 for
/// anything the suites request.
inline NLaurent wick_enumerate(const std::vector<int>& letters_per_trace) {
  int total = 0;
  for (int k : letters_per_trace) total += k;
  if (total == 0) return NLaurent(1);
  if (total % 2 != 0) return NLaurent(0);

  std::vector<int> gamma(static_cast<size_t>(total));
  int offset = 0;
  for (int k : letters_per_trace) {
    for (int i = 0; i < k; ++i)
      gamma[static_cast<size_t>(offset + i)] = offset + (i + 1) % k;
    offset += k;
  }

  std::map<int, long long> counts;  // loops - pairs -> matchings
  std::vector<int> partner(static_cast<size_t>(total), -1);
  std::vector<char> seen(static_cast<size_t>(total));
  const int pairs = total / 2;

  auto count_cycles = [&]() {
    std::fill(seen.begin(), seen.end(), 0);
    int cycles = 0;
    for (int s = 0; s < total; ++s) {
      if (seen[static_cast<size_t>(s)]) continue;
      ++cycles;
      int x = s;
      while (!seen[static_cast<size_t>(x)]) {
        seen[static_cast<size_t>(x)] = 1;
        x = gamma[static_cast<size_t>(partner[static_cast<size_t>(x)])];
      }
    }
    return cycles;
  };

  auto rec = [&](auto&& self, int matched) -> void {
    if (matched == total) {
      counts[count_cycles() - pairs] += 1;
      return;
    }
    int u = 0;
    while (partner[static_cast<size_t>(u)] >= 0) ++u;
    for (int v = u + 1; v < total; ++v) {
      if (partner[static_cast<size_t>(v)] >= 0) continue;
      partner[static_cast<size_t>(u)] = v;
      partner[static_cast<size_t>(v)] = u;
      self(self, matched + 2);
      partner[static_cast<size_t>(u)] = -1;
      partner[static_cast<size_t>(v)] = -1;
    }
  };
  rec(rec, 0);

  NLaurent out;
  for (const auto& [power, count] : counts)
    out += NLaurent::monomial(power, Rational(count));
  return out;
}

inline std::map<std::vector<int>, NLaurent>& wick_cache() {
  static std::map<std::vector<int>, NLaurent> cache;
  return cache;
}
inline std::mutex& wick_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace detail

/// Gaussian average of the trace word, exact in N. Base point tau_2 = 1/2,
/// propagator weight 1/N, so every matching weighs N^{loops - pairs}.
inline NLaurent wick_moment(const TraceWord& w) {
  int zeros = 0;
  std::vector<int> letters;
  for (int k : w.entries()) {
    if (k == 0)
      ++zeros;
    else
      letters.push_back(k);
  }
  {
    std::lock_guard<std::mutex> lock(detail::wick_mutex());
    auto it = detail::wick_cache().find(letters);
    if (it != detail::wick_cache().end())
      return zeros == 0 ? it->second : NLaurent::monomial(zeros, 1) * it->second;
  }
  // enumerate outside the lock; racing duplicates insert the same value
  const NLaurent value = detail::wick_enumerate(letters);
  {
    std::lock_guard<std::mutex> lock(detail::wick_mutex());
    detail::wick_cache().emplace(letters, value);
  }
  return zeros == 0 ? value : NLaurent::monomial(zeros, 1) * value;
}

namespace detail {

inline std::map<std::vector<int>, NLaurent>& cumulant_cache() {
  static std::map<std::vector<int>, NLaurent> cache;
  return cache;
}

/// kappa(S) = M(S) - sum_{B containing the first factor, B != S} kappa(B) M(S\B).
inline NLaurent cumulant_rec(const std::vector<int>& word) {
  if (word.empty()) return NLaurent(0);
  {
    std::lock_guard<std::mutex> lock(wick_mutex());
    auto it = cumulant_cache().find(word);
    if (it != cumulant_cache().end()) return it->second;
  }
  const int r = static_cast<int>(word.size());
  NLaurent acc = wick_moment(TraceWord(word));
  for (unsigned mask = 0; mask + 1 < (1u << (r - 1)); ++mask) {
    // mask selects which of factors 1..r-1 join factor 0; the full set is skipped
    std::vector<int> block = {word[0]}, rest;
    for (int i = 1; i < r; ++i) {
      if (mask & (1u << (i - 1)))
        block.push_back(word[static_cast<size_t>(i)]);
      else
        rest.push_back(word[static_cast<size_t>(i)]);
    }
    acc -= cumulant_rec(block) * wick_moment(TraceWord(rest));
  }
  std::lock_guard<std::mutex> lock(wick_mutex());
  cumulant_cache().emplace(word, acc);
  return acc;
}

}  // namespace detail

/// Connected (cumulant) part of the average, via Moebius inversion over set
/// partitions of the trace factors.
inline NLaurent connected_moment(const TraceWord& w) {
  if (w.empty()) throw std::invalid_argument("connected_moment of empty word");
  return detail::cumulant_rec(w.entries());
}

/// connected_moment(w) * N^{r-2} written as sum_g N^{-2g} * coeff. Any power
/// of the wrong parity falsifies the topological expansion and throws.
inline std::vector<std::pair<int, Rational>> genus_extract(const TraceWord& w) {
  const NLaurent scaled = NLaurent::monomial(w.factors() - 2, 1) * connected_moment(w);
  std::vector<std::pair<int, Rational>> out;
  for (const auto& [power, coeff] : scaled.terms()) {
    if (power > 0 || power % 2 != 0)
      throw std::domain_error("genus_extract: power " + std::to_string(power) +
                              " of N violates the topological expansion for word " + w.str());
    out.emplace_back(-power / 2, coeff);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Genus-0 parts of <N^{-1} tr M^{2k}>, k = 0..max_k. Catalan numbers at the
/// Gaussian point.
inline std::vector<Rational> planar_moments(int max_k) {
  std::vector<Rational> out;
  for (int k = 0; k <= max_k; ++k) {
    Rational planar = 0;
    for (const auto& [g, c] : genus_extract(TraceWord{2 * k}))
      if (g == 0) planar = c;
    out.push_back(planar);
  }
  return out;
}

}  // namespace mmc
