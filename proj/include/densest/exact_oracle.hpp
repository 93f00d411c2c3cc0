#pragma once

// Integer-only model of the log-odd prefix. A point y_k corresponds to the
// mantissa (2k-1)/2^e in [1,2); the arc between two adjacent points is log2
// of the ratio of their mantissas, and the arc through 0 is log2 of
// 2*min/max. Since log2 is strictly increasing, statements about the largest
// and smallest arcs become statements about rational ratios, which are
// checked here by cross-multiplication.

#include <cstdint>
#include <iterator>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "densest/json.hpp"
#include "densest/sequences.hpp"

namespace densest {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {

template <class Int>
Int pow2(unsigned e) {
  return Int(1) << e;
}

template <class Int>
Int gcd(Int a, Int b) {
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

template <class Int>
std::string to_string(const Int& v) {
  if constexpr (std::is_same_v<Int, BigInt>) {
    return v.str();
  } else {
    // __int128 has no std::to_string.
    if (v == 0) return "0";
    Int x = v < 0 ? -v : v;
    std::string s;
    while (x > 0) {
      s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(x % 10)));
      x /= 10;
    }
    return v < 0 ? "-" + s : s;
  }
}

}  // namespace detail

/// A positive rational, kept reduced.
template <class Int>
struct ExactRatio {
  Int num = 1;
  Int den = 1;

  static ExactRatio make(Int n, Int d) {
    if (n <= 0 || d <= 0) throw std::invalid_argument("ratio must be positive");
    const Int g = detail::gcd(n, d);
    return {n / g, d / g};
  }

  friend bool operator<(const ExactRatio& a, const ExactRatio& b) { return a.num * b.den < b.num * a.den; }
  friend bool operator==(const ExactRatio& a, const ExactRatio& b) { return a.num == b.num && a.den == b.den; }

  std::string str() const { return detail::to_string(num) + "/" + detail::to_string(den); }
};

/// Exact order on mantissas: a/2^ea < b/2^eb iff a*2^eb < b*2^ea.
template <class Int>
struct MantissaLess {
  bool operator()(const DyadicMantissa& a, const DyadicMantissa& b) const {
    return Int(a.numerator) * detail::pow2<Int>(b.exponent) < Int(b.numerator) * detail::pow2<Int>(a.exponent);
  }
};

template <class Int>
ExactRatio<Int> mantissa_value(const DyadicMantissa& m) {
  return ExactRatio<Int>::make(Int(m.numerator), detail::pow2<Int>(m.exponent));
}

/// upper/lower, multiplied by 2 when the arc wraps through 0 (upper is then
/// the smallest mantissa, read one turn later).
template <class Int>
ExactRatio<Int> adjacency_ratio(const DyadicMantissa& lower, const DyadicMantissa& upper, bool wraps) {
  const unsigned el = lower.exponent, eu = upper.exponent;
  Int num = Int(upper.numerator);
  Int den = Int(lower.numerator);
  if (el >= eu) {
    num *= detail::pow2<Int>(el - eu);
  } else {
    den *= detail::pow2<Int>(eu - el);
  }
  if (wraps) num *= 2;
  return ExactRatio<Int>::make(num, den);
}

/// One arc of the prefix: the ratio between two cyclically adjacent mantissas.
template <class Int>
struct Adjacency {
  ExactRatio<Int> ratio;
  DyadicMantissa lower;
  DyadicMantissa upper;
  bool wraps = false;

  // Ratio first; ties by lower endpoint ascending.
  friend bool operator<(const Adjacency& a, const Adjacency& b) {
    if (a.ratio < b.ratio) return true;
    if (b.ratio < a.ratio) return false;
    return MantissaLess<Int>{}(a.lower, b.lower);
  }
};

template <class Int>
struct ExtremeRatios {
  Adjacency<Int> max;
  std::optional<Adjacency<Int>> min;  // needs two mantissas
};

/// Sorted set of mantissas plus the ordered set of their adjacency ratios.
/// Insertion and extreme queries are O(log n).
template <class Int>
class MantissaLedger {
 public:
  void insert(const DyadicMantissa& m) {
    if (m.numerator % 2 == 0 || m.numerator < (std::uint64_t{1} << m.exponent) ||
        (m.exponent < 63 && m.numerator >= (std::uint64_t{2} << m.exponent))) {
      throw std::invalid_argument("not a normalized odd mantissa");
    }
    auto [it, inserted] = sorted_.insert(m);
    if (!inserted) throw std::logic_error("duplicate mantissa " + std::to_string(m.numerator));
    if (sorted_.size() == 1) {
      ratios_.insert(make_adjacency(m, m));
      return;
    }
    const auto& lower = it == sorted_.begin() ? *sorted_.rbegin() : *std::prev(it);
    const auto& upper = std::next(it) == sorted_.end() ? *sorted_.begin() : *std::next(it);
    if (ratios_.erase(make_adjacency(lower, upper)) != 1) {
      throw std::logic_error("ledger: split adjacency not found");
    }
    ratios_.insert(make_adjacency(lower, m));
    ratios_.insert(make_adjacency(m, upper));
  }

  std::size_t size() const noexcept { return sorted_.size(); }
  const std::set<DyadicMantissa, MantissaLess<Int>>& mantissas() const noexcept { return sorted_; }
  const std::set<Adjacency<Int>>& adjacencies() const noexcept { return ratios_; }

  /// Largest and smallest adjacency ratio, wraparound included. Ties go to
  /// the smallest lower mantissa.
  ExtremeRatios<Int> extreme_ratios() const {
    if (sorted_.empty()) throw std::domain_error("ledger is empty");
    ExtremeRatios<Int> out;
    const auto& top = *ratios_.rbegin();
    out.max = *ratios_.lower_bound(Adjacency<Int>{top.ratio, DyadicMantissa{1, 0}, {}, false});
    if (sorted_.size() >= 2) out.min = *ratios_.begin();
    return out;
  }

 private:
  Adjacency<Int> make_adjacency(const DyadicMantissa& lower, const DyadicMantissa& upper) const {
    const bool wraps = !MantissaLess<Int>{}(lower, upper);
    return {adjacency_ratio<Int>(lower, upper, wraps), lower, upper, wraps};
  }

  std::set<DyadicMantissa, MantissaLess<Int>> sorted_;
  std::set<Adjacency<Int>> ratios_;
};

/// Numerators below this bound keep every product inside signed 128 bits.
inline constexpr std::uint64_t kFastPathNumeratorLimit = std::uint64_t{1} << 30;

struct RatioWitness {
  std::string ratio;  // reduced "p/q"
  std::string lower;  // mantissa "a/2^e" as reduced "p/q"
  std::string upper;
};

struct Example1Row {
  std::uint64_t n = 0;
  RatioWitness max;
  std::optional<RatioWitness> min;
  bool max_ok = true;
  bool min_ok = true;
};

struct Example1Report {
  std::uint64_t n_max = 0;
  std::vector<Example1Row> violations;
  std::vector<Example1Row> witnesses;  // rows n <= witness_limit
  bool wide_integers = false;          // arbitrary-precision path used

  bool clean() const noexcept { return violations.empty(); }
};

namespace detail {

template <class Int>
RatioWitness witness_of(const Adjacency<Int>& a) {
  auto up = mantissa_value<Int>(a.upper);
  if (a.wraps) up = ExactRatio<Int>::make(up.num * 2, up.den);
  return {a.ratio.str(), mantissa_value<Int>(a.lower).str(), up.str()};
}

template <class Int, class MantissaSource>
void run_example1(Example1Report& report, std::uint64_t n_max, MantissaSource&& source,
                  std::uint64_t witness_limit) {
  MantissaLedger<Int> ledger;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    ledger.insert(source(n));
    const auto ext = ledger.extreme_ratios();
    // max ratio must be (n+1)/n, min ratio 2n/(2n-1).
    const bool max_ok = ext.max.ratio == ExactRatio<Int>::make(Int(n + 1), Int(n));
    const bool min_ok = !ext.min || ext.min->ratio == ExactRatio<Int>::make(Int(2 * n), Int(2 * n - 1));
    const bool violated = !max_ok || !min_ok;
    if (!violated && n > witness_limit) continue;
    Example1Row row;
    row.n = n;
    row.max = witness_of(ext.max);
    if (ext.min) row.min = witness_of(*ext.min);
    row.max_ok = max_ok;
    row.min_ok = min_ok;
    if (violated) report.violations.push_back(row);
    if (n <= witness_limit) report.witnesses.push_back(std::move(row));
  }
}

}  // namespace detail

/// Checks the exact identities max ratio = (n+1)/n and (n >= 2) min ratio
/// = 2n/(2n-1) for every prefix n <= n_max of the mantissas produced by
/// `source(k)`. The log-odd sequence must pass; other sources are for
/// negative controls.
template <class MantissaSource>
Example1Report verify_example1_with(std::uint64_t n_max, MantissaSource&& source,
                                    std::uint64_t witness_limit = 1000) {
  Example1Report report;
  report.n_max = n_max;
  if (2 * n_max - 1 < kFastPathNumeratorLimit) {
    using Int = __int128;
    detail::run_example1<Int>(report, n_max, source, witness_limit);
  } else {
    report.wide_integers = true;
    detail::run_example1<BigInt>(report, n_max, source, witness_limit);
  }
  return report;
}

inline Example1Report verify_example1(std::uint64_t n_max, std::uint64_t witness_limit = 1000) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  return verify_example1_with(n_max, [](std::uint64_t k) { return log_odd_mantissa(k); }, witness_limit);
}

inline void to_json(Json& j, const RatioWitness& w) {
  j = {{"ratio", w.ratio}, {"lower", w.lower}, {"upper", w.upper}};
}

inline void to_json(Json& j, const Example1Row& r) {
  j = {{"n", r.n}, {"max", r.max}, {"max_ok", r.max_ok}};
  j["min"] = r.min ? Json(*r.min) : Json(nullptr);
  j["min_ok"] = r.min_ok;
}

inline Json to_json(const Example1Report& r) {
  return {{"suite", "example1"},
          {"statement",
           "log-odd prefix: largest mantissa ratio (n+1)/n and smallest 2n/(2n-1) for every n, "
           "checked as exact integer identities"},
          {"n_max", r.n_max},
          {"clean", r.clean()},
          {"wide_integers", r.wide_integers},
          {"violations", r.violations},
          {"witnesses", r.witnesses}};
}

}  // namespace densest
