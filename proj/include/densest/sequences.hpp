#pragma once

// Point generators: the log-odd sequence y_k = log2(2k-1) mod 1 and the
// comparison families (rotations, van der Corput, seeded random, files).

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#if defined(__GNUC__) && !defined(__clang__) && defined(__x86_64__)
#include <quadmath.h>
#define DENSEST_HAVE_QUADMATH 1
#endif

#include "densest/circle.hpp"

namespace densest {

/// Malformed user input: bad spec strings, bad point files, short inputs.
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// (2k-1) / 2^e in [1,2): the exact carrier of the log-odd point y_k.
struct DyadicMantissa {
  std::uint64_t numerator = 1;  // odd
  unsigned exponent = 0;        // floor(log2(numerator))

  friend bool operator==(const DyadicMantissa&, const DyadicMantissa&) = default;
};

inline DyadicMantissa log_odd_mantissa(std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("log-odd index k must be >= 1");
  if (k > (std::uint64_t{1} << 63)) throw std::overflow_error("log-odd index too large");
  const std::uint64_t odd = 2 * k - 1;
  return {odd, static_cast<unsigned>(std::bit_width(odd) - 1)};
}

/// Default working precision for the logarithm, in bits.
inline constexpr unsigned kDefaultLogPrecision = 113;

/// log2(m.numerator / 2^m.exponent) evaluated with at least `precision_bits`
/// bits, rounded to double. This is the circle coordinate of y_k.
inline double mantissa_log2(const DyadicMantissa& m, unsigned precision_bits = kDefaultLogPrecision) {
  if (precision_bits <= 64) {
    return static_cast<double>(std::log2(static_cast<long double>(m.numerator)) -
                               static_cast<long double>(m.exponent));
  }
#ifdef DENSEST_HAVE_QUADMATH
  if (precision_bits <= 113) {
    return static_cast<double>(log2q(static_cast<__float128>(m.numerator)) -
                               static_cast<__float128>(m.exponent));
  }
#endif
  if (precision_bits <= 256) {
    using Wide = boost::multiprecision::number<
        boost::multiprecision::cpp_bin_float<256, boost::multiprecision::digit_base_2>>;
    Wide x(m.numerator);
    return static_cast<double>(log(x) / boost::multiprecision::log(Wide(2)) - Wide(m.exponent));
  }
  throw std::invalid_argument("log precision above 256 bits is not supported");
}

inline CirclePoint log_odd_point(std::uint64_t k, unsigned precision_bits = kDefaultLogPrecision) {
  return CirclePoint(mantissa_log2(log_odd_mantissa(k), precision_bits));
}

/// (sqrt 5 - 1)/2, the sunflower rotation.
inline constexpr double kGoldenConjugate = std::numbers::phi - 1.0;

inline CirclePoint kronecker_point(double alpha, std::uint64_t k) {
  const long double a = static_cast<long double>(alpha) - std::floor(static_cast<long double>(alpha));
  const long double x = a * static_cast<long double>(k);
  return CirclePoint(static_cast<double>(x - std::floor(x)));
}

/// Radical inverse of k in `base`: the digits of k mirrored about the radix
/// point, as one rounded division.
inline CirclePoint van_der_corput_point(unsigned base, std::uint64_t k) {
  if (base < 2) throw std::invalid_argument("van der Corput base must be >= 2");
  unsigned __int128 mirrored = 0, scale = 1;
  while (k > 0) {
    mirrored = mirrored * base + k % base;
    scale *= base;
    k /= base;
  }
  return CirclePoint(static_cast<double>(static_cast<long double>(mirrored) / static_cast<long double>(scale)));
}

/// SplitMix64 (Steele, Lea, Flood 2014). Counter-based, so the k-th output is
/// a pure function of (seed, k).
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  constexpr result_type operator()() noexcept { return mix(state_ += kGamma); }

  /// Output number k (1-based) of the stream seeded with `seed`.
  static constexpr result_type at(std::uint64_t seed, std::uint64_t k) noexcept {
    return mix(seed + k * kGamma);
  }

  /// Seed for an independent child stream.
  constexpr SplitMix64 split() noexcept { return SplitMix64((*this)()); }

  /// Uniform double in [0,1) with 53 random bits.
  static constexpr double to_unit(result_type x) noexcept {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
  }
  constexpr double uniform() noexcept { return to_unit((*this)()); }

 private:
  static constexpr result_type mix(result_type z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  result_type state_;
};

inline CirclePoint random_point(std::uint64_t seed, std::uint64_t k) {
  return CirclePoint(SplitMix64::to_unit(SplitMix64::at(seed, k)));
}

/// Point-list file: one decimal per line, '#' starts a comment, blank lines
/// ignored. Every value must lie in [0,1).
inline std::vector<CirclePoint> parse_point_list(std::istream& in, std::string_view source = "<stream>") {
  std::vector<CirclePoint> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string_view tok(line.data() + first, last - first + 1);

    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    auto where = [&] { return std::string(source) + ":" + std::to_string(lineno); };
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw input_error(where() + ": malformed value '" + std::string(tok) + "'");
    }
    if (!(v >= 0.0 && v < 1.0)) {
      throw input_error(where() + ": value " + std::string(tok) + " outside [0,1)");
    }
    out.emplace_back(v);
  }
  return out;
}

inline std::vector<CirclePoint> read_point_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open point file '" + path + "'");
  return parse_point_list(in, path);
}

namespace spec {
struct LogOdd {};
struct Kronecker {
  double alpha = kGoldenConjugate;
};
struct VanDerCorput {
  unsigned base = 2;
};
struct Random {
  std::uint64_t seed = 0;
};
struct File {
  std::string path;
};
}  // namespace spec

/// Which sequence to generate.
struct SequenceSpec {
  std::variant<spec::LogOdd, spec::Kronecker, spec::VanDerCorput, spec::Random, spec::File> kind;
  unsigned log_precision = kDefaultLogPrecision;

  static SequenceSpec log_odd() { return {spec::LogOdd{}}; }
  static SequenceSpec kronecker(double alpha) {
    return {spec::Kronecker{CirclePoint::reduce(alpha)}};
  }
  static SequenceSpec golden() { return kronecker(kGoldenConjugate); }
  static SequenceSpec van_der_corput(unsigned base) {
    if (base < 2) throw std::invalid_argument("van der Corput base must be >= 2");
    return {spec::VanDerCorput{base}};
  }
  static SequenceSpec random(std::uint64_t seed) { return {spec::Random{seed}}; }
  static SequenceSpec file(std::string path) { return {spec::File{std::move(path)}}; }

  /// Parses `log-odd`, `kronecker:<alpha|golden>`, `vdc:<base>`,
  /// `random:<seed>` or `file:<path>`.
  static SequenceSpec parse(std::string_view text) {
    const auto colon = text.find(':');
    const std::string_view head = text.substr(0, colon);
    const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    auto bad = [&](const char* why) {
      return input_error("bad sequence spec '" + std::string(text) + "': " + why);
    };
    auto need_arg = [&] {
      if (colon == std::string_view::npos || arg.empty()) throw bad("missing argument");
    };
    auto parse_uint = [&](std::string_view s) {
      std::uint64_t v = 0;
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || p != s.data() + s.size()) throw bad("expected a non-negative integer");
      return v;
    };

    if (head == "log-odd") {
      if (colon != std::string_view::npos) throw bad("log-odd takes no argument");
      return log_odd();
    }
    if (head == "kronecker") {
      need_arg();
      if (arg == "golden") return golden();
      double a = 0.0;
      auto [p, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), a);
      if (ec != std::errc{} || p != arg.data() + arg.size() || !std::isfinite(a)) {
        throw bad("expected a real rotation or 'golden'");
      }
      return kronecker(a);
    }
    if (head == "vdc") {
      need_arg();
      const auto b = parse_uint(arg);
      if (b < 2 || b > 1'000'000) throw bad("base must be in [2, 1e6]");
      return van_der_corput(static_cast<unsigned>(b));
    }
    if (head == "random") {
      need_arg();
      return random(parse_uint(arg));
    }
    if (head == "file") {
      need_arg();
      return file(std::string(arg));
    }
    throw bad("unknown kind");
  }

  /// Canonical spec string; parse(label()) reproduces the spec.
  std::string label() const {
    struct Visitor {
      std::string operator()(const spec::LogOdd&) const { return "log-odd"; }
      std::string operator()(const spec::Kronecker& k) const {
        if (k.alpha == kGoldenConjugate) return "kronecker:golden";
        std::ostringstream os;
        os.precision(17);
        os << "kronecker:" << k.alpha;
        return os.str();
      }
      std::string operator()(const spec::VanDerCorput& v) const { return "vdc:" + std::to_string(v.base); }
      std::string operator()(const spec::Random& r) const { return "random:" + std::to_string(r.seed); }
      std::string operator()(const spec::File& f) const { return "file:" + f.path; }
    };
    return std::visit(Visitor{}, kind);
  }
};

/// Cursor over a sequence, yielding points k = 1, 2, ... . File sequences
/// are loaded once at construction and end when the file does.
class PointStream {
 public:
  explicit PointStream(SequenceSpec spec) : spec_(std::move(spec)) {
    if (const auto* f = std::get_if<spec::File>(&spec_.kind)) file_points_ = read_point_file(f->path);
  }

  std::optional<CirclePoint> next() {
    const std::uint64_t k = ++k_;
    return std::visit(
        [&](const auto& s) -> std::optional<CirclePoint> {
          using S = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<S, spec::LogOdd>) {
            return log_odd_point(k, spec_.log_precision);
          } else if constexpr (std::is_same_v<S, spec::Kronecker>) {
            return kronecker_point(s.alpha, k);
          } else if constexpr (std::is_same_v<S, spec::VanDerCorput>) {
            return van_der_corput_point(s.base, k);
          } else if constexpr (std::is_same_v<S, spec::Random>) {
            return random_point(s.seed, k);
          } else {
            if (k > file_points_.size()) return std::nullopt;
            return file_points_[k - 1];
          }
        },
        spec_.kind);
  }

  /// Index of the last point returned.
  std::uint64_t index() const noexcept { return k_; }

 private:
  SequenceSpec spec_;
  std::vector<CirclePoint> file_points_;
  std::uint64_t k_ = 0;
};

/// The first `n_max` points of a sequence.
inline std::vector<CirclePoint> take(const SequenceSpec& spec, std::uint64_t n_max) {
  if (n_max == 0) throw std::invalid_argument("n_max must be >= 1");
  PointStream stream(spec);
  std::vector<CirclePoint> out;
  out.reserve(n_max);
  while (out.size() < n_max) {
    auto p = stream.next();
    if (!p) {
      throw input_error("insufficient points: " + spec.label() + " has " + std::to_string(out.size()) +
                        ", need " + std::to_string(n_max));
    }
    out.push_back(*p);
  }
  return out;
}

/// The stock comparison set: log-odd, two rotations, two van der Corput
/// bases and ten seeded random streams.
inline std::vector<SequenceSpec> stock_sequences() {
  std::vector<SequenceSpec> out{SequenceSpec::log_odd(), SequenceSpec::golden(),
                                SequenceSpec::kronecker(std::numbers::sqrt2 / 2.0),
                                SequenceSpec::van_der_corput(2), SequenceSpec::van_der_corput(3)};
  for (std::uint64_t seed = 1; seed <= 10; ++seed) out.push_back(SequenceSpec::random(seed));
  return out;
}

}  // namespace densest
