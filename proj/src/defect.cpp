#include "lowdefect/defect.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace lowdefect {

namespace {

using Float = boost::multiprecision::cpp_bin_float_100;

// Exact comparisons clear denominators into integer powers; cap the
// exponents so a degenerate threshold cannot ask for gigabyte integers.
constexpr std::uint64_t kMaxComparisonExponent = 10'000'000;

std::uint64_t comparison_exponent(const BigInt& e) {
  if (!fits_uint64(e) || static_cast<std::uint64_t>(e) > kMaxComparisonExponent)
    throw Error(Error::Kind::Resource, "threshold comparison exponent too large");
  return static_cast<std::uint64_t>(e);
}

std::strong_ordering cmp(const BigInt& a, const BigInt& b) {
  if (a < b) return std::strong_ordering::less;
  if (a > b) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace

DefectValue::DefectValue(long long ones, BigInt argument)
    : ones_(ones), argument_(std::move(argument)) {
  if (argument_ < 1)
    throw Error(Error::Kind::Domain, "defect argument must be a positive integer");
}

bool DefectValue::is_integer() const {
  BigInt v = argument_;
  while (v % 3 == 0) v /= 3;
  return v == 1;
}

long long DefectValue::integer_value() const {
  BigInt v = argument_;
  long long e = 0;
  while (v % 3 == 0) {
    v /= 3;
    ++e;
  }
  if (v != 1) throw Error(Error::Kind::Domain, "defect value is not an integer");
  return ones_ - 3 * e;
}

std::strong_ordering operator<=>(const DefectValue& a, const DefectValue& b) {
  // m1 - 3 log3 v1  <=>  m2 - 3 log3 v2   iff   3^(m1-m2) v2^3 <=> v1^3.
  BigInt d = BigInt(a.ones_) - b.ones_;
  BigInt lhs = b.argument_ * b.argument_ * b.argument_;
  BigInt rhs = a.argument_ * a.argument_ * a.argument_;
  if (d >= 0)
    lhs *= pow3(comparison_exponent(d));
  else
    rhs *= pow3(comparison_exponent(-d));
  return cmp(lhs, rhs);
}

double DefectValue::approx() const {
  return static_cast<double>(ones_) -
         3.0 * boost::multiprecision::log(Float(argument_)).convert_to<double>() /
             std::log(3.0);
}

std::string DefectValue::decimal(unsigned digits) const {
  if (digits > 60)
    throw Error(Error::Kind::Domain, "at most 60 decimal digits are supported");
  Float value = is_integer() ? Float(integer_value())
                             : Float(ones_) - 3 * log(Float(argument_)) / log(Float(3));
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(static_cast<int>(digits));
  out << value;
  return out.str();
}

std::string DefectValue::to_string() const {
  std::ostringstream out;
  out << ones_ << " - 3*log3(" << argument_ << ")";
  return out.str();
}

Threshold::Threshold(BigInt numerator, BigInt denominator, Mode mode)
    : num_(std::move(numerator)), den_(std::move(denominator)), mode_(mode) {
  if (den_ < 1) throw Error(Error::Kind::Domain, "threshold denominator must be >= 1");
  BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Threshold Threshold::parse(std::string_view text, Mode mode) {
  auto fail = [&] {
    throw Error(Error::Kind::Parse, "bad threshold literal '" + std::string(text) + "'");
  };
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) fail();
  auto digits = [&](std::string_view part) {
    if (part.empty()) fail();
    for (char c : part)
      if (!std::isdigit(static_cast<unsigned char>(c))) fail();
    return BigInt(std::string(part));
  };
  BigInt num, den;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    num = digits(s.substr(0, slash));
    den = digits(s.substr(slash + 1));
    if (den == 0) fail();
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty()) fail();
    BigInt w = whole.empty() ? BigInt(0) : digits(whole);
    BigInt f = frac.empty() ? BigInt(0) : digits(frac);
    den = bigint_pow(BigInt(10), frac.size());
    num = w * den + f;
  } else {
    num = digits(s);
    den = 1;
  }
  if (negative) num = -num;
  return Threshold(std::move(num), std::move(den), mode);
}

std::strong_ordering Threshold::compare(const DefectValue& d) const {
  // m - 3 log3 v <=> p/q   iff   3^(q*m - p) <=> v^(3q).
  BigInt e = den_ * d.ones() - num_;
  BigInt lhs = 1, rhs = bigint_pow(d.argument(), comparison_exponent(3 * den_));
  if (e >= 0)
    lhs = bigint_pow(BigInt(3), comparison_exponent(e));
  else
    rhs *= bigint_pow(BigInt(3), comparison_exponent(-e));
  return cmp(lhs, rhs);
}

bool Threshold::admits(const DefectValue& d) const {
  auto c = compare(d);
  return mode_ == Mode::Strict ? c == std::strong_ordering::less
                               : c != std::strong_ordering::greater;
}

long long Threshold::floor_value() const {
  BigInt q = num_ / den_;
  if (num_ < 0 && q * den_ != num_) --q;  // floor toward -inf
  return q.convert_to<long long>();
}

std::string Threshold::to_string() const {
  std::ostringstream out;
  out << num_;
  if (den_ != 1) out << "/" << den_;
  return out.str();
}

DefectValue defect_of(std::uint64_t n, const ComplexityTable& table) {
  return DefectValue(table.complexity(n), BigInt(n));
}

bool is_leader(std::uint64_t n, const ComplexityTable& table) {
  unsigned c = table.complexity(n);
  if (n % 3 != 0) return true;
  return c < 3 + table.complexity(n / 3);
}

LeaderDecomposition leader_decomposition(std::uint64_t n, const ComplexityTable& table) {
  std::uint64_t m = n;
  unsigned k = 0;
  while (m % 3 == 0 && table.complexity(m) == 3 + table.complexity(m / 3)) {
    m /= 3;
    ++k;
  }
  return {m, k};
}

StableDefectResult stable_defect_within(std::uint64_t n, unsigned horizon,
                                        const ComplexityTable& table) {
  if (n < 1) throw Error(Error::Kind::Range, "n must be positive");
  // All 3^k n for k <= horizon must fit in the table.
  std::uint64_t top = n;
  for (unsigned k = 0; k < horizon; ++k) top = checked_mul(top, 3);
  if (top > table.limit())
    throw Error(Error::Kind::Range, "3^horizon * n exceeds the table limit");

  DefectValue best = defect_of(n, table);
  unsigned witness = 0;
  std::uint64_t m = n;
  for (unsigned k = 1; k <= horizon; ++k) {
    m *= 3;
    DefectValue d = defect_of(m, table);
    if (d < best) {
      best = d;
      witness = k;
    }
  }
  return {best, witness, witness == horizon};
}

StableComplexityResult stable_complexity_within(std::uint64_t n, unsigned horizon,
                                                const ComplexityTable& table) {
  if (n < 1) throw Error(Error::Kind::Range, "n must be positive");
  std::uint64_t top = n;
  for (unsigned k = 0; k < horizon; ++k) top = checked_mul(top, 3);
  if (top > table.limit())
    throw Error(Error::Kind::Range, "3^horizon * n exceeds the table limit");

  long long best = table.complexity(n);
  unsigned witness = 0;
  std::uint64_t m = n;
  for (unsigned k = 1; k <= horizon; ++k) {
    m *= 3;
    long long v = static_cast<long long>(table.complexity(m)) - 3ll * k;
    if (v < best) {
      best = v;
      witness = k;
    }
  }
  return {best, witness, witness == horizon};
}

std::vector<std::uint64_t> enumerate_leaders_below(const Threshold& threshold,
                                                   const ComplexityTable& table) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 1; n <= table.limit(); ++n)
    if (is_leader(n, table) && threshold.admits(defect_of(n, table))) out.push_back(n);
  return out;
}

std::vector<DefectValue> distinct_defects_below(const Threshold& threshold,
                                                const ComplexityTable& table) {
  // Distinct defects are exactly the defects of leaders: equal defects force
  // the numbers to differ by a power of 3 with matching complexity, and each
  // such chain has one smallest member.
  std::vector<DefectValue> out;
  for (std::uint64_t n : enumerate_leaders_below(threshold, table))
    out.push_back(defect_of(n, table));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace lowdefect
