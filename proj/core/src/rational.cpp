#include "emk/rational.hpp"

#include <cctype>
#include <mutex>

namespace emk {

std::string rat_to_string(const Rational& r) {
  const Int num = boost::multiprecision::numerator(r);
  const Int den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational rat_from_string(const std::string& s) {
  if (s.empty()) throw Error("rational: empty string");
  std::size_t pos = 0;
  auto read_int = [&](bool allow_sign) -> Int {
    bool negative = false;
    if (allow_sign && pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      negative = s[pos] == '-';
      ++pos;
    }
    std::size_t digits_start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits_start) throw Error("rational: malformed value '" + s + "'");
    Int magnitude(s.substr(digits_start, pos - digits_start));
    return negative ? Int(-magnitude) : magnitude;
  };
  Int num = read_int(true);
  Int den = 1;
  if (pos < s.size()) {
    if (s[pos] != '/') throw Error("rational: malformed value '" + s + "'");
    ++pos;
    den = read_int(false);
    if (pos != s.size()) throw Error("rational: malformed value '" + s + "'");
    if (den == 0) throw Error("rational: zero denominator in '" + s + "'");
  }
  return Rational(num, den);
}

Int rat_floor(const Rational& r) {
  Int num = boost::multiprecision::numerator(r);
  Int den = boost::multiprecision::denominator(r);
  Int q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) --q;
  return q;
}

Int rat_ceil(const Rational& r) { return -rat_floor(-r); }

Rational frac_part(const Rational& r) { return r - Rational(rat_floor(r)); }

Rational rat_pow(const Rational& base, int exp) {
  if (exp < 0) {
    if (base == 0) throw Error("rational: 0 raised to a negative power");
    return Rational(1) / rat_pow(base, -exp);
  }
  Rational result(1);
  Rational b = base;
  int e = exp;
  while (e > 0) {
    if (e & 1) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

double rat_to_double(const Rational& r) { return r.convert_to<double>(); }

Int factorial(int n) {
  if (n < 0) throw Error("factorial: negative argument");
  static std::vector<Int> table = {1};
  static std::mutex m;
  std::lock_guard<std::mutex> lock(m);
  while (static_cast<int>(table.size()) <= n) {
    table.push_back(table.back() * Int(table.size()));
  }
  return table[static_cast<std::size_t>(n)];
}

Int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Int result = 1;
  for (int i = 0; i < k; ++i) {
    result *= Int(n - i);
    result /= Int(i + 1);
  }
  return result;
}

int sign_of(const Rational& r) {
  if (r > 0) return 1;
  if (r < 0) return -1;
  return 0;
}

}  // namespace emk
