#include "qst/angle.hpp"

#include <charconv>
#include <numeric>
#include <regex>
#include <string>

#include "qst/errors.hpp"

namespace qst {

namespace {

long to_long(const std::string& s, long fallback) {
  if (s.empty()) return fallback;
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw DomainError("angle: integer out of range in '" + s + "'");
  return v;
}

}  // namespace

Angle parse_angle(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ' && c != '\t') s.push_back(c);
  }
  if (s.empty()) throw DomainError("angle: empty string");

  // [-][a][/b]pi[/c]
  static const std::regex pi_form(R"(^([+-]?)(\d*)(?:/(\d+))?\*?pi(?:/(\d+))?$)");
  std::smatch m;
  if (std::regex_match(s, m, pi_form)) {
    if (m[3].matched && m[4].matched) throw DomainError("angle: two denominators in '" + s + "'");
    long num = to_long(m[2].str(), 1);
    const long den = m[3].matched ? to_long(m[3].str(), 1) : to_long(m[4].str(), 1);
    if (den == 0) throw DomainError("angle: zero denominator in '" + s + "'");
    if (m[1].str() == "-") num = -num;
    Angle a;
    if (num == 0) {
      a.radians = 0.0;
      return a;
    }
    const long g = std::gcd(num, den);
    PiFraction f{num / g, den / g};
    a.pi_fraction = f;
    a.radians = f.radians();
    return a;
  }

  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw DomainError("");
    return Angle{v, std::nullopt};
  } catch (const std::exception&) {
    throw DomainError("angle: cannot parse '" + std::string(text) + "' (use pi, a/b pi, pi/b or a decimal)");
  }
}

}  // namespace qst
