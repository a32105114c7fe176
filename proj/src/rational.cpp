#include "senslab/rational.hpp"

#include <stdexcept>
#include <string>

#include "senslab/errors.hpp"

namespace senslab {

Rational parse_rational(std::string_view text) {
  const auto fail = [&] { return InvalidArgument("malformed rational '" + std::string(text) + "'"); };
  const auto parse_int = [&](std::string_view s) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(std::string(s), &used);
    } catch (const std::exception&) {
      throw fail();
    }
    if (used != s.size()) throw fail();
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) throw fail();
  return Rational(parse_int(text.substr(0, slash)), den);
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace senslab
