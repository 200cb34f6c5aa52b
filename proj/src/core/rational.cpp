#include "core/rational.hpp"

#include "core/errors.hpp"

namespace stodom {

Rational rat(long num, long den) {
  if (den == 0) throw InputError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw InputError("empty rational literal");
  for (char c : text) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+'))
      throw InputError("malformed rational literal: " + text);
  }
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw InputError("malformed rational literal: " + text);
  if (q.get_den() == 0) throw InputError("rational with zero denominator: " + text);
  q.canonicalize();
  return q;
}

std::string rational_str(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double rational_double(const Rational& q) { return q.get_d(); }

Rational rational_pow(const Rational& base, unsigned exp) {
  Rational acc(1);
  Rational b = base;
  while (exp > 0) {
    if (exp & 1u) acc *= b;
    b *= b;
    exp >>= 1u;
  }
  return acc;
}

}  // namespace stodom
