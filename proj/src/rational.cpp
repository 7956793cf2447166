#include "coblab/rational.hpp"

#include <stdexcept>
#include <vector>

namespace coblab {

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) {
    throw std::invalid_argument("not a rational: '" + text + "'");
  }
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

Rational inverse_factorial(int n) {
  if (n < 0) throw std::invalid_argument("inverse_factorial of a negative number");
  static const std::vector<Rational> table = [] {
    std::vector<Rational> t{Rational(1)};
    for (long k = 1; k <= 64; ++k) t.push_back(t.back() / Rational(k));
    return t;
  }();
  if (n < static_cast<int>(table.size())) return table[n];
  Rational q = table.back();
  for (long k = static_cast<long>(table.size()); k <= n; ++k) q /= Rational(k);
  return q;
}

}  // namespace coblab
