#include "hecke/laurent.hpp"

#include <cctype>
#include <sstream>

namespace hecke {

std::string Laurent::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [d, c] : coeffs_) {
    Rational a = c;
    if (first) {
      if (a.num() < 0) { os << "-"; a = -a; }
    } else {
      os << (a.num() < 0 ? " - " : " + ");
      if (a.num() < 0) a = -a;
    }
    if (d == 0) {
      os << a.str();
    } else {
      if (!(a == Rational(1))) os << a.str();
      os << "v";
      if (d != 1) os << "^" << d;
    }
    first = false;
  }
  return os.str();
}

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;
  void skip_ws() { while (i < s.size() && std::isspace((unsigned char)s[i])) ++i; }
  bool done() { skip_ws(); return i >= s.size(); }
  char peek() { skip_ws(); return i < s.size() ? s[i] : '\0'; }
};

long long parse_int(Cursor& c) {
  c.skip_ws();
  bool neg = false;
  if (c.peek() == '+' || c.peek() == '-') neg = (c.s[c.i++] == '-');
  c.skip_ws();
  if (c.i >= c.s.size() || !std::isdigit((unsigned char)c.s[c.i]))
    throw std::invalid_argument("Laurent::parse: expected integer in '" + c.s + "'");
  long long n = 0;
  while (c.i < c.s.size() && std::isdigit((unsigned char)c.s[c.i]))
    n = n * 10 + (c.s[c.i++] - '0');
  return neg ? -n : n;
}

}  // namespace

Laurent Laurent::parse(const std::string& text) {
  Laurent p;
  Cursor c{text};
  bool first = true;
  while (!c.done()) {
    int sign = 1;
    char ch = c.peek();
    if (ch == '+' || ch == '-') {
      sign = (ch == '-') ? -1 : 1;
      ++c.i;
    } else if (!first) {
      throw std::invalid_argument("Laurent::parse: expected '+'/'-' in '" + text + "'");
    }
    first = false;
    c.skip_ws();
    Rational coeff(1);
    bool have_coeff = false;
    if (c.i < c.s.size() && std::isdigit((unsigned char)c.s[c.i])) {
      long long num = parse_int(c);
      long long den = 1;
      if (c.peek() == '/') { ++c.i; den = parse_int(c); }
      coeff = Rational(num, den);
      have_coeff = true;
    }
    int deg = 0;
    c.skip_ws();
    if (c.i < c.s.size() && (c.s[c.i] == 'v' || c.s[c.i] == 'V')) {
      ++c.i;
      deg = 1;
      if (c.peek() == '^') { ++c.i; deg = (int)parse_int(c); }
    } else if (!have_coeff) {
      throw std::invalid_argument("Laurent::parse: dangling sign in '" + text + "'");
    }
    if (sign < 0) coeff = -coeff;
    p.add_term(deg, coeff);
  }
  return p;
}

}  // namespace hecke
