#include "geuler/rational.hpp"

#include <cctype>

namespace geuler {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// The GMP string constructor takes "-5" but not "+5".
BigInt literal_to_int(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return BigInt{std::string(s)};
}

}  // namespace

Rat parse_rational(std::string_view text) {
  if (text.empty()) detail::bad_rational(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den)) detail::bad_rational(text);
    BigInt p = literal_to_int(num);
    BigInt q = literal_to_int(den);
    if (q == 0) detail::bad_rational(text);
    return Rat(p, q);  // two-argument constructor canonicalizes
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    bool neg = !whole.empty() && whole.front() == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole = neg ? "-0" : "0";
    if (!is_integer_literal(whole) || frac.empty() || !is_integer_literal(frac) ||
        frac.front() == '+' || frac.front() == '-')
      detail::bad_rational(text);
    BigInt scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    BigInt p = literal_to_int(whole) * scale;
    BigInt f = literal_to_int(frac);
    p += neg ? BigInt(-f) : f;
    return Rat(p, scale);
  }
  if (!is_integer_literal(text)) detail::bad_rational(text);
  return Rat(literal_to_int(text));
}

std::string format_rational(const Rat& value) {
  // mpq_rational keeps values canonical after arithmetic; normalize anyway so
  // freshly parsed values cannot leak a non-reduced form.
  Rat canon(numerator(value), denominator(value));
  if (denominator(canon) == 1) return numerator(canon).str();
  return numerator(canon).str() + "/" + denominator(canon).str();
}

BigInt rational_floor(const Rat& value) {
  BigInt q = numerator(value) / denominator(value);  // truncates toward zero
  if (value < 0 && q * denominator(value) != numerator(value)) --q;
  return q;
}

}  // namespace geuler
