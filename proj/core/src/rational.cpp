#include "weightforge/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace weightforge {

namespace {

bool all_digits(const std::string& s, size_t from, size_t to) {
  if (from >= to) return false;
  for (size_t i = from; i < to; ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

std::optional<Rat> rat_parse(const std::string& text) {
  size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  size_t slash = text.find('/');
  if (slash == std::string::npos) {
    if (!all_digits(text, i, text.size())) return std::nullopt;
  } else {
    if (!all_digits(text, i, slash)) return std::nullopt;
    if (!all_digits(text, slash + 1, text.size())) return std::nullopt;
  }
  mpz_class num(text.substr(0, slash == std::string::npos ? text.size() : slash));
  mpz_class den = 1;
  if (slash != std::string::npos) den = mpz_class(text.substr(slash + 1));
  if (den == 0) return std::nullopt;
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat rat_checked(const std::string& text) {
  auto r = rat_parse(text);
  if (!r) throw std::invalid_argument("malformed rational literal: \"" + text + "\"");
  return *r;
}

std::string rat_str(const Rat& x) { return x.get_str(); }

}  // namespace weightforge
