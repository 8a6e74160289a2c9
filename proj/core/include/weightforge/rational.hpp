#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace weightforge {

// Exact rational scalar. GMP keeps values canonical (gcd 1, denominator > 0),
// which is also the form used by the "p/q" text serialization.
using Rat = mpq_class;

// Parses "p/q" or "n" with an optional leading minus. Rejects a zero
// denominator and any other malformed input.
std::optional<Rat> rat_parse(const std::string& text);

// Like rat_parse but throws std::invalid_argument with the offending text.
Rat rat_checked(const std::string& text);

// "p/q" when the denominator is not 1, plain "n" otherwise.
std::string rat_str(const Rat& x);

inline int rat_sign(const Rat& x) { return sgn(x); }

}  // namespace weightforge
