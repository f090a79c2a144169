#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ssmax {

using Rational = boost::rational<std::int64_t>;

/// Parses "7", "-2", "3/4" or a finite decimal such as "0.75" exactly.
/// Returns nullopt on malformed input or overflow.
std::optional<Rational> parse_rational(std::string_view text);

/// Exact sum and product; throw CapabilityError when the result does not fit
/// in 64-bit numerator and denominator.
Rational checked_add(const Rational& a, const Rational& b);
Rational checked_mul(const Rational& a, const Rational& b);

/// "3" for integers, "3/4" otherwise.
std::string format_fraction(const Rational& value);

/// Terminating decimals print as decimals ("0.75"), everything else as a fraction.
std::string format_decimal(const Rational& value);

}  // namespace ssmax
