#include "ssmax/rational.hpp"

#include "ssmax/errors.hpp"

#include <charconv>
#include <limits>
#include <numeric>

namespace ssmax {

namespace {

std::optional<std::int64_t> parse_integer(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::int64_t out = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    return out;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
    try {
        if (auto slash = text.find('/'); slash != std::string_view::npos) {
            auto num = parse_integer(text.substr(0, slash));
            auto den = parse_integer(text.substr(slash + 1));
            if (!num || !den || *den == 0) return std::nullopt;
            return Rational(*num, *den);
        }
        if (auto dot = text.find('.'); dot != std::string_view::npos) {
            std::string_view whole = text.substr(0, dot);
            std::string_view frac = text.substr(dot + 1);
            if (frac.empty() || frac.size() > 17) return std::nullopt;
            for (char c : frac)
                if (c < '0' || c > '9') return std::nullopt;
            bool negative = !whole.empty() && whole.front() == '-';
            std::int64_t integral = 0;
            if (!whole.empty() && whole != "-" && whole != "+") {
                auto parsed = parse_integer(whole);
                if (!parsed) return std::nullopt;
                integral = *parsed;
            }
            std::int64_t den = 1;
            for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
            auto num = parse_integer(frac);
            if (!num) return std::nullopt;
            if (integral > std::numeric_limits<std::int64_t>::max() / den) return std::nullopt;
            std::int64_t magnitude = (integral < 0 ? -integral : integral) * den + *num;
            return Rational(negative ? -magnitude : magnitude, den);
        }
        auto value = parse_integer(text);
        if (!value) return std::nullopt;
        return Rational(*value);
    } catch (const boost::bad_rational&) {
        return std::nullopt;
    }
}

namespace {

std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw CapabilityError("exact arithmetic overflow");
    return out;
}

std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) throw CapabilityError("exact arithmetic overflow");
    return out;
}

}  // namespace

Rational checked_add(const Rational& a, const Rational& b) {
    const std::int64_t g = std::gcd(a.denominator(), b.denominator());
    const std::int64_t da = a.denominator() / g;
    const std::int64_t db = b.denominator() / g;
    return Rational(add(mul(a.numerator(), db), mul(b.numerator(), da)), mul(da, b.denominator()));
}

Rational checked_mul(const Rational& a, const Rational& b) {
    const std::int64_t g1 = std::gcd(a.numerator(), b.denominator());
    const std::int64_t g2 = std::gcd(b.numerator(), a.denominator());
    return Rational(mul(a.numerator() / g1, b.numerator() / g2), mul(a.denominator() / g2, b.denominator() / g1));
}

std::string format_fraction(const Rational& value) {
    if (value.denominator() == 1) return std::to_string(value.numerator());
    return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

std::string format_decimal(const Rational& value) {
    std::int64_t den = value.denominator();
    if (den == 1) return std::to_string(value.numerator());
    int twos = 0;
    int fives = 0;
    while (den % 2 == 0) { den /= 2; ++twos; }
    while (den % 5 == 0) { den /= 5; ++fives; }
    if (den != 1) return format_fraction(value);
    const int digits = twos > fives ? twos : fives;
    if (digits > 17) return format_fraction(value);

    std::int64_t scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    // numerator * (scale / denominator) is exact by construction
    const std::int64_t scaled = value.numerator() * (scale / value.denominator());
    const bool negative = scaled < 0;
    const std::int64_t magnitude = negative ? -scaled : scaled;
    std::string frac = std::to_string(magnitude % scale);
    frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
    return (negative ? "-" : "") + std::to_string(magnitude / scale) + "." + frac;
}

}  // namespace ssmax
