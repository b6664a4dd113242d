#include "mframe/scalar.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace mframe {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

Integer parse_integer(std::string_view s)
{
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+'))
    {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s))
        throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
    const auto first = s.find_first_not_of('0');
    Integer value{first == std::string_view::npos ? std::string("0") : std::string(s.substr(first))};
    return negative ? Integer(-value) : value;
}

Rational parse_decimal(std::string_view text)
{
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+'))
    {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    long exponent = 0;
    if (auto epos = s.find_first_of("eE"); epos != std::string_view::npos)
    {
        std::string_view exp_part = s.substr(epos + 1);
        s = s.substr(0, epos);
        Integer e = parse_integer(exp_part);
        if (abs(e) > 4096)
            throw std::invalid_argument("exponent out of range in '" + std::string(text) + "'");
        exponent = e.convert_to<long>();
    }

    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos)
    {
        std::string_view whole = s.substr(0, dot);
        std::string_view frac = s.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
            (!frac.empty() && !all_digits(frac)))
            throw std::invalid_argument("malformed number '" + std::string(text) + "'");
        digits = std::string(whole) + std::string(frac);
        exponent -= static_cast<long>(frac.size());
    }
    else
    {
        if (!all_digits(s))
            throw std::invalid_argument("malformed number '" + std::string(text) + "'");
        digits = std::string(s);
    }

    // a leading zero would make the integer parser read octal
    const auto first = digits.find_first_not_of('0');
    digits = first == std::string::npos ? "0" : digits.substr(first);
    Rational value{Integer(digits)};
    Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(std::labs(exponent)));
    if (exponent >= 0)
        value *= scale;
    else
        value /= scale;
    return negative ? Rational(-value) : value;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    if (text.empty())
        throw std::invalid_argument("empty number");
    if (auto slash = text.find('/'); slash != std::string_view::npos)
    {
        Integer num = parse_integer(text.substr(0, slash));
        std::string_view den_text = text.substr(slash + 1);
        if (!all_digits(den_text))
            throw std::invalid_argument("malformed fraction '" + std::string(text) + "'");
        Integer den(std::string{den_text});
        if (den == 0)
            throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    }
    return parse_decimal(text);
}

std::string format_rational(const Rational& r)
{
    return r.str();
}

std::string format_short(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", x == 0.0 ? 0.0 : x);
    return buf;
}

std::string format_double(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x == 0.0 ? 0.0 : x);
    return buf;
}

} // namespace mframe
