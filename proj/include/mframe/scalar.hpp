/**
 * Scalar types shared by the exact and floating-point pipelines.
 *
 * Every computation runs over one scalar type from start to finish: either
 * GMP-backed rationals (exact mode) or doubles (float mode).
 */
#ifndef MFRAME_SCALAR_HPP
#define MFRAME_SCALAR_HPP

#include <cmath>
#include <string>
#include <string_view>
#include <type_traits>

#include <boost/multiprecision/gmp.hpp>

namespace mframe {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

enum class Arithmetic { Exact, Float };

template <typename T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

template <typename T>
concept Scalar = std::is_same_v<T, Rational> || std::is_same_v<T, double>;

/// Relative singular-value cutoff used by float-mode rank decisions.
inline constexpr double kRankTolerance = 1e-10;

/// Largest principal angle (radians) accepted when float mode compares subspaces.
inline constexpr double kAngleTolerance = 1e-7;

template <Scalar T>
T scalar_from(const Rational& r)
{
    if constexpr (is_exact_v<T>)
        return r;
    else
        return r.convert_to<double>();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(double x) { return x; }

inline Rational abs_value(const Rational& r) { return boost::multiprecision::abs(r); }
inline double abs_value(double x) { return std::abs(x); }

/**
 * Parse a decimal (`-1.25`, `3`, `2.5e-3`) or fraction (`p/q`) literal into an
 * exact rational. Throws std::invalid_argument on malformed input.
 */
Rational parse_rational(std::string_view text);

/// `p/q`, or `p` when the denominator is one.
std::string format_rational(const Rational& r);

/// Four significant digits, as used for diagram annotations.
std::string format_short(double x);

/// Round-trippable representation of a double.
std::string format_double(double x);

inline std::string format_scalar(const Rational& r) { return format_rational(r); }
inline std::string format_scalar(double x) { return format_double(x); }

} // namespace mframe

#endif
