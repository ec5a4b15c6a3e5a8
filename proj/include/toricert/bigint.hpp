#ifndef TORICERT_BIGINT_HPP
#define TORICERT_BIGINT_HPP

#include <array>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace toricert
{

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline BigInt abs(const BigInt &x)
{
    return x < 0 ? BigInt(-x) : x;
}

inline int sgn(const BigInt &x)
{
    return x.sign();
}

inline BigInt gcd(const BigInt &a, const BigInt &b)
{
    return boost::multiprecision::gcd(abs(a), abs(b));
}

inline BigInt lcm(const BigInt &a, const BigInt &b)
{
    if (a == 0 || b == 0) {
        return 0;
    }
    return abs(a / gcd(a, b) * b);
}

// Floor division, rounding toward negative infinity.
inline BigInt floor_div(const BigInt &a, const BigInt &b)
{
    if (b == 0) {
        throw std::domain_error("floor_div: division by zero");
    }
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

// Remainder in [0, |m|).
inline BigInt mod_floor(const BigInt &a, const BigInt &m)
{
    BigInt r = a % m;
    if (r < 0) {
        r += abs(m);
    }
    return r;
}

// floor(sqrt(n)) for n >= 0.
inline BigInt isqrt(const BigInt &n)
{
    if (n < 0) {
        throw std::domain_error("isqrt of a negative integer");
    }
    return boost::multiprecision::sqrt(n);
}

inline bool is_perfect_square(const BigInt &n)
{
    if (n < 0) {
        return false;
    }
    const BigInt r = isqrt(n);
    return r * r == n;
}

inline bool is_prime(const BigInt &n)
{
    if (n < 2) {
        return false;
    }
    for (BigInt k = 2; k * k <= n; ++k) {
        if (n % k == 0) {
            return false;
        }
    }
    return true;
}

inline bool is_squarefree(const BigInt &n)
{
    if (n < 1) {
        return false;
    }
    BigInt m = n;
    for (BigInt k = 2; k * k <= m; ++k) {
        if (m % k == 0) {
            m /= k;
            if (m % k == 0) {
                return false;
            }
        }
    }
    return true;
}

// Bezout coefficients: returns {g, x, y} with a*x + b*y = g = gcd(a, b) >= 0.
inline std::array<BigInt, 3> ext_gcd(const BigInt &a, const BigInt &b)
{
    BigInt old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        const BigInt q = old_r / r;
        BigInt tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return {old_r, old_s, old_t};
}

// Inverse of a modulo m (m > 1, gcd(a, m) = 1), in [0, m).
inline BigInt mod_inverse(const BigInt &a, const BigInt &m)
{
    const auto [g, x, y] = ext_gcd(mod_floor(a, m), m);
    (void)y;
    if (g != 1) {
        throw std::domain_error("mod_inverse: not invertible");
    }
    return mod_floor(x, m);
}

inline std::string to_string(const BigInt &x)
{
    return x.str();
}

inline bool fits_int64(const BigInt &x)
{
    return x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max();
}

} // namespace toricert

#endif
