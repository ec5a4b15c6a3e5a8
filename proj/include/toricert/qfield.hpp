#ifndef TORICERT_QFIELD_HPP
#define TORICERT_QFIELD_HPP

#include <cmath>
#include <cstddef>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <toricert/bigint.hpp>

namespace toricert
{

/// An element (s + t*sqrt(d)) / r of the real quadratic field Q(sqrt(d)).
///
/// Values are kept canonical: r > 0 and gcd(s, t, r) = 1. A value with t = 0
/// is rational and may be combined with values over any d; two irrational
/// operands over different d are rejected. Ordering is exact: sign() never
/// goes through floating point.
class QuadExt
{
public:
    QuadExt(BigInt s, BigInt t, BigInt r, BigInt d) : m_s(std::move(s)), m_t(std::move(t)), m_r(std::move(r)), m_d(std::move(d))
    {
        if (m_d < 2 || !is_squarefree(m_d)) {
            throw std::invalid_argument("QuadExt: d must be a squarefree integer >= 2, got " + to_string(m_d));
        }
        if (m_r == 0) {
            throw std::invalid_argument("QuadExt: zero denominator");
        }
        canonicalize();
    }

    static QuadExt rational(const BigInt &num, const BigInt &den, const BigInt &d)
    {
        return QuadExt(num, 0, den, d);
    }
    static QuadExt integer(const BigInt &n, const BigInt &d)
    {
        return QuadExt(n, 0, 1, d);
    }

    // An integer in the same field as *this, skipping the squarefree check.
    QuadExt lift(const BigInt &n) const
    {
        return QuadExt(n, 0, 1, m_d, canonical_tag{});
    }

    const BigInt &s() const { return m_s; }
    const BigInt &t() const { return m_t; }
    const BigInt &r() const { return m_r; }
    const BigInt &d() const { return m_d; }

    bool is_rational() const { return m_t == 0; }
    bool is_zero() const { return m_s == 0 && m_t == 0; }

    // Exact sign: compare s against -t*sqrt(d) through s^2 versus t^2 d.
    int sign() const
    {
        const int ss = m_s.sign();
        const int ts = m_t.sign();
        if (ts == 0) {
            return ss;
        }
        if (ss == 0 || ss == ts) {
            return ts;
        }
        // Opposite signs; d is not a square so s^2 != t^2 d.
        return m_s * m_s > m_t * m_t * m_d ? ss : ts;
    }

    QuadExt conjugate() const
    {
        return QuadExt(m_s, -m_t, m_r, m_d, canonical_tag{});
    }

    // Field norm x * conj(x), a rational number.
    BigRational norm() const
    {
        return BigRational(m_s * m_s - m_t * m_t * m_d, m_r * m_r);
    }

    // Exact floor. floor((s + t sqrt d)/r) = floor(floor(s + t sqrt d)/r)
    // for r > 0; the inner floor is an integer square root. The result is
    // confirmed by two sign tests.
    BigInt floor() const
    {
        BigInt inner;
        if (m_t >= 0) {
            inner = m_s + isqrt(m_t * m_t * m_d);
        } else {
            // t^2 d is not a perfect square, so ceil = isqrt + 1.
            inner = m_s - (isqrt(m_t * m_t * m_d) + 1);
        }
        BigInt fl = floor_div(inner, m_r);
        const QuadExt lo = *this - lift(fl);
        const QuadExt hi = lift(fl + 1) - *this;
        if (lo.sign() < 0 || hi.sign() <= 0) {
            throw std::logic_error("QuadExt::floor: sign certification failed");
        }
        return fl;
    }

    long double to_long_double() const
    {
        return (static_cast<long double>(m_s) + static_cast<long double>(m_t) * std::sqrt(static_cast<long double>(m_d)))
               / static_cast<long double>(m_r);
    }

    QuadExt operator-() const
    {
        return QuadExt(-m_s, -m_t, m_r, m_d, canonical_tag{});
    }

    friend QuadExt operator+(const QuadExt &a, const QuadExt &b)
    {
        const BigInt d = common_d(a, b);
        return QuadExt(a.m_s * b.m_r + b.m_s * a.m_r, a.m_t * b.m_r + b.m_t * a.m_r, a.m_r * b.m_r, d, trusted_tag{});
    }
    friend QuadExt operator-(const QuadExt &a, const QuadExt &b)
    {
        return a + (-b);
    }
    friend QuadExt operator*(const QuadExt &a, const QuadExt &b)
    {
        const BigInt d = common_d(a, b);
        return QuadExt(a.m_s * b.m_s + a.m_t * b.m_t * d, a.m_s * b.m_t + a.m_t * b.m_s, a.m_r * b.m_r, d, trusted_tag{});
    }
    friend QuadExt operator/(const QuadExt &a, const QuadExt &b)
    {
        if (b.is_zero()) {
            throw std::domain_error("QuadExt: division by zero");
        }
        const BigInt d = common_d(a, b);
        // 1/b = r (s - t sqrt d) / (s^2 - t^2 d)
        const BigInt n = b.m_s * b.m_s - b.m_t * b.m_t * d;
        const QuadExt inv(b.m_r * b.m_s, -b.m_r * b.m_t, n, d, trusted_tag{});
        return a * inv;
    }
    QuadExt &operator+=(const QuadExt &o) { return *this = *this + o; }
    QuadExt &operator-=(const QuadExt &o) { return *this = *this - o; }
    QuadExt &operator*=(const QuadExt &o) { return *this = *this * o; }
    QuadExt &operator/=(const QuadExt &o) { return *this = *this / o; }

    friend QuadExt operator*(const BigInt &k, const QuadExt &x)
    {
        return QuadExt(k * x.m_s, k * x.m_t, x.m_r, x.m_d, trusted_tag{});
    }

    // Rationals compare equal across d; irrationals need the same d.
    friend bool operator==(const QuadExt &a, const QuadExt &b)
    {
        if (a.m_t == 0 && b.m_t == 0) {
            return a.m_s == b.m_s && a.m_r == b.m_r;
        }
        return a.m_s == b.m_s && a.m_t == b.m_t && a.m_r == b.m_r && a.m_d == b.m_d;
    }
    friend bool operator!=(const QuadExt &a, const QuadExt &b) { return !(a == b); }
    friend bool operator<(const QuadExt &a, const QuadExt &b) { return (a - b).sign() < 0; }
    friend bool operator>(const QuadExt &a, const QuadExt &b) { return b < a; }
    friend bool operator<=(const QuadExt &a, const QuadExt &b) { return !(b < a); }
    friend bool operator>=(const QuadExt &a, const QuadExt &b) { return !(a < b); }

    std::string str() const
    {
        std::ostringstream os;
        os << *this;
        return os.str();
    }

    friend std::ostream &operator<<(std::ostream &os, const QuadExt &x)
    {
        const bool paren = x.m_r != 1 && x.m_t != 0 && x.m_s != 0;
        if (paren) {
            os << '(';
        }
        if (x.m_t == 0) {
            os << x.m_s;
        } else {
            if (x.m_s != 0) {
                os << x.m_s << (x.m_t < 0 ? "-" : "+");
            } else if (x.m_t < 0) {
                os << '-';
            }
            const BigInt at = abs(x.m_t);
            if (at != 1) {
                os << at << '*';
            }
            os << "sqrt(" << x.m_d << ')';
        }
        if (paren) {
            os << ')';
        }
        if (x.m_r != 1) {
            os << '/' << x.m_r;
        }
        return os;
    }

private:
    struct canonical_tag {
    };
    struct trusted_tag {
    };

    // Already canonical.
    QuadExt(BigInt s, BigInt t, BigInt r, BigInt d, canonical_tag)
        : m_s(std::move(s)), m_t(std::move(t)), m_r(std::move(r)), m_d(std::move(d))
    {
    }
    // d already validated; needs canonicalization.
    QuadExt(BigInt s, BigInt t, BigInt r, BigInt d, trusted_tag)
        : m_s(std::move(s)), m_t(std::move(t)), m_r(std::move(r)), m_d(std::move(d))
    {
        canonicalize();
    }

    static BigInt common_d(const QuadExt &a, const QuadExt &b)
    {
        if (a.m_t == 0) {
            return b.m_d;
        }
        if (b.m_t == 0 || a.m_d == b.m_d) {
            return a.m_d;
        }
        throw std::domain_error("QuadExt: mixed quadratic fields sqrt(" + to_string(a.m_d) + ") and sqrt("
                                + to_string(b.m_d) + ")");
    }

    void canonicalize()
    {
        if (m_r < 0) {
            m_s = -m_s;
            m_t = -m_t;
            m_r = -m_r;
        }
        if (m_s == 0 && m_t == 0) {
            m_r = 1;
            return;
        }
        const BigInt g = gcd(gcd(m_s, m_t), m_r);
        if (g != 1) {
            m_s /= g;
            m_t /= g;
            m_r /= g;
        }
    }

    BigInt m_s, m_t, m_r, m_d;
};

inline int sign(const QuadExt &x)
{
    return x.sign();
}

/// One convergent f/g of a continued fraction, with its index.
struct Convergent {
    BigInt f;
    BigInt g;
    std::size_t index = 0;

    friend bool operator==(const Convergent &, const Convergent &) = default;
};

/// The positive root of t^2 = a t + a, i.e. the value of the periodic
/// continued fraction [a; 1, a, 1, ...].
inline QuadExt tau_from_a(const BigInt &a)
{
    if (a < 1) {
        throw std::invalid_argument("tau_from_a: a must be >= 1, got " + to_string(a));
    }
    // disc = a^2 + 4a = f^2 * d with d squarefree.
    BigInt disc = a * a + 4 * a;
    BigInt f = 1;
    for (BigInt k = 2; k * k <= disc; ++k) {
        while (disc % (k * k) == 0) {
            disc /= k * k;
            f *= k;
        }
    }
    QuadExt tau(a, f, 2, disc);
    const QuadExt ak = tau.lift(a);
    if (!(tau * tau - ak * tau - ak).is_zero() || !(tau > ak)) {
        throw std::logic_error("tau_from_a: root check failed");
    }
    return tau;
}

/// Partial quotients of x by the floor-and-invert loop in exact arithmetic.
inline std::vector<BigInt> partial_quotients(QuadExt x, std::size_t count)
{
    if (x.is_rational()) {
        throw std::invalid_argument("partial_quotients: rational input");
    }
    std::vector<BigInt> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const BigInt a = x.floor();
        out.push_back(a);
        x = x.lift(1) / (x - x.lift(a));
    }
    return out;
}

/// The first `count` convergents f_p/g_p of an irrational x > 0.
inline std::vector<Convergent> convergents(const QuadExt &x, std::size_t count)
{
    if (x.is_rational()) {
        throw std::invalid_argument("convergents: input is rational");
    }
    if (x.sign() <= 0) {
        throw std::invalid_argument("convergents: input must be positive");
    }
    const auto pq = partial_quotients(x, count);
    std::vector<Convergent> out;
    out.reserve(count);
    BigInt f_prev = 1, f_prev2 = 0, g_prev = 0, g_prev2 = 1;
    for (std::size_t k = 0; k < count; ++k) {
        BigInt f = pq[k] * f_prev + f_prev2;
        BigInt g = pq[k] * g_prev + g_prev2;
        f_prev2 = f_prev;
        g_prev2 = g_prev;
        f_prev = f;
        g_prev = g;
        out.push_back(Convergent{std::move(f), std::move(g), k});
    }
    return out;
}

} // namespace toricert

#endif
