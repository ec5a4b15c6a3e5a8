#ifndef TORICERT_VALUATION_HPP
#define TORICERT_VALUATION_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <toricert/bigint.hpp>
#include <toricert/int_matrix.hpp>
#include <toricert/qfield.hpp>

namespace toricert
{

/// A value (i + j*tau)/N in Q + Q*tau for a fixed irrational tau.
///
/// Canonical: N > 0 and gcd(i, j, N) = 1; zero is (0, 0, 1). Since tau is
/// irrational the value is zero iff i = j = 0, and two values are rationally
/// dependent iff their (i, j) vectors are.
class ValueElement
{
public:
    ValueElement(BigInt i, BigInt j, BigInt n, QuadExt tau)
        : m_i(std::move(i)), m_j(std::move(j)), m_n(std::move(n)), m_tau(std::move(tau))
    {
        if (m_tau.is_rational()) {
            throw std::invalid_argument("ValueElement: tau must be irrational");
        }
        if (m_n == 0) {
            throw std::invalid_argument("ValueElement: zero denominator");
        }
        canonicalize();
    }

    static ValueElement integer(const BigInt &k, const QuadExt &tau) { return ValueElement(k, 0, 1, tau); }
    static ValueElement of_tau(const QuadExt &tau) { return ValueElement(0, 1, 1, tau); }

    const BigInt &i() const { return m_i; }
    const BigInt &j() const { return m_j; }
    const BigInt &denominator() const { return m_n; }
    const QuadExt &tau() const { return m_tau; }

    bool is_zero() const { return m_i == 0 && m_j == 0; }

    QuadExt to_quad() const
    {
        return (m_tau.lift(m_i) + m_j * m_tau) / m_tau.lift(m_n);
    }

    int sign() const { return to_quad().sign(); }

    // Coordinates in the Q-basis (1, tau).
    std::array<BigRational, 2> coords() const
    {
        return {BigRational(m_i, m_n), BigRational(m_j, m_n)};
    }

    ValueElement operator-() const { return ValueElement(-m_i, -m_j, m_n, m_tau); }

    friend ValueElement operator+(const ValueElement &a, const ValueElement &b)
    {
        same_tau(a, b);
        return ValueElement(a.m_i * b.m_n + b.m_i * a.m_n, a.m_j * b.m_n + b.m_j * a.m_n, a.m_n * b.m_n, a.m_tau);
    }
    friend ValueElement operator-(const ValueElement &a, const ValueElement &b) { return a + (-b); }
    friend ValueElement operator*(const BigInt &k, const ValueElement &a)
    {
        return ValueElement(k * a.m_i, k * a.m_j, a.m_n, a.m_tau);
    }
    ValueElement divided_by(const BigInt &k) const
    {
        if (k == 0) {
            throw std::domain_error("ValueElement: division by zero");
        }
        return ValueElement(m_i, m_j, m_n * k, m_tau);
    }

    friend bool operator==(const ValueElement &a, const ValueElement &b)
    {
        return a.m_i == b.m_i && a.m_j == b.m_j && a.m_n == b.m_n && a.m_tau == b.m_tau;
    }
    friend bool operator!=(const ValueElement &a, const ValueElement &b) { return !(a == b); }
    friend bool operator<(const ValueElement &a, const ValueElement &b) { return (a - b).sign() < 0; }
    friend bool operator>(const ValueElement &a, const ValueElement &b) { return b < a; }
    friend bool operator<=(const ValueElement &a, const ValueElement &b) { return !(b < a); }
    friend bool operator>=(const ValueElement &a, const ValueElement &b) { return !(a < b); }

    friend std::ostream &operator<<(std::ostream &os, const ValueElement &v)
    {
        const bool both = v.m_i != 0 && v.m_j != 0;
        if (both && v.m_n != 1) {
            os << '(';
        }
        if (v.m_j == 0) {
            os << v.m_i;
        } else {
            if (v.m_i != 0) {
                os << v.m_i << (v.m_j < 0 ? "-" : "+");
            } else if (v.m_j < 0) {
                os << '-';
            }
            if (abs(v.m_j) != 1) {
                os << abs(v.m_j);
            }
            os << "tau";
        }
        if (both && v.m_n != 1) {
            os << ')';
        }
        if (v.m_n != 1) {
            os << '/' << v.m_n;
        }
        return os;
    }

private:
    static void same_tau(const ValueElement &a, const ValueElement &b)
    {
        if (a.m_tau != b.m_tau) {
            throw std::domain_error("ValueElement: values over different tau");
        }
    }

    void canonicalize()
    {
        if (m_n < 0) {
            m_i = -m_i;
            m_j = -m_j;
            m_n = -m_n;
        }
        if (m_i == 0 && m_j == 0) {
            m_n = 1;
            return;
        }
        const BigInt g = gcd(gcd(m_i, m_j), m_n);
        if (g != 1) {
            m_i /= g;
            m_j /= g;
            m_n /= g;
        }
    }

    BigInt m_i, m_j, m_n;
    QuadExt m_tau;
};

// True iff no nonzero integer pair (m, n) has m*a = n*b.
inline bool rationally_independent(const ValueElement &a, const ValueElement &b)
{
    return a.i() * b.j() - a.j() * b.i() != 0;
}

/// Exponent pair (e_u, e_v) of a monomial u^e_u v^e_v.
struct Monomial2 {
    BigInt e_u;
    BigInt e_v;

    BigInt degree() const { return e_u + e_v; }

    friend bool operator==(const Monomial2 &a, const Monomial2 &b) { return a.e_u == b.e_u && a.e_v == b.e_v; }
    friend bool operator<(const Monomial2 &a, const Monomial2 &b)
    {
        return a.e_u < b.e_u || (a.e_u == b.e_u && a.e_v < b.e_v);
    }
};

/// The set of exponents carrying a nonzero coefficient. Coefficients
/// themselves are not stored: every value computed here depends only on which
/// of them are nonzero.
class MonomialSupport
{
public:
    MonomialSupport() = default;
    explicit MonomialSupport(std::vector<Monomial2> terms) : m_terms(std::move(terms))
    {
        for (const auto &t : m_terms) {
            if (t.e_u < 0 || t.e_v < 0) {
                throw std::invalid_argument("MonomialSupport: negative exponent");
            }
        }
        std::sort(m_terms.begin(), m_terms.end());
        if (std::adjacent_find(m_terms.begin(), m_terms.end()) != m_terms.end()) {
            throw std::invalid_argument("MonomialSupport: duplicate exponent pair");
        }
    }
    MonomialSupport(std::initializer_list<std::pair<long long, long long>> terms)
        : MonomialSupport(
              [&] {
                  std::vector<Monomial2> v;
                  for (auto [a, b] : terms) {
                      v.push_back({a, b});
                  }
                  return v;
              }())
    {
    }

    const std::vector<Monomial2> &terms() const { return m_terms; }
    bool empty() const { return m_terms.empty(); }
    std::size_t size() const { return m_terms.size(); }

    // Support of a product, before any cancellation.
    friend MonomialSupport minkowski_sum(const MonomialSupport &a, const MonomialSupport &b)
    {
        std::vector<Monomial2> out;
        for (const auto &x : a.m_terms) {
            for (const auto &y : b.m_terms) {
                out.push_back({x.e_u + y.e_u, x.e_v + y.e_v});
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return MonomialSupport(std::move(out));
    }

    // Support of a sum, before any cancellation.
    friend MonomialSupport support_union(const MonomialSupport &a, const MonomialSupport &b)
    {
        std::vector<Monomial2> out = a.m_terms;
        out.insert(out.end(), b.m_terms.begin(), b.m_terms.end());
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return MonomialSupport(std::move(out));
    }

private:
    std::vector<Monomial2> m_terms;
};

/// A monomial valuation in two variables with rationally independent
/// positive values on u and v. The constructor enforces independence, so the
/// minimum over any support is attained at exactly one exponent.
class MonomialValuation
{
public:
    MonomialValuation(ValueElement val_u, ValueElement val_v) : m_u(std::move(val_u)), m_v(std::move(val_v))
    {
        if (m_u.tau() != m_v.tau()) {
            throw std::invalid_argument("MonomialValuation: values over different tau");
        }
        if (m_u.sign() <= 0 || m_v.sign() <= 0) {
            throw std::invalid_argument("MonomialValuation: values must be positive");
        }
        if (!rationally_independent(m_u, m_v)) {
            throw std::invalid_argument("MonomialValuation: values are rationally dependent");
        }
    }

    const ValueElement &val_u() const { return m_u; }
    const ValueElement &val_v() const { return m_v; }
    const ValueElement &min_generator() const { return m_u < m_v ? m_u : m_v; }

    ValueElement value(const Monomial2 &m) const { return m.e_u * m_u + m.e_v * m_v; }

private:
    ValueElement m_u, m_v;
};

inline MonomialValuation make_valuation(const ValueElement &val_u, const ValueElement &val_v)
{
    return MonomialValuation(val_u, val_v);
}

inline ValueElement value_of(const MonomialValuation &val, const MonomialSupport &support)
{
    if (support.empty()) {
        throw std::invalid_argument("value_of: empty support");
    }
    const auto &terms = support.terms();
    ValueElement best = val.value(terms.front());
    for (std::size_t k = 1; k < terms.size(); ++k) {
        ValueElement v = val.value(terms[k]);
        if (v < best) {
            best = std::move(v);
        }
    }
    return best;
}

struct SeriesValue {
    ValueElement value;
    // Every monomial of total degree >= degree_bound has value > value.
    BigInt degree_bound;
    std::size_t terms_read = 0;
};

/// Value of a power series given as a stream of support exponents in
/// nondecreasing total degree. `next` returns std::nullopt at the end of the
/// stream; infinite streams are fine since reading stops as soon as the
/// running minimum is certified: a term of degree n has value at least
/// n * min(val_u, val_v).
template <typename Stream>
SeriesValue series_value(const MonomialValuation &val, Stream &&next)
{
    std::optional<Monomial2> term = next();
    if (!term) {
        throw std::invalid_argument("series_value: empty stream");
    }
    const ValueElement &step = val.min_generator();
    const QuadExt step_q = step.to_quad();
    auto needed_degree = [&](const ValueElement &cur) { return (cur.to_quad() / step_q).floor() + 1; };

    ValueElement cur = val.value(*term);
    BigInt last_degree = term->degree();
    std::size_t read = 1;
    for (;;) {
        const BigInt needed = needed_degree(cur);
        term = next();
        if (!term) {
            return {cur, needed, read};
        }
        const BigInt deg = term->degree();
        if (deg < last_degree) {
            throw std::invalid_argument("series_value: stream is not ordered by total degree");
        }
        if (deg >= needed) {
            return {cur, deg, read};
        }
        ++read;
        last_degree = deg;
        ValueElement v = val.value(*term);
        if (v < cur) {
            cur = std::move(v);
        }
    }
}

inline SeriesValue series_value(const MonomialValuation &val, std::span<const Monomial2> terms)
{
    std::size_t k = 0;
    return series_value(val, [&]() -> std::optional<Monomial2> {
        if (k == terms.size()) {
            return std::nullopt;
        }
        return terms[k++];
    });
}

struct GroupIndex {
    // Rows express the sub generators in the super generators.
    IntMatrix change_of_basis;
    BigInt index;
};

/// Index [Z super_1 + Z super_2 : Z sub_1 + Z sub_2], solved exactly in the
/// (1, tau) coordinates. Throws std::domain_error if a sub
/// generator is not an integer combination of the super generators.
inline GroupIndex group_index(const std::array<ValueElement, 2> &sub, const std::array<ValueElement, 2> &super)
{
    const auto s1 = super[0].coords();
    const auto s2 = super[1].coords();
    const BigRational det = s1[0] * s2[1] - s1[1] * s2[0];
    if (det == 0) {
        throw std::invalid_argument("group_index: super generators are rationally dependent");
    }
    IntMatrix m(2);
    for (std::size_t k = 0; k < 2; ++k) {
        const auto c = sub[k].coords();
        // c = alpha * s1 + beta * s2 (Cramer).
        const BigRational alpha = (c[0] * s2[1] - c[1] * s2[0]) / det;
        const BigRational beta = (s1[0] * c[1] - s1[1] * c[0]) / det;
        if (denominator(alpha) != 1 || denominator(beta) != 1) {
            throw std::domain_error("group_index: sub generator " + std::to_string(k + 1)
                                    + " is not an integer combination of the super generators");
        }
        m(k, 0) = numerator(alpha);
        m(k, 1) = numerator(beta);
    }
    BigInt idx = abs(m.det());
    if (idx == 0) {
        throw std::domain_error("group_index: sub generators are rationally dependent");
    }
    return {std::move(m), std::move(idx)};
}

} // namespace toricert

#endif
