#ifndef TORICERT_QUOTIENT_HPP
#define TORICERT_QUOTIENT_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <toricert/bigint.hpp>
#include <toricert/cone.hpp>
#include <toricert/error.hpp>
#include <toricert/int_matrix.hpp>
#include <toricert/regularity.hpp>

namespace toricert
{

/// Characteristic of the coefficient field: 0 or a prime.
struct Characteristic {
    BigInt value = 0;

    bool is_zero() const { return value == 0; }
    // True when n is invertible in the field.
    bool is_unit(const BigInt &n) const { return is_zero() ? n != 0 : n % value != 0; }
};

inline Characteristic make_characteristic(const BigInt &c)
{
    if (c != 0 && !is_prime(c)) {
        throw config_error("characteristic must be 0 or a prime, got " + to_string(c));
    }
    return Characteristic{c};
}

/// Z/order acting on k[[x, y]] by x -> w^a x, y -> w^b y.
class DiagonalAction
{
public:
    DiagonalAction(BigInt order, BigInt a, BigInt b) : m_order(std::move(order)), m_a(std::move(a)), m_b(std::move(b))
    {
        if (!is_prime(m_order)) {
            throw config_error("DiagonalAction: order must be prime, got " + to_string(m_order));
        }
        if (m_a < 0 || m_a >= m_order || m_b < 0 || m_b >= m_order) {
            throw config_error("DiagonalAction: weights must lie in [0, order)");
        }
        if (m_a == 0 && m_b == 0) {
            throw config_error("DiagonalAction: weights (0, 0) do not act faithfully");
        }
    }

    const BigInt &order() const { return m_order; }
    const BigInt &a() const { return m_a; }
    const BigInt &b() const { return m_b; }

    bool is_invariant(const Point2 &e) const { return (m_a * e.x + m_b * e.y) % m_order == 0; }

    friend bool operator==(const DiagonalAction &, const DiagonalAction &) = default;

private:
    BigInt m_order, m_a, m_b;
};

/// A monomial c * x^e.x * y^e.y.
struct Term {
    BigInt coefficient;
    Point2 exponent;

    friend bool operator==(const Term &a, const Term &b)
    {
        return a.coefficient == b.coefficient && a.exponent == b.exponent;
    }
    friend bool operator<(const Term &a, const Term &b)
    {
        return a.exponent < b.exponent || (a.exponent == b.exponent && a.coefficient < b.coefficient);
    }
};

using MonomialSet = std::vector<Term>;

struct InvariantGenerators {
    // Sorted by exponent; coefficients are 1.
    MonomialSet full;
    MonomialSet minimal;
};

namespace detail
{

inline MonomialSet to_terms(std::vector<Point2> pts)
{
    std::sort(pts.begin(), pts.end());
    MonomialSet out;
    for (auto &p : pts) {
        out.push_back({1, std::move(p)});
    }
    return out;
}

// Minimal generators of the invariant monomials of total degree <= bound,
// by direct enumeration.
inline std::vector<Point2> enumerate_irreducible_invariants(const DiagonalAction &g, const BigInt &bound)
{
    std::vector<Point2> inv;
    for (BigInt i = 0; i <= bound; ++i) {
        for (BigInt j = 0; i + j <= bound; ++j) {
            if ((i != 0 || j != 0) && g.is_invariant({i, j})) {
                inv.push_back({i, j});
            }
        }
    }
    std::vector<Point2> out;
    for (const auto &e : inv) {
        bool reducible = false;
        for (const auto &f : inv) {
            if (f != e && f.x <= e.x && f.y <= e.y) {
                reducible = true;
                break;
            }
        }
        if (!reducible) {
            out.push_back(e);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

// The unique j in (0, p) with b j = a i mod p; needs a, b != 0.
inline BigInt invariant_partner(const DiagonalAction &g, const BigInt &i)
{
    return mod_floor(g.a() * i * mod_inverse(g.b(), g.order()), g.order());
}

/// Monomial generators of k[[x, y]]^G. For a, b != 0 the full set is x^p,
/// y^p and x^(p-i) y^(j_i) for 1 <= i < p; the minimal set drops those that
/// are products of others. Completeness is confirmed against a brute-force
/// enumeration of invariant monomials up to degree 2p.
inline InvariantGenerators invariant_generators(const DiagonalAction &g)
{
    const BigInt &p = g.order();
    std::vector<Point2> full;
    if (g.a() == 0) {
        full = {{1, 0}, {0, p}};
    } else if (g.b() == 0) {
        full = {{p, 0}, {0, 1}};
    } else {
        full = {{p, 0}, {0, p}};
        for (BigInt i = 1; i < p; ++i) {
            full.push_back({p - i, invariant_partner(g, i)});
        }
    }
    // The full set generates every invariant, so e is redundant iff some
    // other generator divides it.
    std::vector<Point2> minimal;
    for (const auto &e : full) {
        bool redundant = false;
        for (const auto &f : full) {
            if (f != e && f.x <= e.x && f.y <= e.y) {
                redundant = true;
                break;
            }
        }
        if (!redundant) {
            minimal.push_back(e);
        }
    }
    std::sort(minimal.begin(), minimal.end());
    if (detail::enumerate_irreducible_invariants(g, 2 * p) != minimal) {
        throw internal_fault("invariant_generators: formula disagrees with enumeration up to degree 2p");
    }
    return {detail::to_terms(std::move(full)), detail::to_terms(std::move(minimal))};
}

/// 2x2 minor of the Jacobian rows of two monomials: again a monomial,
/// (a1 b2 - a2 b1) x^(a1+a2-1) y^(b1+b2-1), or zero.
inline std::optional<Term> jacobian_minor(const Point2 &m1, const Point2 &m2)
{
    const BigInt c = m1.x * m2.y - m2.x * m1.y;
    if (c == 0) {
        return std::nullopt;
    }
    return Term{c, {m1.x + m2.x - 1, m1.y + m2.y - 1}};
}

struct RamificationCertificate {
    // The two displayed minors: p y^(p-1+j_{p-1}) and p x^(2p-1-i_1).
    Term y_witness;
    Term x_witness;
    BigInt j_last;
    BigInt i_one;
    // Every nonzero minor of the full generator list, sorted.
    MonomialSet minors;
    // All minors lie in (x, y) and the witnesses have unit coefficients, so
    // the radical of the minor ideal is (x, y).
    bool radical_is_maximal = false;
};

inline RamificationCertificate ramification_minors(const DiagonalAction &g, const Characteristic &ch = {})
{
    if (g.a() == 0 || g.b() == 0) {
        throw std::invalid_argument("ramification_minors: needs both weights nonzero");
    }
    const BigInt &p = g.order();
    if (!ch.is_unit(p)) {
        throw config_error("ramification_minors: characteristic divides the group order");
    }
    RamificationCertificate cert;
    cert.j_last = invariant_partner(g, p - 1);
    std::optional<BigInt> i1;
    for (BigInt i = 1; i < p; ++i) {
        if (invariant_partner(g, i) == 1) {
            i1 = i;
            break;
        }
    }
    if (!i1) {
        throw internal_fault("ramification_minors: no invariant of the form x^(p-i) y");
    }
    cert.i_one = *i1;

    const Point2 y_p{0, p}, x_p{p, 0};
    const Point2 xy_last{1, cert.j_last};
    const Point2 x_y{p - cert.i_one, 1};
    const auto wy = jacobian_minor(xy_last, y_p);
    const auto wx = jacobian_minor(x_p, x_y);
    if (!wy || !wx) {
        throw internal_fault("ramification_minors: witness minor vanished");
    }
    cert.y_witness = *wy;
    cert.x_witness = *wx;
    if (cert.y_witness != Term{p, {0, p - 1 + cert.j_last}} || cert.x_witness != Term{p, {2 * p - 1 - cert.i_one, 0}}) {
        throw internal_fault("ramification_minors: witness minors do not have the expected form");
    }

    const auto gens = invariant_generators(g).full;
    bool in_max = true;
    for (std::size_t s = 0; s < gens.size(); ++s) {
        for (std::size_t t = s + 1; t < gens.size(); ++t) {
            if (auto m = jacobian_minor(gens[s].exponent, gens[t].exponent)) {
                in_max = in_max && (m->exponent.x + m->exponent.y > 0);
                cert.minors.push_back(std::move(*m));
            }
        }
    }
    std::sort(cert.minors.begin(), cert.minors.end());
    cert.radical_is_maximal = in_max && ch.is_unit(cert.y_witness.coefficient) && ch.is_unit(cert.x_witness.coefficient);
    return cert;
}

/// Exponent matrix whose row lattice is the lattice of invariant exponents:
/// rows (1, j), (0, p) with a + b j = 0 mod p when b != 0, else (p, 0), (0, 1).
inline IntMatrix exponent_matrix(const DiagonalAction &g)
{
    const BigInt &p = g.order();
    IntMatrix m(2);
    if (g.b() == 0) {
        m(0, 0) = p;
        m(1, 1) = 1;
    } else {
        m(0, 0) = 1;
        m(0, 1) = mod_floor(-g.a() * mod_inverse(g.b(), p), p);
        m(1, 1) = p;
    }
    return m;
}

/// Action of Z^2/A Z^2 (|det A| prime) on the parameters above: the
/// character pairing with c is given by the rows of d A^-1 = sgn(det) adj(A);
/// c = e1, or e2 when e1 acts trivially, generates the group.
inline DiagonalAction action_from_matrix(const IntMatrix &a)
{
    if (a.size() != 2) {
        throw std::invalid_argument("action_from_matrix: expected a 2x2 matrix");
    }
    const BigInt det = a.det();
    const BigInt d = abs(det);
    if (!is_prime(d)) {
        throw std::invalid_argument("action_from_matrix: |det| must be prime, got " + to_string(d));
    }
    const IntMatrix b = BigInt(det.sign()) * adjugate(a);
    for (std::size_t c = 0; c < 2; ++c) {
        BigInt wa = mod_floor(b(0, c), d);
        BigInt wb = mod_floor(b(1, c), d);
        if (wa != 0 || wb != 0) {
            return DiagonalAction(d, std::move(wa), std::move(wb));
        }
    }
    throw internal_fault("action_from_matrix: both characters trivial");
}

/// Order of the algebraic fundamental group of the punctured spectrum of
/// the invariant ring: 1 when the ring is regular (a weight vanishes), else
/// the group order. Cross-checked against the toric regularity verdict of the
/// associated exponent matrix.
inline BigInt pi1_order(const DiagonalAction &g)
{
    const bool regular = g.a() == 0 || g.b() == 0;
    const Regularity r = below_ring_regularity(exponent_matrix(g));
    if (r.regular != regular) {
        throw internal_fault("pi1_order: weight test and toric regularity disagree");
    }
    return regular ? BigInt(1) : g.order();
}

} // namespace toricert

#endif
