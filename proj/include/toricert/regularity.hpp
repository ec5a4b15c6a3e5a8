#ifndef TORICERT_REGULARITY_HPP
#define TORICERT_REGULARITY_HPP

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

namespace toricert
{

/// Verdict on the normal ring lying below a regular ring with parameters
/// related by the exponent matrix A (rows: exponents of u, v).
struct Regularity {
    bool regular = false;
    // Hilbert basis size of the invariant semigroup; 2 iff regular.
    std::size_t embedding_dim = 0;
    // det of the primitive column vectors of A.
    BigInt primitive_det;
    // Invariant semigroup {m : m A >= 0} in the (u, v) exponent lattice.
    SemigroupBasis basis;
    // The same generators as exponents of the parameters above, m -> m A.
    std::vector<Point2> invariant_exponents;
};

/// The invariant ring of Z^2/A Z^2 acting on k[[x, y]] is spanned by the
/// monomials x^e with e in N^2 and e in the row lattice of A; pulled back by
/// m -> m A this is the lattice-point semigroup of the cone dual to the
/// columns of A. Regular iff the primitive column vectors form a lattice
/// basis, and the Hilbert basis must then have exactly two elements.
inline Regularity below_ring_regularity(const IntMatrix &a)
{
    if (a.size() != 2) {
        throw std::invalid_argument("below_ring_regularity: expected a 2x2 matrix");
    }
    if (a.det() == 0) {
        throw std::invalid_argument("below_ring_regularity: singular exponent matrix");
    }
    const Point2 c1 = primitive({a(0, 0), a(1, 0)});
    const Point2 c2 = primitive({a(0, 1), a(1, 1)});

    Regularity out;
    out.primitive_det = det2(c1, c2);
    const bool det_says_regular = abs(out.primitive_det) == 1;

    const auto rays = dual_cone_2d(c1, c2);
    out.basis = hilbert_basis_2d(rays[0], rays[1]);
    out.embedding_dim = out.basis.size();
    for (const auto &m : out.basis.generators) {
        Point2 e = times(m, a);
        if (e.x < 0 || e.y < 0) {
            throw internal_fault("below_ring_regularity: invariant generator with negative exponent");
        }
        out.invariant_exponents.push_back(std::move(e));
    }
    std::sort(out.invariant_exponents.begin(), out.invariant_exponents.end());

    if (det_says_regular != (out.embedding_dim == 2)) {
        throw internal_fault("below_ring_regularity: determinant test and Hilbert basis size disagree");
    }
    out.regular = det_says_regular;
    return out;
}

/// Exponent-level certificate that prod_j x_j^{b_ij} = y_i^d (times a unit)
/// with B = adj(A) and d = det A > 0 after reindexing the y's.
struct AdjugateCertificate {
    BigInt d;
    // Column order applied to A so that det > 0.
    std::vector<std::size_t> column_order;
    IntMatrix reindexed;
    IntMatrix adj;
    // Row i is the y-exponent vector of prod_j x_j^{b_ij}; equals d e_i.
    std::vector<std::vector<BigInt>> images;
    // Each y_i^d lies in the monomial image of the ring below, so every
    // parameter above has a power there and sqrt(m_R S) = m_S.
    bool radical_certified = false;
};

// First row i of B with (B A)_i != d e_i, if any.
inline std::optional<std::size_t> adjugate_identity_failure(const IntMatrix &a, const IntMatrix &b, const BigInt &d)
{
    const IntMatrix prod = b * a;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (prod(i, j) != (i == j ? d : BigInt(0))) {
                return i;
            }
        }
    }
    return std::nullopt;
}

inline AdjugateCertificate adjugate_power_identity(const IntMatrix &a)
{
    const std::size_t n = a.size();
    if (n == 0) {
        throw std::invalid_argument("adjugate_power_identity: empty matrix");
    }
    AdjugateCertificate cert;
    cert.column_order.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        cert.column_order[j] = j;
    }
    cert.reindexed = a;
    BigInt d = a.det();
    if (d == 0) {
        throw std::invalid_argument("adjugate_power_identity: det(A) = 0");
    }
    if (d < 0 && n >= 2) {
        std::swap(cert.column_order[0], cert.column_order[1]);
        for (std::size_t i = 0; i < n; ++i) {
            std::swap(cert.reindexed(i, 0), cert.reindexed(i, 1));
        }
        d = -d;
    }
    cert.d = d;
    cert.adj = adjugate(cert.reindexed);
    if (const auto bad = adjugate_identity_failure(cert.reindexed, cert.adj, d)) {
        throw internal_fault("adjugate_power_identity: row " + std::to_string(*bad + 1) + " fails adj(A) A = d I");
    }
    bool in_semigroup = true;
    for (std::size_t i = 0; i < n; ++i) {
        auto img = row_times(cert.adj.row(i), cert.reindexed);
        for (const auto &e : img) {
            in_semigroup = in_semigroup && e >= 0;
        }
        cert.images.push_back(std::move(img));
    }
    cert.radical_certified = in_semigroup;
    return cert;
}

} // namespace toricert

#endif
