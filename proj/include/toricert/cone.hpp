#ifndef TORICERT_CONE_HPP
#define TORICERT_CONE_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include <toricert/bigint.hpp>
#include <toricert/error.hpp>
#include <toricert/int_matrix.hpp>

namespace toricert
{

/// Point of the lattice Z^2.
struct Point2 {
    BigInt x;
    BigInt y;

    friend Point2 operator+(const Point2 &a, const Point2 &b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(const Point2 &a, const Point2 &b) { return {a.x - b.x, a.y - b.y}; }
    friend Point2 operator*(const BigInt &k, const Point2 &a) { return {k * a.x, k * a.y}; }
    friend bool operator==(const Point2 &a, const Point2 &b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Point2 &a, const Point2 &b) { return !(a == b); }
    friend bool operator<(const Point2 &a, const Point2 &b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }
    friend std::ostream &operator<<(std::ostream &os, const Point2 &p) { return os << '(' << p.x << ',' << p.y << ')'; }
};

inline BigInt dot(const Point2 &a, const Point2 &b)
{
    return a.x * b.x + a.y * b.y;
}

inline BigInt det2(const Point2 &a, const Point2 &b)
{
    return a.x * b.y - a.y * b.x;
}

inline Point2 primitive(const Point2 &p)
{
    const BigInt g = gcd(p.x, p.y);
    if (g == 0) {
        throw std::invalid_argument("primitive: zero vector");
    }
    return {p.x / g, p.y / g};
}

// Image of m under m -> m * A (row vector times 2x2 matrix).
inline Point2 times(const Point2 &m, const IntMatrix &a)
{
    return {m.x * a(0, 0) + m.y * a(1, 0), m.x * a(0, 1) + m.y * a(1, 1)};
}

/// Primitive generators of the dual cone {m : <m, v1> >= 0, <m, v2> >= 0}.
/// The first ray pairs to zero with v2 and positively with v1; the second
/// pairs to zero with v1 and positively with v2.
inline std::array<Point2, 2> dual_cone_2d(const Point2 &v1, const Point2 &v2)
{
    if (det2(v1, v2) == 0) {
        throw std::invalid_argument("dual_cone_2d: vectors are linearly dependent");
    }
    Point2 w1{-v2.y, v2.x};
    if (dot(w1, v1) < 0) {
        w1 = BigInt(-1) * w1;
    }
    Point2 w2{-v1.y, v1.x};
    if (dot(w2, v2) < 0) {
        w2 = BigInt(-1) * w2;
    }
    return {primitive(w1), primitive(w2)};
}

/// Minimal generating set of the semigroup of lattice points of a strictly
/// convex cone in Z^2.
struct SemigroupBasis {
    std::array<Point2, 2> rays;
    // Sorted lexicographically.
    std::vector<Point2> generators;

    std::size_t size() const { return generators.size(); }

    // Cone membership by the signs of the two ray coordinates.
    bool contains(const Point2 &p) const
    {
        const BigInt d = det2(rays[0], rays[1]);
        const int s = d.sign();
        return s * det2(p, rays[1]).sign() >= 0 && s * det2(rays[0], p).sign() >= 0;
    }
};

namespace detail
{

inline std::array<Point2, 2> checked_rays(const Point2 &r1, const Point2 &r2)
{
    if ((r1.x == 0 && r1.y == 0) || (r2.x == 0 && r2.y == 0)) {
        throw std::invalid_argument("hilbert_basis_2d: zero ray");
    }
    if (det2(r1, r2) == 0) {
        // Equal directions give a ray, opposite directions a line; neither
        // is a two-dimensional strictly convex cone.
        throw std::invalid_argument("hilbert_basis_2d: rays are collinear (not a strictly convex 2D cone)");
    }
    return {primitive(r1), primitive(r2)};
}

} // namespace detail

/// Hilbert basis by enumeration of the half-open fundamental parallelogram
/// {l1 r1 + l2 r2 : 0 <= l1, l2 < 1} in ray coordinates.
///
/// For each j in 1..|D|-1 (D = det(r1, r2)) exactly one lattice point has
/// l2 = j/|D|; it is found on the line det(r1, x) = j*sgn(D), which r1
/// translates along. A nonzero parallelogram point is reducible iff another
/// one is dominated by it in both ray coordinates, so the minimal elements of
/// that partial order together with the two rays form the basis.
inline SemigroupBasis hilbert_basis_enumerate(const Point2 &ray1, const Point2 &ray2)
{
    const auto rays = detail::checked_rays(ray1, ray2);
    const Point2 &r1 = rays[0];
    const Point2 &r2 = rays[1];
    const BigInt dd = det2(r1, r2);
    const BigInt ad = abs(dd);
    const int sd = dd.sign();

    // w with det(r1, w) = 1.
    const auto [g, s, t] = ext_gcd(r1.x, r1.y);
    (void)g;
    const Point2 w{-t, s};

    struct Cand {
        BigInt i; // |D| * l1
        BigInt j; // |D| * l2
        Point2 p;
    };
    std::vector<Cand> cands;
    for (BigInt j = 1; j < ad; ++j) {
        const Point2 x0 = BigInt(sd) * j * w;
        const BigInt num = sd * det2(x0, r2);
        const BigInt shift = -floor_div(num, ad);
        Point2 x = x0 + shift * r1;
        BigInt i = sd * det2(x, r2);
        if (i < 0 || i >= ad || sd * det2(r1, x) != j) {
            throw internal_fault("hilbert_basis_enumerate: parallelogram point out of range");
        }
        cands.push_back({std::move(i), j, std::move(x)});
    }
    // Candidates arrive sorted by j; keep those whose i beats every earlier i.
    SemigroupBasis out{rays, {r1, r2}};
    bool have_min = false;
    BigInt min_i;
    for (auto &c : cands) {
        if (!have_min || c.i < min_i) {
            min_i = c.i;
            have_min = true;
            out.generators.push_back(std::move(c.p));
        }
    }
    std::sort(out.generators.begin(), out.generators.end());
    return out;
}

/// Hirzebruch-Jung continued fraction n/k = b_1 - 1/(b_2 - ...), 0 < k < n.
inline std::vector<BigInt> hirzebruch_jung(BigInt n, BigInt k)
{
    std::vector<BigInt> out;
    while (k > 0) {
        const BigInt b = floor_div(n + k - 1, k);
        out.push_back(b);
        const BigInt next_k = b * k - n;
        n = k;
        k = next_k;
    }
    return out;
}

/// Hilbert basis by the Hirzebruch-Jung recursion. A unimodular T moves the
/// cone to cone((0,1), (n,-k)) with 0 <= k < n; the basis there is
/// u_0 = (0,1), u_1 = (1,0), u_{i+1} = b_i u_i - u_{i-1}.
inline SemigroupBasis hilbert_basis_hj(const Point2 &ray1, const Point2 &ray2)
{
    const auto rays = detail::checked_rays(ray1, ray2);
    const Point2 &r1 = rays[0];
    const Point2 &r2 = rays[1];

    const auto [g, s, t] = ext_gcd(r1.x, r1.y);
    (void)g;
    // T r1 = (0, 1).
    IntMatrix tm{{0, 0}, {0, 0}};
    tm(0, 0) = -r1.y;
    tm(0, 1) = r1.x;
    tm(1, 0) = s;
    tm(1, 1) = t;
    auto apply = [](const IntMatrix &m, const Point2 &p) -> Point2 {
        return {m(0, 0) * p.x + m(0, 1) * p.y, m(1, 0) * p.x + m(1, 1) * p.y};
    };
    Point2 img2 = apply(tm, r2);
    if (img2.x < 0) {
        tm(0, 0) = -tm(0, 0);
        tm(0, 1) = -tm(0, 1);
        img2 = apply(tm, r2);
    }
    const BigInt n = img2.x;
    const BigInt k = mod_floor(-img2.y, n);
    // Shear (x, y) -> (x, y + m x) fixes (0, 1).
    const BigInt shear = (-k - img2.y) / n;
    IntMatrix sh{{1, 0}, {0, 1}};
    sh(1, 0) = shear;
    tm = sh * tm;
    const BigInt tdet = tm.det();
    if (abs(tdet) != 1 || apply(tm, r1) != Point2{0, 1} || apply(tm, r2) != Point2{n, -k}) {
        throw internal_fault("hilbert_basis_hj: normalization failed");
    }
    const IntMatrix tinv = tdet * adjugate(tm);

    std::vector<Point2> gens{{0, 1}, {1, 0}};
    for (const auto &b : hirzebruch_jung(n, k)) {
        const Point2 &prev = gens[gens.size() - 2];
        const Point2 &cur = gens.back();
        gens.push_back(b * cur - prev);
    }
    if (gens.back() != Point2{n, -k}) {
        throw internal_fault("hilbert_basis_hj: recursion did not end on the second ray");
    }
    SemigroupBasis out{rays, {}};
    for (const auto &p : gens) {
        out.generators.push_back(apply(tinv, p));
    }
    std::sort(out.generators.begin(), out.generators.end());
    return out;
}

/// Hilbert basis of a strictly convex 2D cone. The enumeration result is
/// returned; the Hirzebruch-Jung recursion must produce the same set.
inline SemigroupBasis hilbert_basis_2d(const Point2 &ray1, const Point2 &ray2)
{
    SemigroupBasis e = hilbert_basis_enumerate(ray1, ray2);
    const SemigroupBasis h = hilbert_basis_hj(ray1, ray2);
    if (e.generators != h.generators) {
        throw internal_fault("hilbert_basis_2d: enumeration and Hirzebruch-Jung bases disagree");
    }
    return e;
}

} // namespace toricert

#endif
