#ifndef TORICERT_SMITH_HPP
#define TORICERT_SMITH_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <toricert/bigint.hpp>
#include <toricert/int_matrix.hpp>

namespace toricert
{

/// U * A * V = D with U, V unimodular and D = diag(d_1, ..., d_n),
/// d_i >= 0 and d_1 | d_2 | ... | d_n.
struct SmithForm {
    IntMatrix u;
    IntMatrix d;
    IntMatrix v;

    std::vector<BigInt> diagonal() const
    {
        std::vector<BigInt> out;
        for (std::size_t i = 0; i < d.size(); ++i) {
            out.push_back(d(i, i));
        }
        return out;
    }

    // Invariant factors of Z^n / A Z^n, dropping the trivial ones. A zero
    // factor stands for a free summand Z.
    std::vector<BigInt> torsion() const
    {
        std::vector<BigInt> out;
        for (auto &x : diagonal()) {
            if (x != 1) {
                out.push_back(x);
            }
        }
        return out;
    }

    // "Z/11", "Z/2 + Z/4", "Z" for a zero factor, "0" for the trivial group.
    std::string quotient_string() const
    {
        const auto t = torsion();
        if (t.empty()) {
            return "0";
        }
        std::string s;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i) {
                s += " + ";
            }
            s += t[i] == 0 ? std::string("Z") : "Z/" + to_string(t[i]);
        }
        return s;
    }
};

namespace detail
{

inline void swap_rows(IntMatrix &m, std::size_t a, std::size_t b)
{
    if (a == b) {
        return;
    }
    for (std::size_t j = 0; j < m.size(); ++j) {
        std::swap(m(a, j), m(b, j));
    }
}

inline void swap_cols(IntMatrix &m, std::size_t a, std::size_t b)
{
    if (a == b) {
        return;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
        std::swap(m(i, a), m(i, b));
    }
}

// row_dst += k * row_src
inline void add_row(IntMatrix &m, std::size_t dst, std::size_t src, const BigInt &k)
{
    for (std::size_t j = 0; j < m.size(); ++j) {
        m(dst, j) += k * m(src, j);
    }
}

inline void add_col(IntMatrix &m, std::size_t dst, std::size_t src, const BigInt &k)
{
    for (std::size_t i = 0; i < m.size(); ++i) {
        m(i, dst) += k * m(i, src);
    }
}

inline void negate_row(IntMatrix &m, std::size_t r)
{
    for (std::size_t j = 0; j < m.size(); ++j) {
        m(r, j) = -m(r, j);
    }
}

} // namespace detail

inline SmithForm smith_normal_form(const IntMatrix &a)
{
    using namespace detail;
    const std::size_t n = a.size();
    IntMatrix d = a;
    IntMatrix u = IntMatrix::identity(n);
    IntMatrix v = IntMatrix::identity(n);

    for (std::size_t k = 0; k < n; ++k) {
        for (;;) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            std::size_t pi = n, pj = n;
            for (std::size_t i = k; i < n; ++i) {
                for (std::size_t j = k; j < n; ++j) {
                    if (d(i, j) != 0 && (pi == n || abs(d(i, j)) < abs(d(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
                }
            }
            if (pi == n) {
                break;
            }
            swap_rows(d, k, pi);
            swap_rows(u, k, pi);
            swap_cols(d, k, pj);
            swap_cols(v, k, pj);

            bool clean = true;
            for (std::size_t i = k + 1; i < n; ++i) {
                if (d(i, k) != 0) {
                    const BigInt q = floor_div(d(i, k), d(k, k));
                    add_row(d, i, k, -q);
                    add_row(u, i, k, -q);
                    clean = clean && d(i, k) == 0;
                }
            }
            for (std::size_t j = k + 1; j < n; ++j) {
                if (d(k, j) != 0) {
                    const BigInt q = floor_div(d(k, j), d(k, k));
                    add_col(d, j, k, -q);
                    add_col(v, j, k, -q);
                    clean = clean && d(k, j) == 0;
                }
            }
            if (!clean) {
                continue;
            }
            // Pivot must divide the rest of the block; otherwise fold the
            // offending row in and reduce again.
            std::size_t bad = n;
            for (std::size_t i = k + 1; i < n && bad == n; ++i) {
                for (std::size_t j = k + 1; j < n; ++j) {
                    if (d(i, j) % d(k, k) != 0) {
                        bad = i;
                        break;
                    }
                }
            }
            if (bad == n) {
                break;
            }
            add_row(d, k, bad, 1);
            add_row(u, k, bad, 1);
        }
        if (d(k, k) < 0) {
            negate_row(d, k);
            negate_row(u, k);
        }
    }
    return {std::move(u), std::move(d), std::move(v)};
}

} // namespace toricert

#endif
