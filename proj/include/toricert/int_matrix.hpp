#ifndef TORICERT_INT_MATRIX_HPP
#define TORICERT_INT_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include <toricert/bigint.hpp>

namespace toricert
{

// Square matrix of big integers, row-major.
class IntMatrix
{
public:
    IntMatrix() = default;
    explicit IntMatrix(std::size_t n) : m_n(n), m_a(n * n) {}
    IntMatrix(std::size_t n, std::vector<BigInt> entries) : m_n(n), m_a(std::move(entries))
    {
        if (m_a.size() != n * n) {
            throw std::invalid_argument("IntMatrix: expected " + std::to_string(n * n) + " entries, got "
                                        + std::to_string(m_a.size()));
        }
    }
    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) : m_n(rows.size())
    {
        m_a.reserve(m_n * m_n);
        for (const auto &row : rows) {
            if (row.size() != m_n) {
                throw std::invalid_argument("IntMatrix: ragged initializer");
            }
            for (auto v : row) {
                m_a.emplace_back(v);
            }
        }
    }

    static IntMatrix identity(std::size_t n)
    {
        IntMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1;
        }
        return m;
    }

    std::size_t size() const { return m_n; }
    BigInt &operator()(std::size_t i, std::size_t j) { return m_a[i * m_n + j]; }
    const BigInt &operator()(std::size_t i, std::size_t j) const { return m_a[i * m_n + j]; }
    const std::vector<BigInt> &entries() const { return m_a; }

    std::vector<BigInt> row(std::size_t i) const
    {
        return {m_a.begin() + static_cast<std::ptrdiff_t>(i * m_n), m_a.begin() + static_cast<std::ptrdiff_t>((i + 1) * m_n)};
    }
    std::vector<BigInt> column(std::size_t j) const
    {
        std::vector<BigInt> c;
        c.reserve(m_n);
        for (std::size_t i = 0; i < m_n; ++i) {
            c.push_back((*this)(i, j));
        }
        return c;
    }

    IntMatrix transpose() const
    {
        IntMatrix t(m_n);
        for (std::size_t i = 0; i < m_n; ++i) {
            for (std::size_t j = 0; j < m_n; ++j) {
                t(j, i) = (*this)(i, j);
            }
        }
        return t;
    }

    bool is_diagonal() const
    {
        for (std::size_t i = 0; i < m_n; ++i) {
            for (std::size_t j = 0; j < m_n; ++j) {
                if (i != j && (*this)(i, j) != 0) {
                    return false;
                }
            }
        }
        return true;
    }

    bool is_nonnegative() const
    {
        for (const auto &x : m_a) {
            if (x < 0) {
                return false;
            }
        }
        return true;
    }

    // Fraction-free Bareiss elimination.
    BigInt det() const
    {
        if (m_n == 0) {
            return 1;
        }
        std::vector<BigInt> a = m_a;
        auto at = [&](std::size_t i, std::size_t j) -> BigInt & { return a[i * m_n + j]; };
        int s = 1;
        BigInt prev = 1;
        for (std::size_t k = 0; k + 1 < m_n; ++k) {
            if (at(k, k) == 0) {
                std::size_t p = k + 1;
                while (p < m_n && at(p, k) == 0) {
                    ++p;
                }
                if (p == m_n) {
                    return 0;
                }
                for (std::size_t j = 0; j < m_n; ++j) {
                    std::swap(at(k, j), at(p, j));
                }
                s = -s;
            }
            for (std::size_t i = k + 1; i < m_n; ++i) {
                for (std::size_t j = k + 1; j < m_n; ++j) {
                    at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
                }
            }
            prev = at(k, k);
        }
        return s * at(m_n - 1, m_n - 1);
    }

    // Matrix with row i and column j deleted.
    IntMatrix minor_matrix(std::size_t i, std::size_t j) const
    {
        IntMatrix m(m_n - 1);
        for (std::size_t r = 0, rr = 0; r < m_n; ++r) {
            if (r == i) {
                continue;
            }
            for (std::size_t c = 0, cc = 0; c < m_n; ++c) {
                if (c == j) {
                    continue;
                }
                m(rr, cc++) = (*this)(r, c);
            }
            ++rr;
        }
        return m;
    }

    friend IntMatrix operator*(const IntMatrix &x, const IntMatrix &y)
    {
        if (x.m_n != y.m_n) {
            throw std::invalid_argument("IntMatrix: dimension mismatch");
        }
        IntMatrix z(x.m_n);
        for (std::size_t i = 0; i < x.m_n; ++i) {
            for (std::size_t k = 0; k < x.m_n; ++k) {
                if (x(i, k) == 0) {
                    continue;
                }
                for (std::size_t j = 0; j < x.m_n; ++j) {
                    z(i, j) += x(i, k) * y(k, j);
                }
            }
        }
        return z;
    }

    friend IntMatrix operator*(const BigInt &k, const IntMatrix &x)
    {
        IntMatrix z = x;
        for (auto &v : z.m_a) {
            v *= k;
        }
        return z;
    }

    friend bool operator==(const IntMatrix &x, const IntMatrix &y)
    {
        return x.m_n == y.m_n && x.m_a == y.m_a;
    }
    friend bool operator!=(const IntMatrix &x, const IntMatrix &y) { return !(x == y); }

    friend std::ostream &operator<<(std::ostream &os, const IntMatrix &m)
    {
        os << '[';
        for (std::size_t i = 0; i < m.m_n; ++i) {
            os << (i ? ",[" : "[");
            for (std::size_t j = 0; j < m.m_n; ++j) {
                os << (j ? "," : "") << m(i, j);
            }
            os << ']';
        }
        return os << ']';
    }

private:
    std::size_t m_n = 0;
    std::vector<BigInt> m_a;
};

// Row vector times matrix.
inline std::vector<BigInt> row_times(const std::vector<BigInt> &v, const IntMatrix &m)
{
    if (v.size() != m.size()) {
        throw std::invalid_argument("row_times: dimension mismatch");
    }
    std::vector<BigInt> out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            out[j] += v[i] * m(i, j);
        }
    }
    return out;
}

// A * adj(A) = det(A) * I.
inline IntMatrix adjugate(const IntMatrix &a)
{
    const std::size_t n = a.size();
    IntMatrix adj(n);
    if (n == 1) {
        adj(0, 0) = 1;
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const BigInt c = a.minor_matrix(i, j).det();
            adj(j, i) = ((i + j) % 2 == 0) ? c : BigInt(-c);
        }
    }
    return adj;
}

} // namespace toricert

#endif
