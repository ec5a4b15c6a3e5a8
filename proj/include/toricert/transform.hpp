#ifndef TORICERT_TRANSFORM_HPP
#define TORICERT_TRANSFORM_HPP

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <toricert/bigint.hpp>
#include <toricert/error.hpp>
#include <toricert/int_matrix.hpp>
#include <toricert/qfield.hpp>
#include <toricert/valuation.hpp>

namespace toricert
{

enum class StepTag {
    // Second parameter had the larger value: y -> x y', row (a, b) -> (a + b, b).
    DivideFirstIntoSecond,
    // First parameter had the larger value: x -> x' y, row (a, b) -> (a, a + b).
    DivideSecondIntoFirst,
};

inline const char *to_string(StepTag t)
{
    return t == StepTag::DivideFirstIntoSecond ? "DivideFirstIntoSecond" : "DivideSecondIntoFirst";
}

/// Regular parameters (x, y) reached from (u, v) by quadratic transforms,
/// with u = x^A00 y^A01, v = x^A10 y^A11 up to units.
///
/// Invariants: A is nonnegative with no zero row, both parameter values are
/// positive, and A * (nu(x), nu(y)) = (nu(u), nu(v)).
class TransformState
{
public:
    TransformState(IntMatrix a, std::array<ValueElement, 2> params, std::vector<StepTag> log = {})
        : m_a(std::move(a)), m_params(std::move(params)), m_log(std::move(log))
    {
        if (m_a.size() != 2) {
            throw std::invalid_argument("TransformState: expected a 2x2 matrix");
        }
        if (!m_a.is_nonnegative()) {
            throw std::invalid_argument("TransformState: negative exponent");
        }
        for (std::size_t i = 0; i < 2; ++i) {
            if (m_a(i, 0) == 0 && m_a(i, 1) == 0) {
                throw std::invalid_argument("TransformState: zero row");
            }
        }
        if (m_params[0].sign() <= 0 || m_params[1].sign() <= 0) {
            throw std::invalid_argument("TransformState: parameter values must be positive");
        }
        if (!rationally_independent(m_params[0], m_params[1])) {
            throw std::invalid_argument("TransformState: parameter values are rationally dependent");
        }
    }

    const IntMatrix &matrix() const { return m_a; }
    const std::array<ValueElement, 2> &param_values() const { return m_params; }
    const std::vector<StepTag> &step_log() const { return m_log; }
    std::size_t step_index() const { return m_log.size(); }
    BigInt det() const { return m_a.det(); }

    // (nu(u), nu(v)) recomputed from A and the parameter values.
    std::array<ValueElement, 2> below_values() const
    {
        return {m_a(0, 0) * m_params[0] + m_a(0, 1) * m_params[1], m_a(1, 0) * m_params[0] + m_a(1, 1) * m_params[1]};
    }

private:
    IntMatrix m_a;
    std::array<ValueElement, 2> m_params;
    std::vector<StepTag> m_log;
};

/// Start state whose parameter values solve A * (nu(x), nu(y)) = (nu(u), nu(v)).
inline TransformState initial_state(const IntMatrix &a, const ValueElement &nu_u, const ValueElement &nu_v)
{
    if (a.size() != 2) {
        throw std::invalid_argument("initial_state: expected a 2x2 matrix");
    }
    const BigInt d = a.det();
    if (d == 0) {
        throw std::invalid_argument("initial_state: singular exponent matrix");
    }
    const IntMatrix adj = adjugate(a);
    ValueElement x = (adj(0, 0) * nu_u + adj(0, 1) * nu_v).divided_by(d);
    ValueElement y = (adj(1, 0) * nu_u + adj(1, 1) * nu_v).divided_by(d);
    return TransformState(a, {std::move(x), std::move(y)});
}

/// One quadratic transform along the valuation: the parameter with the
/// larger value is replaced by its quotient by the other.
inline TransformState quadratic_step(const TransformState &state)
{
    const auto &[vx, vy] = state.param_values();
    const int cmp = (vx - vy).sign();
    if (cmp == 0) {
        throw internal_fault("quadratic_step: equal parameter values");
    }
    IntMatrix a = state.matrix();
    std::vector<StepTag> log = state.step_log();
    std::array<ValueElement, 2> params = state.param_values();
    if (cmp < 0) {
        for (std::size_t i = 0; i < 2; ++i) {
            a(i, 0) += a(i, 1);
        }
        params[1] = vy - vx;
        log.push_back(StepTag::DivideFirstIntoSecond);
    } else {
        for (std::size_t i = 0; i < 2; ++i) {
            a(i, 1) += a(i, 0);
        }
        params[0] = vx - vy;
        log.push_back(StepTag::DivideSecondIntoFirst);
    }
    return TransformState(std::move(a), std::move(params), std::move(log));
}

inline std::vector<TransformState> run_sequence(const TransformState &initial, std::size_t steps)
{
    std::vector<TransformState> out;
    out.reserve(steps + 1);
    out.push_back(initial);
    for (std::size_t k = 0; k < steps; ++k) {
        out.push_back(quadratic_step(out.back()));
    }
    return out;
}

// Run lengths of consecutive equal tags.
inline std::vector<std::size_t> run_lengths(const std::vector<StepTag> &log)
{
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < log.size(); ++k) {
        if (k == 0 || log[k] != log[k - 1]) {
            out.push_back(1);
        } else {
            ++out.back();
        }
    }
    return out;
}

struct ConvergentParameters {
    // [[g_p, g_{p-1}], [f_p, f_{p-1}]]
    IntMatrix matrix;
    // f_{p-1} g_p - f_p g_{p-1}, always +-1.
    int epsilon = 0;
    QuadExt value_u1;
    QuadExt value_v1;
};

/// Parameters u1, v1 with u = u1^g_p v1^g_{p-1}, v = u1^f_p v1^f_{p-1},
/// where f/g are the convergents of x = nu(v)/nu(u). Values are normalized by
/// nu(u) = 1: eps*nu(u1) = f_{p-1} - g_{p-1} x and eps*nu(v1) = g_p x - f_p,
/// and both are certified positive.
inline ConvergentParameters convergent_parameters(const QuadExt &x, std::size_t p)
{
    if (p == 0) {
        throw std::invalid_argument("convergent_parameters: p must be >= 1");
    }
    const auto conv = convergents(x, p + 1);
    const Convergent &cur = conv[p];
    const Convergent &prev = conv[p - 1];
    const BigInt eps = prev.f * cur.g - cur.f * prev.g;
    if (eps != 1 && eps != -1) {
        throw internal_fault("convergent_parameters: consecutive convergents are not unimodular");
    }
    IntMatrix m(2);
    m(0, 0) = cur.g;
    m(0, 1) = prev.g;
    m(1, 0) = cur.f;
    m(1, 1) = prev.f;

    const QuadExt e = x.lift(eps);
    QuadExt vu1 = (x.lift(prev.f) - prev.g * x) / e;
    QuadExt vv1 = (cur.g * x - x.lift(cur.f)) / e;
    if (vu1.sign() <= 0 || vv1.sign() <= 0) {
        throw internal_fault("convergent_parameters: nonpositive parameter value at p = " + std::to_string(p));
    }
    return {std::move(m), eps == 1 ? 1 : -1, std::move(vu1), std::move(vv1)};
}

} // namespace toricert

#endif
