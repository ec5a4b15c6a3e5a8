#include <gtest/gtest.h>

#include <toricert/transform.hpp>

#include "oracles.hpp"

using namespace toricert;

namespace
{

const QuadExt tau11 = tau_from_a(7);
const ValueElement nu_u = ValueElement::of_tau(tau11);
const ValueElement nu_v = ValueElement::integer(1, tau11);

} // namespace

TEST(Transform, FirstBranchStepsByHand)
{
    const auto states = run_sequence(initial_state(IntMatrix{{7, 9}, {2, 1}}, nu_u, nu_v), 8);
    EXPECT_EQ(states[0].param_values()[0], ValueElement(9, -1, 11, tau11));
    EXPECT_EQ(states[0].param_values()[1], ValueElement(-7, 2, 11, tau11));
    EXPECT_EQ(states[1].matrix(), (IntMatrix{{16, 9}, {3, 1}}));
    EXPECT_EQ(states[1].step_log().back(), StepTag::DivideFirstIntoSecond);
    EXPECT_EQ(states[7].matrix(), (IntMatrix{{70, 9}, {9, 1}}));
    EXPECT_EQ(states[8].matrix(), (IntMatrix{{70, 79}, {9, 10}}));
    EXPECT_EQ(states[8].step_log().back(), StepTag::DivideSecondIntoFirst);
    for (const auto &s : states) {
        EXPECT_EQ(s.det(), -11);
    }
}

TEST(Transform, RejectsInvalidStates)
{
    EXPECT_THROW(TransformState(IntMatrix{{1, -1}, {0, 1}}, {nu_u, nu_v}), std::invalid_argument);
    EXPECT_THROW(TransformState(IntMatrix{{0, 0}, {0, 1}}, {nu_u, nu_v}), std::invalid_argument);
    EXPECT_THROW(TransformState(IntMatrix{{1, 0}, {0, 1}}, {-nu_u, nu_v}), std::invalid_argument);
    EXPECT_THROW(TransformState(IntMatrix{{1, 0}, {0, 1}}, {nu_v, BigInt(3) * nu_v}), std::invalid_argument);
    EXPECT_THROW(initial_state(IntMatrix{{1, 2}, {2, 4}}, nu_u, nu_v), std::invalid_argument);
}

TEST(Transform, RunLengthsFollowPartialQuotients)
{
    for (long long a = 1; a <= 12; ++a) {
        const QuadExt tau = tau_from_a(a);
        const auto states = run_sequence(
            initial_state(IntMatrix::identity(2), ValueElement::of_tau(tau), ValueElement::integer(1, tau)), 60);
        const auto runs = run_lengths(states.back().step_log());
        const auto pq = oracle::decimal_partial_quotients(oracle::tau_decimal(a), runs.size());
        for (std::size_t k = 0; k + 1 < runs.size(); ++k) {
            EXPECT_EQ(static_cast<long long>(runs[k]), pq[k]) << "a=" << a << " run " << k;
        }
        EXPECT_LE(static_cast<long long>(runs.back()), pq.back());
    }
}

// At the end of every run the columns of A are consecutive convergents.
TEST(Transform, RunEndsCarryConvergentColumns)
{
    const auto states = run_sequence(initial_state(IntMatrix::identity(2), nu_u, nu_v), 40);
    const auto pq = oracle::decimal_partial_quotients(oracle::tau_decimal(7), 12);
    // f/g recurrence seeded with (1, 0) and (0, 1).
    std::vector<std::pair<BigInt, BigInt>> fg{{0, 1}, {1, 0}};
    for (auto a : pq) {
        const auto &p1 = fg[fg.size() - 1];
        const auto &p2 = fg[fg.size() - 2];
        fg.push_back({a * p1.first + p2.first, a * p1.second + p2.second});
    }
    std::size_t end = 0;
    for (std::size_t r = 0; r < 5; ++r) {
        end += static_cast<std::size_t>(pq[r]);
        const IntMatrix &m = states[end].matrix();
        const std::pair<BigInt, BigInt> c0{m(0, 0), m(1, 0)}, c1{m(0, 1), m(1, 1)};
        const auto &older = fg[r + 1];
        const auto &newer = fg[r + 2];
        EXPECT_TRUE((c0 == older && c1 == newer) || (c0 == newer && c1 == older)) << "run " << r;
    }
}

TEST(TransformProperty, InvariantsAlongRandomSequences)
{
    oracle::Gen gen(9001);
    int checked = 0;
    while (checked < 200) {
        const IntMatrix a = gen.matrix(2, 0, 9);
        if (a.det() == 0 || (a(0, 0) == 0 && a(0, 1) == 0) || (a(1, 0) == 0 && a(1, 1) == 0)) {
            continue;
        }
        const QuadExt tau = tau_from_a(gen.uniform(1, 30));
        const ValueElement u(gen.uniform(1, 40), gen.uniform(0, 4), 1, tau);
        const ValueElement v(gen.uniform(1, 40), gen.uniform(0, 4), 1, tau);
        if (!rationally_independent(u, v)) {
            continue;
        }
        std::optional<TransformState> start;
        try {
            start = initial_state(a, u, v);
        } catch (const std::invalid_argument &) {
            continue; // the solved parameter values are not both positive
        }
        TransformState s = *start;
        ++checked;
        const BigInt det = s.det();
        for (int k = 0; k < 30; ++k) {
            const TransformState t = quadratic_step(s);
            EXPECT_EQ(abs(t.det()), abs(det));
            EXPECT_TRUE(t.matrix().is_nonnegative());
            EXPECT_EQ(t.below_values(), s.below_values());
            const auto &[x, y] = s.param_values();
            const auto &[x2, y2] = t.param_values();
            if (x < y) {
                EXPECT_EQ(x2, x);
                EXPECT_EQ(y2, y - x);
            } else {
                EXPECT_EQ(x2, x - y);
                EXPECT_EQ(y2, y);
            }
            s = t;
        }
    }
}

TEST(ConvergentParameters, UnimodularWithPositiveValues)
{
    for (std::size_t p = 1; p <= 15; ++p) {
        const auto cp = convergent_parameters(tau11, p);
        EXPECT_EQ(abs(cp.matrix.det()), 1);
        EXPECT_EQ(cp.matrix.det(), cp.epsilon);
        EXPECT_GT(cp.value_u1.sign(), 0);
        EXPECT_GT(cp.value_v1.sign(), 0);
        // u = u1^g_p v1^g_{p-1} and v = u1^f_p v1^f_{p-1} with nu(u) = 1, nu(v) = tau.
        EXPECT_EQ(cp.matrix(0, 0) * cp.value_u1 + cp.matrix(0, 1) * cp.value_v1, tau11.lift(1));
        EXPECT_EQ(cp.matrix(1, 0) * cp.value_u1 + cp.matrix(1, 1) * cp.value_v1, tau11);
    }
    EXPECT_THROW(convergent_parameters(tau11, 0), std::invalid_argument);
}
