#include <gtest/gtest.h>

#include <toricert/counterexample.hpp>

#include "oracles.hpp"

using namespace toricert;

namespace
{

InstanceConfig config(long long q, long long p, long long m, long long n, std::size_t steps = 25)
{
    InstanceConfig c;
    c.q = q;
    c.p = p;
    c.m = m;
    c.n = n;
    c.steps = steps;
    return c;
}

std::string config_message(const InstanceConfig &c)
{
    try {
        build(c);
    } catch (const config_error &e) {
        return e.what();
    }
    return "";
}

// Galois weights of (x_k, y_k) for z -> w z, from x_0 = v/z, y_0 = z^2/v.
std::vector<std::array<long long, 2>> weight_track(const std::vector<StepTag> &log, long long r)
{
    std::vector<std::array<long long, 2>> out{{r - 1, 2}};
    for (auto t : log) {
        auto w = out.back();
        if (t == StepTag::DivideFirstIntoSecond) {
            w[1] = ((w[1] - w[0]) % r + r) % r;
        } else {
            w[0] = ((w[0] - w[1]) % r + r) % r;
        }
        out.push_back(w);
    }
    return out;
}

} // namespace

TEST(Build, ElevenThirteen)
{
    const Instance inst = build(config(11, 13, 3, 3));
    EXPECT_EQ(inst.tau, QuadExt(7, 1, 2, 77));
    EXPECT_EQ(inst.branches[0].matrix, (IntMatrix{{7, 9}, {2, 1}}));
    EXPECT_EQ(inst.branches[1].matrix, (IntMatrix{{9, 11}, {2, 1}}));
    EXPECT_EQ(inst.branches[0].matrix.det(), -11);
    EXPECT_EQ(inst.branches[1].matrix.det(), -13);
    EXPECT_EQ(inst.branches[0].index.index, 11);
    EXPECT_EQ(inst.branches[1].index.index, 13);
    EXPECT_EQ(inst.branches[0].smith.quotient_string(), "Z/11");
    EXPECT_EQ(inst.branches[1].smith.quotient_string(), "Z/13");
    EXPECT_EQ(inst.branches[0].nu_root, ValueElement(2, 1, 11, inst.tau));
}

TEST(Build, PositivityFormsAgree)
{
    for (auto [q, p, m] : {std::array<long long, 3>{11, 13, 3}, {17, 23, 7}}) {
        const Instance inst = build(config(q, p, m, m));
        const QuadExt &tau = inst.tau;
        const QuadExt &eps = inst.epsilon;
        const QuadExt qq = tau.lift(q), pp = tau.lift(p), two = tau.lift(2);
        EXPECT_EQ(eps, tau - tau.lift(q - 4));
        const auto &b1 = inst.branches[0].positivity;
        const auto &b2 = inst.branches[1].positivity;
        EXPECT_EQ(b1[0].from_definition, (two - eps) / qq);
        EXPECT_EQ(b1[0].from_definition, (tau.lift(q - 2) - tau) / qq);
        EXPECT_EQ(b1[1].from_definition, (tau.lift(q - 4) + two * eps) / qq);
        EXPECT_EQ(b2[0].from_definition, (tau.lift(p - q + 2) - eps) / pp);
        EXPECT_EQ(b2[1].from_definition, (tau.lift(2 * q - p - 4) + two * eps) / pp);
        for (const auto *e : {&b1[0], &b1[1], &b2[0], &b2[1]}) {
            EXPECT_TRUE(e->positive);
            EXPECT_GT(e->from_definition.sign(), 0);
        }
    }
}

TEST(Build, ChartCorrections)
{
    const auto c = validate_surface(config(11, 13, 3, 3));
    EXPECT_EQ(c[0].u_correction, (std::array<BigInt, 2>{5, 5}));
    EXPECT_EQ(c[0].v_correction, (std::array<BigInt, 2>{3, 3}));
    const auto d = validate_surface(config(17, 23, 7, 7));
    EXPECT_EQ(d[0].u_correction, (std::array<BigInt, 2>{13, 13}));
    EXPECT_EQ(d[0].v_correction, (std::array<BigInt, 2>{7, 7}));
}

TEST(Build, RejectionsNameTheConstraint)
{
    EXPECT_NE(config_message(config(11, 19, 3, 3)).find("2q - 4"), std::string::npos);
    EXPECT_NE(config_message(config(11, 13, 1, 3)).find("m > max"), std::string::npos);
    EXPECT_NE(config_message(config(11, 13, 3, 1)).find("n > max"), std::string::npos);
    EXPECT_NE(config_message(config(11, 13, 4, 3)).find("odd"), std::string::npos);
    EXPECT_NE(config_message(config(9, 13, 3, 3)).find("q must be prime"), std::string::npos);
    EXPECT_NE(config_message(config(11, 15, 3, 3)).find("p must be prime"), std::string::npos);
    EXPECT_NE(config_message(config(3, 5, 3, 3)).find("q > 3"), std::string::npos);
    InstanceConfig c = config(11, 13, 3, 3);
    c.characteristic = make_characteristic(13);
    EXPECT_NE(config_message(c).find("divides p"), std::string::npos);
    c.characteristic = make_characteristic(2);
    EXPECT_FALSE(config_message(c).empty());
    c.characteristic = make_characteristic(5);
    EXPECT_EQ(config_message(c), "");
}

TEST(Sweep, FirstBranchSingularWithConstantDeterminant)
{
    const Instance inst = build(config(11, 13, 3, 3));
    const SweepReport rep = singularity_sweep(inst, 25);
    ASSERT_TRUE(rep.verified());
    const auto &recs = rep.branches[0].records;
    ASSERT_EQ(recs.size(), 26u);
    EXPECT_EQ(recs[0].matrix, (IntMatrix{{7, 9}, {2, 1}}));
    EXPECT_EQ(recs[1].matrix, (IntMatrix{{16, 9}, {3, 1}}));
    for (const auto &r : recs) {
        EXPECT_FALSE(r.regular) << "step " << r.index;
        EXPECT_EQ(r.det, -11);
        EXPECT_GE(r.embedding_dim, 3u);
        EXPECT_EQ(r.pi1, 11);
    }
}

TEST(Sweep, StepZeroOnly)
{
    const Instance inst = build(config(11, 13, 3, 3));
    const SweepReport rep = singularity_sweep(inst, 0);
    ASSERT_TRUE(rep.verified());
    EXPECT_EQ(rep.branches[0].records.size(), 1u);
    EXPECT_FALSE(rep.branches[0].records[0].regular);
    EXPECT_FALSE(rep.branches[1].records[0].regular);
    EXPECT_EQ(rep.branches[1].records[0].det, -13);
}

// Literal form of the requirement that the nu2 branch is singular at every
// step. The exact sweep finds regular rings below S(2) at steps 5, 11 and 24
// (see the next test for an independent derivation), so this fails.
TEST(Sweep, SecondBranchSingularAtEveryStep)
{
    const Instance inst = build(config(11, 13, 3, 3));
    const SweepReport rep = singularity_sweep(inst, 25);
    for (const auto &r : rep.branches[1].records) {
        EXPECT_EQ(r.det, -13);
        EXPECT_FALSE(r.regular) << "nu2 step " << r.index << " " << r.matrix << " is regular";
    }
}

// Regular steps on nu2 are exactly those where a Galois weight of the
// current parameters vanishes, tracked from the definition of x_1, y_1.
TEST(Sweep, SecondBranchVerdictsFollowGaloisWeights)
{
    for (auto [q, p, m] : {std::array<long long, 3>{11, 13, 3}, {17, 23, 7}}) {
        const Instance inst = build(config(q, p, m, m));
        const SweepReport rep = singularity_sweep(inst, 60);
        ASSERT_TRUE(rep.verified());
        for (std::size_t b = 0; b < 2; ++b) {
            const auto &recs = rep.branches[b].records;
            const long long r = b == 0 ? q : p;
            std::vector<StepTag> log;
            for (std::size_t k = 1; k < recs.size(); ++k) {
                log.push_back(*recs[k].tag);
            }
            const auto w = weight_track(log, r);
            for (std::size_t k = 0; k < recs.size(); ++k) {
                const bool vanishes = w[k][0] == 0 || w[k][1] == 0;
                EXPECT_EQ(recs[k].regular, vanishes) << "q=" << q << " branch " << b << " step " << k;
                const auto &g = *recs[k].action;
                EXPECT_EQ(mod_floor(g.a() * w[k][1] - g.b() * w[k][0], r), 0);
            }
        }
        const std::vector<std::size_t> expected = q == 11 ? std::vector<std::size_t>{5, 11, 24, 30, 51, 57}
                                                          : std::vector<std::size_t>{6, 19, 29, 37, 45};
        EXPECT_EQ(rep.branches[1].regular_steps(), expected);
        EXPECT_TRUE(rep.branches[0].all_singular());
    }
}

TEST(Sweep, FirstBranchLongRun)
{
    const Instance inst = build(config(11, 13, 3, 3));
    const SweepReport rep = singularity_sweep(inst, 300);
    ASSERT_TRUE(rep.verified());
    EXPECT_TRUE(rep.branches[0].all_singular());
    for (const auto &r : rep.branches[0].records) {
        EXPECT_EQ(r.det, -11);
    }
}

TEST(Sweep, ParallelAndSerialAgree)
{
    const Instance inst = build(config(17, 23, 7, 7));
    const SweepReport a = singularity_sweep(inst, 40, {std::nullopt, true});
    const SweepReport b = singularity_sweep(inst, 40, {std::nullopt, false});
    for (std::size_t k = 0; k < 2; ++k) {
        ASSERT_EQ(a.branches[k].records.size(), b.branches[k].records.size());
        for (std::size_t i = 0; i < a.branches[k].records.size(); ++i) {
            EXPECT_EQ(a.branches[k].records[i].matrix, b.branches[k].records[i].matrix);
            EXPECT_EQ(a.branches[k].records[i].regular, b.branches[k].records[i].regular);
        }
    }
}

TEST(Sweep, InjectedUnimodularMatrixIsReportedNotThrown)
{
    const Instance inst = build(config(11, 13, 3, 3));
    for (std::size_t branch : {0u, 1u}) {
        SweepOptions opt;
        opt.injection = Injection{branch, 7};
        const SweepReport rep = singularity_sweep(inst, 25, opt);
        ASSERT_FALSE(rep.verified());
        EXPECT_EQ(rep.falsification->branch, branch);
        EXPECT_EQ(rep.falsification->step, 7u);
        EXPECT_EQ(rep.falsification->matrix, (IntMatrix{{1, 1}, {0, 1}}));
        EXPECT_TRUE(rep.branches[branch].records.back().regular);
        EXPECT_THROW(contradiction_report(inst, rep), std::logic_error);
    }
}

TEST(Contradiction, OrdersDiffer)
{
    for (auto [q, p, m] : {std::array<long long, 3>{11, 13, 3}, {17, 23, 7}}) {
        const Instance inst = build(config(q, p, m, m));
        const ContradictionReport cr = contradiction_report(inst, singularity_sweep(inst, 25));
        EXPECT_TRUE(cr.branch1_singular);
        EXPECT_EQ(cr.order_branch1, q);
        EXPECT_EQ(cr.order_branch2, p);
        EXPECT_TRUE(cr.orders_differ);
        EXPECT_TRUE(cr.contradiction);
        EXPECT_EQ(cr.steps_checked, 25u);
    }
}

TEST(SweepProperty, LegalConfigsKeepFirstBranchSingular)
{
    // Every legal (q, p) with q < 50 and the smallest legal odd m, n.
    int checked = 0;
    for (long long q = 5; q < 50; ++q) {
        if (!is_prime(q)) {
            continue;
        }
        for (long long p = q + 1; p < 2 * q - 4; ++p) {
            if (!is_prime(p)) {
                continue;
            }
            long long m = p - q + 1;
            if (m % 2 == 0) {
                ++m;
            }
            const Instance inst = build(config(q, p, m, m));
            const SweepReport rep = singularity_sweep(inst, 30);
            ASSERT_TRUE(rep.verified()) << q << " " << p << ": " << rep.falsification->reason;
            for (std::size_t b = 0; b < 2; ++b) {
                for (const auto &r : rep.branches[b].records) {
                    EXPECT_EQ(abs(r.det), b == 0 ? q : p);
                    EXPECT_EQ(r.regular, r.embedding_dim == 2);
                }
            }
            ++checked;
        }
    }
    EXPECT_GT(checked, 10);
}
