#ifndef TORICERT_COUNTEREXAMPLE_HPP
#define TORICERT_COUNTEREXAMPLE_HPP

#include <array>
#include <cstddef>
#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <toricert/bigint.hpp>
#include <toricert/error.hpp>
#include <toricert/int_matrix.hpp>
#include <toricert/qfield.hpp>
#include <toricert/quotient.hpp>
#include <toricert/regularity.hpp>
#include <toricert/smith.hpp>
#include <toricert/transform.hpp>
#include <toricert/valuation.hpp>

namespace toricert
{

struct InstanceConfig {
    BigInt q = 11;
    BigInt p = 13;
    BigInt m = 3;
    BigInt n = 3;
    std::size_t steps = 25;
    Characteristic characteristic;
};

/// Exponents (a, b, c, d) of u = x^a y^b, v = x^c y^d for the branch of
/// prime r: (r - 4, r - 2, 2, 1).
inline std::array<BigInt, 4> branch_exponents(const BigInt &r)
{
    return {r - 4, r - 2, 2, 1};
}

inline IntMatrix branch_matrix(const BigInt &r)
{
    const auto e = branch_exponents(r);
    return IntMatrix(2, {e[0], e[1], e[2], e[3]});
}

/// Exponents of the unit corrections in one chart of z^2 - 1 + x^m y^n = 0.
struct ChartCorrection {
    std::string chart;
    std::array<BigInt, 2> u_correction;
    std::array<BigInt, 2> v_correction;
};

/// At P1 = (x, y, z + 1): u = x^a1 y^b1 (1 - z - (z - 1)^-1 x^(a2+m-a1) y^(b2+n-b1))
/// and likewise for v; the bracket is a unit exactly when both correction
/// exponents are positive. P2 swaps the roles of the two branches.
inline std::array<ChartCorrection, 2> validate_surface(const InstanceConfig &cfg)
{
    const auto e1 = branch_exponents(cfg.q);
    const auto e2 = branch_exponents(cfg.p);
    auto chart = [&](const std::string &name, const std::array<BigInt, 4> &self, const std::array<BigInt, 4> &other) {
        ChartCorrection c{name,
                          {other[0] + cfg.m - self[0], other[1] + cfg.n - self[1]},
                          {other[2] + cfg.m - self[2], other[3] + cfg.n - self[3]}};
        const char *labels[4] = {"a", "b", "c", "d"};
        const BigInt *vals[4] = {&c.u_correction[0], &c.u_correction[1], &c.v_correction[0], &c.v_correction[1]};
        for (int k = 0; k < 4; ++k) {
            if (*vals[k] <= 0) {
                const bool is_m = (k % 2) == 0;
                throw config_error("surface chart " + name + ": correction exponent for " + labels[k] + " is "
                                   + to_string(*vals[k]) + " <= 0; violates " + (is_m ? "m > max(|a1-a2|, |c1-c2|)"
                                                                                          : "n > max(|b1-b2|, |d1-d2|)"));
            }
        }
        return c;
    };
    return {chart("P1", e1, e2), chart("P2", e2, e1)};
}

inline void validate_config(const InstanceConfig &cfg)
{
    if (!is_prime(cfg.q)) {
        throw config_error("q must be prime, got " + to_string(cfg.q));
    }
    if (!is_prime(cfg.p)) {
        throw config_error("p must be prime, got " + to_string(cfg.p));
    }
    if (!(cfg.q > 3)) {
        throw config_error("q > 3 violated (q = " + to_string(cfg.q) + ")");
    }
    if (!(cfg.q >= 5 && cfg.q < cfg.p && cfg.p < 2 * cfg.q - 4)) {
        throw config_error("5 <= q < p < 2q - 4 violated (q = " + to_string(cfg.q) + ", p = " + to_string(cfg.p)
                           + ", 2q - 4 = " + to_string(2 * cfg.q - 4) + ")");
    }
    if (cfg.m <= 0 || cfg.m % 2 == 0) {
        throw config_error("m must be a positive odd integer, got " + to_string(cfg.m));
    }
    if (cfg.n <= 0 || cfg.n % 2 == 0) {
        throw config_error("n must be a positive odd integer, got " + to_string(cfg.n));
    }
    const auto e1 = branch_exponents(cfg.q);
    const auto e2 = branch_exponents(cfg.p);
    const BigInt m_bound = std::max(abs(e1[0] - e2[0]), abs(e1[2] - e2[2]));
    const BigInt n_bound = std::max(abs(e1[1] - e2[1]), abs(e1[3] - e2[3]));
    if (!(cfg.m > m_bound)) {
        throw config_error("m > max(|a1-a2|, |c1-c2|) = " + to_string(m_bound) + " violated (m = " + to_string(cfg.m) + ")");
    }
    if (!(cfg.n > n_bound)) {
        throw config_error("n > max(|b1-b2|, |d1-d2|) = " + to_string(n_bound) + " violated (n = " + to_string(cfg.n) + ")");
    }
    const Characteristic &ch = cfg.characteristic;
    if (!ch.is_zero()) {
        if (ch.value == 2) {
            throw config_error("characteristic 2 is excluded");
        }
        const std::pair<const char *, BigInt> checks[] = {
            {"q", cfg.q}, {"p", cfg.p}, {"m", cfg.m}, {"n", cfg.n}, {"det A1", cfg.q}, {"det A2", cfg.p}};
        for (const auto &[name, v] : checks) {
            if (!ch.is_unit(v)) {
                throw config_error(std::string("characteristic ") + to_string(ch.value) + " divides " + name);
            }
        }
    }
    validate_surface(cfg);
}

/// A positive value displayed in two closed forms; all three must agree.
struct PositivityEntry {
    std::string name;
    QuadExt from_definition; // from nu(v) and nu(z)
    QuadExt tau_form;        // in terms of tau
    QuadExt epsilon_form;    // in terms of epsilon
    bool positive = false;
};

struct BranchData {
    std::string label;
    BigInt prime;
    IntMatrix matrix;
    // nu(z) = (2 + tau)/prime for the root z of z^prime = u v^2.
    ValueElement nu_root;
    // Values of x_1 = v/z and y_1 = z^2/v.
    std::array<ValueElement, 2> params;
    std::array<PositivityEntry, 2> positivity;
    GroupIndex index;
    SmithForm smith;
};

struct Instance {
    InstanceConfig config;
    QuadExt tau;
    QuadExt epsilon;
    MonomialValuation nu_bar;
    std::array<BranchData, 2> branches;
    std::array<ChartCorrection, 2> charts;
};

namespace detail
{

inline BranchData build_branch(const std::string &label, const BigInt &r, const BigInt &q, const QuadExt &tau,
                               const QuadExt &eps, const MonomialValuation &nu_bar)
{
    const ValueElement one = ValueElement::integer(1, tau);
    const ValueElement nu_z = (ValueElement::integer(2, tau) + ValueElement::of_tau(tau)).divided_by(r);
    const ValueElement x1 = one - nu_z;
    const ValueElement y1 = BigInt(2) * nu_z - one;

    const QuadExt rq = tau.lift(r);
    const QuadExt two = tau.lift(2);
    // (r - 2 - tau)/r = ((r - q) + 2 - eps)/r and (2/r)(2 + tau) - 1 = (2q - r - 4 + 2 eps)/r.
    PositivityEntry px{"x1", x1.to_quad(), (tau.lift(r - 2) - tau) / rq, (tau.lift(r - q + 2) - eps) / rq, false};
    PositivityEntry py{"y1", y1.to_quad(), two / rq * (two + tau) - tau.lift(1), (tau.lift(2 * q - r - 4) + two * eps) / rq,
                       false};
    for (auto *e : {&px, &py}) {
        if (e->from_definition != e->tau_form || e->from_definition != e->epsilon_form) {
            throw internal_fault("branch " + label + ": displayed forms of nu(" + e->name + ") disagree");
        }
        e->positive = e->from_definition.sign() > 0;
        if (!e->positive) {
            throw config_error("branch " + label + ": nu(" + e->name + ") is not positive");
        }
    }

    IntMatrix a = branch_matrix(r);
    // A * (nu(x1), nu(y1)) must reproduce (nu(u), nu(v)) = (tau, 1).
    const ValueElement nu_u = a(0, 0) * x1 + a(0, 1) * y1;
    const ValueElement nu_v = a(1, 0) * x1 + a(1, 1) * y1;
    if (nu_u != nu_bar.val_u() || nu_v != nu_bar.val_v()) {
        throw internal_fault("branch " + label + ": exponent matrix does not reproduce nu(u), nu(v)");
    }
    GroupIndex gi = group_index({nu_bar.val_u(), nu_bar.val_v()}, {x1, y1});
    SmithForm sf = smith_normal_form(a);
    const auto tors = sf.torsion();
    if (gi.index != r || tors.size() != 1 || tors[0] != r) {
        throw internal_fault("branch " + label + ": value group index and Smith form disagree with the prime");
    }
    return BranchData{label, r, std::move(a), nu_z, {x1, y1}, {std::move(px), std::move(py)}, std::move(gi), std::move(sf)};
}

} // namespace detail

inline Instance build(const InstanceConfig &cfg)
{
    validate_config(cfg);
    const QuadExt tau = tau_from_a(cfg.q - 4);
    const QuadExt eps = tau - tau.lift(cfg.q - 4);
    if (!(eps.sign() > 0 && (tau.lift(1) - eps).sign() > 0)) {
        throw internal_fault("epsilon = tau - (q - 4) is not in (0, 1)");
    }
    MonomialValuation nu_bar = make_valuation(ValueElement::of_tau(tau), ValueElement::integer(1, tau));
    auto b1 = detail::build_branch("nu1", cfg.q, cfg.q, tau, eps, nu_bar);
    auto b2 = detail::build_branch("nu2", cfg.p, cfg.q, tau, eps, nu_bar);
    return Instance{cfg, tau, eps, std::move(nu_bar), {std::move(b1), std::move(b2)}, validate_surface(cfg)};
}

struct StepRecord {
    std::size_t index = 0;
    IntMatrix matrix;
    BigInt det;
    bool regular = false;
    std::size_t embedding_dim = 0;
    // Tag of the transform that produced this state; empty at step 0.
    std::optional<StepTag> tag;
    // Galois action on the current parameters; empty when |det| is not the
    // branch prime (corrupted state).
    std::optional<DiagonalAction> action;
    BigInt pi1;
    std::vector<Point2> invariant_exponents;
};

struct BranchSweep {
    std::string label;
    BigInt prime;
    // Whether a regular verdict on this branch refutes the construction.
    bool must_be_singular = false;
    std::vector<StepRecord> records;

    std::vector<std::size_t> regular_steps() const
    {
        std::vector<std::size_t> out;
        for (const auto &r : records) {
            if (r.regular) {
                out.push_back(r.index);
            }
        }
        return out;
    }
    bool all_singular() const { return regular_steps().empty(); }
};

struct Falsification {
    std::size_t branch = 0;
    std::size_t step = 0;
    IntMatrix matrix;
    std::string reason;
};

struct SweepReport {
    std::array<BranchSweep, 2> branches;
    std::optional<Falsification> falsification;

    bool verified() const { return !falsification; }
};

/// Replaces the matrix seen at (branch, step) before the verdict is taken.
struct Injection {
    std::size_t branch = 0;
    std::size_t step = 0;
    IntMatrix matrix = IntMatrix{{1, 1}, {0, 1}};
};

struct SweepOptions {
    std::optional<Injection> injection;
    bool parallel = true;
};

namespace detail
{

// Galois weights of the current parameters, tracked through the transforms
// from x_1 = v/z, y_1 = z^2/v with z -> w z: start (-1, 2); y -> y/x
// subtracts the x weight from the y weight and vice versa.
inline std::array<BigInt, 2> next_weights(const std::array<BigInt, 2> &w, StepTag tag, const BigInt &r)
{
    if (tag == StepTag::DivideFirstIntoSecond) {
        return {w[0], mod_floor(w[1] - w[0], r)};
    }
    return {mod_floor(w[0] - w[1], r), w[1]};
}

inline std::pair<BranchSweep, std::optional<Falsification>>
sweep_branch(const Instance &inst, std::size_t which, std::size_t steps, const SweepOptions &opt)
{
    const BranchData &b = inst.branches[which];
    const TransformState start = initial_state(b.matrix, inst.nu_bar.val_u(), inst.nu_bar.val_v());
    if (start.param_values() != b.params) {
        throw internal_fault("sweep: initial parameter values differ from the instance");
    }
    const auto states = run_sequence(start, steps);
    BranchSweep out{b.label, b.prime, which == 0, {}};
    std::array<BigInt, 2> weights{mod_floor(BigInt(-1), b.prime), BigInt(2)};
    auto falsified = [&](const StepRecord &rec, const std::string &why) {
        return std::make_pair(std::move(out), std::optional<Falsification>(Falsification{which, rec.index, rec.matrix, why}));
    };
    for (const auto &st : states) {
        StepRecord rec;
        rec.index = st.step_index();
        rec.matrix = st.matrix();
        if (!st.step_log().empty()) {
            rec.tag = st.step_log().back();
            weights = next_weights(weights, *rec.tag, b.prime);
        }
        if (opt.injection && opt.injection->branch == which && opt.injection->step == rec.index) {
            rec.matrix = opt.injection->matrix;
        }
        rec.det = rec.matrix.det();
        if (rec.det == 0) {
            out.records.push_back(rec);
            return falsified(rec, "singular exponent matrix at step " + std::to_string(rec.index) + " of branch " + b.label);
        }
        const Regularity reg = below_ring_regularity(rec.matrix);
        rec.regular = reg.regular;
        rec.embedding_dim = reg.embedding_dim;
        rec.invariant_exponents = reg.invariant_exponents;
        if (abs(rec.det) != b.prime) {
            rec.pi1 = reg.regular ? 1 : 0;
            out.records.push_back(rec);
            return falsified(rec, "|det A| = " + to_string(abs(rec.det)) + " differs from the value group index "
                                      + to_string(b.prime) + " at step " + std::to_string(rec.index) + " of branch "
                                      + b.label);
        }
        DiagonalAction act = action_from_matrix(rec.matrix);
        // Same cyclic group, so the two weight vectors must be proportional.
        if (mod_floor(act.a() * weights[1] - act.b() * weights[0], b.prime) != 0) {
            throw internal_fault("sweep: adjugate action and tracked Galois weights disagree at step "
                                 + std::to_string(rec.index));
        }
        const bool weight_regular = weights[0] == 0 || weights[1] == 0;
        if (weight_regular != reg.regular && !(opt.injection && opt.injection->branch == which)) {
            throw internal_fault("sweep: tracked weights and toric verdict disagree at step " + std::to_string(rec.index));
        }
        std::vector<Point2> cyclic_gens;
        for (const auto &t : invariant_generators(act).minimal) {
            cyclic_gens.push_back(t.exponent);
        }
        if (cyclic_gens != rec.invariant_exponents) {
            throw internal_fault("sweep: cyclic invariants and toric Hilbert basis disagree at step "
                                 + std::to_string(rec.index));
        }
        rec.pi1 = pi1_order(act);
        rec.action = std::move(act);
        out.records.push_back(rec);
        if (rec.regular && out.must_be_singular) {
            return falsified(rec, "regular ring below at step " + std::to_string(rec.index) + " of branch " + b.label);
        }
    }
    return {std::move(out), std::nullopt};
}

} // namespace detail

/// Quadratic-transform sweep on both branches with a regularity verdict at
/// every step. Along nu1 every ring below must be singular; a regular
/// verdict there, or a change of |det A| on either branch, is reported as a
/// falsification rather than thrown. Along nu2 verdicts are recorded: a
/// regular ring below S(2) is itself incompatible with the singular ring the
/// nu1 branch forces. Only a finite prefix of each sequence is checked.
inline SweepReport singularity_sweep(const Instance &inst, std::size_t steps, const SweepOptions &opt = {})
{
    std::array<std::pair<BranchSweep, std::optional<Falsification>>, 2> res;
    if (opt.parallel) {
        auto f1 = std::async(std::launch::async, [&] { return detail::sweep_branch(inst, 1, steps, opt); });
        res[0] = detail::sweep_branch(inst, 0, steps, opt);
        res[1] = f1.get();
    } else {
        res[0] = detail::sweep_branch(inst, 0, steps, opt);
        res[1] = detail::sweep_branch(inst, 1, steps, opt);
    }
    SweepReport out;
    for (std::size_t k = 0; k < 2; ++k) {
        out.branches[k] = std::move(res[k].first);
        if (res[k].second && !out.falsification) {
            out.falsification = std::move(res[k].second);
        }
    }
    return out;
}

struct ContradictionReport {
    // Every ring below S(1) on the swept prefix is singular.
    bool branch1_singular = false;
    // pi_1 order forced through S(1); q.
    BigInt order_branch1;
    // pi_1 order at the singular steps of S(2); p.
    BigInt order_branch2;
    std::vector<std::size_t> branch2_regular_steps;
    bool orders_differ = false;
    bool contradiction = false;
    std::size_t steps_checked = 0;
};

/// The ring R_1 below both S(1) and S(2) is singular with pi_1 of order q
/// (via S(1)). Through S(2) it would be either regular, contradicting
/// singularity, or singular with pi_1 of order p != q. Either way no single
/// normal local ring lies below both.
inline ContradictionReport contradiction_report(const Instance &inst, const SweepReport &sweep)
{
    if (!sweep.verified()) {
        throw std::logic_error("contradiction_report: sweep was falsified");
    }
    ContradictionReport out;
    const auto &b1 = sweep.branches[0];
    const auto &b2 = sweep.branches[1];
    if (b1.records.empty() || b2.records.empty()) {
        throw std::logic_error("contradiction_report: empty sweep");
    }
    out.branch1_singular = b1.all_singular();
    out.order_branch1 = inst.branches[0].prime;
    out.order_branch2 = inst.branches[1].prime;
    for (const auto &r : b1.records) {
        if (r.pi1 != out.order_branch1) {
            throw internal_fault("contradiction_report: pi_1 order along nu1 differs from q");
        }
    }
    for (const auto &r : b2.records) {
        if (!r.regular && r.pi1 != out.order_branch2) {
            throw internal_fault("contradiction_report: pi_1 order along nu2 differs from p");
        }
    }
    out.branch2_regular_steps = b2.regular_steps();
    out.orders_differ = out.order_branch1 != out.order_branch2;
    out.contradiction = out.branch1_singular && out.orders_differ;
    out.steps_checked = b1.records.size() - 1;
    return out;
}

} // namespace toricert

#endif
