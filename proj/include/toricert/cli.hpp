#ifndef TORICERT_CLI_HPP
#define TORICERT_CLI_HPP

// Command-line front end: argument parsing, dispatch and report emission.
// Depends on the vendored CLI11 and nlohmann/json single headers.

#include <chrono>
#include <cstddef>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <toricert/bigint.hpp>
#include <toricert/cone.hpp>
#include <toricert/counterexample.hpp>
#include <toricert/error.hpp>
#include <toricert/int_matrix.hpp>
#include <toricert/qfield.hpp>
#include <toricert/quotient.hpp>
#include <toricert/regularity.hpp>
#include <toricert/smith.hpp>
#include <toricert/transform.hpp>
#include <toricert/valuation.hpp>

namespace toricert::cli
{

inline constexpr const char *schema_version = "1.0";

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_falsified = 2, exit_fault = 3 };

using json = nlohmann::json; // std::map objects: keys come out sorted

namespace detail
{

inline json big(const BigInt &x)
{
    if (fits_int64(x)) {
        return static_cast<long long>(x);
    }
    return to_string(x);
}

inline json big_list(const std::vector<BigInt> &v)
{
    json out = json::array();
    for (const auto &x : v) {
        out.push_back(big(x));
    }
    return out;
}

inline json matrix_json(const IntMatrix &m)
{
    json out = json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        out.push_back(big_list(m.row(i)));
    }
    return out;
}

inline json point_json(const Point2 &p)
{
    return json::array({big(p.x), big(p.y)});
}

inline json points_json(const std::vector<Point2> &v)
{
    json out = json::array();
    for (const auto &p : v) {
        out.push_back(point_json(p));
    }
    return out;
}

inline json terms_json(const MonomialSet &v)
{
    json out = json::array();
    for (const auto &t : v) {
        out.push_back({{"coefficient", big(t.coefficient)}, {"exponent", point_json(t.exponent)}});
    }
    return out;
}

template <typename T>
std::string str(const T &x)
{
    std::ostringstream os;
    os << x;
    return os.str();
}

inline std::string approx(const QuadExt &x)
{
    std::ostringstream os;
    os << std::fixed << std::setprecision(12) << x.to_long_double();
    return os.str();
}

inline json quad_json(const QuadExt &x)
{
    return {{"exact", x.str()}, {"approx", approx(x)}};
}

inline BigInt parse_integer(const std::string &text, const std::string &what)
{
    std::size_t k = 0;
    if (k < text.size() && (text[k] == '-' || text[k] == '+')) {
        ++k;
    }
    if (k == text.size()) {
        throw config_error(what + ": expected an integer, got \"" + text + "\"");
    }
    for (std::size_t i = k; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') {
            throw config_error(what + ": invalid character '" + std::string(1, text[i]) + "' at offset "
                               + std::to_string(i) + " in \"" + text + "\"");
        }
    }
    return BigInt(text[0] == '+' ? text.substr(1) : text);
}

} // namespace detail

/// Row-major comma-separated entries of a square integer matrix, e.g.
/// "7,9,2,1". Errors name the 1-based entry and its character offset.
inline IntMatrix parse_matrix(const std::string &text)
{
    std::vector<BigInt> entries;
    std::size_t start = 0;
    for (std::size_t entry = 1;; ++entry) {
        const std::size_t comma = text.find(',', start);
        const std::size_t end = comma == std::string::npos ? text.size() : comma;
        std::size_t a = start, b = end;
        while (a < b && text[a] == ' ') {
            ++a;
        }
        while (b > a && text[b - 1] == ' ') {
            --b;
        }
        const std::string tok = text.substr(a, b - a);
        const std::string where = "--matrix entry " + std::to_string(entry) + " (offset " + std::to_string(a) + ")";
        if (tok.empty()) {
            throw config_error(where + ": empty entry");
        }
        std::size_t k = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
        if (k == tok.size()) {
            throw config_error(where + ": sign without digits");
        }
        for (; k < tok.size(); ++k) {
            if (tok[k] < '0' || tok[k] > '9') {
                throw config_error("--matrix entry " + std::to_string(entry) + " (offset " + std::to_string(a + k)
                                   + "): unexpected character '" + std::string(1, tok[k]) + "'");
            }
        }
        entries.push_back(BigInt(tok[0] == '+' ? tok.substr(1) : tok));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    const BigInt n = isqrt(BigInt(entries.size()));
    if (n * n != entries.size()) {
        throw config_error("--matrix: " + std::to_string(entries.size()) + " entries do not form a square matrix");
    }
    return IntMatrix(static_cast<std::size_t>(n), std::move(entries));
}

struct Options {
    std::optional<std::string> q, p, m, n, a, b, order, matrix, support, ch, inject;
    std::optional<std::size_t> steps;
    std::string format = "json";
    bool timing = false;
};

namespace detail
{

struct Outcome {
    json inputs = json::object();
    json results = json::object();
    std::string verdict = "N/A";
    int code = exit_ok;
};

inline BigInt required(const std::optional<std::string> &v, const char *flag, const std::string &cmd)
{
    if (!v) {
        throw config_error(cmd + ": missing required flag " + flag);
    }
    return parse_integer(*v, flag);
}

inline BigInt optional_or(const std::optional<std::string> &v, const char *flag, long long fallback)
{
    return v ? parse_integer(*v, flag) : BigInt(fallback);
}

inline void reject(const Options &o, const std::string &cmd, std::initializer_list<const char *> allowed)
{
    auto allowed_has = [&](const char *f) {
        for (auto *x : allowed) {
            if (std::string(x) == f) {
                return true;
            }
        }
        return false;
    };
    const std::pair<const char *, bool> given[] = {
        {"--q", o.q.has_value()},           {"--p", o.p.has_value()},         {"--m", o.m.has_value()},
        {"--n", o.n.has_value()},           {"--a", o.a.has_value()},         {"--b", o.b.has_value()},
        {"--order", o.order.has_value()},   {"--matrix", o.matrix.has_value()}, {"--support", o.support.has_value()},
        {"--char", o.ch.has_value()},       {"--inject-regular", o.inject.has_value()},
        {"--steps", o.steps.has_value()}};
    for (const auto &[flag, present] : given) {
        if (present && !allowed_has(flag)) {
            throw config_error(cmd + ": flag " + flag + " does not apply");
        }
    }
}

// tau parameter a, from --a or --q (a = q - 4); default a = 7.
inline BigInt tau_parameter(const Options &o, json &inputs)
{
    if (o.a && o.q) {
        throw config_error("give either --a or --q, not both");
    }
    BigInt a = o.q ? parse_integer(*o.q, "--q") - 4 : optional_or(o.a, "--a", 7);
    if (a < 1) {
        throw config_error("tau parameter a = " + to_string(a) + " violates a >= 1");
    }
    inputs["a"] = big(a);
    return a;
}

inline IntMatrix matrix_flag(const Options &o, const std::string &cmd, std::optional<std::size_t> want_n)
{
    if (!o.matrix) {
        throw config_error(cmd + ": missing required flag --matrix");
    }
    IntMatrix m = parse_matrix(*o.matrix);
    if (want_n && m.size() != *want_n) {
        throw config_error(cmd + ": --matrix must be " + std::to_string(*want_n) + "x" + std::to_string(*want_n)
                           + ", got " + std::to_string(m.size()) + "x" + std::to_string(m.size()));
    }
    return m;
}

inline Outcome cmd_tau(const Options &o)
{
    reject(o, "tau", {"--a", "--q", "--steps"});
    Outcome out;
    const BigInt a = tau_parameter(o, out.inputs);
    const std::size_t count = o.steps.value_or(8);
    out.inputs["steps"] = count;
    const QuadExt tau = tau_from_a(a);
    const QuadExt eps = tau - tau.lift(a);
    out.results["tau"] = quad_json(tau);
    out.results["epsilon"] = quad_json(eps);
    out.results["epsilon_in_unit_interval"] = eps.sign() > 0 && (tau.lift(1) - eps).sign() > 0;
    out.results["floor"] = big(tau.floor());
    out.results["partial_quotients"] = big_list(partial_quotients(tau, count));
    return out;
}

inline Outcome cmd_convergents(const Options &o)
{
    reject(o, "convergents", {"--a", "--q", "--steps"});
    Outcome out;
    const BigInt a = tau_parameter(o, out.inputs);
    const std::size_t count = o.steps.value_or(10);
    if (count < 1) {
        throw config_error("convergents: --steps must be >= 1");
    }
    out.inputs["steps"] = count;
    const QuadExt tau = tau_from_a(a);
    json list = json::array();
    const auto conv = convergents(tau, count);
    for (std::size_t k = 0; k < conv.size(); ++k) {
        json e{{"index", conv[k].index}, {"f", big(conv[k].f)}, {"g", big(conv[k].g)}};
        if (k > 0) {
            e["epsilon"] = big(conv[k - 1].f * conv[k].g - conv[k].f * conv[k - 1].g);
        }
        list.push_back(std::move(e));
    }
    out.results["tau"] = quad_json(tau);
    out.results["convergents"] = std::move(list);
    if (count >= 2) {
        const auto cp = convergent_parameters(tau, count - 1);
        out.results["parameters"] = {{"matrix", matrix_json(cp.matrix)},
                                     {"epsilon", cp.epsilon},
                                     {"value_u1", quad_json(cp.value_u1)},
                                     {"value_v1", quad_json(cp.value_v1)}};
    }
    return out;
}

// "i:j,i:j,..." exponents of u and v.
inline MonomialSupport parse_support(const std::string &text)
{
    std::vector<Monomial2> terms;
    std::size_t start = 0;
    for (std::size_t entry = 1;; ++entry) {
        const std::size_t comma = text.find(',', start);
        const std::string tok = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        const std::size_t colon = tok.find(':');
        const std::string where = "--support entry " + std::to_string(entry);
        if (colon == std::string::npos) {
            throw config_error(where + ": expected i:j, got \"" + tok + "\"");
        }
        terms.push_back({parse_integer(tok.substr(0, colon), where), parse_integer(tok.substr(colon + 1), where)});
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    try {
        return MonomialSupport(std::move(terms));
    } catch (const std::invalid_argument &e) {
        throw config_error(std::string("--support: ") + e.what());
    }
}

inline Outcome cmd_value(const Options &o)
{
    reject(o, "value", {"--a", "--q", "--support"});
    Outcome out;
    const BigInt a = tau_parameter(o, out.inputs);
    if (!o.support) {
        throw config_error("value: missing required flag --support");
    }
    const MonomialSupport sup = parse_support(*o.support);
    json terms = json::array();
    for (const auto &t : sup.terms()) {
        terms.push_back(json::array({big(t.e_u), big(t.e_v)}));
    }
    out.inputs["support"] = terms;
    const QuadExt tau = tau_from_a(a);
    const MonomialValuation val = make_valuation(ValueElement::of_tau(tau), ValueElement::integer(1, tau));
    const ValueElement v = value_of(val, sup);
    for (const auto &t : sup.terms()) {
        if (val.value(t) == v) {
            out.results["argmin"] = json::array({big(t.e_u), big(t.e_v)});
        }
    }
    out.results["valuation"] = {{"u", str(val.val_u())}, {"v", str(val.val_v())}};
    out.results["value"] = {{"exact", str(v)}, {"approx", approx(v.to_quad())}};
    return out;
}

inline Outcome cmd_transform(const Options &o)
{
    reject(o, "transform", {"--a", "--q", "--steps", "--matrix"});
    Outcome out;
    const BigInt a = tau_parameter(o, out.inputs);
    const std::size_t steps = o.steps.value_or(10);
    out.inputs["steps"] = steps;
    const IntMatrix m = o.matrix ? matrix_flag(o, "transform", 2) : IntMatrix::identity(2);
    out.inputs["matrix"] = matrix_json(m);
    const QuadExt tau = tau_from_a(a);
    const TransformState start = initial_state(m, ValueElement::of_tau(tau), ValueElement::integer(1, tau));
    const auto states = run_sequence(start, steps);
    json list = json::array();
    for (const auto &st : states) {
        json e{{"step", st.step_index()},
               {"matrix", matrix_json(st.matrix())},
               {"det", big(st.det())},
               {"params", json::array({str(st.param_values()[0]), str(st.param_values()[1])})}};
        e["tag"] = st.step_log().empty() ? json(nullptr) : json(to_string(st.step_log().back()));
        list.push_back(std::move(e));
    }
    std::vector<BigInt> runs;
    for (auto r : run_lengths(states.back().step_log())) {
        runs.push_back(r);
    }
    out.results["states"] = std::move(list);
    out.results["run_lengths"] = big_list(runs);
    return out;
}

inline Outcome cmd_snf(const Options &o)
{
    reject(o, "snf", {"--matrix"});
    Outcome out;
    const IntMatrix m = matrix_flag(o, "snf", std::nullopt);
    out.inputs["matrix"] = matrix_json(m);
    const SmithForm sf = smith_normal_form(m);
    out.results["U"] = matrix_json(sf.u);
    out.results["D"] = matrix_json(sf.d);
    out.results["V"] = matrix_json(sf.v);
    out.results["diagonal"] = big_list(sf.diagonal());
    out.results["quotient"] = sf.quotient_string();
    return out;
}

inline Outcome cmd_hilbert(const Options &o)
{
    reject(o, "hilbert", {"--matrix"});
    Outcome out;
    const IntMatrix m = matrix_flag(o, "hilbert", 2);
    out.inputs["matrix"] = matrix_json(m);
    SemigroupBasis hb;
    try {
        hb = hilbert_basis_2d({m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)});
    } catch (const std::invalid_argument &e) {
        throw config_error(std::string("hilbert: ") + e.what());
    }
    out.results["rays"] = points_json({hb.rays[0], hb.rays[1]});
    out.results["generators"] = points_json(hb.generators);
    out.results["size"] = hb.size();
    return out;
}

inline json action_json(const DiagonalAction &g)
{
    return {{"order", big(g.order())}, {"a", big(g.a())}, {"b", big(g.b())}};
}

inline Outcome cmd_regularity(const Options &o)
{
    reject(o, "regularity", {"--matrix"});
    Outcome out;
    const IntMatrix m = matrix_flag(o, "regularity", 2);
    out.inputs["matrix"] = matrix_json(m);
    Regularity r;
    try {
        r = below_ring_regularity(m);
    } catch (const std::invalid_argument &e) {
        throw config_error(std::string("regularity: ") + e.what());
    }
    out.results["det"] = big(m.det());
    out.results["regular"] = r.regular;
    out.results["verdict"] = r.regular ? "Regular" : "Singular";
    out.results["embedding_dim"] = r.embedding_dim;
    out.results["primitive_det"] = big(r.primitive_det);
    out.results["dual_rays"] = points_json({r.basis.rays[0], r.basis.rays[1]});
    out.results["hilbert_basis"] = points_json(r.basis.generators);
    out.results["invariant_exponents"] = points_json(r.invariant_exponents);
    const BigInt d = abs(m.det());
    if (is_prime(d)) {
        const DiagonalAction g = action_from_matrix(m);
        out.results["action"] = action_json(g);
        out.results["pi1_order"] = big(pi1_order(g));
    } else {
        out.results["action"] = nullptr;
    }
    return out;
}

inline Characteristic characteristic_flag(const Options &o, json &inputs)
{
    const BigInt c = optional_or(o.ch, "--char", 0);
    inputs["char"] = big(c);
    try {
        return make_characteristic(c);
    } catch (const std::invalid_argument &e) {
        throw config_error(std::string("--char: ") + e.what());
    }
}

inline Outcome cmd_lemma5(const Options &o)
{
    reject(o, "lemma5", {"--order", "--a", "--b", "--char"});
    Outcome out;
    const BigInt p = required(o.order, "--order", "lemma5");
    const BigInt a = required(o.a, "--a", "lemma5");
    const BigInt b = required(o.b, "--b", "lemma5");
    out.inputs["order"] = big(p);
    out.inputs["a"] = big(a);
    out.inputs["b"] = big(b);
    const Characteristic ch = characteristic_flag(o, out.inputs);
    const DiagonalAction g(p, a, b);
    const InvariantGenerators gens = invariant_generators(g);
    const bool regular = a == 0 || b == 0;
    out.results["full_generators"] = terms_json(gens.full);
    std::vector<Point2> minimal;
    for (const auto &t : gens.minimal) {
        minimal.push_back(t.exponent);
    }
    // Listed by decreasing x exponent, as in the k[[x^p, x^i y^j, ..., y^p]] display.
    std::reverse(minimal.begin(), minimal.end());
    out.results["minimal_generators"] = points_json(minimal);
    out.results["regular"] = regular;
    out.results["pi1"] = big(pi1_order(g));
    out.results["exponent_matrix"] = matrix_json(exponent_matrix(g));
    if (!regular) {
        const RamificationCertificate rc = ramification_minors(g, ch);
        out.results["ramification"] = {{"y_witness", terms_json({rc.y_witness})[0]},
                                       {"x_witness", terms_json({rc.x_witness})[0]},
                                       {"j_last", big(rc.j_last)},
                                       {"i_one", big(rc.i_one)},
                                       {"minor_count", rc.minors.size()},
                                       {"radical_is_maximal", rc.radical_is_maximal}};
    } else {
        out.results["ramification"] = nullptr;
    }
    return out;
}

inline Injection parse_injection(const std::string &text, std::size_t steps)
{
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos) {
        throw config_error("--inject-regular: expected BRANCH:STEP, got \"" + text + "\"");
    }
    const BigInt br = parse_integer(text.substr(0, colon), "--inject-regular branch");
    const BigInt st = parse_integer(text.substr(colon + 1), "--inject-regular step");
    if (br != 1 && br != 2) {
        throw config_error("--inject-regular: branch must be 1 or 2");
    }
    if (st < 0 || st > steps) {
        throw config_error("--inject-regular: step must lie in 0.." + std::to_string(steps));
    }
    return Injection{static_cast<std::size_t>(br) - 1, static_cast<std::size_t>(st)};
}

inline json positivity_json(const PositivityEntry &e)
{
    return {{"name", e.name},
            {"value", quad_json(e.from_definition)},
            {"tau_form", e.tau_form.str()},
            {"epsilon_form", e.epsilon_form.str()},
            {"positive", e.positive}};
}

inline json branch_json(const BranchData &b)
{
    return {{"label", b.label},
            {"prime", big(b.prime)},
            {"matrix", matrix_json(b.matrix)},
            {"det", big(b.matrix.det())},
            {"nu_root", str(b.nu_root)},
            {"params", json::array({str(b.params[0]), str(b.params[1])})},
            {"positivity", json::array({positivity_json(b.positivity[0]), positivity_json(b.positivity[1])})},
            {"group_index", {{"index", big(b.index.index)}, {"change_of_basis", matrix_json(b.index.change_of_basis)}}},
            {"smith", {{"diagonal", big_list(b.smith.diagonal())}, {"quotient", b.smith.quotient_string()}}}};
}

inline json step_json(std::size_t branch, const StepRecord &r)
{
    return {{"branch", branch + 1},
            {"step", r.index},
            {"matrix", matrix_json(r.matrix)},
            {"det", big(r.det)},
            {"verdict", r.regular ? "Regular" : "Singular"},
            {"embedding_dim", r.embedding_dim},
            {"tag", r.tag ? json(to_string(*r.tag)) : json(nullptr)},
            {"action", r.action ? action_json(*r.action) : json(nullptr)},
            {"pi1", big(r.pi1)},
            {"invariant_exponents", points_json(r.invariant_exponents)}};
}

inline Outcome cmd_counterexample(const Options &o)
{
    reject(o, "counterexample", {"--q", "--p", "--m", "--n", "--steps", "--char", "--inject-regular"});
    Outcome out;
    InstanceConfig cfg;
    cfg.q = optional_or(o.q, "--q", 11);
    cfg.p = optional_or(o.p, "--p", 13);
    cfg.m = optional_or(o.m, "--m", 3);
    cfg.n = optional_or(o.n, "--n", 3);
    cfg.steps = o.steps.value_or(25);
    out.inputs["q"] = big(cfg.q);
    out.inputs["p"] = big(cfg.p);
    out.inputs["m"] = big(cfg.m);
    out.inputs["n"] = big(cfg.n);
    out.inputs["steps"] = cfg.steps;
    cfg.characteristic = characteristic_flag(o, out.inputs);
    SweepOptions sopt;
    if (o.inject) {
        sopt.injection = parse_injection(*o.inject, cfg.steps);
        out.inputs["inject_regular"] = *o.inject;
    }
    const Instance inst = build(cfg);
    const SweepReport sweep = singularity_sweep(inst, cfg.steps, sopt);

    out.results["tau"] = quad_json(inst.tau);
    out.results["epsilon"] = quad_json(inst.epsilon);
    out.results["branches"] = json::array({branch_json(inst.branches[0]), branch_json(inst.branches[1])});
    json charts = json::array();
    for (const auto &c : inst.charts) {
        charts.push_back({{"chart", c.chart},
                          {"u_correction", big_list({c.u_correction[0], c.u_correction[1]})},
                          {"v_correction", big_list({c.v_correction[0], c.v_correction[1]})}});
    }
    out.results["charts"] = std::move(charts);
    json steps = json::array();
    json regular_steps = json::array();
    for (std::size_t k = 0; k < 2; ++k) {
        for (const auto &r : sweep.branches[k].records) {
            steps.push_back(step_json(k, r));
        }
        regular_steps.push_back(sweep.branches[k].regular_steps());
    }
    out.results["steps"] = std::move(steps);
    out.results["regular_steps"] = std::move(regular_steps);
    if (sweep.falsification) {
        const Falsification &f = *sweep.falsification;
        out.results["falsification"] = {
            {"branch", f.branch + 1}, {"step", f.step}, {"matrix", matrix_json(f.matrix)}, {"reason", f.reason}};
        out.results["contradiction"] = nullptr;
        out.verdict = "Falsified";
        out.code = exit_falsified;
        return out;
    }
    const ContradictionReport cr = contradiction_report(inst, sweep);
    out.results["falsification"] = nullptr;
    out.results["contradiction"] = {{"branch1_singular", cr.branch1_singular},
                                    {"order_branch1", big(cr.order_branch1)},
                                    {"order_branch2", big(cr.order_branch2)},
                                    {"branch2_regular_steps", cr.branch2_regular_steps},
                                    {"orders_differ", cr.orders_differ},
                                    {"contradiction", cr.contradiction},
                                    {"steps_checked", cr.steps_checked}};
    if (!cr.contradiction) {
        throw internal_fault("counterexample: contradiction not certified on an unfalsified sweep");
    }
    out.verdict = "Verified";
    return out;
}

inline void emit_text(std::ostream &os, const json &j, const std::string &prefix)
{
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            emit_text(os, it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
        }
    } else if (j.is_array() && !j.empty() && (j.front().is_object())) {
        for (std::size_t k = 0; k < j.size(); ++k) {
            emit_text(os, j[k], prefix + "[" + std::to_string(k) + "]");
        }
    } else {
        os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
    }
}

} // namespace detail

/// Parses argv (without the program name), runs one subcommand and writes a
/// report to `out`, diagnostics to `err`. Returns the process exit code.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Exact certificates for monomial valuations, toric quotients and quadratic transforms", "toricert"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    auto opt_str = [&](const char *name, std::optional<std::string> &slot, const char *help) {
        app.add_option_function<std::string>(name, [&slot](const std::string &v) { slot = v; }, help);
    };
    opt_str("--q", o.q, "Prime q (branch nu1); tau uses a = q - 4");
    opt_str("--p", o.p, "Prime p (branch nu2)");
    opt_str("--m", o.m, "Odd exponent m of x^m y^n");
    opt_str("--n", o.n, "Odd exponent n of x^m y^n");
    opt_str("--a", o.a, "tau parameter a, or the x weight (lemma5)");
    opt_str("--b", o.b, "y weight (lemma5)");
    opt_str("--order", o.order, "Group order (lemma5)");
    opt_str("--matrix", o.matrix, "Square integer matrix, row-major comma list");
    opt_str("--support", o.support, "Monomial support i:j,... for value");
    opt_str("--char", o.ch, "Field characteristic (0 or an odd prime)");
    opt_str("--inject-regular", o.inject, "Inject a unimodular matrix at BRANCH:STEP");
    app.add_option_function<std::size_t>("--steps", [&](const std::size_t &v) { o.steps = v; }, "Step or term count");
    app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "text"}));
    app.add_flag("--timing", o.timing, "Record wall-clock milliseconds in the report");

    using Handler = detail::Outcome (*)(const Options &);
    const std::pair<const char *, Handler> commands[] = {
        {"tau", detail::cmd_tau},
        {"convergents", detail::cmd_convergents},
        {"value", detail::cmd_value},
        {"transform", detail::cmd_transform},
        {"snf", detail::cmd_snf},
        {"hilbert", detail::cmd_hilbert},
        {"regularity", detail::cmd_regularity},
        {"lemma5", detail::cmd_lemma5},
        {"counterexample", detail::cmd_counterexample},
    };
    for (const auto &[name, fn] : commands) {
        app.add_subcommand(name);
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError &e) {
        return app.exit(e, out, err) == 0 ? exit_ok : exit_usage;
    }
    std::string command;
    Handler handler = nullptr;
    for (const auto &[name, fn] : commands) {
        if (app.got_subcommand(name)) {
            command = name;
            handler = fn;
        }
    }

    const auto t0 = std::chrono::steady_clock::now();
    detail::Outcome res;
    try {
        res = handler(o);
    } catch (const internal_fault &e) {
        err << "toricert: internal fault: " << e.what() << '\n';
        return exit_fault;
    } catch (const std::invalid_argument &e) {
        err << "toricert: " << command << ": " << e.what() << '\n';
        return exit_usage;
    } catch (const std::domain_error &e) {
        err << "toricert: " << command << ": " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception &e) {
        err << "toricert: internal fault: " << e.what() << '\n';
        return exit_fault;
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    json report{{"schema_version", schema_version},
                {"command", command},
                {"inputs", std::move(res.inputs)},
                {"results", std::move(res.results)},
                {"verdict", res.verdict},
                {"timing_ms", o.timing ? json(ms) : json(nullptr)}};
    if (o.format == "json") {
        out << report.dump(2) << '\n';
    } else {
        detail::emit_text(out, report, "");
    }
    if (res.code == exit_falsified) {
        err << "toricert: falsified: " << report["results"]["falsification"]["reason"].get<std::string>() << '\n';
    }
    return res.code;
}

} // namespace toricert::cli

#endif
