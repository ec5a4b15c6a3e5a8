// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <toricert/cli.hpp>
#include <toricert/counterexample.hpp>

#include "oracles.hpp"

using namespace toricert;
using toricert::cli::json;

namespace
{

// Pinned limits, in milliseconds.
constexpr double sweep_limit_ms = 5000;
constexpr double quotient_limit_ms = 10000;
constexpr double oracle_limit_ms = 30000;

std::string detail_str(const IntMatrix &m)
{
    std::ostringstream os;
    os << m;
    return os.str();
}

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string &what)
    {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

struct CliRun {
    int code;
    json report;
    double ms;
};

CliRun run_cli(const std::vector<std::string> &args)
{
    std::ostringstream out, err;
    const auto t0 = std::chrono::steady_clock::now();
    const int code = cli::run(args, out, err);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return {code, out.str().empty() ? json() : json::parse(out.str()), ms};
}

// Sweep criterion shared by the two sanctioned prime pairs.
Check sweep_criterion(const std::string &q, const std::string &p, const std::string &m)
{
    Check c;
    const CliRun r = run_cli({"counterexample", "--q", q, "--p", p, "--m", m, "--n", m, "--steps", "25"});
    c.require(r.code == 0, "exit code " + std::to_string(r.code));
    c.require(r.ms < sweep_limit_ms, "runtime " + std::to_string(r.ms) + " ms");
    if (r.code != 0) {
        return c;
    }
    const json &steps = r.report["results"]["steps"];
    c.require(steps.size() == 52, "expected 52 step records, got " + std::to_string(steps.size()));
    for (const auto &s : steps) {
        const long long want = s["branch"] == 1 ? std::stoll(q) : std::stoll(p);
        const long long det = s["det"].get<long long>();
        c.require(det == want || det == -want,
                  "branch " + s["branch"].dump() + " step " + s["step"].dump() + ": |det| = " + std::to_string(det));
    }
    for (const auto &s : steps) {
        c.require(s["verdict"] == "Singular", "branch " + s["branch"].dump() + " step " + s["step"].dump() + " "
                                                  + s["matrix"].dump() + " reports Regular");
    }
    return c;
}

Check criterion3()
{
    Check c;
    for (long long q = 5; q <= 50; ++q) {
        if (!is_prime(q)) {
            continue;
        }
        const BigInt a = q - 4;
        const QuadExt tau = tau_from_a(a);
        const QuadExt eps = tau - tau.lift(a);
        c.require(eps.sign() > 0, "epsilon <= 0 at q = " + std::to_string(q));
        c.require((tau.lift(1) - eps).sign() > 0, "epsilon >= 1 at q = " + std::to_string(q));
        // Integer form: a < sqrt(a^2 + 4a) < a + 2.
        c.require(a * a < a * a + 4 * a && a * a + 4 * a < (a + 2) * (a + 2), "integer bracket");
    }
    return c;
}

Check criterion4()
{
    Check c;
    for (auto [q, p, m] : {std::array<long long, 3>{11, 13, 3}, {17, 23, 7}}) {
        InstanceConfig cfg;
        cfg.q = q;
        cfg.p = p;
        cfg.m = cfg.n = m;
        const Instance inst = build(cfg);
        const QuadExt &tau = inst.tau;
        const QuadExt &eps = inst.epsilon;
        const QuadExt qq = tau.lift(q), pp = tau.lift(p), two = tau.lift(2);
        const std::string tag = "(" + std::to_string(q) + "," + std::to_string(p) + ") ";
        const QuadExt displays[4][2] = {
            {(tau.lift(q - 2) - tau) / qq, (two - eps) / qq},
            {two / qq * (two + tau) - tau.lift(1), (tau.lift(q - 4) + two * eps) / qq},
            {(tau.lift(p - 2) - tau) / pp, (tau.lift(p - q + 2) - eps) / pp},
            {two / pp * (two + tau) - tau.lift(1), (tau.lift(2 * q - p - 4) + two * eps) / pp},
        };
        const QuadExt computed[4] = {inst.branches[0].positivity[0].from_definition,
                                     inst.branches[0].positivity[1].from_definition,
                                     inst.branches[1].positivity[0].from_definition,
                                     inst.branches[1].positivity[1].from_definition};
        for (int k = 0; k < 4; ++k) {
            c.require(displays[k][0] == displays[k][1], tag + "display " + std::to_string(k) + ": forms differ");
            c.require(computed[k] == displays[k][1], tag + "display " + std::to_string(k) + ": value differs");
            c.require(computed[k].sign() > 0, tag + "display " + std::to_string(k) + ": not positive");
        }
    }
    return c;
}

Check criterion5()
{
    Check c;
    const QuadExt tau = tau_from_a(7);
    const std::array<ValueElement, 2> nu{ValueElement::of_tau(tau), ValueElement::integer(1, tau)};
    for (long long r : {11, 13}) {
        // x1 = v/z, y1 = z^2/v with nu(z) = (2 + tau)/r.
        const ValueElement z = (ValueElement::integer(2, tau) + ValueElement::of_tau(tau)).divided_by(r);
        const ValueElement x1 = nu[1] - z;
        const ValueElement y1 = BigInt(2) * z - nu[1];
        const BigInt idx = group_index(nu, {x1, y1}).index;
        const SmithForm sf = smith_normal_form(branch_matrix(r));
        const auto tors = sf.torsion();
        c.require(idx == r, "group index " + to_string(idx) + " for r = " + std::to_string(r));
        c.require(tors.size() == 1 && tors[0] == r, "Smith form " + sf.quotient_string());
        c.require(sf.quotient_string() == "Z/" + std::to_string(r), "quotient string");
    }
    return c;
}

Check criterion6()
{
    Check c;
    for (long long p : {2, 3, 5, 7, 11, 13}) {
        for (long long a = 0; a < p; ++a) {
            for (long long b = 0; b < p; ++b) {
                if (a == 0 && b == 0) {
                    continue;
                }
                const std::string tag = "(" + std::to_string(p) + "," + std::to_string(a) + "," + std::to_string(b) + ")";
                const DiagonalAction g(p, a, b);
                std::vector<Point2> formula;
                for (const auto &t : invariant_generators(g).minimal) {
                    formula.push_back(t.exponent);
                }
                c.require(formula == oracle::cyclic_invariants(p, a, b, 2 * p), tag + " generators");
                const bool regular = a == 0 || b == 0;
                c.require(below_ring_regularity(exponent_matrix(g)).regular == regular, tag + " regularity");
                c.require(pi1_order(g) == (regular ? 1 : p), tag + " pi1");
                if (!regular) {
                    const RamificationCertificate rc = ramification_minors(g);
                    const long long binv = static_cast<long long>(mod_inverse(b, p));
                    const long long j_last = (a * (p - 1) % p) * binv % p;
                    const long long i1 = b * static_cast<long long>(mod_inverse(a, p)) % p;
                    c.require(rc.y_witness == Term{p, {0, p - 1 + j_last}}, tag + " y witness");
                    c.require(rc.x_witness == Term{p, {2 * p - 1 - i1, 0}}, tag + " x witness");
                    c.require(rc.radical_is_maximal, tag + " radical");
                }
            }
        }
    }
    return c;
}

Check criterion7()
{
    Check c;
    std::size_t n = 0;
    for (long long a = 0; a <= 10; ++a) {
        for (long long b = 0; b <= 10; ++b) {
            for (long long d0 = 0; d0 <= 10; ++d0) {
                for (long long d1 = 0; d1 <= 10; ++d1) {
                    const IntMatrix m{{a, b}, {d0, d1}};
                    if (m.det() == 0) {
                        continue;
                    }
                    ++n;
                    try {
                        const Regularity r = below_ring_regularity(m);
                        const bool det_test = abs(r.primitive_det) == 1;
                        c.require(det_test == (r.embedding_dim == 2), "criteria disagree at " + detail_str(m));
                    } catch (const internal_fault &e) {
                        c.require(false, e.what());
                    }
                }
            }
        }
    }
    c.require(n > 0, "no matrices");
    return c;
}

Check criterion8()
{
    Check c;
    const QuadExt tau = tau_from_a(7);
    const auto states =
        run_sequence(initial_state(IntMatrix::identity(2), ValueElement::of_tau(tau), ValueElement::integer(1, tau)), 40);
    const auto runs = run_lengths(states.back().step_log());
    const auto pq = partial_quotients(tau, runs.size());
    for (std::size_t k = 0; k < runs.size(); ++k) {
        const BigInt want = k % 2 == 0 ? 7 : 1;
        c.require(pq[k] == want, "partial quotient " + std::to_string(k));
        if (k + 1 < runs.size()) {
            c.require(BigInt(runs[k]) == want, "run " + std::to_string(k) + " has length " + std::to_string(runs[k]));
        } else {
            c.require(BigInt(runs[k]) <= want, "last run too long");
        }
    }
    for (std::size_t p = 1; p <= 20; ++p) {
        const auto cp = convergent_parameters(tau, p);
        c.require(abs(cp.matrix.det()) == 1, "convergent matrix det at p = " + std::to_string(p));
        c.require(cp.epsilon == 1 || cp.epsilon == -1, "epsilon");
    }
    for (const auto &s : states) {
        c.require(abs(s.det()) == 1, "transform state not unimodular");
    }
    return c;
}

Check criterion9()
{
    Check c;
    oracle::Gen gen(20240);
    int done = 0;
    while (done < 200) {
        const auto n = static_cast<std::size_t>(gen.uniform(1, 3));
        const IntMatrix a = gen.matrix(n, 0, 9);
        if (a.det() == 0) {
            continue;
        }
        ++done;
        try {
            const AdjugateCertificate cert = adjugate_power_identity(a);
            c.require(oracle::multiply(cert.adj, cert.reindexed) == cert.d * IntMatrix::identity(n), "adj(A) A != d I");
            c.require(cert.radical_certified, "radical not certified");
        } catch (const std::exception &e) {
            c.require(false, e.what());
        }
    }
    return c;
}

Check criterion10()
{
    Check c;
    const CliRun r = run_cli({"counterexample", "--q", "11", "--p", "13", "--steps", "25", "--inject-regular", "1:7"});
    c.require(r.code == 2, "exit code " + std::to_string(r.code));
    if (!r.report.is_null()) {
        c.require(r.report["verdict"] == "Falsified", "verdict " + r.report["verdict"].dump());
        c.require(r.report["results"]["falsification"].is_object(), "no falsification report");
    } else {
        c.require(false, "no report");
    }
    return c;
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        const char *name;
        double limit_ms;
        std::function<Check()> fn;
    };
    const Criterion all[] = {
        {1, "sweep q=11 p=13: all Singular, |det| 11/13, exit 0, < 5 s", 0, [] { return sweep_criterion("11", "13", "3"); }},
        {2, "sweep q=17 p=23: same verdicts, < 5 s", 0, [] { return sweep_criterion("17", "23", "7"); }},
        {3, "epsilon in (0,1) for primes 5..50", 0, criterion3},
        {4, "positivity ledger forms agree and are positive", 0, criterion4},
        {5, "group index and Smith form give Z/11, Z/13", 0, criterion5},
        {6, "cyclic quotient exhaustive suite, < 10 s", quotient_limit_ms, criterion6},
        {7, "determinant vs Hilbert-basis criterion, entries <= 10, < 30 s", oracle_limit_ms, criterion7},
        {8, "transform run lengths 7,1,7,1,... and unimodular convergents", 0, criterion8},
        {9, "adjugate power identity on 200 random matrices", 0, criterion9},
        {10, "injected unimodular state falsifies with exit 2", 0, criterion10},
    };
    int failures = 0;
    for (const auto &cr : all) {
        const auto t0 = std::chrono::steady_clock::now();
        Check c;
        try {
            c = cr.fn();
        } catch (const std::exception &e) {
            c.ok = false;
            c.detail = std::string("exception: ") + e.what();
        }
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        if (cr.limit_ms > 0 && ms >= cr.limit_ms) {
            c.require(false, "time limit " + std::to_string(cr.limit_ms) + " ms exceeded");
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.1f ms", ms);
        std::cout << (c.ok ? "PASS" : "FAIL") << " [" << cr.id << "] " << cr.name << " (" << buf << ")";
        if (!c.ok) {
            std::cout << ": " << c.detail;
            ++failures;
        }
        std::cout << '\n';
    }
    std::cout << (10 - failures) << "/10 criteria passed\n";
    return failures == 0 ? 0 : 1;
}
