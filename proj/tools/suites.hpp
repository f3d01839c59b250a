#pragma once

// Named verification suites for `coha check`.

#include <coha/coha.hpp>

#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace coha::suites
{

struct SuiteOptions {
    std::uint64_t seed = 1;
    std::string series_path; // golden series for the macmahon suite
};

struct SuiteReport {
    bool pass = true;
    std::vector<std::string> lines;

    void note(const std::string &s)
    {
        lines.push_back(s);
    }
    void expect(bool ok, const std::string &what)
    {
        pass = pass && ok;
        lines.push_back(std::string(ok ? "ok    " : "FAIL  ") + what);
    }
};

template <class T>
std::string str(const T &x)
{
    std::ostringstream os;
    os << x;
    return os.str();
}

inline std::shared_ptr<const Quiver> shared(Quiver q)
{
    return std::make_shared<const Quiver>(std::move(q));
}

/// A_2 with its single arrow 2 -> 1.
inline Quiver a2()
{
    return Quiver({"1", "2"}, {{"a", "2", "1"}});
}

/// A_3 oriented 1 -> 2 -> 3.
inline Quiver a3()
{
    return Quiver({"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}});
}

/// D_4 with the central vertex 2 as the only sink.
inline Quiver d4()
{
    return Quiver({"1", "2", "3", "4"}, {{"a", "1", "2"}, {"b", "3", "2"}, {"c", "4", "2"}});
}

inline CentralCharge charge(std::initializer_list<std::pair<long, long>> pts)
{
    std::vector<CentralCharge::Point> v;
    for (auto [re, im] : pts) {
        v.push_back({Rational(re), Rational(im)});
    }
    return CentralCharge(std::move(v));
}

/// Compares factors ray by ray against quantum dilogarithms on the expected rays.
inline bool factors_are_dilogs(const std::vector<RayFactor> &fs, const std::vector<DimVector> &rays,
                               SuiteReport &rep)
{
    if (fs.size() != rays.size()) {
        rep.note("expected " + std::to_string(rays.size()) + " factors, got " + std::to_string(fs.size()));
        return false;
    }
    bool ok = true;
    for (std::size_t k = 0; k < fs.size(); ++k) {
        const auto &f = fs[k].factor;
        const bool same = fs[k].ray.primitive() == rays[k] &&
                          f == quantum_dilog(f.quiver_ptr(), rays[k], f.truncation());
        if (!same) {
            rep.note("factor " + std::to_string(k) + " on ray " + str(fs[k].ray.primitive()) + " differs");
        }
        ok = ok && same;
    }
    return ok;
}

inline SuiteReport pentagon(const SuiteOptions &)
{
    SuiteReport rep;
    const long n = 8;
    auto q = shared(a2());
    const TorusSeries a = dt_series_zero_potential(q, n);
    const TorusSeries one = TorusSeries::one(q, Basis::EHAT, n);

    const auto three = hn_peel(a, charge({{1, 1}, {-1, 1}}));
    for (const auto &rf : three) {
        rep.note("ray " + str(rf.ray.primitive()) + ": (q^{1/2} ê_" + str(rf.ray.primitive()) + "; q)_inf");
    }
    rep.expect(factors_are_dilogs(three, {{0, 1}, {1, 1}, {1, 0}}, rep),
               "Arg z2 > Arg z1: E(ê_2) E(ê_12) E(ê_1)");
    rep.expect(clockwise_product(three, one) == a, "three-factor product reproduces A");

    const auto two = hn_peel(a, charge({{-1, 1}, {1, 1}}));
    rep.expect(factors_are_dilogs(two, {{1, 0}, {0, 1}}, rep), "Arg z1 > Arg z2: E(ê_1) E(ê_2)");
    rep.expect(clockwise_product(two, one) == a, "two-factor product reproduces A");
    return rep;
}

inline std::vector<std::pair<std::string, Quiver>> small_quivers()
{
    return {{"Q0", Quiver::loops(0)}, {"Q1", Quiver::loops(1)}, {"Q2", Quiver::loops(2)},
            {"Q3", Quiver::loops(3)}, {"A2", a2()},            {"A3", a3()}};
}

inline SuiteReport reineke(const SuiteOptions &)
{
    SuiteReport rep;
    const long n = 6;
    for (const auto &[name, q0] : small_quivers()) {
        auto q = shared(q0);
        const TorusSeries a = dt_series_zero_potential(q, n);
        const auto g = reineke_solve(*q, n);
        std::vector<ClassicalSeries> lim;
        for (std::size_t i = 0; i < q->rank(); ++i) {
            const auto fr = a_gamma(a, DimVector::unit(q->rank(), i));
            if (!fr.laurent_ok) {
                rep.expect(false, name + ": A^(e_" + q->vertices()[i] + ") has a non-Laurent coefficient");
                lim.clear();
                break;
            }
            lim.push_back(classical_limit(fr.series));
            rep.expect(lim.back() == g[i], name + ": classical limit at vertex " + q->vertices()[i] +
                                               " equals the fixed-point solution");
        }
        if (!lim.empty()) {
            rep.expect(reineke_satisfied(*q, lim), name + ": limits satisfy the functional equations");
        }
    }
    const auto q2 = reineke_solve(Quiver::loops(2), 4)[0];
    rep.expect(q2 == ClassicalSeries::from_coefficients({1, 1, 2, 5, 14}, 4), "Q2: Catalan 1,1,2,5,14");
    return rep;
}

/// Underlying quiver of the MacMahon series; its potential x[y, z] is not needed here.
inline Quiver q3()
{
    return Quiver::loops(3);
}

inline SuiteReport macmahon(const SuiteOptions &opt)
{
    SuiteReport rep;
    std::ifstream in(opt.series_path);
    if (!in) {
        throw Error("cannot open series document '" + opt.series_path + "'");
    }
    std::stringstream text;
    text << in.rdbuf();
    auto q = shared(q3());
    const TorusSeries a = parse_series(text.str(), q);
    const auto fr = a_gamma(a, DimVector{1});
    rep.expect(fr.laurent_ok, "A^(1) has Laurent coefficients");
    if (!fr.laurent_ok) {
        return rep;
    }
    const ClassicalSeries lim = classical_limit(fr.series);
    const long n = std::min<long>(a.truncation(), 7);
    const std::vector<Rational> expected{1, 1, 3, 6, 13, 24, 48, 86};
    std::string got;
    bool ok = true;
    for (long k = 0; k <= n; ++k) {
        got += (k ? "," : "") + lim.coeff(k).get_str();
        ok = ok && lim.coeff(k) == expected[static_cast<std::size_t>(k)];
    }
    rep.expect(ok, "classical limit of A^(1) is prod (1-x^n)^{-n}: " + got);
    const auto omega = refined_dt(a, Ray(DimVector{1}));
    rep.expect(omega.laurent_ok, "refined invariants on the ray of ê_1 are Laurent");
    return rep;
}

inline SuiteReport dynkin(const SuiteOptions &opt)
{
    SuiteReport rep;
    const auto r2 = dynkin_period_check(a2(), 5, 20, opt.seed);
    rep.expect(r2.period == 5, "A2: period " + (r2.period ? std::to_string(*r2.period) : "none") + " (expected 5)");
    const auto r3 = dynkin_period_check(a3(), 5, 20, opt.seed);
    rep.expect(r3.period == 3 || r3.period == 6,
               "A3: period " + (r3.period ? std::to_string(*r3.period) : "none") + " (expected 3 or 6)");
    const auto r4 = dynkin_period_check(d4(), 5, 20, opt.seed);
    rep.note("D4: measured period " + (r4.period ? std::to_string(*r4.period) : "none"));
    return rep;
}

inline SuiteReport framed_laurent(const SuiteOptions &)
{
    SuiteReport rep;
    const long n = 6;
    for (const auto &[name, q0] : small_quivers()) {
        if (name == "A3") {
            continue;
        }
        auto q = shared(q0);
        const TorusSeries a = dt_series_zero_potential(q, n);
        bool ok = true;
        for (const auto &g : effective_vectors(q->rank(), 0, 3)) {
            const auto fr = a_gamma(a, g);
            if (!fr.laurent_ok) {
                rep.note(name + ": gamma " + str(g) + " fails at " + str(*fr.first_failure));
                ok = false;
            }
        }
        rep.expect(ok, name + ": A^(gamma) Laurent for |gamma| <= 3 at N = 6");
    }
    return rep;
}

/// Random integral Laurent polynomial with small support.
inline LaurentQ random_laurent(std::mt19937_64 &rng)
{
    std::uniform_int_distribution<long> exp(-3, 3), coeff(-2, 2), count(0, 2);
    LaurentQ p;
    for (long t = count(rng); t > 0; --t) {
        p.add_term(exp(rng), coeff(rng));
    }
    return p;
}

/// Sym(sum_gamma f_gamma x^gamma / (1 - q)) for random Laurent f_gamma.
inline LambdaSeries random_admissible(std::mt19937_64 &rng, std::size_t rank, long n)
{
    LambdaSeries g(rank, n);
    for (const auto &gamma : effective_vectors(rank, 1, n)) {
        g.set(gamma, QRational(random_laurent(rng), {{1, 1}}));
    }
    return pleth_sym(g);
}

inline std::vector<std::vector<long>> random_symmetric(std::mt19937_64 &rng, std::size_t rank)
{
    std::uniform_int_distribution<long> entry(-2, 2);
    std::vector<std::vector<long>> b(rank, std::vector<long>(rank));
    for (std::size_t i = 0; i < rank; ++i) {
        for (std::size_t j = i; j < rank; ++j) {
            b[i][j] = b[j][i] = entry(rng);
        }
    }
    return b;
}

/// Counts twisted random admissible series that stay admissible.
inline long twisted_trials(std::uint64_t seed, long trials, std::vector<std::string> *failures = nullptr)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> rank_dist(1, 2);
    std::uniform_int_distribution<long> n_dist(1, 5);
    long passed = 0;
    for (long t = 0; t < trials; ++t) {
        const std::size_t rank = static_cast<std::size_t>(rank_dist(rng));
        const long n = n_dist(rng);
        const LambdaSeries f = random_admissible(rng, rank, n);
        const auto b = random_symmetric(rng, rank);
        const auto res = admissible_decompose(twist_series(f, b));
        if (res) {
            ++passed;
        } else if (failures) {
            failures->push_back("trial " + std::to_string(t) + ": " + res.reason + " at " + str(*res.failed_at));
        }
    }
    return passed;
}

inline SuiteReport twisted_admissible(const SuiteOptions &opt)
{
    SuiteReport rep;
    std::vector<std::string> failures;
    const long passed = twisted_trials(opt.seed, 50, &failures);
    for (const auto &f : failures) {
        rep.note(f);
    }
    rep.expect(passed == 50, std::to_string(passed) + "/50 twisted series admissible");
    return rep;
}

inline const std::vector<std::pair<std::string, std::function<SuiteReport(const SuiteOptions &)>>> &registry()
{
    static const std::vector<std::pair<std::string, std::function<SuiteReport(const SuiteOptions &)>>> r{
        {"pentagon", pentagon}, {"reineke", reineke},   {"macmahon", macmahon},
        {"dynkin", dynkin},     {"theorem6", framed_laurent}, {"theorem9", twisted_admissible}};
    return r;
}

} // namespace coha::suites
