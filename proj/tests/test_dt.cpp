#include <coha/dt.hpp>
#include <coha/json_io.hpp>

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace coha;

namespace
{

std::shared_ptr<const Quiver> shared(Quiver q)
{
    return std::make_shared<const Quiver>(std::move(q));
}

Quiver a2()
{
    return Quiver({"1", "2"}, {{"a", "2", "1"}});
}

Quiver a3()
{
    return Quiver({"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}});
}

LaurentQ v(long e, long c = 1)
{
    return LaurentQ::monomial(e, c);
}

std::string read(const std::string &name)
{
    std::ifstream in(std::string(COHA_TESTDATA) + "/" + name);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

ClassicalSeries one_var(std::vector<long> c)
{
    return ClassicalSeries::from_coefficients(std::vector<Rational>(c.begin(), c.end()),
                                              static_cast<long>(c.size()) - 1);
}

} // namespace

TEST(DtSeries, Coefficients)
{
    const TorusSeries a0 = dt_series_zero_potential(Quiver::loops(0), 3);
    EXPECT_EQ(a0.basis(), Basis::EHAT);
    EXPECT_TRUE(a0.coeff({0}).is_one());
    EXPECT_EQ(a0.coeff({2}), QRational(v(4), {{1, 1}, {2, 1}}));
    EXPECT_EQ(a0.coeff({3}), QRational(v(9, -1), {{1, 1}, {2, 1}, {3, 1}}));

    const TorusSeries a = dt_series_zero_potential(a2(), 3);
    EXPECT_EQ(a.coeff({1, 1}), QRational(v(1, -1), {{1, 2}}));
    EXPECT_EQ(a.coeff({2, 1}), QRational(v(3, -1), {{1, 2}, {2, 1}}));
    EXPECT_EQ(a, dt_series_zero_potential(shared(a2()), 3));
    EXPECT_EQ(a.coeffs().size(), effective_vectors(2, 0, 3).size());
    EXPECT_EQ(inverse_pochhammer({2, 1}), QRational(LaurentQ(1), {{1, 2}, {2, 1}}));
}

TEST(DtSeries, MatchesIndependentGolden)
{
    auto q = shared(Quiver::loops(0));
    EXPECT_EQ(parse_series(read("q0_dt_series_n4.json"), q, 4), dt_series_zero_potential(q, 4));
}

TEST(HilbertSeries, LoopQuivers)
{
    const LambdaSeries p1 = hilbert_series(1, 4);
    for (long n = 0; n <= 4; ++n) {
        EXPECT_EQ(p1.coeff(n), inverse_pochhammer({n}));
    }
    EXPECT_EQ(hilbert_series(3, 2).coeff(2), QRational(v(-8), {{1, 1}, {2, 1}}));
    EXPECT_THROW(hilbert_series(-1, 2), Error);
}

TEST(ClassicalSeries, Algebra)
{
    const ClassicalSeries g = one_var({1, 2, -1, 3, 0, 5});
    const ClassicalSeries one = ClassicalSeries::one(1, 5);
    EXPECT_EQ(g * g.inverse(), one);
    EXPECT_EQ(g.pow(3), g * g * g);
    EXPECT_EQ(g.pow(-2) * g.pow(2), one);
    EXPECT_EQ(g.pow(0), one);
    const ClassicalSeries h = g.rational_pow(Rational(1, 2));
    EXPECT_EQ(h * h, g);
    EXPECT_EQ(g.rational_pow(Rational(-1, 3)).pow(-3), g);
    EXPECT_THROW(one_var({2, 1}).rational_pow(Rational(1, 2)), Error);
    const ClassicalSeries x = ClassicalSeries::variable(2, 3, 1);
    EXPECT_EQ(x.coeff({0, 1}), 1);
    EXPECT_EQ((x * x).coeff({0, 2}), 1);
}

TEST(ProductExponents, RecoversKnownProducts)
{
    const long n = 8;
    ClassicalSeries f1 = ClassicalSeries::one(1, n), f2 = ClassicalSeries::one(1, n);
    f1.set({1}, -1);
    f2.set({2}, -1);
    const ClassicalSeries g = f1.pow(3) * f2.rational_pow(Rational(-1, 2));
    const auto e = product_exponents(g);
    ASSERT_EQ(e.size(), 2u);
    EXPECT_EQ(e.at(1), 3);
    EXPECT_EQ(e.at(2), Rational(-1, 2));

    // MacMahon: prod (1 - x^n)^{-n}.
    const auto m = product_exponents(one_var({1, 1, 3, 6, 13, 24, 48, 86}));
    for (long k = 1; k <= 7; ++k) {
        EXPECT_EQ(m.at(k), -k);
    }
    EXPECT_THROW(product_exponents(ClassicalSeries::one(2, 3)), Error);
}

TEST(FramedSeries, TrivialFramingIsOne)
{
    const TorusSeries a = dt_series_zero_potential(a2(), 4);
    const auto fr = a_gamma(a, {0, 0});
    EXPECT_TRUE(fr.laurent_ok);
    EXPECT_TRUE(fr.series.is_one());
}

TEST(FramedSeries, LaurentForSmallQuivers)
{
    for (const Quiver &q : {Quiver::loops(0), Quiver::loops(2), a2(), Quiver::from_matrix({{0, 2}, {0, 0}})}) {
        const TorusSeries a = dt_series_zero_potential(q, 5);
        for (const auto &g : effective_vectors(q.rank(), 1, 2)) {
            const auto fr = a_gamma(a, g);
            EXPECT_TRUE(fr.laurent_ok) << g;
            EXPECT_FALSE(fr.first_failure);
        }
    }
}

TEST(FramedSeries, ClassicalLimits)
{
    // Q0: A^(1) = 1 - v ê = 1 + e, limit 1 + x.
    const TorusSeries a0 = dt_series_zero_potential(Quiver::loops(0), 5);
    EXPECT_EQ(classical_limit(a_gamma(a0, {1}).series), one_var({1, 1, 0, 0, 0, 0}));
    // Q1: A^(1) = sum e^n, limit 1 / (1 - x).
    const TorusSeries a1 = dt_series_zero_potential(Quiver::loops(1), 5);
    EXPECT_EQ(classical_limit(a_gamma(a1, {1}).series), one_var({1, 1, 1, 1, 1, 1}));
    EXPECT_THROW(classical_limit(a1), Error);
}

TEST(Reineke, FixedPointMatchesFramedLimits)
{
    for (const Quiver &q : {Quiver::loops(1), Quiver::loops(2), Quiver::loops(3), a2(), a3()}) {
        const long n = 5;
        const auto g = reineke_solve(q, n);
        ASSERT_EQ(g.size(), q.rank());
        EXPECT_TRUE(reineke_satisfied(q, g));
        const TorusSeries a = dt_series_zero_potential(q, n);
        for (std::size_t i = 0; i < q.rank(); ++i) {
            const auto fr = a_gamma(a, DimVector::unit(q.rank(), i));
            ASSERT_TRUE(fr.laurent_ok);
            EXPECT_EQ(classical_limit(fr.series), g[i]);
        }
    }
    EXPECT_EQ(reineke_solve(Quiver::loops(2), 5)[0], one_var({1, 1, 2, 5, 14, 42}));
    // Q3: g = 1 + x g^3 gives the ternary numbers.
    EXPECT_EQ(reineke_solve(Quiver::loops(3), 4)[0], one_var({1, 1, 3, 12, 55}));
    auto wrong = reineke_solve(Quiver::loops(2), 4);
    wrong[0].set({3}, 6);
    EXPECT_FALSE(reineke_satisfied(Quiver::loops(2), wrong));
}

TEST(RatioLimit, LoopQuivers)
{
    const auto r1 = ratio_classical_limit(hilbert_series(1, 6));
    ASSERT_TRUE(r1.laurent_ok);
    EXPECT_EQ(r1.series, one_var({1, 1, 1, 1, 1, 1, 1}));
    const auto r0 = ratio_classical_limit(hilbert_series(0, 6));
    ASSERT_TRUE(r0.laurent_ok);
    EXPECT_EQ(r0.series, one_var({1, -1, 0, 0, 0, 0, 0}));
}

TEST(RatioLimit, DetectsDenominators)
{
    // 1 + x / (1 - q): the ratio keeps 1 / (1 - q) in degree 2.
    LambdaSeries f = LambdaSeries::one(1, 4);
    f.set({1}, QRational(LaurentQ(1), {{1, 1}}));
    const auto r = ratio_classical_limit(f);
    EXPECT_FALSE(r.laurent_ok);
    EXPECT_EQ(r.failed_at, 2);
    EXPECT_THROW(ratio_classical_limit(LambdaSeries::one(2, 2)), Error);
}

TEST(MacMahon, GoldenSeries)
{
    auto q = shared(Quiver::loops(3));
    const TorusSeries a = parse_series(read("macmahon_q3.json"), q);
    EXPECT_EQ(a.truncation(), 8);
    const auto fr = a_gamma(a, {1});
    ASSERT_TRUE(fr.laurent_ok);
    const ClassicalSeries lim = classical_limit(fr.series);
    const std::vector<long> want{1, 1, 3, 6, 13, 24, 48, 86, 160};
    for (long k = 0; k <= 8; ++k) {
        EXPECT_EQ(lim.coeff(k), want[static_cast<std::size_t>(k)]) << k;
    }
    const auto e = product_exponents(lim);
    for (long k = 1; k <= 8; ++k) {
        EXPECT_EQ(e.at(k), -k);
    }
    EXPECT_THROW(parse_series(read("macmahon_q3.json"), q, 6), DocumentError);
    EXPECT_THROW(parse_series(read("macmahon_q3.json"), shared(Quiver::loops(0)), 9), DocumentError);
}

TEST(Dynkin, PeriodsAndDeterminism)
{
    const auto r = dynkin_period_check(a2(), 5, 20, 7);
    EXPECT_EQ(r.period, 5);
    EXPECT_EQ(r.points, 5);
    const auto again = dynkin_period_check(a2(), 5, 20, 7);
    EXPECT_EQ(again.period, r.period);
    EXPECT_EQ(again.resamples, r.resamples);
    const auto k = dynkin_period_check(Quiver::from_matrix({{0, 2}, {0, 0}}), 3, 12, 1);
    EXPECT_FALSE(k.period);
    EXPECT_THROW(dynkin_period_check(Quiver::loops(1), 2, 5, 1), Error);
}

TEST(Mutation, ChargesAreGenericAndOrdered)
{
    const Quiver q = a3();
    const auto [z, zp] = mutation_charges(q, 2, 5);
    EXPECT_TRUE(is_generic(z, q, 5));
    EXPECT_TRUE(is_generic(zp, q, 5));
    EXPECT_TRUE(slope_less(z, {1, 0, 0}, {0, 0, 1}));
    EXPECT_TRUE(slope_less(zp, {0, 0, 1}, {1, 0, 0}));
}

TEST(Mutation, DtSeriesCompareAcrossSinksAndSources)
{
    struct Case {
        Quiver q;
        std::string vertex;
        long n;
    };
    for (const auto &c : {Case{a2(), "1", 5}, Case{a2(), "2", 5}, Case{a3(), "3", 5}, Case{a3(), "1", 4},
                          Case{Quiver::from_matrix({{0, 2}, {0, 0}}), "2", 4}}) {
        const auto [z, zp] = mutation_charges(c.q, c.q.index_of(c.vertex), c.n);
        const auto res = mutation_dt_compare(c.q, c.vertex, z, zp, c.n);
        EXPECT_TRUE(res.match) << c.vertex << (res.mismatches.empty() ? "" : ": " + res.mismatches.front());
        EXPECT_GT(res.compared, 0);
    }
}

TEST(Mutation, DtSeriesCompareRejects)
{
    const auto [z, zp] = mutation_charges(a3(), 1, 4);
    EXPECT_THROW(mutation_dt_compare(a3(), "2", z, zp, 4), Error);
    const auto [y, yp] = mutation_charges(a3(), 2, 4);
    EXPECT_THROW(mutation_dt_compare(a3(), "3", yp, y, 4), Error);
    const Quiver q1 = Quiver::loops(1);
    const auto [w, wp] = mutation_charges(q1, 0, 3);
    EXPECT_THROW(mutation_dt_compare(q1, q1.vertices()[0], w, wp, 3), Error);
    const Quiver cyc({"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}, {"c", "3", "1"}});
    const auto [u, up] = mutation_charges(cyc, 0, 3);
    EXPECT_THROW(mutation_dt_compare(cyc, "1", u, up, 3), Error);
}
