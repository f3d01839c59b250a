#include <coha/dt.hpp>
#include <coha/json_io.hpp>
#include <coha/torus.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace coha;

namespace
{

std::shared_ptr<const Quiver> shared(Quiver q)
{
    return std::make_shared<const Quiver>(std::move(q));
}

std::shared_ptr<const Quiver> a2()
{
    return shared(Quiver({"1", "2"}, {{"a", "2", "1"}}));
}

LaurentQ v(long e, long c = 1)
{
    return LaurentQ::monomial(e, c);
}

CentralCharge charge(std::vector<std::pair<long, long>> pts)
{
    std::vector<CentralCharge::Point> z;
    for (auto [re, im] : pts) {
        z.push_back({Rational(re), Rational(im)});
    }
    return CentralCharge(z);
}

TorusSeries random_series(std::mt19937_64 &rng, std::shared_ptr<const Quiver> q, Basis b, long n)
{
    std::uniform_int_distribution<long> e(-3, 3), c(-2, 2), k(0, 2);
    TorusSeries s = TorusSeries::one(q, b, n);
    for (const auto &g : effective_vectors(q->rank(), 1, n)) {
        QRational::den_type den;
        if (long kk = k(rng)) {
            den[kk] = 1;
        }
        s.set(g, QRational(v(e(rng), c(rng)), den));
    }
    return s;
}

TorusSeries monomial(std::shared_ptr<const Quiver> q, Basis b, long n, const DimVector &g, const QRational &c)
{
    TorusSeries s = TorusSeries::one(q, b, n);
    s.set(g, c);
    return s;
}

} // namespace

TEST(Torus, TwistedProductOnA2)
{
    auto q = a2();
    const TorusSeries f = monomial(q, Basis::EHAT, 2, {1, 0}, 1);
    const TorusSeries g = monomial(q, Basis::EHAT, 2, {0, 1}, 1);
    const TorusSeries fg = f * g, gf = g * f;
    EXPECT_EQ(fg.coeff({1, 1}), QRational(LaurentQ::minus_v_pow(-1)));
    EXPECT_EQ(gf.coeff({1, 1}), QRational(LaurentQ::minus_v_pow(1)));
    const TorusSeries fe = monomial(q, Basis::E, 2, {1, 0}, 1) * monomial(q, Basis::E, 2, {0, 1}, 1);
    EXPECT_TRUE(fe.coeff({1, 1}).is_one());
    const TorusSeries ge = monomial(q, Basis::E, 2, {0, 1}, 1) * monomial(q, Basis::E, 2, {1, 0}, 1);
    EXPECT_EQ(ge.coeff({1, 1}), QRational(v(2)));
}

TEST(Torus, UnitAndCommutativeCase)
{
    std::mt19937_64 rng(1);
    auto q = a2();
    const TorusSeries f = random_series(rng, q, Basis::EHAT, 4);
    const TorusSeries one = TorusSeries::one(q, Basis::EHAT, 4);
    EXPECT_EQ(f * one, f);
    EXPECT_EQ(one * f, f);
    auto sym = shared(Quiver::from_matrix({{1, 2}, {2, 0}}));
    const TorusSeries a = random_series(rng, sym, Basis::EHAT, 4), b = random_series(rng, sym, Basis::EHAT, 4);
    EXPECT_EQ(a * b, b * a);
}

TEST(Torus, MismatchesAreRejected)
{
    auto q = a2();
    const TorusSeries e = TorusSeries::one(q, Basis::E, 3), h = TorusSeries::one(q, Basis::EHAT, 3);
    EXPECT_THROW(e * h, Error);
    EXPECT_THROW(h * TorusSeries::one(q, Basis::EHAT, 4), Error);
    EXPECT_THROW(h * TorusSeries::one(shared(Quiver::loops(0)), Basis::EHAT, 3), Error);
}

TEST(Torus, Associativity)
{
    std::mt19937_64 rng(2);
    for (auto q : {a2(), shared(Quiver::from_matrix({{0, 2}, {1, 0}})), shared(Quiver::loops(3))}) {
        for (Basis b : {Basis::E, Basis::EHAT}) {
            const long n = q->rank() == 1 ? 6 : 4;
            const TorusSeries f = random_series(rng, q, b, n), g = random_series(rng, q, b, n),
                              h = random_series(rng, q, b, n);
            EXPECT_EQ((f * g) * h, f * (g * h));
        }
    }
}

TEST(Torus, Inverse)
{
    std::mt19937_64 rng(3);
    auto q = a2();
    const TorusSeries one = TorusSeries::one(q, Basis::EHAT, 4);
    EXPECT_EQ(torus_inverse(one), one);
    const TorusSeries f = random_series(rng, q, Basis::EHAT, 4), g = random_series(rng, q, Basis::EHAT, 4);
    EXPECT_EQ(f * torus_inverse(f), one);
    EXPECT_EQ(torus_inverse(f) * f, one);
    EXPECT_EQ(torus_inverse(f * g), torus_inverse(g) * torus_inverse(f));

    const TorusSeries x = monomial(q, Basis::EHAT, 4, {1, 1}, 1);
    const TorusSeries xi = torus_inverse(x);
    EXPECT_EQ(xi.coeff({1, 1}), QRational(-1));
    EXPECT_EQ(xi.coeff({2, 2}), QRational(1));

    TorusSeries bad = f;
    bad.set({0, 0}, 2);
    EXPECT_THROW(torus_inverse(bad), Error);
}

TEST(Torus, FConjugation)
{
    std::mt19937_64 rng(4);
    auto q0 = shared(Quiver::loops(0));
    const TorusSeries a = dt_series_zero_potential(q0, 5);
    EXPECT_EQ(f_conjugate(a, {0}), a);
    const TorusSeries c = f_conjugate(a, {1});
    for (long n = 0; n <= 5; ++n) {
        EXPECT_EQ(c.coeff({n}), a.coeff({n}).shifted(2 * n));
    }
    auto q = a2();
    const TorusSeries f = random_series(rng, q, Basis::EHAT, 4), g = random_series(rng, q, Basis::EHAT, 4);
    for (const DimVector &delta : {DimVector{1, 0}, DimVector{-1, 2}, DimVector{3, 1}}) {
        EXPECT_EQ(f_conjugate(f * g, delta), f_conjugate(f, delta) * f_conjugate(g, delta));
    }
}

TEST(Torus, ChangeOfBasis)
{
    auto q0 = shared(Quiver::loops(0));
    const TorusSeries a = dt_series_zero_potential(q0, 4);
    EXPECT_EQ(a.coeff({1}), QRational(v(1, -1), {{1, 1}}));
    const TorusSeries e = change_basis(a);
    EXPECT_EQ(e.basis(), Basis::E);
    EXPECT_EQ(e.coeff({1}), QRational(LaurentQ(1), {{1, 1}}));
    EXPECT_EQ(e.coeff({2}), QRational(LaurentQ(1), {{1, 1}, {2, 1}}));
    EXPECT_EQ(change_basis(e), a);
    EXPECT_EQ(change_basis(TorusSeries::one(q0, Basis::E, 4)), TorusSeries::one(q0, Basis::EHAT, 4));

    std::mt19937_64 rng(5);
    auto q = shared(Quiver::from_matrix({{0, 1, 0}, {0, 1, 2}, {1, 0, 0}}));
    const TorusSeries f = random_series(rng, q, Basis::E, 3), g = random_series(rng, q, Basis::E, 3);
    EXPECT_EQ(change_basis(f * g), change_basis(f) * change_basis(g));
}

TEST(Torus, RayProjection)
{
    std::mt19937_64 rng(6);
    auto q1 = shared(Quiver::loops(1));
    const TorusSeries s = random_series(rng, q1, Basis::EHAT, 5);
    EXPECT_EQ(ray_project(s, Ray({1})), s);

    auto q = a2();
    const TorusSeries f = random_series(rng, q, Basis::EHAT, 4);
    const TorusSeries p = ray_project(f, Ray({1, 1}));
    for (const auto &[g, c] : p.coeffs()) {
        EXPECT_TRUE(g.is_zero() || g[0] == g[1]);
    }
    EXPECT_EQ(p.coeff({2, 2}), f.coeff({2, 2}));
    EXPECT_EQ(ray_project(p, Ray({1, 1})), p);
    EXPECT_THROW(Ray({2, 2}), Error);
    EXPECT_THROW(Ray({0, 0}), Error);
}

TEST(HnPeel, SingleVertex)
{
    auto q = shared(Quiver::loops(0));
    const TorusSeries a = dt_series_zero_potential(q, 6);
    const auto fs = hn_peel(a, charge({{2, 3}}));
    ASSERT_EQ(fs.size(), 1u);
    EXPECT_EQ(fs[0].factor, a);
    EXPECT_EQ(a, quantum_dilog(q, {1}, 6));
}

TEST(HnPeel, Pentagon)
{
    auto q = a2();
    const long n = 8;
    const TorusSeries a = dt_series_zero_potential(q, n);
    const auto three = hn_peel(a, charge({{1, 1}, {-1, 1}}));
    ASSERT_EQ(three.size(), 3u);
    const std::vector<DimVector> rays3{{0, 1}, {1, 1}, {1, 0}};
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_EQ(three[k].ray.primitive(), rays3[k]);
        EXPECT_EQ(three[k].factor, quantum_dilog(q, rays3[k], n));
    }
    const auto two = hn_peel(a, charge({{-1, 1}, {1, 1}}));
    ASSERT_EQ(two.size(), 2u);
    EXPECT_EQ(two[0].factor, quantum_dilog(q, {1, 0}, n));
    EXPECT_EQ(two[1].factor, quantum_dilog(q, {0, 1}, n));
    const TorusSeries one = TorusSeries::one(q, Basis::EHAT, n);
    EXPECT_EQ(clockwise_product(three, one), clockwise_product(two, one));
}

TEST(HnPeel, WallCrossingConsistency)
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> re(-9, 9), im(1, 9);
    for (auto q : {a2(), shared(Quiver::from_matrix({{0, 2}, {0, 0}})), shared(Quiver::from_matrix({{0, 1}, {1, 0}}))}) {
        const long n = 5;
        const TorusSeries a = dt_series_zero_potential(q, n);
        const TorusSeries f = random_series(rng, q, Basis::EHAT, n);
        int tried = 0;
        while (tried < 4) {
            const CentralCharge z = charge({{re(rng), im(rng)}, {re(rng), im(rng)}});
            if (!is_generic(z, *q, n)) {
                EXPECT_THROW(hn_peel(a, z), Error);
                continue;
            }
            ++tried;
            const TorusSeries one = TorusSeries::one(q, Basis::EHAT, n);
            EXPECT_EQ(clockwise_product(hn_peel(a, z), one), a);
            EXPECT_EQ(clockwise_product(hn_peel(f, z), one), f);
        }
    }
}

TEST(HnPeel, Preconditions)
{
    auto q = a2();
    const TorusSeries a = dt_series_zero_potential(q, 3);
    EXPECT_THROW(hn_peel(a, charge({{0, 1}, {0, 2}})), Error);
    EXPECT_THROW(hn_peel(a, charge({{0, 1}})), Error);
    TorusSeries b = a;
    b.set({0, 0}, 3);
    EXPECT_THROW(hn_peel(b, charge({{1, 1}, {-1, 1}})), Error);
}

TEST(SeriesIo, RoundTrip)
{
    std::mt19937_64 rng(8);
    auto q = a2();
    for (Basis b : {Basis::E, Basis::EHAT}) {
        const TorusSeries s = random_series(rng, q, b, 3);
        EXPECT_EQ(ingest_series(series_to_json(s), q), s);
        EXPECT_EQ(parse_series(series_to_json(s).dump(), q, 3), s);
    }
}

TEST(SeriesIo, SchemaViolations)
{
    auto q = a2();
    const TorusSeries s = dt_series_zero_potential(q, 2);
    json doc = series_to_json(s);
    EXPECT_THROW(ingest_series(doc, q, 3), DocumentError);

    auto where = [&](const json &d) {
        try {
            ingest_series(d, q);
        } catch (const DocumentError &e) {
            return e.where();
        }
        return std::string("<no error>");
    };
    json bad = doc;
    bad["basis"] = "F";
    EXPECT_EQ(where(bad), "/basis");
    bad = doc;
    bad["coeffs"][1]["gamma"] = json::array({3, 0});
    EXPECT_EQ(where(bad), "/coeffs/1/gamma");
    bad = doc;
    bad["coeffs"][1]["gamma"] = json::array({1});
    EXPECT_EQ(where(bad), "/coeffs/1/gamma");
    bad = doc;
    bad["coeffs"][2]["gamma"] = bad["coeffs"][1]["gamma"];
    EXPECT_EQ(where(bad), "/coeffs/2/gamma");
    bad = doc;
    bad["coeffs"].erase(0);
    EXPECT_EQ(where(bad), "/coeffs");
    bad = doc;
    bad["coeffs"][1]["coeff"]["num"][0][1] = "1/0";
    EXPECT_EQ(where(bad), "/coeffs/1/coeff/num/0/1");
}
