#include <coha/dt.hpp>
#include <coha/json_io.hpp>
#include <coha/shuffle.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace coha;

namespace
{

Quiver a2()
{
    return Quiver({"1", "2"}, {{"a", "2", "1"}});
}

/// Sum of a few random orbit sums of total degree at most 2 at gamma.
CohaElement random_element(std::mt19937_64 &rng, const DimVector &gamma)
{
    std::uniform_int_distribution<int> e(0, 2), c(-3, 3), count(1, 3);
    SymPoly p(gamma);
    for (int t = count(rng); t > 0; --t) {
        SymPoly::key_type key(p.nvars(), 0);
        int budget = 2;
        for (auto &k : key) {
            k = std::min(e(rng), budget);
            budget -= k;
        }
        p.add_term(p.canonical(key), c(rng));
    }
    return CohaElement(p);
}

DimVector random_gamma(std::mt19937_64 &rng, std::size_t rank, long hi)
{
    std::uniform_int_distribution<long> d(0, hi);
    DimVector g(rank);
    do {
        for (std::size_t i = 0; i < rank; ++i) {
            g[i] = d(rng);
        }
    } while (g.is_zero());
    return g;
}

CohaElement constant(const DimVector &g, long c)
{
    return CohaElement(SymPoly::constant(g, c));
}

} // namespace

TEST(Shuffle, Q0ExteriorRelations)
{
    const Quiver q = Quiver::loops(0);
    EXPECT_TRUE(shuffle_product(q, psi(1), psi(1)).is_zero());
    EXPECT_EQ(shuffle_product(q, psi(1), psi(3)), constant({2}, 1));
    EXPECT_EQ(shuffle_product(q, psi(3), psi(1)), constant({2}, -1));
    for (int k = 1; k <= 9; k += 2) {
        EXPECT_TRUE(shuffle_product(q, psi(k), psi(k)).is_zero()) << k;
    }
}

TEST(Shuffle, Q1Constants)
{
    EXPECT_EQ(shuffle_product(Quiver::loops(1), phi(0), phi(0)), constant({2}, 2));
}

TEST(Shuffle, A2Relation)
{
    const Quiver q = a2();
    for (int i = 0; i <= 3; ++i) {
        for (int j = 0; j <= 3; ++j) {
            const CohaElement lhs = shuffle_product(q, eta(i), xi(j));
            const CohaElement rhs = shuffle_product(q, xi(j + 1), eta(i)) - shuffle_product(q, xi(j), eta(i + 1));
            EXPECT_EQ(lhs, rhs) << "i=" << i << " j=" << j;
        }
    }
}

TEST(Shuffle, AgreesWithReferenceDivision)
{
    std::mt19937_64 rng(17);
    const std::vector<Quiver> quivers{Quiver::loops(0), Quiver::loops(1), Quiver::loops(2), a2(),
                                      Quiver::from_matrix({{0, 2}, {1, 1}})};
    for (const auto &q : quivers) {
        for (int t = 0; t < 8; ++t) {
            const auto f = random_element(rng, random_gamma(rng, q.rank(), 2));
            const auto g = random_element(rng, random_gamma(rng, q.rank(), 2));
            EXPECT_EQ(shuffle_product(q, f, g), shuffle_product_reference(q, f, g));
        }
    }
}

TEST(Shuffle, Associativity)
{
    std::mt19937_64 rng(23);
    const std::vector<Quiver> quivers{Quiver::loops(0), Quiver::loops(1), Quiver::loops(2), a2()};
    for (int t = 0; t < 24; ++t) {
        const Quiver &q = quivers[static_cast<std::size_t>(t) % quivers.size()];
        const long hi = q.rank() == 1 ? 2 : 1;
        const auto f1 = random_element(rng, random_gamma(rng, q.rank(), hi));
        const auto f2 = random_element(rng, random_gamma(rng, q.rank(), hi));
        const auto f3 = random_element(rng, random_gamma(rng, q.rank(), hi));
        EXPECT_EQ(shuffle_product(q, shuffle_product(q, f1, f2), f3),
                  shuffle_product(q, f1, shuffle_product(q, f2, f3)));
    }
}

TEST(Shuffle, OutputIsCanonical)
{
    std::mt19937_64 rng(5);
    const Quiver q = Quiver::loops(2);
    const auto p = shuffle_product(q, random_element(rng, {2}), random_element(rng, {2}));
    for (const auto &[key, c] : p.poly().terms()) {
        EXPECT_TRUE(p.poly().is_canonical(key));
    }
    EXPECT_EQ(SymPoly::from_polynomial(p.gamma(), p.poly().to_polynomial()), p.poly());
}

TEST(Shuffle, Q0SchurCorrespondence)
{
    const Quiver q = Quiver::loops(0);
    for (std::size_t n = 1; n <= 3; ++n) {
        std::vector<int> idx(n);
        auto rec = [&](auto &&self, std::size_t pos, int lo) -> void {
            if (pos == n) {
                CohaElement p = psi(2 * idx[0] + 1);
                for (std::size_t k = 1; k < n; ++k) {
                    p = shuffle_product(q, p, psi(2 * idx[k] + 1));
                }
                Partition lambda(n);
                for (std::size_t k = 0; k < n; ++k) {
                    lambda[k] = idx[n - 1 - k] - static_cast<int>(n - 1 - k);
                }
                EXPECT_EQ(p.poly(), schur_polynomial(lambda, n));
                return;
            }
            for (int i = lo; i <= 4; ++i) {
                idx[pos] = i;
                self(self, pos + 1, i + 1);
            }
        };
        rec(rec, 0, 0);
    }
}

TEST(Shuffle, SchurPolynomials)
{
    EXPECT_EQ(schur_polynomial({}, 3), SymPoly::constant({3}, 1));
    EXPECT_EQ(schur_polynomial({1}, 2), SymPoly::monomial_symmetric({2}, {1, 0}));
    EXPECT_EQ(schur_polynomial({2, 1}, 2), SymPoly::monomial_symmetric({2}, {2, 1}));
    // s_(2,1)(x1,x2,x3) = m_(2,1) + 2 m_(1,1,1)
    EXPECT_EQ(schur_polynomial({2, 1}, 3),
              SymPoly::monomial_symmetric({3}, {2, 1, 0}) + SymPoly::monomial_symmetric({3}, {1, 1, 1}) * 2);
    EXPECT_THROW(schur_polynomial({1, 2}, 2), Error);
    EXPECT_THROW(schur_polynomial({1, 1, 1}, 2), Error);
}

TEST(Shuffle, KostkaNumbers)
{
    EXPECT_EQ(kostka({2, 1}, {1, 1, 1}), 2);
    EXPECT_EQ(kostka({3}, {1, 1, 1}), 1);
    EXPECT_EQ(kostka({2, 2}, {2, 1, 1}), 1);
    EXPECT_EQ(kostka({1, 1}, {2}), 0);
}

TEST(StarProduct, Q1AgreesWithShuffle)
{
    std::mt19937_64 rng(2);
    const Quiver q = Quiver::loops(1);
    for (int t = 0; t < 5; ++t) {
        const auto f = random_element(rng, random_gamma(rng, 1, 2));
        const auto g = random_element(rng, random_gamma(rng, 1, 2));
        EXPECT_EQ(star_product(q, f, g), shuffle_product(q, f, g));
    }
}

TEST(StarProduct, Supercommutative)
{
    std::mt19937_64 rng(8);
    const std::vector<Quiver> quivers{Quiver::loops(0), Quiver::loops(2), Quiver::loops(3),
                                      Quiver::from_matrix({{0, 1}, {1, 0}}), Quiver::from_matrix({{1, 2}, {2, 0}})};
    for (const auto &q : quivers) {
        for (int t = 0; t < 6; ++t) {
            const auto f = random_element(rng, random_gamma(rng, q.rank(), 2));
            const auto g = random_element(rng, random_gamma(rng, q.rank(), 2));
            const int sign = (epsilon(q, f.gamma()) && epsilon(q, g.gamma())) ? -1 : 1;
            EXPECT_EQ(star_product(q, f, g), Integer(sign) * star_product(q, g, f));
        }
    }
    const Quiver q2 = Quiver::loops(2);
    EXPECT_EQ(star_product(q2, constant({1}, 1), constant({1}, 1)),
              Integer(-1) * star_product(q2, constant({1}, 1), constant({1}, 1)));
    EXPECT_THROW(star_product(a2(), xi(0), eta(0)), Error);
}

TEST(Bidegree, LoopQuivers)
{
    for (long d = 0; d <= 3; ++d) {
        for (long n = 1; n <= 3; ++n) {
            EXPECT_EQ(bidegree(Quiver::loops(d), constant({n}, 1)).shifted, (1 - d) * n * n);
        }
    }
    const auto b = bidegree(Quiver::loops(0), psi(3));
    EXPECT_EQ(b.raw, 2);
    EXPECT_EQ(b.shifted, 3);
    EXPECT_THROW(bidegree(Quiver::loops(0), CohaElement(SymPoly(DimVector{1}))), Error);
    SymPoly mixed(DimVector{1});
    mixed.add_term({0}, 1);
    mixed.add_term({1}, 1);
    EXPECT_THROW(bidegree(Quiver::loops(0), CohaElement(mixed)), Error);
}

TEST(Bidegree, GradedDimensionsMatchHilbertSeries)
{
    const long precision = 6;
    for (long d = 0; d <= 3; ++d) {
        const LambdaSeries p = hilbert_series(d, 4);
        for (long n = 1; n <= 4; ++n) {
            const LaurentQ serre = p.coeff(n).serre_specialize(precision);
            const long base = (1 - d) * n * n;
            const long sign = base % 2 == 0 ? 1 : -1;
            for (int k = 0; k <= precision; ++k) {
                // A basis of H_n in polynomial degree k: monomial symmetric functions.
                const auto basis = partitions(k, static_cast<std::size_t>(n));
                for (const auto &lambda : basis) {
                    SymPoly::key_type key(lambda.begin(), lambda.end());
                    key.resize(static_cast<std::size_t>(n), 0);
                    EXPECT_EQ(bidegree(Quiver::loops(d), CohaElement(SymPoly::monomial_symmetric({n}, key))).shifted,
                              base + 2 * k);
                }
                EXPECT_EQ(serre.coeff(base + 2 * k), sign * static_cast<long>(basis.size()))
                    << "d=" << d << " n=" << n << " k=" << k;
            }
        }
    }
}

TEST(SymPolyIo, RoundTripAndValidation)
{
    std::mt19937_64 rng(4);
    const auto f = random_element(rng, {2, 1});
    EXPECT_EQ(sympoly_from_json(sympoly_to_json(f.poly()), 2), f.poly());
    EXPECT_THROW(sympoly_from_json(json::parse(R"({"gamma":[2],"terms":[[[1],"1"]]})"), 1), DocumentError);
    EXPECT_THROW(sympoly_from_json(json::parse(R"({"gamma":[2],"terms":[[[1,0],"1"],[[0,1],"1"]]})"), 1),
                 DocumentError);
    EXPECT_THROW(sympoly_from_json(json::parse(R"({"gamma":[1],"terms":[[[1],"1/2"]]})"), 1), DocumentError);
    const SymPoly p = sympoly_from_json(json::parse(R"({"gamma":[2],"terms":[[[0,3],"-4"]]})"), 1);
    EXPECT_EQ(p, SymPoly::monomial_symmetric({2}, {3, 0}) * Integer(-4));
}
