#pragma once

// The COHA of a quiver with zero potential as an algebra of symmetric polynomials under
// the shuffle product, plus the sign-twisted product for symmetric quivers.

#include <coha/parallel.hpp>
#include <coha/quiver.hpp>
#include <coha/sympoly.hpp>

#include <array>
#include <bit>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace coha
{

/// A class in H_gamma, modelled by a symmetric polynomial.
class CohaElement
{
public:
    CohaElement() = default;
    explicit CohaElement(SymPoly poly) : poly_(std::move(poly)) {}

    const SymPoly &poly() const
    {
        return poly_;
    }
    const DimVector &gamma() const
    {
        return poly_.gamma();
    }
    bool is_zero() const
    {
        return poly_.is_zero();
    }

    friend CohaElement operator+(const CohaElement &a, const CohaElement &b)
    {
        return CohaElement(a.poly_ + b.poly_);
    }
    friend CohaElement operator-(const CohaElement &a, const CohaElement &b)
    {
        return CohaElement(a.poly_ - b.poly_);
    }
    friend CohaElement operator-(const CohaElement &a)
    {
        return CohaElement(-a.poly_);
    }
    friend CohaElement operator*(const Integer &c, const CohaElement &a)
    {
        return CohaElement(a.poly_ * c);
    }
    friend bool operator==(const CohaElement &a, const CohaElement &b)
    {
        return a.poly_ == b.poly_;
    }
    friend std::ostream &operator<<(std::ostream &os, const CohaElement &a)
    {
        return os << a.poly_;
    }

private:
    SymPoly poly_;
};

/// x^i at a single vertex of a quiver of the given rank.
inline CohaElement generator(std::size_t rank, std::size_t vertex, int power)
{
    if (vertex >= rank) {
        throw Error("generator: vertex out of range");
    }
    if (power < 0) {
        throw Error("generator: negative power");
    }
    SymPoly p(DimVector::unit(rank, vertex));
    p.add_term({power}, 1);
    return CohaElement(std::move(p));
}

/// One-vertex, no loops: psi_k with k = 2i + 1 odd is the class x^i.
inline CohaElement psi(int k)
{
    if (k < 1 || k % 2 == 0) {
        throw Error("psi: index must be a positive odd integer");
    }
    return generator(1, 0, (k - 1) / 2);
}
/// One-vertex, one loop: phi_k with k = 2i even is the class x^i.
inline CohaElement phi(int k)
{
    if (k < 0 || k % 2 != 0) {
        throw Error("phi: index must be a non-negative even integer");
    }
    return generator(1, 0, k / 2);
}
/// Two-vertex quiver: xi_i = x^i at the first vertex.
inline CohaElement xi(int i)
{
    return generator(2, 0, i);
}
/// Two-vertex quiver: eta_i = x^i at the second vertex.
inline CohaElement eta(int i)
{
    return generator(2, 1, i);
}

using Partition = std::vector<int>;

/// Partitions of m with at most len parts, in reverse lexicographic order.
inline std::vector<Partition> partitions(int m, std::size_t len)
{
    std::vector<Partition> out;
    Partition cur;
    auto rec = [&](auto &&self, int remaining, int cap) -> void {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        if (cur.size() == len) {
            return;
        }
        for (int p = std::min(remaining, cap); p >= 1; --p) {
            cur.push_back(p);
            self(self, remaining - p, p);
            cur.pop_back();
        }
    };
    rec(rec, m, m);
    return out;
}

/// Kostka number K_{lambda, mu}: semistandard tableaux of shape lambda and content mu.
///
/// mu may be any composition; zero parts are ignored.
inline Integer kostka(const Partition &lambda, const std::vector<int> &mu)
{
    static std::mutex mutex;
    static std::map<std::pair<Partition, std::vector<int>>, Integer> cache;

    Partition lam;
    for (int p : lambda) {
        if (p > 0) {
            lam.push_back(p);
        }
    }
    std::vector<int> content;
    for (int c : mu) {
        if (c > 0) {
            content.push_back(c);
        }
    }
    if (std::accumulate(lam.begin(), lam.end(), 0) != std::accumulate(content.begin(), content.end(), 0)) {
        return 0;
    }
    if (content.empty()) {
        return 1;
    }
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find({lam, content}); it != cache.end()) {
            return it->second;
        }
    }
    // Remove the largest letter: lambda / nu is a horizontal strip of size content.back().
    const int strip = content.back();
    std::vector<int> rest(content.begin(), content.end() - 1);
    Integer total = 0;
    Partition nu(lam.size());
    auto rec = [&](auto &&self, std::size_t i, int removed) -> void {
        if (i == lam.size()) {
            if (removed == strip) {
                total += kostka(nu, rest);
            }
            return;
        }
        const int lower = (i + 1 < lam.size()) ? lam[i + 1] : 0;
        for (int v = lam[i]; v >= lower; --v) {
            if (removed + (lam[i] - v) > strip) {
                break;
            }
            nu[i] = v;
            self(self, i + 1, removed + (lam[i] - v));
        }
    };
    rec(rec, 0, 0);
    std::lock_guard lock(mutex);
    cache.emplace(std::make_pair(lam, content), total);
    return total;
}

namespace detail
{

inline std::size_t block_offset(const DimVector &g, std::size_t i)
{
    std::size_t s = 0;
    for (std::size_t j = 0; j < i; ++j) {
        s += static_cast<std::size_t>(g[j]);
    }
    return s;
}

/// The polynomial part of the shuffle kernel in standard position: at vertex i the first
/// gamma1^i variables belong to the left factor, the rest to the right factor.
///
/// Loop-free vertices contribute the two block Vandermondes (their denominator is handled by
/// antisymmetrization); vertices with loops contribute (x'' - x')^{a_ii - 1}; pairs of distinct
/// vertices contribute (x''_j - x'_i)^{a_ij}.
inline Polynomial shuffle_kernel(const Quiver &q, const DimVector &g1, const DimVector &g2)
{
    const DimVector g = g1 + g2;
    const std::size_t n = static_cast<std::size_t>(g.total());
    Polynomial k = Polynomial::constant(n, 1);
    auto left = [&](std::size_t i) {
        std::vector<std::size_t> v;
        const auto off = block_offset(g, i);
        for (long a = 0; a < g1[i]; ++a) {
            v.push_back(off + static_cast<std::size_t>(a));
        }
        return v;
    };
    auto right = [&](std::size_t i) {
        std::vector<std::size_t> v;
        const auto off = block_offset(g, i);
        for (long b = g1[i]; b < g[i]; ++b) {
            v.push_back(off + static_cast<std::size_t>(b));
        }
        return v;
    };
    for (std::size_t i = 0; i < q.rank(); ++i) {
        for (std::size_t j = 0; j < q.rank(); ++j) {
            long e = q.arrow_count(i, j);
            if (i == j) {
                if (e == 0) {
                    continue;
                }
                --e;
            }
            if (e == 0) {
                continue;
            }
            for (auto a : left(i)) {
                for (auto b : right(j)) {
                    k.mul_difference(b, a, e);
                }
            }
        }
    }
    for (std::size_t i = 0; i < q.rank(); ++i) {
        if (q.arrow_count(i, i) != 0) {
            continue;
        }
        for (const auto &blk : {left(i), right(i)}) {
            for (std::size_t s = 0; s < blk.size(); ++s) {
                for (std::size_t t = s + 1; t < blk.size(); ++t) {
                    k.mul_difference(blk[t], blk[s]);
                }
            }
        }
    }
    return k;
}

inline std::shared_ptr<const Polynomial> cached_shuffle_kernel(const Quiver &q, const DimVector &g1,
                                                               const DimVector &g2)
{
    using key_type = std::tuple<std::vector<std::vector<long>>, std::vector<long>, std::vector<long>>;
    static std::mutex mutex;
    static std::map<key_type, std::shared_ptr<const Polynomial>> cache;
    key_type key{q.matrix(), g1.entries(), g2.entries()};
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) {
            return it->second;
        }
    }
    auto k = std::make_shared<const Polynomial>(shuffle_kernel(q, g1, g2));
    std::lock_guard lock(mutex);
    return cache.emplace(std::move(key), std::move(k)).first->second;
}

} // namespace detail

/// Shuffle product f1 * f2 in H_{gamma1 + gamma2}.
///
/// The sum over shuffles equals 1/|H| times the sum over the full group G = prod_i S_{gamma^i}
/// of the standard-position term, H being the stabilizer of the standard splitting. On loop-free
/// vertices the Vandermonde denominator turns that sum into an antisymmetrization, so each
/// monomial contributes +-s_lambda there; on other vertices each monomial contributes its orbit
/// sum. Because the standard-position term is H-invariant, only H-orbit representatives of
/// f1 f2 need to be multiplied against the kernel.
inline CohaElement shuffle_product(const Quiver &q, const CohaElement &f1, const CohaElement &f2)
{
    const DimVector &g1 = f1.gamma();
    const DimVector &g2 = f2.gamma();
    q.check_vector(g1);
    q.check_vector(g2);
    const DimVector g = g1 + g2;
    const std::size_t rank = q.rank();
    const std::size_t nv = static_cast<std::size_t>(g.total());
    if (nv > max_variables) {
        throw Error("shuffle_product: too many variables");
    }
    SymPoly result(g);
    if (f1.is_zero() || f2.is_zero()) {
        return CohaElement(std::move(result));
    }

    std::vector<std::size_t> off(rank + 1, 0);
    for (std::size_t i = 0; i < rank; ++i) {
        off[i + 1] = off[i] + static_cast<std::size_t>(g[i]);
    }
    std::vector<bool> alternating(rank);
    Integer h_order = 1;
    for (std::size_t i = 0; i < rank; ++i) {
        alternating[i] = q.arrow_count(i, i) == 0;
        h_order *= factorial(static_cast<unsigned long>(g1[i])) * factorial(static_cast<unsigned long>(g2[i]));
    }

    // H-orbit representatives of f1 f2 in standard position with weights c1 c2 |orbit|.
    std::vector<std::pair<Monomial, Integer>> reps;
    for (const auto &[k1, c1] : f1.poly().terms()) {
        const Integer w1 = c1 * f1.poly().orbit_size(k1);
        for (const auto &[k2, c2] : f2.poly().terms()) {
            Monomial m;
            std::size_t p1 = 0, p2 = 0;
            for (std::size_t i = 0; i < rank; ++i) {
                std::size_t pos = off[i];
                for (long a = 0; a < g1[i]; ++a) {
                    m[pos++] = static_cast<std::uint8_t>(k1[p1++]);
                }
                for (long b = 0; b < g2[i]; ++b) {
                    m[pos++] = static_cast<std::uint8_t>(k2[p2++]);
                }
            }
            reps.emplace_back(m, w1 * c2 * f2.poly().orbit_size(k2));
        }
    }

    const auto kernel = detail::cached_shuffle_kernel(q, g1, g2);
    std::vector<std::pair<Monomial, Integer>> kterms(kernel->terms().begin(), kernel->terms().end());

    using Acc = std::unordered_map<Monomial, Integer, MonomialHash>;
    const std::size_t workers = std::min<std::size_t>(thread_count(), reps.size());
    std::vector<Acc> acc(std::max<std::size_t>(1, workers));

    parallel_for(reps.size(), workers, [&](std::size_t w, std::size_t r) {
        Acc &out = acc[w];
        const Monomial &nu = reps[r].first;
        const Integer &cnu = reps[r].second;
        Integer term;
        for (const auto &[kappa, ck] : kterms) {
            Monomial beta = mono_mul(nu, kappa);
            int sign = 1;
            Integer weight = 1;
            bool vanishes = false;
            for (std::size_t i = 0; i < rank && !vanishes; ++i) {
                auto b = beta.e.begin() + static_cast<long>(off[i]);
                auto e = beta.e.begin() + static_cast<long>(off[i + 1]);
                const std::size_t n = off[i + 1] - off[i];
                if (alternating[i]) {
                    // A(x^beta) = sign * A(x^rho), rho ascending; zero if exponents repeat.
                    for (std::size_t s = 0; s < n; ++s) {
                        for (std::size_t t = s + 1; t < n; ++t) {
                            if (b[s] == b[t]) {
                                vanishes = true;
                            } else if (b[s] > b[t]) {
                                sign = -sign;
                            }
                        }
                    }
                    if (vanishes) {
                        break;
                    }
                    std::sort(b, e);
                    // lambda, stored decreasing: lambda_{n-1-j} = rho_j - j.
                    std::array<std::uint8_t, max_variables> lam{};
                    for (std::size_t j = 0; j < n; ++j) {
                        lam[n - 1 - j] = static_cast<std::uint8_t>(b[j] - j);
                    }
                    std::copy(lam.begin(), lam.begin() + static_cast<long>(n), b);
                } else {
                    std::sort(b, e, std::greater<>());
                    std::size_t s = 0;
                    while (s < n) {
                        std::size_t t = s;
                        while (t < n && b[t] == b[s]) {
                            ++t;
                        }
                        if (t - s > 1) {
                            weight *= factorial(t - s);
                        }
                        s = t;
                    }
                }
            }
            if (vanishes) {
                continue;
            }
            term = cnu * ck * weight;
            if (sign < 0) {
                term = -term;
            }
            auto [it, inserted] = out.try_emplace(beta, term);
            if (!inserted) {
                it->second += term;
            }
        }
    });

    Acc total;
    for (auto &a : acc) {
        for (auto &[m, c] : a) {
            auto [it, inserted] = total.try_emplace(m, c);
            if (!inserted) {
                it->second += c;
            }
        }
    }

    for (const auto &[key, c] : total) {
        if (c == 0) {
            continue;
        }
        if (!mpz_divisible_p(c.get_mpz_t(), h_order.get_mpz_t())) {
            throw InternalError("shuffle_product: symmetrization did not divide exactly");
        }
        Integer coeff;
        mpz_divexact(coeff.get_mpz_t(), c.get_mpz_t(), h_order.get_mpz_t());

        // Expand the Schur factors at loop-free vertices into monomial symmetric functions.
        std::vector<int> base = key.to_vector(nv);
        std::vector<std::size_t> alt_vertices;
        std::vector<std::vector<std::pair<std::vector<int>, Integer>>> choices;
        for (std::size_t i = 0; i < rank; ++i) {
            if (!alternating[i] || off[i + 1] == off[i]) {
                continue;
            }
            Partition lam(base.begin() + static_cast<long>(off[i]), base.begin() + static_cast<long>(off[i + 1]));
            const int size = std::accumulate(lam.begin(), lam.end(), 0);
            const std::size_t n = off[i + 1] - off[i];
            std::vector<std::pair<std::vector<int>, Integer>> opts;
            for (auto &mu : partitions(size, n)) {
                Integer kk = kostka(lam, mu);
                if (kk != 0) {
                    mu.resize(n, 0);
                    opts.emplace_back(std::move(mu), std::move(kk));
                }
            }
            alt_vertices.push_back(i);
            choices.push_back(std::move(opts));
        }
        std::vector<int> exps = base;
        auto rec = [&](auto &&self, std::size_t t, const Integer &acc_coeff) -> void {
            if (t == alt_vertices.size()) {
                result.add_term(exps, acc_coeff);
                return;
            }
            const std::size_t i = alt_vertices[t];
            for (const auto &[mu, kk] : choices[t]) {
                std::copy(mu.begin(), mu.end(), exps.begin() + static_cast<long>(off[i]));
                self(self, t + 1, acc_coeff * kk);
            }
        };
        rec(rec, 0, coeff);
    }
    return CohaElement(std::move(result));
}

/// Direct evaluation of the shuffle formula: every shuffle term is brought over the common
/// denominator prod_i prod_{a<b} (x_{i,b} - x_{i,a}) and the total is divided exactly once.
///
/// Exponentially slower than shuffle_product; kept as an independent check.
inline CohaElement shuffle_product_reference(const Quiver &q, const CohaElement &f1, const CohaElement &f2)
{
    const DimVector &g1 = f1.gamma();
    const DimVector &g2 = f2.gamma();
    q.check_vector(g1);
    q.check_vector(g2);
    const DimVector g = g1 + g2;
    const std::size_t rank = q.rank();
    const std::size_t nv = static_cast<std::size_t>(g.total());
    const Polynomial p1 = f1.poly().to_polynomial();
    const Polynomial p2 = f2.poly().to_polynomial();

    std::vector<std::size_t> off(rank + 1, 0);
    for (std::size_t i = 0; i < rank; ++i) {
        off[i + 1] = off[i] + static_cast<std::size_t>(g[i]);
    }

    // All subsets of each vertex block of the left factor's size, as bit masks.
    std::vector<std::vector<unsigned>> subsets(rank);
    for (std::size_t i = 0; i < rank; ++i) {
        const unsigned n = static_cast<unsigned>(g[i]);
        for (unsigned mask = 0; mask < (1U << n); ++mask) {
            if (std::popcount(mask) == g1[i]) {
                subsets[i].push_back(mask);
            }
        }
    }

    Polynomial numerator(nv);
    std::vector<unsigned> choice(rank);
    auto rec = [&](auto &&self, std::size_t i) -> void {
        if (i < rank) {
            for (unsigned mask : subsets[i]) {
                choice[i] = mask;
                self(self, i + 1);
            }
            return;
        }
        std::vector<std::vector<std::size_t>> left(rank), right(rank);
        std::vector<std::size_t> map1, map2;
        int sign = 1;
        for (std::size_t v = 0; v < rank; ++v) {
            const std::size_t n = off[v + 1] - off[v];
            for (std::size_t a = 0; a < n; ++a) {
                ((choice[v] >> a) & 1U ? left[v] : right[v]).push_back(off[v] + a);
            }
            for (auto a : left[v]) {
                for (auto b : right[v]) {
                    if (a > b) {
                        sign = -sign;
                    }
                }
            }
            map1.insert(map1.end(), left[v].begin(), left[v].end());
            map2.insert(map2.end(), right[v].begin(), right[v].end());
        }
        Polynomial t = p1.relabeled(nv, map1) * p2.relabeled(nv, map2);
        for (std::size_t a = 0; a < rank; ++a) {
            for (std::size_t b = 0; b < rank; ++b) {
                const long e = q.arrow_count(a, b);
                if (e == 0) {
                    continue;
                }
                for (auto x : left[a]) {
                    for (auto y : right[b]) {
                        t.mul_difference(y, x, e);
                    }
                }
            }
        }
        for (std::size_t v = 0; v < rank; ++v) {
            for (const auto *blk : {&left[v], &right[v]}) {
                for (std::size_t s = 0; s < blk->size(); ++s) {
                    for (std::size_t u = s + 1; u < blk->size(); ++u) {
                        t.mul_difference((*blk)[u], (*blk)[s]);
                    }
                }
            }
        }
        if (sign < 0) {
            t = -t;
        }
        numerator += t;
    };
    rec(rec, 0);

    Polynomial denominator = Polynomial::constant(nv, 1);
    for (std::size_t v = 0; v < rank; ++v) {
        for (std::size_t a = off[v]; a < off[v + 1]; ++a) {
            for (std::size_t b = a + 1; b < off[v + 1]; ++b) {
                denominator.mul_difference(b, a);
            }
        }
    }
    auto quotient = numerator.exact_divide(denominator);
    if (!quotient) {
        throw InternalError("shuffle_product_reference: exact division failed");
    }
    return CohaElement(SymPoly::from_polynomial(g, *quotient));
}

/// psi(g1, g2) mod 2 for the sign twist: psi(e_i, e_j) = beta(e_i, e_j) for i > j (vertex
/// order), 0 otherwise, with beta(a, b) = chi(a, b) + epsilon(a) epsilon(b) mod 2.
inline int twist_cocycle(const Quiver &q, const DimVector &g1, const DimVector &g2)
{
    if (!q.is_symmetric()) {
        throw Error("twist_cocycle: quiver is not symmetric");
    }
    const std::size_t r = q.rank();
    long s = 0;
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            const auto ei = DimVector::unit(r, i), ej = DimVector::unit(r, j);
            const long beta = euler_form(q, ei, ej) + epsilon(q, ei) * epsilon(q, ej);
            s += beta * g1[i] * g2[j];
        }
    }
    return static_cast<int>(((s % 2) + 2) % 2);
}

/// a1 * a2 twisted by (-1)^{psi(gamma1, gamma2)}; supercommutative for symmetric quivers.
inline CohaElement star_product(const Quiver &q, const CohaElement &f1, const CohaElement &f2)
{
    const int sign = twist_cocycle(q, f1.gamma(), f2.gamma());
    CohaElement p = shuffle_product(q, f1, f2);
    return sign ? -p : p;
}

struct Bidegree {
    DimVector gamma;
    long raw;     // 2 * polynomial degree
    long shifted; // raw + chi(gamma, gamma)
};

inline Bidegree bidegree(const Quiver &q, const CohaElement &f)
{
    if (f.is_zero()) {
        throw Error("bidegree: zero element has no degree");
    }
    if (!f.poly().is_homogeneous()) {
        throw Error("bidegree: element is not homogeneous");
    }
    const long raw = 2 * f.poly().degree();
    return {f.gamma(), raw, raw + euler_form(q, f.gamma(), f.gamma())};
}

/// Schur polynomial s_lambda(x_1..x_n) as the bialternant a_{lambda+delta} / a_delta,
/// divided exactly.
inline SymPoly schur_polynomial(const Partition &lambda, std::size_t n)
{
    Partition lam;
    for (int p : lambda) {
        if (p < 0) {
            throw Error("schur_polynomial: negative part");
        }
        if (p > 0) {
            lam.push_back(p);
        }
    }
    if (!std::is_sorted(lam.begin(), lam.end(), std::greater<>())) {
        throw Error("schur_polynomial: parts must be non-increasing");
    }
    if (lam.size() > n) {
        throw Error("schur_polynomial: more parts than variables");
    }
    lam.resize(n, 0);
    if (n == 0) {
        return SymPoly::constant(DimVector{0}, 1);
    }
    auto alternant = [&](const std::vector<int> &exps) {
        Polynomial a(n);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            int sign = 1;
            for (std::size_t s = 0; s < n; ++s) {
                for (std::size_t t = s + 1; t < n; ++t) {
                    if (perm[s] > perm[t]) {
                        sign = -sign;
                    }
                }
            }
            std::vector<int> e(n);
            for (std::size_t s = 0; s < n; ++s) {
                e[perm[s]] = exps[s];
            }
            a.add_term(Monomial::from(e), sign);
        } while (std::next_permutation(perm.begin(), perm.end()));
        return a;
    };
    std::vector<int> top(n), delta(n);
    for (std::size_t s = 0; s < n; ++s) {
        delta[s] = static_cast<int>(n - 1 - s);
        top[s] = lam[s] + delta[s];
    }
    auto quotient = alternant(top).exact_divide(alternant(delta));
    if (!quotient) {
        throw InternalError("schur_polynomial: bialternant division failed");
    }
    return SymPoly::from_polynomial(DimVector{static_cast<long>(n)}, *quotient);
}

} // namespace coha
