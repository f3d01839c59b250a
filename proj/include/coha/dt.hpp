#pragma once

// DT-series of quivers without potential and the data derived from them: framed series
// A^(gamma), classical limits, Reineke's functional equations, periodicity of the Dynkin
// map and the comparison of DT-series across a mutation.

#include <coha/plethystic.hpp>
#include <coha/torus.hpp>

#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace coha
{

/// Commutative series with rational coefficients, truncated at |gamma| <= N.
class ClassicalSeries
{
public:
    using map_type = std::map<DimVector, Rational>;

    ClassicalSeries() = default;
    ClassicalSeries(std::size_t rank, long truncation) : rank_(rank), n_(truncation) {}
    static ClassicalSeries one(std::size_t rank, long truncation)
    {
        ClassicalSeries s(rank, truncation);
        s.set(DimVector(rank), 1);
        return s;
    }
    static ClassicalSeries variable(std::size_t rank, long truncation, std::size_t i)
    {
        ClassicalSeries s(rank, truncation);
        s.set(DimVector::unit(rank, i), 1);
        return s;
    }
    /// One-variable series from its coefficients at x^0, x^1, ...
    static ClassicalSeries from_coefficients(const std::vector<Rational> &c, long truncation)
    {
        ClassicalSeries s(1, truncation);
        for (std::size_t n = 0; n < c.size(); ++n) {
            s.set(DimVector{static_cast<long>(n)}, c[n]);
        }
        return s;
    }

    std::size_t rank() const
    {
        return rank_;
    }
    long truncation() const
    {
        return n_;
    }
    const map_type &coeffs() const
    {
        return coeffs_;
    }
    Rational coeff(const DimVector &g) const
    {
        auto it = coeffs_.find(g);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }
    Rational coeff(long n) const
    {
        return coeff(DimVector{n});
    }
    void set(const DimVector &g, const Rational &c)
    {
        if (g.rank() != rank_) {
            throw Error("ClassicalSeries: exponent has the wrong number of variables");
        }
        if (g.total() > n_) {
            return;
        }
        if (c == 0) {
            coeffs_.erase(g);
        } else {
            coeffs_[g] = c;
        }
    }
    void add(const DimVector &g, const Rational &c)
    {
        if (g.total() <= n_ && c != 0) {
            set(g, coeff(g) + c);
        }
    }

    friend ClassicalSeries operator+(ClassicalSeries a, const ClassicalSeries &b)
    {
        a.check(b);
        for (const auto &[g, c] : b.coeffs_) {
            a.add(g, c);
        }
        return a;
    }
    friend ClassicalSeries operator-(ClassicalSeries a, const ClassicalSeries &b)
    {
        a.check(b);
        for (const auto &[g, c] : b.coeffs_) {
            a.add(g, -c);
        }
        return a;
    }
    friend ClassicalSeries operator*(const ClassicalSeries &a, const ClassicalSeries &b)
    {
        a.check(b);
        ClassicalSeries r(a.rank_, a.n_);
        for (const auto &[ga, ca] : a.coeffs_) {
            for (const auto &[gb, cb] : b.coeffs_) {
                if (ga.total() + gb.total() > a.n_) {
                    break;
                }
                r.add(ga + gb, ca * cb);
            }
        }
        return r;
    }
    ClassicalSeries pow(long e) const
    {
        if (e < 0) {
            return inverse().pow(-e);
        }
        ClassicalSeries r = one(rank_, n_), b = *this;
        while (e) {
            if (e & 1) {
                r = r * b;
            }
            e >>= 1;
            if (e) {
                b = b * b;
            }
        }
        return r;
    }
    /// Inverse of a series with constant term 1.
    ClassicalSeries inverse() const
    {
        if (coeff(DimVector(rank_)) != 1) {
            throw Error("ClassicalSeries: inverse needs constant term 1");
        }
        ClassicalSeries r = one(rank_, n_);
        for (const auto &g : effective_vectors(rank_, 1, n_)) {
            Rational s = 0;
            for (const auto &[a, ca] : coeffs_) {
                if (a.is_zero()) {
                    continue;
                }
                if (a.total() > g.total()) {
                    break;
                }
                if (a.dominated_by(g)) {
                    s += ca * r.coeff(g - a);
                }
            }
            r.set(g, -s);
        }
        return r;
    }
    /// (this)^a for a rational exponent, by the binomial series; constant term must be 1.
    ClassicalSeries rational_pow(const Rational &a) const
    {
        if (coeff(DimVector(rank_)) != 1) {
            throw Error("ClassicalSeries: rational power needs constant term 1");
        }
        ClassicalSeries y = *this - one(rank_, n_);
        ClassicalSeries r = one(rank_, n_), term = one(rank_, n_);
        Rational binom = 1;
        for (long k = 1; k <= n_; ++k) {
            binom = binom * (a - (k - 1)) / k;
            term = term * y;
            ClassicalSeries t(rank_, n_);
            for (const auto &[g, c] : term.coeffs_) {
                t.set(g, c * binom);
            }
            r = r + t;
        }
        return r;
    }

    friend bool operator==(const ClassicalSeries &a, const ClassicalSeries &b)
    {
        return a.rank_ == b.rank_ && a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
    }
    friend std::ostream &operator<<(std::ostream &os, const ClassicalSeries &s)
    {
        os << "{";
        bool first = true;
        for (const auto &[g, c] : s.coeffs_) {
            os << (first ? "" : ", ") << g << ": " << c.get_str();
            first = false;
        }
        return os << "}";
    }

private:
    void check(const ClassicalSeries &o) const
    {
        if (o.rank_ != rank_ || o.n_ != n_) {
            throw Error("ClassicalSeries: rank or truncation mismatch");
        }
    }

    std::size_t rank_ = 0;
    long n_ = 0;
    map_type coeffs_;
};

/// 1 / prod_i prod_{k=1}^{gamma^i} (1 - q^k).
inline QRational inverse_pochhammer(const DimVector &g)
{
    QRational::den_type den;
    for (std::size_t i = 0; i < g.rank(); ++i) {
        for (long k = 1; k <= g[i]; ++k) {
            ++den[k];
        }
    }
    return QRational(LaurentQ(1), std::move(den));
}

/// sum_gamma (-v)^{chi(gamma,gamma)} / prod_i (q)_{gamma^i} ê_gamma.
inline TorusSeries dt_series_zero_potential(std::shared_ptr<const Quiver> q, long n)
{
    TorusSeries a(q, Basis::EHAT, n);
    for (const auto &g : effective_vectors(q->rank(), 0, n)) {
        a.set(g, QRational(LaurentQ::minus_v_pow(euler_form(*q, g, g))) * inverse_pochhammer(g));
    }
    return a;
}

inline TorusSeries dt_series_zero_potential(const Quiver &q, long n)
{
    return dt_series_zero_potential(std::make_shared<const Quiver>(q), n);
}

/// P_d(z) = sum_n (-v)^{(1-d) n^2} z^n / (q)_n.
inline LambdaSeries hilbert_series(long d, long n)
{
    if (d < 0) {
        throw Error("hilbert_series: number of loops must be non-negative");
    }
    LambdaSeries p(1, n);
    for (long k = 0; k <= n; ++k) {
        p.set(DimVector{k}, QRational(LaurentQ::minus_v_pow((1 - d) * k * k)) * inverse_pochhammer(DimVector{k}));
    }
    return p;
}

/// (q^{1/2} ê_{gamma0}; q)_inf = sum_n (-v)^{n^2} / (q)_n ê_{n gamma0}, for gamma0 with <gamma0, gamma0> = 0.
inline TorusSeries quantum_dilog(std::shared_ptr<const Quiver> q, const DimVector &gamma0, long n)
{
    TorusSeries s(q, Basis::EHAT, n);
    for (long k = 0; gamma0.total() * k <= n; ++k) {
        s.set(k * gamma0, QRational(LaurentQ::minus_v_pow(k * k)) * inverse_pochhammer(DimVector{k}));
        if (gamma0.is_zero()) {
            break;
        }
    }
    return s;
}

struct FramedSeries {
    TorusSeries series;
    bool laurent_ok = true;
    std::optional<DimVector> first_failure;
};

/// A^(gamma) = A (f^gamma A f^{-gamma})^{-1}, with a Laurent check on every coefficient.
inline FramedSeries a_gamma(const TorusSeries &a, const DimVector &gamma)
{
    FramedSeries out{torus_mul(a, torus_inverse(f_conjugate(a, gamma))), true, std::nullopt};
    for (const auto &[g, c] : out.series.coeffs()) {
        if (!c.try_laurent()) {
            out.laurent_ok = false;
            out.first_failure = g;
            break;
        }
    }
    return out;
}

/// Euler characteristic of each e-basis coefficient (v -> 1); every coefficient must be Laurent.
inline ClassicalSeries classical_limit(const TorusSeries &a)
{
    const TorusSeries e = to_basis(a, Basis::E);
    ClassicalSeries out(e.rank(), e.truncation());
    for (const auto &[g, c] : e.coeffs()) {
        auto l = c.try_laurent();
        if (!l) {
            throw Error("classical_limit: coefficient is not a Laurent polynomial");
        }
        out.set(g, l->evaluate_at_one());
    }
    return out;
}

/// The solution of g_i = 1 + x_i prod_j g_j^{a_ij} modulo total degree N + 1.
inline std::vector<ClassicalSeries> reineke_solve(const Quiver &q, long n)
{
    const std::size_t r = q.rank();
    std::vector<ClassicalSeries> g(r, ClassicalSeries::one(r, n));
    for (long it = 0; it <= n; ++it) {
        std::vector<ClassicalSeries> next;
        for (std::size_t i = 0; i < r; ++i) {
            ClassicalSeries p = ClassicalSeries::variable(r, n, i);
            for (std::size_t j = 0; j < r; ++j) {
                if (q.arrow_count(i, j) != 0) {
                    p = p * g[j].pow(q.arrow_count(i, j));
                }
            }
            next.push_back(ClassicalSeries::one(r, n) + p);
        }
        g = std::move(next);
    }
    return g;
}

/// Whether the given series satisfy the functional equations modulo truncation.
inline bool reineke_satisfied(const Quiver &q, const std::vector<ClassicalSeries> &g)
{
    if (g.size() != q.rank()) {
        return false;
    }
    const std::size_t r = q.rank();
    for (std::size_t i = 0; i < r; ++i) {
        const long n = g[i].truncation();
        ClassicalSeries p = ClassicalSeries::variable(r, n, i);
        for (std::size_t j = 0; j < r; ++j) {
            p = p * g[j].pow(q.arrow_count(i, j));
        }
        if (!(g[i] == ClassicalSeries::one(r, n) + p)) {
            return false;
        }
    }
    return true;
}

struct RatioLimit {
    ClassicalSeries series;
    bool laurent_ok = true;
    std::optional<long> failed_at;
};

/// G(x) = F(x) / F(qx) followed by v -> 1; F is a one-variable series with F(0) = 1.
inline RatioLimit ratio_classical_limit(const LambdaSeries &f)
{
    if (f.rank() != 1) {
        throw Error("ratio_classical_limit: one-variable series expected");
    }
    if (!f.constant_term().is_one()) {
        throw Error("ratio_classical_limit: constant term must be 1");
    }
    const long n = f.truncation();
    // Inverse of F(qx), degree by degree.
    std::vector<QRational> fq(static_cast<std::size_t>(n + 1)), inv(static_cast<std::size_t>(n + 1));
    for (long k = 0; k <= n; ++k) {
        fq[static_cast<std::size_t>(k)] = f.coeff(k).shifted(2 * k);
    }
    inv[0] = 1;
    for (long k = 1; k <= n; ++k) {
        QRational s;
        for (long a = 1; a <= k; ++a) {
            s += fq[static_cast<std::size_t>(a)] * inv[static_cast<std::size_t>(k - a)];
        }
        inv[static_cast<std::size_t>(k)] = -s;
    }
    RatioLimit out{ClassicalSeries(1, n), true, std::nullopt};
    for (long k = 0; k <= n; ++k) {
        QRational s;
        for (long a = 0; a <= k; ++a) {
            s += f.coeff(a) * inv[static_cast<std::size_t>(k - a)];
        }
        auto l = s.try_laurent();
        if (!l) {
            out.laurent_ok = false;
            out.failed_at = k;
            return out;
        }
        out.series.set(DimVector{k}, l->evaluate_at_one());
    }
    return out;
}

/// Exponents e(n) with G = prod_{n>=1} (1 - x^n)^{e(n)} modulo x^{N+1}; G(0) = 1.
inline std::map<long, Rational> product_exponents(const ClassicalSeries &g)
{
    if (g.rank() != 1) {
        throw Error("product_exponents: one-variable series expected");
    }
    const long n = g.truncation();
    std::map<long, Rational> e;
    ClassicalSeries rest = g;
    for (long k = 1; k <= n; ++k) {
        const Rational ek = -rest.coeff(k);
        if (ek != 0) {
            e[k] = ek;
            ClassicalSeries factor = ClassicalSeries::one(1, n);
            factor.set(DimVector{k}, -1);
            rest = rest * factor.rational_pow(-ek);
        }
    }
    return e;
}

struct DynkinResult {
    std::optional<long> period;
    long points = 0;
    long resamples = 0;
};

namespace detail
{

/// One application of x_i -> (x_i prod_j g_j^{a_ij - a_ji})^{-1}, g from the triangular system.
/// Returns nullopt at a pole.
inline std::optional<std::vector<Rational>> dynkin_step(const Quiver &q, const std::vector<std::size_t> &order,
                                                        const std::vector<Rational> &x)
{
    const std::size_t r = q.rank();
    std::vector<Rational> g(r);
    for (auto i : order) {
        Rational p = 1;
        for (std::size_t j = 0; j < r; ++j) {
            for (long k = 0; k < q.arrow_count(i, j); ++k) {
                p *= g[j];
            }
        }
        g[i] = 1 + x[i] * p;
    }
    std::vector<Rational> out(r);
    for (std::size_t i = 0; i < r; ++i) {
        Rational denom = x[i];
        for (std::size_t j = 0; j < r; ++j) {
            const long e = q.arrow_count(i, j) - q.arrow_count(j, i);
            if (e == 0) {
                continue;
            }
            if (g[j] == 0) {
                return std::nullopt;
            }
            for (long k = 0; k < std::abs(e); ++k) {
                if (e > 0) {
                    denom *= g[j];
                } else {
                    denom /= g[j];
                }
            }
        }
        if (denom == 0) {
            return std::nullopt;
        }
        out[i] = 1 / denom;
    }
    return out;
}

/// Vertices ordered so that every arrow i -> j has j before i.
inline std::vector<std::size_t> sinks_first(const Quiver &q)
{
    const std::size_t r = q.rank();
    std::vector<long> outdeg(r, 0);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            outdeg[i] += q.arrow_count(i, j) > 0 ? 1 : 0;
        }
    }
    std::vector<std::size_t> order, stack;
    for (std::size_t i = 0; i < r; ++i) {
        if (outdeg[i] == 0) {
            stack.push_back(i);
        }
    }
    while (!stack.empty()) {
        auto j = stack.back();
        stack.pop_back();
        order.push_back(j);
        for (std::size_t i = 0; i < r; ++i) {
            if (q.arrow_count(i, j) > 0 && --outdeg[i] == 0) {
                stack.push_back(i);
            }
        }
    }
    return order;
}

} // namespace detail

/// Smallest p <= bound with T^p = id, certified at `trials` random rational points of height
/// at least 100, drawn from a generator seeded with `seed`.
inline DynkinResult dynkin_period_check(const Quiver &q, long trials, long bound, std::uint64_t seed)
{
    if (!q.is_acyclic()) {
        throw Error("dynkin_period_check: quiver must be acyclic");
    }
    if (trials < 1 || bound < 1) {
        throw Error("dynkin_period_check: trials and bound must be positive");
    }
    const auto order = detail::sinks_first(q);
    const std::size_t r = q.rank();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> mag(100, 100000);
    std::uniform_int_distribution<int> coin(0, 1);

    DynkinResult res;
    std::vector<bool> candidate(static_cast<std::size_t>(bound + 1), true);
    long accepted = 0;
    const long max_attempts = 100 * trials;
    for (long attempt = 0; accepted < trials; ++attempt) {
        if (attempt >= max_attempts) {
            throw Error("dynkin_period_check: too many evaluation points hit a pole");
        }
        std::vector<Rational> x0(r);
        for (auto &xi : x0) {
            xi = Rational(mag(rng) * (coin(rng) ? 1 : -1), mag(rng));
            xi.canonicalize();
        }
        std::vector<bool> returns(static_cast<std::size_t>(bound + 1), false);
        std::vector<Rational> x = x0;
        bool pole = false;
        for (long p = 1; p <= bound; ++p) {
            auto next = detail::dynkin_step(q, order, x);
            if (!next) {
                pole = true;
                break;
            }
            x = std::move(*next);
            returns[static_cast<std::size_t>(p)] = (x == x0);
        }
        if (pole) {
            ++res.resamples;
            continue;
        }
        for (long p = 1; p <= bound; ++p) {
            candidate[static_cast<std::size_t>(p)] = candidate[static_cast<std::size_t>(p)] && returns[static_cast<std::size_t>(p)];
        }
        ++accepted;
    }
    res.points = accepted;
    for (long p = 1; p <= bound; ++p) {
        if (candidate[static_cast<std::size_t>(p)]) {
            res.period = p;
            break;
        }
    }
    return res;
}

/// Charges for comparing DT-series across mutation at i0: in the first, Arg z_{i0} is the
/// largest; in the second, the smallest. Both are generic up to total degree n.
inline std::pair<CentralCharge, CentralCharge> mutation_charges(const Quiver &q, std::size_t i0, long n)
{
    const std::size_t r = q.rank();
    const Integer base = 2 * n * n + 1;
    std::vector<CentralCharge::Point> z(r), zp(r);
    Integer w = 1;
    for (std::size_t j = 0; j < r; ++j) {
        z[j] = zp[j] = {Rational(w), Rational(1)};
        w *= base;
    }
    z[i0] = {Rational(-w), Rational(1)};
    zp[i0] = {Rational(w), Rational(1)};
    return {CentralCharge(z), CentralCharge(zp)};
}

struct MutationComparison {
    bool match = true;
    long compared = 0;
    std::vector<std::string> mismatches;
};

/// Compares the sector series of Q (with the i0 ray, of largest phase, stripped) against those of
/// the mutated quiver (with its i0 ray, of smallest phase, stripped) under gamma <-> gamma'.
///
/// i0 must be a sink or a source of an acyclic quiver, so that both potentials vanish. The
/// comparison is made in the ê-basis and again in the e-basis with the monomial rescaling
/// e_gamma <-> q^{sum_j a_{j i0} gamma^j gamma'^{i0}} e'_gamma'.
inline MutationComparison mutation_dt_compare(const Quiver &q, const std::string &i0_label, const CentralCharge &z,
                                              const CentralCharge &zp, long n)
{
    const std::size_t i0 = q.index_of(i0_label);
    if (q.arrow_count(i0, i0) != 0) {
        throw Error("cannot mutate at vertex '" + i0_label + "': it carries a loop");
    }
    if (!q.is_acyclic()) {
        throw Error("mutation_dt_compare: quiver must be acyclic");
    }
    if (!q.is_sink(i0) && !q.is_source(i0)) {
        throw Error("mutation_dt_compare: vertex '" + i0_label + "' is neither a sink nor a source");
    }
    const std::size_t r = q.rank();
    const DimVector ei0 = DimVector::unit(r, i0);
    for (std::size_t j = 0; j < r; ++j) {
        if (j == i0) {
            continue;
        }
        const DimVector ej = DimVector::unit(r, j);
        if (!slope_less(z, ej, ei0)) {
            throw Error("mutation_dt_compare: Arg z_i0 must be the largest phase");
        }
        if (!slope_less(zp, ei0, ej)) {
            throw Error("mutation_dt_compare: Arg z'_i0 must be the smallest phase");
        }
    }

    auto qp = std::make_shared<const Quiver>(q);
    auto qm = std::make_shared<const Quiver>(mutate_quiver(q, i0_label));
    const TorusSeries a = dt_series_zero_potential(qp, n);
    const TorusSeries am = dt_series_zero_potential(qm, n);
    const Ray l0(ei0);

    TorusSeries sector = TorusSeries::one(qp, Basis::EHAT, n);
    for (const auto &rf : hn_peel(a, z)) {
        if (!(rf.ray == l0)) {
            sector = torus_mul(sector, rf.factor);
        }
    }
    TorusSeries sector_m = TorusSeries::one(qm, Basis::EHAT, n);
    for (const auto &rf : hn_peel(am, zp)) {
        if (!(rf.ray == l0)) {
            sector_m = torus_mul(sector_m, rf.factor);
        }
    }
    const TorusSeries sector_e = to_basis(sector, Basis::E);
    const TorusSeries sector_me = to_basis(sector_m, Basis::E);

    MutationComparison out;
    auto report = [&](const std::string &what) {
        out.match = false;
        out.mismatches.push_back(what);
    };
    auto str = [](const auto &x) {
        std::ostringstream os;
        os << x;
        return os.str();
    };
    for (const auto &g : effective_vectors(r, 0, n)) {
        long image_i0 = -g[i0];
        for (std::size_t j = 0; j < r; ++j) {
            image_i0 += q.arrow_count(i0, j) * g[j];
        }
        if (image_i0 < 0) {
            if (!sector.coeff(g).is_zero()) {
                report("sector coefficient at " + str(g) + " is nonzero but its image is not effective");
            }
            continue;
        }
        DimVector gp = g;
        gp[i0] = image_i0;
        if (gp.total() > n) {
            continue;
        }
        ++out.compared;
        if (sector.coeff(g) != sector_m.coeff(gp)) {
            report("ê-coefficients differ at " + str(g) + " <-> " + str(gp));
        }
        long s = 0;
        for (std::size_t j = 0; j < r; ++j) {
            s += q.arrow_count(j, i0) * g[j];
        }
        s *= gp[i0];
        if (sector_e.coeff(g).shifted(2 * s) != sector_me.coeff(gp)) {
            report("e-coefficients differ at " + str(g) + " <-> " + str(gp));
        }
    }
    // The reverse direction: nothing in the mutated sector may lack a preimage.
    for (const auto &[gp, c] : sector_m.coeffs()) {
        long pre_i0 = -gp[i0];
        for (std::size_t j = 0; j < r; ++j) {
            pre_i0 += q.arrow_count(i0, j) * gp[j];
        }
        if (pre_i0 < 0) {
            report("mutated sector coefficient at " + str(gp) + " has no effective preimage");
        }
    }
    return out;
}

} // namespace coha
