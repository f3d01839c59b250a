#pragma once

// Lambda-ring operations on commutative truncated series (Adams operations, Sym, Log),
// the admissibility test and its certificates, and refined invariants of ray factors.

#include <coha/torus.hpp>

#include <map>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

namespace coha
{

/// Series in commuting variables x_1..x_r with QRational coefficients, truncated at |gamma| <= N.
/// The variables and q^{1/2} are line elements.
class LambdaSeries
{
public:
    using map_type = std::map<DimVector, QRational>;

    LambdaSeries() = default;
    LambdaSeries(std::size_t rank, long truncation) : rank_(rank), n_(truncation)
    {
        if (truncation < 0) {
            throw Error("LambdaSeries: truncation must be non-negative");
        }
    }
    static LambdaSeries one(std::size_t rank, long truncation)
    {
        LambdaSeries s(rank, truncation);
        s.set(DimVector(rank), 1);
        return s;
    }
    /// c * x^gamma
    static LambdaSeries monomial(std::size_t rank, long truncation, const DimVector &g, const QRational &c)
    {
        LambdaSeries s(rank, truncation);
        s.set(g, c);
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
    QRational coeff(const DimVector &g) const
    {
        auto it = coeffs_.find(g);
        return it == coeffs_.end() ? QRational() : it->second;
    }
    QRational constant_term() const
    {
        return coeff(DimVector(rank_));
    }
    /// Coefficient of x^n for a one-variable series.
    QRational coeff(long n) const
    {
        return coeff(DimVector{n});
    }

    void set(const DimVector &g, const QRational &c)
    {
        if (g.rank() != rank_) {
            throw Error("LambdaSeries: exponent has the wrong number of variables");
        }
        if (!g.is_effective()) {
            throw Error("LambdaSeries: negative exponent");
        }
        if (g.total() > n_) {
            return;
        }
        if (c.is_zero()) {
            coeffs_.erase(g);
        } else {
            coeffs_[g] = c;
        }
    }
    void add(const DimVector &g, const QRational &c)
    {
        if (g.total() > n_ || c.is_zero()) {
            return;
        }
        set(g, coeff(g) + c);
    }

    LambdaSeries &operator+=(const LambdaSeries &o)
    {
        check(o);
        for (const auto &[g, c] : o.coeffs_) {
            add(g, c);
        }
        return *this;
    }
    LambdaSeries &operator-=(const LambdaSeries &o)
    {
        check(o);
        for (const auto &[g, c] : o.coeffs_) {
            add(g, -c);
        }
        return *this;
    }
    friend LambdaSeries operator+(LambdaSeries a, const LambdaSeries &b)
    {
        return a += b;
    }
    friend LambdaSeries operator-(LambdaSeries a, const LambdaSeries &b)
    {
        return a -= b;
    }
    friend LambdaSeries operator*(const QRational &c, const LambdaSeries &a)
    {
        LambdaSeries r(a.rank_, a.n_);
        for (const auto &[g, x] : a.coeffs_) {
            r.set(g, c * x);
        }
        return r;
    }
    friend LambdaSeries operator*(const LambdaSeries &a, const LambdaSeries &b)
    {
        a.check(b);
        LambdaSeries r(a.rank_, a.n_);
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

    /// Same rank and truncation; coefficientwise value equality.
    friend bool operator==(const LambdaSeries &a, const LambdaSeries &b)
    {
        if (a.rank_ != b.rank_ || a.n_ != b.n_) {
            return false;
        }
        for (const auto &[g, c] : a.coeffs_) {
            if (b.coeff(g) != c) {
                return false;
            }
        }
        for (const auto &[g, c] : b.coeffs_) {
            if (!a.coeffs_.count(g)) {
                return false;
            }
        }
        return true;
    }

    friend std::ostream &operator<<(std::ostream &os, const LambdaSeries &s)
    {
        os << "LambdaSeries[N=" << s.n_ << "]{";
        for (const auto &[g, c] : s.coeffs_) {
            os << "\n  " << g << ": " << c;
        }
        return os << "\n}";
    }

private:
    void check(const LambdaSeries &o) const
    {
        if (o.rank_ != rank_ || o.n_ != n_) {
            throw Error("LambdaSeries: rank or truncation mismatch");
        }
    }

    std::size_t rank_ = 0;
    long n_ = 0;
    map_type coeffs_;
};

/// psi_n: x^gamma -> x^{n gamma}, v -> v^n.
inline LambdaSeries adams_series(const LambdaSeries &g, long n)
{
    if (n < 1) {
        throw Error("adams_series: order must be positive");
    }
    LambdaSeries r(g.rank(), g.truncation());
    for (const auto &[gamma, c] : g.coeffs()) {
        if (gamma.total() * n > g.truncation()) {
            break;
        }
        r.set(n * gamma, c.adams(n));
    }
    return r;
}

namespace detail
{

/// exp(H) for H(0) = 0 via the total-degree derivation: |g| E_g = sum |a| H_a E_{g-a}.
inline LambdaSeries series_exp(const LambdaSeries &h)
{
    LambdaSeries e = LambdaSeries::one(h.rank(), h.truncation());
    for (const auto &gamma : effective_vectors(h.rank(), 1, h.truncation())) {
        QRational sum;
        for (const auto &[a, ha] : h.coeffs()) {
            if (a.total() > gamma.total()) {
                break;
            }
            if (!a.dominated_by(gamma)) {
                continue;
            }
            const QRational eb = e.coeff(gamma - a);
            if (!eb.is_zero()) {
                sum += QRational(Rational(a.total())) * ha * eb;
            }
        }
        e.set(gamma, sum * QRational(Rational(1, gamma.total())));
    }
    return e;
}

/// log(F) for F(0) = 1: |g| L_g = |g| F_g - sum_{0 < a < g} |a| L_a F_{g-a}.
inline LambdaSeries series_log(const LambdaSeries &f)
{
    LambdaSeries l(f.rank(), f.truncation());
    for (const auto &gamma : effective_vectors(f.rank(), 1, f.truncation())) {
        QRational sum = QRational(Rational(gamma.total())) * f.coeff(gamma);
        for (const auto &[a, la] : l.coeffs()) {
            if (a.total() >= gamma.total()) {
                break;
            }
            if (!a.dominated_by(gamma)) {
                continue;
            }
            const QRational fb = f.coeff(gamma - a);
            if (!fb.is_zero()) {
                sum -= QRational(Rational(a.total())) * la * fb;
            }
        }
        l.set(gamma, sum * QRational(Rational(1, gamma.total())));
    }
    return l;
}

} // namespace detail

/// Sym(G) = exp(sum_{n>=1} psi_n(G) / n) for G with zero constant term.
inline LambdaSeries pleth_sym(const LambdaSeries &g)
{
    if (!g.constant_term().is_zero()) {
        throw Error("pleth_sym: constant term must be 0");
    }
    LambdaSeries h(g.rank(), g.truncation());
    for (long n = 1; n <= g.truncation(); ++n) {
        h += QRational(Rational(1, n)) * adams_series(g, n);
    }
    return detail::series_exp(h);
}

/// Log(F) = sum_{n>=1} mu(n)/n psi_n(log F), the inverse of pleth_sym.
///
/// The coefficient at gamma only involves coefficients of F at vectors dominated by gamma, so
/// truncation at |gamma| <= N never corrupts the retained terms.
inline LambdaSeries pleth_log(const LambdaSeries &f)
{
    if (!f.constant_term().is_one()) {
        throw Error("pleth_log: constant term must be 1");
    }
    const LambdaSeries l = detail::series_log(f);
    LambdaSeries r(f.rank(), f.truncation());
    for (long n = 1; n <= f.truncation(); ++n) {
        const int mu = mobius(n);
        if (mu != 0) {
            r += QRational(Rational(mu, n)) * adams_series(l, n);
        }
    }
    return r;
}

/// Data witnessing F = Sym(sum_gamma f_gamma x^gamma / (1 - q)).
struct AdmissibleCertificate {
    std::map<DimVector, LaurentQ> f;
    /// One-variable inputs: (n, m) -> delta(n, m) with f_n = -sum_m delta(n, m) v^m.
    std::map<std::pair<long, long>, Integer> delta;
    /// Refined invariants; equal to f under the chosen normalization.
    std::map<DimVector, LaurentQ> omega;
    long truncation = 0;
    std::size_t rank = 0;
};

struct AdmissibleResult {
    std::optional<AdmissibleCertificate> certificate;
    std::optional<DimVector> failed_at; // first gamma whose f_gamma is not Laurent
    std::string reason;

    explicit operator bool() const
    {
        return certificate.has_value();
    }
};

/// Computes f_gamma = (1 - q) Log(F)_gamma and checks that each is a Laurent polynomial with
/// integer coefficients.
inline AdmissibleResult admissible_decompose(const LambdaSeries &f)
{
    AdmissibleResult res;
    if (!f.constant_term().is_one()) {
        throw Error("admissible_decompose: constant term must be 1");
    }
    const LambdaSeries g = pleth_log(f);
    AdmissibleCertificate cert;
    cert.truncation = f.truncation();
    cert.rank = f.rank();
    const QRational one_minus_q(LaurentQ::one_minus_q_pow(1));
    for (const auto &[gamma, c] : g.coeffs()) {
        const auto fl = try_laurent(one_minus_q * c);
        if (!fl) {
            res.failed_at = gamma;
            res.reason = "coefficient keeps a denominator";
            return res;
        }
        if (!fl->has_integer_coefficients()) {
            res.failed_at = gamma;
            res.reason = "coefficient is not integral";
            return res;
        }
        cert.f.emplace(gamma, *fl);
        cert.omega.emplace(gamma, *fl);
        if (f.rank() == 1) {
            for (const auto &[m, x] : fl->terms()) {
                cert.delta.emplace(std::make_pair(gamma[0], m), Integer(-x.get_num()));
            }
        }
    }
    res.certificate = std::move(cert);
    return res;
}

/// Whether every delta(n, m) satisfies m = (d - 1) n mod 2.
inline bool delta_parity_ok(const AdmissibleCertificate &cert, long d)
{
    for (const auto &[nm, value] : cert.delta) {
        const long diff = nm.second - (d - 1) * nm.first;
        if (diff % 2 != 0) {
            return false;
        }
    }
    return true;
}

/// a_gamma -> (-v)^{sum_ij b_ij gamma^i gamma^j} a_gamma for a symmetric integer matrix B.
inline LambdaSeries twist_series(const LambdaSeries &f, const std::vector<std::vector<long>> &b)
{
    const std::size_t r = f.rank();
    if (b.size() != r) {
        throw Error("twist_series: matrix size does not match the number of variables");
    }
    for (std::size_t i = 0; i < r; ++i) {
        if (b[i].size() != r) {
            throw Error("twist_series: matrix must be square");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (b[i][j] != b[j][i]) {
                throw Error("twist_series: matrix must be symmetric");
            }
        }
    }
    LambdaSeries out(r, f.truncation());
    for (const auto &[g, c] : f.coeffs()) {
        long e = 0;
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < r; ++j) {
                e += b[i][j] * g[i] * g[j];
            }
        }
        out.set(g, c * QRational(LaurentQ::minus_v_pow(e)));
    }
    return out;
}

/// Ordered-monomial normal form: with gamma = sum_k n_k b_k, ê_gamma equals
/// (-v)^{sum_{k<l} n_k n_l <b_k, b_l>} ê_{b_1}^{n_1} ... ê_{b_r}^{n_r}; the ordered monomial is then
/// replaced by the commuting monomial x^n. The result is truncated at floor(N / max |b_k|).
inline LambdaSeries quantum_to_classical(const TorusSeries &f, const std::vector<DimVector> &basis)
{
    const std::size_t r = f.rank();
    if (basis.size() != r) {
        throw Error("quantum_to_classical: basis must have one vector per vertex");
    }
    long maxlen = 1;
    for (const auto &b : basis) {
        f.quiver().check_vector(b);
        if (!b.is_effective() || b.is_zero()) {
            throw Error("quantum_to_classical: basis vectors must be nonzero and effective");
        }
        maxlen = std::max(maxlen, b.total());
    }
    // Inverse of the basis matrix (columns b_k) over the rationals.
    std::vector<std::vector<Rational>> m(r, std::vector<Rational>(2 * r, 0));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t k = 0; k < r; ++k) {
            m[i][k] = basis[k][i];
        }
        m[i][r + i] = 1;
    }
    for (std::size_t c = 0; c < r; ++c) {
        std::size_t p = c;
        while (p < r && m[p][c] == 0) {
            ++p;
        }
        if (p == r) {
            throw Error("quantum_to_classical: basis vectors are linearly dependent");
        }
        std::swap(m[p], m[c]);
        const Rational piv = m[c][c];
        for (auto &x : m[c]) {
            x /= piv;
        }
        for (std::size_t i = 0; i < r; ++i) {
            if (i != c && m[i][c] != 0) {
                const Rational factor = m[i][c];
                for (std::size_t k = 0; k < 2 * r; ++k) {
                    m[i][k] -= factor * m[c][k];
                }
            }
        }
    }
    const TorusSeries fh = to_basis(f, Basis::EHAT);
    const long n_out = f.truncation() / maxlen;
    LambdaSeries out(r, n_out);
    for (const auto &[g, c] : fh.coeffs()) {
        DimVector n(r);
        for (std::size_t k = 0; k < r; ++k) {
            Rational s = 0;
            for (std::size_t i = 0; i < r; ++i) {
                s += m[k][r + i] * g[i];
            }
            if (!is_integer(s) || s < 0) {
                throw Error("quantum_to_classical: support is not in the non-negative span of the basis");
            }
            n[k] = s.get_num().get_si();
        }
        if (n.total() > n_out) {
            continue;
        }
        long e = 0;
        for (std::size_t k = 0; k < r; ++k) {
            for (std::size_t l = k + 1; l < r; ++l) {
                e += n[k] * n[l] * skew_form(f.quiver(), basis[k], basis[l]);
            }
        }
        out.set(n, c * QRational(LaurentQ::minus_v_pow(e)));
    }
    return out;
}

/// The ê-coefficients of a series supported on one ray, as a one-variable series in
/// x = ê_{gamma0}; truncated at floor(N / |gamma0|).
inline LambdaSeries ray_series(const TorusSeries &a, const Ray &l)
{
    const TorusSeries ah = to_basis(a, Basis::EHAT);
    const long n_out = a.truncation() / l.primitive().total();
    LambdaSeries out(1, n_out);
    for (const auto &[g, c] : ah.coeffs()) {
        const long k = g.is_zero() ? 0 : g.multiple_of(l.primitive());
        if (!g.is_zero() && k == 0) {
            throw Error("ray_series: series is not supported on the ray");
        }
        out.set(DimVector{k}, c);
    }
    return out;
}

struct RefinedDT {
    std::map<long, LaurentQ> omega; // k -> Omega(k gamma0)
    bool laurent_ok = true;
    std::optional<long> failed_at;
};

/// Omega(k gamma0) = (1 - q) Log(A_l)_k, with the ray factor written in ê-variables.
inline RefinedDT refined_dt(const TorusSeries &a, const Ray &l)
{
    RefinedDT out;
    const LambdaSeries s = ray_series(a, l);
    const LambdaSeries g = pleth_log(s);
    const QRational one_minus_q(LaurentQ::one_minus_q_pow(1));
    for (const auto &[k, c] : g.coeffs()) {
        const auto fl = try_laurent(one_minus_q * c);
        if (!fl) {
            out.laurent_ok = false;
            out.failed_at = k[0];
            return out;
        }
        out.omega.emplace(k[0], *fl);
    }
    return out;
}

struct RayCertificate {
    Ray ray;
    TorusSeries factor;
    AdmissibleResult result;
};

struct QuantumFactorization {
    std::vector<RayCertificate> rays;
    bool ok = true;
};

/// Peels F along Z and tests each ray factor for admissibility in its one variable.
inline QuantumFactorization quantum_admissible_factorize(const TorusSeries &f, const CentralCharge &z)
{
    QuantumFactorization out;
    for (auto &rf : hn_peel(f, z)) {
        AdmissibleResult r = admissible_decompose(ray_series(rf.factor, rf.ray));
        out.ok = out.ok && static_cast<bool>(r);
        out.rays.push_back({rf.ray, std::move(rf.factor), std::move(r)});
    }
    return out;
}

} // namespace coha
