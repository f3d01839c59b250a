#pragma once

// Truncated series in the quantum torus of a quiver: twisted products, inverses,
// f-conjugation, basis change, ray projection and Harder-Narasimhan peeling.

#include <coha/parallel.hpp>
#include <coha/qrational.hpp>
#include <coha/quiver.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <ostream>
#include <vector>

namespace coha
{

/// e: e_a e_b = q^{-chi(a,b)} e_{a+b}.  EHAT: ê_a ê_b = (-v)^{-<a,b>} ê_{a+b}.
enum class Basis { E, EHAT };

inline const char *basis_name(Basis b)
{
    return b == Basis::E ? "E" : "EHAT";
}

/// sum_gamma a_gamma e_gamma (or ê_gamma) over effective gamma with |gamma| <= N.
class TorusSeries
{
public:
    using map_type = std::map<DimVector, QRational>;

    TorusSeries() = default;
    TorusSeries(std::shared_ptr<const Quiver> q, Basis basis, long truncation)
        : quiver_(std::move(q)), basis_(basis), n_(truncation)
    {
        if (!quiver_) {
            throw Error("TorusSeries: null quiver");
        }
        if (n_ < 0) {
            throw Error("TorusSeries: truncation must be non-negative");
        }
    }
    static TorusSeries one(std::shared_ptr<const Quiver> q, Basis basis, long truncation)
    {
        TorusSeries s(std::move(q), basis, truncation);
        s.set(DimVector(s.quiver_->rank()), QRational(1));
        return s;
    }

    const Quiver &quiver() const
    {
        return *quiver_;
    }
    const std::shared_ptr<const Quiver> &quiver_ptr() const
    {
        return quiver_;
    }
    Basis basis() const
    {
        return basis_;
    }
    long truncation() const
    {
        return n_;
    }
    const map_type &coeffs() const
    {
        return coeffs_;
    }
    std::size_t rank() const
    {
        return quiver_->rank();
    }

    QRational coeff(const DimVector &g) const
    {
        auto it = coeffs_.find(g);
        return it == coeffs_.end() ? QRational() : it->second;
    }

    /// Sets a coefficient; terms beyond the truncation are dropped silently.
    void set(const DimVector &g, const QRational &c)
    {
        quiver_->check_vector(g);
        if (!g.is_effective()) {
            throw Error("TorusSeries: dimension vectors must be effective");
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

    bool is_one() const
    {
        return coeffs_.size() == 1 && coeffs_.begin()->first.is_zero() && coeffs_.begin()->second.is_one();
    }

    /// Same quiver (by arrow-count matrix), basis and truncation.
    bool compatible(const TorusSeries &o) const
    {
        return basis_ == o.basis_ && n_ == o.n_ && quiver_->matrix() == o.quiver_->matrix();
    }
    void check_compatible(const TorusSeries &o) const
    {
        if (basis_ != o.basis_) {
            throw Error("torus series in different bases");
        }
        if (quiver_->matrix() != o.quiver_->matrix()) {
            throw Error("torus series over different quivers");
        }
        if (n_ != o.n_) {
            throw Error("torus series with different truncations");
        }
    }

    /// Coefficientwise value equality.
    friend bool operator==(const TorusSeries &a, const TorusSeries &b)
    {
        if (!a.compatible(b)) {
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

    /// Twist exponent data of the product.
    QRational twist(const DimVector &a, const DimVector &b) const
    {
        if (basis_ == Basis::E) {
            return QRational(LaurentQ::monomial(-2 * euler_form(*quiver_, a, b)));
        }
        return QRational(LaurentQ::minus_v_pow(-skew_form(*quiver_, a, b)));
    }

    friend std::ostream &operator<<(std::ostream &os, const TorusSeries &s)
    {
        os << "TorusSeries[" << basis_name(s.basis_) << ", N=" << s.n_ << "]{";
        for (const auto &[g, c] : s.coeffs_) {
            os << "\n  " << g << ": " << c;
        }
        return os << "\n}";
    }

private:
    std::shared_ptr<const Quiver> quiver_;
    Basis basis_ = Basis::EHAT;
    long n_ = 0;
    map_type coeffs_;
};

inline TorusSeries torus_mul(const TorusSeries &f, const TorusSeries &g)
{
    f.check_compatible(g);
    const long n = f.truncation();
    const auto targets = effective_vectors(f.rank(), 0, n);
    std::vector<QRational> out(targets.size());
    parallel_for(targets.size(), thread_count(), [&](std::size_t, std::size_t t) {
        const DimVector &gamma = targets[t];
        QRational sum;
        for (const auto &[a, ca] : f.coeffs()) {
            if (a.total() > gamma.total()) {
                break;
            }
            if (!a.dominated_by(gamma)) {
                continue;
            }
            const DimVector b = gamma - a;
            auto it = g.coeffs().find(b);
            if (it == g.coeffs().end()) {
                continue;
            }
            sum += ca * it->second * f.twist(a, b);
        }
        out[t] = std::move(sum);
    });
    TorusSeries r(f.quiver_ptr(), f.basis(), n);
    for (std::size_t t = 0; t < targets.size(); ++t) {
        r.set(targets[t], out[t]);
    }
    return r;
}

inline TorusSeries operator*(const TorusSeries &f, const TorusSeries &g)
{
    return torus_mul(f, g);
}

/// Two-sided inverse of a series with constant term 1, degree by degree.
inline TorusSeries torus_inverse(const TorusSeries &f)
{
    const DimVector zero(f.rank());
    if (!f.coeff(zero).is_one()) {
        throw Error("torus_inverse: constant term must be 1");
    }
    TorusSeries r = TorusSeries::one(f.quiver_ptr(), f.basis(), f.truncation());
    for (const auto &gamma : effective_vectors(f.rank(), 1, f.truncation())) {
        QRational sum;
        for (const auto &[a, ca] : f.coeffs()) {
            if (a.is_zero()) {
                continue;
            }
            if (a.total() > gamma.total()) {
                break;
            }
            if (!a.dominated_by(gamma)) {
                continue;
            }
            const DimVector b = gamma - a;
            const QRational gb = r.coeff(b);
            if (gb.is_zero()) {
                continue;
            }
            sum += ca * gb * f.twist(a, b);
        }
        r.set(gamma, -sum);
    }
    return r;
}

/// f^delta F f^{-delta}: the coefficient at gamma is multiplied by q^{sum_i delta^i gamma^i}.
inline TorusSeries f_conjugate(const TorusSeries &f, const DimVector &delta)
{
    f.quiver().check_vector(delta);
    TorusSeries r(f.quiver_ptr(), f.basis(), f.truncation());
    for (const auto &[g, c] : f.coeffs()) {
        r.set(g, c.shifted(2 * dot(delta, g)));
    }
    return r;
}

/// Rewrites F in the other basis using ê_gamma = (-v)^{-chi(gamma,gamma)} e_gamma.
inline TorusSeries change_basis(const TorusSeries &f)
{
    const Basis target = f.basis() == Basis::E ? Basis::EHAT : Basis::E;
    TorusSeries r(f.quiver_ptr(), target, f.truncation());
    for (const auto &[g, c] : f.coeffs()) {
        const long chi = euler_form(f.quiver(), g, g);
        r.set(g, c * QRational(LaurentQ::minus_v_pow(target == Basis::EHAT ? chi : -chi)));
    }
    return r;
}

inline TorusSeries to_basis(const TorusSeries &f, Basis b)
{
    return f.basis() == b ? f : change_basis(f);
}

/// A ray of the positive cone, spanned by a primitive effective vector.
class Ray
{
public:
    explicit Ray(DimVector primitive) : p_(std::move(primitive))
    {
        if (p_.is_zero() || !p_.is_effective() || !p_.is_primitive()) {
            throw Error("Ray: generator must be a primitive effective vector");
        }
    }
    const DimVector &primitive() const
    {
        return p_;
    }
    friend bool operator==(const Ray &, const Ray &) = default;

private:
    DimVector p_;
};

/// Keeps the constant term and the coefficients at positive multiples of the ray.
inline TorusSeries ray_project(const TorusSeries &f, const Ray &l)
{
    TorusSeries r(f.quiver_ptr(), f.basis(), f.truncation());
    for (const auto &[g, c] : f.coeffs()) {
        if (g.is_zero() || g.multiple_of(l.primitive()) > 0) {
            r.set(g, c);
        }
    }
    return r;
}

/// Primitive effective vectors with |gamma| <= N, by strictly decreasing Arg Z.
inline std::vector<Ray> rays_clockwise(const CentralCharge &z, const Quiver &q, long n)
{
    std::vector<DimVector> prims;
    for (auto &g : effective_vectors(q.rank(), 1, n)) {
        if (g.is_primitive()) {
            prims.push_back(g);
        }
    }
    std::stable_sort(prims.begin(), prims.end(),
                     [&](const DimVector &a, const DimVector &b) { return slope_less(z, b, a); });
    std::vector<Ray> out;
    for (auto &g : prims) {
        out.emplace_back(std::move(g));
    }
    return out;
}

struct RayFactor {
    Ray ray;
    TorusSeries factor;
};

/// Factorization into ray factors in clockwise order; trivial factors are omitted.
///
/// Each factor is the projection of the current residual to its ray; the residual is then
/// divided on the left. A residual different from 1 at the end is an internal error.
inline std::vector<RayFactor> hn_peel(const TorusSeries &f, const CentralCharge &z)
{
    if (z.rank() != f.rank()) {
        throw Error("hn_peel: central charge rank mismatch");
    }
    if (!is_generic(z, f.quiver(), f.truncation())) {
        throw Error("non-generic central charge");
    }
    if (!f.coeff(DimVector(f.rank())).is_one()) {
        throw Error("hn_peel: constant term must be 1");
    }
    std::vector<RayFactor> out;
    TorusSeries residual = f;
    for (const auto &l : rays_clockwise(z, f.quiver(), f.truncation())) {
        TorusSeries a = ray_project(residual, l);
        if (a.is_one()) {
            continue;
        }
        residual = torus_mul(torus_inverse(a), residual);
        out.push_back({l, std::move(a)});
    }
    if (!residual.is_one()) {
        throw InternalError("hn_peel: residual is not 1 after peeling every ray");
    }
    return out;
}

/// Ordered product of the factors, left to right.
inline TorusSeries clockwise_product(const std::vector<RayFactor> &factors, const TorusSeries &unit)
{
    TorusSeries r = unit;
    for (const auto &rf : factors) {
        r = torus_mul(r, rf.factor);
    }
    return r;
}

} // namespace coha
