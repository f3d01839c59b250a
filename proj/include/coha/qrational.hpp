#pragma once

// The coefficient ring Q[q^{±1/2}, (1-q^k)^{-1}]: a Laurent numerator in v = q^{1/2}
// over a multiset of cyclotomic-type factors (1 - q^k).

#include <coha/laurent.hpp>

#include <map>
#include <optional>
#include <ostream>
#include <vector>

namespace coha
{

class QRational
{
public:
    /// k -> multiplicity of the factor (1 - q^k).
    using den_type = std::map<long, long>;

    QRational() = default;
    QRational(const LaurentQ &num) : num_(num) {} // NOLINT(google-explicit-constructor)
    QRational(const Rational &c) : num_(c) {}     // NOLINT(google-explicit-constructor)
    QRational(long c) : num_(c) {}                // NOLINT(google-explicit-constructor)
    QRational(LaurentQ num, den_type den) : num_(std::move(num)), den_(std::move(den))
    {
        for (auto it = den_.begin(); it != den_.end();) {
            if (it->first <= 0 || it->second < 0) {
                throw Error("QRational: denominator factors must be (1-q^k) with k > 0");
            }
            it = it->second == 0 ? den_.erase(it) : std::next(it);
        }
        reduce();
    }

    /// 1 / prod_{k=1}^{n} (1 - q^k).
    static QRational inverse_q_factorial(long n)
    {
        den_type d;
        for (long k = 1; k <= n; ++k) {
            ++d[k];
        }
        return QRational(LaurentQ(1), std::move(d));
    }

    const LaurentQ &num() const
    {
        return num_;
    }
    const den_type &den() const
    {
        return den_;
    }
    bool is_zero() const
    {
        return num_.is_zero();
    }
    bool is_one() const
    {
        return den_.empty() && num_.is_one();
    }

    /// Multiplies the denominator by (1 - q^k).
    QRational inv_den(long k) const
    {
        den_type d = den_;
        ++d[k];
        return QRational(num_, std::move(d));
    }

    friend QRational operator*(const QRational &a, const QRational &b)
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        den_type d = a.den_;
        for (const auto &[k, m] : b.den_) {
            d[k] += m;
        }
        return QRational(a.num_ * b.num_, std::move(d));
    }
    friend QRational operator+(const QRational &a, const QRational &b)
    {
        if (a.is_zero()) {
            return b;
        }
        if (b.is_zero()) {
            return a;
        }
        // Common denominator: pointwise maximum of multiplicities.
        den_type d = a.den_;
        for (const auto &[k, m] : b.den_) {
            auto &slot = d[k];
            slot = std::max(slot, m);
        }
        LaurentQ n = a.num_ * complement(d, a.den_) + b.num_ * complement(d, b.den_);
        return QRational(std::move(n), std::move(d));
    }
    friend QRational operator-(const QRational &a)
    {
        QRational r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend QRational operator-(const QRational &a, const QRational &b)
    {
        return a + (-b);
    }
    QRational &operator+=(const QRational &o)
    {
        return *this = *this + o;
    }
    QRational &operator-=(const QRational &o)
    {
        return *this = *this - o;
    }
    QRational &operator*=(const QRational &o)
    {
        return *this = *this * o;
    }

    /// Equality after cross-multiplication, independent of the chosen representative.
    friend bool operator==(const QRational &a, const QRational &b)
    {
        if (a.den_ == b.den_) {
            return a.num_ == b.num_;
        }
        return a.num_ * complement_all(b.den_) == b.num_ * complement_all(a.den_);
    }
    friend bool operator!=(const QRational &a, const QRational &b)
    {
        return !(a == b);
    }

    /// Adams operation psi_n: v -> v^n, (1-q^k) -> (1-q^{nk}).
    QRational adams(long n) const
    {
        if (n < 1) {
            throw Error("adams: order must be positive");
        }
        den_type d;
        for (const auto &[k, m] : den_) {
            d[k * n] += m;
        }
        return QRational(num_.adams(n), std::move(d));
    }

    /// Multiplies by v^k.
    QRational shifted(long k) const
    {
        QRational r = *this;
        r.num_ = r.num_.shifted(k);
        return r;
    }

    QRational pow(unsigned long n) const
    {
        QRational r(1), b = *this;
        while (n) {
            if (n & 1UL) {
                r *= b;
            }
            n >>= 1;
            if (n) {
                b *= b;
            }
        }
        return r;
    }

    /// The Laurent numerator when no denominator survives reduction.
    std::optional<LaurentQ> try_laurent() const
    {
        if (den_.empty()) {
            return num_;
        }
        return std::nullopt;
    }

    /// Serre-polynomial specialization as a truncated series in q^{1/2}: every 1/(1-q^k)
    /// is expanded geometrically and terms up to q^precision above the lowest numerator
    /// term are kept. Laurent inputs are returned unchanged.
    LaurentQ serre_specialize(long precision) const
    {
        if (precision < 0) {
            throw Error("serre_specialize: precision must be non-negative");
        }
        if (den_.empty() || num_.is_zero()) {
            return num_;
        }
        const long cap = num_.min_exp() + 2 * precision;
        LaurentQ acc = num_;
        for (const auto &[k, m] : den_) {
            for (long rep = 0; rep < m; ++rep) {
                // acc /= (1 - v^{2k}) as a power series: s_j = a_j + s_{j-2k}.
                std::map<long, Rational> s;
                for (long j = acc.min_exp(); j <= cap; ++j) {
                    Rational sj = acc.coeff(j);
                    if (auto it = s.find(j - 2 * k); it != s.end()) {
                        sj += it->second;
                    }
                    if (sj != 0) {
                        s.emplace(j, sj);
                    }
                }
                LaurentQ next;
                for (auto &[e, c] : s) {
                    next.add_term(e, c);
                }
                acc = std::move(next);
            }
        }
        return acc;
    }

    friend std::ostream &operator<<(std::ostream &os, const QRational &c)
    {
        os << "[" << c.num_ << "]";
        if (!c.den_.empty()) {
            os << " / ";
            for (const auto &[k, m] : c.den_) {
                os << "(1-q^" << k << ")";
                if (m > 1) {
                    os << "^" << m;
                }
            }
        }
        return os;
    }

private:
    // prod over (target - have) of (1 - q^k)
    static LaurentQ complement(const den_type &target, const den_type &have)
    {
        LaurentQ r(1);
        for (const auto &[k, m] : target) {
            long h = 0;
            if (auto it = have.find(k); it != have.end()) {
                h = it->second;
            }
            for (long i = h; i < m; ++i) {
                r *= LaurentQ::one_minus_q_pow(k);
            }
        }
        return r;
    }
    static LaurentQ complement_all(const den_type &d)
    {
        return complement(d, {});
    }

    // Greedy exact division of the numerator by each denominator factor until none divides.
    void reduce()
    {
        if (num_.is_zero()) {
            den_.clear();
            return;
        }
        bool progress = true;
        while (progress && !den_.empty()) {
            progress = false;
            for (auto it = den_.begin(); it != den_.end();) {
                auto q = num_.divide_one_minus_v_pow(2 * it->first);
                if (q) {
                    num_ = std::move(*q);
                    progress = true;
                    if (--it->second == 0) {
                        it = den_.erase(it);
                        continue;
                    }
                    continue;
                }
                ++it;
            }
        }
    }

    LaurentQ num_;
    den_type den_;
};

inline std::optional<LaurentQ> try_laurent(const QRational &c)
{
    return c.try_laurent();
}

/// Euler characteristic: evaluation at q^{1/2} = 1.
inline Rational euler_evaluate(const LaurentQ &c)
{
    return c.evaluate_at_one();
}

inline QRational adams(const QRational &c, long n)
{
    return c.adams(n);
}

} // namespace coha
