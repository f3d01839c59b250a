#pragma once

#include <coha/rational.hpp>

#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>

namespace coha
{

/// Laurent polynomial in v = q^{1/2} with rational coefficients.
///
/// The key n stands for v^n, i.e. q^{n/2}. Zero coefficients are never stored.
class LaurentQ
{
public:
    using map_type = std::map<long, Rational>;

    LaurentQ() = default;
    LaurentQ(const Rational &c) // NOLINT(google-explicit-constructor)
    {
        if (c != 0) {
            terms_.emplace(0, c);
        }
    }
    LaurentQ(long c) : LaurentQ(Rational(c)) {} // NOLINT(google-explicit-constructor)

    static LaurentQ monomial(long exp, const Rational &c = 1)
    {
        LaurentQ r;
        if (c != 0) {
            r.terms_.emplace(exp, c);
        }
        return r;
    }
    /// (-v)^k, the twist factor of the rescaled quantum torus.
    static LaurentQ minus_v_pow(long k)
    {
        return monomial(k, (k % 2 == 0) ? 1 : -1);
    }
    /// 1 - q^k = 1 - v^{2k}.
    static LaurentQ one_minus_q_pow(long k)
    {
        LaurentQ r(1);
        r.add_term(2 * k, -1);
        return r;
    }

    const map_type &terms() const
    {
        return terms_;
    }
    bool is_zero() const
    {
        return terms_.empty();
    }
    bool is_one() const
    {
        return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1;
    }
    Rational coeff(long exp) const
    {
        auto it = terms_.find(exp);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    long min_exp() const
    {
        return terms_.empty() ? 0 : terms_.begin()->first;
    }
    long max_exp() const
    {
        return terms_.empty() ? 0 : terms_.rbegin()->first;
    }

    void add_term(long exp, const Rational &c)
    {
        if (c == 0) {
            return;
        }
        auto [it, inserted] = terms_.emplace(exp, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    LaurentQ &operator+=(const LaurentQ &o)
    {
        for (const auto &[e, c] : o.terms_) {
            add_term(e, c);
        }
        return *this;
    }
    LaurentQ &operator-=(const LaurentQ &o)
    {
        for (const auto &[e, c] : o.terms_) {
            add_term(e, -c);
        }
        return *this;
    }
    LaurentQ &operator*=(const Rational &c)
    {
        if (c == 0) {
            terms_.clear();
        } else {
            for (auto &t : terms_) {
                t.second *= c;
            }
        }
        return *this;
    }
    friend LaurentQ operator+(LaurentQ a, const LaurentQ &b)
    {
        return a += b;
    }
    friend LaurentQ operator-(LaurentQ a, const LaurentQ &b)
    {
        return a -= b;
    }
    friend LaurentQ operator-(LaurentQ a)
    {
        for (auto &t : a.terms_) {
            t.second = -t.second;
        }
        return a;
    }
    friend LaurentQ operator*(const LaurentQ &a, const LaurentQ &b)
    {
        LaurentQ r;
        for (const auto &[ea, ca] : a.terms_) {
            for (const auto &[eb, cb] : b.terms_) {
                r.add_term(ea + eb, ca * cb);
            }
        }
        return r;
    }
    LaurentQ &operator*=(const LaurentQ &o)
    {
        return *this = *this * o;
    }
    friend LaurentQ operator*(LaurentQ a, const Rational &c)
    {
        return a *= c;
    }
    friend bool operator==(const LaurentQ &a, const LaurentQ &b)
    {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentQ &a, const LaurentQ &b)
    {
        return !(a == b);
    }

    /// Multiplies by v^k.
    LaurentQ shifted(long k) const
    {
        LaurentQ r;
        for (const auto &[e, c] : terms_) {
            r.terms_.emplace_hint(r.terms_.end(), e + k, c);
        }
        return r;
    }

    LaurentQ pow(unsigned long n) const
    {
        LaurentQ r(1), b = *this;
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

    /// Substitutes v -> v^n (Adams operation on a line element).
    LaurentQ adams(long n) const
    {
        LaurentQ r;
        for (const auto &[e, c] : terms_) {
            r.terms_.emplace(e * n, c);
        }
        return r;
    }

    /// Substitutes v -> 1.
    Rational evaluate_at_one() const
    {
        Rational s = 0;
        for (const auto &t : terms_) {
            s += t.second;
        }
        return s;
    }

    /// Exact quotient by (1 - v^m), m > 0, or nullopt when the division leaves a remainder.
    std::optional<LaurentQ> divide_one_minus_v_pow(long m) const
    {
        if (terms_.empty()) {
            return LaurentQ{};
        }
        // p = (1 - v^m) s  <=>  s_j = p_j + s_{j-m}, with s supported on [lo, hi - m].
        const long lo = min_exp(), hi = max_exp();
        if (hi - lo < m) {
            return std::nullopt;
        }
        std::map<long, Rational> s;
        for (long j = lo; j <= hi; ++j) {
            Rational sj = coeff(j);
            if (auto it = s.find(j - m); it != s.end()) {
                sj += it->second;
            }
            if (j > hi - m) {
                if (sj != 0) {
                    return std::nullopt;
                }
            } else if (sj != 0) {
                s.emplace(j, sj);
            }
        }
        LaurentQ r;
        r.terms_ = std::move(s);
        return r;
    }

    bool has_integer_coefficients() const
    {
        for (const auto &t : terms_) {
            if (!is_integer(t.second)) {
                return false;
            }
        }
        return true;
    }

    friend std::ostream &operator<<(std::ostream &os, const LaurentQ &p)
    {
        if (p.terms_.empty()) {
            return os << "0";
        }
        bool first = true;
        for (const auto &[e, c] : p.terms_) {
            if (!first) {
                os << " + ";
            }
            first = false;
            os << "(" << c.get_str() << ")";
            if (e != 0) {
                os << "*v^" << e;
            }
        }
        return os;
    }

    std::string str() const
    {
        std::ostringstream os;
        os << *this;
        return os.str();
    }

private:
    map_type terms_;
};

} // namespace coha
