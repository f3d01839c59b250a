#pragma once

// Multivariate integer polynomials in a fixed number of variables, with exact division.

#include <coha/rational.hpp>

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <unordered_map>
#include <vector>

namespace coha
{

inline constexpr std::size_t max_variables = 32;

/// Exponent vector packed into bytes; exponents are limited to 255.
struct Monomial {
    std::array<std::uint8_t, max_variables> e{};

    std::uint8_t operator[](std::size_t i) const
    {
        return e[i];
    }
    std::uint8_t &operator[](std::size_t i)
    {
        return e[i];
    }
    long degree() const
    {
        long s = 0;
        for (auto x : e) {
            s += x;
        }
        return s;
    }
    friend bool operator==(const Monomial &, const Monomial &) = default;

    static Monomial from(const std::vector<int> &exps)
    {
        if (exps.size() > max_variables) {
            throw Error("too many variables (limit " + std::to_string(max_variables) + ")");
        }
        Monomial m;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] < 0 || exps[i] > 255) {
                throw Error("exponent out of range [0, 255]");
            }
            m.e[i] = static_cast<std::uint8_t>(exps[i]);
        }
        return m;
    }
    std::vector<int> to_vector(std::size_t nvars) const
    {
        return std::vector<int>(e.begin(), e.begin() + static_cast<long>(nvars));
    }
};

struct MonomialHash {
    std::size_t operator()(const Monomial &m) const noexcept
    {
        std::uint64_t w[max_variables / 8];
        std::memcpy(w, m.e.data(), sizeof(w));
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (auto x : w) {
            h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdULL;
        }
        return static_cast<std::size_t>(h ^ (h >> 33));
    }
};

inline Monomial mono_mul(const Monomial &a, const Monomial &b)
{
    Monomial r;
    for (std::size_t i = 0; i < max_variables; ++i) {
        const unsigned s = unsigned(a.e[i]) + unsigned(b.e[i]);
        if (s > 255) {
            throw Error("exponent overflow (limit 255)");
        }
        r.e[i] = static_cast<std::uint8_t>(s);
    }
    return r;
}

/// Graded lexicographic order: total degree first, then lexicographic on (x_1, x_2, ...).
inline bool grlex_less(const Monomial &a, const Monomial &b)
{
    const long da = a.degree(), db = b.degree();
    if (da != db) {
        return da < db;
    }
    return a.e < b.e;
}

class Polynomial
{
public:
    using map_type = std::unordered_map<Monomial, Integer, MonomialHash>;

    Polynomial() = default;
    explicit Polynomial(std::size_t nvars) : nvars_(nvars)
    {
        if (nvars > max_variables) {
            throw Error("too many variables (limit " + std::to_string(max_variables) + ")");
        }
    }
    static Polynomial constant(std::size_t nvars, const Integer &c)
    {
        Polynomial p(nvars);
        p.add_term(Monomial{}, c);
        return p;
    }
    static Polynomial variable(std::size_t nvars, std::size_t i)
    {
        Polynomial p(nvars);
        Monomial m;
        m[i] = 1;
        p.add_term(m, 1);
        return p;
    }
    /// x_u - x_v
    static Polynomial difference(std::size_t nvars, std::size_t u, std::size_t v)
    {
        Polynomial p(nvars);
        Monomial mu, mv;
        mu[u] = 1;
        mv[v] = 1;
        p.add_term(mu, 1);
        p.add_term(mv, -1);
        return p;
    }

    std::size_t nvars() const
    {
        return nvars_;
    }
    const map_type &terms() const
    {
        return terms_;
    }
    bool is_zero() const
    {
        return terms_.empty();
    }
    std::size_t size() const
    {
        return terms_.size();
    }
    Integer coeff(const Monomial &m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? Integer(0) : it->second;
    }

    void add_term(const Monomial &m, const Integer &c)
    {
        if (c == 0) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    Polynomial &operator+=(const Polynomial &o)
    {
        check(o);
        for (const auto &[m, c] : o.terms_) {
            add_term(m, c);
        }
        return *this;
    }
    Polynomial &operator-=(const Polynomial &o)
    {
        check(o);
        for (const auto &[m, c] : o.terms_) {
            add_term(m, -c);
        }
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial &b)
    {
        return a += b;
    }
    friend Polynomial operator-(Polynomial a, const Polynomial &b)
    {
        return a -= b;
    }
    friend Polynomial operator-(Polynomial a)
    {
        for (auto &t : a.terms_) {
            t.second = -t.second;
        }
        return a;
    }
    Polynomial &operator*=(const Integer &c)
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
    friend Polynomial operator*(const Polynomial &a, const Polynomial &b)
    {
        a.check(b);
        Polynomial r(a.nvars_);
        r.terms_.reserve(a.terms_.size() * b.terms_.size());
        Integer t;
        for (const auto &[ma, ca] : a.terms_) {
            for (const auto &[mb, cb] : b.terms_) {
                t = ca * cb;
                r.add_term(mono_mul(ma, mb), t);
            }
        }
        return r;
    }
    Polynomial &operator*=(const Polynomial &o)
    {
        return *this = *this * o;
    }

    /// Multiplies in place by (x_u - x_v)^k.
    void mul_difference(std::size_t u, std::size_t v, long k = 1)
    {
        for (long r = 0; r < k; ++r) {
            Polynomial next(nvars_);
            next.terms_.reserve(terms_.size() * 2);
            for (const auto &[m, c] : terms_) {
                Monomial a = m, b = m;
                if (a[u] == 255 || b[v] == 255) {
                    throw Error("exponent overflow (limit 255)");
                }
                ++a[u];
                ++b[v];
                next.add_term(a, c);
                next.add_term(b, -c);
            }
            *this = std::move(next);
        }
    }

    long total_degree() const
    {
        long d = -1;
        for (const auto &t : terms_) {
            d = std::max(d, t.first.degree());
        }
        return d;
    }

    /// Terms sorted by decreasing grlex order.
    std::vector<std::pair<Monomial, Integer>> sorted_terms() const
    {
        std::vector<std::pair<Monomial, Integer>> v(terms_.begin(), terms_.end());
        std::sort(v.begin(), v.end(), [](const auto &x, const auto &y) { return grlex_less(y.first, x.first); });
        return v;
    }

    /// Renames x_i -> x_{target[i]} inside a ring with new_nvars variables.
    Polynomial relabeled(std::size_t new_nvars, const std::vector<std::size_t> &target) const
    {
        if (target.size() != nvars_) {
            throw Error("relabeled: target map has the wrong length");
        }
        Polynomial r(new_nvars);
        for (const auto &[m, c] : terms_) {
            Monomial p;
            for (std::size_t i = 0; i < nvars_; ++i) {
                if (m[i] != 0) {
                    const unsigned s = unsigned(p[target[i]]) + m[i];
                    if (s > 255) {
                        throw Error("exponent overflow (limit 255)");
                    }
                    p[target[i]] = static_cast<std::uint8_t>(s);
                }
            }
            r.add_term(p, c);
        }
        return r;
    }

    /// Exact quotient self / d, or nullopt when d does not divide self.
    std::optional<Polynomial> exact_divide(const Polynomial &d) const
    {
        check(d);
        if (d.is_zero()) {
            throw Error("division by the zero polynomial");
        }
        auto cmp = [](const Monomial &a, const Monomial &b) { return grlex_less(b, a); };
        std::map<Monomial, Integer, decltype(cmp)> rem(cmp);
        for (const auto &[m, c] : terms_) {
            rem.emplace(m, c);
        }
        const auto dterms = d.sorted_terms();
        const Monomial &lm = dterms.front().first;
        const Integer &lc = dterms.front().second;
        Polynomial quo(nvars_);
        Integer qc;
        while (!rem.empty()) {
            auto it = rem.begin();
            Monomial qm;
            for (std::size_t i = 0; i < nvars_; ++i) {
                if (it->first[i] < lm[i]) {
                    return std::nullopt;
                }
                qm[i] = static_cast<std::uint8_t>(it->first[i] - lm[i]);
            }
            if (!mpz_divisible_p(it->second.get_mpz_t(), lc.get_mpz_t())) {
                return std::nullopt;
            }
            mpz_divexact(qc.get_mpz_t(), it->second.get_mpz_t(), lc.get_mpz_t());
            quo.add_term(qm, qc);
            for (const auto &[dm, dc] : dterms) {
                const Monomial pm = mono_mul(qm, dm);
                auto [slot, inserted] = rem.try_emplace(pm, 0);
                slot->second -= qc * dc;
                if (slot->second == 0) {
                    rem.erase(slot);
                }
            }
        }
        return quo;
    }

    friend bool operator==(const Polynomial &a, const Polynomial &b)
    {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    friend std::ostream &operator<<(std::ostream &os, const Polynomial &p)
    {
        if (p.is_zero()) {
            return os << "0";
        }
        bool first = true;
        for (const auto &[m, c] : p.sorted_terms()) {
            os << (first ? "" : " + ") << c.get_str();
            first = false;
            for (std::size_t i = 0; i < p.nvars_; ++i) {
                if (m[i]) {
                    os << "*x" << (i + 1);
                    if (m[i] > 1) {
                        os << "^" << int(m[i]);
                    }
                }
            }
        }
        return os;
    }

private:
    void check(const Polynomial &o) const
    {
        if (o.nvars_ != nvars_) {
            throw Error("polynomials in different numbers of variables");
        }
    }

    std::size_t nvars_ = 0;
    map_type terms_;
};

} // namespace coha
