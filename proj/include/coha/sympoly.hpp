#pragma once

// Polynomials in variables x_{i,a} (vertex i, 1 <= a <= gamma^i) invariant under the
// product of symmetric groups permuting the a-index at each vertex.

#include <coha/dim_vector.hpp>
#include <coha/polynomial.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <ostream>
#include <vector>

namespace coha
{

/// Symmetric polynomial stored by orbit representatives.
///
/// Variables are flattened by vertex, then by index. A key is an exponent vector whose
/// block at each vertex is sorted decreasingly; its value is the coefficient of every
/// monomial in that orbit.
class SymPoly
{
public:
    using key_type = std::vector<int>;
    using map_type = std::map<key_type, Integer>;

    SymPoly() = default;
    explicit SymPoly(DimVector gamma) : gamma_(std::move(gamma))
    {
        if (!gamma_.is_effective()) {
            throw Error("SymPoly: dimension vector must be effective");
        }
        if (gamma_.total() > static_cast<long>(max_variables)) {
            throw Error("SymPoly: too many variables");
        }
    }
    static SymPoly constant(DimVector gamma, const Integer &c)
    {
        SymPoly p(std::move(gamma));
        p.add_term(key_type(p.nvars(), 0), c);
        return p;
    }
    /// The orbit sum of a single monomial.
    static SymPoly monomial_symmetric(const DimVector &gamma, key_type exps)
    {
        SymPoly p(gamma);
        p.add_term(std::move(exps), 1);
        return p;
    }

    const DimVector &gamma() const
    {
        return gamma_;
    }
    std::size_t nvars() const
    {
        return static_cast<std::size_t>(gamma_.total());
    }
    const map_type &terms() const
    {
        return terms_;
    }
    bool is_zero() const
    {
        return terms_.empty();
    }

    std::size_t offset(std::size_t vertex) const
    {
        std::size_t s = 0;
        for (std::size_t j = 0; j < vertex; ++j) {
            s += static_cast<std::size_t>(gamma_[j]);
        }
        return s;
    }

    /// Sorts every vertex block decreasingly.
    key_type canonical(key_type exps) const
    {
        if (exps.size() != nvars()) {
            throw Error("SymPoly: exponent vector has " + std::to_string(exps.size()) + " entries, expected "
                        + std::to_string(nvars()));
        }
        std::size_t off = 0;
        for (std::size_t i = 0; i < gamma_.rank(); ++i) {
            auto b = exps.begin() + static_cast<long>(off);
            off += static_cast<std::size_t>(gamma_[i]);
            std::sort(b, exps.begin() + static_cast<long>(off), std::greater<>());
        }
        for (int e : exps) {
            if (e < 0) {
                throw Error("SymPoly: negative exponent");
            }
        }
        return exps;
    }
    bool is_canonical(const key_type &exps) const
    {
        return exps.size() == nvars() && canonical(exps) == exps;
    }

    /// Adds c times the orbit sum of exps.
    void add_term(key_type exps, const Integer &c)
    {
        if (c == 0) {
            return;
        }
        auto key = canonical(std::move(exps));
        auto [it, inserted] = terms_.try_emplace(std::move(key), c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }
    Integer coeff(const key_type &exps) const
    {
        auto it = terms_.find(canonical(exps));
        return it == terms_.end() ? Integer(0) : it->second;
    }

    /// Number of distinct monomials in the orbit of a canonical key.
    Integer orbit_size(const key_type &key) const
    {
        Integer r = 1;
        std::size_t off = 0;
        for (std::size_t i = 0; i < gamma_.rank(); ++i) {
            const auto n = static_cast<unsigned long>(gamma_[i]);
            Integer block = factorial(n);
            std::size_t a = off;
            while (a < off + n) {
                std::size_t b = a;
                while (b < off + n && key[b] == key[a]) {
                    ++b;
                }
                block /= factorial(b - a);
                a = b;
            }
            r *= block;
            off += n;
        }
        return r;
    }

    /// Total degree; -1 for the zero polynomial.
    long degree() const
    {
        long d = -1;
        for (const auto &t : terms_) {
            long s = 0;
            for (int e : t.first) {
                s += e;
            }
            d = std::max(d, s);
        }
        return d;
    }
    bool is_homogeneous() const
    {
        long d = -2;
        for (const auto &t : terms_) {
            long s = 0;
            for (int e : t.first) {
                s += e;
            }
            if (d != -2 && s != d) {
                return false;
            }
            d = s;
        }
        return true;
    }

    /// Full expansion into monomials.
    Polynomial to_polynomial() const
    {
        Polynomial p(nvars());
        for (const auto &[key, c] : terms_) {
            for_each_orbit_element(key, [&](const key_type &e) { p.add_term(Monomial::from(e), c); });
        }
        return p;
    }

    /// Reads off orbit representatives of a polynomial; throws unless p is invariant.
    static SymPoly from_polynomial(const DimVector &gamma, const Polynomial &p)
    {
        SymPoly s(gamma);
        if (p.nvars() != s.nvars()) {
            throw Error("SymPoly: variable count does not match dimension vector");
        }
        for (const auto &[m, c] : p.terms()) {
            auto e = m.to_vector(s.nvars());
            if (s.canonical(e) == e) {
                s.terms_.emplace(std::move(e), c);
            }
        }
        if (!(s.to_polynomial() == p)) {
            throw Error("polynomial is not invariant under the symmetric groups of the vertices");
        }
        return s;
    }

    /// Calls fn on every distinct exponent vector in the orbit of a canonical key.
    template <class Fn>
    void for_each_orbit_element(const key_type &key, Fn &&fn) const
    {
        key_type cur = key;
        std::vector<std::size_t> offs;
        for (std::size_t i = 0; i <= gamma_.rank(); ++i) {
            offs.push_back(offset(i));
        }
        // Blocks start sorted decreasingly; enumerate with prev_permutation per block.
        auto rec = [&](auto &&self, std::size_t i) -> void {
            if (i == gamma_.rank()) {
                fn(cur);
                return;
            }
            auto b = cur.begin() + static_cast<long>(offs[i]);
            auto e = cur.begin() + static_cast<long>(offs[i + 1]);
            std::sort(b, e, std::greater<>());
            do {
                self(self, i + 1);
            } while (std::prev_permutation(b, e));
            std::sort(b, e, std::greater<>());
        };
        rec(rec, 0);
    }

    SymPoly &operator+=(const SymPoly &o)
    {
        check(o);
        for (const auto &[k, c] : o.terms_) {
            add_term(k, c);
        }
        return *this;
    }
    SymPoly &operator-=(const SymPoly &o)
    {
        check(o);
        for (const auto &[k, c] : o.terms_) {
            add_term(k, -c);
        }
        return *this;
    }
    SymPoly &operator*=(const Integer &c)
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
    friend SymPoly operator+(SymPoly a, const SymPoly &b)
    {
        return a += b;
    }
    friend SymPoly operator-(SymPoly a, const SymPoly &b)
    {
        return a -= b;
    }
    friend SymPoly operator-(SymPoly a)
    {
        return a *= Integer(-1);
    }
    friend SymPoly operator*(SymPoly a, const Integer &c)
    {
        return a *= c;
    }

    friend bool operator==(const SymPoly &a, const SymPoly &b)
    {
        return a.gamma_ == b.gamma_ && a.terms_ == b.terms_;
    }

    friend std::ostream &operator<<(std::ostream &os, const SymPoly &p)
    {
        os << "SymPoly" << p.gamma_ << "{";
        bool first = true;
        for (const auto &[k, c] : p.terms_) {
            os << (first ? "" : ", ") << c.get_str() << "*m[";
            for (std::size_t i = 0; i < k.size(); ++i) {
                os << (i ? "," : "") << k[i];
            }
            os << "]";
            first = false;
        }
        return os << "}";
    }

private:
    void check(const SymPoly &o) const
    {
        if (o.gamma_ != gamma_) {
            throw Error("SymPoly: dimension vectors differ");
        }
    }

    DimVector gamma_;
    map_type terms_;
};

} // namespace coha
