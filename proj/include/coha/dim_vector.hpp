#pragma once

#include <coha/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <vector>

namespace coha
{

/// Integer vector indexed by the vertex positions of a quiver.
///
/// Dimension vectors are the effective (non-negative) ones; the same type also carries
/// the signed vectors used for f-conjugation and mutation bookkeeping.
class DimVector
{
public:
    DimVector() = default;
    explicit DimVector(std::size_t rank) : v_(rank, 0) {}
    DimVector(std::initializer_list<long> il) : v_(il) {}
    explicit DimVector(std::vector<long> v) : v_(std::move(v)) {}

    static DimVector unit(std::size_t rank, std::size_t i)
    {
        DimVector d(rank);
        d.v_.at(i) = 1;
        return d;
    }

    std::size_t rank() const
    {
        return v_.size();
    }
    long operator[](std::size_t i) const
    {
        return v_[i];
    }
    long &operator[](std::size_t i)
    {
        return v_[i];
    }
    const std::vector<long> &entries() const
    {
        return v_;
    }

    /// |gamma| = sum of entries.
    long total() const
    {
        return std::accumulate(v_.begin(), v_.end(), 0L);
    }
    bool is_zero() const
    {
        for (long x : v_) {
            if (x != 0) {
                return false;
            }
        }
        return true;
    }
    bool is_effective() const
    {
        for (long x : v_) {
            if (x < 0) {
                return false;
            }
        }
        return true;
    }
    long content() const
    {
        long g = 0;
        for (long x : v_) {
            g = std::gcd(g, x < 0 ? -x : x);
        }
        return g;
    }
    bool is_primitive() const
    {
        return content() == 1;
    }
    DimVector primitive() const
    {
        long g = content();
        if (g == 0) {
            throw Error("primitive: zero vector");
        }
        DimVector r = *this;
        for (long &x : r.v_) {
            x /= g;
        }
        return r;
    }

    DimVector &operator+=(const DimVector &o)
    {
        check_rank(o);
        for (std::size_t i = 0; i < v_.size(); ++i) {
            v_[i] += o.v_[i];
        }
        return *this;
    }
    DimVector &operator-=(const DimVector &o)
    {
        check_rank(o);
        for (std::size_t i = 0; i < v_.size(); ++i) {
            v_[i] -= o.v_[i];
        }
        return *this;
    }
    friend DimVector operator+(DimVector a, const DimVector &b)
    {
        return a += b;
    }
    friend DimVector operator-(DimVector a, const DimVector &b)
    {
        return a -= b;
    }
    friend DimVector operator-(DimVector a)
    {
        for (long &x : a.v_) {
            x = -x;
        }
        return a;
    }
    friend DimVector operator*(long k, DimVector a)
    {
        for (long &x : a.v_) {
            x *= k;
        }
        return a;
    }
    friend long dot(const DimVector &a, const DimVector &b)
    {
        a.check_rank(b);
        long s = 0;
        for (std::size_t i = 0; i < a.v_.size(); ++i) {
            s += a.v_[i] * b.v_[i];
        }
        return s;
    }

    /// Componentwise a <= b.
    bool dominated_by(const DimVector &o) const
    {
        check_rank(o);
        for (std::size_t i = 0; i < v_.size(); ++i) {
            if (v_[i] > o.v_[i]) {
                return false;
            }
        }
        return true;
    }

    /// If this is k * base for a positive integer k, returns k; otherwise 0.
    long multiple_of(const DimVector &base) const
    {
        check_rank(base);
        long k = 0;
        for (std::size_t i = 0; i < v_.size(); ++i) {
            if (base.v_[i] == 0) {
                if (v_[i] != 0) {
                    return 0;
                }
                continue;
            }
            if (v_[i] % base.v_[i] != 0) {
                return 0;
            }
            long ki = v_[i] / base.v_[i];
            if (ki <= 0 || (k != 0 && ki != k)) {
                return 0;
            }
            k = ki;
        }
        return k;
    }

    friend bool operator==(const DimVector &a, const DimVector &b)
    {
        return a.v_ == b.v_;
    }
    friend bool operator!=(const DimVector &a, const DimVector &b)
    {
        return a.v_ != b.v_;
    }
    /// Graded order: total first, then lexicographic. Series maps iterate degree by degree.
    friend bool operator<(const DimVector &a, const DimVector &b)
    {
        const long ta = a.total(), tb = b.total();
        if (ta != tb) {
            return ta < tb;
        }
        return a.v_ < b.v_;
    }

    friend std::ostream &operator<<(std::ostream &os, const DimVector &d)
    {
        os << "(";
        for (std::size_t i = 0; i < d.v_.size(); ++i) {
            os << (i ? "," : "") << d.v_[i];
        }
        return os << ")";
    }

private:
    void check_rank(const DimVector &o) const
    {
        if (o.v_.size() != v_.size()) {
            throw Error("dimension vectors of different rank");
        }
    }

    std::vector<long> v_;
};

/// All effective vectors of the given rank with total in [lo, hi], in graded order.
inline std::vector<DimVector> effective_vectors(std::size_t rank, long lo, long hi)
{
    std::vector<DimVector> out;
    if (rank == 0) {
        if (lo <= 0) {
            out.emplace_back(0);
        }
        return out;
    }
    DimVector cur(rank);
    // Enumerate compositions of each total t into `rank` non-negative parts.
    for (long t = std::max(0L, lo); t <= hi; ++t) {
        std::vector<long> parts(rank, 0);
        auto rec = [&](auto &&self, std::size_t i, long remaining) -> void {
            if (i + 1 == rank) {
                parts[i] = remaining;
                out.emplace_back(parts);
                return;
            }
            for (long x = remaining; x >= 0; --x) {
                parts[i] = x;
                self(self, i + 1, remaining - x);
            }
        };
        rec(rec, 0, t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace coha
