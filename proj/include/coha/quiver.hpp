#pragma once

// Quivers, potentials and central charges; bilinear forms, slope order and mutation.

#include <coha/dim_vector.hpp>
#include <coha/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace coha
{

struct Arrow {
    std::string name;
    std::string tail;
    std::string head;

    friend bool operator==(const Arrow &, const Arrow &) = default;
};

/// Finite quiver with named vertices and named arrows.
///
/// arrow_count(i, j) is the number of arrows from vertex position i to position j.
class Quiver
{
public:
    Quiver() = default;
    Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
        : vertices_(std::move(vertices)), arrows_(std::move(arrows))
    {
        std::set<std::string> seen;
        for (const auto &v : vertices_) {
            if (!seen.insert(v).second) {
                throw Error("duplicate vertex label '" + v + "'");
            }
        }
        a_.assign(vertices_.size(), std::vector<long>(vertices_.size(), 0));
        std::set<std::string> names;
        for (const auto &ar : arrows_) {
            if (!names.insert(ar.name).second) {
                throw Error("duplicate arrow name '" + ar.name + "'");
            }
            ++a_[index_of(ar.tail)][index_of(ar.head)];
        }
    }

    /// One vertex "1" with d loops named l1..ld.
    static Quiver loops(long d)
    {
        std::vector<Arrow> arrows;
        for (long k = 1; k <= d; ++k) {
            arrows.push_back({"l" + std::to_string(k), "1", "1"});
        }
        return Quiver({"1"}, std::move(arrows));
    }
    /// Builds a quiver on vertices "1".."n" from an arrow-count matrix; arrows are named
    /// "a<i><j>" with a numeric suffix when there are several.
    static Quiver from_matrix(const std::vector<std::vector<long>> &a)
    {
        const std::size_t n = a.size();
        std::vector<std::string> vs;
        for (std::size_t i = 0; i < n; ++i) {
            vs.push_back(std::to_string(i + 1));
        }
        std::vector<Arrow> arrows;
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i].size() != n) {
                throw Error("arrow-count matrix must be square");
            }
            for (std::size_t j = 0; j < n; ++j) {
                if (a[i][j] < 0) {
                    throw Error("arrow counts must be non-negative");
                }
                for (long k = 0; k < a[i][j]; ++k) {
                    std::string name = "a" + vs[i] + vs[j];
                    if (a[i][j] > 1) {
                        name += "_" + std::to_string(k + 1);
                    }
                    arrows.push_back({name, vs[i], vs[j]});
                }
            }
        }
        return Quiver(std::move(vs), std::move(arrows));
    }

    std::size_t rank() const
    {
        return vertices_.size();
    }
    const std::vector<std::string> &vertices() const
    {
        return vertices_;
    }
    const std::vector<Arrow> &arrows() const
    {
        return arrows_;
    }
    const std::vector<std::vector<long>> &matrix() const
    {
        return a_;
    }
    long arrow_count(std::size_t i, std::size_t j) const
    {
        return a_.at(i).at(j);
    }

    std::size_t index_of(const std::string &label) const
    {
        auto it = std::find(vertices_.begin(), vertices_.end(), label);
        if (it == vertices_.end()) {
            throw Error("unknown vertex label '" + label + "'");
        }
        return static_cast<std::size_t>(it - vertices_.begin());
    }
    const Arrow &arrow(const std::string &name) const
    {
        for (const auto &ar : arrows_) {
            if (ar.name == name) {
                return ar;
            }
        }
        throw Error("unknown arrow '" + name + "'");
    }
    bool has_arrow(const std::string &name) const
    {
        return std::any_of(arrows_.begin(), arrows_.end(), [&](const Arrow &a) { return a.name == name; });
    }

    bool is_symmetric() const
    {
        for (std::size_t i = 0; i < rank(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if (a_[i][j] != a_[j][i]) {
                    return false;
                }
            }
        }
        return true;
    }
    bool is_acyclic() const
    {
        // Kahn's algorithm; loops count as cycles.
        std::vector<long> indeg(rank(), 0);
        for (std::size_t i = 0; i < rank(); ++i) {
            for (std::size_t j = 0; j < rank(); ++j) {
                if (a_[i][j] > 0) {
                    if (i == j) {
                        return false;
                    }
                    ++indeg[j];
                }
            }
        }
        std::vector<std::size_t> stack;
        for (std::size_t i = 0; i < rank(); ++i) {
            if (indeg[i] == 0) {
                stack.push_back(i);
            }
        }
        std::size_t visited = 0;
        while (!stack.empty()) {
            auto i = stack.back();
            stack.pop_back();
            ++visited;
            for (std::size_t j = 0; j < rank(); ++j) {
                if (a_[i][j] > 0 && --indeg[j] == 0) {
                    stack.push_back(j);
                }
            }
        }
        return visited == rank();
    }
    bool is_sink(std::size_t i) const
    {
        for (std::size_t j = 0; j < rank(); ++j) {
            if (a_[i][j] > 0) {
                return false;
            }
        }
        return true;
    }
    bool is_source(std::size_t i) const
    {
        for (std::size_t j = 0; j < rank(); ++j) {
            if (a_[j][i] > 0) {
                return false;
            }
        }
        return true;
    }

    void check_vector(const DimVector &g) const
    {
        if (g.rank() != rank()) {
            throw Error("dimension vector has " + std::to_string(g.rank()) + " entries, quiver has "
                        + std::to_string(rank()) + " vertices");
        }
    }

    /// Dimension vector from a label -> value map; missing labels are zero.
    DimVector vector_from(const std::map<std::string, long> &entries) const
    {
        DimVector d(rank());
        for (const auto &[label, value] : entries) {
            d[index_of(label)] = value;
        }
        return d;
    }

    friend bool operator==(const Quiver &a, const Quiver &b)
    {
        return a.vertices_ == b.vertices_ && a.arrows_ == b.arrows_;
    }

private:
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
    std::vector<std::vector<long>> a_;
};

/// Euler form chi(g1, g2) = sum_i g1^i g2^i - sum_{i,j} a_ij g1^i g2^j.
///
/// This is hom - ext^1 between representations of dimension g1 and g2, the form whose
/// skew part twists the quantum torus and matches the shuffle kernel.
inline long euler_form(const Quiver &q, const DimVector &g1, const DimVector &g2)
{
    q.check_vector(g1);
    q.check_vector(g2);
    long s = dot(g1, g2);
    for (std::size_t i = 0; i < q.rank(); ++i) {
        for (std::size_t j = 0; j < q.rank(); ++j) {
            s -= q.arrow_count(i, j) * g1[i] * g2[j];
        }
    }
    return s;
}

/// <g1, g2> = chi(g1, g2) - chi(g2, g1).
inline long skew_form(const Quiver &q, const DimVector &g1, const DimVector &g2)
{
    return euler_form(q, g1, g2) - euler_form(q, g2, g1);
}

/// Parity chi(g, g) mod 2; defined for symmetric quivers only.
inline int epsilon(const Quiver &q, const DimVector &g)
{
    if (!q.is_symmetric()) {
        throw Error("epsilon: quiver is not symmetric");
    }
    long c = euler_form(q, g, g);
    return static_cast<int>(((c % 2) + 2) % 2);
}

/// Values of a central charge on the standard basis, as exact rational points of the
/// open upper half plane.
class CentralCharge
{
public:
    struct Point {
        Rational re;
        Rational im;
    };

    CentralCharge() = default;
    explicit CentralCharge(std::vector<Point> z) : z_(std::move(z))
    {
        for (const auto &p : z_) {
            if (p.im <= 0) {
                throw Error("central charge values must have positive imaginary part");
            }
        }
    }

    std::size_t rank() const
    {
        return z_.size();
    }
    const std::vector<Point> &values() const
    {
        return z_;
    }

    Point operator()(const DimVector &g) const
    {
        if (g.rank() != z_.size()) {
            throw Error("central charge rank mismatch");
        }
        Point p{0, 0};
        for (std::size_t i = 0; i < z_.size(); ++i) {
            p.re += z_[i].re * g[i];
            p.im += z_[i].im * g[i];
        }
        return p;
    }

    /// Sign of Z(g1) x Z(g2): positive iff Arg Z(g1) < Arg Z(g2).
    int orientation(const DimVector &g1, const DimVector &g2) const
    {
        auto a = (*this)(g1);
        auto b = (*this)(g2);
        Rational cross = a.re * b.im - a.im * b.re;
        return sgn(cross);
    }

private:
    std::vector<Point> z_;
};

/// Arg Z(g1) < Arg Z(g2), decided by an exact cross product.
inline bool slope_less(const CentralCharge &z, const DimVector &g1, const DimVector &g2)
{
    if (g1.is_zero() || g2.is_zero()) {
        throw Error("slope_less: zero dimension vector");
    }
    if (!g1.is_effective() || !g2.is_effective()) {
        throw Error("slope_less: dimension vectors must be effective");
    }
    return z.orientation(g1, g2) > 0;
}

/// No two linearly independent effective vectors with |g| <= n share a ray.
inline bool is_generic(const CentralCharge &z, const Quiver &q, long n)
{
    if (z.rank() != q.rank()) {
        throw Error("central charge rank mismatch");
    }
    if (q.rank() <= 1) {
        return true;
    }
    std::vector<DimVector> prims;
    for (auto &g : effective_vectors(q.rank(), 1, n)) {
        if (g.is_primitive()) {
            prims.push_back(g);
        }
    }
    for (std::size_t a = 0; a < prims.size(); ++a) {
        for (std::size_t b = a + 1; b < prims.size(); ++b) {
            if (z.orientation(prims[a], prims[b]) == 0) {
                return false;
            }
        }
    }
    return true;
}

/// A cycle in the path algebra: either the length-0 cycle at a vertex or a cyclically
/// composable sequence of arrow names (path order: the head of each arrow is the tail of
/// the next). Stored in canonical rotation.
struct CyclicWord {
    std::string vertex;              // non-empty iff length 0
    std::vector<std::string> arrows; // empty iff length 0

    static CyclicWord at_vertex(std::string v)
    {
        return CyclicWord{std::move(v), {}};
    }
    static CyclicWord of(std::vector<std::string> arrows)
    {
        if (arrows.empty()) {
            throw Error("a cycle of positive length needs at least one arrow");
        }
        // Least lexicographic rotation.
        std::vector<std::string> best = arrows;
        for (std::size_t r = 1; r < arrows.size(); ++r) {
            std::vector<std::string> rot(arrows.begin() + static_cast<long>(r), arrows.end());
            rot.insert(rot.end(), arrows.begin(), arrows.begin() + static_cast<long>(r));
            if (rot < best) {
                best = std::move(rot);
            }
        }
        return CyclicWord{{}, std::move(best)};
    }

    bool is_trivial() const
    {
        return arrows.empty();
    }

    friend bool operator==(const CyclicWord &, const CyclicWord &) = default;
    friend bool operator<(const CyclicWord &a, const CyclicWord &b)
    {
        return std::tie(a.arrows, a.vertex) < std::tie(b.arrows, b.vertex);
    }
};

/// Finite rational linear combination of cycles, merged by canonical rotation.
class Potential
{
public:
    Potential() = default;

    void add(const CyclicWord &w, const Rational &c)
    {
        if (c == 0) {
            return;
        }
        auto [it, inserted] = terms_.emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }
    const std::map<CyclicWord, Rational> &terms() const
    {
        return terms_;
    }
    bool is_zero() const
    {
        return terms_.empty();
    }
    Rational coeff(const CyclicWord &w) const
    {
        auto it = terms_.find(w);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Throws unless every cycle is composable in q.
    void validate(const Quiver &q) const
    {
        for (const auto &[w, c] : terms_) {
            check_cycle(q, w);
        }
    }
    static void check_cycle(const Quiver &q, const CyclicWord &w)
    {
        if (w.is_trivial()) {
            q.index_of(w.vertex);
            return;
        }
        for (std::size_t k = 0; k < w.arrows.size(); ++k) {
            const Arrow &cur = q.arrow(w.arrows[k]);
            const Arrow &next = q.arrow(w.arrows[(k + 1) % w.arrows.size()]);
            if (cur.head != next.tail) {
                throw Error("cycle is not composable: arrow '" + cur.name + "' ends at '" + cur.head
                            + "' but '" + next.name + "' starts at '" + next.tail + "'");
            }
        }
    }

    friend bool operator==(const Potential &, const Potential &) = default;

private:
    std::map<CyclicWord, Rational> terms_;
};

namespace detail
{

inline std::string composite_name(const std::string &beta, const std::string &alpha)
{
    return "[" + beta + "∘" + alpha + "]";
}
inline std::string reversed_name(const std::string &alpha)
{
    return alpha + "*";
}

inline std::size_t checked_mutation_vertex(const Quiver &q, const std::string &i0)
{
    const auto k = q.index_of(i0);
    if (q.arrow_count(k, k) != 0) {
        throw Error("cannot mutate at vertex '" + i0 + "': it carries a loop");
    }
    return k;
}

} // namespace detail

/// Mutation at a loop-free vertex: arrows at i0 are reversed (renamed "a*") and every
/// two-arrow path j1 -a-> i0 -b-> j2 gets a composite arrow "[b∘a]" from j1 to j2.
inline Quiver mutate_quiver(const Quiver &q, const std::string &i0)
{
    detail::checked_mutation_vertex(q, i0);
    std::vector<Arrow> out;
    std::vector<const Arrow *> incoming, outgoing;
    for (const auto &ar : q.arrows()) {
        if (ar.head == i0) {
            incoming.push_back(&ar);
        }
        if (ar.tail == i0) {
            outgoing.push_back(&ar);
        }
        if (ar.head == i0 || ar.tail == i0) {
            out.push_back({detail::reversed_name(ar.name), ar.head, ar.tail});
        } else {
            out.push_back(ar);
        }
    }
    for (const Arrow *alpha : incoming) {
        for (const Arrow *beta : outgoing) {
            out.push_back({detail::composite_name(beta->name, alpha->name), alpha->tail, beta->head});
        }
    }
    return Quiver(q.vertices(), std::move(out));
}

/// The dimension-vector correspondence for mutation at i0:
/// g'^i = g^i for i != i0 and g'^{i0} = sum_j a_{i0 j} g^j - g^{i0}.
inline DimVector mutated_dim_vector(const Quiver &q, const std::string &i0, const DimVector &g)
{
    const auto k = detail::checked_mutation_vertex(q, i0);
    q.check_vector(g);
    DimVector r = g;
    long s = -g[k];
    for (std::size_t j = 0; j < q.rank(); ++j) {
        s += q.arrow_count(k, j) * g[j];
    }
    if (s < 0) {
        throw Error("mutated dimension vector has a negative entry at '" + i0 + "'");
    }
    r[k] = s;
    return r;
}

/// Mutation of a quiver with potential at i0: W' = W1 + W2 + W3 where W1 collects the
/// cubic terms a*·[b∘a]·b* (path order), W2 replaces every passage a·b through i0 in
/// each cycle by [b∘a], and W3 = c_(i0) (-(i0) + sum_j a_{j i0} (j)).
///
/// No reduction of quadratic terms is attempted.
inline std::pair<Quiver, Potential> mutate_potential(const Quiver &q, const Potential &w, const std::string &i0)
{
    const auto k = detail::checked_mutation_vertex(q, i0);
    w.validate(q);
    Quiver qm = mutate_quiver(q, i0);
    Potential wm;

    // W1
    for (const auto &alpha : q.arrows()) {
        if (alpha.head != i0) {
            continue;
        }
        for (const auto &beta : q.arrows()) {
            if (beta.tail != i0) {
                continue;
            }
            wm.add(CyclicWord::of({detail::reversed_name(alpha.name), detail::composite_name(beta.name, alpha.name),
                                   detail::reversed_name(beta.name)}),
                   1);
        }
    }

    // W2 and W3
    for (const auto &[cycle, c] : w.terms()) {
        if (cycle.is_trivial()) {
            if (cycle.vertex == i0) {
                wm.add(CyclicWord::at_vertex(i0), -c);
                for (std::size_t j = 0; j < q.rank(); ++j) {
                    const long mult = q.arrow_count(j, k);
                    if (mult != 0) {
                        wm.add(CyclicWord::at_vertex(q.vertices()[j]), c * mult);
                    }
                }
            } else {
                wm.add(cycle, c);
            }
            continue;
        }
        const auto &word = cycle.arrows;
        const std::size_t len = word.size();
        // Rotate so that the word does not start in the middle of a passage through i0.
        std::size_t start = 0;
        while (start < len && q.arrow(word[start]).tail == i0) {
            ++start;
        }
        if (start == len) {
            throw InternalError("cycle with every arrow leaving i0 cannot close up");
        }
        std::vector<std::string> rotated;
        for (std::size_t t = 0; t < len; ++t) {
            rotated.push_back(word[(start + t) % len]);
        }
        std::vector<std::string> modified;
        for (std::size_t t = 0; t < len; ++t) {
            const Arrow &cur = q.arrow(rotated[t]);
            if (cur.head == i0) {
                const Arrow &next = q.arrow(rotated[(t + 1) % len]);
                modified.push_back(detail::composite_name(next.name, cur.name));
                ++t;
                if (t == len) {
                    throw InternalError("passage through i0 wrapped past the rotation point");
                }
            } else {
                modified.push_back(cur.name);
            }
        }
        CyclicWord mw = CyclicWord::of(std::move(modified));
        Potential::check_cycle(qm, mw);
        wm.add(mw, c);
    }
    wm.validate(qm);
    return {std::move(qm), std::move(wm)};
}

} // namespace coha
