#pragma once

// JSON documents for q-coefficients, torus series, symmetric polynomials and admissibility
// certificates. Parsers report schema violations with a JSON-pointer location.

#include <coha/plethystic.hpp>
#include <coha/quiver_io.hpp>
#include <coha/shuffle.hpp>
#include <coha/torus.hpp>

#include <memory>
#include <optional>
#include <set>
#include <string>

namespace coha
{

/// [[exponent, "coefficient"], ...] in increasing exponent order.
inline json laurent_to_json(const LaurentQ &p)
{
    json out = json::array();
    for (const auto &[e, c] : p.terms()) {
        out.push_back({e, to_string(c)});
    }
    return out;
}

inline LaurentQ laurent_from_json(const json &j, const std::string &where)
{
    using namespace detail;
    require_array(j, where);
    LaurentQ p;
    std::set<long> seen;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const std::string at = where + "/" + std::to_string(k);
        if (!j[k].is_array() || j[k].size() != 2) {
            throw DocumentError(at, "expected [exponent, coefficient]");
        }
        const long e = require_integer(j[k][0], at + "/0");
        if (!seen.insert(e).second) {
            throw DocumentError(at + "/0", "repeated exponent " + std::to_string(e));
        }
        p.add_term(e, require_rational(j[k][1], at + "/1"));
    }
    return p;
}

/// {"num": Laurent numerator, "den": {"k": multiplicity of (1 - q^k)}}.
inline json qrational_to_json(const QRational &c)
{
    json den = json::object();
    for (const auto &[k, m] : c.den()) {
        den[std::to_string(k)] = m;
    }
    return {{"num", laurent_to_json(c.num())}, {"den", std::move(den)}};
}

inline QRational qrational_from_json(const json &j, const std::string &where)
{
    using namespace detail;
    LaurentQ num = laurent_from_json(require(j, "num", where), where + "/num");
    QRational::den_type den;
    if (j.contains("den")) {
        const json &d = j["den"];
        if (!d.is_object()) {
            throw DocumentError(where + "/den", "expected an object");
        }
        for (const auto &[key, value] : d.items()) {
            const std::string at = where + "/den/" + key;
            std::size_t used = 0;
            long k = 0;
            try {
                k = std::stol(key, &used);
            } catch (const std::exception &) {
                used = 0;
            }
            if (used != key.size() || k <= 0) {
                throw DocumentError(at, "denominator keys must be positive integers");
            }
            const long m = require_integer(value, at);
            if (m < 0) {
                throw DocumentError(at, "negative multiplicity");
            }
            den[k] = m;
        }
    }
    return QRational(std::move(num), std::move(den));
}

inline json dim_vector_to_json(const DimVector &g)
{
    return g.entries();
}

inline DimVector dim_vector_from_json(const json &j, std::size_t rank, const std::string &where)
{
    using namespace detail;
    require_array(j, where);
    if (j.size() != rank) {
        throw DocumentError(where, "expected " + std::to_string(rank) + " entries");
    }
    DimVector g(rank);
    for (std::size_t i = 0; i < rank; ++i) {
        g[i] = require_integer(j[i], where + "/" + std::to_string(i));
        if (g[i] < 0) {
            throw DocumentError(where + "/" + std::to_string(i), "negative entry");
        }
    }
    return g;
}

inline Basis basis_from_name(const std::string &name, const std::string &where)
{
    if (name == "E") {
        return Basis::E;
    }
    if (name == "EHAT") {
        return Basis::EHAT;
    }
    throw DocumentError(where, "unknown basis '" + name + "'");
}

/// {"basis": "E"|"EHAT", "truncation": N, "coeffs": [{"gamma": [...], "coeff": {...}}, ...]}.
inline json series_to_json(const TorusSeries &s)
{
    json coeffs = json::array();
    for (const auto &[g, c] : s.coeffs()) {
        coeffs.push_back({{"gamma", dim_vector_to_json(g)}, {"coeff", qrational_to_json(c)}});
    }
    return {{"basis", basis_name(s.basis())}, {"truncation", s.truncation()}, {"coeffs", std::move(coeffs)}};
}

/// Reads a series document over the given quiver. The constant coefficient must be present;
/// every gamma must be effective, distinct and within the truncation. When `expected` is
/// given the document's truncation must equal it.
inline TorusSeries ingest_series(const json &doc, std::shared_ptr<const Quiver> q,
                                 std::optional<long> expected = std::nullopt)
{
    using namespace detail;
    const Basis basis = basis_from_name(require_string(require(doc, "basis", ""), "/basis"), "/basis");
    const long n = require_integer(require(doc, "truncation", ""), "/truncation");
    if (n < 0) {
        throw DocumentError("/truncation", "must be non-negative");
    }
    if (expected && *expected != n) {
        throw DocumentError("/truncation", "truncation mismatch: document has " + std::to_string(n) + ", expected " +
                                               std::to_string(*expected));
    }
    const json &cs = require_array(require(doc, "coeffs", ""), "/coeffs");
    TorusSeries s(q, basis, n);
    std::set<DimVector> seen;
    for (std::size_t k = 0; k < cs.size(); ++k) {
        const std::string at = "/coeffs/" + std::to_string(k);
        DimVector g = dim_vector_from_json(require(cs[k], "gamma", at), q->rank(), at + "/gamma");
        if (g.total() > n) {
            throw DocumentError(at + "/gamma", "beyond the truncation");
        }
        if (!seen.insert(g).second) {
            throw DocumentError(at + "/gamma", "repeated dimension vector");
        }
        s.set(g, qrational_from_json(require(cs[k], "coeff", at), at + "/coeff"));
    }
    if (!seen.count(DimVector(q->rank()))) {
        throw DocumentError("/coeffs", "the constant coefficient is missing");
    }
    return s;
}

inline TorusSeries parse_series(const std::string &text, std::shared_ptr<const Quiver> q,
                                std::optional<long> expected = std::nullopt)
{
    return ingest_series(detail::parse_text(text), std::move(q), expected);
}

/// {"gamma": [...], "terms": [[exponents, "c"], ...]}, one term per orbit.
inline json sympoly_to_json(const SymPoly &p)
{
    json terms = json::array();
    for (const auto &[key, c] : p.terms()) {
        terms.push_back({key, to_string(c)});
    }
    return {{"gamma", dim_vector_to_json(p.gamma())}, {"terms", std::move(terms)}};
}

inline SymPoly sympoly_from_json(const json &doc, std::size_t rank, const std::string &where = "")
{
    using namespace detail;
    DimVector g = dim_vector_from_json(require(doc, "gamma", where), rank, where + "/gamma");
    if (g.total() > static_cast<long>(max_variables)) {
        throw DocumentError(where + "/gamma", "too many variables");
    }
    SymPoly p(g);
    const json &ts = require_array(require(doc, "terms", where), where + "/terms");
    std::set<SymPoly::key_type> seen;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const std::string at = where + "/terms/" + std::to_string(k);
        if (!ts[k].is_array() || ts[k].size() != 2) {
            throw DocumentError(at, "expected [exponents, coefficient]");
        }
        const json &ex = require_array(ts[k][0], at + "/0");
        if (ex.size() != p.nvars()) {
            throw DocumentError(at + "/0", "expected " + std::to_string(p.nvars()) + " exponents");
        }
        SymPoly::key_type key;
        for (std::size_t t = 0; t < ex.size(); ++t) {
            const long e = require_integer(ex[t], at + "/0/" + std::to_string(t));
            if (e < 0 || e > 255) {
                throw DocumentError(at + "/0/" + std::to_string(t), "exponent out of range [0, 255]");
            }
            key.push_back(static_cast<int>(e));
        }
        key = p.canonical(std::move(key));
        if (!seen.insert(key).second) {
            throw DocumentError(at + "/0", "orbit listed twice");
        }
        const Rational c = require_rational(ts[k][1], at + "/1");
        if (c.get_den() != 1) {
            throw DocumentError(at + "/1", "coefficient must be an integer");
        }
        p.add_term(std::move(key), c.get_num());
    }
    return p;
}

inline json certificate_to_json(const AdmissibleCertificate &cert)
{
    json f = json::array(), delta = json::array(), omega = json::array();
    for (const auto &[g, l] : cert.f) {
        f.push_back({{"gamma", dim_vector_to_json(g)}, {"laurent", laurent_to_json(l)}});
    }
    for (const auto &[nm, d] : cert.delta) {
        if (d.fits_slong_p()) {
            delta.push_back({nm.first, nm.second, d.get_si()});
        } else {
            delta.push_back({nm.first, nm.second, to_string(d)});
        }
    }
    for (const auto &[g, l] : cert.omega) {
        omega.push_back({{"gamma", dim_vector_to_json(g)}, {"laurent", laurent_to_json(l)}});
    }
    return {{"truncation", cert.truncation}, {"f", std::move(f)}, {"delta", std::move(delta)},
            {"omega", std::move(omega)}};
}

inline AdmissibleCertificate certificate_from_json(const json &doc, std::size_t rank, const std::string &where = "")
{
    using namespace detail;
    AdmissibleCertificate cert;
    cert.rank = rank;
    cert.truncation = require_integer(require(doc, "truncation", where), where + "/truncation");
    auto read_map = [&](const char *key, std::map<DimVector, LaurentQ> &out) {
        const std::string base = where + "/" + key;
        const json &arr = require_array(require(doc, key, where), base);
        for (std::size_t k = 0; k < arr.size(); ++k) {
            const std::string at = base + "/" + std::to_string(k);
            DimVector g = dim_vector_from_json(require(arr[k], "gamma", at), rank, at + "/gamma");
            if (!out.emplace(g, laurent_from_json(require(arr[k], "laurent", at), at + "/laurent")).second) {
                throw DocumentError(at + "/gamma", "repeated dimension vector");
            }
        }
    };
    read_map("f", cert.f);
    read_map("omega", cert.omega);
    const json &ds = require_array(require(doc, "delta", where), where + "/delta");
    for (std::size_t k = 0; k < ds.size(); ++k) {
        const std::string at = where + "/delta/" + std::to_string(k);
        if (!ds[k].is_array() || ds[k].size() != 3) {
            throw DocumentError(at, "expected [n, m, delta]");
        }
        const Rational d = require_rational(ds[k][2], at + "/2");
        if (d.get_den() != 1) {
            throw DocumentError(at + "/2", "delta must be an integer");
        }
        cert.delta[{require_integer(ds[k][0], at + "/0"), require_integer(ds[k][1], at + "/1")}] = d.get_num();
    }
    return cert;
}

} // namespace coha
