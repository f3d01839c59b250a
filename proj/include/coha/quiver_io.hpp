#pragma once

// JSON documents for quivers with potential. Errors carry a JSON-pointer location.

#include <coha/quiver.hpp>

#include <json.hpp>

#include <string>
#include <utility>

namespace coha
{

using json = nlohmann::json;

/// Schema violation in an input document, located by a JSON pointer.
class DocumentError : public Error
{
public:
    DocumentError(const std::string &where, const std::string &what)
        : Error((where.empty() ? std::string("/") : where) + ": " + what), where_(where)
    {
    }
    const std::string &where() const
    {
        return where_;
    }

private:
    std::string where_;
};

namespace detail
{

inline const json &require(const json &obj, const char *key, const std::string &where)
{
    if (!obj.is_object()) {
        throw DocumentError(where, "expected an object");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw DocumentError(where, std::string("missing key '") + key + "'");
    }
    return *it;
}

inline std::string require_string(const json &j, const std::string &where)
{
    if (!j.is_string()) {
        throw DocumentError(where, "expected a string");
    }
    return j.get<std::string>();
}

inline const json &require_array(const json &j, const std::string &where)
{
    if (!j.is_array()) {
        throw DocumentError(where, "expected an array");
    }
    return j;
}

inline long require_integer(const json &j, const std::string &where)
{
    if (!j.is_number_integer()) {
        throw DocumentError(where, "expected an integer");
    }
    return j.get<long>();
}

/// Accepts "p/q" strings and, for convenience, JSON integers.
inline Rational require_rational(const json &j, const std::string &where)
{
    if (j.is_number_integer()) {
        return Rational(j.get<long>());
    }
    if (!j.is_string()) {
        throw DocumentError(where, "expected a rational string");
    }
    try {
        return parse_rational(j.get<std::string>());
    } catch (const Error &e) {
        throw DocumentError(where, e.what());
    }
}

inline json parse_text(const std::string &text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw DocumentError("", std::string("invalid JSON: ") + e.what());
    }
}

} // namespace detail

struct QuiverDocument {
    Quiver quiver;
    Potential potential;
};

inline QuiverDocument quiver_from_json(const json &doc)
{
    using namespace detail;
    const json &vs = require_array(require(doc, "vertices", ""), "/vertices");
    std::vector<std::string> vertices;
    for (std::size_t k = 0; k < vs.size(); ++k) {
        vertices.push_back(require_string(vs[k], "/vertices/" + std::to_string(k)));
    }
    std::vector<Arrow> arrows;
    if (doc.contains("arrows")) {
        const json &as = require_array(doc["arrows"], "/arrows");
        for (std::size_t k = 0; k < as.size(); ++k) {
            const std::string at = "/arrows/" + std::to_string(k);
            Arrow a{require_string(require(as[k], "name", at), at + "/name"),
                    require_string(require(as[k], "from", at), at + "/from"),
                    require_string(require(as[k], "to", at), at + "/to")};
            for (const auto *end : {&a.tail, &a.head}) {
                if (std::find(vertices.begin(), vertices.end(), *end) == vertices.end()) {
                    throw DocumentError(at + (end == &a.tail ? "/from" : "/to"), "unknown vertex '" + *end + "'");
                }
            }
            arrows.push_back(std::move(a));
        }
    }
    Quiver q;
    try {
        q = Quiver(std::move(vertices), std::move(arrows));
    } catch (const DocumentError &) {
        throw;
    } catch (const Error &e) {
        throw DocumentError("", e.what());
    }

    Potential w;
    if (doc.contains("potential")) {
        const json &ps = require_array(doc["potential"], "/potential");
        for (std::size_t k = 0; k < ps.size(); ++k) {
            const std::string at = "/potential/" + std::to_string(k);
            Rational c = require_rational(require(ps[k], "coeff", at), at + "/coeff");
            const json &cyc = require_array(require(ps[k], "cycle", at), at + "/cycle");
            if (cyc.empty()) {
                throw DocumentError(at + "/cycle", "empty cycle");
            }
            std::vector<std::string> names;
            for (std::size_t t = 0; t < cyc.size(); ++t) {
                names.push_back(require_string(cyc[t], at + "/cycle/" + std::to_string(t)));
            }
            CyclicWord word;
            if (names.size() == 1 && names[0].size() > 2 && names[0].front() == '(' && names[0].back() == ')') {
                word = CyclicWord::at_vertex(names[0].substr(1, names[0].size() - 2));
            } else {
                word = CyclicWord::of(names);
            }
            try {
                Potential::check_cycle(q, word);
            } catch (const Error &e) {
                throw DocumentError(at + "/cycle", e.what());
            }
            w.add(word, c);
        }
    }
    return {std::move(q), std::move(w)};
}

inline QuiverDocument parse_quiver(const std::string &text)
{
    return quiver_from_json(detail::parse_text(text));
}

inline json quiver_to_json(const Quiver &q, const Potential &w = {})
{
    json doc;
    doc["vertices"] = q.vertices();
    json arrows = json::array();
    for (const auto &a : q.arrows()) {
        arrows.push_back({{"name", a.name}, {"from", a.tail}, {"to", a.head}});
    }
    doc["arrows"] = std::move(arrows);
    json pot = json::array();
    for (const auto &[word, c] : w.terms()) {
        json cyc = json::array();
        if (word.is_trivial()) {
            cyc.push_back("(" + word.vertex + ")");
        } else {
            for (const auto &name : word.arrows) {
                cyc.push_back(name);
            }
        }
        pot.push_back({{"coeff", to_string(c)}, {"cycle", std::move(cyc)}});
    }
    doc["potential"] = std::move(pot);
    return doc;
}

inline std::string serialize_quiver(const Quiver &q, const Potential &w = {})
{
    return quiver_to_json(q, w).dump(2) + "\n";
}

} // namespace coha
