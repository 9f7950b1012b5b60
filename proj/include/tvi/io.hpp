#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tvi/game.hpp"
#include "tvi/problem.hpp"

namespace tvi {

using json = nlohmann::json;

// Parse failure with a JSON-pointer-style location of the offending node.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::string location, const std::string& message)
        : std::runtime_error(location + ": " + message), location_(std::move(location)) {}
    const std::string& location() const { return location_; }

  private:
    std::string location_;
};

inline constexpr const char* kProblemVersion = "tvi/1";
inline constexpr const char* kGameVersion = "tvi-game/1";

namespace io_detail {

inline const json& require(const json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw ParseError(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(where, std::string("missing field '") + key + "'");
    return *it;
}

inline std::size_t parse_positive_int(const json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<std::int64_t>() <= 0)
        throw ParseError(where, "expected a positive integer");
    return j.get<std::size_t>();
}

inline double parse_finite(const json& j, const std::string& where) {
    if (!j.is_number()) throw ParseError(where, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ParseError(where, "value must be finite");
    return v;
}

// Box bounds admit +/-infinity, encoded as the strings "inf" / "-inf".
inline double parse_extended(const json& j, const std::string& where) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf" || s == "+inf") return kInf;
        if (s == "-inf") return -kInf;
        throw ParseError(where, "expected a number or \"inf\"/\"-inf\"");
    }
    if (!j.is_number()) throw ParseError(where, "expected a number or \"inf\"/\"-inf\"");
    return j.get<double>();
}

inline Vector parse_vector(const json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where, "expected an array of numbers");
    Vector v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(parse_finite(j[i], where + "/" + std::to_string(i)));
    return v;
}

inline Vector parse_extended_vector(const json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where, "expected an array");
    Vector v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(parse_extended(j[i], where + "/" + std::to_string(i)));
    return v;
}

// Dense nested arrays, depth m, extent dims[j] at depth j.
inline void parse_dense_into(const json& j, const std::vector<std::size_t>& dims,
                             std::size_t depth, std::vector<double>& out,
                             const std::string& where) {
    if (depth == dims.size()) {
        out.push_back(parse_finite(j, where));
        return;
    }
    if (!j.is_array() || j.size() != dims[depth])
        throw ParseError(where, "expected an array of length " + std::to_string(dims[depth]));
    for (std::size_t i = 0; i < j.size(); ++i)
        parse_dense_into(j[i], dims, depth + 1, out, where + "/" + std::to_string(i));
}

// Tensor payload: either dense nested arrays or a sparse coordinate list
// {"entries": [{"idx": [...], "val": ...}, ...]}. Indices are 0-based.
inline DenseTensor parse_tensor(const json& j, const std::vector<std::size_t>& dims,
                                const std::string& where) {
    if (j.is_array()) {
        std::vector<double> out;
        out.reserve(DenseTensor(dims).size());
        parse_dense_into(j, dims, 0, out, where);
        return DenseTensor(dims, std::move(out));
    }
    if (!j.is_object())
        throw ParseError(where, "expected dense nested arrays or {\"entries\": [...]}");
    const json& entries = require(j, "entries", where);
    if (!entries.is_array()) throw ParseError(where + "/entries", "expected an array");

    DenseTensor shape(dims);
    std::vector<double> out(shape.size(), 0.0);
    std::set<std::size_t> seen;
    for (std::size_t e = 0; e < entries.size(); ++e) {
        const std::string ewhere = where + "/entries/" + std::to_string(e);
        const json& entry = entries[e];
        const json& jidx = require(entry, "idx", ewhere);
        const json& jval = require(entry, "val", ewhere);
        if (!jidx.is_array() || jidx.size() != dims.size())
            throw ParseError(ewhere + "/idx",
                             "expected " + std::to_string(dims.size()) + " indices");
        std::vector<std::size_t> idx(dims.size());
        for (std::size_t t = 0; t < idx.size(); ++t) {
            const std::string iwhere = ewhere + "/idx/" + std::to_string(t);
            if (!jidx[t].is_number_integer() || jidx[t].get<std::int64_t>() < 0)
                throw ParseError(iwhere, "expected a nonnegative integer");
            idx[t] = jidx[t].get<std::size_t>();
            if (idx[t] >= dims[t]) throw ParseError(iwhere, "index out of range");
        }
        const std::size_t flat = shape.flat_index(idx);
        if (!seen.insert(flat).second)
            throw ParseError(ewhere + "/idx", "duplicate sparse index");
        out[flat] = parse_finite(jval, ewhere + "/val");
    }
    return DenseTensor(dims, std::move(out));
}

inline FeasibleSet parse_set(const json& j, const std::string& where) {
    const json& jtype = require(j, "type", where);
    if (!jtype.is_string()) throw ParseError(where + "/type", "expected a string");
    const std::string type = jtype.get<std::string>();
    try {
        if (type == "whole_space")
            return FeasibleSet::whole_space(parse_positive_int(require(j, "dim", where), where + "/dim"));
        if (type == "box")
            return FeasibleSet::box(
                parse_extended_vector(require(j, "lower", where), where + "/lower"),
                parse_extended_vector(require(j, "upper", where), where + "/upper"));
        if (type == "ball") {
            const json& jr = require(j, "radius", where);
            if (!jr.is_number()) throw ParseError(where + "/radius", "expected a number");
            return FeasibleSet::ball(parse_vector(require(j, "center", where), where + "/center"),
                                     jr.get<double>());
        }
        if (type == "simplex")
            return FeasibleSet::simplex(parse_positive_int(require(j, "dim", where), where + "/dim"));
        if (type == "polyhedron") {
            const std::size_t n =
                parse_positive_int(require(j, "dim", where), where + "/dim");
            const json& jh = require(j, "halfspaces", where);
            if (!jh.is_array()) throw ParseError(where + "/halfspaces", "expected an array");
            std::vector<Halfspace> hs;
            for (std::size_t i = 0; i < jh.size(); ++i) {
                const std::string hwhere = where + "/halfspaces/" + std::to_string(i);
                hs.push_back(Halfspace{parse_vector(require(jh[i], "a", hwhere), hwhere + "/a"),
                                       parse_finite(require(jh[i], "b", hwhere), hwhere + "/b")});
            }
            return FeasibleSet::polyhedron(n, std::move(hs));
        }
        if (type == "product") {
            const json& jf = require(j, "factors", where);
            if (!jf.is_array()) throw ParseError(where + "/factors", "expected an array");
            std::vector<FeasibleSet> factors;
            for (std::size_t i = 0; i < jf.size(); ++i)
                factors.push_back(parse_set(jf[i], where + "/factors/" + std::to_string(i)));
            return FeasibleSet::product(std::move(factors));
        }
    } catch (const std::invalid_argument& e) {
        throw ParseError(where, e.what());
    }
    throw ParseError(where + "/type", "unknown set type '" + type + "'");
}

inline json serialize_extended(double v) {
    if (v == kInf) return json("inf");
    if (v == -kInf) return json("-inf");
    return json(v);
}

inline json serialize_set(const FeasibleSet& X) {
    return std::visit(
        [&](const auto& node) -> json {
            using T = std::decay_t<decltype(node)>;
            json j;
            if constexpr (std::is_same_v<T, FeasibleSet::WholeSpace>) {
                j["type"] = "whole_space";
                j["dim"] = node.n;
            } else if constexpr (std::is_same_v<T, FeasibleSet::Box>) {
                j["type"] = "box";
                json lo = json::array(), hi = json::array();
                for (double v : node.lower) lo.push_back(serialize_extended(v));
                for (double v : node.upper) hi.push_back(serialize_extended(v));
                j["lower"] = std::move(lo);
                j["upper"] = std::move(hi);
            } else if constexpr (std::is_same_v<T, FeasibleSet::Ball>) {
                j["type"] = "ball";
                j["center"] = node.center;
                j["radius"] = node.radius;
            } else if constexpr (std::is_same_v<T, FeasibleSet::Simplex>) {
                j["type"] = "simplex";
                j["dim"] = node.n;
            } else if constexpr (std::is_same_v<T, FeasibleSet::Polyhedron>) {
                j["type"] = "polyhedron";
                j["dim"] = node.n;
                json hs = json::array();
                for (const auto& h : node.halfspaces)
                    hs.push_back(json{{"a", h.normal}, {"b", h.offset}});
                j["halfspaces"] = std::move(hs);
            } else {
                j["type"] = "product";
                json fs = json::array();
                for (const auto& f : node.factors) fs.push_back(serialize_set(f));
                j["factors"] = std::move(fs);
            }
            return j;
        },
        X.node());
}

inline json serialize_tensor_sparse(const DenseTensor& t) {
    json entries = json::array();
    const auto& a = t.data();
    for (std::size_t f = 0; f < a.size(); ++f) {
        if (a[f] != 0.0) {
            entries.push_back(json{{"idx", t.unflatten(f)}, {"val", a[f]}});
        }
    }
    return json{{"entries", std::move(entries)}};
}

}  // namespace io_detail

inline TviProblem parse_problem(const json& doc) {
    using namespace io_detail;
    const json& jver = require(doc, "version", "");
    if (!jver.is_string() || jver.get<std::string>() != kProblemVersion)
        throw ParseError("/version", std::string("expected \"") + kProblemVersion + "\"");
    const std::size_t m = parse_positive_int(require(doc, "order", ""), "/order");
    const std::size_t n = parse_positive_int(require(doc, "dim", ""), "/dim");
    if (m < 2) throw ParseError("/order", "order must be >= 2");

    DenseTensor t = parse_tensor(require(doc, "tensor", ""),
                                 std::vector<std::size_t>(m, n), "/tensor");
    Vector q = parse_vector(require(doc, "q", ""), "/q");
    if (q.size() != n) throw ParseError("/q", "expected " + std::to_string(n) + " entries");
    FeasibleSet X = parse_set(require(doc, "set", ""), "/set");
    if (X.dim() != n) throw ParseError("/set", "set dimension does not match problem dim");
    return TviProblem(SquareTensor(std::move(t)), std::move(q), std::move(X));
}

inline TviProblem parse_problem(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("", std::string("invalid JSON: ") + e.what());
    }
    return parse_problem(doc);
}

inline json serialize_problem(const TviProblem& P) {
    json doc;
    doc["version"] = kProblemVersion;
    doc["order"] = P.order();
    doc["dim"] = P.dim();
    doc["tensor"] = io_detail::serialize_tensor_sparse(P.A.tensor());
    doc["q"] = P.q;
    doc["set"] = io_detail::serialize_set(P.X);
    return doc;
}

inline GameSpec parse_game(const json& doc) {
    using namespace io_detail;
    const json& jver = require(doc, "version", "");
    if (!jver.is_string() || jver.get<std::string>() != kGameVersion)
        throw ParseError("/version", std::string("expected \"") + kGameVersion + "\"");
    const json& jdims = require(doc, "dims", "");
    if (!jdims.is_array() || jdims.size() < 2)
        throw ParseError("/dims", "expected an array of at least 2 dimensions");
    std::vector<std::size_t> dims;
    for (std::size_t i = 0; i < jdims.size(); ++i)
        dims.push_back(parse_positive_int(jdims[i], "/dims/" + std::to_string(i)));

    const json& jplayers = require(doc, "players", "");
    if (!jplayers.is_array() || jplayers.size() != dims.size())
        throw ParseError("/players", "expected one player object per dimension entry");
    std::vector<DenseTensor> payoffs;
    std::vector<FeasibleSet> sets;
    for (std::size_t k = 0; k < jplayers.size(); ++k) {
        const std::string where = "/players/" + std::to_string(k);
        payoffs.push_back(parse_tensor(require(jplayers[k], "payoff", where), dims,
                                       where + "/payoff"));
        FeasibleSet Xk = parse_set(require(jplayers[k], "set", where), where + "/set");
        if (Xk.dim() != dims[k])
            throw ParseError(where + "/set", "strategy set dimension mismatch");
        sets.push_back(std::move(Xk));
    }
    return GameSpec(std::move(payoffs), std::move(sets));
}

inline GameSpec parse_game(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("", std::string("invalid JSON: ") + e.what());
    }
    return parse_game(doc);
}

inline json serialize_game(const GameSpec& G) {
    json doc;
    doc["version"] = kGameVersion;
    doc["dims"] = G.dims();
    json players = json::array();
    for (std::size_t k = 0; k < G.players(); ++k) {
        players.push_back(json{{"payoff", io_detail::serialize_tensor_sparse(G.payoffs[k])},
                               {"set", io_detail::serialize_set(G.strategy_sets[k])}});
    }
    doc["players"] = std::move(players);
    return doc;
}

}  // namespace tvi
