#pragma once

// JSON input and output for algebras, groups, characters and strata posets.
//
// Algebra:   {"dim": d, "basis": [...], "mul": [[ [[k, c], ...], ... ], ...], "unit": [...], "trace": [...],
//             "blocks": [{"size": m, "units": [index or vector, ...]}, ...]}        ("blocks" optional)
// Group:     {"order": g, "table": [[...], ...], "identity": e, "names": [...]}  ("names" optional)
// Character: {"n": n, "values": [...]}
// Rationals are integers or strings "p/q"; indices are 0-based.

#include "tracealg/findim.hpp"
#include "tracealg/pseudochar.hpp"
#include "tracealg/strata.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tracealg {

using Json = nlohmann::json;

class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::string position_of(const std::string& text, std::size_t byte)
{
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline const Json& field(const Json& j, const char* key, const std::string& where)
{
    if (!j.is_object())
        throw InputError(where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end())
        throw InputError(where + ": missing field \"" + key + "\"");
    return *it;
}

inline Rational rational_at(const Json& j, const std::string& where)
{
    if (j.is_number_integer())
        return Rational(j.get<long>());
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw InputError(where + ": " + e.what());
        }
    }
    throw InputError(where + ": expected an integer or a \"p/q\" string");
}

inline std::size_t index_at(const Json& j, std::size_t bound, const std::string& where)
{
    if (!j.is_number_integer() || j.get<long>() < 0)
        throw InputError(where + ": expected a nonnegative integer");
    auto v = j.get<std::size_t>();
    if (v >= bound)
        throw InputError(where + ": index " + std::to_string(v) + " out of range");
    return v;
}

inline QVector vector_at(const Json& j, std::size_t d, const std::string& where)
{
    if (!j.is_array() || j.size() != d)
        throw InputError(where + ": expected an array of length " + std::to_string(d));
    QVector v(d);
    for (std::size_t i = 0; i < d; ++i)
        v[i] = rational_at(j[i], where + "[" + std::to_string(i) + "]");
    return v;
}

inline Json rational_json(const Rational& q)
{
    if (is_integer(q) && q.get_num().fits_slong_p())
        return Json(q.get_num().get_si());
    return Json(q.get_str());
}

} // namespace detail

/// Parses JSON text, reporting syntax errors with line and column.
inline Json parse_json_text(const std::string& text, const std::string& source = "input")
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(source + ": malformed JSON at " + detail::position_of(text, e.byte > 0 ? e.byte - 1 : 0));
    }
}

inline Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

struct AlgebraInput {
    TraceAlgebra algebra;
    std::optional<std::vector<MatrixBlock>> blocks;
};

inline AlgebraInput algebra_from_json(const Json& j)
{
    using namespace detail;
    const Json& dim_j = field(j, "dim", "algebra");
    if (!dim_j.is_number_integer() || dim_j.get<long>() < 1)
        throw InputError("dim: expected a positive integer");
    const auto d = dim_j.get<std::size_t>();

    std::vector<std::string> labels;
    if (j.contains("basis")) {
        const Json& b = j["basis"];
        if (!b.is_array() || b.size() != d)
            throw InputError("basis: expected " + std::to_string(d) + " labels");
        for (std::size_t i = 0; i < d; ++i) {
            if (!b[i].is_string())
                throw InputError("basis[" + std::to_string(i) + "]: expected a string");
            labels.push_back(b[i].get<std::string>());
        }
    }

    const Json& mul = field(j, "mul", "algebra");
    if (!mul.is_array() || mul.size() != d)
        throw InputError("mul: expected " + std::to_string(d) + " rows");
    TraceAlgebra::SparseTable table(d, std::vector<std::vector<std::pair<std::size_t, Rational>>>(d));
    for (std::size_t a = 0; a < d; ++a) {
        const std::string wa = "mul[" + std::to_string(a) + "]";
        if (!mul[a].is_array() || mul[a].size() != d)
            throw InputError(wa + ": expected " + std::to_string(d) + " entries");
        for (std::size_t b = 0; b < d; ++b) {
            const std::string wb = wa + "[" + std::to_string(b) + "]";
            const Json& entry = mul[a][b];
            if (!entry.is_array())
                throw InputError(wb + ": expected a list of [k, c] pairs");
            for (std::size_t t = 0; t < entry.size(); ++t) {
                const std::string wt = wb + "[" + std::to_string(t) + "]";
                if (!entry[t].is_array() || entry[t].size() != 2)
                    throw InputError(wt + ": expected [k, c]");
                table[a][b].emplace_back(index_at(entry[t][0], d, wt + "[0]"), rational_at(entry[t][1], wt + "[1]"));
            }
        }
    }
    QVector unit = vector_at(field(j, "unit", "algebra"), d, "unit");
    QVector trace = vector_at(field(j, "trace", "algebra"), d, "trace");

    AlgebraInput out{TraceAlgebra{}, std::nullopt};
    try {
        out.algebra = make_algebra(std::move(labels), std::move(table), std::move(unit), std::move(trace));
    } catch (const AlgebraError& e) {
        throw InputError(std::string("algebra: ") + e.what());
    }

    if (j.contains("blocks")) {
        const Json& bl = j["blocks"];
        if (!bl.is_array())
            throw InputError("blocks: expected an array");
        std::vector<MatrixBlock> blocks;
        for (std::size_t i = 0; i < bl.size(); ++i) {
            const std::string wi = "blocks[" + std::to_string(i) + "]";
            const Json& sz = field(bl[i], "size", wi);
            if (!sz.is_number_integer() || sz.get<long>() < 1)
                throw InputError(wi + ".size: expected a positive integer");
            MatrixBlock blk;
            blk.size = sz.get<unsigned>();
            const Json& units = field(bl[i], "units", wi);
            if (!units.is_array() || units.size() != static_cast<std::size_t>(blk.size) * blk.size)
                throw InputError(wi + ".units: expected size*size matrix units");
            for (std::size_t u = 0; u < units.size(); ++u) {
                const std::string wu = wi + ".units[" + std::to_string(u) + "]";
                if (units[u].is_number_integer()) {
                    QVector v(d);
                    v[index_at(units[u], d, wu)] = 1;
                    blk.units.push_back(std::move(v));
                } else {
                    blk.units.push_back(vector_at(units[u], d, wu));
                }
            }
            blocks.push_back(std::move(blk));
        }
        out.blocks = std::move(blocks);
    }
    return out;
}

inline Json algebra_to_json(const TraceAlgebra& a, const std::vector<MatrixBlock>* blocks = nullptr)
{
    Json j;
    j["dim"] = a.dim();
    j["basis"] = a.labels();
    Json mul = Json::array();
    for (std::size_t i = 0; i < a.dim(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < a.dim(); ++k) {
            Json entry = Json::array();
            for (const auto& [idx, c] : a.table()[i][k])
                entry.push_back(Json::array({idx, detail::rational_json(c)}));
            row.push_back(entry);
        }
        mul.push_back(row);
    }
    j["mul"] = mul;
    auto vec = [](const QVector& v) {
        Json arr = Json::array();
        for (const auto& x : v)
            arr.push_back(detail::rational_json(x));
        return arr;
    };
    j["unit"] = vec(a.unit());
    j["trace"] = vec(a.trace_vector());
    if (blocks) {
        Json bl = Json::array();
        for (const auto& b : *blocks) {
            Json units = Json::array();
            for (const auto& u : b.units) {
                std::size_t nz = 0, at = 0;
                for (std::size_t i = 0; i < u.size(); ++i)
                    if (u[i] != 0) {
                        ++nz;
                        at = i;
                    }
                if (nz == 1 && u[at] == 1)
                    units.push_back(at);
                else
                    units.push_back(vec(u));
            }
            bl.push_back({{"size", b.size}, {"units", units}});
        }
        j["blocks"] = bl;
    }
    return j;
}

inline FiniteGroup group_from_json(const Json& j)
{
    using namespace detail;
    const Json& ord = field(j, "order", "group");
    if (!ord.is_number_integer() || ord.get<long>() < 1)
        throw InputError("order: expected a positive integer");
    const auto g = ord.get<std::size_t>();
    const Json& tab = field(j, "table", "group");
    if (!tab.is_array() || tab.size() != g)
        throw InputError("table: expected " + std::to_string(g) + " rows");
    std::vector<std::vector<std::size_t>> table(g, std::vector<std::size_t>(g));
    for (std::size_t a = 0; a < g; ++a) {
        const std::string wa = "table[" + std::to_string(a) + "]";
        if (!tab[a].is_array() || tab[a].size() != g)
            throw InputError(wa + ": expected " + std::to_string(g) + " entries");
        for (std::size_t b = 0; b < g; ++b)
            table[a][b] = index_at(tab[a][b], g, wa + "[" + std::to_string(b) + "]");
    }
    std::size_t identity = index_at(field(j, "identity", "group"), g, "identity");
    std::vector<std::string> names;
    if (j.contains("names")) {
        const Json& nm = j["names"];
        if (!nm.is_array() || nm.size() != g)
            throw InputError("names: expected " + std::to_string(g) + " strings");
        for (std::size_t i = 0; i < g; ++i) {
            if (!nm[i].is_string())
                throw InputError("names[" + std::to_string(i) + "]: expected a string");
            names.push_back(nm[i].get<std::string>());
        }
    }
    try {
        return make_group(std::move(table), identity, std::move(names));
    } catch (const GroupError& e) {
        throw InputError(std::string("group: ") + e.what());
    }
}

inline Json group_to_json(const FiniteGroup& g)
{
    Json j;
    j["order"] = g.order;
    j["table"] = g.table;
    j["identity"] = g.identity;
    if (!g.names.empty())
        j["names"] = g.names;
    return j;
}

inline PseudoCharTable character_from_json(const Json& j, const FiniteGroup& g)
{
    using namespace detail;
    const Json& n = field(j, "n", "character");
    if (!n.is_number_integer() || n.get<long>() < 1)
        throw InputError("n: expected a positive integer");
    PseudoCharTable p{g, n.get<unsigned>(), vector_at(field(j, "values", "character"), g.order, "values")};
    return p;
}

inline Json character_to_json(const PseudoCharTable& p)
{
    Json vals = Json::array();
    for (const auto& v : p.values)
        vals.push_back(detail::rational_json(v));
    return {{"n", p.n}, {"values", vals}};
}

inline Json poset_to_json(const StrataPoset& p)
{
    Json nodes = Json::array();
    for (std::size_t i = 0; i < p.nodes.size(); ++i) {
        Json pairs = Json::array();
        for (const auto& [m, a] : p.nodes[i].pairs())
            pairs.push_back({{"m", m}, {"a", a}});
        nodes.push_back({{"id", i},
                         {"label", p.nodes[i].label()},
                         {"pairs", pairs},
                         {"stratum_dim", p.dims[i].stratum},
                         {"sheet_dim", p.dims[i].sheet},
                         {"stabilizer_dim", p.dims[i].stabilizer},
                         {"projective_stabilizer_dim", p.dims[i].projective_stabilizer}});
    }
    Json edges = Json::array();
    for (const auto& e : p.edges)
        edges.push_back({{"upper", e.upper}, {"lower", e.lower}, {"codim", e.codim}, {"flagged", e.flagged}});
    return {{"n", p.n},
            {"ell", p.ell},
            {"nodes", nodes},
            {"edges", edges},
            {"codim_one_edges", p.flagged_count()},
            {"codim_one_rule_holds", p.codimension_rule_holds()}};
}

} // namespace tracealg
