#pragma once

// JSON model files, gamble files, vertex CSV and graph JSON.
//
//   {"type": "lower_prevision", "space": ["a", "b", "c"],
//    "assessments": [{"gamble": {"a": "1", "b": "-1/2"}, "lower": "0"},
//                    {"event": ["a", "b"], "upper": "3/4"}]}
//   {"type": "lower_probability", "space": [...], "values": {"a|b": "1/2", ...}}
//   {"type": "pri", "space": [...], "lower": {"a": "1/10", ...}, "upper": {...}}
//
// A missing "type" means lower_prevision.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "credal/fanwalk.hpp"
#include "credal/lower_prevision.hpp"
#include "credal/pri.hpp"
#include "credal/two_monotone.hpp"

namespace credal {

using json = nlohmann::ordered_json;

struct ModelFile {
    OutcomeSpace space;
    std::variant<LowerPrevision, LowerProbability, PRIModel> model;

    std::string type() const
    {
        switch (model.index()) {
        case 0: return "lower_prevision";
        case 1: return "lower_probability";
        default: return "pri";
        }
    }
};

namespace detail {

inline Rat json_rat(const json& j, const std::string& where)
{
    if (j.is_string()) {
        try {
            return parse_rat(j.get<std::string>());
        } catch (const input_error& e) {
            throw input_error(where + ": " + e.what());
        }
    }
    if (j.is_number_integer()) return Rat(j.get<long long>());
    throw input_error(where + ": expected a rational \"p/q\" string");
}

inline const json& field(const json& j, const char* key, const std::string& where)
{
    if (!j.is_object()) throw input_error(where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw input_error(where + ": missing field \"" + key + "\"");
    return *it;
}

inline Event json_event(const json& j, const OutcomeSpace& space, const std::string& where)
{
    if (!j.is_array()) throw input_error(where + ": expected an array of outcome labels");
    Event a = 0;
    for (const auto& label : j) {
        if (!label.is_string()) throw input_error(where + ": outcome labels must be strings");
        const std::size_t i = space.index_of(label.get<std::string>());
        if (credal::contains(a, i)) throw input_error(where + ": repeated outcome \"" + label.get<std::string>() + "\"");
        a |= singleton(i);
    }
    return a;
}

/// Object keyed by outcome label; absent outcomes are 0 unless all are required.
inline RatVector json_outcome_map(const json& j, const OutcomeSpace& space, const std::string& where, bool require_all)
{
    if (!j.is_object()) throw input_error(where + ": expected an object keyed by outcome label");
    RatVector v(space.size(), Rat(0));
    std::vector<bool> seen(space.size(), false);
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::size_t i = space.index_of(it.key());
        v[i] = json_rat(it.value(), where + "." + it.key());
        seen[i] = true;
    }
    if (require_all)
        for (std::size_t i = 0; i < space.size(); ++i)
            if (!seen[i]) throw input_error(where + ": missing outcome \"" + space.name(i) + "\"");
    return v;
}

inline std::string event_key(Event a, const OutcomeSpace& space)
{
    std::string s;
    for (auto i : members(a, space.size())) s += (s.empty() ? "" : "|") + space.name(i);
    return s;
}

} // namespace detail

inline ModelFile parse_model(const json& j)
{
    if (!j.is_object()) throw input_error("model: top level must be an object");
    const auto& sp = detail::field(j, "space", "model");
    if (!sp.is_array()) throw input_error("model.space: expected an array of labels");
    std::vector<std::string> names;
    for (const auto& s : sp) {
        if (!s.is_string()) throw input_error("model.space: labels must be strings");
        names.push_back(s.get<std::string>());
    }
    for (const auto& s : names)
        if (s.find('|') != std::string::npos) throw input_error("model.space: label \"" + s + "\" contains '|'");
    ModelFile mf{OutcomeSpace(std::move(names)), LowerPrevision{}};
    const std::size_t n = mf.space.size();

    std::string type = "lower_prevision";
    if (auto t = j.find("type"); t != j.end()) {
        if (!t->is_string()) throw input_error("model.type: expected a string");
        type = t->get<std::string>();
    }

    if (type == "lower_prevision") {
        LowerPrevision lp(mf.space);
        const json empty = json::array();
        auto it = j.find("assessments");
        const json& list = it == j.end() ? empty : *it;
        if (!list.is_array()) throw input_error("model.assessments: expected an array");
        for (std::size_t k = 0; k < list.size(); ++k) {
            const std::string where = "model.assessments[" + std::to_string(k) + "]";
            const json& a = list[k];
            if (!a.is_object()) throw input_error(where + ": expected an object");
            const bool has_g = a.contains("gamble"), has_e = a.contains("event");
            if (has_g == has_e) throw input_error(where + ": needs exactly one of \"gamble\" or \"event\"");
            const Gamble f = has_g ? detail::json_outcome_map(a["gamble"], mf.space, where + ".gamble", false)
                                   : indicator(n, detail::json_event(a["event"], mf.space, where + ".event"));
            const bool has_l = a.contains("lower"), has_u = a.contains("upper");
            if (!has_l && !has_u) throw input_error(where + ": needs \"lower\" or \"upper\"");
            if (has_l) lp.add_lower(f, detail::json_rat(a["lower"], where + ".lower"));
            if (has_u) lp.add_upper(f, detail::json_rat(a["upper"], where + ".upper"));
        }
        mf.model = std::move(lp);
    } else if (type == "lower_probability") {
        if (n > 16) throw unsupported_input("model: lower probability on more than 16 outcomes");
        const auto& vals = detail::field(j, "values", "model");
        if (!vals.is_object()) throw input_error("model.values: expected an object keyed by events");
        std::vector<Rat> v(std::size_t{1} << n, Rat(0));
        std::vector<bool> seen(v.size(), false);
        for (auto it = vals.begin(); it != vals.end(); ++it) {
            const std::string where = "model.values." + it.key();
            Event a = 0;
            std::stringstream ss(it.key());
            std::string label;
            while (std::getline(ss, label, '|')) {
                const std::size_t i = mf.space.index_of(label);
                if (credal::contains(a, i)) throw input_error(where + ": repeated outcome");
                a |= singleton(i);
            }
            if (a == 0 || a == full_event(n)) throw input_error(where + ": only proper nonempty events are listed");
            if (seen[a]) throw input_error(where + ": event listed twice");
            seen[a] = true;
            v[a] = detail::json_rat(it.value(), where);
        }
        for (Event a = 1; a < full_event(n); ++a)
            if (!seen[a]) throw input_error("model.values: missing event \"" + detail::event_key(a, mf.space) + "\"");
        v[full_event(n)] = 1;
        mf.model = LowerProbability(n, std::move(v));
    } else if (type == "pri") {
        auto l = detail::json_outcome_map(detail::field(j, "lower", "model"), mf.space, "model.lower", true);
        auto u = detail::json_outcome_map(detail::field(j, "upper", "model"), mf.space, "model.upper", true);
        mf.model = PRIModel(std::move(l), std::move(u));
    } else {
        throw input_error("model.type: unknown model type \"" + type + "\"");
    }
    return mf;
}

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw input_error(path + ": " + e.what());
    }
}

inline ModelFile load_model(const std::string& path) { return parse_model(read_json_file(path)); }

inline json to_json(const ModelFile& mf)
{
    json j;
    j["type"] = mf.type();
    j["space"] = mf.space.names();
    const std::size_t n = mf.space.size();
    if (const auto* lp = std::get_if<LowerPrevision>(&mf.model)) {
        j["assessments"] = json::array();
        for (const auto& a : lp->assessments()) {
            json g = json::object();
            for (std::size_t i = 0; i < n; ++i)
                if (a.gamble[i] != 0) g[mf.space.name(i)] = to_string(a.gamble[i]);
            j["assessments"].push_back({{"gamble", g}, {"lower", to_string(a.lower)}});
        }
    } else if (const auto* l = std::get_if<LowerProbability>(&mf.model)) {
        json v = json::object();
        for (Event a = 1; a < full_event(n); ++a) v[detail::event_key(a, mf.space)] = to_string((*l)(a));
        j["values"] = v;
    } else {
        const auto& m = std::get<PRIModel>(mf.model);
        json lo = json::object(), up = json::object();
        for (std::size_t i = 0; i < n; ++i) {
            lo[mf.space.name(i)] = to_string(m.l(i));
            up[mf.space.name(i)] = to_string(m.u(i));
        }
        j["lower"] = lo;
        j["upper"] = up;
    }
    return j;
}

/// 64-bit FNV-1a of the canonical JSON form, as 16 hex digits.
inline std::string model_digest(const ModelFile& mf)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : to_json(mf).dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

/// Either an object keyed by label (absent outcomes are 0) or an array in space order.
inline Gamble parse_gamble(const json& j, const OutcomeSpace& space)
{
    if (j.is_array()) {
        if (j.size() != space.size())
            throw input_error("gamble: expected " + std::to_string(space.size()) + " values, got " +
                              std::to_string(j.size()));
        Gamble f;
        for (std::size_t i = 0; i < j.size(); ++i) f.push_back(detail::json_rat(j[i], "gamble[" + std::to_string(i) + "]"));
        return f;
    }
    return detail::json_outcome_map(j, space, "gamble", false);
}

// ---------------------------------------------------------------------------

inline std::string vertices_csv(const std::vector<RatVector>& pts, const OutcomeSpace& space)
{
    std::ostringstream out;
    for (std::size_t i = 0; i < space.size(); ++i) out << (i ? "," : "") << space.name(i);
    out << '\n';
    for (const auto& p : pts) out << to_string(p) << '\n';
    return out.str();
}

inline json graph_json(const MescGraph& g)
{
    json j;
    j["nodes"] = json::array();
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        json v = json::array();
        for (const auto& x : g.nodes[i].vertex) v.push_back(to_string(x));
        j["nodes"].push_back({{"id", i}, {"generators", g.nodes[i].gens}, {"vertex", v}});
    }
    j["edges"] = json::array();
    for (auto [a, b] : g.edges) j["edges"].push_back({a, b});
    return j;
}

} // namespace credal
