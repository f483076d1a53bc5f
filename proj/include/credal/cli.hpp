#pragma once

// The `credal` command line: check | vertices | fan | graph | natex | bounds.
// Exit codes: 0 success, 1 property failure, 2 input error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "credal/fanwalk.hpp"
#include "credal/lower_prevision.hpp"
#include "credal/model_io.hpp"
#include "credal/polytope.hpp"
#include "credal/pri.hpp"
#include "credal/two_monotone.hpp"

namespace credal {

enum ExitCode : int { exit_ok = 0, exit_property = 1, exit_input = 2 };

struct CliOptions {
    std::string model;
    std::string engine = "auto";
    std::string dot;
    std::string out;
    std::string gamble;
    bool verify = false;
    bool decimal = false;
    std::size_t n = 0;
};

namespace detail {

class property_failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void write_file(const std::string& path, const std::string& text)
{
    std::ofstream f(path);
    if (!f) throw input_error("cannot write " + path);
    f << text;
}

inline LowerPrevision as_lower_prevision(const ModelFile& mf)
{
    if (const auto* lp = std::get_if<LowerPrevision>(&mf.model)) return *lp;
    if (const auto* l = std::get_if<LowerProbability>(&mf.model)) return to_lower_prevision(*l, mf.space);
    return to_lower_prevision(std::get<PRIModel>(mf.model), mf.space);
}

inline bool is_coherent_model(const ModelFile& mf)
{
    if (const auto* m = std::get_if<PRIModel>(&mf.model)) return is_coherent_pri(*m).coherent;
    if (const auto* l = std::get_if<LowerProbability>(&mf.model))
        if (is_two_monotone(*l)) return true;
    return is_coherent(as_lower_prevision(mf)).coherent;
}

inline std::string resolve_engine(const ModelFile& mf, const std::string& engine)
{
    if (engine != "auto") {
        if (engine == "chains") {
            const auto* l = std::get_if<LowerProbability>(&mf.model);
            if (!l) throw input_error("engine chains needs a lower_probability model");
            if (!is_two_monotone(*l)) throw input_error("engine chains needs a 2-monotone lower probability");
        }
        if (engine == "pri") {
            const auto* m = std::get_if<PRIModel>(&mf.model);
            if (!m) throw input_error("engine pri needs a pri model");
            if (m->size() < 3) throw input_error("engine pri needs at least three outcomes");
        }
        return engine;
    }
    if (const auto* l = std::get_if<LowerProbability>(&mf.model); l && is_two_monotone(*l)) return "chains";
    if (const auto* m = std::get_if<PRIModel>(&mf.model); m && m->size() >= 3) return "pri";
    return "walk";
}

inline MescGraph fan_graph(const ModelFile& mf, const std::string& engine)
{
    if (engine == "chains") return chain_fan_graph(std::get<LowerProbability>(mf.model));
    if (engine == "pri") return enumerate_extreme_pri(std::get<PRIModel>(mf.model)).graph;
    if (engine == "walk") {
        const auto rep = build_credal_hrep(as_lower_prevision(mf));
        return walk(rep.polytope, rep.universe);
    }
    throw input_error("engine " + engine + " does not build a fan");
}

inline std::vector<RatVector> vertex_set(const ModelFile& mf, const std::string& engine)
{
    if (engine == "oracle") {
        const auto rep = build_credal_hrep(as_lower_prevision(mf));
        try {
            return vertices_bruteforce(rep.polytope).points();
        } catch (const oracle_limit_exceeded& e) {
            throw input_error(std::string(e.what()) + "; use --engine walk, chains or pri");
        }
    }
    if (engine == "chains") return enumerate_extreme_2mono(std::get<LowerProbability>(mf.model)).vertices;
    if (engine == "pri") return enumerate_extreme_pri(std::get<PRIModel>(mf.model)).vertices;
    if (engine == "walk") return fan_graph(mf, engine).vertices();
    throw input_error("unknown engine \"" + engine + "\" (auto, walk, chains, pri, oracle)");
}

inline void report_header(std::ostream& out, const char* command, const CliOptions& o, const ModelFile& mf)
{
    out << "command: " << command << '\n';
    out << "model: " << o.model << '\n';
    out << "type: " << mf.type() << '\n';
    out << "digest: " << model_digest(mf) << '\n';
    out << "outcomes: " << mf.space.size() << '\n';
}

inline void require_coherent_model(const ModelFile& mf)
{
    if (!is_coherent_model(mf)) throw property_failure("model is not coherent");
}

// ---------------------------------------------------------------------------

inline int cmd_check(const CliOptions& o, std::ostream& out)
{
    const auto mf = load_model(o.model);
    report_header(out, "check", o, mf);
    bool coherent = false;
    if (const auto* m = std::get_if<PRIModel>(&mf.model)) {
        const auto c = is_coherent_pri(*m);
        coherent = c.coherent;
        out << "nonempty: " << (c.nonempty ? "yes" : "no") << '\n';
        out << "coherent: " << (coherent ? "yes" : "no") << '\n';
        if (!coherent && c.reachable) {
            for (std::size_t i = 0; i < m->size(); ++i)
                out << "reachable " << mf.space.name(i) << ": [" << to_string(c.reachable->l(i)) << ", "
                    << to_string(c.reachable->u(i)) << "]\n";
        }
    } else {
        if (const auto* l = std::get_if<LowerProbability>(&mf.model)) {
            const auto bad = two_monotone_violation(*l);
            out << "2-monotone: " << (bad ? "no" : "yes") << '\n';
            if (bad)
                out << "violating pair: {" << event_key(bad->a, mf.space) << "} {" << event_key(bad->b, mf.space)
                    << "}\n";
        }
        const auto lp = as_lower_prevision(mf);
        const auto r = is_coherent(lp);
        coherent = r.coherent;
        out << "nonempty: " << (r.nonempty ? "yes" : "no") << '\n';
        out << "coherent: " << (coherent ? "yes" : "no") << '\n';
        for (std::size_t i = 0; i < r.attained.size(); ++i)
            if (r.attained[i] != lp.assessments()[i].lower)
                out << "unreachable assessment " << i << ": lower " << to_string(lp.assessments()[i].lower)
                    << ", attained " << to_string(r.attained[i]) << '\n';
    }
    return coherent ? exit_ok : exit_property;
}

inline int cmd_vertices(const CliOptions& o, std::ostream& out)
{
    const auto mf = load_model(o.model);
    const std::string engine = resolve_engine(mf, o.engine);
    require_coherent_model(mf);
    const auto pts = vertex_set(mf, engine);
    report_header(out, "vertices", o, mf);
    out << "engine: " << engine << '\n';
    out << "vertices: " << pts.size() << '\n';
    const std::string csv = vertices_csv(pts, mf.space);
    if (!o.out.empty()) {
        write_file(o.out, csv);
        out << "output: " << o.out << '\n';
    } else {
        out << '\n' << csv;
    }
    if (o.decimal) {
        out << "\n# decimal approximations, not exact\n";
        for (const auto& p : pts) {
            for (std::size_t i = 0; i < p.size(); ++i) out << (i ? "," : "") << to_decimal(p[i]);
            out << '\n';
        }
    }
    return exit_ok;
}

inline int cmd_fan(const CliOptions& o, std::ostream& out, bool export_graph)
{
    const auto mf = load_model(o.model);
    const std::string engine = resolve_engine(mf, o.engine);
    require_coherent_model(mf);
    const auto g = fan_graph(mf, engine);
    const auto rep = verify_graph(g, mf.space.size() - 1);
    report_header(out, export_graph ? "graph" : "fan", o, mf);
    out << "engine: " << engine << '\n';
    out << "nodes: " << rep.nodes << '\n';
    out << "edges: " << rep.edges << '\n';
    out << "vertices: " << g.vertices().size() << '\n';
    out << "connected: " << (rep.connected ? "yes" : "no") << '\n';
    for (auto [d, count] : rep.degree_histogram) out << "degree " << d << ": " << count << '\n';
    out << "expected degree: " << rep.expected_degree << '\n';
    out << "regular: " << (rep.regular ? "yes" : "no") << '\n';
    if (!o.dot.empty()) {
        write_file(o.dot, to_dot(g));
        out << "dot: " << o.dot << '\n';
    }
    if (!o.out.empty()) {
        write_file(o.out, graph_json(g).dump(2) + "\n");
        out << "output: " << o.out << '\n';
    }
    if (export_graph && o.dot.empty() && o.out.empty()) out << '\n' << to_dot(g);
    return (o.verify && !rep.pass()) ? exit_property : exit_ok;
}

inline int cmd_natex(const CliOptions& o, std::ostream& out)
{
    const auto mf = load_model(o.model);
    if (o.gamble.empty()) throw input_error("natex needs --gamble PATH");
    const Gamble f = parse_gamble(read_json_file(o.gamble), mf.space);
    require_coherent_model(mf);

    std::string method;
    Rat value;
    if (const auto* m = std::get_if<PRIModel>(&mf.model)) {
        method = "intervals";
        value = natural_extension_pri(*m, f);
    } else if (const auto* l = std::get_if<LowerProbability>(&mf.model); l && is_two_monotone(*l)) {
        method = "choquet";
        value = choquet(*l, f);
    } else {
        method = "credal set";
        value = natural_extension(as_lower_prevision(mf), f);
    }
    report_header(out, "natex", o, mf);
    out << "method: " << method << '\n';
    out << "value: " << to_string(value) << '\n';
    if (o.decimal) out << "approx: " << to_decimal(value) << " (decimal, not exact)\n";
    if (o.verify) {
        const auto lp = as_lower_prevision(mf);
        const auto rep = build_credal_hrep(lp);
        const OracleLimits limits;
        if (rep.polytope.dim > limits.max_dim || rep.polytope.inequalities.size() > limits.max_constraints) {
            out << "verify: skipped (model too large for the vertex oracle)\n";
        } else {
            const Rat check = lp_min(rep.polytope, f, limits).value;
            out << "oracle: " << to_string(check) << '\n';
            out << "verify: " << (check == value ? "match" : "MISMATCH") << '\n';
            if (check != value) return exit_property;
        }
    }
    return exit_ok;
}

inline int cmd_bounds(const CliOptions& o, std::ostream& out)
{
    const auto b = count_bounds(o.n);
    out << "command: bounds\n";
    out << "n: " << o.n << '\n';
    out << "lower: " << b.lower << '\n';
    out << "upper: " << b.upper << '\n';
    return exit_ok;
}

} // namespace detail

/// Runs one invocation; args excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Normal fans, extreme points and natural extensions of credal sets"};
    app.name("credal");
    app.require_subcommand(1);
    CliOptions o;

    auto add_model = [&](CLI::App* sub) { sub->add_option("--model", o.model, "model JSON file")->required(); };
    auto* check = app.add_subcommand("check", "coherence and 2-monotonicity verdicts");
    add_model(check);
    auto* vertices = app.add_subcommand("vertices", "extreme points of the credal set");
    add_model(vertices);
    vertices->add_option("--engine", o.engine, "auto, walk, chains, pri or oracle");
    vertices->add_option("--out", o.out, "CSV output path");
    vertices->add_flag("--decimal", o.decimal, "also print decimal approximations");
    auto* fan = app.add_subcommand("fan", "MESC graph summary");
    auto* graph = app.add_subcommand("graph", "MESC graph export");
    for (auto* sub : {fan, graph}) {
        add_model(sub);
        sub->add_option("--engine", o.engine, "auto, walk, chains or pri");
        sub->add_option("--dot", o.dot, "DOT output path");
        sub->add_option("--out", o.out, "graph JSON output path");
        sub->add_flag("--verify", o.verify, "fail unless connected and regular");
    }
    auto* natex = app.add_subcommand("natex", "natural extension of a gamble");
    add_model(natex);
    natex->add_option("--gamble", o.gamble, "gamble JSON file")->required();
    natex->add_flag("--verify", o.verify, "cross-check against the vertex oracle");
    natex->add_flag("--decimal", o.decimal, "also print a decimal approximation");
    auto* bounds = app.add_subcommand("bounds", "range of the MESC count of interval models");
    bounds->add_option("n", o.n, "number of outcomes")->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "credal: " << e.what() << '\n';
        return exit_input;
    }

    const auto start = std::chrono::steady_clock::now();
    int code = exit_ok;
    try {
        if (check->parsed())
            code = detail::cmd_check(o, out);
        else if (vertices->parsed())
            code = detail::cmd_vertices(o, out);
        else if (fan->parsed())
            code = detail::cmd_fan(o, out, false);
        else if (graph->parsed())
            code = detail::cmd_fan(o, out, true);
        else if (natex->parsed())
            code = detail::cmd_natex(o, out);
        else if (bounds->parsed())
            code = detail::cmd_bounds(o, out);
    } catch (const detail::property_failure& e) {
        err << "credal: " << e.what() << '\n';
        return exit_property;
    } catch (const std::invalid_argument& e) {
        err << "credal: " << e.what() << '\n';
        return exit_input;
    } catch (const json::exception& e) {
        err << "credal: " << e.what() << '\n';
        return exit_input;
    } catch (const oracle_limit_exceeded& e) {
        err << "credal: " << e.what() << '\n';
        return exit_input;
    } catch (const std::exception& e) {
        err << "credal: " << e.what() << '\n';
        return exit_property;
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    err << "elapsed_ms: " << ms.count() << '\n';
    return code;
}

} // namespace credal
