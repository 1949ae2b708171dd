#include "minorkit/cli.hpp"

#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "minorkit/connectivity.hpp"
#include "minorkit/generators.hpp"
#include "minorkit/graph.hpp"
#include "minorkit/io.hpp"
#include "minorkit/minor_oracle.hpp"
#include "minorkit/society.hpp"
#include "minorkit/surfaces.hpp"
#include "minorkit/transforms.hpp"
#include "minorkit/width_params.hpp"

#include <CLI11.hpp>
#include <json.hpp>

namespace minorkit {

namespace {

using nlohmann::json;

// A check subcommand whose checked property does not hold: exit 1 with the
// collected details as error JSON on stderr.
struct CheckFailure {
    json details;
};

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<TransactionKind> parse_kinds(const std::string& s) {
    std::vector<TransactionKind> kinds;
    for (const auto& tok : split_list(s)) {
        if (tok == "h" || tok == "handle")
            kinds.push_back(TransactionKind::handle);
        else if (tok == "c" || tok == "crosscap")
            kinds.push_back(TransactionKind::crosscap);
        else
            throw DomainError("unknown transaction kind '" + tok + "' (use handle/h or crosscap/c)");
    }
    return kinds;
}

VertexSet parse_vertex_set(const std::string& s) {
    VertexSet out;
    for (const auto& tok : split_list(s)) {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) throw DomainError("bad vertex '" + tok + "' in set");
        out.insert(v);
    }
    return out;
}

Rational parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) throw DomainError("rational must be written num/den, got '" + s + "'");
    Rational r;
    r.num = std::stoll(s.substr(0, slash));
    r.den = std::stoll(s.substr(slash + 1));
    if (r.num <= 0 || r.den <= 0) throw DomainError("rational must be positive: " + s);
    return r;
}

SurfaceSet parse_surface_set(const std::string& s) {
    SurfaceSet out;
    for (const auto& tok : split_list(s)) out.insert(parse_surface(tok));
    return out;
}

// Surfaces printed in descending canonical order, matching the obstruction
// lists as usually written (torus before projective-plane).
std::string surface_set_to_string(const SurfaceSet& s) {
    std::string out;
    for (auto it = s.rbegin(); it != s.rend(); ++it) {
        if (!out.empty()) out += ", ";
        out += it->to_string();
    }
    return out;
}

json file_to_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open file: " + path);
    json j;
    in >> j;
    return j;
}

Graph load_graph(const std::string& path) {
    if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0)
        return graph_from_json(file_to_json(path));
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open file: " + path);
    return read_dimacs(in);
}

void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

void emit_graph(std::ostream& out, const Graph& g, const std::string& fmt, const json& meta) {
    if (fmt == "dimacs") {
        write_dimacs(out, g);
    } else if (fmt == "dot") {
        write_dot(out, g);
    } else if (fmt == "json") {
        json j = graph_to_json(g);
        for (auto it = meta.begin(); it != meta.end(); ++it) j[it.key()] = it.value();
        emit_json(out, j);
    } else {
        throw DomainError("format '" + fmt + "' is not valid for a graph payload");
    }
}

void emit_labeled_grid(std::ostream& out, const LabeledGrid& g, const std::string& fmt) {
    if (fmt == "json")
        emit_json(out, labeled_grid_to_json(g));
    else
        emit_graph(out, g.graph, fmt, json::object());
}

json routed_to_json(const RoutedModel& rm) {
    json j;
    j["model"] = model_to_json(rm.model);
    j["step_log"] = rm.step_log;
    return j;
}

json set_to_json(const VertexSet& s) { return json(std::vector<int>(s.begin(), s.end())); }

std::string td_to_string(const TreeDecomposition& td, int n) {
    std::ostringstream os;
    write_td(os, td, n);
    return os.str();
}

void require_empty(const std::vector<std::string>& violations, const char* what) {
    if (violations.empty()) return;
    json d;
    d["check"] = what;
    d["violations"] = violations;
    throw CheckFailure{d};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::ostringstream buf;  // payload is flushed only on success
    double budget_seconds = 0.0;
    int threads = 1;

    CLI::App app{"graph-minors structural toolkit"};
    app.name("minorkit");
    app.require_subcommand(1);
    app.add_option("--budget-seconds", budget_seconds,
                   "fail with exit 2 if the invocation takes longer (0 = unlimited)");
    app.add_option("--threads", threads, "library parallelism (the library is single-threaded)");

    // ---- generate ----------------------------------------------------------
    auto* gen = app.add_subcommand("generate", "surface-grid and wall generators");
    gen->require_subcommand(1);
    struct GenOpts {
        int order = 1, rows = 1, cols = 1, handles = 0, crosscaps = 0, size = 2, pendants = 0;
        int subdivisions = 0;
        std::string kinds, format = "dimacs";
    };
    auto opts = std::make_shared<GenOpts>();
    auto add_format = [&](CLI::App* s) {
        s->add_option("--format", opts->format, "dimacs | dot | json")
            ->check(CLI::IsMember({"dimacs", "dot", "json"}));
    };
    auto grid_cmd = [&](const char* name, const char* desc, auto make) {
        auto* s = gen->add_subcommand(name, desc);
        add_format(s);
        s->callback([&buf, opts, make] { emit_labeled_grid(buf, make(*opts), opts->format); });
        return s;
    };

    {
        auto* s = grid_cmd("dyck", "Dyck-grid with h handles then c crosscaps",
                           [](const GenOpts& o) { return dyck_grid(o.handles, o.crosscaps, o.order); });
        s->add_option("--handles", opts->handles)->required();
        s->add_option("--crosscaps", opts->crosscaps)->required();
        s->add_option("--order", opts->order)->required();
    }
    {
        auto* s = grid_cmd("mixed", "mixed surface grid with explicit kind sequence",
                           [](const GenOpts& o) {
                               return mixed_surface_grid(o.order, parse_kinds(o.kinds), o.subdivisions);
                           });
        s->add_option("--order", opts->order)->required();
        s->add_option("--kinds", opts->kinds, "comma list of handle/crosscap")->required();
        s->add_option("--subdivisions", opts->subdivisions);
    }
    {
        auto* s = grid_cmd("cylindrical", "(m,n)-cylindrical grid",
                           [](const GenOpts& o) { return cylindrical_grid(o.rows, o.cols); });
        s->add_option("--rows", opts->rows)->required();
        s->add_option("--cols", opts->cols)->required();
    }
    for (auto [name, fn] : std::initializer_list<std::pair<const char*, LabeledGrid (*)(int)>>{
             {"annulus", &annulus_grid}, {"handle", &handle_grid}, {"crosscap", &crosscap_grid}}) {
        auto* s = grid_cmd(name, "whole-cycle grid variant",
                           [fn = fn](const GenOpts& o) { return fn(o.order); });
        s->add_option("--order", opts->order)->required();
    }
    for (auto [name, fn] : std::initializer_list<std::pair<const char*, LabeledGrid (*)(int, int, int)>>{
             {"dtilde", &dtilde}, {"dhat", &dhat}}) {
        auto* s = grid_cmd(name, "annulus-free grid variant",
                           [fn = fn](const GenOpts& o) { return fn(o.handles, o.crosscaps, o.order); });
        s->add_option("--handles", opts->handles)->required();
        s->add_option("--crosscaps", opts->crosscaps)->required();
        s->add_option("--order", opts->order)->required();
    }
    {
        auto* s = gen->add_subcommand("wall", "elementary wall");
        add_format(s);
        s->add_option("--size", opts->size)->required();
        s->callback([&buf, opts] {
            const Wall w = elementary_wall(opts->size);
            emit_graph(buf, w.graph, opts->format, json::object());
        });
    }
    {
        auto* s = gen->add_subcommand("dyck-wall", "Dyck-wall");
        add_format(s);
        s->add_option("--handles", opts->handles)->required();
        s->add_option("--crosscaps", opts->crosscaps)->required();
        s->add_option("--size", opts->size)->required();
        s->callback([&buf, opts] {
            emit_graph(buf, dyck_wall(opts->handles, opts->crosscaps, opts->size), opts->format,
                       json::object());
        });
    }
    {
        auto* s = gen->add_subcommand("crossed", "line graph of the subdivided grid");
        add_format(s);
        s->add_option("--order", opts->order)->required();
        s->callback([&buf, opts] { emit_graph(buf, crossed(opts->order), opts->format, json::object()); });
    }
    {
        auto* s = gen->add_subcommand("hairy-wall", "wall with annotation set and pendant paths");
        add_format(s);
        s->add_option("--size", opts->size)->required();
        s->add_option("--pendants", opts->pendants)->required();
        s->callback([&buf, opts] {
            const HairyWall hw = hairy_wall(opts->size, opts->pendants);
            json meta;
            meta["s"] = set_to_json(hw.s);
            meta["x"] = set_to_json(hw.x);
            emit_graph(buf, hw.graph, opts->format, meta);
        });
    }

    // ---- surfaces ----------------------------------------------------------
    auto* surf = app.add_subcommand("surfaces", "surface-obstruction calculus");
    surf->require_subcommand(1);
    auto set_arg = std::make_shared<std::string>();
    auto name_a = std::make_shared<std::string>();
    auto name_b = std::make_shared<std::string>();
    auto max_genus = std::make_shared<int>(2);
    {
        auto* s = surf->add_subcommand("sobs", "surface obstruction set of a closed set");
        s->add_option("--set", *set_arg, "comma list of surface names or (h,c) pairs")->required();
        s->callback([&buf, set_arg] {
            buf << surface_set_to_string(sobs(parse_surface_set(*set_arg))) << "\n";
        });
    }
    {
        auto* s = surf->add_subcommand("prevalent", "prevalent surface of a closed set");
        s->add_option("--set", *set_arg)->required();
        s->callback([&buf, set_arg] {
            buf << prevalent(parse_surface_set(*set_arg)).to_string() << "\n";
        });
    }
    {
        auto* s = surf->add_subcommand("contains", "is surface a embeddable in surface b");
        s->add_option("--a", *name_a)->required();
        s->add_option("--b", *name_b)->required();
        s->callback([&buf, name_a, name_b] {
            buf << (contained_in(parse_surface(*name_a), parse_surface(*name_b)) ? "true" : "false")
                << "\n";
        });
    }
    {
        auto* s = surf->add_subcommand("lattice", "DOT Hasse diagram of the containment order");
        s->add_option("--max-genus", *max_genus)->required();
        s->callback([&buf, max_genus] { write_lattice_dot(buf, *max_genus); });
    }

    // ---- check -------------------------------------------------------------
    auto* chk = app.add_subcommand("check", "validators (exit 1 with details when the check fails)");
    chk->require_subcommand(1);
    struct ChkOpts {
        std::string graph, file, set, f, s, alpha = "2/3";
        int q = 0, k = 0;
    };
    auto c = std::make_shared<ChkOpts>();
    {
        auto* s = chk->add_subcommand("model", "validate a minor model");
        s->add_option("--file", c->file, "MinorModel JSON")->required();
        s->callback([&buf, c] {
            require_empty(validate_model(model_from_json(file_to_json(c->file))), "model");
            buf << "ok\n";
        });
    }
    {
        auto* s = chk->add_subcommand("td", "validate a tree-decomposition");
        s->add_option("--graph", c->graph)->required();
        s->add_option("--file", c->file, "PACE-style .td")->required();
        s->callback([&buf, c] {
            const Graph g = load_graph(c->graph);
            std::ifstream in(c->file);
            if (!in) throw DomainError("cannot open file: " + c->file);
            require_empty(validate_td(g, read_td(in)), "td");
            buf << "ok\n";
        });
    }
    {
        auto* s = chk->add_subcommand("society", "validate a society");
        s->add_option("--file", c->file, "Society JSON")->required();
        s->callback([&buf, c] {
            validate_society(society_from_json(file_to_json(c->file)));
            buf << "ok\n";
        });
    }
    {
        auto* s = chk->add_subcommand("tangle", "validate a tangle");
        s->add_option("--graph", c->graph)->required();
        s->add_option("--file", c->file, "Tangle JSON")->required();
        s->callback([&buf, c] {
            validate_tangle(load_graph(c->graph), tangle_from_json(file_to_json(c->file)));
            buf << "ok\n";
        });
    }
    {
        auto* s = chk->add_subcommand("well-linked", "is S (q,alpha)-well-linked");
        s->add_option("--graph", c->graph)->required();
        s->add_option("--set", c->set)->required();
        s->add_option("--q", c->q)->required();
        s->add_option("--alpha", c->alpha, "rational num/den");
        s->callback([&buf, c] {
            const auto cert =
                is_well_linked(load_graph(c->graph), parse_vertex_set(c->set), c->q, parse_rational(c->alpha));
            if (!cert.well_linked) {
                json d;
                d["check"] = "well-linked";
                d["witness_separator"] = set_to_json(*cert.witness);
                throw CheckFailure{d};
            }
            buf << "ok\n";
        });
    }
    {
        auto* s = chk->add_subcommand("strongly-linked", "is S strongly linked");
        s->add_option("--graph", c->graph)->required();
        s->add_option("--set", c->set)->required();
        s->callback([&buf, c] {
            const auto res = is_strongly_linked(load_graph(c->graph), parse_vertex_set(c->set));
            if (!res.strongly_linked) {
                json d;
                d["check"] = "strongly-linked";
                d["s1"] = set_to_json(res.s1);
                d["s2"] = set_to_json(res.s2);
                if (res.violation) {
                    d["separation_a"] = set_to_json(res.violation->a);
                    d["separation_b"] = set_to_json(res.violation->b);
                }
                throw CheckFailure{d};
            }
            buf << "ok\n";
        });
    }
    {
        auto* s = chk->add_subcommand("free-set", "is F S-free");
        s->add_option("--graph", c->graph)->required();
        s->add_option("--f", c->f)->required();
        s->add_option("--s", c->s)->required();
        s->add_option("--alpha", c->alpha, "rational num/den");
        s->callback([&buf, c] {
            if (!is_s_free(load_graph(c->graph), parse_vertex_set(c->f), parse_vertex_set(c->s),
                           parse_rational(c->alpha)))
                throw CheckFailure{json{{"check", "free-set"}}};
            buf << "ok\n";
        });
    }

    // ---- transform ---------------------------------------------------------
    auto* tr = app.add_subcommand("transform", "constructive conversions (RoutedModel JSON)");
    tr->require_subcommand(1);
    struct TrOpts {
        int order = 0, position = 2, handles = 0, crosscaps = 0, copies = 1;
        std::string kinds;
    };
    auto t = std::make_shared<TrOpts>();
    auto routed_cmd = [&](const char* name, const char* desc, auto fn) {
        auto* s = tr->add_subcommand(name, desc);
        s->add_option("--order", t->order, "host order")->required();
        s->add_option("--kinds", t->kinds, "host kind sequence")->required();
        s->add_option("--position", t->position)->required();
        s->callback([&buf, t, fn] { emit_json(buf, routed_to_json(fn(t->order, parse_kinds(t->kinds), t->position))); });
    };
    routed_cmd("swap", "swap an adjacent handle/crosscap pair", &swap_adjacent);
    routed_cmd("crosscaps-to-handle", "three crosscaps become handle+crosscap", &crosscaps_to_handle);
    routed_cmd("handle-to-crosscaps", "handle+crosscap becomes three crosscaps", &handle_to_crosscaps);
    {
        auto* s = tr->add_subcommand("plan", "symbolic normal-form plan with order factors");
        s->add_option("--handles", t->handles)->required();
        s->add_option("--crosscaps", t->crosscaps)->required();
        s->add_option("--order", t->order)->required();
        s->callback([&buf, t] {
            const OrderBudget b = plan_to_dyck(t->handles, t->crosscaps, t->order);
            json j;
            j["genus"] = b.genus;
            j["target_order"] = b.target_order;
            j["required_order"] = b.required_order;
            json steps = json::array();
            for (const auto& st : b.step_plan) steps.push_back({{"operation", st.operation}, {"factor", st.factor}});
            j["step_plan"] = steps;
            emit_json(buf, j);
        });
    }
    {
        auto* s = tr->add_subcommand("annulus-embed", "mutual annulus-free/full grid embeddings");
        s->add_option("--handles", t->handles)->required();
        s->add_option("--crosscaps", t->crosscaps)->required();
        s->add_option("--order", t->order)->required();
        s->callback([&buf, t] {
            const auto [fwd, bwd] = annulus_embed(t->handles, t->crosscaps, t->order);
            json j;
            j["annulus_free_in_full"] = routed_to_json(fwd);
            j["full_in_annulus_free"] = routed_to_json(bwd);
            emit_json(buf, j);
        });
    }
    {
        auto* s = tr->add_subcommand("packing", "half-integral packing certificate");
        s->add_option("--handles", t->handles)->required();
        s->add_option("--crosscaps", t->crosscaps)->required();
        s->add_option("--copies", t->copies)->required();
        s->add_option("--order", t->order)->required();
        s->callback([&buf, t] {
            const PackingCertificate p = half_integral_packing(t->handles, t->crosscaps, t->copies, t->order);
            json j;
            json copies = json::array();
            for (const auto& m : p.copies) copies.push_back(model_to_json(m));
            j["copies"] = copies;
            j["max_multiplicity"] = p.max_multiplicity();
            emit_json(buf, j);
        });
    }

    // ---- params ------------------------------------------------------------
    auto* par = app.add_subcommand("params", "width and minor parameters");
    par->require_subcommand(1);
    struct ParOpts {
        std::string graph, x, format = "plain";
        std::int64_t budget_nodes = SearchBudget{}.node_limit;
    };
    auto p = std::make_shared<ParOpts>();
    {
        auto* s = par->add_subcommand("tw", "exact treewidth (two agreeing engines)");
        s->add_option("--graph", p->graph)->required();
        s->add_option("--format", p->format, "plain | json | td")
            ->check(CLI::IsMember({"plain", "json", "td"}));
        s->callback([&buf, p] {
            const Graph g = load_graph(p->graph);
            const AnnotatedValue v = treewidth_exact(g);
            if (p->format == "plain") {
                buf << v.value << "\n";
            } else if (p->format == "td") {
                buf << td_to_string(*v.td, g.num_vertices());
            } else {
                json j;
                j["param"] = v.param;
                j["value"] = v.value;
                emit_json(buf, j);
            }
        });
    }
    {
        auto* s = par->add_subcommand("tw-annotated", "annotated treewidth tw(G,X)");
        s->add_option("--graph", p->graph)->required();
        s->add_option("--x", p->x, "annotation set")->required();
        s->callback([&buf, p] {
            buf << tw_annotated(load_graph(p->graph), parse_vertex_set(p->x)).value << "\n";
        });
    }
    {
        auto* s = par->add_subcommand("bg", "annotated biggest-grid parameter bg(G,X)");
        s->add_option("--graph", p->graph)->required();
        s->add_option("--x", p->x, "annotation set")->required();
        s->add_option("--budget-nodes", p->budget_nodes);
        s->callback([&buf, p] {
            const Graph g = load_graph(p->graph);
            SearchBudget b;
            b.max_host_vertices = g.num_vertices();
            b.node_limit = p->budget_nodes;
            buf << bg_annotated(g, parse_vertex_set(p->x), b) << "\n";
        });
    }
    {
        auto* s = par->add_subcommand("hadwiger", "largest clique minor");
        s->add_option("--graph", p->graph)->required();
        s->add_option("--budget-nodes", p->budget_nodes);
        s->callback([&buf, p] {
            const Graph g = load_graph(p->graph);
            SearchBudget b;
            b.max_host_vertices = g.num_vertices();
            b.max_pattern_vertices = g.num_vertices();
            b.node_limit = p->budget_nodes;
            buf << hadwiger(g, b) << "\n";
        });
    }

    const auto t0 = std::chrono::steady_clock::now();
    try {
        std::vector<const char*> argv;
        argv.push_back("minorkit");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);  // --help and friends
        err << e.what() << "\n" << app.help();
        return 64;
    } catch (const CheckFailure& f) {
        json j = f.details;
        j["error"] = "domain";
        err << j.dump(2) << "\n";
        return 1;
    } catch (const DomainError& e) {
        err << json{{"error", "domain"}, {"message", e.what()}}.dump(2) << "\n";
        return 1;
    } catch (const BudgetError& e) {
        err << json{{"error", "budget"}, {"message", e.what()}}.dump(2) << "\n";
        return 2;
    }
    if (budget_seconds > 0.0) {
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;
        if (elapsed.count() > budget_seconds) {
            err << json{{"error", "budget"},
                        {"message", "wall-clock budget of " + std::to_string(budget_seconds) +
                                        " s exceeded"}}
                       .dump(2)
                << "\n";
            return 2;
        }
    }
    out << buf.str();
    return 0;
}

}  // namespace minorkit
