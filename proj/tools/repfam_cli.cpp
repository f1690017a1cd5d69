#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "repfam/oracle.hpp"
#include "repfam/replinear.hpp"
#include "repfam/sepcol.hpp"
#include "repfam/solvers.hpp"

using json = nlohmann::ordered_json;
using namespace repfam;

namespace {

struct CommonOpts {
    uint64_t seed = 1;
    unsigned p_conf = 40;
    std::string pipeline = "auto";
    double epsilon = 0.25;
    bool json_out = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    if (const char* env = std::getenv("REPFAM_SEED")) o.seed = std::strtoull(env, nullptr, 10);
    cmd->add_option("--seed", o.seed, "root random seed (default: $REPFAM_SEED or 1)");
    cmd->add_option("--p-conf", o.p_conf, "Monte Carlo confidence exponent")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--pipeline", o.pipeline, "separating collection pipeline")
        ->check(CLI::IsMember({"auto", "default", "full", "complete"}));
    cmd->add_option("--epsilon", o.epsilon, "tree divide constant control, in (0,1]")
        ->check(CLI::Range(1e-9, 1.0));
    cmd->add_flag("--json", o.json_out, "JSON output");
}

SepPipeline pipeline_of(const std::string& s) {
    if (s == "default") return SepPipeline::Default;
    if (s == "full") return SepPipeline::Full;
    if (s == "complete") return SepPipeline::Complete;
    return SepPipeline::Auto;
}

SolverConfig solver_config(const CommonOpts& o) {
    return SolverConfig{o.seed, o.p_conf, pipeline_of(o.pipeline), o.epsilon};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

GraphFile parse_graph_file(const std::string& path) {
    std::string text = slurp(path);
    GraphFormat fmt = GraphFormat::Dimacs;
    // PACE headers start "p tw"; DIMACS use "p edge" / "p arc"
    auto pos = text.find("p tw");
    if (pos != std::string::npos) fmt = GraphFormat::PaceGr;
    return parse_graph(text, fmt);
}

// JSON and text output both use 1-based vertices, matching the graph formats
json one_based(const std::vector<std::size_t>& vs) {
    json a = json::array();
    for (auto v : vs) a.push_back(v + 1);
    return a;
}

json provenance(const CommonOpts& o, const SolverStats& stats) {
    json p;
    p["seed"] = o.seed;
    p["p_conf"] = o.p_conf;
    p["pipeline"] = o.pipeline;
    p["monte_carlo"] = stats.monte_carlo;
    json fs = json::array();
    for (const auto& [what, size] : stats.family_sizes)
        fs.push_back({{"stage", what}, {"size", size}});
    p["family_sizes"] = fs;
    return p;
}

void emit(const CommonOpts& o, const json& doc, const std::string& text) {
    if (o.json_out)
        std::cout << doc.dump(2) << "\n";
    else
        std::cout << text;
}

json family_json(const WeightedSetFamily& f) {
    json arr = json::array();
    for (std::size_t i = 0; i < f.size(); ++i) {
        json s;
        s["weight"] = f.weight(i);
        s["elements"] = f.set(i).elements();
        arr.push_back(s);
    }
    return arr;
}

LinearMatroid matroid_of(const std::string& spec) {
    if (spec.rfind("uniform:", 0) == 0) {
        auto rest = spec.substr(8);
        auto colon = rest.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error("matroid spec: expected uniform:<n>:<k>");
        std::size_t n = std::stoul(rest.substr(0, colon));
        std::size_t k = std::stoul(rest.substr(colon + 1));
        return uniform_matroid(n, k);
    }
    if (spec.rfind("graphic:", 0) == 0) {
        GraphFile gf = parse_graph_file(spec.substr(8));
        if (gf.directed) throw std::runtime_error("graphic matroid needs an undirected graph");
        Graph g = to_graph(gf);
        GraphEdgeView view;
        view.n = g.n();
        for (std::size_t e = 0; e < g.m(); ++e) {
            view.tail.push_back(g.edge(e).u);
            view.head.push_back(g.edge(e).v);
            view.labels.push_back("e" + std::to_string(e));
        }
        return graphic_matroid(view);
    }
    throw std::runtime_error("unknown matroid spec: " + spec);
}

int run_repfam(const CommonOpts& o, const std::string& family_path,
               const std::string& matroid_spec, int q_flag, const std::string& sense_str) {
    std::ifstream in(family_path);
    if (!in) throw std::runtime_error("cannot open family: " + family_path);
    SerializedFamily sf = read_family(in);
    std::size_t q = q_flag >= 0 ? std::size_t(q_flag) : sf.q;
    Sense sense = sense_str == "max" ? Sense::Max : Sense::Min;
    LinearMatroid m = matroid_of(matroid_spec);
    WeightedSetFamily out =
        rep_linear_auto(m, sf.family, q, sense, o.seed, o.p_conf);

    json doc;
    doc["schema"] = 1;
    doc["command"] = "repfam";
    doc["input_size"] = sf.family.size();
    doc["output_size"] = out.size();
    doc["family"] = family_json(out);
    SolverStats stats;
    stats.monte_carlo = m.rank() > sf.family.set_size() + q; // truncation path
    doc["provenance"] = provenance(o, stats);
    std::ostringstream text;
    write_family(text, out, q);
    emit(o, doc, text.str());
    return 0;
}

int run_sepcol_build(const CommonOpts& o, std::size_t n, std::size_t p, std::size_t q,
                     const std::string& out_path) {
    SepConfig sc{o.seed, o.p_conf, pipeline_of(o.pipeline), 200000};
    SepPtr c = build_separating_collection(n, p, q, sc);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output: " + out_path);
    write_collection(out, *c);
    json doc;
    doc["schema"] = 1;
    doc["command"] = "sepcol-build";
    doc["n"] = n;
    doc["p"] = p;
    doc["q"] = q;
    doc["members"] = c->members().size();
    doc["verified"] = c->verified;
    doc["file"] = out_path;
    SolverStats stats;
    stats.monte_carlo = !c->verified;
    doc["provenance"] = provenance(o, stats);
    std::ostringstream text;
    text << "collection n=" << n << " p=" << p << " q=" << q << " members="
         << c->members().size() << (c->verified ? " (verified)" : " (monte carlo)")
         << " -> " << out_path << "\n";
    emit(o, doc, text.str());
    return 0;
}

int run_kpath(const CommonOpts& o, const std::string& path, std::size_t k) {
    GraphFile gf = parse_graph_file(path);
    if (gf.directed) throw std::runtime_error("kpath expects an undirected graph");
    Graph g = to_graph(gf);
    SolverStats stats;
    auto res = k_path(g, k, solver_config(o), &stats);
    json doc;
    doc["schema"] = 1;
    doc["command"] = "kpath";
    doc["k"] = k;
    doc["answer"] = res.has_value();
    if (res) {
        doc["witness"] = one_based(res->vertices);
        doc["cost"] = res->cost;
    }
    doc["provenance"] = provenance(o, stats);
    std::ostringstream text;
    if (res) {
        text << "YES cost=" << res->cost << " path:";
        for (auto v : res->vertices) text << " " << v + 1;
        text << "\n";
    } else {
        text << "NO\n";
    }
    emit(o, doc, text.str());
    return res ? 0 : 1;
}

int run_cheaptour(const CommonOpts& o, const std::string& path, std::size_t k,
                  std::size_t k_max) {
    GraphFile gf = parse_graph_file(path);
    if (gf.directed) throw std::runtime_error("cheaptour expects an undirected graph");
    Graph g = to_graph(gf);
    SolverStats stats;
    auto res = short_cheap_tour(g, k, solver_config(o), &stats, k_max);
    json doc;
    doc["schema"] = 1;
    doc["command"] = "cheaptour";
    doc["k"] = k;
    doc["k_max"] = k_max == 0 ? k : k_max;
    doc["answer"] = res.has_value();
    if (res) {
        doc["witness"] = one_based(res->vertices);
        doc["cost"] = res->cost;
    }
    doc["provenance"] = provenance(o, stats);
    std::ostringstream text;
    if (res) {
        text << "YES cost=" << res->cost << " path:";
        for (auto v : res->vertices) text << " " << v + 1;
        text << "\n";
    } else {
        text << "NO\n";
    }
    emit(o, doc, text.str());
    return res ? 0 : 1;
}

int run_cycle(const CommonOpts& o, const std::string& path, std::size_t k) {
    GraphFile gf = parse_graph_file(path);
    Digraph d = to_digraph(gf);
    SolverStats stats;
    auto res = long_directed_cycle(d, k, solver_config(o), &stats);
    json doc;
    doc["schema"] = 1;
    doc["command"] = "cycle";
    doc["k"] = k;
    doc["answer"] = res.has_value();
    if (res) doc["witness"] = one_based(*res);
    doc["provenance"] = provenance(o, stats);
    std::ostringstream text;
    if (res) {
        text << "YES cycle:";
        for (auto v : *res) text << " " << v + 1;
        text << "\n";
    } else {
        text << "NO\n";
    }
    emit(o, doc, text.str());
    return res ? 0 : 1;
}

int run_steiner(const CommonOpts& o, const std::string& path, const std::string& td_path,
                std::vector<std::size_t> terminals) {
    GraphFile gf = parse_graph_file(path);
    if (gf.directed) throw std::runtime_error("steiner expects an undirected graph");
    Graph g = to_graph(gf);
    TreeDecomposition td = parse_td(slurp(td_path));
    for (auto& t : terminals) {
        if (t < 1 || t > g.n()) throw std::runtime_error("terminal out of range");
        --t; // CLI is 1-based like the graph formats
    }
    SolverStats stats;
    SteinerResult res = steiner_tree(g, terminals, td, solver_config(o), &stats);
    json doc;
    doc["schema"] = 1;
    doc["command"] = "steiner";
    doc["answer"] = true;
    doc["weight"] = res.weight;
    json edges = json::array();
    for (auto e : res.edges)
        edges.push_back({{"u", g.edge(e).u + 1}, {"v", g.edge(e).v + 1}, {"w", g.edge(e).w}});
    doc["witness"] = edges;
    doc["provenance"] = provenance(o, stats);
    std::ostringstream text;
    text << "weight=" << res.weight << " edges:";
    for (auto e : res.edges) text << " " << g.edge(e).u + 1 << "-" << g.edge(e).v + 1;
    text << "\n";
    emit(o, doc, text.str());
    return 0;
}

int run_meg(const CommonOpts& o, const std::string& path, bool weighted) {
    GraphFile gf = parse_graph_file(path);
    Digraph d = to_digraph(gf);
    SolverStats stats;
    auto res = meg(d, weighted, solver_config(o), &stats);
    json doc;
    doc["schema"] = 1;
    doc["command"] = "meg";
    doc["weighted"] = weighted;
    doc["answer"] = true;
    doc["arcs"] = res.size();
    uint64_t w = 0;
    json arcs = json::array();
    for (auto a : res) {
        arcs.push_back({{"u", d.arc(a).u + 1}, {"v", d.arc(a).v + 1}, {"w", d.arc(a).w}});
        w += weighted ? d.arc(a).w : 1;
    }
    doc["weight"] = w;
    doc["witness"] = arcs;
    doc["provenance"] = provenance(o, stats);
    std::ostringstream text;
    text << "arcs=" << res.size() << " weight=" << w << ":";
    for (auto a : res) text << " " << d.arc(a).u + 1 << ">" << d.arc(a).v + 1;
    text << "\n";
    emit(o, doc, text.str());
    return 0;
}

int run_ktree(const CommonOpts& o, const std::string& host_path,
              const std::string& tree_path) {
    GraphFile hf = parse_graph_file(host_path);
    GraphFile tf = parse_graph_file(tree_path);
    if (hf.directed || tf.directed)
        throw std::runtime_error("ktree expects undirected graphs");
    Graph g = to_graph(hf);
    Graph t = to_graph(tf);
    SolverStats stats;
    auto res = k_tree(g, t, solver_config(o), &stats);
    json doc;
    doc["schema"] = 1;
    doc["command"] = "ktree";
    doc["k"] = t.n();
    doc["answer"] = res.has_value();
    if (res) {
        json w = json::array();
        for (std::size_t x = 0; x < res->size(); ++x)
            w.push_back({{"pattern", x + 1}, {"host", (*res)[x] + 1}});
        doc["witness"] = w;
    }
    doc["provenance"] = provenance(o, stats);
    std::ostringstream text;
    if (res) {
        text << "YES map:";
        for (std::size_t x = 0; x < res->size(); ++x)
            text << " " << x + 1 << "->" << (*res)[x] + 1;
        text << "\n";
    } else {
        text << "NO\n";
    }
    emit(o, doc, text.str());
    return res ? 0 : 1;
}

int run_verify(const CommonOpts& o, const std::string& collection_path,
               const std::string& td_path, const std::string& graph_path) {
    json doc;
    doc["schema"] = 1;
    doc["command"] = "verify";
    std::ostringstream text;
    bool ok = true;
    if (!collection_path.empty()) {
        std::ifstream in(collection_path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open collection: " + collection_path);
        SepPtr c = read_collection(in);
        // exhaustive property (b) check; refuse when too large to be exact
        std::size_t n = c->universe(), p = c->p(), q = c->q();
        if (n > 14 || p + q > 8)
            throw std::runtime_error("collection too large for exhaustive verification");
        auto subsets = [&](std::size_t size) {
            std::vector<BitVec> out;
            std::vector<std::size_t> idx(size);
            for (std::size_t i = 0; i < size; ++i) idx[i] = i;
            if (size > n) return out;
            for (;;) {
                BitVec b(n);
                for (auto i : idx) b.set(i);
                out.push_back(b);
                std::size_t j = size;
                while (j > 0 && idx[j - 1] == n - size + j - 1) --j;
                if (j == 0) break;
                ++idx[j - 1];
                for (std::size_t l = j; l < size; ++l) idx[l] = idx[l - 1] + 1;
            }
            return out;
        };
        std::size_t failures = 0;
        for (const auto& a : subsets(p)) {
            auto chi = c->query(a);
            for (const auto& f : chi)
                if (!a.subset_of(f)) throw std::runtime_error("property (a) violated");
            for (const auto& b : subsets(q)) {
                if (a.intersects(b)) continue;
                bool sep = false;
                for (const auto& f : chi)
                    if (!f.intersects(b)) {
                        sep = true;
                        break;
                    }
                if (!sep) ++failures;
            }
        }
        ok &= failures == 0;
        doc["collection"] = {{"file", collection_path},
                             {"members", c->members().size()},
                             {"separation_failures", failures}};
        text << "collection " << collection_path << ": "
             << (failures == 0 ? "ok" : "FAILED") << " (" << failures
             << " uncovered pairs)\n";
    }
    if (!td_path.empty()) {
        if (graph_path.empty())
            throw std::runtime_error("--td requires --graph");
        GraphFile gf = parse_graph_file(graph_path);
        if (gf.directed) throw std::runtime_error("tree decompositions need undirected graphs");
        Graph g = to_graph(gf);
        TreeDecomposition td = parse_td(slurp(td_path));
        std::string err;
        try {
            validate_td(td, g);
        } catch (const std::exception& e) {
            err = e.what();
            ok = false;
        }
        doc["td"] = {{"file", td_path}, {"valid", err.empty()}, {"error", err}};
        text << "td " << td_path << ": " << (err.empty() ? "ok" : "FAILED: " + err) << "\n";
    }
    if (collection_path.empty() && td_path.empty())
        throw std::runtime_error("nothing to verify: pass --collection or --td");
    doc["answer"] = ok;
    emit(o, doc, text.str());
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"representative families toolkit"};
    app.require_subcommand(1);

    CommonOpts o;

    // repfam
    std::string family_path, matroid_spec, sense_str = "min";
    int q_flag = -1;
    auto* c_repfam = app.add_subcommand("repfam", "reduce a weighted set family");
    c_repfam->add_option("family", family_path, "family file")->required();
    c_repfam->add_option("--matroid", matroid_spec, "uniform:<n>:<k> or graphic:<file>")
        ->required();
    c_repfam->add_option("--q", q_flag, "representation budget (default: from file)");
    c_repfam->add_option("--sense", sense_str, "min or max")
        ->check(CLI::IsMember({"min", "max"}));
    add_common(c_repfam, o);

    // sepcol-build
    std::size_t sn = 0, sp = 0, sq = 0;
    std::string sep_out;
    auto* c_sep = app.add_subcommand("sepcol-build", "build a separating collection");
    c_sep->add_option("--n", sn, "universe size")->required();
    c_sep->add_option("--p", sp, "left size")->required();
    c_sep->add_option("--q", sq, "right size")->required();
    c_sep->add_option("--out", sep_out, "output file")->required();
    add_common(c_sep, o);

    // solvers
    std::string graph_path;
    std::size_t k = 0, k_max = 0;
    auto* c_kpath = app.add_subcommand("kpath", "path with at least k edges");
    c_kpath->add_option("graph", graph_path, "graph file")->required();
    c_kpath->add_option("--k", k, "path length (edges)")->required();
    add_common(c_kpath, o);

    auto* c_tour = app.add_subcommand("cheaptour", "cheapest path with k..k-max edges");
    c_tour->add_option("graph", graph_path, "graph file")->required();
    c_tour->add_option("--k", k, "minimum length (edges)")->required();
    c_tour->add_option("--k-max", k_max, "maximum length (default: k)");
    add_common(c_tour, o);

    auto* c_cycle = app.add_subcommand("cycle", "directed cycle with at least k arcs");
    c_cycle->add_option("graph", graph_path, "digraph file")->required();
    c_cycle->add_option("--k", k, "cycle length (arcs)")->required();
    add_common(c_cycle, o);

    std::string td_path;
    std::vector<std::size_t> terminals;
    auto* c_steiner = app.add_subcommand("steiner", "minimum Steiner tree via tree decomposition");
    c_steiner->add_option("graph", graph_path, "graph file")->required();
    c_steiner->add_option("--td", td_path, "tree decomposition (.td)")->required();
    c_steiner->add_option("--terminals", terminals, "terminal vertices (1-based)")
        ->required()
        ->delimiter(',');
    add_common(c_steiner, o);

    bool weighted = false;
    auto* c_meg = app.add_subcommand("meg", "minimum equivalent subdigraph");
    c_meg->add_option("graph", graph_path, "digraph file")->required();
    c_meg->add_flag("--weighted", weighted, "minimize total arc weight");
    add_common(c_meg, o);

    std::string tree_path;
    auto* c_ktree = app.add_subcommand("ktree", "embed a k-vertex tree");
    c_ktree->add_option("graph", graph_path, "host graph file")->required();
    c_ktree->add_option("--tree", tree_path, "pattern tree file")->required();
    add_common(c_ktree, o);

    std::string v_collection, v_td, v_graph;
    auto* c_verify = app.add_subcommand("verify", "check artifacts exhaustively");
    c_verify->add_option("--collection", v_collection, "separating collection file");
    c_verify->add_option("--td", v_td, "tree decomposition file");
    c_verify->add_option("--graph", v_graph, "graph for --td");
    add_common(c_verify, o);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_repfam->parsed())
            return run_repfam(o, family_path, matroid_spec, q_flag, sense_str);
        if (c_sep->parsed()) return run_sepcol_build(o, sn, sp, sq, sep_out);
        if (c_kpath->parsed()) return run_kpath(o, graph_path, k);
        if (c_tour->parsed()) return run_cheaptour(o, graph_path, k, k_max);
        if (c_cycle->parsed()) return run_cycle(o, graph_path, k);
        if (c_steiner->parsed()) return run_steiner(o, graph_path, td_path, terminals);
        if (c_meg->parsed()) return run_meg(o, graph_path, weighted);
        if (c_ktree->parsed()) return run_ktree(o, graph_path, tree_path);
        if (c_verify->parsed()) return run_verify(o, v_collection, v_td, v_graph);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
