#include "pants/pgraph.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pants/canonical.hpp"

namespace pants {

int PGraph::valence(int v) const {
    int out = 0;
    for (const auto& e : edges) {
        if (e.a == v) ++out;
        if (e.b == v) ++out;
    }
    return out;
}

std::vector<int> PGraph::leaves() const {
    std::vector<int> out;
    for (int v = 0; v < vertices; ++v)
        if (valence(v) == 1) out.push_back(v);
    return out;
}

std::vector<int> PGraph::trivalent() const {
    std::vector<int> out;
    for (int v = 0; v < vertices; ++v)
        if (valence(v) == 3) out.push_back(v);
    return out;
}

int PGraph::betti() const {
    // connected components via union-find
    std::vector<int> up(vertices);
    for (int v = 0; v < vertices; ++v) up[v] = v;
    auto find = [&](int x) {
        while (up[x] != x) x = up[x] = up[up[x]];
        return x;
    };
    for (const auto& e : edges) up[find(e.a)] = find(e.b);
    int comps = 0;
    for (int v = 0; v < vertices; ++v)
        if (find(v) == v) ++comps;
    return static_cast<int>(edges.size()) - vertices + comps;
}

int PGraph::find_edge(const std::string& id) const {
    for (int i = 0; i < static_cast<int>(edges.size()); ++i)
        if (edges[i].id == id) return i;
    return -1;
}

void PGraph::validate() const {
    for (const auto& e : edges)
        if (e.a < 0 || e.a >= vertices || e.b < 0 || e.b >= vertices)
            fail(Err::InvalidIncidence, "edge endpoint out of range");
    for (int v = 0; v < vertices; ++v) {
        int k = valence(v);
        if (k != 1 && k != 3)
            fail(Err::InvalidIncidence, "vertex " + std::to_string(v) + " has valence " +
                                            std::to_string(k));
    }
}

PGraph pgraph_from_decomposition(const std::vector<Pants3>& pants,
                                 std::optional<SurfaceType> expect) {
    PGraph g;
    g.vertices = static_cast<int>(pants.size());
    std::map<std::string, std::vector<int>> slots;
    for (int p = 0; p < static_cast<int>(pants.size()); ++p)
        for (const auto& label : pants[p]) slots[label].push_back(p);
    for (const auto& [label, where] : slots) {
        if (where.size() == 2) {
            g.edges.push_back({where[0], where[1], label});
        } else if (where.size() == 1) {
            g.edges.push_back({where[0], g.vertices, label});
            g.vertices += 1;
        } else {
            fail(Err::InvalidIncidence, "label " + label + " appears on " +
                                            std::to_string(where.size()) + " slots");
        }
    }
    g.validate();
    if (expect) {
        Census c = decomposition_census(*expect);
        if (static_cast<int>(pants.size()) != c.pants ||
            static_cast<int>(g.leaves().size()) != expect->boundaries)
            fail(Err::InvalidIncidence, "incidence does not fit " + to_string(*expect));
    }
    return g;
}

int ReebGraph::valence(int v) const {
    int out = 0;
    for (const auto& [a, b] : edges) {
        if (a == v) ++out;
        if (b == v) ++out;
    }
    return out;
}

PGraph reeb_to_pgraph(const ReebGraph& g) {
    const int n = static_cast<int>(g.tags.size());
    for (int v = 0; v < n; ++v) {
        int k = g.valence(v);
        bool leaf_tag = g.tags[v] == ReebGraph::Tag::Boundary || g.tags[v] == ReebGraph::Tag::Extremal;
        if (k == 1 && !leaf_tag)
            fail(Err::InvalidTags, "valence-one vertex tagged as a saddle");
        if (k == 3 && leaf_tag) fail(Err::InvalidTags, "valence-three vertex tagged as a leaf");
        if (k != 1 && k != 3) fail(Err::InvalidTags, "vertex of valence " + std::to_string(k));
    }

    // work on an edge list with erasable entries
    struct E {
        int a, b;
        bool alive = true;
    };
    std::vector<E> edges;
    for (auto [a, b] : g.edges) edges.push_back({a, b});
    std::vector<char> alive(n, 1);
    std::vector<ReebGraph::Tag> tags = g.tags;

    auto valence_of = [&](int v) {
        int out = 0;
        for (const auto& e : edges)
            if (e.alive) {
                if (e.a == v) ++out;
                if (e.b == v) ++out;
            }
        return out;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        // prune extremal leaves
        for (int v = 0; v < n; ++v) {
            if (!alive[v] || tags[v] != ReebGraph::Tag::Extremal) continue;
            if (valence_of(v) != 1) continue;
            for (auto& e : edges)
                if (e.alive && (e.a == v || e.b == v)) e.alive = false;
            alive[v] = 0;
            changed = true;
        }
        // smooth valence-two saddles
        for (int v = 0; v < n; ++v) {
            if (!alive[v] || valence_of(v) != 2) continue;
            std::vector<int> incident;
            for (int i = 0; i < static_cast<int>(edges.size()); ++i)
                if (edges[i].alive && (edges[i].a == v || edges[i].b == v)) incident.push_back(i);
            if (incident.size() == 1) {
                // a loop at v: the component closes into a circle
                fail(Err::InvalidTags, "smoothing closes a circle; not a pants decomposition");
            }
            int i = incident[0], j = incident[1];
            int u = edges[i].a == v ? edges[i].b : edges[i].a;
            int w = edges[j].a == v ? edges[j].b : edges[j].a;
            edges[i] = {u, w, true};
            edges[j].alive = false;
            alive[v] = 0;
            changed = true;
        }
    }
    for (int v = 0; v < n; ++v)
        if (alive[v] && tags[v] == ReebGraph::Tag::TrivialSaddle)
            fail(Err::InvalidTags, "trivial saddle survived pruning");

    // compact
    std::vector<int> remap(n, -1);
    PGraph out;
    for (int v = 0; v < n; ++v)
        if (alive[v]) remap[v] = out.vertices++;
    int id = 0;
    for (const auto& e : edges)
        if (e.alive) out.edges.push_back({remap[e.a], remap[e.b], "e" + std::to_string(id++)});
    out.validate();
    return out;
}

namespace {

// the half-edges at v other than edge `skip`, in deterministic order
std::vector<std::pair<int, int>> branches_at(const PGraph& g, int v, int skip) {
    std::vector<std::pair<int, int>> out; // (edge index, endpoint: 0=a, 1=b)
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
        if (i == skip) continue;
        if (g.edges[i].a == v) out.push_back({i, 0});
        if (g.edges[i].b == v) out.push_back({i, 1});
    }
    return out;
}

} // namespace

std::string toggle_prime(const std::string& id) {
    if (!id.empty() && id.back() == '\'') return id.substr(0, id.size() - 1);
    return id + "'";
}

PGraph hi_move(const PGraph& g, int edge_index, int pairing) {
    if (edge_index < 0 || edge_index >= static_cast<int>(g.edges.size()))
        fail(Err::NotEligible, "no such edge");
    const PGraph::Edge e = g.edges[edge_index];
    if (e.a == e.b) fail(Err::NotEligible, "loop edges carry no H-I move");
    if (g.valence(e.a) != 3 || g.valence(e.b) != 3)
        fail(Err::NotEligible, "H-I moves need two trivalent endpoints");

    auto left = branches_at(g, e.a, edge_index);
    auto right = branches_at(g, e.b, edge_index);
    if (left.size() != 2 || right.size() != 2) fail(Err::NotEligible, "bad branch count");
    if (pairing) std::swap(right[0], right[1]);

    PGraph out = g;
    // reuse the vertex ids of the removed endpoints for the new pair
    int w1 = e.a, w2 = e.b;
    out.edges[edge_index].id = toggle_prime(e.id);
    out.edges[edge_index].a = w1;
    out.edges[edge_index].b = w2;
    auto attach = [&](std::pair<int, int> half, int to) {
        if (half.second == 0)
            out.edges[half.first].a = to;
        else
            out.edges[half.first].b = to;
    };
    attach(left[0], w1);
    attach(right[0], w1);
    attach(left[1], w2);
    attach(right[1], w2);
    out.validate();
    return out;
}

PGraph hourglass_move(const PGraph& g, int vertex) {
    int loop = -1;
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i)
        if (g.edges[i].a == vertex && g.edges[i].b == vertex) loop = i;
    if (loop < 0) fail(Err::NotEligible, "hourglass moves need a loop at the vertex");
    PGraph out = g;
    out.edges[loop].id = toggle_prime(out.edges[loop].id);
    out.validate();
    return out;
}

std::string pgraph_certificate(const PGraph& g) {
    ColoredGraph cg;
    std::vector<int> nodes;
    for (int v = 0; v < g.vertices; ++v) nodes.push_back(cg.add_node("V"));
    for (const auto& e : g.edges) cg.add_edge(nodes[e.a], nodes[e.b]);
    return cg.certificate();
}

bool pgraph_isomorphic(const PGraph& a, const PGraph& b) {
    return pgraph_certificate(a) == pgraph_certificate(b);
}

namespace {

LocalPModel::Critical critical_for(const PGraph& g, const PGraphMove& mv, int edge_index) {
    LocalPModel::Critical crit;
    if (mv.kind == MoveKind::A) {
        // contract the dying edge: its endpoints merge into a valence-four
        // stack vertex
        const PGraph::Edge e = g.edges[edge_index];
        PGraph almost;
        std::vector<int> remap(g.vertices, -1);
        int merged = 0;
        for (int v = 0; v < g.vertices; ++v) {
            if (v == e.b) continue;
            remap[v] = merged++;
        }
        remap[e.b] = remap[e.a];
        almost.vertices = merged;
        for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
            if (i == edge_index) continue;
            almost.edges.push_back({remap[g.edges[i].a], remap[g.edges[i].b], g.edges[i].id});
        }
        crit.graph = almost;
        crit.stack_vertex = remap[e.a];
        crit.valence = 4;
    } else {
        // the loop collapses; its vertex becomes the valence-two stack vertex
        PGraph almost = g;
        almost.edges.erase(almost.edges.begin() + edge_index);
        crit.graph = almost;
        crit.stack_vertex = g.edges[edge_index].a;
        crit.valence = 2;
    }
    return crit;
}

} // namespace

LocalPModel stack_from_moves(const std::vector<PGraphMove>& moves, const PGraph& g0) {
    LocalPModel model;
    PGraph cur = g0;
    model.levels.push_back({cur, std::nullopt});
    for (std::size_t i = 0; i < moves.size(); ++i) {
        const PGraphMove& mv = moves[i];
        int e = cur.find_edge(mv.old_edge);
        if (e < 0) fail(Err::IllegalMove, "no edge named " + mv.old_edge + " at level " +
                                              std::to_string(i));
        LocalPModel::Critical crit = critical_for(cur, mv, e);
        PGraph next;
        if (mv.kind == MoveKind::A) {
            next = hi_move(cur, e, mv.pairing);
        } else {
            if (cur.edges[e].a != cur.edges[e].b)
                fail(Err::IllegalMove, "S-moves act on loops");
            next = hourglass_move(cur, cur.edges[e].a);
        }
        next.edges[next.find_edge(toggle_prime(mv.old_edge))].id = mv.new_edge;
        model.stack_vertices.push_back({static_cast<int>(model.levels.size()), crit.valence});
        model.levels.push_back({std::nullopt, std::move(crit)});
        model.levels.push_back({next, std::nullopt});
        cur = std::move(next);
    }
    return model;
}

LocalPModel stack_from_word(const MoveWord& w, const PGraph& g0) {
    std::vector<PGraphMove> moves;
    PGraph cur = g0;
    for (const auto& letter : w) {
        PGraphMove mv;
        mv.kind = letter.kind;
        std::vector<int> eligible;
        for (int i = 0; i < static_cast<int>(cur.edges.size()); ++i) {
            const auto& e = cur.edges[i];
            bool is_loop = e.a == e.b;
            if (letter.kind == MoveKind::S && is_loop) eligible.push_back(i);
            if (letter.kind == MoveKind::A && !is_loop && cur.valence(e.a) == 3 &&
                cur.valence(e.b) == 3)
                eligible.push_back(i);
        }
        if (eligible.size() != 1)
            fail(Err::IllegalMove, std::string("letter ") + to_string(letter) +
                                       " has no unique site; pass explicit moves");
        mv.old_edge = cur.edges[eligible[0]].id;
        mv.new_edge = letter.to ? to_string(*letter.to) : toggle_prime(mv.old_edge);
        moves.push_back(mv);
        // advance
        LocalPModel step = stack_from_moves({mv}, cur);
        cur = *step.levels.back().regular;
    }
    return stack_from_moves(moves, g0);
}

std::vector<PGraphMove> pgraph_moves(const PantsPath& path) {
    std::vector<PGraphMove> out;
    PGraph cur = pgraph_from_decomposition(path.levels.front());
    for (std::size_t t = 0; t < path.moves.size(); ++t) {
        if (!path.moves[t]) continue;
        PGraphMove mv;
        mv.kind = path.moves[t]->kind;
        mv.old_edge = path.moves[t]->old_curve;
        mv.new_edge = path.moves[t]->new_curve;
        PGraph next = pgraph_from_decomposition(path.levels[t + 1]);
        if (mv.kind == MoveKind::A) {
            // pick the pairing reproducing the next level, comparing labeled
            // incidence: every edge keyed by the id multisets at its ends
            auto labeled_key = [](const PGraph& g) {
                std::vector<std::string> sig(g.vertices);
                for (int v = 0; v < g.vertices; ++v) {
                    std::vector<std::string> ids;
                    for (const auto& ed : g.edges) {
                        if (ed.a == v) ids.push_back(ed.id);
                        if (ed.b == v) ids.push_back(ed.id);
                    }
                    std::sort(ids.begin(), ids.end());
                    for (auto& s : ids) sig[v] += s + ",";
                }
                std::vector<std::string> recs;
                for (const auto& ed : g.edges)
                    recs.push_back(ed.id + "[" + std::min(sig[ed.a], sig[ed.b]) + "|" +
                                   std::max(sig[ed.a], sig[ed.b]) + "]");
                std::sort(recs.begin(), recs.end());
                std::string out;
                for (auto& s : recs) out += s + ";";
                return out;
            };
            int e = cur.find_edge(mv.old_edge);
            if (e < 0) fail(Err::IllegalMove, "path does not follow its own moves");
            std::string want = labeled_key(next);
            for (int pairing = 0; pairing < 2; ++pairing) {
                PGraph candidate = hi_move(cur, e, pairing);
                candidate.edges[candidate.find_edge(toggle_prime(mv.old_edge))].id = mv.new_edge;
                mv.pairing = pairing;
                if (labeled_key(candidate) == want) break;
            }
        }
        out.push_back(mv);
        cur = next;
    }
    return out;
}

nlohmann::ordered_json to_json(const PGraph& g) {
    nlohmann::ordered_json j;
    j["vertices"] = g.vertices;
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : g.edges) j["edges"].push_back({e.a, e.b, e.id});
    return j;
}

std::string to_dot(const PGraph& g) {
    std::ostringstream os;
    os << "graph pgraph {\n";
    for (int v = 0; v < g.vertices; ++v)
        os << "  v" << v << " [shape=" << (g.valence(v) == 1 ? "circle" : "point") << "];\n";
    for (const auto& e : g.edges)
        os << "  v" << e.a << " -- v" << e.b << " [label=\"" << e.id << "\"];\n";
    os << "}\n";
    return os.str();
}

} // namespace pants
