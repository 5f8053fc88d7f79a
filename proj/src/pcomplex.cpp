#include "pants/pcomplex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pants/canonical.hpp"
#include "pants/walkmodel.hpp"

namespace pants {

using json = nlohmann::ordered_json;
using namespace walkmodel;
using VKind = PComplex::VKind;

void PComplex::validate() const {
    const int nc = static_cast<int>(cells.size());
    const int ne = static_cast<int>(edges.size());
    for (const auto& e : edges)
        for (int c : e.cells)
            if (c < 0 || c >= nc) fail(Err::InvalidComplex, "edge cell out of range");
    for (const auto& v : vertices) {
        std::size_t want = v.kind == VKind::IIIS ? 1 : 2;
        if (v.bottom_edges.size() != want || v.top_edges.size() != want)
            fail(Err::InvalidComplex, "vertex face count does not fit its kind");
        for (const auto* faces : {&v.bottom_edges, &v.top_edges})
            for (int e : *faces)
                if (e < 0 || e >= ne) fail(Err::InvalidComplex, "vertex edge out of range");
    }
    for (const auto& c : cells) {
        for (const LinkEnd* end : {&c.birth, &c.death})
            if (end->kind == LinkEnd::Kind::Block &&
                (end->index < 0 || end->index >= static_cast<int>(vertices.size())))
                fail(Err::InvalidComplex, "cell end vertex out of range");
        if (c.cyclic && (c.birth.kind != LinkEnd::Kind::Seam || c.death.kind != LinkEnd::Kind::Seam))
            fail(Err::InvalidComplex, "cyclic cell with non-seam ends");
    }
}

PComplex pcomplex_from_blocks(const BlockDecomposition& bd) {
    PComplex pc;
    for (const auto& comp : bd.link)
        pc.cells.push_back({comp.label, comp.birth, comp.death, comp.cyclic});
    for (const auto& rec : bd.pants) {
        PComplex::Edge e;
        e.cells = rec.cuffs;
        std::sort(e.cells.begin(), e.cells.end());
        pc.edges.push_back(e);
    }
    for (const auto& blk : bd.blocks) {
        PComplex::Vertex v;
        v.kind = blk.kind == BlockKind::S11 ? VKind::IIIS : VKind::IIIA;
        v.bottom_edges = blk.bottom_pants;
        v.top_edges = blk.top_pants;
        std::sort(v.bottom_edges.begin(), v.bottom_edges.end());
        std::sort(v.top_edges.begin(), v.top_edges.end());
        pc.vertices.push_back(v);
    }
    pc.validate();
    return pc;
}

namespace {

// the moved cells of a vertex, read off its faces
struct VMoved {
    int old_cell = -1, new_cell = -1;
};

int doubled_cell(const PComplex& pc, int edge) {
    const auto& c = pc.edges[edge].cells;
    if (c[0] == c[1]) return c[0];
    if (c[1] == c[2]) return c[1];
    return -1;
}

std::vector<int> common_cells(const PComplex& pc, int e1, int e2) {
    std::vector<int> out;
    for (int c : pc.edges[e1].cells)
        for (int d : pc.edges[e2].cells)
            if (c == d && !std::count(out.begin(), out.end(), c)) out.push_back(c);
    return out;
}

VMoved vertex_moved(const PComplex& pc, int v) {
    const auto& vx = pc.vertices[v];
    VMoved m;
    // two shared cells can occur (a one-holed-torus-with-two-boundaries
    // shape); the ends disambiguate which one the vertex moves
    auto settle = [&](std::vector<int> cands, bool want_death) {
        if (cands.size() == 1) return cands[0];
        for (int c : cands) {
            const LinkEnd& end = want_death ? pc.cells[c].death : pc.cells[c].birth;
            if (end == LinkEnd{LinkEnd::Kind::Block, v}) return c;
        }
        return -1;
    };
    if (vx.kind == VKind::IIIS) {
        m.old_cell = doubled_cell(pc, vx.bottom_edges[0]);
        m.new_cell = doubled_cell(pc, vx.top_edges[0]);
    } else {
        m.old_cell = settle(common_cells(pc, vx.bottom_edges[0], vx.bottom_edges[1]), true);
        m.new_cell = settle(common_cells(pc, vx.top_edges[0], vx.top_edges[1]), false);
    }
    if (m.old_cell < 0 || m.new_cell < 0)
        fail(Err::InvalidComplex, "cannot read the moved cells of vertex " + std::to_string(v));
    return m;
}

std::vector<std::vector<char>> edge_order(const PComplex& pc) {
    const int n = static_cast<int>(pc.edges.size());
    std::vector<std::vector<char>> before(n, std::vector<char>(n, 0));
    for (const auto& v : pc.vertices)
        for (int lo : v.bottom_edges)
            for (int hi : v.top_edges) before[lo][hi] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (before[i][k])
                for (int j = 0; j < n; ++j)
                    if (before[k][j]) before[i][j] = 1;
    return before;
}

} // namespace

BlockDecomposition blocks_from_pcomplex(const PComplex& pc) {
    pc.validate();
    BlockDecomposition bd;
    for (const auto& c : pc.cells) {
        LinkComp comp;
        comp.label = c.label;
        comp.birth = c.birth;
        comp.death = c.death;
        comp.cyclic = c.cyclic;
        bd.link.push_back(comp);
    }
    for (const auto& e : pc.edges) {
        PantsRec rec;
        rec.cuffs = e.cells;
        bd.pants.push_back(rec);
    }
    for (int v = 0; v < static_cast<int>(pc.vertices.size()); ++v) {
        const auto& vx = pc.vertices[v];
        VMoved moved = vertex_moved(pc, v);
        PantsBlock blk;
        blk.kind = vx.kind == VKind::IIIS ? BlockKind::S11 : BlockKind::S04;
        blk.bottom_pants = vx.bottom_edges;
        blk.top_pants = vx.top_edges;
        blk.old_curve = moved.old_cell;
        blk.new_curve = moved.new_cell;
        blk.bottom_level = v;
        blk.top_level = v + 1;
        std::vector<int> loops;
        for (int e : vx.bottom_edges)
            for (int c : pc.edges[e].cells) loops.push_back(c);
        auto first = std::find(loops.begin(), loops.end(), moved.old_cell);
        if (first == loops.end()) fail(Err::InvalidComplex, "moved cell misses a slot");
        loops.erase(first);
        auto second = std::find(loops.begin(), loops.end(), moved.old_cell);
        if (second == loops.end()) fail(Err::InvalidComplex, "moved cell misses a slot");
        loops.erase(second);
        loops.push_back(moved.old_cell);
        loops.push_back(moved.new_cell);
        std::sort(loops.begin(), loops.end());
        blk.loops = std::move(loops);
        bd.blocks.push_back(blk);
    }
    bd.validate(false);
    return bd;
}

int cell_euler_characteristic(const PComplex::Cell& c) {
    // the cell is swept by an arc over its life: a square polygon. A
    // seam-closed curve identifies the bottom and top edges, losing two
    // corners and one edge.
    int v = 4, e = 4, f = 1;
    if (c.cyclic) {
        v -= 2;
        e -= 1;
    }
    return v - e + f;
}

bool validate_disk_cells(const PComplex& pc) {
    for (const auto& c : pc.cells)
        if (cell_euler_characteristic(c) != 1) return false;
    return true;
}

// ---------------------------------------------------------------------------
// moves, natively on the complex

namespace {

Key cell_base_key(const PComplex& pc, int cell) {
    return parse_key(curve_base(pc.cells[cell].label));
}

struct CModel {
    AmbientSupport sup;
    std::vector<DecompositionState> walk;
    std::vector<int> vertices;
    std::set<int> region_edges;
    std::vector<int> bottom_edges, top_edges;
    std::map<std::pair<std::string, int>, int> cell_of; // (base, old run) -> cell
};

std::vector<std::string> edge_bases(const PComplex& pc, int e) {
    std::vector<std::string> out;
    for (int c : pc.edges[e].cells) out.push_back(curve_base(pc.cells[c].label));
    return out;
}

std::optional<CModel> try_cmodel(const PComplex& pc, const std::vector<int>& vertices,
                                 const AmbientSupport& sup,
                                 const std::vector<DecompositionState>& walk,
                                 const std::vector<int>& preset_edges = {}) {
    CModel m;
    m.sup = sup;
    m.walk = walk;
    m.vertices = vertices;

    Sim sim;
    try {
        sim = simulate(sup, walk);
    } catch (const Error&) {
        return std::nullopt;
    }
    if (sim.moves.size() != vertices.size()) return std::nullopt;

    auto runs = base_runs(sup, walk);
    std::map<int, int> edge_of_cls;
    std::set<int> used;
    auto bind = [&](int cls, int e) {
        auto it = edge_of_cls.find(cls);
        if (it != edge_of_cls.end()) return it->second == e;
        if (used.count(e)) return false;
        Pants3 want = sim.classes[cls].cuffs;
        auto got = edge_bases(pc, e);
        std::sort(got.begin(), got.end());
        if (!std::equal(want.begin(), want.end(), got.begin())) return false;
        edge_of_cls[cls] = e;
        used.insert(e);
        return true;
    };
    auto bind_face = [&](const std::vector<int>& clss, const std::vector<int>& es) {
        if (clss.size() != es.size()) return false;
        if (clss.size() == 1) return bind(clss[0], es[0]);
        auto sm = edge_of_cls;
        auto su = used;
        if (bind(clss[0], es[0]) && bind(clss[1], es[1])) return true;
        edge_of_cls = sm;
        used = su;
        return bind(clss[0], es[1]) && bind(clss[1], es[0]);
    };

    if (vertices.empty()) {
        if (sim.levels.size() != 1) return std::nullopt;
        std::vector<int> clss = sim.cls_at[0];
        if (clss.size() != preset_edges.size()) return std::nullopt;
        std::vector<int> es = preset_edges;
        std::sort(es.begin(), es.end());
        do {
            edge_of_cls.clear();
            used.clear();
            bool ok = true;
            for (std::size_t i = 0; i < clss.size() && ok; ++i) ok = bind(clss[i], es[i]);
            if (ok) break;
        } while (std::next_permutation(es.begin(), es.end()));
        if (edge_of_cls.size() != clss.size()) return std::nullopt;
    } else {
        for (std::size_t s = 0; s < vertices.size(); ++s) {
            const auto& vx = pc.vertices[vertices[s]];
            const PathMove& mv = sim.moves[s];
            if ((mv.kind == MoveKind::S) != (vx.kind == VKind::IIIS)) return std::nullopt;
            VMoved moved = vertex_moved(pc, vertices[s]);
            if (curve_base(pc.cells[moved.old_cell].label) != mv.old_curve) return std::nullopt;
            if (curve_base(pc.cells[moved.new_cell].label) != mv.new_curve) return std::nullopt;
            std::vector<int> bot_cls, top_cls;
            for (std::size_t i = 0; i < sim.levels[s].size(); ++i)
                if (std::count(sim.levels[s][i].begin(), sim.levels[s][i].end(), mv.old_curve))
                    bot_cls.push_back(sim.cls_at[s][i]);
            for (std::size_t i = 0; i < sim.levels[s + 1].size(); ++i)
                if (std::count(sim.levels[s + 1][i].begin(), sim.levels[s + 1][i].end(),
                               mv.new_curve))
                    top_cls.push_back(sim.cls_at[s + 1][i]);
            if (!bind_face(bot_cls, vx.bottom_edges)) return std::nullopt;
            if (!bind_face(top_cls, vx.top_edges)) return std::nullopt;
        }
        if (edge_of_cls.size() != sim.classes.size()) {
            auto order = edge_order(pc);
            for (std::size_t cls = 0; cls < sim.classes.size(); ++cls) {
                if (edge_of_cls.count(static_cast<int>(cls))) continue;
                bool found = false;
                for (int e = 0; e < static_cast<int>(pc.edges.size()) && !found; ++e) {
                    if (used.count(e)) continue;
                    bool compatible = true;
                    for (const auto& [c2, e2] : edge_of_cls)
                        if (order[e][e2] || order[e2][e]) compatible = false;
                    if (compatible && bind(static_cast<int>(cls), e)) found = true;
                }
                if (!found) return std::nullopt;
            }
        }
    }

    for (std::size_t s = 0; s < vertices.size(); ++s) {
        const PathMove& mv = sim.moves[s];
        VMoved moved = vertex_moved(pc, vertices[s]);
        int old_run = run_index(runs.at(mv.old_curve), static_cast<int>(s));
        int new_run = run_index(runs.at(mv.new_curve), static_cast<int>(s) + 1);
        if (old_run < 0 || new_run < 0) return std::nullopt;
        auto o = m.cell_of.insert({{mv.old_curve, old_run}, moved.old_cell});
        if (!o.second && o.first->second != moved.old_cell) return std::nullopt;
        auto n = m.cell_of.insert({{mv.new_curve, new_run}, moved.new_cell});
        if (!n.second && n.first->second != moved.new_cell) return std::nullopt;
    }
    for (const auto& [cls, e] : edge_of_cls) {
        std::map<std::string, std::vector<int>> cells_by_base;
        for (int c : pc.edges[e].cells) cells_by_base[curve_base(pc.cells[c].label)].push_back(c);
        std::map<std::string, int> count;
        for (const auto& b : sim.classes[cls].cuffs) count[b]++;
        for (const auto& [base, want] : count) {
            auto it = cells_by_base.find(base);
            if (it == cells_by_base.end() || static_cast<int>(it->second.size()) != want)
                return std::nullopt;
            for (int c : it->second)
                if (c != it->second[0]) return std::nullopt;
            int run = run_index(runs.at(base), sim.classes[cls].lo);
            if (run < 0) return std::nullopt;
            auto ins = m.cell_of.insert({{base, run}, it->second[0]});
            if (!ins.second && ins.first->second != it->second[0]) return std::nullopt;
        }
    }

    const int top = static_cast<int>(walk.size()) - 1;
    m.bottom_edges.resize(sim.cls_at[0].size());
    for (std::size_t i = 0; i < sim.cls_at[0].size(); ++i)
        m.bottom_edges[i] = edge_of_cls.at(sim.cls_at[0][i]);
    m.top_edges.resize(sim.cls_at[top].size());
    for (std::size_t i = 0; i < sim.cls_at[top].size(); ++i)
        m.top_edges[i] = edge_of_cls.at(sim.cls_at[top][i]);
    for (const auto& [cls, e] : edge_of_cls) m.region_edges.insert(e);
    return m;
}

std::optional<CModel> match_cchain(const PComplex& pc, const std::vector<int>& verts) {
    if (verts.empty()) return std::nullopt;
    for (int v : verts)
        if (v < 0 || v >= static_cast<int>(pc.vertices.size())) return std::nullopt;
    std::set<int> uniq(verts.begin(), verts.end());
    if (uniq.size() != verts.size()) return std::nullopt;

    std::vector<Key> olds, news;
    for (int v : verts) {
        VMoved moved = vertex_moved(pc, v);
        olds.push_back(cell_base_key(pc, moved.old_cell));
        news.push_back(cell_base_key(pc, moved.new_cell));
    }
    KeyType t = olds[0].type;
    if (t == KeyType::Plain) return std::nullopt;
    std::string sup_id = olds[0].support;
    for (std::size_t i = 0; i < verts.size(); ++i)
        if (olds[i].type != t || news[i].type != t || olds[i].support != sup_id ||
            news[i].support != sup_id)
            return std::nullopt;

    AmbientSupport sup;
    sup.id = sup_id;
    std::vector<DecompositionState> walk;
    if (t == KeyType::SlopeKey) {
        bool all_s = true, all_a = true;
        for (int v : verts) {
            all_s = all_s && pc.vertices[v].kind == VKind::IIIS;
            all_a = all_a && pc.vertices[v].kind == VKind::IIIA;
        }
        if (!all_s && !all_a) return std::nullopt;
        sup.kind = all_s ? SupportKind::S11 : SupportKind::S04;
        walk.push_back(DecompositionState::slope(olds[0].slope));
        for (std::size_t i = 0; i < verts.size(); ++i) {
            if (i > 0 && vertex_moved(pc, verts[i]).old_cell != vertex_moved(pc, verts[i - 1]).new_cell)
                return std::nullopt;
            walk.push_back(DecompositionState::slope(news[i].slope));
        }
    } else {
        sup.kind = t == KeyType::Gamma ? SupportKind::S05 : SupportKind::S12;
        const int mod = t == KeyType::Gamma ? 5 : 6;
        std::vector<CycleStep> steps;
        for (std::size_t i = 0; i < verts.size(); ++i) {
            auto st = cycle_step(sup.kind, olds[i].index, news[i].index);
            if (!st) return std::nullopt;
            steps.push_back(*st);
        }
        walk.push_back(cycle_state(sup.kind, steps[0].state));
        int cur = steps[0].state;
        for (std::size_t i = 0; i < steps.size(); ++i) {
            if (steps[i].state != cur) return std::nullopt;
            cur = (cur + (steps[i].fwd ? 1 : mod - 1)) % mod;
            walk.push_back(cycle_state(sup.kind, cur));
        }
    }

    const auto& v0 = pc.vertices[verts[0]];
    auto strip = [&](int e, const std::string& skip, int skips) {
        std::vector<std::string> out;
        for (const auto& x : edge_bases(pc, e)) {
            if (x == skip && skips > 0) {
                --skips;
                continue;
            }
            out.push_back(x);
        }
        return out;
    };

    std::vector<std::vector<std::string>> assignments;
    if (sup.kind == SupportKind::S11) {
        auto bs = strip(v0.bottom_edges[0], olds[0].base, 2);
        if (bs.size() != 1) return std::nullopt;
        assignments.push_back(bs);
    } else if (sup.kind == SupportKind::S04) {
        std::vector<std::string> slots;
        for (int e : v0.bottom_edges)
            for (const auto& x : strip(e, olds[0].base, 1)) slots.push_back(x);
        if (slots.size() != 4) return std::nullopt;
        assignments = boundary_orderings(slots, 4);
    } else if (sup.kind == SupportKind::S12) {
        std::set<std::string> curve_bases;
        for (std::size_t s = 0; s < walk.size(); ++s)
            for (const auto& c : support_curves(sup, walk[s])) curve_bases.insert(c);
        std::set<std::string> bset;
        for (int v : verts)
            for (int e : pc.vertices[v].bottom_edges)
                for (const auto& x : edge_bases(pc, e))
                    if (!curve_bases.count(x)) bset.insert(x);
        std::vector<std::string> bs(bset.begin(), bset.end());
        if (bs.size() == 2) {
            assignments.push_back({bs[0], bs[1]});
            assignments.push_back({bs[1], bs[0]});
        } else if (bs.size() == 1) {
            assignments.push_back({bs[0], bs[0]});
        }
    } else {
        int k0 = walk[0].index();
        std::string u_base = pentagon_curve(sup.id, 2 * k0);
        std::string v_base = pentagon_curve(sup.id, 2 * k0 + 2);
        auto has_base = [&](int e, const std::string& b) {
            auto bs = edge_bases(pc, e);
            return std::count(bs.begin(), bs.end(), b) > 0;
        };
        std::vector<int> thirds;
        if (verts.size() >= 2) {
            for (int e : pc.vertices[verts[1]].bottom_edges)
                if (!std::count(v0.top_edges.begin(), v0.top_edges.end(), e) &&
                    !std::count(v0.bottom_edges.begin(), v0.bottom_edges.end(), e))
                    thirds.push_back(e);
        }
        if (thirds.empty()) {
            const std::string other = olds[0].base == u_base ? v_base : u_base;
            auto order = edge_order(pc);
            for (int e = 0; e < static_cast<int>(pc.edges.size()); ++e) {
                if (std::count(v0.bottom_edges.begin(), v0.bottom_edges.end(), e)) continue;
                if (!has_base(e, other)) continue;
                bool compatible = true;
                for (int s : v0.bottom_edges)
                    if (order[e][s] || order[s][e]) compatible = false;
                if (compatible) thirds.push_back(e);
            }
        }
        for (int third : thirds) {
            std::vector<int> bottom = v0.bottom_edges;
            bottom.push_back(third);
            std::vector<std::vector<std::string>> u_cuffs, v_cuffs;
            for (int e : bottom) {
                if (has_base(e, u_base)) u_cuffs.push_back(edge_bases(pc, e));
                if (has_base(e, v_base)) v_cuffs.push_back(edge_bases(pc, e));
            }
            if (u_cuffs.size() != 2 || v_cuffs.size() != 2) continue;
            for (const auto& a : pentagon_positions(sup.id, k0, u_base, v_base, u_cuffs, v_cuffs)) {
                sup.boundary = a;
                if (auto m = try_cmodel(pc, verts, sup, walk)) return m;
            }
        }
        return std::nullopt;
    }

    for (const auto& a : assignments) {
        sup.boundary = a;
        if (auto m = try_cmodel(pc, verts, sup, walk)) return m;
    }
    return std::nullopt;
}

std::optional<CModel> match_cinsertion(const PComplex& pc, int cell, int ea, int eb) {
    if (cell < 0 || cell >= static_cast<int>(pc.cells.size())) return std::nullopt;
    if (ea < 0 || ea >= static_cast<int>(pc.edges.size()) || eb < 0 ||
        eb >= static_cast<int>(pc.edges.size()))
        return std::nullopt;
    Key key = cell_base_key(pc, cell);
    if (key.type == KeyType::Plain || pc.cells[cell].cyclic) return std::nullopt;
    auto slots_in = [&](int e) {
        return std::count(pc.edges[e].cells.begin(), pc.edges[e].cells.end(), cell);
    };
    if (ea == eb ? slots_in(ea) != 2 : (slots_in(ea) != 1 || slots_in(eb) != 1))
        return std::nullopt;

    AmbientSupport sup;
    sup.id = key.support;
    std::vector<int> base_edges{ea};
    if (eb != ea) base_edges.push_back(eb);

    if (key.type == KeyType::SlopeKey) {
        sup.kind = ea == eb ? SupportKind::S11 : SupportKind::S04;
        DecompositionState state = DecompositionState::slope(key.slope);
        std::vector<std::vector<std::string>> assignments;
        if (ea == eb) {
            std::vector<std::string> rest;
            int skips = 2;
            for (const auto& x : edge_bases(pc, ea))
                if (x == key.base && skips > 0)
                    --skips;
                else
                    rest.push_back(x);
            if (rest.size() != 1) return std::nullopt;
            assignments.push_back(rest);
        } else {
            std::vector<std::string> slots;
            for (int e : base_edges) {
                int skips = 1;
                for (const auto& x : edge_bases(pc, e))
                    if (x == key.base && skips > 0)
                        --skips;
                    else
                        slots.push_back(x);
            }
            if (slots.size() != 4) return std::nullopt;
            assignments = boundary_orderings(slots, 4);
        }
        for (const auto& a : assignments) {
            sup.boundary = a;
            if (auto m = try_cmodel(pc, {}, sup, {state}, base_edges)) return m;
        }
        return std::nullopt;
    }

    std::string other;
    for (int e : base_edges)
        for (const auto& x : edge_bases(pc, e)) {
            Key k2 = parse_key(x);
            if (k2.type == key.type && k2.support == key.support && x != key.base) other = x;
        }
    if (other.empty()) return std::nullopt;
    Key ok = parse_key(other);
    auto order = edge_order(pc);
    auto static_candidates = [&](const std::string& base) {
        std::vector<int> out;
        for (int e = 0; e < static_cast<int>(pc.edges.size()); ++e) {
            if (std::count(base_edges.begin(), base_edges.end(), e)) continue;
            auto bs = edge_bases(pc, e);
            if (!std::count(bs.begin(), bs.end(), base)) continue;
            bool compatible = true;
            for (int s : base_edges)
                if (order[e][s] || order[s][e]) compatible = false;
            if (compatible) out.push_back(e);
        }
        return out;
    };

    if (key.type == KeyType::Gamma) {
        sup.kind = SupportKind::S05;
        int i = key.index, j = ok.index;
        int k0;
        if ((i + 2) % 5 == j)
            k0 = (3 * i) % 5;
        else if ((j + 2) % 5 == i)
            k0 = (3 * j) % 5;
        else
            return std::nullopt;
        DecompositionState state = DecompositionState::pentagon(k0);
        std::string u_base = pentagon_curve(sup.id, 2 * k0);
        std::string v_base = pentagon_curve(sup.id, 2 * k0 + 2);
        auto has = [&](int e, const std::string& b) {
            auto bs = edge_bases(pc, e);
            return std::count(bs.begin(), bs.end(), b) > 0;
        };
        for (int e_static : static_candidates(other)) {
            std::vector<int> all = base_edges;
            all.push_back(e_static);
            std::vector<std::vector<std::string>> u_cuffs, v_cuffs;
            for (int e : all) {
                if (has(e, u_base)) u_cuffs.push_back(edge_bases(pc, e));
                if (has(e, v_base)) v_cuffs.push_back(edge_bases(pc, e));
            }
            if (u_cuffs.size() != 2 || v_cuffs.size() != 2) continue;
            for (const auto& a : pentagon_positions(sup.id, k0, u_base, v_base, u_cuffs, v_cuffs)) {
                sup.boundary = a;
                if (auto m = try_cmodel(pc, {}, sup, {state}, all)) return m;
            }
        }
        return std::nullopt;
    }

    sup.kind = SupportKind::S12;
    int i = key.index, j = ok.index;
    int k0;
    if ((i + 1) % 6 == j)
        k0 = i;
    else if ((j + 1) % 6 == i)
        k0 = j;
    else
        return std::nullopt;
    DecompositionState state = DecompositionState::hexagon(k0);
    std::vector<std::vector<int>> presets;
    if (base_edges.size() == 1) {
        for (int e_static : static_candidates(other)) {
            std::vector<int> all = base_edges;
            all.push_back(e_static);
            presets.push_back(all);
        }
    } else {
        presets.push_back(base_edges);
    }
    for (const auto& preset : presets) {
        std::set<std::string> bset;
        for (int e : preset)
            for (const auto& x : edge_bases(pc, e))
                if (x != key.base && x != other) bset.insert(x);
        std::vector<std::string> bs(bset.begin(), bset.end());
        std::vector<std::vector<std::string>> assigns;
        if (bs.size() == 2) {
            assigns.push_back({bs[0], bs[1]});
            assigns.push_back({bs[1], bs[0]});
        } else if (bs.size() == 1) {
            assigns.push_back({bs[0], bs[0]});
        }
        for (const auto& a : assigns) {
            sup.boundary = a;
            if (auto m = try_cmodel(pc, {}, sup, {state}, preset)) return m;
        }
    }
    return std::nullopt;
}

std::string fresh_cell_label(const PComplex& pc, const std::string& base,
                             std::set<std::string>& taken) {
    auto exists = [&](const std::string& label) {
        if (taken.count(label)) return true;
        for (const auto& c : pc.cells)
            if (c.label == label) return true;
        return false;
    };
    if (!exists(base)) {
        taken.insert(base);
        return base;
    }
    for (int k = 1;; ++k) {
        std::string lab = base + "#" + std::to_string(k);
        if (!exists(lab)) {
            taken.insert(lab);
            return lab;
        }
    }
}

PComplex crewrite(const PComplex& input, const CModel& model,
                  const std::vector<DecompositionState>& new_walk) {
    PComplex pc = input;
    Sim sim = simulate(model.sup, new_walk);
    auto new_runs = base_runs(model.sup, new_walk);
    auto old_runs = base_runs(model.sup, model.walk);
    const int new_top = static_cast<int>(new_walk.size()) - 1;
    const int old_top = static_cast<int>(model.walk.size()) - 1;

    std::map<int, LinkEnd> old_deaths;
    for (int c = 0; c < static_cast<int>(pc.cells.size()); ++c) old_deaths[c] = pc.cells[c].death;

    std::map<std::pair<std::string, int>, int> cell_new;
    std::vector<std::pair<int, int>> cell_merges, cell_splits;
    std::set<std::string> taken;
    for (const auto& [base, runs] : new_runs) {
        const int nold = static_cast<int>(old_runs.count(base) ? old_runs.at(base).size() : 0);
        int bottom = -1, top = -1;
        if (nold > 0) {
            if (old_runs.at(base).front().lo == 0) bottom = model.cell_of.at({base, 0});
            if (old_runs.at(base).back().hi == old_top) top = model.cell_of.at({base, nold - 1});
        }
        bool claimed = false;
        for (std::size_t r = 0; r < runs.size(); ++r) {
            bool at_bottom = runs[r].lo == 0;
            bool at_top = runs[r].hi == new_top;
            int cell = -1;
            if (at_bottom && bottom >= 0) {
                cell = bottom;
                claimed = true;
                if (at_top && top >= 0 && top != bottom) cell_merges.push_back({top, bottom});
            } else if (at_top && top >= 0 && (top != bottom || !claimed)) {
                cell = top;
            }
            if (cell < 0) {
                PComplex::Cell fresh;
                fresh.label = fresh_cell_label(pc, base, taken);
                pc.cells.push_back(fresh);
                cell = static_cast<int>(pc.cells.size()) - 1;
                if (at_top && top >= 0 && top == bottom && claimed) cell_splits.push_back({bottom, cell});
            }
            cell_new[{base, static_cast<int>(r)}] = cell;
        }
    }
    auto cell_at = [&](const std::string& base, int level) {
        return cell_new.at({base, run_index(new_runs.at(base), level)});
    };

    auto resolved = [&](int cls) {
        std::array<int, 3> cells;
        for (int k = 0; k < 3; ++k)
            cells[k] = cell_at(sim.classes[cls].cuffs[k], sim.classes[cls].lo);
        std::sort(cells.begin(), cells.end());
        return cells;
    };
    std::vector<int> edge_of_cls(sim.classes.size(), -1);
    std::vector<std::pair<int, int>> edge_merges;
    std::map<int, int> edge_replacements;
    for (std::size_t i = 0; i < sim.cls_at[0].size(); ++i)
        edge_of_cls[sim.cls_at[0][i]] = model.bottom_edges[i];
    for (std::size_t i = 0; i < sim.cls_at[new_top].size(); ++i) {
        int cls = sim.cls_at[new_top][i];
        int old_edge = model.top_edges[i];
        if (edge_of_cls[cls] >= 0) {
            if (edge_of_cls[cls] != old_edge) edge_merges.push_back({old_edge, edge_of_cls[cls]});
        } else if (resolved(cls) == input.edges[old_edge].cells) {
            edge_of_cls[cls] = old_edge;
        } else {
            PComplex::Edge e;
            e.cells = resolved(cls);
            pc.edges.push_back(e);
            edge_of_cls[cls] = static_cast<int>(pc.edges.size()) - 1;
            edge_replacements[old_edge] = edge_of_cls[cls];
        }
    }
    for (std::size_t cls = 0; cls < sim.classes.size(); ++cls) {
        if (edge_of_cls[cls] >= 0) continue;
        PComplex::Edge e;
        e.cells = resolved(cls);
        pc.edges.push_back(e);
        edge_of_cls[cls] = static_cast<int>(pc.edges.size()) - 1;
    }

    std::vector<int> new_vertices;
    for (std::size_t s = 0; s < sim.moves.size(); ++s) {
        const PathMove& mv = sim.moves[s];
        PComplex::Vertex v;
        v.kind = mv.kind == MoveKind::S ? VKind::IIIS : VKind::IIIA;
        for (std::size_t i = 0; i < sim.levels[s].size(); ++i)
            if (std::count(sim.levels[s][i].begin(), sim.levels[s][i].end(), mv.old_curve))
                v.bottom_edges.push_back(edge_of_cls[sim.cls_at[s][i]]);
        for (std::size_t i = 0; i < sim.levels[s + 1].size(); ++i)
            if (std::count(sim.levels[s + 1][i].begin(), sim.levels[s + 1][i].end(), mv.new_curve))
                v.top_edges.push_back(edge_of_cls[sim.cls_at[s + 1][i]]);
        std::sort(v.bottom_edges.begin(), v.bottom_edges.end());
        std::sort(v.top_edges.begin(), v.top_edges.end());
        pc.vertices.push_back(v);
        new_vertices.push_back(static_cast<int>(pc.vertices.size()) - 1);
    }

    for (const auto& [base, runs] : new_runs)
        for (std::size_t r = 0; r < runs.size(); ++r) {
            int cell = cell_new.at({base, static_cast<int>(r)});
            if (runs[r].lo > 0)
                pc.cells[cell].birth = {LinkEnd::Kind::Block, new_vertices[runs[r].lo - 1]};
            if (runs[r].hi < new_top)
                pc.cells[cell].death = {LinkEnd::Kind::Block, new_vertices[runs[r].hi]};
        }
    for (auto [gone, kept] : cell_merges) {
        pc.cells[kept].death = old_deaths.at(gone);
        if (pc.cells[kept].death.kind == LinkEnd::Kind::Seam &&
            pc.cells[kept].birth.kind == LinkEnd::Kind::Seam)
            pc.cells[kept].cyclic = true;
    }
    for (auto [lower, upper] : cell_splits) pc.cells[upper].death = old_deaths.at(lower);

    // re-point outside vertices before touching cell references
    std::map<int, int> edge_merge_map(edge_merges.begin(), edge_merges.end());
    std::set<int> new_vertex_set(new_vertices.begin(), new_vertices.end());
    for (int v = 0; v < static_cast<int>(pc.vertices.size()); ++v) {
        if (new_vertex_set.count(v)) continue;
        if (std::count(model.vertices.begin(), model.vertices.end(), v)) continue;
        for (int& e : pc.vertices[v].bottom_edges) {
            if (edge_merge_map.count(e))
                e = edge_merge_map.at(e);
            else if (edge_replacements.count(e))
                e = edge_replacements.at(e);
        }
        for (int& e : pc.vertices[v].top_edges)
            if (edge_merge_map.count(e)) e = edge_merge_map.at(e);
    }

    std::map<int, int> cell_merge_map(cell_merges.begin(), cell_merges.end());
    if (!cell_merge_map.empty())
        for (auto& e : pc.edges) {
            for (int& c : e.cells)
                if (cell_merge_map.count(c)) c = cell_merge_map.at(c);
            std::sort(e.cells.begin(), e.cells.end());
        }
    if (!cell_splits.empty()) {
        auto order = edge_order(pc);
        for (auto [lower, upper] : cell_splits)
            for (int e = 0; e < static_cast<int>(pc.edges.size()); ++e) {
                if (model.region_edges.count(e)) continue;
                bool above = false;
                for (int site_e : model.region_edges)
                    if (site_e < static_cast<int>(order.size()) && e < static_cast<int>(order.size()) &&
                        order[site_e][e])
                        above = true;
                if (!above) continue;
                bool changed = false;
                for (int& c : pc.edges[e].cells)
                    if (c == lower) {
                        c = upper;
                        changed = true;
                    }
                if (changed) std::sort(pc.edges[e].cells.begin(), pc.edges[e].cells.end());
            }
    }

    std::set<int> live_edges;
    for (std::size_t cls = 0; cls < sim.classes.size(); ++cls) live_edges.insert(edge_of_cls[cls]);
    std::set<int> dead_edges;
    for (int e : model.region_edges)
        if (!live_edges.count(e) || edge_merge_map.count(e)) dead_edges.insert(e);
    std::set<int> dead_vertices(model.vertices.begin(), model.vertices.end());
    std::set<int> dead_cells;
    for (auto [gone, kept] : cell_merges) dead_cells.insert(gone);
    for (const auto& [key, cell] : model.cell_of) {
        const auto& runs = old_runs.at(key.first);
        const Run& run = runs[key.second];
        if (run.lo > 0 && run.hi < old_top) {
            bool still = false;
            for (const auto& [nkey, ncell] : cell_new)
                if (ncell == cell) still = true;
            if (!still) dead_cells.insert(cell);
        }
    }

    PComplex out;
    std::vector<int> cell_map(pc.cells.size(), -1), edge_map(pc.edges.size(), -1),
        vertex_map(pc.vertices.size(), -1);
    for (int c = 0; c < static_cast<int>(pc.cells.size()); ++c) {
        if (dead_cells.count(c)) continue;
        cell_map[c] = static_cast<int>(out.cells.size());
        out.cells.push_back(pc.cells[c]);
    }
    for (int e = 0; e < static_cast<int>(pc.edges.size()); ++e) {
        if (dead_edges.count(e)) continue;
        edge_map[e] = static_cast<int>(out.edges.size());
        out.edges.push_back(pc.edges[e]);
    }
    for (int v = 0; v < static_cast<int>(pc.vertices.size()); ++v) {
        if (dead_vertices.count(v)) continue;
        vertex_map[v] = static_cast<int>(out.vertices.size());
        out.vertices.push_back(pc.vertices[v]);
    }
    for (auto& e : out.edges) {
        for (int& c : e.cells) c = cell_map[c];
        std::sort(e.cells.begin(), e.cells.end());
    }
    for (auto& v : out.vertices) {
        for (int& e : v.bottom_edges) e = edge_map[e];
        for (int& e : v.top_edges) e = edge_map[e];
        std::sort(v.bottom_edges.begin(), v.bottom_edges.end());
        std::sort(v.top_edges.begin(), v.top_edges.end());
    }
    for (auto& c : out.cells) {
        if (c.birth.kind == LinkEnd::Kind::Block) c.birth.index = vertex_map[c.birth.index];
        if (c.death.kind == LinkEnd::Kind::Block) c.death.index = vertex_map[c.death.index];
    }
    out.validate();
    return out;
}

bool crule_matches(const RewriteRule& rule, const CModel& m, bool forward, const PComplex& pc) {
    const std::size_t k = m.vertices.size();
    switch (rule.category) {
    case RuleCategory::CancellingPair: {
        MoveKind want = rule.lhs.front().kind;
        if (forward) {
            if (k != 2 || !(m.walk.front() == m.walk.back())) return false;
            for (int v : m.vertices)
                if ((want == MoveKind::S) != (pc.vertices[v].kind == VKind::IIIS)) return false;
            return true;
        }
        return k == 0;
    }
    case RuleCategory::Triangle12: {
        if (!m.walk.front().is_slope()) return false;
        MoveKind want = rule.lhs.front().kind;
        SupportKind sk = want == MoveKind::S ? SupportKind::S11 : SupportKind::S04;
        if (m.sup.kind != sk) return false;
        if (forward) return k == 1;
        if (k != 2 || m.walk.front() == m.walk.back()) return false;
        long long d = slope_det(m.walk.front().as_slope(), m.walk.back().as_slope());
        return d == 1 || d == -1;
    }
    case RuleCategory::Pentagon23:
        return m.sup.kind == SupportKind::S05 && (forward ? k == 2 : k == 3);
    case RuleCategory::Hexagon33:
        return m.sup.kind == SupportKind::S12 && k == 3;
    default: return false;
    }
}

} // namespace

PComplex apply_pmove_pcomplex(const PComplex& pc, const RewriteRule& rule, const PCSite& site) {
    if (rule.category == RuleCategory::PathOnly)
        fail(Err::NoMatch, rule.name + " is a path move only");
    std::optional<CModel> model;
    std::string wiggle_base;
    if (!site.vertices.empty()) {
        model = match_cchain(pc, site.vertices);
    } else {
        model = match_cinsertion(pc, site.cell, site.edge_a, site.edge_b);
        if (site.cell >= 0 && site.cell < static_cast<int>(pc.cells.size()))
            wiggle_base = curve_base(pc.cells[site.cell].label);
    }
    if (!model || !crule_matches(rule, *model, site.forward, pc))
        fail(Err::NoMatch, "local model does not carry " + rule.name);
    if (site.vertices.empty()) {
        bool ok = false;
        for (const Wiggle& w : wiggle_targets(model->sup, model->walk.front(), wiggle_base))
            if (w.fresh == site.fresh)
                ok = (w.kind == MoveKind::S) == (rule.lhs.front().kind == MoveKind::S);
        if (!ok) fail(Err::NoMatch, "no legal wiggle to '" + site.fresh + "' here");
    }
    auto walk = replacement_walk(model->sup, model->walk, rule.category, site.forward, site.fresh,
                                 wiggle_base);
    return crewrite(pc, *model, walk);
}

std::vector<PCSite> enumerate_pmove_sites(const PComplex& pc, const RewriteRule& rule) {
    std::vector<PCSite> out;
    if (rule.category == RuleCategory::PathOnly) return out;
    const int nv = static_cast<int>(pc.vertices.size());

    auto above = [&](int v) {
        std::vector<int> ups;
        for (int other = 0; other < nv; ++other) {
            if (other == v) continue;
            for (int e : pc.vertices[v].top_edges)
                if (std::count(pc.vertices[other].bottom_edges.begin(),
                               pc.vertices[other].bottom_edges.end(), e)) {
                    ups.push_back(other);
                    break;
                }
        }
        return ups;
    };
    auto consider = [&](const std::vector<int>& verts, bool forward) {
        auto model = match_cchain(pc, verts);
        if (!model || !crule_matches(rule, *model, forward, pc)) return;
        PCSite site;
        site.rule = rule.name;
        site.forward = forward;
        site.vertices = verts;
        if (rule.category == RuleCategory::Triangle12 && forward) {
            Slope m0 = model->walk.front().as_slope(), m1 = model->walk.back().as_slope();
            for (Slope z : farey_triangle_completions(m0, m1)) {
                site.fresh = to_string(z);
                out.push_back(site);
            }
            return;
        }
        out.push_back(site);
    };
    std::size_t want_fwd = 0, want_bwd = 0;
    switch (rule.category) {
    case RuleCategory::CancellingPair: want_fwd = 2; break;
    case RuleCategory::Triangle12: want_fwd = 1; want_bwd = 2; break;
    case RuleCategory::Pentagon23: want_fwd = 2; want_bwd = 3; break;
    case RuleCategory::Hexagon33: want_fwd = 3; break;
    default: break;
    }
    auto chains_of = [&](std::size_t len, bool forward) {
        if (len == 0) return;
        for (int v0 = 0; v0 < nv; ++v0) {
            std::vector<std::vector<int>> stack{{v0}};
            while (!stack.empty()) {
                auto cur = stack.back();
                stack.pop_back();
                if (cur.size() == len) {
                    consider(cur, forward);
                    continue;
                }
                for (int up : above(cur.back())) {
                    if (std::count(cur.begin(), cur.end(), up)) continue;
                    auto next = cur;
                    next.push_back(up);
                    stack.push_back(next);
                }
            }
        }
    };
    chains_of(want_fwd, true);
    if (want_bwd && rule.category != RuleCategory::Hexagon33) chains_of(want_bwd, false);

    if (rule.category == RuleCategory::CancellingPair) {
        auto order = edge_order(pc);
        for (int c = 0; c < static_cast<int>(pc.cells.size()); ++c) {
            Key key = parse_key(curve_base(pc.cells[c].label));
            if (key.type == KeyType::Plain || pc.cells[c].cyclic) continue;
            std::vector<int> holders;
            for (int e = 0; e < static_cast<int>(pc.edges.size()); ++e)
                if (std::count(pc.edges[e].cells.begin(), pc.edges[e].cells.end(), c))
                    holders.push_back(e);
            std::set<std::pair<int, int>> placements;
            for (int ea : holders) {
                if (std::count(pc.edges[ea].cells.begin(), pc.edges[ea].cells.end(), c) == 2) {
                    placements.insert({ea, ea});
                    continue;
                }
                for (int eb : holders) {
                    if (ea == eb) continue;
                    if (order[ea][eb] || order[eb][ea]) continue;
                    placements.insert({std::min(ea, eb), std::max(ea, eb)});
                }
            }
            for (auto [ea, eb] : placements) {
                auto model = match_cinsertion(pc, c, ea, eb);
                if (!model) continue;
                for (const Wiggle& w : wiggle_targets(model->sup, model->walk.front(), key.base)) {
                    if ((w.kind == MoveKind::S) != (rule.lhs.front().kind == MoveKind::S)) continue;
                    PCSite site;
                    site.rule = rule.name;
                    site.forward = false;
                    site.cell = c;
                    site.edge_a = ea;
                    site.edge_b = eb;
                    site.fresh = w.fresh;
                    out.push_back(site);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string pcomplex_fingerprint(const PComplex& pc) {
    ColoredGraph g;
    std::vector<int> cn, en, vn;
    for (const auto& c : pc.cells) {
        std::string color = "C:" + curve_base(c.label) + "|" +
                            (c.birth.kind == LinkEnd::Kind::Free    ? "f"
                             : c.birth.kind == LinkEnd::Kind::Block ? "b"
                                                                    : "s") +
                            (c.death.kind == LinkEnd::Kind::Free    ? "f"
                             : c.death.kind == LinkEnd::Kind::Block ? "b"
                                                                    : "s") +
                            (c.cyclic ? "c" : "");
        cn.push_back(g.add_node(color));
    }
    for (const auto& e : pc.edges) {
        en.push_back(g.add_node("E"));
        for (int c : e.cells) g.add_edge(en.back(), cn[c]);
    }
    for (int vi = 0; vi < static_cast<int>(pc.vertices.size()); ++vi) {
        const auto& v = pc.vertices[vi];
        vn.push_back(g.add_node(v.kind == VKind::IIIS ? "V:S" : "V:A"));
        int bottom = g.add_node("F");
        int top = g.add_node("F");
        g.add_edge(vn.back(), bottom);
        g.add_edge(vn.back(), top);
        for (int e : v.bottom_edges) g.add_edge(bottom, en[e]);
        for (int e : v.top_edges) g.add_edge(top, en[e]);
    }
    return g.certificate();
}

bool isomorphic(const PComplex& a, const PComplex& b) {
    return pcomplex_fingerprint(a) == pcomplex_fingerprint(b);
}

namespace {

std::string pc_end_to_string(const LinkEnd& e) {
    switch (e.kind) {
    case LinkEnd::Kind::Free: return "free";
    case LinkEnd::Kind::Block: return "block:" + std::to_string(e.index);
    case LinkEnd::Kind::Seam: return "seam:" + std::to_string(e.index);
    }
    return "free";
}

LinkEnd pc_end_from_string(const std::string& s) {
    if (s == "free") return {LinkEnd::Kind::Free, -1};
    auto colon = s.find(':');
    if (colon == std::string::npos) fail(Err::Parse, "bad cell end '" + s + "'");
    int idx = std::stoi(s.substr(colon + 1));
    if (s.rfind("block", 0) == 0) return {LinkEnd::Kind::Block, idx};
    if (s.rfind("seam", 0) == 0) return {LinkEnd::Kind::Seam, idx};
    fail(Err::Parse, "bad cell end '" + s + "'");
}

} // namespace

json to_json(const PComplex& pc) {
    json j;
    j["cells"] = json::array();
    for (const auto& c : pc.cells) j["cells"].push_back(c.label);
    j["edges"] = json::array();
    for (const auto& e : pc.edges)
        j["edges"].push_back({pc.cells[e.cells[0]].label, pc.cells[e.cells[1]].label,
                              pc.cells[e.cells[2]].label});
    j["vertices"] = json::array();
    for (const auto& v : pc.vertices)
        j["vertices"].push_back(v.kind == VKind::IIIS ? "IIIS" : "IIIA");
    j["incidences"] = json::array();
    for (int v = 0; v < static_cast<int>(pc.vertices.size()); ++v) {
        for (int e : pc.vertices[v].bottom_edges) j["incidences"].push_back({v, e, "bottom"});
        for (int e : pc.vertices[v].top_edges) j["incidences"].push_back({v, e, "top"});
    }
    json meta;
    meta["ends"] = json::array();
    for (const auto& c : pc.cells)
        meta["ends"].push_back({pc_end_to_string(c.birth), pc_end_to_string(c.death)});
    meta["cyclic"] = json::array();
    for (const auto& c : pc.cells) meta["cyclic"].push_back(c.cyclic);
    j["meta"] = meta;
    return j;
}

PComplex pcomplex_from_json(const json& j) {
    PComplex pc;
    std::map<std::string, int> by_label;
    for (const auto& l : j.at("cells")) {
        PComplex::Cell c;
        c.label = l.get<std::string>();
        by_label[c.label] = static_cast<int>(pc.cells.size());
        pc.cells.push_back(c);
    }
    for (const auto& e : j.at("edges")) {
        PComplex::Edge edge;
        for (int k = 0; k < 3; ++k) edge.cells[k] = by_label.at(e.at(k).get<std::string>());
        std::sort(edge.cells.begin(), edge.cells.end());
        pc.edges.push_back(edge);
    }
    for (const auto& v : j.at("vertices")) {
        PComplex::Vertex vx;
        vx.kind = v.get<std::string>() == "IIIS" ? VKind::IIIS : VKind::IIIA;
        pc.vertices.push_back(vx);
    }
    for (const auto& inc : j.at("incidences")) {
        int v = inc.at(0).get<int>(), e = inc.at(1).get<int>();
        if (inc.at(2).get<std::string>() == "bottom")
            pc.vertices.at(v).bottom_edges.push_back(e);
        else
            pc.vertices.at(v).top_edges.push_back(e);
    }
    if (j.contains("meta")) {
        const json& meta = j.at("meta");
        for (std::size_t c = 0; c < pc.cells.size(); ++c) {
            pc.cells[c].birth = pc_end_from_string(meta.at("ends").at(c).at(0).get<std::string>());
            pc.cells[c].death = pc_end_from_string(meta.at("ends").at(c).at(1).get<std::string>());
            pc.cells[c].cyclic = meta.at("cyclic").at(c).get<bool>();
        }
    } else {
        for (int v = 0; v < static_cast<int>(pc.vertices.size()); ++v) {
            VMoved moved = vertex_moved(pc, v);
            pc.cells[moved.old_cell].death = {LinkEnd::Kind::Block, v};
            pc.cells[moved.new_cell].birth = {LinkEnd::Kind::Block, v};
        }
    }
    pc.validate();
    return pc;
}

std::string to_dot(const PComplex& pc) {
    std::ostringstream os;
    os << "graph pcomplex {\n";
    for (int c = 0; c < static_cast<int>(pc.cells.size()); ++c)
        os << "  c" << c << " [shape=ellipse,label=\"" << pc.cells[c].label << "\"];\n";
    for (int e = 0; e < static_cast<int>(pc.edges.size()); ++e) {
        os << "  e" << e << " [shape=point];\n";
        for (int c : pc.edges[e].cells) os << "  e" << e << " -- c" << c << ";\n";
    }
    for (int v = 0; v < static_cast<int>(pc.vertices.size()); ++v) {
        os << "  v" << v << " [shape="
           << (pc.vertices[v].kind == VKind::IIIS ? "diamond" : "box") << "];\n";
        for (int e : pc.vertices[v].bottom_edges)
            os << "  v" << v << " -- e" << e << " [style=dashed];\n";
        for (int e : pc.vertices[v].top_edges) os << "  v" << v << " -- e" << e << ";\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace pants
