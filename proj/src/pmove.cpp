#include "pants/pmove.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "pants/walkmodel.hpp"

namespace pants {

using json = nlohmann::ordered_json;
using namespace walkmodel;

namespace {

Key comp_key(const BlockDecomposition& bd, int comp) {
    return parse_key(curve_base(bd.link[comp].label));
}


// cuff bases of records, for the shared pentagon position solver
std::vector<std::vector<std::string>> cuff_bases(const BlockDecomposition& bd,
                                                 const std::vector<int>& recs) {
    std::vector<std::vector<std::string>> out;
    for (int r : recs) {
        std::vector<std::string> cuffs;
        for (int c : bd.pants[r].cuffs) cuffs.push_back(curve_base(bd.link[c].label));
        out.push_back(cuffs);
    }
    return out;
}

// -------------------------------------------------------------- region model

struct Model {
    AmbientSupport sup;
    std::vector<DecompositionState> walk;
    std::vector<int> blocks; // matched, bottom-up; empty for an insertion site
    std::set<int> region_recs;
    std::vector<int> bottom_recs, top_recs; // aligned with support_pants order
    // comp per (base, run index) of the old walk
    std::map<std::pair<std::string, int>, int> comp_of;
    int base_level = 0;

    int bottom_comp(const std::string& base) const {
        auto it = comp_of.find({base, 0});
        return it == comp_of.end() ? -1 : it->second;
    }
    int top_comp(const std::string& base, int nruns) const {
        auto it = comp_of.find({base, nruns - 1});
        return it == comp_of.end() ? -1 : it->second;
    }
};


// strict temporal order on pants records through block faces
std::vector<std::vector<char>> record_order(const BlockDecomposition& bd) {
    const int n = static_cast<int>(bd.pants.size());
    std::vector<std::vector<char>> before(n, std::vector<char>(n, 0));
    for (const auto& blk : bd.blocks)
        for (int lo : blk.bottom_pants)
            for (int hi : blk.top_pants) before[lo][hi] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (before[i][k])
                for (int j = 0; j < n; ++j)
                    if (before[k][j]) before[i][j] = 1;
    return before;
}

// Verify that the virtual support + walk reproduces the matched blocks (or,
// for an insertion, the given cross-section records), and resolve every base
// to its link component.
std::optional<Model> try_model(const BlockDecomposition& bd, const std::vector<int>& blocks,
                               const AmbientSupport& sup,
                               const std::vector<DecompositionState>& walk,
                               const std::vector<int>& preset_recs = {}) {
    Model m;
    m.sup = sup;
    m.walk = walk;
    m.blocks = blocks;

    Sim sim;
    try {
        sim = simulate(sup, walk);
    } catch (const Error&) {
        return std::nullopt;
    }
    if (sim.moves.size() != blocks.size()) return std::nullopt;

    auto runs = base_runs(sup, walk);
    auto base_of_comp = [&](int c) { return curve_base(bd.link[c].label); };

    // class -> actual record
    std::map<int, int> rec_of_cls;
    std::set<int> used_recs;
    auto cuffs_of_rec = [&](int rec) {
        std::array<std::string, 3> out;
        for (int k = 0; k < 3; ++k) out[k] = base_of_comp(bd.pants[rec].cuffs[k]);
        std::sort(out.begin(), out.end());
        return out;
    };
    auto bind = [&](int cls, int rec) {
        auto it = rec_of_cls.find(cls);
        if (it != rec_of_cls.end()) return it->second == rec;
        if (used_recs.count(rec)) return false;
        Pants3 want = sim.classes[cls].cuffs;
        auto got = cuffs_of_rec(rec);
        if (!std::equal(want.begin(), want.end(), got.begin())) return false;
        rec_of_cls[cls] = rec;
        used_recs.insert(rec);
        return true;
    };
    auto bind_face = [&](const std::vector<int>& clss, const std::vector<int>& recs) {
        if (clss.size() != recs.size()) return false;
        // try both pairings when there are two faces
        if (clss.size() == 1) return bind(clss[0], recs[0]);
        auto saved_map = rec_of_cls;
        auto saved_used = used_recs;
        if (bind(clss[0], recs[0]) && bind(clss[1], recs[1])) return true;
        rec_of_cls = saved_map;
        used_recs = saved_used;
        return bind(clss[0], recs[1]) && bind(clss[1], recs[0]);
    };

    if (blocks.empty()) {
        // insertion site: one level, preset records
        if (sim.levels.size() != 1) return std::nullopt;
        std::vector<int> clss = sim.cls_at[0];
        if (clss.size() != preset_recs.size()) return std::nullopt;
        // greedy bipartite by cuff bases (tiny sizes)
        std::vector<int> order(clss.size());
        std::iota(order.begin(), order.end(), 0);
        std::vector<int> recs = preset_recs;
        std::sort(recs.begin(), recs.end());
        do {
            rec_of_cls.clear();
            used_recs.clear();
            bool ok = true;
            for (std::size_t i = 0; i < clss.size() && ok; ++i) ok = bind(clss[i], recs[i]);
            if (ok) break;
        } while (std::next_permutation(recs.begin(), recs.end()));
        if (rec_of_cls.size() != clss.size()) return std::nullopt;
    } else {
        for (std::size_t s = 0; s < blocks.size(); ++s) {
            const PantsBlock& blk = bd.blocks[blocks[s]];
            const PathMove& mv = sim.moves[s];
            if ((mv.kind == MoveKind::S) != (blk.kind == BlockKind::S11)) return std::nullopt;
            std::vector<int> bot_cls, top_cls;
            for (std::size_t i = 0; i < sim.levels[s].size(); ++i)
                if (std::count(sim.levels[s][i].begin(), sim.levels[s][i].end(), mv.old_curve))
                    bot_cls.push_back(sim.cls_at[s][i]);
            for (std::size_t i = 0; i < sim.levels[s + 1].size(); ++i)
                if (std::count(sim.levels[s + 1][i].begin(), sim.levels[s + 1][i].end(), mv.new_curve))
                    top_cls.push_back(sim.cls_at[s + 1][i]);
            if (!bind_face(bot_cls, blk.bottom_pants)) return std::nullopt;
            if (!bind_face(top_cls, blk.top_pants)) return std::nullopt;
            // moved curves must carry the right bases
            if (base_of_comp(blk.old_curve) != mv.old_curve) return std::nullopt;
            if (base_of_comp(blk.new_curve) != mv.new_curve) return std::nullopt;
        }
        // classes no block touches (static pants of a cancelling pair): find
        // them among the records that are temporally compatible with every
        // bound one
        if (rec_of_cls.size() != sim.classes.size()) {
            auto order = record_order(bd);
            for (std::size_t cls = 0; cls < sim.classes.size(); ++cls) {
                if (rec_of_cls.count(static_cast<int>(cls))) continue;
                bool found = false;
                for (int r = 0; r < static_cast<int>(bd.pants.size()) && !found; ++r) {
                    if (used_recs.count(r)) continue;
                    bool compatible = true;
                    for (const auto& [c2, r2] : rec_of_cls)
                        if (order[r][r2] || order[r2][r]) compatible = false;
                    if (compatible && bind(static_cast<int>(cls), r)) found = true;
                }
                if (!found) return std::nullopt;
            }
        }
    }

    // resolve comps per (base, run); verify full cuff agreement
    for (std::size_t s = 0; s < blocks.size(); ++s) {
        const PantsBlock& blk = bd.blocks[blocks[s]];
        const PathMove& mv = sim.moves[s];
        int old_run = run_index(runs.at(mv.old_curve), static_cast<int>(s));
        int new_run = run_index(runs.at(mv.new_curve), static_cast<int>(s) + 1);
        if (old_run < 0 || new_run < 0) return std::nullopt;
        auto o = m.comp_of.insert({{mv.old_curve, old_run}, blk.old_curve});
        if (!o.second && o.first->second != blk.old_curve) return std::nullopt;
        auto n = m.comp_of.insert({{mv.new_curve, new_run}, blk.new_curve});
        if (!n.second && n.first->second != blk.new_curve) return std::nullopt;
    }
    for (const auto& [cls, rec] : rec_of_cls) {
        // align the class cuffs with the record cuffs base by base
        std::map<std::string, std::vector<int>> comps_by_base;
        for (int c : bd.pants[rec].cuffs) comps_by_base[base_of_comp(c)].push_back(c);
        std::map<std::string, int> count;
        for (const auto& b : sim.classes[cls].cuffs) count[b]++;
        for (const auto& [base, want] : count) {
            auto it = comps_by_base.find(base);
            if (it == comps_by_base.end() || static_cast<int>(it->second.size()) != want)
                return std::nullopt;
            // all slots of one base in one pants must be one component
            for (int c : it->second)
                if (c != it->second[0]) return std::nullopt;
            int run = run_index(runs.at(base), sim.classes[cls].lo);
            if (run < 0) return std::nullopt;
            auto ins = m.comp_of.insert({{base, run}, it->second[0]});
            if (!ins.second && ins.first->second != it->second[0]) return std::nullopt;
        }
    }

    const int top = static_cast<int>(walk.size()) - 1;
    m.bottom_recs.resize(sim.cls_at[0].size());
    for (std::size_t i = 0; i < sim.cls_at[0].size(); ++i)
        m.bottom_recs[i] = rec_of_cls.at(sim.cls_at[0][i]);
    m.top_recs.resize(sim.cls_at[top].size());
    for (std::size_t i = 0; i < sim.cls_at[top].size(); ++i)
        m.top_recs[i] = rec_of_cls.at(sim.cls_at[top][i]);
    for (const auto& [cls, rec] : rec_of_cls) m.region_recs.insert(rec);
    m.base_level = blocks.empty() ? 0 : bd.blocks[blocks.front()].bottom_level;
    return m;
}


// --------------------------------------------------------------- the rewrite

struct Rewrite {
    BlockDecomposition bd;
    std::vector<int> new_blocks;   // indices in the result
    std::vector<int> merged_comps; // kept components of any merges
    std::vector<int> merged_recs;  // kept records of any merges
};

// the fresh-suffix allocator
std::string fresh_label(const BlockDecomposition& bd, const std::string& base,
                        std::set<std::string>& taken) {
    auto exists = [&](const std::string& label) {
        if (taken.count(label)) return true;
        for (const auto& c : bd.link)
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

Rewrite region_rewrite(const BlockDecomposition& input, const Model& model,
                       const std::vector<DecompositionState>& new_walk) {
    BlockDecomposition bd = input;
    Sim sim = simulate(model.sup, new_walk);
    auto new_runs = base_runs(model.sup, new_walk);
    auto old_runs = base_runs(model.sup, model.walk);
    const int new_top = static_cast<int>(new_walk.size()) - 1;
    const int old_top = static_cast<int>(model.walk.size()) - 1;

    // ---- components per (base, new run)
    std::map<std::pair<std::string, int>, int> comp_new;
    std::vector<std::pair<int, int>> comp_merges; // (gone, kept)
    std::vector<std::pair<int, int>> comp_splits; // (lower, fresh upper)
    std::set<std::string> taken_labels;
    std::map<int, LinkEnd> old_deaths; // stored before surgery for merges and splits
    for (int c = 0; c < static_cast<int>(bd.link.size()); ++c) old_deaths[c] = bd.link[c].death;

    for (const auto& [base, runs] : new_runs) {
        const int nold = static_cast<int>(old_runs.count(base) ? old_runs.at(base).size() : 0);
        int bottom = -1, top = -1;
        if (nold > 0) {
            if (old_runs.at(base).front().lo == 0) bottom = model.comp_of.at({base, 0});
            if (old_runs.at(base).back().hi == old_top)
                top = model.comp_of.at({base, nold - 1});
        }
        bool bottom_claimed = false;
        for (std::size_t r = 0; r < runs.size(); ++r) {
            bool at_bottom = runs[r].lo == 0;
            bool at_top = runs[r].hi == new_top;
            int comp = -1;
            if (at_bottom && bottom >= 0) {
                comp = bottom;
                bottom_claimed = true;
                if (at_top && top >= 0 && top != bottom) comp_merges.push_back({top, bottom});
            } else if (at_top && top >= 0 && (top != bottom || !bottom_claimed)) {
                // distinct upper component, or an unclaimed shared one
                comp = top;
            }
            if (comp < 0) {
                LinkComp fresh;
                fresh.label = fresh_label(bd, base, taken_labels);
                bd.link.push_back(fresh);
                comp = static_cast<int>(bd.link.size()) - 1;
                // a run that reaches the top over a claimed lower component is
                // a split: the new upper half inherits the outside death
                if (at_top && top >= 0 && top == bottom && bottom_claimed)
                    comp_splits.push_back({bottom, comp});
            }
            comp_new[{base, static_cast<int>(r)}] = comp;
        }
    }

    // ---- records per class
    auto comp_at = [&](const std::string& base, int level) {
        int run = run_index(new_runs.at(base), level);
        return comp_new.at({base, run});
    };
    auto resolved_cuffs = [&](int cls) {
        std::array<int, 3> cuffs;
        for (int k = 0; k < 3; ++k)
            cuffs[k] = comp_at(sim.classes[cls].cuffs[k], sim.classes[cls].lo);
        std::sort(cuffs.begin(), cuffs.end());
        return cuffs;
    };
    auto fresh_rec = [&](int cls) {
        PantsRec rec;
        rec.cuffs = resolved_cuffs(cls);
        rec.lo = model.base_level + sim.classes[cls].lo;
        rec.hi = model.base_level + sim.classes[cls].hi;
        bd.pants.push_back(rec);
        return static_cast<int>(bd.pants.size()) - 1;
    };
    std::vector<int> rec_of_cls(sim.classes.size(), -1);
    std::vector<std::pair<int, int>> rec_merges;       // (old top record, kept record)
    std::map<int, int> rec_replacements;               // old top record -> fresh record
    for (std::size_t i = 0; i < sim.cls_at[0].size(); ++i)
        rec_of_cls[sim.cls_at[0][i]] = model.bottom_recs[i];
    for (std::size_t i = 0; i < sim.cls_at[new_top].size(); ++i) {
        int cls = sim.cls_at[new_top][i];
        int old_rec = model.top_recs[i];
        if (rec_of_cls[cls] >= 0) {
            // the class spans the whole walk; a distinct old top record gets
            // identified with the record it continues (pair deletion)
            if (rec_of_cls[cls] != old_rec) rec_merges.push_back({old_rec, rec_of_cls[cls]});
        } else if (resolved_cuffs(cls) == input.pants[old_rec].cuffs) {
            rec_of_cls[cls] = old_rec;
        } else {
            // the top cross-section changed identity (pair insertion splits
            // the curve): mint a new record and re-point everything above
            rec_of_cls[cls] = fresh_rec(cls);
            rec_replacements[old_rec] = rec_of_cls[cls];
        }
    }
    for (std::size_t cls = 0; cls < sim.classes.size(); ++cls)
        if (rec_of_cls[cls] < 0) rec_of_cls[cls] = fresh_rec(static_cast<int>(cls));

    // ---- new blocks
    std::vector<int> new_block_ids;
    for (std::size_t s = 0; s < sim.moves.size(); ++s) {
        const PathMove& mv = sim.moves[s];
        PantsBlock blk;
        blk.support = model.sup.id;
        blk.bottom_level = model.base_level + static_cast<int>(s);
        blk.top_level = blk.bottom_level + 1;
        blk.old_curve = comp_at(mv.old_curve, static_cast<int>(s));
        blk.new_curve = comp_at(mv.new_curve, static_cast<int>(s) + 1);
        std::vector<int> loops;
        for (std::size_t i = 0; i < sim.levels[s].size(); ++i) {
            const Pants3& p = sim.levels[s][i];
            if (!std::count(p.begin(), p.end(), mv.old_curve)) continue;
            blk.bottom_pants.push_back(rec_of_cls[sim.cls_at[s][i]]);
            for (const auto& cuff : p) loops.push_back(comp_at(cuff, static_cast<int>(s)));
        }
        for (std::size_t i = 0; i < sim.levels[s + 1].size(); ++i) {
            const Pants3& p = sim.levels[s + 1][i];
            if (std::count(p.begin(), p.end(), mv.new_curve))
                blk.top_pants.push_back(rec_of_cls[sim.cls_at[s + 1][i]]);
        }
        loops.erase(std::find(loops.begin(), loops.end(), blk.old_curve));
        loops.erase(std::find(loops.begin(), loops.end(), blk.old_curve));
        loops.push_back(blk.old_curve);
        loops.push_back(blk.new_curve);
        std::sort(loops.begin(), loops.end());
        blk.loops = std::move(loops);
        blk.kind = blk.bottom_pants.size() == 1 ? BlockKind::S11 : BlockKind::S04;
        bd.blocks.push_back(blk);
        new_block_ids.push_back(static_cast<int>(bd.blocks.size()) - 1);
    }

    // ---- component ends
    for (const auto& [base, runs] : new_runs) {
        for (std::size_t r = 0; r < runs.size(); ++r) {
            int comp = comp_new.at({base, static_cast<int>(r)});
            LinkComp& lc = bd.link[comp];
            if (runs[r].lo > 0) lc.birth = {LinkEnd::Kind::Block, new_block_ids[runs[r].lo - 1]};
            if (runs[r].hi < new_top) lc.death = {LinkEnd::Kind::Block, new_block_ids[runs[r].hi]};
            // ends reaching the region boundary keep their outside values; a
            // merge carries the upper component's death down
        }
    }
    for (auto [gone, kept] : comp_merges) {
        bd.link[kept].death = old_deaths.at(gone);
        if (bd.link[kept].death == bd.link[kept].birth &&
            bd.link[kept].birth.kind == LinkEnd::Kind::Seam)
            bd.link[kept].cyclic = true;
    }
    for (auto [lower, upper] : comp_splits) bd.link[upper].death = old_deaths.at(lower);

    // ---- walk-side chains per component
    std::map<int, std::vector<std::vector<int>>> walk_sides; // comp -> list of sides (records)
    {
        std::map<int, std::vector<std::vector<int>>> slots; // comp -> per level record list
        for (std::size_t t = 0; t < sim.levels.size(); ++t) {
            std::map<int, std::vector<int>> here;
            for (std::size_t i = 0; i < sim.levels[t].size(); ++i)
                for (const auto& cuff : sim.levels[t][i])
                    here[comp_at(cuff, static_cast<int>(t))].push_back(rec_of_cls[sim.cls_at[t][i]]);
            for (auto& [comp, recs] : here) {
                std::sort(recs.begin(), recs.end());
                auto& lv = slots[comp];
                lv.resize(sim.levels.size());
                lv[t] = recs;
            }
        }
        for (auto& [comp, per_level] : slots) {
            std::vector<std::vector<int>> sides;
            std::vector<int> cur; // current record per side
            for (std::size_t t = 0; t < per_level.size(); ++t) {
                auto recs = per_level[t];
                if (recs.empty()) continue;
                if (cur.empty()) {
                    for (std::size_t k = 0; k < recs.size(); ++k) {
                        cur.push_back(recs[k]);
                        sides.push_back({recs[k]});
                    }
                    continue;
                }
                // keep sides that persist, reassign the rest in order
                std::vector<int> next = recs;
                std::vector<int> assigned(cur.size(), -1);
                for (std::size_t k = 0; k < cur.size(); ++k) {
                    auto it = std::find(next.begin(), next.end(), cur[k]);
                    if (it != next.end()) {
                        assigned[k] = *it;
                        next.erase(it);
                    }
                }
                for (std::size_t k = 0; k < cur.size(); ++k)
                    if (assigned[k] < 0 && !next.empty()) {
                        assigned[k] = next.front();
                        next.erase(next.begin());
                    }
                for (std::size_t k = 0; k < cur.size(); ++k)
                    if (assigned[k] >= 0 && assigned[k] != cur[k]) {
                        sides[k].push_back(assigned[k]);
                        cur[k] = assigned[k];
                    }
            }
            walk_sides[comp] = sides;
        }
    }

    // ---- splice chains
    std::map<int, int> rec_merge_map;
    for (auto [gone, kept] : rec_merges) rec_merge_map[gone] = kept;
    std::map<int, int> comp_merge_map;
    for (auto [gone, kept] : comp_merges) comp_merge_map[gone] = kept;

    std::set<int> region_old = model.region_recs;
    auto in_region = [&](int rec) { return region_old.count(rec) > 0; };

    // merge upper components into lower ones; pair the chain sides through
    // the record identifications so columns do not cross
    for (auto [gone, kept] : comp_merges) {
        LinkComp& lo = bd.link[kept];
        LinkComp& hi = bd.link[gone];
        auto mapped_front = [&](const std::vector<int>& side) {
            if (side.empty()) return -1;
            int r = side.front();
            return rec_merge_map.count(r) ? rec_merge_map.at(r) : r;
        };
        bool straight = lo.side_a.empty() || hi.side_a.empty() ||
                        mapped_front(hi.side_a) == lo.side_a.back() ||
                        mapped_front(hi.side_b) != lo.side_a.back();
        const std::vector<int>& ha = straight ? hi.side_a : hi.side_b;
        const std::vector<int>& hb = straight ? hi.side_b : hi.side_a;
        for (int r : ha) lo.side_a.push_back(r);
        for (int r : hb) lo.side_b.push_back(r);
        hi.side_a.clear();
        hi.side_b.clear();
    }

    auto splice_side = [&](int comp, std::vector<int>& side) {
        // locate the contiguous run of region records
        int first = -1, last = -1;
        for (std::size_t i = 0; i < side.size(); ++i)
            if (in_region(side[i])) {
                if (first < 0) first = static_cast<int>(i);
                last = static_cast<int>(i);
            }
        if (first < 0) return false; // side does not cross the region
        std::vector<int> pre(side.begin(), side.begin() + first);
        std::vector<int> post(side.begin() + last + 1, side.end());
        int run_first = side[first];
        int run_last = rec_merge_map.count(side[last]) ? rec_merge_map.at(side[last]) : side[last];
        // choose the walk side that continues this one: bottom-aligned first,
        // then top-aligned, then any remaining
        std::vector<int> seg;
        auto& candidates = walk_sides[comp];
        auto pick = [&](auto&& pred) {
            for (auto& cand : candidates)
                if (!cand.empty() && pred(cand)) {
                    seg = cand;
                    cand.clear(); // consume
                    return true;
                }
            return false;
        };
        pick([&](const std::vector<int>& c) { return c.front() == run_first; }) ||
            pick([&](const std::vector<int>& c) { return c.back() == run_last; }) ||
            pick([&](const std::vector<int>&) { return true; });
        side = pre;
        for (int r : seg)
            if (side.empty() || side.back() != r) side.push_back(r);
        for (int r : post) {
            int mapped = rec_merge_map.count(r) ? rec_merge_map.at(r) : r;
            if (side.empty() || side.back() != mapped) side.push_back(mapped);
        }
        return true;
    };

    // split curves: the lower component keeps everything below the site, the
    // fresh upper one takes the walk exit and the old continuation above
    std::set<int> spliced;
    for (auto [lower, upper] : comp_splits) {
        LinkComp& lo = bd.link[lower];
        LinkComp& up = bd.link[upper];
        auto& up_walk = walk_sides[upper];
        std::vector<int>* lo_sides[2] = {&lo.side_a, &lo.side_b};
        std::vector<std::vector<int>> up_new;
        for (auto* sp : lo_sides) {
            std::vector<int>& side = *sp;
            int first = -1, last = -1;
            for (std::size_t i = 0; i < side.size(); ++i)
                if (in_region(side[i])) {
                    if (first < 0) first = static_cast<int>(i);
                    last = static_cast<int>(i);
                }
            if (first < 0) continue;
            std::vector<int> post(side.begin() + last + 1, side.end());
            std::vector<int> pre(side.begin(), side.begin() + first);
            // lower keeps its walk side (re-entering the reused record)
            std::vector<int> seg;
            auto& lo_walk = walk_sides[lower];
            for (auto& cand : lo_walk)
                if (!cand.empty() && cand.front() == side[first]) {
                    seg = cand;
                    cand.clear();
                    break;
                }
            if (seg.empty())
                for (auto& cand : lo_walk)
                    if (!cand.empty()) {
                        seg = cand;
                        cand.clear();
                        break;
                    }
            std::vector<int> lo_side = pre;
            for (int r : seg)
                if (lo_side.empty() || lo_side.back() != r) lo_side.push_back(r);
            // upper continues with the replacement record and the old tail
            int replaced = rec_replacements.count(side[last]) ? rec_replacements.at(side[last]) : -1;
            std::vector<int> up_side;
            for (auto& cand : up_walk)
                if (!cand.empty() && (replaced < 0 || cand.back() == replaced)) {
                    up_side = cand;
                    cand.clear();
                    break;
                }
            if (up_side.empty())
                for (auto& cand : up_walk)
                    if (!cand.empty()) {
                        up_side = cand;
                        cand.clear();
                        break;
                    }
            for (int r : post)
                if (up_side.empty() || up_side.back() != r) up_side.push_back(r);
            side = lo_side;
            up_new.push_back(up_side);
        }
        up.side_a = up_new.size() > 0 ? up_new[0] : std::vector<int>{};
        up.side_b = up_new.size() > 1 ? up_new[1] : std::vector<int>{};
        spliced.insert(lower);
        spliced.insert(upper);
    }

    for (int c = 0; c < static_cast<int>(bd.link.size()); ++c) {
        if (comp_merge_map.count(c)) continue; // merged away
        if (spliced.count(c)) continue;
        bool touches = false;
        for (int r : bd.link[c].side_a)
            touches = touches || in_region(r);
        for (int r : bd.link[c].side_b)
            touches = touches || in_region(r);
        auto ws = walk_sides.find(c);
        if (!touches && ws == walk_sides.end()) continue;
        if (!touches && ws != walk_sides.end()) {
            // fresh interior component
            auto& sides = ws->second;
            bd.link[c].side_a = sides.size() > 0 ? sides[0] : std::vector<int>{};
            bd.link[c].side_b = sides.size() > 1 ? sides[1] : std::vector<int>{};
            continue;
        }
        splice_side(c, bd.link[c].side_a);
        splice_side(c, bd.link[c].side_b);
    }

    // merged components disappear from every surviving record
    if (!comp_merge_map.empty())
        for (auto& rec : bd.pants) {
            for (int& c : rec.cuffs)
                if (comp_merge_map.count(c)) c = comp_merge_map.at(c);
            std::sort(rec.cuffs.begin(), rec.cuffs.end());
        }
    // ---- rewire blocks outside the region that referenced merged records
    std::set<int> new_block_set(new_block_ids.begin(), new_block_ids.end());
    for (int b = 0; b < static_cast<int>(bd.blocks.size()); ++b) {
        if (new_block_set.count(b)) continue;
        if (std::count(model.blocks.begin(), model.blocks.end(), b)) continue;
        for (int& p : bd.blocks[b].bottom_pants) {
            if (rec_merge_map.count(p)) p = rec_merge_map.at(p);
            // blocks above a split cross-section move onto the new copy
            else if (rec_replacements.count(p))
                p = rec_replacements.at(p);
        }
        for (int& p : bd.blocks[b].top_pants)
            if (rec_merge_map.count(p)) p = rec_merge_map.at(p);
        for (int& c : bd.blocks[b].loops)
            if (comp_merge_map.count(c)) c = comp_merge_map.at(c);
        std::sort(bd.blocks[b].loops.begin(), bd.blocks[b].loops.end());
        if (comp_merge_map.count(bd.blocks[b].old_curve))
            bd.blocks[b].old_curve = comp_merge_map.at(bd.blocks[b].old_curve);
        if (comp_merge_map.count(bd.blocks[b].new_curve))
            bd.blocks[b].new_curve = comp_merge_map.at(bd.blocks[b].new_curve);
    }

    // a split hands everything above the insertion to the upper component
    for (auto [lower, upper] : comp_splits) {
        std::set<int> upper_recs(bd.link[upper].side_a.begin(), bd.link[upper].side_a.end());
        upper_recs.insert(bd.link[upper].side_b.begin(), bd.link[upper].side_b.end());
        for (int r : upper_recs) {
            for (int& c : bd.pants[r].cuffs)
                if (c == lower) c = upper;
            std::sort(bd.pants[r].cuffs.begin(), bd.pants[r].cuffs.end());
        }
        for (auto& blk : bd.blocks) {
            bool touches = false;
            for (const auto* faces : {&blk.bottom_pants, &blk.top_pants})
                for (int p : *faces) touches = touches || upper_recs.count(p);
            if (!touches) continue;
            for (int& c : blk.loops)
                if (c == lower) c = upper;
            std::sort(blk.loops.begin(), blk.loops.end());
            if (blk.old_curve == lower) blk.old_curve = upper;
        }
    }

    // births/deaths referencing merged blocks are untouched; outside comps
    // keep block ends, but merged components need their outside ends kept

    // ---- delete old blocks, unused records and components
    std::set<int> dead_recs;
    std::set<int> live_recs; // records used anywhere after the rewrite
    for (std::size_t cls = 0; cls < sim.classes.size(); ++cls) live_recs.insert(rec_of_cls[cls]);
    for (int r : model.region_recs)
        if (!live_recs.count(r) || rec_merge_map.count(r)) dead_recs.insert(r);

    std::set<int> dead_blocks(model.blocks.begin(), model.blocks.end());
    std::set<int> dead_comps;
    for (auto [gone, kept] : comp_merges) dead_comps.insert(gone);
    // components wholly interior to the old region die with it
    for (const auto& [key, comp] : model.comp_of) {
        const auto& runs = old_runs.at(key.first);
        const Run& run = runs[key.second];
        bool interior = run.lo > 0 && run.hi < old_top;
        if (interior) {
            bool still = false;
            for (const auto& [nkey, ncomp] : comp_new)
                if (ncomp == comp) still = true;
            if (!still) dead_comps.insert(comp);
        }
    }

    // compact
    std::vector<int> comp_map(bd.link.size(), -1), rec_map(bd.pants.size(), -1),
        block_map(bd.blocks.size(), -1);
    BlockDecomposition out;
    for (int c = 0; c < static_cast<int>(bd.link.size()); ++c) {
        if (dead_comps.count(c)) continue;
        comp_map[c] = static_cast<int>(out.link.size());
        out.link.push_back(bd.link[c]);
    }
    for (int p = 0; p < static_cast<int>(bd.pants.size()); ++p) {
        if (dead_recs.count(p)) continue;
        rec_map[p] = static_cast<int>(out.pants.size());
        out.pants.push_back(bd.pants[p]);
    }
    for (int b = 0; b < static_cast<int>(bd.blocks.size()); ++b) {
        if (dead_blocks.count(b)) continue;
        block_map[b] = static_cast<int>(out.blocks.size());
        out.blocks.push_back(bd.blocks[b]);
    }
    for (auto& rec : out.pants) {
        for (int& c : rec.cuffs) c = comp_map[c];
        std::sort(rec.cuffs.begin(), rec.cuffs.end());
    }
    for (auto& blk : out.blocks) {
        for (int& c : blk.loops) c = comp_map[c];
        std::sort(blk.loops.begin(), blk.loops.end());
        blk.old_curve = comp_map[blk.old_curve];
        blk.new_curve = comp_map[blk.new_curve];
        for (int& p : blk.bottom_pants) p = rec_map[p];
        for (int& p : blk.top_pants) p = rec_map[p];
    }
    for (auto& comp : out.link) {
        for (auto* side : {&comp.side_a, &comp.side_b}) {
            std::vector<int> mapped;
            for (int r : *side) {
                int m2 = rec_map[r];
                if (m2 >= 0 && (mapped.empty() || mapped.back() != m2)) mapped.push_back(m2);
            }
            *side = mapped;
        }
        if (comp.birth.kind == LinkEnd::Kind::Block) comp.birth.index = block_map[comp.birth.index];
        if (comp.death.kind == LinkEnd::Kind::Block) comp.death.index = block_map[comp.death.index];
    }

    Rewrite rw;
    rw.bd = std::move(out);
    for (int b : new_block_ids) rw.new_blocks.push_back(block_map[b]);
    for (auto [gone, kept] : comp_merges) rw.merged_comps.push_back(comp_map[kept]);
    for (auto [gone, kept] : rec_merges) rw.merged_recs.push_back(rec_map[kept]);
    rw.bd.validate(false);
    return rw;
}

// -------------------------------------------------------------- chain match


std::optional<Model> match_chain(const BlockDecomposition& bd, const std::vector<int>& blocks) {
    if (blocks.empty()) return std::nullopt;
    for (int b : blocks)
        if (b < 0 || b >= static_cast<int>(bd.blocks.size())) return std::nullopt;
    std::set<int> uniq(blocks.begin(), blocks.end());
    if (uniq.size() != blocks.size()) return std::nullopt;

    std::vector<Key> olds, news;
    for (int b : blocks) {
        olds.push_back(comp_key(bd, bd.blocks[b].old_curve));
        news.push_back(comp_key(bd, bd.blocks[b].new_curve));
    }
    KeyType t = olds[0].type;
    if (t == KeyType::Plain) return std::nullopt;
    std::string sup_id = olds[0].support;
    for (std::size_t i = 0; i < blocks.size(); ++i)
        if (olds[i].type != t || news[i].type != t || olds[i].support != sup_id ||
            news[i].support != sup_id)
            return std::nullopt;

    AmbientSupport sup;
    sup.id = sup_id;
    std::vector<DecompositionState> walk;

    if (t == KeyType::SlopeKey) {
        bool all_s11 = true, all_s04 = true;
        for (int b : blocks) {
            all_s11 = all_s11 && bd.blocks[b].kind == BlockKind::S11;
            all_s04 = all_s04 && bd.blocks[b].kind == BlockKind::S04;
        }
        if (!all_s11 && !all_s04) return std::nullopt;
        sup.kind = all_s11 ? SupportKind::S11 : SupportKind::S04;
        walk.push_back(DecompositionState::slope(olds[0].slope));
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            if (i > 0 && bd.blocks[blocks[i]].old_curve != bd.blocks[blocks[i - 1]].new_curve)
                return std::nullopt;
            walk.push_back(DecompositionState::slope(news[i].slope));
        }
    } else {
        sup.kind = t == KeyType::Gamma ? SupportKind::S05 : SupportKind::S12;
        const int mod = t == KeyType::Gamma ? 5 : 6;
        std::vector<CycleStep> steps;
        for (std::size_t i = 0; i < blocks.size(); ++i) {
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

    // boundary assignment candidates
    std::vector<std::vector<std::string>> assignments;
    const PantsBlock& b0 = bd.blocks[blocks[0]];
    auto rec_bases = [&](int rec, const std::string& skip, int skips) {
        std::vector<std::string> out;
        for (int c : bd.pants[rec].cuffs) {
            std::string base = curve_base(bd.link[c].label);
            if (base == skip && skips > 0) {
                --skips;
                continue;
            }
            out.push_back(base);
        }
        return out;
    };
    if (sup.kind == SupportKind::S11) {
        auto bs = rec_bases(b0.bottom_pants[0], olds[0].base, 2);
        if (bs.size() != 1) return std::nullopt;
        assignments.push_back(bs);
    } else if (sup.kind == SupportKind::S04) {
        std::vector<std::string> slots;
        for (int r : b0.bottom_pants)
            for (const auto& x : rec_bases(r, olds[0].base, 1)) slots.push_back(x);
        if (slots.size() != 4) return std::nullopt;
        assignments = boundary_orderings(slots, 4);
    } else if (sup.kind == SupportKind::S12) {
        std::set<std::string> curve_bases;
        for (int s = 0; s <= static_cast<int>(blocks.size()); ++s)
            for (const auto& c : support_curves(sup, walk[s])) curve_bases.insert(c);
        std::set<std::string> bset;
        for (int blk : blocks)
            for (int r : bd.blocks[blk].bottom_pants)
                for (int c : bd.pants[r].cuffs) {
                    std::string base = curve_base(bd.link[c].label);
                    if (!curve_bases.count(base)) bset.insert(base);
                }
        std::vector<std::string> bs(bset.begin(), bset.end());
        if (bs.size() == 2) {
            assignments.push_back({bs[0], bs[1]});
            assignments.push_back({bs[1], bs[0]});
        } else if (bs.size() == 1) {
            assignments.push_back({bs[0], bs[0]});
        }
    } else {
        // five-holed sphere: derive the positions from the bottom
        // cross-section, which is the first block's bottom faces plus one
        // record the first move does not touch
        int k0 = walk[0].index();
        std::string u_base = pentagon_curve(sup.id, 2 * k0);
        std::string v_base = pentagon_curve(sup.id, 2 * k0 + 2);
        auto has_base = [&](int rec, const std::string& base) {
            for (int c : bd.pants[rec].cuffs)
                if (curve_base(bd.link[c].label) == base) return true;
            return false;
        };
        std::vector<int> thirds;
        if (blocks.size() >= 2) {
            for (int r : bd.blocks[blocks[1]].bottom_pants)
                if (!std::count(b0.top_pants.begin(), b0.top_pants.end(), r) &&
                    !std::count(b0.bottom_pants.begin(), b0.bottom_pants.end(), r))
                    thirds.push_back(r);
        }
        if (thirds.empty()) {
            // a cancelling pair leaves the third pants untouched: find it
            // along the static curve's chains among compatible records
            int shared = -1;
            for (int r : b0.bottom_pants)
                if (has_base(r, u_base) && has_base(r, v_base)) shared = r;
            if (shared < 0) return std::nullopt;
            const std::string other = olds[0].base == u_base ? v_base : u_base;
            int other_comp = -1;
            for (int c : bd.pants[shared].cuffs)
                if (curve_base(bd.link[c].label) == other) other_comp = c;
            if (other_comp < 0) return std::nullopt;
            auto order = record_order(bd);
            for (const auto* side : {&bd.link[other_comp].side_a, &bd.link[other_comp].side_b})
                for (int r : *side) {
                    if (std::count(b0.bottom_pants.begin(), b0.bottom_pants.end(), r)) continue;
                    bool compatible = true;
                    for (int s : b0.bottom_pants)
                        if (order[r][s] || order[s][r]) compatible = false;
                    if (compatible && !std::count(thirds.begin(), thirds.end(), r))
                        thirds.push_back(r);
                }
        }
        for (int third : thirds) {
            std::vector<int> bottom = b0.bottom_pants;
            bottom.push_back(third);
            std::vector<int> u_recs, v_recs;
            for (int r : bottom) {
                if (has_base(r, u_base)) u_recs.push_back(r);
                if (has_base(r, v_base)) v_recs.push_back(r);
            }
            if (u_recs.size() != 2 || v_recs.size() != 2) continue;
            for (const auto& a : pentagon_positions(sup.id, k0, u_base, v_base, cuff_bases(bd, u_recs), cuff_bases(bd, v_recs))) {
                sup.boundary = a;
                if (auto m = try_model(bd, blocks, sup, walk)) return m;
            }
        }
        return std::nullopt;
    }

    for (const auto& a : assignments) {
        sup.boundary = a;
        if (auto m = try_model(bd, blocks, sup, walk)) return m;
    }
    return std::nullopt;
}

// ----------------------------------------------------------- insertion match

std::optional<Model> match_insertion(const BlockDecomposition& bd, int comp, int pa, int pb) {
    if (comp < 0 || comp >= static_cast<int>(bd.link.size())) return std::nullopt;
    if (pa < 0 || pa >= static_cast<int>(bd.pants.size()) || pb < 0 ||
        pb >= static_cast<int>(bd.pants.size()))
        return std::nullopt;
    Key key = comp_key(bd, comp);
    if (key.type == KeyType::Plain) return std::nullopt;
    auto slots_in = [&](int rec) {
        return std::count(bd.pants[rec].cuffs.begin(), bd.pants[rec].cuffs.end(), comp);
    };
    if (pa == pb ? slots_in(pa) != 2 : (slots_in(pa) != 1 || slots_in(pb) != 1))
        return std::nullopt;

    AmbientSupport sup;
    sup.id = key.support;
    std::vector<int> recs{pa};
    if (pb != pa) recs.push_back(pb);
    auto bases_of = [&](int rec) {
        std::vector<std::string> out;
        for (int c : bd.pants[rec].cuffs) out.push_back(curve_base(bd.link[c].label));
        return out;
    };

    DecompositionState state = DecompositionState::slope(Slope(0, 1));
    std::vector<std::vector<std::string>> assignments;

    if (key.type == KeyType::SlopeKey) {
        sup.kind = pa == pb ? SupportKind::S11 : SupportKind::S04;
        state = DecompositionState::slope(key.slope);
        if (pa == pb) {
            auto bs = bases_of(pa);
            std::vector<std::string> rest;
            int skips = 2;
            for (const auto& x : bs)
                if (x == key.base && skips > 0)
                    --skips;
                else
                    rest.push_back(x);
            if (rest.size() != 1) return std::nullopt;
            assignments.push_back(rest);
        } else {
            std::vector<std::string> slots;
            for (int r : recs) {
                int skips = 1;
                for (const auto& x : bases_of(r))
                    if (x == key.base && skips > 0)
                        --skips;
                    else
                        slots.push_back(x);
            }
            if (slots.size() != 4) return std::nullopt;
            assignments = boundary_orderings(slots, 4);
        }
    } else {
        // find the other curve of the state among the site cuffs
        std::string other;
        for (int r : recs)
            for (const auto& x : bases_of(r)) {
                Key k2 = parse_key(x);
                if (k2.type == key.type && k2.support == key.support && x != key.base) other = x;
            }
        if (other.empty()) return std::nullopt;
        Key ok = parse_key(other);
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
            state = DecompositionState::pentagon(k0);
            // the cross-section needs the static record of the other curve
            int other_comp = -1;
            for (int r : recs)
                for (int c : bd.pants[r].cuffs)
                    if (curve_base(bd.link[c].label) == other) other_comp = c;
            if (other_comp < 0) return std::nullopt;
            auto order = record_order(bd);
            std::vector<int> candidates;
            for (const auto* side : {&bd.link[other_comp].side_a, &bd.link[other_comp].side_b})
                for (int r : *side) {
                    if (std::count(recs.begin(), recs.end(), r)) continue;
                    if (order[r][pa] || order[pa][r] || order[r][pb] || order[pb][r]) continue;
                    if (!std::count(candidates.begin(), candidates.end(), r)) candidates.push_back(r);
                }
            std::string u_base = pentagon_curve(sup.id, 2 * k0);
            std::string v_base = pentagon_curve(sup.id, 2 * k0 + 2);
            for (int r_static : candidates) {
                std::vector<int> u_recs, v_recs;
                for (int r : recs) {
                    auto bs = bases_of(r);
                    if (std::count(bs.begin(), bs.end(), u_base)) u_recs.push_back(r);
                }
                for (int r : recs) {
                    auto bs = bases_of(r);
                    if (std::count(bs.begin(), bs.end(), v_base) &&
                        !std::count(u_recs.begin(), u_recs.end(), r))
                        v_recs.push_back(r);
                }
                v_recs.push_back(r_static);
                // u must sit in two records, v in P3 and the static one
                if (u_recs.size() != 2) continue;
                auto assigns = pentagon_positions(sup.id, k0, u_base, v_base, cuff_bases(bd, u_recs), cuff_bases(bd, v_recs));
                std::vector<int> all = recs;
                all.push_back(r_static);
                for (const auto& a : assigns) {
                    sup.boundary = a;
                    if (auto m = try_model(bd, {}, sup, {state}, all)) return m;
                }
            }
            return std::nullopt;
        }
        // six-cycle
        sup.kind = SupportKind::S12;
        int i = key.index, j = ok.index;
        int k0;
        if ((i + 1) % 6 == j)
            k0 = i;
        else if ((j + 1) % 6 == i)
            k0 = j;
        else
            return std::nullopt;
        state = DecompositionState::hexagon(k0);
        std::vector<int> all = recs;
        if (recs.size() == 1) {
            // separating shape: add the static record of the separating curve
            int sep_comp = -1;
            for (int c : bd.pants[pa].cuffs)
                if (curve_base(bd.link[c].label) == other) sep_comp = c;
            if (sep_comp < 0) return std::nullopt;
            auto order = record_order(bd);
            for (const auto* side : {&bd.link[sep_comp].side_a, &bd.link[sep_comp].side_b})
                for (int r : *side) {
                    if (r == pa || order[r][pa] || order[pa][r]) continue;
                    std::vector<int> with = all;
                    with.push_back(r);
                    std::set<std::string> bset;
                    for (const auto& x : bases_of(r))
                        if (parse_key(x).type == KeyType::Plain || parse_key(x).support != sup.id)
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
                        if (auto m = try_model(bd, {}, sup, {state}, with)) return m;
                    }
                }
            return std::nullopt;
        }
        std::set<std::string> bset;
        for (int r : recs)
            for (const auto& x : bases_of(r))
                if (x != key.base && x != other) bset.insert(x);
        std::vector<std::string> bs(bset.begin(), bset.end());
        if (bs.size() == 2) {
            assignments.push_back({bs[0], bs[1]});
            assignments.push_back({bs[1], bs[0]});
        } else if (bs.size() == 1) {
            assignments.push_back({bs[0], bs[0]});
        }
    }

    for (const auto& a : assignments) {
        sup.boundary = a;
        if (auto m = try_model(bd, {}, sup, {state}, recs)) return m;
    }
    return std::nullopt;
}

// -------------------------------------------------------- replacement walks




// ------------------------------------------------------------------- public

bool rule_matches_model(const RewriteRule& rule, const Model& m, bool forward,
                        const BlockDecomposition& bd) {
    const std::size_t k = m.blocks.size();
    switch (rule.category) {
    case RuleCategory::CancellingPair: {
        MoveKind want = rule.lhs.front().kind;
        if (forward) {
            if (k != 2) return false;
            if (!(m.walk.front() == m.walk.back())) return false;
            for (int b : m.blocks) {
                BlockKind bk = bd.blocks[b].kind;
                if ((want == MoveKind::S) != (bk == BlockKind::S11)) return false;
            }
            return true;
        }
        return k == 0; // insertion; the wiggle kind is checked by the caller
    }
    case RuleCategory::Triangle12: {
        if (!m.walk.front().is_slope()) return false;
        MoveKind want = rule.lhs.front().kind;
        SupportKind sk = want == MoveKind::S ? SupportKind::S11 : SupportKind::S04;
        if (m.sup.kind != sk) return false;
        if (forward) return k == 1;
        if (k != 2) return false;
        if (m.walk.front() == m.walk.back()) return false; // that is a cancelling pair
        long long d = slope_det(m.walk.front().as_slope(), m.walk.back().as_slope());
        return d == 1 || d == -1;
    }
    case RuleCategory::Pentagon23:
        if (m.sup.kind != SupportKind::S05) return false;
        return forward ? k == 2 : k == 3;
    case RuleCategory::Hexagon33: {
        if (m.sup.kind != SupportKind::S12) return false;
        if (k != 3) return false;
        BlockKind kinds[3] = {bd.blocks[m.blocks[0]].kind, bd.blocks[m.blocks[1]].kind,
                              bd.blocks[m.blocks[2]].kind};
        return kinds[0] == BlockKind::S04 && kinds[1] == BlockKind::S11 && kinds[2] == BlockKind::S04;
    }
    default: return false;
    }
}

} // namespace

BlockDecomposition apply_pmove_blocks(const BlockDecomposition& bd, const RewriteRule& rule,
                                      const PMoveSite& site, PMoveSite* undo) {
    if (rule.category == RuleCategory::PathOnly)
        fail(Err::NoMatch, rule.name + " is a path move only, not a block move");

    std::optional<Model> model;
    std::string wiggle_base;
    if (!site.blocks.empty()) {
        model = match_chain(bd, site.blocks);
    } else {
        model = match_insertion(bd, site.link, site.pants_a, site.pants_b);
        if (site.link >= 0 && site.link < static_cast<int>(bd.link.size()))
            wiggle_base = curve_base(bd.link[site.link].label);
    }
    if (!model || !rule_matches_model(rule, *model, site.forward, bd))
        fail(Err::NoMatch, "site does not carry " + rule.name +
                               (site.forward ? " (forward)" : " (backward)"));
    if (site.blocks.empty()) {
        // the wiggle kind must fit the rule
        bool found = false;
        for (const Wiggle& w : wiggle_targets(model->sup, model->walk.front(), wiggle_base))
            if (w.fresh == site.fresh) {
                found = (w.kind == MoveKind::S) == (rule.lhs.front().kind == MoveKind::S);
            }
        if (!found) fail(Err::NoMatch, "no legal wiggle to '" + site.fresh + "' at this site");
    }

    auto new_walk = replacement_walk(model->sup, model->walk, rule.category, site.forward, site.fresh, wiggle_base);
    Rewrite rw = region_rewrite(bd, *model, new_walk);

    if (undo) {
        PMoveSite u;
        u.rule = rule.name;
        u.forward = !site.forward;
        if (!rw.new_blocks.empty()) {
            u.blocks = rw.new_blocks;
        } else {
            // a deletion is undone by inserting at the merged curve
            u.link = rw.merged_comps.empty() ? -1 : rw.merged_comps.front();
            std::vector<int> faces;
            if (u.link >= 0)
                for (int p = 0; p < static_cast<int>(rw.bd.pants.size()); ++p) {
                    int c = static_cast<int>(std::count(rw.bd.pants[p].cuffs.begin(),
                                                        rw.bd.pants[p].cuffs.end(), u.link));
                    if (c == 2) {
                        u.pants_a = u.pants_b = p;
                    } else if (c == 1 && std::count(rw.merged_recs.begin(), rw.merged_recs.end(), p)) {
                        faces.push_back(p);
                    }
                }
            if (u.pants_a < 0 && faces.size() == 2) {
                u.pants_a = faces[0];
                u.pants_b = faces[1];
            }
            // the deleted middle curve names the wiggle to reinsert
            u.fresh = curve_key(curve_base(bd.link[bd.blocks[site.blocks[0]].new_curve].label));
        }
        *undo = u;
    }
    return rw.bd;
}

std::vector<PMoveSite> enumerate_pmove_sites(const BlockDecomposition& bd, const RewriteRule& rule) {
    std::vector<PMoveSite> out;
    if (rule.category == RuleCategory::PathOnly) return out;
    const int nb = static_cast<int>(bd.blocks.size());

    auto adjacency_above = [&](int b) {
        std::vector<int> ups;
        for (int other = 0; other < nb; ++other) {
            if (other == b) continue;
            for (int p : bd.blocks[b].top_pants)
                if (std::count(bd.blocks[other].bottom_pants.begin(),
                               bd.blocks[other].bottom_pants.end(), p)) {
                    ups.push_back(other);
                    break;
                }
        }
        return ups;
    };

    auto consider_chain = [&](const std::vector<int>& blocks, bool forward) {
        auto model = match_chain(bd, blocks);
        if (!model || !rule_matches_model(rule, *model, forward, bd)) return;
        PMoveSite site;
        site.rule = rule.name;
        site.forward = forward;
        site.blocks = blocks;
        if (rule.category == RuleCategory::Triangle12 && forward) {
            // one site per middle-slope completion
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
    case RuleCategory::CancellingPair: want_fwd = 2; want_bwd = 0; break;
    case RuleCategory::Triangle12: want_fwd = 1; want_bwd = 2; break;
    case RuleCategory::Pentagon23: want_fwd = 2; want_bwd = 3; break;
    case RuleCategory::Hexagon33: want_fwd = 3; want_bwd = 0; break;
    default: break;
    }
    auto chains_of = [&](std::size_t len, bool forward) {
        if (len == 0) return;
        for (int b0 = 0; b0 < nb; ++b0) {
            std::vector<std::vector<int>> stack{{b0}};
            while (!stack.empty()) {
                std::vector<int> cur = stack.back();
                stack.pop_back();
                if (cur.size() == len) {
                    consider_chain(cur, forward);
                    continue;
                }
                for (int up : adjacency_above(cur.back())) {
                    if (std::count(cur.begin(), cur.end(), up)) continue;
                    std::vector<int> next = cur;
                    next.push_back(up);
                    stack.push_back(next);
                }
            }
        }
    };
    chains_of(want_fwd, true);
    if (want_bwd && rule.category != RuleCategory::Hexagon33) chains_of(want_bwd, false);

    if (rule.category == RuleCategory::CancellingPair) {
        // insertion sites: every wiggleable curve at every co-temporal face pair
        auto order = record_order(bd);
        for (int c = 0; c < static_cast<int>(bd.link.size()); ++c) {
            Key key = comp_key(bd, c);
            if (key.type == KeyType::Plain) continue;
            const LinkComp& comp = bd.link[c];
            std::set<std::pair<int, int>> placements;
            for (int ra : comp.side_a) {
                if (std::count(bd.pants[ra].cuffs.begin(), bd.pants[ra].cuffs.end(), c) == 2) {
                    placements.insert({ra, ra});
                    continue;
                }
                for (int rb : comp.side_b) {
                    if (ra == rb) continue;
                    if (order[ra][rb] || order[rb][ra]) continue;
                    placements.insert({std::min(ra, rb), std::max(ra, rb)});
                }
            }
            for (auto [pa, pb] : placements) {
                auto model = match_insertion(bd, c, pa, pb);
                if (!model) continue;
                for (const Wiggle& w : wiggle_targets(model->sup, model->walk.front(), key.base)) {
                    if ((w.kind == MoveKind::S) != (rule.lhs.front().kind == MoveKind::S)) continue;
                    PMoveSite site;
                    site.rule = rule.name;
                    site.forward = false;
                    site.link = c;
                    site.pants_a = pa;
                    site.pants_b = pb;
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

std::vector<PMoveSite> enumerate_pmove_sites(const BlockDecomposition& bd) {
    std::vector<PMoveSite> out;
    for (const auto& rule : pmove_rules()) {
        auto sites = enumerate_pmove_sites(bd, rule);
        out.insert(out.end(), sites.begin(), sites.end());
    }
    return out;
}

json to_json(const PMoveSite& s) {
    json j;
    j["rule"] = s.rule;
    j["dir"] = s.forward ? "forward" : "backward";
    json loc;
    if (!s.blocks.empty()) loc["blocks"] = s.blocks;
    if (s.link >= 0) {
        loc["link"] = s.link;
        loc["pants"] = {s.pants_a, s.pants_b};
    }
    if (!s.fresh.empty()) loc["fresh"] = s.fresh;
    j["location"] = loc;
    return j;
}

PMoveSite site_from_json(const json& j) {
    PMoveSite s;
    s.rule = j.at("rule").get<std::string>();
    s.forward = j.at("dir").get<std::string>() == "forward";
    const json& loc = j.at("location");
    if (loc.contains("blocks")) s.blocks = loc.at("blocks").get<std::vector<int>>();
    if (loc.contains("link")) {
        s.link = loc.at("link").get<int>();
        s.pants_a = loc.at("pants").at(0).get<int>();
        s.pants_b = loc.at("pants").at(1).get<int>();
    }
    if (loc.contains("fresh")) s.fresh = loc.at("fresh").get<std::string>();
    return s;
}

} // namespace pants
