#include "pants/blocks.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "pants/canonical.hpp"

namespace pants {

using json = nlohmann::ordered_json;

const char* to_string(BlockKind k) {
    switch (k) {
    case BlockKind::Trivial: return "Trivial";
    case BlockKind::S11: return "S11";
    case BlockKind::S04: return "S04";
    }
    return "?";
}

namespace {

std::set<std::string> level_labels(const std::vector<Pants3>& level) {
    std::set<std::string> out;
    for (const auto& p : level)
        for (const auto& c : p) out.insert(c);
    return out;
}

} // namespace

AnnulusSet build_annuli(const PantsPath& path) {
    const int n = path.top_level();
    std::map<std::string, std::vector<char>> present;
    for (int t = 0; t <= n; ++t)
        for (const auto& label : level_labels(path.levels[t])) {
            if (path.boundary.count(label)) continue; // surface boundary, not a loop
            auto& bits = present[label];
            bits.resize(n + 1, 0);
            bits[t] = 1;
        }
    AnnulusSet out;
    out.top_level = n;
    for (const auto& [label, bits] : present) {
        int t = 0;
        while (t <= n) {
            if (t >= static_cast<int>(bits.size()) || !bits[t]) {
                ++t;
                continue;
            }
            int lo = t;
            while (t + 1 <= n && t + 1 < static_cast<int>(bits.size()) && bits[t + 1]) ++t;
            out.tracks.push_back({label, lo, t});
            ++t;
        }
    }
    std::sort(out.tracks.begin(), out.tracks.end());
    return out;
}

AnnulusSet build_annuli(const std::vector<AmbientDecomposition>& states) {
    return build_annuli(path_from_states(states));
}

std::vector<std::string> find_maximum_annuli(const AnnulusSet& x, int top_level) {
    std::vector<std::string> out;
    for (const auto& t : x.tracks)
        if (t.lo == 0 && t.hi == top_level) out.push_back(t.curve);
    return out;
}

std::vector<std::string> find_maximum_annuli(const PantsPath& path) {
    return find_maximum_annuli(build_annuli(path), path.top_level());
}

namespace {

// Match untouched pants instances of two consecutive levels 1-1 by cuff
// multiset; instances containing `gone` (below) or `born` (above) belong to
// the move and stay unmatched.
struct LevelMatch {
    std::vector<std::pair<int, int>> matched; // (below idx, above idx)
    std::vector<int> below_move, above_move;
};

LevelMatch match_levels(const std::vector<Pants3>& below, const std::vector<Pants3>& above,
                        const std::optional<PathMove>& move) {
    LevelMatch lm;
    std::map<Pants3, std::vector<int>> pool;
    std::vector<char> below_used(below.size(), 0);
    for (int j = 0; j < static_cast<int>(above.size()); ++j) {
        const Pants3& p = above[j];
        if (move && std::count(p.begin(), p.end(), move->new_curve)) {
            lm.above_move.push_back(j);
            continue;
        }
        Pants3 key = p;
        std::sort(key.begin(), key.end());
        pool[key].push_back(j);
    }
    for (int i = 0; i < static_cast<int>(below.size()); ++i) {
        const Pants3& p = below[i];
        if (move && std::count(p.begin(), p.end(), move->old_curve)) {
            lm.below_move.push_back(i);
            continue;
        }
        Pants3 key = p;
        std::sort(key.begin(), key.end());
        auto it = pool.find(key);
        if (it == pool.end() || it->second.empty())
            fail(Err::NotAPath, "pants {" + p[0] + "," + p[1] + "," + p[2] +
                                    "} changes without a move");
        lm.matched.push_back({i, it->second.back()});
        it->second.pop_back();
        below_used[i] = 1;
    }
    for (const auto& [key, rest] : pool)
        if (!rest.empty()) fail(Err::NotAPath, "pants appear without a move");
    return lm;
}

struct UnionFind {
    std::vector<int> up;
    explicit UnionFind(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
    int find(int x) {
        while (up[x] != x) x = up[x] = up[up[x]];
        return x;
    }
    void join(int a, int b) { up[find(a)] = find(b); }
};

} // namespace

std::vector<PantsPath> split_at_maximum_annuli(const PantsPath& path) {
    auto max = find_maximum_annuli(path);
    if (max.empty()) return {path};
    std::set<std::string> cut(max.begin(), max.end());
    std::set<std::string> new_boundary = path.boundary;
    new_boundary.insert(cut.begin(), cut.end());

    const int n = path.top_level();
    // instance numbering: (level, index) -> id
    std::vector<int> level_off(n + 2, 0);
    for (int t = 0; t <= n; ++t)
        level_off[t + 1] = level_off[t] + static_cast<int>(path.levels[t].size());
    UnionFind uf(level_off[n + 1]);

    // same-level connections through non-cut interior curves
    for (int t = 0; t <= n; ++t) {
        std::map<std::string, std::vector<int>> slots;
        for (int i = 0; i < static_cast<int>(path.levels[t].size()); ++i)
            for (const auto& c : path.levels[t][i])
                if (!new_boundary.count(c)) slots[c].push_back(level_off[t] + i);
        for (const auto& [c, ids] : slots)
            for (std::size_t k = 1; k < ids.size(); ++k) uf.join(ids[0], ids[k]);
    }
    // cross-level: untouched pants persist, move pants merge into one region
    for (int t = 0; t < n; ++t) {
        LevelMatch lm = match_levels(path.levels[t], path.levels[t + 1], path.moves[t]);
        for (auto [i, j] : lm.matched) uf.join(level_off[t] + i, level_off[t + 1] + j);
        std::vector<int> movers;
        for (int i : lm.below_move) movers.push_back(level_off[t] + i);
        for (int j : lm.above_move) movers.push_back(level_off[t + 1] + j);
        for (std::size_t k = 1; k < movers.size(); ++k) uf.join(movers[0], movers[k]);
    }

    // assemble one sub-path per component
    std::map<int, PantsPath> pieces;
    for (int t = 0; t <= n; ++t)
        for (int i = 0; i < static_cast<int>(path.levels[t].size()); ++i) {
            int root = uf.find(level_off[t] + i);
            PantsPath& piece = pieces[root];
            if (piece.levels.empty()) piece.levels.resize(n + 1);
            piece.levels[t].push_back(path.levels[t][i]);
        }
    for (auto& [root, piece] : pieces) {
        piece.moves.assign(n, std::nullopt);
        std::set<std::string> labels;
        for (const auto& lvl : piece.levels)
            for (const auto& p : lvl)
                for (const auto& c : p) labels.insert(c);
        for (const auto& c : labels)
            if (new_boundary.count(c)) piece.boundary.insert(c);
    }
    for (int t = 0; t < n; ++t) {
        if (!path.moves[t]) continue;
        // the move lives in the component of any pants touching its old curve
        for (int i = 0; i < static_cast<int>(path.levels[t].size()); ++i)
            if (std::count(path.levels[t][i].begin(), path.levels[t][i].end(),
                           path.moves[t]->old_curve)) {
                pieces[uf.find(level_off[t] + i)].moves[t] = path.moves[t];
                break;
            }
    }

    std::vector<PantsPath> out;
    for (auto& [root, piece] : pieces) {
        auto sub = split_at_maximum_annuli(piece);
        out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
}

int BlockDecomposition::find_link(const std::string& label) const {
    for (int i = 0; i < static_cast<int>(link.size()); ++i)
        if (link[i].label == label) return i;
    return -1;
}

std::vector<int> BlockDecomposition::blocks_below(int pants_idx) const {
    std::vector<int> out;
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b)
        for (int p : blocks[b].top_pants)
            if (p == pants_idx) out.push_back(b);
    return out;
}

std::vector<int> BlockDecomposition::blocks_above(int pants_idx) const {
    std::vector<int> out;
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b)
        for (int p : blocks[b].bottom_pants)
            if (p == pants_idx) out.push_back(b);
    return out;
}

void BlockDecomposition::validate(bool closed) const {
    auto check = [](bool ok, const std::string& msg) {
        if (!ok) fail(Err::InvalidDecomposition, msg);
    };
    const int nl = static_cast<int>(link.size());
    for (const auto& p : pants)
        for (int c : p.cuffs) check(c >= 0 && c < nl, "pants cuff out of range");
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
        const auto& blk = blocks[b];
        std::size_t faces = blk.kind == BlockKind::S11 ? 1 : 2;
        std::size_t nloops = blk.kind == BlockKind::S11 ? 3 : 6;
        check(blk.kind != BlockKind::Trivial, "trivial block in output");
        check(blk.bottom_pants.size() == faces && blk.top_pants.size() == faces,
              "block face count does not fit its kind");
        check(blk.loops.size() == nloops, "block loop count does not fit its kind");
        check(blk.old_curve >= 0 && blk.old_curve < nl, "old curve missing");
        check(blk.new_curve >= 0 && blk.new_curve < nl, "new curve missing");
        // after a monodromy gluing the old and new curves may be one component
        check(std::count(blk.loops.begin(), blk.loops.end(), blk.old_curve) >= 1,
              "old curve not among the loops");
        check(std::count(blk.loops.begin(), blk.loops.end(), blk.new_curve) >= 1,
              "new curve not among the loops");
        check(link[blk.old_curve].death == LinkEnd{LinkEnd::Kind::Block, b},
              "old curve does not die at its block");
        check(link[blk.new_curve].birth == LinkEnd{LinkEnd::Kind::Block, b},
              "new curve is not born at its block");
        for (int p : blk.bottom_pants) {
            check(p >= 0 && p < static_cast<int>(pants.size()), "face index out of range");
            check(std::count(pants[p].cuffs.begin(), pants[p].cuffs.end(), blk.old_curve) > 0,
                  "bottom face misses the old curve");
        }
        for (int p : blk.top_pants)
            check(std::count(pants[p].cuffs.begin(), pants[p].cuffs.end(), blk.new_curve) > 0,
                  "top face misses the new curve");
    }
    for (int p = 0; p < static_cast<int>(pants.size()); ++p) {
        auto below = blocks_below(p), above = blocks_above(p);
        check(below.size() <= 1 && above.size() <= 1, "pants bounds too many blocks");
        if (closed) check(below.size() == 1 && above.size() == 1, "open pants in a closed gluing");
    }
    for (const auto& comp : link) {
        if (!comp.cyclic) continue;
        check(comp.birth.kind == LinkEnd::Kind::Seam && comp.death.kind == LinkEnd::Kind::Seam,
              "cyclic component with non-seam ends");
    }
}

BlockDecomposition collapse(const PantsPath& piece) {
    const int n = piece.top_level();
    AnnulusSet ann = build_annuli(piece);
    for (const auto& t : ann.tracks)
        if (t.lo == 0 && t.hi == n)
            fail(Err::InvalidDecomposition, "maximum annulus " + t.curve + "; split first");

    BlockDecomposition bd;

    // link components: boundary cores first, then interior tracks; repeat
    // occurrences of one curve get #1, #2, ...
    std::map<std::string, std::vector<std::tuple<int, int, int>>> spans; // base -> (lo,hi,comp)
    std::set<std::string> present_boundary;
    for (const auto& lvl : piece.levels)
        for (const auto& p : lvl)
            for (const auto& c : p)
                if (piece.boundary.count(c)) present_boundary.insert(c);
    for (const auto& b : present_boundary) {
        bd.link.push_back(LinkComp{b, {}, {}, false, {}, {}});
        spans[b].push_back({0, n, static_cast<int>(bd.link.size()) - 1});
    }
    std::map<std::string, int> occurrence;
    for (const auto& t : ann.tracks) {
        int occ = occurrence[t.curve]++;
        std::string label = occ == 0 ? t.curve : t.curve + "#" + std::to_string(occ);
        bd.link.push_back(LinkComp{label, {}, {}, false, {}, {}});
        spans[t.curve].push_back({t.lo, t.hi, static_cast<int>(bd.link.size()) - 1});
    }
    auto comp_at = [&](const std::string& curve, int level) {
        auto it = spans.find(curve);
        if (it != spans.end())
            for (auto [lo, hi, idx] : it->second)
                if (lo <= level && level <= hi) return idx;
        fail(Err::InvalidDecomposition, "no component for " + curve + " at level " +
                                            std::to_string(level));
    };

    // pants records: persistence classes of level instances
    std::vector<int> level_off(n + 2, 0);
    for (int t = 0; t <= n; ++t)
        level_off[t + 1] = level_off[t] + static_cast<int>(piece.levels[t].size());
    UnionFind uf(level_off[n + 1]);
    for (int t = 0; t < n; ++t) {
        LevelMatch lm = match_levels(piece.levels[t], piece.levels[t + 1], piece.moves[t]);
        for (auto [i, j] : lm.matched) uf.join(level_off[t] + i, level_off[t + 1] + j);
        if (!piece.moves[t] && (!lm.below_move.empty() || !lm.above_move.empty()))
            fail(Err::NotAPath, "pants change on a moveless step");
    }
    std::map<int, int> rec_of_root;
    std::vector<std::vector<int>> rec_of_instance(n + 1);
    for (int t = 0; t <= n; ++t) {
        rec_of_instance[t].resize(piece.levels[t].size(), -1);
        for (int i = 0; i < static_cast<int>(piece.levels[t].size()); ++i) {
            int root = uf.find(level_off[t] + i);
            auto it = rec_of_root.find(root);
            if (it == rec_of_root.end()) {
                PantsRec rec;
                const Pants3& p = piece.levels[t][i];
                std::array<int, 3> cuffs{comp_at(curve_base(p[0]), t), comp_at(curve_base(p[1]), t),
                                         comp_at(curve_base(p[2]), t)};
                std::sort(cuffs.begin(), cuffs.end());
                rec.cuffs = cuffs;
                rec.lo = rec.hi = t;
                bd.pants.push_back(rec);
                it = rec_of_root.insert({root, static_cast<int>(bd.pants.size()) - 1}).first;
            }
            bd.pants[it->second].hi = t;
            rec_of_instance[t][i] = it->second;
        }
    }

    // one fundamental block per move
    std::vector<int> block_of_step(std::max(n, 0), -1);
    for (int t = 0; t < n; ++t) {
        if (!piece.moves[t]) continue;
        const PathMove& mv = *piece.moves[t];
        int old_comp = comp_at(mv.old_curve, t);
        int new_comp = comp_at(mv.new_curve, t + 1);
        PantsBlock blk;
        blk.bottom_level = t;
        blk.top_level = t + 1;
        blk.old_curve = old_comp;
        blk.new_curve = new_comp;
        blk.support = mv.support;
        std::vector<int> loops;
        for (int i = 0; i < static_cast<int>(piece.levels[t].size()); ++i) {
            const Pants3& p = piece.levels[t][i];
            if (!std::count(p.begin(), p.end(), mv.old_curve)) continue;
            blk.bottom_pants.push_back(rec_of_instance[t][i]);
            for (const auto& c : p) loops.push_back(comp_at(curve_base(c), t));
        }
        for (int i = 0; i < static_cast<int>(piece.levels[t + 1].size()); ++i) {
            const Pants3& p = piece.levels[t + 1][i];
            if (!std::count(p.begin(), p.end(), mv.new_curve)) continue;
            blk.top_pants.push_back(rec_of_instance[t + 1][i]);
        }
        // loops: bottom boundary plus the two moved curves
        loops.erase(std::find(loops.begin(), loops.end(), old_comp));
        loops.erase(std::find(loops.begin(), loops.end(), old_comp));
        loops.push_back(old_comp);
        loops.push_back(new_comp);
        std::sort(loops.begin(), loops.end());
        blk.loops = std::move(loops);
        blk.kind = blk.bottom_pants.size() == 1 ? BlockKind::S11 : BlockKind::S04;
        if ((mv.kind == MoveKind::S) != (blk.kind == BlockKind::S11))
            fail(Err::InvalidDecomposition, "move kind does not match its block shape");
        bd.blocks.push_back(blk);
        block_of_step[t] = static_cast<int>(bd.blocks.size()) - 1;
    }

    // component ends
    for (const auto& [base, ss] : spans)
        for (auto [lo, hi, idx] : ss) {
            LinkComp& comp = bd.link[idx];
            if (lo == 0)
                comp.birth = {LinkEnd::Kind::Free, -1};
            else {
                if (block_of_step[lo - 1] < 0)
                    fail(Err::InvalidDecomposition, "component born without a move");
                comp.birth = {LinkEnd::Kind::Block, block_of_step[lo - 1]};
            }
            if (hi == n)
                comp.death = {LinkEnd::Kind::Free, -1};
            else {
                if (block_of_step[hi] < 0)
                    fail(Err::InvalidDecomposition, "component killed without a move");
                comp.death = {LinkEnd::Kind::Block, block_of_step[hi]};
            }
        }

    // side chains: walk each component's two cuff slots up its run
    for (const auto& [base, ss] : spans)
        for (auto [lo, hi, idx] : ss) {
            LinkComp& comp = bd.link[idx];
            auto slots_at = [&](int t) {
                std::vector<int> out;
                for (int i = 0; i < static_cast<int>(piece.levels[t].size()); ++i)
                    for (const auto& c : piece.levels[t][i])
                        if (curve_base(c) == base) out.push_back(rec_of_instance[t][i]);
                return out;
            };
            std::vector<int> cur = slots_at(lo);
            int a = cur.empty() ? -1 : cur[0];
            int b = cur.size() > 1 ? cur[1] : -1;
            if (a >= 0) comp.side_a.push_back(a);
            if (b >= 0) comp.side_b.push_back(b);
            for (int t = lo + 1; t <= hi; ++t) {
                std::vector<int> next = slots_at(t);
                int na = -1, nb = -1;
                auto take = [&](int want) {
                    auto it = std::find(next.begin(), next.end(), want);
                    if (it == next.end()) return -1;
                    next.erase(it);
                    return want;
                };
                na = take(a);
                nb = b >= 0 ? take(b) : -1;
                if (na < 0 && !next.empty()) {
                    na = next.front();
                    next.erase(next.begin());
                }
                if (b >= 0 && nb < 0 && !next.empty()) {
                    nb = next.front();
                    next.erase(next.begin());
                }
                if (na >= 0 && na != a) comp.side_a.push_back(na);
                if (nb >= 0 && nb != b) comp.side_b.push_back(nb);
                a = na;
                b = nb;
            }
        }

    bd.validate(false);
    return bd;
}

namespace {

// append `piece` into `out`, merging boundary components by label
void merge_into(BlockDecomposition& out, const BlockDecomposition& piece) {
    std::map<std::string, int> existing;
    for (int i = 0; i < static_cast<int>(out.link.size()); ++i) existing[out.link[i].label] = i;

    int pants_off = static_cast<int>(out.pants.size());
    int block_off = static_cast<int>(out.blocks.size());

    std::vector<int> link_map(piece.link.size(), -1);
    for (int i = 0; i < static_cast<int>(piece.link.size()); ++i) {
        const LinkComp& comp = piece.link[i];
        auto it = existing.find(comp.label);
        if (it != existing.end()) {
            // a cut curve seen from its second side
            LinkComp& tgt = out.link[it->second];
            if (!tgt.side_b.empty() || !comp.side_b.empty())
                fail(Err::InvalidDecomposition, "cut curve " + comp.label + " has three sides");
            for (int r : comp.side_a) tgt.side_b.push_back(r + pants_off);
            link_map[i] = it->second;
        } else {
            LinkComp copy = comp;
            for (int& r : copy.side_a) r += pants_off;
            for (int& r : copy.side_b) r += pants_off;
            if (copy.birth.kind == LinkEnd::Kind::Block) copy.birth.index += block_off;
            if (copy.death.kind == LinkEnd::Kind::Block) copy.death.index += block_off;
            out.link.push_back(copy);
            link_map[i] = static_cast<int>(out.link.size()) - 1;
            existing[copy.label] = link_map[i];
        }
    }
    for (const auto& rec : piece.pants) {
        PantsRec copy = rec;
        for (int& c : copy.cuffs) c = link_map[c];
        std::sort(copy.cuffs.begin(), copy.cuffs.end());
        out.pants.push_back(copy);
    }
    for (const auto& blk : piece.blocks) {
        PantsBlock copy = blk;
        for (int& c : copy.loops) c = link_map[c];
        std::sort(copy.loops.begin(), copy.loops.end());
        copy.old_curve = link_map[copy.old_curve];
        copy.new_curve = link_map[copy.new_curve];
        for (int& p : copy.bottom_pants) p += pants_off;
        for (int& p : copy.top_pants) p += pants_off;
        out.blocks.push_back(copy);
    }
}

} // namespace

BlockDecomposition build_block_decomposition(const PantsPath& path) {
    BlockDecomposition out;
    for (const auto& piece : split_at_maximum_annuli(path)) merge_into(out, collapse(piece));
    out.validate(false);
    return out;
}

BlockDecomposition glue_monodromy(const BlockDecomposition& bd,
                                  const std::map<std::string, std::string>& phi) {
    BlockDecomposition g = bd;
    std::map<std::string, int> by_label;
    std::set<std::string> top_free, bottom_free;
    for (int i = 0; i < static_cast<int>(g.link.size()); ++i) {
        by_label[g.link[i].label] = i;
        if (g.link[i].death.kind == LinkEnd::Kind::Free) top_free.insert(g.link[i].label);
        if (g.link[i].birth.kind == LinkEnd::Kind::Free) bottom_free.insert(g.link[i].label);
    }
    std::set<std::string> domain, range;
    for (const auto& [t, b] : phi) {
        domain.insert(t);
        range.insert(b);
    }
    if (domain != top_free || range != bottom_free)
        fail(Err::NotABijection, "monodromy must map the top curves bijectively onto the bottom");

    // match top pants records to bottom records through phi
    std::vector<int> top_recs, bottom_recs;
    auto is_top = [&](int p) {
        for (int c : g.pants[p].cuffs)
            if (g.link[c].death.kind != LinkEnd::Kind::Free) return false;
        return g.blocks_above(p).empty();
    };
    auto is_bottom = [&](int p) {
        for (int c : g.pants[p].cuffs)
            if (g.link[c].birth.kind != LinkEnd::Kind::Free) return false;
        return g.blocks_below(p).empty();
    };
    for (int p = 0; p < static_cast<int>(g.pants.size()); ++p) {
        if (is_top(p)) top_recs.push_back(p);
        if (is_bottom(p)) bottom_recs.push_back(p);
    }
    UnionFind rec_uf(static_cast<int>(g.pants.size()));
    UnionFind comp_uf(static_cast<int>(g.link.size()));
    std::set<std::pair<int, int>> seams; // (top comp, bottom comp)
    for (const auto& [t, b] : phi) {
        seams.insert({by_label.at(t), by_label.at(b)});
        comp_uf.join(by_label.at(t), by_label.at(b));
    }
    {
        std::map<std::array<int, 3>, std::vector<int>> pool;
        for (int p : bottom_recs) pool[g.pants[p].cuffs].push_back(p);
        for (int p : top_recs) {
            std::array<int, 3> mapped;
            for (int k = 0; k < 3; ++k)
                mapped[k] = by_label.at(phi.at(g.link[g.pants[p].cuffs[k]].label));
            std::sort(mapped.begin(), mapped.end());
            auto it = pool.find(mapped);
            if (it == pool.end() || it->second.empty())
                fail(Err::NotABijection, "monodromy does not map the top pants onto the bottom");
            rec_uf.join(p, it->second.back());
            it->second.pop_back();
        }
        for (const auto& [key, rest] : pool)
            if (!rest.empty())
                fail(Err::NotABijection, "bottom pants not covered by the monodromy");
    }

    // rebuild with merged components and records
    std::vector<int> comp_map(g.link.size(), -1), rec_map(g.pants.size(), -1);
    BlockDecomposition out;
    // merged components: walk chains start -> phi -> ... ; cycles become cyclic
    std::vector<char> visited(g.link.size(), 0);
    std::map<int, int> phi_idx; // top comp -> bottom comp
    for (const auto& [t, b] : seams) phi_idx[t] = b;
    std::map<int, int> phi_rev;
    for (const auto& [t, b] : seams) phi_rev[b] = t;

    auto emit_chain = [&](int start, bool cyclic) {
        LinkComp merged;
        std::vector<int> members;
        int cur = start;
        while (true) {
            members.push_back(cur);
            visited[cur] = 1;
            auto nx = phi_idx.find(cur);
            if (nx == phi_idx.end()) break;
            if (cyclic && nx->second == start) break;
            if (!cyclic && visited[nx->second]) break;
            cur = nx->second;
        }
        merged.label = g.link[members.front()].label;
        for (int m : members) merged.label = std::min(merged.label, g.link[m].label);
        merged.cyclic = cyclic;
        if (cyclic) {
            merged.birth = {LinkEnd::Kind::Seam, 0};
            merged.death = {LinkEnd::Kind::Seam, 0};
        } else {
            merged.birth = g.link[members.front()].birth;
            merged.death = g.link[members.back()].death;
        }
        for (int m : members) {
            for (int r : g.link[m].side_a) merged.side_a.push_back(r);
            for (int r : g.link[m].side_b) merged.side_b.push_back(r);
        }
        int idx = static_cast<int>(out.link.size());
        out.link.push_back(merged);
        for (int m : members) comp_map[m] = idx;
    };

    // chain starts: components not in the image of phi (born at a block)
    for (int c = 0; c < static_cast<int>(g.link.size()); ++c)
        if (!visited[c] && !phi_rev.count(c)) emit_chain(c, false);
    // the rest are cycles
    for (int c = 0; c < static_cast<int>(g.link.size()); ++c)
        if (!visited[c]) emit_chain(c, true);

    for (int p = 0; p < static_cast<int>(g.pants.size()); ++p) {
        int root = rec_uf.find(p);
        if (rec_map[root] < 0) {
            PantsRec rec = g.pants[root];
            for (int& c : rec.cuffs) c = comp_map[c];
            std::sort(rec.cuffs.begin(), rec.cuffs.end());
            rec_map[root] = static_cast<int>(out.pants.size());
            out.pants.push_back(rec);
        }
        rec_map[p] = rec_map[root];
    }
    for (auto& comp : out.link) {
        for (int& r : comp.side_a) r = rec_map[r];
        for (int& r : comp.side_b) r = rec_map[r];
        auto dedupe = [](std::vector<int>& v) {
            v.erase(std::unique(v.begin(), v.end()), v.end());
        };
        dedupe(comp.side_a);
        dedupe(comp.side_b);
    }
    for (const auto& blk : g.blocks) {
        PantsBlock copy = blk;
        for (int& c : copy.loops) c = comp_map[c];
        std::sort(copy.loops.begin(), copy.loops.end());
        copy.old_curve = comp_map[copy.old_curve];
        copy.new_curve = comp_map[copy.new_curve];
        for (int& p : copy.bottom_pants) p = rec_map[p];
        for (int& p : copy.top_pants) p = rec_map[p];
        out.blocks.push_back(copy);
    }
    out.validate(false);
    return out;
}

bool is_invertible_pair(const BlockDecomposition& bd, int b1, int b2) {
    auto shares = [&](const PantsBlock& x, const PantsBlock& y) {
        for (int p : x.top_pants)
            if (std::count(y.bottom_pants.begin(), y.bottom_pants.end(), p)) return true;
        for (int p : x.bottom_pants)
            if (std::count(y.top_pants.begin(), y.top_pants.end(), p)) return true;
        return false;
    };
    const PantsBlock& x = bd.blocks.at(b1);
    const PantsBlock& y = bd.blocks.at(b2);
    if (b1 == b2 || !shares(x, y)) fail(Err::NotAdjacent, "blocks share no pants");

    auto check_stacked = [&](const PantsBlock& lower, const PantsBlock& upper) {
        if (lower.kind != upper.kind) return false;
        std::vector<int> lt = lower.top_pants, ub = upper.bottom_pants;
        std::sort(lt.begin(), lt.end());
        std::sort(ub.begin(), ub.end());
        if (lt != ub) return false;
        if (lower.new_curve != upper.old_curve) return false;
        if (curve_base(bd.link[lower.old_curve].label) != curve_base(bd.link[upper.new_curve].label))
            return false;
        // outer faces agree after matching the lower old curve with the upper
        // new curve
        std::multiset<std::array<int, 3>> outer_low, outer_up;
        for (int p : lower.bottom_pants) {
            std::array<int, 3> cuffs = bd.pants[p].cuffs;
            for (int& c : cuffs)
                if (c == lower.old_curve) c = upper.new_curve;
            std::sort(cuffs.begin(), cuffs.end());
            outer_low.insert(cuffs);
        }
        for (int p : upper.top_pants) outer_up.insert(bd.pants[p].cuffs);
        return outer_low == outer_up;
    };
    return check_stacked(x, y) || check_stacked(y, x);
}

// ---------------------------------------------------------------------------
// serialization

namespace {

std::string end_to_string(const LinkEnd& e) {
    switch (e.kind) {
    case LinkEnd::Kind::Free: return "free";
    case LinkEnd::Kind::Block: return "block:" + std::to_string(e.index);
    case LinkEnd::Kind::Seam: return "seam:" + std::to_string(e.index);
    }
    return "free";
}

LinkEnd end_from_string(const std::string& s) {
    if (s == "free") return {LinkEnd::Kind::Free, -1};
    auto colon = s.find(':');
    if (colon == std::string::npos) fail(Err::Parse, "bad link end '" + s + "'");
    int idx = std::stoi(s.substr(colon + 1));
    if (s.rfind("block", 0) == 0) return {LinkEnd::Kind::Block, idx};
    if (s.rfind("seam", 0) == 0) return {LinkEnd::Kind::Seam, idx};
    fail(Err::Parse, "bad link end '" + s + "'");
}

} // namespace

nlohmann::ordered_json to_json(const BlockDecomposition& bd) {
    json j;
    j["link"] = json::array();
    for (const auto& c : bd.link) j["link"].push_back(c.label);
    j["pants"] = json::array();
    for (const auto& p : bd.pants)
        j["pants"].push_back({bd.link[p.cuffs[0]].label, bd.link[p.cuffs[1]].label,
                              bd.link[p.cuffs[2]].label});
    j["blocks"] = json::array();
    for (const auto& b : bd.blocks) {
        json blk;
        blk["kind"] = to_string(b.kind);
        blk["loops"] = json::array();
        for (int c : b.loops) blk["loops"].push_back(bd.link[c].label);
        blk["bottom"] = b.bottom_level;
        blk["top"] = b.top_level;
        j["blocks"].push_back(blk);
    }
    j["adjacency"] = json::array();
    for (int b = 0; b < static_cast<int>(bd.blocks.size()); ++b) {
        for (int p : bd.blocks[b].bottom_pants) j["adjacency"].push_back({p, b, "bottom"});
        for (int p : bd.blocks[b].top_pants) j["adjacency"].push_back({p, b, "top"});
    }
    json meta;
    meta["moved"] = json::array();
    for (const auto& b : bd.blocks)
        meta["moved"].push_back({bd.link[b.old_curve].label, bd.link[b.new_curve].label});
    meta["support"] = json::array();
    for (const auto& b : bd.blocks) meta["support"].push_back(b.support);
    meta["ends"] = json::array();
    for (const auto& c : bd.link)
        meta["ends"].push_back({end_to_string(c.birth), end_to_string(c.death)});
    meta["cyclic"] = json::array();
    for (const auto& c : bd.link) meta["cyclic"].push_back(c.cyclic);
    meta["chains"] = json::array();
    for (const auto& c : bd.link) meta["chains"].push_back({c.side_a, c.side_b});
    meta["runs"] = json::array();
    for (const auto& p : bd.pants) meta["runs"].push_back({p.lo, p.hi});
    j["meta"] = meta;
    return j;
}

BlockDecomposition bd_from_json(const nlohmann::ordered_json& jin) {
    const json& j = jin;
    BlockDecomposition bd;
    std::map<std::string, int> by_label;
    for (const auto& l : j.at("link")) {
        LinkComp c;
        c.label = l.get<std::string>();
        if (by_label.count(c.label)) fail(Err::Parse, "duplicate link label " + c.label);
        by_label[c.label] = static_cast<int>(bd.link.size());
        bd.link.push_back(c);
    }
    auto idx_of = [&](const std::string& label) {
        auto it = by_label.find(label);
        if (it == by_label.end()) fail(Err::Parse, "unknown curve label " + label);
        return it->second;
    };
    for (const auto& p : j.at("pants")) {
        PantsRec rec;
        for (int k = 0; k < 3; ++k) rec.cuffs[k] = idx_of(p.at(k).get<std::string>());
        std::sort(rec.cuffs.begin(), rec.cuffs.end());
        bd.pants.push_back(rec);
    }
    for (const auto& b : j.at("blocks")) {
        PantsBlock blk;
        std::string kind = b.at("kind").get<std::string>();
        if (kind == "S11")
            blk.kind = BlockKind::S11;
        else if (kind == "S04")
            blk.kind = BlockKind::S04;
        else
            fail(Err::Parse, "unknown block kind " + kind);
        for (const auto& l : b.at("loops")) blk.loops.push_back(idx_of(l.get<std::string>()));
        std::sort(blk.loops.begin(), blk.loops.end());
        blk.bottom_level = b.at("bottom").get<int>();
        blk.top_level = b.at("top").get<int>();
        bd.blocks.push_back(blk);
    }
    for (const auto& a : j.at("adjacency")) {
        int p = a.at(0).get<int>();
        int b = a.at(1).get<int>();
        std::string side = a.at(2).get<std::string>();
        if (b < 0 || b >= static_cast<int>(bd.blocks.size()) || p < 0 ||
            p >= static_cast<int>(bd.pants.size()))
            fail(Err::Parse, "adjacency entry out of range");
        if (side == "bottom")
            bd.blocks[b].bottom_pants.push_back(p);
        else if (side == "top")
            bd.blocks[b].top_pants.push_back(p);
        else
            fail(Err::Parse, "adjacency side must be bottom or top");
    }
    if (j.contains("meta")) {
        const json& meta = j.at("meta");
        for (std::size_t b = 0; b < bd.blocks.size(); ++b) {
            bd.blocks[b].old_curve = idx_of(meta.at("moved").at(b).at(0).get<std::string>());
            bd.blocks[b].new_curve = idx_of(meta.at("moved").at(b).at(1).get<std::string>());
            if (meta.contains("support")) bd.blocks[b].support = meta.at("support").at(b);
        }
        for (std::size_t c = 0; c < bd.link.size(); ++c) {
            bd.link[c].birth = end_from_string(meta.at("ends").at(c).at(0).get<std::string>());
            bd.link[c].death = end_from_string(meta.at("ends").at(c).at(1).get<std::string>());
            bd.link[c].cyclic = meta.at("cyclic").at(c).get<bool>();
            bd.link[c].side_a = meta.at("chains").at(c).at(0).get<std::vector<int>>();
            bd.link[c].side_b = meta.at("chains").at(c).at(1).get<std::vector<int>>();
        }
        for (std::size_t p = 0; p < bd.pants.size(); ++p) {
            bd.pants[p].lo = meta.at("runs").at(p).at(0).get<int>();
            bd.pants[p].hi = meta.at("runs").at(p).at(1).get<int>();
        }
    } else {
        // reconstruct moved curves from the incidence structure
        for (auto& blk : bd.blocks) {
            auto doubled = [&](int p) {
                const auto& c = bd.pants[p].cuffs;
                if (c[0] == c[1]) return c[0];
                if (c[1] == c[2]) return c[1];
                fail(Err::Parse, "cannot infer the moved curve; add a meta section");
            };
            if (blk.kind == BlockKind::S11) {
                blk.old_curve = doubled(blk.bottom_pants.at(0));
                blk.new_curve = doubled(blk.top_pants.at(0));
            } else {
                auto common = [&](const std::vector<int>& ps) {
                    std::map<int, int> count;
                    for (int p : ps)
                        for (int c : bd.pants[p].cuffs) count[c]++;
                    std::vector<int> shared;
                    for (auto [c, k] : count)
                        if (k >= 2) shared.push_back(c);
                    if (shared.size() != 1)
                        fail(Err::Parse, "cannot infer the moved curve; add a meta section");
                    return shared[0];
                };
                blk.old_curve = common(blk.bottom_pants);
                blk.new_curve = common(blk.top_pants);
            }
        }
        for (int c = 0; c < static_cast<int>(bd.link.size()); ++c) {
            bd.link[c].birth = {LinkEnd::Kind::Free, -1};
            bd.link[c].death = {LinkEnd::Kind::Free, -1};
        }
        for (int b = 0; b < static_cast<int>(bd.blocks.size()); ++b) {
            bd.link[bd.blocks[b].old_curve].death = {LinkEnd::Kind::Block, b};
            bd.link[bd.blocks[b].new_curve].birth = {LinkEnd::Kind::Block, b};
        }
    }
    bd.validate(false);
    return bd;
}

// ---------------------------------------------------------------------------
// canonical form

namespace {

ColoredGraph incidence_graph(const BlockDecomposition& bd, std::vector<int>& node_of_link,
                             std::vector<int>& node_of_pants, std::vector<int>& node_of_block) {
    ColoredGraph g;
    node_of_link.resize(bd.link.size());
    node_of_pants.resize(bd.pants.size());
    node_of_block.resize(bd.blocks.size());
    for (std::size_t c = 0; c < bd.link.size(); ++c) {
        const LinkComp& comp = bd.link[c];
        std::string color = "L:" + curve_base(comp.label) + "|" +
                            (comp.birth.kind == LinkEnd::Kind::Free    ? "f"
                             : comp.birth.kind == LinkEnd::Kind::Block ? "b"
                                                                       : "s") +
                            (comp.death.kind == LinkEnd::Kind::Free    ? "f"
                             : comp.death.kind == LinkEnd::Kind::Block ? "b"
                                                                       : "s") +
                            (comp.cyclic ? "c" : "");
        node_of_link[c] = g.add_node(color);
    }
    for (std::size_t p = 0; p < bd.pants.size(); ++p) {
        node_of_pants[p] = g.add_node("P");
        for (int c : bd.pants[p].cuffs) g.add_edge(node_of_pants[p], node_of_link[c]);
    }
    for (std::size_t b = 0; b < bd.blocks.size(); ++b) {
        const PantsBlock& blk = bd.blocks[b];
        node_of_block[b] = g.add_node(std::string("B:") + to_string(blk.kind));
        for (int c : blk.loops) {
            int mult = 1;
            if (blk.old_curve == c && bd.link[c].death == LinkEnd{LinkEnd::Kind::Block, (int)b})
                mult += 8;
            if (blk.new_curve == c && bd.link[c].birth == LinkEnd{LinkEnd::Kind::Block, (int)b})
                mult += 32;
            g.add_edge(node_of_block[b], node_of_link[c], mult);
        }
        int bottom_face = g.add_node("F");
        int top_face = g.add_node("F");
        g.add_edge(node_of_block[b], bottom_face);
        g.add_edge(node_of_block[b], top_face);
        for (int p : blk.bottom_pants) g.add_edge(bottom_face, node_of_pants[p]);
        for (int p : blk.top_pants) g.add_edge(top_face, node_of_pants[p]);
    }
    return g;
}

} // namespace

CanonicalBD canonical_form(const BlockDecomposition& bd) {
    std::vector<int> nl, np, nb;
    ColoredGraph g = incidence_graph(bd, nl, np, nb);
    std::vector<int> relabel = g.canonical_labeling();

    auto order_of = [&](const std::vector<int>& nodes) {
        std::vector<std::pair<int, int>> pairs; // (canonical pos, old idx)
        for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
            pairs.push_back({relabel[nodes[i]], i});
        std::sort(pairs.begin(), pairs.end());
        std::vector<int> new_of_old(nodes.size());
        for (int pos = 0; pos < static_cast<int>(pairs.size()); ++pos)
            new_of_old[pairs[pos].second] = pos;
        return new_of_old;
    };
    CanonicalBD out;
    out.link_order = order_of(nl);
    out.pants_order = order_of(np);
    out.block_order = order_of(nb);

    BlockDecomposition& c = out.bd;
    c.link.resize(bd.link.size());
    c.pants.resize(bd.pants.size());
    c.blocks.resize(bd.blocks.size());
    for (std::size_t i = 0; i < bd.link.size(); ++i) {
        LinkComp comp = bd.link[i];
        for (int& r : comp.side_a) r = out.pants_order[r];
        for (int& r : comp.side_b) r = out.pants_order[r];
        if (comp.birth.kind == LinkEnd::Kind::Block) comp.birth.index = out.block_order[comp.birth.index];
        if (comp.death.kind == LinkEnd::Kind::Block) comp.death.index = out.block_order[comp.death.index];
        if (!comp.side_b.empty() && (comp.side_b < comp.side_a)) std::swap(comp.side_a, comp.side_b);
        c.link[out.link_order[i]] = comp;
    }
    // occurrence suffixes renumbered in canonical order
    std::map<std::string, int> occ;
    for (auto& comp : c.link) {
        std::string base = curve_base(comp.label);
        int k = occ[base]++;
        comp.label = k == 0 ? base : base + "#" + std::to_string(k);
    }
    for (std::size_t i = 0; i < bd.pants.size(); ++i) {
        PantsRec rec = bd.pants[i];
        for (int& cuff : rec.cuffs) cuff = out.link_order[cuff];
        std::sort(rec.cuffs.begin(), rec.cuffs.end());
        c.pants[out.pants_order[i]] = rec;
    }
    for (std::size_t i = 0; i < bd.blocks.size(); ++i) {
        PantsBlock blk = bd.blocks[i];
        for (int& l : blk.loops) l = out.link_order[l];
        std::sort(blk.loops.begin(), blk.loops.end());
        blk.old_curve = out.link_order[blk.old_curve];
        blk.new_curve = out.link_order[blk.new_curve];
        for (int& p : blk.bottom_pants) p = out.pants_order[p];
        for (int& p : blk.top_pants) p = out.pants_order[p];
        std::sort(blk.bottom_pants.begin(), blk.bottom_pants.end());
        std::sort(blk.top_pants.begin(), blk.top_pants.end());
        c.blocks[out.block_order[i]] = blk;
    }
    out.fingerprint = g.certificate();
    return out;
}

std::string fingerprint(const BlockDecomposition& bd) {
    std::vector<int> nl, np, nb;
    return incidence_graph(bd, nl, np, nb).certificate();
}

bool isomorphic(const BlockDecomposition& a, const BlockDecomposition& b) {
    return fingerprint(a) == fingerprint(b);
}

} // namespace pants
