#include "pants/walkmodel.hpp"

#include <algorithm>
#include <tuple>

namespace pants::walkmodel {

// ---------------------------------------------------------------- curve keys

Key parse_key(const std::string& base) {
    Key k;
    k.base = base;
    auto sup = curve_support(base);
    if (!sup) return k;
    k.support = *sup;
    std::string rest = curve_key(base);
    if (rest.size() >= 2 && (rest[0] == 'g' || rest[0] == 'd') &&
        rest.find_first_not_of("0123456789", 1) == std::string::npos) {
        k.type = rest[0] == 'g' ? KeyType::Gamma : KeyType::Delta;
        k.index = std::stoi(rest.substr(1));
        return k;
    }
    if (rest.find('/') != std::string::npos) {
        k.type = KeyType::SlopeKey;
        k.slope = parse_slope(rest);
    }
    return k;
}



// --------------------------------------------------------------- walk model

// tiny collapse of a state walk over one (virtual) support


Sim simulate(const AmbientSupport& sup, const std::vector<DecompositionState>& walk) {
    Sim sim;
    for (const auto& st : walk) sim.levels.push_back(support_pants(sup, st));
    for (std::size_t i = 0; i + 1 < walk.size(); ++i)
        sim.moves.push_back(state_move(sup, walk[i], walk[i + 1]));

    sim.cls_at.resize(sim.levels.size());
    auto sorted = [](Pants3 p) {
        std::sort(p.begin(), p.end());
        return p;
    };
    for (std::size_t t = 0; t < sim.levels.size(); ++t) {
        sim.cls_at[t].resize(sim.levels[t].size(), -1);
        for (std::size_t i = 0; i < sim.levels[t].size(); ++i) {
            const Pants3& p = sim.levels[t][i];
            int cls = -1;
            if (t > 0) {
                bool touched = std::count(p.begin(), p.end(), sim.moves[t - 1].new_curve) > 0;
                if (!touched)
                    for (std::size_t j = 0; j < sim.levels[t - 1].size(); ++j)
                        if (sorted(sim.levels[t - 1][j]) == sorted(p) &&
                            sim.classes[sim.cls_at[t - 1][j]].hi == static_cast<int>(t) - 1) {
                            int cand = sim.cls_at[t - 1][j];
                            bool taken = false;
                            for (std::size_t u = 0; u < i; ++u)
                                if (sim.cls_at[t][u] == cand) taken = true;
                            if (!taken) {
                                cls = cand;
                                break;
                            }
                        }
            }
            if (cls < 0) {
                sim.classes.push_back({sorted(p), static_cast<int>(t), static_cast<int>(t)});
                cls = static_cast<int>(sim.classes.size()) - 1;
            }
            sim.classes[cls].hi = static_cast<int>(t);
            sim.cls_at[t][i] = cls;
        }
    }
    return sim;
}

// presence runs of a curve base along the walk

std::map<std::string, std::vector<Run>> base_runs(const AmbientSupport& sup,
                                                  const std::vector<DecompositionState>& walk) {
    std::map<std::string, std::vector<Run>> out;
    for (const auto& b : sup.boundary)
        out[b] = {{0, static_cast<int>(walk.size()) - 1}};
    std::map<std::string, int> open;
    for (std::size_t t = 0; t < walk.size(); ++t) {
        auto curves = support_curves(sup, walk[t]);
        for (const auto& c : curves)
            if (!open.count(c)) open[c] = static_cast<int>(t);
        for (auto it = open.begin(); it != open.end();) {
            if (!curves.count(it->first)) {
                out[it->first].push_back({it->second, static_cast<int>(t) - 1});
                it = open.erase(it);
            } else
                ++it;
        }
    }
    for (auto& [c, lo] : open) out[c].push_back({lo, static_cast<int>(walk.size()) - 1});
    for (auto& [c, runs] : out) std::sort(runs.begin(), runs.end(), [](Run a, Run b) { return a.lo < b.lo; });
    return out;
}


std::optional<CycleStep> cycle_step(SupportKind kind, int old_idx, int new_idx) {
    if (kind == SupportKind::S05) {
        if (new_idx == (old_idx + 4) % 5) return CycleStep{(3 * old_idx) % 5, true};
        if (new_idx == (old_idx + 1) % 5) return CycleStep{(3 * ((old_idx + 3) % 5)) % 5, false};
        return std::nullopt;
    }
    if (new_idx == (old_idx + 2) % 6) return CycleStep{old_idx, true};
    if (new_idx == (old_idx + 4) % 6) return CycleStep{(old_idx + 5) % 6, false};
    return std::nullopt;
}

DecompositionState cycle_state(SupportKind kind, int s) {
    return kind == SupportKind::S05 ? DecompositionState::pentagon(((s % 5) + 5) % 5)
                                    : DecompositionState::hexagon(((s % 6) + 6) % 6);
}


int run_index(const std::vector<Run>& runs, int level) {
    for (std::size_t i = 0; i < runs.size(); ++i)
        if (runs[i].lo <= level && level <= runs[i].hi) return static_cast<int>(i);
    return -1;
}


std::vector<Slope> slope_wiggle_candidates(Slope m) {
    std::vector<Slope> out;
    // particular solution of m.p * y - m.q * x = 1 by extended gcd
    long long a = m.p, b = m.q, x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        long long q = a / b;
        std::tie(a, b) = std::make_tuple(b, a - q * b);
        std::tie(x0, x1) = std::make_tuple(x1, x0 - q * x1);
        std::tie(y0, y1) = std::make_tuple(y1, y0 - q * y1);
    }
    // a == gcd == +-1; m.p * x0 + m.q * y0 == a
    long long sx = x0 * a, sy = y0 * a; // m.p*sx + m.q*sy == 1
    for (long long t = -2; t <= 2; ++t) {
        long long zp = -sy + t * m.p, zq = sx + t * m.q;
        if (zp == 0 && zq == 0) continue;
        Slope z(zp, zq);
        long long d = slope_det(m, z);
        if (d != 1 && d != -1) continue;
        if (!(z == m) && !std::count(out.begin(), out.end(), z)) out.push_back(z);
    }
    std::sort(out.begin(), out.end(), [](Slope l, Slope r) {
        auto mag = [](Slope s) { return (s.p < 0 ? -s.p : s.p) + s.q; };
        return std::make_tuple(mag(l), l.p, l.q) < std::make_tuple(mag(r), r.p, r.q);
    });
    if (out.size() > 4) out.resize(4);
    return out;
}

std::vector<Wiggle> wiggle_targets(const AmbientSupport& sup, const DecompositionState& state,
                                   const std::string& base) {
    std::vector<Wiggle> out;
    auto curves = support_curves(sup, state);
    if (!curves.count(base)) return out;
    if (state.is_slope()) {
        for (Slope z : slope_wiggle_candidates(state.as_slope())) {
            Wiggle w;
            w.fresh = to_string(z);
            w.kind = sup.kind == SupportKind::S11 ? MoveKind::S : MoveKind::A;
            w.mid = DecompositionState::slope(z);
            out.push_back(w);
        }
        return out;
    }
    const int mod = state.is_pentagon() ? 5 : 6;
    for (int d : {1, mod - 1}) {
        int next = (state.index() + d) % mod;
        DecompositionState mid = state.is_pentagon() ? DecompositionState::pentagon(next)
                                                     : DecompositionState::hexagon(next);
        auto after = support_curves(sup, mid);
        if (after.count(base)) continue; // this direction moves the other curve
        Wiggle w;
        w.mid = mid;
        w.kind = state_move(sup, state, mid).kind;
        std::vector<std::string> born;
        std::set_difference(after.begin(), after.end(), curves.begin(), curves.end(),
                            std::back_inserter(born));
        if (born.size() != 1) continue;
        w.fresh = curve_key(born[0]);
        out.push_back(w);
    }
    return out;
}

std::vector<std::vector<std::string>> boundary_orderings(std::vector<std::string> bases,
                                                         std::size_t want) {
    std::vector<std::vector<std::string>> out;
    if (bases.size() != want) return out;
    std::sort(bases.begin(), bases.end());
    do
        out.push_back(bases);
    while (std::next_permutation(bases.begin(), bases.end()));
    return out;
}

std::vector<std::vector<std::string>> pentagon_positions(
    const std::string&, int k0, const std::string& u_base, const std::string& v_base,
    const std::vector<std::vector<std::string>>& u_cuffs,
    const std::vector<std::vector<std::string>>& v_cuffs) {
    // u sits in P1 = {b(2k), b(2k+1), u} and P3 = {u, v, b(2k+4)};
    // v sits in P3 and the static P2 = {b(2k+2), b(2k+3), v}
    auto has = [](const std::vector<std::string>& cuffs, const std::string& x) {
        return std::count(cuffs.begin(), cuffs.end(), x) > 0;
    };
    const std::vector<std::string>*p1 = nullptr, *p2 = nullptr, *p3 = nullptr;
    for (const auto& cuffs : u_cuffs)
        (has(cuffs, v_base) ? p3 : p1) = &cuffs;
    for (const auto& cuffs : v_cuffs)
        if (!has(cuffs, u_base)) p2 = &cuffs;
    if (!p1 || !p2 || !p3) return {};
    auto others = [&](const std::vector<std::string>& cuffs, const std::string& skip1,
                      const std::string& skip2) {
        std::vector<std::string> out;
        for (const auto& x : cuffs)
            if (x != skip1 && x != skip2) out.push_back(x);
        return out;
    };
    auto p1o = others(*p1, u_base, u_base);
    auto p2o = others(*p2, v_base, v_base);
    auto p3o = others(*p3, u_base, v_base);
    if (p1o.size() != 2 || p2o.size() != 2 || p3o.size() != 1) return {};
    std::vector<std::vector<std::string>> out;
    std::vector<std::string> b(5);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            b[(2 * k0) % 5] = p1o[i];
            b[(2 * k0 + 1) % 5] = p1o[1 - i];
            b[(2 * k0 + 2) % 5] = p2o[j];
            b[(2 * k0 + 3) % 5] = p2o[1 - j];
            b[(2 * k0 + 4) % 5] = p3o[0];
            out.push_back(b);
        }
    return out;
}

std::vector<DecompositionState> replacement_walk(const AmbientSupport& sup,
                                                 const std::vector<DecompositionState>& walk,
                                                 RuleCategory category, bool forward,
                                                 const std::string& fresh,
                                                 const std::string& wiggle_base) {
    if (category == RuleCategory::CancellingPair) {
        if (forward) return {walk.front()}; // delete the pair
        for (const Wiggle& w : wiggle_targets(sup, walk.front(), wiggle_base))
            if (w.fresh == fresh) return {walk.front(), w.mid, walk.front()};
        fail(Err::NoMatch, "no wiggle of " + wiggle_base + " reaches " + fresh);
    }
    if (category == RuleCategory::Triangle12) {
        if (!forward) return {walk.front(), walk.back()};
        Slope z = parse_slope(fresh);
        return {walk.front(), DecompositionState::slope(z), walk.back()};
    }
    // pentagon and hexagon: walk the cycle the other way round
    const int mod = walk.front().is_pentagon() ? 5 : 6;
    int d = (walk[1].index() - walk[0].index() + mod) % mod == 1 ? 1 : -1;
    int len = mod - static_cast<int>(walk.size() - 1);
    std::vector<DecompositionState> out{walk.front()};
    int cur = walk.front().index();
    for (int i = 0; i < len; ++i) {
        cur = ((cur - d) % mod + mod) % mod;
        out.push_back(walk.front().is_pentagon() ? DecompositionState::pentagon(cur)
                                                 : DecompositionState::hexagon(cur));
    }
    if (!(out.back() == walk.back())) fail(Err::NoMatch, "cycle walk does not close up");
    return out;
}

} // namespace pants::walkmodel
