#include "pants/ambient.hpp"

#include <algorithm>

namespace pants {

std::string curve_base(const std::string& track_label) {
    auto hash = track_label.rfind('#');
    return hash == std::string::npos ? track_label : track_label.substr(0, hash);
}

std::optional<std::string> curve_support(const std::string& base_label) {
    auto dot = base_label.find('.');
    if (dot == std::string::npos) return std::nullopt;
    return base_label.substr(0, dot);
}

std::string curve_key(const std::string& base_label) {
    auto dot = base_label.find('.');
    return dot == std::string::npos ? base_label : base_label.substr(dot + 1);
}

std::string pentagon_curve(const std::string& sup, int gamma) {
    return sup + ".g" + std::to_string(((gamma % 5) + 5) % 5);
}
std::string hexagon_curve(const std::string& sup, int delta) {
    return sup + ".d" + std::to_string(((delta % 6) + 6) % 6);
}
std::string slope_curve(const std::string& sup, Slope m) { return sup + "." + to_string(m); }

bool state_fits(SupportKind kind, const DecompositionState& st) {
    switch (kind) {
    case SupportKind::S11:
    case SupportKind::S04: return st.is_slope();
    case SupportKind::S05: return st.is_pentagon();
    case SupportKind::S12: return st.is_hexagon();
    }
    return false;
}

std::set<std::string> support_curves(const AmbientSupport& sup, const DecompositionState& st) {
    switch (sup.kind) {
    case SupportKind::S11:
    case SupportKind::S04: return {slope_curve(sup.id, st.as_slope())};
    case SupportKind::S05: {
        int k = st.index();
        return {pentagon_curve(sup.id, 2 * k), pentagon_curve(sup.id, 2 * k + 2)};
    }
    case SupportKind::S12: {
        int k = st.index();
        return {hexagon_curve(sup.id, k), hexagon_curve(sup.id, k + 1)};
    }
    }
    return {};
}

std::vector<Pants3> support_pants(const AmbientSupport& sup, const DecompositionState& st) {
    if (!state_fits(sup.kind, st))
        fail(Err::IllegalMove, "state " + to_string(st) + " does not fit support " + sup.id);
    const auto& b = sup.boundary;
    switch (sup.kind) {
    case SupportKind::S11: {
        std::string m = slope_curve(sup.id, st.as_slope());
        return {{b[0], m, m}};
    }
    case SupportKind::S04: {
        std::string m = slope_curve(sup.id, st.as_slope());
        auto [fst, snd] = slope_pairing_s04(st.as_slope());
        return {{b[fst.first - 1], b[fst.second - 1], m}, {b[snd.first - 1], b[snd.second - 1], m}};
    }
    case SupportKind::S05: {
        int k = st.index();
        std::string u = pentagon_curve(sup.id, 2 * k);
        std::string v = pentagon_curve(sup.id, 2 * k + 2);
        auto bd = [&](int i) { return b[((i % 5) + 5) % 5]; };
        return {{bd(2 * k), bd(2 * k + 1), u}, {bd(2 * k + 2), bd(2 * k + 3), v}, {u, v, bd(2 * k + 4)}};
    }
    case SupportKind::S12: {
        int k = st.index();
        std::string lo = hexagon_curve(sup.id, k);
        std::string hi = hexagon_curve(sup.id, k + 1);
        // states 0..5 alternate between the separating shape (one curve cuts
        // off a one-holed torus containing the other) and the shape with two
        // non-separating curves; d0 and d3 are the separating curves
        switch (k) {
        case 0: return {{b[0], b[1], lo}, {lo, hi, hi}};
        case 1: return {{b[0], lo, hi}, {b[1], lo, hi}};
        case 2: return {{b[0], b[1], hi}, {hi, lo, lo}};
        case 3: return {{b[0], b[1], lo}, {lo, hi, hi}};
        case 4: return {{b[0], lo, hi}, {b[1], lo, hi}};
        case 5: return {{b[0], b[1], hi}, {hi, lo, lo}};
        }
        break;
    }
    }
    fail(Err::IllegalMove, "unreachable support shape");
}

void AmbientDecomposition::finalize() {
    std::map<std::string, int> slots;
    std::set<std::string> owned;
    for (const auto& sup : supports) {
        std::size_t want = 0;
        switch (sup.kind) {
        case SupportKind::S11: want = 1; break;
        case SupportKind::S04: want = 4; break;
        case SupportKind::S05: want = 5; break;
        case SupportKind::S12: want = 2; break;
        }
        if (sup.boundary.size() != want)
            fail(Err::InvalidIncidence, "support " + sup.id + " needs " + std::to_string(want) +
                                            " boundary labels");
        auto it = states.find(sup.id);
        if (it == states.end()) fail(Err::InvalidIncidence, "support " + sup.id + " has no state");
        if (!state_fits(sup.kind, it->second))
            fail(Err::InvalidIncidence, "state of support " + sup.id + " has the wrong variant");
        for (const auto& c : sup.boundary) slots[c]++;
        for (const auto& c : support_curves(sup, it->second)) owned.insert(c);
    }
    for (const auto& p : shared_pants)
        for (const auto& c : p) slots[c]++;

    shared_curves.clear();
    boundary_curves.clear();
    for (const auto& [label, count] : slots) {
        if (owned.count(label))
            fail(Err::InvalidIncidence, "label " + label + " collides with a support curve");
        if (count == 1)
            boundary_curves.insert(label);
        else if (count == 2)
            shared_curves.insert(label);
        else
            fail(Err::InvalidIncidence, "label " + label + " sits on " + std::to_string(count) +
                                            " cuff slots");
    }
    disjointness = DisjointSupports{};
    for (std::size_t i = 0; i < supports.size(); ++i)
        for (std::size_t j = i + 1; j < supports.size(); ++j)
            disjointness.declare(supports[i].id, supports[j].id);
}

const AmbientSupport& AmbientDecomposition::support(const std::string& id) const {
    for (const auto& s : supports)
        if (s.id == id) return s;
    fail(Err::InvalidIncidence, "no support named '" + id + "'");
}

std::vector<Pants3> AmbientDecomposition::pants() const {
    std::vector<Pants3> out;
    for (const auto& sup : supports) {
        auto ps = support_pants(sup, states.at(sup.id));
        out.insert(out.end(), ps.begin(), ps.end());
    }
    out.insert(out.end(), shared_pants.begin(), shared_pants.end());
    return out;
}

std::set<std::string> AmbientDecomposition::curves() const {
    std::set<std::string> out = shared_curves;
    for (const auto& sup : supports)
        for (const auto& c : support_curves(sup, states.at(sup.id))) out.insert(c);
    return out;
}

AmbientDecomposition single_support_ambient(const std::string& id, SupportKind kind,
                                            const DecompositionState& start) {
    AmbientDecomposition a;
    AmbientSupport sup;
    sup.id = id;
    sup.kind = kind;
    std::size_t nb = kind == SupportKind::S11   ? 1
                     : kind == SupportKind::S04 ? 4
                     : kind == SupportKind::S05 ? 5
                                                : 2;
    for (std::size_t k = 0; k < nb; ++k) sup.boundary.push_back(id + "b" + std::to_string(k));
    a.supports.push_back(sup);
    a.states[id] = start;
    a.finalize();
    return a;
}

namespace {

PathMove diff_states(const AmbientSupport& sup, const DecompositionState& before,
                     const DecompositionState& after, MoveKind kind) {
    auto old_curves = support_curves(sup, before);
    auto new_curves = support_curves(sup, after);
    std::vector<std::string> gone, born;
    std::set_difference(old_curves.begin(), old_curves.end(), new_curves.begin(), new_curves.end(),
                        std::back_inserter(gone));
    std::set_difference(new_curves.begin(), new_curves.end(), old_curves.begin(), old_curves.end(),
                        std::back_inserter(born));
    if (gone.size() != 1 || born.size() != 1)
        fail(Err::NotAPath, "states of " + sup.id + " do not differ by one move");
    return PathMove{kind, sup.id, gone[0], born[0]};
}

} // namespace

PathMove state_move(const AmbientSupport& sup, const DecompositionState& before,
                    const DecompositionState& after) {
    MoveKind kind = MoveKind::A;
    switch (sup.kind) {
    case SupportKind::S11: kind = MoveKind::S; break;
    case SupportKind::S04: kind = MoveKind::A; break;
    case SupportKind::S05: {
        int from = before.index(), to = after.index();
        if (to != (from + 1) % 5 && to != (from + 4) % 5)
            fail(Err::NotAPath, "five-cycle jump");
        break;
    }
    case SupportKind::S12: {
        int from = before.index(), to = after.index();
        int edge;
        if (to == (from + 1) % 6)
            edge = from;
        else if (to == (from + 5) % 6)
            edge = (from + 5) % 6;
        else
            fail(Err::NotAPath, "six-cycle jump");
        kind = hexagon_edge_kind(edge);
        break;
    }
    }
    if ((sup.kind == SupportKind::S11 || sup.kind == SupportKind::S04)) {
        long long d = slope_det(before.as_slope(), after.as_slope());
        if (d != 1 && d != -1) fail(Err::NotAPath, "slope change is not elementary");
    }
    return diff_states(sup, before, after, kind);
}

PantsPath run_path(const AmbientDecomposition& start, const MoveWord& w) {
    AmbientDecomposition cur = start;
    cur.finalize();
    PantsPath path;
    path.boundary = cur.boundary_curves;
    path.levels.push_back(cur.pants());
    for (std::size_t i = 0; i < w.size(); ++i) {
        MoveLetter letter = w[i];
        const AmbientSupport* sup = nullptr;
        try {
            sup = &cur.support(letter.support);
            letter.support_kind = sup->kind;
            DecompositionState before = cur.states.at(sup->id);
            DecompositionState after = apply_letter(before, letter);
            PathMove mv = diff_states(*sup, before, after, letter.kind);
            cur.states[sup->id] = after;
            path.levels.push_back(cur.pants());
            path.moves.push_back(mv);
        } catch (const Error& e) {
            fail(Err::IllegalMove, std::string(e.what()) + " (letter " + std::to_string(i) + ")");
        }
    }
    return path;
}

PantsPath path_from_states(const std::vector<AmbientDecomposition>& states) {
    if (states.empty()) fail(Err::NotAPath, "empty state list");
    std::vector<AmbientDecomposition> done = states;
    for (auto& a : done) a.finalize();

    PantsPath path;
    path.boundary = done.front().boundary_curves;
    path.levels.push_back(done.front().pants());
    for (std::size_t i = 1; i < done.size(); ++i) {
        const auto& prev = done[i - 1];
        const auto& next = done[i];
        if (prev.shared_pants != next.shared_pants || prev.supports.size() != next.supports.size())
            fail(Err::NotAPath, "ambient wiring changes at step " + std::to_string(i));
        std::optional<PathMove> move;
        for (const auto& sup : prev.supports) {
            const auto& b = prev.states.at(sup.id);
            const auto& a = next.states.at(sup.id);
            if (b == a) continue;
            if (move) fail(Err::NotAPath, "two supports move at step " + std::to_string(i));
            try {
                move = state_move(sup, b, a);
            } catch (const Error& e) {
                fail(Err::NotAPath, std::string(e.what()) + " at step " + std::to_string(i));
            }
        }
        // constant steps are allowed; they only ever add trivial product mass
        path.levels.push_back(next.pants());
        path.moves.push_back(move);
    }
    return path;
}

} // namespace pants
