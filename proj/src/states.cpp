#include "pants/states.hpp"

namespace pants {

DecompositionState DecompositionState::pentagon(int k) {
    if (k < 0 || k > 4) fail(Err::OutOfRange, "pentagon state index must be 0..4");
    return {Pent{k}};
}

DecompositionState DecompositionState::hexagon(int k) {
    if (k < 0 || k > 5) fail(Err::OutOfRange, "hexagon state index must be 0..5");
    return {Hex{k}};
}

int DecompositionState::index() const {
    if (is_pentagon()) return std::get<Pent>(value).k;
    if (is_hexagon()) return std::get<Hex>(value).k;
    fail(Err::OutOfRange, "slope states carry no cycle index");
}

MoveKind hexagon_edge_kind(int edge) {
    static const MoveKind kinds[6] = {MoveKind::A, MoveKind::A, MoveKind::S,
                                      MoveKind::A, MoveKind::A, MoveKind::S};
    return kinds[((edge % 6) + 6) % 6];
}

DecompositionState apply_letter(const DecompositionState& state, const MoveLetter& m) {
    if (state.is_slope()) {
        Slope cur = state.as_slope();
        if (m.support_kind && *m.support_kind != SupportKind::S11 &&
            *m.support_kind != SupportKind::S04)
            fail(Err::IllegalMove, "slope state on a non-slope support");
        if (m.support_kind) {
            MoveKind want = *m.support_kind == SupportKind::S11 ? MoveKind::S : MoveKind::A;
            if (m.kind != want)
                fail(Err::IllegalMove, std::string("letter ") + to_string(m) + " has the wrong kind for " +
                                           to_string(*m.support_kind));
        }
        // from/to always name the actual traversal; inverse() keeps that true
        // by swapping them along with the flag.
        Slope src = m.from ? *m.from : cur;
        if (!m.to) fail(Err::IllegalMove, std::string("letter ") + to_string(m) + " carries no target slope");
        Slope dst = *m.to;
        if (src != cur)
            fail(Err::IllegalMove, "letter " + to_string(m) + " does not start at " + to_string(cur));
        long long d = slope_det(cur, dst);
        if (d != 1 && d != -1)
            fail(Err::IllegalMove, "slopes " + to_string(cur) + " -> " + to_string(dst) +
                                       " have determinant " + std::to_string(d));
        return DecompositionState::slope(dst);
    }
    if (state.is_pentagon()) {
        if (m.kind != MoveKind::A) fail(Err::IllegalMove, "only A-moves act on the five-state cycle");
        int k = state.index();
        return DecompositionState::pentagon(((k + (m.inverted ? -1 : 1)) % 5 + 5) % 5);
    }
    // hexagon
    int k = state.index();
    int edge = m.inverted ? ((k - 1) % 6 + 6) % 6 : k;
    if (hexagon_edge_kind(edge) != m.kind)
        fail(Err::IllegalMove, std::string("letter ") + to_string(m) + " has kind " + to_string(m.kind) +
                                   " but edge " + std::to_string(edge) + " wants " +
                                   to_string(hexagon_edge_kind(edge)));
    return DecompositionState::hexagon(((k + (m.inverted ? -1 : 1)) % 6 + 6) % 6);
}

DecompositionState run_word(DecompositionState start, const MoveWord& w) {
    for (std::size_t i = 0; i < w.size(); ++i) {
        try {
            start = apply_letter(start, w[i]);
        } catch (const Error& e) {
            fail(Err::IllegalMove, std::string(e.what()) + " (letter " + std::to_string(i) + ")");
        }
    }
    return start;
}

bool runnable(const DecompositionState& start, const MoveWord& w) {
    try {
        run_word(start, w);
        return true;
    } catch (const Error&) {
        return false;
    }
}

bool endpoints_preserved(const MoveWord& a, const MoveWord& b, const DecompositionState& start) {
    return run_word(start, a) == run_word(start, b);
}

DecompositionState parse_state(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos)
        fail(Err::Parse, "state literal must be slope:p/q, pent:k or hex:k");
    auto tag = text.substr(0, colon);
    auto body = text.substr(colon + 1);
    if (tag == "slope") return DecompositionState::slope(parse_slope(body));
    if (tag == "pent") return DecompositionState::pentagon(std::stoi(std::string(body)));
    if (tag == "hex") return DecompositionState::hexagon(std::stoi(std::string(body)));
    fail(Err::Parse, "unknown state tag '" + std::string(tag) + "'");
}

std::string to_string(const DecompositionState& s) {
    if (s.is_slope()) return "slope:" + to_string(s.as_slope());
    if (s.is_pentagon()) return "pent:" + std::to_string(s.index());
    return "hex:" + std::to_string(s.index());
}

} // namespace pants
