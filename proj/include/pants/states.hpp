#pragma once

#include <string>
#include <variant>

#include "pants/words.hpp"

namespace pants {

// Concrete pants-decomposition state of a single support surface. Slope
// coordinates cover (1,1) and (0,4); the five- and six-state cycles cover
// (0,5) and (1,2), which only ever appear through those cycles.
struct DecompositionState {
    struct Pent {
        int k = 0; // 0..4
        friend bool operator==(const Pent&, const Pent&) = default;
    };
    struct Hex {
        int k = 0; // 0..5
        friend bool operator==(const Hex&, const Hex&) = default;
    };
    std::variant<Slope, Pent, Hex> value;

    static DecompositionState slope(Slope s) { return {s}; }
    static DecompositionState pentagon(int k);
    static DecompositionState hexagon(int k);

    bool is_slope() const { return std::holds_alternative<Slope>(value); }
    bool is_pentagon() const { return std::holds_alternative<Pent>(value); }
    bool is_hexagon() const { return std::holds_alternative<Hex>(value); }

    Slope as_slope() const { return std::get<Slope>(value); }
    int index() const; // pentagon/hexagon position

    friend bool operator==(const DecompositionState&, const DecompositionState&) = default;
};

// Edge kinds of the six-state cycle: edge k joins states k and k+1 (mod 6);
// the two S-edges sit opposite each other.
MoveKind hexagon_edge_kind(int edge);

// One move on a state. Pentagon letters step +-1 mod 5; hexagon letters step
// +-1 mod 6 and must match the edge kind they traverse; slope letters carry
// their endpoints and need |det| = 1. Throws IllegalMove.
DecompositionState apply_letter(const DecompositionState& state, const MoveLetter& m);

// Fold of apply_letter; IllegalMove reports the failing letter index.
DecompositionState run_word(DecompositionState start, const MoveWord& w);

// True iff both words are runnable from `start` and land on the same state.
bool endpoints_preserved(const MoveWord& a, const MoveWord& b, const DecompositionState& start);

bool runnable(const DecompositionState& start, const MoveWord& w);

DecompositionState parse_state(std::string_view text); // slope:p/q | pent:k | hex:k
std::string to_string(const DecompositionState& s);

} // namespace pants
