#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pants/rules.hpp"
#include "pants/states.hpp"

namespace pants {

// Curve labels.
//   "name"          shared or boundary curve of the ambient surface
//   "<sup>.<key>"   curve owned by support <sup>; key is g<i> (five-cycle),
//                   d<i> (six-cycle) or a slope p/q
// Link components split off a curve that leaves and returns get a trailing
// "#<n>" occurrence suffix.
std::string curve_base(const std::string& track_label);
std::optional<std::string> curve_support(const std::string& base_label);
std::string curve_key(const std::string& base_label); // part after the dot, or whole label

std::string pentagon_curve(const std::string& sup, int gamma); // "<sup>.g<i>"
std::string hexagon_curve(const std::string& sup, int delta);  // "<sup>.d<i>"
std::string slope_curve(const std::string& sup, Slope m);      // "<sup>.p/q"

using Pants3 = std::array<std::string, 3>;

struct AmbientSupport {
    std::string id;
    SupportKind kind = SupportKind::S11;
    // boundary cuff labels: 1 for (1,1), 4 for (0,4), 5 for (0,5), 2 for (1,2)
    std::vector<std::string> boundary;
};

// Interior curves of a support in a given state.
std::set<std::string> support_curves(const AmbientSupport& sup, const DecompositionState& st);
// Its pairs of pants (cuff labels) in that state.
std::vector<Pants3> support_pants(const AmbientSupport& sup, const DecompositionState& st);
// Compatibility between a state variant and the support kind.
bool state_fits(SupportKind kind, const DecompositionState& st);

// A pants decomposition of an ambient surface: support regions carrying
// movable states plus a fixed web of shared pants. Labels appearing on
// exactly one cuff slot are ambient boundary; on two, interior curves.
struct AmbientDecomposition {
    std::vector<AmbientSupport> supports;
    std::vector<Pants3> shared_pants;
    std::map<std::string, DecompositionState> states;

    std::set<std::string> shared_curves;   // interior curves owned by nobody
    std::set<std::string> boundary_curves; // ambient boundary labels
    DisjointSupports disjointness;         // distinct supports are disjoint

    // Validates slot counts and state fit, then fills the derived sets.
    void finalize();

    const AmbientSupport& support(const std::string& id) const;
    std::vector<Pants3> pants() const;
    std::set<std::string> curves() const; // interior decomposition curves

    friend bool operator==(const AmbientDecomposition&, const AmbientDecomposition&) = default;
};

// Convenience: an ambient that is exactly one support surface, boundary
// labels minted as "<id>b<k>".
AmbientDecomposition single_support_ambient(const std::string& id, SupportKind kind,
                                            const DecompositionState& start);

// A leveled edge path: pants decompositions per level, one move per step.
// After splitting, steps of a sub-path may carry no move.
struct PathMove {
    MoveKind kind = MoveKind::S;
    std::string support;
    std::string old_curve, new_curve; // base labels
};

struct PantsPath {
    std::vector<std::vector<Pants3>> levels;
    std::vector<std::optional<PathMove>> moves; // size levels.size() - 1
    std::set<std::string> boundary;             // surface-boundary labels

    int top_level() const { return static_cast<int>(levels.size()) - 1; }
};

// The elementary move between two states of one support, with its letter
// kind inferred; NotAPath when they do not differ by exactly one move.
PathMove state_move(const AmbientSupport& sup, const DecompositionState& before,
                    const DecompositionState& after);

// Run a word on an ambient decomposition. Slope letters must carry their
// target slope; IllegalMove names the failing letter.
PantsPath run_path(const AmbientDecomposition& start, const MoveWord& w);

// Rebuild the path from a state list, checking that consecutive entries
// differ by exactly one elementary move (NotAPath otherwise).
PantsPath path_from_states(const std::vector<AmbientDecomposition>& states);

} // namespace pants
