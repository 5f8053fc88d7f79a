#pragma once

// Shared support-walk model: curve-key parsing, state walks over a single
// support, and their simulated level structure. Used by both the block-level
// and the complex-level move engines.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pants/ambient.hpp"

namespace pants::walkmodel {

enum class KeyType { SlopeKey, Gamma, Delta, Plain };

struct Key {
    KeyType type = KeyType::Plain;
    Slope slope{};
    int index = 0;
    std::string support;
    std::string base;
};

Key parse_key(const std::string& base_label);

// The cycle position and direction of a five/six-cycle move given the moved
// curve's indices.
struct CycleStep {
    int state = 0;
    bool fwd = true;
};
std::optional<CycleStep> cycle_step(SupportKind kind, int old_idx, int new_idx);
DecompositionState cycle_state(SupportKind kind, int s);

// Tiny collapse of a state walk over one support: levels, moves and pants
// persistence classes.
struct SimClass {
    Pants3 cuffs; // sorted base labels
    int lo = 0, hi = 0;
};

struct Sim {
    std::vector<std::vector<Pants3>> levels;
    std::vector<PathMove> moves;
    std::vector<SimClass> classes;
    std::vector<std::vector<int>> cls_at; // [level][instance] -> class
};

Sim simulate(const AmbientSupport& sup, const std::vector<DecompositionState>& walk);

// Presence runs of every curve base along a walk (boundary labels span it).
struct Run {
    int lo = 0, hi = 0;
};
std::map<std::string, std::vector<Run>> base_runs(const AmbientSupport& sup,
                                                  const std::vector<DecompositionState>& walk);
int run_index(const std::vector<Run>& runs, int level);

// Small canonical set of elementary-move targets for a slope.
std::vector<Slope> slope_wiggle_candidates(Slope m);

// A legal wiggle of one curve of a state: the replacement key, the letter
// kind and the intermediate state.
struct Wiggle {
    std::string fresh;
    MoveKind kind = MoveKind::A;
    DecompositionState mid;
};
std::vector<Wiggle> wiggle_targets(const AmbientSupport& sup, const DecompositionState& state,
                                   const std::string& base);

// All orderings of a boundary-label multiset.
std::vector<std::vector<std::string>> boundary_orderings(std::vector<std::string> bases,
                                                         std::size_t want);

// Boundary positions of a five-holed sphere whose bottom cross-section is
// known: u sits in P1 and P3, v in P3 and the static P2; `*_cuffs` give the
// cuff bases of the two records containing each curve (any order).
std::vector<std::vector<std::string>> pentagon_positions(
    const std::string& sup_id, int k0, const std::string& u_base, const std::string& v_base,
    const std::vector<std::vector<std::string>>& u_cuffs,
    const std::vector<std::vector<std::string>>& v_cuffs);

// The walk replacing a matched one under a move: the deleted pair, the
// inserted pair through `fresh`, the triangle split/merge, or the
// complementary way round the five/six cycle. Throws NoMatch.
std::vector<DecompositionState> replacement_walk(const AmbientSupport& sup,
                                                 const std::vector<DecompositionState>& walk,
                                                 RuleCategory category, bool forward,
                                                 const std::string& fresh,
                                                 const std::string& wiggle_base);

} // namespace pants::walkmodel
