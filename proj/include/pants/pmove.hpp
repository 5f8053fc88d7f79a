#pragma once

#include "pants/blocks.hpp"

namespace pants {

// A concrete place where one of the six block-level moves applies.
//  - chain rewrites (triangles, pentagon, hexagon) and pair deletion name the
//    matched blocks bottom-up;
//  - pair insertion names the wiggled link component, its current face
//    records and the fresh curve key.
// Indices refer to the decomposition the site was enumerated on.
struct PMoveSite {
    std::string rule;
    bool forward = true;
    std::vector<int> blocks;
    int link = -1;
    int pants_a = -1, pants_b = -1;
    std::string fresh; // slope "p/q", "g<i>" or "d<i>"; empty when not needed

    friend bool operator==(const PMoveSite&, const PMoveSite&) = default;
    friend auto operator<=>(const PMoveSite&, const PMoveSite&) = default;
};

nlohmann::ordered_json to_json(const PMoveSite& s);
PMoveSite site_from_json(const nlohmann::ordered_json& j);

// All applications of one rule (in the given direction where it matters),
// deterministically ordered.
std::vector<PMoveSite> enumerate_pmove_sites(const BlockDecomposition& bd, const RewriteRule& rule);
// All applications of every move in the list.
std::vector<PMoveSite> enumerate_pmove_sites(const BlockDecomposition& bd);

// Apply the move at the site. Validates the match from scratch and throws
// NoMatch when the site does not fit the rule. The result is a valid
// decomposition; the inverse site undoing the move is reported through
// `undo` when requested.
BlockDecomposition apply_pmove_blocks(const BlockDecomposition& bd, const RewriteRule& rule,
                                      const PMoveSite& site, PMoveSite* undo = nullptr);

} // namespace pants
