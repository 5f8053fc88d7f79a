#pragma once

#include <nlohmann/json_fwd.hpp>

#include "pants/ambient.hpp"

namespace pants {

// Vertical annulus traced by a curve persisting over a level interval.
struct Track {
    std::string curve; // base label
    int lo = 0, hi = 0;
    friend bool operator==(const Track&, const Track&) = default;
    friend auto operator<=>(const Track&, const Track&) = default;
};

struct AnnulusSet {
    std::vector<Track> tracks;
    int top_level = 0;
};

// One maximal track per persisting run of each curve (boundary labels too).
AnnulusSet build_annuli(const PantsPath& path);
AnnulusSet build_annuli(const std::vector<AmbientDecomposition>& states);

// Interior curves whose track spans the whole path.
std::vector<std::string> find_maximum_annuli(const AnnulusSet& x, int top_level);
std::vector<std::string> find_maximum_annuli(const PantsPath& path);

// Cut along every maximum annulus, recursively, until no sub-path has one.
// Pieces keep the parent's level numbering; cut curves join their boundary.
std::vector<PantsPath> split_at_maximum_annuli(const PantsPath& path);

enum class BlockKind { Trivial, S11, S04 };
const char* to_string(BlockKind k);

struct LinkEnd {
    enum class Kind { Free, Block, Seam };
    Kind kind = Kind::Free;
    int index = -1; // block index, or seam id
    friend bool operator==(const LinkEnd&, const LinkEnd&) = default;
};

// A link component: the core circle of a collapsed annulus track.
struct LinkComp {
    std::string label;            // base label plus "#n" for repeat occurrences
    LinkEnd birth, death;         // lower and upper end of the annulus
    bool cyclic = false;          // closed up onto itself through a seam
    std::vector<int> side_a, side_b; // pants chains along the two sides, bottom-up
};

struct PantsRec {
    std::array<int, 3> cuffs{}; // link indices, sorted
    int lo = 0, hi = 0;         // level run (advisory after surgery)
};

struct PantsBlock {
    BlockKind kind = BlockKind::S11;
    int bottom_level = 0, top_level = 1;
    std::vector<int> loops;                  // link indices: 3 (S11) or 6 (S04)
    std::vector<int> bottom_pants, top_pants; // pants indices: 1 or 2 each
    int old_curve = -1, new_curve = -1;       // link indices
    std::string support;                      // informational
};

struct BlockDecomposition {
    std::vector<LinkComp> link;
    std::vector<PantsRec> pants;
    std::vector<PantsBlock> blocks;

    int find_link(const std::string& label) const; // -1 when absent
    // blocks seen from a pants record: below = pants is the block's top face
    std::vector<int> blocks_below(int pants_idx) const;
    std::vector<int> blocks_above(int pants_idx) const;

    // Structural checks: cuffs exist, faces consistent, loop counts, every
    // pants on at most two block sides (exactly two when `closed`).
    void validate(bool closed = false) const;
};

// Lemma-style collapse of a sub-path with no maximum annulus: one fundamental
// block per move, trivial product regions absorbed into single pants records.
BlockDecomposition collapse(const PantsPath& piece);

// Full pipeline: split recursively, collapse every piece, reassemble.
BlockDecomposition build_block_decomposition(const PantsPath& path);

// Close a product decomposition up by a monodromy: phi maps top-free link
// labels bijectively onto bottom-free ones, matching the pants cross-sections
// setwise. Throws NotABijection.
BlockDecomposition glue_monodromy(const BlockDecomposition& bd,
                                  const std::map<std::string, std::string>& phi);

// Adjacent same-kind blocks induced by a move and its inverse. Throws
// NotAdjacent when the blocks do not share a pants face.
bool is_invertible_pair(const BlockDecomposition& bd, int b1, int b2);

nlohmann::ordered_json to_json(const BlockDecomposition& bd);
BlockDecomposition bd_from_json(const nlohmann::ordered_json& j);

// Canonical relabeling of the incidence structure. Curve base labels are
// preserved; occurrence suffixes and list orders are renumbered canonically,
// so fingerprints are equal iff the decompositions are isomorphic.
struct CanonicalBD {
    BlockDecomposition bd;
    std::string fingerprint;
    std::vector<int> link_order, pants_order, block_order; // new index per old
};
CanonicalBD canonical_form(const BlockDecomposition& bd);
std::string fingerprint(const BlockDecomposition& bd);
bool isomorphic(const BlockDecomposition& a, const BlockDecomposition& b);

} // namespace pants
