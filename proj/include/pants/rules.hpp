#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pants/words.hpp"

namespace pants {

// The five cycle shapes that bound 2-cells in the pants complex, plus the
// degenerate cancelling pair.
enum class RelationPattern {
    CancellingPair, // length 2
    STriangle,      // length 3
    ATriangle,      // length 3
    Commutativity,  // length 4
    APentagon,      // length 5
    MixedHexagon,   // length 6
};
const char* to_string(RelationPattern p);

// Category of the path-move list a rule belongs to; conjugacy never crosses
// categories because it preserves the total edge count of the cycle.
enum class RuleFamily { CancellingPair, Triangle, Commutativity, Pentagon, Hexagon };
const char* to_string(RuleFamily f);

// Where the rule sits in the final move list: the six block-level moves get
// their own tags, every other path move is PathOnly.
enum class RuleCategory { CancellingPair, Triangle12, Pentagon23, Hexagon33, PathOnly };
const char* to_string(RuleCategory c);

// A replacement schema lhs <-> rhs. Letters use symbolic labels and symbolic
// support names; applying the rule unifies them against a concrete word.
struct RewriteRule {
    std::string name;
    RuleFamily family = RuleFamily::CancellingPair;
    RuleCategory category = RuleCategory::PathOnly;
    MoveWord lhs, rhs;
    // pinned kinds for support variables ("X" -> (0,5), ...)
    SupportTable support_kinds;

    friend bool operator==(const RewriteRule&, const RewriteRule&) = default;
};

// The complete path-move list: cancelling pairs, the 1-2 triangle types, the
// 1-3 / 2-2 commutativity types, the 1-4 / 2-3 pentagon types and the 1-5 /
// 2-4 / 3-3 hexagon types.
const std::vector<RewriteRule>& path_move_rules();

// The six block-level moves: both cancelling pairs, both 1-2 triangles, the
// pentagon 2-3 representative and the hexagon 3-3 representative. No
// commutativity rule appears; those never change the block collection.
const std::vector<RewriteRule>& pmove_rules();

const RewriteRule& find_rule(const std::string& name); // throws NoMatch

// lhs . rhs^{-1}, the cycle the rule slides across.
MoveWord rule_cycle(const RewriteRule& r);

// Declared disjointness of supports; bare words carry no geometry, so
// commutativity detection needs this from the ambient context.
struct DisjointSupports {
    std::set<std::pair<std::string, std::string>> pairs;

    void declare(std::string a, std::string b) {
        if (a > b) std::swap(a, b);
        pairs.insert({std::move(a), std::move(b)});
    }
    bool disjoint(const std::string& a, const std::string& b) const {
        auto p = a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
        return pairs.count(p) > 0;
    }
};

// Classify a closed cycle of moves by letter census and support structure.
// Pre: the cycle really closes up on states; this is not re-checked here.
std::optional<RelationPattern> matches_relation(const MoveWord& cycle,
                                                const DisjointSupports& ctx = {});

// Substitution found by unifying a rule side against a subword: bijective on
// (kind,label) pairs and on support names.
struct Unifier {
    std::map<std::pair<int, int>, MoveLetter> letters; // (kind,label) -> concrete letter, uninverted
    SupportTable supports_kind;                        // bound support kinds
    std::map<std::string, std::string> supports;       // variable -> concrete id
};

// Try to unify `pattern` against `word[pos .. pos+pattern.size())`.
std::optional<Unifier> unify(const MoveWord& pattern, const MoveWord& word, std::size_t pos,
                             const SupportTable& rule_kinds, const SupportTable& word_kinds = {});

// Replace the matched side by the other side under the same substitution.
// Pattern letters absent from the matched side take fresh labels, or the
// letters supplied in `fresh_hints` (in order of first appearance on the
// replacement side). Throws NoMatch when unification fails. `position` is the
// index of the first replaced letter; for an empty matched side (cancelling
// pair run backwards) it is the insertion point and a hint is required.
MoveWord apply_rewrite(const MoveWord& w, const RewriteRule& rule, std::size_t position,
                       bool forward, const std::vector<MoveLetter>& fresh_hints = {},
                       const SupportTable& word_kinds = {});

// True when the two rules are the same schema up to a bijective relabeling of
// letters and supports (optionally with the two sides swapped).
bool rules_equivalent(const RewriteRule& a, const RewriteRule& b, bool allow_swap = true);

// Canonical key for rule schemas; equal keys iff rules_equivalent (with swap).
std::string rule_schema_key(const RewriteRule& r);

} // namespace pants
