#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pants/rules.hpp"

namespace pants {

// One conjugation step: insert a cancelling pair at the head or tail of one
// side so its outer letter matches the other side's end letter, then strip
// that common letter from both ends. Keeps lhs|+|rhs| constant.
struct ConjugacyStep {
    enum class Side { Left, Right };
    enum class End { Head, Tail };
    Side side = Side::Left;
    End end = End::Head;
    MoveLetter outer; // the letter stripped from both sides

    friend bool operator==(const ConjugacyStep&, const ConjugacyStep&) = default;
};

struct ConjugacyDerivation {
    RewriteRule source, target;
    std::vector<ConjugacyStep> steps;
    bool swapped = false; // present the result with the two sides exchanged

    int pairs_inserted() const { return static_cast<int>(steps.size()); }
};

// Apply one step. Throws NoMatch when the strip letter does not line up.
RewriteRule apply_conjugacy_step(const RewriteRule& r, const ConjugacyStep& s);

// Replay a full derivation from its source; throws ReplayMismatch when the
// result is not the recorded target (up to relabeling).
RewriteRule replay(const ConjugacyDerivation& d);

// Breadth-first search for a derivation using at most `max_pairs` cancelling
// pairs. Only rules in the same family can ever be conjugate; absence of a
// derivation is signalled by an empty optional, never an error.
std::optional<ConjugacyDerivation> derive_conjugacy(const RewriteRule& source,
                                                    const RewriteRule& target, int max_pairs);

// Hexagon-family rules carry classical aliases H0..H7 in the report.
std::string hexagon_alias(const std::string& rule_name); // "" when not a hexagon rule

struct ConjugacyChain {
    std::string target;               // rule name
    std::string alias;                // H1..H7
    std::vector<std::string> route;   // H0 = hexagon-3-3b, then intermediate rule names
    std::vector<ConjugacyDerivation> links; // one per hop, each with <= 2 pairs
    int total_pairs = 0;              // chain length in inserted pairs
    int bound = 0;                    // the documented "at most" bound
    bool within_bound = false;
};

struct HexagonConjugacyReport {
    std::vector<ConjugacyChain> chains; // H1..H7 in order
    // the alternate reading: every hexagon rule reachable from some *other*
    // hexagon rule with at most two pairs in a single derivation
    bool pairwise_two_ok = false;
    bool all_within_bounds = false;
};

// Derive every hexagon path move from the 3-3 representative and check the
// documented chain bounds; throws VerificationFailed when a chain is missing.
HexagonConjugacyReport verify_hexagon_conjugacy();

std::string format(const HexagonConjugacyReport& r);

} // namespace pants
