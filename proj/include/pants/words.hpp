#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pants/surface.hpp"

namespace pants {

enum class MoveKind { S, A };

inline const char* to_string(MoveKind k) { return k == MoveKind::S ? "s" : "a"; }

// Kinds of supports declared on the command line / in the ambient context.
using SupportTable = std::map<std::string, SupportKind>;

// One elementary move in an edge path. `support` names the subsurface the
// move lives on; in rule schemas it is a variable to be unified. Slope-state
// supports additionally carry the source and target slope of the move.
struct MoveLetter {
    MoveKind kind = MoveKind::S;
    int label = 0;
    bool inverted = false;
    std::string support;
    std::optional<SupportKind> support_kind; // advisory, filled from declarations
    std::optional<Slope> from, to;

    MoveLetter inverse() const {
        MoveLetter m = *this;
        m.inverted = !inverted;
        std::swap(m.from, m.to);
        return m;
    }

    // True when `next` is exactly this letter's inverse, so the two adjacent
    // letters form a cancelling pair.
    bool cancels(const MoveLetter& next) const { return next == inverse(); }

    friend bool operator==(const MoveLetter& a, const MoveLetter& b) {
        return a.kind == b.kind && a.label == b.label && a.inverted == b.inverted &&
               a.support == b.support && a.from == b.from && a.to == b.to;
    }
};

using MoveWord = std::vector<MoveLetter>;

// Deletes adjacent cancelling pairs until none remain. The result does not
// depend on the order redexes are picked.
MoveWord free_reduce(MoveWord w);

// Reverse the word and flip every inversion flag; an involution.
MoveWord invert_word(const MoveWord& w);

// Token grammar (whitespace separated, one word per line):
//   s<label> | a<label>, optional trailing ', optional @<support-id>,
//   optional ><p/q> naming the target slope of the move (and <p/q>> for the
//   source). Examples: "a1 s2' a3 @h1" parses three letters, the last on h1.
// Position information is reported on errors. `supports` fills in kinds.
MoveWord parse_word(std::string_view line, const SupportTable& supports = {});
MoveLetter parse_letter(std::string_view token, const SupportTable& supports = {});

std::string to_string(const MoveLetter& l);
std::string to_string(const MoveWord& w);

} // namespace pants
