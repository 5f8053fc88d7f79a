#include "pants/rules.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace pants {

const char* to_string(RelationPattern p) {
    switch (p) {
    case RelationPattern::CancellingPair: return "cancelling-pair";
    case RelationPattern::STriangle: return "s-triangle";
    case RelationPattern::ATriangle: return "a-triangle";
    case RelationPattern::Commutativity: return "commutativity";
    case RelationPattern::APentagon: return "a-pentagon";
    case RelationPattern::MixedHexagon: return "mixed-hexagon";
    }
    return "?";
}

const char* to_string(RuleFamily f) {
    switch (f) {
    case RuleFamily::CancellingPair: return "cancelling-pair";
    case RuleFamily::Triangle: return "triangle";
    case RuleFamily::Commutativity: return "commutativity";
    case RuleFamily::Pentagon: return "pentagon";
    case RuleFamily::Hexagon: return "hexagon";
    }
    return "?";
}

const char* to_string(RuleCategory c) {
    switch (c) {
    case RuleCategory::CancellingPair: return "cancelling-pair";
    case RuleCategory::Triangle12: return "triangle-1-2";
    case RuleCategory::Pentagon23: return "pentagon-2-3";
    case RuleCategory::Hexagon33: return "hexagon-3-3";
    case RuleCategory::PathOnly: return "path-only";
    }
    return "?";
}

namespace {

MoveLetter sym(MoveKind kind, int label, bool inv = false, std::string support = "X") {
    MoveLetter m;
    m.kind = kind;
    m.label = label;
    m.inverted = inv;
    m.support = std::move(support);
    return m;
}
MoveLetter S(int label, bool inv = false, std::string sup = "X") {
    return sym(MoveKind::S, label, inv, std::move(sup));
}
MoveLetter A(int label, bool inv = false, std::string sup = "X") {
    return sym(MoveKind::A, label, inv, std::move(sup));
}

RewriteRule rule(std::string name, RuleFamily fam, RuleCategory cat, MoveWord lhs, MoveWord rhs,
                 SupportTable kinds) {
    RewriteRule r;
    r.name = std::move(name);
    r.family = fam;
    r.category = cat;
    r.lhs = std::move(lhs);
    r.rhs = std::move(rhs);
    r.support_kinds = std::move(kinds);
    return r;
}

std::vector<RewriteRule> build_path_moves() {
    using F = RuleFamily;
    using C = RuleCategory;
    std::vector<RewriteRule> v;

    v.push_back(rule("cancel-s", F::CancellingPair, C::CancellingPair, {S(1), S(1, true)}, {}, {}));
    v.push_back(rule("cancel-a", F::CancellingPair, C::CancellingPair, {A(1), A(1, true)}, {}, {}));

    v.push_back(rule("triangle-s", F::Triangle, C::Triangle12, {S(1, true)}, {S(2), S(3)},
                     {{"X", SupportKind::S11}}));
    v.push_back(rule("triangle-a", F::Triangle, C::Triangle12, {A(1, true)}, {A(2), A(3)},
                     {{"X", SupportKind::S04}}));

    // commutativity, 1-3 types
    v.push_back(rule("comm-1-3-ss", F::Commutativity, C::PathOnly, {S(1)},
                     {S(2, false, "Y"), S(1), S(2, true, "Y")}, {}));
    v.push_back(rule("comm-1-3-aa", F::Commutativity, C::PathOnly, {A(1)},
                     {A(2, false, "Y"), A(1), A(2, true, "Y")}, {}));
    v.push_back(rule("comm-1-3-as", F::Commutativity, C::PathOnly, {A(1)},
                     {S(1, false, "Y"), A(1), S(1, true, "Y")}, {}));
    v.push_back(rule("comm-1-3-sa", F::Commutativity, C::PathOnly, {S(1)},
                     {A(1, false, "Y"), S(1), A(1, true, "Y")}, {}));
    // commutativity, 2-2 types
    v.push_back(rule("comm-2-2-aa", F::Commutativity, C::PathOnly, {A(1), A(2, false, "Y")},
                     {A(2, false, "Y"), A(1)}, {}));
    v.push_back(rule("comm-2-2-ss", F::Commutativity, C::PathOnly, {S(1), S(2, false, "Y")},
                     {S(2, false, "Y"), S(1)}, {}));
    v.push_back(rule("comm-2-2-sa", F::Commutativity, C::PathOnly, {S(1), A(1, false, "Y")},
                     {A(1, false, "Y"), S(1)}, {}));

    SupportTable pent{{"X", SupportKind::S05}};
    v.push_back(rule("pentagon-1-4", F::Pentagon, C::PathOnly, {A(1, true)},
                     {A(2), A(3), A(4), A(5)}, pent));
    v.push_back(rule("pentagon-2-3", F::Pentagon, C::Pentagon23, {A(2, true), A(1, true)},
                     {A(3), A(4), A(5)}, pent));

    SupportTable hex{{"X", SupportKind::S12}};
    // 1-5 types
    v.push_back(rule("hexagon-1-5a", F::Hexagon, C::PathOnly, {A(1, true)},
                     {A(2), S(1), A(3), A(4), S(2)}, hex)); // H3
    v.push_back(rule("hexagon-1-5b", F::Hexagon, C::PathOnly, {A(1)},
                     {S(2, true), A(4, true), A(3, true), S(1, true), A(2, true)}, hex)); // H6
    v.push_back(rule("hexagon-1-5c", F::Hexagon, C::PathOnly, {S(2, true)},
                     {A(1), A(2), S(1), A(3), A(4)}, hex)); // H7
    // 2-4 types
    v.push_back(rule("hexagon-2-4a", F::Hexagon, C::PathOnly, {A(1), A(2)},
                     {S(2, true), A(4, true), A(3, true), S(1, true)}, hex)); // H4
    v.push_back(rule("hexagon-2-4b", F::Hexagon, C::PathOnly, {A(1, true), S(2, true)},
                     {A(2), S(1), A(3), A(4)}, hex)); // H2
    v.push_back(rule("hexagon-2-4c", F::Hexagon, C::PathOnly, {S(2, true), A(4, true)},
                     {A(1), A(2), S(1), A(3)}, hex)); // H5
    // 3-3 types
    v.push_back(rule("hexagon-3-3a", F::Hexagon, C::PathOnly, {A(1), A(2), S(1)},
                     {S(2, true), A(4, true), A(3, true)}, hex)); // H1
    v.push_back(rule("hexagon-3-3b", F::Hexagon, C::Hexagon33, {A(1, true), S(2, true), A(4, true)},
                     {A(2), S(1), A(3)}, hex)); // H0

    return v;
}

} // namespace

const std::vector<RewriteRule>& path_move_rules() {
    static const std::vector<RewriteRule> rules = build_path_moves();
    return rules;
}

const std::vector<RewriteRule>& pmove_rules() {
    static const std::vector<RewriteRule> rules = [] {
        std::vector<RewriteRule> v;
        for (const auto& r : path_move_rules())
            if (r.category != RuleCategory::PathOnly) v.push_back(r);
        assert(v.size() == 6);
        return v;
    }();
    return rules;
}

const RewriteRule& find_rule(const std::string& name) {
    for (const auto& r : path_move_rules())
        if (r.name == name) return r;
    fail(Err::NoMatch, "no rule named '" + name + "'");
}

MoveWord rule_cycle(const RewriteRule& r) {
    MoveWord c = r.lhs;
    MoveWord inv = invert_word(r.rhs);
    c.insert(c.end(), inv.begin(), inv.end());
    return c;
}

namespace {

bool all_same_support(const MoveWord& w) {
    for (const auto& l : w)
        if (l.support != w.front().support) return false;
    return true;
}

bool distinct_labels_per_kind(const MoveWord& w) {
    std::set<std::pair<int, int>> seen;
    for (const auto& l : w)
        if (!seen.insert({static_cast<int>(l.kind), l.label}).second) return false;
    return true;
}

bool kind_compatible(const MoveWord& w, SupportKind k) {
    for (const auto& l : w)
        if (l.support_kind && *l.support_kind != k) return false;
    return true;
}

bool uniform_inversion(const MoveWord& w) {
    for (const auto& l : w)
        if (l.inverted != w.front().inverted) return false;
    return true;
}

} // namespace

std::optional<RelationPattern> matches_relation(const MoveWord& cycle, const DisjointSupports& ctx) {
    const std::size_t n = cycle.size();
    if (n == 2) {
        if (cycle[0].cancels(cycle[1])) return RelationPattern::CancellingPair;
        return std::nullopt;
    }
    if (n == 3) {
        if (!all_same_support(cycle) || !uniform_inversion(cycle) || !distinct_labels_per_kind(cycle))
            return std::nullopt;
        if (cycle[0].kind == MoveKind::S && cycle[1].kind == MoveKind::S &&
            cycle[2].kind == MoveKind::S && kind_compatible(cycle, SupportKind::S11))
            return RelationPattern::STriangle;
        if (cycle[0].kind == MoveKind::A && cycle[1].kind == MoveKind::A &&
            cycle[2].kind == MoveKind::A && kind_compatible(cycle, SupportKind::S04))
            return RelationPattern::ATriangle;
        return std::nullopt;
    }
    if (n == 4) {
        for (std::size_t r = 0; r < 2; ++r) {
            const MoveLetter &x = cycle[r], &y = cycle[r + 1], &xi = cycle[r + 2],
                             &yi = cycle[(r + 3) % 4];
            if (!x.cancels(xi) || !y.cancels(yi)) continue;
            if (x.support == y.support) continue;
            if (!ctx.disjoint(x.support, y.support)) continue;
            return RelationPattern::Commutativity;
        }
        return std::nullopt;
    }
    if (n == 5) {
        if (!all_same_support(cycle) || !uniform_inversion(cycle) || !distinct_labels_per_kind(cycle))
            return std::nullopt;
        for (const auto& l : cycle)
            if (l.kind != MoveKind::A) return std::nullopt;
        if (!kind_compatible(cycle, SupportKind::S05)) return std::nullopt;
        return RelationPattern::APentagon;
    }
    if (n == 6) {
        if (!all_same_support(cycle) || !uniform_inversion(cycle) || !distinct_labels_per_kind(cycle))
            return std::nullopt;
        if (!kind_compatible(cycle, SupportKind::S12)) return std::nullopt;
        std::vector<std::size_t> s_at;
        for (std::size_t i = 0; i < 6; ++i)
            if (cycle[i].kind == MoveKind::S) s_at.push_back(i);
        if (s_at.size() != 2) return std::nullopt;
        if ((s_at[1] - s_at[0]) != 3) return std::nullopt; // opposite edges
        return RelationPattern::MixedHexagon;
    }
    return std::nullopt;
}

std::optional<Unifier> unify(const MoveWord& pattern, const MoveWord& word, std::size_t pos,
                             const SupportTable& rule_kinds, const SupportTable& word_kinds) {
    if (pos + pattern.size() > word.size()) return std::nullopt;
    Unifier u;
    std::map<std::string, std::string> support_rev; // concrete id -> variable
    std::set<std::string> bound_bases;              // bijectivity over bound letters

    for (std::size_t i = 0; i < pattern.size(); ++i) {
        const MoveLetter& p = pattern[i];
        const MoveLetter& c = word[pos + i];
        if (p.kind != c.kind) return std::nullopt;
        if (p.inverted != c.inverted) return std::nullopt;

        // support variable binding, bijective over nonempty ids
        auto it = u.supports.find(p.support);
        if (it == u.supports.end()) {
            if (!c.support.empty()) {
                auto rev = support_rev.find(c.support);
                if (rev != support_rev.end() && rev->second != p.support) return std::nullopt;
                support_rev[c.support] = p.support;
            }
            u.supports[p.support] = c.support;
        } else if (it->second != c.support) {
            return std::nullopt;
        }
        // kind constraints
        if (auto k = rule_kinds.find(p.support); k != rule_kinds.end()) {
            std::optional<SupportKind> ck = c.support_kind;
            if (!ck && !c.support.empty())
                if (auto w = word_kinds.find(c.support); w != word_kinds.end()) ck = w->second;
            if (ck && *ck != k->second) return std::nullopt;
        }

        MoveLetter base = c.inverted ? c.inverse() : c;
        auto key = std::make_pair(static_cast<int>(p.kind), p.label);
        auto lit = u.letters.find(key);
        if (lit == u.letters.end()) {
            std::string base_id = to_string(base);
            if (bound_bases.count(base_id)) return std::nullopt; // two pattern letters, one target
            bound_bases.insert(base_id);
            u.letters[key] = base;
        } else if (!(lit->second == base)) {
            return std::nullopt;
        }
    }
    return u;
}

MoveWord apply_rewrite(const MoveWord& w, const RewriteRule& rule, std::size_t position,
                       bool forward, const std::vector<MoveLetter>& fresh_hints,
                       const SupportTable& word_kinds) {
    const MoveWord& from = forward ? rule.lhs : rule.rhs;
    const MoveWord& to = forward ? rule.rhs : rule.lhs;
    if (position > w.size()) fail(Err::NoMatch, "position beyond end of word");

    std::optional<Unifier> u = unify(from, w, position, rule.support_kinds, word_kinds);
    if (!u) fail(Err::NoMatch, "word does not match " + rule.name + (forward ? " lhs" : " rhs") +
                                   " at position " + std::to_string(position));

    // labels already present, per kind, so fresh letters never collide
    int max_label[2] = {0, 0};
    for (const auto& l : w) max_label[static_cast<int>(l.kind)] = std::max(max_label[static_cast<int>(l.kind)], l.label);

    std::size_t next_hint = 0;
    MoveWord replacement;
    for (const auto& p : to) {
        auto key = std::make_pair(static_cast<int>(p.kind), p.label);
        auto it = u->letters.find(key);
        if (it == u->letters.end()) {
            MoveLetter fresh;
            if (next_hint < fresh_hints.size()) {
                fresh = fresh_hints[next_hint++];
                if (fresh.kind != p.kind)
                    fail(Err::NoMatch, "fresh-letter hint kind mismatch for " + rule.name);
            } else {
                fresh.kind = p.kind;
                fresh.label = ++max_label[static_cast<int>(p.kind)];
                auto sit = u->supports.find(p.support);
                if (sit == u->supports.end())
                    fail(Err::NoMatch, "no support binding for fresh letter in " + rule.name +
                                           "; pass a hint");
                fresh.support = sit->second;
            }
            fresh.inverted = false;
            u->letters[key] = fresh;
            it = u->letters.find(key);
        }
        replacement.push_back(p.inverted ? it->second.inverse() : it->second);
    }

    MoveWord out(w.begin(), w.begin() + position);
    out.insert(out.end(), replacement.begin(), replacement.end());
    out.insert(out.end(), w.begin() + position + from.size(), w.end());
    return out;
}

namespace {

std::string canonical_sides(const MoveWord& first, const MoveWord& second,
                            const SupportTable& kinds) {
    std::map<std::pair<int, int>, int> letter_ids;
    std::map<std::string, int> support_ids;
    std::ostringstream os;
    auto emit = [&](const MoveWord& w) {
        for (const auto& l : w) {
            auto key = std::make_pair(static_cast<int>(l.kind), l.label);
            auto [it, fresh] = letter_ids.insert({key, static_cast<int>(letter_ids.size())});
            auto [sit, sfresh] = support_ids.insert({l.support, static_cast<int>(support_ids.size())});
            os << to_string(l.kind) << it->second << (l.inverted ? "'" : "") << "@" << sit->second;
            if (sfresh) {
                if (auto k = kinds.find(l.support); k != kinds.end()) os << to_string(k->second);
            }
            os << ' ';
        }
        os << "| ";
    };
    emit(first);
    emit(second);
    return os.str();
}

} // namespace

std::string rule_schema_key(const RewriteRule& r) {
    return std::min(canonical_sides(r.lhs, r.rhs, r.support_kinds),
                    canonical_sides(r.rhs, r.lhs, r.support_kinds));
}

bool rules_equivalent(const RewriteRule& a, const RewriteRule& b, bool allow_swap) {
    if (allow_swap) return rule_schema_key(a) == rule_schema_key(b);
    return canonical_sides(a.lhs, a.rhs, a.support_kinds) ==
           canonical_sides(b.lhs, b.rhs, b.support_kinds);
}

} // namespace pants
