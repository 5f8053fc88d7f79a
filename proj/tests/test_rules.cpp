#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "pants/rules.hpp"

using namespace pants;

namespace {

const RewriteRule& R(const std::string& name) { return find_rule(name); }

MoveLetter L(MoveKind k, int label, bool inv = false, std::string sup = "h") {
    MoveLetter m;
    m.kind = k;
    m.label = label;
    m.inverted = inv;
    m.support = std::move(sup);
    return m;
}

} // namespace

TEST_CASE("path move list shape") {
    const auto& rules = path_move_rules();
    std::map<RuleFamily, int> by_family;
    for (const auto& r : rules) by_family[r.family]++;
    CHECK(by_family[RuleFamily::CancellingPair] == 2);
    CHECK(by_family[RuleFamily::Triangle] == 2);
    CHECK(by_family[RuleFamily::Commutativity] == 7);
    CHECK(by_family[RuleFamily::Pentagon] == 2);
    CHECK(by_family[RuleFamily::Hexagon] == 8);

    // spot checks against the published list
    CHECK(R("triangle-s").lhs.size() == 1);
    CHECK(R("triangle-s").rhs.size() == 2);
    CHECK(R("comm-2-2-aa").lhs.size() == 2);
    CHECK(R("hexagon-3-3b").lhs.size() == 3);
    CHECK(R("pentagon-2-3").lhs.size() == 2);
    CHECK(R("pentagon-2-3").rhs.size() == 3);
}

TEST_CASE("block move list is exactly the six expected rules") {
    const auto& rules = pmove_rules();
    REQUIRE(rules.size() == 6);
    std::map<RuleCategory, int> by_cat;
    for (const auto& r : rules) {
        by_cat[r.category]++;
        CHECK(r.family != RuleFamily::Commutativity);
    }
    CHECK(by_cat[RuleCategory::CancellingPair] == 2);
    CHECK(by_cat[RuleCategory::Triangle12] == 2);
    CHECK(by_cat[RuleCategory::Pentagon23] == 1);
    CHECK(by_cat[RuleCategory::Hexagon33] == 1);
}

TEST_CASE("rule cycles match their relations") {
    std::map<std::string, RelationPattern> expectations = {
        {"cancel-s", RelationPattern::CancellingPair},
        {"cancel-a", RelationPattern::CancellingPair},
        {"triangle-s", RelationPattern::STriangle},
        {"triangle-a", RelationPattern::ATriangle},
        {"pentagon-1-4", RelationPattern::APentagon},
        {"pentagon-2-3", RelationPattern::APentagon},
        {"hexagon-3-3b", RelationPattern::MixedHexagon},
        {"hexagon-2-4b", RelationPattern::MixedHexagon},
        {"hexagon-1-5c", RelationPattern::MixedHexagon},
    };
    for (const auto& [name, pattern] : expectations) {
        auto got = matches_relation(rule_cycle(R(name)));
        REQUIRE_MESSAGE(got.has_value(), name);
        CHECK_MESSAGE(*got == pattern, name);
    }

    DisjointSupports ctx;
    ctx.declare("X", "Y");
    for (const auto& r : path_move_rules()) {
        auto got = matches_relation(rule_cycle(r), ctx);
        REQUIRE_MESSAGE(got.has_value(), r.name);
        if (r.family == RuleFamily::Commutativity)
            CHECK(*got == RelationPattern::Commutativity);
    }
    // and no move-list rule closes into a commutativity square
    for (const auto& r : pmove_rules())
        CHECK(matches_relation(rule_cycle(r), ctx) != RelationPattern::Commutativity);
}

TEST_CASE("matches_relation census checks") {
    SupportTable pent{{"h", SupportKind::S05}};
    MoveWord five = parse_word("a1@h a2@h a3@h a4@h a5@h", pent);
    CHECK(matches_relation(five) == RelationPattern::APentagon);

    // repeated labels are not a pentagon
    MoveWord bad = parse_word("a1@h a2@h a3@h a4@h a4@h", pent);
    CHECK_FALSE(matches_relation(bad).has_value());

    // commutator with declared disjoint supports
    DisjointSupports ctx;
    ctx.declare("u", "v");
    MoveWord commutator = parse_word("a1@u s1@v a1'@u s1'@v");
    CHECK(matches_relation(commutator, ctx) == RelationPattern::Commutativity);
    CHECK_FALSE(matches_relation(commutator).has_value()); // without the declaration

    SupportTable hexk{{"h", SupportKind::S12}};
    MoveWord hex = parse_word("a1@h a2@h s1@h a3@h a4@h s2@h", hexk);
    CHECK(matches_relation(hex) == RelationPattern::MixedHexagon);
    MoveWord hex_adjacent_s = parse_word("a1@h s1@h s2@h a2@h a3@h a4@h", hexk);
    CHECK_FALSE(matches_relation(hex_adjacent_s).has_value());

    // pentagon support kind mismatch is rejected
    SupportTable wrong{{"h", SupportKind::S04}};
    MoveWord five_wrong = parse_word("a1@h a2@h a3@h a4@h a5@h", wrong);
    CHECK_FALSE(matches_relation(five_wrong).has_value());
}

TEST_CASE("apply_rewrite pentagon forward") {
    // [x, a2', a1', y] at 1 -> [x, a3, a4, a5, y]
    MoveWord w{L(MoveKind::S, 9), L(MoveKind::A, 2, true), L(MoveKind::A, 1, true), L(MoveKind::S, 8)};
    MoveWord out = apply_rewrite(w, R("pentagon-2-3"), 1, true);
    REQUIRE(out.size() == 5);
    CHECK(out[0] == w[0]);
    CHECK(out[4] == w[3]);
    for (int i = 1; i <= 3; ++i) {
        CHECK(out[i].kind == MoveKind::A);
        CHECK_FALSE(out[i].inverted);
        CHECK(out[i].support == "h");
    }
    // fresh labels are distinct and avoid existing ones
    CHECK(out[1].label != out[2].label);
    CHECK(out[2].label != out[3].label);
}

TEST_CASE("apply_rewrite triangle and round trip") {
    MoveWord w{L(MoveKind::S, 1, true, "t")};
    MoveWord two = apply_rewrite(w, R("triangle-s"), 0, true);
    REQUIRE(two.size() == 2);
    CHECK(two[0].kind == MoveKind::S);
    CHECK_FALSE(two[0].inverted);

    // applying the rule backwards at the same position undoes it up to relabeling
    MoveWord back = apply_rewrite(two, R("triangle-s"), 0, false);
    REQUIRE(back.size() == 1);
    CHECK(back[0].kind == MoveKind::S);
    CHECK(back[0].inverted);
    CHECK(back[0].support == "t");
}

TEST_CASE("apply_rewrite cancelling pair insertion and deletion") {
    MoveWord w{L(MoveKind::A, 1, false, "h")};
    // insert a fresh pair after the existing letter; the hint names the letter
    MoveLetter hint = L(MoveKind::A, 2, false, "h");
    MoveWord inserted = apply_rewrite(w, R("cancel-a"), 1, false, {hint});
    REQUIRE(inserted.size() == 3);
    CHECK(inserted[0] == w[0]);
    CHECK(inserted[1] == hint);
    CHECK(inserted[2] == hint.inverse());

    MoveWord removed = apply_rewrite(inserted, R("cancel-a"), 1, true);
    CHECK(removed == w);
}

TEST_CASE("apply_rewrite refuses bad matches") {
    MoveWord w{L(MoveKind::A, 1), L(MoveKind::A, 1)};
    // cancelling pair needs x then its inverse
    CHECK_THROWS_AS(apply_rewrite(w, R("cancel-a"), 0, true), Error);
    // support mismatch within one rule
    MoveWord mixed{L(MoveKind::A, 2, true, "u"), L(MoveKind::A, 1, true, "v")};
    CHECK_THROWS_AS(apply_rewrite(mixed, R("pentagon-2-3"), 0, true), Error);
    // distinct pattern letters must not collapse onto one word letter
    MoveWord twice{L(MoveKind::A, 1, true, "u"), L(MoveKind::A, 1, true, "u")};
    CHECK_THROWS_AS(apply_rewrite(twice, R("pentagon-2-3"), 0, true), Error);
}

TEST_CASE("forward then backward is the identity word where labels are pinned") {
    // commutativity 2-2 binds every letter on both sides, so the round trip
    // restores the exact word
    MoveWord w{L(MoveKind::S, 4, false, "u"), L(MoveKind::A, 7, false, "v")};
    MoveWord swapped = apply_rewrite(w, R("comm-2-2-sa"), 0, true);
    REQUIRE(swapped.size() == 2);
    CHECK(swapped[0] == w[1]);
    CHECK(swapped[1] == w[0]);
    CHECK(apply_rewrite(swapped, R("comm-2-2-sa"), 0, false) == w);
}

TEST_CASE("rule schema keys separate schemas") {
    CHECK(rules_equivalent(R("pentagon-2-3"), R("pentagon-2-3")));
    CHECK_FALSE(rules_equivalent(R("pentagon-2-3"), R("pentagon-1-4")));
    CHECK_FALSE(rules_equivalent(R("cancel-s"), R("cancel-a")));
    CHECK_FALSE(rules_equivalent(R("triangle-s"), R("triangle-a")));
    // swap matters only when asked for
    RewriteRule flipped = R("pentagon-2-3");
    std::swap(flipped.lhs, flipped.rhs);
    CHECK(rules_equivalent(R("pentagon-2-3"), flipped, true));
    CHECK_FALSE(rules_equivalent(R("pentagon-2-3"), flipped, false));
}
