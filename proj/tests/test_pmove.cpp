#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pants/pmove.hpp"

using namespace pants;

namespace {

SupportTable tbl() {
    return {{"t", SupportKind::S11}, {"u", SupportKind::S04},
            {"p", SupportKind::S05}, {"h", SupportKind::S12}};
}

BlockDecomposition from_word(const std::string& id, SupportKind kind, const DecompositionState& st,
                             const std::string& word) {
    auto a = single_support_ambient(id, kind, st);
    return build_block_decomposition(run_path(a, parse_word(word, tbl())));
}

const RewriteRule& R(const std::string& name) { return find_rule(name); }

} // namespace

TEST_CASE("pentagon two-three move relates the two pentagon sides") {
    // both sides run from state 2 to state 0
    BlockDecomposition two = from_word("p", SupportKind::S05, DecompositionState::pentagon(2),
                                       "a1'@p a2'@p");
    BlockDecomposition three = from_word("p", SupportKind::S05, DecompositionState::pentagon(2),
                                         "a1@p a2@p a3@p");
    REQUIRE(two.blocks.size() == 2);
    REQUIRE(three.blocks.size() == 3);
    CHECK_FALSE(isomorphic(two, three));

    auto fwd = enumerate_pmove_sites(two, R("pentagon-2-3"));
    REQUIRE_FALSE(fwd.empty());
    PMoveSite undo;
    BlockDecomposition rewritten = apply_pmove_blocks(two, R("pentagon-2-3"), fwd.front(), &undo);
    CHECK(rewritten.blocks.size() == 3);
    CHECK(isomorphic(rewritten, three));

    // undoing lands back on the two-block side
    BlockDecomposition back = apply_pmove_blocks(rewritten, R("pentagon-2-3"), undo);
    CHECK(isomorphic(back, two));

    // and the backward direction on the three-block side gives the other one
    auto bwd = enumerate_pmove_sites(three, R("pentagon-2-3"));
    bool found = false;
    for (const auto& site : bwd)
        if (!site.forward) {
            BlockDecomposition r = apply_pmove_blocks(three, R("pentagon-2-3"), site);
            CHECK(r.blocks.size() == 2);
            CHECK(isomorphic(r, two));
            found = true;
            break;
        }
    CHECK(found);
}

TEST_CASE("triangle split and merge on the one-holed torus") {
    BlockDecomposition one = from_word("t", SupportKind::S11, DecompositionState::slope(Slope(0, 1)),
                                       "s1>1/0@t");
    BlockDecomposition twostep = from_word("t", SupportKind::S11,
                                           DecompositionState::slope(Slope(0, 1)),
                                           "s1>1/1@t s2<1/1>1/0@t");
    auto sites = enumerate_pmove_sites(one, R("triangle-s"));
    REQUIRE_FALSE(sites.empty());
    bool split_found = false;
    for (const auto& site : sites) {
        if (!site.forward || site.fresh != "1/1") continue;
        split_found = true;
        PMoveSite undo;
        BlockDecomposition split = apply_pmove_blocks(one, R("triangle-s"), site, &undo);
        CHECK(split.blocks.size() == 2);
        CHECK(isomorphic(split, twostep));
        BlockDecomposition merged = apply_pmove_blocks(split, R("triangle-s"), undo);
        CHECK(isomorphic(merged, one));
    }
    CHECK(split_found);
}

TEST_CASE("triangle split on the four-holed sphere") {
    BlockDecomposition one = from_word("u", SupportKind::S04, DecompositionState::slope(Slope(0, 1)),
                                       "a1>1/0@u");
    auto sites = enumerate_pmove_sites(one, R("triangle-a"));
    bool any = false;
    for (const auto& site : sites) {
        if (!site.forward) continue;
        any = true;
        BlockDecomposition split = apply_pmove_blocks(one, R("triangle-a"), site);
        CHECK(split.blocks.size() == 2);
        split.validate(false);
        // merging back is offered as a backward site
        auto merges = enumerate_pmove_sites(split, R("triangle-a"));
        bool merged = false;
        for (const auto& m : merges)
            if (!m.forward) {
                CHECK(isomorphic(apply_pmove_blocks(split, R("triangle-a"), m), one));
                merged = true;
            }
        CHECK(merged);
    }
    CHECK(any);
}

TEST_CASE("cancelling pair deletion and insertion") {
    BlockDecomposition pair = from_word("t", SupportKind::S11,
                                        DecompositionState::slope(Slope(0, 1)),
                                        "s1>1/0@t s1'<1/0>0/1@t");
    BlockDecomposition product = from_word("t", SupportKind::S11,
                                           DecompositionState::slope(Slope(0, 1)), "");
    REQUIRE(pair.blocks.size() == 2);
    REQUIRE(product.blocks.empty());

    auto del = enumerate_pmove_sites(pair, R("cancel-s"));
    bool deleted = false;
    for (const auto& site : del)
        if (site.forward) {
            PMoveSite undo;
            BlockDecomposition out = apply_pmove_blocks(pair, R("cancel-s"), site, &undo);
            CHECK(out.blocks.empty());
            CHECK(isomorphic(out, product));
            // the undo inserts the pair again
            BlockDecomposition again = apply_pmove_blocks(out, R("cancel-s"), undo);
            CHECK(isomorphic(again, pair));
            deleted = true;
            break;
        }
    CHECK(deleted);

    // direct insertion on the product
    auto ins = enumerate_pmove_sites(product, R("cancel-s"));
    bool inserted = false;
    for (const auto& site : ins)
        if (!site.forward && site.fresh == "1/0") {
            BlockDecomposition out = apply_pmove_blocks(product, R("cancel-s"), site);
            CHECK(out.blocks.size() == 2);
            CHECK(isomorphic(out, pair));
            inserted = true;
            break;
        }
    CHECK(inserted);
}

TEST_CASE("cancelling pair on the five-cycle support") {
    BlockDecomposition pair = from_word("p", SupportKind::S05, DecompositionState::pentagon(0),
                                        "a1@p a1'@p");
    REQUIRE(pair.blocks.size() == 2);
    auto del = enumerate_pmove_sites(pair, R("cancel-a"));
    bool ok = false;
    for (const auto& site : del)
        if (site.forward) {
            BlockDecomposition out = apply_pmove_blocks(pair, R("cancel-a"), site);
            CHECK(out.blocks.empty());
            out.validate(false);
            ok = true;
            break;
        }
    CHECK(ok);
}

TEST_CASE("hexagon three-three rewiring") {
    BlockDecomposition fwd = from_word("h", SupportKind::S12, DecompositionState::hexagon(1),
                                       "a1@h s1@h a2@h");
    BlockDecomposition bwd = from_word("h", SupportKind::S12, DecompositionState::hexagon(1),
                                       "a1'@h s1'@h a2'@h");
    REQUIRE(fwd.blocks.size() == 3);
    REQUIRE(bwd.blocks.size() == 3);
    CHECK_FALSE(isomorphic(fwd, bwd));

    auto sites = enumerate_pmove_sites(fwd, R("hexagon-3-3b"));
    REQUIRE_FALSE(sites.empty());
    PMoveSite undo;
    BlockDecomposition out = apply_pmove_blocks(fwd, R("hexagon-3-3b"), sites.front(), &undo);
    CHECK(out.blocks.size() == 3); // block count is preserved
    CHECK(isomorphic(out, bwd));
    CHECK(isomorphic(apply_pmove_blocks(out, R("hexagon-3-3b"), undo), fwd));
}

TEST_CASE("move deltas match the rule side lengths") {
    BlockDecomposition three = from_word("p", SupportKind::S05, DecompositionState::pentagon(2),
                                         "a1@p a2@p a3@p");
    for (const auto& site : enumerate_pmove_sites(three)) {
        const RewriteRule& rule = find_rule(site.rule);
        BlockDecomposition out = apply_pmove_blocks(three, rule, site);
        out.validate(false);
        int delta = static_cast<int>(out.blocks.size()) - static_cast<int>(three.blocks.size());
        int expect = static_cast<int>(rule.rhs.size()) - static_cast<int>(rule.lhs.size());
        if (!site.forward) expect = -expect;
        CHECK(delta == expect);
    }
}

TEST_CASE("sites do not fire on mismatched rules") {
    BlockDecomposition pair = from_word("t", SupportKind::S11,
                                        DecompositionState::slope(Slope(0, 1)),
                                        "s1>1/0@t s1'<1/0>0/1@t");
    // the two-block stack of an S-pair is not a pentagon site
    PMoveSite site;
    site.rule = "pentagon-2-3";
    site.forward = true;
    site.blocks = {0, 1};
    CHECK_THROWS_AS(apply_pmove_blocks(pair, R("pentagon-2-3"), site), Error);
    // and not a triangle merge either (the walk returns to its start)
    site.rule = "triangle-s";
    site.forward = false;
    CHECK_THROWS_AS(apply_pmove_blocks(pair, R("triangle-s"), site), Error);
}
