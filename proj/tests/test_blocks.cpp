#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "pants/blocks.hpp"

using namespace pants;

namespace {

AmbientDecomposition s04_in_genus2() {
    // one four-holed sphere whose cuffs are glued in pairs: a closed genus-2
    // surface with curves x, y and the moving slope
    AmbientDecomposition a;
    a.supports.push_back({"u", SupportKind::S04, {"x", "x", "y", "y"}});
    a.states["u"] = DecompositionState::slope(Slope(0, 1));
    a.finalize();
    return a;
}

AmbientDecomposition two_disjoint_supports() {
    // S_{2,2}: a one-holed torus and a four-holed sphere joined by one pants
    AmbientDecomposition a;
    a.supports.push_back({"t", SupportKind::S11, {"x"}});
    a.supports.push_back({"u", SupportKind::S04, {"y1", "y2", "y3", "y4"}});
    a.states["t"] = DecompositionState::slope(Slope(0, 1));
    a.states["u"] = DecompositionState::slope(Slope(0, 1));
    a.shared_pants.push_back({"x", "y1", "y2"});
    a.finalize();
    return a;
}

SupportTable tbl() {
    return {{"t", SupportKind::S11}, {"u", SupportKind::S04},
            {"p", SupportKind::S05}, {"h", SupportKind::S12}};
}

PantsPath path_of(const AmbientDecomposition& a, const std::string& word) {
    return run_path(a, parse_word(word, tbl()));
}

} // namespace

TEST_CASE("support pants shapes") {
    AmbientSupport s11{"t", SupportKind::S11, {"b"}};
    auto p11 = support_pants(s11, DecompositionState::slope(Slope(1, 2)));
    REQUIRE(p11.size() == 1);
    CHECK(p11[0] == Pants3{"b", "t.1/2", "t.1/2"});

    AmbientSupport s04{"u", SupportKind::S04, {"b1", "b2", "b3", "b4"}};
    auto p04 = support_pants(s04, DecompositionState::slope(Slope(0, 1)));
    REQUIRE(p04.size() == 2);
    CHECK(p04[0] == Pants3{"b1", "b2", "u.0/1"});
    CHECK(p04[1] == Pants3{"b3", "b4", "u.0/1"});
    auto p04b = support_pants(s04, DecompositionState::slope(Slope(1, 0)));
    CHECK(p04b[0] == Pants3{"b1", "b3", "u.1/0"});

    AmbientSupport s05{"p", SupportKind::S05, {"b0", "b1", "b2", "b3", "b4"}};
    auto p05 = support_pants(s05, DecompositionState::pentagon(0));
    REQUIRE(p05.size() == 3);
    CHECK(p05[0] == Pants3{"b0", "b1", "p.g0"});
    CHECK(p05[1] == Pants3{"b2", "b3", "p.g2"});
    CHECK(p05[2] == Pants3{"p.g0", "p.g2", "b4"});

    AmbientSupport s12{"h", SupportKind::S12, {"b1", "b2"}};
    auto p12 = support_pants(s12, DecompositionState::hexagon(0));
    REQUIRE(p12.size() == 2);
    CHECK(p12[0] == Pants3{"b1", "b2", "h.d0"});
    CHECK(p12[1] == Pants3{"h.d0", "h.d1", "h.d1"});
    // every hexagon state has two pants and two curves
    for (int k = 0; k < 6; ++k) {
        auto ps = support_pants(s12, DecompositionState::hexagon(k));
        CHECK(ps.size() == 2);
        CHECK(support_curves(s12, DecompositionState::hexagon(k)).size() == 2);
    }
}

TEST_CASE("hexagon support pants change consistently along the six-cycle") {
    AmbientSupport s12{"h", SupportKind::S12, {"b1", "b2"}};
    for (int k = 0; k < 6; ++k) {
        auto before = support_curves(s12, DecompositionState::hexagon(k));
        auto after = support_curves(s12, DecompositionState::hexagon((k + 1) % 6));
        std::vector<std::string> gone;
        std::set_difference(before.begin(), before.end(), after.begin(), after.end(),
                            std::back_inserter(gone));
        CHECK(gone.size() == 1); // exactly one curve moves per edge
    }
}

TEST_CASE("tracks of a single move in a closed genus-2 surface") {
    auto path = path_of(s04_in_genus2(), "a1>1/0@u");
    AnnulusSet ann = build_annuli(path);
    REQUIRE(ann.tracks.size() == 4);
    // untouched handle curves persist; the moved slope splits into two tracks
    CHECK(ann.tracks[0] == Track{"u.0/1", 0, 0});
    CHECK(ann.tracks[1] == Track{"u.1/0", 1, 1});
    CHECK(ann.tracks[2] == Track{"x", 0, 1});
    CHECK(ann.tracks[3] == Track{"y", 0, 1});
    CHECK(find_maximum_annuli(ann, 1) == std::vector<std::string>{"x", "y"});
}

TEST_CASE("constant path tracks everything") {
    std::vector<AmbientDecomposition> states(3, s04_in_genus2());
    AnnulusSet ann = build_annuli(states);
    for (const auto& t : ann.tracks) {
        CHECK(t.lo == 0);
        CHECK(t.hi == 2);
    }
    CHECK(ann.tracks.size() == 3); // x, y and the slope
    CHECK(find_maximum_annuli(ann, 2).size() == 3);
}

TEST_CASE("degenerate single-level path") {
    auto path = path_of(s04_in_genus2(), "");
    AnnulusSet ann = build_annuli(path);
    REQUIRE(ann.tracks.size() == 3);
    for (const auto& t : ann.tracks) CHECK(t.lo == t.hi);
}

TEST_CASE("path_from_states validates move counts") {
    AmbientDecomposition a = s04_in_genus2();
    AmbientDecomposition b = a;
    b.states["u"] = DecompositionState::slope(Slope(1, 0));
    CHECK(path_from_states({a, b}).moves.size() == 1);

    AmbientDecomposition c = a;
    c.states["u"] = DecompositionState::slope(Slope(2, 1)); // determinant 2
    CHECK_THROWS_AS(path_from_states({a, c}), Error);

    auto two = two_disjoint_supports();
    AmbientDecomposition d = two;
    d.states["t"] = DecompositionState::slope(Slope(1, 0));
    d.states["u"] = DecompositionState::slope(Slope(1, 0));
    CHECK_THROWS_AS(path_from_states({two, d}), Error); // two moves in one step
}

TEST_CASE("collapse refuses maximum annuli") {
    auto path = path_of(s04_in_genus2(), "a1>1/0@u");
    CHECK_THROWS_AS(collapse(path), Error); // x and y persist
}

TEST_CASE("split isolates the moving region") {
    auto path = path_of(s04_in_genus2(), "a1>1/0@u");
    auto pieces = split_at_maximum_annuli(path);
    REQUIRE(pieces.size() == 1); // x and y cuts leave one connected region
    CHECK(pieces[0].boundary.count("x") == 1);
    CHECK(pieces[0].boundary.count("y") == 1);
}

TEST_CASE("constant path splits into trivial product pieces") {
    std::vector<AmbientDecomposition> states(2, s04_in_genus2());
    auto pieces = split_at_maximum_annuli(path_from_states(states));
    CHECK(pieces.size() == 2); // one per pair of pants
    for (const auto& piece : pieces) {
        BlockDecomposition bd = collapse(piece);
        CHECK(bd.blocks.empty());
        CHECK(bd.pants.size() == 1);
    }
}

TEST_CASE("single move block census") {
    // A-move: one (0,4)-block with six loops, doubled cuffs included
    BlockDecomposition bd = build_block_decomposition(path_of(s04_in_genus2(), "a1>1/0@u"));
    REQUIRE(bd.blocks.size() == 1);
    CHECK(bd.blocks[0].kind == BlockKind::S04);
    CHECK(bd.blocks[0].loops.size() == 6);
    CHECK(bd.link.size() == 4);
    CHECK(bd.pants.size() == 4);
    bd.validate(false);

    // S-move: one (1,1)-block with three loops
    auto t11 = single_support_ambient("t", SupportKind::S11, DecompositionState::slope(Slope(0, 1)));
    BlockDecomposition sd = build_block_decomposition(path_of(t11, "s1>1/0@t"));
    REQUIRE(sd.blocks.size() == 1);
    CHECK(sd.blocks[0].kind == BlockKind::S11);
    CHECK(sd.blocks[0].loops.size() == 3);
}

TEST_CASE("pentagon five-cycle gives five blocks") {
    auto p = single_support_ambient("p", SupportKind::S05, DecompositionState::pentagon(0));
    auto path = path_of(p, "a1@p a2@p a3@p a4@p a5@p");
    CHECK(find_maximum_annuli(path).empty());
    BlockDecomposition bd = collapse(path);
    CHECK(bd.blocks.size() == 5);
    for (const auto& b : bd.blocks) CHECK(b.kind == BlockKind::S04);
    // gamma curves leave and return: occurrence suffixes keep labels unique
    int suffixed = 0;
    for (const auto& c : bd.link)
        if (c.label.find('#') != std::string::npos) ++suffixed;
    CHECK(suffixed == 2);
    bd.validate(false);
}

TEST_CASE("pentagon single move degrades to a four-holed sphere block") {
    auto p = single_support_ambient("p", SupportKind::S05, DecompositionState::pentagon(0));
    BlockDecomposition bd = build_block_decomposition(path_of(p, "a1@p"));
    REQUIRE(bd.blocks.size() == 1);
    CHECK(bd.blocks[0].kind == BlockKind::S04);
    CHECK(bd.link.size() == 8); // five cuffs, the persistent curve, old and new
}

TEST_CASE("hexagon walk mixes block kinds") {
    auto h = single_support_ambient("h", SupportKind::S12, DecompositionState::hexagon(0));
    BlockDecomposition bd = build_block_decomposition(path_of(h, "a1@h a2@h s1@h"));
    REQUIRE(bd.blocks.size() == 3);
    CHECK(bd.blocks[0].kind == BlockKind::S04);
    CHECK(bd.blocks[1].kind == BlockKind::S04);
    CHECK(bd.blocks[2].kind == BlockKind::S11);
}

TEST_CASE("order of moves on disjoint supports does not matter") {
    auto a = two_disjoint_supports();
    BlockDecomposition as = build_block_decomposition(path_of(a, "a1>1/0@u s1>1/0@t"));
    BlockDecomposition sa = build_block_decomposition(path_of(a, "s1>1/0@t a1>1/0@u"));
    CHECK(as.blocks.size() == 2);
    CHECK(isomorphic(as, sa));
    CHECK(fingerprint(as) == fingerprint(sa));
}

TEST_CASE("invertible pairs") {
    auto t11 = single_support_ambient("t", SupportKind::S11, DecompositionState::slope(Slope(0, 1)));
    BlockDecomposition bd = build_block_decomposition(path_of(t11, "s1>1/0@t s1'<1/0>0/1@t"));
    REQUIRE(bd.blocks.size() == 2);
    CHECK(is_invertible_pair(bd, 0, 1));
    CHECK(is_invertible_pair(bd, 1, 0));

    // two same-direction moves on the five-cycle are not an invertible pair
    auto p = single_support_ambient("p", SupportKind::S05, DecompositionState::pentagon(0));
    BlockDecomposition pd = build_block_decomposition(path_of(p, "a1@p a2@p"));
    REQUIRE(pd.blocks.size() == 2);
    CHECK_FALSE(is_invertible_pair(pd, 0, 1));

    // blocks on disjoint supports are not even adjacent
    auto two = two_disjoint_supports();
    BlockDecomposition td = build_block_decomposition(path_of(two, "a1>1/0@u s1>1/0@t"));
    CHECK_THROWS_AS(is_invertible_pair(td, 0, 1), Error);
}

TEST_CASE("monodromy gluing closes a product") {
    auto t11 = single_support_ambient("t", SupportKind::S11, DecompositionState::slope(Slope(0, 1)));
    BlockDecomposition bd = build_block_decomposition(path_of(t11, "s1>1/0@t"));
    BlockDecomposition closed = glue_monodromy(bd, {{"tb0", "tb0"}, {"t.1/0", "t.0/1"}});
    CHECK(closed.blocks.size() == 1);
    CHECK(closed.pants.size() == 1);
    CHECK(closed.link.size() == 2);
    closed.validate(true);
    int cyclic = 0;
    for (const auto& c : closed.link) cyclic += c.cyclic;
    CHECK(cyclic == 1); // the boundary core closes onto itself

    // a monodromy that does not match the pants structure is rejected
    BlockDecomposition ad = build_block_decomposition(path_of(s04_in_genus2(), "a1>1/0@u"));
    CHECK_THROWS_AS(glue_monodromy(ad, {{"x", "x"}, {"y", "y"}, {"u.1/0", "u.0/1"}}), Error);
}

TEST_CASE("monodromy orbit count sets the link size") {
    std::vector<AmbientDecomposition> states(1, s04_in_genus2());
    BlockDecomposition bd = build_block_decomposition(path_from_states(states));
    CHECK(bd.blocks.empty());

    BlockDecomposition ident =
        glue_monodromy(bd, {{"x", "x"}, {"y", "y"}, {"u.0/1", "u.0/1"}});
    CHECK(ident.link.size() == 3);

    BlockDecomposition swapped =
        glue_monodromy(bd, {{"x", "y"}, {"y", "x"}, {"u.0/1", "u.0/1"}});
    CHECK(swapped.link.size() == 2); // orbits {x,y} and {slope}
    CHECK(ident.blocks.size() == swapped.blocks.size());
}

TEST_CASE("json round trip") {
    auto p = single_support_ambient("p", SupportKind::S05, DecompositionState::pentagon(2));
    BlockDecomposition bd = build_block_decomposition(path_of(p, "a1@p a2@p a3@p"));
    auto j = to_json(bd);
    BlockDecomposition back = bd_from_json(j);
    CHECK(fingerprint(back) == fingerprint(bd));
    CHECK(to_json(back) == j);
    // stable field order
    CHECK(j.begin().key() == "link");
}

TEST_CASE("fingerprints separate different decompositions") {
    auto p = single_support_ambient("p", SupportKind::S05, DecompositionState::pentagon(0));
    BlockDecomposition two = build_block_decomposition(path_of(p, "a1@p a2@p"));
    BlockDecomposition three = build_block_decomposition(path_of(p, "a1@p a2@p a3@p"));
    CHECK_FALSE(isomorphic(two, three));
    CHECK(isomorphic(two, two));
}

TEST_CASE("canonical form is stable under input reordering") {
    auto a = two_disjoint_supports();
    BlockDecomposition x = build_block_decomposition(path_of(a, "a1>1/0@u s1>1/0@t"));
    CanonicalBD c1 = canonical_form(x);
    CanonicalBD c2 = canonical_form(c1.bd);
    CHECK(c1.fingerprint == c2.fingerprint);
    CHECK(to_json(c1.bd) == to_json(c2.bd));
}
