#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "pants/pcomplex.hpp"
#include "pants/pgraph.hpp"
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

} // namespace

TEST_CASE("pgraph from incidence data") {
    // one pants self-glued on two cuffs: a loop plus a leaf
    PGraph torus = pgraph_from_decomposition({{"b", "m", "m"}}, SurfaceType{1, 1});
    CHECK(torus.vertices == 2);
    CHECK(torus.edges.size() == 2);
    CHECK(torus.trivalent().size() == 1);
    CHECK(torus.leaves().size() == 1);

    // the letter H: two pants sharing one curve, four leaves
    PGraph h = pgraph_from_decomposition({{"b1", "b2", "m"}, {"b3", "b4", "m"}},
                                         SurfaceType{0, 4});
    CHECK(h.trivalent().size() == 2);
    CHECK(h.leaves().size() == 4);
    CHECK(h.edges.size() == 5);

    // closed genus two in the chain wiring: two vertices, loops at each end
    PGraph dumbbell = pgraph_from_decomposition({{"l1", "l1", "m"}, {"m", "l2", "l2"}},
                                                SurfaceType{2, 0});
    CHECK(dumbbell.vertices == 2);
    CHECK(dumbbell.edges.size() == 3);
    CHECK(dumbbell.betti() == 2);
    // and the theta wiring is a different graph on the same census
    PGraph theta = pgraph_from_decomposition({{"a", "b", "c"}, {"a", "b", "c"}}, SurfaceType{2, 0});
    CHECK_FALSE(pgraph_isomorphic(dumbbell, theta));

    CHECK_THROWS_AS(pgraph_from_decomposition({{"a", "a", "a"}, {"b", "b", "c"}}), Error);
}

TEST_CASE("reeb graph prunes to a pgraph") {
    // genus-2 height function: extremal caps, two trivial saddles, two inner
    using Tag = ReebGraph::Tag;
    ReebGraph g;
    g.tags = {Tag::Extremal, Tag::TrivialSaddle, Tag::Inner, Tag::Inner, Tag::TrivialSaddle,
              Tag::Extremal};
    g.edges = {{0, 1}, {1, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 4}, {4, 5}};
    PGraph p = reeb_to_pgraph(g);
    CHECK(p.trivalent().size() == 2);
    CHECK(p.leaves().empty());
    CHECK(p.betti() == 2);
    PGraph dumbbell = pgraph_from_decomposition({{"l1", "l1", "m"}, {"m", "l2", "l2"}});
    CHECK(pgraph_isomorphic(p, dumbbell));

    // census: inner vertices become the trivalent ones, boundary the leaves
    ReebGraph with_boundary;
    with_boundary.tags = {Tag::Boundary, Tag::Inner, Tag::Boundary, Tag::Boundary};
    with_boundary.edges = {{0, 1}, {1, 2}, {1, 3}};
    PGraph q = reeb_to_pgraph(with_boundary);
    CHECK(q.trivalent().size() == 1);
    CHECK(q.leaves().size() == 3);

    // a graph with no extremal or trivial vertices is untouched
    CHECK(pgraph_isomorphic(reeb_to_pgraph(with_boundary), q));

    // inconsistent tags are rejected
    ReebGraph bad;
    bad.tags = {Tag::Inner, Tag::Boundary};
    bad.edges = {{0, 1}};
    CHECK_THROWS_AS(reeb_to_pgraph(bad), Error);
}

TEST_CASE("hi move flips H to I") {
    PGraph h = pgraph_from_decomposition({{"b1", "b2", "m"}, {"b3", "b4", "m"}});
    int e = h.find_edge("m");
    REQUIRE(e >= 0);
    PGraph i = hi_move(h, e, 0);
    i.validate();
    CHECK(i.vertices == h.vertices);
    CHECK(i.edges.size() == h.edges.size());
    CHECK(i.betti() == h.betti());
    CHECK(pgraph_isomorphic(h, i)); // the H and the I are abstractly the same graph

    // the second application with the matching pairing restores everything
    int e2 = i.find_edge(toggle_prime("m"));
    bool restored = false;
    for (int pairing = 0; pairing < 2 && !restored; ++pairing) {
        PGraph back = hi_move(i, e2, pairing);
        auto cuffs = [](const PGraph& g, int v) {
            std::vector<std::string> out;
            for (const auto& ed : g.edges) {
                if (ed.a == v) out.push_back(ed.id);
                if (ed.b == v) out.push_back(ed.id);
            }
            std::sort(out.begin(), out.end());
            return out;
        };
        bool same = back.vertices == h.vertices;
        for (int v = 0; same && v < h.vertices; ++v) {
            auto want = cuffs(h, v);
            for (auto& s : want)
                if (s == "m") s = "m"; // edge id restored by the double toggle
            same = cuffs(back, v) == want;
        }
        restored = restored || same;
    }
    CHECK(restored);

    // loops and leaf edges are not eligible
    PGraph torus = pgraph_from_decomposition({{"b", "m", "m"}});
    CHECK_THROWS_AS(hi_move(torus, torus.find_edge("m"), 0), Error);
    CHECK_THROWS_AS(hi_move(torus, torus.find_edge("b"), 0), Error);
}

TEST_CASE("hourglass move") {
    PGraph torus = pgraph_from_decomposition({{"b", "m", "m"}});
    int v = torus.trivalent().at(0);
    PGraph once = hourglass_move(torus, v);
    CHECK(pgraph_isomorphic(once, torus));
    CHECK(once.find_edge("m'") >= 0);
    PGraph twice = hourglass_move(once, v);
    CHECK(twice.find_edge("m") >= 0); // identities restored
    CHECK_THROWS_AS(hourglass_move(torus, torus.leaves().at(0)), Error);
}

TEST_CASE("stacks alternate regular and critical levels") {
    PGraph h = pgraph_from_decomposition({{"b1", "b2", "m"}, {"b3", "b4", "m"}});
    SupportTable t = tbl();
    LocalPModel stack = stack_from_word(parse_word("a1", t), h);
    REQUIRE(stack.levels.size() == 3);
    CHECK(stack.levels[0].regular.has_value());
    CHECK(stack.levels[1].critical.has_value());
    CHECK(stack.levels[1].critical->valence == 4);
    CHECK(stack.levels[2].regular.has_value());
    CHECK(stack.stack_vertices.size() == 1);

    PGraph torus = pgraph_from_decomposition({{"b", "m", "m"}});
    LocalPModel s = stack_from_word(parse_word("s1", t), torus);
    REQUIRE(s.levels.size() == 3);
    CHECK(s.levels[1].critical->valence == 2);

    LocalPModel empty = stack_from_word({}, torus);
    CHECK(empty.levels.size() == 1);

    // level count 2|w|+1 along a pentagon path
    auto a = single_support_ambient("p", SupportKind::S05, DecompositionState::pentagon(0));
    auto path = run_path(a, parse_word("a1@p a2@p a3@p", t));
    auto moves = pgraph_moves(path);
    PGraph g0 = pgraph_from_decomposition(path.levels.front());
    LocalPModel pent = stack_from_moves(moves, g0);
    CHECK(pent.levels.size() == 7);
    CHECK(pent.stack_vertices.size() == 3);
    for (auto [lvl, val] : pent.stack_vertices) CHECK(val == 4);
}

TEST_CASE("complex round trip through block decompositions") {
    for (const char* word : {"a1@p a2@p", "a1@p a2@p a3@p"}) {
        BlockDecomposition bd = from_word("p", SupportKind::S05, DecompositionState::pentagon(2), word);
        PComplex pc = pcomplex_from_blocks(bd);
        BlockDecomposition back = blocks_from_pcomplex(pc);
        CHECK(isomorphic(bd, back));
        CHECK(isomorphic(pc, pcomplex_from_blocks(back)));
    }
    // a self-glued one-holed torus block: one valence-two vertex
    auto t11 = single_support_ambient("t", SupportKind::S11, DecompositionState::slope(Slope(0, 1)));
    BlockDecomposition bd = build_block_decomposition(run_path(t11, parse_word("s1>1/0@t", tbl())));
    BlockDecomposition closed = glue_monodromy(bd, {{"tb0", "tb0"}, {"t.1/0", "t.0/1"}});
    PComplex pc = pcomplex_from_blocks(closed);
    REQUIRE(pc.vertices.size() == 1);
    CHECK(pc.vertices[0].kind == PComplex::VKind::IIIS);
    CHECK(pc.vertices[0].bottom_edges == pc.vertices[0].top_edges);
}

TEST_CASE("pentagon complexes have three and two type-III vertices") {
    BlockDecomposition three = from_word("p", SupportKind::S05, DecompositionState::pentagon(2),
                                         "a1@p a2@p a3@p");
    BlockDecomposition two = from_word("p", SupportKind::S05, DecompositionState::pentagon(2),
                                       "a1'@p a2'@p");
    PComplex pc3 = pcomplex_from_blocks(three);
    PComplex pc2 = pcomplex_from_blocks(two);
    CHECK(pc3.vertices.size() == 3);
    CHECK(pc2.vertices.size() == 2);
    for (const auto& v : pc3.vertices) CHECK(v.kind == PComplex::VKind::IIIA);
}

TEST_CASE("disk cells") {
    BlockDecomposition bd = from_word("p", SupportKind::S05, DecompositionState::pentagon(0),
                                      "a1@p a2@p");
    CHECK(validate_disk_cells(pcomplex_from_blocks(bd)));

    // an empty complex is vacuously fine
    CHECK(validate_disk_cells(PComplex{}));

    // a hand-built seam-closed cell is an annulus, not a disk
    PComplex annular;
    annular.cells.push_back({"x", {LinkEnd::Kind::Seam, 0}, {LinkEnd::Kind::Seam, 0}, true});
    CHECK(cell_euler_characteristic(annular.cells[0]) == 0);
    CHECK_FALSE(validate_disk_cells(annular));

    // a closed-up product has annular cells
    auto t11 = single_support_ambient("t", SupportKind::S11, DecompositionState::slope(Slope(0, 1)));
    BlockDecomposition prod = build_block_decomposition(run_path(t11, parse_word("s1>1/0@t", tbl())));
    BlockDecomposition closed = glue_monodromy(prod, {{"tb0", "tb0"}, {"t.1/0", "t.0/1"}});
    CHECK_FALSE(validate_disk_cells(pcomplex_from_blocks(closed)));
}

TEST_CASE("native complex move matches the block move: the naturality square") {
    BlockDecomposition two = from_word("p", SupportKind::S05, DecompositionState::pentagon(2),
                                       "a1'@p a2'@p");
    BlockDecomposition three = from_word("p", SupportKind::S05, DecompositionState::pentagon(2),
                                         "a1@p a2@p a3@p");
    PComplex pc2 = pcomplex_from_blocks(two);

    // route one: move on the complex
    auto pc_sites = enumerate_pmove_sites(pc2, find_rule("pentagon-2-3"));
    REQUIRE_FALSE(pc_sites.empty());
    PComplex moved_pc = apply_pmove_pcomplex(pc2, find_rule("pentagon-2-3"), pc_sites.front());
    CHECK(moved_pc.vertices.size() == 3);

    // route two: move on the blocks, then take the complex
    auto bd_sites = enumerate_pmove_sites(two, find_rule("pentagon-2-3"));
    REQUIRE_FALSE(bd_sites.empty());
    BlockDecomposition moved_bd = apply_pmove_blocks(two, find_rule("pentagon-2-3"), bd_sites.front());
    CHECK(isomorphic(moved_pc, pcomplex_from_blocks(moved_bd)));
    CHECK(isomorphic(moved_pc, pcomplex_from_blocks(three)));

    // and through the inverse functor
    CHECK(isomorphic(blocks_from_pcomplex(moved_pc), moved_bd));
}

TEST_CASE("complex-level cancelling pair and hexagon moves") {
    BlockDecomposition pair = from_word("t", SupportKind::S11, DecompositionState::slope(Slope(0, 1)),
                                        "s1>1/0@t s1'<1/0>0/1@t");
    PComplex pc = pcomplex_from_blocks(pair);
    auto sites = enumerate_pmove_sites(pc, find_rule("cancel-s"));
    bool deleted = false;
    for (const auto& site : sites)
        if (site.forward) {
            PComplex out = apply_pmove_pcomplex(pc, find_rule("cancel-s"), site);
            CHECK(out.vertices.empty());
            deleted = true;
            break;
        }
    CHECK(deleted);

    BlockDecomposition hexfwd = from_word("h", SupportKind::S12, DecompositionState::hexagon(1),
                                          "a1@h s1@h a2@h");
    BlockDecomposition hexbwd = from_word("h", SupportKind::S12, DecompositionState::hexagon(1),
                                          "a1'@h s1'@h a2'@h");
    PComplex hc = pcomplex_from_blocks(hexfwd);
    auto hsites = enumerate_pmove_sites(hc, find_rule("hexagon-3-3b"));
    REQUIRE_FALSE(hsites.empty());
    PComplex hmoved = apply_pmove_pcomplex(hc, find_rule("hexagon-3-3b"), hsites.front());
    CHECK(hmoved.vertices.size() == 3);
    CHECK(isomorphic(hmoved, pcomplex_from_blocks(hexbwd)));
}

TEST_CASE("complex json and dot round trip") {
    BlockDecomposition bd = from_word("p", SupportKind::S05, DecompositionState::pentagon(0),
                                      "a1@p a2@p");
    PComplex pc = pcomplex_from_blocks(bd);
    auto j = to_json(pc);
    PComplex back = pcomplex_from_json(j);
    CHECK(isomorphic(pc, back));
    CHECK(to_json(back) == j);
    CHECK(to_dot(pc).find("graph pcomplex") == 0);

    PGraph g = pgraph_from_decomposition({{"b", "m", "m"}});
    CHECK(to_dot(g).find("graph pgraph") == 0);
    CHECK(to_json(g)["vertices"] == 2);
}
