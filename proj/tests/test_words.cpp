#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pants/words.hpp"

using namespace pants;

namespace {

MoveLetter L(MoveKind k, int label, bool inv = false, std::string sup = "") {
    MoveLetter m;
    m.kind = k;
    m.label = label;
    m.inverted = inv;
    m.support = std::move(sup);
    return m;
}

// reduce by cancelling a random redex at a time
MoveWord reduce_random(MoveWord w, std::mt19937& rng) {
    while (true) {
        std::vector<std::size_t> redexes;
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            if (w[i].cancels(w[i + 1])) redexes.push_back(i);
        if (redexes.empty()) return w;
        std::size_t at = redexes[std::uniform_int_distribution<std::size_t>(0, redexes.size() - 1)(rng)];
        w.erase(w.begin() + at, w.begin() + at + 2);
    }
}

MoveWord random_word(std::mt19937& rng, int max_len) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> label(1, 3);
    std::uniform_int_distribution<int> coin(0, 1);
    MoveWord w;
    int n = len(rng);
    for (int i = 0; i < n; ++i)
        w.push_back(L(coin(rng) ? MoveKind::S : MoveKind::A, label(rng), coin(rng),
                      coin(rng) ? "h" : "g"));
    return w;
}

} // namespace

TEST_CASE("free reduction basics") {
    MoveWord w{L(MoveKind::S, 1), L(MoveKind::S, 1, true)};
    CHECK(free_reduce(w).empty());

    MoveWord v{L(MoveKind::A, 1), L(MoveKind::A, 2), L(MoveKind::A, 2, true), L(MoveKind::A, 3)};
    MoveWord expect{L(MoveKind::A, 1), L(MoveKind::A, 3)};
    CHECK(free_reduce(v) == expect);

    MoveWord irreducible{L(MoveKind::A, 1), L(MoveKind::S, 1)};
    CHECK(free_reduce(irreducible) == irreducible);
}

TEST_CASE("letters only cancel their exact inverse") {
    // same label, different support: no cancellation
    MoveWord w{L(MoveKind::S, 1, false, "h"), L(MoveKind::S, 1, true, "g")};
    CHECK(free_reduce(w) == w);
    // nested pairs collapse fully
    MoveWord v{L(MoveKind::S, 1), L(MoveKind::A, 1), L(MoveKind::A, 1, true), L(MoveKind::S, 1, true)};
    CHECK(free_reduce(v).empty());
}

TEST_CASE("free reduction is confluent over random orders") {
    std::mt19937 rng(11);
    for (int i = 0; i < 1000; ++i) {
        MoveWord w = random_word(rng, 30);
        MoveWord nf = free_reduce(w);
        for (int k = 0; k < 5; ++k) CHECK(reduce_random(w, rng) == nf);
    }
}

TEST_CASE("invert word") {
    MoveWord w{L(MoveKind::A, 1), L(MoveKind::S, 2, true)};
    MoveWord expect{L(MoveKind::S, 2), L(MoveKind::A, 1, true)};
    CHECK(invert_word(w) == expect);
    CHECK(invert_word(MoveWord{}).empty());
    CHECK(invert_word(MoveWord{L(MoveKind::S, 1)}) == MoveWord{L(MoveKind::S, 1, true)});
    // involution, and w . w^{-1} reduces away
    std::mt19937 rng(5);
    for (int i = 0; i < 100; ++i) {
        MoveWord v = random_word(rng, 12);
        CHECK(invert_word(invert_word(v)) == v);
        MoveWord cat = v;
        MoveWord inv = invert_word(v);
        cat.insert(cat.end(), inv.begin(), inv.end());
        CHECK(free_reduce(cat).empty());
    }
}

TEST_CASE("word parsing round trip") {
    SupportTable t{{"h1", SupportKind::S05}};
    MoveWord w = parse_word("a1 s2' a3@h1", t);
    REQUIRE(w.size() == 3);
    CHECK(w[0].kind == MoveKind::A);
    CHECK(w[0].label == 1);
    CHECK_FALSE(w[0].inverted);
    CHECK(w[1].kind == MoveKind::S);
    CHECK(w[1].inverted);
    CHECK(w[2].support == "h1");
    CHECK(w[2].support_kind == SupportKind::S05);
    CHECK(to_string(w) == "a1 s2' a3@h1");

    MoveWord s = parse_word("s1<0/1>1/0@t");
    REQUIRE(s.size() == 1);
    CHECK(s[0].from == Slope(0, 1));
    CHECK(s[0].to == Slope(1, 0));
    CHECK(parse_word(to_string(s)) == s);
}

TEST_CASE("word parsing rejects malformed tokens") {
    CHECK_THROWS_AS(parse_word("x1"), Error);
    CHECK_THROWS_AS(parse_word("s"), Error);
    CHECK_THROWS_AS(parse_word("s1''"), Error);
    CHECK_THROWS_AS(parse_word("a2@"), Error);
    try {
        parse_word("a1   b2");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("column 6") != std::string::npos);
    }
}
