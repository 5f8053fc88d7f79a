#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pants/conjugacy.hpp"

using namespace pants;

namespace {
const RewriteRule& R(const std::string& name) { return find_rule(name); }
}

TEST_CASE("pentagon 1-4 to 2-3 in one pair") {
    auto d = derive_conjugacy(R("pentagon-1-4"), R("pentagon-2-3"), 1);
    REQUIRE(d.has_value());
    CHECK(d->pairs_inserted() == 1);
    replay(*d);
}

TEST_CASE("hexagon derivations from the 3-3 representative") {
    auto one = derive_conjugacy(R("hexagon-3-3b"), R("hexagon-2-4b"), 1); // H0 -> H2
    REQUIRE(one.has_value());
    CHECK(one->pairs_inserted() == 1);
    replay(*one);

    auto two = derive_conjugacy(R("hexagon-3-3b"), R("hexagon-3-3a"), 2); // H0 -> H1
    REQUIRE(two.has_value());
    CHECK(two->pairs_inserted() == 2);
    replay(*two);

    // a 3-3 schema is never one pair away from a 3-3 schema
    CHECK_FALSE(derive_conjugacy(R("hexagon-3-3b"), R("hexagon-3-3a"), 1).has_value());
}

TEST_CASE("conjugacy preserves the total edge count") {
    auto d = derive_conjugacy(R("hexagon-3-3b"), R("hexagon-1-5b"), 6);
    REQUIRE(d.has_value());
    RewriteRule cur = d->source;
    std::size_t total = cur.lhs.size() + cur.rhs.size();
    for (const auto& step : d->steps) {
        cur = apply_conjugacy_step(cur, step);
        CHECK(cur.lhs.size() + cur.rhs.size() == total);
    }
}

TEST_CASE("non-conjugate pairs fail") {
    CHECK_FALSE(derive_conjugacy(R("cancel-s"), R("cancel-a"), 6).has_value());
    CHECK_FALSE(derive_conjugacy(R("triangle-s"), R("triangle-a"), 6).has_value());
    // different categories cannot be conjugate at all
    CHECK_FALSE(derive_conjugacy(R("triangle-s"), R("pentagon-2-3"), 6).has_value());
}

TEST_CASE("within-family derivations with two pairs per link") {
    // every pair inside the pentagon family
    CHECK(derive_conjugacy(R("pentagon-1-4"), R("pentagon-2-3"), 2).has_value());
    CHECK(derive_conjugacy(R("pentagon-2-3"), R("pentagon-1-4"), 2).has_value());
    // commutativity splits into kind classes: ss, aa and mixed
    CHECK(derive_conjugacy(R("comm-2-2-ss"), R("comm-1-3-ss"), 2).has_value());
    CHECK(derive_conjugacy(R("comm-2-2-aa"), R("comm-1-3-aa"), 2).has_value());
    CHECK(derive_conjugacy(R("comm-2-2-sa"), R("comm-1-3-as"), 2).has_value());
    CHECK(derive_conjugacy(R("comm-2-2-sa"), R("comm-1-3-sa"), 2).has_value());
    CHECK(derive_conjugacy(R("comm-1-3-as"), R("comm-1-3-sa"), 4).has_value());
    // crossing kind classes can never work
    CHECK_FALSE(derive_conjugacy(R("comm-2-2-ss"), R("comm-2-2-aa"), 6).has_value());
}

TEST_CASE("hexagon conjugacy report") {
    HexagonConjugacyReport r = verify_hexagon_conjugacy();
    REQUIRE(r.chains.size() == 7);
    CHECK(r.all_within_bounds);
    CHECK(r.pairwise_two_ok);

    std::map<std::string, int> pairs;
    for (const auto& c : r.chains) pairs[c.alias] = c.total_pairs;
    CHECK(pairs["H2"] == 1);
    CHECK(pairs["H5"] == 1);
    CHECK(pairs["H1"] == 2);
    CHECK(pairs["H3"] <= 2);
    CHECK(pairs["H4"] <= 3);
    CHECK(pairs["H6"] <= 4);
    CHECK(pairs["H7"] <= 2);

    std::string text = format(r);
    CHECK(text.find("H6") != std::string::npos);
}
