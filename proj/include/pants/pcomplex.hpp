#pragma once

#include <nlohmann/json_fwd.hpp>

#include "pants/blocks.hpp"
#include "pants/rules.hpp"

namespace pants {

// The two-dimensional CW complex a block decomposition quotients to: one
// 2-cell per link component, one index-three edge per pair of pants, one
// type-III vertex per fundamental block.
struct PComplex {
    struct Cell {
        std::string label;
        LinkEnd birth, death;
        bool cyclic = false;
    };
    struct Edge {
        std::array<int, 3> cells{}; // incident 2-cells, sorted, multiset
    };
    enum class VKind { IIIS, IIIA };
    struct Vertex {
        VKind kind = VKind::IIIS;
        std::vector<int> bottom_edges, top_edges; // 1+1 for IIIS, 2+2 for IIIA
    };
    std::vector<Cell> cells;
    std::vector<Edge> edges;
    std::vector<Vertex> vertices;

    void validate() const; // local type-II / type-III conditions
};

PComplex pcomplex_from_blocks(const BlockDecomposition& bd);
BlockDecomposition blocks_from_pcomplex(const PComplex& pc); // throws InvalidComplex

// Euler characteristic of one cell's boundary-identified polygon: 1 for a
// disk, 0 for an annulus arising from a seam-closed curve.
int cell_euler_characteristic(const PComplex::Cell& c);

// True iff every 2-cell is a disk: the boundary walk is one circle and the
// identified polygon has characteristic one.
bool validate_disk_cells(const PComplex& pc);

// A move location on the complex: matched vertices for chain rewrites and
// pair deletion, or a cell with its two face edges for pair insertion.
struct PCSite {
    std::string rule;
    bool forward = true;
    std::vector<int> vertices;
    int cell = -1;
    int edge_a = -1, edge_b = -1;
    std::string fresh;

    friend bool operator==(const PCSite&, const PCSite&) = default;
    friend auto operator<=>(const PCSite&, const PCSite&) = default;
};

std::vector<PCSite> enumerate_pmove_sites(const PComplex& pc, const RewriteRule& rule);

// Replace the located local model by the other side of the rule, natively on
// the complex. Throws NoMatch when the site does not carry the rule.
PComplex apply_pmove_pcomplex(const PComplex& pc, const RewriteRule& rule, const PCSite& site);

std::string pcomplex_fingerprint(const PComplex& pc);
bool isomorphic(const PComplex& a, const PComplex& b);

nlohmann::ordered_json to_json(const PComplex& pc);
PComplex pcomplex_from_json(const nlohmann::ordered_json& j);
std::string to_dot(const PComplex& pc);

} // namespace pants
