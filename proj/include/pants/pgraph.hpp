#pragma once

#include <nlohmann/json_fwd.hpp>

#include "pants/ambient.hpp"

namespace pants {

// Trivalent quotient graph of a pants decomposition: one vertex per pair of
// pants, one edge per curve, one leaf per boundary component. Loops and
// parallel edges are expected.
struct PGraph {
    struct Edge {
        int a = 0, b = 0;
        std::string id; // curve label
    };
    int vertices = 0;
    std::vector<Edge> edges;

    int valence(int v) const;
    std::vector<int> leaves() const;     // valence-one vertices
    std::vector<int> trivalent() const;  // valence-three vertices
    int betti() const;                   // first Betti number of the graph
    int find_edge(const std::string& id) const;
    void validate() const; // every valence 1 or 3
};

// Build from pants incidence data: one pants per entry, labels appearing on
// two slots become interior edges, single-slot labels become leaves.
// The expected surface type, when given, is checked against the census.
PGraph pgraph_from_decomposition(const std::vector<Pants3>& pants,
                                 std::optional<SurfaceType> expect = std::nullopt);

// Vertices of the quotient graph of a Morse function, before pruning.
struct ReebGraph {
    enum class Tag { Boundary, Extremal, TrivialSaddle, Inner };
    std::vector<Tag> tags;
    std::vector<std::pair<int, int>> edges;

    int valence(int v) const;
};

// Remove extremal leaves, smooth the trivial saddles they hang off, and keep
// boundary and inner vertices. Throws InvalidTags on inconsistent input.
PGraph reeb_to_pgraph(const ReebGraph& g);

// Replace an interior edge joining two distinct trivalent vertices by the
// transverse edge, re-pairing the four hanging branches. `pairing` picks one
// of the two ways. Throws NotEligible on loops and leaf edges.
PGraph hi_move(const PGraph& g, int edge_index, int pairing = 0);

// Replace the loop at a trivalent vertex by a fresh one; the move an S-move
// induces. The loop's edge id gets a prime toggled so that applying the move
// twice restores the original identities.
PGraph hourglass_move(const PGraph& g, int vertex);

std::string toggle_prime(const std::string& id);

// Unlabeled-isomorphism certificate.
std::string pgraph_certificate(const PGraph& g);
bool pgraph_isomorphic(const PGraph& a, const PGraph& b);

// One move on a P-graph with explicit edge identities.
struct PGraphMove {
    MoveKind kind = MoveKind::A;
    std::string old_edge, new_edge;
    int pairing = 0;
};

// A stack of P-graphs: regular levels alternating with critical ones, each
// critical level carrying a single stack vertex of valence two or four.
struct LocalPModel {
    struct Critical {
        PGraph graph;        // the almost P-graph (collapsed part removed)
        int stack_vertex = -1;
        int valence = 4;
    };
    struct Level {
        std::optional<PGraph> regular;
        std::optional<Critical> critical;
    };
    std::vector<Level> levels; // size 2*moves + 1
    std::vector<std::pair<int, int>> stack_vertices; // (level, valence)
};

LocalPModel stack_from_moves(const std::vector<PGraphMove>& moves, const PGraph& g0);

// Letter-driven convenience: each A-letter needs a unique eligible interior
// edge, each S-letter a unique loop; anything ambiguous is IllegalMove.
LocalPModel stack_from_word(const MoveWord& w, const PGraph& g0);

// P-graph moves along a leveled path, one per path move.
std::vector<PGraphMove> pgraph_moves(const PantsPath& path);

nlohmann::ordered_json to_json(const PGraph& g);
std::string to_dot(const PGraph& g);

} // namespace pants
