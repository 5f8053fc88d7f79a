#pragma once

#include <nlohmann/json_fwd.hpp>

#include "pants/pcomplex.hpp"

namespace pants {

// Exact rational event times.
struct Rat {
    long long num = 0, den = 1;
    Rat() = default;
    Rat(long long n, long long d);
    friend bool operator==(const Rat&, const Rat&) = default;
    friend auto operator<=>(const Rat& a, const Rat& b) {
        return a.num * b.den <=> b.num * a.den;
    }
};
Rat parse_rat(std::string_view text);
std::string to_string(const Rat& r);

// Planar event diagram of a homotopy of Morse functions: fold strands over
// the time axis with crossings, cusp births/deaths and the two codimension-two
// marks. Strand heights are tracked as an order, bottom to top; births place
// their pair on top unless an anchor is given.
struct CerfDiagram {
    enum class EventKind { Cross, Birth, Death, Stail, CuspFold };
    struct Event {
        Rat t;
        EventKind kind = EventKind::Cross;
        int a = -1, b = -1;
        std::string support; // essential-crossing annotation; "!" = inessential
        int anchor = -1;     // birth placement: directly above this strand
    };
    struct Strand {
        std::string name;
        bool definite = false; // fold kind
        int index = 0;         // pass-through index tag
    };
    std::vector<Strand> strands;
    std::vector<Event> events;
};

// Text format, one event per line after the header:
//   strands <n>
//   t=<rational> cross i j [@support | !]
//   t=<rational> birth i j | death i j | stail i | cuspfold i j
// Times must be strictly increasing; birth names two fresh strand ids.
CerfDiagram parse_cerf(std::string_view text);
std::string to_string(const CerfDiagram& d);

// True iff event times are distinct, crossings swap height-adjacent strands,
// births/deaths are well-formed and no codimension-two mark is present.
bool validate_generic(const CerfDiagram& d);

// Pants moves a single crossing on the surface induces. Throws OutOfRange
// beyond the five small cases.
int classify_crossing_moves(SurfaceType s);

// The six diagram rewrites. `location` indexes the first event of the
// matched pattern; moves 1, 4, 5 and 6 delete or create event groups, moves
// 2 and 3 reorder them. Backward runs the move in the creating direction.
CerfDiagram induced_move(const CerfDiagram& d, int which, int location, bool forward);

// Word of one letter per essential crossing, in time order; crossings on a
// (1,2) support contribute their three-move burst. UnannotatedCrossing when
// a crossing carries no annotation.
MoveWord word_from_cerf(const CerfDiagram& d, const SupportTable& supports);

// Combinatorial Reeb-complex model: a P-complex allowed to carry definite
// fold edges, cusps and crossings.
struct ReebComplexModel {
    enum class EKind { Index3, Index1 };
    enum class NKind { IIIS, IIIA, Cusp, CrossingEntangled, CrossingUnentangled };
    struct Cell {
        std::string label;
        LinkEnd birth, death;
        bool cyclic = false;
    };
    struct Edge {
        EKind kind = EKind::Index3;
        std::vector<int> cells; // 3 for index3, 1 for index1
    };
    struct Node {
        NKind kind = NKind::IIIS;
        std::vector<int> bottom_edges, top_edges; // type-III faces
        std::vector<int> edges;                   // cusp / crossing incidences
    };
    std::vector<Cell> cells;
    std::vector<Edge> edges;
    std::vector<Node> nodes;

    void validate() const;
    int count_index1() const;
    int count_cusps() const;
    int count_crossings() const;
};

ReebComplexModel reeb_from_pcomplex(const PComplex& pc);
// Requires zero index-one edges, cusps and crossings.
PComplex pcomplex_from_reeb(const ReebComplexModel& rc); // throws Stuck

// A virtual-edge site: a disk glued along an arc inside one 2-cell. Both
// planar patterns (the half-disk and the corner) produce the same
// combinatorial gluing: one definite edge, two cusps, one new cell.
struct VirtualEdgeSite {
    std::string cell; // label
    friend bool operator==(const VirtualEdgeSite&, const VirtualEdgeSite&) = default;
};

ReebComplexModel inflate_virtual_edges(const PComplex& pc,
                                       const std::vector<VirtualEdgeSite>& sites);

// One step of the model-level rewrites (the eye cancellation and its
// inverse); `which` follows the same numbering as the diagram moves.
struct ReebTraceStep {
    int move = 0;
    std::string detail;
};

// Greedy elimination of definite edges and cusps; returns the complex and
// the move trace. Throws Stuck with the residual pattern.
std::pair<PComplex, std::vector<ReebTraceStep>> simplify_to_pcomplex(const ReebComplexModel& rc);

nlohmann::ordered_json to_json(const ReebComplexModel& rc);
ReebComplexModel reeb_from_json(const nlohmann::ordered_json& j);

} // namespace pants
