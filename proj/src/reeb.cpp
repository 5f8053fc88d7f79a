#include "pants/reeb.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace pants {

using json = nlohmann::ordered_json;

Rat::Rat(long long n, long long d) : num(n), den(d) {
    if (den == 0) fail(Err::Parse, "zero denominator in a time");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rat parse_rat(std::string_view text) {
    auto slash = text.find('/');
    auto to_ll = [&](std::string_view s) {
        try {
            return std::stoll(std::string(s));
        } catch (...) {
            fail(Err::Parse, "bad rational '" + std::string(text) + "'");
        }
    };
    if (slash == std::string_view::npos) return Rat(to_ll(text), 1);
    return Rat(to_ll(text.substr(0, slash)), to_ll(text.substr(slash + 1)));
}

std::string to_string(const Rat& r) {
    if (r.den == 1) return std::to_string(r.num);
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

CerfDiagram parse_cerf(std::string_view text) {
    CerfDiagram d;
    std::istringstream in{std::string(text)};
    std::string line;
    bool have_header = false;
    int lineno = 0;
    std::optional<Rat> last_t;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok[0] == '#') continue;
        if (!have_header) {
            int n = 0;
            if (tok != "strands" || !(ls >> n) || n < 0)
                fail(Err::Parse, "expected 'strands <n>' on line " + std::to_string(lineno));
            for (int i = 0; i < n; ++i) d.strands.push_back({"s" + std::to_string(i), false, 0});
            have_header = true;
            continue;
        }
        if (tok.rfind("t=", 0) != 0)
            fail(Err::Parse, "expected 't=<rational>' on line " + std::to_string(lineno));
        CerfDiagram::Event ev;
        ev.t = parse_rat(std::string_view(tok).substr(2));
        if (last_t && !(*last_t < ev.t))
            fail(Err::Parse, "times must increase strictly (line " + std::to_string(lineno) + ")");
        last_t = ev.t;
        std::string kind;
        ls >> kind;
        auto need = [&](int& out) {
            if (!(ls >> out)) fail(Err::Parse, "missing strand id on line " + std::to_string(lineno));
        };
        auto ensure_strand = [&](int id) {
            while (static_cast<int>(d.strands.size()) <= id)
                d.strands.push_back({"s" + std::to_string(d.strands.size()), false, 0});
        };
        if (kind == "cross") {
            ev.kind = CerfDiagram::EventKind::Cross;
            need(ev.a);
            need(ev.b);
            std::string ann;
            if (ls >> ann) {
                if (ann == "!")
                    ev.support = "!";
                else if (ann[0] == '@')
                    ev.support = ann.substr(1);
                else
                    fail(Err::Parse, "bad crossing annotation on line " + std::to_string(lineno));
            }
        } else if (kind == "birth" || kind == "death") {
            ev.kind = kind == "birth" ? CerfDiagram::EventKind::Birth : CerfDiagram::EventKind::Death;
            need(ev.a);
            need(ev.b);
            if (kind == "birth") {
                ensure_strand(ev.a);
                ensure_strand(ev.b);
                d.strands[ev.b].definite = true; // the max/min branch of the cusp
            }
        } else if (kind == "stail") {
            ev.kind = CerfDiagram::EventKind::Stail;
            need(ev.a);
        } else if (kind == "cuspfold") {
            ev.kind = CerfDiagram::EventKind::CuspFold;
            need(ev.a);
            need(ev.b);
        } else {
            fail(Err::Parse, "unknown event '" + kind + "' on line " + std::to_string(lineno));
        }
        d.events.push_back(ev);
    }
    if (!have_header) fail(Err::Parse, "missing 'strands <n>' header");
    return d;
}

std::string to_string(const CerfDiagram& d) {
    std::ostringstream os;
    int named = 0;
    for (const auto& s : d.strands) {
        (void)s;
        ++named;
    }
    os << "strands " << named << "\n";
    for (const auto& ev : d.events) {
        os << "t=" << to_string(ev.t) << ' ';
        switch (ev.kind) {
        case CerfDiagram::EventKind::Cross:
            os << "cross " << ev.a << ' ' << ev.b;
            if (ev.support == "!")
                os << " !";
            else if (!ev.support.empty())
                os << " @" << ev.support;
            break;
        case CerfDiagram::EventKind::Birth: os << "birth " << ev.a << ' ' << ev.b; break;
        case CerfDiagram::EventKind::Death: os << "death " << ev.a << ' ' << ev.b; break;
        case CerfDiagram::EventKind::Stail: os << "stail " << ev.a; break;
        case CerfDiagram::EventKind::CuspFold: os << "cuspfold " << ev.a << ' ' << ev.b; break;
        }
        os << "\n";
    }
    return os.str();
}

namespace {

// replay strand heights; returns false when some event is not generic
bool replay_heights(const CerfDiagram& d, std::vector<int>* final_order = nullptr) {
    std::vector<int> order;
    int initial = 0;
    for (const auto& ev : d.events) {
        if (ev.kind == CerfDiagram::EventKind::Birth) continue;
        initial = std::max({initial, ev.a + 1, ev.b + 1});
    }
    std::set<int> born;
    for (const auto& ev : d.events)
        if (ev.kind == CerfDiagram::EventKind::Birth) {
            born.insert(ev.a);
            born.insert(ev.b);
        }
    for (int i = 0; i < std::max<int>(initial, 0); ++i)
        if (!born.count(i)) order.push_back(i);
    // also any declared strands that never appear keep their slot
    for (int i = 0; i < static_cast<int>(d.strands.size()); ++i)
        if (!born.count(i) && !std::count(order.begin(), order.end(), i)) order.push_back(i);
    std::sort(order.begin(), order.end());

    auto pos = [&](int s) {
        auto it = std::find(order.begin(), order.end(), s);
        return it == order.end() ? -1 : static_cast<int>(it - order.begin());
    };
    for (const auto& ev : d.events) {
        switch (ev.kind) {
        case CerfDiagram::EventKind::Cross: {
            int pa = pos(ev.a), pb = pos(ev.b);
            if (pa < 0 || pb < 0 || std::abs(pa - pb) != 1) return false;
            std::swap(order[pa], order[pb]);
            break;
        }
        case CerfDiagram::EventKind::Birth: {
            if (pos(ev.a) >= 0 || pos(ev.b) >= 0) return false;
            int at = ev.anchor >= 0 ? pos(ev.anchor) + 1 : static_cast<int>(order.size());
            order.insert(order.begin() + at, ev.b);
            order.insert(order.begin() + at, ev.a);
            break;
        }
        case CerfDiagram::EventKind::Death: {
            int pa = pos(ev.a), pb = pos(ev.b);
            if (pa < 0 || pb < 0 || std::abs(pa - pb) != 1) return false;
            order.erase(order.begin() + std::max(pa, pb));
            order.erase(order.begin() + std::min(pa, pb));
            break;
        }
        default: return false; // codimension-two marks are not generic
        }
    }
    if (final_order) *final_order = order;
    return true;
}

} // namespace

bool validate_generic(const CerfDiagram& d) {
    for (std::size_t i = 1; i < d.events.size(); ++i)
        if (!(d.events[i - 1].t < d.events[i].t)) return false;
    return replay_heights(d);
}

int classify_crossing_moves(SurfaceType s) {
    if (s == SurfaceType{0, 3}) return 0;
    if (s == SurfaceType{1, 1}) return 1;
    if (s == SurfaceType{0, 4}) return 1;
    if (s == SurfaceType{1, 2}) return 3;
    if (s == SurfaceType{2, 0}) return 1;
    fail(Err::OutOfRange, to_string(s) + " is outside the two-pants cases");
}

namespace {

using EK = CerfDiagram::EventKind;

// does any event in (from, to) involve one of the strands?
bool quiet_between(const CerfDiagram& d, std::size_t from, std::size_t to,
                   std::initializer_list<int> strands) {
    for (std::size_t i = from + 1; i < to; ++i)
        for (int s : strands)
            if (d.events[i].a == s || d.events[i].b == s) return false;
    return true;
}

Rat fresh_time(const CerfDiagram& d) {
    if (d.events.empty()) return Rat(1, 1);
    return Rat(d.events.back().t.num + d.events.back().t.den, d.events.back().t.den);
}

} // namespace

CerfDiagram induced_move(const CerfDiagram& d, int which, int location, bool forward) {
    CerfDiagram out = d;
    auto& ev = out.events;
    auto erase_two = [&](std::size_t i, std::size_t j) {
        ev.erase(ev.begin() + std::max(i, j));
        ev.erase(ev.begin() + std::min(i, j));
    };
    switch (which) {
    case 1: {
        if (forward) {
            // eliminate two crossings of the same strand pair
            if (location < 0 || location >= static_cast<int>(ev.size()) ||
                ev[location].kind != EK::Cross)
                fail(Err::NoMatch, "move 1 wants a crossing at the location");
            int a = ev[location].a, b = ev[location].b;
            for (std::size_t j = location + 1; j < ev.size(); ++j) {
                bool touches = ev[j].a == a || ev[j].a == b || ev[j].b == a || ev[j].b == b;
                if (!touches) continue;
                if (ev[j].kind == EK::Cross &&
                    ((ev[j].a == a && ev[j].b == b) || (ev[j].a == b && ev[j].b == a))) {
                    erase_two(location, j);
                    if (!replay_heights(out)) fail(Err::NoMatch, "cancelling the pair breaks genericity");
                    return out;
                }
                break;
            }
            fail(Err::NoMatch, "no cancelling partner next to the crossing");
        }
        // create a pair: `location` names the lower strand in the final order
        std::vector<int> order;
        if (!replay_heights(out, &order)) fail(Err::NoMatch, "diagram is not generic");
        auto it = std::find(order.begin(), order.end(), location);
        if (it == order.end() || it + 1 == order.end())
            fail(Err::NoMatch, "no neighbour above strand " + std::to_string(location));
        int other = *(it + 1);
        Rat t = fresh_time(out);
        ev.push_back({t, EK::Cross, location, other, "!", -1});
        ev.push_back({Rat(t.num + t.den, t.den), EK::Cross, other, location, "!", -1});
        return out;
    }
    case 2: {
        // slide three pairwise crossings through each other
        if (location < 0 || location + 2 >= static_cast<int>(ev.size()))
            fail(Err::NoMatch, "move 2 wants three consecutive events");
        CerfDiagram::Event e1 = ev[location], e2 = ev[location + 1], e3 = ev[location + 2];
        if (e1.kind != EK::Cross || e2.kind != EK::Cross || e3.kind != EK::Cross)
            fail(Err::NoMatch, "move 2 wants three crossings");
        std::set<int> strands{e1.a, e1.b, e2.a, e2.b, e3.a, e3.b};
        if (strands.size() != 3) fail(Err::NoMatch, "move 2 wants three strands in a triangle");
        std::swap(ev[location], ev[location + 2]);
        ev[location].t = e1.t;
        ev[location + 2].t = e3.t;
        if (!replay_heights(out)) fail(Err::NoMatch, "triangle slide breaks genericity");
        return out;
    }
    case 3: {
        // slide a cusp past a crossing: [cross(i,j), death(j,x)] loses the cross
        if (!forward) fail(Err::NoMatch, "move 3 runs in the eliminating direction here");
        if (location < 0 || location >= static_cast<int>(ev.size()) ||
            ev[location].kind != EK::Cross)
            fail(Err::NoMatch, "move 3 wants a crossing at the location");
        int a = ev[location].a, b = ev[location].b;
        for (std::size_t j = location + 1; j < ev.size(); ++j) {
            if (ev[j].kind == EK::Death && (ev[j].a == a || ev[j].a == b || ev[j].b == a ||
                                            ev[j].b == b)) {
                if (!quiet_between(out, location, j, {a, b})) break;
                ev.erase(ev.begin() + location);
                if (!replay_heights(out)) break;
                return out;
            }
            if (ev[j].a == a || ev[j].a == b || ev[j].b == a || ev[j].b == b) break;
        }
        fail(Err::NoMatch, "no cusp right after the crossing");
    }
    case 4: {
        if (forward) {
            // eliminate an eye: birth immediately followed by the same death
            if (location < 0 || location >= static_cast<int>(ev.size()) ||
                ev[location].kind != EK::Birth)
                fail(Err::NoMatch, "move 4 wants a birth at the location");
            int a = ev[location].a, b = ev[location].b;
            for (std::size_t j = location + 1; j < ev.size(); ++j) {
                if (ev[j].kind == EK::Death &&
                    ((ev[j].a == a && ev[j].b == b) || (ev[j].a == b && ev[j].b == a))) {
                    if (!quiet_between(out, location, j, {a, b}))
                        fail(Err::NoMatch, "the eye is entangled; clean it first");
                    erase_two(location, j);
                    return out;
                }
                if (ev[j].a == a || ev[j].a == b || ev[j].b == a || ev[j].b == b)
                    fail(Err::NoMatch, "the eye is entangled; clean it first");
            }
            fail(Err::NoMatch, "no matching death for the eye");
        }
        // create an eye above the anchor strand (or at the top when absent)
        int fresh = static_cast<int>(out.strands.size());
        out.strands.push_back({"s" + std::to_string(fresh), false, 0});
        out.strands.push_back({"s" + std::to_string(fresh + 1), true, 0});
        Rat t = fresh_time(out);
        CerfDiagram::Event birth{t, EK::Birth, fresh, fresh + 1, "", location};
        CerfDiagram::Event death{Rat(t.num + t.den, t.den), EK::Death, fresh, fresh + 1, "", -1};
        ev.push_back(birth);
        ev.push_back(death);
        return out;
    }
    case 5: {
        // merge a death-birth pair into plain folds
        if (!forward) fail(Err::NoMatch, "move 5 runs in the merging direction here");
        if (location < 0 || location >= static_cast<int>(ev.size()) ||
            ev[location].kind != EK::Death)
            fail(Err::NoMatch, "move 5 wants a death at the location");
        if (location + 1 >= static_cast<int>(ev.size()) || ev[location + 1].kind != EK::Birth)
            fail(Err::NoMatch, "move 5 wants a birth right after");
        int di = ev[location].a, dj = ev[location].b;
        int bi = ev[location + 1].a, bj = ev[location + 1].b;
        erase_two(location, location + 1);
        for (auto& e : ev) {
            if (e.a == bi) e.a = di;
            if (e.b == bi) e.b = di;
            if (e.a == bj) e.a = dj;
            if (e.b == bj) e.b = dj;
        }
        if (!replay_heights(out)) fail(Err::NoMatch, "merge breaks genericity");
        return out;
    }
    case 6: {
        if (!forward) {
            // grow a swallowtail on strand `location`
            int j = static_cast<int>(out.strands.size());
            out.strands.push_back({"s" + std::to_string(j), false, 0});
            out.strands.push_back({"s" + std::to_string(j + 1), true, 0});
            Rat t = fresh_time(out);
            ev.push_back({t, EK::Birth, j + 1, j, "", location});
            ev.push_back({Rat(t.num + t.den, t.den), EK::Cross, location, j + 1, "!", -1});
            ev.push_back({Rat(t.num + 2 * t.den, t.den), EK::Death, location, j, "", -1});
            if (!replay_heights(out)) fail(Err::NoMatch, "no room for a swallowtail here");
            return out;
        }
        // eliminate: birth(k, j) then cross(i, k) then death(i, j); the
        // surviving branch takes over the old name
        if (location < 0 || location + 2 >= static_cast<int>(ev.size()))
            fail(Err::NoMatch, "move 6 wants three consecutive events");
        if (ev[location].kind != EK::Birth || ev[location + 1].kind != EK::Cross ||
            ev[location + 2].kind != EK::Death)
            fail(Err::NoMatch, "move 6 wants birth, cross, death");
        int k = ev[location].a, j = ev[location].b;
        int i = ev[location + 1].a == k ? ev[location + 1].b : ev[location + 1].a;
        if ((ev[location + 1].a != k && ev[location + 1].b != k))
            fail(Err::NoMatch, "the crossing misses the new branch");
        if (!((ev[location + 2].a == i && ev[location + 2].b == j) ||
              (ev[location + 2].a == j && ev[location + 2].b == i)))
            fail(Err::NoMatch, "the death misses the swallowtail pair");
        ev.erase(ev.begin() + location, ev.begin() + location + 3);
        for (auto& e : ev) {
            if (e.a == k) e.a = i;
            if (e.b == k) e.b = i;
        }
        if (!replay_heights(out)) fail(Err::NoMatch, "swallowtail removal breaks genericity");
        return out;
    }
    default: fail(Err::NoMatch, "moves are numbered 1..6");
    }
}

MoveWord word_from_cerf(const CerfDiagram& d, const SupportTable& supports) {
    if (!validate_generic(d)) fail(Err::InvalidIncidence, "diagram is not generic");
    MoveWord w;
    int next_label[2] = {1, 1};
    auto push = [&](MoveKind kind, const std::string& support, SupportKind sk) {
        MoveLetter m;
        m.kind = kind;
        m.label = next_label[static_cast<int>(kind)]++;
        m.support = support;
        m.support_kind = sk;
        w.push_back(m);
    };
    for (const auto& ev : d.events) {
        if (ev.kind != CerfDiagram::EventKind::Cross) continue;
        if (ev.support == "!") continue; // inessential
        if (ev.support.empty())
            fail(Err::UnannotatedCrossing, "crossing at t=" + to_string(ev.t) +
                                               " carries no annotation");
        auto it = supports.find(ev.support);
        if (it == supports.end())
            fail(Err::UnannotatedCrossing, "support '" + ev.support + "' is not declared");
        switch (it->second) {
        case SupportKind::S11: push(MoveKind::S, ev.support, it->second); break;
        case SupportKind::S04:
        case SupportKind::S05: push(MoveKind::A, ev.support, it->second); break;
        case SupportKind::S12:
            // one crossing on this support is a three-move burst
            push(MoveKind::A, ev.support, it->second);
            push(MoveKind::S, ev.support, it->second);
            push(MoveKind::A, ev.support, it->second);
            break;
        }
    }
    return w;
}

// ---------------------------------------------------------------------------
// Reeb-complex models

void ReebComplexModel::validate() const {
    const int nc = static_cast<int>(cells.size());
    const int ne = static_cast<int>(edges.size());
    for (const auto& e : edges) {
        std::size_t want = e.kind == EKind::Index3 ? 3 : 1;
        if (e.cells.size() != want) fail(Err::InvalidComplex, "edge with the wrong cell count");
        for (int c : e.cells)
            if (c < 0 || c >= nc) fail(Err::InvalidComplex, "edge cell out of range");
    }
    for (const auto& n : nodes) {
        auto in_range = [&](const std::vector<int>& es) {
            for (int e : es)
                if (e < 0 || e >= ne) return false;
            return true;
        };
        if (!in_range(n.bottom_edges) || !in_range(n.top_edges) || !in_range(n.edges))
            fail(Err::InvalidComplex, "node edge out of range");
        switch (n.kind) {
        case NKind::IIIS:
            if (n.bottom_edges.size() != 1 || n.top_edges.size() != 1)
                fail(Err::InvalidComplex, "IIIS node needs one face each side");
            break;
        case NKind::IIIA:
            if (n.bottom_edges.size() != 2 || n.top_edges.size() != 2)
                fail(Err::InvalidComplex, "IIIA node needs two faces each side");
            break;
        case NKind::Cusp:
            if (n.edges.size() != 2 || edges[n.edges[0]].kind == edges[n.edges[1]].kind)
                fail(Err::InvalidComplex, "a cusp joins one definite and one indefinite edge");
            break;
        case NKind::CrossingEntangled:
        case NKind::CrossingUnentangled:
            if (n.edges.size() != 2) fail(Err::InvalidComplex, "a crossing joins two fold edges");
            break;
        }
    }
}

int ReebComplexModel::count_index1() const {
    int out = 0;
    for (const auto& e : edges) out += e.kind == EKind::Index1;
    return out;
}
int ReebComplexModel::count_cusps() const {
    int out = 0;
    for (const auto& n : nodes) out += n.kind == NKind::Cusp;
    return out;
}
int ReebComplexModel::count_crossings() const {
    int out = 0;
    for (const auto& n : nodes)
        out += n.kind == NKind::CrossingEntangled || n.kind == NKind::CrossingUnentangled;
    return out;
}

ReebComplexModel reeb_from_pcomplex(const PComplex& pc) {
    ReebComplexModel rc;
    for (const auto& c : pc.cells) rc.cells.push_back({c.label, c.birth, c.death, c.cyclic});
    for (const auto& e : pc.edges) {
        ReebComplexModel::Edge edge;
        edge.kind = ReebComplexModel::EKind::Index3;
        edge.cells = {e.cells[0], e.cells[1], e.cells[2]};
        rc.edges.push_back(edge);
    }
    for (const auto& v : pc.vertices) {
        ReebComplexModel::Node n;
        n.kind = v.kind == PComplex::VKind::IIIS ? ReebComplexModel::NKind::IIIS
                                                 : ReebComplexModel::NKind::IIIA;
        n.bottom_edges = v.bottom_edges;
        n.top_edges = v.top_edges;
        rc.nodes.push_back(n);
    }
    rc.validate();
    return rc;
}

PComplex pcomplex_from_reeb(const ReebComplexModel& rc) {
    if (rc.count_index1() || rc.count_cusps() || rc.count_crossings())
        fail(Err::Stuck, "residual definite edges, cusps or crossings");
    PComplex pc;
    for (const auto& c : rc.cells) pc.cells.push_back({c.label, c.birth, c.death, c.cyclic});
    std::vector<int> edge_map(rc.edges.size(), -1);
    for (int e = 0; e < static_cast<int>(rc.edges.size()); ++e) {
        PComplex::Edge edge;
        edge.cells = {rc.edges[e].cells[0], rc.edges[e].cells[1], rc.edges[e].cells[2]};
        std::sort(edge.cells.begin(), edge.cells.end());
        edge_map[e] = static_cast<int>(pc.edges.size());
        pc.edges.push_back(edge);
    }
    for (const auto& n : rc.nodes) {
        PComplex::Vertex v;
        v.kind = n.kind == ReebComplexModel::NKind::IIIS ? PComplex::VKind::IIIS
                                                         : PComplex::VKind::IIIA;
        for (int e : n.bottom_edges) v.bottom_edges.push_back(edge_map[e]);
        for (int e : n.top_edges) v.top_edges.push_back(edge_map[e]);
        std::sort(v.bottom_edges.begin(), v.bottom_edges.end());
        std::sort(v.top_edges.begin(), v.top_edges.end());
        pc.vertices.push_back(v);
    }
    pc.validate();
    return pc;
}

ReebComplexModel inflate_virtual_edges(const PComplex& pc,
                                       const std::vector<VirtualEdgeSite>& sites) {
    ReebComplexModel rc = reeb_from_pcomplex(pc);
    std::set<std::string> labels;
    for (const auto& c : rc.cells) labels.insert(c.label);
    int mint = 0;
    for (const auto& site : sites) {
        int cell = -1;
        for (int c = 0; c < static_cast<int>(rc.cells.size()); ++c)
            if (rc.cells[c].label == site.cell) cell = c;
        if (cell < 0) fail(Err::InvalidSite, "no cell labelled '" + site.cell + "'");
        std::string vlabel;
        do
            vlabel = "v" + std::to_string(mint++);
        while (labels.count(vlabel));
        labels.insert(vlabel);
        rc.cells.push_back({vlabel, {}, {}, false});
        int disk = static_cast<int>(rc.cells.size()) - 1;
        // the arc the disk is glued along becomes an indefinite edge between
        // the host cell (on both sides) and the disk; the free side of the
        // disk is a definite edge; the corners are cusps
        ReebComplexModel::Edge alpha;
        alpha.kind = ReebComplexModel::EKind::Index3;
        alpha.cells = {cell, cell, disk};
        rc.edges.push_back(alpha);
        int alpha_idx = static_cast<int>(rc.edges.size()) - 1;
        ReebComplexModel::Edge tau;
        tau.kind = ReebComplexModel::EKind::Index1;
        tau.cells = {disk};
        rc.edges.push_back(tau);
        int tau_idx = static_cast<int>(rc.edges.size()) - 1;
        for (int k = 0; k < 2; ++k) {
            ReebComplexModel::Node cusp;
            cusp.kind = ReebComplexModel::NKind::Cusp;
            cusp.edges = {alpha_idx, tau_idx};
            rc.nodes.push_back(cusp);
        }
    }
    rc.validate();
    return rc;
}

namespace {

struct EyePattern {
    int cusp1 = -1, cusp2 = -1;
    int alpha = -1, tau = -1, disk = -1;
};

std::optional<EyePattern> find_eye(const ReebComplexModel& rc) {
    for (int n1 = 0; n1 < static_cast<int>(rc.nodes.size()); ++n1) {
        if (rc.nodes[n1].kind != ReebComplexModel::NKind::Cusp) continue;
        for (int n2 = n1 + 1; n2 < static_cast<int>(rc.nodes.size()); ++n2) {
            if (rc.nodes[n2].kind != ReebComplexModel::NKind::Cusp) continue;
            std::vector<int> e1 = rc.nodes[n1].edges, e2 = rc.nodes[n2].edges;
            std::sort(e1.begin(), e1.end());
            std::sort(e2.begin(), e2.end());
            if (e1 != e2) continue;
            EyePattern eye;
            eye.cusp1 = n1;
            eye.cusp2 = n2;
            for (int e : e1)
                (rc.edges[e].kind == ReebComplexModel::EKind::Index1 ? eye.tau : eye.alpha) = e;
            if (eye.tau < 0 || eye.alpha < 0) continue;
            if (rc.edges[eye.tau].cells.size() != 1) continue;
            eye.disk = rc.edges[eye.tau].cells[0];
            // no other structure may touch the disk cell
            bool clean = true;
            for (int e = 0; e < static_cast<int>(rc.edges.size()); ++e) {
                if (e == eye.tau || e == eye.alpha) continue;
                for (int c : rc.edges[e].cells) clean = clean && c != eye.disk;
            }
            if (clean) return eye;
        }
    }
    return std::nullopt;
}

void erase_indices(std::vector<int>& v, const std::vector<int>& map) {
    std::vector<int> out;
    for (int x : v)
        if (map[x] >= 0) out.push_back(map[x]);
    v = out;
}

// remove marked cells/edges/nodes and remap every reference
ReebComplexModel compact(const ReebComplexModel& rc, const std::set<int>& dead_cells,
                         const std::set<int>& dead_edges, const std::set<int>& dead_nodes,
                         const std::map<int, int>& cell_merge) {
    ReebComplexModel out;
    std::vector<int> cell_map(rc.cells.size(), -1), edge_map(rc.edges.size(), -1),
        node_map(rc.nodes.size(), -1);
    for (int c = 0; c < static_cast<int>(rc.cells.size()); ++c) {
        if (dead_cells.count(c)) continue;
        cell_map[c] = static_cast<int>(out.cells.size());
        out.cells.push_back(rc.cells[c]);
    }
    for (int e = 0; e < static_cast<int>(rc.edges.size()); ++e) {
        if (dead_edges.count(e)) continue;
        edge_map[e] = static_cast<int>(out.edges.size());
        out.edges.push_back(rc.edges[e]);
    }
    for (int n = 0; n < static_cast<int>(rc.nodes.size()); ++n) {
        if (dead_nodes.count(n)) continue;
        node_map[n] = static_cast<int>(out.nodes.size());
        out.nodes.push_back(rc.nodes[n]);
    }
    for (auto& e : out.edges) {
        for (int& c : e.cells) {
            auto it = cell_merge.find(c);
            if (it != cell_merge.end()) c = it->second;
            c = cell_map[c];
        }
        std::sort(e.cells.begin(), e.cells.end());
    }
    for (auto& n : out.nodes) {
        erase_indices(n.bottom_edges, edge_map);
        erase_indices(n.top_edges, edge_map);
        erase_indices(n.edges, edge_map);
    }
    for (auto& c : out.cells) {
        if (c.birth.kind == LinkEnd::Kind::Block && c.birth.index >= 0)
            c.birth.index = node_map[c.birth.index];
        if (c.death.kind == LinkEnd::Kind::Block && c.death.index >= 0)
            c.death.index = node_map[c.death.index];
    }
    return out;
}

} // namespace

std::pair<PComplex, std::vector<ReebTraceStep>> simplify_to_pcomplex(const ReebComplexModel& input) {
    ReebComplexModel rc = input;
    std::vector<ReebTraceStep> trace;
    bool progress = true;
    while (progress) {
        progress = false;

        // move 1: two crossings of the same two fold edges cancel
        for (int n1 = 0; n1 < static_cast<int>(rc.nodes.size()) && !progress; ++n1) {
            auto is_cross = [&](int n) {
                return rc.nodes[n].kind == ReebComplexModel::NKind::CrossingEntangled ||
                       rc.nodes[n].kind == ReebComplexModel::NKind::CrossingUnentangled;
            };
            if (!is_cross(n1)) continue;
            for (int n2 = n1 + 1; n2 < static_cast<int>(rc.nodes.size()) && !progress; ++n2) {
                if (!is_cross(n2)) continue;
                std::vector<int> e1 = rc.nodes[n1].edges, e2 = rc.nodes[n2].edges;
                std::sort(e1.begin(), e1.end());
                std::sort(e2.begin(), e2.end());
                if (e1 != e2) continue;
                rc = compact(rc, {}, {}, {n1, n2}, {});
                trace.push_back({1, "cancelled a crossing pair"});
                progress = true;
            }
        }
        if (progress) continue;

        // move 3: a crossing adjacent to a cusp slides away
        for (int n1 = 0; n1 < static_cast<int>(rc.nodes.size()) && !progress; ++n1) {
            if (rc.nodes[n1].kind != ReebComplexModel::NKind::CrossingEntangled &&
                rc.nodes[n1].kind != ReebComplexModel::NKind::CrossingUnentangled)
                continue;
            for (int n2 = 0; n2 < static_cast<int>(rc.nodes.size()) && !progress; ++n2) {
                if (rc.nodes[n2].kind != ReebComplexModel::NKind::Cusp) continue;
                for (int e : rc.nodes[n1].edges)
                    if (std::count(rc.nodes[n2].edges.begin(), rc.nodes[n2].edges.end(), e)) {
                        rc = compact(rc, {}, {}, {n1}, {});
                        trace.push_back({3, "slid a cusp past a crossing"});
                        progress = true;
                        break;
                    }
            }
        }
        if (progress) continue;

        // move 4: eye cancellation, merging the flanking cells when the
        // virtual edge separated two of them
        if (auto eye = find_eye(rc)) {
            std::map<int, int> merge;
            const auto& acells = rc.edges[eye->alpha].cells;
            std::vector<int> outer;
            for (int c : acells)
                if (c != eye->disk) outer.push_back(c);
            if (outer.size() == 2 && outer[0] != outer[1])
                merge[std::max(outer[0], outer[1])] = std::min(outer[0], outer[1]);
            rc = compact(rc, {eye->disk}, {eye->alpha, eye->tau}, {eye->cusp1, eye->cusp2}, merge);
            trace.push_back({4, "cancelled an eye"});
            progress = true;
            continue;
        }

        // move 5: two cusps sharing a definite edge merge; their indefinite
        // branches must carry the same cells
        for (int n1 = 0; n1 < static_cast<int>(rc.nodes.size()) && !progress; ++n1) {
            if (rc.nodes[n1].kind != ReebComplexModel::NKind::Cusp) continue;
            for (int n2 = n1 + 1; n2 < static_cast<int>(rc.nodes.size()) && !progress; ++n2) {
                if (rc.nodes[n2].kind != ReebComplexModel::NKind::Cusp) continue;
                int tau = -1, a1 = -1, a2 = -1;
                for (int e : rc.nodes[n1].edges)
                    if (std::count(rc.nodes[n2].edges.begin(), rc.nodes[n2].edges.end(), e) &&
                        rc.edges[e].kind == ReebComplexModel::EKind::Index1)
                        tau = e;
                if (tau < 0) continue;
                for (int e : rc.nodes[n1].edges)
                    if (e != tau) a1 = e;
                for (int e : rc.nodes[n2].edges)
                    if (e != tau) a2 = e;
                if (a1 < 0 || a2 < 0 || a1 == a2) continue;
                auto c1 = rc.edges[a1].cells, c2 = rc.edges[a2].cells;
                std::sort(c1.begin(), c1.end());
                std::sort(c2.begin(), c2.end());
                if (c1 != c2) continue;
                // fuse the indefinite branches, keep the definite fold
                for (auto& node : rc.nodes)
                    for (int* list : {&node.bottom_edges, &node.top_edges, &node.edges}
                                         [0] == nullptr
                             ? std::initializer_list<std::vector<int>*>{}
                             : std::initializer_list<std::vector<int>*>{&node.bottom_edges,
                                                                        &node.top_edges,
                                                                        &node.edges})
                        for (int& e : *list)
                            if (e == a2) e = a1;
                rc = compact(rc, {}, {static_cast<std::size_t>(a2) < rc.edges.size() ? a2 : a2},
                             {n1, n2}, {});
                trace.push_back({5, "merged a death-birth cusp pair"});
                progress = true;
            }
        }
        if (progress) continue;

        // move 6: collapse a swallowtail
        for (int a = 0; a < static_cast<int>(rc.nodes.size()) && !progress; ++a) {
            if (rc.nodes[a].kind != ReebComplexModel::NKind::CrossingEntangled) continue;
            if (rc.nodes[a].edges.size() != 2) continue;
            int e1 = rc.nodes[a].edges[0], e2 = rc.nodes[a].edges[1];
            int b = -1, c = -1, tau = -1;
            for (int n = 0; n < static_cast<int>(rc.nodes.size()); ++n) {
                if (rc.nodes[n].kind != ReebComplexModel::NKind::Cusp) continue;
                if (std::count(rc.nodes[n].edges.begin(), rc.nodes[n].edges.end(), e1)) b = n;
                if (std::count(rc.nodes[n].edges.begin(), rc.nodes[n].edges.end(), e2)) c = n;
            }
            if (b < 0 || c < 0 || b == c) continue;
            for (int e : rc.nodes[b].edges)
                if (rc.edges[e].kind == ReebComplexModel::EKind::Index1 &&
                    std::count(rc.nodes[c].edges.begin(), rc.nodes[c].edges.end(), e))
                    tau = e;
            if (tau < 0) continue;
            int disk = rc.edges[tau].cells[0];
            // merge the two branches into one plain fold: common outer cell
            // once, then the two side cells
            std::vector<int> s1, s2;
            for (int cc : rc.edges[e1].cells)
                if (cc != disk) s1.push_back(cc);
            for (int cc : rc.edges[e2].cells)
                if (cc != disk) s2.push_back(cc);
            std::vector<int> merged;
            for (int cc : s1) merged.push_back(cc);
            for (int cc : s2)
                if (!std::count(merged.begin(), merged.end(), cc)) merged.push_back(cc);
            if (merged.size() != 3) continue;
            rc.edges[e1].cells = merged;
            for (auto& node : rc.nodes)
                for (auto* list : {&node.bottom_edges, &node.top_edges, &node.edges})
                    for (int& e : *list)
                        if (e == e2) e = e1;
            rc = compact(rc, {disk}, {e2, tau}, {a, b, c}, {});
            trace.push_back({6, "collapsed a swallowtail"});
            progress = true;
        }
    }

    if (rc.count_index1() || rc.count_cusps() || rc.count_crossings()) {
        std::ostringstream os;
        os << "stuck with " << rc.count_index1() << " definite edges, " << rc.count_cusps()
           << " cusps, " << rc.count_crossings() << " crossings";
        fail(Err::Stuck, os.str());
    }
    return {pcomplex_from_reeb(rc), trace};
}

json to_json(const ReebComplexModel& rc) {
    json j;
    j["cells"] = json::array();
    for (const auto& c : rc.cells) j["cells"].push_back(c.label);
    j["edges"] = json::array();
    for (const auto& e : rc.edges) {
        json edge;
        edge["kind"] = e.kind == ReebComplexModel::EKind::Index3 ? "index3" : "index1";
        edge["cells"] = json::array();
        for (int c : e.cells) edge["cells"].push_back(rc.cells[c].label);
        j["edges"].push_back(edge);
    }
    j["nodes"] = json::array();
    for (const auto& n : rc.nodes) {
        json node;
        switch (n.kind) {
        case ReebComplexModel::NKind::IIIS: node["kind"] = "IIIS"; break;
        case ReebComplexModel::NKind::IIIA: node["kind"] = "IIIA"; break;
        case ReebComplexModel::NKind::Cusp: node["kind"] = "cusp"; break;
        case ReebComplexModel::NKind::CrossingEntangled: node["kind"] = "crossing"; break;
        case ReebComplexModel::NKind::CrossingUnentangled: node["kind"] = "crossing-unentangled"; break;
        }
        node["bottom"] = n.bottom_edges;
        node["top"] = n.top_edges;
        node["edges"] = n.edges;
        j["nodes"].push_back(node);
    }
    json meta;
    meta["ends"] = json::array();
    for (const auto& c : rc.cells) {
        auto fmt = [&](const LinkEnd& e) {
            switch (e.kind) {
            case LinkEnd::Kind::Free: return std::string("free");
            case LinkEnd::Kind::Block: return "block:" + std::to_string(e.index);
            case LinkEnd::Kind::Seam: return "seam:" + std::to_string(e.index);
            }
            return std::string("free");
        };
        meta["ends"].push_back({fmt(c.birth), fmt(c.death)});
    }
    meta["cyclic"] = json::array();
    for (const auto& c : rc.cells) meta["cyclic"].push_back(c.cyclic);
    j["meta"] = meta;
    return j;
}

ReebComplexModel reeb_from_json(const json& j) {
    ReebComplexModel rc;
    std::map<std::string, int> by_label;
    for (const auto& l : j.at("cells")) {
        rc.cells.push_back({l.get<std::string>(), {}, {}, false});
        by_label[rc.cells.back().label] = static_cast<int>(rc.cells.size()) - 1;
    }
    for (const auto& e : j.at("edges")) {
        ReebComplexModel::Edge edge;
        edge.kind = e.at("kind").get<std::string>() == "index1" ? ReebComplexModel::EKind::Index1
                                                                : ReebComplexModel::EKind::Index3;
        for (const auto& c : e.at("cells")) edge.cells.push_back(by_label.at(c.get<std::string>()));
        rc.edges.push_back(edge);
    }
    for (const auto& n : j.at("nodes")) {
        ReebComplexModel::Node node;
        std::string kind = n.at("kind").get<std::string>();
        if (kind == "IIIS")
            node.kind = ReebComplexModel::NKind::IIIS;
        else if (kind == "IIIA")
            node.kind = ReebComplexModel::NKind::IIIA;
        else if (kind == "cusp")
            node.kind = ReebComplexModel::NKind::Cusp;
        else if (kind == "crossing")
            node.kind = ReebComplexModel::NKind::CrossingEntangled;
        else if (kind == "crossing-unentangled")
            node.kind = ReebComplexModel::NKind::CrossingUnentangled;
        else
            fail(Err::Parse, "unknown node kind '" + kind + "'");
        node.bottom_edges = n.at("bottom").get<std::vector<int>>();
        node.top_edges = n.at("top").get<std::vector<int>>();
        node.edges = n.at("edges").get<std::vector<int>>();
        rc.nodes.push_back(node);
    }
    if (j.contains("meta")) {
        const json& meta = j.at("meta");
        for (std::size_t c = 0; c < rc.cells.size(); ++c) {
            auto parse_end = [&](const std::string& s) -> LinkEnd {
                if (s == "free") return {LinkEnd::Kind::Free, -1};
                auto colon = s.find(':');
                int idx = std::stoi(s.substr(colon + 1));
                if (s.rfind("block", 0) == 0) return {LinkEnd::Kind::Block, idx};
                return {LinkEnd::Kind::Seam, idx};
            };
            rc.cells[c].birth = parse_end(meta.at("ends").at(c).at(0).get<std::string>());
            rc.cells[c].death = parse_end(meta.at("ends").at(c).at(1).get<std::string>());
            rc.cells[c].cyclic = meta.at("cyclic").at(c).get<bool>();
        }
    }
    rc.validate();
    return rc;
}

} // namespace pants
