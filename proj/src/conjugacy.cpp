#include "pants/conjugacy.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace pants {

RewriteRule apply_conjugacy_step(const RewriteRule& r, const ConjugacyStep& s) {
    RewriteRule out = r;
    MoveWord& w = s.side == ConjugacyStep::Side::Left ? out.lhs : out.rhs;
    MoveWord& o = s.side == ConjugacyStep::Side::Left ? out.rhs : out.lhs;
    if (o.empty()) fail(Err::NoMatch, "cannot strip from an empty side");
    if (s.end == ConjugacyStep::End::Head) {
        if (!(o.front() == s.outer)) fail(Err::NoMatch, "head letters do not line up");
        w.insert(w.begin(), {s.outer, s.outer.inverse()});
        w.erase(w.begin());
        o.erase(o.begin());
    } else {
        if (!(o.back() == s.outer)) fail(Err::NoMatch, "tail letters do not line up");
        w.push_back(s.outer.inverse());
        w.push_back(s.outer);
        w.pop_back();
        o.pop_back();
    }
    return out;
}

RewriteRule replay(const ConjugacyDerivation& d) {
    RewriteRule r = d.source;
    for (const auto& s : d.steps) r = apply_conjugacy_step(r, s);
    if (d.swapped) std::swap(r.lhs, r.rhs);
    if (!rules_equivalent(r, d.target, false))
        fail(Err::ReplayMismatch, "derivation does not reproduce its target");
    return r;
}

namespace {

int total_edges(const RewriteRule& r) {
    return static_cast<int>(r.lhs.size() + r.rhs.size());
}

std::vector<ConjugacyStep> candidate_steps(const RewriteRule& r) {
    std::vector<ConjugacyStep> out;
    using Side = ConjugacyStep::Side;
    using End = ConjugacyStep::End;
    if (!r.rhs.empty()) {
        out.push_back({Side::Left, End::Head, r.rhs.front()});
        out.push_back({Side::Left, End::Tail, r.rhs.back()});
    }
    if (!r.lhs.empty()) {
        out.push_back({Side::Right, End::Head, r.lhs.front()});
        out.push_back({Side::Right, End::Tail, r.lhs.back()});
    }
    return out;
}

} // namespace

std::optional<ConjugacyDerivation> derive_conjugacy(const RewriteRule& source,
                                                    const RewriteRule& target, int max_pairs) {
    if (source.family != target.family) return std::nullopt;
    if (total_edges(source) != total_edges(target)) return std::nullopt;

    const std::string want = rule_schema_key(target);
    struct Node {
        RewriteRule rule;
        std::vector<ConjugacyStep> steps;
    };
    std::deque<Node> queue{{source, {}}};
    std::set<std::string> seen{rule_schema_key(source)};

    auto finish = [&](Node n) {
        ConjugacyDerivation d;
        d.source = source;
        d.target = target;
        d.steps = std::move(n.steps);
        d.swapped = !rules_equivalent(n.rule, target, false);
        return d;
    };
    if (rule_schema_key(source) == want) return finish({source, {}});

    while (!queue.empty()) {
        Node cur = std::move(queue.front());
        queue.pop_front();
        if (static_cast<int>(cur.steps.size()) >= max_pairs) continue;
        for (const auto& step : candidate_steps(cur.rule)) {
            Node next{apply_conjugacy_step(cur.rule, step), cur.steps};
            next.steps.push_back(step);
            std::string key = rule_schema_key(next.rule);
            if (key == want) return finish(std::move(next));
            if (seen.insert(key).second) queue.push_back(std::move(next));
        }
    }
    return std::nullopt;
}

std::string hexagon_alias(const std::string& rule_name) {
    static const std::map<std::string, std::string> aliases = {
        {"hexagon-3-3b", "H0"}, {"hexagon-3-3a", "H1"}, {"hexagon-2-4b", "H2"},
        {"hexagon-1-5a", "H3"}, {"hexagon-2-4a", "H4"}, {"hexagon-2-4c", "H5"},
        {"hexagon-1-5b", "H6"}, {"hexagon-1-5c", "H7"},
    };
    auto it = aliases.find(rule_name);
    return it == aliases.end() ? "" : it->second;
}

HexagonConjugacyReport verify_hexagon_conjugacy() {
    // bounds in total inserted pairs, following the chain constructions:
    // H1 direct (2 pairs), H2 (1), H3 via H2 (2), H4 via H1 (3), H5 (1),
    // H6 via H4 (4), H7 via H5 (2)
    struct Entry {
        const char* name;
        int bound;
    };
    static const Entry entries[] = {
        {"hexagon-3-3a", 2}, {"hexagon-2-4b", 1}, {"hexagon-1-5a", 2}, {"hexagon-2-4a", 3},
        {"hexagon-2-4c", 1}, {"hexagon-1-5b", 4}, {"hexagon-1-5c", 2},
    };

    const RewriteRule& h0 = find_rule("hexagon-3-3b");
    std::vector<const RewriteRule*> hexagons;
    for (const auto& r : path_move_rules())
        if (r.family == RuleFamily::Hexagon) hexagons.push_back(&r);

    HexagonConjugacyReport report;
    report.all_within_bounds = true;
    for (const auto& e : entries) {
        const RewriteRule& target = find_rule(e.name);
        ConjugacyChain chain;
        chain.target = e.name;
        chain.alias = hexagon_alias(e.name);
        chain.bound = e.bound;

        std::optional<ConjugacyDerivation> best;
        for (int budget = 1; budget <= 6 && !best; ++budget)
            best = derive_conjugacy(h0, target, budget);
        if (!best) fail(Err::VerificationFailed, std::string("no derivation reaches ") + e.name);
        replay(*best); // double-check

        chain.total_pairs = best->pairs_inserted();
        chain.within_bound = chain.total_pairs <= chain.bound;
        report.all_within_bounds = report.all_within_bounds && chain.within_bound;

        // name the intermediate rules along the route when they are known
        chain.route.push_back("H0");
        RewriteRule cur = h0;
        ConjugacyDerivation link;
        link.source = cur;
        for (const auto& step : best->steps) {
            cur = apply_conjugacy_step(cur, step);
            link.steps.push_back(step);
            std::string label = "(intermediate)";
            for (const RewriteRule* hx : hexagons)
                if (rules_equivalent(*hx, cur)) {
                    label = hexagon_alias(hx->name);
                    break;
                }
            if (label != "(intermediate)") {
                link.target = cur;
                chain.links.push_back(link);
                link = ConjugacyDerivation{};
                link.source = cur;
            }
            chain.route.push_back(label);
        }
        report.chains.push_back(std::move(chain));
    }

    // alternate reading: each hexagon rule within two pairs of another one
    report.pairwise_two_ok = true;
    for (const RewriteRule* a : hexagons) {
        bool found = false;
        for (const RewriteRule* b : hexagons) {
            if (a == b) continue;
            if (derive_conjugacy(*b, *a, 2)) {
                found = true;
                break;
            }
        }
        report.pairwise_two_ok = report.pairwise_two_ok && found;
    }
    return report;
}

std::string format(const HexagonConjugacyReport& r) {
    std::ostringstream os;
    for (const auto& c : r.chains) {
        os << c.alias << " (" << c.target << "): pairs=" << c.total_pairs << " bound<=" << c.bound
           << (c.within_bound ? " ok" : " VIOLATED") << "  route:";
        for (const auto& hop : c.route) os << ' ' << hop;
        os << '\n';
    }
    os << "every hexagon move within two pairs of another: " << (r.pairwise_two_ok ? "yes" : "NO")
       << '\n';
    os << "all chain bounds hold: " << (r.all_within_bounds ? "yes" : "NO") << '\n';
    return os.str();
}

} // namespace pants
