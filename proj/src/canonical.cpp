#include "pants/canonical.hpp"

#include <algorithm>
#include <sstream>

namespace pants {

int ColoredGraph::add_node(std::string color) {
    colors_.push_back(std::move(color));
    return static_cast<int>(colors_.size()) - 1;
}

void ColoredGraph::add_edge(int a, int b, int multiplicity) {
    if (a > b) std::swap(a, b);
    edges_[{a, b}] += multiplicity;
}

namespace {

// refine node classes until stable; classes are encoded as integers with the
// invariant that equal class means indistinguishable so far
std::vector<long long> refine(const std::vector<long long>& start,
                              const std::vector<std::vector<std::pair<int, int>>>& adj) {
    std::vector<long long> cls = start;
    const int n = static_cast<int>(cls.size());
    for (int round = 0; round < n + 1; ++round) {
        std::vector<std::pair<std::string, int>> sig(n);
        for (int v = 0; v < n; ++v) {
            std::vector<std::pair<long long, int>> nb;
            nb.reserve(adj[v].size());
            for (auto [w, mult] : adj[v]) nb.push_back({cls[w], mult});
            std::sort(nb.begin(), nb.end());
            std::ostringstream os;
            os << cls[v] << ':';
            for (auto [c, m] : nb) os << c << 'x' << m << ',';
            sig[v] = {os.str(), v};
        }
        std::vector<std::pair<std::string, int>> order = sig;
        std::sort(order.begin(), order.end());
        std::vector<long long> next(n);
        long long id = 0;
        for (int i = 0; i < n; ++i) {
            if (i > 0 && order[i].first != order[i - 1].first) ++id;
            next[order[i].second] = id;
        }
        if (next == cls) break;
        cls = std::move(next);
    }
    return cls;
}

} // namespace

std::string ColoredGraph::certificate_for(const std::vector<int>& relabel) const {
    const int n = size();
    std::vector<int> pos(n);
    for (int v = 0; v < n; ++v) pos[relabel[v]] = v; // pos[new] = old
    std::ostringstream os;
    for (int i = 0; i < n; ++i) os << colors_[pos[i]] << ';';
    std::vector<std::tuple<int, int, int>> es;
    for (const auto& [e, mult] : edges_) {
        int a = relabel[e.first], b = relabel[e.second];
        if (a > b) std::swap(a, b);
        es.push_back({a, b, mult});
    }
    std::sort(es.begin(), es.end());
    for (auto [a, b, m] : es) os << a << '-' << b << 'x' << m << ';';
    return os.str();
}

std::vector<int> ColoredGraph::canonical_labeling() const {
    const int n = size();
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    for (const auto& [e, mult] : edges_) {
        adj[e.first].push_back({e.second, mult});
        if (e.first != e.second) adj[e.second].push_back({e.first, mult});
    }
    std::vector<long long> base(n);
    {
        std::vector<std::pair<std::string, int>> order;
        for (int v = 0; v < n; ++v) order.push_back({colors_[v], v});
        std::sort(order.begin(), order.end());
        long long id = 0;
        for (int i = 0; i < n; ++i) {
            if (i > 0 && order[i].first != order[i - 1].first) ++id;
            base[order[i].second] = id;
        }
    }

    std::string best_cert;
    std::vector<int> best_label;

    // depth-first individualization over the first ambiguous class
    struct Frame {
        std::vector<long long> cls;
    };
    std::vector<Frame> stack{{refine(base, adj)}};
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        // find the smallest ambiguous class
        std::map<long long, std::vector<int>> groups;
        for (int v = 0; v < n; ++v) groups[f.cls[v]].push_back(v);
        long long ambiguous = -1;
        for (const auto& [c, vs] : groups)
            if (vs.size() > 1) {
                ambiguous = c;
                break;
            }
        if (ambiguous < 0) {
            std::vector<int> relabel(n);
            for (int v = 0; v < n; ++v) relabel[v] = static_cast<int>(f.cls[v]);
            std::string cert = certificate_for(relabel);
            if (best_cert.empty() || cert < best_cert) {
                best_cert = cert;
                best_label = relabel;
            }
            continue;
        }
        for (int v : groups[ambiguous]) {
            std::vector<long long> next = f.cls;
            // split v off its class
            for (int w = 0; w < n; ++w) next[w] *= 2;
            next[v] -= 1;
            stack.push_back({refine(next, adj)});
        }
    }
    return best_label;
}

std::string ColoredGraph::certificate() const {
    if (size() == 0) return "";
    return certificate_for(canonical_labeling());
}

} // namespace pants
