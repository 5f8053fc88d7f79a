#pragma once

#include <map>
#include <string>
#include <vector>

namespace pants {

// Canonical labeling of small vertex-colored multigraphs by iterated color
// refinement with individualization backtracking. Desk scale only: the
// structures this library canonicalizes stay under ~100 vertices, where
// exhaustive backtracking over refinement ties is cheap.
class ColoredGraph {
public:
    int add_node(std::string color);
    void add_edge(int a, int b, int multiplicity = 1);
    int size() const { return static_cast<int>(colors_.size()); }

    // Permutation new_index[old_index] realizing the canonical order.
    std::vector<int> canonical_labeling() const;

    // String certificate: equal certificates iff the graphs are isomorphic
    // (respecting colors and edge multiplicities).
    std::string certificate() const;

private:
    std::vector<std::string> colors_;
    std::map<std::pair<int, int>, int> edges_; // a <= b

    std::string certificate_for(const std::vector<int>& relabel) const;
};

} // namespace pants
