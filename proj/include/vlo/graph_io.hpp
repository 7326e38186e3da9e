#pragma once

// Text format:
//   n m l
//   u v w        (m lines, 0-based ids, decimal weight)
//   label        (n lines, label of node i)
// Lines starting with '#' are comments.

#include <iosfwd>
#include <string>

#include "vlo/graph.hpp"

namespace vlo {

struct LabeledGraph {
    Graph graph;
    LabelAssignment labels;
};

LabeledGraph read_labeled_graph(std::istream& in);
LabeledGraph read_labeled_graph_file(const std::string& path);

void write_labeled_graph(std::ostream& out, const Graph& g, const LabelAssignment& labels);
void write_labeled_graph_file(const std::string& path, const Graph& g, const LabelAssignment& labels);

// Shortest decimal form that parses back to the same double; "inf" for +inf.
std::string format_weight(Weight w);
Weight parse_weight(const std::string& token);

}  // namespace vlo
