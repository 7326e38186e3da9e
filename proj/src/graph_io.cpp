#include "vlo/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace vlo {

std::string format_weight(Weight w) {
    if (w == kInfinity) {
        return "inf";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), w);
    return std::string(buf, res.ptr);
}

Weight parse_weight(const std::string& token) {
    if (token == "inf") {
        return kInfinity;
    }
    Weight w = 0.0;
    auto res = std::from_chars(token.data(), token.data() + token.size(), w);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
        throw Error("bad weight '" + token + "'");
    }
    return w;
}

namespace {

// Yields non-comment, non-blank lines.
class LineReader {
  public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next(std::istringstream& out) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') {
                continue;
            }
            out.clear();
            out.str(line);
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw Error("graph file line " + std::to_string(line_no_) + ": " + what);
    }

  private:
    std::istream& in_;
    std::size_t line_no_ = 0;
};

template <typename T>
T read_field(std::istringstream& ls, const LineReader& r, const char* what) {
    T value{};
    if (!(ls >> value)) {
        r.fail(std::string("expected ") + what);
    }
    return value;
}

}  // namespace

LabeledGraph read_labeled_graph(std::istream& in) {
    LineReader reader(in);
    std::istringstream ls;
    if (!reader.next(ls)) {
        throw Error("graph file: missing header");
    }
    auto n = read_field<std::size_t>(ls, reader, "n");
    auto m = read_field<std::size_t>(ls, reader, "m");
    auto l = read_field<std::size_t>(ls, reader, "l");
    if (l == 0 && n > 0) {
        reader.fail("label count must be positive");
    }

    Graph g(n);
    for (std::size_t i = 0; i < m; ++i) {
        if (!reader.next(ls)) {
            reader.fail("missing edge lines");
        }
        auto u = read_field<std::size_t>(ls, reader, "u");
        auto v = read_field<std::size_t>(ls, reader, "v");
        auto wtok = read_field<std::string>(ls, reader, "w");
        if (u >= n || v >= n) {
            reader.fail("node id out of range");
        }
        try {
            g.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v), parse_weight(wtok));
        } catch (const Error& e) {
            reader.fail(e.what());
        }
    }

    std::vector<LabelId> label_of(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!reader.next(ls)) {
            reader.fail("missing label lines");
        }
        auto lab = read_field<std::size_t>(ls, reader, "label");
        if (lab >= l) {
            reader.fail("label id " + std::to_string(lab) + " >= " + std::to_string(l));
        }
        label_of[i] = static_cast<LabelId>(lab);
    }
    return LabeledGraph{std::move(g), LabelAssignment(std::move(label_of), l)};
}

LabeledGraph read_labeled_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open " + path);
    }
    return read_labeled_graph(in);
}

void write_labeled_graph(std::ostream& out, const Graph& g, const LabelAssignment& labels) {
    out << g.node_count() << ' ' << g.edge_count() << ' ' << labels.label_count() << '\n';
    for (const auto& e : g.edges()) {
        out << e.u << ' ' << e.v << ' ' << format_weight(e.w) << '\n';
    }
    for (NodeId v = 0; v < g.node_count(); ++v) {
        out << labels.label(v) << '\n';
    }
}

void write_labeled_graph_file(const std::string& path, const Graph& g, const LabelAssignment& labels) {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write " + path);
    }
    write_labeled_graph(out, g, labels);
}

}  // namespace vlo
