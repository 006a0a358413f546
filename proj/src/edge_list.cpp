#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include "swsync/error.hpp"
#include "swsync/graph.hpp"

namespace swsync {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Splits on whitespace and parses every token as a non-negative int.
std::vector<long long> parse_integers(std::string_view line, std::size_t line_no) {
    std::vector<long long> values;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) {
            ++pos;
        }
        if (pos >= line.size()) {
            break;
        }
        std::size_t end = pos;
        while (end < line.size() && line[end] != ' ' && line[end] != '\t') {
            ++end;
        }
        long long value = 0;
        const auto token = line.substr(pos, end - pos);
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc() || ptr != token.data() + token.size()) {
            throw ParseError(line_no, "expected an integer, got '" + std::string(token) + "'");
        }
        values.push_back(value);
        pos = end;
    }
    return values;
}

}  // namespace

void write_edge_list(const Graph& g, std::ostream& out) {
    out << g.node_count() << '\n';
    for (auto [i, j] : g.edges()) {
        out << i << ' ' << j << '\n';
    }
}

Graph read_edge_list(std::istream& in) {
    std::string raw;
    std::size_t line_no = 0;
    long long node_count = -1;
    std::vector<Edge> edges;
    std::set<Edge> seen;

    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = trim(raw);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto values = parse_integers(line, line_no);
        if (node_count < 0) {
            if (values.size() != 1 || values[0] < 1) {
                throw ParseError(line_no, "header must be a single positive node count");
            }
            node_count = values[0];
            continue;
        }
        if (values.size() != 2) {
            throw ParseError(line_no, "edge line must hold exactly two node indices");
        }
        const long long i = values[0];
        const long long j = values[1];
        if (i < 0 || j < 0 || i >= node_count || j >= node_count) {
            throw ParseError(line_no, "node index out of range [0, " + std::to_string(node_count) + ")");
        }
        if (i == j) {
            throw ParseError(line_no, "self-loop at node " + std::to_string(i));
        }
        const Edge e{static_cast<int>(std::min(i, j)), static_cast<int>(std::max(i, j))};
        if (!seen.insert(e).second) {
            throw ParseError(line_no, "duplicate edge " + std::to_string(e.first) + " " + std::to_string(e.second));
        }
        edges.push_back(e);
    }
    if (node_count < 0) {
        throw ParseError(line_no + 1, "missing node-count header");
    }
    return Graph(static_cast<int>(node_count), edges);
}

void save_edge_list(const Graph& g, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot open " + path.string() + " for writing");
    }
    write_edge_list(g, out);
}

Graph load_edge_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    return read_edge_list(in);
}

}  // namespace swsync
