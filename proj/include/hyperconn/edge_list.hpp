#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hyperconn/hypergraph.hpp"

namespace hyperconn {

/**
 * Edge-list text format:
 *
 *     n d m
 *     v1 v2 ... vd      (m lines, ascending vertex ids)
 *
 * Errors are BuildError values whose message is prefixed with "line L: ".
 * Blank lines are not allowed between edges; trailing blank lines are.
 */
inline Hypergraph read_edge_list(std::istream& in) {
    auto fail = [](std::size_t line, BuildError::Reason reason, std::vector<Vertex> tuple, const std::string& what) {
        throw BuildError(reason, std::move(tuple), "line " + std::to_string(line) + ": " + what);
    };

    std::string text;
    std::size_t line_no = 1;
    if (!std::getline(in, text)) fail(line_no, BuildError::Reason::kFormat, {}, "missing header `n d m`");
    long long n = 0, d = 0, m = 0;
    {
        std::istringstream header(text);
        std::string extra;
        if (!(header >> n >> d >> m) || (header >> extra) || n < 0 || d < 0 || m < 0) {
            fail(line_no, BuildError::Reason::kFormat, {}, "malformed header `" + text + "`");
        }
    }
    if (d < 2 || n < d) {
        fail(line_no, BuildError::Reason::kBadParameters, {},
             "invalid parameters: need n >= d >= 2, got n=" + std::to_string(n) + " d=" + std::to_string(d));
    }

    std::vector<std::vector<Vertex>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        ++line_no;
        if (!std::getline(in, text)) {
            fail(line_no, BuildError::Reason::kFormat, {},
                 "expected " + std::to_string(m) + " edges, found " + std::to_string(i));
        }
        std::istringstream row(text);
        std::vector<Vertex> tuple;
        long long v = 0;
        while (row >> v) {
            if (v < 1 || v > n) {
                tuple.push_back(static_cast<Vertex>(std::max<long long>(v, 0)));
                fail(line_no, BuildError::Reason::kOutOfRange, tuple,
                     "vertex out of range [1, " + std::to_string(n) + "]: " + std::to_string(v));
            }
            tuple.push_back(static_cast<Vertex>(v));
        }
        if (!row.eof()) fail(line_no, BuildError::Reason::kFormat, tuple, "non-numeric token in `" + text + "`");
        if (tuple.size() != static_cast<std::size_t>(d)) {
            fail(line_no, BuildError::Reason::kWrongArity, tuple,
                 "wrong arity: expected " + std::to_string(d) + " vertices, got " + std::to_string(tuple.size()) +
                     ": " + format_tuple(tuple));
        }
        for (std::size_t j = 1; j < tuple.size(); ++j) {
            if (tuple[j] == tuple[j - 1]) {
                fail(line_no, BuildError::Reason::kRepeatedVertex, tuple, "repeated vertex: " + format_tuple(tuple));
            }
            if (tuple[j] < tuple[j - 1]) {
                fail(line_no, BuildError::Reason::kNotAscending, tuple, "not ascending: " + format_tuple(tuple));
            }
        }
        edges.push_back(std::move(tuple));
    }
    while (std::getline(in, text)) {
        ++line_no;
        if (text.find_first_not_of(" \t\r") != std::string::npos) {
            fail(line_no, BuildError::Reason::kFormat, {}, "trailing content after " + std::to_string(m) + " edges");
        }
    }

    try {
        return Hypergraph::build(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(d), edges);
    } catch (const BuildError& e) {
        // locate the line of the offending tuple (the later copy for duplicates)
        std::size_t where = 0;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            if (edges[i] == e.tuple()) where = i;
        }
        throw BuildError(e.reason(), e.tuple(), "line " + std::to_string(where + 2) + ": " + e.what());
    }
}

inline Hypergraph read_edge_list(const std::string& text) {
    std::istringstream in(text);
    return read_edge_list(in);
}

/// Writes the edge list in canonical (colex rank) order. The universe must be [1, label_bound].
inline void write_edge_list(std::ostream& out, const Hypergraph& h) {
    if (h.n() != h.label_bound()) {
        throw std::invalid_argument("write_edge_list: vertex universe is not [1, n]");
    }
    out << h.n() << ' ' << h.d() << ' ' << h.edge_count() << '\n';
    for (std::size_t id = 0; id < h.edge_count(); ++id) out << format_tuple(h.edge(id)) << '\n';
}

inline std::string to_edge_list(const Hypergraph& h) {
    std::ostringstream out;
    write_edge_list(out, h);
    return out.str();
}

}  // namespace hyperconn
