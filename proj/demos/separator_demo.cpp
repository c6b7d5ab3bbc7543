// Reads an edge list from stdin and prints a minimum separator for every pair.
#include <iostream>

#include "hyperconn/hyperconn.hpp"

int main() {
    using namespace hyperconn;
    Hypergraph h = Hypergraph::empty(2, 2);
    try {
        h = read_edge_list(std::cin);
    } catch (const BuildError& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
    if (h.n() > 40) {
        std::cerr << "pairwise listing is meant for small inputs\n";
        return 2;
    }
    for (Vertex u : h.vertices()) {
        for (Vertex w : h.vertices()) {
            if (w <= u) continue;
            const auto s = min_separating_cut(h, u, w);
            std::cout << u << ' ' << w << ": ";
            if (s.inseparable) {
                std::cout << "inseparable\n";
                continue;
            }
            std::cout << s.separator.size() << " {";
            for (std::size_t i = 0; i < s.separator.size(); ++i) std::cout << (i ? " " : "") << s.separator[i];
            std::cout << "}\n";
        }
    }
}
