// Runs one edge process and prints the stopping times next to the threshold formula.
#include <cstdlib>
#include <iostream>

#include "hyperconn/hyperconn.hpp"

int main(int argc, char** argv) {
    using namespace hyperconn;
    const std::uint32_t n = argc > 1 ? std::atoi(argv[1]) : 500;
    const std::uint32_t d = argc > 2 ? std::atoi(argv[2]) : 3;
    const std::uint32_t k = argc > 3 ? std::atoi(argv[3]) : 2;
    const std::uint64_t seed = argc > 4 ? std::strtoull(argv[4], nullptr, 10) : 7;

    const auto trace = stopping_times(n, d, k, {seed, 0});
    for (const auto& [event, step] : trace.events()) std::cout << event << '\t' << step << '\n';

    const auto params = thresholds(n, d, k, 0.0, 1.0);
    std::cout << "m at c=0\t" << params.m_at_c << '\n';
    std::cout << "full connectivity tests\t" << trace.connectivity_tests << '\n';
}
