#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "arw/lattice.hpp"

namespace arw {

class size_cap_too_large : public std::invalid_argument {
  public:
    explicit size_cap_too_large(const std::string& what) : std::invalid_argument(what) {}
};

struct AnimalReport {
    int size_cap = 0;
    std::vector<std::int64_t> max_weight;  // entry s-1: max w(V) over |V| = s
    std::vector<double> max_ratio;         // entry s-1: max w(V)/|V|
    std::vector<std::uint8_t> fillable;    // entry s-1: exists |V| = s with w(V) >= |V|
    std::uint64_t sets_enumerated = 0;
};

// Exhaustively enumerates the connected subsets of the window that contain
// the origin, up to size_cap cells (cap 12: the counts grow exponentially),
// and maximizes total weight w(V) = sum of particle counts per size.
AnimalReport greedy_animal_max(const Configuration& config, int size_cap);

}  // namespace arw
