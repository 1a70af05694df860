#pragma once

#include <string>
#include <vector>

namespace kpath {

/// Dense vertex-indexed score vector plus a label naming which index the
/// values are (e.g. "brandes", "ra-kpath"). Scores are non-negative finite.
struct CentralityScores {
    std::string label;
    std::vector<double> values;
};

} // namespace kpath
