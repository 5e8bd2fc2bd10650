#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pathlab/grid.hpp"

namespace pathlab {

/// One virtual path: a position per time node, endpoints fixed.
struct LatticePath {
    std::vector<double> positions;  // length n_slices + 1

    std::size_t n_slices() const { return positions.empty() ? 0 : positions.size() - 1; }
    double x_initial() const { return positions.front(); }
    double x_final() const { return positions.back(); }
};

LatticePath make_straight_line_path(double x_initial, double x_final, std::size_t n_slices);

/// Lattice identity indicator: 1 iff the two paths coincide node by node
/// (exact equality of lattice coordinates), else 0.
int path_delta(const LatticePath& a, const LatticePath& b);

/// Number of lattice paths with fixed endpoints: n_points^(n_slices-1).
/// Throws NumericalError if the count exceeds cap.
std::uint64_t lattice_path_count(const SpaceGrid& sg, const TimeGrid& tg, std::uint64_t cap);

constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// Visits every lattice path from x_initial to x_final: each interior time
/// node independently ranges over all grid points. Endpoints must be grid
/// points. The visitor receives each path once; paths are distinct.
void for_each_lattice_path(const SpaceGrid& sg, const TimeGrid& tg,
                           double x_initial, double x_final,
                           const std::function<void(const LatticePath&)>& visit,
                           std::uint64_t cap = kDefaultEnumerationCap);

/// Convenience wrapper collecting all paths into a vector.
std::vector<LatticePath> enumerate_lattice_paths(const SpaceGrid& sg, const TimeGrid& tg,
                                                 double x_initial, double x_final,
                                                 std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace pathlab
