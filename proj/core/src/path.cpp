#include "pathlab/path.hpp"

#include <string>

namespace pathlab {

LatticePath make_straight_line_path(double x_initial, double x_final, std::size_t n_slices) {
    LatticePath path;
    path.positions.resize(n_slices + 1);
    for (std::size_t k = 0; k <= n_slices; ++k) {
        const double s = static_cast<double>(k) / static_cast<double>(n_slices);
        path.positions[k] = (1.0 - s) * x_initial + s * x_final;
    }
    path.positions.front() = x_initial;
    path.positions.back() = x_final;
    return path;
}

int path_delta(const LatticePath& a, const LatticePath& b) {
    if (a.positions.size() != b.positions.size()) {
        throw ValidationError("path_delta: paths live on different time grids");
    }
    return a.positions == b.positions ? 1 : 0;
}

std::uint64_t lattice_path_count(const SpaceGrid& sg, const TimeGrid& tg, std::uint64_t cap) {
    std::uint64_t count = 1;
    for (std::size_t k = 1; k < tg.n_slices; ++k) {
        if (count > cap / sg.n_points) {
            throw NumericalError("path enumeration would exceed cap of " + std::to_string(cap) +
                                 " paths (" + std::to_string(sg.n_points) + "^" +
                                 std::to_string(tg.n_slices - 1) + " required)");
        }
        count *= sg.n_points;
    }
    return count;
}

void for_each_lattice_path(const SpaceGrid& sg, const TimeGrid& tg,
                           double x_initial, double x_final,
                           const std::function<void(const LatticePath&)>& visit,
                           std::uint64_t cap) {
    sg.index_of(x_initial);  // endpoints must be grid points
    sg.index_of(x_final);
    lattice_path_count(sg, tg, cap);

    const std::size_t n = tg.n_slices;
    LatticePath path;
    path.positions.assign(n + 1, 0.0);
    path.positions.front() = x_initial;
    path.positions.back() = x_final;

    if (n < 2) {
        visit(path);
        return;
    }

    // Odometer over the n-1 interior nodes.
    std::vector<std::size_t> idx(n - 1, 0);
    for (std::size_t k = 1; k < n; ++k) path.positions[k] = sg.point(0);
    while (true) {
        visit(path);
        std::size_t k = 0;
        while (k < idx.size()) {
            if (++idx[k] < sg.n_points) {
                path.positions[k + 1] = sg.point(idx[k]);
                break;
            }
            idx[k] = 0;
            path.positions[k + 1] = sg.point(0);
            ++k;
        }
        if (k == idx.size()) break;
    }
}

std::vector<LatticePath> enumerate_lattice_paths(const SpaceGrid& sg, const TimeGrid& tg,
                                                 double x_initial, double x_final,
                                                 std::uint64_t cap) {
    std::vector<LatticePath> out;
    for_each_lattice_path(sg, tg, x_initial, x_final,
                          [&out](const LatticePath& p) { out.push_back(p); }, cap);
    return out;
}

}  // namespace pathlab
