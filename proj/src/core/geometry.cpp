#include "core/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "core/errors.hpp"

namespace mit {

Eigen::Vector3d GridSpec::cell_center(int cell) const {
    const int a = cell % nx;
    const int b = cell / nx;
    return {origin[0] + (a + 0.5) * cell_size, origin[1] + (b + 0.5) * cell_size, 0.0};
}

bool GridSpec::contains(const Eigen::Vector3d& p) const {
    const double x0 = origin[0];
    const double y0 = origin[1];
    return p.x() > x0 && p.x() < x0 + nx * cell_size &&
           p.y() > y0 && p.y() < y0 + ny * cell_size &&
           std::abs(p.z()) < 0.5 * thickness;
}

bool CellSet::contains(int cell) const {
    return std::binary_search(cells.begin(), cells.end(), cell);
}

bool CellSet::subset_of(const CellSet& other) const {
    return std::includes(other.cells.begin(), other.cells.end(),
                         cells.begin(), cells.end());
}

GridSpec build_grid(int nx, int ny, double cell_size, double thickness,
                    std::array<double, 2> origin) {
    if (nx < 2 || ny < 2)
        throw ArgumentError("grid dimensions too small: need nx >= 2 and ny >= 2, got " +
                            std::to_string(nx) + "x" + std::to_string(ny));
    if (!(cell_size > 0.0) || !std::isfinite(cell_size))
        throw ArgumentError("cell size must be positive and finite");
    if (!(thickness > 0.0) || !std::isfinite(thickness))
        throw ArgumentError("plate thickness must be positive and finite");
    return GridSpec{nx, ny, cell_size, thickness, origin};
}

CellSet make_cell_set(std::vector<int> cells, const GridSpec& grid) {
    std::sort(cells.begin(), cells.end());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i] < 0 || cells[i] >= grid.cell_count())
            throw ArgumentError("cell index " + std::to_string(cells[i]) +
                                " out of range [0, " + std::to_string(grid.cell_count()) + ")");
        if (i > 0 && cells[i] == cells[i - 1])
            throw ArgumentError("duplicate cell index " + std::to_string(cells[i]));
    }
    return CellSet{std::move(cells)};
}

ResistivityMap make_inclusion_map(const GridSpec& grid, double eta_bg,
                                  const CellSet& inclusion, double eta_i) {
    if (!(eta_bg > 0.0) || !std::isfinite(eta_bg))
        throw ArgumentError("background resistivity must be positive and finite");
    if (!(eta_i > 0.0) || !std::isfinite(eta_i))
        throw ArgumentError("inclusion resistivity must be positive and finite");
    for (int cell : inclusion.cells)
        if (cell < 0 || cell >= grid.cell_count())
            throw ArgumentError("inclusion cell index " + std::to_string(cell) +
                                " out of range [0, " + std::to_string(grid.cell_count()) + ")");

    ResistivityMap map;
    map.values.assign(static_cast<std::size_t>(grid.cell_count()), eta_bg);
    for (int cell : inclusion.cells) map.values[static_cast<std::size_t>(cell)] = eta_i;
    return map;
}

namespace {

// Origins 0, s, 2s, ... capped at n - block, with the cap appended when the
// stride sequence misses it.
std::vector<int> block_origins(int n, int block, int stride) {
    std::vector<int> origins;
    const int last = std::max(0, n - block);
    for (int a = 0; a <= last; a += stride) origins.push_back(a);
    if (origins.back() != last) origins.push_back(last);
    return origins;
}

}  // namespace

std::vector<CellSet> cover_with_test_elements(const GridSpec& grid, int block_w,
                                              int block_h, int stride) {
    if (block_w < 1 || block_h < 1) throw ArgumentError("block dimensions must be >= 1");
    if (stride < 1) throw ArgumentError("stride must be >= 1");
    if (stride > std::min(block_w, block_h))
        throw ArgumentError("stride must not exceed the block dimensions (cover would have gaps)");

    const int bw = std::min(block_w, grid.nx);
    const int bh = std::min(block_h, grid.ny);
    std::vector<CellSet> cover;
    for (int b0 : block_origins(grid.ny, bh, stride)) {
        for (int a0 : block_origins(grid.nx, bw, stride)) {
            std::vector<int> cells;
            for (int b = b0; b < std::min(b0 + bh, grid.ny); ++b)
                for (int a = a0; a < std::min(a0 + bw, grid.nx); ++a)
                    cells.push_back(grid.cell_index(a, b));
            cover.push_back(make_cell_set(std::move(cells), grid));
        }
    }
    return cover;
}

CellSet cells_union(const std::vector<CellSet>& sets) {
    std::set<int> acc;
    for (const auto& s : sets) acc.insert(s.cells.begin(), s.cells.end());
    return CellSet{std::vector<int>(acc.begin(), acc.end())};
}

CellSet cells_intersection(const std::vector<CellSet>& sets, const GridSpec& grid) {
    // Intersection over an empty family is the whole domain.
    if (sets.empty()) {
        std::vector<int> all(static_cast<std::size_t>(grid.cell_count()));
        for (int i = 0; i < grid.cell_count(); ++i) all[static_cast<std::size_t>(i)] = i;
        return CellSet{std::move(all)};
    }
    std::vector<int> acc = sets.front().cells;
    for (std::size_t i = 1; i < sets.size(); ++i) {
        std::vector<int> next;
        std::set_intersection(acc.begin(), acc.end(), sets[i].cells.begin(),
                              sets[i].cells.end(), std::back_inserter(next));
        acc = std::move(next);
    }
    return CellSet{std::move(acc)};
}

void validate_resistivity(const ResistivityMap& eta, const GridSpec& grid) {
    if (static_cast<int>(eta.values.size()) != grid.cell_count())
        throw ArgumentError("resistivity map length " + std::to_string(eta.values.size()) +
                            " does not match cell count " + std::to_string(grid.cell_count()));
    for (std::size_t i = 0; i < eta.values.size(); ++i)
        if (!(eta.values[i] > 0.0) || !std::isfinite(eta.values[i]))
            throw ArgumentError("resistivity at cell " + std::to_string(i) +
                                " must be positive and finite");
}

void validate_coils(const CoilSet& coils, const GridSpec& grid) {
    for (std::size_t c = 0; c < coils.coils.size(); ++c) {
        const auto& v = coils.coils[c].vertices;
        const std::string tag = "coil " + std::to_string(c);
        if (v.size() < 4 || v.front() != v.back())
            throw ArgumentError(tag + ": polyline must be closed (first vertex == last)");
        std::vector<std::array<double, 3>> distinct;
        for (std::size_t i = 0; i + 1 < v.size(); ++i) {
            std::array<double, 3> p{v[i].x(), v[i].y(), v[i].z()};
            if (std::find(distinct.begin(), distinct.end(), p) == distinct.end())
                distinct.push_back(p);
        }
        if (distinct.size() < 3)
            throw ArgumentError(tag + ": needs at least 3 distinct vertices");
        for (const auto& p : v)
            if (grid.contains(p))
                throw ArgumentError(tag + ": vertex lies inside the conductor plate volume");
    }
}

void validate_scenario(const Scenario& s) {
    if (s.grid.nx < 2 || s.grid.ny < 2) throw ArgumentError("grid dimensions too small");
    validate_resistivity(s.eta, s.grid);
    validate_coils(s.coils, s.grid);
}

}  // namespace mit
