#pragma once

#include <Eigen/Core>
#include <array>
#include <vector>

namespace mit {

// Rectangular conducting plate, nx*ny square cells of edge `cell_size`,
// thickness `thickness`, lying in the z = 0 mid-plane. Cell (a, b) has index
// b*nx + a; the plate occupies [origin, origin + (nx, ny)*cell_size] in x/y
// and [-thickness/2, +thickness/2] in z.
struct GridSpec {
    int nx = 0;
    int ny = 0;
    double cell_size = 0.0;  // m
    double thickness = 0.0;  // m
    std::array<double, 2> origin{0.0, 0.0};

    int cell_count() const { return nx * ny; }
    // One loop degree of freedom per interior mesh node.
    int loop_count() const { return (nx - 1) * (ny - 1); }
    int cell_index(int a, int b) const { return b * nx + a; }
    Eigen::Vector3d cell_center(int cell) const;
    // Strict interior of the plate volume.
    bool contains(const Eigen::Vector3d& p) const;

    bool operator==(const GridSpec&) const = default;
};

// Per-cell resistivity (Ohm*m), length nx*ny, strictly positive and finite.
struct ResistivityMap {
    std::vector<double> values;
};

// Closed filament polyline carrying unit current in vertex order.
struct Coil {
    std::vector<Eigen::Vector3d> vertices;  // first == last
};

struct CoilSet {
    std::vector<Coil> coils;
    int count() const { return static_cast<int>(coils.size()); }
};

// Sorted duplicate-free set of cell indices.
struct CellSet {
    std::vector<int> cells;

    bool contains(int cell) const;
    bool subset_of(const CellSet& other) const;
    bool operator==(const CellSet&) const = default;
};

struct Scenario {
    GridSpec grid;
    ResistivityMap eta;
    CoilSet coils;
};

GridSpec build_grid(int nx, int ny, double cell_size, double thickness,
                    std::array<double, 2> origin = {0.0, 0.0});

// Validating constructor for CellSet: sorts, checks range and duplicates.
CellSet make_cell_set(std::vector<int> cells, const GridSpec& grid);

// Piecewise map: eta_i on the inclusion cells, eta_bg elsewhere.
ResistivityMap make_inclusion_map(const GridSpec& grid, double eta_bg,
                                  const CellSet& inclusion, double eta_i);

// Rectangular block cover of the cell grid. Block origins step by `stride`
// per axis over [0, n - block] with the tail origin appended when missed, so
// the union of the returned sets is always the full cell set. Requires
// stride <= min(block_w, block_h).
std::vector<CellSet> cover_with_test_elements(const GridSpec& grid, int block_w,
                                              int block_h, int stride);

CellSet cells_union(const std::vector<CellSet>& sets);
CellSet cells_intersection(const std::vector<CellSet>& sets, const GridSpec& grid);

void validate_resistivity(const ResistivityMap& eta, const GridSpec& grid);
void validate_coils(const CoilSet& coils, const GridSpec& grid);
void validate_scenario(const Scenario& s);

}  // namespace mit
