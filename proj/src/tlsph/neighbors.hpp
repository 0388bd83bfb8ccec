#ifndef TLSPH_NEIGHBORS_HPP
#define TLSPH_NEIGHBORS_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "tlsph/kernel.hpp"
#include "tlsph/math_types.hpp"

namespace tlsph {

/// Uniform cell grid over the reference configuration. Cell size equals the
/// kernel cut-off radius so every neighbor of a particle lies in the 3^D cell
/// stencil around its own cell. Linear cell index runs x-fastest.
template <int D>
struct CellGrid {
  Vec<D> origin = Vec<D>::Zero();
  double cell_size = 0.0;
  std::array<int, D> dims{};
  std::vector<int> cell_of;                // particle -> linear cell index
  std::vector<std::vector<int>> cells;     // cell -> ascending particle ids

  int cell_count() const {
    int n = 1;
    for (int d = 0; d < D; ++d) n *= dims[d];
    return n;
  }

  int linear_index(const std::array<int, D>& c) const {
    int idx = c[D - 1];
    for (int d = D - 2; d >= 0; --d) idx = idx * dims[d] + c[d];
    return idx;
  }

  std::array<int, D> coords_of(int linear) const {
    std::array<int, D> c{};
    for (int d = 0; d < D; ++d) {
      c[d] = linear % dims[d];
      linear /= dims[d];
    }
    return c;
  }

  std::array<int, D> coords_of_position(const Vec<D>& p) const;
};

/// 3-per-axis residue coloring of the cell grid: 9 blocks in 2D, 27 in 3D.
/// Cells sharing a block differ by a multiple of 3 in every axis index, so
/// no two of them are stencil-adjacent and their 3^D stencils are disjoint.
template <int D>
struct BlockDecomposition {
  std::vector<std::vector<int>> blocks;  // block -> ascending linear cell ids
};

template <int D>
CellGrid<D> build_cell_grid(std::span<const Vec<D>> positions, double cutoff);

template <int D>
BlockDecomposition<D> block_decompose(const CellGrid<D>& grid);

/// Fixed neighbor lists over the reference configuration with cached pair
/// quantities. pair_factor holds G_ij = 2 V0_i V0_j (dW/dr)0_ij / |r0_ij|,
/// which is non-positive and symmetric in (i, j).
template <int D>
struct ReferenceNeighborhood {
  std::vector<std::int64_t> offsets;  // size N+1, CSR layout
  std::vector<int> neighbor;          // ascending j within each row
  std::vector<double> r0_len;         // |r0_ij|
  std::vector<Vec<D>> e0;             // (r0_i - r0_j) / |r0_ij|
  std::vector<double> dwdr0;          // (dW/dr) at |r0_ij|
  std::vector<double> pair_factor;    // G_ij

  std::size_t particle_count() const { return offsets.empty() ? 0 : offsets.size() - 1; }
  std::int64_t begin(std::size_t i) const { return offsets[i]; }
  std::int64_t end(std::size_t i) const { return offsets[i + 1]; }
  std::size_t count(std::size_t i) const {
    return static_cast<std::size_t>(end(i) - begin(i));
  }
};

template <int D>
ReferenceNeighborhood<D> build_reference_neighborhoods(
    std::span<const Vec<D>> r0, std::span<const double> V0,
    const SmoothingKernel& kernel, const CellGrid<D>& grid);

/// True when the two cells are within one cell of each other on every axis,
/// i.e. cell_b lies in cell_a's 3^D stencil. Debug builds use this to check
/// that sweep tasks stay inside their stencil.
template <int D>
bool stencil_adjacent(const CellGrid<D>& grid, int cell_a, int cell_b) {
  const auto a = grid.coords_of(cell_a);
  const auto b = grid.coords_of(cell_b);
  for (int d = 0; d < D; ++d) {
    if (a[d] - b[d] > 1 || b[d] - a[d] > 1) return false;
  }
  return true;
}

enum class SweepSchedule { Forward, ForwardThenReverse };
enum class SweepDirection { Forward, Reverse };

/// Runs cell_task over every cell, block by block. Blocks execute strictly in
/// order (reversed blocks and reversed intra-block cell order on the reverse
/// leg); cells inside one block may run concurrently because their stencils
/// are disjoint. Tasks must only touch particles in their cell's 3^D stencil,
/// which makes parallel execution bit-identical to the serial order.
template <int D>
void block_sweep(const BlockDecomposition<D>& blocks,
                 const std::function<void(int, SweepDirection)>& cell_task,
                 SweepSchedule schedule, int threads);

} // namespace tlsph

#endif // TLSPH_NEIGHBORS_HPP
