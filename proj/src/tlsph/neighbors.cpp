#include "tlsph/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

#include "tlsph/errors.hpp"

namespace tlsph {

template <int D>
std::array<int, D> CellGrid<D>::coords_of_position(const Vec<D>& p) const {
  std::array<int, D> c{};
  for (int d = 0; d < D; ++d) {
    int idx = static_cast<int>(std::floor((p[d] - origin[d]) / cell_size));
    c[d] = std::clamp(idx, 0, dims[d] - 1);
  }
  return c;
}

template <int D>
CellGrid<D> build_cell_grid(std::span<const Vec<D>> positions, double cutoff) {
  require(!positions.empty(), ErrorKind::InvalidArgument,
          "cell grid needs at least one particle");
  require(cutoff > 0.0, ErrorKind::InvalidArgument,
          "cell grid cutoff must be positive");

  Vec<D> lo = positions[0];
  Vec<D> hi = positions[0];
  for (const auto& p : positions) {
    for (int d = 0; d < D; ++d) {
      require(std::isfinite(p[d]), ErrorKind::InvalidArgument,
              "non-finite particle position");
      lo[d] = std::min(lo[d], p[d]);
      hi[d] = std::max(hi[d], p[d]);
    }
  }

  CellGrid<D> grid;
  grid.cell_size = cutoff;
  grid.origin = lo;
  for (int d = 0; d < D; ++d) {
    const double extent = hi[d] - lo[d];
    grid.dims[d] = std::max(1, static_cast<int>(std::floor(extent / cutoff)) + 1);
  }

  grid.cells.assign(grid.cell_count(), {});
  grid.cell_of.resize(positions.size());
  // Ascending particle index per cell comes from the scan order.
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const int cell = grid.linear_index(grid.coords_of_position(positions[i]));
    grid.cell_of[i] = cell;
    grid.cells[cell].push_back(static_cast<int>(i));
  }
  return grid;
}

template <int D>
BlockDecomposition<D> block_decompose(const CellGrid<D>& grid) {
  BlockDecomposition<D> decomposition;
  decomposition.blocks.assign(ipow3(D), {});
  const int n_cells = grid.cell_count();
  for (int cell = 0; cell < n_cells; ++cell) {
    const auto c = grid.coords_of(cell);
    int block = 0;
    int stride = 1;
    for (int d = 0; d < D; ++d) {
      block += (c[d] % 3) * stride;
      stride *= 3;
    }
    decomposition.blocks[block].push_back(cell);
  }
  return decomposition;
}

template <int D>
ReferenceNeighborhood<D> build_reference_neighborhoods(
    std::span<const Vec<D>> r0, std::span<const double> V0,
    const SmoothingKernel& kernel, const CellGrid<D>& grid) {
  const std::size_t n = r0.size();
  require(V0.size() == n, ErrorKind::InvalidArgument,
          "volume array size does not match particle count");
  const double cutoff = kernel.support_radius();

  ReferenceNeighborhood<D> nbh;
  nbh.offsets.assign(n + 1, 0);

  std::vector<std::vector<int>> lists(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto base = grid.coords_of_position(r0[i]);
    std::array<int, D> c{};
    // 3^D stencil around the particle's cell.
    const int stencil = (D == 2) ? 9 : 27;
    for (int s = 0; s < stencil; ++s) {
      int rem = s;
      bool in_range = true;
      for (int d = 0; d < D; ++d) {
        c[d] = base[d] + (rem % 3) - 1;
        rem /= 3;
        if (c[d] < 0 || c[d] >= grid.dims[d]) in_range = false;
      }
      if (!in_range) continue;
      for (int j : grid.cells[grid.linear_index(c)]) {
        if (static_cast<std::size_t>(j) == i) continue;
        const double dist = (r0[i] - r0[static_cast<std::size_t>(j)]).norm();
        if (dist >= cutoff) continue;
        require(dist > 0.0, ErrorKind::DegenerateGeometry,
                "coincident particles " + std::to_string(i) + " and " +
                    std::to_string(j) + " in reference configuration");
        lists[i].push_back(j);
      }
    }
    std::sort(lists[i].begin(), lists[i].end());
    nbh.offsets[i + 1] = nbh.offsets[i] + static_cast<std::int64_t>(lists[i].size());
  }

  const std::size_t total = static_cast<std::size_t>(nbh.offsets[n]);
  nbh.neighbor.resize(total);
  nbh.r0_len.resize(total);
  nbh.e0.resize(total);
  nbh.dwdr0.resize(total);
  nbh.pair_factor.resize(total);
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t slot = nbh.offsets[i];
    for (int j : lists[i]) {
      const Vec<D> diff = r0[i] - r0[static_cast<std::size_t>(j)];
      const double dist = diff.norm();
      const double dw = kernel.grad_mag(dist);
      nbh.neighbor[slot] = j;
      nbh.r0_len[slot] = dist;
      nbh.e0[slot] = diff / dist;
      nbh.dwdr0[slot] = dw;
      nbh.pair_factor[slot] = 2.0 * V0[i] * V0[static_cast<std::size_t>(j)] * dw / dist;
      ++slot;
    }
  }
  return nbh;
}

template <int D>
void block_sweep(const BlockDecomposition<D>& blocks,
                 const std::function<void(int, SweepDirection)>& cell_task,
                 SweepSchedule schedule, int threads) {
  auto run_pass = [&](SweepDirection direction) {
    const int n_blocks = static_cast<int>(blocks.blocks.size());
    for (int b = 0; b < n_blocks; ++b) {
      const auto& cells =
          blocks.blocks[direction == SweepDirection::Forward ? b : n_blocks - 1 - b];
      if (cells.empty()) continue;
      auto run_cell = [&](std::size_t k) {
        const std::size_t idx =
            direction == SweepDirection::Forward ? k : cells.size() - 1 - k;
        cell_task(cells[idx], direction);
      };
      if (threads <= 1 || cells.size() < 2) {
        for (std::size_t k = 0; k < cells.size(); ++k) run_cell(k);
      } else {
        tbb::task_arena arena(threads);
        arena.execute([&] {
          tbb::parallel_for(std::size_t{0}, cells.size(),
                            [&](std::size_t k) { run_cell(k); });
        });
      }
    }
  };

  run_pass(SweepDirection::Forward);
  if (schedule == SweepSchedule::ForwardThenReverse) {
    run_pass(SweepDirection::Reverse);
  }
}

template struct CellGrid<2>;
template struct CellGrid<3>;
template CellGrid<2> build_cell_grid<2>(std::span<const Vec<2>>, double);
template CellGrid<3> build_cell_grid<3>(std::span<const Vec<3>>, double);
template BlockDecomposition<2> block_decompose<2>(const CellGrid<2>&);
template BlockDecomposition<3> block_decompose<3>(const CellGrid<3>&);
template ReferenceNeighborhood<2> build_reference_neighborhoods<2>(
    std::span<const Vec<2>>, std::span<const double>, const SmoothingKernel&,
    const CellGrid<2>&);
template ReferenceNeighborhood<3> build_reference_neighborhoods<3>(
    std::span<const Vec<3>>, std::span<const double>, const SmoothingKernel&,
    const CellGrid<3>&);
template void block_sweep<2>(const BlockDecomposition<2>&,
                             const std::function<void(int, SweepDirection)>&,
                             SweepSchedule, int);
template void block_sweep<3>(const BlockDecomposition<3>&,
                             const std::function<void(int, SweepDirection)>&,
                             SweepSchedule, int);

} // namespace tlsph
