#pragma once

#include <utility>
#include <vector>

namespace h22 {

enum class Bc { Periodic, Neumann };

// Finite hypercubic lattice. Sites are indexed row-major over coordinates
// (last axis fastest) so that tabulated output is reproducible.
// Immutable after construction; safe to share across threads.
class Lattice {
 public:
  Lattice(std::vector<int> extents, Bc bc);

  int dim() const { return static_cast<int>(extents_.size()); }
  int n_sites() const { return n_sites_; }
  Bc bc() const { return bc_; }
  const std::vector<int>& extents() const { return extents_; }

  std::vector<int> site_coords(int site) const;
  int site_index(const std::vector<int>& coords) const;

  // Nearest neighbors in axis order, minus direction before plus direction.
  // Under periodic bc every site has exactly 2d entries; an extent of 2
  // lists the same partner twice, once per parallel bond.
  const std::vector<int>& neighbors(int site) const;

  // Every nearest-neighbor bond exactly once; parallel bonds kept separate.
  const std::vector<std::pair<int, int>>& bonds() const { return bonds_; }

  // Euclidean distance; each coordinate difference is reduced to its minimal
  // representative under periodic bc.
  double distance(int x, int y) const;

  // L1 distance with the same periodization; equals the minimal length of a
  // nearest-neighbor path.
  int graph_distance(int x, int y) const;

 private:
  void check_site(int site) const;

  std::vector<int> extents_;
  Bc bc_;
  int n_sites_ = 0;
  std::vector<std::vector<int>> neighbors_;
  std::vector<std::pair<int, int>> bonds_;
};

}  // namespace h22
