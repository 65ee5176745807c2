#include "h22/lattice.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace h22 {

Lattice::Lattice(std::vector<int> extents, Bc bc)
    : extents_(std::move(extents)), bc_(bc) {
  if (extents_.empty()) throw std::invalid_argument("lattice needs at least one axis");
  long long n = 1;
  for (int L : extents_) {
    if (L < 1) throw std::invalid_argument("lattice extents must be positive");
    n *= L;
    if (n > 1'000'000) throw std::invalid_argument("lattice too large");
  }
  n_sites_ = static_cast<int>(n);

  const int d = dim();
  neighbors_.resize(n_sites_);
  for (int j = 0; j < n_sites_; ++j) {
    std::vector<int> c = site_coords(j);
    for (int a = 0; a < d; ++a) {
      const int L = extents_[a];
      for (int delta : {-1, +1}) {
        std::vector<int> cc = c;
        cc[a] += delta;
        if (bc_ == Bc::Periodic) {
          cc[a] = (cc[a] % L + L) % L;
        } else if (cc[a] < 0 || cc[a] >= L) {
          continue;
        }
        const int k = site_index(cc);
        if (k == j) continue;  // an extent of 1 contributes no bond
        neighbors_[j].push_back(k);
      }
    }
  }

  // One entry per bond: the plus direction from each site.
  for (int j = 0; j < n_sites_; ++j) {
    std::vector<int> c = site_coords(j);
    for (int a = 0; a < d; ++a) {
      const int L = extents_[a];
      std::vector<int> cc = c;
      cc[a] += 1;
      if (bc_ == Bc::Periodic) {
        cc[a] %= L;
      } else if (cc[a] >= L) {
        continue;
      }
      const int k = site_index(cc);
      if (k == j) continue;
      bonds_.emplace_back(j, k);
    }
  }
}

void Lattice::check_site(int site) const {
  if (site < 0 || site >= n_sites_)
    throw std::domain_error("invalid site index " + std::to_string(site));
}

std::vector<int> Lattice::site_coords(int site) const {
  check_site(site);
  const int d = dim();
  std::vector<int> c(d);
  for (int a = d - 1; a >= 0; --a) {
    c[a] = site % extents_[a];
    site /= extents_[a];
  }
  return c;
}

int Lattice::site_index(const std::vector<int>& coords) const {
  if (static_cast<int>(coords.size()) != dim())
    throw std::invalid_argument("coordinate dimension mismatch");
  int idx = 0;
  for (int a = 0; a < dim(); ++a) {
    if (coords[a] < 0 || coords[a] >= extents_[a])
      throw std::domain_error("coordinate out of range");
    idx = idx * extents_[a] + coords[a];
  }
  return idx;
}

const std::vector<int>& Lattice::neighbors(int site) const {
  check_site(site);
  return neighbors_[site];
}

double Lattice::distance(int x, int y) const {
  std::vector<int> cx = site_coords(x), cy = site_coords(y);
  double s = 0.0;
  for (int a = 0; a < dim(); ++a) {
    int dd = std::abs(cx[a] - cy[a]);
    if (bc_ == Bc::Periodic) dd = std::min(dd, extents_[a] - dd);
    s += static_cast<double>(dd) * dd;
  }
  return std::sqrt(s);
}

int Lattice::graph_distance(int x, int y) const {
  std::vector<int> cx = site_coords(x), cy = site_coords(y);
  int s = 0;
  for (int a = 0; a < dim(); ++a) {
    int dd = std::abs(cx[a] - cy[a]);
    if (bc_ == Bc::Periodic) dd = std::min(dd, extents_[a] - dd);
    s += dd;
  }
  return s;
}

}  // namespace h22
