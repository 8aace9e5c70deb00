#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "adadeband/detect.hpp"

namespace adadeband {

struct BandRegion {
  int id = 0;                      // 1-based
  std::vector<int32_t> pixels;     // raster indices, ascending
  size_t area() const { return pixels.size(); }
};

struct EdgeRegion {
  int id = 0;                      // 1-based
  std::vector<int32_t> pixels;
  size_t length() const { return pixels.size(); }
};

/// Bands (8-connected components of flat+candidate pixels, band edges
/// excluded), band edges (components of edge pixels), and which edges
/// frame which bands. Ids follow raster-scan discovery order.
struct RegionIndex {
  int width = 0;
  int height = 0;
  std::vector<int32_t> band_ids;   // per pixel, 0 = not in a band
  std::vector<int32_t> edge_ids;   // per pixel, 0 = not an edge
  std::vector<BandRegion> bands;
  std::vector<EdgeRegion> edges;
  std::vector<std::vector<int32_t>> band_adjacency;  // band id-1 -> edge ids
  std::vector<std::vector<int32_t>> edge_adjacency;  // edge id-1 -> band ids
};

namespace detail {

class DisjointSet {
 public:
  explicit DisjointSet(size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int32_t find(int32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(int32_t a, int32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int32_t> parent_;
};

// 8-connected component labeling over an arbitrary pixel mask.
// Components are numbered 1..N in raster order of their first pixel.
template <typename MaskFn>
void label_components(int w, int h, MaskFn&& in_mask,
                      std::vector<int32_t>& ids,
                      std::vector<std::vector<int32_t>>& comps) {
  ids.assign(static_cast<size_t>(w) * h, 0);
  DisjointSet dsu(static_cast<size_t>(w) * h);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      int32_t p = i * w + j;
      if (!in_mask(p)) continue;
      // Union with already-visited neighbors: W, NW, N, NE.
      if (j > 0 && in_mask(p - 1)) dsu.unite(p, p - 1);
      if (i > 0) {
        int32_t up = p - w;
        if (j > 0 && in_mask(up - 1)) dsu.unite(p, up - 1);
        if (in_mask(up)) dsu.unite(p, up);
        if (j + 1 < w && in_mask(up + 1)) dsu.unite(p, up + 1);
      }
    }
  }
  comps.clear();
  std::vector<int32_t> root_to_id(static_cast<size_t>(w) * h, 0);
  for (int32_t p = 0; p < w * h; ++p) {
    if (!in_mask(p)) continue;
    int32_t r = dsu.find(p);
    if (root_to_id[r] == 0) {
      comps.emplace_back();
      root_to_id[r] = static_cast<int32_t>(comps.size());
    }
    int32_t id = root_to_id[r];
    ids[p] = id;
    comps[id - 1].push_back(p);
  }
}

inline void sort_unique(std::vector<int32_t>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace detail

inline RegionIndex build_regions(const PixelLabelMap& labels) {
  const int w = labels.width, h = labels.height;
  RegionIndex out;
  out.width = w;
  out.height = h;

  auto band_mask = [&](int32_t p) {
    PixelLabel l = labels.labels[p];
    return l == PixelLabel::Flat || l == PixelLabel::Candidate;
  };
  auto edge_mask = [&](int32_t p) {
    return labels.labels[p] == PixelLabel::BandEdge;
  };

  std::vector<std::vector<int32_t>> band_comps, edge_comps;
  detail::label_components(w, h, band_mask, out.band_ids, band_comps);
  detail::label_components(w, h, edge_mask, out.edge_ids, edge_comps);

  out.bands.resize(band_comps.size());
  for (size_t k = 0; k < band_comps.size(); ++k) {
    out.bands[k].id = static_cast<int>(k) + 1;
    out.bands[k].pixels = std::move(band_comps[k]);
  }
  out.edges.resize(edge_comps.size());
  for (size_t k = 0; k < edge_comps.size(); ++k) {
    out.edges[k].id = static_cast<int>(k) + 1;
    out.edges[k].pixels = std::move(edge_comps[k]);
  }

  // An edge frames a band when any edge pixel 8-neighbors a band pixel.
  out.band_adjacency.assign(out.bands.size(), {});
  out.edge_adjacency.assign(out.edges.size(), {});
  for (const EdgeRegion& e : out.edges) {
    for (int32_t p : e.pixels) {
      int i = p / w, j = p % w;
      for (int di = -1; di <= 1; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          int ni = i + di, nj = j + dj;
          if (ni < 0 || ni >= h || nj < 0 || nj >= w) continue;
          int32_t b = out.band_ids[static_cast<size_t>(ni) * w + nj];
          if (b > 0) {
            out.band_adjacency[b - 1].push_back(e.id);
            out.edge_adjacency[e.id - 1].push_back(b);
          }
        }
      }
    }
  }
  for (auto& v : out.band_adjacency) detail::sort_unique(v);
  for (auto& v : out.edge_adjacency) detail::sort_unique(v);
  return out;
}

}  // namespace adadeband
