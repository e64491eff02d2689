#pragma once

// Closed-ball delta-covers of finite site sets, greedy packings, and the
// covering bound for samples of the unit cube.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lipjet/tensor.hpp"

namespace lipjet {

struct CoverCheck {
  bool covered = false;
  /// First site farther than delta from every center.
  std::optional<std::size_t> uncovered_witness;
};

struct CoverPlan {
  double delta = 0.0;
  std::vector<std::size_t> center_indices;
  bool verified = false;
  std::optional<std::size_t> uncovered_witness;
};

struct CubeBound {
  int d = 0;
  double delta0 = 0.0;
  double omega_d = 0.0;
  double bound = 0.0;
  long long m = 0;
};

/// Every site within delta (closed balls) of some center?
CoverCheck is_cover(std::span<const Point> sites, std::span<const std::size_t> centers, double delta);

/// Farthest-point greedy cover starting at site 0; ties go to the lowest index.
CoverPlan greedy_cover(std::span<const Point> sites, double delta);

/// Sites kept in index order whenever they are farther than delta from every
/// site already kept.
std::vector<std::size_t> greedy_packing(std::span<const Point> sites, double delta);

/// Volume of the Euclidean unit ball in R^d.
double unit_ball_volume(int d);

/// (2^d / omega_d) (1 + 1/delta0)^d and its ceiling.
CubeBound cube_bound(int d, double delta0);

/// Largest pairwise distance; 0 for a single site.
double diameter(std::span<const Point> sites);

}  // namespace lipjet
