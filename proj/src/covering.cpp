#include "lipjet/covering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "lipjet/parallel.hpp"

namespace lipjet {

namespace {

void require_sites(std::span<const Point> sites) {
  if (sites.empty()) throw InputError("the site set is empty");
  const int d = sites.front().dim();
  for (const Point& p : sites) {
    if (p.dim() != d) throw InputError("sites have mixed dimensions");
  }
}

}  // namespace

CoverCheck is_cover(std::span<const Point> sites, std::span<const std::size_t> centers, double delta) {
  require_sites(sites);
  if (!(delta >= 0.0)) throw InputError("delta must be >= 0");
  for (std::size_t c : centers) {
    if (c >= sites.size()) throw InputError("center index " + std::to_string(c) + " is not a site");
  }
  CoverCheck out;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const bool hit = std::any_of(centers.begin(), centers.end(),
                                 [&](std::size_t c) { return distance(sites[i], sites[c]) <= delta; });
    if (!hit) {
      out.uncovered_witness = i;
      return out;
    }
  }
  out.covered = true;
  return out;
}

CoverPlan greedy_cover(std::span<const Point> sites, double delta) {
  require_sites(sites);
  if (!(delta > 0.0)) throw InputError("delta must be > 0");
  CoverPlan plan;
  plan.delta = delta;
  std::vector<double> gap(sites.size(), std::numeric_limits<double>::infinity());
  std::size_t next = 0;
  while (true) {
    plan.center_indices.push_back(next);
    const Point& c = sites[next];
    for (std::size_t i = 0; i < sites.size(); ++i) gap[i] = std::min(gap[i], distance(sites[i], c));
    // max_element returns the first maximizer, which is the lowest index.
    const auto far = std::max_element(gap.begin(), gap.end());
    if (*far <= delta) break;
    next = static_cast<std::size_t>(far - gap.begin());
  }
  const CoverCheck check = is_cover(sites, plan.center_indices, delta);
  plan.verified = check.covered;
  plan.uncovered_witness = check.uncovered_witness;
  return plan;
}

std::vector<std::size_t> greedy_packing(std::span<const Point> sites, double delta) {
  require_sites(sites);
  if (!(delta > 0.0)) throw InputError("delta must be > 0");
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const bool separated = std::all_of(kept.begin(), kept.end(),
                                       [&](std::size_t j) { return distance(sites[i], sites[j]) > delta; });
    if (separated) kept.push_back(i);
  }
  return kept;
}

double unit_ball_volume(int d) {
  if (d < 0) throw InputError("dimension must be >= 0");
  // omega_d = (2 pi / d) omega_{d-2}, exact in low dimensions.
  double out = d % 2 == 0 ? 1.0 : 2.0;
  for (int j = 2 + d % 2; j <= d; j += 2) out *= 2.0 * std::numbers::pi / j;
  return out;
}

CubeBound cube_bound(int d, double delta0) {
  if (d < 1) throw InputError("dimension must be >= 1");
  if (!(delta0 > 0.0)) throw InputError("delta0 must be > 0");
  CubeBound out;
  out.d = d;
  out.delta0 = delta0;
  out.omega_d = unit_ball_volume(d);
  out.bound = std::pow(2.0, d) / out.omega_d * std::pow(1.0 + 1.0 / delta0, d);
  out.m = static_cast<long long>(std::ceil(out.bound));
  return out;
}

double diameter(std::span<const Point> sites) {
  require_sites(sites);
  const std::size_t n = sites.size();
  const std::size_t chunks = n * n >= 1 << 16 ? chunk_count(n, 16) : 1;
  std::vector<double> partial(chunks, 0.0);
  parallel_chunks(n, chunks, [&](std::size_t c, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) partial[c] = std::max(partial[c], distance(sites[i], sites[j]));
    }
  });
  return *std::max_element(partial.begin(), partial.end());
}

}  // namespace lipjet
