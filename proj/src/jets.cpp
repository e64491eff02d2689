#include "lipjet/jets.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lipjet/parallel.hpp"

namespace lipjet {

int level_of(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw InputError("regularity must be a finite positive number");
  return static_cast<int>(std::ceil(r)) - 1;
}

double factorial(int n) {
  double out = 1.0;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

LipFunction::LipFunction(double gamma, std::vector<Point> sites,
                         std::vector<std::vector<SymForm>> jets)
    : gamma_(gamma), k_(level_of(gamma)), sites_(std::move(sites)), jets_(std::move(jets)) {
  if (sites_.empty()) throw InputError("a jet needs at least one site");
  if (jets_.size() != sites_.size()) {
    throw InputError("got " + std::to_string(jets_.size()) + " jet lists for " +
                     std::to_string(sites_.size()) + " sites");
  }
  dim_ = sites_.front().dim();
  if (jets_.front().empty()) throw InputError("site 0 carries no forms");
  codim_ = jets_.front().front().codim();
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    if (sites_[i].dim() != dim_) throw InputError("site " + std::to_string(i) + " has the wrong dimension");
    if (static_cast<int>(jets_[i].size()) != k_ + 1) {
      throw InputError("site " + std::to_string(i) + " needs " + std::to_string(k_ + 1) +
                       " forms for gamma = " + std::to_string(gamma_) + ", got " +
                       std::to_string(jets_[i].size()));
    }
    for (int l = 0; l <= k_; ++l) {
      const SymForm& form = jets_[i][l];
      if (form.degree() != l || form.dim() != dim_ || form.codim() != codim_) {
        throw InputError("form at site " + std::to_string(i) + " level " + std::to_string(l) +
                         " has the wrong shape");
      }
    }
  }
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    for (std::size_t j = i + 1; j < sites_.size(); ++j) {
      if (distance(sites_[i], sites_[j]) < kMinSiteSeparation) {
        throw InputError("sites " + std::to_string(i) + " and " + std::to_string(j) +
                         " coincide");
      }
    }
  }
}

LipFunction LipFunction::zero(double gamma, std::vector<Point> sites, int codim) {
  const int k = level_of(gamma);
  if (sites.empty()) throw InputError("a jet needs at least one site");
  const int d = sites.front().dim();
  std::vector<std::vector<SymForm>> jets(sites.size());
  for (auto& site_jets : jets) {
    for (int l = 0; l <= k; ++l) site_jets.emplace_back(l, d, codim);
  }
  return LipFunction(gamma, std::move(sites), std::move(jets));
}

const SymForm& LipFunction::jet(std::size_t site, int level) const {
  if (level < 0 || level > k_) throw InputError("jet level " + std::to_string(level) + " out of range");
  return jets_.at(site).at(static_cast<std::size_t>(level));
}

namespace {

void check_site(const LipFunction& f, std::size_t i) {
  if (i >= f.size()) throw InputError("site index " + std::to_string(i) + " out of range");
}

// psi^(l)(y) - sum_{s=0}^{top-l} psi^(l+s)(x)[(y - x)^s] / s!
SymForm taylor_defect(const LipFunction& f, int top, int level, std::size_t x, std::size_t y) {
  check_site(f, x);
  check_site(f, y);
  const Vec h = displacement(f.site(x), f.site(y));
  SymForm out = f.jet(y, level);
  for (int s = 0; s <= top - level; ++s) {
    out -= f.jet(x, level + s).contract(h, s) * (1.0 / factorial(s));
  }
  return out;
}

double holder_quotient(const LipFunction& f, int q, int level, double eta, std::size_t x,
                       std::size_t y) {
  const double gap = distance(f.site(x), f.site(y));
  return taylor_defect(f, q, level, x, y).op_norm() / std::pow(gap, eta - level);
}

struct Best {
  double value = 0.0;
  std::optional<std::pair<std::size_t, std::size_t>> pair;
};

}  // namespace

SymForm remainder(const LipFunction& f, int level, std::size_t x, std::size_t y) {
  if (level < 0 || level > f.k()) {
    throw InputError("remainder level " + std::to_string(level) + " outside 0.." + std::to_string(f.k()));
  }
  return taylor_defect(f, f.k(), level, x, y);
}

SymForm truncated_remainder(const LipFunction& f, int q, int level, std::size_t x, std::size_t y) {
  if (q < 0 || q > f.k()) throw InputError("truncation order " + std::to_string(q) + " out of range");
  if (level < 0 || level > q) throw InputError("remainder level " + std::to_string(level) + " outside 0.." + std::to_string(q));
  return taylor_defect(f, q, level, x, y);
}

NormReport lip_norm(const LipFunction& f, double eta) {
  if (!(eta > 0.0) || eta > f.gamma()) {
    throw InputError("eta = " + std::to_string(eta) + " must lie in (0, gamma = " +
                     std::to_string(f.gamma()) + "]");
  }
  NormReport report;
  report.eta = eta;
  report.q = level_of(eta);
  const int q = report.q;
  const std::size_t n = f.size();

  report.pointwise.assign(q + 1, 0.0);
  report.pointwise_site.assign(q + 1, 0);
  for (int l = 0; l <= q; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      const double v = f.jet(i, l).op_norm();
      if (v > report.pointwise[l]) {
        report.pointwise[l] = v;
        report.pointwise_site[l] = i;
      }
    }
  }

  // Rows x of the ordered-pair table are split across workers; each chunk
  // keeps the first maximizer in (x, y) order and chunks merge in order.
  const std::size_t chunks = n * n >= 4096 ? chunk_count(n, 4) : 1;
  std::vector<std::vector<Best>> partial(chunks, std::vector<Best>(q + 1));
  parallel_chunks(n, chunks, [&](std::size_t c, std::size_t begin, std::size_t end) {
    auto& best = partial[c];
    for (std::size_t x = begin; x < end; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (x == y) continue;
        for (int l = 0; l <= q; ++l) {
          const double v = holder_quotient(f, q, l, eta, x, y);
          if (v > best[l].value || (!best[l].pair && v == best[l].value)) {
            best[l].value = v;
            best[l].pair = std::pair{x, y};
          }
        }
      }
    }
  });
  report.holder.assign(q + 1, 0.0);
  report.holder_pair.assign(q + 1, std::nullopt);
  for (const auto& chunk : partial) {
    for (int l = 0; l <= q; ++l) {
      if (!chunk[l].pair) continue;
      if (!report.holder_pair[l] || chunk[l].value > report.holder[l]) {
        report.holder[l] = chunk[l].value;
        report.holder_pair[l] = chunk[l].pair;
      }
    }
  }

  for (int l = 0; l <= q; ++l) {
    report.overall = std::max({report.overall, report.pointwise[l], report.holder[l]});
  }
  return report;
}

double lip_norm_value(const LipFunction& f) { return lip_norm(f, f.gamma()).overall; }

Vec proposal_eval(const LipFunction& f, std::size_t x, const Vec& y) {
  check_site(f, x);
  if (y.size() != f.dim()) throw InputError("evaluation point has the wrong dimension");
  const Vec h = y - f.site(x).coords();
  Vec out = Vec::Zero(f.codim());
  for (int s = 0; s <= f.k(); ++s) {
    const SymForm full = f.jet(x, s).contract(h, s);
    out += Eigen::Map<const Vec>(full.coeffs().data(), f.codim()) / factorial(s);
  }
  return out;
}

HolderCheck holder_estimate_check(const LipFunction& f, std::size_t x, std::size_t w,
                                  const Vec& y, const Vec& z) {
  check_site(f, x);
  check_site(f, w);
  if (f.k() < 1) throw InputError("the Holder-type estimate needs gamma > 1");
  if (y.size() != f.dim() || z.size() != f.dim()) throw InputError("evaluation point has the wrong dimension");
  const Vec& px = f.site(x).coords();
  const Vec& pw = f.site(w).coords();
  const double xw = (px - pw).norm();
  const double yz = (y - z).norm();
  if (xw > 1.0) throw InputError("base points must satisfy |x - w| <= 1");
  if (yz > 1.0) throw InputError("evaluation points must satisfy |y - z| <= 1");

  const double m = lip_norm_value(f);
  const double r1 = std::max((px - z).norm(), (px - y).norm());
  const double r2 = std::max((z - pw).norm(), (z - px).norm());
  HolderCheck out;
  out.lhs = (proposal_eval(f, x, y) - proposal_eval(f, w, z)).norm();
  out.rhs = m * (std::exp(r1) * yz +
                 (std::exp(r2) + std::exp(1.0 + (z - px).norm())) * std::pow(xw, f.gamma() - f.k()));
  out.ok = out.lhs <= out.rhs * (1.0 + 1e-9);
  return out;
}

LipFunction diff(const LipFunction& f, const LipFunction& g) {
  if (f.dim() != g.dim() || f.codim() != g.codim() || f.gamma() != g.gamma() || f.size() != g.size()) {
    throw InputError("diff needs jets with the same dimension, codimension, gamma and site count");
  }
  std::vector<std::vector<SymForm>> jets(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if ((f.site(i).coords().array() != g.site(i).coords().array()).any()) {
      throw InputError("diff needs identical site lists; site " + std::to_string(i) + " differs");
    }
    for (int l = 0; l <= f.k(); ++l) jets[i].push_back(f.jet(i, l) - g.jet(i, l));
  }
  return LipFunction(f.gamma(), f.sites(), std::move(jets));
}

LipFunction scale(const LipFunction& f, double c) {
  std::vector<std::vector<SymForm>> jets(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (int l = 0; l <= f.k(); ++l) jets[i].push_back(f.jet(i, l) * c);
  }
  return LipFunction(f.gamma(), f.sites(), std::move(jets));
}

LipFunction truncate(const LipFunction& f, int q) {
  if (q < 0 || q > f.k()) throw InputError("truncation order " + std::to_string(q) + " out of range");
  std::vector<std::vector<SymForm>> jets(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    jets[i].assign(f.jets_at(i).begin(), f.jets_at(i).begin() + q + 1);
  }
  return LipFunction(q + 1.0, f.sites(), std::move(jets));
}

LipFunction restrict_to(const LipFunction& f, std::span<const std::size_t> indices) {
  if (indices.empty()) throw InputError("restriction needs a nonempty subset");
  std::vector<Point> sites;
  std::vector<std::vector<SymForm>> jets;
  for (std::size_t i : indices) {
    check_site(f, i);
    sites.push_back(f.site(i));
    jets.push_back(f.jets_at(i));
  }
  return LipFunction(f.gamma(), std::move(sites), std::move(jets));
}

}  // namespace lipjet
