#include <algorithm>
#include <cmath>
#include <limits>

#include "evwin/anomaly.hpp"
#include "evwin/error.hpp"

namespace evwin {

double auto_gamma(const FeatureMatrix& features) {
  const auto& v = features.values;
  if (v.empty() || features.dims == 0) throw Error(ErrorKind::InsufficientData, "no features");
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - m) * (x - m);
  var /= static_cast<double>(v.size());
  return var > 0.0 ? 1.0 / (static_cast<double>(features.dims) * var) : 1.0;
}

OneClassSvm OneClassSvm::fit(const FeatureMatrix& features, const OneClassSvmParams& params) {
  const std::size_t n = features.rows();
  if (n < 8) throw Error(ErrorKind::InsufficientData, "one-class SVM needs at least 8 rows");
  if (!(params.nu > 0.0 && params.nu <= 1.0)) throw Error(ErrorKind::InvalidArgument, "nu must be in (0, 1]");
  for (double v : features.values)
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "non-finite feature value");

  OneClassSvm model;
  model.dims_ = features.dims;
  model.points_ = features.values;
  model.gamma_ = params.gamma > 0.0 ? params.gamma : auto_gamma(features);
  model.tolerance_ = params.tolerance;
  const double c = 1.0 / (params.nu * static_cast<double>(n));
  model.upper_bound_ = c;

  const auto k = params.execution == Execution::Parallel
                     ? kernels::rbf_gram(features.values, features.dims, model.gamma_)
                     : kernels::rbf_gram_serial(features.values, features.dims, model.gamma_);
  auto kij = [&](std::size_t i, std::size_t j) { return k[i * n + j]; };

  // Feasible start: fill the first floor(1/C) multipliers to the bound, the next with the remainder.
  auto& alpha = model.alpha_;
  alpha.assign(n, 0.0);
  double remaining = 1.0;
  for (std::size_t i = 0; i < n && remaining > 0.0; ++i) {
    alpha[i] = std::min(c, remaining);
    remaining -= alpha[i];
  }

  std::vector<double> grad(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (alpha[i] == 0.0) continue;
    for (std::size_t t = 0; t < n; ++t) grad[t] += alpha[i] * kij(i, t);
  }

  constexpr double kTau = 1e-12;
  std::size_t iter = 0;
  double gap = std::numeric_limits<double>::infinity();
  for (;; ++iter) {
    // Second-order working-set selection (Fan, Chen & Lin 2005) with all labels +1.
    double gmax = -std::numeric_limits<double>::infinity();
    std::size_t i = n;
    for (std::size_t t = 0; t < n; ++t) {
      if (alpha[t] < c && -grad[t] >= gmax) {
        gmax = -grad[t];
        i = t;
      }
    }
    double gmax2 = -std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    std::size_t j = n;
    for (std::size_t t = 0; t < n; ++t) {
      if (!(alpha[t] > 0.0)) continue;
      gmax2 = std::max(gmax2, grad[t]);
      const double diff = gmax + grad[t];
      if (diff > 0.0 && i < n) {
        double quad = kij(i, i) + kij(t, t) - 2.0 * kij(i, t);
        if (quad <= 0.0) quad = kTau;
        const double obj = -diff * diff / quad;
        if (obj <= best) {
          best = obj;
          j = t;
        }
      }
    }
    gap = gmax + gmax2;
    if (gap < params.tolerance || i == n || j == n) break;
    if (iter >= params.max_iterations) {
      throw Error(ErrorKind::SolverNotConverged,
                  "SMO did not reach KKT tolerance in " + std::to_string(params.max_iterations) + " iterations");
    }

    const double old_i = alpha[i];
    const double old_j = alpha[j];
    double quad = kij(i, i) + kij(j, j) - 2.0 * kij(i, j);
    if (quad <= 0.0) quad = kTau;
    const double delta = (grad[i] - grad[j]) / quad;
    const double sum = old_i + old_j;
    double ai = old_i - delta;
    double aj = old_j + delta;
    if (sum > c) {
      if (ai > c) {
        ai = c;
        aj = sum - c;
      }
    } else if (aj < 0.0) {
      aj = 0.0;
      ai = sum;
    }
    if (sum > c) {
      if (aj > c) {
        aj = c;
        ai = sum - c;
      }
    } else if (ai < 0.0) {
      ai = 0.0;
      aj = sum;
    }
    alpha[i] = ai;
    alpha[j] = aj;
    const double di = ai - old_i;
    const double dj = aj - old_j;
    for (std::size_t t = 0; t < n; ++t) grad[t] += kij(i, t) * di + kij(j, t) * dj;
  }
  model.iterations_ = iter;
  model.kkt_gap_ = gap;

  // rho: mean gradient over free multipliers, else the midpoint of the feasible interval.
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double free_sum = 0.0;
  std::size_t free_count = 0;
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] >= c) {
      lb = std::max(lb, grad[t]);
    } else if (alpha[t] <= 0.0) {
      ub = std::min(ub, grad[t]);
    } else {
      free_sum += grad[t];
      ++free_count;
    }
  }
  model.rho_ = free_count > 0 ? free_sum / static_cast<double>(free_count) : 0.5 * (ub + lb);

  // Fresh decision values; the incrementally updated gradient carries rounding drift.
  model.training_decision_.assign(n, -model.rho_);
  for (std::size_t r = 0; r < n; ++r) {
    double s = 0.0;
    for (std::size_t t = 0; t < n; ++t) s += alpha[t] * kij(t, r);
    model.training_decision_[r] += s;
  }
  return model;
}

double OneClassSvm::decision(std::span<const double> x) const {
  const std::size_t n = alpha_.size();
  double s = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    if (alpha_[t] == 0.0) continue;
    double d2 = 0.0;
    for (std::size_t f = 0; f < dims_; ++f) {
      const double d = points_[t * dims_ + f] - x[f];
      d2 += d * d;
    }
    s += alpha_[t] * std::exp(-gamma_ * d2);
  }
  return s - rho_;
}

OneClassSvmResult one_class_svm(const FeatureMatrix& features, const OneClassSvmParams& params) {
  const auto model = OneClassSvm::fit(features, params);
  OneClassSvmResult out;
  out.decision_values = model.training_decision();
  out.rho = model.rho();
  out.gamma = model.gamma();
  out.iterations = model.iterations();
  out.votes.resize(out.decision_values.size());
  // Sign rule, except free support vectors: they lie on f = 0 and their sign is rounding noise.
  const auto& alpha = model.alpha();
  for (std::size_t r = 0; r < out.votes.size(); ++r) {
    const bool free_sv = alpha[r] > 0.0 && alpha[r] < model.upper_bound();
    out.votes[r] = out.decision_values[r] < 0.0 && !free_sv ? -1 : 1;
  }
  return out;
}

}  // namespace evwin
