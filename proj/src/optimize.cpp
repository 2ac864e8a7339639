#include "capflow/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "capflow/errors.hpp"
#include "capflow/rng.hpp"

namespace capflow {

namespace {

struct StartResult {
  std::vector<double> masses;
  double objective = -std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

void normalize(std::vector<double>& m) {
  double total = 0.0;
  for (double v : m) total += v;
  for (double& v : m) v /= total;
}

StartResult run_from(SimplexObjective& objective, std::vector<double> m,
                     const OptimizerConfig& cfg) {
  const int n = static_cast<int>(m.size());
  StartResult res;
  std::vector<double> grad(n), trial(n), trial_grad(n);
  double eta = cfg.eta0;
  double value = objective.eval(m, grad);

  for (int step = 0; step < cfg.max_steps; ++step) {
    ++res.iterations;
    // Center and scale the gradient so eta is a relative step size.
    double mean = 0.0;
    for (int j = 0; j < n; ++j) mean += m[j] * grad[j];
    double scale = 0.0;
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(grad[j] - mean));
    if (scale == 0.0) {
      res.converged = true;
      break;
    }
    for (int j = 0; j < n; ++j) {
      trial[j] = m[j] * std::exp(eta * (grad[j] - mean) / scale);
    }
    normalize(trial);
    double trial_value = objective.eval(trial, trial_grad);
    if (trial_value < value) {
      eta *= 0.5;  // objective regressed; shorten the step and retry
      if (eta < 1e-12) {
        res.converged = true;
        break;
      }
      continue;
    }
    double rel_change = (trial_value - value) / std::max(std::abs(value), 1e-300);
    m.swap(trial);
    grad.swap(trial_grad);
    value = trial_value;
    if (rel_change < cfg.rel_tol) {
      res.converged = true;
      break;
    }
  }
  res.masses = std::move(m);
  res.objective = value;
  return res;
}

}  // namespace

OptResult maximize_on_simplex(SimplexObjective& objective, const OptimizerConfig& cfg) {
  const int n = objective.size();
  if (n < 1) throw ValidationError("objective needs at least one variable");

  std::vector<std::vector<double>> starts;
  starts.emplace_back(n, 1.0 / n);
  for (int s = 0; s < cfg.random_starts; ++s) {
    SplitMix64 g = stream_at(cfg.seed, 0x5150 + static_cast<std::uint64_t>(s));
    std::vector<double> m(n);
    for (double& v : m) v = -std::log(1.0 - g.uniform());  // Exp(1)
    normalize(m);
    starts.push_back(std::move(m));
  }

  OptResult out;
  StartResult best;
  double converged_max = -std::numeric_limits<double>::infinity();
  double converged_min = std::numeric_limits<double>::infinity();
  for (auto& start : starts) {
    StartResult r = run_from(objective, std::move(start), cfg);
    out.iterations += r.iterations;
    if (r.converged) {
      ++out.converged_starts;
      converged_max = std::max(converged_max, r.objective);
      converged_min = std::min(converged_min, r.objective);
    }
    // Converged runs beat unconverged ones; ties break on the objective.
    bool better = (r.converged && !best.converged) ||
                  (r.converged == best.converged && r.objective > best.objective);
    if (better) best = std::move(r);
  }
  out.masses = std::move(best.masses);
  out.objective = best.objective;
  out.converged = best.converged;
  if (out.converged_starts > 1 && converged_max > 0.0) {
    out.spread = (converged_max - converged_min) / converged_max;
  }
  return out;
}

}  // namespace capflow
