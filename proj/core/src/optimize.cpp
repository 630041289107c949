#include "qae/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <future>
#include <stdexcept>
#include <thread>

#include "qae/rng.hpp"

namespace qae {

namespace {

Eigen::VectorXd clip(Eigen::VectorXd x, double lo, double hi) {
  for (Eigen::Index i = 0; i < x.size(); ++i)
    x(i) = std::clamp(x(i), lo, hi);
  return x;
}

Eigen::VectorXd wrap(Eigen::VectorXd x, double lo, double hi) {
  const double width = hi - lo;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double r = std::fmod(x(i) - lo, width);
    if (r < 0.0) r += width;
    x(i) = lo + r;
  }
  return x;
}

void check_config(const OptimizerConfig& cfg) {
  if (!(cfg.upper > cfg.lower))
    throw std::invalid_argument("upper bound must exceed lower bound");
  if (cfg.fd_step <= 0.0 || cfg.tolerance <= 0.0)
    throw std::invalid_argument("steps and tolerances must be positive");
  if (cfg.max_iterations < 0 || cfg.history < 1 || cfg.hops < 0)
    throw std::invalid_argument("invalid optimizer budget");
}

struct Pair {
  Eigen::VectorXd s;
  Eigen::VectorXd y;
  double rho;
};

// standard two-loop recursion
Eigen::VectorXd lbfgs_direction(const Eigen::VectorXd& g,
                                const std::deque<Pair>& mem) {
  Eigen::VectorXd q = g;
  std::vector<double> alpha(mem.size());
  for (std::size_t i = mem.size(); i-- > 0;) {
    alpha[i] = mem[i].rho * mem[i].s.dot(q);
    q -= alpha[i] * mem[i].y;
  }
  if (!mem.empty()) {
    const Pair& last = mem.back();
    q *= last.s.dot(last.y) / last.y.squaredNorm();
  }
  for (std::size_t i = 0; i < mem.size(); ++i) {
    double beta = mem[i].rho * mem[i].y.dot(q);
    q += (alpha[i] - beta) * mem[i].s;
  }
  return -q;
}

}  // namespace

Eigen::VectorXd fd_gradient(const Objective& f, const Eigen::VectorXd& x,
                            double step, double lower, double upper) {
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double hi = std::min(x(i) + step, upper);
    double lo = std::max(x(i) - step, lower);
    probe(i) = hi;
    double fp = f(probe);
    probe(i) = lo;
    double fm = f(probe);
    probe(i) = x(i);
    g(i) = (fp - fm) / (hi - lo);
  }
  return g;
}

OptResult local_minimize(const Objective& f, const Eigen::VectorXd& x0,
                         const OptimizerConfig& cfg) {
  check_config(cfg);
  OptResult res;
  std::int64_t evals = 0;
  auto fc = [&](const Eigen::VectorXd& x) {
    double v = f(x);
    ++evals;
    res.trace.push_back(v);
    return v;
  };

  Eigen::VectorXd x = clip(x0, cfg.lower, cfg.upper);
  double fx = fc(x);
  Eigen::VectorXd g = fd_gradient(fc, x, cfg.fd_step, cfg.lower, cfg.upper);
  std::deque<Pair> mem;

  for (int it = 0; it < cfg.max_iterations; ++it) {
    // projected-gradient stationarity over the box
    double pg = (x - clip(x - g, cfg.lower, cfg.upper))
                    .cwiseAbs()
                    .maxCoeff();
    if (pg < cfg.tolerance) {
      res.converged = true;
      break;
    }

    Eigen::VectorXd d = lbfgs_direction(g, mem);
    if (d.dot(g) >= 0.0) {  // not a descent direction; restart memory
      mem.clear();
      d = -g;
    }

    double alpha = 1.0;
    bool accepted = false;
    Eigen::VectorXd x_new;
    double f_new = 0.0;
    for (int ls = 0; ls < cfg.max_line_search; ++ls) {
      x_new = clip(x + alpha * d, cfg.lower, cfg.upper);
      if ((x_new - x).squaredNorm() == 0.0) break;
      f_new = fc(x_new);
      double decrease = g.dot(x_new - x);
      if (decrease < 0.0 && f_new <= fx + 1e-4 * decrease) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      if (!mem.empty()) {  // retry from a steepest-descent step
        mem.clear();
        continue;
      }
      break;  // no progress possible at this resolution
    }

    Eigen::VectorXd g_new =
        fd_gradient(fc, x_new, cfg.fd_step, cfg.lower, cfg.upper);
    Eigen::VectorXd s = x_new - x;
    Eigen::VectorXd y = g_new - g;
    double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      mem.push_back({std::move(s), std::move(y), 1.0 / sy});
      if (static_cast<int>(mem.size()) > cfg.history) mem.pop_front();
    }
    x = std::move(x_new);
    fx = f_new;
    g = std::move(g_new);
  }

  res.best_params = x;
  res.best_value = fx;
  res.evaluations = evals;
  return res;
}

OptResult basin_hop(const Objective& f, const Eigen::VectorXd& x0,
                    const OptimizerConfig& cfg, std::uint64_t seed) {
  check_config(cfg);
  std::mt19937_64 rng(seed);

  OptResult best = local_minimize(f, x0, cfg);
  best.seed = seed;
  OptResult current = best;

  for (int hop = 0; hop < cfg.hops; ++hop) {
    Eigen::VectorXd start = current.best_params;
    for (Eigen::Index i = 0; i < start.size(); ++i)
      start(i) += uniform(rng, -cfg.hop_scale, cfg.hop_scale);
    start = wrap(std::move(start), cfg.lower, cfg.upper);

    OptResult trial = local_minimize(f, start, cfg);

    // merge bookkeeping into the reported result
    best.evaluations += trial.evaluations;
    best.trace.insert(best.trace.end(), trial.trace.begin(),
                      trial.trace.end());

    bool accept = trial.best_value < current.best_value;
    if (!accept && cfg.hop_temperature > 0.0) {
      double dv = trial.best_value - current.best_value;
      accept = uniform01(rng) < std::exp(-dv / cfg.hop_temperature);
    }
    if (accept) {
      current.best_params = trial.best_params;
      current.best_value = trial.best_value;
      current.converged = trial.converged;
    }
    if (trial.best_value < best.best_value) {
      best.best_params = trial.best_params;
      best.best_value = trial.best_value;
      best.converged = trial.converged;
    }
  }
  return best;
}

TrainResult train(const CircuitTemplate& tpl, const TrainingEnsemble& ens,
                  const OptimizerConfig& cfg, int restarts,
                  std::uint64_t seed, int threads) {
  if (restarts < 1)
    throw std::invalid_argument("at least one restart required");
  check_config(cfg);
  if (tpl.n_qubits() != ens.n_qubits())
    throw std::invalid_argument("ensemble does not match template register");

  auto run_restart = [&](int r) {
    std::uint64_t rseed = mix_seed(seed, static_cast<std::uint64_t>(r));
    std::mt19937_64 rng(rseed);
    Eigen::VectorXd x0(tpl.param_count());
    for (Eigen::Index i = 0; i < x0.size(); ++i)
      x0(i) = uniform(rng, cfg.lower, cfg.upper);
    Objective f = [&tpl, &ens](const Eigen::VectorXd& p) {
      return objective(p, tpl, ens);
    };
    OptResult res = basin_hop(f, x0, cfg, mix_seed(rseed, 1));
    res.seed = rseed;
    return res;
  };

  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  int pool = threads > 0 ? threads : hw;
  pool = std::min(pool, restarts);

  TrainResult out;
  out.restarts.resize(static_cast<std::size_t>(restarts));
  if (pool <= 1) {
    for (int r = 0; r < restarts; ++r)
      out.restarts[static_cast<std::size_t>(r)] = run_restart(r);
  } else {
    for (int base = 0; base < restarts; base += pool) {
      int count = std::min(pool, restarts - base);
      std::vector<std::future<OptResult>> futures;
      futures.reserve(static_cast<std::size_t>(count));
      for (int i = 0; i < count; ++i) {
        int r = base + i;
        futures.push_back(std::async(std::launch::async,
                                     [&run_restart, r] { return run_restart(r); }));
      }
      for (int i = 0; i < count; ++i)
        out.restarts[static_cast<std::size_t>(base + i)] = futures[static_cast<std::size_t>(i)].get();
    }
  }

  std::size_t best_idx = 0;
  for (std::size_t r = 1; r < out.restarts.size(); ++r)
    if (out.restarts[r].best_value < out.restarts[best_idx].best_value)
      best_idx = r;
  out.best = out.restarts[best_idx];
  return out;
}

}  // namespace qae
