// Microbenchmarks for the hot paths of a training run: circuit binding,
// state evolution, partial traces and the full cost evaluation.

#include <benchmark/benchmark.h>

#include <qae/autoencoder.hpp>
#include <qae/circuits.hpp>
#include <qae/hamiltonians.hpp>
#include <qae/rng.hpp>
#include <qae/state.hpp>

#include <random>
#include <vector>

namespace {

Eigen::VectorXd random_params(const qae::CircuitTemplate& tpl,
                              std::mt19937_64& rng) {
  Eigen::VectorXd p(tpl.param_count());
  for (int i = 0; i < p.size(); ++i)
    p[i] = qae::uniform(rng, qae::kParamLo, qae::kParamHi);
  return p;
}

qae::TrainingEnsemble hubbard_ensemble(int sites, int n_latent) {
  std::vector<qae::StateVector> states;
  int modes = 2 * sites;
  for (double t : {0.9, 0.98, 1.06}) {
    qae::LatticeSpec lattice{2, sites / 2, t, 2.0};
    auto gs = qae::ground_state(qae::build_hubbard(lattice),
                                qae::number_operator(modes),
                                static_cast<double>(sites));
    states.push_back(gs.state);
  }
  return qae::TrainingEnsemble::uniform(
      n_latent, modes - n_latent,
      qae::StateVector::zero_state(modes - n_latent), states);
}

void bench_bind_a4(benchmark::State& state) {
  std::mt19937_64 rng(1);
  auto tpl = qae::template_a(4, 1);
  auto p = random_params(tpl, rng);
  for (auto _ : state) benchmark::DoNotOptimize(qae::bind(tpl, p));
}
BENCHMARK(bench_bind_a4);

void bench_bind_a8(benchmark::State& state) {
  std::mt19937_64 rng(1);
  auto tpl = qae::template_a(8, 1);
  auto p = random_params(tpl, rng);
  for (auto _ : state) benchmark::DoNotOptimize(qae::bind(tpl, p));
}
BENCHMARK(bench_bind_a8);

void bench_apply_circuit_8(benchmark::State& state) {
  std::mt19937_64 rng(2);
  auto tpl = qae::template_b(8, 1);
  auto p = random_params(tpl, rng);
  auto psi = qae::StateVector::random_state(8, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(qae::apply_circuit(tpl, p, psi));
}
BENCHMARK(bench_apply_circuit_8);

void bench_partial_trace_8(benchmark::State& state) {
  std::mt19937_64 rng(3);
  auto psi = qae::StateVector::random_state(8, rng);
  auto keep = qae::QubitSubset::range(0, 6);
  for (auto _ : state)
    benchmark::DoNotOptimize(qae::partial_trace(psi, keep));
}
BENCHMARK(bench_partial_trace_8);

void bench_cost_c2_hubbard_4(benchmark::State& state) {
  std::mt19937_64 rng(4);
  auto ens = hubbard_ensemble(2, 2);
  auto tpl = qae::template_a(4, 1);
  auto p = random_params(tpl, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(qae::cost_c2(p, tpl, ens));
}
BENCHMARK(bench_cost_c2_hubbard_4);

void bench_cost_c2_hubbard_8(benchmark::State& state) {
  std::mt19937_64 rng(5);
  auto ens = hubbard_ensemble(4, 6);
  auto tpl = qae::template_b(8, 1);
  auto p = random_params(tpl, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(qae::cost_c2(p, tpl, ens));
}
BENCHMARK(bench_cost_c2_hubbard_8);

void bench_build_hubbard_2x2(benchmark::State& state) {
  qae::LatticeSpec lattice{2, 2, 1.0, 2.0};
  for (auto _ : state)
    benchmark::DoNotOptimize(qae::build_hubbard(lattice));
}
BENCHMARK(bench_build_hubbard_2x2);

void bench_ground_state_hubbard_2x2(benchmark::State& state) {
  qae::LatticeSpec lattice{2, 2, 1.0, 2.0};
  auto h = qae::build_hubbard(lattice);
  auto n_op = qae::number_operator(8);
  for (auto _ : state)
    benchmark::DoNotOptimize(qae::ground_state(h, n_op, 4.0));
}
BENCHMARK(bench_ground_state_hubbard_2x2);

}  // namespace

BENCHMARK_MAIN();
