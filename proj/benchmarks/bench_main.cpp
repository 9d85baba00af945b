#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

#include "lasuscc/ansatz.hpp"
#include "lasuscc/las.hpp"
#include "lasuscc/pipeline.hpp"
#include "lasuscc/vqe.hpp"

using namespace lasuscc;

namespace {

FragmentLayout pairs(int k) {
    FragmentLayout l;
    for (int i = 0; i < k; ++i) l.fragments.push_back({{2 * i, 2 * i + 1}, 1, 1});
    return l;
}

Statevector random_state(int n) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    Statevector s(n);
    for (auto& a : s.amplitudes()) a = Complex(g(rng), g(rng));
    s.normalize();
    return s;
}

const PreparedSystem& h8() {
    static const PreparedSystem sys = native_system(hydrogen_dimer_ladder(4, 1.46), pairs(4));
    return sys;
}

} // namespace

static void BM_PauliExp16(benchmark::State& state) {
    Statevector psi = random_state(16);
    const PauliString p = PauliString::parse("XZZZYIIIXXIIZZIY");
    for (auto _ : state) {
        apply_pauli_exp(psi, p, 0.01);
        benchmark::DoNotOptimize(psi.amplitudes().data());
    }
}
BENCHMARK(BM_PauliExp16);

static void BM_DoubleExcitation16(benchmark::State& state) {
    const FragmentLayout layout = pairs(4);
    const GeneratorPool pool = enumerate_pool(layout);
    const QubitMap map(layout);
    const Generator& g = pool.generators[pool.n_singles + pool.n_doubles / 2];
    const bool pauli = state.range(0) == 0;
    const auto rot = compile_generator(g, map);
    const ExcitationKernel kernel(g, map);
    Statevector psi = random_state(16);
    for (auto _ : state) {
        if (pauli) {
            for (const auto& r : rot) apply_pauli_exp(psi, r.string, 0.01 * r.coefficient);
        } else {
            kernel.rotate(psi, 0.01);
        }
        benchmark::DoNotOptimize(psi.amplitudes().data());
    }
    state.SetLabel(pauli ? "pauli rotations" : "pairwise kernel");
}
BENCHMARK(BM_DoubleExcitation16)->Arg(0)->Arg(1);

static void BM_SigmaH8(benchmark::State& state) {
    const CIHamiltonian h(h8().ints, Sector{8, 4, 4});
    Vector v = Vector::Ones(static_cast<Eigen::Index>(h.dim())).normalized();
    for (auto _ : state) {
        Vector w = h.apply({v.data(), static_cast<std::size_t>(v.size())});
        benchmark::DoNotOptimize(w.data());
    }
    state.SetLabel("dimension 4900");
}
BENCHMARK(BM_SigmaH8)->Unit(benchmark::kMicrosecond);

static void BM_EnergyGradientH8(benchmark::State& state) {
    const PreparedSystem& sys = h8();
    const QubitMap map(sys.layout);
    const QubitHamiltonian h(sys.ints, map);
    const Statevector ref = assemble_statevector(lasci(sys.ints, sys.layout), map);
    GeneratorPool pool = enumerate_pool(sys.layout);
    screen_gradients(pool, ref, h);
    const TrotterAnsatz ansatz(pool, select_top(pool, static_cast<std::size_t>(state.range(0))), map);
    const VqeProblem problem(ansatz, ref, h);
    std::vector<double> t(ansatz.size(), 0.01), g(ansatz.size());
    for (auto _ : state) benchmark::DoNotOptimize(problem.energy_and_gradient(t, g));
}
BENCHMARK(BM_EnergyGradientH8)->Arg(50)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
