// Serial reference kernels against their OpenMP counterparts, plus the two
// quantization sums that sit on top of them.
//
//   ./bench_kernels --benchmark_filter=Jacobi
//   ANGLEKIT_THREADS=4 ./bench_kernels

#include <benchmark/benchmark.h>

#include <cstdlib>
#include <random>
#include <string>

#include "anglekit/circlecs.hpp"
#include "anglekit/kernels.hpp"
#include "anglekit/whquant.hpp"

using namespace anglekit;

namespace {

Matrix random_hermitian(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = u(eng);
        for (std::size_t j = i + 1; j < n; ++j) {
            m(i, j) = cplx{u(eng), u(eng)};
            m(j, i) = std::conj(m(i, j));
        }
    }
    return m;
}

std::vector<kernels::LowRankNode> random_nodes(std::size_t D, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<kernels::LowRankNode> nodes(count);
    for (auto& nd : nodes) {
        nd.K = 1;
        nd.g.resize(2 * D - 1);
        for (auto& g : nd.g) g = cplx{u(eng), u(eng)};
        nd.lambda = {u(eng)};
        nd.X.resize(D);
        for (auto& x : nd.X) x = u(eng);
    }
    return nodes;
}

template <Matrix (*F)(const Matrix&, const Matrix&)>
void BM_Matmul(benchmark::State& st) {
    const auto n = static_cast<std::size_t>(st.range(0));
    const auto a = random_hermitian(n, 1), b = random_hermitian(n, 2);
    for (auto _ : st) benchmark::DoNotOptimize(F(a, b));
    st.SetComplexityN(st.range(0));
}

template <kernels::JacobiResult (*F)(const Matrix&, const kernels::JacobiOptions&)>
void BM_Jacobi(benchmark::State& st) {
    const auto m = random_hermitian(static_cast<std::size_t>(st.range(0)), 3);
    for (auto _ : st) benchmark::DoNotOptimize(F(m, {}));
}

template <Matrix (*F)(std::size_t, const std::vector<kernels::LowRankNode>&)>
void BM_Accumulate(benchmark::State& st) {
    const auto D = static_cast<std::size_t>(st.range(0));
    const auto nodes = random_nodes(D, 256, 4);
    for (auto _ : st) benchmark::DoNotOptimize(F(D, nodes));
}

void BM_QuantizeWH(benchmark::State& st, bool parallel) {
    const int D = static_cast<int>(st.range(0));
    const auto f = PhaseFunction::angle(D);
    const auto w = WeightSpec::thermal(0.3);
    const QuadratureScheme q{RadialKind::sqrt_action, 64, 8};
    for (auto _ : st) benchmark::DoNotOptimize(parallel ? quantize(f, w, q, D) : quantize_serial(f, w, q, D));
}

void BM_QuantizeCircle(benchmark::State& st, bool parallel) {
    const int D = static_cast<int>(st.range(0));
    const auto g = DistributionSpec::gaussian(1.0);
    const auto b = BasisSpec::two_sided(D);
    const CylQuadrature q{-D / 3.0, D / 3.0, 40, 32};
    auto f = [](double J, double phi) { return cplx{std::cos(phi) / (1.0 + J * J)}; };
    for (auto _ : st)
        benchmark::DoNotOptimize(parallel ? quantize_cyl_general(f, g, b, q) : quantize_cyl_general_serial(f, g, b, q));
}

}  // namespace

BENCHMARK(BM_Matmul<kernels::serial::matmul>)->Name("Matmul/serial")->RangeMultiplier(2)->Range(32, 256);
BENCHMARK(BM_Matmul<kernels::omp::matmul>)->Name("Matmul/omp")->RangeMultiplier(2)->Range(32, 256);
BENCHMARK(BM_Jacobi<kernels::serial::jacobi_eig>)->Name("Jacobi/serial")->RangeMultiplier(2)->Range(16, 128)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Jacobi<kernels::omp::jacobi_eig>)->Name("Jacobi/omp")->RangeMultiplier(2)->Range(16, 128)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Accumulate<kernels::serial::accumulate_lowrank>)->Name("Accumulate/serial")->Arg(64)->Arg(128);
BENCHMARK(BM_Accumulate<kernels::omp::accumulate_lowrank>)->Name("Accumulate/omp")->Arg(64)->Arg(128);
BENCHMARK_CAPTURE(BM_QuantizeWH, serial, false)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_QuantizeWH, omp, true)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_QuantizeCircle, serial, false)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_QuantizeCircle, omp, true)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
    if (const char* env = std::getenv("ANGLEKIT_THREADS")) kernels::set_threads(std::stoi(env));
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
