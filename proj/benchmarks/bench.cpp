#include <benchmark/benchmark.h>

#include "genrank/constructions.hpp"
#include "genrank/dsl.hpp"
#include "genrank/generation.hpp"
#include "genrank/matrix_field.hpp"
#include "genrank/rank_calculus.hpp"
#include "genrank/stratification.hpp"

namespace {

using namespace genrank;

void BM_CanonicalClosure(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    HermitianTuple t = canonical_pair(n);
    for (auto _ : state) {
        auto s = generated_algebra(t);
        benchmark::DoNotOptimize(s.basis.data());
    }
}
BENCHMARK(BM_CanonicalClosure)->DenseRange(4, 8)->Unit(benchmark::kMillisecond);

void BM_RandomClosure(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        auto t = random_hermitian_tuple(n, 2, seed++);
        benchmark::DoNotOptimize(is_generating(t));
    }
}
BENCHMARK(BM_RandomClosure)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_Classify(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    OrbitType om{{{n - 1, 1}, {1, 1}}};
    auto t = canonical_representative_tuple(om, n, 2, 3);
    auto s = generated_algebra(t);
    for (auto _ : state) {
        auto cls = classify_subalgebra(s);
        benchmark::DoNotOptimize(cls.summands.data());
    }
}
BENCHMARK(BM_Classify)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_TensorCompress(benchmark::State& state) {
    BlockAlgebra A{{2, 1}};
    const int n = 2;
    const int N = A.ambient_dim() * n;
    HermitianTuple c;
    c.n = N;
    std::uint64_t seed = 17;
    for (int e = 0; e < 2; ++e) {
        CMat m = CMat::Zero(N, N);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                CMat cell = CMat::Zero(3, 3);
                cell.block(0, 0, 2, 2) = random_hermitian_tuple(2, 1, seed++).entries[0];
                cell(2, 2) = random_hermitian_tuple(1, 1, seed++).entries[0](0, 0);
                m.block(3 * i, 3 * j, 3, 3) = cell;
            }
        c.entries.push_back(((m + m.adjoint()) / 2.0).eval());
    }
    for (auto _ : state) {
        auto r = tensor_compress(A, n, c, 0.05);
        benchmark::DoNotOptimize(r.closure_dimension);
    }
}
BENCHMARK(BM_TensorCompress)->Unit(benchmark::kMillisecond);

void BM_RankParseEval(benchmark::State& state) {
    const std::string expr =
        "sum(tensor_mn(uhf_rr0(af), 3, rr0, sr1, unital), "
        "ext(matrix(4), hom(2, dim=7)), limit(af, commutative(dim=2), repeats))";
    for (auto _ : state) {
        auto b = generator_rank_bounds(parse_algebra(expr));
        benchmark::DoNotOptimize(b.trace.data());
    }
}
BENCHMARK(BM_RankParseEval);

void BM_OrbitCompare(benchmark::State& state) {
    auto t1 = random_hermitian_tuple(3, 2, 5);
    CMat g = CMat::Random(3, 3);
    Eigen::JacobiSVD<CMat> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
    CMat u = svd.matrixU() * svd.matrixV().adjoint();
    HermitianTuple t2{3, {u * t1.entries[0] * u.adjoint(), u * t1.entries[1] * u.adjoint()}};
    for (auto _ : state) benchmark::DoNotOptimize(same_unitary_orbit(t1, t2));
}
BENCHMARK(BM_OrbitCompare)->Unit(benchmark::kMillisecond);

void BM_McRate(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto r = mc_generation_rate(n, 2, 50, 9);
        benchmark::DoNotOptimize(r.rate);
    }
}
BENCHMARK(BM_McRate)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
