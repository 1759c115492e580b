// Serial reference kernels against their OpenMP versions on the assembled Stokes matrices.

#include <benchmark/benchmark.h>

#include <map>

#include "smg/kernels.hpp"
#include "smg/multigrid.hpp"

namespace {

using namespace smg;

struct Fixture {
    Sparse A;
    Vec x, b, dinv, work;
    explicit Fixture(int n) {
        const SaddleSystem sys = assemble_stokes(n);
        A = build_ahat(sys.At, sys.B, build_chat(sys.At, sys.B, sys.C, 2.0 / 3.0), 2.0 / 3.0);
        A.makeCompressed();
        x = Vec::Ones(A.cols());
        b = Vec::Ones(A.rows());
        dinv = inverse_diagonal(A);
        work = Vec::Zero(A.rows());
    }
};

Fixture& fixture(int n) {
    static std::map<int, Fixture> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, Fixture(n)).first;
    return it->second;
}

template <bool Parallel>
void BM_spmv(benchmark::State& st) {
    Fixture& f = fixture(static_cast<int>(st.range(0)));
    Vec y(f.A.rows());
    for (auto _ : st) {
        if constexpr (Parallel)
            kernels::spmv(f.A, f.x.data(), y.data());
        else
            kernels::spmv_serial(f.A, f.x.data(), y.data());
        benchmark::DoNotOptimize(y.data());
    }
    st.SetItemsProcessed(st.iterations() * f.A.nonZeros());
}

template <bool Parallel>
void BM_jacobi(benchmark::State& st) {
    Fixture& f = fixture(static_cast<int>(st.range(0)));
    Vec x = f.x;
    for (auto _ : st) {
        if constexpr (Parallel)
            kernels::jacobi_sweep(f.A, f.dinv.data(), 0.8, f.b.data(), x.data(), f.work.data());
        else
            kernels::jacobi_sweep_serial(f.A, f.dinv.data(), 0.8, f.b.data(), x.data(), f.work.data());
        benchmark::DoNotOptimize(x.data());
    }
    st.SetItemsProcessed(st.iterations() * f.A.nonZeros());
}

}  // namespace

BENCHMARK(BM_spmv<false>)->Arg(65)->Arg(129)->Arg(257)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_spmv<true>)->Arg(65)->Arg(129)->Arg(257)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_jacobi<false>)->Arg(65)->Arg(129)->Arg(257)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_jacobi<true>)->Arg(65)->Arg(129)->Arg(257)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
