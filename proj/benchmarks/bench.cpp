#include <benchmark/benchmark.h>

#include "smm/flag.hpp"
#include "smm/grassmann.hpp"
#include "smm/stiefel.hpp"

namespace {

using namespace smm;

FlagSignature bench_signature(int n) {
  return FlagSignature(n, {n / 3, 2 * n / 3});
}

void BM_flag_construct(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rotation q = haar_rotation(n, 1);
  FlagSignature sig = bench_signature(n);
  IsospectralParams params = params_traceless(sig);
  for (auto _ : state) {
    IsospectralPoint pt = flag_construct(q, sig, params);
    benchmark::DoNotOptimize(pt.x);
  }
}
BENCHMARK(BM_flag_construct)->Arg(30)->Arg(90)->Arg(240);

void BM_flag_membership(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  FlagSignature sig = bench_signature(n);
  IsospectralParams params = params_traceless(sig);
  IsospectralPoint pt = flag_construct(haar_rotation(n, 2), sig, params);
  for (auto _ : state) {
    FlagMembershipReport rep =
        flag_membership_full(pt.x, sig, params, 1e-9);
    benchmark::DoNotOptimize(rep.pass);
  }
}
BENCHMARK(BM_flag_membership)->Arg(30)->Arg(90)->Arg(240);

void BM_flag_extract(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  FlagSignature sig = bench_signature(n);
  IsospectralParams params = params_traceless(sig);
  IsospectralPoint pt = flag_construct(haar_rotation(n, 3), sig, params);
  for (auto _ : state) {
    FlagExtraction ext = flag_extract(pt);
    benchmark::DoNotOptimize(ext.q);
  }
}
BENCHMARK(BM_flag_extract)->Arg(30)->Arg(90)->Arg(240);

void BM_gr_membership(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  QuadraticParams params(1.0, 0.0);
  GrassmannPoint pt = gr_construct(haar_rotation(n, 4), n / 2, params);
  for (auto _ : state) {
    GrMembershipReport rep = gr_membership(pt.x, pt.k, params, 1e-9);
    benchmark::DoNotOptimize(rep.pass);
  }
}
BENCHMARK(BM_gr_membership)->Arg(30)->Arg(90)->Arg(240);

void BM_cartan_geodesic(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  Rotation q1 = haar_rotation(k, 5);
  Rotation q2 = haar_rotation(k, 6);
  Matrix d1 = Vector::LinSpaced(k, 1.0, 3.0).asDiagonal();
  Matrix d2 = Vector::LinSpaced(k, 0.5, 2.0).asDiagonal();
  SpdMatrix a(q1.mat() * d1 * q1.mat().transpose());
  SpdMatrix b(q2.mat() * d2 * q2.mat().transpose());
  for (auto _ : state) {
    SpdMatrix g = cartan_geodesic(a, b, 0.3);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_cartan_geodesic)->Arg(10)->Arg(40)->Arg(120);

}  // namespace

BENCHMARK_MAIN();
