#include <benchmark/benchmark.h>

#include <random>

#include "tangent/sturm.hpp"

namespace {

using namespace tangent;

Polynomial random_poly(std::mt19937_64& rng, int degree) {
    std::uniform_int_distribution<long> coeff(-9, 9);
    std::vector<BigRational> v(degree + 1);
    for (auto& c : v) c = BigRational(coeff(rng));
    if (v.back() == 0) v.back() = BigRational(1);
    return Polynomial(std::move(v));
}

void BM_SturmChain(benchmark::State& state) {
    std::mt19937_64 rng(5);
    Polynomial p = random_poly(rng, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(sturm_chain(p));
}
BENCHMARK(BM_SturmChain)->Arg(4)->Arg(6)->Arg(10);

void BM_CountRealRoots(benchmark::State& state) {
    std::mt19937_64 rng(9);
    Polynomial p = random_poly(rng, static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(count_real_roots(p, Interval::all()));
}
BENCHMARK(BM_CountRealRoots)->Arg(4)->Arg(6)->Arg(10);

void BM_CertifySign(benchmark::State& state) {
    // the inequality-(2) cofactor on its domain
    Polynomial t({rational(-8), rational(-5), rational(-2)});
    Interval domain = Interval::open(rational(0), rational(4));
    for (auto _ : state) benchmark::DoNotOptimize(certify_sign(t, domain));
}
BENCHMARK(BM_CertifySign);

}  // namespace
