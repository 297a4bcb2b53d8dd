#include <benchmark/benchmark.h>

#include <random>

#include "tangent/ratfunc.hpp"

namespace {

using namespace tangent;

Polynomial random_poly(std::mt19937_64& rng, int degree) {
    std::uniform_int_distribution<long> coeff(-9, 9);
    std::vector<BigRational> v(degree + 1);
    for (auto& c : v) c = BigRational(coeff(rng));
    if (v.back() == 0) v.back() = BigRational(1);
    return Polynomial(std::move(v));
}

void BM_TaylorShift(benchmark::State& state) {
    std::mt19937_64 rng(7);
    Polynomial p = random_poly(rng, static_cast<int>(state.range(0)));
    BigRational x0 = rational(3, 7);
    for (auto _ : state) benchmark::DoNotOptimize(taylor_shift(p, x0));
}
BENCHMARK(BM_TaylorShift)->Arg(6)->Arg(12)->Arg(24);

void BM_DoubleRootFactor(benchmark::State& state) {
    std::mt19937_64 rng(11);
    Polynomial num = random_poly(rng, static_cast<int>(state.range(0)));
    Polynomial den = random_poly(rng, 3);
    BigRational x0(1);
    while (den(x0) == 0) den = random_poly(rng, 3);
    RationalFunction f(num, den);
    BigRational k = f.derivative()(x0);
    RationalFunction line(Polynomial({BigRational(f(x0) - k * x0), k}),
                          Polynomial::constant(BigRational(1)));
    for (auto _ : state) benchmark::DoNotOptimize(double_root_factor(f, line, x0));
}
BENCHMARK(BM_DoubleRootFactor)->Arg(4)->Arg(8);

}  // namespace
