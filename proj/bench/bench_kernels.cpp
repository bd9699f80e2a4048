// reference face loop vs the OpenMP gather kernel, one step on a 2D bump

#include <benchmark/benchmark.h>

#include <cmath>

#include "pks/parallel.hpp"
#include "pks/solver.hpp"

using namespace pks;

namespace {

struct Case {
    Potentials pot{LawPair(3, 2, 1)};
    Medium md;
    SimParams p;
    SimState s0;

    explicit Case(int n) {
        Grid g = Grid::plane(n, n, 4, 4);
        MediumSpec ms;
        ms.a_profile = AProfile::Rotating;
        ms.theta1 = 0.5;
        ms.kappa = 2;
        md = build_medium(g, ms);
        p.epsilon = 0.1;
        s0.rho.resize(g.size());
        s0.phi.resize(g.size());
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                double r = std::hypot(g.xc(i) - 2, g.yc(j) - 2);
                double w = 0.5 * (1 - std::tanh((r - 0.8) / 0.2));
                s0.rho[g.idx(i, j)] = 0.5 * w;
                s0.phi[g.idx(i, j)] = 0.5 * w;
            }
    }
};

template <bool Ref>
void BM_step(benchmark::State& st) {
    configure_threads();
    Case c(static_cast<int>(st.range(0)));
    Workspace ws;
    SimState s = c.s0;
    for (auto _ : st) {
        if constexpr (Ref) step_reference(s, c.p, c.md, c.pot, ws);
        else step(s, c.p, c.md, c.pot, ws);
        benchmark::DoNotOptimize(s.rho.data());
    }
    st.SetItemsProcessed(st.iterations() * st.range(0) * st.range(0));
}

} // namespace

BENCHMARK(BM_step<true>)->Name("step_reference")->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(BM_step<false>)->Name("step_parallel")->Arg(64)->Arg(128)->Arg(256);

BENCHMARK_MAIN();
