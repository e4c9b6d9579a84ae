#include "nanosyn/crossbar.hpp"
#include "nanosyn/device.hpp"
#include "nanosyn/learning.hpp"
#include "nanosyn/spatiotemporal.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace nanosyn;

namespace {

FrameSequence random_sample(std::size_t channels, std::size_t frames, std::uint64_t seed)
{
    FrameSequence s(0, channels, frames, ValueMode::analog_unit);
    rng_t rng(seed);
    for (auto& v : s.values) v = static_cast<float>(uniform01(rng));
    return s;
}

void BM_apply_pulse(benchmark::State& state)
{
    DeviceState d = DeviceState::at_min(DeviceParams{});
    int k = 0;
    for (auto _ : state) {
        d = apply_pulse(d, (++k & 64) ? PulseSpec::reset_pulse() : PulseSpec::set_pulse()).state;
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_apply_pulse);

void BM_forward(benchmark::State& state)
{
    const auto rows = static_cast<std::size_t>(state.range(0));
    const auto cols = static_cast<std::size_t>(state.range(1));
    const auto p = init_projection(rows, cols, {ProjectionMode::binary_perfect, {}, 1});
    std::vector<double> in(rows, 0.5), out(cols);
    for (auto _ : state) {
        p.forward(in, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rows * cols));
}
BENCHMARK(BM_forward)->Args({28, 1200})->Args({77, 200});

void BM_integrate_sample(benchmark::State& state)
{
    const auto hidden = static_cast<std::size_t>(state.range(0));
    const auto p = init_projection(28, hidden, {ProjectionMode::binary_perfect, {}, 1});
    const auto masks = generate_masks(hidden, 28, 0.25, 2);
    const auto s = random_sample(28, 28, 3);
    for (auto _ : state) benchmark::DoNotOptimize(integrate_sample(p, s, masks));
}
BENCHMARK(BM_integrate_sample)->Arg(200)->Arg(1200);

void BM_train_step(benchmark::State& state)
{
    const auto hidden = static_cast<std::size_t>(state.range(0));
    auto readout = init_readout(hidden, 10, {});
    rng_t rng(4);
    std::vector<float> in(hidden);
    for (auto& v : in) v = bernoulli(rng, 0.5) ? 1.0f : -1.0f;
    EnergyLedger ledger;
    int label = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(train_step(readout, in, label, ledger));
        label = (label + 1) % 10;
    }
}
BENCHMARK(BM_train_step)->Arg(200)->Arg(1200);

}  // namespace

BENCHMARK_MAIN();
