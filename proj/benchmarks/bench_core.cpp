#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "mqrng/adc.hpp"
#include "mqrng/entropy.hpp"
#include "mqrng/extractors.hpp"
#include "mqrng/philox.hpp"
#include "mqrng/pipeline.hpp"
#include "mqrng/source_model.hpp"

using namespace mqrng;

namespace {

ChannelModel bench_channel() {
    ChannelModel ch;
    ch.seed = 42;
    return ch;
}

AdcConfig bench_adc() {
    AdcConfig adc;
    adc.full_scale = 15.0;
    return adc;
}

void bm_sample_block(benchmark::State& state) {
    const ChannelModel ch = bench_channel();
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    std::uint64_t first = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_block(ch, first, n));
        first += n;
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n));
}
BENCHMARK(bm_sample_block)->Arg(1 << 12)->Arg(1 << 16);

void bm_digitize(benchmark::State& state) {
    const AdcConfig adc = bench_adc();
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const AnalogBlock block = sample_block(bench_channel(), 0, n);
    for (auto _ : state)
        benchmark::DoNotOptimize(digitize_block(block, adc));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n));
}
BENCHMARK(bm_digitize)->Arg(1 << 16);

void bm_extract_raw(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const auto codes = digitize_block(sample_block(bench_channel(), 0, n), bench_adc()).codes;
    for (auto _ : state)
        benchmark::DoNotOptimize(extract_raw(codes));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n));
}
BENCHMARK(bm_extract_raw)->Arg(1 << 16);

void bm_extract_cmac(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const auto raw = extract_raw(
        digitize_block(sample_block(bench_channel(), 0, n), bench_adc()).codes);
    CmacState cmac = make_cmac_state(default_cmac_key(42, 0));
    for (auto _ : state)
        benchmark::DoNotOptimize(extract_cmac(cmac, raw));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n));
}
BENCHMARK(bm_extract_cmac)->Arg(1 << 16);

void bm_extract_two_source(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0)) / 3 * 3;
    ChannelModel chb = bench_channel();
    chb.channel_id = 1;
    chb.seed = 43;
    const auto a = digitize_block(sample_block(bench_channel(), 0, n), bench_adc()).codes;
    const auto b = digitize_block(sample_block(chb, 0, n), bench_adc()).codes;
    for (auto _ : state)
        benchmark::DoNotOptimize(extract_two_source(a, b));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(n));
}
BENCHMARK(bm_extract_two_source)->Arg(1 << 16);

void bm_min_entropy(benchmark::State& state) {
    ConditionalModel m;
    m.adc.bits = 12;
    m.adc.full_scale = 15.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(worst_case_min_entropy(m));
}
BENCHMARK(bm_min_entropy);

void bm_pipeline(benchmark::State& state) {
    PipelineConfig cfg;
    for (int id = 0; id < 7; ++id) {
        ChannelModel ch = bench_channel();
        ch.channel_id = id;
        ch.seed = 42 + static_cast<std::uint64_t>(id);
        cfg.channels.push_back(ch);
    }
    cfg.adc = bench_adc();
    cfg.extractor = static_cast<ExtractorKind>(state.range(0));
    cfg.block_samples = 4800;
    if (cfg.extractor == ExtractorKind::two_source) {
        cfg.channels.pop_back();
        cfg.pairing = {{0, 1}, {2, 3}, {4, 5}};
    }
    std::uint64_t bits = 0;
    for (auto _ : state) {
        const auto res = run_pipeline(cfg, 4, 0);
        bits += res.report.total_bits;
        benchmark::DoNotOptimize(res.stream.bytes().data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(bits));
    state.SetLabel(to_string(cfg.extractor));
}
BENCHMARK(bm_pipeline)->Arg(0)->Arg(1)->Arg(2);

} // namespace

BENCHMARK_MAIN();
