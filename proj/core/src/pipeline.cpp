#include "mqrng/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <thread>

#include "mqrng/extractors.hpp"

namespace mqrng {

const char* to_string(ExtractorKind kind) {
    switch (kind) {
    case ExtractorKind::raw: return "raw";
    case ExtractorKind::cmac: return "cmac";
    case ExtractorKind::two_source: return "two-source";
    }
    return "unknown";
}

ExtractorKind extractor_from_string(const std::string& name) {
    if (name == "raw")
        return ExtractorKind::raw;
    if (name == "cmac")
        return ExtractorKind::cmac;
    if (name == "two-source" || name == "two_source")
        return ExtractorKind::two_source;
    throw std::invalid_argument("unknown extractor: " + name);
}

double theoretical_rate(const RateModel& model) {
    if (model.sampling_rate <= 0 || model.n_extractors <= 0 ||
        model.bits_per_sample.num <= 0 || model.bits_per_sample.den <= 0)
        throw std::domain_error("theoretical_rate requires positive fields");
    const std::int64_t prod =
        model.sampling_rate * model.n_extractors * model.bits_per_sample.num;
    const std::int64_t den = model.bits_per_sample.den;
    // Split into quotient and remainder so exactly divisible products (every
    // table entry) convert without rounding.
    return static_cast<double>(prod / den) +
           static_cast<double>(prod % den) / static_cast<double>(den);
}

Rational bits_per_sample(ExtractorKind kind, int cmac_out_bits) {
    switch (kind) {
    case ExtractorKind::raw: return {8, 1};
    case ExtractorKind::cmac: return {cmac_out_bits, 16};
    case ExtractorKind::two_source: return {1, 6};
    }
    throw std::invalid_argument("unknown extractor kind");
}

void validate(const PipelineConfig& cfg) {
    if (cfg.channels.empty())
        throw std::invalid_argument("pipeline needs at least one channel");
    std::set<int> ids;
    for (const auto& ch : cfg.channels) {
        validate(ch);
        if (!ids.insert(ch.channel_id).second)
            throw std::invalid_argument("duplicate channel id");
    }
    validate(cfg.adc);
    if (cfg.block_samples == 0)
        throw std::invalid_argument("block_samples must be positive");

    switch (cfg.extractor) {
    case ExtractorKind::raw:
        break;
    case ExtractorKind::cmac:
        if (cfg.block_samples % 16 != 0)
            throw std::invalid_argument("cmac needs block_samples to be a multiple of 16");
        make_cmac_state({}, cfg.cmac_out_bits, cfg.cmac_input_entropy_k);
        break;
    case ExtractorKind::two_source: {
        if (cfg.block_samples % 3 != 0)
            throw std::invalid_argument(
                "two-source needs block_samples to be a multiple of 3");
        if (cfg.pairing.empty())
            throw std::invalid_argument("two-source needs a channel pairing");
        std::set<int> used;
        for (const auto& [a, b] : cfg.pairing) {
            if (a == b)
                throw std::invalid_argument("two-source pair uses one channel twice");
            if (!ids.count(a) || !ids.count(b))
                throw std::invalid_argument("two-source pair references unknown channel");
            if (!used.insert(a).second || !used.insert(b).second)
                throw std::invalid_argument("channel appears in more than one pair");
        }
        break;
    }
    }
}

namespace {

struct Lane {
    std::string label;
    std::vector<ChannelStream> streams; // one, or two for a pair
    std::optional<CmacState> cmac;
};

// Bounded handoff between one producing worker and the interleaver.
struct LaneQueue {
    std::deque<BitVector> blocks;
    std::mutex m;
    std::condition_variable room;
    std::condition_variable ready;
};

constexpr std::size_t kQueueDepth = 4;

const ChannelModel& channel_by_id(const PipelineConfig& cfg, int id) {
    for (const auto& ch : cfg.channels)
        if (ch.channel_id == id)
            return ch;
    throw std::invalid_argument("unknown channel id");
}

std::vector<Lane> build_lanes(const PipelineConfig& cfg) {
    std::vector<Lane> lanes;
    if (cfg.extractor == ExtractorKind::two_source) {
        auto pairs = cfg.pairing;
        std::sort(pairs.begin(), pairs.end());
        for (const auto& [a, b] : pairs) {
            Lane lane;
            lane.label = "pair" + std::to_string(a) + "-" + std::to_string(b);
            lane.streams.emplace_back(channel_by_id(cfg, a));
            lane.streams.emplace_back(channel_by_id(cfg, b));
            lanes.push_back(std::move(lane));
        }
        return lanes;
    }
    auto channels = cfg.channels;
    std::sort(channels.begin(), channels.end(),
              [](const ChannelModel& x, const ChannelModel& y) {
                  return x.channel_id < y.channel_id;
              });
    for (const auto& ch : channels) {
        Lane lane;
        lane.label = "ch" + std::to_string(ch.channel_id);
        lane.streams.emplace_back(ch);
        if (cfg.extractor == ExtractorKind::cmac)
            lane.cmac = make_cmac_state(default_cmac_key(ch.seed, static_cast<std::uint32_t>(ch.channel_id)),
                                        cfg.cmac_out_bits, cfg.cmac_input_entropy_k);
        lanes.push_back(std::move(lane));
    }
    return lanes;
}

BitVector produce_block(const PipelineConfig& cfg, Lane& lane) {
    if (cfg.extractor == ExtractorKind::two_source) {
        const auto a = digitize_block(lane.streams[0].next_block(cfg.block_samples), cfg.adc);
        const auto b = digitize_block(lane.streams[1].next_block(cfg.block_samples), cfg.adc);
        return extract_two_source(a.codes, b.codes);
    }
    const auto block = digitize_block(lane.streams[0].next_block(cfg.block_samples), cfg.adc);
    if (cfg.extractor == ExtractorKind::cmac) {
        const auto raw = extract_raw(block.codes);
        return extract_cmac(*lane.cmac, raw);
    }
    BitVector out;
    out.append_bytes(extract_raw(block.codes));
    return out;
}

int unit_bits(const PipelineConfig& cfg) {
    switch (cfg.extractor) {
    case ExtractorKind::raw: return 8;
    case ExtractorKind::cmac: return cfg.cmac_out_bits;
    case ExtractorKind::two_source: return 1;
    }
    return 8;
}

// Shared engine: produces `rounds` blocks per lane on a worker pool and
// hands them to `consume` strictly in (round, lane) order.
template <typename Consume>
void run_rounds(const PipelineConfig& cfg, std::vector<Lane>& lanes,
                std::size_t rounds, int workers, Consume&& consume) {
    const std::size_t nlanes = lanes.size();
    int nworkers = workers > 0 ? workers
                               : static_cast<int>(std::thread::hardware_concurrency());
    nworkers = std::clamp<int>(nworkers, 1, static_cast<int>(nlanes));

    std::vector<LaneQueue> queues(nlanes);
    auto worker = [&](int w) {
        // Lane state advances sequentially because each lane belongs to
        // exactly one worker.
        for (std::size_t r = 0; r < rounds; ++r) {
            for (std::size_t l = static_cast<std::size_t>(w); l < nlanes;
                 l += static_cast<std::size_t>(nworkers)) {
                BitVector block = produce_block(cfg, lanes[l]);
                std::unique_lock lock(queues[l].m);
                queues[l].room.wait(lock, [&] { return queues[l].blocks.size() < kQueueDepth; });
                queues[l].blocks.push_back(std::move(block));
                queues[l].ready.notify_one();
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nworkers));
    for (int w = 0; w < nworkers; ++w)
        pool.emplace_back(worker, w);

    for (std::size_t r = 0; r < rounds; ++r) {
        for (std::size_t l = 0; l < nlanes; ++l) {
            BitVector block;
            {
                std::unique_lock lock(queues[l].m);
                queues[l].ready.wait(lock, [&] { return !queues[l].blocks.empty(); });
                block = std::move(queues[l].blocks.front());
                queues[l].blocks.pop_front();
                queues[l].room.notify_one();
            }
            consume(r, l, block);
        }
    }
    for (auto& t : pool)
        t.join();
}

double lane_theoretical(const PipelineConfig& cfg, std::size_t nlanes) {
    RateModel rm;
    rm.sampling_rate = std::llround(cfg.adc.sample_rate);
    rm.n_extractors = static_cast<int>(nlanes);
    rm.bits_per_sample = bits_per_sample(cfg.extractor, cfg.cmac_out_bits);
    return theoretical_rate(rm);
}

} // namespace

PipelineResult run_pipeline(const PipelineConfig& cfg, std::size_t rounds, int workers) {
    validate(cfg);
    auto lanes = build_lanes(cfg);
    const std::size_t nlanes = lanes.size();
    const int ub = unit_bits(cfg);

    PipelineResult res;
    res.report.lane_bits.assign(nlanes, 0);
    for (const auto& lane : lanes)
        res.report.lane_labels.push_back(lane.label);

    // Blocks for one round are gathered, then merged unit by unit across
    // lanes in ascending lane order.
    std::vector<BitVector> round_blocks(nlanes);
    const auto t0 = std::chrono::steady_clock::now();
    run_rounds(cfg, lanes, rounds, workers,
               [&](std::size_t, std::size_t l, BitVector& block) {
                   res.report.lane_bits[l] += block.size();
                   round_blocks[l] = std::move(block);
                   if (l + 1 < nlanes)
                       return;
                   const std::size_t units = round_blocks[0].size() / static_cast<std::size_t>(ub);
                   for (std::size_t u = 0; u < units; ++u)
                       for (std::size_t k = 0; k < nlanes; ++k)
                           res.stream.append_bits(
                               round_blocks[k].read_bits(u * static_cast<std::size_t>(ub), ub), ub);
               });
    const auto t1 = std::chrono::steady_clock::now();

    res.report.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    res.report.total_bits = res.stream.size();
    res.report.measured_bps = res.report.wall_seconds > 0.0
                                  ? static_cast<double>(res.report.total_bits) / res.report.wall_seconds
                                  : 0.0;
    res.report.theoretical_bps = lane_theoretical(cfg, nlanes);
    return res;
}

ThroughputReport benchmark_throughput(const PipelineConfig& cfg,
                                      double duration_seconds,
                                      int workers) {
    if (!(duration_seconds >= 1.0))
        throw std::invalid_argument("benchmark duration must be at least 1 second");
    validate(cfg);
    auto lanes = build_lanes(cfg);

    ThroughputReport report;
    report.lane_bits.assign(lanes.size(), 0);
    for (const auto& lane : lanes)
        report.lane_labels.push_back(lane.label);
    report.theoretical_bps = lane_theoretical(cfg, lanes.size());

    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };
    // Run in bounded chunks, discarding the bits, until the clock runs out.
    // Chunks grow until each one costs a noticeable slice of wall time so
    // per-chunk thread startup stays negligible.
    std::size_t chunk_rounds = 8;
    while (elapsed() < duration_seconds) {
        const double before = elapsed();
        run_rounds(cfg, lanes, chunk_rounds, workers,
                   [&](std::size_t, std::size_t l, BitVector& block) {
                       report.lane_bits[l] += block.size();
                       report.total_bits += block.size();
                   });
        if (elapsed() - before < 0.2 && chunk_rounds < (1u << 16))
            chunk_rounds *= 2;
    }
    report.wall_seconds = elapsed();
    report.measured_bps = static_cast<double>(report.total_bits) / report.wall_seconds;
    return report;
}

} // namespace mqrng
