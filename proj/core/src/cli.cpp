#include "mqrng/cli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <span>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mqrng/adc.hpp"
#include "mqrng/config.hpp"
#include "mqrng/correlation.hpp"
#include "mqrng/entropy.hpp"
#include "mqrng/extractors.hpp"
#include "mqrng/pipeline.hpp"
#include "mqrng/sha256.hpp"
#include "mqrng/source_model.hpp"
#include "mqrng/stream_io.hpp"
#include "mqrng/sts.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace mqrng {

namespace {

constexpr std::size_t kIoChunk = 1 << 16; // samples per streaming step

// Output file that hashes everything it writes, so manifests get digests
// without a second pass over the data.
class HashedFile {
public:
    explicit HashedFile(const fs::path& path)
        : f_(path, std::ios::binary | std::ios::trunc), path_(path) {
        if (!f_)
            throw std::runtime_error(path.string() + ": cannot open for writing");
    }

    void write(const void* data, std::size_t n) {
        f_.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
        if (!f_)
            throw std::runtime_error(path_.string() + ": write failed");
        hasher_.update({static_cast<const std::uint8_t*>(data), n});
    }

    std::string close() {
        f_.close();
        if (!f_)
            throw std::runtime_error(path_.string() + ": close failed");
        return Sha256::hex(hasher_.finish());
    }

private:
    std::ofstream f_;
    Sha256 hasher_;
    fs::path path_;
};

// Streaming bit writer in either container format (binary header/trailer or
// ASCII '0'/'1' with a final newline).
class BitSink {
public:
    BitSink(HashedFile& out, bool ascii) : out_(out), ascii_(ascii) {
        if (!ascii_) {
            out_.write(kBitstreamMagic, sizeof kBitstreamMagic);
            std::uint8_t ver[4];
            for (int i = 0; i < 4; ++i)
                ver[i] = static_cast<std::uint8_t>(kBitstreamVersion >> (8 * i));
            out_.write(ver, 4);
        }
    }

    void append(std::uint64_t value, int nbits) {
        for (int i = nbits - 1; i >= 0; --i) {
            const bool bit = (value >> i) & 1;
            if (ascii_) {
                buf_.push_back(bit ? '1' : '0');
            } else {
                acc_ = static_cast<std::uint8_t>((acc_ << 1) | bit);
                if (++acc_bits_ == 8) {
                    buf_.push_back(static_cast<char>(acc_));
                    acc_ = 0;
                    acc_bits_ = 0;
                }
            }
            ++total_bits_;
        }
        if (buf_.size() >= (1u << 16))
            flush();
    }

    void append(const BitVector& bits) {
        for (std::size_t pos = 0; pos < bits.size(); pos += 56) {
            const int n = static_cast<int>(std::min<std::size_t>(56, bits.size() - pos));
            append(bits.read_bits(pos, n), n);
        }
    }

    std::uint64_t finish() {
        if (ascii_) {
            buf_.push_back('\n');
        } else if (acc_bits_ > 0) {
            buf_.push_back(static_cast<char>(acc_ << (8 - acc_bits_)));
            acc_ = 0;
            acc_bits_ = 0;
        }
        flush();
        if (!ascii_) {
            std::uint8_t trailer[8];
            for (int i = 0; i < 8; ++i)
                trailer[i] = static_cast<std::uint8_t>(total_bits_ >> (8 * i));
            out_.write(trailer, 8);
        }
        return total_bits_;
    }

private:
    void flush() {
        if (!buf_.empty()) {
            out_.write(buf_.data(), buf_.size());
            buf_.clear();
        }
    }

    HashedFile& out_;
    bool ascii_;
    std::string buf_;
    std::uint8_t acc_ = 0;
    int acc_bits_ = 0;
    std::uint64_t total_bits_ = 0;
};

void write_manifest(const fs::path& path, const json& doc) {
    std::ofstream f(path, std::ios::trunc);
    if (!f)
        throw std::runtime_error(path.string() + ": cannot open for writing");
    f << doc.dump(2) << "\n";
    if (!f)
        throw std::runtime_error(path.string() + ": write failed");
}

json manifest_base(const std::string& command) {
    json doc;
    doc["tool"] = "mqrng";
    doc["manifest_version"] = 1;
    doc["command"] = command;
    return doc;
}

void emit_report(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::trunc);
    if (!f)
        throw std::runtime_error(out_path + ": cannot open for writing");
    f << text;
    if (!f)
        throw std::runtime_error(out_path + ": write failed");
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(12);
    s << v;
    return s.str();
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const std::string& config_path, int channels, std::uint64_t seed,
                 std::uint64_t samples, const std::string& out_prefix) {
    const PipelineConfig cfg = config_path.empty()
                                   ? default_config(channels, ExtractorKind::raw, seed)
                                   : parse_config(config_path);

    json doc = manifest_base("simulate");
    doc["config"] = config_to_text(cfg);
    doc["samples_per_channel"] = samples;
    json outputs = json::object();

    for (const auto& ch : cfg.channels) {
        ChannelStream stream(ch);
        const fs::path analog_path = out_prefix + ".ch" + std::to_string(ch.channel_id) + ".analog.f64";
        const fs::path codes_path = out_prefix + ".ch" + std::to_string(ch.channel_id) + ".codes.u16";
        HashedFile analog_out(analog_path);
        HashedFile codes_out(codes_path);

        std::uint64_t left = samples;
        std::string abuf, cbuf;
        while (left > 0) {
            const std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(left, kIoChunk));
            const AnalogBlock block = stream.next_block(n);
            const DigitizedBlock dig = digitize_block(block, cfg.adc);

            abuf.clear();
            cbuf.clear();
            for (double v : block.samples) {
                const std::uint64_t u = std::bit_cast<std::uint64_t>(v);
                for (int i = 0; i < 8; ++i)
                    abuf.push_back(static_cast<char>(u >> (8 * i)));
            }
            for (std::uint16_t c : dig.codes) {
                cbuf.push_back(static_cast<char>(c & 0xFF));
                cbuf.push_back(static_cast<char>(c >> 8));
            }
            analog_out.write(abuf.data(), abuf.size());
            codes_out.write(cbuf.data(), cbuf.size());
            left -= n;
        }
        outputs[analog_path.string()] = analog_out.close();
        outputs[codes_path.string()] = codes_out.close();
    }

    doc["outputs"] = outputs;
    write_manifest(out_prefix + ".manifest.json", doc);
    std::cout << "simulate: wrote " << cfg.channels.size() << " channel(s) x "
              << samples << " sample(s) to " << out_prefix << ".*\n";
    return 0;
}

// ----------------------------------------------------------------- extract

// Reads u16 codes in bounded chunks, keeping chunk boundaries aligned to the
// extractor group size.
class CodeReader {
public:
    explicit CodeReader(const fs::path& path) : f_(path, std::ios::binary), path_(path) {
        if (!f_)
            throw std::runtime_error(path.string() + ": cannot open for reading");
    }

    // Returns up to `limit` codes, a multiple of `align` except at EOF.
    std::vector<std::uint16_t> next(std::size_t limit, std::size_t align) {
        std::vector<char> raw(2 * limit);
        f_.read(raw.data(), static_cast<std::streamsize>(raw.size()));
        const std::size_t got = static_cast<std::size_t>(f_.gcount());
        if (got % 2 != 0)
            throw std::runtime_error(path_.string() + ": truncated 16-bit code");
        std::size_t keep = got / 2;
        if (keep == limit)
            keep -= keep % align; // hold back the ragged tail for the next read
        std::vector<std::uint16_t> codes(keep);
        for (std::size_t i = 0; i < keep; ++i)
            codes[i] = static_cast<std::uint16_t>(
                static_cast<unsigned char>(raw[2 * i]) |
                (static_cast<unsigned char>(raw[2 * i + 1]) << 8));
        const std::size_t unread = got - 2 * keep;
        if (unread > 0)
            f_.seekg(-static_cast<std::streamoff>(unread), std::ios::cur);
        return codes;
    }

private:
    std::ifstream f_;
    fs::path path_;
};

int cmd_extract(const std::string& in_path, const std::string& in2_path,
                const std::string& extractor_name, const std::string& out_path,
                bool ascii, std::uint64_t seed, int channel) {
    const ExtractorKind kind = extractor_from_string(extractor_name);
    if (kind == ExtractorKind::two_source && in2_path.empty())
        throw std::invalid_argument("two-source extraction needs a second input (--in2)");
    if (kind != ExtractorKind::two_source && !in2_path.empty())
        throw std::invalid_argument("--in2 only applies to the two-source extractor");

    HashedFile out(out_path);
    BitSink sink(out, ascii);
    std::uint64_t codes_in = 0;

    if (kind == ExtractorKind::two_source) {
        constexpr std::size_t chunk = kIoChunk - kIoChunk % 3;
        CodeReader a(in_path), b(in2_path);
        for (;;) {
            auto ca = a.next(chunk, 3);
            auto cb = b.next(chunk, 3);
            const std::size_t n = std::min(ca.size(), cb.size()) / 3 * 3;
            if (n == 0)
                break;
            codes_in += 2 * n;
            sink.append(extract_two_source(std::span(ca).first(n), std::span(cb).first(n)));
            if (ca.size() < chunk || cb.size() < chunk)
                break;
        }
    } else if (kind == ExtractorKind::cmac) {
        CmacState state = make_cmac_state(default_cmac_key(seed, static_cast<std::uint32_t>(channel)));
        CodeReader in(in_path);
        for (;;) {
            auto codes = in.next(kIoChunk, 16);
            const std::size_t n = codes.size() / 16 * 16; // drop any ragged tail
            if (n == 0)
                break;
            codes_in += n;
            const auto raw = extract_raw(std::span(codes).first(n));
            sink.append(extract_cmac(state, raw));
            if (codes.size() < kIoChunk)
                break;
        }
    } else {
        CodeReader in(in_path);
        for (;;) {
            auto codes = in.next(kIoChunk, 1);
            if (codes.empty())
                break;
            codes_in += codes.size();
            const auto raw = extract_raw(codes);
            for (std::uint8_t byte : raw)
                sink.append(byte, 8);
            if (codes.size() < kIoChunk)
                break;
        }
    }

    const std::uint64_t bits = sink.finish();
    const std::string digest = out.close();

    json doc = manifest_base("extract");
    doc["extractor"] = to_string(kind);
    doc["format"] = ascii ? "ascii" : "bin";
    if (kind == ExtractorKind::cmac) {
        doc["seed"] = seed;
        doc["channel"] = channel;
    }
    json inputs = json::object();
    inputs[in_path] = sha256_file_hex(in_path);
    if (!in2_path.empty())
        inputs[in2_path] = sha256_file_hex(in2_path);
    doc["inputs"] = inputs;
    doc["codes_consumed"] = codes_in;
    doc["output_bits"] = bits;
    doc["outputs"] = {{out_path, digest}};
    write_manifest(out_path + ".manifest.json", doc);

    std::cout << "extract: " << codes_in << " code(s) -> " << bits << " bit(s) ["
              << to_string(kind) << "]\n";
    return 0;
}

// ------------------------------------------------------------------ assess

int cmd_assess(const std::string& in_path, int shuffles, std::uint64_t seed,
               double min_bits, const std::string& config_path, int channel,
               const std::string& out_path) {
    const auto symbols = read_symbols(in_path);

    EntropyReport report;
    report.h_min_conditional = std::numeric_limits<double>::quiet_NaN();
    report.sample_count = symbols.size();
    report.mcv = mcv_min_entropy(std::span<const std::uint8_t>(symbols), 256);
    report.iid = iid_permutation_test(symbols, shuffles, seed);

    if (!config_path.empty()) {
        const PipelineConfig cfg = parse_config(config_path);
        for (const auto& ch : cfg.channels) {
            if (ch.channel_id == channel) {
                ConditionalModel cm;
                cm.sigma_q2 = ch.sigma_q2;
                cm.sigma_e2 = ch.sigma_e2;
                cm.adc = cfg.adc;
                report.h_min_conditional = worst_case_min_entropy(cm);
                break;
            }
        }
        if (std::isnan(report.h_min_conditional))
            throw std::invalid_argument("channel " + std::to_string(channel) +
                                        " not present in " + config_path);
    }

    const bool entropy_ok = report.mcv.bits > 0.0 && report.mcv.bits >= min_bits;
    const bool pass = entropy_ok && report.iid.pass;

    std::ostringstream text;
    text << "verdict = " << (pass ? "pass" : "fail") << "\n";
    text << "samples = " << report.sample_count << "\n";
    text << "mcv.p_hat = " << fmt(report.mcv.p_hat) << "\n";
    text << "mcv.p_upper = " << fmt(report.mcv.p_upper) << "\n";
    text << "mcv.bits = " << fmt(report.mcv.bits) << "\n";
    if (!std::isnan(report.h_min_conditional))
        text << "h_min_conditional = " << fmt(report.h_min_conditional) << "\n";
    text << "iid.pass = " << (report.iid.pass ? "true" : "false") << "\n";
    text << "iid.shuffles = " << report.iid.num_shuffles << "\n";
    for (const auto& st : report.iid.statistics)
        text << "iid." << st.name << " = " << fmt(st.original) << " greater=" << st.count_greater
             << " equal=" << st.count_equal << " " << (st.fail ? "FAIL" : "ok") << "\n";
    emit_report(text.str(), out_path);

    if (!out_path.empty()) {
        json doc = manifest_base("assess");
        doc["inputs"] = {{in_path, sha256_file_hex(in_path)}};
        doc["shuffles"] = shuffles;
        doc["seed"] = seed;
        doc["verdict"] = pass ? "pass" : "fail";
        doc["outputs"] = {{out_path, sha256_file_hex(out_path)}};
        write_manifest(out_path + ".manifest.json", doc);
    }
    return pass ? 0 : 1;
}

// -------------------------------------------------------------------- test

int cmd_test(const std::string& in_path, const std::string& out_path) {
    const BitVector bits = read_bits_auto(in_path);
    const TestReport report = run_sts_subset(bits);

    std::ostringstream text;
    text << "verdict = " << (report.pass ? "pass" : "fail") << "\n";
    text << "bits = " << report.bit_count << "\n";
    for (const auto& r : report.results)
        text << "test." << r.name << ".p_value = " << fmt(r.p_value) << " "
             << (r.pass ? "ok" : "FAIL") << "\n";
    emit_report(text.str(), out_path);

    if (!out_path.empty()) {
        json doc = manifest_base("test");
        doc["inputs"] = {{in_path, sha256_file_hex(in_path)}};
        doc["verdict"] = report.pass ? "pass" : "fail";
        doc["outputs"] = {{out_path, sha256_file_hex(out_path)}};
        write_manifest(out_path + ".manifest.json", doc);
    }
    return report.pass ? 0 : 1;
}

// --------------------------------------------------------------- correlate

int cmd_correlate(const std::string& in_a, const std::string& in_b, int max_lag,
                  double threshold, const std::string& out_path) {
    const auto a = read_symbols(in_a);
    const auto b = read_symbols(in_b);
    CorrelationReport rep = cross_correlation(a, b, max_lag);
    rep.a_id = in_a;
    rep.b_id = in_b;

    const double worst = std::max(std::abs(rep.max_positive), std::abs(rep.max_negative));
    const bool pass = threshold <= 0.0 || worst <= threshold;

    std::ostringstream text;
    text << "pair = " << rep.a_id << " :: " << rep.b_id << "\n";
    text << "n = " << rep.n << "\n";
    text << "reference = " << fmt(rep.reference) << "\n";
    text << "max_positive = " << fmt(rep.max_positive) << "\n";
    text << "max_negative = " << fmt(rep.max_negative) << "\n";
    if (threshold > 0.0)
        text << "verdict = " << (pass ? "pass" : "fail") << " (threshold " << fmt(threshold)
             << ")\n";
    text << "# lag r\n";
    for (int lag = -rep.max_lag; lag <= rep.max_lag; ++lag)
        text << lag << " " << fmt(rep.values[static_cast<std::size_t>(lag + rep.max_lag)])
             << "\n";
    emit_report(text.str(), out_path);

    if (!out_path.empty()) {
        json doc = manifest_base("correlate");
        doc["inputs"] = {{in_a, sha256_file_hex(in_a)}, {in_b, sha256_file_hex(in_b)}};
        doc["max_lag"] = max_lag;
        doc["outputs"] = {{out_path, sha256_file_hex(out_path)}};
        write_manifest(out_path + ".manifest.json", doc);
    }
    return pass ? 0 : 1;
}

// ------------------------------------------------------------------- bench

int cmd_bench(const std::string& config_path, int channels, const std::string& extractor_name,
              std::uint64_t seed, double duration, int workers, const std::string& out_path) {
    const PipelineConfig cfg =
        config_path.empty()
            ? default_config(channels, extractor_from_string(extractor_name), seed)
            : parse_config(config_path);

    const ThroughputReport rep = benchmark_throughput(cfg, duration, workers);

    std::ostringstream text;
    text << "extractor = " << to_string(cfg.extractor) << "\n";
    text << "lanes = " << rep.lane_labels.size() << "\n";
    text << "wall_seconds = " << fmt(rep.wall_seconds) << "\n";
    text << "total_bits = " << rep.total_bits << "\n";
    text << "measured_bps = " << fmt(rep.measured_bps) << "\n";
    text << "theoretical_bps = " << fmt(rep.theoretical_bps) << "\n";
    for (std::size_t i = 0; i < rep.lane_labels.size(); ++i)
        text << "lane." << rep.lane_labels[i] << ".bits = " << rep.lane_bits[i] << "\n";
    emit_report(text.str(), out_path);

    if (!out_path.empty()) {
        json doc = manifest_base("bench");
        doc["config"] = config_to_text(cfg);
        doc["duration"] = duration;
        doc["workers"] = workers;
        write_manifest(out_path + ".manifest.json", doc);
    }
    return 0;
}

// ------------------------------------------------------------------- rates

int cmd_rates(std::int64_t rate, int extractors, std::int64_t bits_num,
              std::int64_t bits_den, const std::string& out_path) {
    std::ostringstream text;
    if (rate > 0) {
        RateModel m{rate, extractors, {bits_num, bits_den}};
        text << "rate_bps = " << fmt(theoretical_rate(m)) << "\n";
    } else {
        // The three reference configurations of the generation-rate table.
        const struct {
            const char* name;
            RateModel m;
        } rows[] = {
            {"raw", {55000000, 7, {8, 1}}},
            {"cmac", {50000000, 7, {63, 16}}},
            {"two-source", {52000000, 3, {1, 6}}},
        };
        for (const auto& row : rows) {
            text << row.name << " = " << row.m.sampling_rate << " x " << row.m.n_extractors
                 << " x " << row.m.bits_per_sample.num << "/" << row.m.bits_per_sample.den
                 << " = " << fmt(theoretical_rate(row.m)) << " bits/s\n";
        }
    }
    emit_report(text.str(), out_path);
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"multiplexed vacuum-noise QRNG toolkit"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "generate per-channel analog and digitized files");
    std::string sim_config, sim_out;
    int sim_channels = 7;
    std::uint64_t sim_seed = 1, sim_samples = 1000000;
    sim->add_option("--config", sim_config, "config file (overrides --channels/--seed)");
    sim->add_option("--channels", sim_channels, "channel count for the default config")
        ->check(CLI::Range(1, 64));
    sim->add_option("--seed", sim_seed, "base seed for the default config");
    sim->add_option("--samples", sim_samples, "samples per channel");
    sim->add_option("--out", sim_out, "output prefix")->required();

    // extract
    auto* ext = app.add_subcommand("extract", "run an extractor over a codes file");
    std::string ext_in, ext_in2, ext_kind = "raw", ext_out, ext_format = "bin";
    std::uint64_t ext_seed = 0;
    int ext_channel = 0;
    ext->add_option("--in", ext_in, "u16 codes file")->required();
    ext->add_option("--in2", ext_in2, "second u16 codes file (two-source)");
    ext->add_option("--extractor", ext_kind, "raw | cmac | two-source");
    ext->add_option("--out", ext_out, "output bitstream file")->required();
    ext->add_option("--format", ext_format, "bin | ascii")
        ->check(CLI::IsMember({"bin", "ascii"}));
    ext->add_option("--seed", ext_seed, "cmac key seed");
    ext->add_option("--channel", ext_channel, "cmac key channel id");

    // assess
    auto* ass = app.add_subcommand("assess", "entropy assessment (MCV + IID battery)");
    std::string ass_in, ass_out, ass_config;
    int ass_shuffles = 1000, ass_channel = 0;
    std::uint64_t ass_seed = 0;
    double ass_min_bits = 0.0;
    ass->add_option("--in", ass_in, "byte-symbol or bitstream file")->required();
    ass->add_option("--shuffles", ass_shuffles, "permutation count");
    ass->add_option("--seed", ass_seed, "shuffle seed");
    ass->add_option("--min-bits", ass_min_bits, "fail below this MCV estimate");
    ass->add_option("--config", ass_config, "also evaluate the analytic bound for --channel");
    ass->add_option("--channel", ass_channel, "channel id for the analytic bound");
    ass->add_option("--out", ass_out, "report file (default stdout)");

    // test
    auto* tst = app.add_subcommand("test", "statistical test subset on a bitstream");
    std::string tst_in, tst_out;
    tst->add_option("--in", tst_in, "bitstream file (binary or ASCII)")->required();
    tst->add_option("--out", tst_out, "report file (default stdout)");

    // correlate
    auto* cor = app.add_subcommand("correlate", "pairwise cross-correlation of two byte files");
    std::string cor_a, cor_b, cor_out;
    int cor_lag = 100;
    double cor_threshold = 0.0;
    cor->add_option("--in", cor_a, "first byte file")->required();
    cor->add_option("--in2", cor_b, "second byte file")->required();
    cor->add_option("--max-lag", cor_lag, "lag range");
    cor->add_option("--threshold", cor_threshold, "fail when max |r| exceeds this");
    cor->add_option("--out", cor_out, "report file (default stdout)");

    // bench
    auto* ben = app.add_subcommand("bench", "measure pipeline throughput");
    std::string ben_config, ben_kind = "raw", ben_out;
    int ben_channels = 7, ben_workers = 0;
    std::uint64_t ben_seed = 1;
    double ben_duration = 10.0;
    ben->add_option("--config", ben_config, "config file (overrides defaults)");
    ben->add_option("--channels", ben_channels, "channel count")->check(CLI::Range(1, 64));
    ben->add_option("--extractor", ben_kind, "raw | cmac | two-source");
    ben->add_option("--seed", ben_seed, "base seed");
    ben->add_option("--duration", ben_duration, "seconds to run (>= 1)");
    ben->add_option("--workers", ben_workers, "worker threads (0 = hardware)");
    ben->add_option("--out", ben_out, "report file (default stdout)");

    // rates
    auto* rat = app.add_subcommand("rates", "theoretical generation-rate accounting");
    std::int64_t rat_rate = 0, rat_num = 8, rat_den = 1;
    int rat_ext = 7;
    std::string rat_out;
    rat->add_option("--rate", rat_rate, "sampling rate, samples/s (omit for the table)");
    rat->add_option("--extractors", rat_ext, "extractor count");
    rat->add_option("--bits-num", rat_num, "bits per sample, numerator");
    rat->add_option("--bits-den", rat_den, "bits per sample, denominator");
    rat->add_option("--out", rat_out, "report file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed())
            return cmd_simulate(sim_config, sim_channels, sim_seed, sim_samples, sim_out);
        if (ext->parsed())
            return cmd_extract(ext_in, ext_in2, ext_kind, ext_out, ext_format == "ascii",
                               ext_seed, ext_channel);
        if (ass->parsed())
            return cmd_assess(ass_in, ass_shuffles, ass_seed, ass_min_bits, ass_config,
                              ass_channel, ass_out);
        if (tst->parsed())
            return cmd_test(tst_in, tst_out);
        if (cor->parsed())
            return cmd_correlate(cor_a, cor_b, cor_lag, cor_threshold, cor_out);
        if (ben->parsed())
            return cmd_bench(ben_config, ben_channels, ben_kind, ben_seed, ben_duration,
                             ben_workers, ben_out);
        if (rat->parsed())
            return cmd_rates(rat_rate, rat_ext, rat_num, rat_den, rat_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "error: no command\n";
    return 2;
}

} // namespace mqrng
