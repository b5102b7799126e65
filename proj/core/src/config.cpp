#include "mqrng/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mqrng {

PipelineConfig default_config(int channels, ExtractorKind kind, std::uint64_t base_seed) {
    if (channels < 1)
        throw std::invalid_argument("default_config needs at least one channel");
    PipelineConfig cfg;
    cfg.extractor = kind;
    cfg.adc.bits = 12;
    cfg.adc.full_scale = 15.0;
    cfg.adc.sample_rate = 55e6;
    cfg.block_samples = 4800; // divisible by 16 and 3, so every extractor runs
    for (int id = 0; id < channels; ++id) {
        ChannelModel ch;
        ch.channel_id = id;
        ch.sigma_q2 = 10.0;
        ch.sigma_e2 = 1.0;
        ch.seed = base_seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(id + 1);
        cfg.channels.push_back(ch);
    }
    if (kind == ExtractorKind::two_source)
        for (int a = 0; a + 1 < channels; a += 2)
            cfg.pairing.emplace_back(a, a + 1);
    return cfg;
}

namespace {

struct ParseCursor {
    std::string name;
    int line = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::runtime_error(name + ":" + std::to_string(line) + ": " + what);
    }
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

double parse_f64(std::string_view v, const ParseCursor& at) {
    const std::string s(v);
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || s.empty())
        at.fail("expected a number, got '" + s + "'");
    return x;
}

std::uint64_t parse_u64(std::string_view v, const ParseCursor& at) {
    std::uint64_t x = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size())
        at.fail("expected an unsigned integer, got '" + std::string(v) + "'");
    return x;
}

int parse_int(std::string_view v, const ParseCursor& at) {
    int x = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size())
        at.fail("expected an integer, got '" + std::string(v) + "'");
    return x;
}

// "0-1, 2-3, 4-5" (commas or spaces between pairs)
std::vector<std::pair<int, int>> parse_pairing(std::string_view v, const ParseCursor& at) {
    std::vector<std::pair<int, int>> pairs;
    std::string token;
    std::istringstream in{std::string(v)};
    std::string chunk;
    while (std::getline(in, chunk, ',')) {
        std::istringstream parts(chunk);
        while (parts >> token) {
            const auto dash = token.find('-');
            if (dash == std::string::npos || dash == 0 || dash + 1 == token.size())
                at.fail("expected pair as <a>-<b>, got '" + token + "'");
            pairs.emplace_back(parse_int(token.substr(0, dash), at),
                               parse_int(token.substr(dash + 1), at));
        }
    }
    if (pairs.empty())
        at.fail("empty pairing");
    return pairs;
}

} // namespace

PipelineConfig parse_config_text(std::string_view text, const std::string& name) {
    PipelineConfig cfg;
    cfg.channels.clear();

    enum class Section { none, adc, pipeline, channel };
    Section section = Section::none;
    ChannelModel* channel = nullptr;

    ParseCursor at{name, 0};
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++at.line;

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                at.fail("unterminated section header");
            const std::string_view header = trim(line.substr(1, line.size() - 2));
            if (header == "adc") {
                section = Section::adc;
            } else if (header == "pipeline") {
                section = Section::pipeline;
            } else if (header.substr(0, 7) == "channel") {
                const std::string_view id_text = trim(header.substr(7));
                if (id_text.empty())
                    at.fail("channel section needs an id: [channel <id>]");
                ChannelModel ch;
                ch.channel_id = parse_int(id_text, at);
                cfg.channels.push_back(ch);
                channel = &cfg.channels.back();
                section = Section::channel;
            } else {
                at.fail("unknown section '" + std::string(header) + "'");
            }
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            at.fail("expected key = value");
        const std::string key{trim(line.substr(0, eq))};
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            at.fail("expected key = value");

        switch (section) {
        case Section::none:
            at.fail("key outside any section");
        case Section::adc:
            if (key == "bits")
                cfg.adc.bits = parse_int(value, at);
            else if (key == "full_scale")
                cfg.adc.full_scale = parse_f64(value, at);
            else if (key == "sample_rate")
                cfg.adc.sample_rate = parse_f64(value, at);
            else
                at.fail("unknown adc key '" + key + "'");
            break;
        case Section::pipeline:
            if (key == "extractor")
                cfg.extractor = extractor_from_string(std::string(value));
            else if (key == "block_samples")
                cfg.block_samples = parse_u64(value, at);
            else if (key == "cmac_out_bits")
                cfg.cmac_out_bits = parse_int(value, at);
            else if (key == "cmac_input_entropy_k")
                cfg.cmac_input_entropy_k = parse_f64(value, at);
            else if (key == "pairing")
                cfg.pairing = parse_pairing(value, at);
            else
                at.fail("unknown pipeline key '" + key + "'");
            break;
        case Section::channel:
            if (key == "sigma_q2")
                channel->sigma_q2 = parse_f64(value, at);
            else if (key == "sigma_e2")
                channel->sigma_e2 = parse_f64(value, at);
            else if (key == "lo_power_ref_mw")
                channel->lo_power_ref_mw = parse_f64(value, at);
            else if (key == "seed")
                channel->seed = parse_u64(value, at);
            else
                at.fail("unknown channel key '" + key + "'");
            break;
        }
    }

    try {
        validate(cfg);
    } catch (const std::exception& e) {
        throw std::runtime_error(name + ": " + e.what());
    }
    return cfg;
}

PipelineConfig parse_config(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f)
        throw std::runtime_error(path.string() + ": cannot open for reading");
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_config_text(buf.str(), path.string());
}

std::string config_to_text(const PipelineConfig& cfg) {
    std::ostringstream out;
    out.precision(17);
    out << "[adc]\n";
    out << "bits = " << cfg.adc.bits << "\n";
    out << "full_scale = " << cfg.adc.full_scale << "\n";
    out << "sample_rate = " << cfg.adc.sample_rate << "\n\n";

    out << "[pipeline]\n";
    out << "extractor = " << to_string(cfg.extractor) << "\n";
    out << "block_samples = " << cfg.block_samples << "\n";
    if (cfg.extractor == ExtractorKind::cmac) {
        out << "cmac_out_bits = " << cfg.cmac_out_bits << "\n";
        out << "cmac_input_entropy_k = " << cfg.cmac_input_entropy_k << "\n";
    }
    if (!cfg.pairing.empty()) {
        out << "pairing =";
        for (std::size_t i = 0; i < cfg.pairing.size(); ++i)
            out << (i ? ", " : " ") << cfg.pairing[i].first << "-" << cfg.pairing[i].second;
        out << "\n";
    }

    for (const auto& ch : cfg.channels) {
        out << "\n[channel " << ch.channel_id << "]\n";
        out << "sigma_q2 = " << ch.sigma_q2 << "\n";
        out << "sigma_e2 = " << ch.sigma_e2 << "\n";
        out << "lo_power_ref_mw = " << ch.lo_power_ref_mw << "\n";
        out << "seed = " << ch.seed << "\n";
    }
    return out.str();
}

void write_config(const std::filesystem::path& path, const PipelineConfig& cfg) {
    std::ofstream f(path, std::ios::trunc);
    if (!f)
        throw std::runtime_error(path.string() + ": cannot open for writing");
    f << config_to_text(cfg);
    if (!f)
        throw std::runtime_error(path.string() + ": write failed");
}

} // namespace mqrng
