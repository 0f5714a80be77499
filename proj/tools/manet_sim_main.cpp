#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "manetsim/config.hpp"
#include "manetsim/simulation.hpp"
#include "manetsim/sweep.hpp"

namespace {

using namespace manetsim;

std::vector<std::pair<std::string, std::string>> overrides_from_extras(
    const std::vector<std::string>& extras) {
    std::vector<std::pair<std::string, std::string>> out;
    const std::vector<std::string>& args = extras;
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::string key = args[i];
        if (key.rfind("--", 0) != 0) {
            throw ConfigError("expected `--key value` override, got `" + key + "`");
        }
        key = key.substr(2);
        std::string value;
        const auto eq = key.find('=');
        if (eq != std::string::npos) {
            value = key.substr(eq + 1);
            key = key.substr(0, eq);
        } else {
            if (i + 1 >= args.size()) {
                throw ConfigError("override `--" + key + "` is missing a value");
            }
            value = args[++i];
        }
        out.emplace_back(key, value);
    }
    return out;
}

ScenarioConfig load_config(const std::optional<std::string>& config_path,
                           const std::vector<std::string>& extras) {
    ScenarioConfig cfg;
    if (config_path) {
        cfg = parse_config_file(*config_path);
    }
    return apply_overrides(cfg, overrides_from_extras(extras));
}

std::vector<double> parse_double_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const std::string item =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (end == item.c_str() || *end != '\0') {
            throw ConfigError("invalid value in --" + key + ": `" + item + "`");
        }
        out.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    // Either `a..b` (inclusive range) or a comma list.
    const auto dots = text.find("..");
    if (dots != std::string::npos) {
        const auto lo = std::stoull(text.substr(0, dots));
        const auto hi = std::stoull(text.substr(dots + 2));
        if (hi < lo) {
            throw ConfigError("invalid --seeds range: " + text);
        }
        std::vector<std::uint64_t> out;
        for (auto s = lo; s <= hi; ++s) out.push_back(s);
        return out;
    }
    std::vector<std::uint64_t> out;
    for (double v : parse_double_list("seeds", text)) {
        out.push_back(static_cast<std::uint64_t>(v));
    }
    return out;
}

std::vector<Protocol> parse_protocol_list(const std::string& text) {
    std::vector<Protocol> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const std::string item =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        out.push_back(protocol_from_name(item));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

void print_report(const MetricsReport& r) {
    auto opt4 = [](const std::optional<double>& v) {
        if (!v) return std::string("nan");
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.4f", *v);
        return std::string(buf);
    };
    char buf[64];
    std::printf("sent = %llu\n", static_cast<unsigned long long>(r.sent));
    std::printf("received = %llu\n", static_cast<unsigned long long>(r.received));
    std::printf("pdf_percent = %s\n", opt4(r.pdf).c_str());
    std::printf("avg_delay_s = %s\n", opt4(r.avg_delay_s).c_str());
    std::snprintf(buf, sizeof(buf), "%.2f", r.throughput_kbps);
    std::printf("throughput_kbps = %s\n", buf);
    std::printf("routing_pkts = %llu\n", static_cast<unsigned long long>(r.routing_packets));
    std::printf("routing_bytes = %llu\n", static_cast<unsigned long long>(r.routing_bytes));
    std::printf("data_bytes_delivered = %llu\n",
                static_cast<unsigned long long>(r.data_bytes_delivered));
    std::printf("data_bytes_forwarded = %llu\n",
                static_cast<unsigned long long>(r.data_bytes_forwarded));
    for (int i = 0; i < kDropReasonCount; ++i) {
        std::string key = drop_reason_name(static_cast<DropReason>(i));
        for (auto& c : key) c = static_cast<char>(std::tolower(c));
        std::printf("drop_%s = %llu\n", key.c_str(), static_cast<unsigned long long>(r.drops[i]));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic AODV/DSDV mobile ad hoc network simulator"};
    app.require_subcommand(1);

    std::optional<std::string> config_path;
    std::string trace_path = "trace.tr";
    auto* run_cmd = app.add_subcommand("run", "Execute one scenario and print its metrics");
    run_cmd->add_option("--config", config_path, "Config file (flat key = value lines)");
    run_cmd->add_option("--trace", trace_path, "Trace output file");
    run_cmd->allow_extras();

    std::optional<std::string> sweep_config;
    std::string pauses = "0,20,40,60,80,100";
    std::string seeds = "1..5";
    std::string protocols = "aodv,dsdv";
    std::string csv_out = "results.csv";
    std::optional<std::string> trace_dir;
    auto* sweep_cmd =
        app.add_subcommand("sweep", "Run a pause-time sweep and write a results CSV");
    sweep_cmd->add_option("--config", sweep_config, "Config file (flat key = value lines)");
    sweep_cmd->add_option("--pauses", pauses, "Comma-separated pause times");
    sweep_cmd->add_option("--seeds", seeds, "Seeds, `a..b` or comma list");
    sweep_cmd->add_option("--protocols", protocols, "Comma-separated protocols");
    sweep_cmd->add_option("--out", csv_out, "Results CSV path");
    sweep_cmd->add_option("--trace-dir", trace_dir, "Directory for per-run trace files");
    sweep_cmd->allow_extras();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (run_cmd->parsed()) {
            const ScenarioConfig cfg = load_config(config_path, run_cmd->remaining());
            const MetricsReport rep = run_scenario(cfg, trace_path);
            print_report(rep);
            std::printf("trace = %s\n", trace_path.c_str());
        } else if (sweep_cmd->parsed()) {
            const ScenarioConfig cfg = load_config(sweep_config, sweep_cmd->remaining());
            if (trace_dir) {
                std::filesystem::create_directories(*trace_dir);
            }
            run_sweep(cfg, parse_double_list("pauses", pauses), parse_seed_list(seeds),
                      parse_protocol_list(protocols), csv_out, trace_dir);
            std::printf("csv = %s\n", csv_out.c_str());
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
