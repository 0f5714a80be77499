#include "manetsim/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "manetsim/simulation.hpp"

namespace manetsim {

const char* const kCsvHeader =
    "protocol,pause_time,seed,sent,received,pdf_percent,avg_delay_s,throughput_kbps,"
    "routing_pkts,routing_bytes,drop_nrte,drop_ifq,drop_ttl,drop_col,drop_end";

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string opt4(const std::optional<double>& v) {
    if (!v || std::isnan(*v)) return "nan";
    return fmt("%.4f", *v);
}

}  // namespace

std::string csv_row(Protocol protocol, double pause_time, const std::string& seed,
                    const MetricsReport& r) {
    std::ostringstream out;
    out << protocol_name(protocol) << ',' << fmt("%g", pause_time) << ',' << seed << ',' << r.sent
        << ',' << r.received << ',' << opt4(r.pdf) << ',' << opt4(r.avg_delay_s) << ','
        << fmt("%.2f", r.throughput_kbps) << ',' << r.routing_packets << ',' << r.routing_bytes;
    for (int i = 0; i < kDropReasonCount; ++i) {
        out << ',' << r.drops[i];
    }
    return out.str();
}

std::string csv_summary_row(Protocol protocol, double pause_time,
                            const std::vector<const MetricsReport*>& reports) {
    const double n = static_cast<double>(reports.size());
    auto mean_of = [&](auto&& field) {
        double sum = 0.0;
        for (const auto* r : reports) sum += field(*r);
        return sum / n;
    };
    std::optional<double> pdf_mean = 0.0;
    std::optional<double> delay_mean = 0.0;
    for (const auto* r : reports) {
        if (!r->pdf || !pdf_mean) {
            pdf_mean.reset();
        } else {
            *pdf_mean += *r->pdf / n;
        }
        if (!r->avg_delay_s || !delay_mean) {
            delay_mean.reset();
        } else {
            *delay_mean += *r->avg_delay_s / n;
        }
    }

    std::ostringstream out;
    out << protocol_name(protocol) << ',' << fmt("%g", pause_time) << ",mean,"
        << fmt("%.2f", mean_of([](const MetricsReport& r) { return double(r.sent); })) << ','
        << fmt("%.2f", mean_of([](const MetricsReport& r) { return double(r.received); })) << ','
        << opt4(pdf_mean) << ',' << opt4(delay_mean) << ','
        << fmt("%.2f", mean_of([](const MetricsReport& r) { return r.throughput_kbps; })) << ','
        << fmt("%.2f", mean_of([](const MetricsReport& r) { return double(r.routing_packets); }))
        << ','
        << fmt("%.2f", mean_of([](const MetricsReport& r) { return double(r.routing_bytes); }));
    for (int i = 0; i < kDropReasonCount; ++i) {
        out << ','
            << fmt("%.2f", mean_of([i](const MetricsReport& r) { return double(r.drops[i]); }));
    }
    return out.str();
}

std::string trace_file_name(Protocol protocol, double pause_time, std::uint64_t seed) {
    std::ostringstream out;
    out << protocol_name(protocol) << "_pause" << fmt("%g", pause_time) << "_seed" << seed
        << ".tr";
    return out.str();
}

SweepResult run_sweep(const ScenarioConfig& base, std::vector<double> pause_times,
                      std::vector<std::uint64_t> seeds, std::vector<Protocol> protocols,
                      const std::optional<std::string>& csv_path,
                      const std::optional<std::string>& trace_dir) {
    if (pause_times.empty() || seeds.empty() || protocols.empty()) {
        throw ConfigError("sweep requires non-empty pause, seed and protocol lists");
    }
    std::sort(pause_times.begin(), pause_times.end());
    pause_times.erase(std::unique(pause_times.begin(), pause_times.end()), pause_times.end());
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
    std::sort(protocols.begin(), protocols.end(), [](Protocol a, Protocol b) {
        return std::string(protocol_name(a)) < std::string(protocol_name(b));
    });
    protocols.erase(std::unique(protocols.begin(), protocols.end()), protocols.end());

    std::ofstream csv;
    if (csv_path) {
        csv.open(*csv_path, std::ios::binary);
        if (!csv) {
            throw TraceIoError("cannot open CSV for writing: " + *csv_path);
        }
        csv << kCsvHeader << '\n' << std::flush;
    }

    SweepResult result;
    for (Protocol protocol : protocols) {
        for (double pause : pause_times) {
            for (std::uint64_t seed : seeds) {
                ScenarioConfig cfg = base;
                cfg.protocol = protocol;
                cfg.pause_time = pause;
                cfg.seed = seed;
                validate(cfg);
                std::optional<std::string> trace_path;
                if (trace_dir) {
                    trace_path = *trace_dir + "/" + trace_file_name(protocol, pause, seed);
                }
                MetricsReport rep = run_scenario(cfg, trace_path);
                if (csv.is_open()) {
                    csv << csv_row(protocol, pause, std::to_string(seed), rep) << '\n'
                        << std::flush;
                    if (!csv) {
                        throw TraceIoError("CSV write failed: " + *csv_path);
                    }
                }
                result.rows.push_back(SweepRow{protocol, pause, seed, std::move(rep)});
            }
        }
    }

    // Per-(protocol, pause) seed means, appended after the data rows.
    std::size_t i = 0;
    for (Protocol protocol : protocols) {
        for (double pause : pause_times) {
            std::vector<const MetricsReport*> group;
            group.reserve(seeds.size());
            for (std::size_t k = 0; k < seeds.size(); ++k) {
                group.push_back(&result.rows[i + k].report);
            }
            i += seeds.size();
            if (csv.is_open()) {
                csv << csv_summary_row(protocol, pause, group) << '\n' << std::flush;
            }
        }
    }
    return result;
}

}  // namespace manetsim
