#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "manetsim/config.hpp"
#include "manetsim/metrics.hpp"

namespace manetsim {

struct SweepRow {
    Protocol protocol;
    double pause_time;
    std::uint64_t seed;
    MetricsReport report;
};

struct SweepResult {
    std::vector<SweepRow> rows;  // lexicographic (protocol, pause_time, seed)
};

/// Exact column set and order of results CSVs.
extern const char* const kCsvHeader;

/// One data row. PDF and delay print with 4 decimals, throughput with 2;
/// undefined metrics print `nan`.
std::string csv_row(Protocol protocol, double pause_time, const std::string& seed,
                    const MetricsReport& r);

/// Per-(protocol, pause) seed-mean summary row; seed column says `mean`.
std::string csv_summary_row(Protocol protocol, double pause_time,
                            const std::vector<const MetricsReport*>& reports);

/// Run |protocols| x |pause_times| x |seeds| scenarios (inputs are sorted
/// and deduplicated) and stream the CSV to `csv_path` row by row, then
/// append the summary rows. Traces go to `trace_dir` (one file per run,
/// `<protocol>_pause<p>_seed<s>.tr`) when given. A run failure propagates
/// after the rows completed so far are flushed.
SweepResult run_sweep(const ScenarioConfig& base, std::vector<double> pause_times,
                      std::vector<std::uint64_t> seeds, std::vector<Protocol> protocols,
                      const std::optional<std::string>& csv_path,
                      const std::optional<std::string>& trace_dir);

/// Trace file name for one run of a sweep.
std::string trace_file_name(Protocol protocol, double pause_time, std::uint64_t seed);

}  // namespace manetsim
