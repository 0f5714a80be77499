#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace manetsim {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Protocol { Aodv, Dsdv };

const char* protocol_name(Protocol p);
Protocol protocol_from_name(const std::string& name);

/// Full parameterization of one run. Defaults reproduce the reference
/// scenario: 50 nodes in a 500x500 m arena, 250 m range, 2 Mb/s, fixed
/// 25 m/s random-waypoint motion, 200 s horizon, 10 CBR flows of 512-byte
/// packets at 4 packets/s.
struct ScenarioConfig {
    Protocol protocol = Protocol::Aodv;
    std::uint32_t nodes = 50;
    double area_width = 500.0;
    double area_height = 500.0;
    double range = 250.0;
    double bandwidth = 2'000'000.0;  // bits/second
    double horizon = 200.0;          // seconds
    double pause_time = 0.0;
    double speed = 25.0;  // meters/second
    std::uint32_t flows = 10;
    double rate = 4.0;  // packets/second per flow
    std::uint32_t packet_size = 512;
    std::uint64_t seed = 1;
    double traffic_start = 10.0;

    // Network-layer knobs shared by both protocols.
    std::int32_t ttl = 32;
    std::uint32_t ifq_capacity = 50;
    double broadcast_jitter_max = 0.01;
    bool collisions_enabled = false;
    double propagation_delay = 1e-6;

    // DSDV timers.
    double dsdv_update_interval = 15.0;
    double dsdv_update_jitter_max = 1.0;
    double dsdv_trigger_delay_max = 0.01;
    double dsdv_trigger_min_gap = 1.0;

    // AODV timers and buffers.
    double aodv_active_route_timeout = 3.0;
    std::uint32_t aodv_rreq_retries = 2;  // attempts = retries + 1
    double aodv_retry_wait = 1.0;         // doubles per retry
    double aodv_reverse_route_lifetime = 3.0;
    std::uint32_t aodv_pending_buffer_capacity = 64;
};

/// Parse a flat `key = value` config file (one per line, `#` comments).
/// Throws ConfigError naming the offending key on unknown keys, bad
/// values, or violated invariants.
ScenarioConfig parse_config_file(const std::string& path);

/// Apply `--key value` style overrides on top of a base config.
ScenarioConfig apply_overrides(ScenarioConfig base,
                               const std::vector<std::pair<std::string, std::string>>& overrides);

/// Parse config text (same format as a file).
ScenarioConfig parse_config_text(const std::string& text);

/// Validate invariants; throws ConfigError naming the key.
void validate(const ScenarioConfig& cfg);

/// One `key = value` line per field, in canonical key order.
std::string config_to_text(const ScenarioConfig& cfg);

}  // namespace manetsim
