#include "manetsim/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

namespace manetsim {

const char* protocol_name(Protocol p) {
    return p == Protocol::Aodv ? "aodv" : "dsdv";
}

Protocol protocol_from_name(const std::string& name) {
    if (name == "aodv") return Protocol::Aodv;
    if (name == "dsdv") return Protocol::Dsdv;
    throw ConfigError("invalid value for key `protocol`: expected aodv or dsdv, got `" + name +
                      "`");
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const double out = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0') {
        throw ConfigError("invalid value for key `" + key + "`: `" + v + "` is not a number");
    }
    return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    char* end = nullptr;
    if (!v.empty() && v[0] == '-') {
        throw ConfigError("invalid value for key `" + key + "`: `" + v + "` is negative");
    }
    const unsigned long long out = std::strtoull(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0') {
        throw ConfigError("invalid value for key `" + key + "`: `" + v + "` is not an integer");
    }
    return out;
}

std::int64_t parse_i64(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const long long out = std::strtoll(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0') {
        throw ConfigError("invalid value for key `" + key + "`: `" + v + "` is not an integer");
    }
    return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("invalid value for key `" + key + "`: `" + v + "` is not a boolean");
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

struct Field {
    const char* key;
    std::function<void(ScenarioConfig&, const std::string&)> set;
    std::function<std::string(const ScenarioConfig&)> get;
};

const std::array<Field, 28>& fields() {
    static const std::array<Field, 28> table = {{
        {"protocol",
         [](ScenarioConfig& c, const std::string& v) { c.protocol = protocol_from_name(v); },
         [](const ScenarioConfig& c) { return std::string(protocol_name(c.protocol)); }},
        {"nodes",
         [](ScenarioConfig& c, const std::string& v) {
             c.nodes = static_cast<std::uint32_t>(parse_u64("nodes", v));
         },
         [](const ScenarioConfig& c) { return std::to_string(c.nodes); }},
        {"area_width",
         [](ScenarioConfig& c, const std::string& v) { c.area_width = parse_double("area_width", v); },
         [](const ScenarioConfig& c) { return format_double(c.area_width); }},
        {"area_height",
         [](ScenarioConfig& c, const std::string& v) {
             c.area_height = parse_double("area_height", v);
         },
         [](const ScenarioConfig& c) { return format_double(c.area_height); }},
        {"range",
         [](ScenarioConfig& c, const std::string& v) { c.range = parse_double("range", v); },
         [](const ScenarioConfig& c) { return format_double(c.range); }},
        {"bandwidth",
         [](ScenarioConfig& c, const std::string& v) { c.bandwidth = parse_double("bandwidth", v); },
         [](const ScenarioConfig& c) { return format_double(c.bandwidth); }},
        {"horizon",
         [](ScenarioConfig& c, const std::string& v) { c.horizon = parse_double("horizon", v); },
         [](const ScenarioConfig& c) { return format_double(c.horizon); }},
        {"pause_time",
         [](ScenarioConfig& c, const std::string& v) { c.pause_time = parse_double("pause_time", v); },
         [](const ScenarioConfig& c) { return format_double(c.pause_time); }},
        {"speed",
         [](ScenarioConfig& c, const std::string& v) { c.speed = parse_double("speed", v); },
         [](const ScenarioConfig& c) { return format_double(c.speed); }},
        {"flows",
         [](ScenarioConfig& c, const std::string& v) {
             c.flows = static_cast<std::uint32_t>(parse_u64("flows", v));
         },
         [](const ScenarioConfig& c) { return std::to_string(c.flows); }},
        {"rate",
         [](ScenarioConfig& c, const std::string& v) { c.rate = parse_double("rate", v); },
         [](const ScenarioConfig& c) { return format_double(c.rate); }},
        {"packet_size",
         [](ScenarioConfig& c, const std::string& v) {
             c.packet_size = static_cast<std::uint32_t>(parse_u64("packet_size", v));
         },
         [](const ScenarioConfig& c) { return std::to_string(c.packet_size); }},
        {"seed",
         [](ScenarioConfig& c, const std::string& v) { c.seed = parse_u64("seed", v); },
         [](const ScenarioConfig& c) { return std::to_string(c.seed); }},
        {"traffic_start",
         [](ScenarioConfig& c, const std::string& v) {
             c.traffic_start = parse_double("traffic_start", v);
         },
         [](const ScenarioConfig& c) { return format_double(c.traffic_start); }},
        {"ttl",
         [](ScenarioConfig& c, const std::string& v) {
             c.ttl = static_cast<std::int32_t>(parse_i64("ttl", v));
         },
         [](const ScenarioConfig& c) { return std::to_string(c.ttl); }},
        {"ifq_capacity",
         [](ScenarioConfig& c, const std::string& v) {
             c.ifq_capacity = static_cast<std::uint32_t>(parse_u64("ifq_capacity", v));
         },
         [](const ScenarioConfig& c) { return std::to_string(c.ifq_capacity); }},
        {"broadcast_jitter_max",
         [](ScenarioConfig& c, const std::string& v) {
             c.broadcast_jitter_max = parse_double("broadcast_jitter_max", v);
         },
         [](const ScenarioConfig& c) { return format_double(c.broadcast_jitter_max); }},
        {"collisions_enabled",
         [](ScenarioConfig& c, const std::string& v) {
             c.collisions_enabled = parse_bool("collisions_enabled", v);
         },
         [](const ScenarioConfig& c) { return std::string(c.collisions_enabled ? "true" : "false"); }},
        {"propagation_delay",
         [](ScenarioConfig& c, const std::string& v) {
             c.propagation_delay = parse_double("propagation_delay", v);
         },
         [](const ScenarioConfig& c) { return format_double(c.propagation_delay); }},
        {"dsdv_update_interval",
         [](ScenarioConfig& c, const std::string& v) {
             c.dsdv_update_interval = parse_double("dsdv_update_interval", v);
         },
         [](const ScenarioConfig& c) { return format_double(c.dsdv_update_interval); }},
        {"dsdv_update_jitter_max",
         [](ScenarioConfig& c, const std::string& v) {
             c.dsdv_update_jitter_max = parse_double("dsdv_update_jitter_max", v);
         },
         [](const ScenarioConfig& c) { return format_double(c.dsdv_update_jitter_max); }},
        {"dsdv_trigger_delay_max",
         [](ScenarioConfig& c, const std::string& v) {
             c.dsdv_trigger_delay_max = parse_double("dsdv_trigger_delay_max", v);
         },
         [](const ScenarioConfig& c) { return format_double(c.dsdv_trigger_delay_max); }},
        {"dsdv_trigger_min_gap",
         [](ScenarioConfig& c, const std::string& v) {
             c.dsdv_trigger_min_gap = parse_double("dsdv_trigger_min_gap", v);
         },
         [](const ScenarioConfig& c) { return format_double(c.dsdv_trigger_min_gap); }},
        {"aodv_active_route_timeout",
         [](ScenarioConfig& c, const std::string& v) {
             c.aodv_active_route_timeout = parse_double("aodv_active_route_timeout", v);
         },
         [](const ScenarioConfig& c) { return format_double(c.aodv_active_route_timeout); }},
        {"aodv_rreq_retries",
         [](ScenarioConfig& c, const std::string& v) {
             c.aodv_rreq_retries = static_cast<std::uint32_t>(parse_u64("aodv_rreq_retries", v));
         },
         [](const ScenarioConfig& c) { return std::to_string(c.aodv_rreq_retries); }},
        {"aodv_retry_wait",
         [](ScenarioConfig& c, const std::string& v) {
             c.aodv_retry_wait = parse_double("aodv_retry_wait", v);
         },
         [](const ScenarioConfig& c) { return format_double(c.aodv_retry_wait); }},
        {"aodv_reverse_route_lifetime",
         [](ScenarioConfig& c, const std::string& v) {
             c.aodv_reverse_route_lifetime = parse_double("aodv_reverse_route_lifetime", v);
         },
         [](const ScenarioConfig& c) { return format_double(c.aodv_reverse_route_lifetime); }},
        {"aodv_pending_buffer_capacity",
         [](ScenarioConfig& c, const std::string& v) {
             c.aodv_pending_buffer_capacity =
                 static_cast<std::uint32_t>(parse_u64("aodv_pending_buffer_capacity", v));
         },
         [](const ScenarioConfig& c) { return std::to_string(c.aodv_pending_buffer_capacity); }},
    }};
    return table;
}

void set_key(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
    for (const Field& f : fields()) {
        if (key == f.key) {
            f.set(cfg, value);
            return;
        }
    }
    throw ConfigError("unknown config key `" + key + "`");
}

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

}  // namespace

void validate(const ScenarioConfig& c) {
    require(c.nodes >= 1, "key `nodes` must be >= 1");
    require(c.area_width > 0.0, "key `area_width` must be > 0");
    require(c.area_height > 0.0, "key `area_height` must be > 0");
    require(c.range > 0.0, "key `range` must be > 0");
    require(c.bandwidth > 0.0, "key `bandwidth` must be > 0");
    require(c.horizon > 0.0, "key `horizon` must be > 0");
    require(c.pause_time >= 0.0, "key `pause_time` must be >= 0");
    require(c.speed > 0.0, "key `speed` must be > 0");
    require(c.rate > 0.0, "key `rate` must be > 0");
    require(c.packet_size >= 1, "key `packet_size` must be >= 1");
    require(c.ttl >= 1, "key `ttl` must be >= 1");
    require(c.ifq_capacity >= 1, "key `ifq_capacity` must be >= 1");
    require(c.broadcast_jitter_max >= 0.0, "key `broadcast_jitter_max` must be >= 0");
    require(c.propagation_delay >= 0.0, "key `propagation_delay` must be >= 0");
    require(c.dsdv_update_interval > 0.0, "key `dsdv_update_interval` must be > 0");
    require(c.dsdv_update_jitter_max >= 0.0, "key `dsdv_update_jitter_max` must be >= 0");
    require(c.dsdv_update_jitter_max < c.dsdv_update_interval,
            "key `dsdv_update_jitter_max` must be smaller than `dsdv_update_interval`");
    require(c.dsdv_trigger_delay_max >= 0.0, "key `dsdv_trigger_delay_max` must be >= 0");
    require(c.dsdv_trigger_min_gap >= 0.0, "key `dsdv_trigger_min_gap` must be >= 0");
    require(c.aodv_active_route_timeout > 0.0, "key `aodv_active_route_timeout` must be > 0");
    require(c.aodv_retry_wait > 0.0, "key `aodv_retry_wait` must be > 0");
    require(c.aodv_reverse_route_lifetime > 0.0,
            "key `aodv_reverse_route_lifetime` must be > 0");
    require(c.aodv_pending_buffer_capacity >= 1,
            "key `aodv_pending_buffer_capacity` must be >= 1");
    if (c.flows >= 1) {
        require(c.nodes >= 2, "key `flows` requires `nodes` >= 2");
        const auto n = static_cast<std::uint64_t>(c.nodes);
        require(c.flows <= n * (n - 1),
                "key `flows` exceeds the number of distinct source/sink pairs");
        require(c.traffic_start >= 0.0, "key `traffic_start` must be >= 0");
        require(c.traffic_start < c.horizon, "key `traffic_start` must be before `horizon`");
    }
}

ScenarioConfig parse_config_text(const std::string& text) {
    ScenarioConfig cfg;
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) +
                              " is not `key = value`: " + line);
        }
        set_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    validate(cfg);
    return cfg;
}

ScenarioConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

ScenarioConfig apply_overrides(ScenarioConfig base,
                               const std::vector<std::pair<std::string, std::string>>& overrides) {
    for (const auto& [key, value] : overrides) {
        set_key(base, key, value);
    }
    validate(base);
    return base;
}

std::string config_to_text(const ScenarioConfig& cfg) {
    std::ostringstream out;
    for (const Field& f : fields()) {
        out << f.key << " = " << f.get(cfg) << "\n";
    }
    return out.str();
}

}  // namespace manetsim
