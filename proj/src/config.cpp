#include "stirap/config.hpp"

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace stirap {

using json = nlohmann::json;

namespace {

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& context) {
    if (!obj.is_object()) throw ConfigError(context, "expected an object");
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (auto a : allowed) known = known || a == key;
        if (!known) throw ConfigError(context.empty() ? key : context + "." + key, "unknown key");
    }
}

std::string join(const std::string& context, std::string_view key) {
    return context.empty() ? std::string(key) : context + "." + std::string(key);
}

double number(const json& obj, std::string_view key, const std::string& context, double fallback) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_number()) throw ConfigError(join(context, key), "expected a number");
    return it->get<double>();
}

std::int64_t integer(const json& obj, std::string_view key, const std::string& context, std::int64_t fallback) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_number_integer()) throw ConfigError(join(context, key), "expected an integer");
    return it->get<std::int64_t>();
}

std::optional<std::string> text(const json& obj, std::string_view key, const std::string& context) {
    const auto it = obj.find(key);
    if (it == obj.end()) return std::nullopt;
    if (!it->is_string()) throw ConfigError(join(context, key), "expected a string");
    return it->get<std::string>();
}

ModelParams<double> parse_params(const json& obj) {
    const std::string ctx = "params";
    check_keys(obj, {"Delta", "g", "g2", "eta1", "eta2", "omega_c", "Omega", "T", "tau", "tau_unit", "gamma", "delta", "routing"}, ctx);
    ModelParams<double> p;
    p.detuning = number(obj, "Delta", ctx, p.detuning);
    p.spectral1.amplitude = number(obj, "g", ctx, p.spectral1.amplitude);
    p.spectral2.amplitude = number(obj, "g2", ctx, p.spectral1.amplitude);
    p.spectral1.exponent = number(obj, "eta1", ctx, p.spectral1.exponent);
    p.spectral2.exponent = number(obj, "eta2", ctx, p.spectral2.exponent);
    p.spectral1.cutoff = p.spectral2.cutoff = number(obj, "omega_c", ctx, p.spectral1.cutoff);
    p.pulses.peak = number(obj, "Omega", ctx, p.pulses.peak);
    p.pulses.width = number(obj, "T", ctx, p.pulses.width);
    p.pulses.delay = number(obj, "tau", ctx, p.pulses.delay);
    if (auto unit = text(obj, "tau_unit", ctx)) {
        if (*unit == "width") p.delay_unit = DelayUnit::PulseWidth;
        else if (*unit == "absolute") p.delay_unit = DelayUnit::Absolute;
        else throw ConfigError("params.tau_unit", "expected \"width\" or \"absolute\"");
    }
    if (auto routing = text(obj, "routing", ctx)) {
        if (*routing == "standard") p.routing = PulseRouting::PumpOnSpin1;
        else if (*routing == "mirrored") p.routing = PulseRouting::PumpOnSpin2;
        else throw ConfigError("params.routing", "expected \"standard\" or \"mirrored\"");
    }
    p.loss_rate = number(obj, "gamma", ctx, p.loss_rate);
    p.step = number(obj, "delta", ctx, p.step);
    return p;
}

json params_json(const ModelParams<double>& p) {
    return json{{"Delta", p.detuning},
                {"g", p.spectral1.amplitude},
                {"g2", p.spectral2.amplitude},
                {"eta1", p.spectral1.exponent},
                {"eta2", p.spectral2.exponent},
                {"omega_c", p.spectral1.cutoff},
                {"Omega", p.pulses.peak},
                {"T", p.pulses.width},
                {"tau", p.pulses.delay},
                {"tau_unit", p.delay_unit == DelayUnit::PulseWidth ? "width" : "absolute"},
                {"routing", p.routing == PulseRouting::PumpOnSpin1 ? "standard" : "mirrored"},
                {"gamma", p.loss_rate},
                {"delta", p.step}};
}

SweepAxis parse_axis(const json& obj, std::size_t index) {
    const std::string ctx = "sweep.axes[" + std::to_string(index) + "]";
    check_keys(obj, {"param", "min", "max", "count", "values"}, ctx);
    const auto name = text(obj, "param", ctx);
    if (!name) throw ConfigError(ctx + ".param", "missing");
    const auto param = parse_parameter(*name);
    if (const auto it = obj.find("values"); it != obj.end()) {
        if (obj.contains("min") || obj.contains("max") || obj.contains("count")) {
            throw ConfigError(ctx, "use either values or min/max/count");
        }
        if (!it->is_array() || it->empty()) throw ConfigError(ctx + ".values", "expected a non-empty array of numbers");
        std::vector<double> values;
        for (const auto& v : *it) {
            if (!v.is_number()) throw ConfigError(ctx + ".values", "expected numbers");
            values.push_back(v.get<double>());
        }
        return SweepAxis::list(param, std::move(values));
    }
    for (auto key : {"min", "max", "count"}) {
        if (!obj.contains(key)) throw ConfigError(join(ctx, key), "missing");
    }
    return SweepAxis::linear(param, number(obj, "min", ctx, 0), number(obj, "max", ctx, 0), integer(obj, "count", ctx, 0));
}

json axis_json(const SweepAxis& axis) {
    json j{{"param", std::string(parameter_name(axis.parameter))}};
    if (!axis.explicit_values.empty()) {
        j["values"] = axis.explicit_values;
    } else {
        j["min"] = axis.min;
        j["max"] = axis.max;
        j["count"] = axis.count;
    }
    return j;
}

RunConfig from_json(const json& root) {
    check_keys(root, {"preset", "variant", "params", "window", "tail_widths", "integrator", "propagator", "lindblad_mode_cap", "output", "sweep"}, "");
    RunConfig cfg;
    cfg.preset = text(root, "preset", "");
    cfg.variant = integer(root, "variant", "", 0);
    if (const auto it = root.find("params"); it != root.end()) cfg.params = parse_params(*it);

    if (const auto it = root.find("window"); it != root.end()) {
        check_keys(*it, {"t_start", "t_end"}, "window");
        if (!it->contains("t_start") || !it->contains("t_end")) throw ConfigError("window", "needs t_start and t_end");
        cfg.window = TimeWindow<double>{number(*it, "t_start", "window", 0), number(*it, "t_end", "window", 0)};
    }
    cfg.tail_widths = number(root, "tail_widths", "", cfg.tail_widths);

    if (const auto it = root.find("integrator"); it != root.end()) {
        const std::string ctx = "integrator";
        check_keys(*it, {"rtol", "atol", "initial_step", "max_step", "samples", "max_steps"}, ctx);
        auto& ic = cfg.integrator;
        ic.rtol = number(*it, "rtol", ctx, ic.rtol);
        ic.atol = number(*it, "atol", ctx, ic.atol);
        ic.initial_step = number(*it, "initial_step", ctx, ic.initial_step);
        ic.max_step = number(*it, "max_step", ctx, ic.max_step);
        ic.samples = integer(*it, "samples", ctx, ic.samples);
        ic.max_steps = integer(*it, "max_steps", ctx, ic.max_steps);
    }

    if (auto prop = text(root, "propagator", "")) {
        if (*prop == "pure") cfg.propagator = Propagator::Pure;
        else if (*prop == "lindblad") cfg.propagator = Propagator::Lindblad;
        else throw ConfigError("propagator", "expected \"pure\" or \"lindblad\"");
    }
    cfg.lindblad_mode_cap = integer(root, "lindblad_mode_cap", "", cfg.lindblad_mode_cap);

    if (const auto it = root.find("output"); it != root.end()) {
        check_keys(*it, {"path", "format"}, "output");
        cfg.output_path = text(*it, "path", "output").value_or("");
        if (auto fmt = text(*it, "format", "output")) {
            if (*fmt == "csv") cfg.format = OutputFormat::Csv;
            else if (*fmt == "json") cfg.format = OutputFormat::Json;
            else throw ConfigError("output.format", "expected \"csv\" or \"json\"");
        }
    }

    if (const auto it = root.find("sweep"); it != root.end()) {
        check_keys(*it, {"axes", "workers", "points"}, "sweep");
        if (const auto axes = it->find("axes"); axes != it->end()) {
            if (!axes->is_array()) throw ConfigError("sweep.axes", "expected an array");
            for (std::size_t i = 0; i < axes->size(); ++i) cfg.sweep_axes.push_back(parse_axis((*axes)[i], i));
        }
        const auto workers = integer(*it, "workers", "sweep", 0);
        if (workers < 0) throw ConfigError("sweep.workers", "must be >= 0");
        cfg.workers = static_cast<unsigned>(workers);
        if (it->contains("points")) cfg.grid_points = integer(*it, "points", "sweep", 0);
    }
    return cfg;
}

json to_json(const RunConfig& cfg) {
    json root = json::object();
    if (cfg.preset) root["preset"] = *cfg.preset;
    root["variant"] = cfg.variant;
    if (cfg.params) root["params"] = params_json(*cfg.params);
    if (cfg.window) root["window"] = json{{"t_start", cfg.window->start}, {"t_end", cfg.window->end}};
    root["tail_widths"] = cfg.tail_widths;
    const auto& ic = cfg.integrator;
    root["integrator"] = json{{"rtol", ic.rtol},
                              {"atol", ic.atol},
                              {"initial_step", ic.initial_step},
                              {"max_step", ic.max_step},
                              {"samples", ic.samples},
                              {"max_steps", ic.max_steps}};
    root["propagator"] = cfg.propagator == Propagator::Pure ? "pure" : "lindblad";
    root["lindblad_mode_cap"] = cfg.lindblad_mode_cap;
    root["output"] = json{{"path", cfg.output_path}, {"format", cfg.format == OutputFormat::Csv ? "csv" : "json"}};
    json sweep{{"axes", json::array()}, {"workers", cfg.workers}};
    for (const auto& axis : cfg.sweep_axes) sweep["axes"].push_back(axis_json(axis));
    if (cfg.grid_points) sweep["points"] = *cfg.grid_points;
    root["sweep"] = sweep;
    return root;
}

}  // namespace

void validate(const RunConfig& cfg) {
    if (cfg.preset && cfg.params) throw ConfigError("preset", "a preset cannot be combined with explicit params");
    if (!cfg.preset && !cfg.params) throw ConfigError("params", "config names neither a preset nor params");
    if (cfg.preset && !cfg.sweep_axes.empty()) throw ConfigError("sweep.axes", "a preset defines its own axes");

    if (cfg.preset) {
        const auto& preset = find_preset(*cfg.preset);
        const Index lines = preset.kind == PresetKind::TimeTraces ? preset.axes.front().size() : 1;
        if (cfg.variant < 0 || cfg.variant >= lines) {
            throw ConfigError("variant", "preset " + preset.name + " has " + std::to_string(lines) + " variant(s)");
        }
    } else if (cfg.variant != 0) {
        throw ConfigError("variant", "only meaningful with a time-trace preset");
    }

    const auto params = resolve_params(cfg);
    validate(params);
    if (cfg.window) validate(*cfg.window);
    if (!(cfg.tail_widths > 0)) throw ConfigError("tail_widths", "must be > 0");
    validate(cfg.integrator);
    if (cfg.lindblad_mode_cap < 1) throw ConfigError("lindblad_mode_cap", "must be >= 1");
    if (cfg.propagator == Propagator::Lindblad) {
        const Index n = bath_mode_count(params.spectral1.cutoff, params.step);
        if (n > cfg.lindblad_mode_cap) {
            throw ConfigError("propagator", "lindblad propagation with N=" + std::to_string(n) + " bath modes exceeds the cap of " +
                                                std::to_string(cfg.lindblad_mode_cap));
        }
    }
    if (cfg.grid_points && *cfg.grid_points < 2) throw ConfigError("sweep.points", "must be >= 2");
    if (cfg.sweep_axes.size() > 2) throw ConfigError("sweep.axes", "at most two axes");
    if (cfg.sweep_axes.size() == 2 && cfg.sweep_axes[0].parameter == cfg.sweep_axes[1].parameter) {
        throw ConfigError("sweep.axes", "axes must name distinct parameters");
    }
    for (const auto& axis : cfg.sweep_axes) validate(axis);
}

RunConfig parse_config(std::string_view text) {
    json root;
    if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
        root = json::object();
    } else {
        try {
            root = json::parse(text);
        } catch (const json::parse_error& e) {
            throw ConfigError("", std::string("syntax error: ") + e.what());
        }
    }
    RunConfig cfg = from_json(root);
    validate(cfg);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& cfg, int indent) { return to_json(cfg).dump(indent); }

ModelParams<double> resolve_params(const RunConfig& cfg) {
    if (cfg.params) return *cfg.params;
    if (!cfg.preset) throw ConfigError("params", "config names neither a preset nor params");
    const auto& preset = find_preset(*cfg.preset);
    auto params = preset.base;
    if (preset.kind == PresetKind::TimeTraces) {
        const auto& axis = preset.axes.front();
        apply_parameter(params, axis.parameter, axis.values().at(static_cast<std::size_t>(cfg.variant)));
    }
    return params;
}

std::vector<SweepAxis> resolve_axes(const RunConfig& cfg) {
    std::vector<SweepAxis> axes = cfg.preset ? find_preset(*cfg.preset).axes : cfg.sweep_axes;
    if (cfg.grid_points) axes = with_resolution(std::move(axes), *cfg.grid_points);
    return axes;
}

TimeWindow<double> resolve_window(const RunConfig& cfg, const ModelParams<double>& params) {
    if (cfg.window) return *cfg.window;
    return default_window(absolute_pulses(params), cfg.tail_widths);
}

std::string config_hash(const RunConfig& cfg) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : serialize_config(cfg, -1)) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace stirap
