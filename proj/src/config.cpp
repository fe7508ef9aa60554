#include "stowave/config.hpp"

#include <cmath>
#include <fstream>

#include "stowave/errors.hpp"
#include "stowave/io.hpp"

namespace stowave {

namespace {

using nlohmann::json;

double num_or(const json& block, const char* key, double dflt, const char* ctx) {
    if (!block.contains(key)) return dflt;
    const json& v = block.at(key);
    if (!v.is_number()) throw ConfigError(std::string(ctx) + "." + key + " must be a number");
    return v.get<double>();
}

int int_or(const json& block, const char* key, int dflt, const char* ctx) {
    if (!block.contains(key)) return dflt;
    const json& v = block.at(key);
    if (!v.is_number_integer())
        throw ConfigError(std::string(ctx) + "." + key + " must be an integer");
    return v.get<int>();
}

std::string str_or(const json& block, const char* key, const std::string& dflt, const char* ctx) {
    if (!block.contains(key)) return dflt;
    const json& v = block.at(key);
    if (!v.is_string()) throw ConfigError(std::string(ctx) + "." + key + " must be a string");
    return v.get<std::string>();
}

json block_or(const json& doc, const char* key) {
    if (!doc.contains(key)) return json::object();
    const json& v = doc.at(key);
    if (!v.is_object()) throw ConfigError(std::string(key) + " must be an object");
    return v;
}

/// Mode/forcing shape from {"kind", "amplitude", "width"|"radius"}.
Field shape_field(const Grid& g, const json& spec, const char* ctx,
                  const char* default_kind = "gaussian") {
    const std::string kind = str_or(spec, "kind", default_kind, ctx);
    const double amplitude = num_or(spec, "amplitude", 1.0, ctx);
    if (kind == "zero") return Field(g);
    if (kind == "gaussian") return gaussian_mode(g, amplitude, num_or(spec, "width", 1.0, ctx));
    if (kind == "bump") return bump_mode(g, amplitude, num_or(spec, "radius", 2.0, ctx));
    throw ConfigError(std::string(ctx) + ".kind '" + kind + "' unknown (zero|gaussian|bump)");
}

}  // namespace

RunConfig parse_config(nlohmann::json doc, std::optional<std::uint64_t> seed_override,
                       std::optional<std::string> out_override,
                       std::optional<int> threads_override) {
    if (!doc.is_object()) throw ConfigError("config root must be an object");
    if (seed_override) doc["noise"]["seed"] = *seed_override;

    RunConfig cfg;
    try {
        const json grid_block = block_or(doc, "grid");
        const int n = int_or(grid_block, "n", 1, "grid");
        const double L = num_or(grid_block, "L", 8.0, "grid");
        const int N = int_or(grid_block, "N", 256, "grid");
        try {
            cfg.grid = Grid(n, L, N);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("grid: ") + e.what());
        }

        const json nl_block = block_or(doc, "nonlinearity");
        const std::string nl_kind = str_or(nl_block, "kind", "power", "nonlinearity");
        if (nl_kind != "power" && nl_kind != "zero")
            throw ConfigError("nonlinearity.kind '" + nl_kind + "' unknown (power|zero)");
        const double p = num_or(nl_block, "p", 4.0, "nonlinearity");

        const json params_block = block_or(doc, "params");
        if (params_block.contains("p") && params_block.at("p").get<double>() != p)
            throw ConfigError("params.p disagrees with nonlinearity.p");
        Params pr;
        pr.alpha = num_or(params_block, "alpha", 1.0, "params");
        pr.beta = num_or(params_block, "beta", 1.0, "params");
        pr.delta = num_or(params_block, "delta", 0.25, "params");
        pr.epsilon = num_or(params_block, "epsilon", 0.1, "params");
        pr = with_canonical_constants(pr, p);
        pr.c1 = num_or(params_block, "c1", pr.c1, "params");
        pr.c2 = num_or(params_block, "c2", pr.c2, "params");
        pr.c3 = num_or(params_block, "c3", pr.c3, "params");

        const json noise_block = block_or(doc, "noise");
        cfg.seed = noise_block.contains("seed")
                       ? noise_block.at("seed").get<std::uint64_t>()
                       : 1;
        json profile_spec = json::array({json{{"kind", "gaussian"}}});
        if (noise_block.contains("profile")) {
            if (!noise_block.at("profile").is_array() || noise_block.at("profile").empty())
                throw ConfigError("noise.profile must be a non-empty array");
            profile_spec = noise_block.at("profile");
        }
        pr.m = int_or(noise_block, "m", static_cast<int>(profile_spec.size()), "noise");
        if (pr.m != static_cast<int>(profile_spec.size()))
            throw ConfigError("noise.m disagrees with the profile length");

        cfg.experiment = block_or(doc, "experiment");
        const double h = cfg.grid.spacing();
        const double cfl = num_or(cfg.experiment, "cfl", 0.5, "experiment");
        cfg.dt = num_or(cfg.experiment, "dt", cfl * h, "experiment");
        if (!(cfg.dt > 0.0)) throw ConfigError("experiment.dt must be positive");
        if (cfg.dt > 0.5 * h * (1.0 + 1e-12))
            throw ConfigError("experiment.dt violates the stability bound dt <= 0.5 h");
        if (noise_block.contains("dt")) {
            const double ndt = noise_block.at("dt").get<double>();
            if (std::abs(ndt - 0.5 * cfg.dt) > 1e-12 * cfg.dt)
                throw ConfigError("noise.dt must equal half the flow step");
        }

        cfg.params = pr;

        const json output_block = block_or(doc, "output");
        cfg.out_dir = str_or(output_block, "directory", "out", "output");
        if (out_override) cfg.out_dir = *out_override;
        cfg.threads = int_or(doc, "threads", 1, "config");
        if (threads_override) cfg.threads = *threads_override;
        if (cfg.threads < 1) throw ConfigError("threads must be >= 1");
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    // The hash fingerprints the result-relevant blocks only; where outputs
    // land and how many workers ran cannot change what gets computed.
    cfg.effective = doc;
    cfg.effective.erase("output");
    cfg.effective.erase("threads");
    return cfg;
}

RunConfig load_config(const std::filesystem::path& file,
                      std::optional<std::uint64_t> seed_override,
                      std::optional<std::string> out_override, std::optional<int> threads_override) {
    std::ifstream is(file);
    if (!is) throw ConfigError("cannot open config: " + file.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(is);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config parse: " + std::string(e.what()));
    }
    return parse_config(std::move(doc), seed_override, out_override, threads_override);
}

Model RunConfig::build_model() const {
    const json& doc = effective;
    const json nl_block = block_or(doc, "nonlinearity");
    const std::string nl_kind = str_or(nl_block, "kind", "power", "nonlinearity");
    Nonlinearity nl{params.p, nl_kind == "zero"};

    Field forcing = shape_field(grid, block_or(doc, "forcing"), "forcing", "zero");

    if (params.epsilon == 0.0) return Model(params, nl, std::move(forcing));

    const json noise_block = block_or(doc, "noise");
    json profile_spec = json::array({json{{"kind", "gaussian"}}});
    if (noise_block.contains("profile")) profile_spec = noise_block.at("profile");
    std::vector<Field> modes;
    modes.reserve(profile_spec.size());
    for (const json& spec : profile_spec) modes.push_back(shape_field(grid, spec, "noise.profile"));
    return Model(params, nl, std::move(forcing), make_profile(std::move(modes), params.p));
}

std::string RunConfig::hash() const { return config_hash(effective); }

nlohmann::json canonical_config() {
    return nlohmann::json{
        {"params", {{"alpha", 1.0}, {"beta", 1.0}, {"delta", 0.25}, {"epsilon", 0.1}}},
        {"grid", {{"n", 1}, {"L", 8.0}, {"N", 256}}},
        {"nonlinearity", {{"kind", "power"}, {"p", 4.0}}},
        {"noise", {{"seed", 1}, {"m", 1}, {"profile", {{{"kind", "gaussian"}, {"amplitude", 1.0}, {"width", 1.0}}}}}},
        {"forcing", {{"kind", "zero"}}},
        {"experiment", nlohmann::json::object()},
        {"output", {{"directory", "out"}}},
    };
}

}  // namespace stowave
