#include "hcd/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "hcd/errors.hpp"

namespace hcd {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw config_error("config: bad numeric value for " + key + ": '" + value + "'");
    }
}

long long parse_int(const std::string& key, const std::string& value) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size())
        throw config_error("config: bad integer value for " + key + ": '" + value + "'");
    return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw config_error("config: bad boolean value for " + key + ": '" + value + "'");
}

}  // namespace

std::string to_string(Family f) {
    return f == Family::Logistic ? "logistic" : "tent";
}

std::string to_string(Method m) {
    switch (m) {
        case Method::Asom: return "asom";
        case Method::Random: return "random";
        case Method::Pca: return "pca";
        case Method::Cca: return "cca";
    }
    return "asom";
}

Family family_from_string(const std::string& s) {
    if (s == "logistic") return Family::Logistic;
    if (s == "tent") return Family::Tent;
    throw config_error("config: unknown family '" + s + "'");
}

Method method_from_string(const std::string& s) {
    if (s == "asom") return Method::Asom;
    if (s == "random") return Method::Random;
    if (s == "pca") return Method::Pca;
    if (s == "cca") return Method::Cca;
    throw config_error("config: unknown method '" + s + "'");
}

void ExperimentConfig::validate() const {
    if (train_length < 1 || test_length < 1)
        throw config_error("config: train_length and test_length must be >= 1");
    if (total_length != 0 && total_length < train_length + test_length)
        throw config_error("config: total_length smaller than train + test");
    if (som_embed_m < 1 || som_embed_tau < 1 || dim_embed_m < 1 || dim_embed_tau < 1)
        throw config_error("config: embedding parameters must be >= 1");
    if (k_min < 2 || k_max < k_min)
        throw config_error("config: need k_max >= k_min >= 2");
    if (som_rows < 1 || som_cols < 1)
        throw config_error("config: SOM shape must be positive");
    if (schedule.iterations < 0 || schedule.neighbors < 1)
        throw config_error("config: bad training schedule");
    if (runs < 1) throw config_error("config: runs must be >= 1");
    if (max_lag < 1) throw config_error("config: max_lag must be >= 1");
    if (noise_sd < 0) throw config_error("config: noise_sd must be >= 0");
    if (methods.empty()) throw config_error("config: methods must not be empty");
    if (dim_chunk > train_length)
        throw config_error("config: dim_chunk cannot exceed train_length");
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config: expected 'key = value' on line " +
                               std::to_string(line_no));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw config_error("config: empty key or value on line " + std::to_string(line_no));

        if (key == "family") cfg.family = family_from_string(value);
        else if (key == "params") {
            if (value == "demo") cfg.param_mode = ParamMode::Demo;
            else if (value == "sampled") cfg.param_mode = ParamMode::Sampled;
            else if (value == "explicit") cfg.param_mode = ParamMode::Explicit;
            else throw config_error("config: unknown params mode '" + value + "'");
        }
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
        else if (key == "train_length") cfg.train_length = static_cast<std::size_t>(parse_int(key, value));
        else if (key == "test_length") cfg.test_length = static_cast<std::size_t>(parse_int(key, value));
        else if (key == "total_length") cfg.total_length = static_cast<std::size_t>(parse_int(key, value));
        else if (key == "burn_in") cfg.burn_in = static_cast<std::size_t>(parse_int(key, value));
        else if (key == "noise_sd") cfg.noise_sd = parse_double(key, value);
        else if (key == "r_z") cfg.logistic.r_z = parse_double(key, value);
        else if (key == "r_x") cfg.logistic.r_x = parse_double(key, value);
        else if (key == "r_y") cfg.logistic.r_y = parse_double(key, value);
        else if (key == "beta_x") { cfg.logistic.beta_x = cfg.tent.beta_x = parse_double(key, value); }
        else if (key == "beta_y") { cfg.logistic.beta_y = cfg.tent.beta_y = parse_double(key, value); }
        else if (key == "alpha_z") cfg.tent.alpha_z = parse_double(key, value);
        else if (key == "alpha_x") cfg.tent.alpha_x = parse_double(key, value);
        else if (key == "alpha_y") cfg.tent.alpha_y = parse_double(key, value);
        else if (key == "init_z") { cfg.init[0] = parse_double(key, value); cfg.has_init = true; }
        else if (key == "init_x") { cfg.init[1] = parse_double(key, value); cfg.has_init = true; }
        else if (key == "init_y") { cfg.init[2] = parse_double(key, value); cfg.has_init = true; }
        else if (key == "som_embed_m") cfg.som_embed_m = static_cast<int>(parse_int(key, value));
        else if (key == "som_embed_tau") cfg.som_embed_tau = static_cast<int>(parse_int(key, value));
        else if (key == "dim_embed_m") cfg.dim_embed_m = static_cast<int>(parse_int(key, value));
        else if (key == "dim_embed_tau") cfg.dim_embed_tau = static_cast<int>(parse_int(key, value));
        else if (key == "run_dimension") cfg.run_dimension = parse_bool(key, value);
        else if (key == "shape_check") cfg.shape_check = parse_bool(key, value);
        else if (key == "dim_chunk") cfg.dim_chunk = static_cast<std::size_t>(parse_int(key, value));
        else if (key == "k_min") cfg.k_min = static_cast<int>(parse_int(key, value));
        else if (key == "k_max") cfg.k_max = static_cast<int>(parse_int(key, value));
        else if (key == "relation_tolerance") cfg.relation_tolerance = parse_double(key, value);
        else if (key == "joint_mix") cfg.joint_mix = parse_double(key, value);
        else if (key == "som_rows") cfg.som_rows = static_cast<int>(parse_int(key, value));
        else if (key == "som_cols") cfg.som_cols = static_cast<int>(parse_int(key, value));
        else if (key == "train_iterations") cfg.schedule.iterations = static_cast<int>(parse_int(key, value));
        else if (key == "train_neighbors") cfg.schedule.neighbors = static_cast<int>(parse_int(key, value));
        else if (key == "sigma1_initial") cfg.schedule.sigma1_initial = parse_double(key, value);
        else if (key == "sigma2_initial") cfg.schedule.sigma2_initial = parse_double(key, value);
        else if (key == "sigma2_decay") cfg.schedule.sigma2_decay = parse_double(key, value);
        else if (key == "epsilon_initial") cfg.schedule.epsilon_initial = parse_double(key, value);
        else if (key == "epsilon_decay") cfg.schedule.epsilon_decay = parse_double(key, value);
        else if (key == "grid_init") {
            if (value == "unit") cfg.grid_init_from_data = false;
            else if (value == "data") cfg.grid_init_from_data = true;
            else throw config_error("config: unknown grid_init '" + value + "'");
        }
        else if (key == "asom_role") {
            if (value == "auto") cfg.asom_role = AsomRole::Auto;
            else if (value == "forward") cfg.asom_role = AsomRole::Forward;
            else if (value == "swapped") cfg.asom_role = AsomRole::Swapped;
            else throw config_error("config: unknown asom_role '" + value + "'");
        }
        else if (key == "asom_winner") {
            if (value == "auto") cfg.asom_winner = AsomWinner::Auto;
            else if (value == "bundle") cfg.asom_winner = AsomWinner::Bundle;
            else if (value == "seed") cfg.asom_winner = AsomWinner::Seed;
            else throw config_error("config: unknown asom_winner '" + value + "'");
        }
        else if (key == "snapshot_steps") {
            cfg.snapshot_steps.clear();
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ','))
                cfg.snapshot_steps.push_back(static_cast<int>(parse_int(key, trim(item))));
        }
        else if (key == "methods") {
            cfg.methods.clear();
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ','))
                cfg.methods.push_back(method_from_string(trim(item)));
        }
        else if (key == "runs") cfg.runs = static_cast<int>(parse_int(key, value));
        else if (key == "max_lag") cfg.max_lag = static_cast<int>(parse_int(key, value));
        else throw config_error("config: unknown key '" + key + "' on line " +
                                std::to_string(line_no));
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config: cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

ExperimentConfig demo_config() {
    ExperimentConfig cfg;
    cfg.family = Family::Logistic;
    cfg.param_mode = ParamMode::Demo;
    cfg.logistic = LogisticTriadParams{3.8, 3.9, 3.99, 0.4, 0.3, 0.001};
    cfg.noise_sd = 0.001;
    cfg.train_length = 10000;
    cfg.test_length = 10000;
    return cfg;
}

ExperimentConfig batch_config(Family family) {
    ExperimentConfig cfg;
    cfg.family = family;
    cfg.param_mode = ParamMode::Sampled;
    cfg.noise_sd = 0.0;
    cfg.run_dimension = false;
    cfg.methods = {Method::Asom, Method::Random, Method::Pca, Method::Cca};
    if (family == Family::Logistic) {
        cfg.train_length = 10000;
        cfg.test_length = 10000;
        cfg.total_length = 20000;
    } else {
        cfg.train_length = 16000;
        cfg.test_length = 2000;
        cfg.total_length = 20000;
    }
    return cfg;
}

}  // namespace hcd
