// SPDX-License-Identifier: MIT

#include "levyest/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace levyest {

namespace {

std::string trim(const std::string& text) {
    std::size_t lo = 0, hi = text.size();
    while (lo < hi && std::isspace(static_cast<unsigned char>(text[lo]))) ++lo;
    while (hi > lo && std::isspace(static_cast<unsigned char>(text[hi - 1]))) --hi;
    return text.substr(lo, hi - lo);
}

bool valid_key(const std::string& key) {
    if (key.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(key[0])) && key[0] != '_') return false;
    return std::all_of(key.begin(), key.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

double parse_double_value(const std::string& key, const std::string& raw) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(raw, &pos);
        if (pos != raw.size())
            throw ConfigError("key '" + key + "': trailing characters in '" + raw + "'");
        return v;
    } catch (const std::invalid_argument&) {
        throw ConfigError("key '" + key + "': '" + raw + "' is not a number");
    } catch (const std::out_of_range&) {
        throw ConfigError("key '" + key + "': '" + raw + "' is out of range");
    }
}

std::int64_t parse_int_value(const std::string& key, const std::string& raw) {
    try {
        std::size_t pos = 0;
        const std::int64_t v = std::stoll(raw, &pos);
        if (pos != raw.size())
            throw ConfigError("key '" + key + "': trailing characters in '" + raw + "'");
        return v;
    } catch (const std::invalid_argument&) {
        throw ConfigError("key '" + key + "': '" + raw + "' is not an integer");
    } catch (const std::out_of_range&) {
        throw ConfigError("key '" + key + "': '" + raw + "' is out of range");
    }
}

} // namespace

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_string(buffer.str());
}

KeyValueConfig KeyValueConfig::from_string(const std::string& text) {
    KeyValueConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineNo) +
                              ": expected 'key = value', got '" + stripped + "'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (!valid_key(key))
            throw ConfigError("line " + std::to_string(lineNo) + ": bad key '" + key + "'");
        if (value.empty())
            throw ConfigError("line " + std::to_string(lineNo) + ": empty value for '" +
                              key + "'");
        if (!cfg.values_.emplace(key, value).second)
            throw ConfigError("line " + std::to_string(lineNo) + ": duplicate key '" +
                              key + "'");
    }
    return cfg;
}

bool KeyValueConfig::has(const std::string& key) const {
    return values_.count(key) != 0;
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) {
    accessed_.insert(key);
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

std::string KeyValueConfig::require_string(const std::string& key) {
    accessed_.insert(key);
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing required key: " + key);
    return it->second;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) {
    accessed_.insert(key);
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    return parse_double_value(key, it->second);
}

std::int64_t KeyValueConfig::get_int(const std::string& key, std::int64_t fallback) {
    accessed_.insert(key);
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    return parse_int_value(key, it->second);
}

std::uint64_t KeyValueConfig::get_uint(const std::string& key, std::uint64_t fallback) {
    accessed_.insert(key);
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    const std::string& raw = it->second;
    if (!raw.empty() && raw[0] == '-')
        throw ConfigError("key '" + key + "': expected a nonnegative integer, got '" +
                          raw + "'");
    try {
        std::size_t pos = 0;
        const std::uint64_t v = std::stoull(raw, &pos);
        if (pos != raw.size())
            throw ConfigError("key '" + key + "': trailing characters in '" + raw + "'");
        return v;
    } catch (const std::invalid_argument&) {
        throw ConfigError("key '" + key + "': '" + raw + "' is not an integer");
    } catch (const std::out_of_range&) {
        throw ConfigError("key '" + key + "': '" + raw + "' is out of range");
    }
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) {
    accessed_.insert(key);
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::string v = it->second;
    std::transform(v.begin(), v.end(), v.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("key '" + key + "': expected a boolean, got '" + it->second + "'");
}

std::vector<std::int64_t> KeyValueConfig::get_int_list(
    const std::string& key, const std::vector<std::int64_t>& fallback) {
    accessed_.insert(key);
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;

    std::vector<std::int64_t> out;
    std::istringstream in(it->second);
    std::string token;
    while (std::getline(in, token, ',')) {
        token = trim(token);
        if (token.empty())
            throw ConfigError("key '" + key + "': empty list element");
        const std::size_t dots = token.find("..");
        if (dots != std::string::npos) {
            const std::int64_t lo = parse_int_value(key, trim(token.substr(0, dots)));
            const std::int64_t hi = parse_int_value(key, trim(token.substr(dots + 2)));
            if (lo > hi)
                throw ConfigError("key '" + key + "': empty range " + token);
            for (std::int64_t v = lo; v <= hi; ++v) out.push_back(v);
        } else {
            out.push_back(parse_int_value(key, token));
        }
    }
    if (out.empty()) throw ConfigError("key '" + key + "': empty list");
    return out;
}

void KeyValueConfig::reject_unknown_keys() const {
    std::string unknown;
    for (const auto& [key, value] : values_) {
        if (accessed_.count(key)) continue;
        if (!unknown.empty()) unknown += ", ";
        unknown += key;
    }
    if (!unknown.empty())
        throw ConfigError("unrecognized or unused config keys: " + unknown);
}

namespace {

LevyModel parse_model(KeyValueConfig& kv) {
    const std::string name = kv.require_string("model");
    const double delta = kv.get_double("delta", 1.0);
    if (name == "zero") return LevyModel::zero_measure(delta);
    if (name == "compound_poisson") {
        const double intensity = kv.get_double("intensity", 1.0);
        const std::string jumpName = kv.get_string("jump", "exponential");
        JumpLaw law;
        if (jumpName == "exponential") {
            law = JumpLaw::exponential(kv.get_double("jump_scale", 1.0));
        } else if (jumpName == "gamma") {
            law = JumpLaw::gamma(kv.get_double("jump_shape", 1.0),
                                 kv.get_double("jump_scale", 1.0));
        } else if (jumpName == "uniform") {
            law = JumpLaw::uniform(kv.get_double("jump_lo", 0.0),
                                   kv.get_double("jump_hi", 1.0));
        } else {
            throw ConfigError("unknown jump law: " + jumpName +
                              " (expected exponential|gamma|uniform)");
        }
        return LevyModel::compound_poisson(intensity, law, delta);
    }
    if (name == "gamma_subordinator")
        return LevyModel::gamma_subordinator(kv.get_double("shape", 1.0),
                                             kv.get_double("scale", 1.0), delta);
    if (name == "bilateral_gamma")
        return LevyModel::bilateral_gamma(
            kv.get_double("shape_pos", 1.0), kv.get_double("scale_pos", 1.0),
            kv.get_double("shape_neg", 1.0), kv.get_double("scale_neg", 1.0), delta);
    throw ConfigError("unknown model: " + name +
                      " (expected zero|compound_poisson|gamma_subordinator|bilateral_gamma)");
}

Functional parse_functional(KeyValueConfig& kv) {
    const std::string name = kv.require_string("functional");
    if (name == "gaussian")
        return Functional::gaussian(kv.get_double("center", 0.0),
                                    kv.get_double("width", 1.0));
    if (name == "bump")
        return Functional::compact_bump(kv.get_double("bump_lo", 0.5),
                                        kv.get_double("bump_hi", 1.5));
    if (name == "dirac")
        return Functional::dirac_point(kv.get_double("x0", 1.0));
    if (name == "dirac_deriv")
        return Functional::dirac_derivative(kv.get_double("x0", 1.0),
                                            static_cast<int>(kv.get_int("deriv_order", 1)));
    throw ConfigError("unknown functional: " + name +
                      " (expected gaussian|bump|dirac|dirac_deriv)");
}

Kernel parse_kernel(KeyValueConfig& kv) {
    const std::string name = kv.get_string("kernel", "sinc");
    if (name == "sinc") return Kernel::sinc();
    if (name == "taper") return Kernel::taper(kv.get_double("taper_power", 2.0));
    throw ConfigError("unknown kernel: " + name + " (expected sinc|taper)");
}

// Default mu-smoothness input of the rate calculator: the catalog decay index
// of Fmu, capped by the bias exponent the kernel order can deliver.
double default_rate_a(const LevyModel& model, const Functional& f, const Kernel& kernel) {
    double a = mu_decay_index(model);
    if (std::isfinite(kernel.order) && std::isfinite(f.s))
        a = std::min(a, std::max(0.0, kernel.order - f.s));
    if (!std::isfinite(a)) a = 1.0; // placeholder; only reached for the zero model
    return a;
}

} // namespace

void ExperimentConfig::validate() const {
    if (!functional.fourier)
        throw ConfigError("functional carries no Fourier transform");
    if (nList.empty()) throw ConfigError("n_list must be nonempty");
    for (std::size_t i = 0; i < nList.size(); ++i) {
        if (nList[i] < 2) throw ConfigError("n_list entries must be >= 2");
        if (i > 0 && nList[i] <= nList[i - 1])
            throw ConfigError("n_list must be strictly ascending");
    }
    if (mGrid.empty()) throw ConfigError("m_grid must be nonempty");
    if (mGrid.front() < 1) throw ConfigError("m_grid entries must be >= 1");
    if (!std::is_sorted(mGrid.begin(), mGrid.end()) ||
        std::adjacent_find(mGrid.begin(), mGrid.end()) != mGrid.end())
        throw ConfigError("m_grid must be strictly ascending");
    if (replications < 1) throw ConfigError("replications must be >= 1");
    if (threads < 1) throw ConfigError("threads must be >= 1");
    if (gridPointsPerPi < 2) throw ConfigError("grid_per_pi must be >= 2");
    if (universalC <= 0.0) throw ConfigError("universal_c must be positive");
    if (outDir.empty()) throw ConfigError("out_dir must be nonempty");
    try {
        quadrature.validate();
        penalty.validate();
        rate_spec(*this).validate();
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

namespace {

ExperimentConfig parse_experiment_config_impl(KeyValueConfig& kv) {
    ExperimentConfig cfg;
    cfg.model = parse_model(kv);
    cfg.functional = parse_functional(kv);
    cfg.kernel = parse_kernel(kv);

    if (!kv.has("n_list")) throw ConfigError("missing required key: n_list");
    for (const std::int64_t n : kv.get_int_list("n_list", {})) {
        if (n < 2) throw ConfigError("n_list entries must be >= 2");
        cfg.nList.push_back(static_cast<std::size_t>(n));
    }
    std::vector<std::int64_t> defaultM;
    for (std::int64_t m = 1; m <= 64; ++m) defaultM.push_back(m);
    for (const std::int64_t m : kv.get_int_list("m_grid", defaultM)) {
        if (m < 1 || m > (1 << 20)) throw ConfigError("m_grid entries must be in [1, 2^20]");
        cfg.mGrid.push_back(static_cast<int>(m));
    }

    cfg.replications = static_cast<std::size_t>(kv.get_uint("replications", 1));
    cfg.seed = kv.get_uint("seed", 1);
    cfg.threads = static_cast<int>(kv.get_int("threads", 1));
    cfg.outDir = kv.get_string("out_dir", ".");
    cfg.universalC = kv.get_double("universal_c", 1.0);
    cfg.gridPointsPerPi = static_cast<int>(kv.get_int("grid_per_pi", 64));

    cfg.quadrature.nodes = static_cast<int>(kv.get_int("quad_nodes", 8192));
    const std::string rule = kv.get_string("quad_rule", "trapezoid");
    if (rule != "trapezoid")
        throw ConfigError("unknown quad_rule: " + rule + " (only trapezoid is supported)");
    cfg.quadrature.refine = kv.get_bool("quad_refine", false);
    cfg.quadrature.relTol = kv.get_double("quad_rel_tol", 1e-6);

    const std::string inverse = kv.get_string("inverse", "log_truncated");
    if (inverse == "neumann") {
        cfg.inverse = InverseVariant::NeumannIndicator;
    } else if (inverse == "log_truncated") {
        cfg.inverse = InverseVariant::LogTruncated;
    } else {
        throw ConfigError("unknown inverse: " + inverse +
                          " (expected neumann|log_truncated)");
    }

    // Penalty constants: coupled defaults first, then model-derived bounds,
    // then explicit overrides.
    const double c1 = kv.get_double("c1", 1.0);
    const double gamma = kv.get_double("gamma", 0.1);
    const double weightDelta = kv.get_double("weight_delta", 0.25);
    cfg.penalty = PenaltyConfig::with_defaults(c1, gamma, weightDelta);
    {
        const PenaltyConfig derived = PenaltyConfig::for_model(cfg.model, cfg.universalC);
        cfg.penalty.eta = derived.eta;
        cfg.penalty.cbar1 = derived.cbar1;
        cfg.penalty.cbar2 = derived.cbar2;
    }
    cfg.penalty.kappa = kv.get_double("kappa", cfg.penalty.kappa);
    cfg.penalty.eta = kv.get_double("eta", cfg.penalty.eta);
    cfg.penalty.cbar1 = kv.get_double("cbar1", cfg.penalty.cbar1);
    cfg.penalty.cbar2 = kv.get_double("cbar2", cfg.penalty.cbar2);
    cfg.penalty.positivePart = kv.get_bool("positive_part", false);

    // Rate-table inputs: catalog defaults, overridable.
    const std::string defaultRegime =
        cfg.functional.kind == FunctionalKind::Regular ? "sobolev" : "hoelder";
    std::string regime = kv.get_string("regime", defaultRegime);
    if (regime == "sobolev") {
        cfg.regime = SmoothnessRegime::Sobolev;
    } else if (regime == "hoelder" || regime == "holder") {
        cfg.regime = SmoothnessRegime::Hoelder;
    } else {
        throw ConfigError("unknown regime: " + regime + " (expected sobolev|hoelder)");
    }
    const DecayProfile profile = decay_profile(cfg.model);
    cfg.rateA = kv.get_double("rate_a", default_rate_a(cfg.model, cfg.functional, cfg.kernel));
    cfg.rateS = kv.get_double("rate_s", cfg.functional.s);
    cfg.rateBeta = kv.get_double("rate_beta", profile.beta / cfg.model.delta);
    cfg.rateRho = kv.get_double("rate_rho", profile.rho);

    kv.reject_unknown_keys();
    cfg.validate();
    return cfg;
}

} // namespace

ExperimentConfig parse_experiment_config(KeyValueConfig& kv) {
    try {
        return parse_experiment_config_impl(kv);
    } catch (const std::invalid_argument& e) {
        // Catalog constructors enforce their own contracts; when the offending
        // values came from a config file, surface them uniformly.
        throw ConfigError(e.what());
    }
}

ExperimentConfig load_experiment_config(const std::string& path) {
    KeyValueConfig kv = KeyValueConfig::from_file(path);
    return parse_experiment_config(kv);
}

RateSpec rate_spec(const ExperimentConfig& cfg) {
    RateSpec spec;
    spec.a = cfg.rateA;
    spec.s = cfg.rateS;
    spec.beta = cfg.rateBeta;
    spec.rho = cfg.rateRho;
    spec.delta = cfg.model.delta;
    spec.c1Finite = std::isfinite(cfg.penalty.cbar1);
    spec.regime = cfg.regime;
    return spec;
}

} // namespace levyest
