// config.cpp - line-oriented config parser and serializer

#include "hseom/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "hseom/format.hpp"

namespace hseom {

namespace {

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void field_error(const std::string& field, const std::string& what)
{
    throw ConfigError(field + ": " + what);
}

double to_real(const std::string& field, const std::string& v)
{
    double out = 0.0;
    if (!parse_double(v, out) || !std::isfinite(out)) field_error(field, "expected a finite real, got '" + v + "'");
    return out;
}

long long to_integer(const std::string& field, const std::string& v)
{
    std::size_t used = 0;
    long long out = 0;
    try {
        out = std::stoll(v, &used);
    } catch (const std::exception&) {
        field_error(field, "expected an integer, got '" + v + "'");
    }
    if (used != v.size()) field_error(field, "expected an integer, got '" + v + "'");
    return out;
}

bool to_bool(const std::string& field, const std::string& v)
{
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    field_error(field, "expected true or false, got '" + v + "'");
}

std::string model_name(ModelKind k)
{
    switch (k) {
    case ModelKind::dephasing:
        return "dephasing";
    case ModelKind::pspin:
        return "pspin";
    default:
        return "spin-boson";
    }
}

// Every field as a (section.key) -> (reader, writer) pair.
struct Field {
    std::function<void(RunConfig&, const std::string&, const std::string&)> read;
    std::function<std::string(const RunConfig&)> write;
};

template <typename T>
Field real_field(T RunConfig::*section, double T::*member)
{
    return {[=](RunConfig& c, const std::string& name, const std::string& v) { (c.*section).*member = to_real(name, v); },
            [=](const RunConfig& c) { return format_double((c.*section).*member); }};
}

template <typename T, typename I>
Field int_field(T RunConfig::*section, I T::*member)
{
    return {[=](RunConfig& c, const std::string& name, const std::string& v) {
                const long long x = to_integer(name, v);
                if (x < 0) field_error(name, "must be non-negative");
                (c.*section).*member = static_cast<I>(x);
            },
            [=](const RunConfig& c) { return std::to_string((c.*section).*member); }};
}

const std::vector<std::pair<std::string, Field>>& fields()
{
    static const std::vector<std::pair<std::string, Field>> table = [] {
        std::vector<std::pair<std::string, Field>> f;
        f.push_back({"run.experiment",
                     {[](RunConfig& c, const std::string&, const std::string& v) { c.experiment = experiment_from_name(v); },
                      [](const RunConfig& c) { return experiment_name(c.experiment); }}});
        f.push_back({"run.output", {[](RunConfig& c, const std::string& n, const std::string& v) {
                                        if (v.empty()) field_error(n, "must not be empty");
                                        c.output = v;
                                    },
                                    [](const RunConfig& c) { return c.output; }}});
        f.push_back({"run.workers", {[](RunConfig& c, const std::string& n, const std::string& v) {
                                         const long long w = to_integer(n, v);
                                         if (w < 1 || w > 1024) field_error(n, "must lie in 1..1024");
                                         c.workers = static_cast<int>(w);
                                     },
                                     [](const RunConfig& c) { return std::to_string(c.workers); }}});
        f.push_back({"run.deterministic",
                     {[](RunConfig& c, const std::string& n, const std::string& v) { c.deterministic = to_bool(n, v); },
                      [](const RunConfig& c) { return std::string(c.deterministic ? "true" : "false"); }}});

        f.push_back({"model.kind", {[](RunConfig& c, const std::string& n, const std::string& v) {
                                        if (v == "spin-boson")
                                            c.model.kind = ModelKind::spin_boson;
                                        else if (v == "dephasing")
                                            c.model.kind = ModelKind::dephasing;
                                        else if (v == "pspin")
                                            c.model.kind = ModelKind::pspin;
                                        else
                                            field_error(n, "expected spin-boson, dephasing or pspin, got '" + v + "'");
                                    },
                                    [](const RunConfig& c) { return model_name(c.model.kind); }}});
        f.push_back({"model.omega0", real_field(&RunConfig::model, &ModelConfig::omega0)});
        f.push_back({"model.coupling", real_field(&RunConfig::model, &ModelConfig::coupling)});
        f.push_back({"model.qubits", int_field(&RunConfig::model, &ModelConfig::qubits)});
        f.push_back({"model.Gamma", real_field(&RunConfig::model, &ModelConfig::Gamma)});
        f.push_back({"model.p", int_field(&RunConfig::model, &ModelConfig::p)});
        f.push_back({"model.t_final", real_field(&RunConfig::model, &ModelConfig::t_final)});

        f.push_back({"bath.density", {[](RunConfig& c, const std::string& n, const std::string& v) {
                                          if (v != "circular" && v != "exponential")
                                              field_error(n, "expected circular or exponential, got '" + v + "'");
                                          c.bath.density = v;
                                      },
                                      [](const RunConfig& c) { return c.bath.density; }}});
        f.push_back({"bath.zeta", real_field(&RunConfig::bath, &BathConfig::zeta)});
        f.push_back({"bath.nu", real_field(&RunConfig::bath, &BathConfig::nu)});
        f.push_back({"bath.eta", real_field(&RunConfig::bath, &BathConfig::eta)});
        f.push_back({"bath.gamma", real_field(&RunConfig::bath, &BathConfig::gamma)});
        f.push_back({"bath.beta", {[](RunConfig& c, const std::string& n, const std::string& v) {
                                       if (v == "inf") {
                                           c.bath.beta.reset();
                                           return;
                                       }
                                       const double b = to_real(n, v);
                                       if (!(b > 0.0)) field_error(n, "must be positive or 'inf'");
                                       c.bath.beta = b;
                                   },
                                   [](const RunConfig& c) {
                                       return c.bath.beta ? format_double(*c.bath.beta) : std::string("inf");
                                   }}});
        f.push_back({"bath.Omega", real_field(&RunConfig::bath, &BathConfig::Omega)});
        f.push_back({"bath.K", int_field(&RunConfig::bath, &BathConfig::K)});

        f.push_back({"hierarchy.N_max", int_field(&RunConfig::hierarchy, &HierarchyConfig::N_max)});
        f.push_back({"hierarchy.dt", real_field(&RunConfig::hierarchy, &HierarchyConfig::dt)});
        f.push_back({"hierarchy.max_awf", int_field(&RunConfig::hierarchy, &HierarchyConfig::max_awf)});

        f.push_back({"horizon.t", real_field(&RunConfig::horizon, &HorizonConfig::t)});
        f.push_back({"horizon.t0", real_field(&RunConfig::horizon, &HorizonConfig::t0)});
        f.push_back({"horizon.spacing", real_field(&RunConfig::horizon, &HorizonConfig::spacing)});
        f.push_back({"horizon.points", int_field(&RunConfig::horizon, &HorizonConfig::points)});
        f.push_back({"horizon.omega_min", real_field(&RunConfig::horizon, &HorizonConfig::omega_min)});
        f.push_back({"horizon.omega_max", real_field(&RunConfig::horizon, &HorizonConfig::omega_max)});
        f.push_back({"horizon.omega_points", int_field(&RunConfig::horizon, &HorizonConfig::omega_points)});
        f.push_back({"horizon.window", real_field(&RunConfig::horizon, &HorizonConfig::window)});
        f.push_back({"horizon.record_points", int_field(&RunConfig::horizon, &HorizonConfig::record_points)});
        return f;
    }();
    return table;
}

const Field* find_field(const std::string& name)
{
    for (const auto& [key, field] : fields())
        if (key == name) return &field;
    return nullptr;
}

} // namespace

std::string experiment_name(Experiment e)
{
    switch (e) {
    case Experiment::bath_fit:
        return "bath-fit";
    case Experiment::anneal:
        return "anneal";
    case Experiment::rdm:
        return "rdm";
    case Experiment::validate:
        return "validate";
    default:
        return "respond";
    }
}

Experiment experiment_from_name(const std::string& name)
{
    if (name == "bath-fit") return Experiment::bath_fit;
    if (name == "respond") return Experiment::respond;
    if (name == "anneal") return Experiment::anneal;
    if (name == "rdm") return Experiment::rdm;
    if (name == "validate") return Experiment::validate;
    throw ConfigError("run.experiment: unknown experiment '" + name + "'");
}

RunConfig parse_config(std::istream& is)
{
    RunConfig cfg;
    std::string line, section;
    int number = 0;
    while (std::getline(is, line)) {
        ++number;
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#' || text[0] == ';') continue;
        const std::string where = "line " + std::to_string(number);
        if (text.front() == '[') {
            if (text.back() != ']') throw ConfigError(where + ": unterminated section header");
            section = trim(text.substr(1, text.size() - 2));
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
        if (section.empty()) throw ConfigError(where + ": assignment outside a section");
        const std::string name = section + "." + trim(text.substr(0, eq));
        const Field* field = find_field(name);
        if (!field) throw ConfigError(where + ": unknown field '" + name + "'");
        field->read(cfg, name, trim(text.substr(eq + 1)));
    }
    return cfg;
}

RunConfig parse_config_string(const std::string& text)
{
    std::istringstream is(text);
    return parse_config(is);
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in);
}

std::string serialize_config(const RunConfig& cfg)
{
    std::ostringstream os;
    std::string section;
    for (const auto& [name, field] : fields()) {
        const auto dot = name.find('.');
        const std::string sec = name.substr(0, dot);
        if (sec != section) {
            if (!section.empty()) os << '\n';
            os << '[' << sec << "]\n";
            section = sec;
        }
        os << name.substr(dot + 1) << " = " << field.write(cfg) << '\n';
    }
    return os.str();
}

BathSpec bath_spec(const RunConfig& cfg)
{
    BathSpec spec;
    if (cfg.bath.density == "circular")
        spec.density = OhmicCircular{cfg.bath.zeta, cfg.bath.nu};
    else
        spec.density = OhmicExponential{cfg.bath.eta, cfg.bath.gamma};
    spec.beta = cfg.bath.beta ? InverseTemperature::finite(*cfg.bath.beta) : InverseTemperature::infinite();
    spec.Omega = cfg.bath.Omega;
    spec.K = cfg.bath.K;
    return spec;
}

SystemModel build_model(const RunConfig& cfg)
{
    switch (cfg.model.kind) {
    case ModelKind::dephasing:
        return pure_dephasing(cfg.model.omega0, cfg.model.coupling);
    case ModelKind::pspin:
        return pspin_annealing(cfg.model.qubits, cfg.model.Gamma, cfg.model.p, cfg.model.t_final);
    default:
        return spin_boson(cfg.model.omega0);
    }
}

double basis_horizon(double Omega, int K, double tol)
{
    const double step = 0.01 / Omega;
    double T = 0.0;
    while (T < 1e4 && jacobi_anger_residual(1.0, T + step, K, Omega) <= tol) T += step;
    return T;
}

double equilibration_time(const RunConfig& cfg)
{
    if (cfg.horizon.t0 >= 0.0) return cfg.horizon.t0;
    const bool circular = cfg.bath.density == "circular";
    const double zeta = circular ? cfg.bath.zeta : 2.0 * cfg.bath.eta / std::exp(1.0);
    const double nu = circular ? cfg.bath.nu : cfg.bath.gamma;
    const double wanted = zeta * nu > 0.0 ? 10.0 / (zeta * nu) : 0.0;
    const double window = cfg.horizon.spacing * (cfg.horizon.points - 1);
    const double cap = basis_horizon(cfg.bath.Omega, cfg.bath.K, 1e-4) - window;
    // Keep t0 on the response grid.
    const double t0 = std::max(0.0, std::min(wanted, cap));
    return std::floor(t0 / cfg.horizon.spacing) * cfg.horizon.spacing;
}

double run_horizon(const RunConfig& cfg)
{
    switch (cfg.experiment) {
    case Experiment::respond:
        return equilibration_time(cfg) + cfg.horizon.spacing * (cfg.horizon.points - 1);
    case Experiment::anneal:
        return cfg.model.t_final;
    default:
        return cfg.horizon.t;
    }
}

std::vector<std::string> validate_config(const RunConfig& cfg)
{
    std::vector<std::string> warnings;
    if (cfg.bath.K < 1) throw ConfigError("bath.K: must be at least 1");
    if (cfg.bath.K > 65535) throw ConfigError("bath.K: must not exceed 65535");
    if (cfg.hierarchy.N_max > 65535) throw ConfigError("hierarchy.N_max: must not exceed 65535");
    if (cfg.hierarchy.dt < 0.0) throw ConfigError("hierarchy.dt: must be non-negative");
    if (!(cfg.bath.Omega > 0.0)) throw ConfigError("bath.Omega: must be positive");
    if (cfg.horizon.t < 0.0) throw ConfigError("horizon.t: must be non-negative");
    if (!(cfg.horizon.spacing > 0.0)) throw ConfigError("horizon.spacing: must be positive");
    if (cfg.horizon.points < 1) throw ConfigError("horizon.points: must be at least 1");
    if (cfg.horizon.record_points < 1) throw ConfigError("horizon.record_points: must be at least 1");
    if (cfg.horizon.omega_points < 1) throw ConfigError("horizon.omega_points: must be at least 1");
    if (cfg.horizon.omega_max < cfg.horizon.omega_min)
        throw ConfigError("horizon.omega_max: must not be below horizon.omega_min");
    if (cfg.horizon.window < 0.0) throw ConfigError("horizon.window: must be non-negative");
    if (cfg.bath.density == "circular" && !(cfg.bath.nu > 0.0)) throw ConfigError("bath.nu: must be positive");
    if (cfg.bath.density == "exponential" && !(cfg.bath.gamma > 0.0)) throw ConfigError("bath.gamma: must be positive");
    if (cfg.model.kind != ModelKind::pspin && !(cfg.model.omega0 > 0.0)) throw ConfigError("model.omega0: must be positive");
    if (cfg.model.kind == ModelKind::pspin) {
        if (cfg.model.qubits < 1) throw ConfigError("model.qubits: must be at least 1");
        if (cfg.model.p < 1) throw ConfigError("model.p: must be at least 1");
        if (!(cfg.model.t_final > 0.0)) throw ConfigError("model.t_final: must be positive");
    }
    if (cfg.experiment == Experiment::anneal && cfg.model.kind != ModelKind::pspin)
        throw ConfigError("model.kind: the anneal experiment needs the pspin model");
    if (cfg.experiment == Experiment::respond && cfg.model.kind == ModelKind::pspin)
        throw ConfigError("model.kind: the respond experiment needs a two-level model");
    try {
        validate(bath_spec(cfg));
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("bath: ") + e.what());
    }
    if (cfg.experiment == Experiment::validate) return warnings;
    const double T = run_horizon(cfg);
    const double residual = jacobi_anger_residual(1.0, T, cfg.bath.K, cfg.bath.Omega);
    if (residual > 1e-6) {
        std::ostringstream msg;
        msg << "bath.K: Jacobi-Anger residual " << residual << " at Omega t = " << cfg.bath.Omega * T
            << " exceeds 1e-6; the expansion may not hold over the whole horizon";
        warnings.push_back(msg.str());
    }
    return warnings;
}

} // namespace hseom
