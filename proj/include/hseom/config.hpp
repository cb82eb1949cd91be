// config.hpp - run configuration: parsing, serialization and cross-field checks
//
// Grammar (one statement per line):
//
//   [section]          starts a section
//   key = value        assigns within the current section
//   # or ; ...         comment; blank lines are ignored
//
// Sections and keys are fixed (see RunConfig). Reals use '.' decimals,
// beta accepts "inf" for zero temperature.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hseom/bath.hpp"
#include "hseom/models.hpp"

namespace hseom {

enum class Experiment { bath_fit, respond, anneal, rdm, validate };
enum class ModelKind { spin_boson, dephasing, pspin };

struct ModelConfig {
    ModelKind kind = ModelKind::spin_boson;
    double omega0 = 3.141592653589793;
    double coupling = 1.0; // dephasing: V = (coupling / 2) sigma^z
    int qubits = 4;
    double Gamma = 1.0;
    int p = 5;
    double t_final = 1.0;

    bool operator==(const ModelConfig&) const = default;
};

struct BathConfig {
    std::string density = "circular"; // circular | exponential
    double zeta = 0.35;               // circular coupling
    double nu = 6.0;                  // circular cutoff
    double eta = 0.0;                 // exponential coupling
    double gamma = 6.0;               // exponential cutoff
    std::optional<double> beta = 3.0; // empty = zero temperature
    double Omega = 6.0;
    int K = 20;

    bool operator==(const BathConfig&) const = default;
};

struct HierarchyConfig {
    int N_max = 3;
    double dt = 0.0; // 0 = default step
    std::uint64_t max_awf = 20'000'000;

    bool operator==(const HierarchyConfig&) const = default;
};

struct HorizonConfig {
    double t = 2.0;       // rdm/bath-fit horizon
    double t0 = -1.0;     // response equilibration time; negative = automatic
    double spacing = 0.05;
    int points = 41;
    double omega_min = 0.0;
    double omega_max = 8.0;
    int omega_points = 801;
    double window = 0.0;  // exponential Fourier window T_w, 0 = off
    int record_points = 11;

    bool operator==(const HorizonConfig&) const = default;
};

struct RunConfig {
    Experiment experiment = Experiment::respond;
    ModelConfig model;
    BathConfig bath;
    HierarchyConfig hierarchy;
    HorizonConfig horizon;
    std::string output = "out";
    int workers = 1;
    bool deterministic = false;

    bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(std::istream& is);
RunConfig parse_config_string(const std::string& text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& cfg);

std::string experiment_name(Experiment e);
Experiment experiment_from_name(const std::string& name);

BathSpec bath_spec(const RunConfig& cfg);
SystemModel build_model(const RunConfig& cfg);

// Largest forward time T for which the Jacobi-Anger residual at x = 1
// stays below tol on [0, T] (scanned in steps of 0.01 / Omega).
double basis_horizon(double Omega, int K, double tol);

// Longest contour horizon (forward time) the experiment needs.
double run_horizon(const RunConfig& cfg);

// Response equilibration time: the configured value, or 10 / (zeta nu)
// capped so that t0 + response window stays inside the basis horizon.
double equilibration_time(const RunConfig& cfg);

// Throws ConfigError on invalid fields; returns advisory warnings.
std::vector<std::string> validate_config(const RunConfig& cfg);

} // namespace hseom
