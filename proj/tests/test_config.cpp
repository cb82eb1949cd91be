// test_config.cpp - configuration grammar, round trip and cross-field checks

#include <string>

#include "doctest.h"
#include "hseom/bath.hpp"
#include "hseom/config.hpp"

using namespace hseom;

TEST_CASE("parse a complete file")
{
    const RunConfig cfg = parse_config_string(R"(
# annealing run
[run]
experiment = anneal
; output directory
output = results
workers = 2
deterministic = true

[model]
kind = pspin
qubits = 4
p = 5
Gamma = 1
t_final = 1

[bath]
density = circular
zeta = 0.1
nu = 3
beta = inf
Omega = 3
K = 5

[hierarchy]
N_max = 2
dt = 0.005
)");
    CHECK(cfg.experiment == Experiment::anneal);
    CHECK(cfg.output == "results");
    CHECK(cfg.workers == 2);
    CHECK(cfg.deterministic);
    CHECK(cfg.model.kind == ModelKind::pspin);
    CHECK(cfg.model.qubits == 4);
    CHECK_FALSE(cfg.bath.beta.has_value());
    CHECK(cfg.bath.K == 5);
    CHECK(cfg.hierarchy.dt == 0.005);
    CHECK_NOTHROW(validate_config(cfg));
    CHECK(build_model(cfg).dim() == 16);
}

TEST_CASE("round trip is the identity")
{
    RunConfig cfg;
    cfg.experiment = Experiment::rdm;
    cfg.model.kind = ModelKind::dephasing;
    cfg.model.omega0 = 1.0 / 3.0;
    cfg.bath.density = "exponential";
    cfg.bath.eta = 0.1 * 2.718281828459045;
    cfg.bath.gamma = 6.0;
    cfg.bath.Omega = 20.0;
    cfg.bath.beta.reset();
    cfg.horizon.window = 1e-7;
    cfg.output = "a b/c";
    const RunConfig back = parse_config_string(serialize_config(cfg));
    CHECK(back == cfg);
    CHECK(serialize_config(back) == serialize_config(cfg));
    CHECK(parse_config_string(serialize_config(RunConfig{})) == RunConfig{});
}

TEST_CASE("errors name the field or line")
{
    auto message = [](const std::string& text) {
        try {
            parse_config_string(text);
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message("[bath]\nK = abc\n").find("bath.K") != std::string::npos);
    CHECK(message("[bath]\nwhat = 1\n").find("what") != std::string::npos);
    CHECK(message("K = 3\n").find("line 1") != std::string::npos);
    CHECK(message("[bath\n").find("line 1") != std::string::npos);
    CHECK(message("[run]\nexperiment = fly\n").find("run.experiment") != std::string::npos);
    CHECK(message("[bath]\nbeta = -1\n").empty() == false);

    RunConfig bad;
    bad.bath.density = "circular";
    bad.bath.Omega = 5.0;
    CHECK_THROWS_AS(validate_config(bad), ConfigError);
    bad = RunConfig{};
    bad.experiment = Experiment::anneal;
    CHECK_THROWS_AS(validate_config(bad), ConfigError);
    bad = RunConfig{};
    bad.horizon.spacing = 0.0;
    CHECK_THROWS_AS(validate_config(bad), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/file.cfg"), ConfigError);
}

TEST_CASE("horizons")
{
    RunConfig cfg;
    cfg.horizon.t0 = 1.0;
    CHECK(equilibration_time(cfg) == 1.0);
    cfg.horizon.t0 = -1.0;
    const double t0 = equilibration_time(cfg);
    CHECK(t0 >= 0.0);
    CHECK(t0 <= 10.0 / (cfg.bath.zeta * cfg.bath.nu));
    const double h = basis_horizon(6.0, 20, 1e-6);
    CHECK(h > 1.0);
    CHECK(h < 4.0);
    CHECK(jacobi_anger_residual(1.0, h, 20, 6.0) <= 1e-6);
    CHECK(basis_horizon(6.0, 20, 1e-4) > h);
    CHECK(basis_horizon(6.0, 40, 1e-6) > basis_horizon(6.0, 20, 1e-6));
}
