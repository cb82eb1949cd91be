// runner.cpp - bath-fit, respond, anneal, rdm and validate workflows

#include "hseom/runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "hseom/bath.hpp"
#include "hseom/dynamics.hpp"
#include "hseom/format.hpp"
#include "hseom/hierarchy.hpp"
#include "hseom/observables.hpp"
#include "hseom/oracles.hpp"
#include "hseom/report.hpp"

namespace hseom {

namespace {

std::vector<double> linspace(double a, double b, int n)
{
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(n > 1 ? a + (b - a) * i / (n - 1) : b);
    return out;
}

double nominal_step(const RunConfig& cfg, double horizon)
{
    return cfg.hierarchy.dt > 0.0 ? cfg.hierarchy.dt : default_step(cfg.bath.Omega, horizon);
}

InitialState initial_state(const RunConfig& cfg)
{
    switch (cfg.model.kind) {
    case ModelKind::pspin:
        return uniform_superposition_transform(cfg.model.qubits);
    case ModelKind::dephasing:
        return make_pure_state(VectorXc::Ones(2));
    default:
        return localized(2, 1);
    }
}

struct Artifacts {
    std::filesystem::path dir;
    std::vector<std::string> files;

    void put(const std::string& name, const std::string& text)
    {
        write_text(dir / name, text);
        files.push_back(name);
    }
    void put_table(const std::string& stem, const CsvTable& table, const std::string& title, bool plot = true)
    {
        const std::string csv = table.to_string();
        put(stem + ".csv", csv);
        if (plot) put(stem + ".svg", svg_from_csv(csv, title));
    }
};

void run_bath_fit(const RunConfig& cfg, const BathSpec& spec, const BathExpansion& exp, Artifacts& art,
                  std::ostream& log)
{
    std::ostringstream coeffs;
    write_expansion(coeffs, spec, exp);
    art.put("bath_coefficients.csv", coeffs.str());

    CsvTable table{{"t (1/energy)", "re_alpha_quadrature (energy^2)", "im_alpha_quadrature (energy^2)",
                    "re_alpha_expansion (energy^2)", "im_alpha_expansion (energy^2)", "relative_error (1)"},
                   {}};
    const int n = std::max(cfg.horizon.record_points, 2);
    const cplx a0 = alpha_quadrature(spec, 0.0);
    double worst = 0.0;
    for (double t : linspace(0.0, cfg.horizon.t, n)) {
        const cplx q = alpha_quadrature(spec, t);
        const cplx r = alpha_reconstruct(exp, t);
        const double err = std::abs(q - r) / std::abs(a0);
        worst = std::max(worst, err);
        table.add_row({t, q.real(), q.imag(), r.real(), r.imag(), err});
    }
    art.put_table("alpha", table, "bath correlation function");
    log << "max relative deviation on [0, " << cfg.horizon.t << "]: " << worst << '\n';
    log << "minimal K for the horizon: " << minimal_basis_size(cfg.bath.Omega, cfg.horizon.t) << '\n';
    log << "spectral weight above Omega: " << spectral_tail_fraction(spec) << '\n';
}

void run_respond(const RunConfig& cfg, const Engine& engine, Artifacts& art, std::ostream& log,
                 std::vector<std::string>& warnings)
{
    ResponseOptions opt;
    opt.t0 = equilibration_time(cfg);
    opt.spacing = cfg.horizon.spacing;
    opt.points = cfg.horizon.points;
    log << "equilibration time t0 = " << opt.t0 << '\n';
    const CorrelationResult result = response_function(engine, opt);
    for (const auto& w : result.warnings) warnings.push_back(w);

    CsvTable rt{{"t (1/energy)", "R (1)"}, {}};
    const auto r = result.response();
    for (std::size_t i = 0; i < r.size(); ++i) rt.add_row({result.times[i], r[i]});
    art.put("response_t.csv", rt.to_string());

    const Spectrum spec = half_fourier(result, linspace(cfg.horizon.omega_min, cfg.horizon.omega_max,
                                                        cfg.horizon.omega_points),
                                       FourierOptions{cfg.horizon.window});
    CsvTable rw{{"omega (energy)", "re_R (1/energy)", "im_R (1/energy)"}, {}};
    for (std::size_t i = 0; i < spec.omegas.size(); ++i)
        rw.add_row({spec.omegas[i], spec.values[i].real(), spec.values[i].imag()});
    const std::string csv = rw.to_string();
    art.put("response_w.csv", csv);
    art.put("response.svg", svg_from_csv(csv, "first-order response spectrum"));
    const SpectralPeak peak = dominant_peak(spec);
    log << "dominant |Im R| peak at omega = " << peak.omega << " (runner-up ratio " << peak.runner_up_ratio << ")\n";
}

void run_anneal(const RunConfig& cfg, const Engine& engine, Artifacts& art)
{
    const auto times = linspace(0.0, cfg.model.t_final, cfg.horizon.record_points);
    const AnnealingPopulations pops = annealing_populations(engine, cfg.model.qubits, times);
    CsvTable table{{"t (1/energy)", "P_ground (1)", "P_e_rep (1)", "P_e_sum (1)"}, {}};
    for (std::size_t i = 0; i < times.size(); ++i)
        table.add_row({times[i], pops.ground[i], pops.excited_representative[i], pops.excited_sum[i]});
    art.put_table("populations", table, "annealing populations");
}

void run_rdm(const RunConfig& cfg, const Engine& engine, Artifacts& art)
{
    const Eigen::Index d = engine.model().dim();
    const auto times = linspace(0.0, cfg.horizon.t, cfg.horizon.record_points);
    std::vector<Operator> elements;
    CsvTable table{{"t (1/energy)"}, {}};
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) {
            elements.push_back(Operator::transition(d, j, i));
            const std::string ij = std::to_string(i) + "_" + std::to_string(j);
            table.columns.push_back("re_rho_" + ij + " (1)");
            table.columns.push_back("im_rho_" + ij + " (1)");
        }
    const MatrixXc values = expectation_series(engine, times, elements, initial_state(cfg));
    for (std::size_t r = 0; r < times.size(); ++r) {
        std::vector<double> row{times[r]};
        for (Eigen::Index c = 0; c < values.cols(); ++c) {
            row.push_back(values(static_cast<Eigen::Index>(r), c).real());
            row.push_back(values(static_cast<Eigen::Index>(r), c).imag());
        }
        table.add_row(std::move(row));
    }
    art.put_table("rdm", table, "reduced density matrix", d <= 2);
}

int run_validate(int workers, Artifacts& art, std::ostream& log)
{
    const auto rows = validation_suite(workers);
    std::ostringstream csv;
    csv << "check,residual (1),threshold (1),passed\n";
    bool ok = true;
    for (const auto& row : rows) {
        csv << row.check << ',' << format_double(row.residual) << ',' << format_double(row.threshold) << ','
            << (row.passed() ? "true" : "false") << '\n';
        log << (row.passed() ? "PASS " : "FAIL ") << row.check << ": residual " << row.residual << " (threshold "
            << row.threshold << ")\n";
        ok = ok && row.passed();
    }
    art.put("validation.csv", csv.str());
    return ok ? 0 : 3;
}

} // namespace

std::string PreflightReport::to_string() const
{
    std::ostringstream os;
    os << "awf_count = " << awf << '\n'
       << "dim = " << dim << '\n'
       << "estimated_bytes = " << bytes << '\n'
       << "dt = " << format_double(dt) << '\n'
       << "horizon = " << format_double(horizon) << '\n'
       << "estimated_steps = " << steps << '\n';
    for (const auto& w : warnings) os << "warning: " << w << '\n';
    return os.str();
}

PreflightReport preflight(const RunConfig& cfg)
{
    PreflightReport rep;
    rep.warnings = validate_config(cfg);
    rep.awf = awf_count(cfg.bath.K, cfg.hierarchy.N_max);
    rep.dim = cfg.model.kind == ModelKind::pspin ? (1LL << cfg.model.qubits) : 2;
    if (rep.awf > cfg.hierarchy.max_awf)
        throw ResourceError("hierarchy needs " + std::to_string(rep.awf) + " AWFs, budget is " +
                                std::to_string(cfg.hierarchy.max_awf),
                            rep.awf);
    rep.bytes = rep.awf * static_cast<std::uint64_t>(rep.dim) * 16u * 6u;
    rep.horizon = run_horizon(cfg);
    rep.dt = nominal_step(cfg, rep.horizon);
    auto steps = [&](double len) { return static_cast<long long>(std::llround(len / rep.dt)); };
    switch (cfg.experiment) {
    case Experiment::respond: {
        const double t0 = equilibration_time(cfg);
        rep.steps = steps(rep.horizon) + 2 * steps(t0);
        for (int j = 0; j < cfg.horizon.points; ++j) rep.steps += steps(t0 + cfg.horizon.spacing * j);
        break;
    }
    case Experiment::anneal:
    case Experiment::rdm: {
        const long long observables = cfg.experiment == Experiment::anneal ? 3 : rep.dim * rep.dim;
        const long long seeds = cfg.model.kind == ModelKind::dephasing ? 2 : 1;
        long long back = 0;
        for (double t : linspace(0.0, rep.horizon, cfg.horizon.record_points)) back += steps(t);
        rep.steps = seeds * (steps(rep.horizon) + observables * back);
        break;
    }
    default:
        rep.steps = 0;
    }
    return rep;
}

std::vector<ValidationRow> validation_suite(int workers)
{
    std::vector<ValidationRow> rows;
    std::mt19937 rng(20240601);
    std::normal_distribution<double> gauss;
    auto random_complex = [&](Eigen::Index r, Eigen::Index c) {
        MatrixXc m(r, c);
        for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = cplx(gauss(rng), gauss(rng));
        return m;
    };

    // Circular cutoff: c_1 = c_3 = -i pi zeta nu^2 / 8, other odd terms vanish.
    {
        const double zeta = 0.35, nu = 6.0;
        const BathExpansion exp = compute_coefficients({OhmicCircular{zeta, nu}, InverseTemperature::finite(3.0), nu, 20});
        const cplx expected(0.0, -std::numbers::pi * zeta * nu * nu / 8.0);
        double res = std::max(std::abs(exp.c(1) - expected), std::abs(exp.c(3) - expected));
        for (int k = 5; k < exp.K; k += 2) res = std::max(res, std::abs(exp.c(k)));
        rows.push_back({"circular odd coefficients", res, 1e-8});
    }
    // Expansion fidelity on the circular preset.
    {
        const BathSpec spec{OhmicCircular{0.35, 6.0}, InverseTemperature::finite(3.0), 6.0, 20};
        const BathExpansion exp = compute_coefficients(spec);
        const double scale = std::abs(alpha_quadrature(spec, 0.0));
        double res = 0.0;
        for (double t : linspace(0.0, 2.0, 81))
            res = std::max(res, std::abs(alpha_reconstruct(exp, t) - alpha_quadrature(spec, t)) / scale);
        rows.push_back({"expansion fidelity t<=2", res, 1e-4});
    }
    // Generator against the assembled operator.
    {
        struct Instance {
            int dim, K, N;
        };
        for (const Instance in : {Instance{2, 3, 2}, Instance{2, 5, 1}, Instance{4, 2, 2}}) {
            MatrixXc h = random_complex(in.dim, in.dim), v = random_complex(in.dim, in.dim);
            const SystemModel model = dense_model(h + h.adjoint(), v + v.adjoint());
            const BathExpansion bath = make_expansion(5.0, random_complex(in.K, 1));
            const HierarchySpace space(in.K, in.N);
            const HseomGenerator gen(space, bath, model);
            double res = 0.0;
            for (int sign : {+1, -1}) {
                const DenseGenerator oracle = assemble_generator(space, bath, model, 0.3, sign);
                StackMatrix x = random_complex(space.size(), in.dim);
                StackMatrix y;
                gen.apply(x, 0.3, sign, y, workers);
                const VectorXc flat = Eigen::Map<const VectorXc>(x.data(), x.size());
                const VectorXc ref = oracle.matrix * flat;
                res = std::max(res, (Eigen::Map<const VectorXc>(y.data(), y.size()) - ref).cwiseAbs().maxCoeff());
            }
            std::ostringstream name;
            name << "generator oracle dim=" << in.dim << " K=" << in.K << " N_max=" << in.N;
            rows.push_back({name.str(), res, 1e-13});
        }
    }
    // Closed system: forward branch is exact unitary evolution, the full
    // contour returns the initial state.
    {
        EngineOptions opt;
        opt.dt = 1e-3;
        opt.workers = workers;
        const Engine engine(spin_boson(std::numbers::pi),
                            compute_coefficients({OhmicCircular{0.0, 6.0}, InverseTemperature::finite(3.0), 6.0, 4}),
                            1, opt);
        const VectorXc plus = VectorXc::Ones(2) / std::sqrt(2.0);
        ContourPlan plan;
        plan.t = 1.0;
        plan.dt = 1e-3;
        plan.record_times = {1.0};
        const Trajectory traj = propagate(engine.generator(), plan, initial_stack(engine.space(), plus), workers);
        const VectorXc exact = closed_system_propagate(engine.model(), plus, 1.0);
        rows.push_back({"closed-system forward branch", (traj.rwf[0] - exact).cwiseAbs().maxCoeff(), 1e-9});
        rows.push_back({"closed-system full contour",
                        (traj.final_stack.data.row(0).transpose() - plus).cwiseAbs().maxCoeff(), 1e-9});
    }
    // Pure dephasing against the exact coherence factor.
    {
        const BathSpec spec{OhmicCircular{0.1, 6.0}, InverseTemperature::finite(3.0), 6.0, 20};
        EngineOptions opt;
        opt.workers = workers;
        const double omega0 = std::numbers::pi, t = 1.0;
        const Engine engine(pure_dephasing(omega0, 1.0), compute_coefficients(spec), 3, opt);
        SparseMatrixXc C(2, 2);
        C.insert(0, 0) = 1.0 / std::sqrt(2.0);
        C.insert(1, 0) = 1.0 / std::sqrt(2.0);
        C.insert(1, 1) = 1.0;
        const MatrixXc rho = expectation_series(engine, {t}, {Operator::transition(2, 0, 1)},
                                                LocalizedWithTransform{0, C});
        // E_1 - E_0 = -omega0
        const cplx expected = 0.5 * std::exp(I * (omega0 * t)) * dephasing_exact(spec, 1.0, t);
        rows.push_back({"pure dephasing t=1", std::abs(rho(0, 0) - expected) / std::abs(expected), 1e-3});
    }
    return rows;
}

int run_experiment(const RunConfig& cfg, std::ostream& log)
{
    const auto start = std::chrono::steady_clock::now();
    const PreflightReport pre = preflight(cfg);
    log << pre.to_string();
    std::vector<std::string> warnings = pre.warnings;

    Artifacts art{cfg.output, {}};
    std::filesystem::create_directories(art.dir);

    int status = 0;
    if (cfg.experiment == Experiment::validate) {
        status = run_validate(cfg.workers, art, log);
    } else {
        const BathSpec spec = bath_spec(cfg);
        const BathExpansion exp = compute_coefficients(spec);
        for (const auto& w : exp.warnings) warnings.push_back(w);
        if (cfg.experiment == Experiment::bath_fit) {
            run_bath_fit(cfg, spec, exp, art, log);
        } else {
            EngineOptions opt;
            opt.dt = cfg.hierarchy.dt;
            opt.workers = cfg.workers;
            opt.max_awf = cfg.hierarchy.max_awf;
            const Engine engine(build_model(cfg), exp, cfg.hierarchy.N_max, opt);
            if (cfg.experiment == Experiment::respond)
                run_respond(cfg, engine, art, log, warnings);
            else if (cfg.experiment == Experiment::anneal)
                run_anneal(cfg, engine, art);
            else
                run_rdm(cfg, engine, art);
        }
    }

    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream manifest;
    manifest << "# run manifest\n"
             << "library_version = " << kLibraryVersion << '\n'
             << "wall_time_seconds = " << wall << '\n'
             << "exit_status = " << status << '\n';
    for (const auto& f : art.files) manifest << "artifact = " << f << '\n';
    for (const auto& w : warnings) manifest << "warning = " << w << '\n';
    manifest << "\n# configuration\n" << serialize_config(cfg);
    write_text(art.dir / "manifest.txt", manifest.str());
    for (std::size_t i = pre.warnings.size(); i < warnings.size(); ++i) log << "warning: " << warnings[i] << '\n';
    return status;
}

int exit_code_for(const std::exception& e)
{
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const std::invalid_argument*>(&e)) return 2;
    if (dynamic_cast<const ResourceError*>(&e) || dynamic_cast<const std::overflow_error*>(&e)) return 4;
    return 3;
}

std::string error_kind(const std::exception& e)
{
    switch (exit_code_for(e)) {
    case 2:
        return "config";
    case 4:
        return "resource";
    default:
        return "numerical";
    }
}

} // namespace hseom
