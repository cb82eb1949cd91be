// observables.cpp - contour-run drivers for correlations, spectra and populations

#include "hseom/observables.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hseom/format.hpp"

namespace hseom {

namespace {

// Starting vector of one run and the bra its final RWF is projected on.
struct RunSeed {
    VectorXc start;
    VectorXc bra;
};

std::vector<RunSeed> seeds_for(const InitialState& init)
{
    std::vector<RunSeed> seeds;
    if (const auto* loc = std::get_if<LocalizedWithTransform>(&init)) {
        const VectorXc psi = loc->transformed();
        seeds.push_back({psi, psi});
        return seeds;
    }
    const VectorXc& psi = std::get<PureState>(init).vector;
    for (Eigen::Index n = 0; n < psi.size(); ++n) {
        if (psi(n) == cplx{}) continue;
        seeds.push_back({psi * std::conj(psi(n)), VectorXc::Unit(psi.size(), n)});
    }
    return seeds;
}

long steps_of(double length, double dt)
{
    return std::lround(length / dt);
}

// Return branch of a contour turning at T: A at the turn, B (if any) after
// T - t_prime further steps, then the remaining t_prime back to s = 2T.
VectorXc return_run(Propagator& prop, WaveStack stack, double T, double dt, const Operator& A, const Operator* B,
                    double t_prime)
{
    apply_to_stack(A, stack.data);
    stack.s = T;
    if (B) {
        prop.advance(stack, T, dt, steps_of(T - t_prime, dt));
        apply_to_stack(*B, stack.data);
        stack.s = 2.0 * T - t_prime;
        prop.advance(stack, T, dt, steps_of(t_prime, dt));
    } else {
        prop.advance(stack, T, dt, steps_of(T, dt));
    }
    return stack.data.row(0).transpose();
}

// Forward propagation from psi, visiting each of the sorted times once.
template <typename F>
void forward_sweep(const Engine& engine, const VectorXc& psi, const std::vector<double>& times, double dt, F&& visit)
{
    Propagator prop(engine.generator(), engine.options().workers);
    WaveStack stack = initial_stack(engine.space(), psi);
    long at = 0;
    for (double T : times) {
        const long target = steps_of(T, dt);
        if (target < at) throw ConfigError("record times must be sorted ascending");
        stack.s = static_cast<double>(at) * dt;
        prop.advance(stack, T, dt, target - at);
        at = target;
        stack.s = T;
        visit(T, stack);
    }
}

void check_state(const Engine& engine, const InitialState& init)
{
    if (state_dim(init) != engine.model().dim())
        throw ConfigError("initial state dimension does not match the model");
}

} // namespace

std::vector<double> CorrelationResult::response() const
{
    std::vector<double> out;
    out.reserve(values.size());
    for (const cplx& v : values) out.push_back(v.imag());
    return out;
}

cplx two_body_correlation(const Engine& engine, const Operator& A, const Operator& B, double t, double t_prime,
                          const InitialState& init)
{
    if (t < 0.0 || t_prime < 0.0 || t_prime > t) throw ConfigError("two_body_correlation requires 0 <= t' <= t");
    check_state(engine, init);
    const double dt = engine.step_for(t, {t, t - t_prime});
    Propagator prop(engine.generator(), engine.options().workers);
    cplx psi{};
    for (const RunSeed& seed : seeds_for(init)) {
        WaveStack stack = initial_stack(engine.space(), seed.start);
        prop.advance(stack, t, dt, steps_of(t, dt));
        psi += seed.bra.dot(return_run(prop, std::move(stack), t, dt, A, &B, t_prime));
    }
    return psi;
}

MatrixXc expectation_series(const Engine& engine, const std::vector<double>& times,
                            const std::vector<Operator>& observables, const InitialState& init)
{
    check_state(engine, init);
    if (!std::is_sorted(times.begin(), times.end())) throw ConfigError("record times must be sorted ascending");
    if (!times.empty() && times.front() < 0.0) throw ConfigError("record times must be non-negative");
    const double horizon = times.empty() ? 0.0 : times.back();
    // A common grid for every record time.
    const double dt = engine.step_for(horizon, times);

    MatrixXc out = MatrixXc::Zero(static_cast<Eigen::Index>(times.size()),
                                  static_cast<Eigen::Index>(observables.size()));
    Propagator back(engine.generator(), engine.options().workers);
    for (const RunSeed& seed : seeds_for(init)) {
        Eigen::Index row = 0;
        forward_sweep(engine, seed.start, times, dt, [&](double T, const WaveStack& stack) {
            for (std::size_t m = 0; m < observables.size(); ++m)
                out(row, static_cast<Eigen::Index>(m)) +=
                    seed.bra.dot(return_run(back, stack, T, dt, observables[m], nullptr, 0.0));
            ++row;
        });
    }
    return out;
}

MatrixXc reduced_density_matrix(const Engine& engine, double t, const InitialState& init)
{
    if (t < 0.0) throw ConfigError("reduced_density_matrix requires t >= 0");
    const Eigen::Index d = engine.model().dim();
    std::vector<Operator> elements;
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) elements.push_back(Operator::transition(d, j, i));
    const MatrixXc flat = expectation_series(engine, {t}, elements, init);
    MatrixXc rho(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) rho(i, j) = flat(0, i * d + j);
    return rho;
}

CorrelationResult response_function(const Engine& engine, const ResponseOptions& opt)
{
    if (engine.model().dim() != 2) throw ConfigError("response_function expects a two-level model");
    if (opt.t0 < 0.0 || !(opt.spacing > 0.0) || opt.points < 1)
        throw ConfigError("response grid needs t0 >= 0, spacing > 0 and at least one point");
    const double last = opt.t0 + opt.spacing * (opt.points - 1);
    const double dt = engine.step_for(last, {opt.spacing, opt.t0});

    const Operator sx = pauli_matrix(Pauli::X);
    const VectorXc up = VectorXc::Unit(2, 1);
    const Operator p_up = Operator::projector(up);

    // Population drift over the last grid spacing before t0.
    std::vector<double> forward;
    const bool drift_check = opt.t0 >= opt.spacing;
    if (drift_check) forward.push_back(opt.t0 - opt.spacing);
    for (int j = 0; j < opt.points; ++j) forward.push_back(opt.t0 + opt.spacing * j);

    CorrelationResult result;
    std::vector<double> populations;
    Propagator back(engine.generator(), engine.options().workers);
    forward_sweep(engine, up, forward, dt, [&](double T, const WaveStack& stack) {
        const bool probe = T >= opt.t0 - 0.5 * dt;
        if (!probe || T <= opt.t0 + 0.5 * dt)
            populations.push_back(up.dot(return_run(back, stack, T, dt, p_up, nullptr, 0.0)).real());
        if (probe) {
            result.times.push_back(opt.spacing * static_cast<double>(result.times.size()));
            result.values.push_back(up.dot(return_run(back, stack, T, dt, sx, &sx, opt.t0)));
        }
    });

    double drift = 0.0;
    if (drift_check) drift = std::abs(populations[1] - populations[0]) / opt.spacing;
    if (drift > opt.drift_tolerance) {
        std::ostringstream msg;
        msg << "populations still drifting at t0 = " << opt.t0 << ": |dP/dt| = " << drift;
        result.warnings.push_back(msg.str());
    }
    result.metadata["t0"] = format_double(opt.t0);
    result.metadata["spacing"] = format_double(opt.spacing);
    result.metadata["dt"] = format_double(dt);
    result.metadata["population_drift"] = format_double(drift);
    return result;
}

Spectrum half_fourier(const std::vector<double>& times, const std::vector<double>& signal,
                      const std::vector<double>& omegas, const FourierOptions& opt)
{
    if (times.size() != signal.size()) throw std::invalid_argument("half_fourier: times and signal differ in length");
    const std::size_t n = times.size();
    const double h = n > 1 ? times[1] - times[0] : 0.0;
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(times[i] - times[i - 1] - h) > 1e-9 * std::max(1.0, std::abs(h)))
            throw ConfigError("half_fourier requires a uniform time grid");

    Spectrum out;
    out.omegas = omegas;
    out.metadata["window"] = opt.window > 0.0 ? format_double(opt.window) : "off";
    for (double w : omegas) {
        cplx sum{};
        for (std::size_t i = 0; i < n; ++i) {
            double f = signal[i];
            if (opt.window > 0.0) f *= std::exp(-times[i] / opt.window);
            const double weight = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
            sum += weight * f * std::exp(-I * (w * times[i]));
        }
        out.values.push_back(sum * h);
    }
    return out;
}

Spectrum half_fourier(const CorrelationResult& result, const std::vector<double>& omegas, const FourierOptions& opt)
{
    return half_fourier(result.times, result.response(), omegas, opt);
}

SpectralPeak dominant_peak(const Spectrum& spectrum)
{
    const std::size_t n = spectrum.values.size();
    if (n == 0) return {};
    std::vector<double> mag(n);
    for (std::size_t i = 0; i < n; ++i) mag[i] = std::abs(spectrum.values[i].imag());
    const auto top = static_cast<std::size_t>(std::max_element(mag.begin(), mag.end()) - mag.begin());
    SpectralPeak peak{spectrum.omegas[top], spectrum.values[top].imag(), 0.0};
    if (mag[top] == 0.0) return peak;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (i == top) continue;
        if (mag[i] >= mag[i - 1] && mag[i] >= mag[i + 1])
            peak.runner_up_ratio = std::max(peak.runner_up_ratio, mag[i] / mag[top]);
    }
    return peak;
}

AnnealingPopulations annealing_populations(const Engine& engine, int qubits, const std::vector<double>& times)
{
    const Eigen::Index dim = Eigen::Index{1} << qubits;
    if (engine.model().dim() != dim) throw ConfigError("annealing model dimension does not match the qubit count");
    VectorXc flips = VectorXc::Zero(dim);
    for (int site = 0; site < qubits; ++site) flips(single_flip_index(qubits, site)) = 1.0;
    const std::vector<Operator> observables{
        Operator::projector(VectorXc::Unit(dim, all_up_index(qubits))),
        Operator::projector(VectorXc::Unit(dim, single_flip_index(qubits, 0))),
        DiagonalOperator{flips},
    };
    const MatrixXc pops = expectation_series(engine, times, observables, uniform_superposition_transform(qubits));
    AnnealingPopulations out;
    out.times = times;
    for (Eigen::Index r = 0; r < pops.rows(); ++r) {
        out.ground.push_back(pops(r, 0).real());
        out.excited_representative.push_back(pops(r, 1).real());
        out.excited_sum.push_back(pops(r, 2).real());
    }
    return out;
}

} // namespace hseom
