// observables.hpp - correlation functions, response spectra and reduced density matrices
//
// A two-body correlation Psi_AB(t; t') = tr{A(t) rho B(t')} is read off a
// single contour run: A is inserted at the turning point s = t, B at
// s = 2t - t', and the final reduced wave function is projected back onto
// the starting state.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "hseom/dynamics.hpp"
#include "hseom/linalg.hpp"
#include "hseom/models.hpp"
#include "hseom/operators.hpp"

namespace hseom {

struct CorrelationResult {
    std::vector<double> times;
    std::vector<cplx> values;
    std::map<std::string, std::string> metadata;
    std::vector<std::string> warnings;

    // Im Psi, the first-order response for the sigma^x sigma^x pair.
    std::vector<double> response() const;
};

struct Spectrum {
    std::vector<double> omegas;
    std::vector<cplx> values;
    std::map<std::string, std::string> metadata;
};

// PureState: one run per basis state n' with rho|n'> nonzero, summed as
// sum_n' <n'|phi_0(2t; rho|n'>)>. LocalizedWithTransform: one run from C|k>,
// projected onto C|k>.
cplx two_body_correlation(const Engine& engine, const Operator& A, const Operator& B, double t, double t_prime,
                          const InitialState& init);

struct ResponseOptions {
    double t0 = 0.0;            // equilibration time
    double spacing = 0.05;      // uniform grid spacing of t
    int points = 41;            // t = 0, spacing, ..., (points-1) spacing
    double drift_tolerance = 1e-3;
};

// R(t) = Im Psi_{xx}(t0 + t; t0) from rho_loc = |1><1|. The forward branch is
// shared by every t; each grid point branches off its own return run.
CorrelationResult response_function(const Engine& engine, const ResponseOptions& opt);

struct FourierOptions {
    double window = 0.0; // T_w of exp(-t / T_w); 0 disables the window
};

// Trapezoid rule for int_0^T exp(-i w t) R(t) w(t) dt on a uniform grid.
Spectrum half_fourier(const std::vector<double>& times, const std::vector<double>& signal,
                      const std::vector<double>& omegas, const FourierOptions& opt = {});
Spectrum half_fourier(const CorrelationResult& result, const std::vector<double>& omegas,
                      const FourierOptions& opt = {});

// Frequency at which |Im S(w)| is largest, with the ratio of the runner-up
// local extremum to it (0 when there is a single extremum).
struct SpectralPeak {
    double omega = 0.0;
    double height = 0.0;
    double runner_up_ratio = 0.0;
};
SpectralPeak dominant_peak(const Spectrum& spectrum);

// rho_S(t) with rho_ij = Psi for A = |j><i|, B = 1.
MatrixXc reduced_density_matrix(const Engine& engine, double t, const InitialState& init);

// <P_m>(t) for each projector-like observable at each time; rows follow
// `times`, columns follow `observables`. Times must be sorted ascending.
MatrixXc expectation_series(const Engine& engine, const std::vector<double>& times,
                            const std::vector<Operator>& observables, const InitialState& init);

struct AnnealingPopulations {
    std::vector<double> times;
    std::vector<double> ground;
    std::vector<double> excited_representative;
    std::vector<double> excited_sum;
};

// Ground |1...1>, the single flip on site 0, and the sum over all single flips.
AnnealingPopulations annealing_populations(const Engine& engine, int qubits, const std::vector<double>& times);

} // namespace hseom
