// bath.hpp - Spectral densities, bath correlation function and its Bessel-series expansion
//
// The correlation function of an Ohmic harmonic bath,
//
//   alpha(t) = Omega * int_{-1}^{1} dx J(Omega x) exp(-i Omega x t) / (1 - exp(-beta Omega x)),
//
// is expanded as alpha(t) = sum_{k<K} c_k J_k(Omega t). The Bessel functions
// obey dJ_k/dt = sum_k' eta_{k,k'} J_k', which closes the hierarchy.

#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "hseom/linalg.hpp"
#include "hseom/special.hpp"

namespace hseom {

struct OhmicExponential {
    double eta = 0.0;   // dimensionless coupling (hbar*eta)
    double gamma = 1.0; // cutoff frequency
};

// J(w) = zeta w sqrt(1 - (w/nu)^2) on |w| <= nu, zero elsewhere.
struct OhmicCircular {
    double zeta = 0.0;
    double nu = 1.0;
};

using SpectralDensity = std::variant<OhmicExponential, OhmicCircular>;

// Literal formula value; no odd extension is applied.
double evaluate_density(const SpectralDensity& d, double omega);

// dJ/dw at w = 0.
double density_slope_at_origin(const SpectralDensity& d);

// beta*hbar with an explicit zero-temperature tag.
class InverseTemperature {
public:
    static InverseTemperature finite(double beta_hbar);
    static InverseTemperature infinite() { return InverseTemperature{}; }

    bool is_infinite() const noexcept { return infinite_; }
    double value() const; // throws for the zero-temperature tag

private:
    InverseTemperature() = default;
    bool infinite_ = true;
    double beta_ = std::numeric_limits<double>::infinity();
};

struct BathSpec {
    SpectralDensity density;
    InverseTemperature beta = InverseTemperature::infinite();
    double Omega = 1.0;
    int K = 2;
};

// Throws ConfigError when Omega or K violate the density-specific rules.
void validate(const BathSpec& spec);

struct BathExpansion {
    double Omega = 1.0;
    int K = 0;
    VectorXc c;
    Eigen::SparseMatrix<double, Eigen::RowMajor> eta;
    Eigen::VectorXd phi_at_zero;
    std::vector<std::string> warnings;
};

// Derivative-closure matrix of the Bessel basis, truncated at K.
Eigen::SparseMatrix<double, Eigen::RowMajor> bessel_derivative_matrix(int K, double Omega);

// Reference correlation function by adaptive quadrature (oracle, not the production path).
cplx alpha_quadrature(const BathSpec& spec, double t, const QuadratureOptions& opt = {});

struct ExpansionOptions {
    QuadratureOptions quadrature{};
    double tolerance = 1e-6; // relative, for the t = 0 reconstruction warning
};

BathExpansion compute_coefficients(const BathSpec& spec, const ExpansionOptions& opt = {});

// Assemble an expansion from known coefficients (used by the cached-file reader).
BathExpansion make_expansion(double Omega, VectorXc c);

cplx alpha_reconstruct(const BathExpansion& exp, double t);

// Correlation function actually seen by the truncated hierarchy:
// sum_k c_k [exp(eta t)]_{k,0}. Coincides with alpha_reconstruct while
// J_K(Omega t) is negligible.
cplx alpha_effective(const BathExpansion& exp, double t);

double jacobi_anger_residual(double x, double t, int K, double Omega);

// Smallest K for which the Jacobi-Anger residual stays below tol on a
// probe grid of x in [-1, 1] and t in [0, horizon].
int minimal_basis_size(double Omega, double horizon, double tol = 1e-6, int probes = 41);

// Fraction of int_0^inf J(w) coth(beta w / 2) dw lying above Omega.
double spectral_tail_fraction(const BathSpec& spec);

// Plain-text expansion export: '#'-prefixed header block, then one
// "k,re_c,im_c" row per coefficient.
void write_expansion(std::ostream& os, const BathSpec& spec, const BathExpansion& exp);
BathExpansion read_expansion(std::istream& is);

} // namespace hseom
