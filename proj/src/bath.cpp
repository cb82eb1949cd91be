// bath.cpp - spectral densities, quadrature oracle and Bessel-series coefficients

#include "hseom/bath.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "hseom/format.hpp"

namespace hseom {

namespace {

constexpr double kBoseTaylorCutoff = 1e-8;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// J(w) / (1 - exp(-beta w)) with the removable singularity at w = 0 handled.
double bose_weighted_density(const SpectralDensity& d, double beta, double w)
{
    // expm1 keeps full relative accuracy near w = 0; only the point itself needs the limit.
    if (w == 0.0) return density_slope_at_origin(d) / beta;
    return evaluate_density(d, w) / (-std::expm1(-beta * w));
}

} // namespace

double evaluate_density(const SpectralDensity& d, double omega)
{
    return std::visit(overloaded{
                          [&](const OhmicExponential& e) {
                              return e.eta * omega * std::exp(-std::abs(omega) / e.gamma);
                          },
                          [&](const OhmicCircular& c) {
                              const double r = omega / c.nu;
                              if (std::abs(r) >= 1.0) return 0.0;
                              return c.zeta * omega * std::sqrt(1.0 - r * r);
                          }},
                      d);
}

double density_slope_at_origin(const SpectralDensity& d)
{
    return std::visit(overloaded{[](const OhmicExponential& e) { return e.eta; },
                                 [](const OhmicCircular& c) { return c.zeta; }},
                      d);
}

InverseTemperature InverseTemperature::finite(double beta_hbar)
{
    if (!(beta_hbar > 0.0) || !std::isfinite(beta_hbar))
        throw ConfigError("beta_hbar must be a positive finite number (use the infinite tag for T = 0)");
    InverseTemperature b;
    b.infinite_ = false;
    b.beta_ = beta_hbar;
    return b;
}

double InverseTemperature::value() const
{
    if (infinite_) throw std::logic_error("zero-temperature tag has no finite beta_hbar");
    return beta_;
}

void validate(const BathSpec& spec)
{
    if (spec.K < 1) throw ConfigError("bath.k must be >= 1");
    if (!(spec.Omega > 0.0)) throw ConfigError("bath.omega must be positive");
    std::visit(overloaded{[&](const OhmicExponential& e) {
                              if (!(e.gamma > 0.0)) throw ConfigError("bath.gamma must be positive");
                              if (!(spec.Omega > e.gamma))
                                  throw ConfigError("bath.omega must exceed the exponential cutoff gamma");
                          },
                          [&](const OhmicCircular& c) {
                              if (!(c.nu > 0.0)) throw ConfigError("bath.nu must be positive");
                              if (std::abs(spec.Omega - c.nu) > 1e-12 * c.nu)
                                  throw ConfigError("bath.omega must equal nu for the circular cutoff");
                          }},
               spec.density);
}

Eigen::SparseMatrix<double, Eigen::RowMajor> bessel_derivative_matrix(int K, double Omega)
{
    std::vector<Eigen::Triplet<double>> trip;
    if (K >= 2) trip.emplace_back(0, 1, -Omega);
    for (int k = 1; k < K; ++k) {
        trip.emplace_back(k, k - 1, Omega / 2);
        if (k + 1 < K) trip.emplace_back(k, k + 1, -Omega / 2);
    }
    Eigen::SparseMatrix<double, Eigen::RowMajor> eta(K, K);
    eta.setFromTriplets(trip.begin(), trip.end());
    return eta;
}

cplx alpha_quadrature(const BathSpec& spec, double t, const QuadratureOptions& opt)
{
    if (t < 0.0) throw std::invalid_argument("alpha_quadrature requires t >= 0");
    const double Om = spec.Omega;
    constexpr double half_pi = std::numbers::pi / 2;
    // x = cos(theta), dx = sin(theta) dtheta removes the sqrt endpoint of the
    // circular cutoff; x = 0 sits at theta = pi/2.
    if (spec.beta.is_infinite()) {
        auto f = [&](double th) {
            const double x = std::cos(th);
            return std::sin(th) * evaluate_density(spec.density, Om * x) * std::exp(-I * (Om * x * t));
        };
        return Om * integrate_adaptive_complex(f, 0.0, half_pi, opt);
    }
    const double beta = spec.beta.value();
    auto f = [&](double th) {
        const double x = std::cos(th);
        return std::sin(th) * bose_weighted_density(spec.density, beta, Om * x) * std::exp(-I * (Om * x * t));
    };
    return Om * (integrate_adaptive_complex(f, 0.0, half_pi, opt) +
                 integrate_adaptive_complex(f, half_pi, std::numbers::pi, opt));
}

BathExpansion make_expansion(double Omega, VectorXc c)
{
    BathExpansion exp;
    exp.Omega = Omega;
    exp.K = static_cast<int>(c.size());
    exp.c = std::move(c);
    exp.eta = bessel_derivative_matrix(exp.K, Omega);
    exp.phi_at_zero = Eigen::VectorXd::Zero(exp.K);
    if (exp.K > 0) exp.phi_at_zero(0) = 1.0;
    return exp;
}

BathExpansion compute_coefficients(const BathSpec& spec, const ExpansionOptions& opt)
{
    validate(spec);
    const int K = spec.K;
    const double Om = spec.Omega;
    const bool zero_t = spec.beta.is_infinite();
    const double beta = zero_t ? 0.0 : spec.beta.value();
    constexpr double half_pi = std::numbers::pi / 2;

    // x = cos(theta) turns the Chebyshev weight into cos(k theta) and smooths
    // the sqrt endpoint of the circular cutoff; x = 0 sits at theta = pi/2.
    VectorXc c(K);
    for (int k = 0; k < K; ++k) {
        const bool even = k % 2 == 0;
        auto weight = [&](double x) {
            const double w = Om * x;
            if (zero_t) {
                const double j = evaluate_density(spec.density, w);
                return 0.5 * (even ? (x > 0 ? j : (x < 0 ? -j : 0.0)) : j);
            }
            return bose_weighted_density(spec.density, beta, w);
        };
        auto integrand = [&](double theta) {
            return std::cos(k * theta) * weight(std::cos(theta)) * std::sin(theta);
        };
        const double integral =
            integrate_adaptive(integrand, 0.0, half_pi, opt.quadrature) +
            integrate_adaptive(integrand, half_pi, 2 * half_pi, opt.quadrature);
        const double factor = Om * (k == 0 ? 1.0 : 2.0) * integral;
        static constexpr cplx minus_i_pow[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
        c(k) = factor * minus_i_pow[k % 4];
    }

    BathExpansion exp = make_expansion(Om, std::move(c));
    if (!zero_t) {
        const cplx ref = alpha_quadrature(spec, 0.0, opt.quadrature);
        const double err = std::abs(alpha_reconstruct(exp, 0.0) - ref) / std::max(std::abs(ref), 1e-300);
        if (err > opt.tolerance) {
            std::ostringstream msg;
            msg << "expansion with K = " << K << " reproduces alpha(0) only to " << err << " relative";
            exp.warnings.push_back(msg.str());
        }
    }
    return exp;
}

cplx alpha_reconstruct(const BathExpansion& exp, double t)
{
    if (t < 0.0) throw std::invalid_argument("alpha_reconstruct requires t >= 0");
    const Eigen::VectorXd j = bessel_ladder(exp.Omega * t, exp.K);
    return (exp.c.array() * j.cast<cplx>().array()).sum();
}

cplx alpha_effective(const BathExpansion& exp, double t)
{
    const Eigen::MatrixXd prop = (Eigen::MatrixXd(exp.eta) * t).exp();
    return exp.c.transpose() * prop.col(0).cast<cplx>();
}

double jacobi_anger_residual(double x, double t, int K, double Omega)
{
    if (x < -1.0 || x > 1.0) throw std::invalid_argument("jacobi_anger_residual requires x in [-1, 1]");
    const Eigen::VectorXd j = bessel_ladder(Omega * t, K);
    const Eigen::VectorXd tk = chebyshev_ladder(x, K);
    static constexpr cplx minus_i_pow[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    cplx sum = K > 0 ? j(0) : 0.0;
    for (int k = 1; k < K; ++k) sum += 2.0 * minus_i_pow[k % 4] * tk(k) * j(k);
    return std::abs(std::exp(-I * (Omega * x * t)) - sum);
}

int minimal_basis_size(double Omega, double horizon, double tol, int probes)
{
    const int kmax = static_cast<int>(std::ceil(1.5 * Omega * horizon)) + 60;
    static constexpr cplx minus_i_pow[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    int needed = 1;
    for (int it = 0; it < probes; ++it) {
        const double t = probes > 1 ? horizon * it / (probes - 1) : horizon;
        const Eigen::VectorXd j = bessel_ladder(Omega * t, kmax);
        for (int ix = 0; ix < probes; ++ix) {
            const double x = probes > 1 ? -1.0 + 2.0 * ix / (probes - 1) : 0.0;
            const Eigen::VectorXd tk = chebyshev_ladder(x, kmax);
            const cplx target = std::exp(-I * (Omega * x * t));
            cplx sum = j(0);
            int last_bad = std::abs(target - sum) >= tol ? 1 : 0;
            for (int k = 1; k < kmax; ++k) {
                sum += 2.0 * minus_i_pow[k % 4] * tk(k) * j(k);
                if (std::abs(target - sum) >= tol) last_bad = k + 1;
            }
            needed = std::max(needed, last_bad + 1);
        }
    }
    return needed;
}

double spectral_tail_fraction(const BathSpec& spec)
{
    const double Om = spec.Omega;
    const bool zero_t = spec.beta.is_infinite();
    const double beta = zero_t ? 0.0 : spec.beta.value();
    auto f = [&](double w) {
        if (zero_t) return evaluate_density(spec.density, w);
        if (w < kBoseTaylorCutoff) return density_slope_at_origin(spec.density) * 2.0 / beta;
        return evaluate_density(spec.density, w) / std::tanh(0.5 * beta * w);
    };
    double upper = 0.0;
    double reach = Om;
    std::visit(overloaded{[&](const OhmicExponential& e) { reach = std::max(Om, e.gamma) + 80.0 * e.gamma; },
                          [&](const OhmicCircular& c) { reach = std::max(Om, c.nu); }},
               spec.density);
    const double inner = integrate_adaptive(f, 0.0, Om);
    if (reach > Om) upper = integrate_adaptive(f, Om, reach);
    const double total = inner + upper;
    return total > 0.0 ? upper / total : 0.0;
}

void write_expansion(std::ostream& os, const BathSpec& spec, const BathExpansion& exp)
{
    os << "# hseom bath expansion\n";
    os << "# Omega = " << format_double(exp.Omega) << '\n';
    os << "# K = " << exp.K << '\n';
    os << "# beta_hbar = " << (spec.beta.is_infinite() ? std::string("inf") : format_double(spec.beta.value()))
       << '\n';
    std::visit(overloaded{[&](const OhmicExponential& e) {
                              os << "# density = exponential\n# eta = " << format_double(e.eta)
                                 << "\n# gamma = " << format_double(e.gamma) << '\n';
                          },
                          [&](const OhmicCircular& c) {
                              os << "# density = circular\n# zeta = " << format_double(c.zeta)
                                 << "\n# nu = " << format_double(c.nu) << '\n';
                          }},
               spec.density);
    os << "k,re_c,im_c\n";
    for (int k = 0; k < exp.K; ++k)
        os << k << ',' << format_double(exp.c(k).real()) << ',' << format_double(exp.c(k).imag()) << '\n';
}

BathExpansion read_expansion(std::istream& is)
{
    std::map<std::string, std::string> header;
    std::vector<cplx> coeffs;
    std::string line;
    bool columns_seen = false;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            auto trim = [](std::string s) {
                const auto b = s.find_first_not_of(" \t#");
                const auto e = s.find_last_not_of(" \t");
                return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
            };
            header[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
            continue;
        }
        if (!columns_seen) {
            if (line != "k,re_c,im_c") throw ConfigError("expansion file: expected column header 'k,re_c,im_c'");
            columns_seen = true;
            continue;
        }
        std::stringstream ss(line);
        std::string fk, fre, fim;
        double re = 0, im = 0, kval = 0;
        if (!std::getline(ss, fk, ',') || !std::getline(ss, fre, ',') || !std::getline(ss, fim, ',') ||
            !parse_double(fk, kval) || !parse_double(fre, re) || !parse_double(fim, im) ||
            static_cast<std::size_t>(kval) != coeffs.size())
            throw ConfigError("expansion file: malformed row at line " + std::to_string(lineno));
        coeffs.emplace_back(re, im);
    }
    double Omega = 0.0, K = 0.0;
    if (!header.count("Omega") || !parse_double(header["Omega"], Omega) || !(Omega > 0.0))
        throw ConfigError("expansion file: missing or invalid Omega");
    if (!header.count("K") || !parse_double(header["K"], K) || static_cast<std::size_t>(K) != coeffs.size())
        throw ConfigError("expansion file: K does not match the number of rows");
    VectorXc c(static_cast<Eigen::Index>(coeffs.size()));
    for (std::size_t k = 0; k < coeffs.size(); ++k) c(static_cast<Eigen::Index>(k)) = coeffs[k];
    return make_expansion(Omega, std::move(c));
}

} // namespace hseom
