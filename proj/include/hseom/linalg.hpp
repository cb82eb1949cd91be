// linalg.hpp - Eigen aliases and error types shared by every module
//
// Units: hbar = 1 throughout. Energies and frequencies share one unit,
// times are measured in its inverse.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace hseom {

using cplx = std::complex<double>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using RowMajorMatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using MatrixXc = MatrixX<cplx>;
using VectorXc = VectorX<cplx>;
using SparseMatrixXc = Eigen::SparseMatrix<cplx>;

inline constexpr cplx I{0.0, 1.0};

// Invalid user input (maps to CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numerical failure: non-convergent quadrature, non-finite state, ... (exit code 3).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Requested problem exceeds a configured size budget (exit code 4).
class ResourceError : public std::runtime_error {
public:
    ResourceError(const std::string& what, unsigned long long requested)
        : std::runtime_error(what), requested_(requested) {}
    unsigned long long requested() const noexcept { return requested_; }

private:
    unsigned long long requested_;
};

} // namespace hseom
