// oracles.hpp - brute-force references for validating the engine
//
// These deliberately avoid the engine's fast paths: the generator is
// assembled from multi-index arithmetic alone, closed dynamics come from an
// eigendecomposition, and the dephasing factor from nested quadrature.

#pragma once

#include "hseom/bath.hpp"
#include "hseom/hierarchy.hpp"
#include "hseom/linalg.hpp"
#include "hseom/models.hpp"

namespace hseom {

// exp(-i H_S t) psi0 for a time-independent model with dim <= 64.
VectorXc closed_system_propagate(const SystemModel& model, const VectorXc& psi0, double t);

struct DenseGenerator {
    SparseMatrixXc matrix; // acts on the row-major flattened stack
    int sign = +1;
};

inline constexpr Eigen::Index kMaxAssembledSize = 4096;

// Explicit linear operator of the hierarchy equations at fixed tau.
DenseGenerator assemble_generator(const HierarchySpace& space, const BathExpansion& bath, const SystemModel& model,
                                  double tau, int sign);

// G(t) = int_0^t du (t - u) alpha(u), the double time integral of alpha.
cplx dephasing_exponent(const BathSpec& spec, double t, const QuadratureOptions& opt = {1e-10, 1e-13, 20});

// Exact coherence factor rho_10(t) / (rho_10(0) exp(-i (E_1 - E_0) t)) for
// V = (coupling / 2) sigma^z: exp(-coupling^2 Re G(t)).
double dephasing_exact(const BathSpec& spec, double coupling, double t);

} // namespace hseom
