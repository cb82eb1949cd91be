// models.hpp - system Hamiltonians, coupling operators and initial states

#pragma once

#include <variant>
#include <vector>

#include "hseom/linalg.hpp"
#include "hseom/operators.hpp"

namespace hseom {

// Weight of one Hamiltonian term as a function of physical time.
struct Schedule {
    enum class Kind { constant, ramp_down, ramp_up };
    Kind kind = Kind::constant;
    double t_final = 1.0;

    double at(double tau) const noexcept
    {
        switch (kind) {
        case Kind::ramp_down:
            return 1.0 - tau / t_final;
        case Kind::ramp_up:
            return tau / t_final;
        default:
            return 1.0;
        }
    }
};

struct HamiltonianTerm {
    Schedule schedule;
    Operator op;
};

// H_S(tau) = sum_j schedule_j(tau) op_j and the system part V of the coupling.
// Hermiticity is checked at construction on sampled tau values.
class SystemModel {
public:
    SystemModel(Eigen::Index dim, std::vector<HamiltonianTerm> terms, Operator coupling);

    Eigen::Index dim() const noexcept { return dim_; }
    bool time_dependent() const noexcept { return time_dependent_; }
    const Operator& coupling() const noexcept { return coupling_; }
    const std::vector<HamiltonianTerm>& terms() const noexcept { return terms_; }

    MatrixXc hamiltonian_at(double tau) const;
    // out += scale * H_S(tau) in
    void apply_hamiltonian(double tau, cplx scale, const cplx* in, cplx* out) const;

private:
    Eigen::Index dim_;
    std::vector<HamiltonianTerm> terms_;
    Operator coupling_;
    bool time_dependent_ = false;
};

// H_S = -(omega0/2) sigma^z, V = -(1/2) sigma^x.
SystemModel spin_boson(double omega0);

// H_S = -(omega0/2) sigma^z, V = (coupling/2) sigma^z; exactly solvable dephasing.
SystemModel pure_dephasing(double omega0, double coupling = 1.0);

// H_S(tau) = (1 - tau/t_f) H_0 + (tau/t_f) H_1 with H_0 = -Gamma sum sigma^x_i,
// H_1 = -N (sum sigma^z_i / N)^p (diagonal) and V = sum sigma^z_i.
inline constexpr int kMaxAnnealingQubits = 14;
SystemModel pspin_annealing(int qubits, double Gamma, int p, double t_final);

// Generic escape hatch; both matrices must be Hermitian.
SystemModel dense_model(const MatrixXc& H, const MatrixXc& V);

struct PureState {
    VectorXc vector;
};

// rho_S(0) = C |k><k| C^dagger, evaluated with a single contour run.
struct LocalizedWithTransform {
    Eigen::Index k = 0;
    SparseMatrixXc C;

    VectorXc transformed() const { return C * VectorXc::Unit(C.cols(), k); }
};

using InitialState = std::variant<PureState, LocalizedWithTransform>;

PureState make_pure_state(VectorXc v); // normalizes
LocalizedWithTransform localized(Eigen::Index dim, Eigen::Index k);
// <i|C|j> = delta_{j,0} / 2^{N/2}: every element of rho equals 1/2^N.
LocalizedWithTransform uniform_superposition_transform(int qubits);

Eigen::Index state_dim(const InitialState& s);
MatrixXc initial_density_matrix(const InitialState& s);

// Basis index of |1...1> and of the single-flip state with site `site` set to |0>.
inline Eigen::Index all_up_index(int qubits) { return (Eigen::Index{1} << qubits) - 1; }
inline Eigen::Index single_flip_index(int qubits, int site) { return all_up_index(qubits) ^ (Eigen::Index{1} << site); }

} // namespace hseom
