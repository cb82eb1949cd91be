// models.cpp - spin-boson, dephasing and p-spin annealing models

#include "hseom/models.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hseom {

namespace {

void require_hermitian(const MatrixXc& m, const char* what)
{
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument(std::string(what) + " is not Hermitian");
}

void check_hermitian(const Operator& op, const char* what)
{
    if (const auto* d = std::get_if<DiagonalOperator>(&op.storage())) {
        if (d->diagonal.imag().cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, d->diagonal.cwiseAbs().maxCoeff()))
            throw std::invalid_argument(std::string(what) + " is not Hermitian");
    } else if (!std::holds_alternative<PauliSum>(op.storage())) {
        require_hermitian(op.to_dense(), what);
    }
}

} // namespace

SystemModel::SystemModel(Eigen::Index dim, std::vector<HamiltonianTerm> terms, Operator coupling)
    : dim_(dim), terms_(std::move(terms)), coupling_(std::move(coupling))
{
    if (coupling_.dim() != dim_) throw std::invalid_argument("coupling operator dimension mismatch");
    double t_final = 1.0;
    for (const auto& term : terms_) {
        if (term.op.dim() != dim_) throw std::invalid_argument("Hamiltonian term dimension mismatch");
        if (term.schedule.kind != Schedule::Kind::constant) {
            time_dependent_ = true;
            t_final = term.schedule.t_final;
        }
    }
    // Pauli sums with real coefficients are Hermitian; check the rest.
    for (const auto& term : terms_) check_hermitian(term.op, "Hamiltonian term");
    check_hermitian(coupling_, "coupling operator");
    if (time_dependent_ && dim_ <= 256)
        for (int s = 0; s < 5; ++s) require_hermitian(hamiltonian_at(t_final * s / 4.0), "H_S(tau)");
}

MatrixXc SystemModel::hamiltonian_at(double tau) const
{
    MatrixXc h = MatrixXc::Zero(dim_, dim_);
    for (const auto& term : terms_) h += term.schedule.at(tau) * term.op.to_dense();
    return h;
}

void SystemModel::apply_hamiltonian(double tau, cplx scale, const cplx* in, cplx* out) const
{
    for (const auto& term : terms_) {
        const double w = term.schedule.at(tau);
        if (w != 0.0) term.op.apply_add(scale * w, in, out);
    }
}

SystemModel spin_boson(double omega0)
{
    if (!(omega0 > 0.0)) throw std::invalid_argument("spin_boson requires omega0 > 0");
    return SystemModel(2, {HamiltonianTerm{Schedule{}, MatrixXc(-0.5 * omega0 * pauli_matrix(Pauli::Z))}},
                       MatrixXc(-0.5 * pauli_matrix(Pauli::X)));
}

SystemModel pure_dephasing(double omega0, double coupling)
{
    return SystemModel(2, {HamiltonianTerm{Schedule{}, MatrixXc(-0.5 * omega0 * pauli_matrix(Pauli::Z))}},
                       MatrixXc(0.5 * coupling * pauli_matrix(Pauli::Z)));
}

SystemModel pspin_annealing(int qubits, double Gamma, int p, double t_final)
{
    if (qubits < 1 || qubits > kMaxAnnealingQubits)
        throw ResourceError("p-spin model supports 1.." + std::to_string(kMaxAnnealingQubits) + " qubits",
                            static_cast<unsigned long long>(qubits));
    if (p < 1) throw std::invalid_argument("pspin_annealing requires p >= 1");
    if (!(t_final > 0.0)) throw std::invalid_argument("pspin_annealing requires t_f > 0");

    std::vector<PauliTerm> transverse;
    for (int i = 0; i < qubits; ++i) transverse.push_back(PauliTerm{-Gamma, {{i, Pauli::X}}});

    const Eigen::Index dim = Eigen::Index{1} << qubits;
    VectorXc target(dim), coupling(dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        const int m = 2 * std::popcount(static_cast<std::uint64_t>(b)) - qubits;
        target(b) = -qubits * std::pow(static_cast<double>(m) / qubits, p);
        coupling(b) = static_cast<double>(m);
    }
    std::vector<HamiltonianTerm> terms;
    terms.push_back({Schedule{Schedule::Kind::ramp_down, t_final}, PauliSum(qubits, std::move(transverse))});
    terms.push_back({Schedule{Schedule::Kind::ramp_up, t_final}, DiagonalOperator{std::move(target)}});
    return SystemModel(dim, std::move(terms), DiagonalOperator{std::move(coupling)});
}

SystemModel dense_model(const MatrixXc& H, const MatrixXc& V)
{
    if (H.rows() != H.cols() || V.rows() != H.rows() || V.cols() != H.cols())
        throw std::invalid_argument("dense_model: H and V must be square and of equal size");
    return SystemModel(H.rows(), {HamiltonianTerm{Schedule{}, H}}, V);
}

PureState make_pure_state(VectorXc v)
{
    const double n = v.norm();
    if (!(n > 0.0)) throw std::invalid_argument("initial state vector must be nonzero");
    return PureState{v / n};
}

LocalizedWithTransform localized(Eigen::Index dim, Eigen::Index k)
{
    SparseMatrixXc C(dim, dim);
    C.setIdentity();
    return LocalizedWithTransform{k, C};
}

LocalizedWithTransform uniform_superposition_transform(int qubits)
{
    if (qubits < 1) throw std::invalid_argument("uniform_superposition_transform requires at least one qubit");
    const Eigen::Index dim = Eigen::Index{1} << qubits;
    const double amp = std::pow(2.0, -0.5 * qubits);
    std::vector<Eigen::Triplet<cplx>> trip;
    trip.reserve(static_cast<std::size_t>(dim));
    for (Eigen::Index i = 0; i < dim; ++i) trip.emplace_back(i, 0, amp);
    SparseMatrixXc C(dim, dim);
    C.setFromTriplets(trip.begin(), trip.end());
    return LocalizedWithTransform{0, C};
}

Eigen::Index state_dim(const InitialState& s)
{
    return std::visit(
        [](const auto& v) -> Eigen::Index {
            if constexpr (std::is_same_v<std::decay_t<decltype(v)>, PureState>)
                return v.vector.size();
            else
                return v.C.rows();
        },
        s);
}

MatrixXc initial_density_matrix(const InitialState& s)
{
    const VectorXc psi = std::visit(
        [](const auto& v) -> VectorXc {
            if constexpr (std::is_same_v<std::decay_t<decltype(v)>, PureState>)
                return v.vector;
            else
                return v.transformed();
        },
        s);
    return psi * psi.adjoint();
}

} // namespace hseom
