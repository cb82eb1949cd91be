// oracles.cpp - eigendecomposition propagator, assembled generator, dephasing solution

#include "hseom/oracles.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace hseom {

VectorXc closed_system_propagate(const SystemModel& model, const VectorXc& psi0, double t)
{
    if (model.time_dependent()) throw std::invalid_argument("closed_system_propagate needs a time-independent model");
    if (model.dim() > 64) throw std::invalid_argument("closed_system_propagate is limited to dim <= 64");
    if (psi0.size() != model.dim()) throw std::invalid_argument("closed_system_propagate: state dimension mismatch");
    const MatrixXc H = model.hamiltonian_at(0.0);
    if ((H - H.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, H.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("closed_system_propagate: Hamiltonian is not Hermitian");
    const Eigen::SelfAdjointEigenSolver<MatrixXc> eig(H);
    const VectorXc phases = (-I * t * eig.eigenvalues().cast<cplx>()).array().exp();
    return eig.eigenvectors() * phases.asDiagonal() * (eig.eigenvectors().adjoint() * psi0);
}

DenseGenerator assemble_generator(const HierarchySpace& space, const BathExpansion& bath, const SystemModel& model,
                                  double tau, int sign)
{
    const Eigen::Index d = model.dim();
    const Eigen::Index n_awf = space.size();
    if (n_awf * d > kMaxAssembledSize)
        throw ResourceError("assemble_generator refuses more than 4096 unknowns",
                            static_cast<unsigned long long>(n_awf * d));
    const int K = space.K();
    if (bath.K != K) throw std::invalid_argument("assemble_generator: bath K differs from hierarchy K");

    // Own lookup from multi-index to row, built from the stored indices only.
    std::map<std::vector<int>, Eigen::Index> lookup;
    std::vector<std::vector<int>> indices(static_cast<std::size_t>(n_awf));
    for (Eigen::Index p = 0; p < n_awf; ++p) {
        const auto idx = space.index(static_cast<int>(p));
        indices[p].assign(idx.begin(), idx.end());
        lookup.emplace(indices[p], p);
    }
    auto find = [&](const std::vector<int>& n) -> Eigen::Index {
        int total = 0;
        for (int v : n) {
            if (v < 0) return -1;
            total += v;
        }
        if (total > space.N_max()) return -1;
        const auto it = lookup.find(n);
        return it == lookup.end() ? -1 : it->second;
    };

    const MatrixXc H = model.hamiltonian_at(tau);
    const MatrixXc V = model.coupling().to_dense();
    const Eigen::MatrixXd eta = Eigen::MatrixXd(bath.eta);
    const double s = sign;

    std::vector<Eigen::Triplet<cplx>> trip;
    auto add_block = [&](Eigen::Index row, Eigen::Index col, const MatrixXc& block) {
        for (Eigen::Index a = 0; a < d; ++a)
            for (Eigen::Index b = 0; b < d; ++b)
                if (block(a, b) != cplx{}) trip.emplace_back(row * d + a, col * d + b, s * block(a, b));
    };
    const MatrixXc ident = MatrixXc::Identity(d, d);
    for (Eigen::Index p = 0; p < n_awf; ++p) {
        const std::vector<int>& n = indices[p];
        add_block(p, p, -I * H);
        for (int k = 0; k < K; ++k) {
            for (int kp = 0; kp < K; ++kp) {
                if (eta(k, kp) == 0.0 || n[k] == 0) continue;
                std::vector<int> m = n;
                --m[k];
                ++m[kp];
                const Eigen::Index q = find(m);
                if (q >= 0) add_block(p, q, (eta(k, kp) * n[k]) * ident);
            }
            std::vector<int> up = n;
            ++up[k];
            if (const Eigen::Index q = find(up); q >= 0) add_block(p, q, (-I * bath.c(k)) * V);
            if (n[k] > 0 && bath.phi_at_zero(k) != 0.0) {
                std::vector<int> down = n;
                --down[k];
                if (const Eigen::Index q = find(down); q >= 0)
                    add_block(p, q, (-I * double(n[k]) * bath.phi_at_zero(k)) * V);
            }
        }
    }
    DenseGenerator out;
    out.matrix.resize(n_awf * d, n_awf * d);
    out.matrix.setFromTriplets(trip.begin(), trip.end());
    out.sign = sign;
    return out;
}

cplx dephasing_exponent(const BathSpec& spec, double t, const QuadratureOptions& opt)
{
    if (t < 0.0) throw std::invalid_argument("dephasing_exponent requires t >= 0");
    if (t == 0.0) return {};
    return integrate_adaptive_complex([&](double u) { return (t - u) * alpha_quadrature(spec, u, opt); }, 0.0, t,
                                      opt);
}

double dephasing_exact(const BathSpec& spec, double coupling, double t)
{
    if (coupling == 0.0 || t == 0.0) return 1.0;
    return std::exp(-coupling * coupling * dephasing_exponent(spec, t).real());
}

} // namespace hseom
