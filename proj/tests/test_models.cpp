// test_models.cpp - operators, Pauli sums, system models and initial states

#include <numbers>
#include <random>

#include "doctest.h"
#include "hseom/models.hpp"
#include "hseom/operators.hpp"

using namespace hseom;

namespace {

MatrixXc random_matrix(Eigen::Index n, std::mt19937& rng)
{
    std::normal_distribution<double> g;
    MatrixXc m(n, n);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = cplx(g(rng), g(rng));
    return m;
}

// Kronecker product over sites, site 0 = least significant bit.
MatrixXc site_operator(int qubits, int site, const MatrixXc& op)
{
    MatrixXc out = MatrixXc::Identity(1, 1);
    for (int s = qubits - 1; s >= 0; --s) {
        const MatrixXc f = s == site ? op : MatrixXc::Identity(2, 2);
        MatrixXc k(out.rows() * 2, out.cols() * 2);
        for (Eigen::Index i = 0; i < out.rows(); ++i)
            for (Eigen::Index j = 0; j < out.cols(); ++j) k.block(2 * i, 2 * j, 2, 2) = out(i, j) * f;
        out = k;
    }
    return out;
}

} // namespace

TEST_CASE("spin-boson model")
{
    const SystemModel m = spin_boson(std::numbers::pi);
    CHECK(m.dim() == 2);
    CHECK_FALSE(m.time_dependent());
    const MatrixXc H = m.hamiltonian_at(0.0);
    CHECK(H(1, 1).real() == doctest::Approx(-std::numbers::pi / 2));
    CHECK(H(0, 0).real() == doctest::Approx(std::numbers::pi / 2));
    const VectorXc v1 = apply_operator(m.coupling(), VectorXc::Unit(2, 1));
    CHECK(std::abs(v1(0) + 0.5) < 1e-15);
    CHECK(std::abs(v1(1)) < 1e-15);
    const MatrixXc V = m.coupling().to_dense();
    CHECK((H * V - V * H).cwiseAbs().maxCoeff() > 1.0);
    CHECK_THROWS(spin_boson(0.0));
}

TEST_CASE("pauli sums")
{
    const PauliSum x0(3, {PauliTerm{1.0, {{0, Pauli::X}}}});
    const VectorXc v = apply_operator(Operator(x0), VectorXc::Unit(8, 0));
    CHECK(std::abs(v(1) - 1.0) < 1e-15);

    const PauliSum id(3, {PauliTerm{1.0, {}}});
    std::mt19937 rng(7);
    const VectorXc r = random_matrix(8, rng).col(0);
    CHECK((apply_operator(Operator(id), r) - r).norm() < 1e-15);

    // Dense agrees with the Pauli path for a mixed three-qubit sum.
    const PauliSum mixed(3, {PauliTerm{0.7, {{0, Pauli::X}, {2, Pauli::Z}}}, PauliTerm{-1.3, {{1, Pauli::Y}}},
                             PauliTerm{0.4, {{0, Pauli::Y}, {1, Pauli::Y}, {2, Pauli::X}}}});
    MatrixXc dense = 0.7 * site_operator(3, 0, pauli_matrix(Pauli::X)) * site_operator(3, 2, pauli_matrix(Pauli::Z)) -
                     1.3 * site_operator(3, 1, pauli_matrix(Pauli::Y)) +
                     0.4 * site_operator(3, 0, pauli_matrix(Pauli::Y)) * site_operator(3, 1, pauli_matrix(Pauli::Y)) *
                         site_operator(3, 2, pauli_matrix(Pauli::X));
    for (int trial = 0; trial < 3; ++trial) {
        const VectorXc u = random_matrix(8, rng).col(0);
        CHECK((apply_operator(Operator(mixed), u) - dense * u).cwiseAbs().maxCoeff() < 1e-14);
    }
    CHECK((Operator(mixed).to_dense() - dense).cwiseAbs().maxCoeff() < 1e-14);
    CHECK_THROWS(PauliSum(2, {PauliTerm{1.0, {{2, Pauli::X}}}}));
    CHECK_THROWS(apply_operator(Operator(mixed), VectorXc::Zero(4)));
}

TEST_CASE("operator factories")
{
    const MatrixXc t = Operator::transition(3, 2, 0).to_dense();
    CHECK(t(2, 0) == cplx(1.0));
    CHECK(t.cwiseAbs().sum() == 1.0);
    CHECK((Operator::identity(4).to_dense() - MatrixXc::Identity(4, 4)).norm() == 0.0);
}

TEST_CASE("p-spin annealing model")
{
    const SystemModel m = pspin_annealing(10, 1.0, 5, 1.0);
    CHECK(m.dim() == 1024);
    CHECK(m.time_dependent());
    VectorXc out = VectorXc::Zero(1024);
    const VectorXc up = VectorXc::Unit(1024, all_up_index(10));
    m.apply_hamiltonian(1.0, 1.0, up.data(), out.data());
    CHECK(out(all_up_index(10)).real() == doctest::Approx(-10.0));
    out.setZero();
    const VectorXc down = VectorXc::Unit(1024, 0);
    m.apply_hamiltonian(1.0, 1.0, down.data(), out.data());
    CHECK(out(0).real() == doctest::Approx(10.0));

    // Schedule endpoints and linearity on a small instance.
    const SystemModel s = pspin_annealing(3, 0.8, 3, 2.0);
    MatrixXc H0 = MatrixXc::Zero(8, 8);
    for (int i = 0; i < 3; ++i) H0 -= 0.8 * site_operator(3, i, pauli_matrix(Pauli::X));
    CHECK((s.hamiltonian_at(0.0) - H0).cwiseAbs().maxCoeff() < 1e-14);
    const MatrixXc H1 = s.hamiltonian_at(2.0);
    for (double tau : {0.3, 1.1, 1.7}) {
        const MatrixXc lin = (1 - tau / 2.0) * s.hamiltonian_at(0.0) + (tau / 2.0) * H1;
        CHECK((s.hamiltonian_at(tau) - lin).cwiseAbs().maxCoeff() < 1e-12);
        const MatrixXc h = s.hamiltonian_at(tau);
        CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
    }
    CHECK((H1 - MatrixXc(H1.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);

    // p = 1, two qubits: H1 = -(Z0 + Z1), spectrum {-2, 0, 0, 2}.
    const SystemModel two = pspin_annealing(2, 1.0, 1, 1.0);
    const MatrixXc Z = -(site_operator(2, 0, pauli_matrix(Pauli::Z)) + site_operator(2, 1, pauli_matrix(Pauli::Z)));
    CHECK((two.hamiltonian_at(1.0) - Z).cwiseAbs().maxCoeff() < 1e-14);
    Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<MatrixXc>(two.hamiltonian_at(1.0)).eigenvalues();
    CHECK(ev(0) == doctest::Approx(-2.0));
    CHECK(ev(1) == doctest::Approx(0.0));
    CHECK(ev(2) == doctest::Approx(0.0));
    CHECK(ev(3) == doctest::Approx(2.0));

    // Eigenvalue multiset of H1 against dense diagonalization for N <= 4.
    for (int N = 1; N <= 4; ++N) {
        const SystemModel q = pspin_annealing(N, 1.0, 3, 1.0);
        MatrixXc mz = MatrixXc::Zero(1 << N, 1 << N);
        for (int i = 0; i < N; ++i) mz += site_operator(N, i, pauli_matrix(Pauli::Z));
        MatrixXc ref = MatrixXc::Identity(1 << N, 1 << N);
        for (int k = 0; k < 3; ++k) ref = ref * (mz / double(N));
        ref *= -double(N);
        Eigen::VectorXd a = Eigen::SelfAdjointEigenSolver<MatrixXc>(q.hamiltonian_at(1.0)).eigenvalues();
        Eigen::VectorXd b = Eigen::SelfAdjointEigenSolver<MatrixXc>(ref).eigenvalues();
        CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK_THROWS_AS(pspin_annealing(kMaxAnnealingQubits + 1, 1.0, 5, 1.0), ResourceError);
}

TEST_CASE("hermiticity is enforced")
{
    MatrixXc bad = MatrixXc::Zero(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS(dense_model(bad, MatrixXc::Identity(2, 2)));
    CHECK_THROWS(dense_model(MatrixXc::Identity(2, 2), bad));
}

TEST_CASE("initial states")
{
    const LocalizedWithTransform ten = uniform_superposition_transform(10);
    CHECK(ten.k == 0);
    const VectorXc psi = ten.transformed();
    CHECK(psi.size() == 1024);
    CHECK((psi.array() - 1.0 / 32.0).abs().maxCoeff() < 1e-15);
    const MatrixXc rho = initial_density_matrix(ten);
    CHECK(rho.trace().real() == doctest::Approx(1.0));
    CHECK((rho.array() - 1.0 / 1024.0).abs().maxCoeff() < 1e-15);

    const MatrixXc one = initial_density_matrix(uniform_superposition_transform(1));
    CHECK((one.array() - 0.5).abs().maxCoeff() < 1e-15);

    const PureState p = make_pure_state(VectorXc::Ones(4));
    CHECK(p.vector.norm() == doctest::Approx(1.0));
    CHECK_THROWS(make_pure_state(VectorXc::Zero(3)));
    CHECK(single_flip_index(4, 0) == 14);
    CHECK(all_up_index(4) == 15);
}
