// operators.hpp - system operators: dense matrices, diagonals and Pauli sums
//
// Qubit convention: site i is bit i of the basis index (site 0 = least
// significant bit) and |1> is the sigma^z = +1 eigenstate, so for one qubit
// sigma^z = diag(-1, +1) in index order (|0>, |1>).

#pragma once

#include <map>
#include <variant>
#include <vector>

#include "hseom/linalg.hpp"

namespace hseom {

enum class Pauli { X, Y, Z };

struct PauliTerm {
    double coefficient = 1.0;
    std::map<int, Pauli> factors; // empty means identity
};

// Real-coefficient Pauli sum over n qubits (Hermitian by construction).
class PauliSum {
public:
    PauliSum(int qubits, std::vector<PauliTerm> terms);

    int qubits() const noexcept { return qubits_; }
    Eigen::Index dim() const noexcept { return Eigen::Index{1} << qubits_; }
    const std::vector<PauliTerm>& terms() const noexcept { return terms_; }

    // out += scale * P in, in O(terms * dim).
    void apply_add(cplx scale, const cplx* in, cplx* out) const;

private:
    struct Compiled {
        double coefficient;
        std::uint64_t flip;  // X or Y sites
        std::uint64_t phase; // Y or Z sites
        int y_count;
    };
    int qubits_;
    std::vector<PauliTerm> terms_;
    std::vector<Compiled> compiled_;
};

struct DiagonalOperator {
    VectorXc diagonal;
};

// Projector-like rank-one operator |ket><bra| kept factored.
struct OuterProduct {
    VectorXc ket;
    VectorXc bra;
};

class Operator {
public:
    using Storage = std::variant<MatrixXc, DiagonalOperator, PauliSum, OuterProduct>;

    Operator(MatrixXc dense) : storage_(std::move(dense)) {}
    Operator(DiagonalOperator d) : storage_(std::move(d)) {}
    Operator(PauliSum p) : storage_(std::move(p)) {}
    Operator(OuterProduct o) : storage_(std::move(o)) {}

    static Operator identity(Eigen::Index dim);
    // |j><i|
    static Operator transition(Eigen::Index dim, Eigen::Index j, Eigen::Index i);
    static Operator projector(const VectorXc& state);

    Eigen::Index dim() const;
    const Storage& storage() const noexcept { return storage_; }

    void apply_add(cplx scale, const cplx* in, cplx* out) const;
    MatrixXc to_dense() const;

private:
    Storage storage_;
};

// Matrix-vector product; throws std::invalid_argument on dimension mismatch.
VectorXc apply_operator(const Operator& op, const VectorXc& v);

MatrixXc pauli_matrix(Pauli p);

} // namespace hseom
