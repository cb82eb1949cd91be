// operators.cpp - Pauli-sum application and operator utilities

#include "hseom/operators.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace hseom {

MatrixXc pauli_matrix(Pauli p)
{
    MatrixXc m = MatrixXc::Zero(2, 2);
    switch (p) {
    case Pauli::X:
        m(0, 1) = m(1, 0) = 1.0;
        break;
    case Pauli::Y:
        // sigma^y = -i|1><0| + i|0><1|
        m(1, 0) = -I;
        m(0, 1) = I;
        break;
    case Pauli::Z:
        m(0, 0) = -1.0;
        m(1, 1) = 1.0;
        break;
    }
    return m;
}

PauliSum::PauliSum(int qubits, std::vector<PauliTerm> terms) : qubits_(qubits), terms_(std::move(terms))
{
    if (qubits < 1 || qubits > 30) throw std::invalid_argument("PauliSum supports 1..30 qubits");
    for (const auto& t : terms_) {
        Compiled c{t.coefficient, 0, 0, 0};
        for (const auto& [site, p] : t.factors) {
            if (site < 0 || site >= qubits)
                throw std::invalid_argument("Pauli factor on site " + std::to_string(site) + " outside " +
                                            std::to_string(qubits) + " qubits");
            const std::uint64_t bit = std::uint64_t{1} << site;
            if (p != Pauli::Z) c.flip |= bit;
            if (p != Pauli::X) c.phase |= bit;
            if (p == Pauli::Y) ++c.y_count;
        }
        compiled_.push_back(c);
    }
}

void PauliSum::apply_add(cplx scale, const cplx* in, cplx* out) const
{
    static constexpr cplx i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const std::uint64_t n = std::uint64_t{1} << qubits_;
    for (const auto& c : compiled_) {
        // Z and Y give -1 on a 0 bit; Y also carries a factor i.
        const cplx base = scale * c.coefficient * i_pow[c.y_count % 4];
        for (std::uint64_t b = 0; b < n; ++b) {
            const int zeros = std::popcount(~b & c.phase);
            out[b ^ c.flip] += (zeros % 2 ? -base : base) * in[b];
        }
    }
}

Operator Operator::identity(Eigen::Index dim)
{
    return DiagonalOperator{VectorXc::Ones(dim)};
}

Operator Operator::transition(Eigen::Index dim, Eigen::Index j, Eigen::Index i)
{
    if (i < 0 || j < 0 || i >= dim || j >= dim) throw std::invalid_argument("transition operator index out of range");
    OuterProduct o{VectorXc::Zero(dim), VectorXc::Zero(dim)};
    o.ket(j) = 1.0;
    o.bra(i) = 1.0;
    return o;
}

Operator Operator::projector(const VectorXc& state)
{
    return OuterProduct{state, state};
}

Eigen::Index Operator::dim() const
{
    return std::visit(
        [](const auto& s) -> Eigen::Index {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, MatrixXc>)
                return s.rows();
            else if constexpr (std::is_same_v<T, DiagonalOperator>)
                return s.diagonal.size();
            else if constexpr (std::is_same_v<T, PauliSum>)
                return s.dim();
            else
                return s.ket.size();
        },
        storage_);
}

void Operator::apply_add(cplx scale, const cplx* in, cplx* out) const
{
    const Eigen::Index n = dim();
    Eigen::Map<const VectorXc> x(in, n);
    Eigen::Map<VectorXc> y(out, n);
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, MatrixXc>)
                y.noalias() += scale * (s * x);
            else if constexpr (std::is_same_v<T, DiagonalOperator>)
                y += scale * s.diagonal.cwiseProduct(x);
            else if constexpr (std::is_same_v<T, PauliSum>)
                s.apply_add(scale, in, out);
            else
                y += (scale * s.bra.dot(x)) * s.ket;
        },
        storage_);
}

MatrixXc Operator::to_dense() const
{
    const Eigen::Index n = dim();
    MatrixXc m = MatrixXc::Zero(n, n);
    VectorXc e = VectorXc::Zero(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        e.setZero();
        e(j) = 1.0;
        apply_add(1.0, e.data(), m.col(j).data());
    }
    return m;
}

VectorXc apply_operator(const Operator& op, const VectorXc& v)
{
    if (op.dim() != v.size())
        throw std::invalid_argument("apply_operator: operator dimension " + std::to_string(op.dim()) +
                                    " does not match vector of length " + std::to_string(v.size()));
    VectorXc out = VectorXc::Zero(v.size());
    op.apply_add(1.0, v.data(), out.data());
    return out;
}

} // namespace hseom
