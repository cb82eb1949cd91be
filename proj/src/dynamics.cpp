// dynamics.cpp - right-hand side sweep, RK4 stepping and contour plans

#include "hseom/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hseom {

ClockReading contour_clock(double s, double t)
{
    if (t < 0.0 || s < 0.0 || s > 2.0 * t)
        throw std::out_of_range("contour position s outside [0, 2t]");
    if (s <= t) return {s, Branch::C1, +1};
    return {2.0 * t - s, Branch::C2, -1};
}

WaveStack initial_stack(const HierarchySpace& space, const VectorXc& psi)
{
    WaveStack st;
    st.data = StackMatrix::Zero(space.size(), psi.size());
    st.data.row(0) = psi.transpose();
    return st;
}

void apply_to_stack(const Operator& op, StackMatrix& stack)
{
    if (op.dim() != stack.cols()) throw std::invalid_argument("apply_to_stack: operator dimension mismatch");
    VectorXc row(stack.cols());
    for (Eigen::Index r = 0; r < stack.rows(); ++r) {
        row.setZero();
        op.apply_add(1.0, stack.row(r).data(), row.data());
        stack.row(r) = row.transpose();
    }
}

HseomGenerator::HseomGenerator(const HierarchySpace& space, const BathExpansion& bath, const SystemModel& model)
    : model_(&model), rows_(space.size())
{
    if (model.dim() <= kDenseLimit) coupling_t_ = (-I * model.coupling().to_dense()).transpose();
    if (bath.K != space.K()) throw std::invalid_argument("HseomGenerator: bath K differs from hierarchy K");
    const int K = space.K();
    exchange_ptr_.assign(rows_ + 1, 0);
    bath_ptr_.assign(rows_ + 1, 0);
    for (int p = 0; p < rows_; ++p) {
        for (const auto& m : space.occupied(p)) {
            for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(bath.eta, m.mode); it; ++it) {
                const int src = space.raise(m.lowered, static_cast<int>(it.col()));
                if (src != kAbsent) exchange_.push_back({it.value() * m.occupation, src});
            }
        }
        exchange_ptr_[p + 1] = static_cast<int>(exchange_.size());

        for (int k = 0; k < K; ++k) {
            const int src = space.raise(p, k);
            if (src != kAbsent && bath.c(k) != cplx{}) bath_.push_back({bath.c(k), src});
        }
        for (const auto& m : space.occupied(p)) {
            const double phi0 = bath.phi_at_zero(m.mode);
            if (phi0 != 0.0) bath_.push_back({cplx(m.occupation * phi0), m.lowered});
        }
        bath_ptr_[p + 1] = static_cast<int>(bath_.size());
    }
}

void HseomGenerator::apply(const StackMatrix& in, double tau, int sign, StackMatrix& out, int workers) const
{
    const Eigen::Index d = dim();
    if (in.rows() != rows_ || in.cols() != d) throw std::invalid_argument("HseomGenerator::apply: stack shape mismatch");
    // Small systems: H and V act on the whole stack as two matrix products.
    const bool dense = d <= kDenseLimit;
    StackMatrix w_all;
    if (dense) w_all.resize(rows_, d);
    out.resize(rows_, d);
    const cplx* src = in.data();
    cplx* dst = out.data();
    const cplx minus_i = -I;

#pragma omp parallel num_threads(std::max(workers, 1))
    {
        VectorXc w_row(dense ? 0 : d);
#pragma omp for schedule(static)
        for (int p = 0; p < rows_; ++p) {
            cplx* acc = dst + static_cast<std::size_t>(p) * d;
            cplx* w = dense ? w_all.data() + static_cast<std::size_t>(p) * d : w_row.data();
            std::fill(acc, acc + d, cplx{});
            std::fill(w, w + d, cplx{});
            for (int e = exchange_ptr_[p]; e < exchange_ptr_[p + 1]; ++e) {
                const cplx* row = src + static_cast<std::size_t>(exchange_[e].source) * d;
                const double c = exchange_[e].coefficient;
                for (Eigen::Index j = 0; j < d; ++j) acc[j] += c * row[j];
            }
            for (int e = bath_ptr_[p]; e < bath_ptr_[p + 1]; ++e) {
                const cplx* row = src + static_cast<std::size_t>(bath_[e].source) * d;
                const cplx c = bath_[e].coefficient;
                for (Eigen::Index j = 0; j < d; ++j) w[j] += c * row[j];
            }
            if (!dense) {
                model_->apply_hamiltonian(tau, minus_i, src + static_cast<std::size_t>(p) * d, acc);
                model_->coupling().apply_add(minus_i, w, acc);
            }
        }
    }
    if (dense) {
        const MatrixXc h = (minus_i * model_->hamiltonian_at(tau)).transpose();
        out.noalias() += in * h;
        out.noalias() += w_all * coupling_t_;
    }
    if (sign < 0) out = -out;
}

StackMatrix hseom_rhs(const HierarchySpace& space, const BathExpansion& bath, const SystemModel& model,
                      const WaveStack& stack, double t)
{
    const HseomGenerator gen(space, bath, model);
    const ClockReading clk = contour_clock(stack.s, t);
    StackMatrix out;
    gen.apply(stack.data, clk.tau, clk.sign, out);
    return out;
}

void Propagator::advance(WaveStack& stack, double t, double dt, long steps)
{
    const double s0 = stack.s;
    StackMatrix& x = stack.data;
    for (long i = 0; i < steps; ++i) {
        const double s = s0 + static_cast<double>(i) * dt;
        const bool forward = s + 0.5 * dt <= t;
        const int sign = forward ? +1 : -1;
        auto tau = [&](double sp) { return forward ? sp : 2.0 * t - sp; };

        gen_->apply(x, tau(s), sign, k1_, workers_);
        tmp_ = x + (0.5 * dt) * k1_;
        gen_->apply(tmp_, tau(s + 0.5 * dt), sign, k2_, workers_);
        tmp_ = x + (0.5 * dt) * k2_;
        gen_->apply(tmp_, tau(s + 0.5 * dt), sign, k3_, workers_);
        tmp_ = x + dt * k3_;
        gen_->apply(tmp_, tau(s + dt), sign, k4_, workers_);
        x += (dt / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);

        if (!x.allFinite()) {
            double largest = 0.0;
            for (Eigen::Index r = 0; r < x.rows(); ++r)
                for (Eigen::Index c = 0; c < x.cols(); ++c)
                    if (std::isfinite(std::abs(x(r, c)))) largest = std::max(largest, std::abs(x(r, c)));
            std::ostringstream msg;
            msg << "non-finite hierarchy state at s = " << s + dt << " (largest finite |entry| " << largest << ")";
            throw NumericalError(msg.str());
        }
    }
    stack.s = s0 + static_cast<double>(steps) * dt;
    stack.branch = stack.s <= t ? Branch::C1 : Branch::C2;
}

ContourPlan ContourPlan::correlation(double t, double t_prime, double dt, Operator A, Operator B)
{
    ContourPlan plan;
    plan.t = t;
    plan.t_prime = t_prime;
    plan.dt = dt;
    plan.insertions.push_back({t, std::move(A)});
    plan.insertions.push_back({2.0 * t - t_prime, std::move(B)});
    plan.validate();
    return plan;
}

long ContourPlan::total_steps() const
{
    return grid_index(2.0 * t);
}

long ContourPlan::grid_index(double s) const
{
    const double q = s / dt;
    const long n = std::lround(q);
    if (std::abs(q - static_cast<double>(n)) > 1e-9 * std::max(1.0, std::abs(q))) {
        std::ostringstream msg;
        msg << "contour position s = " << s << " is not on the step grid dt = " << dt;
        throw ConfigError(msg.str());
    }
    return n;
}

void ContourPlan::validate() const
{
    if (!(dt > 0.0)) throw ConfigError("integrator step dt must be positive");
    if (t < 0.0) throw ConfigError("contour horizon t must be non-negative");
    if (t_prime < 0.0 || t_prime > t) throw ConfigError("t' must lie in [0, t]");
    grid_index(t);
    grid_index(t - t_prime);
    for (const auto& ins : insertions) {
        if (ins.s < 0.0 || ins.s > 2.0 * t) throw ConfigError("insertion outside the contour");
        grid_index(ins.s);
    }
    for (double r : record_times) {
        if (r < 0.0 || r > 2.0 * t) throw ConfigError("record time outside the contour");
        grid_index(r);
    }
}

Trajectory propagate(const HseomGenerator& gen, const ContourPlan& plan, const WaveStack& init, int workers)
{
    plan.validate();
    if (init.data.rows() != gen.rows() || init.data.cols() != gen.dim())
        throw std::invalid_argument("propagate: initial stack shape mismatch");

    const long total = plan.total_steps();
    std::vector<std::pair<long, const Operator*>> inserts;
    for (const auto& ins : plan.insertions) inserts.emplace_back(plan.grid_index(ins.s), &ins.op);
    std::stable_sort(inserts.begin(), inserts.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<long> records;
    for (double r : plan.record_times) records.push_back(plan.grid_index(r));
    std::sort(records.begin(), records.end());

    Trajectory traj;
    WaveStack st = init;
    st.s = 0.0;
    st.branch = Branch::C1;
    Propagator prop(gen, workers);

    auto next_ins = inserts.begin();
    auto next_rec = records.begin();
    long at = 0;
    while (true) {
        for (; next_ins != inserts.end() && next_ins->first == at; ++next_ins) apply_to_stack(*next_ins->second, st.data);
        for (; next_rec != records.end() && *next_rec == at; ++next_rec) {
            traj.s.push_back(static_cast<double>(at) * plan.dt);
            traj.rwf.push_back(st.data.row(0).transpose());
            if (plan.full_stack_snapshots) traj.stacks.push_back(st.data);
        }
        if (at == total) break;
        long next = total;
        if (next_ins != inserts.end()) next = std::min(next, next_ins->first);
        if (next_rec != records.end()) next = std::min(next, *next_rec);
        // Never step across the turning point.
        const long turn = plan.grid_index(plan.t);
        if (at < turn) next = std::min(next, turn);
        st.s = static_cast<double>(at) * plan.dt;
        prop.advance(st, plan.t, plan.dt, next - at);
        at = next;
    }
    st.s = static_cast<double>(total) * plan.dt;
    st.branch = total > plan.grid_index(plan.t) ? Branch::C2 : Branch::C1;
    traj.final_stack = std::move(st);
    return traj;
}

Trajectory propagate(const HierarchySpace& space, const BathExpansion& bath, const SystemModel& model,
                     const ContourPlan& plan, const WaveStack& init, int workers)
{
    const HseomGenerator gen(space, bath, model);
    return propagate(gen, plan, init, workers);
}

double default_step(double Omega, double horizon)
{
    const double by_bath = 0.05 / Omega;
    if (horizon <= 0.0) return by_bath;
    return std::min(by_bath, horizon / 2000.0);
}

std::vector<double> level_norms(const HierarchySpace& space, const StackMatrix& stack)
{
    std::vector<double> out;
    for (int l = 0; l <= space.N_max(); ++l) {
        const auto [a, b] = space.level_range(l);
        out.push_back(stack.middleRows(a, b - a).norm());
    }
    return out;
}

} // namespace hseom

namespace hseom {

Engine::Engine(SystemModel model, BathExpansion bath, int N_max, EngineOptions options)
    : model_(std::move(model)), bath_(std::move(bath)), space_(bath_.K, N_max, options.max_awf),
      generator_(space_, bath_, model_), options_(options)
{
}

double Engine::step_for(double horizon, const std::vector<double>& lengths) const
{
    const double target = options_.dt > 0.0 ? options_.dt : default_step(bath_.Omega, horizon);
    double base = 0.0;
    for (double l : lengths)
        if (l > 0.0) {
            base = l;
            break;
        }
    if (base == 0.0) return target;
    auto on_grid = [](double len, double dt) {
        const double q = len / dt;
        return std::abs(q - std::round(q)) <= 1e-9 * std::max(1.0, q);
    };
    const long first = static_cast<long>(std::ceil(base / target - 1e-9));
    for (long n = std::max(first, 1L); n <= 1000 * std::max(first, 1L); ++n) {
        const double dt = base / static_cast<double>(n);
        bool ok = true;
        for (double l : lengths) ok = ok && on_grid(l, dt);
        if (ok) return dt;
    }
    std::ostringstream msg;
    msg << "no integrator step <= " << target << " puts all contour lengths on a common grid";
    throw ConfigError(msg.str());
}

} // namespace hseom
