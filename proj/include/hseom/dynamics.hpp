// dynamics.hpp - hierarchical Schroedinger equations on the forward/backward contour
//
// For every multi-index n of the hierarchy and contour parameter s in [0, 2t]
//
//   d/ds phi_n = sign * ( -i H_S(tau) phi_n
//                         + sum_{k,k'} eta_{k,k'} n_k phi_{n - e_k + e_k'}
//                         - i V sum_k c_k phi_{n + e_k}
//                         - i V sum_k n_k phi_k(0) phi_{n - e_k} )
//
// with sign = +1, tau = s on the forward branch C1 (s <= t) and sign = -1,
// tau = 2t - s on the returning branch C2. Indices beyond N_max are zero.

#pragma once

#include <cstdint>
#include <vector>

#include "hseom/bath.hpp"
#include "hseom/hierarchy.hpp"
#include "hseom/linalg.hpp"
#include "hseom/models.hpp"
#include "hseom/operators.hpp"

namespace hseom {

enum class Branch { C1, C2 };

struct ClockReading {
    double tau;
    Branch branch;
    int sign;
};

// The turning point s = t belongs to C1.
ClockReading contour_clock(double s, double t);

// One row per hierarchy index, one column per system basis state.
using StackMatrix = RowMajorMatrixX<cplx>;

struct WaveStack {
    StackMatrix data;
    double s = 0.0;
    Branch branch = Branch::C1;
};

// Factorized initial condition: RWF = psi, all AWFs zero.
WaveStack initial_stack(const HierarchySpace& space, const VectorXc& psi);

// Applies op to every row (RWF and AWFs alike).
void apply_to_stack(const Operator& op, StackMatrix& stack);

// Precomputed neighbor lists for the right-hand side. Rows are written
// independently, so a sweep splits statically across workers and the sum
// order inside a row is fixed (k ascending).
class HseomGenerator {
public:
    HseomGenerator(const HierarchySpace& space, const BathExpansion& bath, const SystemModel& model);

    int rows() const noexcept { return rows_; }
    Eigen::Index dim() const noexcept { return model_->dim(); }
    const SystemModel& model() const noexcept { return *model_; }

    void apply(const StackMatrix& in, double tau, int sign, StackMatrix& out, int workers = 1) const;

private:
    struct RealTerm {
        double coefficient;
        int source;
    };
    struct ComplexTerm {
        cplx coefficient;
        int source;
    };

    static constexpr Eigen::Index kDenseLimit = 64;

    const SystemModel* model_;
    int rows_;
    MatrixXc coupling_t_; // (-i V)^T for the dense path
    std::vector<int> exchange_ptr_;
    std::vector<RealTerm> exchange_;
    std::vector<int> bath_ptr_;
    std::vector<ComplexTerm> bath_;
};

StackMatrix hseom_rhs(const HierarchySpace& space, const BathExpansion& bath, const SystemModel& model,
                      const WaveStack& stack, double t);

// Fixed-step classical RK4 along the contour.
class Propagator {
public:
    Propagator(const HseomGenerator& gen, int workers = 1) : gen_(&gen), workers_(workers) {}

    // Takes `steps` steps of size dt from stack.s on the contour turning at t.
    // A step never straddles the turning point when t is on the step grid.
    void advance(WaveStack& stack, double t, double dt, long steps);

private:
    const HseomGenerator* gen_;
    int workers_;
    StackMatrix k1_, k2_, k3_, k4_, tmp_;
};

struct Insertion {
    double s;
    Operator op;
};

struct ContourPlan {
    double t = 0.0;
    double t_prime = 0.0;
    double dt = 1e-3;
    std::vector<Insertion> insertions; // applied in list order when s is reached
    std::vector<double> record_times;
    bool full_stack_snapshots = false;

    // A at s = t, B at s = 2t - t'.
    static ContourPlan correlation(double t, double t_prime, double dt, Operator A, Operator B);

    long total_steps() const;
    // Step index of a contour position; throws ConfigError when off-grid.
    long grid_index(double s) const;
    void validate() const;
};

struct Trajectory {
    std::vector<double> s;
    std::vector<VectorXc> rwf;
    std::vector<StackMatrix> stacks; // only with full_stack_snapshots
    WaveStack final_stack;
};

Trajectory propagate(const HseomGenerator& gen, const ContourPlan& plan, const WaveStack& init, int workers = 1);
Trajectory propagate(const HierarchySpace& space, const BathExpansion& bath, const SystemModel& model,
                     const ContourPlan& plan, const WaveStack& init, int workers = 1);

// min(0.05 / Omega, horizon / 2000), the default fixed step.
double default_step(double Omega, double horizon);

// Euclidean norm of each hierarchy level (overflow diagnostic).
std::vector<double> level_norms(const HierarchySpace& space, const StackMatrix& stack);

struct EngineOptions {
    double dt = 0.0; // 0 selects default_step for each run
    int workers = 1;
    std::uint64_t max_awf = HierarchySpace::kDefaultBudget;
};

// Owns everything one contour run needs. Not copyable: the generator keeps
// pointers into the model.
class Engine {
public:
    Engine(SystemModel model, BathExpansion bath, int N_max, EngineOptions options = {});
    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    const SystemModel& model() const noexcept { return model_; }
    const BathExpansion& bath() const noexcept { return bath_; }
    const HierarchySpace& space() const noexcept { return space_; }
    const HseomGenerator& generator() const noexcept { return generator_; }
    const EngineOptions& options() const noexcept { return options_; }

    // Largest step <= the configured (or default) step on which every
    // length is an integer number of steps; throws ConfigError otherwise.
    double step_for(double horizon, const std::vector<double>& lengths) const;

private:
    SystemModel model_;
    BathExpansion bath_;
    HierarchySpace space_;
    HseomGenerator generator_;
    EngineOptions options_;
};

} // namespace hseom
