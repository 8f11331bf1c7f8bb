// decoherence.hpp - Self-induced decoherence on quasi-continuous energy-grid
// models and the Wigner phase-space transform with its classical-limit check.

#pragma once

#include "qmodal/types.hpp"

#include <functional>
#include <optional>

namespace qmodal {

// Discretized energy model: a uniform grid of N energies carrying the
// diagonal profiles rho(w), O(w) and the off-diagonal profiles rho(w,w'),
// O(w,w') as primitive inputs.  rho_diag is a density over the grid
// (sum rho(w) dw = 1); the off-diagonal matrices are Hermitian-symmetric.
struct QuasiContinuousModel {
    RealVector omega;
    RealVector rho_diag;
    Matrix rho_off;
    RealVector obs_diag;
    Matrix obs_off;
    double hbar = 1.0;

    Index size() const { return omega.size(); }
    double spacing() const;
    double recurrence_time() const; // 2 pi hbar / dw, the revival horizon
    void validate(double tol = 1e-9) const;
};

// <O>(t) = sum rho(w) O(w) dw
//        + sum rho(w,w') O(w,w') exp(-i (w - w') t / hbar) dw^2.
// Hermitian-symmetric inputs give a real value up to round-off.
Complex expectation_evolution(const QuasiContinuousModel& model, double t);

// The diagonal (time-invariant) term alone: the decohered plateau value.
double diagonal_expectation(const QuasiContinuousModel& model);

// Same model with the off-diagonal data dropped.
QuasiContinuousModel diagonal_state(const QuasiContinuousModel& model);

struct DecoherenceProfile {
    std::vector<double> times;
    std::vector<double> envelope; // |<O>(t) - <O>_diag|
    double initial_envelope = 0.0;
    std::optional<double> decoherence_time; // first envelope <= 5% of initial
    double recurrence = 0.0;
    double revival_envelope = 0.0; // envelope at t = recurrence (= initial)
};

// Envelope series over t_grid, which must lie in (0, recurrence/2): past the
// half-recurrence point the discreteness artifacts dominate.
DecoherenceProfile decoherence_profile(const QuasiContinuousModel& model,
                                       const std::vector<double>& t_grid,
                                       double decay_fraction = 0.05);

// ---------------------------------------------------------------------------
// Wigner transform

struct WignerGrid {
    RealVector q;
    RealVector p;
    RealMatrix w; // w(i, j) = W(q_i, p_j)
    double dq = 0.0;
    double dp = 0.0;
    double hbar = 1.0;

    double normalization() const; // sum W dq dp
    RealVector position_marginal() const; // sum_p W dp, a density over q
    RealVector momentum_marginal() const; // sum_q W dq, a density over p
};

// Symmetric half-shift transform of a state given in position representation
// on a uniform grid of even size:
//   W(q, p) = (1/(pi hbar)) sum_m <q + m dq| rho |q - m dq> exp(-2 i p m dq / hbar)
// with the momentum grid spacing pi hbar / (N dq), which makes the position
// marginal exact.
WignerGrid wigner_transform(const DensityState& rho, const RealVector& q_grid, double hbar);

double wigner_expectation(const WignerGrid& grid,
                          const std::function<double(double, double)>& observable);

// ---------------------------------------------------------------------------
// Classical limit

// 1-D mechanical model quantized on a position grid with a 3-point kinetic
// stencil.  h_phase must agree with p^2/(2 mass) + potential(q).
struct PhaseSpaceModel {
    std::function<double(double, double)> h_phase;
    double mass = 1.0;
    std::function<double(double)> potential;
    RealVector q_grid;
};

struct ClassicalLimitStep {
    double hbar = 0.0;
    double concentration = 0.0; // |W| mass fraction in the level-set bands
    Index levels_included = 0;
};

struct ClassicalLimitReport {
    std::vector<ClassicalLimitStep> steps;
    bool monotone_increasing = false;
};

// For each hbar in the (strictly decreasing) ladder: quantize, weight the
// eigenstates by rho_of_omega, Wigner-transform the decohered state, and
// measure the |W| mass within |H(q,p) - w_n| <= band_factor * hbar * omega_c
// around the weighted level sets.  Concentration growing as hbar shrinks is
// the constructive evidence that W converges to the classical density on the
// energy shells.
ClassicalLimitReport classical_limit_check(const PhaseSpaceModel& model,
                                           const std::function<double(double)>& rho_of_omega,
                                           const std::vector<double>& hbar_ladder,
                                           double band_factor = 3.0,
                                           double omega_characteristic = 1.0);

} // namespace qmodal
