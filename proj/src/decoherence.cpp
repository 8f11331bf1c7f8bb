#include "qmodal/decoherence.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <sstream>

namespace qmodal {

double QuasiContinuousModel::spacing() const {
    if (omega.size() < 2) {
        throw std::invalid_argument("QuasiContinuousModel: need at least 2 grid points");
    }
    return omega(1) - omega(0);
}

double QuasiContinuousModel::recurrence_time() const {
    return 2.0 * std::numbers::pi * hbar / spacing();
}

void QuasiContinuousModel::validate(double tol) const {
    const Index n = omega.size();
    if (n < 2) throw std::invalid_argument("QuasiContinuousModel: need at least 2 grid points");
    if (hbar <= 0.0) throw std::invalid_argument("QuasiContinuousModel: hbar must be positive");
    const double dw = spacing();
    if (dw <= 0.0) throw std::invalid_argument("QuasiContinuousModel: grid must be increasing");
    for (Index k = 1; k < n; ++k) {
        if (std::abs(omega(k) - omega(k - 1) - dw) > 1e-9 * std::max(1.0, std::abs(dw))) {
            throw std::invalid_argument("QuasiContinuousModel: grid must be uniform");
        }
    }
    if (rho_diag.size() != n || obs_diag.size() != n || rho_off.rows() != n ||
        rho_off.cols() != n || obs_off.rows() != n || obs_off.cols() != n) {
        throw std::invalid_argument("QuasiContinuousModel: inconsistent sizes");
    }
    if (rho_diag.minCoeff() < -tol) {
        throw std::invalid_argument("QuasiContinuousModel: rho(w) must be non-negative");
    }
    const double total = rho_diag.sum() * dw;
    if (std::abs(total - 1.0) > 1e-6) {
        std::ostringstream msg;
        msg << "QuasiContinuousModel: sum rho(w) dw = " << total << ", expected 1";
        throw std::invalid_argument(msg.str());
    }
    const double scale = std::max(1.0, rho_off.norm()) + std::max(1.0, obs_off.norm());
    if (hermiticity_violation(rho_off) + hermiticity_violation(obs_off) > tol * scale) {
        throw std::invalid_argument(
            "QuasiContinuousModel: off-diagonal profiles must be Hermitian-symmetric");
    }
}

Complex expectation_evolution(const QuasiContinuousModel& model, double t) {
    model.validate();
    const Index n = model.size();
    const double dw = model.spacing();

    Complex value(diagonal_expectation(model), 0.0);

    // Phases depend only on the index difference on a uniform grid.
    std::vector<Complex> phase(static_cast<std::size_t>(2 * n - 1));
    for (Index m = -(n - 1); m <= n - 1; ++m) {
        phase[static_cast<std::size_t>(m + n - 1)] =
            std::exp(Complex(0.0, -static_cast<double>(m) * dw * t / model.hbar));
    }
    const double dw2 = dw * dw;
    Complex off(0.0, 0.0);
    for (Index k = 0; k < n; ++k) {
        for (Index l = 0; l < n; ++l) {
            const Complex term = model.rho_off(k, l) * model.obs_off(k, l);
            if (term == Complex(0.0)) continue;
            off += term * phase[static_cast<std::size_t>(k - l + n - 1)];
        }
    }
    return value + off * dw2;
}

double diagonal_expectation(const QuasiContinuousModel& model) {
    return (model.rho_diag.array() * model.obs_diag.array()).sum() * model.spacing();
}

QuasiContinuousModel diagonal_state(const QuasiContinuousModel& model) {
    QuasiContinuousModel out = model;
    out.rho_off.setZero();
    return out;
}

DecoherenceProfile decoherence_profile(const QuasiContinuousModel& model,
                                       const std::vector<double>& t_grid,
                                       double decay_fraction) {
    model.validate();
    DecoherenceProfile profile;
    profile.recurrence = model.recurrence_time();
    if (t_grid.empty()) {
        throw std::invalid_argument("decoherence_profile: empty time grid");
    }
    for (double t : t_grid) {
        if (t <= 0.0 || t >= 0.5 * profile.recurrence) {
            std::ostringstream msg;
            msg << "decoherence_profile: t = " << t
                << " outside (0, recurrence/2) = (0, " << 0.5 * profile.recurrence << ")";
            throw std::invalid_argument(msg.str());
        }
    }

    const double plateau = diagonal_expectation(model);
    profile.initial_envelope = std::abs(expectation_evolution(model, 0.0) - plateau);
    profile.revival_envelope =
        std::abs(expectation_evolution(model, profile.recurrence) - plateau);

    if (profile.initial_envelope == 0.0) {
        profile.decoherence_time = 0.0;
    }
    profile.times = t_grid;
    profile.envelope.reserve(t_grid.size());
    for (double t : t_grid) {
        const double env = std::abs(expectation_evolution(model, t) - plateau);
        profile.envelope.push_back(env);
        if (!profile.decoherence_time && env <= decay_fraction * profile.initial_envelope) {
            profile.decoherence_time = t;
        }
    }
    return profile;
}

// ---------------------------------------------------------------------------
// Wigner transform

double WignerGrid::normalization() const {
    return w.sum() * dq * dp;
}

RealVector WignerGrid::position_marginal() const {
    return w.rowwise().sum() * dp;
}

RealVector WignerGrid::momentum_marginal() const {
    return w.colwise().sum().transpose() * dq;
}

WignerGrid wigner_transform(const DensityState& rho, const RealVector& q_grid, double hbar) {
    const Index n = q_grid.size();
    if (hbar <= 0.0) throw std::invalid_argument("wigner_transform: hbar must be positive");
    if (rho.dim() != n) throw std::invalid_argument("wigner_transform: grid/state size mismatch");
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument("wigner_transform: grid size must be even and >= 2");
    }
    const double dq = q_grid(1) - q_grid(0);
    if (dq <= 0.0) throw std::invalid_argument("wigner_transform: grid must be increasing");
    for (Index j = 1; j < n; ++j) {
        if (std::abs(q_grid(j) - q_grid(j - 1) - dq) > 1e-9 * dq) {
            throw std::invalid_argument("wigner_transform: grid must be uniform");
        }
    }

    WignerGrid grid;
    grid.q = q_grid;
    grid.dq = dq;
    grid.hbar = hbar;
    grid.dp = std::numbers::pi * hbar / (static_cast<double>(n) * dq);
    grid.p = RealVector(n);
    for (Index k = 0; k < n; ++k) {
        grid.p(k) = (static_cast<double>(k) - static_cast<double>(n) / 2.0) * grid.dp;
    }

    // phase(k, m) = exp(-2 i p_k m dq / hbar); p_k m dq / hbar = pi m (k - n/2) / n.
    Matrix phase(n, 2 * n - 1);
    for (Index k = 0; k < n; ++k) {
        for (Index m = -(n - 1); m <= n - 1; ++m) {
            const double arg = -2.0 * std::numbers::pi * static_cast<double>(m) *
                               (static_cast<double>(k) - static_cast<double>(n) / 2.0) /
                               static_cast<double>(n);
            phase(k, m + n - 1) = std::exp(Complex(0.0, arg));
        }
    }

    const Matrix& kernel = rho.matrix();
    grid.w = RealMatrix(n, n);
    const double scale = 1.0 / (std::numbers::pi * hbar);
    for (Index j = 0; j < n; ++j) {
        const Index reach = std::min(j, n - 1 - j);
        for (Index k = 0; k < n; ++k) {
            Complex acc(0.0, 0.0);
            for (Index m = -reach; m <= reach; ++m) {
                acc += kernel(j + m, j - m) * phase(k, m + n - 1);
            }
            grid.w(j, k) = scale * acc.real(); // imaginary part cancels by hermiticity
        }
    }
    return grid;
}

double wigner_expectation(const WignerGrid& grid,
                          const std::function<double(double, double)>& observable) {
    double acc = 0.0;
    for (Index j = 0; j < grid.q.size(); ++j) {
        for (Index k = 0; k < grid.p.size(); ++k) {
            acc += grid.w(j, k) * observable(grid.q(j), grid.p(k));
        }
    }
    return acc * grid.dq * grid.dp;
}

// ---------------------------------------------------------------------------
// Classical limit

ClassicalLimitReport classical_limit_check(const PhaseSpaceModel& model,
                                           const std::function<double(double)>& rho_of_omega,
                                           const std::vector<double>& hbar_ladder,
                                           double band_factor,
                                           double omega_characteristic) {
    if (hbar_ladder.empty()) {
        throw std::invalid_argument("classical_limit_check: empty hbar ladder");
    }
    for (std::size_t i = 1; i < hbar_ladder.size(); ++i) {
        if (hbar_ladder[i] >= hbar_ladder[i - 1]) {
            throw std::invalid_argument("classical_limit_check: ladder must be decreasing");
        }
    }
    const Index n = model.q_grid.size();
    if (n < 4 || n % 2 != 0) {
        throw std::invalid_argument("classical_limit_check: grid size must be even and >= 4");
    }
    const double dq = model.q_grid(1) - model.q_grid(0);

    ClassicalLimitReport report;
    for (double hbar : hbar_ladder) {
        // Quantize p^2/2m + V(q) with the 3-point kinetic stencil.
        const double kin = hbar * hbar / (2.0 * model.mass * dq * dq);
        RealMatrix h = RealMatrix::Zero(n, n);
        for (Index j = 0; j < n; ++j) {
            h(j, j) = 2.0 * kin + model.potential(model.q_grid(j));
            if (j + 1 < n) {
                h(j, j + 1) = -kin;
                h(j + 1, j) = -kin;
            }
        }
        Eigen::SelfAdjointEigenSolver<RealMatrix> solver(h);
        if (solver.info() != Eigen::Success) {
            throw std::runtime_error("classical_limit_check: eigensolver failed");
        }

        RealVector weights(n);
        for (Index j = 0; j < n; ++j) weights(j) = rho_of_omega(solver.eigenvalues()(j));
        if (weights.minCoeff() < 0.0 || weights.maxCoeff() <= 0.0) {
            throw std::invalid_argument(
                "classical_limit_check: rho(w) must be non-negative with positive mass");
        }
        weights /= weights.sum();
        const double cut = 1e-12 * weights.maxCoeff();

        Matrix rho_star = Matrix::Zero(n, n);
        std::vector<double> included;
        for (Index j = 0; j < n; ++j) {
            if (weights(j) <= cut) continue;
            included.push_back(solver.eigenvalues()(j));
            const RealVector psi = solver.eigenvectors().col(j);
            rho_star += weights(j) * (psi * psi.transpose()).cast<Complex>();
        }

        const WignerGrid grid = wigner_transform(DensityState(rho_star), model.q_grid, hbar);
        const double band = band_factor * hbar * omega_characteristic;
        double in_band = 0.0;
        double total = 0.0;
        for (Index j = 0; j < n; ++j) {
            for (Index k = 0; k < n; ++k) {
                const double mass = std::abs(grid.w(j, k));
                total += mass;
                const double energy = model.h_phase(grid.q(j), grid.p(k));
                for (double level : included) {
                    if (std::abs(energy - level) <= band) {
                        in_band += mass;
                        break;
                    }
                }
            }
        }
        report.steps.push_back({hbar, in_band / total, static_cast<Index>(included.size())});
    }

    report.monotone_increasing = true;
    for (std::size_t i = 1; i < report.steps.size(); ++i) {
        if (report.steps[i].concentration <= report.steps[i - 1].concentration) {
            report.monotone_increasing = false;
        }
    }
    return report;
}

} // namespace qmodal
