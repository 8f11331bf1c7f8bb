#include "qmodal/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace qmodal {

// ---------------------------------------------------------------------------
// Apparatus

Apparatus Apparatus::standard(Index n_pointer) {
    if (n_pointer < 2) {
        throw std::invalid_argument("Apparatus::standard: need at least 2 pointer states");
    }
    RealVector values(n_pointer);
    for (Index i = 0; i < n_pointer; ++i) values(i) = static_cast<double>(i);
    Apparatus app{HermitianOperator::diagonal(values, "H_M"),
                  HermitianOperator::diagonal(values, "R"),
                  Matrix::Identity(n_pointer, n_pointer),
                  std::vector<double>(values.data(), values.data() + n_pointer),
                  0};
    return app;
}

void Apparatus::validate(double tol) const {
    const Index d = dim();
    if (pointer.dim() != d || basis.rows() != d || basis.cols() != d ||
        static_cast<Index>(pointer_values.size()) != d) {
        throw std::invalid_argument("Apparatus: inconsistent dimensions");
    }
    if (ready_index < 0 || ready_index >= d) {
        throw std::invalid_argument("Apparatus: ready_index out of range");
    }
    if ((basis.adjoint() * basis - Matrix::Identity(d, d)).norm() >
        tol * static_cast<double>(d)) {
        throw std::invalid_argument("Apparatus: basis is not unitary");
    }
    const double scale =
        std::max(1.0, hamiltonian.matrix().norm()) * std::max(1.0, pointer.matrix().norm());
    if (commutator_norm(hamiltonian, pointer) > tol * scale) {
        throw std::invalid_argument("Apparatus: pointer does not commute with H_M");
    }
    // Pointer at least as degenerate as H_M: scalar on each H_M eigenspace.
    const SpectralDecomposition spec = spectral_decompose(hamiltonian);
    for (std::size_t n = 0; n < spec.size(); ++n) {
        const Matrix& p = spec.projectors[n];
        const double r = (pointer.matrix() * p).trace().real() /
                         static_cast<double>(spec.multiplicities[n]);
        if ((p * pointer.matrix() * p - r * p).norm() >
            tol * std::max(1.0, pointer.matrix().norm())) {
            throw std::invalid_argument(
                "Apparatus: pointer has less degeneracy than H_M (not block-scalar)");
        }
    }
    // Pointer eigenbasis consistency and macroscopically distinct values.
    for (Index i = 0; i < d; ++i) {
        const Vector col = basis.col(i);
        if ((pointer.matrix() * col - pointer_values[static_cast<std::size_t>(i)] * col)
                .norm() > 1e-8 * std::max(1.0, pointer.matrix().norm())) {
            throw std::invalid_argument("Apparatus: basis column is not a pointer eigenvector");
        }
    }
    std::vector<double> values = pointer_values;
    std::sort(values.begin(), values.end());
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double gap = values[i] - values[i - 1];
        if (gap > 1e-9 && gap < 1.0 - 1e-9) {
            std::ostringstream msg;
            msg << "Apparatus: pointer values " << values[i - 1] << " and " << values[i]
                << " are not macroscopically distinguishable";
            throw std::invalid_argument(msg.str());
        }
    }
}

Index Apparatus::target_index(Index system_index) const {
    return (ready_index + 1 + system_index) % dim();
}

// ---------------------------------------------------------------------------
// Setup

void MeasurementSetup::validate() const {
    apparatus.validate();
    const Index n = coefficients.size();
    if (n < 1 || observable.dim() != n || system.dim() != n ||
        observable_basis.rows() != n || observable_basis.cols() != n) {
        throw std::invalid_argument("MeasurementSetup: inconsistent dimensions");
    }
    if (n > apparatus.dim()) {
        throw std::invalid_argument("MeasurementSetup: more A-eigenstates than pointer states");
    }
    if (std::abs(coefficients.squaredNorm() - 1.0) > 1e-9) {
        throw std::invalid_argument("MeasurementSetup: coefficients are not normalized");
    }
    if (duration <= 0.0 || hbar <= 0.0) {
        throw std::invalid_argument("MeasurementSetup: duration and hbar must be positive");
    }
}

MeasurementSetup make_setup(QuantumSystem system, HermitianOperator observable,
                            Vector coefficients, CorrelationMode mode) {
    const SpectralDecomposition spec = spectral_decompose(observable);
    if (spec.size() != static_cast<std::size_t>(observable.dim())) {
        throw std::invalid_argument("make_setup: observable must be non-degenerate");
    }
    const Index n = coefficients.size();
    MeasurementSetup setup{std::move(system),
                           std::move(observable),
                           spec.basis,
                           std::move(coefficients),
                           Apparatus::standard(n + 1),
                           1.0,
                           1.0,
                           1.0,
                           mode};
    setup.validate();
    return setup;
}

// ---------------------------------------------------------------------------
// Reliability

ReliabilityReport ReliabilityReport::from_correlation(const Matrix& d, double threshold) {
    ReliabilityReport report;
    report.threshold = threshold;
    const Index n = d.rows();
    for (Index i = 0; i < d.cols(); ++i) {
        double diag = std::norm(i < n ? d(i, i) : Complex(0.0));
        double off = 0.0;
        double column = 0.0;
        for (Index k = 0; k < n; ++k) {
            column += std::norm(d(k, i));
            if (k != i) off += std::norm(d(k, i));
        }
        report.recovered.push_back(column);
        report.ratios.push_back(diag > 0.0 ? off / diag
                                           : (off > 0.0
                                                  ? std::numeric_limits<double>::infinity()
                                                  : 0.0));
    }
    report.reliable = std::all_of(report.ratios.begin(), report.ratios.end(),
                                  [&](double r) { return r <= threshold; });
    return report;
}

// ---------------------------------------------------------------------------
// Stage III outcome assembly

namespace {

// amps(i, j): amplitude on |a_i> (x) |r_j>, j over ALL pointer slots.
MeasurementOutcome assemble_outcome(const MeasurementSetup& setup, const Matrix& amps) {
    const Index n = setup.coefficients.size();
    const Index dm = setup.apparatus.dim();

    MeasurementOutcome out;
    out.post_state = Vector::Zero(n * dm);
    for (Index i = 0; i < n; ++i) {
        const Vector sys_part = setup.observable_basis.col(i);
        for (Index j = 0; j < dm; ++j) {
            if (amps(i, j) == Complex(0.0)) continue;
            const Vector pointer_part = setup.apparatus.basis.col(j);
            for (Index a = 0; a < n; ++a)
                for (Index b = 0; b < dm; ++b)
                    out.post_state(a * dm + b) += amps(i, j) * sys_part(a) * pointer_part(b);
        }
    }

    // Reduced apparatus state: rho_M[j, j'] = sum_n amps(n, j) conj(amps(n, j')),
    // expressed in the pointer eigenbasis and rotated back.
    Matrix rho_coords = Matrix::Zero(dm, dm);
    for (Index j = 0; j < dm; ++j)
        for (Index jp = 0; jp < dm; ++jp)
            for (Index k = 0; k < n; ++k)
                rho_coords(j, jp) += amps(k, j) * std::conj(amps(k, jp));
    out.rho_m = DensityState(setup.apparatus.basis * rho_coords *
                             setup.apparatus.basis.adjoint());

    // Pointer propensities straight from the amplitude columns; no projector
    // round-trip, so diagonal correlations reproduce |c_i|^2 exactly.
    PropensityTable table;
    table.atom_measures.assign(static_cast<std::size_t>(dm), 0.0);
    for (Index j = 0; j < dm; ++j) {
        double p = 0.0;
        for (Index k = 0; k < n; ++k) p += std::norm(amps(k, j));
        table.atom_measures[static_cast<std::size_t>(j)] = p;
    }
    out.pointer_table = std::move(table);

    const PreferredContext apparatus_ctx = preferred_context(setup.apparatus.hamiltonian);
    out.pointer_verdict = is_definite_valued(setup.apparatus.pointer, apparatus_ctx);

    const PreferredContext system_ctx = preferred_context(setup.system.hamiltonian);
    out.system_context_kind = system_ctx.kind;
    if (system_ctx.kind == ContextKind::Context) {
        out.system_verdict = is_definite_valued(setup.observable, system_ctx);
    }
    return out;
}

Matrix amplitudes_from_correlation(const MeasurementSetup& setup, const Matrix& correlation) {
    const Index n = setup.coefficients.size();
    if (correlation.rows() != n || correlation.cols() != n) {
        throw std::invalid_argument("run_nonideal: correlation matrix must be n x n");
    }
    const double norm2 = correlation.squaredNorm();
    if (std::abs(norm2 - 1.0) > 1e-9) {
        std::ostringstream msg;
        msg << "run_nonideal: correlation weights sum to " << norm2 << ", expected 1";
        throw std::invalid_argument(msg.str());
    }
    Matrix amps = Matrix::Zero(n, setup.apparatus.dim());
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
            amps(i, setup.apparatus.target_index(j)) = correlation(i, j);
    return amps;
}

} // namespace

// ---------------------------------------------------------------------------
// Interaction Hamiltonian (explicitly approximate in finite dimension)

Matrix pointer_conjugate(const Apparatus& apparatus) {
    const Index d = apparatus.dim();
    if (d < 2) throw std::invalid_argument("pointer_conjugate: pointer dimension < 2");
    // Discrete-Fourier conjugate of the pointer index: eigenvectors are the
    // DFT modes over pointer states, eigenvalues the symmetric mode angles.
    Matrix p = Matrix::Zero(d, d);
    const double two_pi = 2.0 * std::numbers::pi;
    for (Index k = 0; k < d; ++k) {
        const double k_sym = (k <= d / 2) ? static_cast<double>(k)
                                          : static_cast<double>(k - d);
        const double theta = two_pi * k_sym / static_cast<double>(d);
        Vector mode(d);
        for (Index j = 0; j < d; ++j) {
            mode(j) = std::exp(Complex(0.0, two_pi * static_cast<double>(j * k) /
                                                static_cast<double>(d))) /
                      std::sqrt(static_cast<double>(d));
        }
        p += theta * (mode * mode.adjoint());
    }
    return apparatus.basis * p * apparatus.basis.adjoint();
}

HermitianOperator build_interaction(const HermitianOperator& observable,
                                    const Apparatus& apparatus, double lambda, double t1,
                                    double hbar) {
    if (t1 <= 0.0) throw std::invalid_argument("build_interaction: t1 must be positive");
    const Matrix h_int =
        (-lambda * hbar / t1) * kron(observable.matrix(), pointer_conjugate(apparatus));
    return HermitianOperator(h_int, "H_int");
}

// ---------------------------------------------------------------------------
// Runs

MeasurementOutcome run_ideal(const MeasurementSetup& setup) {
    setup.validate();
    const Index n = setup.coefficients.size();
    const Index dm = setup.apparatus.dim();

    Matrix ideal_amps = Matrix::Zero(n, dm);
    for (Index i = 0; i < n; ++i) {
        ideal_amps(i, setup.apparatus.target_index(i)) = setup.coefficients(i);
    }

    if (setup.mode == CorrelationMode::UnitaryCorrelation) {
        return assemble_outcome(setup, ideal_amps);
    }

    // Hamiltonian mode: evolve |psi_I> under the full stage-II Hamiltonian.
    const Matrix h2 =
        kron(setup.system.hamiltonian.matrix(), Matrix::Identity(dm, dm)) +
        kron(Matrix::Identity(n, n), setup.apparatus.hamiltonian.matrix()) +
        build_interaction(setup.observable, setup.apparatus, setup.coupling, setup.duration,
                          setup.hbar)
            .matrix();
    Vector psi0 = Vector::Zero(n * dm);
    for (Index i = 0; i < n; ++i) {
        const Vector sys_part = setup.observable_basis.col(i);
        const Vector ready = setup.apparatus.basis.col(setup.apparatus.ready_index);
        for (Index a = 0; a < n; ++a)
            for (Index b = 0; b < dm; ++b)
                psi0(a * dm + b) += setup.coefficients(i) * sys_part(a) * ready(b);
    }
    const Matrix u = evolution_operator(HermitianOperator(h2, "H_II"), setup.duration,
                                        setup.hbar);
    const Vector psi1 = u * psi0;

    // Re-express in the (a_i, r_j) product coordinates.
    Matrix amps(n, dm);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < dm; ++j) {
            Vector basis_vec = Vector::Zero(n * dm);
            const Vector sys_part = setup.observable_basis.col(i);
            const Vector pointer_part = setup.apparatus.basis.col(j);
            for (Index a = 0; a < n; ++a)
                for (Index b = 0; b < dm; ++b)
                    basis_vec(a * dm + b) = sys_part(a) * pointer_part(b);
            amps(i, j) = basis_vec.dot(psi1);
        }
    }
    MeasurementOutcome out = assemble_outcome(setup, amps);

    Vector psi_ideal = Vector::Zero(n * dm);
    {
        MeasurementSetup exact = setup;
        exact.mode = CorrelationMode::UnitaryCorrelation;
        psi_ideal = assemble_outcome(exact, ideal_amps).post_state;
    }
    const double overlap = std::abs(psi_ideal.dot(psi1));
    out.correlation_deviation = std::sqrt(std::max(0.0, 2.0 - 2.0 * overlap));
    return out;
}

MeasurementOutcome run_nonideal(const MeasurementSetup& setup, const Matrix& correlation,
                                double reliability_threshold) {
    setup.validate();
    MeasurementOutcome out =
        assemble_outcome(setup, amplitudes_from_correlation(setup, correlation));
    out.reliability = ReliabilityReport::from_correlation(correlation, reliability_threshold);
    return out;
}

// ---------------------------------------------------------------------------
// Stern-Gerlach

SternGerlachReport stern_gerlach(Complex c1, Complex c2,
                                 const std::optional<Matrix>& correlation, double k_spin,
                                 double reliability_threshold) {
    const double norm2 = std::norm(c1) + std::norm(c2);
    if (std::abs(norm2 - 1.0) > 1e-9) {
        throw std::invalid_argument("stern_gerlach: |c1|^2 + |c2|^2 must equal 1");
    }

    // Free spin-1/2: H_s = k S^2 = (3k/4) I, so the spin factor has no
    // actualization context and S_z stays indefinite.
    QuantumSystem spin{"spin",
                       HermitianOperator(0.75 * k_spin * Matrix::Identity(2, 2), "H_s")};
    RealVector sz_values(2);
    sz_values << 0.5, -0.5;
    HermitianOperator s_z = HermitianOperator::diagonal(sz_values, "S_z");

    // Pointer P_z with eigenstates {+, -, 0}; the beam enters through |0>.
    RealVector pz_values(3), hm_values(3);
    pz_values << 1.0, -1.0, 0.0;
    hm_values << 1.0, 2.0, 3.0;
    Apparatus apparatus{HermitianOperator::diagonal(hm_values, "H_M"),
                        HermitianOperator::diagonal(pz_values, "P_z"),
                        Matrix::Identity(3, 3),
                        {1.0, -1.0, 0.0},
                        2};

    Vector coefficients(2);
    coefficients << c1, c2;
    MeasurementSetup setup{spin,     s_z, Matrix::Identity(2, 2), coefficients, apparatus,
                           1.0,      1.0, 1.0,
                           CorrelationMode::UnitaryCorrelation};

    SternGerlachReport report;
    report.ideal = run_ideal(setup);
    if (correlation) {
        report.nonideal = run_nonideal(setup, *correlation, reliability_threshold);
    }
    report.spin_context_kind = preferred_context(spin.hamiltonian).kind;
    report.spin_z_definite = false; // no context on the free spin factor
    report.pointer_definite = report.ideal.pointer_verdict.definite;
    report.pointer_values = report.ideal.pointer_table.atom_measures;
    return report;
}

// ---------------------------------------------------------------------------
// Infinite tails

namespace {

double normal_density(double z, double mean, double sigma) {
    const double u = (z - mean) / sigma;
    return std::exp(-0.5 * u * u) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

double simpson(double fa, double fm, double fb, double a, double b) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson_step(const F& f, double a, double b, double fa, double fm, double fb,
                             double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(fa, flm, fm, a, m);
    const double right = simpson(fm, frm, fb, m, b);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
    if (b <= a) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    return adaptive_simpson_step(f, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, 48);
}

// Integral of the squared beam amplitude over a detector window; infinite
// window edges are clipped at 12 sigma where the density is ~1e-32.
double window_mass(const GaussianBeam& beam, const Window& window, double quad_tol) {
    const double lo = std::max(window.lo, beam.mean - 12.0 * beam.sigma);
    const double hi = std::min(window.hi, beam.mean + 12.0 * beam.sigma);
    if (hi <= lo) return 0.0;
    return adaptive_simpson([&](double z) { return normal_density(z, beam.mean, beam.sigma); },
                            lo, hi, quad_tol);
}

} // namespace

TailsReport tails_overlap(const GaussianBeam& plus, const GaussianBeam& minus,
                          const Window& window_plus, const Window& window_minus, Complex c1,
                          Complex c2, double reliability_threshold, double quad_tol) {
    if (plus.sigma <= 0.0 || minus.sigma <= 0.0) {
        throw std::invalid_argument("tails_overlap: sigma must be positive");
    }
    if (window_plus.hi <= window_plus.lo || window_minus.hi <= window_minus.lo) {
        throw std::invalid_argument("tails_overlap: empty detector window");
    }
    if (std::max(window_plus.lo, window_minus.lo) <
        std::min(window_plus.hi, window_minus.hi)) {
        throw std::invalid_argument("tails_overlap: detector windows overlap");
    }
    const double w1 = std::norm(c1);
    const double w2 = std::norm(c2);
    if (std::abs(w1 + w2 - 1.0) > 1e-9) {
        throw std::invalid_argument("tails_overlap: |c1|^2 + |c2|^2 must equal 1");
    }

    TailsReport report;
    report.p_up_plus = w1 * window_mass(plus, window_plus, quad_tol);
    report.p_up_minus = w1 * window_mass(plus, window_minus, quad_tol);
    report.p_down_plus = w2 * window_mass(minus, window_plus, quad_tol);
    report.p_down_minus = w2 * window_mass(minus, window_minus, quad_tol);
    report.plus_propensity = report.p_up_plus + report.p_down_plus;
    report.minus_propensity = report.p_down_minus + report.p_up_minus;

    report.reliability.threshold = reliability_threshold;
    report.reliability.recovered = {report.plus_propensity, report.minus_propensity};
    const auto ratio = [](double off, double diag) {
        return diag > 0.0 ? off / diag
                          : (off > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    };
    report.reliability.ratios = {ratio(report.p_down_plus, report.p_up_plus),
                                 ratio(report.p_up_minus, report.p_down_minus)};
    report.reliability.reliable =
        report.reliability.ratios[0] <= reliability_threshold &&
        report.reliability.ratios[1] <= reliability_threshold;
    return report;
}

// ---------------------------------------------------------------------------
// Tomography

double trace_distance(const Matrix& a, const Matrix& b) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a - b, Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

TomographyResult tomography(const DensityState& rho_true, const Matrix& basis,
                            std::uint64_t n_per_setting, std::uint64_t seed) {
    const Index d = rho_true.dim();
    if (basis.rows() != d || basis.cols() != d) {
        throw std::invalid_argument("tomography: basis dimension mismatch");
    }
    if ((basis.adjoint() * basis - Matrix::Identity(d, d)).norm() >
        1e-9 * static_cast<double>(d)) {
        throw std::invalid_argument("tomography: basis is not unitary");
    }
    if (n_per_setting < 1) {
        throw std::invalid_argument("tomography: n_per_setting must be >= 1");
    }

    const Matrix identity = Matrix::Identity(d, d);
    std::uint64_t stream = 0;

    // Setting A: diagonal entries from frequencies over {|a_i><a_i|}.
    std::vector<Matrix> diag_projectors;
    diag_projectors.reserve(static_cast<std::size_t>(d));
    for (Index i = 0; i < d; ++i) {
        const Vector a_i = basis.col(i);
        diag_projectors.emplace_back(a_i * a_i.adjoint());
    }
    const FrequencyTable diag_freq = frequency_estimate(
        rho_true, Csop::unchecked(diag_projectors), n_per_setting, seed, stream++);

    Matrix rho_raw = Matrix::Zero(d, d);
    for (Index i = 0; i < d; ++i) {
        rho_raw(i, i) = diag_freq.frequencies[static_cast<std::size_t>(i)];
    }

    // For each pair i < j, frequency measurements of the +-1/2 observables
    // whose expectations are Re(rho_ij) and Im(rho_ij).
    const auto half_spectrum_estimate = [&](const Vector& plus_vec, const Vector& minus_vec,
                                            std::uint64_t s) {
        const Matrix p_plus = plus_vec * plus_vec.adjoint();
        const Matrix p_minus = minus_vec * minus_vec.adjoint();
        std::vector<Matrix> projs{p_plus, p_minus, identity - p_plus - p_minus};
        const FrequencyTable freq = frequency_estimate(rho_true, Csop::unchecked(projs),
                                                       n_per_setting, seed, s);
        return 0.5 * freq.frequencies[0] - 0.5 * freq.frequencies[1];
    };

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (Index i = 0; i < d; ++i) {
        for (Index j = i + 1; j < d; ++j) {
            const Vector a_i = basis.col(i);
            const Vector a_j = basis.col(j);
            // B_ij eigenvectors (|a_i> +- |a_j>)/sqrt(2).
            const double re = half_spectrum_estimate(inv_sqrt2 * (a_i + a_j),
                                                     inv_sqrt2 * (a_i - a_j), stream++);
            // C_ij eigenvectors (|a_i> -+ i |a_j>)/sqrt(2).
            const double im = half_spectrum_estimate(
                inv_sqrt2 * (a_i - Complex(0.0, 1.0) * a_j),
                inv_sqrt2 * (a_i + Complex(0.0, 1.0) * a_j), stream++);
            rho_raw(i, j) = Complex(re, im);
            rho_raw(j, i) = Complex(re, -im);
        }
    }

    // The raw estimate lives in the |a_i> coordinates.
    rho_raw = (basis * rho_raw * basis.adjoint()).eval();

    // Positivity repair: clip negative eigenvalues, renormalize the trace.
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (rho_raw + rho_raw.adjoint().eval()));
    RealVector clipped = solver.eigenvalues().cwiseMax(0.0);
    const double total = clipped.sum();
    if (total <= 0.0) {
        clipped.setConstant(1.0 / static_cast<double>(d));
    } else {
        clipped /= total;
    }
    Matrix repaired = solver.eigenvectors() * clipped.asDiagonal() *
                      solver.eigenvectors().adjoint();

    TomographyResult result{rho_raw, DensityState(std::move(repaired)), 0.0, n_per_setting};
    result.trace_distance = trace_distance(result.rho_hat.matrix(), rho_true.matrix());
    return result;
}

} // namespace qmodal
