// measurement.hpp - Three-stage von Neumann measurement: ideal and non-ideal
// runs with reliability verdicts, the Stern-Gerlach scenario, Gaussian
// infinite-tails probabilities, and ensemble state tomography.

#pragma once

#include "qmodal/actualization.hpp"
#include "qmodal/propensity.hpp"

#include <optional>

namespace qmodal {

// Measuring device: Hamiltonian H_M and pointer R diagonal in a common
// eigenbasis (columns of `basis`).  The pointer must be stationary
// ([H_M, R] = 0), at least as degenerate as H_M, and its eigenvalues must be
// macroscopically distinguishable (pairwise separation >= 1 internal unit).
struct Apparatus {
    HermitianOperator hamiltonian; // H_M
    HermitianOperator pointer;     // R
    Matrix basis;                  // pointer eigenvectors, column i <-> r_i
    std::vector<double> pointer_values;
    Index ready_index = 0; // |r_0>, the ready-to-measure state

    Index dim() const { return hamiltonian.dim(); }

    // n_pointer states with r_i = i, H_M = diag(0..n-1), ready at index 0.
    static Apparatus standard(Index n_pointer);
    void validate(double tol = kDefaultDefiniteTol) const;

    // Pointer eigenstate recording the outcome for the i-th system state:
    // the next basis slots after the ready state, cyclically.
    Index target_index(Index system_index) const;
};

enum class CorrelationMode {
    UnitaryCorrelation, // exact isometry |a_i>|r_0> -> |a_i>|r_i> (default)
    Hamiltonian         // evolve under H_II with the discrete-conjugate coupling
};

// Prepared pure system state sum_i c_i |a_i> facing an apparatus.  The
// observable A must be non-degenerate; `observable_basis` columns are the
// |a_i> in the same order as the coefficients.
struct MeasurementSetup {
    QuantumSystem system;
    HermitianOperator observable; // A
    Matrix observable_basis;
    Vector coefficients;
    Apparatus apparatus;
    double coupling = 1.0; // lambda
    double duration = 1.0; // t1
    double hbar = 1.0;
    CorrelationMode mode = CorrelationMode::UnitaryCorrelation;

    void validate() const;
};

// Convenience builder: eigenbasis from spectral decomposition (ascending
// eigenvalues), standard apparatus sized to the coefficients.
MeasurementSetup make_setup(QuantumSystem system, HermitianOperator observable,
                            Vector coefficients,
                            CorrelationMode mode = CorrelationMode::UnitaryCorrelation);

// Off-diagonal correlation weight relative to diagonal, per pointer slot:
//   ratio_i = sum_{n != i} |d_ni|^2 / |d_ii|^2
// The frequency measurement is reliable only when every ratio is small.
struct ReliabilityReport {
    std::vector<double> ratios;
    double threshold = 0.05;
    bool reliable = false;
    std::vector<double> recovered; // rho_M diagonal, what frequencies estimate

    static ReliabilityReport from_correlation(const Matrix& d, double threshold);
};

struct MeasurementOutcome {
    Vector post_state;   // on H_S (x) H_M
    DensityState rho_m;  // reduced apparatus state at the start of stage III
    PropensityTable pointer_table;        // per pointer basis state
    DefiniteValueVerdict pointer_verdict; // R against the apparatus context
    ContextKind system_context_kind = ContextKind::None;
    std::optional<DefiniteValueVerdict> system_verdict; // A against the system context
    std::optional<ReliabilityReport> reliability;       // non-ideal runs only
    double correlation_deviation = 0.0; // Hamiltonian mode: distance to the exact map
};

// H_int = -(lambda hbar / t1) (A (x) P_R), with P_R the discrete-Fourier
// conjugate of the pointer (cyclic-shift generator in the pointer eigenbasis).
HermitianOperator build_interaction(const HermitianOperator& observable,
                                    const Apparatus& apparatus, double lambda, double t1,
                                    double hbar = 1.0);
Matrix pointer_conjugate(const Apparatus& apparatus);

MeasurementOutcome run_ideal(const MeasurementSetup& setup);

// Correlation matrix d_ij (system index i, pointer slot j), sum |d_ij|^2 = 1.
// Diagonal d with d_ii = c_i reproduces the ideal run exactly.
MeasurementOutcome run_nonideal(const MeasurementSetup& setup, const Matrix& correlation,
                                double reliability_threshold = 0.05);

// ---------------------------------------------------------------------------
// Stern-Gerlach

struct SternGerlachReport {
    MeasurementOutcome ideal;
    std::optional<MeasurementOutcome> nonideal;
    ContextKind spin_context_kind = ContextKind::None; // H_s = k S^2 is scalar on spin-1/2
    bool spin_z_definite = false;                      // never definite while free
    bool pointer_definite = false;
    std::vector<double> pointer_values; // (p_+, p_-, p_0)
};

SternGerlachReport stern_gerlach(Complex c1, Complex c2,
                                 const std::optional<Matrix>& correlation = std::nullopt,
                                 double k_spin = 1.0, double reliability_threshold = 0.05);

// ---------------------------------------------------------------------------
// Infinite tails

struct GaussianBeam {
    double mean = 0.0;
    double sigma = 1.0;
};

struct Window {
    double lo = 0.0;
    double hi = 0.0; // +-infinity allowed
};

struct TailsReport {
    double p_up_plus = 0.0;    // |c_11|^2: up beam detected in the + window
    double p_up_minus = 0.0;   // |c_12|^2: up beam leaking into the - window
    double p_down_plus = 0.0;  // |c_21|^2: down beam leaking into the + window
    double p_down_minus = 0.0; // |c_22|^2
    double plus_propensity = 0.0;
    double minus_propensity = 0.0;
    ReliabilityReport reliability;
};

// Detection probabilities by quadrature of the squared Gaussian amplitudes
// over disjoint detector windows (adaptive subdivision, |error| <= quad_tol).
TailsReport tails_overlap(const GaussianBeam& plus, const GaussianBeam& minus,
                          const Window& window_plus, const Window& window_minus, Complex c1,
                          Complex c2, double reliability_threshold = 0.05,
                          double quad_tol = 1e-10);

// ---------------------------------------------------------------------------
// State tomography

struct TomographyResult {
    Matrix rho_raw;       // assembled estimate before positivity repair
    DensityState rho_hat; // eigenvalues clipped to >= 0, trace renormalized
    double trace_distance;
    std::uint64_t shots_per_setting = 0;
};

// Reconstructs rho from frequency measurements of A (diagonal entries) and,
// for each pair i < j, of the real-part and imaginary-part observables
//   B_ij = (|a_i><a_j| + |a_j><a_i|) / 2,  C_ij = i (|a_i><a_j| - |a_j><a_i|) / 2.
// `basis` columns are the |a_i>.  Setting k samples stream k of the seed.
TomographyResult tomography(const DensityState& rho_true, const Matrix& basis,
                            std::uint64_t n_per_setting, std::uint64_t seed);

// (1/2) ||a - b||_1 over Hermitian matrices.
double trace_distance(const Matrix& a, const Matrix& b);

} // namespace qmodal
