// types.hpp - Core value types: Hermitian operators, density states, CSOPs

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmodal {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Tolerance defaults, all relative to max(1, norm) of the operand unless
// stated otherwise.
inline constexpr double kDefaultHermTol = 1e-10;
inline constexpr double kDefaultClusterTol = 1e-8;
inline constexpr double kDefaultScalarTol = 1e-9;        // H ~ kI detection
inline constexpr double kDefaultDecompTol = 1e-9;        // additive-split residual
inline constexpr double kDefaultDefiniteTol = 1e-9;      // commutator / block scalarity
inline constexpr double kDefaultStateTol = 1e-9;         // trace & positivity
inline constexpr double kProbabilityClampWindow = 1e-12; // round-off clamping

double frobenius_norm(const Matrix& m);

// ||A - A^dagger||_F
double hermiticity_violation(const Matrix& m);

// A complex square matrix guaranteed Hermitian after construction.  Inputs
// whose hermiticity violation is below tol * max(1, ||m||) are symmetrized
// to (m + m^dagger)/2; larger violations are rejected.
class HermitianOperator {
public:
    explicit HermitianOperator(Matrix m, std::string label = "",
                               double herm_tol = kDefaultHermTol);

    Index dim() const { return mat_.rows(); }
    const Matrix& matrix() const { return mat_; }
    const std::string& label() const { return label_; }

    static HermitianOperator identity(Index dim, std::string label = "I");
    static HermitianOperator zero(Index dim, std::string label = "0");
    static HermitianOperator diagonal(const RealVector& values, std::string label = "");

private:
    Matrix mat_;
    std::string label_;
};

// Trace-one positive operator.  Symmetrized like HermitianOperator; the
// trace must equal 1 and all eigenvalues must be >= -tol.
class DensityState {
public:
    explicit DensityState(Matrix m, double tol = kDefaultStateTol);

    Index dim() const { return mat_.rows(); }
    const Matrix& matrix() const { return mat_; }

    static DensityState pure(const Vector& psi);
    static DensityState maximally_mixed(Index dim);

private:
    Matrix mat_;
};

// Complete set of orthogonal projectors: mutually orthogonal, idempotent,
// summing to the identity.  Atoms keep their construction order.
class Csop {
public:
    // Validating factory for externally supplied projector lists.
    static Csop from_projectors(std::vector<Matrix> projectors,
                                double tol = kDefaultHermTol);

    // For projectors already known to satisfy the invariants (spectral output).
    static Csop unchecked(std::vector<Matrix> projectors);

    std::size_t size() const { return projectors_.size(); }
    Index dim() const { return projectors_.empty() ? 0 : projectors_[0].rows(); }
    const Matrix& projector(std::size_t i) const { return projectors_.at(i); }
    const std::vector<Matrix>& projectors() const { return projectors_; }

private:
    Csop() = default;
    std::vector<Matrix> projectors_;
};

// Distinct eigenvalues (strictly increasing) with multiplicities and
// orthogonal eigenprojectors.  `basis` holds all eigenvectors column-wise in
// cluster order; columns [offset(n), offset(n)+multiplicity(n)) span the
// n-th eigenspace.
struct SpectralDecomposition {
    std::vector<double> eigenvalues;
    std::vector<Index> multiplicities;
    std::vector<Matrix> projectors;
    Matrix basis;
    std::vector<Index> offsets;
    double reconstruction_residual = 0.0;

    std::size_t size() const { return eigenvalues.size(); }
    Csop to_csop() const { return Csop::unchecked(projectors); }
};

} // namespace qmodal
