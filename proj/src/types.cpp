#include "qmodal/types.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>
#include <utility>

namespace qmodal {

double frobenius_norm(const Matrix& m) {
    return m.norm();
}

double hermiticity_violation(const Matrix& m) {
    return (m - m.adjoint().eval()).norm();
}

namespace {

void require_square(const Matrix& m, const char* who) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        std::ostringstream msg;
        msg << who << ": expected a nonempty square matrix, got "
            << m.rows() << "x" << m.cols();
        throw std::invalid_argument(msg.str());
    }
}

Matrix symmetrized_or_throw(Matrix m, double tol, const char* who) {
    require_square(m, who);
    const double violation = hermiticity_violation(m);
    const double scale = std::max(1.0, m.norm());
    if (violation > tol * scale) {
        std::ostringstream msg;
        msg << who << ": hermiticity violation ||m - m^dagger|| = " << violation
            << " exceeds " << tol << " * " << scale;
        throw std::invalid_argument(msg.str());
    }
    return 0.5 * (m + m.adjoint().eval());
}

} // namespace

HermitianOperator::HermitianOperator(Matrix m, std::string label, double herm_tol)
    : mat_(symmetrized_or_throw(std::move(m), herm_tol, "HermitianOperator")),
      label_(std::move(label)) {}

HermitianOperator HermitianOperator::identity(Index dim, std::string label) {
    return HermitianOperator(Matrix::Identity(dim, dim), std::move(label));
}

HermitianOperator HermitianOperator::zero(Index dim, std::string label) {
    return HermitianOperator(Matrix::Zero(dim, dim), std::move(label));
}

HermitianOperator HermitianOperator::diagonal(const RealVector& values, std::string label) {
    Matrix m = Matrix::Zero(values.size(), values.size());
    for (Index i = 0; i < values.size(); ++i) m(i, i) = values(i);
    return HermitianOperator(std::move(m), std::move(label));
}

DensityState::DensityState(Matrix m, double tol)
    : mat_(symmetrized_or_throw(std::move(m), tol, "DensityState")) {
    const double trace = mat_.trace().real();
    if (std::abs(trace - 1.0) > tol * std::max(1.0, std::abs(trace))) {
        std::ostringstream msg;
        msg << "DensityState: trace = " << trace << ", expected 1";
        throw std::invalid_argument(msg.str());
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(mat_, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("DensityState: eigenvalue check failed to converge");
    }
    const double lowest = solver.eigenvalues().minCoeff();
    if (lowest < -tol * std::max(1.0, mat_.norm())) {
        std::ostringstream msg;
        msg << "DensityState: negative eigenvalue " << lowest;
        throw std::invalid_argument(msg.str());
    }
}

DensityState DensityState::pure(const Vector& psi) {
    const double norm = psi.norm();
    if (norm <= 0.0) throw std::invalid_argument("DensityState::pure: zero vector");
    Vector unit = psi / norm;
    return DensityState(unit * unit.adjoint());
}

DensityState DensityState::maximally_mixed(Index dim) {
    if (dim < 1) throw std::invalid_argument("DensityState::maximally_mixed: dim < 1");
    return DensityState(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

Csop Csop::from_projectors(std::vector<Matrix> projectors, double tol) {
    if (projectors.empty()) throw std::invalid_argument("Csop: empty projector list");
    const Index dim = projectors[0].rows();
    Matrix sum = Matrix::Zero(dim, dim);
    for (std::size_t i = 0; i < projectors.size(); ++i) {
        const Matrix& p = projectors[i];
        if (p.rows() != dim || p.cols() != dim) {
            throw std::invalid_argument("Csop: projector dimension mismatch");
        }
        if (hermiticity_violation(p) > tol * std::max(1.0, p.norm())) {
            throw std::invalid_argument("Csop: projector is not Hermitian");
        }
        if ((p * p - p).norm() > tol * std::max(1.0, p.norm())) {
            throw std::invalid_argument("Csop: projector is not idempotent");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if ((projectors[j] * p).norm() > tol * static_cast<double>(dim)) {
                throw std::invalid_argument("Csop: projectors are not mutually orthogonal");
            }
        }
        sum += p;
    }
    if ((sum - Matrix::Identity(dim, dim)).norm() > tol * static_cast<double>(dim)) {
        throw std::invalid_argument("Csop: projectors do not sum to the identity");
    }
    Csop c;
    c.projectors_ = std::move(projectors);
    return c;
}

Csop Csop::unchecked(std::vector<Matrix> projectors) {
    Csop c;
    c.projectors_ = std::move(projectors);
    return c;
}

} // namespace qmodal
