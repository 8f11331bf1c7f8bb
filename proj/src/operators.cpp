#include "qmodal/operators.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <cmath>
#include <sstream>

namespace qmodal {

SpectralDecomposition spectral_decompose(const HermitianOperator& op, double cluster_tol) {
    return spectral_decompose(op.matrix(), cluster_tol);
}

SpectralDecomposition spectral_decompose(const Matrix& m, double cluster_tol) {
    if (cluster_tol < 0.0) {
        throw std::invalid_argument("spectral_decompose: cluster_tol must be >= 0");
    }
    if (hermiticity_violation(m) > kDefaultHermTol * std::max(1.0, m.norm())) {
        std::ostringstream msg;
        msg << "spectral_decompose: hermiticity violation "
            << hermiticity_violation(m) << " on input of norm " << m.norm();
        throw std::invalid_argument(msg.str());
    }

    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("spectral_decompose: eigensolver failed to converge");
    }
    const RealVector raw = solver.eigenvalues(); // ascending
    const Matrix vecs = solver.eigenvectors();
    const Index dim = m.rows();
    const double gap_threshold = cluster_tol * std::max(1.0, m.norm());

    SpectralDecomposition out;
    out.basis = Matrix(dim, dim);

    // Greedy gap-based clustering over the sorted eigenvalues.
    Index start = 0;
    for (Index i = 1; i <= dim; ++i) {
        if (i == dim || raw(i) - raw(i - 1) > gap_threshold) {
            const Index count = i - start;
            // Re-orthonormalize the cluster span; eigensolvers do not
            // guarantee orthogonality inside a degenerate cluster.
            Matrix block = vecs.middleCols(start, count);
            Eigen::HouseholderQR<Matrix> qr(block);
            Matrix q = qr.householderQ() * Matrix::Identity(dim, count);
            out.offsets.push_back(start);
            out.basis.middleCols(start, count) = q;
            out.eigenvalues.push_back(raw.segment(start, count).mean());
            out.multiplicities.push_back(count);
            out.projectors.emplace_back(q * q.adjoint());
            start = i;
        }
    }

    Matrix reconstruction = Matrix::Zero(dim, dim);
    for (std::size_t n = 0; n < out.size(); ++n) {
        reconstruction += out.eigenvalues[n] * out.projectors[n];
    }
    out.reconstruction_residual = (m - reconstruction).norm();
    return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

HermitianOperator tensor_product(const HermitianOperator& a, const HermitianOperator& b) {
    std::string label = a.label().empty() && b.label().empty()
                            ? std::string{}
                            : a.label() + "(x)" + b.label();
    return HermitianOperator(kron(a.matrix(), b.matrix()), std::move(label));
}

Matrix partial_trace(const Matrix& m, Index d1, Index d2, Factor keep) {
    if (m.rows() != d1 * d2 || m.cols() != d1 * d2) {
        std::ostringstream msg;
        msg << "partial_trace: matrix is " << m.rows() << "x" << m.cols()
            << ", expected " << d1 * d2 << "x" << d1 * d2;
        throw std::invalid_argument(msg.str());
    }
    if (keep == Factor::First) {
        Matrix out = Matrix::Zero(d1, d1);
        for (Index i = 0; i < d1; ++i)
            for (Index j = 0; j < d1; ++j)
                for (Index k = 0; k < d2; ++k)
                    out(i, j) += m(i * d2 + k, j * d2 + k);
        return out;
    }
    Matrix out = Matrix::Zero(d2, d2);
    for (Index i = 0; i < d2; ++i)
        for (Index j = 0; j < d2; ++j)
            for (Index k = 0; k < d1; ++k)
                out(i, j) += m(k * d2 + i, k * d2 + j);
    return out;
}

DensityState partial_trace(const DensityState& rho, Index d1, Index d2, Factor keep) {
    return DensityState(partial_trace(rho.matrix(), d1, d2, keep));
}

Matrix evolution_operator(const HermitianOperator& h, double t, double hbar) {
    if (hbar <= 0.0) throw std::invalid_argument("evolution_operator: hbar must be > 0");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("evolution_operator: eigensolver failed to converge");
    }
    const RealVector ev = solver.eigenvalues();
    const Matrix& v = solver.eigenvectors();
    Vector phases(ev.size());
    for (Index i = 0; i < ev.size(); ++i) {
        phases(i) = std::exp(Complex(0.0, -ev(i) * t / hbar));
    }
    return v * phases.asDiagonal() * v.adjoint();
}

Matrix evolve(const Matrix& rho0, const HermitianOperator& h, double t, double hbar) {
    if (rho0.rows() != h.dim() || rho0.cols() != h.dim()) {
        throw std::invalid_argument("evolve: state and Hamiltonian dimensions differ");
    }
    const Matrix u = evolution_operator(h, t, hbar);
    return u * rho0 * u.adjoint();
}

DensityState evolve(const DensityState& rho0, const HermitianOperator& h, double t, double hbar) {
    return DensityState(evolve(rho0.matrix(), h, t, hbar));
}

double commutator_norm(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("commutator_norm: dimension mismatch");
    }
    return (a * b - b * a).norm();
}

double commutator_norm(const HermitianOperator& a, const HermitianOperator& b) {
    return commutator_norm(a.matrix(), b.matrix());
}

} // namespace qmodal
