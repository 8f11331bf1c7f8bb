#include "qmodal/systems.hpp"

#include <cmath>
#include <sstream>

namespace qmodal {

bool CompositeSystem::interacting(double tol) const {
    return interaction.matrix().norm() > tol * std::max(1.0, total_hamiltonian.matrix().norm());
}

CompositeSystem compose(const QuantumSystem& s1, const QuantumSystem& s2,
                        const HermitianOperator& interaction) {
    const Index d1 = s1.dim();
    const Index d2 = s2.dim();
    if (interaction.dim() != d1 * d2) {
        std::ostringstream msg;
        msg << "compose: interaction dimension " << interaction.dim()
            << " does not match product dimension " << d1 * d2;
        throw std::invalid_argument(msg.str());
    }
    Matrix total = kron(s1.hamiltonian.matrix(), Matrix::Identity(d2, d2)) +
                   kron(Matrix::Identity(d1, d1), s2.hamiltonian.matrix()) +
                   interaction.matrix();
    return CompositeSystem{s1, s2, interaction,
                           HermitianOperator(std::move(total), s1.label + "+" + s2.label)};
}

CompositeSystem compose(const QuantumSystem& s1, const QuantumSystem& s2) {
    return compose(s1, s2, HermitianOperator::zero(s1.dim() * s2.dim()));
}

FactorizationReport check_decomposition(const HermitianOperator& h, Index d1, Index d2,
                                        double tol) {
    if (d1 < 1 || d2 < 1 || h.dim() != d1 * d2) {
        std::ostringstream msg;
        msg << "check_decomposition: dims (" << d1 << "," << d2
            << ") do not factor dimension " << h.dim();
        throw std::invalid_argument(msg.str());
    }
    const Matrix& m = h.matrix();
    const Complex mean_trace = m.trace() / static_cast<double>(d1 * d2);

    FactorizationReport report;
    report.h1 = partial_trace(m, d1, d2, Factor::First) / static_cast<double>(d2);
    report.h2 = partial_trace(m, d1, d2, Factor::Second) / static_cast<double>(d1) -
                mean_trace * Matrix::Identity(d2, d2);

    const Matrix split = kron(report.h1, Matrix::Identity(d2, d2)) +
                         kron(Matrix::Identity(d1, d1), report.h2);
    report.residual = (m - split).norm();
    report.decomposable = report.residual <= tol * std::max(1.0, m.norm());
    return report;
}

std::optional<UniformDegeneracyFactorization>
uniform_degeneracy_factorization(const HermitianOperator& h, double cluster_tol) {
    const SpectralDecomposition spec = spectral_decompose(h, cluster_tol);
    const Index fold = spec.multiplicities.front();
    if (fold <= 1) return std::nullopt;
    for (Index mult : spec.multiplicities) {
        if (mult != fold) return std::nullopt;
    }

    const Index n_levels = static_cast<Index>(spec.size());
    UniformDegeneracyFactorization out;
    out.dim_nondegenerate = n_levels;
    out.dim_degenerate = fold;
    out.h_nondegenerate = Matrix::Zero(n_levels, n_levels);
    for (Index n = 0; n < n_levels; ++n) {
        out.h_nondegenerate(n, n) = spec.eigenvalues[static_cast<std::size_t>(n)];
    }
    // spectral_decompose already orders basis columns cluster-major, which is
    // exactly the (level, copy) ordering required for H_nd (x) I.
    out.basis_change = spec.basis;
    return out;
}

} // namespace qmodal
