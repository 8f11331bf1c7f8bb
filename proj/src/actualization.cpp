#include "qmodal/actualization.hpp"

#include <cmath>

namespace qmodal {

PreferredContext preferred_context(const QuantumSystem& system, double scalar_tol,
                                   double cluster_tol) {
    return preferred_context(system.hamiltonian, scalar_tol, cluster_tol);
}

PreferredContext preferred_context(const HermitianOperator& hamiltonian, double scalar_tol,
                                   double cluster_tol) {
    PreferredContext ctx;
    ctx.hamiltonian = hamiltonian.matrix();

    SpectralDecomposition spec = spectral_decompose(hamiltonian, cluster_tol);
    // H = kI (including H = 0) carries no actualization context: it only
    // shifts phases, so every basis would be as good as any other.
    const double spread = spec.eigenvalues.back() - spec.eigenvalues.front();
    if (spread <= scalar_tol * std::max(1.0, hamiltonian.matrix().norm())) {
        ctx.kind = ContextKind::None;
        return ctx;
    }
    ctx.kind = ContextKind::Context;
    ctx.eigenvalues = std::move(spec.eigenvalues);
    ctx.multiplicities = std::move(spec.multiplicities);
    ctx.csop = Csop::unchecked(std::move(spec.projectors));
    return ctx;
}

DefiniteValueVerdict is_definite_valued(const HermitianOperator& observable,
                                        const PreferredContext& ctx, double tol) {
    if (ctx.kind == ContextKind::None) {
        throw std::invalid_argument(
            "is_definite_valued: no actualization context (H is a multiple of the identity)");
    }
    const Matrix& o = observable.matrix();
    if (o.rows() != ctx.hamiltonian.rows()) {
        throw std::invalid_argument("is_definite_valued: dimension mismatch with context");
    }

    DefiniteValueVerdict verdict;
    verdict.violation.commutator = commutator_norm(o, ctx.hamiltonian);

    double block_sq = 0.0;
    verdict.induced_values.reserve(ctx.size());
    for (std::size_t n = 0; n < ctx.size(); ++n) {
        const Matrix& p = ctx.csop.projector(n);
        const double rank = static_cast<double>(ctx.multiplicities[n]);
        // Least-squares scalar for the block: a_n = Tr(P O P) / rank = Tr(O P) / rank.
        const double a = (o * p).trace().real() / rank;
        verdict.induced_values.push_back(a);
        block_sq += (p * o * p - a * p).squaredNorm();
    }
    verdict.violation.block_residual = std::sqrt(block_sq);

    const double o_scale = std::max(1.0, o.norm());
    const double h_scale = std::max(1.0, ctx.hamiltonian.norm());
    verdict.definite =
        verdict.violation.commutator <= tol * o_scale * h_scale &&
        verdict.violation.block_residual <= tol * o_scale;
    verdict.violation.score =
        std::sqrt(verdict.violation.commutator * verdict.violation.commutator +
                  verdict.violation.block_residual * verdict.violation.block_residual) /
        o_scale;
    return verdict;
}

DefiniteValueVerdict lift_to_composite(const DefiniteValueVerdict& verdict,
                                       const CompositeSystem& composite, Factor factor) {
    (void)factor; // the inherited verdict is identical for either factor
    if (composite.interacting()) {
        throw std::invalid_argument(
            "lift_to_composite: factors are not subsystems (interaction is nonzero)");
    }
    return verdict;
}

DefiniteValueVerdict combine_definite(const DefiniteValueVerdict& v1,
                                      const DefiniteValueVerdict& v2,
                                      const CompositeSystem& composite,
                                      const std::function<double(double, double)>& f) {
    if (composite.interacting()) {
        throw std::invalid_argument(
            "combine_definite: factors are not subsystems (interaction is nonzero)");
    }
    DefiniteValueVerdict out;
    out.definite = v1.definite && v2.definite;
    out.violation.commutator = std::max(v1.violation.commutator, v2.violation.commutator);
    out.violation.block_residual =
        std::max(v1.violation.block_residual, v2.violation.block_residual);
    out.violation.score = std::max(v1.violation.score, v2.violation.score);
    if (out.definite) {
        out.induced_values.reserve(v1.induced_values.size() * v2.induced_values.size());
        for (double a : v1.induced_values) {
            for (double b : v2.induced_values) {
                out.induced_values.push_back(f(a, b));
            }
        }
    }
    return out;
}

} // namespace qmodal
