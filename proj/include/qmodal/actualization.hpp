// actualization.hpp - Preferred-context computation from the Hamiltonian and
// classification of observables as definite-valued or not.

#pragma once

#include "qmodal/systems.hpp"

#include <functional>

namespace qmodal {

enum class ContextKind {
    None,   // H is (numerically) a multiple of the identity: no actualization
    Context // H defines a preferred CSOP via its eigenprojectors
};

// The context where actualization occurs: the CSOP of eigenprojectors of H,
// ordered by eigenvalue.  Keeps the original Hamiltonian so violation
// diagnostics can be computed against it rather than its reconstruction.
struct PreferredContext {
    ContextKind kind = ContextKind::None;
    Matrix hamiltonian;
    std::vector<double> eigenvalues;
    std::vector<Index> multiplicities;
    Csop csop;

    std::size_t size() const { return eigenvalues.size(); }
};

PreferredContext preferred_context(const QuantumSystem& system,
                                   double scalar_tol = kDefaultScalarTol,
                                   double cluster_tol = kDefaultClusterTol);
PreferredContext preferred_context(const HermitianOperator& hamiltonian,
                                   double scalar_tol = kDefaultScalarTol,
                                   double cluster_tol = kDefaultClusterTol);

// How far an observable is from the span of the preferred projectors.
//   commutator     = ||[O, H]||_F
//   block_residual = sqrt(sum_n ||P_n O P_n - a_n P_n||_F^2),
//                    a_n = Tr(O P_n) / rank(P_n)
//   score          = sqrt(commutator^2 + block_residual^2) / max(1, ||O||_F)
// The score is the continuous "approximate definiteness" measure; it scales
// linearly with the commutator when the blocks are scalar.
struct ViolationDiagnostics {
    double commutator = 0.0;
    double block_residual = 0.0;
    double score = 0.0;
};

struct DefiniteValueVerdict {
    bool definite = false;
    std::vector<double> induced_values; // a_n per eigenprojector when definite
    ViolationDiagnostics violation;
};

// An observable is definite-valued iff it commutes with H and acts as a
// scalar on every H-eigenspace (it has at least the degeneracy of H).
// Throws if ctx.kind == None: there is no actualization context.
DefiniteValueVerdict is_definite_valued(const HermitianOperator& observable,
                                        const PreferredContext& ctx,
                                        double tol = kDefaultDefiniteTol);

// Inheritance to the composite: A1 on S1 and A1 (x) I2 on S1 u S2 represent
// the same property, so the verdict and value list carry over unchanged.
// Requires a non-interacting composite (the factors must be subsystems).
DefiniteValueVerdict lift_to_composite(const DefiniteValueVerdict& verdict,
                                       const CompositeSystem& composite,
                                       Factor factor = Factor::First);

// f(A1 (x) I2, I1 (x) A2) is definite with values f(a_i, a_j) (i-major order)
// when both factor observables are definite.  Requires H_int = 0.
DefiniteValueVerdict combine_definite(const DefiniteValueVerdict& v1,
                                      const DefiniteValueVerdict& v2,
                                      const CompositeSystem& composite,
                                      const std::function<double(double, double)>& f);

} // namespace qmodal
