// systems.hpp - Quantum systems, composition, additive-split detection, and
// uniform-degeneracy factorization.

#pragma once

#include "qmodal/operators.hpp"

#include <optional>

namespace qmodal {

struct QuantumSystem {
    std::string label;
    HermitianOperator hamiltonian;

    Index dim() const { return hamiltonian.dim(); }
};

// Two factor systems with an interaction term (possibly zero) on the product
// space.  H_total = H1 (x) I2 + I1 (x) H2 + H_int.  With H_int = 0 the
// factors are dynamically independent subsystems: reduced states evolve
// unitarily under their own Hamiltonians.
struct CompositeSystem {
    QuantumSystem first;
    QuantumSystem second;
    HermitianOperator interaction;
    HermitianOperator total_hamiltonian;

    Index dim() const { return total_hamiltonian.dim(); }
    bool interacting(double tol = kDefaultDecompTol) const;
};

CompositeSystem compose(const QuantumSystem& s1, const QuantumSystem& s2,
                        const HermitianOperator& interaction);
CompositeSystem compose(const QuantumSystem& s1, const QuantumSystem& s2); // H_int = 0

// Best additive split H ~ H1 (x) I + I (x) H2 by partial-trace projection:
//   H1 = Tr_2(H)/d2,  H2 = Tr_1(H)/d1 - (Tr H / (d1 d2)) I
// The global scalar is assigned wholly to the first factor so reports are
// deterministic (the split is only defined up to H1 + cI, H2 - cI).
struct FactorizationReport {
    bool decomposable = false;
    Matrix h1;
    Matrix h2;
    double residual = 0.0;
    static constexpr const char* scalar_split_convention =
        "global trace assigned to the first factor";
};

FactorizationReport check_decomposition(const HermitianOperator& h, Index d1, Index d2,
                                        double tol = kDefaultDecompTol);

// When every distinct eigenvalue of H has the same multiplicity i > 1, H is
// unitarily equivalent to H_nd (x) I_i with H_nd non-degenerate: the system
// splits into a non-degenerate part and a zero-Hamiltonian part.  Returns
// absent otherwise.  basis_change columns are ordered (cluster, copy) so
// that basis_change^dagger * H * basis_change = H_nd (x) I_i.
struct UniformDegeneracyFactorization {
    Matrix h_nondegenerate;
    Matrix basis_change;
    Index dim_nondegenerate = 0;
    Index dim_degenerate = 0;
};

std::optional<UniformDegeneracyFactorization>
uniform_degeneracy_factorization(const HermitianOperator& h,
                                 double cluster_tol = kDefaultClusterTol);

} // namespace qmodal
