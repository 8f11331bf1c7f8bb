// operators.hpp - Spectral decomposition with degeneracy clustering, tensor
// products, partial traces, unitary evolution, commutator norms.

#pragma once

#include "qmodal/types.hpp"

namespace qmodal {

// Eigendecompose a Hermitian operator and cluster raw eigenvalues whose gaps
// fall below cluster_tol * max(1, ||O||_F).  Each cluster's eigenvectors are
// re-orthonormalized (QR) before the projector is formed, so projectors are
// exact idempotents even inside degenerate clusters.
SpectralDecomposition spectral_decompose(const HermitianOperator& op,
                                         double cluster_tol = kDefaultClusterTol);
SpectralDecomposition spectral_decompose(const Matrix& m,
                                         double cluster_tol = kDefaultClusterTol);

// Kronecker product, (left system) x (right system) factor order.
Matrix kron(const Matrix& a, const Matrix& b);
HermitianOperator tensor_product(const HermitianOperator& a, const HermitianOperator& b);

enum class Factor { First, Second };

// Trace out one factor of a bipartite matrix of dimension d1*d2.
// keep = First returns the d1 x d1 reduction (traces over the second factor).
Matrix partial_trace(const Matrix& m, Index d1, Index d2, Factor keep);
DensityState partial_trace(const DensityState& rho, Index d1, Index d2, Factor keep);

// rho(t) = exp(-iHt/hbar) rho0 exp(+iHt/hbar), via eigendecomposition of H.
DensityState evolve(const DensityState& rho0, const HermitianOperator& h,
                    double t, double hbar = 1.0);
Matrix evolve(const Matrix& rho0, const HermitianOperator& h, double t, double hbar = 1.0);

// Unitary exp(-iHt/hbar).
Matrix evolution_operator(const HermitianOperator& h, double t, double hbar = 1.0);

double commutator_norm(const Matrix& a, const Matrix& b);
double commutator_norm(const HermitianOperator& a, const HermitianOperator& b);

} // namespace qmodal
