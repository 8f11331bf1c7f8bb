// test_oracles.hpp - Independent reference implementations used only by the
// test suite.  These deliberately avoid the library's code paths: series
// matrix exponential, index-formula Kronecker products and partial traces,
// and seeded random operator generators.

#pragma once

#include "qmodal/types.hpp"

#include <random>

namespace oracle {

using qmodal::Complex;
using qmodal::Index;
using qmodal::Matrix;
using qmodal::Vector;

inline Matrix random_matrix(Index dim, std::mt19937& gen) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Matrix m(dim, dim);
    for (Index i = 0; i < dim; ++i)
        for (Index j = 0; j < dim; ++j) m(i, j) = Complex(dist(gen), dist(gen));
    return m;
}

inline Matrix random_hermitian(Index dim, std::mt19937& gen) {
    const Matrix m = random_matrix(dim, gen);
    return 0.5 * (m + m.adjoint().eval());
}

inline Matrix random_density(Index dim, std::mt19937& gen) {
    const Matrix m = random_matrix(dim, gen);
    Matrix rho = m * m.adjoint();
    return rho / rho.trace();
}

inline Vector random_state(Index dim, std::mt19937& gen) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Vector v(dim);
    for (Index i = 0; i < dim; ++i) v(i) = Complex(dist(gen), dist(gen));
    return v / v.norm();
}

inline Matrix random_unitary(Index dim, std::mt19937& gen) {
    const Matrix m = random_matrix(dim, gen);
    Eigen::HouseholderQR<Matrix> qr(m);
    Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
    return q;
}

// Quadruple-index Kronecker product.
inline Matrix kron_by_index(const Matrix& a, const Matrix& b) {
    const Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
    Matrix out(ra * rb, ca * cb);
    for (Index i = 0; i < ra; ++i)
        for (Index j = 0; j < ca; ++j)
            for (Index k = 0; k < rb; ++k)
                for (Index l = 0; l < cb; ++l) out(i * rb + k, j * cb + l) = a(i, j) * b(k, l);
    return out;
}

// Element-wise summation partial trace over the second factor.
inline Matrix ptrace_second_by_index(const Matrix& m, Index d1, Index d2) {
    Matrix out = Matrix::Zero(d1, d1);
    for (Index i = 0; i < d1; ++i)
        for (Index j = 0; j < d1; ++j)
            for (Index k = 0; k < d2; ++k) out(i, j) += m(i * d2 + k, j * d2 + k);
    return out;
}

inline Matrix ptrace_first_by_index(const Matrix& m, Index d1, Index d2) {
    Matrix out = Matrix::Zero(d2, d2);
    for (Index i = 0; i < d2; ++i)
        for (Index j = 0; j < d2; ++j)
            for (Index k = 0; k < d1; ++k) out(i, j) += m(k * d2 + i, k * d2 + j);
    return out;
}

// Scaling-and-squaring Taylor series exp(M); dense and slow but independent
// of any eigendecomposition.
inline Matrix expm_series(Matrix m) {
    const Index d = m.rows();
    int squarings = 0;
    double norm = m.norm();
    while (norm > 0.25) {
        m *= 0.5;
        norm *= 0.5;
        ++squarings;
    }
    Matrix result = Matrix::Identity(d, d);
    Matrix term = Matrix::Identity(d, d);
    for (int k = 1; k <= 30; ++k) {
        term = (term * m / static_cast<double>(k)).eval();
        result += term;
        if (term.norm() < 1e-18) break;
    }
    for (int s = 0; s < squarings; ++s) result = (result * result).eval();
    return result;
}

inline Matrix evolve_by_series(const Matrix& rho, const Matrix& h, double t, double hbar) {
    const Matrix u = expm_series(Complex(0.0, -t / hbar) * h);
    return u * rho * u.adjoint();
}

} // namespace oracle
