#include "qmodal/operators.hpp"

#include "test_oracles.hpp"

#include <doctest.h>

#include <random>

using namespace qmodal;

TEST_CASE("hermitian operator rejects large violations and symmetrizes small ones") {
    Matrix bad(2, 2);
    bad << 0.0, 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(HermitianOperator(bad), std::invalid_argument);

    Matrix nearly = Matrix::Identity(2, 2);
    nearly(0, 1) = Complex(1e-13, 1e-13);
    const HermitianOperator fixed(nearly);
    CHECK(hermiticity_violation(fixed.matrix()) == 0.0);
}

TEST_CASE("density state invariants") {
    CHECK_THROWS_AS(DensityState(Matrix::Identity(2, 2)), std::invalid_argument); // trace 2
    Matrix negative(2, 2);
    negative << 1.5, 0.0, 0.0, -0.5;
    CHECK_THROWS_AS(DensityState(negative), std::invalid_argument);
    CHECK(DensityState::maximally_mixed(4).matrix().trace().real() == doctest::Approx(1.0));
}

TEST_CASE("spectral decomposition of diag(1,1,2)") {
    RealVector d(3);
    d << 1.0, 1.0, 2.0;
    const auto spec = spectral_decompose(HermitianOperator::diagonal(d), 1e-9);
    REQUIRE(spec.size() == 2);
    CHECK(spec.eigenvalues[0] == doctest::Approx(1.0));
    CHECK(spec.eigenvalues[1] == doctest::Approx(2.0));
    CHECK(spec.multiplicities[0] == 2);
    CHECK(spec.multiplicities[1] == 1);
    Matrix p0_expected = Matrix::Zero(3, 3);
    p0_expected(0, 0) = 1.0;
    p0_expected(1, 1) = 1.0;
    CHECK((spec.projectors[0] - p0_expected).norm() < 1e-12);
    CHECK((spec.projectors[1] - (Matrix::Identity(3, 3) - p0_expected)).norm() < 1e-12);
}

TEST_CASE("truncated oscillator spectrum is (n + 1/2)") {
    RealVector energies(4);
    for (int n = 0; n < 4; ++n) energies(n) = n + 0.5;
    const auto spec = spectral_decompose(HermitianOperator::diagonal(energies));
    REQUIRE(spec.size() == 4);
    for (std::size_t n = 0; n < 4; ++n) {
        CHECK(spec.eigenvalues[n] == doctest::Approx(n + 0.5));
        CHECK(spec.multiplicities[n] == 1);
    }
}

TEST_CASE("spectral decomposition reconstructs random Hermitian input") {
    std::mt19937 gen(7);
    for (int trial = 0; trial < 5; ++trial) {
        const Matrix m = oracle::random_hermitian(6, gen);
        const auto spec = spectral_decompose(m);
        Matrix rebuilt = Matrix::Zero(6, 6);
        for (std::size_t n = 0; n < spec.size(); ++n)
            rebuilt += spec.eigenvalues[n] * spec.projectors[n];
        CHECK((m - rebuilt).norm() < 1e-10);

        // Orthogonality, idempotency, completeness.
        Matrix sum = Matrix::Zero(6, 6);
        for (std::size_t a = 0; a < spec.size(); ++a) {
            const Matrix& p = spec.projectors[a];
            CHECK((p * p - p).norm() < 1e-12);
            CHECK(hermiticity_violation(p) < 1e-12);
            for (std::size_t b = 0; b < a; ++b)
                CHECK((spec.projectors[b] * p).norm() < 1e-12);
            sum += p;
        }
        CHECK((sum - Matrix::Identity(6, 6)).norm() < 1e-12);
    }
}

TEST_CASE("degenerate clusters get orthonormal projectors of the right rank") {
    std::mt19937 gen(11);
    const Matrix u = oracle::random_unitary(6, gen);
    RealVector d(6);
    d << -1.0, -1.0, -1.0, 0.5, 0.5, 2.0;
    const Matrix m = u * d.asDiagonal() * u.adjoint();
    const auto spec = spectral_decompose(HermitianOperator(m));
    REQUIRE(spec.size() == 3);
    CHECK(spec.multiplicities[0] == 3);
    CHECK(spec.multiplicities[1] == 2);
    CHECK(spec.multiplicities[2] == 1);
    for (std::size_t n = 0; n < 3; ++n) {
        CHECK(spec.projectors[n].trace().real() ==
              doctest::Approx(spec.multiplicities[n]).epsilon(1e-12));
    }
}

TEST_CASE("tensor product matches the quadruple-index oracle") {
    std::mt19937 gen(3);
    const Matrix a = oracle::random_hermitian(3, gen);
    const Matrix b = oracle::random_hermitian(2, gen);
    CHECK((kron(a, b) - oracle::kron_by_index(a, b)).norm() == 0.0);

    // A (x) I is block-diagonal copies of A.
    const Matrix ai = kron(a, Matrix::Identity(2, 2));
    for (Index i = 0; i < 3; ++i)
        for (Index j = 0; j < 3; ++j) {
            CHECK(ai(2 * i, 2 * j) == a(i, j));
            CHECK(ai(2 * i + 1, 2 * j + 1) == a(i, j));
            CHECK(ai(2 * i, 2 * j + 1) == Complex(0.0));
        }

    // sigma_z (x) sigma_z = diag(1, -1, -1, 1).
    RealVector z(2);
    z << 1.0, -1.0;
    const Matrix zz = kron(HermitianOperator::diagonal(z).matrix(),
                           HermitianOperator::diagonal(z).matrix());
    RealVector expected(4);
    expected << 1.0, -1.0, -1.0, 1.0;
    CHECK((zz - Matrix(expected.cast<Complex>().asDiagonal())).norm() == 0.0);
}

TEST_CASE("partial trace: product states, Bell state, and the index oracle") {
    std::mt19937 gen(19);
    const Matrix rho1 = oracle::random_density(2, gen);
    const Matrix rho2 = oracle::random_density(3, gen);
    const Matrix product = kron(rho1, rho2);
    CHECK((partial_trace(product, 2, 3, Factor::First) - rho1).norm() < 1e-12);
    CHECK((partial_trace(product, 2, 3, Factor::Second) - rho2).norm() < 1e-12);

    Vector bell = Vector::Zero(4);
    bell(0) = 1.0 / std::sqrt(2.0);
    bell(3) = 1.0 / std::sqrt(2.0);
    const Matrix bell_rho = bell * bell.adjoint();
    CHECK((partial_trace(bell_rho, 2, 2, Factor::First) - 0.5 * Matrix::Identity(2, 2)).norm() <
          1e-12);
    CHECK((partial_trace(bell_rho, 2, 2, Factor::Second) - 0.5 * Matrix::Identity(2, 2)).norm() <
          1e-12);

    const Matrix rho = oracle::random_density(6, gen);
    CHECK((partial_trace(rho, 2, 3, Factor::First) - oracle::ptrace_second_by_index(rho, 2, 3))
              .norm() < 1e-12);
    CHECK((partial_trace(rho, 2, 3, Factor::Second) - oracle::ptrace_first_by_index(rho, 2, 3))
              .norm() < 1e-12);

    CHECK_THROWS_AS(partial_trace(rho, 2, 2, Factor::First), std::invalid_argument);
}

TEST_CASE("evolution: commuting state, t = 0, qubit phase, series oracle") {
    std::mt19937 gen(23);
    RealVector z(2);
    z << 1.0, -1.0;
    const HermitianOperator sigma_z = HermitianOperator::diagonal(z);

    // [H, rho] = 0: stationary for any t.
    RealVector probs(2);
    probs << 0.3, 0.7;
    const DensityState diag_state{Matrix(probs.cast<Complex>().asDiagonal())};
    const DensityState moved = evolve(diag_state, sigma_z, 1.37);
    CHECK((moved.matrix() - diag_state.matrix()).norm() < 1e-14);

    // |+><+| under sigma_z: off-diagonal picks up exp(-2it).
    Vector plus(2);
    plus << 1.0, 1.0;
    const DensityState plus_state = DensityState::pure(plus);
    const double t = 0.8;
    const Matrix evolved = evolve(plus_state.matrix(), sigma_z, t, 1.0);
    CHECK(std::abs(evolved(0, 1) - 0.5 * std::exp(Complex(0.0, -2.0 * t))) < 1e-13);
    CHECK((evolve(plus_state.matrix(), sigma_z, 0.0) - plus_state.matrix()).norm() < 1e-14);

    for (int trial = 0; trial < 4; ++trial) {
        const Matrix h = oracle::random_hermitian(5, gen);
        const Matrix rho = oracle::random_density(5, gen);
        const Matrix via_series = oracle::evolve_by_series(rho, h, 0.9, 2.0);
        const Matrix via_eigen = evolve(rho, HermitianOperator(h), 0.9, 2.0);
        CHECK((via_series - via_eigen).norm() < 1e-12);
    }
}

TEST_CASE("evolution preserves trace and spectrum on random 8x8 states") {
    std::mt19937 gen(29);
    for (int trial = 0; trial < 5; ++trial) {
        const Matrix h = oracle::random_hermitian(8, gen);
        const Matrix rho = oracle::random_density(8, gen);
        const Matrix out = evolve(rho, HermitianOperator(h), 2.3);
        CHECK(std::abs(out.trace().real() - 1.0) < 1e-12);
        Eigen::SelfAdjointEigenSolver<Matrix> before(rho, Eigen::EigenvaluesOnly);
        Eigen::SelfAdjointEigenSolver<Matrix> after(out, Eigen::EigenvaluesOnly);
        CHECK((before.eigenvalues() - after.eigenvalues()).norm() < 1e-10);
    }
}

TEST_CASE("commutator norms") {
    std::mt19937 gen(31);
    const Matrix a = oracle::random_hermitian(4, gen);
    CHECK(commutator_norm(a, a) < 1e-14);

    Matrix sx(2, 2), sy(2, 2);
    sx << 0.0, 1.0, 1.0, 0.0;
    sy << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    CHECK(commutator_norm(sx, sy) == doctest::Approx(2.0 * std::sqrt(2.0)));

    const Matrix b = oracle::random_hermitian(4, gen);
    CHECK(commutator_norm(a, b) == doctest::Approx((a * b - b * a).norm()));

    // Polynomials of A commute with A.
    const Matrix poly = 2.0 * a * a * a - 0.5 * a + 3.0 * Matrix::Identity(4, 4);
    CHECK(commutator_norm(a, poly) < 1e-12);
}

TEST_CASE("partial trace is the left inverse of the product construction") {
    std::mt19937 gen(37);
    for (int trial = 0; trial < 3; ++trial) {
        const Matrix rho1 = oracle::random_density(3, gen);
        const Matrix rho2 = oracle::random_density(2, gen);
        CHECK((partial_trace(kron(rho1, rho2), 3, 2, Factor::First) - rho1).norm() < 1e-13);
    }
}
