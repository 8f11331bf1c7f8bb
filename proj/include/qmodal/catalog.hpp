// catalog.hpp - Executable textbook scenarios: builders that produce
// Hamiltonians and named observables together with the expected
// definite-valuedness verdicts, used as the cross-module regression suite.

#pragma once

#include "qmodal/actualization.hpp"

#include <functional>
#include <map>

namespace qmodal {

struct ScenarioFixture {
    QuantumSystem system;
    std::vector<std::pair<std::string, HermitianOperator>> observables;
    std::vector<std::pair<std::string, bool>> expected_verdicts;
    std::map<std::string, double> parameters;
    ContextKind expected_context_kind = ContextKind::Context;

    const HermitianOperator& observable(const std::string& name) const;
};

struct FixtureRunEntry {
    std::string name;
    bool expected = false;
    bool actual = false;
    double score = 0.0;
};

struct FixtureRun {
    ContextKind context_kind = ContextKind::None;
    std::vector<FixtureRunEntry> entries;
    bool all_match = false;
    bool context_kind_match = false;
};

// Evaluate every expected verdict through the actualization rule.  With no
// actualization context (H ~ kI) every observable is reported not definite.
FixtureRun run_fixture(const ScenarioFixture& fixture);

// Spin component matrices in the |s, m> basis (m descending), from the
// standard ladder matrix elements.  hbar = 1.
struct SpinMatrices {
    Matrix sx, sy, sz, s_squared;
};
SpinMatrices spin_matrices(double spin);

// 1-D free particle on the symmetric momentum grid {-n..-1, +1..+n}:
// H = P^2/2m is doubly degenerate, so P^2 is definite but P is not.
ScenarioFixture free_particle(int n_modes, double mass = 1.0);

// Free spin-1/2: H_s = k S^2 is a multiple of the identity on the spin
// factor, so there is no actualization and no spin component is definite.
ScenarioFixture spin_system(double k = 1.0);

// Same spin system with a field term -gamma_b S_z breaking isotropy:
// S_z (and S^2) become definite.
ScenarioFixture spin_system_with_field(double k = 1.0, double gamma_b = 1.0);

// Direct sum of spin sectors (e.g. {0.5, 1}): H_s = k S^2 is block-scalar
// with distinct eigenvalues, so S^2 is definite while S_z is not.
ScenarioFixture spin_tower(double k, const std::vector<double>& spins);

// Truncated oscillator H = hbar omega (N + 1/2): non-degenerate, N definite,
// the q+p quadrature not.
ScenarioFixture harmonic_oscillator(int n_max, double omega = 1.0, double hbar = 1.0);

// Coulomb-degeneracy model on |n, l, m> with w_n = -1/n^2 (+ epsilon_l * l
// for the non-Coulombian variant that lifts the l degeneracy).
ScenarioFixture hydrogen_like(int n_max, double epsilon_l = 0.0);

// Field along z: H <- H + b L_z.  Removes the m degeneracy; on the
// non-Coulombian variant with generic b the spectrum is fully split and both
// L^2 and L_z become definite.
ScenarioFixture zeeman(const ScenarioFixture& hydrogen, double b);

// Spin-orbit coupling in the coupled basis |n, l, j, m_j> (s = 1/2):
// w = -1/n^2 + xi (j(j+1) - l(l+1) - 3/4), degenerate in m_j.
ScenarioFixture fine_structure(int n_max, double xi = 1.0);

// Anomalous Zeeman on the fine-structure fixture: H <- H + b J_z.
ScenarioFixture anomalous_zeeman(const ScenarioFixture& fine, double b);

// Violation scores of position and kinetic observables for H = P^2/2m + V(Q)
// over a mass ladder: the position score scales as 1/m, so large masses
// approximately actualize in position.
struct BornOppenheimerReport {
    std::vector<double> masses;
    std::vector<double> position_scores;
    std::vector<double> kinetic_scores;
    double approx_threshold = 0.01;
    std::vector<bool> position_approximately_definite;
};

BornOppenheimerReport born_oppenheimer_scan(const std::vector<double>& masses,
                                            const RealVector& q_grid,
                                            const std::function<double(double)>& potential,
                                            double hbar = 1.0,
                                            double approx_threshold = 0.01);

// All catalog presets in the order of the physical-relevance survey.
std::vector<std::pair<std::string, ScenarioFixture>> default_catalog();

} // namespace qmodal
