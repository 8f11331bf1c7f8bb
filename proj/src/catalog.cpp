#include "qmodal/catalog.hpp"

#include <cmath>
#include <sstream>

namespace qmodal {

const HermitianOperator& ScenarioFixture::observable(const std::string& name) const {
    for (const auto& [label, op] : observables) {
        if (label == name) return op;
    }
    throw std::out_of_range("ScenarioFixture: no observable named " + name);
}

FixtureRun run_fixture(const ScenarioFixture& fixture) {
    FixtureRun run;
    const PreferredContext ctx = preferred_context(fixture.system);
    run.context_kind = ctx.kind;
    run.context_kind_match = ctx.kind == fixture.expected_context_kind;
    run.all_match = run.context_kind_match;
    for (const auto& [name, expected] : fixture.expected_verdicts) {
        FixtureRunEntry entry;
        entry.name = name;
        entry.expected = expected;
        if (ctx.kind == ContextKind::None) {
            // No actualization: nothing acquires a definite value.
            entry.actual = false;
            entry.score = 0.0;
        } else {
            const DefiniteValueVerdict verdict =
                is_definite_valued(fixture.observable(name), ctx);
            entry.actual = verdict.definite;
            entry.score = verdict.violation.score;
        }
        if (entry.actual != entry.expected) run.all_match = false;
        run.entries.push_back(std::move(entry));
    }
    return run;
}

SpinMatrices spin_matrices(double spin) {
    const Index d = static_cast<Index>(std::lround(2.0 * spin + 1.0));
    if (d < 1 || std::abs(2.0 * spin - std::lround(2.0 * spin)) > 1e-12) {
        throw std::invalid_argument("spin_matrices: spin must be a non-negative half-integer");
    }
    Matrix plus = Matrix::Zero(d, d);
    Matrix sz = Matrix::Zero(d, d);
    for (Index a = 0; a < d; ++a) {
        const double m = spin - static_cast<double>(a); // m descending down the diagonal
        sz(a, a) = m;
        if (a > 0) {
            const double m_from = m;
            plus(a - 1, a) = std::sqrt(spin * (spin + 1.0) - m_from * (m_from + 1.0));
        }
    }
    SpinMatrices out;
    out.sx = 0.5 * (plus + plus.adjoint().eval());
    out.sy = Complex(0.0, -0.5) * (plus - plus.adjoint().eval());
    out.sz = sz;
    out.s_squared = spin * (spin + 1.0) * Matrix::Identity(d, d);
    return out;
}

ScenarioFixture free_particle(int n_modes, double mass) {
    if (n_modes < 2) throw std::invalid_argument("free_particle: n_modes must be >= 2");
    const Index d = 2 * n_modes;
    RealVector momenta(d);
    Index slot = 0;
    for (int k = -n_modes; k <= n_modes; ++k) {
        if (k == 0) continue;
        momenta(slot++) = static_cast<double>(k);
    }
    RealVector kinetic = momenta.array().square() / (2.0 * mass);

    ScenarioFixture fixture{
        {"free-particle", HermitianOperator::diagonal(kinetic, "H")},
        {{"H", HermitianOperator::diagonal(kinetic, "H")},
         {"P", HermitianOperator::diagonal(momenta, "P")},
         {"P2", HermitianOperator::diagonal(momenta.array().square(), "P2")}},
        {{"H", true}, {"P2", true}, {"P", false}},
        {{"n_modes", static_cast<double>(n_modes)}, {"mass", mass}},
        ContextKind::Context};
    return fixture;
}

ScenarioFixture spin_system(double k) {
    const SpinMatrices s = spin_matrices(0.5);
    // S^2 = (3/4) I on spin-1/2, so H_s = k S^2 is scalar: no actualization.
    // Whether S^2 itself counts as definite is ambiguous in that reading;
    // only the S components are asserted (not definite under either reading).
    ScenarioFixture fixture{
        {"spin-1/2", HermitianOperator(k * s.s_squared, "H_s")},
        {{"Sx", HermitianOperator(s.sx, "Sx")},
         {"Sy", HermitianOperator(s.sy, "Sy")},
         {"Sz", HermitianOperator(s.sz, "Sz")},
         {"S2", HermitianOperator(s.s_squared, "S2")}},
        {{"Sx", false}, {"Sy", false}, {"Sz", false}},
        {{"k", k}},
        ContextKind::None};
    return fixture;
}

ScenarioFixture spin_system_with_field(double k, double gamma_b) {
    const SpinMatrices s = spin_matrices(0.5);
    ScenarioFixture fixture{
        {"spin-1/2+field",
         HermitianOperator(k * s.s_squared - gamma_b * s.sz, "H_s")},
        {{"Sx", HermitianOperator(s.sx, "Sx")},
         {"Sy", HermitianOperator(s.sy, "Sy")},
         {"Sz", HermitianOperator(s.sz, "Sz")},
         {"S2", HermitianOperator(s.s_squared, "S2")}},
        {{"Sx", false}, {"Sy", false}, {"Sz", true}, {"S2", true}},
        {{"k", k}, {"gamma_b", gamma_b}},
        ContextKind::Context};
    return fixture;
}

ScenarioFixture spin_tower(double k, const std::vector<double>& spins) {
    if (spins.size() < 2) throw std::invalid_argument("spin_tower: need at least two sectors");
    Index d = 0;
    for (double s : spins) d += static_cast<Index>(std::lround(2.0 * s + 1.0));
    Matrix h = Matrix::Zero(d, d);
    Matrix s2 = Matrix::Zero(d, d);
    Matrix sz = Matrix::Zero(d, d);
    Index offset = 0;
    for (double s : spins) {
        const SpinMatrices mats = spin_matrices(s);
        const Index ds = mats.sz.rows();
        s2.block(offset, offset, ds, ds) = mats.s_squared;
        sz.block(offset, offset, ds, ds) = mats.sz;
        h.block(offset, offset, ds, ds) = k * mats.s_squared;
        offset += ds;
    }
    ScenarioFixture fixture{
        {"spin-tower", HermitianOperator(std::move(h), "H_s")},
        {{"S2", HermitianOperator(std::move(s2), "S2")},
         {"Sz", HermitianOperator(std::move(sz), "Sz")}},
        {{"S2", true}, {"Sz", false}},
        {{"k", k}},
        ContextKind::Context};
    return fixture;
}

ScenarioFixture harmonic_oscillator(int n_max, double omega, double hbar) {
    if (n_max < 1) throw std::invalid_argument("harmonic_oscillator: n_max must be >= 1");
    const Index d = n_max + 1;
    RealVector number(d), energy(d);
    for (Index n = 0; n < d; ++n) {
        number(n) = static_cast<double>(n);
        energy(n) = hbar * omega * (static_cast<double>(n) + 0.5);
    }
    // Dimensionless quadratures from the truncated ladder operator.
    Matrix lower = Matrix::Zero(d, d);
    for (Index n = 1; n < d; ++n) lower(n - 1, n) = std::sqrt(static_cast<double>(n));
    const Matrix raise = lower.adjoint();
    const Matrix q = (lower + raise) / std::sqrt(2.0);
    const Matrix p = Complex(0.0, 1.0) * (raise - lower) / std::sqrt(2.0);

    ScenarioFixture fixture{
        {"oscillator", HermitianOperator::diagonal(energy, "H")},
        {{"H", HermitianOperator::diagonal(energy, "H")},
         {"N", HermitianOperator::diagonal(number, "N")},
         {"q_plus_p", HermitianOperator(q + p, "q+p")}},
        {{"H", true}, {"N", true}, {"q_plus_p", false}},
        {{"n_max", static_cast<double>(n_max)}, {"omega", omega}, {"hbar", hbar}},
        ContextKind::Context};
    return fixture;
}

ScenarioFixture hydrogen_like(int n_max, double epsilon_l) {
    if (n_max < 2) throw std::invalid_argument("hydrogen_like: n_max must be >= 2");
    std::vector<double> energies, l2_values, lz_values;
    for (int n = 1; n <= n_max; ++n) {
        for (int l = 0; l < n; ++l) {
            for (int m = -l; m <= l; ++m) {
                energies.push_back(-1.0 / (static_cast<double>(n) * n) +
                                   epsilon_l * static_cast<double>(l));
                l2_values.push_back(static_cast<double>(l) * (l + 1));
                lz_values.push_back(static_cast<double>(m));
            }
        }
    }
    const Index d = static_cast<Index>(energies.size());
    RealVector e(d), l2(d), lz(d);
    for (Index i = 0; i < d; ++i) {
        e(i) = energies[static_cast<std::size_t>(i)];
        l2(i) = l2_values[static_cast<std::size_t>(i)];
        lz(i) = lz_values[static_cast<std::size_t>(i)];
    }
    const bool coulombian = epsilon_l == 0.0;
    ScenarioFixture fixture{
        {coulombian ? "hydrogen" : "hydrogen-noncoulomb",
         HermitianOperator::diagonal(e, "H")},
        {{"H", HermitianOperator::diagonal(e, "H")},
         {"L2", HermitianOperator::diagonal(l2, "L2")},
         {"Lz", HermitianOperator::diagonal(lz, "Lz")}},
        {{"H", true}, {"L2", !coulombian}, {"Lz", false}},
        {{"n_max", static_cast<double>(n_max)}, {"epsilon_l", epsilon_l}},
        ContextKind::Context};
    return fixture;
}

ScenarioFixture zeeman(const ScenarioFixture& hydrogen, double b) {
    ScenarioFixture fixture = hydrogen;
    fixture.system.label = "zeeman";
    fixture.system.hamiltonian = HermitianOperator(
        hydrogen.system.hamiltonian.matrix() + b * hydrogen.observable("Lz").matrix(), "H");
    fixture.parameters["b"] = b;
    if (b != 0.0) {
        // Generic field on the l-split spectrum removes all degeneracy.
        fixture.expected_verdicts = {{"H", true}, {"L2", true}, {"Lz", true}};
    }
    return fixture;
}

ScenarioFixture fine_structure(int n_max, double xi) {
    if (n_max < 2) throw std::invalid_argument("fine_structure: n_max must be >= 2");
    std::vector<double> energies, l2v, j2v, jzv;
    for (int n = 1; n <= n_max; ++n) {
        for (int l = 0; l < n; ++l) {
            for (int twice_j : {2 * l - 1, 2 * l + 1}) {
                if (twice_j < 1) continue;
                const double j = 0.5 * twice_j;
                const double shift = j * (j + 1.0) - static_cast<double>(l) * (l + 1) - 0.75;
                for (int twice_mj = -twice_j; twice_mj <= twice_j; twice_mj += 2) {
                    energies.push_back(-1.0 / (static_cast<double>(n) * n) + xi * shift);
                    l2v.push_back(static_cast<double>(l) * (l + 1));
                    j2v.push_back(j * (j + 1.0));
                    jzv.push_back(0.5 * twice_mj);
                }
            }
        }
    }
    const Index d = static_cast<Index>(energies.size());
    RealVector e(d), l2(d), j2(d), jz(d), s2(d);
    for (Index i = 0; i < d; ++i) {
        e(i) = energies[static_cast<std::size_t>(i)];
        l2(i) = l2v[static_cast<std::size_t>(i)];
        j2(i) = j2v[static_cast<std::size_t>(i)];
        jz(i) = jzv[static_cast<std::size_t>(i)];
        s2(i) = 0.75;
    }
    ScenarioFixture fixture{
        {"fine-structure", HermitianOperator::diagonal(e, "H")},
        {{"H", HermitianOperator::diagonal(e, "H")},
         {"L2", HermitianOperator::diagonal(l2, "L2")},
         {"J2", HermitianOperator::diagonal(j2, "J2")},
         {"S2", HermitianOperator::diagonal(s2, "S2")},
         {"Jz", HermitianOperator::diagonal(jz, "Jz")}},
        {{"H", true}, {"L2", true}, {"J2", true}, {"S2", true}, {"Jz", false}},
        {{"n_max", static_cast<double>(n_max)}, {"xi", xi}},
        ContextKind::Context};
    return fixture;
}

ScenarioFixture anomalous_zeeman(const ScenarioFixture& fine, double b) {
    ScenarioFixture fixture = fine;
    fixture.system.label = "anomalous-zeeman";
    fixture.system.hamiltonian = HermitianOperator(
        fine.system.hamiltonian.matrix() + b * fine.observable("Jz").matrix(), "H");
    fixture.parameters["b"] = b;
    if (b != 0.0) {
        fixture.expected_verdicts = {
            {"H", true}, {"L2", true}, {"J2", true}, {"S2", true}, {"Jz", true}};
    }
    return fixture;
}

BornOppenheimerReport born_oppenheimer_scan(const std::vector<double>& masses,
                                            const RealVector& q_grid,
                                            const std::function<double(double)>& potential,
                                            double hbar, double approx_threshold) {
    if (masses.empty()) throw std::invalid_argument("born_oppenheimer_scan: empty mass ladder");
    const Index n = q_grid.size();
    if (n < 4) throw std::invalid_argument("born_oppenheimer_scan: grid too small");
    const double dq = q_grid(1) - q_grid(0);

    Matrix position = Matrix::Zero(n, n);
    for (Index j = 0; j < n; ++j) position(j, j) = q_grid(j);
    // Kinetic-energy stencil up to the 1/2m factor: -hbar^2 d^2/dq^2.
    Matrix kinetic = Matrix::Zero(n, n);
    const double c = hbar * hbar / (dq * dq);
    for (Index j = 0; j < n; ++j) {
        kinetic(j, j) = 2.0 * c;
        if (j + 1 < n) {
            kinetic(j, j + 1) = -c;
            kinetic(j + 1, j) = -c;
        }
    }
    Matrix v = Matrix::Zero(n, n);
    for (Index j = 0; j < n; ++j) v(j, j) = potential(q_grid(j));

    const HermitianOperator q_op(position, "Q");
    const HermitianOperator kinetic_op(kinetic, "P2");

    BornOppenheimerReport report;
    report.approx_threshold = approx_threshold;
    for (double m : masses) {
        if (m <= 0.0) throw std::invalid_argument("born_oppenheimer_scan: mass must be > 0");
        const HermitianOperator h(kinetic / (2.0 * m) + v, "H");
        const PreferredContext ctx = preferred_context(h);
        const DefiniteValueVerdict vq = is_definite_valued(q_op, ctx);
        const DefiniteValueVerdict vk = is_definite_valued(kinetic_op, ctx);
        report.masses.push_back(m);
        report.position_scores.push_back(vq.violation.score);
        report.kinetic_scores.push_back(vk.violation.score);
        report.position_approximately_definite.push_back(vq.violation.score <=
                                                         approx_threshold);
    }
    return report;
}

std::vector<std::pair<std::string, ScenarioFixture>> default_catalog() {
    std::vector<std::pair<std::string, ScenarioFixture>> catalog;
    catalog.emplace_back("free-particle", free_particle(4));
    catalog.emplace_back("spin", spin_system(1.0));
    catalog.emplace_back("spin-field", spin_system_with_field(1.0, 1.0));
    catalog.emplace_back("spin-tower", spin_tower(1.0, {0.5, 1.0}));
    catalog.emplace_back("oscillator", harmonic_oscillator(7, 1.0));
    catalog.emplace_back("hydrogen", hydrogen_like(3, 0.0));
    catalog.emplace_back("hydrogen-noncoulomb", hydrogen_like(3, 0.05));
    catalog.emplace_back("zeeman", zeeman(hydrogen_like(3, 0.05), 1.0));
    catalog.emplace_back("fine-structure", fine_structure(3, 1.0));
    catalog.emplace_back("anomalous-zeeman", anomalous_zeeman(fine_structure(3, 1.0), 0.37));
    return catalog;
}

} // namespace qmodal
