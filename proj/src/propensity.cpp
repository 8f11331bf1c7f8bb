#include "qmodal/propensity.hpp"

#include "qmodal/operators.hpp"

#include <cmath>
#include <sstream>

namespace qmodal {

namespace {

double clamp_probability(double p, const char* who) {
    if (p < 0.0) {
        if (p < -kProbabilityClampWindow) {
            std::ostringstream msg;
            msg << who << ": probability " << p << " below clamping window";
            throw std::runtime_error(msg.str());
        }
        return 0.0;
    }
    if (p > 1.0) {
        if (p > 1.0 + kProbabilityClampWindow) {
            std::ostringstream msg;
            msg << who << ": probability " << p << " above clamping window";
            throw std::runtime_error(msg.str());
        }
        return 1.0;
    }
    return p;
}

} // namespace

double born_probability(const DensityState& rho, const Matrix& projector) {
    if (projector.rows() != rho.dim() || projector.cols() != rho.dim()) {
        throw std::invalid_argument("born_probability: dimension mismatch");
    }
    const double scale = std::max(1.0, projector.norm());
    if (hermiticity_violation(projector) > kDefaultHermTol * scale ||
        (projector * projector - projector).norm() > kDefaultHermTol * scale) {
        throw std::invalid_argument("born_probability: P is not a projector");
    }
    const double p = (rho.matrix() * projector).trace().real();
    return clamp_probability(p, "born_probability");
}

double event_probability(const DensityState& rho, const HermitianOperator& a, double a_k,
                         double cluster_tol) {
    const SpectralDecomposition spec = spectral_decompose(a, cluster_tol);
    const double window = cluster_tol * std::max(1.0, a.matrix().norm());
    for (std::size_t n = 0; n < spec.size(); ++n) {
        if (std::abs(spec.eigenvalues[n] - a_k) <= window) {
            return born_probability(rho, spec.projectors[n]);
        }
    }
    std::ostringstream msg;
    msg << "event_probability: " << a_k << " is not an eigenvalue of "
        << (a.label().empty() ? "the observable" : a.label());
    throw std::invalid_argument(msg.str());
}

double PropensityTable::total() const {
    double s = 0.0;
    for (double p : atom_measures) s += p;
    return s;
}

PropensityTable propensity_table(const DensityState& rho, const Csop& csop) {
    if (csop.size() == 0 || csop.dim() != rho.dim()) {
        throw std::invalid_argument("propensity_table: invalid CSOP for this state");
    }
    PropensityTable table;
    table.atom_measures.reserve(csop.size());
    for (std::size_t i = 0; i < csop.size(); ++i) {
        table.atom_measures.push_back(born_probability(rho, csop.projector(i)));
    }
    return table;
}

double event_measure(const PropensityTable& table, std::span<const std::size_t> atoms) {
    double s = 0.0;
    for (std::size_t i : atoms) {
        s += table.atom_measures.at(i);
    }
    return s;
}

namespace {

void require_normalized(const PropensityTable& table, const char* who) {
    const double total = table.total();
    if (table.size() == 0 || std::abs(total - 1.0) > 1e-9) {
        std::ostringstream msg;
        msg << who << ": table sums to " << total << ", expected 1";
        throw std::invalid_argument(msg.str());
    }
}

} // namespace

std::size_t sample_atom(const PropensityTable& table, double u01) {
    double cumulative = 0.0;
    std::size_t last_positive = table.size();
    for (std::size_t i = 0; i < table.size(); ++i) {
        const double p = table.atom_measures[i];
        if (p <= 0.0) continue; // zero-measure atoms are never selected
        last_positive = i;
        cumulative += p;
        if (u01 < cumulative) return i;
    }
    // u01 landed in the round-off sliver past the accumulated total.
    if (last_positive == table.size()) {
        throw std::invalid_argument("sample_atom: table has no positive measure");
    }
    return last_positive;
}

ActualizationRecord sample_actualization(const PropensityTable& table, std::uint64_t seed,
                                         std::uint64_t stream, std::uint64_t counter) {
    require_normalized(table, "sample_actualization");
    const CounterRng rng(seed, stream);
    ActualizationRecord record;
    record.chosen_atom = sample_atom(table, rng.uniform(counter));
    record.seed = seed;
    record.stream = stream;
    record.counter = counter;
    return record;
}

FrequencyTable sample_frequencies(const PropensityTable& table, std::uint64_t n_trials,
                                  std::uint64_t seed, std::uint64_t stream) {
    require_normalized(table, "sample_frequencies");
    if (n_trials < 1) throw std::invalid_argument("sample_frequencies: n_trials must be >= 1");
    const CounterRng rng(seed, stream);
    FrequencyTable out;
    out.counts.assign(table.size(), 0);
    out.n_trials = n_trials;
    for (std::uint64_t k = 0; k < n_trials; ++k) {
        ++out.counts[sample_atom(table, rng.uniform(k))];
    }
    out.frequencies.reserve(table.size());
    out.standard_errors.reserve(table.size());
    const double n = static_cast<double>(n_trials);
    for (std::uint64_t c : out.counts) {
        const double f = static_cast<double>(c) / n;
        out.frequencies.push_back(f);
        out.standard_errors.push_back(std::sqrt(f * (1.0 - f) / n));
    }
    return out;
}

FrequencyTable frequency_estimate(const DensityState& rho, const Csop& csop,
                                  std::uint64_t n_trials, std::uint64_t seed,
                                  std::uint64_t stream) {
    return sample_frequencies(propensity_table(rho, csop), n_trials, seed, stream);
}

} // namespace qmodal
