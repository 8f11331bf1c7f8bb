// propensity.hpp - Kolmogorovian probability functions on Boolean contexts,
// propensity tables, and indeterministic actualization sampling.

#pragma once

#include "qmodal/rng.hpp"
#include "qmodal/types.hpp"

#include <cstdint>
#include <span>

namespace qmodal {

// Tr(rho P) for an idempotent Hermitian P.  Round-off excursions outside
// [0,1] up to kProbabilityClampWindow are clamped; larger ones are errors.
double born_probability(const DensityState& rho, const Matrix& projector);

// Probability that observable A takes the value a_k: Tr(rho P_k) with P_k
// the eigenprojector of the cluster containing a_k (degenerate eigenvalues
// sum over the full eigenspace).
double event_probability(const DensityState& rho, const HermitianOperator& a, double a_k,
                         double cluster_tol = kDefaultClusterTol);

// Per-atom Born measures over a CSOP.  The implicit Boolean algebra over
// index subsets is additive by construction.
struct PropensityTable {
    std::vector<double> atom_measures;

    std::size_t size() const { return atom_measures.size(); }
    double total() const;
};

PropensityTable propensity_table(const DensityState& rho, const Csop& csop);

// Measure of a Boolean event given as a set of atom indices.
double event_measure(const PropensityTable& table, std::span<const std::size_t> atoms);

struct ActualizationRecord {
    std::size_t chosen_atom = 0;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    std::uint64_t counter = 0;
};

// Inverse-CDF selection of exactly one atom.  Zero-measure atoms are never
// selected; a measure-one atom always is.  Deterministic given
// (seed, stream, counter).
ActualizationRecord sample_actualization(const PropensityTable& table, std::uint64_t seed,
                                         std::uint64_t stream = 0, std::uint64_t counter = 0);
std::size_t sample_atom(const PropensityTable& table, double u01);

struct FrequencyTable {
    std::vector<std::uint64_t> counts;
    std::vector<double> frequencies;
    std::vector<double> standard_errors;
    std::uint64_t n_trials = 0;
};

// n_trials independent draws aggregated to frequencies; draw k uses counter k
// on (seed, stream), so the result is independent of evaluation order.
FrequencyTable sample_frequencies(const PropensityTable& table, std::uint64_t n_trials,
                                  std::uint64_t seed, std::uint64_t stream = 0);
FrequencyTable frequency_estimate(const DensityState& rho, const Csop& csop,
                                  std::uint64_t n_trials, std::uint64_t seed,
                                  std::uint64_t stream = 0);

} // namespace qmodal
