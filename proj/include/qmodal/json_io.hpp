// json_io.hpp - JSON interchange for matrices, states, system bundles, and
// report types.  Matrix format: {"dim": n, "re": [...], "im": [...]} with
// row-major arrays.

#pragma once

#include "qmodal/actualization.hpp"
#include "qmodal/decoherence.hpp"
#include "qmodal/measurement.hpp"
#include "qmodal/systems.hpp"

#include <json.hpp>

namespace qmodal {

using Json = nlohmann::json;

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json operator_to_json(const HermitianOperator& op);
HermitianOperator operator_from_json(const Json& j, const std::string& fallback_label = "");

Json state_to_json(const DensityState& rho);
DensityState state_from_json(const Json& j);

// System bundle {"label": ..., "dim": ..., "H": matrix}; composite bundles
// add {"dims": [d1, d2], "H_int": matrix}.
Json system_to_json(const QuantumSystem& s);
QuantumSystem system_from_json(const Json& j);
Json composite_to_json(const CompositeSystem& c);
CompositeSystem composite_from_json(const Json& j);

Json spectral_to_json(const SpectralDecomposition& spec);
Json verdict_to_json(const DefiniteValueVerdict& v);
Json context_to_json(const PreferredContext& ctx);
Json table_to_json(const PropensityTable& table);
Json frequency_to_json(const FrequencyTable& freq);
Json reliability_to_json(const ReliabilityReport& report);
Json wigner_to_json(const WignerGrid& grid);

// Round to 12 significant digits; applied to every numeric field the CLI
// emits so that byte-identical reproducibility is checkable.
double round_sig(double x, int digits = 12);
Json round_sig(const Json& j, int digits = 12);

} // namespace qmodal
