#include "qmodal/json_io.hpp"

#include <cmath>
#include <cstdio>

namespace qmodal {

Json matrix_to_json(const Matrix& m) {
    Json j;
    j["dim"] = m.rows();
    std::vector<double> re, im;
    re.reserve(static_cast<std::size_t>(m.size()));
    im.reserve(static_cast<std::size_t>(m.size()));
    for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) {
            re.push_back(m(r, c).real());
            im.push_back(m(r, c).imag());
        }
    }
    j["re"] = std::move(re);
    j["im"] = std::move(im);
    return j;
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("re")) {
        throw std::invalid_argument("matrix_from_json: expected {dim, re[, im]}");
    }
    const Index dim = j.at("dim").get<Index>();
    if (dim < 1) throw std::invalid_argument("matrix_from_json: dim must be >= 1");
    const auto re = j.at("re").get<std::vector<double>>();
    std::vector<double> im;
    if (j.contains("im")) im = j.at("im").get<std::vector<double>>();
    else im.assign(re.size(), 0.0);
    if (re.size() != static_cast<std::size_t>(dim * dim) || im.size() != re.size()) {
        throw std::invalid_argument("matrix_from_json: entry count does not match dim");
    }
    Matrix m(dim, dim);
    for (Index r = 0; r < dim; ++r) {
        for (Index c = 0; c < dim; ++c) {
            const std::size_t k = static_cast<std::size_t>(r * dim + c);
            m(r, c) = Complex(re[k], im[k]);
        }
    }
    return m;
}

Json operator_to_json(const HermitianOperator& op) {
    Json j = matrix_to_json(op.matrix());
    if (!op.label().empty()) j["label"] = op.label();
    return j;
}

HermitianOperator operator_from_json(const Json& j, const std::string& fallback_label) {
    std::string label = fallback_label;
    if (j.contains("label")) label = j.at("label").get<std::string>();
    return HermitianOperator(matrix_from_json(j), std::move(label));
}

Json state_to_json(const DensityState& rho) {
    return matrix_to_json(rho.matrix());
}

DensityState state_from_json(const Json& j) {
    return DensityState(matrix_from_json(j));
}

Json system_to_json(const QuantumSystem& s) {
    Json j;
    j["label"] = s.label;
    j["dim"] = s.dim();
    j["H"] = matrix_to_json(s.hamiltonian.matrix());
    return j;
}

QuantumSystem system_from_json(const Json& j) {
    std::string label = j.contains("label") ? j.at("label").get<std::string>() : "system";
    HermitianOperator h = operator_from_json(j.at("H"), "H");
    if (j.contains("dim") && j.at("dim").get<Index>() != h.dim()) {
        throw std::invalid_argument("system_from_json: dim does not match H");
    }
    return QuantumSystem{std::move(label), std::move(h)};
}

Json composite_to_json(const CompositeSystem& c) {
    Json j;
    j["label"] = c.first.label + "+" + c.second.label;
    j["dims"] = {c.first.dim(), c.second.dim()};
    j["H1"] = matrix_to_json(c.first.hamiltonian.matrix());
    j["H2"] = matrix_to_json(c.second.hamiltonian.matrix());
    j["H_int"] = matrix_to_json(c.interaction.matrix());
    j["H"] = matrix_to_json(c.total_hamiltonian.matrix());
    return j;
}

CompositeSystem composite_from_json(const Json& j) {
    QuantumSystem s1{"S1", operator_from_json(j.at("H1"), "H1")};
    QuantumSystem s2{"S2", operator_from_json(j.at("H2"), "H2")};
    if (j.contains("H_int")) {
        return compose(s1, s2, operator_from_json(j.at("H_int"), "H_int"));
    }
    return compose(s1, s2);
}

Json spectral_to_json(const SpectralDecomposition& spec) {
    Json j;
    j["eigenvalues"] = spec.eigenvalues;
    j["multiplicities"] = spec.multiplicities;
    j["reconstruction_residual"] = spec.reconstruction_residual;
    return j;
}

Json verdict_to_json(const DefiniteValueVerdict& v) {
    Json j;
    j["definite"] = v.definite;
    j["induced_values"] = v.induced_values;
    j["violation"] = {{"commutator", v.violation.commutator},
                      {"block_residual", v.violation.block_residual},
                      {"score", v.violation.score}};
    return j;
}

Json context_to_json(const PreferredContext& ctx) {
    Json j;
    j["kind"] = ctx.kind == ContextKind::None ? "none" : "context";
    if (ctx.kind == ContextKind::Context) {
        j["eigenvalues"] = ctx.eigenvalues;
        j["multiplicities"] = ctx.multiplicities;
    }
    return j;
}

Json table_to_json(const PropensityTable& table) {
    return Json(table.atom_measures);
}

Json frequency_to_json(const FrequencyTable& freq) {
    Json j;
    j["counts"] = freq.counts;
    j["frequencies"] = freq.frequencies;
    j["standard_errors"] = freq.standard_errors;
    j["n_trials"] = freq.n_trials;
    return j;
}

Json reliability_to_json(const ReliabilityReport& report) {
    Json j;
    j["ratios"] = report.ratios;
    j["threshold"] = report.threshold;
    j["reliable"] = report.reliable;
    j["recovered"] = report.recovered;
    return j;
}

Json wigner_to_json(const WignerGrid& grid) {
    Json j;
    j["q"] = std::vector<double>(grid.q.data(), grid.q.data() + grid.q.size());
    j["p"] = std::vector<double>(grid.p.data(), grid.p.data() + grid.p.size());
    j["dq"] = grid.dq;
    j["dp"] = grid.dp;
    j["hbar"] = grid.hbar;
    Json rows = Json::array();
    for (Index i = 0; i < grid.w.rows(); ++i) {
        Json row = Json::array();
        for (Index k = 0; k < grid.w.cols(); ++k) row.push_back(grid.w(i, k));
        rows.push_back(std::move(row));
    }
    j["w"] = std::move(rows);
    return j;
}

double round_sig(double x, int digits) {
    if (x == 0.0 || !std::isfinite(x)) return x;
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*g", digits, x);
    return std::strtod(buffer, nullptr);
}

Json round_sig(const Json& j, int digits) {
    if (j.is_number_float()) return round_sig(j.get<double>(), digits);
    if (j.is_object()) {
        Json out = Json::object();
        for (const auto& [key, value] : j.items()) out[key] = round_sig(value, digits);
        return out;
    }
    if (j.is_array()) {
        Json out = Json::array();
        for (const auto& value : j) out.push_back(round_sig(value, digits));
        return out;
    }
    return j;
}

} // namespace qmodal
