#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>

#include "qae/autoencoder.hpp"
#include "qae/circuits.hpp"
#include "qae/optimize.hpp"
#include "qae/state.hpp"

namespace qae {

// JSON schemas are stable and round-trip exactly: doubles are emitted with
// shortest round-trip precision and term/field order is deterministic.

nlohmann::json to_json(const StateVector& psi);
StateVector state_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const nlohmann::json& j);

nlohmann::json to_json(const TrainingEnsemble& ens);
TrainingEnsemble ensemble_from_json(const nlohmann::json& j);

// {kind: "a"|"b"|"exponential", n_qubits, cells, generators?}
nlohmann::json template_descriptor(const CircuitTemplate& tpl);
CircuitTemplate template_from_descriptor(const nlohmann::json& j);

nlohmann::json to_json(const OptResult& result, bool include_trace);

nlohmann::json read_json_file(const std::filesystem::path& file);
void write_json_file(const std::filesystem::path& file,
                     const nlohmann::json& j);

}  // namespace qae
