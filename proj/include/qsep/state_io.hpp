#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "qsep/quantum_state.hpp"

namespace qsep {

/// JSON state schema:
///   {"n_qubits": N, "kind": "pure"|"mixed", "data": [[re, im], ...]}
/// with 2^N pairs for pure states and 4^N row-major pairs for mixed ones.
/// Malformed documents throw Error(Schema) naming the line/column or field;
/// invariant violations keep their own ErrorKind with the field prefixed.
QuantumState state_from_json(std::string_view text, int max_qubits = kDefaultQubitCap);
QuantumState read_state_file(const std::filesystem::path& path, int max_qubits = kDefaultQubitCap);

nlohmann::json state_to_json(const QuantumState& state);
void write_state_file(const std::filesystem::path& path, const QuantumState& state);

}  // namespace qsep
