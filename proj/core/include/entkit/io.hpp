#pragma once

#include <string>

#include "entkit/detect.hpp"
#include "entkit/ghz.hpp"
#include "entkit/optimize.hpp"
#include "entkit/statespace.hpp"

namespace entkit {

/// State file format shared across the toolkit:
///   { "dims": [d0, d1, ...], "amps": [[re, im], [re, im], ...] }
/// amps in row-major order (last subsystem index fastest), full double
/// precision. Parsing validates through make_state; ParseError wraps
/// malformed JSON, the usual statespace errors report invariant failures.
AmplitudeTensor state_from_json(const std::string& text);
AmplitudeTensor read_state_file(const std::string& path);
std::string state_to_json(const AmplitudeTensor& state);
void write_state_file(const std::string& path, const AmplitudeTensor& state);

/// Report serialization: per-bipartition entries
/// {"left": [...], "right": [...], "m": float, "factorizable": bool}
/// plus "class" and the product "blocks".
std::string report_to_json(const EntanglementReport& report);

/// Circuit serialization: one entry per subsystem, each a row-major list of
/// [re, im] matrix entries.
std::string circuit_to_json(const LocalUnitaryCircuit& circuit);

/// OptResult serialization: the best state as a state-file object, the
/// per-bipartition M list, and convergence metadata.
std::string opt_result_to_json(const OptResult& result);

}  // namespace entkit
