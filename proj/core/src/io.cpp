#include "entkit/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace entkit {

namespace {

using nlohmann::json;

json complex_pair(Complex z) { return json::array({z.real(), z.imag()}); }

json bipartition_json(const Bipartition& bp) {
  return json{{"left", bp.left}, {"right", bp.right}};
}

}  // namespace

AmplitudeTensor state_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  if (!doc.is_object() || !doc.contains("dims") || !doc.contains("amps")) {
    throw ParseError("state object needs 'dims' and 'amps' fields");
  }
  std::vector<int> dims;
  Eigen::VectorXcd amps;
  try {
    dims = doc["dims"].get<std::vector<int>>();
    const auto& arr = doc["amps"];
    if (!arr.is_array()) throw ParseError("'amps' must be an array");
    amps.resize(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto& entry = arr[i];
      if (!entry.is_array() || entry.size() != 2) {
        throw ParseError("amps entries must be [re, im] pairs");
      }
      amps[static_cast<Eigen::Index>(i)] =
          Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
  return make_state(std::move(dims), std::move(amps));
}

AmplitudeTensor read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return state_from_json(buffer.str());
}

std::string state_to_json(const AmplitudeTensor& state) {
  json doc;
  doc["dims"] = state.dims;
  json amps = json::array();
  for (Eigen::Index i = 0; i < state.total_dim(); ++i) {
    amps.push_back(complex_pair(state.amps[i]));
  }
  doc["amps"] = std::move(amps);
  return doc.dump(2) + "\n";
}

void write_state_file(const std::string& path, const AmplitudeTensor& state) {
  std::ofstream out(path);
  if (!out) {
    throw ParseError("cannot write '" + path + "'");
  }
  out << state_to_json(state);
}

std::string report_to_json(const EntanglementReport& report) {
  json doc;
  json entries = json::array();
  for (const BipartitionVerdict& v : report.per_bipartition) {
    json e = bipartition_json(v.bipartition);
    e["m"] = v.m_value;
    e["factorizable"] = v.factorizable;
    entries.push_back(std::move(e));
  }
  doc["per_bipartition"] = std::move(entries);
  doc["class"] = to_string(report.separability_class);
  doc["blocks"] = report.blocks;
  return doc.dump(2) + "\n";
}

std::string circuit_to_json(const LocalUnitaryCircuit& circuit) {
  json doc = json::array();
  for (const Eigen::MatrixXcd& u : circuit.unitaries) {
    json m = json::array();
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
      for (Eigen::Index c = 0; c < u.cols(); ++c) {
        m.push_back(complex_pair(u(r, c)));
      }
    }
    doc.push_back(std::move(m));
  }
  return doc.dump(2) + "\n";
}

std::string opt_result_to_json(const OptResult& result) {
  json doc;
  doc["state"] = json::parse(state_to_json(result.best_state));
  json entries = json::array();
  for (const BipartitionValue& v : result.per_bipartition_m) {
    json e = bipartition_json(v.bipartition);
    e["m"] = v.m_value;
    entries.push_back(std::move(e));
  }
  doc["per_bipartition_m"] = std::move(entries);
  doc["best_min_m"] = result.best_min_m;
  doc["iterations_used"] = result.iterations_used;
  doc["converged"] = result.converged;
  doc["restart_index"] = result.restart_index;
  doc["converged_restarts"] = result.converged_restarts;
  return doc.dump(2) + "\n";
}

}  // namespace entkit
