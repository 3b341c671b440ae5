// Copyright 2026 The disent authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DISENT_IO_HPP_
#define DISENT_IO_HPP_

#include <array>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "disent/channels.hpp"
#include "disent/disentangle.hpp"
#include "disent/errors.hpp"
#include "disent/qstate.hpp"
#include "disent/teleport.hpp"
#include "json.hpp"

// Serialization of states, maps, mixtures, and run reports.
//
// Writers are hand-rolled streaming appenders so the byte layout is fully
// owned here: fixed key order, no whitespace, and every double printed with
// 17 significant digits, which round-trips IEEE binary64 exactly. Readers go
// through a JSON parser and re-validate everything against the type
// invariants before any value escapes this layer.
//
// Formats:
//   state    {"n_qubits": k, "matrix": [[[re,im], ...], ...]}   row-major
//   map      {"bloch_matrix": [[..3 rows of 3..]]}
//   mixture  {"w": [w1, w2, w3, w4]}
//   sweep    CSV, header lambda,l,m,n,a14_1,a14_2,a14_3,a15_1,a15_2,a15_3,feasible

namespace disent {
namespace io {

inline std::string format_double17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

namespace detail {

inline void append_bool(std::string& out, bool b) { out += b ? "true" : "false"; }

inline void append_optional(std::string& out, const std::optional<double>& v) {
  if (v.has_value()) {
    out += format_double17(*v);
  } else {
    out += "null";
  }
}

inline void append_triple(std::string& out, const std::array<double, 3>& t) {
  out += '[';
  out += format_double17(t[0]);
  out += ',';
  out += format_double17(t[1]);
  out += ',';
  out += format_double17(t[2]);
  out += ']';
}

}  // namespace detail

inline std::string state_to_json(const DensityMatrix& rho) {
  const ComplexMatrix& m = rho.matrix();
  std::string out = "{\"n_qubits\":";
  out += std::to_string(rho.n_qubits());
  out += ",\"matrix\":[";
  for (int r = 0; r < m.dim(); ++r) {
    if (r > 0) out += ',';
    out += '[';
    for (int c = 0; c < m.dim(); ++c) {
      if (c > 0) out += ',';
      out += '[';
      out += format_double17(m.at(r, c).real());
      out += ',';
      out += format_double17(m.at(r, c).imag());
      out += ']';
    }
    out += ']';
  }
  out += "]}";
  return out;
}

inline DensityMatrix state_from_json(const std::string& text,
                                     StateCheck check = StateCheck::full) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("state JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n_qubits") || !j.contains("matrix")) {
    throw ParseError("state JSON needs keys \"n_qubits\" and \"matrix\"");
  }
  if (!j["n_qubits"].is_number_integer()) {
    throw ParseError("state JSON: \"n_qubits\" must be an integer");
  }
  const int n = j["n_qubits"].get<int>();
  if (n < 1 || n > 4) {
    throw ParseError("state JSON: n_qubits must be in [1, 4], got " +
                     std::to_string(n));
  }
  const int dim = 1 << n;
  const nlohmann::json& rows = j["matrix"];
  if (!rows.is_array() || static_cast<int>(rows.size()) != dim) {
    throw ParseError("state JSON: \"matrix\" must hold " + std::to_string(dim) +
                     " rows");
  }
  ComplexMatrix m(dim);
  for (int r = 0; r < dim; ++r) {
    const nlohmann::json& row = rows[r];
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw ParseError("state JSON: row " + std::to_string(r) + " must hold " +
                       std::to_string(dim) + " entries");
    }
    for (int c = 0; c < dim; ++c) {
      const nlohmann::json& entry = row[c];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
          !entry[1].is_number()) {
        throw ParseError("state JSON: entry (" + std::to_string(r) + "," +
                         std::to_string(c) + ") must be [re, im]");
      }
      m.at(r, c) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return DensityMatrix(m, check);
}

inline std::string map_to_json(const AffineBlochMap& map) {
  std::string out = "{\"bloch_matrix\":[";
  for (int r = 0; r < 3; ++r) {
    if (r > 0) out += ',';
    out += '[';
    for (int c = 0; c < 3; ++c) {
      if (c > 0) out += ',';
      out += format_double17(map.at(r, c));
    }
    out += ']';
  }
  out += "]}";
  return out;
}

inline AffineBlochMap map_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("map JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("bloch_matrix")) {
    throw ParseError("map JSON needs key \"bloch_matrix\"");
  }
  const nlohmann::json& rows = j["bloch_matrix"];
  if (!rows.is_array() || rows.size() != 3) {
    throw ParseError("map JSON: \"bloch_matrix\" must hold 3 rows");
  }
  AffineBlochMap map;
  for (int r = 0; r < 3; ++r) {
    if (!rows[r].is_array() || rows[r].size() != 3) {
      throw ParseError("map JSON: row " + std::to_string(r) +
                       " must hold 3 numbers");
    }
    for (int c = 0; c < 3; ++c) {
      if (!rows[r][c].is_number()) {
        throw ParseError("map JSON: entry (" + std::to_string(r) + "," +
                         std::to_string(c) + ") must be a number");
      }
      map.at(r, c) = rows[r][c].get<double>();
    }
  }
  return map;
}

inline std::string mixture_to_json(const BellMixture& ch) {
  const std::array<double, 4> w = ch.weights();
  std::string out = "{\"w\":[";
  for (int i = 0; i < 4; ++i) {
    if (i > 0) out += ',';
    out += format_double17(w[i]);
  }
  out += "]}";
  return out;
}

inline BellMixture mixture_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("mixture JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("w")) {
    throw ParseError("mixture JSON needs key \"w\"");
  }
  const nlohmann::json& w = j["w"];
  if (!w.is_array() || w.size() != 4) {
    throw ParseError("mixture JSON: \"w\" must hold 4 numbers");
  }
  for (int i = 0; i < 4; ++i) {
    if (!w[i].is_number()) {
      throw ParseError("mixture JSON: w[" + std::to_string(i) +
                       "] must be a number");
    }
  }
  return BellMixture(w[0].get<double>(), w[1].get<double>(), w[2].get<double>(),
                     w[3].get<double>());
}

inline std::string bloch_to_json(const BlochVector& v) {
  std::string out = "{\"x\":";
  out += format_double17(v.x);
  out += ",\"y\":";
  out += format_double17(v.y);
  out += ",\"z\":";
  out += format_double17(v.z);
  out += '}';
  return out;
}

inline std::string lambdas_to_json(const PauliDiagonalMap& m) {
  std::string out = "{\"lambda\":[";
  out += format_double17(m.lambda1);
  out += ',';
  out += format_double17(m.lambda2);
  out += ',';
  out += format_double17(m.lambda3);
  out += "]}";
  return out;
}

// Outcome and correction labels are fixed ASCII identifiers, so trace
// serialization needs no string escaping.
inline std::string traces_to_json(const std::vector<ProtocolTrace>& traces) {
  std::string out = "[";
  for (std::size_t i = 0; i < traces.size(); ++i) {
    if (i > 0) out += ',';
    out += "{\"outcome\":\"";
    out += traces[i].outcome_label;
    out += "\",\"probability\":";
    out += format_double17(traces[i].probability);
    out += ",\"correction\":\"";
    out += traces[i].correction;
    out += "\",\"post_state\":";
    out += state_to_json(traces[i].post_state);
    out += '}';
  }
  out += ']';
  return out;
}

inline std::string teleport_result_to_json(const DensityMatrix& output,
                                           const std::vector<ProtocolTrace>& traces) {
  return "{\"output\":" + state_to_json(output) +
         ",\"traces\":" + traces_to_json(traces) + "}";
}

inline std::string disentanglement_report_to_json(const DisentanglementReport& r) {
  std::string out = "{\"scenario\":\"";
  out += scenario_name(r.scenario);
  out += "\",\"separable\":";
  detail::append_bool(out, r.separable);
  out += ",\"min_pt_eigenvalue\":";
  out += format_double17(r.min_pt_eigenvalue);
  out += ",\"eta1\":";
  detail::append_optional(out, r.eta1);
  out += ",\"eta2\":";
  detail::append_optional(out, r.eta2);
  out += ",\"marginal_fidelity1\":";
  out += format_double17(r.marginal_fidelity1);
  out += ",\"marginal_fidelity2\":";
  out += format_double17(r.marginal_fidelity2);
  out += ",\"map_physical\":";
  detail::append_bool(out, r.map_physical);
  out += ",\"input_state\":";
  out += state_to_json(r.input_state);
  out += ",\"output_state\":";
  out += state_to_json(r.output_state);
  out += '}';
  return out;
}

inline std::string optimization_result_to_json(const OptimizationResult& r) {
  std::string out = "{\"lambda_max\":";
  out += format_double17(r.lambda_max);
  out += ",\"l\":";
  out += format_double17(r.l);
  out += ",\"m\":";
  out += format_double17(r.m);
  out += ",\"n\":";
  out += format_double17(r.n);
  out += ",\"iterations\":";
  out += std::to_string(r.iterations);
  out += ",\"probe_infeasible\":";
  detail::append_bool(out, r.probe_infeasible);
  out += ",\"certificate\":{\"a14\":";
  detail::append_triple(out, r.certificate.physical);
  out += ",\"a15\":";
  detail::append_triple(out, r.certificate.disentangling);
  out += "}}";
  return out;
}

inline std::string theorem_report_to_json(const TheoremReport& r) {
  std::string out = "{\"samples\":";
  out += std::to_string(r.samples);
  out += ",\"boundary_cases\":";
  out += std::to_string(r.boundary_cases);
  out += ",\"mismatches\":";
  out += std::to_string(r.mismatches);
  out += ",\"state_mismatches\":";
  out += std::to_string(r.state_mismatches);
  out += ",\"pass\":";
  detail::append_bool(out, r.pass());
  out += '}';
  return out;
}

inline std::string both_sides_report_to_json(const BothSidesReport& r) {
  std::string out = "{\"pass\":";
  detail::append_bool(out, r.pass);
  out += ",\"checks\":[";
  for (std::size_t i = 0; i < r.checks.size(); ++i) {
    if (i > 0) out += ',';
    out += "{\"epsilon\":";
    out += format_double17(r.checks[i].epsilon);
    out += ",\"physical\":";
    detail::append_bool(out, r.checks[i].physical);
    out += ",\"choi_min_eigenvalue\":";
    out += format_double17(r.checks[i].choi_min_eigenvalue);
    out += ",\"matches_expectation\":";
    detail::append_bool(out, r.checks[i].matches_expectation);
    out += '}';
  }
  out += "]}";
  return out;
}

inline std::string oracle_agreement_to_json(const OracleAgreementReport& r) {
  std::string out = "{\"samples\":";
  out += std::to_string(r.samples);
  out += ",\"a14\":";
  detail::append_triple(out, r.conditions.physical);
  out += ",\"a15\":";
  detail::append_triple(out, r.conditions.disentangling);
  out += ",\"closed_form_physical\":";
  detail::append_bool(out, r.closed_form_physical);
  out += ",\"oracle_physical\":";
  detail::append_bool(out, r.oracle_physical);
  out += ",\"closed_form_disentangling\":";
  detail::append_bool(out, r.closed_form_disentangling);
  out += ",\"oracle_disentangling\":";
  detail::append_bool(out, r.oracle_disentangling);
  out += ",\"physical_margin\":";
  out += format_double17(r.physical_margin);
  out += ",\"disentangling_margin\":";
  out += format_double17(r.disentangling_margin);
  out += ",\"physical_disagreement_a\":";
  detail::append_optional(out, r.physical_disagreement_a);
  out += ",\"disentangling_disagreement_a\":";
  detail::append_optional(out, r.disentangling_disagreement_a);
  out += ",\"agrees\":";
  detail::append_bool(out, r.agrees());
  out += '}';
  return out;
}

inline std::string sweep_to_csv(const std::vector<OptimizerProbe>& rows) {
  std::string out =
      "lambda,l,m,n,a14_1,a14_2,a14_3,a15_1,a15_2,a15_3,feasible\n";
  for (const OptimizerProbe& row : rows) {
    out += format_double17(row.lambda);
    out += ',';
    out += format_double17(row.l);
    out += ',';
    out += format_double17(row.m);
    out += ',';
    out += format_double17(row.n);
    for (double v : row.a14) {
      out += ',';
      out += format_double17(v);
    }
    for (double v : row.a15) {
      out += ',';
      out += format_double17(v);
    }
    out += ',';
    out += row.feasible ? '1' : '0';
    out += '\n';
  }
  return out;
}

// One line of the reproduction summary; check names and value strings are
// generated internally and never contain commas.
struct ReproduceRow {
  std::string check;
  std::string expected;
  std::string observed;
  bool pass = false;
};

inline std::string reproduce_to_csv(const std::vector<ReproduceRow>& rows) {
  std::string out = "check,expected,observed,pass\n";
  for (const ReproduceRow& row : rows) {
    out += row.check;
    out += ',';
    out += row.expected;
    out += ',';
    out += row.observed;
    out += ',';
    out += row.pass ? '1' : '0';
    out += '\n';
  }
  return out;
}

inline std::string reproduce_to_json(const std::vector<ReproduceRow>& rows) {
  std::string out = "{\"checks\":[";
  bool all = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0) out += ',';
    out += "{\"check\":\"";
    out += rows[i].check;
    out += "\",\"expected\":\"";
    out += rows[i].expected;
    out += "\",\"observed\":\"";
    out += rows[i].observed;
    out += "\",\"pass\":";
    detail::append_bool(out, rows[i].pass);
    out += '}';
    all = all && rows[i].pass;
  }
  out += "],\"pass\":";
  detail::append_bool(out, all);
  out += '}';
  return out;
}

inline std::string reproduce_to_pretty(const std::vector<ReproduceRow>& rows) {
  std::size_t w_check = 5, w_expected = 8, w_observed = 8;
  for (const ReproduceRow& row : rows) {
    w_check = std::max(w_check, row.check.size());
    w_expected = std::max(w_expected, row.expected.size());
    w_observed = std::max(w_observed, row.observed.size());
  }
  auto pad = [](const std::string& s, std::size_t width) {
    return s + std::string(width - s.size(), ' ');
  };
  std::string out = pad("check", w_check) + "  " + pad("expected", w_expected) +
                    "  " + pad("observed", w_observed) + "  result\n";
  int passed = 0;
  for (const ReproduceRow& row : rows) {
    out += pad(row.check, w_check) + "  " + pad(row.expected, w_expected) +
           "  " + pad(row.observed, w_observed) + "  " +
           (row.pass ? "PASS" : "FAIL") + "\n";
    if (row.pass) ++passed;
  }
  out += std::to_string(passed) + "/" + std::to_string(rows.size()) +
         " checks passed\n";
  return out;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw FileError("read failed: " + path);
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("cannot open for writing: " + path);
  out << content;
  out.flush();
  if (!out) throw FileError("write failed: " + path);
}

}  // namespace io
}  // namespace disent

#endif  // DISENT_IO_HPP_
