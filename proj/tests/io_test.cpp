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

#include "disent/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

#include "disent/channels.hpp"
#include "disent/disentangle.hpp"
#include "disent/qstate.hpp"
#include "gtest/gtest.h"
#include "json.hpp"

namespace disent {
namespace {

TEST(FormatDouble, SeventeenDigitsRoundTripBinary64) {
  for (double v : {0.1, 1.0 / 3, 2.0 / 3, 1e-17, 123456.789, -0.28,
                   0.70710678118654752, 1.0, 0.0}) {
    const std::string s = io::format_double17(v);
    EXPECT_EQ(std::strtod(s.c_str(), nullptr), v) << s;
  }
  EXPECT_EQ(io::format_double17(0.5), "0.5");
  EXPECT_EQ(io::format_double17(1.0), "1");
  EXPECT_EQ(io::format_double17(1.0 / 3), "0.33333333333333331");
}

TEST(StateJson, WriterEmitsTheDocumentedLayout) {
  const std::string text = io::state_to_json(DensityMatrix::maximally_mixed(1));
  EXPECT_EQ(text,
            "{\"n_qubits\":1,\"matrix\":[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]}");
}

TEST(StateJson, RoundTripIsBitExact) {
  Rng rng(801);
  for (int n : {1, 2, 3}) {
    const DensityMatrix rho = random_mixed_state(rng, n);
    const DensityMatrix back = io::state_from_json(io::state_to_json(rho));
    EXPECT_EQ(back.matrix().max_abs_diff(rho.matrix()), 0.0);
    EXPECT_EQ(back.n_qubits(), n);
  }
}

TEST(StateJson, RejectsMalformedDocuments) {
  EXPECT_THROW(io::state_from_json("not json"), ParseError);
  EXPECT_THROW(io::state_from_json("[1,2]"), ParseError);
  EXPECT_THROW(io::state_from_json("{\"n_qubits\":1}"), ParseError);
  EXPECT_THROW(io::state_from_json("{\"n_qubits\":2.5,\"matrix\":[]}"),
               ParseError);
  EXPECT_THROW(io::state_from_json("{\"n_qubits\":5,\"matrix\":[]}"),
               ParseError);
  EXPECT_THROW(io::state_from_json("{\"n_qubits\":1,\"matrix\":[[[1,0]]]}"),
               ParseError);
  EXPECT_THROW(
      io::state_from_json(
          "{\"n_qubits\":1,\"matrix\":[[[1,0],[0,0]],[[0,0],\"x\"]]}"),
      ParseError);
}

TEST(StateJson, RevalidatesTheStateInvariants) {
  // Well-formed JSON, but the matrix is not Hermitian.
  EXPECT_THROW(
      io::state_from_json(
          "{\"n_qubits\":1,\"matrix\":[[[0.5,0],[1,0]],[[0,0],[0.5,0]]]}"),
      NotHermitian);
  // Hermitian and unit-trace, but with a negative eigenvalue.
  const std::string indefinite =
      "{\"n_qubits\":1,\"matrix\":[[[1.5,0],[0,0]],[[0,0],[-0.5,0]]]}";
  EXPECT_THROW(io::state_from_json(indefinite), InvariantViolation);
  // The structural check admits it (used for intermediate artifacts).
  EXPECT_NO_THROW(io::state_from_json(indefinite, StateCheck::structural));
}

TEST(MapJson, RoundTripIsBitExact) {
  const AffineBlochMap map = general_map_lmn(0.37, -0.21, 0.55, 0.13);
  const AffineBlochMap back = io::map_from_json(io::map_to_json(map));
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) EXPECT_EQ(back.at(r, c), map.at(r, c));
  }
}

TEST(MapJson, RejectsMalformedDocuments) {
  EXPECT_THROW(io::map_from_json("{}"), ParseError);
  EXPECT_THROW(io::map_from_json("{\"bloch_matrix\":[[1,0,0],[0,1,0]]}"),
               ParseError);
  EXPECT_THROW(
      io::map_from_json("{\"bloch_matrix\":[[1,0],[0,1,0],[0,0,1]]}"),
      ParseError);
  EXPECT_THROW(
      io::map_from_json(
          "{\"bloch_matrix\":[[1,0,0],[0,\"q\",0],[0,0,1]]}"),
      ParseError);
}

TEST(MixtureJson, RoundTripAndValidation) {
  const BellMixture ch(0.5, 1.0 / 6, 1.0 / 6, 1.0 / 6);
  // The constructor renormalizes, so a round trip may drift by one ulp.
  const BellMixture back = io::mixture_from_json(io::mixture_to_json(ch));
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(back.weights()[i], ch.weights()[i], 1e-15);
  }
  EXPECT_THROW(io::mixture_from_json("{\"w\":[0.5,0.5,0.5]}"), ParseError);
  EXPECT_THROW(io::mixture_from_json("{\"w\":[0.5,0.5,0.5,0.5]}"),
               InvariantViolation);
}

TEST(SmallWriters, FrozenStrings) {
  EXPECT_EQ(io::bloch_to_json({1.0, 0.0, -0.5}),
            "{\"x\":1,\"y\":0,\"z\":-0.5}");
  EXPECT_EQ(io::lambdas_to_json(PauliDiagonalMap(1.0 / 3, 1.0 / 3, 1.0 / 3)),
            "{\"lambda\":[0.33333333333333331,0.33333333333333331,"
            "0.33333333333333331]}");
}

TEST(ReportJson, TeleportResultParsesBack) {
  const TeleportResult r = bell_protocol_output(
      bloch_to_density({0.3, 0.4, 0.5}), BellMixture(1, 0, 0, 0));
  const nlohmann::json j =
      nlohmann::json::parse(io::teleport_result_to_json(r.output, r.traces));
  ASSERT_EQ(j["traces"].size(), 4u);
  EXPECT_EQ(j["traces"][0]["outcome"], "psi+");
  EXPECT_EQ(j["traces"][0]["correction"], "I");
  EXPECT_EQ(j["traces"][0]["probability"].get<double>(), r.traces[0].probability);
  EXPECT_EQ(j["output"]["n_qubits"], 1);
}

TEST(ReportJson, DisentanglementReportCarriesOptionalEtas) {
  const DensityMatrix phi(bell_projector(Bell::phi_plus));
  const DisentanglementReport r = run_scenario(Scenario::universal, phi);
  const nlohmann::json j =
      nlohmann::json::parse(io::disentanglement_report_to_json(r));
  EXPECT_EQ(j["scenario"], "universal");
  EXPECT_TRUE(j["separable"].get<bool>());
  EXPECT_TRUE(j["eta1"].is_null());
  EXPECT_TRUE(j["eta2"].is_null());
  EXPECT_TRUE(j["map_physical"].get<bool>());

  const double a = 0.9, b = std::sqrt(1.0 - 0.81);
  const DisentanglementReport r2 =
      run_scenario(Scenario::equatorial, DensityMatrix::pure({a, 0, 0, b}));
  const nlohmann::json j2 =
      nlohmann::json::parse(io::disentanglement_report_to_json(r2));
  EXPECT_NEAR(j2["eta2"].get<double>(), 0.5, 1e-12);
}

TEST(ReportJson, OptimizationTheoremBothSidesAndOracle) {
  const OptimizationResult opt = optimize_equatorial(0.1, 1e-3);
  const nlohmann::json jo =
      nlohmann::json::parse(io::optimization_result_to_json(opt));
  EXPECT_NEAR(jo["lambda_max"].get<double>(), 0.5, 1e-2);
  ASSERT_EQ(jo["certificate"]["a14"].size(), 3u);
  ASSERT_EQ(jo["certificate"]["a15"].size(), 3u);

  const nlohmann::json jt =
      nlohmann::json::parse(io::theorem_report_to_json(verify_theorem(50, 42)));
  EXPECT_EQ(jt["samples"], 50);
  EXPECT_TRUE(jt["pass"].get<bool>());

  const nlohmann::json jb = nlohmann::json::parse(
      io::both_sides_report_to_json(check_both_sides_claim({0.0, 0.01})));
  EXPECT_TRUE(jb["pass"].get<bool>());
  ASSERT_EQ(jb["checks"].size(), 2u);
  EXPECT_FALSE(jb["checks"][1]["physical"].get<bool>());

  const nlohmann::json ja = nlohmann::json::parse(
      io::oracle_agreement_to_json(conditions_vs_oracle(0.5, 0, 0, 0, 10, 1)));
  EXPECT_TRUE(ja["agrees"].get<bool>());
  EXPECT_TRUE(ja["physical_disagreement_a"].is_null());
}

TEST(SweepCsv, HeaderAndRowShape) {
  std::vector<OptimizerProbe> sweep;
  optimize_equatorial(0.1, 1e-3, ConstraintSet::both, &sweep);
  const std::string csv = io::sweep_to_csv(sweep);
  const std::string header = csv.substr(0, csv.find('\n'));
  EXPECT_EQ(header,
            "lambda,l,m,n,a14_1,a14_2,a14_3,a15_1,a15_2,a15_3,feasible");
  int lines = 0;
  for (char c : csv) lines += c == '\n';
  EXPECT_EQ(lines, static_cast<int>(sweep.size()) + 1);
  const std::string first_row =
      csv.substr(header.size() + 1,
                 csv.find('\n', header.size() + 1) - header.size() - 1);
  int commas = 0;
  for (char c : first_row) commas += c == ',';
  EXPECT_EQ(commas, 10);
  EXPECT_TRUE(first_row.back() == '0' || first_row.back() == '1');
}

TEST(ReproduceTable, AllThreeFormats) {
  const std::vector<io::ReproduceRow> rows = {
      {"werner_shrink", "0.333", "0.333", true},
      {"lambda_max", "0.5", "0.7", false},
  };
  EXPECT_EQ(io::reproduce_to_csv(rows),
            "check,expected,observed,pass\n"
            "werner_shrink,0.333,0.333,1\n"
            "lambda_max,0.5,0.7,0\n");
  const nlohmann::json j = nlohmann::json::parse(io::reproduce_to_json(rows));
  EXPECT_FALSE(j["pass"].get<bool>());
  EXPECT_EQ(j["checks"][0]["check"], "werner_shrink");
  const std::string pretty = io::reproduce_to_pretty(rows);
  EXPECT_NE(pretty.find("PASS"), std::string::npos);
  EXPECT_NE(pretty.find("FAIL"), std::string::npos);
  EXPECT_NE(pretty.find("1/2 checks passed"), std::string::npos);
}

TEST(TextFiles, RoundTripAndErrors) {
  const std::string path = "io_test_scratch.json";
  const std::string payload = io::state_to_json(DensityMatrix::maximally_mixed(2));
  io::write_text_file(path, payload);
  EXPECT_EQ(io::read_text_file(path), payload);
  std::remove(path.c_str());
  EXPECT_THROW(io::read_text_file("no/such/file.json"), FileError);
  EXPECT_THROW(io::write_text_file("no/such/dir/file.json", "x"), FileError);
}

}  // namespace
}  // namespace disent
