// Copyright 2026 The schurkm Authors
// SPDX-License-Identifier: Apache-2.0

#include "schur/io.hpp"

#include <cstdio>
#include <ostream>

#include "schur/error.hpp"

namespace schur {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { fail(Errc::kParse, what); }

int wire_from_json(const Json& v, int wires) {
  if (!v.is_number_integer()) parse_fail("wire indices must be integers");
  const auto w = v.get<long long>();
  if (w < 1 || w > wires) fail(Errc::kOutOfRange, "wire " + std::to_string(w) + " outside 1.." + std::to_string(wires));
  return static_cast<int>(w - 1);
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_fail(std::string("malformed JSON: ") + e.what());
  }
}

Json entries_json(const std::vector<ResolvedEntry>& entries) {
  Json arr = Json::array();
  for (const auto& e : entries) {
    arr.push_back({{"path", e.label.path.to_string()}, {"twice_m", e.label.twice_m()}, {"estimate", e.estimate}});
  }
  return arr;
}

}  // namespace

// ---------------------------------------------------------------------------
// Circuits and permutations

ReversibleCircuit circuit_from_json(const Json& j) {
  if (!j.is_object()) parse_fail("circuit must be a JSON object");
  if (!j.contains("wires") || !j["wires"].is_number_integer()) parse_fail("circuit needs an integer \"wires\"");
  const auto wires = j["wires"].get<long long>();
  if (wires < 1) fail(Errc::kInvalidArgument, "circuit needs at least one wire");
  if (wires > kMaxWires) fail(Errc::kTooLarge, "circuits are limited to 64 wires");
  ReversibleCircuit c(static_cast<int>(wires));
  if (!j.contains("gates")) return c;
  if (!j["gates"].is_array()) parse_fail("\"gates\" must be an array");
  for (const Json& g : j["gates"]) {
    if (!g.is_object() || !g.contains("g") || !g["g"].is_string() || !g.contains("t")) {
      parse_fail("each gate needs \"g\" and \"t\"");
    }
    const auto name = g["g"].get<std::string>();
    Gate gate;
    std::size_t want = 0;
    if (name == "x") {
      gate.kind = GateKind::kX;
    } else if (name == "cx") {
      gate.kind = GateKind::kCnot;
      want = 1;
    } else if (name == "ccx") {
      gate.kind = GateKind::kToffoli;
      want = 2;
    } else {
      parse_fail("unknown gate \"" + name + "\"");
    }
    const Json controls = g.contains("c") ? g["c"] : Json::array();
    if (!controls.is_array() || controls.size() != want) {
      parse_fail("gate \"" + name + "\" needs " + std::to_string(want) + " control(s)");
    }
    for (std::size_t k = 0; k < want; ++k) gate.controls[k] = wire_from_json(controls[k], c.wires());
    gate.target = wire_from_json(g["t"], c.wires());
    c.add(gate);
  }
  return c;
}

ReversibleCircuit parse_circuit(std::string_view text) { return circuit_from_json(parse_json(text)); }

Json circuit_to_json(const ReversibleCircuit& c) {
  Json gates = Json::array();
  for (const Gate& g : c.gates()) {
    static constexpr const char* kNames[] = {"x", "cx", "ccx"};
    Json item = {{"g", kNames[g.num_controls()]}};
    if (g.num_controls() > 0) {
      Json controls = Json::array();
      for (int k = 0; k < g.num_controls(); ++k) controls.push_back(g.controls[static_cast<std::size_t>(k)] + 1);
      item["c"] = controls;
    }
    item["t"] = g.target + 1;
    gates.push_back(item);
  }
  return {{"wires", c.wires()}, {"gates", gates}};
}

PermutationGate parse_permutation(std::string_view text, int n) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos || text[first] != '{') return PermutationGate::parse(text, n);
  const Json j = parse_json(text);
  if (!j.contains("perm") || !j["perm"].is_array()) parse_fail("permutation JSON needs a \"perm\" array");
  std::vector<int> v;
  for (const Json& x : j["perm"]) {
    if (!x.is_number_integer()) parse_fail("permutation entries must be integers");
    v.push_back(x.get<int>());
  }
  if (n > 0 && static_cast<int>(v.size()) != n) fail(Errc::kLengthMismatch, "permutation size differs from n");
  return PermutationGate::from_one_based(v);
}

Json permutation_to_json(const PermutationGate& p) { return {{"perm", p.one_based()}}; }

Json label_to_json(const SchurLabel& label) {
  return {{"path", label.path.to_string()}, {"twice_m", label.twice_m()}};
}

SchurLabel label_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("path") || !j["path"].is_string() || !j.contains("twice_m") ||
      !j["twice_m"].is_number_integer()) {
    parse_fail("label needs a string \"path\" and an integer \"twice_m\"");
  }
  return make_label(validate_path(j["path"].get<std::string>()), j["twice_m"].get<int>());
}

// ---------------------------------------------------------------------------
// Distributions

std::string format_real(double v) {
  char buf[40];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  return {buf, static_cast<std::size_t>(len)};
}

void write_distribution_csv(std::ostream& out, const LabelDistribution& d, bool nonzero_only) {
  out << "path,twice_m,probability\n";
  for (const auto& [label, v] : d.entries) {
    if (nonzero_only && v <= kZeroCutoff) continue;
    out << label.path.to_string() << ',' << label.twice_m() << ',' << format_real(v) << '\n';
  }
}

Json distribution_to_json(const LabelDistribution& d, bool nonzero_only) {
  Json rows = Json::array();
  for (const auto& [label, v] : d.entries) {
    if (nonzero_only && v <= kZeroCutoff) continue;
    rows.push_back({{"path", label.path.to_string()}, {"twice_m", label.twice_m()}, {"probability", v}});
  }
  return {{"n", d.n}, {"total", d.total()}, {"entries", rows}};
}

void write_matrix_csv(std::ostream& out, const PqcMatrix& m) {
  out << "in\\out";
  for (const SpinPath& p : m.paths) out << ',' << p.to_string();
  out << '\n';
  for (std::size_t r = 0; r < m.paths.size(); ++r) {
    out << m.paths[r].to_string();
    for (std::size_t c = 0; c < m.paths.size(); ++c) out << ',' << format_real(m.at(r, c));
    out << '\n';
  }
}

// ---------------------------------------------------------------------------
// Reports

Json heavy_report_to_json(const HeavyList& heavy, const std::vector<ResolvedEntry>& resolved) {
  Json entries = Json::array();
  for (const auto& e : heavy.entries) entries.push_back({{"path", e.path.to_string()}, {"estimate", e.estimate}});
  return {{"theta", heavy.theta},
          {"gamma", heavy.gamma},
          {"per_call_delta", heavy.per_call_delta},
          {"effective_gamma", heavy.effective_gamma},
          {"halted", heavy.halted},
          {"halted_level", heavy.halted_level},
          {"level_widths", heavy.level_widths},
          {"estimate_calls", heavy.estimate_calls},
          {"samples_used", heavy.samples_used},
          {"heavy", entries},
          {"resolved", entries_json(resolved)}};
}

Json estimate_to_json(std::string_view prefix, const EstimationParams& p, const Estimate& e) {
  return {{"prefix", std::string(prefix)},
          {"epsilon", p.epsilon},
          {"delta", p.delta},
          {"estimator", p.estimator == MeanEstimator::kCatoni ? "catoni" : "median-of-means"},
          {"estimate", e.value},
          {"samples_used", e.samples_used}};
}

Json approx_to_json(const ApproxDistribution& d) {
  return {{"n", d.n},
          {"epsilon_prime", d.epsilon_prime},
          {"heavy_mass", d.heavy_mass},
          {"tail_weight", d.tail_weight},
          {"rescaled", d.rescaled},
          {"alpha", d.alpha_fraction()},
          {"tail_sampler", d.tail == TailSampler::kGnw ? "gnw" : "rejection"},
          {"heavy", heavy_report_to_json(d.heavy, {})},
          {"entries", entries_json(d.estimates)}};
}

std::string sample_line(const SchurLabel& label) { return label_to_json(label).dump(); }

Json sparsity_report_to_json(const SparsityReport& r, bool with_distributions) {
  Json rows = Json::array();
  for (const SparsityRow& row : r.rows) {
    const WilsonInterval wa = wilson_interval(row.pass_a, row.instances);
    const WilsonInterval wb = wilson_interval(row.pass_b, row.instances);
    const WilsonInterval wc = wilson_interval(row.pass_c, row.c_applicable);
    rows.push_back({{"n", row.n},
                    {"instances", row.instances},
                    {"criterion_a", {{"passed", row.pass_a}, {"fraction", row.fraction_a()}, {"wilson95", {wa.lo, wa.hi}}}},
                    {"criterion_b", {{"passed", row.pass_b}, {"fraction", row.fraction_b()}, {"wilson95", {wb.lo, wb.hi}}}},
                    {"criterion_c",
                     {{"applicable", row.c_applicable},
                      {"passed", row.pass_c},
                      {"fraction", row.fraction_c()},
                      {"wilson95", {wc.lo, wc.hi}}}}});
  }
  Json out = {{"seed", r.params.seed},
              {"paths_per_n", r.params.paths_per_n},
              {"perms_per_path", r.params.perms_per_path},
              {"c", r.params.c},
              {"d", r.params.d},
              {"rows", rows}};
  if (with_distributions) {
    Json insts = Json::array();
    for (const SparsityInstance& inst : r.instances) {
      insts.push_back({{"input", label_to_json(inst.input)},
                       {"perm", inst.perm.one_based()},
                       {"a", inst.pass_a},
                       {"b", inst.pass_b},
                       {"c", inst.c_applicable ? Json(inst.pass_c) : Json(nullptr)},
                       {"block", inst.block}});
    }
    out["instances"] = insts;
  }
  return out;
}

Json character_demo_to_json(const CharacterDemo& demo, const PermutationGate& perm) {
  return {{"n", demo.n},
          {"twice_j", demo.twice_j},
          {"perm", perm.one_based()},
          {"cycle_type", cycle_type(perm).parts},
          {"trace", demo.trace},
          {"probability", demo.probability}};
}

}  // namespace schur
