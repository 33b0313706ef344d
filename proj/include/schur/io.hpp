// Copyright 2026 The schurkm Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file io.hpp
 * @brief JSON and CSV wire formats.
 *
 * Wires and permutation entries are 1-based in every format. Circuit file:
 *   {"wires":5,"gates":[{"g":"ccx","c":[1,2],"t":3},{"g":"cx","c":[4],"t":5},{"g":"x","t":1}]}
 * Permutation: {"perm":[2,3,1,5,4]} or cycle / one-line text.
 * Distribution CSV: header "path,twice_m,probability", 17 significant digits.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "schur/circuits.hpp"
#include "schur/estimation.hpp"
#include "schur/experiments.hpp"
#include "schur/heavy_hitters.hpp"
#include "schur/schur_states.hpp"
#include "schur/sparse_sampler.hpp"

namespace schur {

using Json = nlohmann::ordered_json;

/// All parsers throw Parse on malformed input and the domain errors of the
/// underlying constructors otherwise.
ReversibleCircuit circuit_from_json(const Json& j);
ReversibleCircuit parse_circuit(std::string_view text);
Json circuit_to_json(const ReversibleCircuit& c);

/// JSON {"perm":[...]} (1-based) or anything PermutationGate::parse takes.
PermutationGate parse_permutation(std::string_view text, int n);
Json permutation_to_json(const PermutationGate& p);

Json label_to_json(const SchurLabel& label);
SchurLabel label_from_json(const Json& j);

/// printf %.17g: round-trips every double.
std::string format_real(double v);

/// Probabilities at or below this are rounding residue of the dense
/// transform and count as zero for `nonzero_only` output.
inline constexpr double kZeroCutoff = 1e-20;

/// One row per entry; `nonzero_only` drops entries <= kZeroCutoff.
void write_distribution_csv(std::ostream& out, const LabelDistribution& d, bool nonzero_only);
Json distribution_to_json(const LabelDistribution& d, bool nonzero_only);
/// Rows: input path; columns: output path. First row and column carry paths.
void write_matrix_csv(std::ostream& out, const PqcMatrix& m);

Json heavy_report_to_json(const HeavyList& heavy, const std::vector<ResolvedEntry>& resolved);
Json estimate_to_json(std::string_view prefix, const EstimationParams& p, const Estimate& e);
Json approx_to_json(const ApproxDistribution& d);
/// {"path":"...","twice_m":k}
std::string sample_line(const SchurLabel& label);
Json sparsity_report_to_json(const SparsityReport& r, bool with_distributions);
Json character_demo_to_json(const CharacterDemo& demo, const PermutationGate& perm);

}  // namespace schur
