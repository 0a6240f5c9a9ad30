#pragma once

#include <string>
#include <string_view>

#include "bergman/counterexample.hpp"
#include "bergman/mode_series.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/radial_profile.hpp"

namespace bergman::io {

/// Weight-spec file: {"n": int, "terms": [{"kind": ..., params...}],
/// "breakpoints": [t...]}.  Term windows serialize as optional "t_min" /
/// "t_max".  Round-trips exactly (shortest-exact decimal serialization).
/// The Gaussian oracle primitive is deliberately not part of this vocabulary.
std::string weight_to_json(const RadialWeight& weight);
RadialWeight weight_from_json(std::string_view text);

/// {"weights": [weight...], "limit": weight}
std::string sequence_to_json(const WeightSequence& seq);
WeightSequence sequence_from_json(std::string_view text);

/// {"n": int, "modes": [{"alpha": [..], "coeff": number | {"sign","log"}}]}
std::string series_to_json(const ModeSeries& f);
ModeSeries series_from_json(std::string_view text);

/// {"finite": true, "log_value": .., "sign": .., "log_abs_err": ..} or
/// {"finite": false, "deficit": ..}
std::string verdict_to_json(const quad::QuadVerdict& verdict);

std::string instance_to_json(const counterexample::CounterexampleInstance& inst);
counterexample::CounterexampleInstance instance_from_json(std::string_view text);

/// Parse a weight-sequence file, accepting either the bare sequence schema or
/// a full counterexample instance (its "weights" object is used).
WeightSequence sequence_from_file_text(std::string_view text);

/// Atomic file write: temp file in the same directory, then rename.
void write_file_atomic(const std::string& path, std::string_view contents);
std::string read_file(const std::string& path);

}  // namespace bergman::io
