#pragma once

#include <optional>
#include <string>

#include "evonf/dataset.hpp"
#include "evonf/local_search.hpp"
#include "evonf/model.hpp"

namespace evonf {

/// Bumped on any incompatible change to the JSON document layout.
inline constexpr int kModelFormatVersion = 1;

/// Everything needed to reuse a trained system later: the model itself, the
/// learning hyperparameters it was tuned with, and the input/target scaling
/// captured on its training data.
struct ModelBundle {
    TSKModel model;
    LearnParams learn{};
    std::optional<ScalingRecord> scaling;
};

/// Versioned JSON document. Numbers survive a round trip bit for bit.
std::string bundle_to_json(const ModelBundle& bundle);

/// Parses and validates a document produced by bundle_to_json. Malformed
/// JSON, unknown versions, and invariant violations all raise FormatError.
ModelBundle bundle_from_json(const std::string& text);

/// Human-readable rule list, one rule per line:
///   IF x1 IS mf1 AND x2 IS (mf1 OR mf2) THEN y = 0.5 + 0.25*x1 - 1*x2 ; active=1
/// Don't-care variables are omitted; labels are named mf1..mfk per input.
std::string rulebase_to_text(const TSKModel& model);

} // namespace evonf
