#pragma once

#include "hawkes/model.hpp"

#include "json.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hawkes::io {

/// Sequence documents: {"T": real, "events": [ascending reals]} given as a
/// single object, a JSON array of objects, or one object per line.
/// Throws HawkesError(parse_error) naming the offending field or record.
[[nodiscard]] std::vector<EventSequence> parse_sequences(std::string_view text);
[[nodiscard]] nlohmann::json sequence_to_json(const EventSequence& seq);
/// Always written as a JSON array.
[[nodiscard]] std::string dump_sequences(std::span<const EventSequence> sequences);

/// {"mu": real, "family": "EXP|PWL|RAY|GSS|QEXP", "params": {name: real}}
[[nodiscard]] HawkesModel model_from_json(const nlohmann::json& doc);
[[nodiscard]] nlohmann::json model_to_json(const HawkesModel& model);

[[nodiscard]] std::string read_text(const std::filesystem::path& path);
/// Writes to a sibling temporary file and renames it over `path`.
void write_text_atomic(const std::filesystem::path& path, std::string_view content);

} // namespace hawkes::io
