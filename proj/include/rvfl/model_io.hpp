#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "rvfl/harness.hpp"

namespace rvfl {

/// Plain-text model record. Every double is written in hexfloat so a
/// save/load round trip is bit-exact. The optional config is echoed as
/// comment lines and ignored on load.
void save_model(std::ostream& out, const TrainedModel& model, const LearnerConfig* config = nullptr);
TrainedModel load_model(std::istream& in);

/// Writes to a sibling temporary file and renames it into place, so a failed
/// save leaves no partial file behind.
void save_model_file(const std::filesystem::path& path, const TrainedModel& model,
                     const LearnerConfig* config = nullptr);
TrainedModel load_model_file(const std::filesystem::path& path);

}  // namespace rvfl
