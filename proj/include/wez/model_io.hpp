#pragma once

#include <string>

#include "wez/mlp.hpp"

namespace wez {

inline constexpr const char* kModelFormatVersion = "1";

// Versioned JSON with row-major nested weight arrays and the embedded
// scaler, so a loaded model predicts bit-identically to the saved one.
void save_model(const MlpModel& model, const std::string& path);
std::string model_json(const MlpModel& model);

// Throws FormatVersionMismatch on a foreign format_version and CorruptFile
// on anything unparsable, mis-shaped, or non-finite.
MlpModel load_model(const std::string& path);

}  // namespace wez
