#pragma once

#include <stdexcept>
#include <string>

namespace wez {

struct WezError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// sim-core
struct InvalidScenario : WezError { using WezError::WezError; };
struct ConfigError : WezError { using WezError::WezError; };
struct OutOfDomain : WezError { using WezError::WezError; };

// data / stats
struct EmptyDataset : WezError { using WezError::WezError; };
struct ZeroVariance : WezError { using WezError::WezError; };
struct CsvError : WezError { using WezError::WezError; };

// preprocess / surrogate
struct NonFinite : WezError { using WezError::WezError; };
struct TooFewRows : WezError { using WezError::WezError; };
struct ShapeMismatch : WezError { using WezError::WezError; };
struct Diverged : WezError { using WezError::WezError; };
struct FormatVersionMismatch : WezError { using WezError::WezError; };
struct CorruptFile : WezError { using WezError::WezError; };

}  // namespace wez
