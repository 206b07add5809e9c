#pragma once

#include <stdexcept>
#include <string>

namespace fdp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// image_io
struct UnreadableFile : Error { using Error::Error; };
struct UnsupportedFormat : Error { using Error::Error; };
struct UnsupportedBitDepth : Error { using Error::Error; };
struct EmptyDataset : Error { using Error::Error; };
struct MixedDimensions : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

// spectral
struct DimensionTooSmall : Error { using Error::Error; };
struct OddDimension : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };
struct NonFiniteInput : Error { using Error::Error; };

// layout
struct CapacityExceeded : Error { using Error::Error; };
struct TargetOutOfRange : Error { using Error::Error; };
struct SpacingViolation : Error { using Error::Error; };

// injector
struct SpecOutOfBounds : Error { using Error::Error; };

// metrics
struct DimensionMismatch : Error { using Error::Error; };
struct TooSmall : Error { using Error::Error; };

// ntk
struct NonPositiveGamma : Error { using Error::Error; };

// pipeline
struct ConfigError : Error { using Error::Error; };
struct PlanInfeasible : Error { using Error::Error; };
struct InvalidStage : Error { using Error::Error; };

}  // namespace fdp
