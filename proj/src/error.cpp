#include "pallor/error.hpp"

namespace pallor {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::unreadable_file: return "UnreadableFile";
    case ErrorCode::unsupported_format: return "UnsupportedFormat";
    case ErrorCode::invalid_dimensions: return "InvalidDimensions";
    case ErrorCode::image_too_small: return "ImageTooSmall";
    case ErrorCode::invalid_scale: return "InvalidScale";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::empty_mask: return "EmptyMask";
    case ErrorCode::empty_region: return "EmptyRegion";
    case ErrorCode::iris_not_found: return "IrisNotFound";
    case ErrorCode::single_class_data: return "SingleClassData";
    case ErrorCode::degenerate_data: return "DegenerateData";
    case ErrorCode::schema_mismatch: return "SchemaMismatch";
    case ErrorCode::malformed_row: return "MalformedRow";
    case ErrorCode::duplicate_path: return "DuplicatePath";
    case ErrorCode::missing_file: return "MissingFile";
    case ErrorCode::too_few_samples: return "TooFewSamples";
    case ErrorCode::degenerate_fold: return "DegenerateFold";
    case ErrorCode::empty_matrix: return "EmptyMatrix";
    case ErrorCode::invalid_spec: return "InvalidSpec";
  }
  return "UnknownError";
}

}  // namespace pallor
