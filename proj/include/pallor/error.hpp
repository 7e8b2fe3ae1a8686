#pragma once

#include <stdexcept>
#include <string>

namespace pallor {

enum class ErrorCode {
  unreadable_file,
  unsupported_format,
  invalid_dimensions,
  image_too_small,
  invalid_scale,
  dimension_mismatch,
  empty_mask,
  empty_region,
  iris_not_found,
  single_class_data,
  degenerate_data,
  schema_mismatch,
  malformed_row,
  duplicate_path,
  missing_file,
  too_few_samples,
  degenerate_fold,
  empty_matrix,
  invalid_spec,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pallor
