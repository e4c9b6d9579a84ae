#pragma once

#include <stdexcept>
#include <string>

namespace nanosyn {

/// Vector or matrix shapes that do not line up.
struct dimension_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Parameter sets that violate their documented invariants.
struct parameter_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Rejection sampling gave up; the dispersion is too wide for valid devices.
struct sampling_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Unregularized least squares on a rank-deficient activation matrix.
struct singular_system_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Experiment configuration problems (unknown keys, bad values).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class data_error_kind {
    io,
    bad_magic,
    truncated,
    dimension_mismatch,
    version_mismatch,
    range_violation,
    mode_mismatch,
};

const char* to_string(data_error_kind kind);

/// Dataset ingestion failures; `kind()` distinguishes the cause.
class data_error : public std::runtime_error {
public:
    data_error(data_error_kind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    data_error_kind kind() const noexcept { return kind_; }

private:
    data_error_kind kind_;
};

}  // namespace nanosyn
