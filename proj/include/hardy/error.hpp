#pragma once

#include <stdexcept>
#include <string>

namespace hardy {

// Failure classes. Validation errors come from malformed input (exit code 1
// in the CLI); numerical errors from ill-conditioning or unresolved data
// (exit code 2).
enum class ErrorKind {
    Validation,
    InvalidComponent,
    Pole,
    ImageIsLine,
    TooFewSamples,
    Aliasing,
    NotInLIn,
    OutsideDomain,
    PointTooCloseToBoundary,
    IllConditioned,
    RankDeficient,
};

const char* error_kind_name(ErrorKind kind);
bool is_numerical(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace hardy
