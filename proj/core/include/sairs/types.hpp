#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace sairs {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class Errc {
    InvalidArgument,
    DimensionMismatch,
    ReducibleMatrix,
    IterationCapExceeded,
    StepSizeUnderflow,
    StateOutsideRegion,
    R0NotAboveOne,
    NonConvergence,
    PatternMismatch,
    DeltaMismatch,
    PreconditionFailed,
    BoundaryState,
    ConfigError,
    IoError,
};

const char* errc_name(Errc code);

class SairsError : public std::runtime_error {
public:
    SairsError(Errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace sairs
