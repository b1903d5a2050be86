#pragma once

#include <stdexcept>
#include <string>

namespace risbeam {

// Each category maps to its own CLI exit code (see cli.hpp).

struct GeometryError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ChannelError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct OptimizerError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SweepError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MetricsError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ScenarioError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace risbeam
