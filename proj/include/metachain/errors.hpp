#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace metachain {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonPositiveCoefficient : Error {
    using Error::Error;
};
struct NonFinite : Error {
    using Error::Error;
};
struct EvaluationOverflow : Error {
    using Error::Error;
};
struct DivisionByZeroOrder : Error {
    using Error::Error;
};
struct ZeroOrderComparison : Error {
    using Error::Error;
};
struct EmptyRow : Error {
    using Error::Error;
};
struct SingularSystem : Error {
    using Error::Error;
};
struct UnreachableAbsorbingSet : Error {
    using Error::Error;
};
struct NotInCluster : Error {
    using Error::Error;
};
struct ScalingOverflow : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
struct ValidationError : Error {
    using Error::Error;
};
struct InternalError : Error {
    using Error::Error;
};

// Raised when the queried time scale is commensurate with some inverse
// transition rate; carries every offending (rank, cluster) pair.
struct CriticalTimeScale : Error {
    std::vector<std::pair<int, int>> entries;
    CriticalTimeScale(std::string msg, std::vector<std::pair<int, int>> offending)
        : Error(std::move(msg)), entries(std::move(offending)) {}
};

} // namespace metachain
