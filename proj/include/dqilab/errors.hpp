#ifndef DQILAB_ERRORS_HPP
#define DQILAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dqilab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidModulus : Error {
    using Error::Error;
};
struct ZeroInverse : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct IndexOutOfRange : Error {
    using Error::Error;
};
struct BadDimension : Error {
    using Error::Error;
};
struct DuplicatePoints : Error {
    using Error::Error;
};
struct RaggedTargets : Error {
    using Error::Error;
};
struct TooLarge : Error {
    using Error::Error;
};
struct RankDeficient : Error {
    using Error::Error;
};
struct NoSolution : Error {
    using Error::Error;
};
struct AmbiguousSolution : Error {
    using Error::Error;
};
struct NormalizationFailure : Error {
    using Error::Error;
};
struct DecoderUnavailable : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};

}  // namespace dqilab

#endif
