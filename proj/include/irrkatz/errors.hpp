#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace irrkatz {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* malformed text, JSON, or lattice input */
struct InvalidInput : Error {
    using Error::Error;
};

struct ParseError : InvalidInput {
    std::size_t position;
    ParseError(const std::string& what, std::size_t pos)
        : InvalidInput(what + " at position " + std::to_string(pos)), position(pos) {}
};

/* outside the unramified, rational-split setting the engine handles */
struct Unsupported : Error {
    using Error::Error;
};
struct RamifiedPoint : Unsupported {
    using Unsupported::Unsupported;
};
struct NonSplitCharPoly : Unsupported {
    using Unsupported::Unsupported;
};
struct IrrationalSingularPoint : Unsupported {
    using Unsupported::Unsupported;
};

struct OshimaCheckFailed : Error {
    using Error::Error;
};

/* operator extraction disagrees with the lattice/exponent prediction */
struct PredictionMismatch : Error {
    using Error::Error;
};

struct AssumptionViolated : Error {
    using Error::Error;
};

} // namespace irrkatz
