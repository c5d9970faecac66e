#pragma once

#include <stdexcept>
#include <string>

namespace revlab {

// Base for all typed errors; the CLI maps each type to a distinct exit code.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A required derivative of F vanishes at the energy point, the associated
// period does not exist and must not be used.
struct PeriodUndefined : Error {
    using Error::Error;
};

// The clipped coefficient window of a wave packet is empty.
struct WindowDegenerate : Error {
    using Error::Error;
};

// Requested quantity needs an analytic Fourier transform that the envelope
// does not provide.
struct NotAvailable : Error {
    using Error::Error;
};

// No rational pair within max_den / tol makes the revival periods resonant.
struct NoResonance : Error {
    using Error::Error;
};

struct NotCoprime : Error {
    using Error::Error;
};

struct ShapeMismatch : Error {
    using Error::Error;
};

// The factorized-moduli statement requires p12/q12 to be an integer.
struct HypothesisNotMet : Error {
    using Error::Error;
};

struct EtaTooLarge : Error {
    using Error::Error;
};

struct InsufficientData : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct ValidationError : Error {
    using Error::Error;
};

}  // namespace revlab
