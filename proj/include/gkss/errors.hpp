#pragma once

#include <stdexcept>
#include <string>

namespace gkss {

/// Base for every failure raised by a spectrum: bad parameters, out-of-range
/// table lookups, non-positive eigenvalues entering a factorial.
class SpectrumError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A non-positive eigenvalue where a Jackson factorial needs a logarithm.
class InvalidSpectrum : public SpectrumError {
public:
    using SpectrumError::SpectrumError;
};

/// A vanishing or infinite eigenvalue (zero nonlinearity, Laguerre pole,
/// zero denominator in the dual sequence).
class SingularSpectrum : public SpectrumError {
public:
    using SpectrumError::SpectrumError;
};

/// Malformed user configuration (CLI flags, JSON documents, sweep ranges).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace gkss
