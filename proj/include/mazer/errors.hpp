#pragma once

#include <stdexcept>
#include <string>

namespace mazer {

/// Input outside an operation's domain (bad parameters, degenerate geometry).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Dressed basis undefined: zero coupling and zero detuning.
class DegenerateInput : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Gamma function evaluated at a non-positive integer.
class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Unitarity defect too large to be a rounding artefact.
class UnitarityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The spatial grid cannot hold the packet (at launch or over the horizon).
class GridError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BoundaryContamination : public GridError {
public:
    using GridError::GridError;
};

/// Asymptotic observables requested before the scattering settled.
class NotConverged : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace mazer
