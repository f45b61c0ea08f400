#pragma once

#include <stdexcept>
#include <string>

namespace bumplab {

/// Base class for all library errors.
class error : public std::runtime_error {
  public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Resource guard tripped (tree too deep, kernel matrix too large, ...).
class capacity_error : public error {
  public:
    explicit capacity_error(const std::string& what) : error(what) {}
};

/// A point or cube lies outside the structure that was asked about it.
class domain_error : public error {
  public:
    explicit domain_error(const std::string& what) : error(what) {}
};

/// An argument violates a precondition (exponent range, list shape, ...).
class parameter_error : public error {
  public:
    explicit parameter_error(const std::string& what) : error(what) {}
};

/// Weighted average requested against a zero-mass cube.
class zero_mass_error : public error {
  public:
    explicit zero_mass_error(const std::string& what) : error(what) {}
};

/// Input is degenerate for the requested construction (e.g. f == 0).
class degenerate_input_error : public error {
  public:
    explicit degenerate_input_error(const std::string& what) : error(what) {}
};

/// Objects from different grids / different source functions were mixed.
class mismatch_error : public error {
  public:
    explicit mismatch_error(const std::string& what) : error(what) {}
};

/// Experiment configuration is malformed.
class config_error : public error {
  public:
    explicit config_error(const std::string& what) : error(what) {}
};

} // namespace bumplab
