#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace helmpert {

/// Curve construction or deformation produced an invalid boundary.
class GeometryError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The boundary integral system is (numerically) singular at this wave number.
class ResonanceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Off-boundary evaluation requested too close to (or inside) the curve.
class EvaluationAccuracyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A density, matrix or trace was combined with data living on another curve.
class CurveMismatchError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class UnsupportedGeometryError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised by the reconstructor when no usable mode pair reaches a Fourier mode.
class UnrecoverableModeError : public std::runtime_error {
public:
  UnrecoverableModeError(const std::string &what, std::vector<int> modes)
      : std::runtime_error(what), dead_modes_(std::move(modes)) {}
  const std::vector<int> &dead_modes() const noexcept { return dead_modes_; }

private:
  std::vector<int> dead_modes_;
};

/// Scenario file could not be parsed or failed validation.
class ScenarioError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace helmpert
