#ifndef RECSPEC_ERRORS_HPP
#define RECSPEC_ERRORS_HPP

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace recspec {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: bad index, empty input, inconsistent sizes.
class ArgumentError : public Error
{
public:
  using Error::Error;
};

/// A transition matrix failed validation. `row` names the offending row.
class ValidationError : public ArgumentError
{
public:
  ValidationError(const std::string& what, std::size_t row)
    : ArgumentError(what), row_(row)
  {}

  std::size_t row() const noexcept { return row_; }

private:
  std::size_t row_;
};

/// A graph could not be turned into a Markov matrix.
class ConstructionError : public ArgumentError
{
public:
  ConstructionError(const std::string& what, std::optional<std::size_t> vertex = std::nullopt)
    : ArgumentError(what), vertex_(vertex)
  {}

  std::optional<std::size_t> vertex() const noexcept { return vertex_; }

private:
  std::optional<std::size_t> vertex_;
};

enum class Hypothesis
{
  zero_node,
  ill_conditioned,
  zero_root,
  repeated_root,
  reducible,
  periodic,
  zero_eigenvalue,
  repeated_eigenvalue,
  dominant_not_one,
};

inline const char* to_string(Hypothesis h)
{
  switch (h) {
    case Hypothesis::zero_node: return "zero_node";
    case Hypothesis::ill_conditioned: return "ill_conditioned";
    case Hypothesis::zero_root: return "zero_root";
    case Hypothesis::repeated_root: return "repeated_root";
    case Hypothesis::reducible: return "reducible";
    case Hypothesis::periodic: return "periodic";
    case Hypothesis::zero_eigenvalue: return "zero_eigenvalue";
    case Hypothesis::repeated_eigenvalue: return "repeated_eigenvalue";
    case Hypothesis::dominant_not_one: return "dominant_not_one";
  }
  return "unknown";
}

/// The input is well formed but violates a precondition of the closed-form
/// machinery (distinct non-zero nodes, irreducible aperiodic chain, ...).
/// `value` carries the offending measurement when there is one, e.g. the
/// minimum node separation.
class HypothesisError : public Error
{
public:
  HypothesisError(Hypothesis kind, const std::string& what, std::optional<double> value = std::nullopt)
    : Error(what), kind_(kind), value_(value)
  {}

  Hypothesis kind() const noexcept { return kind_; }
  std::optional<double> value() const noexcept { return value_; }

private:
  Hypothesis kind_;
  std::optional<double> value_;
};

/// An iterative or elimination routine failed to reach its tolerance.
class NumericalError : public Error
{
public:
  NumericalError(const std::string& what, double residual,
                 std::vector<std::complex<double>> best_iterate = {})
    : Error(what), residual_(residual), best_(std::move(best_iterate))
  {}

  double residual() const noexcept { return residual_; }
  const std::vector<std::complex<double>>& best_iterate() const noexcept { return best_; }

private:
  double residual_;
  std::vector<std::complex<double>> best_;
};

} // namespace recspec

#endif // RECSPEC_ERRORS_HPP
