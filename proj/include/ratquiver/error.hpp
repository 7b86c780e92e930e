#pragma once

#include <stdexcept>
#include <string>

namespace ratquiver {

enum class errc {
  // malformed input (CLI exit code 2)
  parse_error,
  malformed_quiver,
  shape_mismatch,
  dimension_mismatch,
  unknown_id,
  // domain errors (CLI exit code 1)
  compatibility_violation,
  closure_bound,
  diagonal_bimodule,
  non_integral_valuation,
  not_ade,
  action_does_not_preserve_roots,
  cyclic_quiver,
  not_a_sink,
  not_a_source,
  non_integral_solution,
  negative_multiplicity,
  square_a,
  no_cyclic_vector,
  non_scalar_double,
  invalid_place,
  invalid_field,
  mixed_field,
  height_cap,
  singular_matrix,
  internal,
};

inline const char* to_string(errc c) {
  switch (c) {
    case errc::parse_error: return "ParseError";
    case errc::malformed_quiver: return "MalformedQuiver";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::unknown_id: return "UnknownId";
    case errc::compatibility_violation: return "CompatibilityViolation";
    case errc::closure_bound: return "ClosureBound";
    case errc::diagonal_bimodule: return "DiagonalBimodule";
    case errc::non_integral_valuation: return "NonIntegralValuation";
    case errc::not_ade: return "NotADE";
    case errc::action_does_not_preserve_roots: return "ActionDoesNotPreserveRoots";
    case errc::cyclic_quiver: return "CyclicQuiver";
    case errc::not_a_sink: return "NotASink";
    case errc::not_a_source: return "NotASource";
    case errc::non_integral_solution: return "NonIntegralSolution";
    case errc::negative_multiplicity: return "NegativeMultiplicity";
    case errc::square_a: return "SquareA";
    case errc::no_cyclic_vector: return "NoCyclicVector";
    case errc::non_scalar_double: return "NonScalarDouble";
    case errc::invalid_place: return "InvalidPlace";
    case errc::invalid_field: return "InvalidField";
    case errc::mixed_field: return "MixedField";
    case errc::height_cap: return "HeightCap";
    case errc::singular_matrix: return "SingularMatrix";
    case errc::internal: return "InternalError";
  }
  return "Error";
}

/// True for errors caused by a malformed input document rather than by the
/// mathematics of a well-formed one.
inline bool is_input_error(errc c) {
  switch (c) {
    case errc::parse_error:
    case errc::malformed_quiver:
    case errc::shape_mismatch:
    case errc::dimension_mismatch:
    case errc::unknown_id:
      return true;
    default:
      return false;
  }
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace ratquiver
