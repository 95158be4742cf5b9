#pragma once

// JSON problem files: a space, a Dirichlet polynomial, p and sampler
// settings. Parsing reports ValidationError with a JSON pointer to the
// offending value.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "hardy/dirichlet.hpp"
#include "hardy/estimate.hpp"
#include "hardy/spaces.hpp"

namespace hardy {

inline constexpr int kSchemaVersion = 1;

struct Problem {
  DirichletPolynomial poly{SpaceSpec::scalars()};
  std::optional<double> p;
  SamplerConfig sampler;
  /// True when the file set sampler.seed explicitly.
  bool seed_given = false;
};

Problem parse_problem(std::string_view text);
Problem problem_from_json(const nlohmann::json& j);

/// Inverse of problem_from_json: problem_from_json(to_json(x)) == x.
nlohmann::json to_json(const Problem& problem);

nlohmann::json element_to_json(const SpaceSpec& space, const Element& x);
nlohmann::json space_to_json(const SpaceSpec& space);

/// x_1, ..., x_N with N the largest index present; missing terms are zero.
/// Throws DomainError when N exceeds `max_length`.
std::vector<Element> dense_coefficients(const DirichletPolynomial& d, std::size_t max_length = 1 << 16);

}  // namespace hardy
