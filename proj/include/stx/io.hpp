#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stx/ball.hpp"
#include "stx/constructions.hpp"

namespace stx {

struct InstanceMeta {
  std::string family;
  std::map<std::string, std::int64_t> params;  // d, k, m, seed where applicable
  std::optional<int> claimed_tau_lower;
  std::optional<int> claimed_n;
};

// On-disk instance. The text file stores vertex ids canonicalized to 0..n-1;
// the sidecar <path>.json keeps the original labels plus family metadata, and
// reading re-applies them, so a write/read round trip is the identity.
struct Instance {
  enum class Kind { ball, sphere };
  Kind kind = Kind::sphere;
  int d = 0;
  std::vector<Simplex> simplices;  // ball: construction order; sphere: full facet list
  std::vector<Simplex> removed;
  InstanceMeta meta;
};

Instance instance_from_ball(const StackedBall& ball, InstanceMeta meta = {});
Instance instance_from_family(const FamilyInstance& fam);

StackedBall to_ball(const Instance& inst);      // errors: wrong_dimension for sphere kind
StackedSphere to_sphere(const Instance& inst);  // balls are replaced by their boundary

// Writes the canonicalized text format, plus the JSON sidecar unless told
// otherwise (corpus dumps skip it to keep one file per instance).
void write_instance(const std::string& path, const Instance& inst, bool with_sidecar = true);

// Parses the text format; applies the sidecar's label map when present.
// Errors: parse_error.
Instance read_instance(const std::string& path);

}  // namespace stx
