#pragma once

#include <stdexcept>
#include <string>

namespace stx {

// Failure modes of the library ops. Each op documents which of these it can raise.
enum class Errc {
  wrong_simplex_size,
  attachment_not_found,
  face_not_free,
  no_new_vertex,
  not_linear,
  facet_not_present,
  not_consecutive,
  pinned_too_large,
  dimension_mismatch,
  not_a_boundary_facet,
  not_end_facet,
  empty_edge,
  wrong_dimension,
  too_small,
  internal_contradiction,
  not_stacked,
  parse_error,
  bad_argument,
};

const char* errc_name(Errc c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace stx
