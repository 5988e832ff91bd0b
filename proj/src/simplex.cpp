#include "stx/simplex.hpp"

#include <algorithm>
#include <ostream>

#include "stx/error.hpp"

namespace stx {

const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::wrong_simplex_size: return "WrongSimplexSize";
    case Errc::attachment_not_found: return "AttachmentNotFound";
    case Errc::face_not_free: return "FaceNotFree";
    case Errc::no_new_vertex: return "NoNewVertex";
    case Errc::not_linear: return "NotLinear";
    case Errc::facet_not_present: return "FacetNotPresent";
    case Errc::not_consecutive: return "NotConsecutive";
    case Errc::pinned_too_large: return "PinnedTooLarge";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::not_a_boundary_facet: return "NotABoundaryFacet";
    case Errc::not_end_facet: return "NotEndFacet";
    case Errc::empty_edge: return "EmptyEdge";
    case Errc::wrong_dimension: return "WrongDimension";
    case Errc::too_small: return "TooSmall";
    case Errc::internal_contradiction: return "InternalContradiction";
    case Errc::not_stacked: return "NotStacked";
    case Errc::parse_error: return "ParseError";
    case Errc::bad_argument: return "BadArgument";
  }
  return "UnknownError";
}

Simplex::Simplex(std::vector<Vertex> vertices) : v_(std::move(vertices)) {
  std::sort(v_.begin(), v_.end());
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (v_[i] < 0) fail(Errc::bad_argument, "negative vertex id");
    if (i > 0 && v_[i] == v_[i - 1]) fail(Errc::bad_argument, "duplicate vertex id");
  }
}

Simplex::Simplex(std::initializer_list<Vertex> vertices)
    : Simplex(std::vector<Vertex>(vertices)) {}

bool Simplex::contains(Vertex v) const {
  return std::binary_search(v_.begin(), v_.end(), v);
}

bool Simplex::contains_all(const Simplex& other) const {
  return std::includes(v_.begin(), v_.end(), other.v_.begin(), other.v_.end());
}

Simplex Simplex::with(Vertex v) const {
  if (contains(v)) return *this;
  std::vector<Vertex> out = v_;
  out.insert(std::upper_bound(out.begin(), out.end(), v), v);
  Simplex s;
  s.v_ = std::move(out);
  return s;
}

Simplex Simplex::without(Vertex v) const {
  Simplex s;
  s.v_.reserve(v_.size());
  for (Vertex x : v_)
    if (x != v) s.v_.push_back(x);
  return s;
}

Simplex intersection(const Simplex& a, const Simplex& b) {
  std::vector<Vertex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Simplex(std::move(out));
}

Simplex unite(const Simplex& a, const Simplex& b) {
  std::vector<Vertex> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Simplex(std::move(out));
}

Simplex difference(const Simplex& a, const Simplex& b) {
  std::vector<Vertex> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Simplex(std::move(out));
}

int intersection_size(const Simplex& a, const Simplex& b) {
  int c = 0;
  auto ia = a.begin(), ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) ++ia;
    else if (*ib < *ia) ++ib;
    else ++c, ++ia, ++ib;
  }
  return c;
}

std::ostream& operator<<(std::ostream& os, const Simplex& s) {
  os << '{';
  for (int i = 0; i < s.size(); ++i) {
    if (i) os << ',';
    os << s[i];
  }
  return os << '}';
}

}  // namespace stx
