#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <vector>

namespace stx {

using Vertex = int;

// An abstract simplex: a sorted set of non-negative vertex ids.
// The empty set is allowed (dimension -1); it shows up as the neutral
// element of intersections, never as a face of a complex.
class Simplex {
 public:
  Simplex() = default;
  explicit Simplex(std::vector<Vertex> vertices);  // sorts, rejects dups/negatives
  Simplex(std::initializer_list<Vertex> vertices);

  int size() const { return static_cast<int>(v_.size()); }
  int dim() const { return size() - 1; }
  bool empty() const { return v_.empty(); }

  bool contains(Vertex v) const;
  bool contains_all(const Simplex& other) const;  // other subseteq this

  Simplex with(Vertex v) const;
  Simplex without(Vertex v) const;

  const std::vector<Vertex>& verts() const { return v_; }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }
  Vertex operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }

  friend bool operator==(const Simplex&, const Simplex&) = default;
  friend auto operator<=>(const Simplex& a, const Simplex& b) { return a.v_ <=> b.v_; }

 private:
  std::vector<Vertex> v_;
};

Simplex intersection(const Simplex& a, const Simplex& b);
Simplex unite(const Simplex& a, const Simplex& b);
Simplex difference(const Simplex& a, const Simplex& b);
int intersection_size(const Simplex& a, const Simplex& b);

std::ostream& operator<<(std::ostream& os, const Simplex& s);

}  // namespace stx
