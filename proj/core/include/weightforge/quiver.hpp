#pragma once

#include <memory>
#include <string>
#include <vector>

#include "weightforge/rational.hpp"

namespace weightforge {

struct Vertex {
  std::string id;
  int weight = 0;
};

struct Arrow {
  std::string id;
  int src = -1;  // vertex indices
  int tgt = -1;
};

struct QuiverReport {
  bool acyclic = false;
  bool admissible = false;  // every arrow strictly decreases the vertex weight
  std::vector<std::string> errors;
};

// A finite quiver with integer vertex weights. Construction validates ids and
// arrow endpoints; acyclicity and admissibility are computed once and cached.
class WeightedQuiver {
 public:
  struct ArrowSpec {
    std::string id, from, to;
  };

  WeightedQuiver(std::vector<Vertex> vertices, const std::vector<ArrowSpec>& arrows);

  int vertex_count() const { return static_cast<int>(verts_.size()); }
  int arrow_count() const { return static_cast<int>(arrows_.size()); }
  const Vertex& vertex(int v) const { return verts_[v]; }
  const Arrow& arrow(int a) const { return arrows_[a]; }
  const std::vector<Vertex>& vertices() const { return verts_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  int weight(int v) const { return verts_[v].weight; }

  int vertex_index(const std::string& id) const;  // -1 when unknown
  int arrow_index(const std::string& id) const;

  bool acyclic() const { return acyclic_; }
  bool admissible() const { return admissible_; }
  QuiverReport validate() const;

  // Vertices in a topological order (sources first). Only meaningful when
  // acyclic.
  const std::vector<int>& topological_order() const { return topo_; }

  std::vector<int> occurring_weights() const;  // sorted, unique
  int min_weight() const;
  int max_weight() const;

  // All directed paths u ~> w as arrow-index sequences (first arrow first).
  // Includes the empty path when u == w.
  std::vector<std::vector<int>> paths(int u, int w) const;

  // Arrows reversed and weights negated; vertex ids preserved.
  std::shared_ptr<const WeightedQuiver> opposite() const;
  // Same vertices, no arrows. Used to forget the module structure.
  std::shared_ptr<const WeightedQuiver> shadow() const;
  // One retained vertex, no arrows.
  std::shared_ptr<const WeightedQuiver> single_vertex(int v) const;

  bool same_shape(const WeightedQuiver& o) const;

 private:
  std::vector<Vertex> verts_;
  std::vector<Arrow> arrows_;
  std::vector<int> topo_;
  bool acyclic_ = false;
  bool admissible_ = false;
  std::vector<std::string> errors_;
};

using QuiverPtr = std::shared_ptr<const WeightedQuiver>;

QuiverPtr make_quiver(std::vector<Vertex> vertices, const std::vector<WeightedQuiver::ArrowSpec>& arrows);

// Two standard fixtures: Q1 = u(weight 1) -> v(weight 0), admissible;
// Q0 = same shape with both weights 0, not admissible.
QuiverPtr fixture_q1();
QuiverPtr fixture_q0();

}  // namespace weightforge
