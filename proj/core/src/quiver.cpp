#include "weightforge/quiver.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace weightforge {

WeightedQuiver::WeightedQuiver(std::vector<Vertex> vertices, const std::vector<ArrowSpec>& arrows)
    : verts_(std::move(vertices)) {
  std::set<std::string> seen;
  for (const auto& v : verts_)
    if (!seen.insert(v.id).second) errors_.push_back("duplicate vertex id: " + v.id);
  std::set<std::string> seen_arrows;
  for (const auto& a : arrows) {
    if (!seen_arrows.insert(a.id).second) errors_.push_back("duplicate arrow id: " + a.id);
    Arrow arr;
    arr.id = a.id;
    arr.src = vertex_index(a.from);
    arr.tgt = vertex_index(a.to);
    if (arr.src < 0) errors_.push_back("arrow " + a.id + ": unknown source vertex " + a.from);
    if (arr.tgt < 0) errors_.push_back("arrow " + a.id + ": unknown target vertex " + a.to);
    if (arr.src >= 0 && arr.tgt >= 0) arrows_.push_back(arr);
  }

  // Kahn topological sort.
  int n = vertex_count();
  std::vector<int> indeg(n, 0);
  for (const auto& a : arrows_) ++indeg[a.tgt];
  std::vector<int> queue;
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) queue.push_back(v);
  for (size_t head = 0; head < queue.size(); ++head) {
    int v = queue[head];
    topo_.push_back(v);
    for (const auto& a : arrows_)
      if (a.src == v && --indeg[a.tgt] == 0) queue.push_back(a.tgt);
  }
  acyclic_ = static_cast<int>(topo_.size()) == n;

  admissible_ = acyclic_;
  for (const auto& a : arrows_)
    if (!(weight(a.tgt) < weight(a.src))) admissible_ = false;
}

int WeightedQuiver::vertex_index(const std::string& id) const {
  for (int v = 0; v < vertex_count(); ++v)
    if (verts_[v].id == id) return v;
  return -1;
}

int WeightedQuiver::arrow_index(const std::string& id) const {
  for (int a = 0; a < arrow_count(); ++a)
    if (arrows_[a].id == id) return a;
  return -1;
}

QuiverReport WeightedQuiver::validate() const { return {acyclic_, admissible_, errors_}; }

std::vector<int> WeightedQuiver::occurring_weights() const {
  std::set<int> ws;
  for (const auto& v : verts_) ws.insert(v.weight);
  return {ws.begin(), ws.end()};
}

int WeightedQuiver::min_weight() const {
  auto ws = occurring_weights();
  return ws.empty() ? 0 : ws.front();
}

int WeightedQuiver::max_weight() const {
  auto ws = occurring_weights();
  return ws.empty() ? 0 : ws.back();
}

std::vector<std::vector<int>> WeightedQuiver::paths(int u, int w) const {
  std::vector<std::vector<int>> out;
  if (u == w) out.push_back({});
  for (int a = 0; a < arrow_count(); ++a) {
    if (arrows_[a].src != u) continue;
    for (auto& tail : paths(arrows_[a].tgt, w)) {
      std::vector<int> p;
      p.push_back(a);
      p.insert(p.end(), tail.begin(), tail.end());
      out.push_back(std::move(p));
    }
  }
  return out;
}

QuiverPtr WeightedQuiver::opposite() const {
  std::vector<Vertex> vs = verts_;
  for (auto& v : vs) v.weight = -v.weight;
  std::vector<ArrowSpec> as;
  for (const auto& a : arrows_) as.push_back({a.id, verts_[a.tgt].id, verts_[a.src].id});
  return make_quiver(std::move(vs), as);
}

QuiverPtr WeightedQuiver::shadow() const { return make_quiver(verts_, {}); }

QuiverPtr WeightedQuiver::single_vertex(int v) const { return make_quiver({verts_[v]}, {}); }

bool WeightedQuiver::same_shape(const WeightedQuiver& o) const {
  if (vertex_count() != o.vertex_count() || arrow_count() != o.arrow_count()) return false;
  for (int v = 0; v < vertex_count(); ++v)
    if (verts_[v].id != o.verts_[v].id || verts_[v].weight != o.verts_[v].weight) return false;
  for (int a = 0; a < arrow_count(); ++a)
    if (arrows_[a].id != o.arrows_[a].id || arrows_[a].src != o.arrows_[a].src ||
        arrows_[a].tgt != o.arrows_[a].tgt)
      return false;
  return true;
}

QuiverPtr make_quiver(std::vector<Vertex> vertices, const std::vector<WeightedQuiver::ArrowSpec>& arrows) {
  auto q = std::make_shared<WeightedQuiver>(std::move(vertices), arrows);
  if (!q->validate().errors.empty())
    throw std::invalid_argument("invalid quiver: " + q->validate().errors.front());
  return q;
}

QuiverPtr fixture_q1() {
  return make_quiver({{"u", 1}, {"v", 0}}, {{"a", "u", "v"}});
}

QuiverPtr fixture_q0() {
  return make_quiver({{"u", 0}, {"v", 0}}, {{"a", "u", "v"}});
}

}  // namespace weightforge
