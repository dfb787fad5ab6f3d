#include "gwburn/tree.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "gwburn/errors.hpp"

namespace gwburn {

bool validate_degree_sequence(const DegreeSequence& degrees) {
  const std::int64_t s = static_cast<std::int64_t>(degrees.size());
  if (s == 0) return false;
  std::int64_t sum = 0;
  for (std::int64_t j = 1; j <= s; ++j) {
    const std::int32_t d = degrees[j - 1];
    if (d < 0) return false;
    sum += d;
    if (j < s && sum < j) return false;
  }
  return sum == s - 1;
}

std::vector<std::int64_t> to_lattice_path(const DegreeSequence& degrees) {
  std::vector<std::int64_t> path;
  path.reserve(degrees.size() + 1);
  std::int64_t y = 0;
  path.push_back(y);
  for (const std::int32_t d : degrees) {
    y += d - 1;
    path.push_back(y);
  }
  return path;
}

std::size_t unique_valid_rotation(const DegreeSequence& degrees) {
  const std::int64_t s = static_cast<std::int64_t>(degrees.size());
  std::int64_t sum = 0;
  for (const std::int32_t d : degrees) sum += d;
  if (s == 0 || sum != s - 1) {
    throw BadSumError("degree sum " + std::to_string(sum) + " != s-1 for s = " +
                      std::to_string(s));
  }
  // Cycle lemma: rotate to start right after the first position achieving
  // the global minimum of the lattice path. Everything before it sits
  // strictly above the minimum and everything after at or above it, which is
  // exactly the validity condition for the rotated path.
  std::int64_t y = 0;
  std::int64_t min_y = std::numeric_limits<std::int64_t>::max();
  std::int64_t min_pos = 0;
  for (std::int64_t j = 1; j <= s; ++j) {
    y += degrees[j - 1] - 1;
    if (y < min_y) {
      min_y = y;
      min_pos = j;
    }
  }
  return static_cast<std::size_t>(min_pos % s);
}

DegreeSequence rotate_left(const DegreeSequence& degrees, std::size_t offset) {
  DegreeSequence out(degrees.size());
  const std::size_t s = degrees.size();
  for (std::size_t i = 0; i < s; ++i) out[i] = degrees[(i + offset) % s];
  return out;
}

Tree::Tree(const DegreeSequence& degrees) : degrees_(degrees) {
  const std::int64_t s = static_cast<std::int64_t>(degrees.size());
  if (s > kMaxTreeVertices) {
    throw CapExceededError("tree has " + std::to_string(s) + " vertices; cap is " +
                           std::to_string(kMaxTreeVertices));
  }
  if (!validate_degree_sequence(degrees)) {
    throw InvalidSequenceError("not a valid preorder degree sequence");
  }
  n_ = static_cast<int>(s);
  parent_.assign(n_ + 1, 0);
  depth_.assign(n_ + 1, 0);
  subtree_height_.assign(n_ + 1, 0);

  // Decode parents in one pass: the DFS stack holds vertices that still
  // expect children.
  std::vector<std::pair<Vertex, std::int32_t>> stack;  // (vertex, children left)
  stack.reserve(64);
  if (degrees_[0] > 0) stack.push_back({1, degrees_[0]});
  for (Vertex v = 2; v <= n_; ++v) {
    auto& [p, left] = stack.back();
    parent_[v] = p;
    depth_[v] = depth_[p] + 1;
    if (--left == 0) stack.pop_back();
    if (degrees_[v - 1] > 0) stack.push_back({v, degrees_[v - 1]});
  }

  for (Vertex v = n_; v >= 2; --v) {
    const Vertex p = parent_[v];
    subtree_height_[p] = std::max(subtree_height_[p], subtree_height_[v] + 1);
  }

  child_offset_.assign(n_ + 2, 0);
  for (Vertex v = 1; v <= n_; ++v) child_offset_[v + 1] = child_offset_[v] + degrees_[v - 1];
  child_list_.resize(n_ > 0 ? n_ - 1 : 0);
  std::vector<std::int32_t> cursor(child_offset_.begin(), child_offset_.end() - 1);
  for (Vertex v = 2; v <= n_; ++v) child_list_[cursor[parent_[v]]++] = v;
}

Tree::Tree(const Tree& other)
    : n_(other.n_),
      degrees_(other.degrees_),
      parent_(other.parent_),
      child_offset_(other.child_offset_),
      child_list_(other.child_list_),
      depth_(other.depth_),
      subtree_height_(other.subtree_height_),
      diameter_cache_(other.diameter_cache_.load(std::memory_order_relaxed)) {}

Tree& Tree::operator=(const Tree& other) {
  if (this == &other) return *this;
  n_ = other.n_;
  degrees_ = other.degrees_;
  parent_ = other.parent_;
  child_offset_ = other.child_offset_;
  child_list_ = other.child_list_;
  depth_ = other.depth_;
  subtree_height_ = other.subtree_height_;
  diameter_cache_.store(other.diameter_cache_.load(std::memory_order_relaxed),
                        std::memory_order_relaxed);
  return *this;
}

void Tree::distances_from(Vertex src, std::vector<std::int32_t>& out) const {
  out.assign(n_ + 1, -1);
  std::vector<Vertex> frontier{src};
  std::vector<Vertex> next;
  out[src] = 0;
  std::int32_t d = 0;
  while (!frontier.empty()) {
    ++d;
    next.clear();
    for (const Vertex v : frontier) {
      for_each_neighbor(v, [&](Vertex u) {
        if (out[u] < 0) {
          out[u] = d;
          next.push_back(u);
        }
      });
    }
    frontier.swap(next);
  }
}

int Tree::diameter() const {
  int cached = diameter_cache_.load(std::memory_order_relaxed);
  if (cached >= 0) return cached;
  std::vector<std::int32_t> dist;
  distances_from(1, dist);
  Vertex far = 1;
  for (Vertex v = 1; v <= n_; ++v) {
    if (dist[v] > dist[far]) far = v;
  }
  distances_from(far, dist);
  std::int32_t best = 0;
  for (Vertex v = 1; v <= n_; ++v) best = std::max(best, dist[v]);
  diameter_cache_.store(best, std::memory_order_relaxed);
  return best;
}

int Tree::distance(Vertex u, Vertex v) const {
  int steps = 0;
  while (depth_[u] > depth_[v]) {
    u = parent_[u];
    ++steps;
  }
  while (depth_[v] > depth_[u]) {
    v = parent_[v];
    ++steps;
  }
  while (u != v) {
    u = parent_[u];
    v = parent_[v];
    steps += 2;
  }
  return steps;
}

std::vector<Vertex> Tree::ball(Vertex v, int radius) const {
  std::vector<std::int32_t> dist(n_ + 1, -1);
  std::vector<Vertex> frontier{v};
  std::vector<Vertex> next;
  dist[v] = 0;
  for (int d = 1; d <= radius && !frontier.empty(); ++d) {
    next.clear();
    for (const Vertex w : frontier) {
      for_each_neighbor(w, [&](Vertex u) {
        if (dist[u] < 0) {
          dist[u] = d;
          next.push_back(u);
        }
      });
    }
    frontier.swap(next);
  }
  std::vector<Vertex> out;
  for (Vertex w = 1; w <= n_; ++w) {
    if (dist[w] >= 0) out.push_back(w);
  }
  return out;
}

std::vector<Vertex> Tree::c_k_j(int k, int j) const {
  if (k < 1 || j < 0 || j >= k) {
    throw InvalidParameterError("c_k_j requires k >= 1 and 0 <= j < k");
  }
  std::vector<Vertex> out;
  for (Vertex v = 1; v <= n_; ++v) {
    if (depth_[v] % k == j && subtree_height_[v] >= k) out.push_back(v);
  }
  return out;
}

std::vector<std::int64_t> Tree::c_k_sizes(int k) const {
  if (k < 1) throw InvalidParameterError("c_k_sizes requires k >= 1");
  std::vector<std::int64_t> counts(k, 0);
  for (Vertex v = 1; v <= n_; ++v) {
    if (subtree_height_[v] >= k) ++counts[depth_[v] % k];
  }
  return counts;
}

namespace {

void enumerate_rec(int s, std::int64_t position, std::int64_t prefix_sum,
                   DegreeSequence& scratch,
                   const std::function<void(const DegreeSequence&)>& visit) {
  if (position == s) {
    visit(scratch);
    return;
  }
  const std::int64_t j = position + 1;  // 1-based vertex index
  const std::int64_t remaining = (s - 1) - prefix_sum;
  const std::int64_t lo = (j < s) ? std::max<std::int64_t>(0, j - prefix_sum) : remaining;
  for (std::int64_t d = lo; d <= remaining; ++d) {
    scratch[position] = static_cast<std::int32_t>(d);
    enumerate_rec(s, position + 1, prefix_sum + d, scratch, visit);
  }
}

}  // namespace

void enumerate_trees(int s, const std::function<void(const DegreeSequence&)>& visit,
                     int cap) {
  if (s < 1) throw InvalidParameterError("enumerate_trees requires s >= 1");
  if (s > cap) {
    throw CapExceededError("enumeration of size " + std::to_string(s) +
                           " exceeds cap " + std::to_string(cap));
  }
  DegreeSequence scratch(s);
  enumerate_rec(s, 0, 0, scratch, visit);
}

std::vector<DegreeSequence> all_trees(int s, int cap) {
  std::vector<DegreeSequence> out;
  enumerate_trees(s, [&out](const DegreeSequence& d) { out.push_back(d); }, cap);
  return out;
}

std::string serialize_degrees(const DegreeSequence& degrees) {
  std::ostringstream ss;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (i > 0) ss << ' ';
    ss << degrees[i];
  }
  return ss.str();
}

DegreeSequence parse_degrees(const std::string& line) {
  DegreeSequence out;
  std::istringstream ss(line);
  long long d;
  while (ss >> d) {
    if (d < 0 || d > std::numeric_limits<std::int32_t>::max()) {
      throw InvalidSequenceError("degree out of range: " + std::to_string(d));
    }
    out.push_back(static_cast<std::int32_t>(d));
  }
  if (out.empty()) throw InvalidSequenceError("empty degree sequence");
  return out;
}

}  // namespace gwburn
