#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace gwburn {

/// Preorder index of a vertex, 1-based; the root is always 1.
using Vertex = std::int32_t;

/// Preorder degree sequence: child count of each vertex in DFS order.
using DegreeSequence = std::vector<std::int32_t>;

inline constexpr std::int64_t kMaxTreeVertices = std::int64_t{1} << 24;
inline constexpr int kDefaultEnumerationCap = 12;

/// True iff the sequence satisfies the preorder conditions: every proper
/// prefix sum is at least its length, and the total is s-1.
bool validate_degree_sequence(const DegreeSequence& degrees);

/// Lattice path y_0..y_s with y_0 = 0 and steps d_j - 1. Valid tree
/// sequences end at -1 without touching -1 earlier.
std::vector<std::int64_t> to_lattice_path(const DegreeSequence& degrees);

/// Offset r in [0, s) such that the left rotation by r is a valid preorder
/// degree sequence; exactly one exists when the entries sum to s-1.
/// Computed in linear time from the first global minimum of the lattice
/// path; throws BadSumError when the sum is wrong.
std::size_t unique_valid_rotation(const DegreeSequence& degrees);

DegreeSequence rotate_left(const DegreeSequence& degrees, std::size_t offset);

/// Rooted ordered tree built from a preorder degree sequence. Immutable
/// after construction and safe for shared concurrent reads.
class Tree {
 public:
  /// Throws InvalidSequenceError if the sequence is not a valid preorder
  /// degree sequence, CapExceededError beyond kMaxTreeVertices.
  explicit Tree(const DegreeSequence& degrees);

  Tree(const Tree& other);
  Tree(Tree&&) noexcept = default;
  Tree& operator=(const Tree& other);
  Tree& operator=(Tree&&) noexcept = default;

  int n() const { return n_; }
  const DegreeSequence& degrees() const { return degrees_; }

  /// Parent of v; 0 for the root.
  Vertex parent(Vertex v) const { return parent_[v]; }
  int degree(Vertex v) const { return degrees_[v - 1]; }
  int depth(Vertex v) const { return depth_[v]; }
  int subtree_height(Vertex v) const { return subtree_height_[v]; }
  int height() const { return subtree_height_[1]; }

  /// Max pairwise distance, by double BFS; cached after the first call.
  int diameter() const;

  /// Edge count of the unique path between u and v.
  int distance(Vertex u, Vertex v) const;

  /// Closed ball: every vertex within distance radius of v, ascending order.
  std::vector<Vertex> ball(Vertex v, int radius) const;

  /// Vertices at depth j (mod k) whose subtree has height at least k,
  /// ascending preorder. Requires k >= 1 and 0 <= j < k.
  std::vector<Vertex> c_k_j(int k, int j) const;

  /// Sizes |C_k^j| for all j in [0, k) in one pass.
  std::vector<std::int64_t> c_k_sizes(int k) const;

  /// Fills out[1..n] with BFS distances from src; out is resized to n+1.
  void distances_from(Vertex src, std::vector<std::int32_t>& out) const;

  template <typename F>
  void for_each_child(Vertex v, F&& f) const {
    for (std::int32_t i = child_offset_[v]; i < child_offset_[v + 1]; ++i) {
      f(child_list_[i]);
    }
  }

  template <typename F>
  void for_each_neighbor(Vertex v, F&& f) const {
    if (parent_[v] != 0) f(parent_[v]);
    for_each_child(v, f);
  }

 private:
  int n_ = 0;
  DegreeSequence degrees_;
  std::vector<Vertex> parent_;
  std::vector<std::int32_t> child_offset_;  // children of v at [offset[v], offset[v+1])
  std::vector<Vertex> child_list_;
  std::vector<std::int32_t> depth_;
  std::vector<std::int32_t> subtree_height_;
  mutable std::atomic<int> diameter_cache_{-1};
};

/// Calls visit with every valid preorder degree sequence of length s exactly
/// once (Catalan(s-1) of them). Throws CapExceededError when s > cap.
void enumerate_trees(int s, const std::function<void(const DegreeSequence&)>& visit,
                     int cap = kDefaultEnumerationCap);

std::vector<DegreeSequence> all_trees(int s, int cap = kDefaultEnumerationCap);

/// One line, space-separated degrees; the file format used by the CLI.
std::string serialize_degrees(const DegreeSequence& degrees);
DegreeSequence parse_degrees(const std::string& line);

}  // namespace gwburn
