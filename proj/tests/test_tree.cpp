#include <algorithm>
#include <functional>
#include <map>

#include <doctest.h>

#include "gwburn/errors.hpp"
#include "gwburn/tree.hpp"

using namespace gwburn;

namespace {

// Figure-style worked example used throughout: preorder degrees (1,2,2,0,0,1,0).
const DegreeSequence kExample{1, 2, 2, 0, 0, 1, 0};

DegreeSequence path_degrees(int n) {
  DegreeSequence d(n, 1);
  d.back() = 0;
  return d;
}

DegreeSequence star_degrees(int leaves) {
  DegreeSequence d(leaves + 1, 0);
  d[0] = leaves;
  return d;
}

DegreeSequence extract_preorder(const Tree& t) {
  DegreeSequence out(t.n());
  for (Vertex v = 1; v <= t.n(); ++v) out[v - 1] = t.degree(v);
  return out;
}

}  // namespace

TEST_CASE("validate accepts the worked example and rejects bad prefixes") {
  CHECK(validate_degree_sequence(kExample));
  CHECK(validate_degree_sequence({0}));
  CHECK_FALSE(validate_degree_sequence({0, 2, 0}));  // prefix sum 0 < 1
  CHECK_FALSE(validate_degree_sequence({1, 1, 1}));  // sum != s-1
  CHECK_FALSE(validate_degree_sequence({}));
}

TEST_CASE("build_tree decodes the worked example") {
  const Tree t(kExample);
  CHECK(t.n() == 7);
  CHECK(t.height() == 3);
  int leaves = 0;
  for (Vertex v = 1; v <= 7; ++v) {
    if (t.degree(v) == 0) ++leaves;
  }
  CHECK(leaves == 3);  // exactly the zero-degree entries
  CHECK(t.depth(1) == 0);
  CHECK(t.depth(2) == 1);
  CHECK(t.depth(4) == 3);
  CHECK(t.depth(6) == 2);
  CHECK(t.parent(6) == 2);
  CHECK(t.subtree_height(1) == 3);
  CHECK(t.subtree_height(3) == 1);
  CHECK(t.subtree_height(4) == 0);

  // the two depth-3 leaves under different depth-2 parents meet at depth 1
  CHECK(t.distance(4, 7) == 4);
  CHECK(t.distance(5, 7) == 4);
}

TEST_CASE("single vertex and unary chain decode") {
  const Tree single({0});
  CHECK(single.n() == 1);
  CHECK(single.height() == 0);
  CHECK(single.diameter() == 0);

  const Tree p4({1, 1, 1, 0});
  CHECK(p4.height() == 3);
  CHECK(p4.distance(1, 4) == 3);
}

TEST_CASE("lattice paths follow the step recurrence") {
  CHECK(to_lattice_path(kExample) ==
        std::vector<std::int64_t>{0, 0, 1, 2, 1, 0, 0, -1});
  CHECK(to_lattice_path({0}) == std::vector<std::int64_t>{0, -1});
  CHECK(to_lattice_path({2, 0, 0}) == std::vector<std::int64_t>{0, 1, 0, -1});
}

TEST_CASE("lattice path criterion is equivalent to validate (exhaustive)") {
  // all sequences with s <= 8 and entries <= 3
  for (int s = 1; s <= 8; ++s) {
    DegreeSequence seq(s, 0);
    for (;;) {
      const auto path = to_lattice_path(seq);
      bool path_valid = path.back() == -1;
      for (std::size_t j = 1; j + 1 < path.size() && path_valid; ++j) {
        path_valid = path[j] > -1;
      }
      CHECK(validate_degree_sequence(seq) == path_valid);
      // odometer increment
      int i = 0;
      while (i < s && seq[i] == 3) seq[i++] = 0;
      if (i == s) break;
      ++seq[i];
    }
  }
}

TEST_CASE("unique_valid_rotation matches brute force") {
  CHECK(unique_valid_rotation({0, 2, 0}) == 1);
  CHECK(rotate_left({0, 2, 0}, 1) == DegreeSequence{2, 0, 0});
  CHECK(unique_valid_rotation({0}) == 0);

  const DegreeSequence scrambled{0, 0, 1, 2, 2, 0, 1};
  const std::size_t offset = unique_valid_rotation(scrambled);
  int valid = 0;
  for (int r = 0; r < 7; ++r) {
    if (validate_degree_sequence(rotate_left(scrambled, r))) ++valid;
  }
  CHECK(valid == 1);
  CHECK(validate_degree_sequence(rotate_left(scrambled, offset)));

  CHECK_THROWS_AS(unique_valid_rotation({1, 1}), BadSumError);
}

TEST_CASE("rotation uniqueness holds for every composition (exhaustive s <= 8)") {
  for (int s = 1; s <= 8; ++s) {
    // enumerate all sequences of length s summing to s-1
    DegreeSequence seq(s, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
      if (pos == s - 1) {
        seq[pos] = left;
        int valid = 0;
        for (int r = 0; r < s; ++r) {
          if (validate_degree_sequence(rotate_left(seq, r))) ++valid;
        }
        CHECK(valid == 1);
        const std::size_t fast = unique_valid_rotation(seq);
        CHECK(validate_degree_sequence(rotate_left(seq, fast)));
        return;
      }
      for (int d = 0; d <= left; ++d) {
        seq[pos] = d;
        rec(pos + 1, left - d);
      }
    };
    rec(0, s - 1);
  }
}

TEST_CASE("distance and balls on names paths and stars") {
  const Tree p5(path_degrees(5));
  CHECK(p5.distance(2, 2) == 0);
  CHECK(p5.distance(1, 4) == 3);
  CHECK(p5.ball(3, 1) == std::vector<Vertex>{2, 3, 4});
  CHECK(p5.ball(3, 10).size() == 5);
  CHECK(p5.ball(1, 0) == std::vector<Vertex>{1});

  const Tree star(star_degrees(5));
  CHECK(star.diameter() == 2);
  CHECK(star.ball(1, 1).size() == 6);
  const Tree p9(path_degrees(9));
  CHECK(p9.diameter() == 8);
}

TEST_CASE("c_k_j selects deep-subtree vertices on the right residues") {
  const Tree p7(path_degrees(7));
  CHECK(p7.c_k_j(2, 0) == std::vector<Vertex>{1, 3, 5});  // depths 0,2,4

  const Tree single({0});
  CHECK(single.c_k_j(1, 0).empty());

  const Tree example(kExample);
  CHECK(example.c_k_j(example.height() + 1, 1).empty());

  CHECK_THROWS_AS(p7.c_k_j(0, 0), InvalidParameterError);
  CHECK_THROWS_AS(p7.c_k_j(2, 2), InvalidParameterError);
}

TEST_CASE("c_k_sizes partitions the deep-subtree vertices") {
  const Tree example(kExample);
  for (int k = 1; k <= 4; ++k) {
    const auto sizes = example.c_k_sizes(k);
    std::int64_t total = 0;
    for (int j = 0; j < k; ++j) {
      CHECK(sizes[j] == static_cast<std::int64_t>(example.c_k_j(k, j).size()));
      total += sizes[j];
    }
    std::int64_t deep = 0;
    for (Vertex v = 1; v <= example.n(); ++v) {
      if (example.subtree_height(v) >= k) ++deep;
    }
    CHECK(total == deep);
  }
}

TEST_CASE("enumerate_trees yields Catalan many sequences") {
  CHECK(all_trees(1).size() == 1);
  CHECK(all_trees(3) == std::vector<DegreeSequence>{{1, 1, 0}, {2, 0, 0}});
  CHECK(all_trees(4).size() == 5);
  CHECK(all_trees(8).size() == 429);
  CHECK_THROWS_AS(all_trees(13), CapExceededError);
  CHECK(all_trees(13, 13).size() == 208012);
}

TEST_CASE("round-trip: preorder degrees rebuild identically (s <= 10)") {
  for (int s = 1; s <= 10; ++s) {
    enumerate_trees(s, [&](const DegreeSequence& d) {
      const Tree t(d);
      CHECK(extract_preorder(t) == d);
      // depth partition: every vertex appears in exactly one level
      std::map<int, int> level_sizes;
      for (Vertex v = 1; v <= t.n(); ++v) ++level_sizes[t.depth(v)];
      int total = 0;
      for (const auto& [depth, size] : level_sizes) total += size;
      CHECK(total == t.n());
      CHECK(level_sizes.rbegin()->first == t.height());
    });
  }
}

TEST_CASE("distance is symmetric and additive along root paths") {
  const Tree t(DegreeSequence{2, 2, 0, 1, 0, 3, 0, 0, 0});
  for (Vertex u = 1; u <= t.n(); ++u) {
    for (Vertex v = 1; v <= t.n(); ++v) {
      CHECK(t.distance(u, v) == t.distance(v, u));
      CHECK(t.distance(u, v) <= t.distance(u, 1) + t.distance(1, v));
    }
    CHECK(t.distance(u, u) == 0);
  }
}

TEST_CASE("serialization round-trips the file format") {
  CHECK(serialize_degrees(kExample) == "1 2 2 0 0 1 0");
  CHECK(parse_degrees("1 2 2 0 0 1 0") == kExample);
  CHECK(serialize_degrees({0}) == "0");
  CHECK_THROWS_AS(parse_degrees(""), InvalidSequenceError);
  CHECK_THROWS_AS(Tree(parse_degrees("3 0 0")), InvalidSequenceError);
}
