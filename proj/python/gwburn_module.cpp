#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gwburn/burning.hpp"
#include "gwburn/errors.hpp"
#include "gwburn/offspring.hpp"
#include "gwburn/sampler.hpp"
#include "gwburn/stats.hpp"
#include "gwburn/tree.hpp"

namespace py = pybind11;
using namespace gwburn;

PYBIND11_MODULE(_gwburn, m) {
  m.doc() = "Conditioned Galton-Watson trees, burning numbers, and cover certificates";

  py::register_exception<IncompatibleSizeError>(m, "IncompatibleSizeError");
  py::register_exception<RejectionLimitError>(m, "RejectionLimitError");
  py::register_exception<CapExceededError>(m, "CapExceededError");
  py::register_exception<InvalidSequenceError>(m, "InvalidSequenceError");
  py::register_exception<InvalidParameterError>(m, "InvalidParameterError");

  py::class_<OffspringDistribution>(m, "OffspringDistribution")
      .def_property_readonly("name", &OffspringDistribution::name)
      .def_property_readonly("mean", &OffspringDistribution::mean)
      .def_property_readonly("variance", &OffspringDistribution::variance)
      .def_property_readonly("span", &OffspringDistribution::span)
      .def_property_readonly("pmf", &OffspringDistribution::pmf)
      .def("pmf_at", &OffspringDistribution::pmf_at, py::arg("value"))
      .def(
          "sample",
          [](const OffspringDistribution& dist, std::uint64_t seed, std::uint64_t stream,
             std::int64_t count) {
            RandomStream rng(seed, stream);
            std::vector<int> out(count);
            for (auto& v : out) v = dist.sample(rng);
            return out;
          },
          py::arg("seed"), py::arg("stream") = 0, py::arg("count") = 1)
      .def("__repr__", [](const OffspringDistribution& d) {
        return "<OffspringDistribution " + d.name() + ">";
      });

  m.def("poisson1", &OffspringDistribution::poisson1);
  m.def("geometric_half", &OffspringDistribution::geometric_half);
  m.def("binomial", &OffspringDistribution::binomial, py::arg("d"));
  m.def("two_point", &OffspringDistribution::two_point, py::arg("m"));
  m.def("offspring_from_spec", &OffspringDistribution::parse_spec, py::arg("spec"));
  m.def("offspring_from_pmf", &OffspringDistribution::from_pmf, py::arg("name"),
        py::arg("pmf"));

  py::class_<Tree>(m, "Tree")
      .def(py::init<const DegreeSequence&>(), py::arg("degrees"))
      .def_property_readonly("n", &Tree::n)
      .def_property_readonly("degrees", &Tree::degrees)
      .def_property_readonly("height", &Tree::height)
      .def_property_readonly("diameter", &Tree::diameter)
      .def("parent", &Tree::parent, py::arg("v"))
      .def("depth", &Tree::depth, py::arg("v"))
      .def("subtree_height", &Tree::subtree_height, py::arg("v"))
      .def("distance", &Tree::distance, py::arg("u"), py::arg("v"))
      .def("ball", &Tree::ball, py::arg("v"), py::arg("radius"))
      .def("c_k_j", &Tree::c_k_j, py::arg("k"), py::arg("j"))
      .def("__len__", &Tree::n)
      .def("__repr__", [](const Tree& t) {
        return "<Tree n=" + std::to_string(t.n()) + " height=" + std::to_string(t.height()) +
               ">";
      });

  m.def("validate_degree_sequence", &validate_degree_sequence, py::arg("degrees"));
  m.def("to_lattice_path", &to_lattice_path, py::arg("degrees"));
  m.def("unique_valid_rotation", &unique_valid_rotation, py::arg("degrees"));
  m.def(
      "all_trees", [](int s) { return all_trees(s); }, py::arg("s"));
  m.def("serialize_degrees", &serialize_degrees, py::arg("degrees"));
  m.def("parse_degrees", &parse_degrees, py::arg("line"));

  m.def(
      "sample_conditioned",
      [](const OffspringDistribution& dist, std::int64_t n, std::uint64_t seed,
         std::uint64_t stream, std::int64_t max_attempts) {
        RandomStream rng(seed, stream);
        ConditionedSample sample = sample_conditioned(dist, n, rng, max_attempts);
        return py::make_tuple(std::move(sample.tree), sample.attempts);
      },
      py::arg("dist"), py::arg("n"), py::arg("seed"), py::arg("stream") = 0,
      py::arg("max_attempts") = -1,
      "Exact conditioned sample; returns (tree, attempts).");
  m.def(
      "sample_unconditioned",
      [](const OffspringDistribution& dist, std::uint64_t seed, std::uint64_t stream,
         std::int64_t size_cap) -> py::object {
        RandomStream rng(seed, stream);
        UnconditionedSample sample = sample_unconditioned(dist, rng, size_cap);
        if (!sample.tree) return py::none();
        return py::cast(std::move(*sample.tree));
      },
      py::arg("dist"), py::arg("seed"), py::arg("stream") = 0,
      py::arg("size_cap") = 1000000,
      "Unconditioned branching-process tree, or None past size_cap.");
  m.def("predicted_acceptance_rate", &predicted_acceptance_rate, py::arg("dist"),
        py::arg("n"));

  m.def(
      "simulate_burning",
      [](const Tree& tree, const std::vector<Vertex>& sources) {
        const SimulationResult res = simulate_burning(tree, BurningSchedule{sources});
        return py::make_tuple(res.rounds_used, res.fully_burned);
      },
      py::arg("tree"), py::arg("sources"));
  m.def(
      "burning_number_exact",
      [](const Tree& tree, int node_cap) {
        ExactBurning res = burning_number_exact(tree, node_cap);
        return py::make_tuple(res.b, res.schedule.sources);
      },
      py::arg("tree"), py::arg("node_cap") = kDefaultExactNodeCap);
  m.def(
      "bhat_exact",
      [](const Tree& tree) {
        BhatResult res = bhat_exact(tree);
        return py::make_tuple(res.k, res.certificate.centers, res.certificate.radius);
      },
      py::arg("tree"));
  m.def(
      "min_ball_cover",
      [](const Tree& tree, int radius) {
        BallCover cover = min_ball_cover(tree, radius);
        return py::make_tuple(cover.count, cover.centers);
      },
      py::arg("tree"), py::arg("radius"));
  m.def(
      "verify_cover",
      [](const Tree& tree, const std::vector<Vertex>& centers, int radius) {
        return verify_cover(tree, CoverCertificate{centers, radius, 0});
      },
      py::arg("tree"), py::arg("centers"), py::arg("radius"));
  m.def(
      "scheme_cover",
      [](const Tree& tree, int k, int j) {
        CoverCertificate cert = scheme_cover(tree, k, j);
        return py::make_tuple(cert.centers, cert.radius);
      },
      py::arg("tree"), py::arg("k"), py::arg("j"));
  m.def(
      "scheme_upper_bound",
      [](const Tree& tree) {
        const SchemeBound bound = scheme_upper_bound(tree);
        return py::make_tuple(bound.bound, bound.k_used, bound.j_used);
      },
      py::arg("tree"));
  m.def(
      "pair_lower_bound",
      [](const Tree& tree, std::int64_t pair_cap) -> py::object {
        const PairLowerBound lb = pair_lower_bound(tree, pair_cap);
        if (!lb.certificate) return py::make_tuple(lb.k, py::none());
        const LowerBoundCertificate& cert = *lb.certificate;
        return py::make_tuple(
            lb.k, py::dict(py::arg("k") = cert.k, py::arg("q_value") = cert.q_value,
                           py::arg("threshold") = cert.threshold));
      },
      py::arg("tree"), py::arg("pair_cap") = kDefaultPairCap);
  m.def(
      "known_bounds",
      [](std::int64_t n) {
        const KnownBounds kb = known_bounds(n);
        return py::dict(py::arg("dfs_cycle") = kb.dfs_cycle, py::arg("bessy") = kb.bessy,
                        py::arg("land_lu") = kb.land_lu, py::arg("bastide") = kb.bastide);
      },
      py::arg("n"));

  m.def(
      "pair_counts",
      [](const Tree& tree, std::int64_t pair_cap) {
        const PairCountProfile profile = pair_counts(tree, pair_cap);
        return py::make_tuple(profile.p, profile.q_prefix);
      },
      py::arg("tree"), py::arg("pair_cap") = kDefaultPairCap,
      "Returns (P, Q) arrays indexed by distance 0..diameter.");
  m.def("borel_pmf", &borel_pmf, py::arg("s"));
  m.def("llt_size_asymptote", &llt_size_asymptote, py::arg("dist"), py::arg("s"));
  m.def("llt_sum_asymptote", &llt_sum_asymptote, py::arg("dist"), py::arg("s"),
        py::arg("m"));
  m.def(
      "estimate_height_tail",
      [](const OffspringDistribution& dist, const std::vector<int>& k_values,
         std::int64_t trials, std::int64_t size_cap, std::uint64_t seed, int workers) {
        std::vector<py::tuple> rows;
        for (const TailRow& row :
             estimate_height_tail(dist, k_values, trials, size_cap, seed, workers)) {
          rows.push_back(py::make_tuple(row.k, row.estimate, row.std_error));
        }
        return rows;
      },
      py::arg("dist"), py::arg("k_values"), py::arg("trials"),
      py::arg("size_cap") = 1000000, py::arg("seed") = 1, py::arg("workers") = 1);
  m.def(
      "estimate_pair_ratio",
      [](const OffspringDistribution& dist, std::int64_t n, int i_max, std::int64_t trials,
         std::uint64_t seed, int workers) {
        std::vector<py::tuple> rows;
        for (const RatioRow& row :
             estimate_pair_ratio(dist, n, i_max, trials, seed, workers)) {
          rows.push_back(py::make_tuple(row.i, row.estimate, row.std_error));
        }
        return rows;
      },
      py::arg("dist"), py::arg("n"), py::arg("i_max"), py::arg("trials"),
      py::arg("seed") = 1, py::arg("workers") = 1);

#ifdef GWBURN_VERSION
  m.attr("__version__") = GWBURN_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
