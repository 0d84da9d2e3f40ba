// Copyright 2026 The Strahler Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Python bindings. Exact values cross the boundary as fractions.Fraction.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "strahler/acceptance.hpp"
#include "strahler/errors.hpp"
#include "strahler/exact.hpp"
#include "strahler/hypergeom.hpp"
#include "strahler/moments.hpp"
#include "strahler/montecarlo.hpp"
#include "strahler/tree.hpp"

namespace py = pybind11;
using strahler::Rational;

namespace {

py::object to_fraction(const Rational& q) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  py::object num = py::int_(py::str(q.get_num().get_str()));
  py::object den = py::int_(py::str(q.get_den().get_str()));
  return fraction(num, den);
}

Rational from_python(const py::object& v) {
  // Accepts int, Fraction, or anything with numerator/denominator.
  const std::string num = py::str(v.attr("numerator"));
  const std::string den = py::str(v.attr("denominator"));
  return strahler::parse_rational(num + "/" + den);
}

py::dict dist_to_dict(const strahler::ExactDist& d) {
  py::dict out;
  for (const auto& [v, p] : d.atoms()) out[to_fraction(v)] = to_fraction(p);
  return out;
}

py::dict summary_to_dict(const strahler::McSummary& s) {
  py::dict d;
  d["kind"] = s.kind.type_name();
  d["q"] = s.kind.q;
  d["r"] = s.kind.r;
  d["n"] = s.n;
  d["samples"] = s.count;
  d["mean"] = s.mean;
  d["variance"] = s.variance;
  d["m3"] = s.m3;
  d["m4"] = s.m4;
  d["ks"] = s.ks_distance;
  d["zero_freq"] = s.zero_ratio_frequency;
  d["predicted_variance"] = to_fraction(s.predicted_variance);
  if (s.histogram) {
    d["hist_edges"] = s.histogram->edges;
    d["hist_counts"] = s.histogram->counts;
  }
  return d;
}

strahler::CltKind make_kind(const std::string& kind, int q, int r) {
  if (kind == "count") return strahler::CltKind::count(r);
  if (kind == "ratio") return strahler::CltKind::ratio(q, r);
  throw strahler::DomainError("kind must be 'ratio' or 'count'");
}

}  // namespace

PYBIND11_MODULE(_strahler, m) {
  m.doc() = "Horton-Strahler branch statistics of uniform random binary trees";

  py::register_exception<strahler::DomainError>(m, "DomainError",
                                                PyExc_ValueError);
  py::register_exception<strahler::StructuralError>(m, "StructuralError",
                                                    PyExc_ValueError);

  m.def("catalan_count",
        [](int n) { return py::int_(py::str(strahler::catalan_count(n).get_str())); },
        py::arg("n"));
  m.def("enumerate_trees",
        [](int n, int cap) {
          std::vector<std::string> out;
          for (const auto& t : strahler::enumerate_trees(n, cap)) {
            out.push_back(t.to_parens());
          }
          return out;
        },
        py::arg("n"), py::arg("cap") = strahler::kDefaultEnumerationCap,
        "Every tree with n leaves, as parenthesized strings.");
  m.def("branch_counts",
        [](const std::string& parens) {
          return strahler::strahler(strahler::Tree::from_parens(parens)).counts;
        },
        py::arg("tree"), "Branch counts S_1..S_R of a parenthesized tree.");
  m.def("sample_trees",
        [](std::size_t n, std::size_t count, std::uint64_t seed) {
          strahler::Rng rng = strahler::worker_rng(seed, 0);
          strahler::RemySampler sampler;
          std::vector<std::string> out;
          for (std::size_t i = 0; i < count; ++i) {
            out.push_back(sampler.sample(n, rng).to_parens());
          }
          return out;
        },
        py::arg("n"), py::arg("count"), py::arg("seed"));

  m.def("transition_prob",
        [](int n, int mm) { return to_fraction(strahler::transition_prob(n, mm)); },
        py::arg("n"), py::arg("m"));
  m.def("dist_S", [](int r, int n) { return dist_to_dict(strahler::dist_S(r, n)); },
        py::arg("r"), py::arg("n"));
  m.def("dist_ratio",
        [](int q, int r, int n) {
          return dist_to_dict(strahler::dist_ratio(q, r, n));
        },
        py::arg("q"), py::arg("r"), py::arg("n"));
  m.def("dist_S_float", &strahler::dist_S_float, py::arg("r"), py::arg("n"));

  m.def("moment",
        [](const std::string& kind, int k, int n, int l) {
          strahler::MomentTable table;
          return to_fraction(
              table.get(strahler::parse_moment_kind(kind), k, l, n));
        },
        py::arg("kind"), py::arg("k"), py::arg("n"), py::arg("l") = 0,
        "Exact moment of S_2: kind is raw, central, negative or mixed.");
  m.def("moment_float",
        [](const std::string& kind, int k, int n, int l) {
          return strahler::moment_float(strahler::parse_moment_kind(kind), k,
                                        l, n);
        },
        py::arg("kind"), py::arg("k"), py::arg("n"), py::arg("l") = 0);
  m.def("negative_recurrence_residual",
        [](int k, int n) {
          return to_fraction(strahler::check_prop2_recurrence(k, n));
        },
        py::arg("k"), py::arg("n"));

  m.def("mgf_hypergeometric",
        [](int n, const py::object& x) {
          return to_fraction(strahler::mgf_s2_hypergeometric(n, from_python(x)));
        },
        py::arg("n"), py::arg("x"));
  m.def("mgf_direct",
        [](int n, const py::object& x) {
          return to_fraction(strahler::mgf_s2_direct(n, from_python(x)));
        },
        py::arg("n"), py::arg("x"));
  m.def("mgf", &strahler::mgf_s2, py::arg("n"), py::arg("t"),
        "Float MGF of S_2 at t.");
  m.def("derivative_identity_residual",
        [](int n, const py::object& x) {
          return to_fraction(
              strahler::check_derivative_identity(n, from_python(x)));
        },
        py::arg("n"), py::arg("x"));

  m.def("predicted_variance",
        [](const std::string& kind, int q, int r) {
          return to_fraction(strahler::predicted_variance(make_kind(kind, q, r)));
        },
        py::arg("kind"), py::arg("q") = 1, py::arg("r") = 1);
  m.def("run_experiment",
        [](const std::string& kind, int q, int r, std::size_t n,
           std::size_t samples, std::uint64_t seed, unsigned workers,
           std::size_t hist_bins) {
          strahler::McSummary s;
          {
            py::gil_scoped_release release;
            s = strahler::run_experiment(
                {make_kind(kind, q, r), n, samples, seed, workers, hist_bins});
          }
          return summary_to_dict(s);
        },
        py::arg("kind"), py::arg("q") = 1, py::arg("r") = 1, py::arg("n"),
        py::arg("samples"), py::arg("seed"), py::arg("workers") = 1,
        py::arg("hist_bins") = 0);
  m.def("horton_check",
        [](std::vector<int> orders, std::size_t n, std::size_t samples,
           std::uint64_t seed, unsigned workers, double tolerance) {
          std::vector<strahler::HortonResult> res;
          {
            py::gil_scoped_release release;
            res = strahler::horton_check(orders, n, samples, seed, workers,
                                         tolerance);
          }
          py::dict out;
          for (const auto& h : res) out[py::int_(h.r)] = h.frequency;
          return out;
        },
        py::arg("orders"), py::arg("n"), py::arg("samples"), py::arg("seed"),
        py::arg("workers") = 1, py::arg("tolerance") = 0.05);

  m.def("verify_all",
        [](bool skip_mc) {
          std::ostringstream sink;
          strahler::AcceptanceOptions opts;
          opts.skip_mc = skip_mc;
          strahler::AcceptanceReport report;
          {
            py::gil_scoped_release release;
            report = strahler::run_acceptance(opts, sink);
          }
          py::list out;
          for (const auto& r : report.results) {
            py::dict d;
            d["id"] = r.id;
            d["title"] = r.title;
            d["status"] = r.skipped ? "SKIP" : (r.passed ? "PASS" : "FAIL");
            d["detail"] = r.detail;
            out.append(d);
          }
          return out;
        },
        py::arg("skip_mc") = true);
}
