// python bindings for the main operations; thin wrappers, dict results

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bethe/perturbation.hpp"
#include "bethe/radial.hpp"
#include "bethe/spectrum.hpp"
#include "bethe/sumrules.hpp"
#include "bethe/traces.hpp"

namespace py = pybind11;
using namespace bethe;

namespace {

Vertex vertex_arg(int depth, std::uint64_t index) {
  if (depth < 0 || index < 1 || index > shell_size(depth))
    throw std::invalid_argument("vertex out of range");
  return {depth, index};
}

}  // namespace

PYBIND11_MODULE(pybethe, m) {
  m.doc() =
      "Schrodinger operators on the rooted binary tree: determinants, "
      "eigenvalue ledgers, trace identities, radial reduction";

  py::class_<Potential>(m, "Potential")
      .def(py::init<>())
      .def_static("radial",
                  [](const std::vector<double>& p) {
                    return Potential::radial(p);
                  },
                  py::arg("profile"))
      .def_static("random_ball", &Potential::random_ball, py::arg("seed"),
                  py::arg("depth"), py::arg("amplitude"),
                  py::arg("decay") = 0.0)
      .def("set",
           [](Potential& v, int depth, std::uint64_t index, double value) {
             v.set(vertex_arg(depth, index), value);
           })
      .def("at",
           [](const Potential& v, int depth, std::uint64_t index) {
             return v.at(vertex_arg(depth, index));
           })
      .def("support_depth", &Potential::support_depth)
      .def("is_radial", &Potential::is_radial)
      .def("canonical_key", &Potential::canonical_key)
      .def("__len__", &Potential::size);

  m.def("band_edge", [] { return kBandEdge; });
  m.def("z_of_zeta", &z_of_zeta, py::arg("zeta"));
  m.def("zeta_of_z", &zeta_of_z, py::arg("z"));

  m.def(
      "det_l",
      [](const Potential& v, int depth, std::uint64_t index, Complex zeta) {
        return det_L(v, vertex_arg(depth, index), zeta);
      },
      py::arg("v"), py::arg("depth"), py::arg("index"), py::arg("zeta"),
      "perturbation determinant of the subtree rooted at (depth, index)");

  m.def(
      "m_function",
      [](const Potential& v, Complex zeta) { return m_function(v, zeta).M; },
      py::arg("v"), py::arg("zeta"),
      "root Green value M(zeta) = -m(zeta) for the full tree operator");

  m.def(
      "eigen_ledger",
      [](const Potential& v) {
        py::list out;
        for (const auto& e : eigen_zeta(v).entries) {
          py::dict d;
          d["zeta"] = e.zeta;
          d["x"] = e.x;
          d["mult"] = e.mult;
          d["low_confidence"] = e.low_confidence;
          out.append(d);
        }
        return out;
      },
      py::arg("v"), "eigenvalues outside the band, with multiplicities");

  m.def(
      "fourier_identity",
      [](const Potential& v, int n) {
        const SumRuleReport r = fourier_identity(v, root_vertex(), n, {});
        py::dict d;
        d["lhs"] = r.lhs;
        d["rhs"] = r.rhs;
        d["residual"] = r.residual;
        d["nodes"] = r.nodes_used;
        return d;
      },
      py::arg("v"), py::arg("n"));

  m.def(
      "combined_identity",
      [](const Potential& v, int two_p) {
        const SumRuleReport r =
            combined_identity(v, root_vertex(), sin_power_weight(two_p), {});
        py::dict d;
        d["lhs"] = r.lhs;
        d["rhs"] = r.rhs;
        d["residual"] = r.residual;
        return d;
      },
      py::arg("v"), py::arg("two_p") = 4);

  m.def(
      "ledger_inequality",
      [](const Potential& v, int truncation, int two_p) {
        const LedgerReport r =
            ledger_inequality(v, truncation, sin_power_weight(two_p), {});
        py::dict d;
        d["lhs"] = r.lhs;
        d["rhs"] = r.rhs;
        d["slack"] = r.slack;
        d["entropy"] = r.entropy;
        return d;
      },
      py::arg("v"), py::arg("truncation") = 4, py::arg("two_p") = 4);

  m.def(
      "main_lemma_check",
      [](const Potential& v, int depth, std::uint64_t index, Complex zeta) {
        const MainLemmaCheck c =
            main_lemma_check(v, vertex_arg(depth, index), zeta);
        py::dict d;
        d["kappa"] = c.kappa;
        d["residual"] = c.residual;
        d["degenerate"] = c.degenerate;
        return d;
      },
      py::arg("v"), py::arg("depth"), py::arg("index"), py::arg("zeta"));

  m.def(
      "cheb_trace_diff",
      [](const Potential& v, int k) {
        return cheb_trace_diff(v, root_vertex(), k).value;
      },
      py::arg("v"), py::arg("k"),
      "tr[T_k(H_V/sqrt2) - T_k(H_0/sqrt2)] on the full tree");

  m.def(
      "hypothesis_sums",
      [](const Potential& v, int two_p, int depth_cap, int delta_start) {
        const HypothesisSums h =
            hypothesis_sums(v, two_p, depth_cap, delta_start);
        py::dict d;
        d["power"] = h.power;
        d["diff"] = h.diff;
        return d;
      },
      py::arg("v"), py::arg("two_p") = 4, py::arg("depth_cap") = 6,
      py::arg("delta_start") = 2);

  m.def(
      "jacobi_compare",
      [](const std::vector<double>& profile, Complex z) {
        std::vector<double> jd;
        for (const double v : profile) jd.push_back(v / kSqrt2);
        const Potential v = Potential::radial(profile);
        const Complex m_tree = -m_function(v, zeta_of_z(z)).M;
        const Complex m_line = m_jacobi(jd, z / kSqrt2) / kSqrt2;
        py::dict d;
        d["m_tree"] = m_tree;
        d["m_line"] = m_line;
        d["diff"] = std::abs(m_tree - m_line);
        return d;
      },
      py::arg("profile"), py::arg("z"),
      "radial tree Green value against the half-line Jacobi reduction");

  m.def(
      "conjecture_form",
      [](const std::vector<double>& poly, const Potential& v, int depth) {
        const ConjectureReport r = conjecture_form(poly, v, depth);
        py::dict d;
        d["qform"] = r.qform;
        d["a1_value"] = r.a1_value;
        d["a1_target"] = r.a1_target;
        d["check_a1"] = r.check_a1;
        d["ax2m4_value"] = r.ax2m4_value;
        d["ax2m4_target"] = r.ax2m4_target;
        d["check_ax2m4"] = r.check_ax2m4;
        return d;
      },
      py::arg("poly"), py::arg("v"), py::arg("depth"));
}
