// Python bindings: homology pipelines, oracles, the witness, Smith form and
// the batch job runner.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "gammahc/bar_oracle.hpp"
#include "gammahc/crystalline.hpp"
#include "gammahc/error.hpp"
#include "gammahc/gamma_forms.hpp"
#include "gammahc/job.hpp"
#include "gammahc/linalg.hpp"

namespace py = pybind11;
using namespace gammahc;

namespace {

py::object to_py(const Integer& n) { return py::int_(py::str(n.get_str())); }

py::dict group_dict(const HomologyGroup& g, const GroundRing& k) {
  py::list torsion;
  for (const auto& d : g.invariant_factors) torsion.append(to_py(d));
  py::dict out;
  out["free_rank"] = g.free_rank;
  out["torsion"] = torsion;
  out["text"] = g.to_string(k);
  return out;
}

py::list groups_list(const std::vector<HomologyGroup>& gs, const GroundRing& k) {
  py::list out;
  for (const auto& g : gs) out.append(group_dict(g, k));
  return out;
}

py::dict filtered_dict(const FilteredGroups& f, const GroundRing& k) {
  py::list layers;
  for (const auto& per_degree : f.layers) {
    py::dict d;
    for (const auto& [l, g] : per_degree) d[py::int_(l)] = group_dict(g, k);
    layers.append(d);
  }
  py::dict out;
  out["total"] = groups_list(f.total, k);
  out["layers"] = layers;
  return out;
}

Presentation presentation(const std::string& ring, const std::vector<std::string>& vars,
                          const std::vector<std::string>& rels) {
  return Presentation::parse(GroundRing::parse(ring), vars, rels);
}

SparseMatrix from_rows(const std::vector<std::vector<py::int_>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  SparseMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw DimensionMismatch("rows of unequal length");
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, Scalar(Integer(py::str(rows[i][j]).cast<std::string>())));
  }
  return m;
}

py::list to_rows(const SparseMatrix& m) {
  py::list out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    py::list row;
    for (std::size_t j = 0; j < m.cols(); ++j) row.append(to_py(m.get(i, j).get_num()));
    out.append(row);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Hochschild and cyclic homology of quotients of polynomial rings";

  static py::exception<Error> error(m, "GammaError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  using Strings = std::vector<std::string>;

  m.def(
      "hochschild",
      [](const std::string& ring, const Strings& vars, const Strings& rels, int n_max, std::optional<int> bound) {
        const auto p = presentation(ring, vars, rels);
        std::vector<HomologyGroup> groups;
        {
          py::gil_scoped_release release;
          groups = hh_assemble(build_gamma_forms(p, n_max, bound), n_max);
        }
        return groups_list(groups, p.ring());
      },
      py::arg("ring"), py::arg("variables"), py::arg("relations"), py::arg("n_max") = 3,
      py::arg("bound") = py::none(), "HH_0..HH_n_max from the divided power forms model");

  m.def(
      "cyclic",
      [](const std::string& ring, const Strings& vars, const Strings& rels, int n_max, std::optional<int> bound) {
        const auto p = presentation(ring, vars, rels);
        FilteredGroups f;
        {
          py::gil_scoped_release release;
          f = hc_assemble(build_gamma_forms(p, n_max, bound), n_max);
        }
        return filtered_dict(f, p.ring());
      },
      py::arg("ring"), py::arg("variables"), py::arg("relations"), py::arg("n_max") = 3,
      py::arg("bound") = py::none(), "HC_0..HC_n_max with their filtration layers");

  m.def(
      "hodge_layers",
      [](const std::string& ring, const Strings& vars, const Strings& rels, int n_max) {
        const auto p = presentation(ring, vars, rels);
        return filtered_dict(hodge_hh(Envelope(p), n_max), p.ring());
      },
      py::arg("ring"), py::arg("variables"), py::arg("relations"), py::arg("n_max") = 3,
      "HH with its layers computed from the divided power envelope");

  m.def(
      "oracle_hochschild",
      [](const std::string& ring, const Strings& vars, const Strings& rels, int n_max) {
        const auto p = presentation(ring, vars, rels);
        return groups_list(hh_oracle(FiniteAlgebra::from_presentation(p), n_max), p.ring());
      },
      py::arg("ring"), py::arg("variables"), py::arg("relations"), py::arg("n_max") = 3,
      "HH from the normalized bar complex of a finite free algebra");

  m.def(
      "oracle_cyclic",
      [](const std::string& ring, const Strings& vars, const Strings& rels, int n_max) {
        const auto p = presentation(ring, vars, rels);
        return groups_list(hc_oracle(FiniteAlgebra::from_presentation(p), n_max), p.ring());
      },
      py::arg("ring"), py::arg("variables"), py::arg("relations"), py::arg("n_max") = 3,
      "HC from Connes' bicomplex of a finite free algebra");

  m.def(
      "witness",
      [](const std::string& ring, int p, bool require_non_unit) {
        const auto r = witness_nondegeneracy(GroundRing::parse(ring), p, require_non_unit);
        py::dict out;
        out["ring"] = r.ring;
        out["p"] = r.p;
        out["cycle"] = r.cycle;
        out["boundary"] = r.boundary;
        out["delta_beta_is_minus_p_gamma"] = r.delta_beta_is_minus_p_gamma;
        out["gamma"] = r.gamma;
        out["beta"] = r.beta;
        out["preimage"] = r.preimage ? py::object(py::str(*r.preimage)) : py::object(py::none());
        return out;
      },
      py::arg("ring"), py::arg("p"), py::arg("require_non_unit") = true,
      "Checks that gamma^p(dy) is a non-bounding cycle in the resolution of k/(p)");

  m.def(
      "smith",
      [](const std::vector<std::vector<py::int_>>& rows) {
        const auto f = snf(from_rows(rows));
        return py::make_tuple(to_rows(f.U), to_rows(f.S), to_rows(f.V));
      },
      py::arg("matrix"), "Smith normal form (U, S, V) with S = U M V");

  m.def(
      "run_job",
      [](const std::string& text, const std::string& command, int n_max, std::uint64_t seed) {
        JobResult r;
        {
          py::gil_scoped_release release;
          r = run_text(text, command, n_max, seed);
        }
        return py::make_tuple(r.json, r.exit_code);
      },
      py::arg("text"), py::arg("command") = "", py::arg("n_max") = -1, py::arg("seed") = 1,
      "Runs a batch job; returns (json text, exit code)");
}
