// Python bindings (module pqs._pqs). The pure-Python package wraps these.

#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pqs/classify.hpp"
#include "pqs/covers.hpp"
#include "pqs/pi1.hpp"
#include "pqs/snf.hpp"

namespace py = pybind11;
using namespace pqs;

namespace {

struct Group {
  GroupCatalog::GroupPtr ptr;
  const FiniteGroup& operator*() const { return *ptr; }
};

py::object fraction(const Rational& q) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(q.numerator(), q.denominator());
}

py::int_ to_py(const mpz_class& z) { return py::int_(py::str(z.get_str())); }

mpz_class from_py(const py::handle& h) { return mpz_class(py::str(h).cast<std::string>()); }

std::vector<Elem> checked_branch(const FiniteGroup& g, const std::vector<Elem>& branch) {
  for (Elem e : branch) {
    if (e >= static_cast<Elem>(g.order())) throw py::index_error("element index out of range");
  }
  return branch;
}

GeneratingVector as_vector(const FiniteGroup& g, const std::vector<Elem>& branch) {
  std::vector<int> m;
  for (Elem e : checked_branch(g, branch)) m.push_back(g.element_order(e));
  std::vector<int> sorted = m;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != m) throw py::value_error("branch element orders must be nondecreasing");
  const Signature sig(0, m);
  if (!is_generating_vector(g, sig, {}, branch)) throw py::value_error("not a generating vector");
  return {&g, sig, {}, branch};
}

py::dict record_dict(const ClassificationRecord& r) {
  py::dict d;
  d["k2"] = r.k2;
  d["basket"] = r.basket;
  d["t1"] = r.t1;
  d["t2"] = r.t2;
  d["group"] = py::make_tuple(r.group.order, r.group.index);
  d["group_name"] = r.group_name;
  d["n"] = r.n_families ? py::cast(*r.n_families) : py::none();
  d["h1"] = r.h1;
  d["flags"] = r.flags;
  d["line"] = r.to_line();
  return d;
}

py::list matrix_to_py(const IntMatrix& m) {
  py::list out;
  for (const auto& row : m) {
    py::list r;
    for (const auto& x : row) r.append(to_py(x));
    out.append(r);
  }
  return out;
}

std::vector<ClassificationRecord> parse_records_text(const std::string& text) {
  std::istringstream in(text);
  return read_records(in);
}

const char* status_name(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::pass: return "pass";
    case VerifyStatus::fail: return "fail";
    case VerifyStatus::unverifiable_mixed: return "unverifiable-mixed";
    case VerifyStatus::unverifiable_missing_group: return "unverifiable-missing-group";
  }
  return "?";
}

}  // namespace

PYBIND11_MODULE(_pqs, m) {
  m.doc() = "Product-quotient surface classification engine";
  m.attr("__version__") = kVersion;
  m.attr("DATA_DIR") = PQS_DATA_DIR;

  py::register_exception<CatalogError>(m, "CatalogError", PyExc_ValueError);
  py::register_exception<RecordError>(m, "RecordError", PyExc_ValueError);
  py::register_exception<BuildingDataError>(m, "BuildingDataError", PyExc_ValueError);
  py::register_exception<ConfigurationError>(m, "ConfigurationError", PyExc_ValueError);

  py::class_<Group>(m, "Group")
      .def_property_readonly("name", [](const Group& g) { return g.ptr->name(); })
      .def_property_readonly("order", [](const Group& g) { return g.ptr->order(); })
      .def_property_readonly("label", [](const Group& g) { return py::make_tuple(g.ptr->label().order, g.ptr->label().index); })
      .def_property_readonly("degree", [](const Group& g) { return g.ptr->degree(); })
      .def("element", [](const Group& g, Elem e) {
        if (e >= static_cast<Elem>(g.ptr->order())) throw py::index_error("element index out of range");
        const auto im = g.ptr->element(e).images();
        return std::vector<int>(im.begin(), im.end());
      }, "0-based images of element e")
      .def("find", [](const Group& g, const std::vector<int>& images) -> std::optional<Elem> {
        if (images.size() != g.ptr->degree()) return std::nullopt;
        std::vector<std::uint16_t> im(images.begin(), images.end());
        return g.ptr->find(Permutation(im));
      })
      .def("element_order", [](const Group& g, Elem e) { return (*g).element_order(e); })
      .def("__repr__", [](const Group& g) { return "<Group " + g.ptr->name() + " " + to_string(g.ptr->label()) + ">"; });

  py::class_<GroupCatalog>(m, "Catalog")
      .def_static("load", [](const std::string& path) { return load_catalog(path); })
      .def_static("parse", [](const std::string& text) { return parse_catalog(text); })
      .def("__len__", [](const GroupCatalog& c) { return c.groups().size(); })
      .def("groups", [](const GroupCatalog& c) {
        std::vector<Group> out;
        for (const auto& g : c.groups()) out.push_back({g});
        return out;
      })
      .def("find", [](const GroupCatalog& c, const std::string& key) -> std::optional<Group> {
        auto g = c.find(key);
        if (!g) return std::nullopt;
        return Group{g};
      }, "look up by label such as 'G(60,5)' or by name")
      .def("subset", [](const GroupCatalog& c, const std::vector<std::string>& keys) {
        GroupCatalog out;
        for (const auto& k : keys) {
          auto g = c.find(k);
          if (!g) throw py::key_error("group '" + k + "' is not in the catalog");
          out.add(g);
        }
        return out;
      }, "catalog of the listed groups, sharing their element numbering");

  m.def("enumerate_vectors", [](const Group& g, const std::string& signature) {
    const auto vs = enumerate_generating_vectors(*g, Signature::parse(signature));
    std::vector<std::vector<Elem>> out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const auto e = vs.entries(i);
      out.emplace_back(e.begin(), e.end());
    }
    return out;
  }, py::arg("group"), py::arg("signature"), py::call_guard<py::gil_scoped_release>());

  m.def("hurwitz_class_count", [](const Group& g, const std::string& signature) {
    return hurwitz_classes(enumerate_generating_vectors(*g, Signature::parse(signature))).count();
  }, py::call_guard<py::gil_scoped_release>());

  m.def("surface_invariants", [](const Group& g, const std::vector<Elem>& v1, const std::vector<Elem>& v2) {
    const auto inv = surface_invariants(*g, checked_branch(*g, v1), checked_branch(*g, v2));
    py::dict d;
    d["g1"] = inv.g1;
    d["g2"] = inv.g2;
    d["kx2"] = fraction(inv.kx2);
    d["ks2"] = fraction(inv.ks2);
    d["euler"] = fraction(inv.euler);
    d["chi"] = fraction(inv.chi);
    d["basket"] = basket_to_string(inv.basket);
    d["free"] = inv.free;
    d["rdp_only"] = inv.rdp_only;
    d["minimality_unverified"] = inv.minimality_unverified;
    return d;
  });

  m.def("first_homology", [](const Group& g, const std::vector<Elem>& v1, const std::vector<Elem>& v2) {
    const auto a = as_vector(*g, v1), b = as_vector(*g, v2);
    py::gil_scoped_release release;
    return first_homology(*g, a, b).to_string();
  }, "H1 of the minimal resolution, for genus-0 branch data");

  m.def("classify", [](const GroupCatalog& catalog, int k2, bool require_free, int jobs, int max_order, int max_r,
                       int max_m) {
    std::vector<ClassificationRecord> recs;
    {
      py::gil_scoped_release release;
      recs = classify(catalog, {k2, {max_order, max_r, max_m}, require_free, jobs});
    }
    py::list out;
    for (const auto& r : recs) out.append(record_dict(r));
    return out;
  }, py::arg("catalog"), py::arg("k2"), py::arg("require_free") = false, py::arg("jobs") = 1,
        py::arg("max_order") = 2000, py::arg("max_r") = 6, py::arg("max_m") = 12);

  m.def("parse_records", [](const std::string& text) {
    py::list out;
    for (const auto& r : parse_records_text(text)) out.append(record_dict(r));
    return out;
  });

  m.def("verify", [](const std::string& fixtures_text, const GroupCatalog& catalog, int jobs) {
    const auto fixtures = parse_records_text(fixtures_text);
    std::vector<VerifyResult> results;
    {
      py::gil_scoped_release release;
      results = verify(fixtures, catalog, jobs);
    }
    py::list out;
    for (const auto& r : results) {
      py::dict d;
      d["status"] = status_name(r.status);
      d["expected"] = record_dict(r.expected);
      d["diffs"] = r.diffs;
      d["text"] = r.to_string();
      out.append(d);
    }
    return out;
  }, py::arg("fixtures_text"), py::arg("catalog"), py::arg("jobs") = 1);

  m.def("hj_expansion", &hj_expansion);
  m.def("resolution_correction", [](int n, int a) { return fraction(resolution_correction(SingularityType(n, a))); });

  m.def("smith_normal_form", [](const py::list& rows) {
    IntMatrix mat;
    for (const auto& row : rows) {
      std::vector<mpz_class> r;
      for (const auto& x : row.cast<py::list>()) r.push_back(from_py(x));
      if (!mat.empty() && r.size() != mat[0].size()) throw py::value_error("ragged matrix");
      mat.push_back(std::move(r));
    }
    const auto f = smith_normal_form(mat);
    return py::make_tuple(matrix_to_py(f.S), matrix_to_py(f.U), matrix_to_py(f.V));
  }, "returns (S, U, V) with U M V = S");

  m.def("check_building_data", [](const std::string& text) {
    const auto bd = parse_building_data(text);
    py::dict d;
    d["lattice"] = bd.lattice.name;
    d["r"] = bd.r;
    d["violations"] = validate_building_data(bd);
    d["irreducible"] = is_cover_irreducible(bd);
    std::vector<std::string> eqs;
    for (const auto& rel : cover_equations(bd)) eqs.push_back(rel.to_string(bd.r));
    d["equations"] = eqs;
    if (bd.r == 1) {
      const auto dc = double_cover_invariants(bd.lattice, bd.lattice.chi, bd.lattice.k_squared(), bd.l[0]);
      d["double_cover"] = py::make_tuple(dc.k2, dc.chi);
    }
    return d;
  });

  m.def("burniat_configuration", [](const std::string& text) {
    const auto c = burniat_configuration(parse_lines(text));
    py::dict d;
    d["m"] = c.m;
    d["k2"] = c.k2;
    d["nodal"] = c.nodal;
    d["classification"] = c.classification;
    return d;
  });
}
