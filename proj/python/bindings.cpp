// Copyright 2026 The semiphi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sstream>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "semiphi/cli.hpp"
#include "semiphi/error.hpp"
#include "semiphi/paulsen.hpp"

namespace py = pybind11;
using namespace semiphi;

PYBIND11_MODULE(_semiphi, m) {
  m.doc() = "Completely positive maps, semi-phi maps on Hilbert C*-modules and "
            "their extensions";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::class_<ToleranceProfile>(m, "ToleranceProfile")
      .def(py::init([](double abs_tol, double rel_tol) {
             ToleranceProfile t{abs_tol, rel_tol};
             t.validate();
             return t;
           }),
           py::arg("abs_tol") = 1e-9, py::arg("rel_tol") = 1e-9)
      .def_readwrite("abs_tol", &ToleranceProfile::abs_tol)
      .def_readwrite("rel_tol", &ToleranceProfile::rel_tol);

  py::class_<PsdReport>(m, "PsdReport")
      .def_readonly("psd", &PsdReport::psd)
      .def_readonly("min_eigenvalue", &PsdReport::min_eigenvalue)
      .def_readonly("threshold", &PsdReport::threshold)
      .def("__bool__", [](const PsdReport& r) { return r.psd; });
  m.def("is_psd",
        [](const ComplexMatrix& a, const ToleranceProfile& tol) { return is_psd(a, tol); },
        py::arg("matrix"), py::arg("tol") = ToleranceProfile{});

  py::class_<BlockAlgebra>(m, "BlockAlgebra")
      .def(py::init<std::vector<Eigen::Index>>(), py::arg("blocks"))
      .def_property_readonly("blocks", &BlockAlgebra::blocks)
      .def_property_readonly("ambient_dim", &BlockAlgebra::ambient_dim)
      .def_property_readonly("dimension", &BlockAlgebra::dimension);

  py::class_<ConcreteModule>(m, "ConcreteModule")
      .def(py::init<BlockAlgebra, Eigen::Index, std::vector<ComplexMatrix>>(),
           py::arg("algebra"), py::arg("row_dim"), py::arg("basis"))
      .def_property_readonly("algebra", &ConcreteModule::algebra)
      .def_property_readonly("row_dim", &ConcreteModule::row_dim)
      .def_property_readonly("dimension", &ConcreteModule::dimension)
      .def_property_readonly("basis", &ConcreteModule::basis);

  py::class_<CPMap>(m, "CPMap")
      .def(py::init<BlockAlgebra, Eigen::Index, std::vector<ComplexMatrix>>(),
           py::arg("domain"), py::arg("target_dim"), py::arg("values_on_units"))
      .def_static("identity", &CPMap::identity)
      .def_static("trace", &CPMap::trace)
      .def_static("transpose", &CPMap::transpose)
      .def_static("from_kraus",
                  [](const BlockAlgebra& a, const std::vector<ComplexMatrix>& k) {
                    return CPMap::from_kraus(a, k);
                  })
      .def_property_readonly("target_dim", &CPMap::target_dim)
      .def_property_readonly("values", &CPMap::values)
      .def("apply", [](const CPMap& phi, const ComplexMatrix& a) { return phi.apply(a); });

  py::class_<CpReport>(m, "CpReport")
      .def_readonly("completely_positive", &CpReport::completely_positive)
      .def_readonly("margin", &CpReport::margin)
      .def("__bool__", [](const CpReport& r) { return r.completely_positive; });
  m.def("choi", [](const CPMap& phi) { return choi(phi); });
  m.def("is_completely_positive",
        [](const CPMap& phi, const ToleranceProfile& tol) {
          return is_completely_positive(phi, tol);
        },
        py::arg("phi"), py::arg("tol") = ToleranceProfile{});

  py::class_<StinespringDilation>(m, "StinespringDilation")
      .def_readonly("kraus", &StinespringDilation::kraus)
      .def_readonly("rank", &StinespringDilation::rank)
      .def_readonly("isometry", &StinespringDilation::isometry)
      .def_readonly("reconstruction_error", &StinespringDilation::reconstruction_error);
  py::register_exception<NotCompletelyPositive>(m, "NotCompletelyPositive",
                                                PyExc_ValueError);
  m.def("stinespring", [](const CPMap& phi) { return stinespring(phi); });

  py::class_<ModuleMap>(m, "ModuleMap")
      .def(py::init<ConcreteModule, Eigen::Index, Eigen::Index, std::vector<ComplexMatrix>>(),
           py::arg("domain"), py::arg("h1_dim"), py::arg("h2_dim"), py::arg("values"))
      .def_property_readonly("domain", &ModuleMap::domain)
      .def_property_readonly("h1_dim", &ModuleMap::h1_dim)
      .def_property_readonly("h2_dim", &ModuleMap::h2_dim)
      .def_property_readonly("values", &ModuleMap::values)
      .def("evaluate", [](const ModuleMap& f, const ComplexMatrix& x) { return f.evaluate(x); });

  py::class_<PhiMapReport>(m, "PhiMapReport")
      .def_readonly("holds", &PhiMapReport::holds)
      .def_readonly("worst_deviation", &PhiMapReport::worst_deviation)
      .def("__bool__", [](const PhiMapReport& r) { return r.holds; });
  m.def("is_phi_map", [](const ModuleMap& f, const CPMap& phi) { return is_phi_map(f, phi); });

  py::class_<SemiPhiReport>(m, "SemiPhiReport")
      .def_readonly("holds", &SemiPhiReport::holds)
      .def_readonly("margin", &SemiPhiReport::margin)
      .def("__bool__", [](const SemiPhiReport& r) { return r.holds; });
  m.def("is_completely_semi_phi",
        [](const ModuleMap& f, const CPMap& phi) { return is_completely_semi_phi(f, phi); });

  py::class_<SemiPhiWitness>(m, "SemiPhiWitness")
      .def_readonly("elements", &SemiPhiWitness::elements)
      .def_readonly("vectors", &SemiPhiWitness::vectors)
      .def_readonly("lhs", &SemiPhiWitness::lhs)
      .def_readonly("rhs", &SemiPhiWitness::rhs)
      .def_readonly("gap", &SemiPhiWitness::gap);
  m.def("semiphi_witness",
        [](const ModuleMap& f, const CPMap& phi) { return semiphi_witness(f, phi); });

  py::class_<ObstructionReport>(m, "ObstructionReport")
      .def_readonly("vanishes", &ObstructionReport::vanishes)
      .def_readonly("norm", &ObstructionReport::norm);
  m.def("phi_extension_obstruction",
        [](const CPMap& phi, const ConcreteModule& f, const ConcreteModule& e) {
          return phi_extension_obstruction(phi, f, e);
        });

  py::class_<ExtensionResult>(m, "ExtensionResult")
      .def_readonly("phi_prime", &ExtensionResult::phi_prime)
      .def_readonly("complement", &ExtensionResult::complement)
      .def_readonly("projection", &ExtensionResult::projection)
      .def_readonly("contraction", &ExtensionResult::contraction)
      .def_property_readonly("certified",
                             [](const ExtensionResult& r) { return r.report.certified; })
      .def_property_readonly("restriction_error", [](const ExtensionResult& r) {
        return r.report.restriction_error;
      });
  m.def("extend_semi_phi",
        [](const ModuleMap& f, const ConcreteModule& e, const CPMap& phi) {
          return extend_semi_phi(f, e, phi);
        },
        py::arg("Phi"), py::arg("E"), py::arg("phi"));

  py::class_<SystemMap>(m, "SystemMap")
      .def("apply", [](const SystemMap& s, const ComplexMatrix& x) { return s.apply(x); })
      .def_readonly("action", &SystemMap::action);
  m.def("block_map",
        [](const ModuleMap& f, const CPMap& phi) { return block_map(f, phi); });
  m.def("is_cp_system_map", [](const SystemMap& s) {
    return is_cp_system_map(s).completely_positive;
  });
  m.def("example_3_4_map", &example_3_4_map, py::arg("h_dim"));

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int code = cli::run(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
