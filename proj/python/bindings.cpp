#include <pybind11/pybind11.h>

#include "dcosets/scenario.hpp"

namespace py = pybind11;

namespace {

dcosets::ScenarioConfig config_from_kwargs(const std::string& g1, const std::string& g2,
                                           int q1, int q2, const std::string& a,
                                           const std::string& c, const std::string& K,
                                           const std::string& L, const std::string& verify,
                                           int section) {
  dcosets::ScenarioConfig cfg;
  cfg.g1 = {g1, q1};
  cfg.g2 = {g2.empty() ? g1 : g2, q2 ? q2 : q1};
  cfg.a = a;
  cfg.c = c;
  cfg.K = K;
  cfg.L = L;
  cfg.verify = verify;
  cfg.section = section;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Double coset classification engine: exact root-system combinatorics "
            "with a finite-field matrix-group oracle.";

  m.def("roots_json", [](const std::string& type) {
    return dcosets::roots_report(type).dump();
  }, py::arg("type"));

  m.def("weyl_json", [](const std::string& type, const std::string& A,
                        const std::string& C) {
    return dcosets::weyl_report(type, A, C).dump();
  }, py::arg("type"), py::arg("A") = "", py::arg("C") = "");

  m.def("isometries_json", [](const std::string& type1, const std::string& type2) {
    return dcosets::isometries_report(type1, type2.empty() ? type1 : type2).dump();
  }, py::arg("type1"), py::arg("type2") = "");

  m.def("classify_json", [](const std::string& type1, const std::string& type2,
                            const std::string& a, const std::string& c) {
    return dcosets::classify_report(type1, type2.empty() ? type1 : type2, a, c).dump();
  }, py::arg("type1"), py::arg("type2") = "", py::arg("a") = "empty",
     py::arg("c") = "empty");

  m.def("run_json", [](const std::string& g1, const std::string& g2, int q1, int q2,
                       const std::string& a, const std::string& c, const std::string& K,
                       const std::string& L, const std::string& verify, int section) {
    return dcosets::run_scenario(config_from_kwargs(g1, g2, q1, q2, a, c, K, L, verify,
                                                    section)).dump();
  }, py::arg("g1"), py::arg("g2") = "", py::arg("q1") = 3, py::arg("q2") = 0,
     py::arg("a") = "empty", py::arg("c") = "empty", py::arg("K") = "graph",
     py::arg("L") = "graph", py::arg("verify") = "all", py::arg("section") = 0);

  m.def("report_tsv", [](const std::string& report_json) {
    return dcosets::report_tsv(nlohmann::json::parse(report_json));
  }, py::arg("report_json"));
}
