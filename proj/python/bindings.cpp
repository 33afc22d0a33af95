#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ceresa/certifier.hpp"
#include "ceresa/errors.hpp"
#include "ceresa/heegner.hpp"
#include "ceresa/ops.hpp"

namespace py = pybind11;
using namespace ceresa;

// Documents cross the boundary as JSON text; the package parses them.
namespace {

NewformClient make_client(const std::optional<std::string>& config,
                          const std::optional<std::string>& fixtures_dir) {
  auto cfg = ClientConfig::load(config);
  if (fixtures_dir) cfg.fixtures_dir = *fixtures_dir;
  return NewformClient(cfg);
}

FetchMode mode_of(bool online) { return online ? FetchMode::Online : FetchMode::Offline; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Heegner divisors, special-divisor pullbacks and cycle certificates for X_N";

  auto base = py::register_exception<Error>(m, "CeresaError", PyExc_RuntimeError);
  auto invalid = py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<CongruenceError>(m, "CongruenceError", invalid.ptr());
  py::register_exception<ResourceLimit>(m, "ResourceLimit", base.ptr());
  py::register_exception<TransientError>(m, "TransientError", base.ptr());
  py::register_exception<DataUnavailable>(m, "DataUnavailable", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  m.def("hurwitz_class_number",
        [](std::int64_t n) { return to_string(hurwitz_class_number(n)); }, py::arg("n"));
  m.def("bound_B", [] { return to_string(bound_B()); });

  m.def(
      "heegner",
      [](std::int64_t N, std::int64_t D, std::optional<std::int64_t> r) {
        return heegner_report(N, D, r).dump();
      },
      py::arg("N"), py::arg("D"), py::arg("r") = py::none());
  m.def(
      "pullback",
      [](std::int64_t N, const std::string& m0, std::int64_t r1) {
        return pullback_report(N, m0, r1).dump();
      },
      py::arg("N"), py::arg("m0"), py::arg("r1"));
  m.def(
      "genus", [](std::int64_t N, const std::string& curve) { return genus_report(N, curve).dump(); },
      py::arg("N"), py::arg("curve") = "xn");
  m.def(
      "lattice", [](std::int64_t N) { return lattice_report(N).dump(); }, py::arg("N"));
  m.def(
      "newforms",
      [](std::int64_t M, bool online, std::optional<std::string> config,
         std::optional<std::string> fixtures_dir) {
        auto client = make_client(config, fixtures_dir);
        py::gil_scoped_release release;
        return newforms_report(client, M, mode_of(online)).dump();
      },
      py::arg("M"), py::arg("online") = false, py::arg("config") = py::none(),
      py::arg("fixtures_dir") = py::none());
  m.def(
      "certify",
      [](const std::string& N, bool newforms, bool online, std::optional<std::string> config,
         std::optional<std::string> fixtures_dir) {
        auto client = make_client(config, fixtures_dir);
        std::optional<NewformSource> source;
        if (newforms) source = NewformSource{&client, mode_of(online)};
        py::gil_scoped_release release;
        return certify_report(N, source).dump();
      },
      py::arg("N"), py::arg("newforms") = true, py::arg("online") = false,
      py::arg("config") = py::none(), py::arg("fixtures_dir") = py::none());
  m.def("selftest", [] {
    py::gil_scoped_release release;
    return selftest_report().dump();
  });
}
