#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <tuple>

#include "odlayout/ingest.hpp"
#include "odlayout/scene.hpp"
#include "odlayout/service.hpp"

namespace py = pybind11;

namespace {

std::tuple<int, std::string> call(odl::HttpResponse (*handler)(std::string_view),
                                  const std::string& body) {
  odl::HttpResponse response;
  {
    py::gil_scoped_release release;
    response = handler(body);
  }
  return {response.status, response.body};
}

}  // namespace

PYBIND11_MODULE(_odlayout, m) {
  m.doc() = "Compound graph layout core";

  auto error = py::register_exception<odl::Error>(m, "Error", PyExc_ValueError);
  py::register_exception<odl::ParseError>(m, "ParseError", error.ptr());

  m.def(
      "handle_layout", [](const std::string& body) { return call(&odl::handle_layout, body); },
      py::arg("body"), "POST /layout handler. Returns (status, json body).");
  m.def(
      "handle_validate",
      [](const std::string& body) { return call(&odl::handle_validate, body); }, py::arg("body"),
      "POST /validate handler. Returns (status, json body).");

  m.def(
      "normalize_graph",
      [](const std::string& text, const std::string& format, bool reverse_arrows) {
        auto kind = odl::parse_input_format(format);
        if (!kind) throw py::value_error("format: expected \"generic\" or \"fn\"");
        odl::FunctionNetworkOptions options;
        options.reverse_arrows = reverse_arrows;
        return odl::to_generic_json(odl::parse_graph(text, *kind, options));
      },
      py::arg("text"), py::arg("format") = "generic", py::arg("reverse_arrows") = true,
      "Parse a graph document and return it as generic JSON text.");

  m.def(
      "scene_to_svg",
      [](const std::string& scene_json) { return odl::to_svg(odl::parse_scene(scene_json)); },
      py::arg("scene_json"));
}
