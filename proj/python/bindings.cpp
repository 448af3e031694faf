#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "xcom/check.hpp"
#include "xcom/core.hpp"
#include "xcom/flowgraph.hpp"
#include "xcom/format.hpp"
#include "xcom/interp.hpp"
#include "xcom/prettydoc.hpp"
#include "xcom/secd.hpp"
#include "xcom/translate.hpp"
#include "xcom/vm.hpp"

namespace py = pybind11;

namespace {

xcom::StmtPtr program(const std::string& src) { return xcom::parse_program(src); }

std::string desugar(const std::string& src, const std::string& mode, bool eval) {
  auto p = program(src);
  xcom::core::CorePtr out;
  if (mode == "rt") out = xcom::desugar1_program(*p);
  else if (mode == "static") out = xcom::desugar2_program(*p);
  else throw std::invalid_argument("mode must be 'rt' or 'static'");
  if (!eval) return xcom::core::render(*out);
  return xcom::core::print_value(xcom::core::core_eval(*out));
}

py::dict cfg(const std::string& src, bool reduce) {
  auto g = xcom::flow::from_program(*program(src));
  if (reduce) g = xcom::flow::reduce_fix(g);
  py::list labels;
  for (const auto& n : g.nodes) labels.append(xcom::flow::label_of(n));
  py::dict d;
  d["nodes"] = labels;
  d["edges"] = g.edges.size();
  d["dot"] = xcom::flow::to_dot(g);
  return d;
}

std::vector<std::string> secd_trace(const std::string& src) {
  auto e = xcom::secd::parse_lambda(src);
  auto globals = xcom::secd::builtins_for(*e);
  std::vector<std::string> out;
  for (const auto& st : xcom::secd::trace(e, globals))
    out.push_back(std::string(2 * xcom::secd::depth(st), ' ') + xcom::secd::render_state(st, globals));
  return out;
}

std::string secd_run(const std::string& src) {
  auto e = xcom::secd::parse_lambda(src);
  auto globals = xcom::secd::builtins_for(*e);
  return xcom::secd::render_value(xcom::secd::run(e, globals), globals);
}

py::dict check(std::uint64_t seed, std::size_t count) {
  auto r = xcom::check::run_check(seed, count);
  py::dict d;
  d["count"] = r.count;
  d["agreed"] = r.agreed;
  d["asymmetries"] = r.asymmetries;
  d["divergences"] = r.divergences.size();
  d["stack_verified"] = r.stack_verified;
  d["erasure_clean"] = r.erasure_clean;
  d["summary"] = xcom::check::format_report(r);
  return d;
}

}  // namespace

PYBIND11_MODULE(_xcomkit, m) {
  m.doc() = "XCom toolkit: interpreter, translators, VM, pretty printer, flow graphs, SECD machine";

  static py::exception<xcom::Error> error(m, "XcomError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const xcom::Error& e) {
      py::object exc = py::handle(error.ptr())(e.what());
      exc.attr("kind") = std::string(xcom::kind_name(e.kind()));
      exc.attr("line") = e.location().line;
      exc.attr("column") = e.location().column;
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.def("dump", [](const std::string& src) { return xcom::dump_ast(*program(src)); }, py::arg("source"));
  m.def("ast_json", [](const std::string& src) { return xcom::ast_json(*program(src)); }, py::arg("source"));
  m.def("format", [](const std::string& src, int page, int ribbon) {
          return xcom::format_xcom(*program(src), page, ribbon);
        },
        py::arg("source"), py::arg("page_width") = 80, py::arg("ribbon_width") = 80);
  m.def("run", [](const std::string& src) { return xcom::observe_interp(*program(src)); }, py::arg("source"),
        "Observable (name, value) pairs after running the interpreter.");
  m.def("desugar", &desugar, py::arg("source"), py::arg("mode") = "rt", py::arg("eval") = false);
  m.def("compile", [](const std::string& src) {
          return xcom::vm::listing(xcom::vm::compile_program(*program(src)).code);
        },
        py::arg("source"));
  m.def("exec", [](const std::string& src) { return xcom::vm::observe_vm(*program(src)); }, py::arg("source"));
  m.def("cfg", &cfg, py::arg("source"), py::arg("reduce") = false);
  m.def("secd_run", &secd_run, py::arg("expression"));
  m.def("secd_trace", &secd_trace, py::arg("expression"));
  m.def("pprint_words", [](const std::vector<std::string>& words, int page, int ribbon) {
          using namespace xcom::doc;
          return pprint(alt(line_of(words), stack_of(words)), page, ribbon);
        },
        py::arg("words"), py::arg("page_width") = 80, py::arg("ribbon_width") = 80,
        "Prints the words on one line if they fit, else one per line.");
  m.def("check", &check, py::arg("seed") = 7, py::arg("count") = 200);
}
