#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stv/analysis.hpp"
#include "stv/interp.hpp"
#include "stv/parser.hpp"
#include "stv/prcompile.hpp"
#include "stv/printer.hpp"
#include "stv/stdlib.hpp"
#include "stv/textio.hpp"
#include "stv/tm.hpp"

namespace py = pybind11;
using namespace stv;

namespace {

std::vector<std::pair<char, std::string>> to_alphabet(
    const std::map<std::string, std::string>& alphabet) {
  std::vector<std::pair<char, std::string>> out;
  for (const auto& [c, name] : alphabet) {
    if (c.size() != 1)
      throw Error("alphabet keys must be single characters");
    out.emplace_back(c[0], name);
  }
  return out;
}

struct PyRunResult {
  bool halted;
  uint64_t steps;
  uint64_t max_size;
  PartialStructure final_structure;
};

struct PyCompiledPR {
  FreeAlgebraSignature sig;
  CompiledPR compiled;
  PRDefPtr def;

  std::vector<Term> parse_args(const std::vector<std::string>& args) const {
    std::vector<Term> terms;
    for (const auto& a : args) terms.push_back(parse_algebra_term(sig, a));
    return terms;
  }

  PartialStructure run_args(const std::vector<std::string>& args,
                            std::optional<uint64_t> fuel) const {
    return run_compiled_pr(compiled, sig, parse_args(args), fuel);
  }

  PartialStructure oracle(const std::vector<std::string>& args) const {
    return term_structure(eval_pr(sig, *def, parse_args(args)), *sig.vocab());
  }
};

struct PyCompiledTM {
  TuringTransducer machine;
  CompiledTM compiled;

  std::string run_word(const std::string& w,
                       std::optional<uint64_t> fuel) const {
    PartialStructure in = word_structure(compiled.io_alphabet, compiled.nil, w);
    RunOptions opts;
    opts.fuel = fuel;
    return decode_tm_output(
        compiled, run_transducer(compiled.unit, in, compiled.output_names,
                                 opts));
  }

  std::optional<std::string> oracle(const std::string& w,
                                    uint64_t fuel) const {
    TMResult r = simulate_tm(machine, w, fuel);
    if (r.kind != TMResult::Kind::Printed) return std::nullopt;
    return r.output;
  }
};

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "structure-transformation language toolkit";

  py::register_exception<Error>(m, "StvError");

  py::class_<PartialStructure>(m, "Structure")
      .def_static("parse",
                  [](const std::string& text) { return parse_structure(text); })
      .def("__str__",
           [](const PartialStructure& s) { return structure_to_text(s); })
      .def("canonical",
           [](const PartialStructure& s) { return canonical_form(s); })
      .def("__eq__",
           [](const PartialStructure& a, const PartialStructure& b) {
             return canonical_equal(a, b);
           })
      .def_property_readonly("size", &PartialStructure::size)
      .def_property_readonly("node_count", &PartialStructure::node_count)
      .def("reduct",
           [](const PartialStructure& s, const std::vector<std::string>& names) {
             return s.reduct(names).restrict_accessible();
           })
      .def("rename",
           [](const PartialStructure& s,
              const std::unordered_map<std::string, std::string>& map) {
             return s.rename(map);
           })
      .def_property_readonly("vocabulary", [](const PartialStructure& s) {
        std::vector<std::tuple<std::string, std::string, uint32_t>> out;
        for (const auto& e : s.vocab().entries())
          out.emplace_back(e.name,
                           e.kind == IdKind::Function ? "fn" : "rel", e.arity);
        return out;
      });

  m.def("word", [](const std::string& nil,
                   const std::map<std::string, std::string>& alphabet,
                   const std::string& w) {
    return word_structure(to_alphabet(alphabet), nil, w);
  });
  m.def("decode_word",
        [](const PartialStructure& s, const std::string& nil,
           const std::map<std::string, std::string>& alphabet) {
          return word_decode(s, to_alphabet(alphabet), nil);
        });
  m.def("combine", [](const std::vector<PartialStructure>& parts) {
    return oplus(parts);
  });

  py::class_<ProgramUnit>(m, "Program")
      .def_static("parse",
                  [](const std::string& text) { return parse_program_unit(text); })
      .def("__str__", [](const ProgramUnit& u) { return pretty_print(u); });

  py::class_<PyRunResult>(m, "RunResult")
      .def_readonly("halted", &PyRunResult::halted)
      .def_readonly("steps", &PyRunResult::steps)
      .def_readonly("max_size", &PyRunResult::max_size)
      .def_readonly("structure", &PyRunResult::final_structure);

  m.def(
      "run",
      [](const ProgramUnit& unit, const PartialStructure& input,
         std::optional<uint64_t> fuel) {
        RunOptions opts;
        opts.fuel = fuel;
        Outcome out = run(unit, input, opts);
        return PyRunResult{out.halted, out.trace.steps, out.trace.max_size,
                           out.final_structure};
      },
      py::arg("program"), py::arg("input"), py::arg("fuel") = py::none());

  m.def(
      "run_transducer",
      [](const ProgramUnit& unit, const PartialStructure& input,
         const std::vector<std::string>& output_vocab,
         std::optional<uint64_t> fuel) {
        RunOptions opts;
        opts.fuel = fuel;
        return run_transducer(unit, input, output_vocab, opts);
      },
      py::arg("program"), py::arg("input"), py::arg("output_vocab"),
      py::arg("fuel") = py::none());

  m.def("check", [](const ProgramUnit& unit) {
    StvReport r = check_stv(unit);
    std::vector<std::string> msgs;
    for (const auto& v : r.violations) msgs.push_back(v.what);
    return py::make_tuple(r.ok, msgs);
  });

  m.def("bound_expr",
        [](const ProgramUnit& unit) { return bound_to_string(bound(unit)); });
  m.def(
      "eval_bound",
      [](const ProgramUnit& unit, uint64_t n) -> std::optional<std::string> {
        BoundValue v = eval_bound(bound(unit), BigNat(n));
        if (!v.exact) return std::nullopt;
        return v.exact->str(); // decimal string; callers int() it
      },
      py::arg("program"), py::arg("n"));

  m.def(
      "generate",
      [](const std::string& name,
         std::optional<PartialStructure> vocab_from) {
        return gen_by_name(name, vocab_from ? &vocab_from->vocab() : nullptr);
      },
      py::arg("name"), py::arg("vocab_from") = py::none());
  m.def("generators", [] { return stdlib_program_names(); });

  py::class_<PyCompiledPR>(m, "CompiledPr")
      .def_property_readonly(
          "program", [](const PyCompiledPR& c) { return c.compiled.unit; })
      .def("run", &PyCompiledPR::run_args, py::arg("args"),
           py::arg("fuel") = py::none())
      .def("oracle", &PyCompiledPR::oracle, py::arg("args"));

  m.def("compile_pr", [](const std::string& text, const std::string& fn) {
    PRFile f = parse_pr_file(text);
    PRDefPtr def = f.find(fn);
    if (!def) throw Error("no definition named '" + fn + "'");
    return PyCompiledPR{f.sig, compile_pr(f.sig, *def), def};
  });
  m.def("eval_pr", [](const std::string& text, const std::string& fn,
                      const std::vector<std::string>& args) {
    PRFile f = parse_pr_file(text);
    PRDefPtr def = f.find(fn);
    if (!def) throw Error("no definition named '" + fn + "'");
    std::vector<Term> terms;
    for (const auto& a : args) terms.push_back(parse_algebra_term(f.sig, a));
    Term result = eval_pr(f.sig, *def, terms);
    return py::make_tuple(term_to_string(*f.sig.vocab(), result),
                          term_structure(result, *f.sig.vocab()));
  });

  py::class_<PyCompiledTM>(m, "CompiledTm")
      .def_property_readonly(
          "program", [](const PyCompiledTM& c) { return c.compiled.unit; })
      .def("run", &PyCompiledTM::run_word, py::arg("word"),
           py::arg("fuel") = py::none())
      .def("oracle", &PyCompiledTM::oracle, py::arg("word"),
           py::arg("fuel") = uint64_t{1} << 20);

  m.def("compile_tm", [](const std::string& text) {
    TuringTransducer machine = parse_tm(text);
    return PyCompiledTM{machine, compile_tm(machine)};
  });
}
