#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "stv/analysis.hpp"
#include "stv/interp.hpp"
#include "stv/parser.hpp"
#include "stv/prcompile.hpp"
#include "stv/printer.hpp"
#include "stv/stdlib.hpp"
#include "stv/textio.hpp"
#include "stv/tm.hpp"

using namespace stv;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

const char* kind_name(Revision::Kind k) {
  switch (k) {
    case Revision::Kind::FuncExt: return "func-ext";
    case Revision::Kind::FuncContr: return "func-contr";
    case Revision::Kind::RelExt: return "rel-ext";
    case Revision::Kind::RelContr: return "rel-contr";
    case Revision::Kind::Inception: return "inception";
    case Revision::Kind::Deletion: return "deletion";
  }
  return "?";
}

int cmd_run(const std::string& program_path,
            const std::vector<std::string>& inputs,
            const std::string& out_path, std::optional<uint64_t> fuel,
            const std::vector<std::string>& output_vocab, bool canonical,
            bool trace) {
  ProgramUnit unit = parse_program_unit(slurp(program_path));
  std::vector<PartialStructure> parts;
  for (const auto& p : inputs) parts.push_back(parse_structure(slurp(p)));
  if (parts.empty()) throw Error("at least one --in structure is required");
  PartialStructure input = parts.size() == 1 ? parts[0] : oplus(parts);

  RunOptions opts;
  opts.fuel = fuel;
  if (trace) {
    opts.on_revision = [](uint64_t n, Revision::Kind k, uint64_t size) {
      std::cerr << "step=" << n << " rev=" << kind_name(k) << " size=" << size
                << "\n";
    };
  }
  Outcome out = run(unit, input, opts);
  if (trace) {
    std::cerr << "steps=" << out.trace.steps
              << " max_size=" << out.trace.max_size << " halted="
              << (out.halted ? "true" : "false") << "\n";
  }
  if (!out.halted) {
    std::cerr << "fuel exhausted\n";
    return 2;
  }
  PartialStructure result = out.final_structure;
  if (!output_vocab.empty())
    result = result.reduct(output_vocab).restrict_accessible();
  emit(out_path, canonical ? canonical_form(result)
                           : structure_to_text(result));
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"interpreter, checker and compilers for the ST/STV "
               "structure-transformation language"};
  app.require_subcommand(1);

  // run
  std::string program_path, out_path;
  std::vector<std::string> inputs, output_vocab_list;
  std::optional<uint64_t> fuel;
  uint64_t fuel_raw = 0;
  bool canonical = false, trace = false;
  auto* run_cmd = app.add_subcommand("run", "run a program on structures");
  run_cmd->add_option("program", program_path, "program file")->required();
  run_cmd->add_option("--in", inputs, "input structure file(s), combined")
      ->required();
  run_cmd->add_option("--out", out_path, "output path (default stdout)");
  auto* fuel_opt = run_cmd->add_option("--fuel", fuel_raw, "step budget");
  run_cmd
      ->add_option("--output-vocab", output_vocab_list,
                   "restrict the output to these identifiers")
      ->delimiter(',');
  run_cmd->add_flag("--canonical", canonical, "emit the canonical form");
  run_cmd->add_flag("--trace", trace, "log revisions to stderr");

  // check
  std::string check_path;
  auto* check_cmd =
      app.add_subcommand("check", "validate the variant annotations");
  check_cmd->add_option("program", check_path, "program file")->required();

  // bound
  std::string bound_path;
  std::vector<uint64_t> samples;
  auto* bound_cmd =
      app.add_subcommand("bound", "print the size bound of a program");
  bound_cmd->add_option("program", bound_path, "program file")->required();
  bound_cmd->add_option("--samples", samples, "evaluate the bound here")
      ->delimiter(',');

  // gen
  std::string gen_name, gen_vocab;
  auto* gen_cmd = app.add_subcommand("gen", "emit a library program");
  gen_cmd->add_option("name", gen_name,
                      "one of: " + [] {
                        std::string s;
                        for (const auto& n : stdlib_program_names())
                          s += (s.empty() ? "" : ", ") + n;
                        return s;
                      }())
      ->required();
  gen_cmd->add_option("--vocab", gen_vocab,
                      "structure file providing the vocabulary");

  // compile-pr
  std::string pr_path, pr_fn;
  auto* pr_cmd = app.add_subcommand(
      "compile-pr", "compile a primitive-recursive definition");
  pr_cmd->add_option("file", pr_path, "definition file")->required();
  pr_cmd->add_option("--fn", pr_fn, "definition to compile")->required();

  // compile-tm
  std::string tm_path;
  auto* tm_cmd =
      app.add_subcommand("compile-tm", "compile a Turing transducer");
  tm_cmd->add_option("file", tm_path, "machine file")->required();

  // canon
  std::string canon_path;
  auto* canon_cmd =
      app.add_subcommand("canon", "print the canonical form of a structure");
  canon_cmd->add_option("structure", canon_path)->required();

  // diff
  std::string diff_a, diff_b;
  auto* diff_cmd = app.add_subcommand(
      "diff", "compare two structures up to isomorphism of accessible parts");
  diff_cmd->add_option("a", diff_a)->required();
  diff_cmd->add_option("b", diff_b)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      if (*fuel_opt) fuel = fuel_raw;
      return cmd_run(program_path, inputs, out_path, fuel, output_vocab_list,
                     canonical, trace);
    }
    if (*check_cmd) {
      StvReport r = check_stv(parse_program_unit(slurp(check_path)));
      std::cout << stv_report_json(r) << "\n";
      return r.ok ? 0 : 1;
    }
    if (*bound_cmd) {
      ProgramUnit unit = parse_program_unit(slurp(bound_path));
      BoundFunction b = bound(unit);
      if (samples.empty()) samples = {0, 1, 2, 4, 8};
      std::cout << bound_report_json(b, samples) << "\n";
      return 0;
    }
    if (*gen_cmd) {
      std::optional<PartialStructure> s;
      if (!gen_vocab.empty()) s = parse_structure(slurp(gen_vocab));
      ProgramUnit unit =
          gen_by_name(gen_name, s ? &s->vocab() : nullptr);
      std::cout << pretty_print(unit);
      return 0;
    }
    if (*pr_cmd) {
      PRFile f = parse_pr_file(slurp(pr_path));
      PRDefPtr def = f.find(pr_fn);
      if (!def) throw Error("no definition named '" + pr_fn + "'");
      CompiledPR c = compile_pr(f.sig, *def);
      std::cout << "% inputs:";
      for (const auto& r : c.input_roots) std::cout << " " << r;
      std::cout << "\n% output:";
      for (const auto& n : c.output_names) std::cout << " " << n;
      std::cout << "\n" << pretty_print(c.unit);
      return 0;
    }
    if (*tm_cmd) {
      CompiledTM c = compile_tm(parse_tm(slurp(tm_path)));
      std::cout << "% output:";
      for (const auto& n : c.output_names) std::cout << " " << n;
      std::cout << "\n" << pretty_print(c.unit);
      return 0;
    }
    if (*canon_cmd) {
      std::cout << canonical_form(parse_structure(slurp(canon_path)));
      return 0;
    }
    if (*diff_cmd) {
      bool eq = canonical_equal(parse_structure(slurp(diff_a)),
                                parse_structure(slurp(diff_b)));
      std::cout << (eq ? "equal" : "different") << "\n";
      return eq ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
