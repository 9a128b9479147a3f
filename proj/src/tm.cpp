#include "stv/tm.hpp"

#include <algorithm>

#include "emit.hpp"
#include "lex.hpp"

namespace stv {

using namespace emit;

TuringTransducer parse_tm(const std::string& text) {
  lex::Lexer lx(text);
  TuringTransducer m;
  auto symbol = [&](const lex::Token& t) -> char {
    if (t.text.size() != 1)
      lx.fail(t, "tape symbols must be single characters");
    return t.text[0];
  };
  auto word_list = [&](std::vector<std::string>& out) {
    for (;;) {
      out.push_back(lx.expect_any_word("name").text);
      if (!lx.accept(lex::Tok::Comma)) break;
    }
  };
  while (!lx.at_end()) {
    auto head = lx.expect_any_word("directive");
    if (head.text == "states") {
      word_list(m.states);
    } else if (head.text == "start") {
      m.start = lx.expect_any_word("state").text;
    } else if (head.text == "print") {
      m.print = lx.expect_any_word("state").text;
    } else if (head.text == "input") {
      std::vector<std::string> syms;
      word_list(syms);
      for (auto& s : syms)
        m.input_alphabet.push_back(s.size() == 1 ? s[0] : throw Error(
            "input symbols must be single characters"));
    } else if (head.text == "tape") {
      std::vector<std::string> syms;
      word_list(syms);
      for (auto& s : syms)
        m.tape_alphabet.push_back(s.size() == 1 ? s[0] : throw Error(
            "tape symbols must be single characters"));
    } else if (head.text == "partial") {
      m.partial = true;
    } else if (head.text == "delta") {
      auto q = lx.expect_any_word("state");
      lx.expect(lex::Tok::Comma, "','");
      char read = symbol(lx.expect_any_word("symbol"));
      lx.expect(lex::Tok::Arrow, "'->'");
      auto q2 = lx.expect_any_word("state");
      lx.expect(lex::Tok::Comma, "','");
      char write = symbol(lx.expect_any_word("symbol"));
      lx.expect(lex::Tok::Comma, "','");
      auto mv = lx.expect_any_word("move");
      if (mv.text != "L" && mv.text != "R" && mv.text != "S")
        lx.fail(mv, "move must be L, R or S");
      m.delta[{q.text, read}] =
          TuringTransducer::Action{q2.text, write, mv.text[0]};
    } else {
      lx.fail(head, "unknown directive '" + head.text + "'");
    }
  }

  if (std::find(m.tape_alphabet.begin(), m.tape_alphabet.end(), '_') ==
      m.tape_alphabet.end())
    m.tape_alphabet.push_back('_');
  auto has_state = [&](const std::string& s) {
    return std::find(m.states.begin(), m.states.end(), s) != m.states.end();
  };
  if (!has_state(m.start) || !has_state(m.print))
    throw Error("start and print must be declared states");
  for (char c : m.input_alphabet)
    if (std::find(m.tape_alphabet.begin(), m.tape_alphabet.end(), c) ==
        m.tape_alphabet.end())
      throw Error("input alphabet must be contained in the tape alphabet");
  if (!m.partial) {
    for (const auto& q : m.states) {
      if (q == m.print) continue;
      for (char c : m.tape_alphabet)
        if (!m.delta.count({q, c}))
          throw Error("missing transition for (" + q + ", " +
                      std::string(1, c) + "); declare 'partial' to allow");
    }
  }
  return m;
}

TMResult simulate_tm(const TuringTransducer& m, const std::string& input,
                     uint64_t fuel) {
  std::string tape = input;
  size_t cursor = 0;
  std::string state = m.start;
  for (uint64_t step = 0; step < fuel; ++step) {
    if (state == m.print) {
      size_t end = tape.find_last_not_of('_');
      return {TMResult::Kind::Printed,
              end == std::string::npos ? "" : tape.substr(0, end + 1)};
    }
    char read = cursor < tape.size() ? tape[cursor] : '_';
    auto it = m.delta.find({state, read});
    if (it == m.delta.end()) return {TMResult::Kind::Stuck, ""};
    const auto& act = it->second;
    if (cursor >= tape.size()) tape.resize(cursor + 1, '_');
    tape[cursor] = act.write;
    state = act.next_state;
    if (act.move == 'R') {
      ++cursor;
    } else if (act.move == 'L') {
      if (cursor == 0) return {TMResult::Kind::Stuck, ""};
      --cursor;
    }
  }
  return {TMResult::Kind::Timeout, ""};
}

CompiledTM compile_tm(const TuringTransducer& m) {
  Ctx ctx;
  CompiledTM out;
  out.nil = "e";

  // input vocabulary: origin token + one pointer per input symbol
  Vocabulary input;
  input.add("e", IdKind::Function, 0);
  std::map<char, std::string> ptr;
  for (char c : m.input_alphabet) {
    ptr[c] = std::string(1, c);
    input.add(ptr[c], IdKind::Function, 1);
    out.io_alphabet.emplace_back(c, ptr[c]);
  }
  ctx.use(input);
  // remaining tape symbols
  for (char c : m.tape_alphabet) {
    if (ptr.count(c)) continue;
    ptr[c] = ctx.fn(std::string(1, c), 1);
  }
  for (char c : m.tape_alphabet) out.tape_alphabet.emplace_back(c, ptr[c]);
  out.output_names.push_back("e");
  for (char c : m.tape_alphabet) out.output_names.push_back(ptr[c]);

  std::string r = ctx.fn("r", 1);
  std::string cur = ctx.fn("c", 0);
  std::string stuck = ctx.fn("stuck", 0);
  std::map<std::string, std::string> state_tok;
  for (const auto& q : m.states) state_tok[q] = ctx.fn(q, 0);

  std::vector<std::string> tape_ptrs;
  for (char c : m.tape_alphabet) tape_ptrs.push_back(ptr[c]);

  auto any_edge = [&](const std::string& at) {
    std::string g;
    for (size_t i = 0; i < tape_ptrs.size(); ++i) {
      if (i) g += " or ";
      g += "def " + tape_ptrs[i] + "(" + at + ")";
    }
    return g;
  };

  Stmts out_body;

  // initialization: cursor and state flag at the origin, backward pointer
  // along the input
  out_body.push_back(cur + " <- e");
  out_body.push_back(state_tok[m.start] + " <- e");
  std::string w = ctx.fn("w", 0);
  {
    std::function<std::string(size_t)> chain = [&](size_t i) -> std::string {
      std::string edge = tape_ptrs[i] + "(" + w + ")";
      Stmts step = {r + "(" + edge + ") <- " + w, w + " := " + edge};
      if (i + 1 == tape_ptrs.size()) return if_else("def " + edge, step, {});
      return if_else("def " + edge, step, {chain(i + 1)});
    };
    out_body.push_back(w + " := e");
    out_body.push_back(do_st(any_edge(w), {chain(0)}));
    out_body.push_back("drop " + w);
  }

  // transition loop
  std::string tgt = ctx.fn("tgt", 0);
  auto action = [&](const std::string& q, char read,
                    bool blank_cell) -> Stmts {
    auto it = m.delta.find({q, read});
    if (it == m.delta.end()) // declared partial: stuck
      return {stuck + " <- " + cur};
    const auto& act = it->second;
    const std::string wp = ptr.at(act.write);
    Stmts s;
    if (!blank_cell) {
      const std::string rp = ptr.at(read);
      s.push_back(tgt + " <- " + rp + "(" + cur + ")");
      if (act.write != read) {
        s.push_back("drop " + rp + "(" + cur + ")");
        s.push_back(wp + "(" + cur + ") <- " + tgt);
      }
    } else if (act.write != '_' || act.move == 'R') {
      // materialize the cell; moving right off the written cell needs its
      // target node to exist
      s.push_back("new " + tgt);
      s.push_back(wp + "(" + cur + ") <- " + tgt);
      s.push_back(r + "(" + tgt + ") <- " + cur);
    }
    if (act.next_state != q) {
      s.push_back(state_tok.at(act.next_state) + " <- " + cur);
      s.push_back("drop " + state_tok.at(q));
    }
    if (act.move == 'R') {
      s.push_back(cur + " := " + tgt);
    } else if (act.move == 'L') {
      s.push_back(if_else("def " + r + "(" + cur + ")",
                          {cur + " := " + r + "(" + cur + ")"},
                          {stuck + " <- " + cur}));
    }
    s.push_back("drop " + tgt);
    return s;
  };

  auto state_block = [&](const std::string& q) -> Stmts {
    // dispatch on the cell symbol, absent edge (blank) innermost
    Stmts blank = action(q, '_', true);
    std::string chainstr;
    bool have = false;
    for (size_t i = m.tape_alphabet.size(); i-- > 0;) {
      std::string edge = ptr.at(m.tape_alphabet[i]) + "(" + cur + ")";
      Stmts act = action(q, m.tape_alphabet[i], false);
      chainstr = have ? if_else("def " + edge, act, {chainstr})
                      : if_else("def " + edge, act, blank);
      have = true;
    }
    return {chainstr};
  };

  Stmts dispatch;
  {
    std::string chainstr;
    bool have = false;
    for (size_t i = m.states.size(); i-- > 0;) {
      const std::string& q = m.states[i];
      if (q == m.print) continue;
      chainstr = have ? if_else("def " + state_tok[q], state_block(q),
                                {chainstr})
                      : if_else("def " + state_tok[q], state_block(q), {});
      have = true;
    }
    if (have) dispatch.push_back(chainstr);
  }
  out_body.push_back(do_st(
      "not def " + state_tok[m.print] + " and not def " + stuck, dispatch));

  // output conversion: strip trailing blanks; stuck runs detach the tape
  std::string done = ctx.fn("done", 0);
  std::string blank_ptr = ptr.at('_');
  {
    std::function<std::string(size_t)> walkchain =
        [&](size_t i) -> std::string {
      std::string edge = tape_ptrs[i] + "(" + w + ")";
      Stmts step = {w + " := " + edge};
      if (i + 1 == tape_ptrs.size()) return if_else("def " + edge, step, {});
      return if_else("def " + edge, step, {walkchain(i + 1)});
    };
    Stmts strip = {
        w + " := e",
        do_st(any_edge(w), {walkchain(0)}),
        if_else(w + " == e", {done + " <- " + w},
                {if_else("def " + blank_ptr + "(" + r + "(" + w + "))",
                         {"drop " + blank_ptr + "(" + r + "(" + w + "))"},
                         {done + " <- " + w})}),
    };
    Stmts detach;
    for (const auto& p : tape_ptrs) detach.push_back("drop " + p + "(e)");
    out_body.push_back(if_else(
        "def " + state_tok[m.print],
        {do_st("not def " + done, strip), "drop " + done, "drop " + w},
        detach));
  }

  out.unit = ctx.parse(out_body);
  return out;
}

std::string decode_tm_output(const CompiledTM& compiled,
                             const PartialStructure& out) {
  return word_decode(out, compiled.tape_alphabet, compiled.nil);
}

} // namespace stv
