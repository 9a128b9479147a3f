#include "stv/interp.hpp"

#include <algorithm>

namespace stv {

bool eval_test(const PartialStructure& s, const Test& t) {
  switch (t.kind) {
    case Test::Kind::Convergence:
      return s.eval(t.lhs).has_value();
    case Test::Kind::Equation: {
      auto a = s.eval(t.lhs);
      if (!a) return false;
      auto b = s.eval(t.rhs);
      return b && *a == *b;
    }
    case Test::Kind::Relational: {
      std::vector<NodeId> vals;
      vals.reserve(t.args.size());
      for (const auto& a : t.args) {
        auto v = s.eval(a);
        if (!v) return false;
        vals.push_back(*v);
      }
      return s.rel_contains(t.rel, vals);
    }
  }
  return false;
}

bool eval_guard(const PartialStructure& s, const Guard& g) {
  switch (g.kind) {
    case Guard::Kind::Leaf: return eval_test(s, g.test);
    case Guard::Kind::Not: return !eval_guard(s, g.kids[0]);
    case Guard::Kind::And:
      return eval_guard(s, g.kids[0]) && eval_guard(s, g.kids[1]);
    case Guard::Kind::Or:
      return eval_guard(s, g.kids[0]) || eval_guard(s, g.kids[1]);
  }
  return false;
}

namespace {

struct FuelExhausted {};

class Exec {
public:
  Exec(PartialStructure s, const RunOptions& opts)
      : s_(std::move(s)), opts_(opts) {
    trace_.max_size = s_.size();
  }

  void exec(const Program& p) {
    switch (p.kind) {
      case Program::Kind::Rev:
        apply(p.rev);
        break;
      case Program::Kind::Seq:
        for (const auto& k : p.kids) exec(k);
        break;
      case Program::Kind::If:
        exec(guard(p.guard) ? p.kids[0] : p.kids[1]);
        break;
      case Program::Kind::DoST:
        while (guard(p.guard)) exec(p.kids[0]);
        break;
      case Program::Kind::DoSTV: {
        if (!guard(p.guard)) break;
        uint64_t pass = 0;
        for (;;) {
          uint64_t at_entry =
              opts_.log_passes ? variant_total(p.variant) : 0;
          frames_.push_back(Frame{&p.variant, 0});
          exec(p.kids[0]);
          uint64_t removed = frames_.back().removed;
          frames_.pop_back();
          ++pass;
          if (opts_.log_passes)
            trace_.passes.push_back(PassRecord{&p, pass, removed, at_entry});
          // Re-entered only when the guard holds and the previous pass
          // contracted some component of the variant.
          if (!guard(p.guard)) break;
          if (removed == 0) break;
        }
        break;
      }
    }
  }

  void apply(const Revision& r) {
    tick();
    ++trace_.revisions;
    ++trace_.revisions_by_kind[static_cast<size_t>(r.kind)];
    switch (r.kind) {
      case Revision::Kind::FuncExt: {
        std::vector<NodeId>& args = scratch();
        if (!eval_all(r.args, args)) break;
        auto val = s_.eval(r.val);
        if (!val) break;
        s_.func_insert(r.id, args, *val); // no-op when already defined
        break;
      }
      case Revision::Kind::FuncContr: {
        std::vector<NodeId>& args = scratch();
        if (!eval_all(r.args, args)) break;
        if (s_.func_erase(r.id, args)) note_removed(r.id, 1);
        break;
      }
      case Revision::Kind::RelExt: {
        std::vector<NodeId>& args = scratch();
        if (!eval_all(r.args, args)) break;
        s_.rel_insert(r.id, args);
        break;
      }
      case Revision::Kind::RelContr: {
        std::vector<NodeId>& args = scratch();
        if (!eval_all(r.args, args)) break;
        if (s_.rel_erase(r.id, args)) note_removed(r.id, 1);
        break;
      }
      case Revision::Kind::Inception: {
        if (s_.func_get(r.id, {})) break; // token already defined
        NodeId n = s_.add_node();
        s_.func_insert(r.id, {}, n);
        break;
      }
      case Revision::Kind::Deletion: {
        auto v = s_.func_get(r.id, {});
        if (!v) break;
        for (const auto& [id, count] : s_.delete_node(*v))
          note_removed(id, count);
        break;
      }
    }
    trace_.max_size = std::max(trace_.max_size, s_.size());
    if (opts_.on_revision)
      opts_.on_revision(trace_.revisions, r.kind, s_.size());
  }

  bool guard(const Guard& g) {
    tick();
    ++trace_.guard_evals;
    return eval_guard(s_, g);
  }

  PartialStructure take() { return std::move(s_); }
  Trace take_trace() {
    trace_.steps = 1 + trace_.revisions + trace_.guard_evals;
    return std::move(trace_);
  }

private:
  struct Frame {
    const std::vector<IdIndex>* variant;
    uint64_t removed;
  };

  std::vector<NodeId>& scratch() {
    scratch_.clear();
    return scratch_;
  }

  void tick() {
    if (opts_.fuel && trace_.revisions + trace_.guard_evals >= *opts_.fuel)
      throw FuelExhausted{};
  }

  bool eval_all(const std::vector<Term>& addrs, std::vector<NodeId>& out) {
    for (const auto& a : addrs) {
      auto v = s_.eval(a);
      if (!v) return false;
      out.push_back(*v);
    }
    return true;
  }

  void note_removed(IdIndex id, uint64_t count) {
    for (auto& f : frames_) {
      if (std::binary_search(f.variant->begin(), f.variant->end(), id))
        f.removed += count;
    }
  }

  uint64_t variant_total(const std::vector<IdIndex>& variant) const {
    uint64_t total = 0;
    for (IdIndex i : variant)
      total += s_.vocab().is_function(i) ? s_.func(i).count()
                                         : s_.rel(i).count();
    return total;
  }

  PartialStructure s_;
  RunOptions opts_;
  Trace trace_;
  std::vector<Frame> frames_;
  std::vector<NodeId> scratch_;
};

} // namespace

PartialStructure apply_revision(const PartialStructure& s, const Revision& r) {
  Exec e(s, RunOptions{});
  e.apply(r);
  return e.take();
}

Outcome run(const ProgramUnit& unit, const PartialStructure& input,
            const RunOptions& opts) {
  Exec e(input.expand(unit.vocab), opts);
  bool halted = true;
  try {
    e.exec(unit.body);
  } catch (const FuelExhausted&) {
    halted = false;
  }
  Outcome out{halted, e.take(), {}};
  out.trace = e.take_trace();
  return out;
}

PartialStructure run_transducer(const ProgramUnit& unit,
                                const PartialStructure& input,
                                const std::vector<std::string>& output_names,
                                const RunOptions& opts) {
  Outcome out = run(unit, input, opts);
  if (!out.halted) throw Error("fuel exhausted");
  return out.final_structure.reduct(output_names).restrict_accessible();
}

} // namespace stv
