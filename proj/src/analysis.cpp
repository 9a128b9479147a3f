#include "stv/analysis.hpp"

#include <algorithm>

#include "json.hpp"
#include "stv/textio.hpp"

namespace stv {

namespace {

void collect_extensions(const Program& p,
                        std::vector<std::pair<IdIndex, SourceLoc>>& out) {
  walk(p, [&](const Program& q) {
    if (q.kind != Program::Kind::Rev) return;
    if (q.rev.kind == Revision::Kind::FuncExt ||
        q.rev.kind == Revision::Kind::RelExt)
      out.emplace_back(q.rev.id, q.loc);
  });
}

} // namespace

StvReport check_stv(const Program& p, const Vocabulary& vocab) {
  StvReport report;
  walk(p, [&](const Program& q) {
    if (q.kind == Program::Kind::DoST) {
      report.violations.push_back(
          {q.loc, "unannotated loop (every loop needs a variant)", q.loc});
      return;
    }
    if (q.kind != Program::Kind::DoSTV) return;
    if (q.variant.empty())
      report.violations.push_back({q.loc, "empty variant", q.loc});
    for (IdIndex c : q.variant) {
      if (vocab.arity(c) == 0)
        report.violations.push_back(
            {q.loc, "variant component '" + vocab.name(c) +
                        "' must have positive arity",
             q.loc});
    }
    std::vector<std::pair<IdIndex, SourceLoc>> exts;
    collect_extensions(q.kids[0], exts);
    for (const auto& [id, at] : exts) {
      if (std::binary_search(q.variant.begin(), q.variant.end(), id))
        report.violations.push_back(
            {q.loc, "extension of variant component '" + vocab.name(id) +
                        "' inside the loop body",
             at});
    }
  });
  report.ok = report.violations.empty();
  return report;
}

BoundFunction bound(const Program& p, BoundBase base) {
  auto id = [] { return BoundFunction{}; };
  switch (p.kind) {
    case Program::Kind::Rev: {
      bool grows = p.rev.kind == Revision::Kind::FuncExt ||
                   p.rev.kind == Revision::Kind::RelExt ||
                   p.rev.kind == Revision::Kind::Inception;
      if (base == BoundBase::Literal) {
        BoundFunction b;
        b.kind = BoundFunction::Kind::Const;
        b.konst = grows ? 1 : 0;
        return b;
      }
      if (!grows) return id();
      BoundFunction b;
      b.kind = BoundFunction::Kind::Succ;
      return b;
    }
    case Program::Kind::Seq: {
      BoundFunction acc = id();
      bool first = true;
      for (const auto& k : p.kids) {
        BoundFunction bk = bound(k, base);
        if (first) {
          acc = std::move(bk);
          first = false;
        } else {
          BoundFunction c;
          c.kind = BoundFunction::Kind::Compose;
          c.kids.push_back(std::move(bk));  // outer: later statement
          c.kids.push_back(std::move(acc)); // inner: earlier prefix
          acc = std::move(c);
        }
      }
      return acc;
    }
    case Program::Kind::If: {
      BoundFunction b;
      b.kind = BoundFunction::Kind::Max;
      b.kids.push_back(bound(p.kids[0], base));
      b.kids.push_back(bound(p.kids[1], base));
      return b;
    }
    case Program::Kind::DoSTV: {
      BoundFunction b;
      b.kind = BoundFunction::Kind::Iter;
      b.kids.push_back(bound(p.kids[0], base));
      return b;
    }
    case Program::Kind::DoST:
      throw Error("size bounds are defined for variant-annotated programs only");
  }
  return id();
}

std::string bound_to_string(const BoundFunction& b) {
  switch (b.kind) {
    case BoundFunction::Kind::Id: return "id";
    case BoundFunction::Kind::Succ: return "succ";
    case BoundFunction::Kind::Const: return std::to_string(b.konst);
    case BoundFunction::Kind::Compose:
      return "(compose " + bound_to_string(b.kids[0]) + " " +
             bound_to_string(b.kids[1]) + ")";
    case BoundFunction::Kind::Max:
      return "(max " + bound_to_string(b.kids[0]) + " " +
             bound_to_string(b.kids[1]) + ")";
    case BoundFunction::Kind::Iter:
      return "(iter " + bound_to_string(b.kids[0]) + ")";
  }
  return "id";
}

namespace {

struct EvalState {
  const EvalBudget& budget;
  uint64_t work = 0;
  BigNat max_seen = 0;

  void saw(const BigNat& v) {
    if (v > max_seen) max_seen = v;
  }
  bool spend() { return ++work <= budget.max_work; }
  bool too_big(const BigNat& n) const {
    return n != 0 && msb(n) >= budget.max_bits;
  }
};

std::optional<BigNat> eval_rec(const BoundFunction& b, const BigNat& n,
                               EvalState& st) {
  if (!st.spend()) return std::nullopt;
  switch (b.kind) {
    case BoundFunction::Kind::Id:
      return n;
    case BoundFunction::Kind::Succ: {
      BigNat v = n + 1;
      st.saw(v);
      return v;
    }
    case BoundFunction::Kind::Const:
      return BigNat(b.konst);
    case BoundFunction::Kind::Compose: {
      auto inner = eval_rec(b.kids[1], n, st);
      if (!inner) return std::nullopt;
      if (st.too_big(*inner)) return std::nullopt;
      return eval_rec(b.kids[0], *inner, st);
    }
    case BoundFunction::Kind::Max: {
      auto a = eval_rec(b.kids[0], n, st);
      if (!a) return std::nullopt;
      auto c = eval_rec(b.kids[1], n, st);
      if (!c) return std::nullopt;
      return std::max(*a, *c);
    }
    case BoundFunction::Kind::Iter: {
      st.saw(n);
      if (n > st.budget.max_iterations) return std::nullopt;
      uint64_t count = n.convert_to<uint64_t>();
      BigNat x = n;
      for (uint64_t i = 0; i < count; ++i) {
        auto next = eval_rec(b.kids[0], x, st);
        if (!next) return std::nullopt;
        x = std::move(*next);
        st.saw(x);
        if (st.too_big(x)) return std::nullopt;
      }
      return x;
    }
  }
  return std::nullopt;
}

} // namespace

BoundValue eval_bound(const BoundFunction& b, const BigNat& n,
                      const EvalBudget& budget) {
  EvalState st{budget};
  BoundValue out;
  out.exact = eval_rec(b, n, st);
  if (out.exact) st.saw(*out.exact);
  out.lower_bound = std::move(st.max_seen);
  return out;
}

BoundCheckResult check_pr_bound(const ProgramUnit& unit,
                                const std::vector<PartialStructure>& inputs,
                                const EvalBudget& budget) {
  BoundCheckResult result;
  StvReport stv = check_stv(unit);
  if (!stv.ok) throw Error("check_pr_bound requires an STV program");
  BoundFunction b = bound(unit);
  for (const auto& input : inputs) {
    ++result.inputs_checked;
    Outcome out = run(unit, input);
    if (!out.halted) {
      result.falsifications.push_back("run did not halt within fuel");
      continue;
    }
    BoundValue cap = eval_bound(b, BigNat(input.size()), budget);
    auto check = [&](uint64_t size, const char* what) {
      if (cap.exact) {
        if (BigNat(size) > *cap.exact)
          result.falsifications.push_back(
              std::string(what) + " " + std::to_string(size) +
              " exceeds bound " + cap.exact->str() + " at input size " +
              std::to_string(input.size()));
        return;
      }
      // budget exceeded: the lower bound must already dominate, otherwise
      // the instance is unverified and reported as such
      if (BigNat(size) > cap.lower_bound)
        result.falsifications.push_back(
            std::string(what) + " " + std::to_string(size) +
            " not covered by the evaluated bound prefix " +
            cap.lower_bound.str() + " (raise the evaluation budget)");
    };
    check(out.final_structure.size(), "output size");
    check(out.trace.max_size, "trace size");
  }
  return result;
}

std::string stv_report_json(const StvReport& r) {
  nlohmann::json j;
  j["ok"] = r.ok;
  j["violations"] = nlohmann::json::array();
  for (const auto& v : r.violations) {
    j["violations"].push_back({
        {"loop", {{"line", v.loop.line}, {"col", v.loop.col}}},
        {"what", v.what},
        {"at", {{"line", v.at.line}, {"col", v.at.col}}},
    });
  }
  return j.dump(2);
}

std::string bound_report_json(const BoundFunction& b,
                              const std::vector<uint64_t>& samples,
                              const EvalBudget& budget) {
  nlohmann::json j;
  j["bound"] = bound_to_string(b);
  j["samples"] = nlohmann::json::array();
  for (uint64_t n : samples) {
    BoundValue v = eval_bound(b, BigNat(n), budget);
    j["samples"].push_back(
        {{"n", n},
         {"value", v.exact ? nlohmann::json(v.exact->str())
                           : nlohmann::json("overflow")}});
  }
  return j.dump(2);
}

} // namespace stv
