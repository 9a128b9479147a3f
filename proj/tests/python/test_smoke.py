"""End-to-end smoke tests for the python bindings."""

import pytest

import stv

BITS = {"0": "0", "1": "1"}


def test_word_round_trip():
    s = stv.word("e", BITS, "0110")
    assert s.size == 4
    assert s.node_count == 5
    assert stv.decode_word(s, "e", BITS) == "0110"
    assert s == stv.Structure.parse(s.canonical())


def test_run_concatenation():
    prog = stv.generate("concat-splice")
    u = stv.word("e", BITS, "01")
    v = stv.word("eh", {"0": "0h", "1": "1h"}, "10")
    out = stv.run_transducer(prog, stv.combine([u, v]), ["e", "0", "1"])
    assert stv.decode_word(out, "e", BITS) == "0110"


def test_check_and_bound():
    dup = stv.generate("string-dup")
    ok, violations = stv.check(dup)
    assert ok and violations == []
    assert int(stv.eval_bound(dup, 3)) >= 6  # the duplicate doubles the word

    prog = stv.Program.parse("vocab { fn e/0 fn 0/1 }\n0(e) <- e\n")
    assert stv.bound_expr(prog) == "succ"
    assert int(stv.eval_bound(prog, 5)) == 6


def test_check_flags_variant_extension():
    bad = stv.Program.parse(
        "vocab { fn e/0 fn 0/1 fn a/0 }\ndo [def 0(e)] [0] { 0(a) <- e }\n"
    )
    ok, violations = stv.check(bad)
    assert not ok
    assert any("variant" in v for v in violations)


def test_fuel_exhaustion():
    prog = stv.Program.parse("vocab { fn e/0 fn 0/1 fn 1/1 }\ndo [def 0(e)] {}\n")
    looping = stv.word("e", BITS, "0")
    result = stv.run(prog, looping, fuel=50)
    assert not result.halted


def test_compiled_pr_matches_oracle():
    defs = """
    algebra { z/0 s/1 }
    def add/2 = rec { z(x) => x; s(n, x)[y] => s(y) }
    """
    compiled = stv.compile_pr(defs, "add")
    ok, _ = stv.check(compiled.program)
    assert ok
    for a in range(4):
        for b in range(4):
            args = [_nat(a), _nat(b)]
            assert compiled.run(args) == compiled.oracle(args)


def test_compiled_tm_matches_oracle():
    machine = """
    states s,p
    start s
    print p
    input 0,1
    tape 0,1,_
    delta s,0 -> s,1,R
    delta s,1 -> s,0,R
    delta s,_ -> p,_,S
    """
    tm = stv.compile_tm(machine)
    for w in ["", "0", "10", "0110", "111000"]:
        assert tm.run(w) == tm.oracle(w)


def test_errors_are_exceptions():
    with pytest.raises(stv.StvError):
        stv.Structure.parse("fn e/0\n")  # empty universe
    with pytest.raises(stv.StvError):
        stv.Program.parse("vocab { fn e/0 }\nq <- e\n")


def _nat(n: int) -> str:
    t = "z"
    for _ in range(n):
        t = f"s({t})"
    return t
