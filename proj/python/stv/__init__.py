"""Toolkit for the ST/STV structure-transformation language.

Structures are finite partial structures; programs revise them through the
six atomic updates, guarded branching and loops. Variant-annotated loops
admit a static termination check and a primitive-recursive size bound.
"""

from stv._core import (
    CompiledPr,
    CompiledTm,
    Program,
    RunResult,
    Structure,
    StvError,
    bound_expr,
    check,
    combine,
    compile_pr,
    compile_tm,
    decode_word,
    eval_bound,
    eval_pr,
    generate,
    generators,
    run,
    run_transducer,
    word,
)

__all__ = [
    "CompiledPr",
    "CompiledTm",
    "Program",
    "RunResult",
    "Structure",
    "StvError",
    "bound_expr",
    "check",
    "combine",
    "compile_pr",
    "compile_tm",
    "decode_word",
    "eval_bound",
    "eval_pr",
    "generate",
    "generators",
    "run",
    "run_transducer",
    "word",
]
