"""Lorentz functionals, Orlicz-type modulars and the admissible-Psi construction."""

from ._core import (
    Exponents,
    InputError,
    OrliczFunction,
    RangeError,
    StepFunction,
    TailedDecreasingFunction,
    condition3_integral,
    construct_psi,
    convexify,
    counterexample_demo,
    dump_step,
    embedding_constant,
    load_psi,
    load_step,
    lorentz_functional,
    orlicz_modular,
    rearrange,
    verify_embedding,
)

__all__ = [
    "Exponents",
    "InputError",
    "OrliczFunction",
    "RangeError",
    "StepFunction",
    "TailedDecreasingFunction",
    "condition3_integral",
    "construct_psi",
    "convexify",
    "counterexample_demo",
    "dump_step",
    "embedding_constant",
    "load_psi",
    "load_step",
    "lorentz_functional",
    "orlicz_modular",
    "rearrange",
    "verify_embedding",
]
