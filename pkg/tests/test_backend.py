"""Compiled/pure kernel parity: identical results from both backends."""

import importlib.util
import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from curvinv import _poly as active

PURE_PATH = Path(__file__).resolve().parent.parent / "src" / "curvinv" / "_poly.py"


def _load_pure():
    spec = importlib.util.spec_from_file_location("curvinv_poly_pure", PURE_PATH)
    mod = importlib.util.module_from_spec(spec)
    sys.modules["curvinv_poly_pure"] = mod
    spec.loader.exec_module(mod)
    return mod


def _drive(K, seed):
    """Deterministic op sequence against a kernel module; returns a trace of
    canonical keys (each backend owns its own atom registry)."""
    rng = random.Random(seed)
    x = K.intern_coord("bx")
    y = K.intern_coord("by")
    f = K.intern_func("bf", (x, y), (0, 0))
    atoms = [x, y, f]
    trace = []

    def rand_rat(depth):
        if depth <= 0 or rng.random() < 0.3:
            if rng.random() < 0.5:
                return K.rat_from_fraction(
                    Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
            return K.rat_atom(rng.choice(atoms))
        op = rng.randrange(7)
        a = rand_rat(depth - 1)
        b = rand_rat(depth - 1)
        if op == 0:
            return K.rat_add(a, b)
        if op == 1:
            return K.rat_sub(a, b)
        if op == 2:
            return K.rat_mul(a, b)
        if op == 3:
            return K.rat_pow(a, rng.randint(1, 3))
        if op == 4:
            return K.build_sin(a) if rng.random() < 0.5 else K.build_cos(a)
        if op == 5:
            return K.rat_div(a, b) if not K.rat_is_zero(b) else a
        return K.build_exp(K.rat_atom(rng.choice(atoms[:2])))

    for _ in range(150):
        r = rand_rat(3)
        n, d = r
        trace.append((_poly_sig(K, n), _poly_sig(K, d)))
    return trace


def _poly_sig(K, p):
    """Registry-independent signature: monomials rendered by atom payload."""
    def atom_sig(a):
        kind = K.atom_kind(a)
        payload = K.atom_payload(a)
        if kind == K.K_COORD:
            return ("c", payload[0])
        if kind == K.K_FUNC:
            return ("f", payload[0], payload[2])
        if kind == K.K_SQRT:
            return ("q", _poly_sig(K, payload))
        return (f"b{kind}", _rat_sig(K, payload))

    def _rat_sig(K2, r):
        return (_poly_sig(K2, r[0]), _poly_sig(K2, r[1]))

    out = []
    for m, c in p.items():
        out.append((tuple(sorted((atom_sig(a), e) for a, e in m)), c))
    return tuple(sorted(out))


def test_backends_agree():
    if not active.COMPILED:
        pytest.skip("compiled kernel not built; nothing to compare")
    pure = _load_pure()
    assert not pure.COMPILED
    t1 = _drive(active, 321)
    t2 = _drive(pure, 321)
    assert t1 == t2


def test_pure_fallback_loads():
    pure = _load_pure()
    x = pure.intern_coord("fx")
    s = pure.build_sin(pure.rat_atom(x))
    c = pure.build_cos(pure.rat_atom(x))
    t = pure.rat_sub(pure.rat_add(pure.rat_mul(s, s), pure.rat_mul(c, c)),
                     pure.rat_from_int(1))
    assert pure.rat_is_zero(t)
