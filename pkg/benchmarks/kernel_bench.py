#!/usr/bin/env python3
"""Benchmark the arithmetic kernel: compiled extension vs pure Python.

Loads ``curvinv._poly`` twice: once through the import system (the compiled
extension when built) and once directly from the .py source, then times the
same workloads on both.  Also reports which backend the installed package
selected.

Usage::

    python benchmarks/kernel_bench.py [--repeat N]
"""

import argparse
import importlib.util
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))


def load_backends():
    import curvinv
    from curvinv import _poly as active

    spec = importlib.util.spec_from_file_location(
        "curvinv_poly_pure_bench", ROOT / "src" / "curvinv" / "_poly.py")
    pure = importlib.util.module_from_spec(spec)
    sys.modules["curvinv_poly_pure_bench"] = pure
    spec.loader.exec_module(pure)
    return curvinv, active, pure


def bench_poly_mul(K, reps):
    """Dense-ish polynomial products with rewrite traffic."""
    x = K.intern_coord("mx")
    y = K.intern_coord("my")
    s = K.build_sin(K.rat_atom(x))
    c = K.build_cos(K.rat_atom(x))
    base = K.rat_add(K.rat_add(K.rat_atom(x), K.rat_atom(y)),
                     K.rat_mul(s, c))
    t0 = time.perf_counter()
    for _ in range(reps):
        acc = K.rat_from_int(1)
        for _k in range(6):
            acc = K.rat_mul(acc, base)
    return time.perf_counter() - t0


def bench_rat_chain(K, reps):
    """Rational sums with distinct denominators (gcd + normalization)."""
    x = K.intern_coord("rx")
    y = K.intern_coord("ry")
    rx42 = K.rat_atom(x)
    ry = K.rat_atom(y)
    t0 = time.perf_counter()
    for _ in range(reps):
        acc = K.rat_from_int(0)
        for k in range(1, 14):
            term = K.rat_div(K.rat_from_int(k),
                             K.rat_add(rx42, K.rat_mul(K.rat_from_int(k), ry)))
            acc = K.rat_add(acc, term)
    return time.perf_counter() - t0


def bench_gcd(K, reps):
    """Multivariate cancellation stress."""
    rng = random.Random(0)
    x = K.intern_coord("gx")
    y = K.intern_coord("gy")
    z = K.intern_coord("gz")

    def rpoly():
        p = {}
        for _ in range(5):
            m = []
            for a in (x, y, z):
                e = rng.randint(0, 2)
                if e:
                    m.append((a, e))
            mm = tuple(sorted(m))
            p[mm] = p.get(mm, Fraction(0)) + Fraction(rng.randint(-5, 5))
        return {m: c2 for m, c2 in p.items() if c2}

    pairs = []
    for _ in range(10):
        a, b, g = rpoly(), rpoly(), rpoly()
        if a and b and g:
            pairs.append((K.poly_mul(a, g), K.poly_mul(b, g)))
    t0 = time.perf_counter()
    for _ in range(reps):
        for a, b in pairs:
            K.poly_gcd(a, b)
    return time.perf_counter() - t0


def bench_diff(K, reps):
    """Derivative chains through builtin functions."""
    x = K.intern_coord("dx")
    u = K.intern_coord("du")
    f = K.intern_func("dF", (u, x), (0, 0))
    expr = K.rat_mul(K.build_sin(K.rat_atom(x)),
                     K.rat_add(K.rat_atom(f), K.rat_pow(K.rat_atom(x), 3)))

    def cb_factory():
        cache = {}

        def deriv(a):
            r = cache.get(a)
            if r is not None:
                return r
            kind = K.atom_kind(a)
            if kind == K.K_COORD:
                r = K.rat_from_int(1 if a == x else 0)
            elif kind == K.K_FUNC:
                name, args, dv = K.atom_payload(a)
                if x in args:
                    i = args.index(x)
                    nd = list(dv)
                    nd[i] += 1
                    r = K.rat_atom(K.intern_func(name, args, nd))
                else:
                    r = K.rat_from_int(0)
            elif kind == K.K_SIN:
                r = K.rat_mul(K.build_cos(K.atom_payload(a)),
                              K.rat_diff(K.atom_payload(a), deriv))
            elif kind == K.K_COS:
                r = K.rat_neg(K.rat_mul(K.build_sin(K.atom_payload(a)),
                                        K.rat_diff(K.atom_payload(a), deriv)))
            else:
                r = K.rat_from_int(0)
            cache[a] = r
            return r

        return deriv

    deriv = cb_factory()
    t0 = time.perf_counter()
    for _ in range(reps):
        e = expr
        for _k in range(4):
            e = K.rat_diff(e, deriv)
    return time.perf_counter() - t0


WORKLOADS = [
    ("poly products + rewrites", bench_poly_mul, 200),
    ("rational sum chains", bench_rat_chain, 100),
    ("multivariate gcd", bench_gcd, 30),
    ("derivative chains", bench_diff, 200),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=1,
                    help="scale factor for all workload repetitions")
    args = ap.parse_args()
    curvinv, active, pure = load_backends()
    print(f"package backend: {'compiled' if curvinv.kernel_runtime()['compiled'] else 'pure Python'}")
    print(f"active module:   {active.__file__}")
    print(f"pure module:     {pure.__file__}")
    if not active.COMPILED:
        print("note: compiled extension not built "
              "(python setup.py build_ext --inplace); comparing pure vs pure")
    print()
    print(f"{'workload':28s} {'compiled':>10s} {'pure':>10s} {'speedup':>9s}")
    for name, fn, reps in WORKLOADS:
        reps *= args.repeat
        tc = fn(active, reps)
        tp = fn(pure, reps)
        print(f"{name:28s} {tc:9.3f}s {tp:9.3f}s {tp / tc:8.2f}x")


if __name__ == "__main__":
    main()
