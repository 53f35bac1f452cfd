"""Shared fixtures-in-spirit: random expressions, random metrics, catalog shortcuts."""

from curvinv import expr as E
from curvinv.tensors import Chart, Metric

ZERO = E.integer(0)
ONE = E.integer(1)


def random_expr(rng, coords, funcs, depth=3, trig=True):
    """Random expression over the given coordinate/function Exprs."""
    if depth <= 0 or rng.random() < 0.3:
        kind = rng.randrange(3)
        if kind == 0:
            return E.rational(rng.randint(-4, 4), rng.randint(1, 3))
        if kind == 1:
            return rng.choice(coords)
        return rng.choice(funcs) if funcs else rng.choice(coords)
    op = rng.randrange(6 if trig else 4)
    a = random_expr(rng, coords, funcs, depth - 1, trig)
    b = random_expr(rng, coords, funcs, depth - 1, trig)
    if op == 0:
        return a + b
    if op == 1:
        return a - b
    if op == 2:
        return a * b
    if op == 3:
        return a ** rng.randint(1, 3)
    if op == 4:
        return E.sin(rng.choice(coords)) * a + b
    return E.cos(rng.choice(coords)) * a - b


def random_polynomial(rng, coords, deg=2, terms=3):
    total = ZERO
    for _ in range(terms):
        t = E.rational(rng.randint(-3, 3), rng.randint(1, 2))
        for _ in range(rng.randint(0, deg)):
            t = t * rng.choice(coords)
        total = total + t
    return total


def random_metric_2d(rng):
    """Random non-degenerate symmetric 2D metric with polynomial entries."""
    ch = Chart([f"p{rng.randrange(10**6)}", f"q{rng.randrange(10**6)}"])
    x, y = ch.coords
    while True:
        a = 1 + x ** 2 * rng.randint(0, 2) + y ** 2 * rng.randint(0, 1)
        b = x * y * rng.randint(-1, 1) + rng.randint(0, 1) * x
        c = 1 + y ** 2 * rng.randint(0, 2) + rng.randint(0, 2) * x ** 2
        try:
            return Metric(ch, [[a, b], [b, c]], (2, 0))
        except Exception:
            continue


def minkowski4():
    from curvinv import catalog
    return catalog.get("minkowski").metric


def pp_wave_vacuum():
    from curvinv import catalog
    return catalog.get("pp_wave_vacuum").metric
