"""Arithmetic kernel: exact-evaluation parity, gcd, rewrites, square roots."""

import math
import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from curvinv import _poly as K


def _coords(*names):
    return [K.intern_coord(n) for n in names]


def _eval_rat_fraction(r, vals):
    """Exact Fraction evaluation; atoms must all be plain coordinates."""
    def poly(p):
        t = Fraction(0)
        for m, c in p.items():
            term = Fraction(c)
            for a, e in m:
                term *= vals[a] ** e
            t += term
        return t
    return poly(r[0]) / poly(r[1])


def _random_tracked(rng, atoms, vals, depth):
    """Build a random rat through kernel ops while tracking the exact value."""
    if depth <= 0 or rng.random() < 0.3:
        if rng.random() < 0.4:
            f = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            return K.rat_from_fraction(f), f
        a = rng.choice(atoms)
        return K.rat_atom(a), vals[a]
    op = rng.randrange(5)
    r1, v1 = _random_tracked(rng, atoms, vals, depth - 1)
    r2, v2 = _random_tracked(rng, atoms, vals, depth - 1)
    if op == 0:
        return K.rat_add(r1, r2), v1 + v2
    if op == 1:
        return K.rat_sub(r1, r2), v1 - v2
    if op == 2:
        return K.rat_mul(r1, r2), v1 * v2
    if op == 3:
        k = rng.randint(1, 3)
        return K.rat_pow(r1, k), v1 ** k
    if v2 == 0:
        return r1, v1
    return K.rat_div(r1, r2), v1 / v2


def test_random_ops_match_exact_evaluation():
    rng = random.Random(20240809)
    atoms = _coords("kx", "ky", "kz")
    for trial in range(250):
        vals = {a: Fraction(rng.randint(1, 9), rng.randint(1, 4)) for a in atoms}
        r, v = _random_tracked(rng, atoms, vals, depth=4)
        assert _eval_rat_fraction(r, vals) == v, f"trial {trial}"


def test_gcd_divides_and_cancels():
    rng = random.Random(7)
    atoms = _coords("gx", "gy")

    def randpoly():
        p = {}
        for _ in range(rng.randint(1, 4)):
            m = []
            if rng.random() < 0.8:
                m.append((atoms[0], rng.randint(1, 3)))
            if rng.random() < 0.6:
                m.append((atoms[1], rng.randint(1, 2)))
            mm = tuple(sorted(m))
            p[mm] = p.get(mm, Fraction(0)) + Fraction(rng.randint(-4, 4))
        return {m: c for m, c in p.items() if c}

    for _ in range(200):
        a, b, g = randpoly(), randpoly(), randpoly()
        if not (a and b and g):
            continue
        ag = K.poly_mul(a, g)
        bg = K.poly_mul(b, g)
        d = K.poly_gcd(ag, bg)
        K.poly_divexact(ag, d)
        K.poly_divexact(bg, d)
        # the common factor g must divide the gcd
        K.poly_divexact(d, K.poly_gcd(d, g))


def test_divexact_roundtrip():
    rng = random.Random(11)
    x, y = _coords("dx", "dy")
    for _ in range(100):
        a = {tuple(sorted({(x, rng.randint(0, 2)), (y, rng.randint(0, 2))} - {(x, 0), (y, 0)})):
             Fraction(rng.randint(1, 5))}
        b = {((x, 1),): Fraction(2), ((y, 2),): Fraction(-3), (): Fraction(1)}
        prod = K.poly_mul(a, b)
        q = K.poly_divexact(prod, b)
        assert K.poly_key(q) == K.poly_key(a)


def test_pythagorean_rewrite():
    x, = _coords("tw")
    s = K.build_sin(K.rat_atom(x))
    c = K.build_cos(K.rat_atom(x))
    val = K.rat_sub(K.rat_add(K.rat_mul(s, s), K.rat_mul(c, c)), K.rat_from_int(1))
    assert K.rat_is_zero(val)
    # high even powers reduce too: cos^4 = (1 - sin^2)^2
    c4 = K.rat_pow(c, 4)
    expanded = K.rat_pow(K.rat_sub(K.rat_from_int(1), K.rat_mul(s, s)), 2)
    assert K.rat_is_zero(K.rat_sub(c4, expanded))


def test_exp_merge_and_log():
    x, y = _coords("ex", "ey")
    ex = K.build_exp(K.rat_atom(x))
    ey = K.build_exp(K.rat_atom(y))
    prod = K.rat_mul(ex, ey)
    combined = K.build_exp(K.rat_add(K.rat_atom(x), K.rat_atom(y)))
    assert K.rat_is_zero(K.rat_sub(prod, combined))
    assert K.rat_as_fraction(K.rat_mul(ex, K.build_exp(K.rat_neg(K.rat_atom(x))))) == 1
    assert K.rat_is_zero(K.rat_sub(K.build_log(ex), K.rat_atom(x)))
    # 1/(1+exp(x)) and exp(-x)/(exp(-x)+1) agree
    one = K.rat_from_int(1)
    a = K.rat_inv(K.rat_add(one, ex))
    em = K.build_exp(K.rat_neg(K.rat_atom(x)))
    b = K.rat_div(em, K.rat_add(em, one))
    assert K.rat_is_zero(K.rat_sub(a, b))


def test_sqrt_extraction_and_rationalization():
    x, y = _coords("qx", "qy")
    rx, ry = K.rat_atom(x), K.rat_atom(y)
    four_x2y = K.rat_mul(K.rat_from_int(4), K.rat_mul(K.rat_mul(rx, rx), ry))
    s = K.build_sqrt(four_x2y)
    expect = K.rat_mul(K.rat_mul(K.rat_from_int(2), rx), K.build_sqrt(ry))
    assert K.rat_is_zero(K.rat_sub(s, expect))
    # perfect square polynomial collapses completely
    p = K.rat_add(rx, ry)
    assert K.rat_is_zero(K.rat_sub(K.build_sqrt(K.rat_mul(p, p)), p))
    # sqrt(q)^2 == q
    sq = K.build_sqrt(K.rat_add(rx, K.rat_from_int(1)))
    assert K.rat_is_zero(K.rat_sub(K.rat_mul(sq, sq),
                                   K.rat_add(rx, K.rat_from_int(1))))
    # denominators are cleared of radicals
    inv = K.rat_inv(K.rat_add(K.rat_from_int(1), K.build_sqrt(rx)))
    for m in inv[1]:
        for a, _e in m:
            assert K.atom_kind(a) != K.K_SQRT
    # numeric parity of the rationalized form
    val = 1.0 / (1.0 + math.sqrt(0.7))
    def num(p):
        t = 0.0
        for m, c in p.items():
            term = float(c)
            for a, e in m:
                term *= (math.sqrt(0.7) if K.atom_kind(a) == K.K_SQRT else 0.7) ** e
            t += term
        return t
    assert abs(num(inv[0]) / num(inv[1]) - val) < 1e-12


@given(st.integers(min_value=1, max_value=10**6))
@settings(max_examples=60, deadline=None)
def test_int_square_split(n):
    s, r = K._int_square_split(n)
    assert s * s * r == n


@given(st.lists(st.fractions(min_value=-5, max_value=5), min_size=1, max_size=5))
@settings(max_examples=60, deadline=None)
def test_poly_sqrt_of_square(coeffs):
    x, = _coords("sx")
    p = {}
    for i, c in enumerate(coeffs):
        if c:
            p[((x, i),) if i else ()] = Fraction(c)
    if not p:
        return
    sq = K._free_mul(p, p)
    root = K.poly_sqrt(sq)
    assert root is not None
    assert K.poly_key(K._free_mul(root, root)) == K.poly_key(sq)


def test_compiled_flag_exposed():
    assert isinstance(K.COMPILED, bool)
