"""Immutable exact symbolic scalars.

An :class:`Expr` wraps a canonical rational function from the arithmetic
kernel.  Supported class: rational functions of coordinates and opaque
function-symbol jets, together with sin/cos/exp/log/sqrt under the registered
rewrites.  All operations are pure; expressions are freely shareable.

Zero testing is exact within that class: the canonical form of zero is the
zero polynomial, so ``is_zero`` is a structural check plus an independence
certification for the nonzero answer.  When certification fails the test
raises :class:`~curvinv.errors.UndecidedZeroError` rather than answering.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import _poly as K
from .errors import (
    SubstitutionError,
    UnboundSymbolError,
    UndecidedZeroError,
    UnknownCoordinateError,
)

_KIND_COORD = K.K_COORD
_KIND_FUNC = K.K_FUNC
_KIND_SIN = K.K_SIN
_KIND_COS = K.K_COS
_KIND_EXP = K.K_EXP
_KIND_LOG = K.K_LOG
_KIND_SQRT = K.K_SQRT

_BUILTIN_NAMES = {_KIND_SIN: "sin", _KIND_COS: "cos", _KIND_EXP: "exp",
                  _KIND_LOG: "log", _KIND_SQRT: "sqrt"}


class Expr:
    """Exact symbolic scalar in canonical form."""

    __slots__ = ("_rat", "_key")

    def __init__(self, rat):
        self._rat = rat
        self._key = None

    # -- construction -----------------------------------------------------

    @staticmethod
    def from_int(n: int) -> "Expr":
        return Expr(K.rat_from_int(n))

    @staticmethod
    def from_fraction(f) -> "Expr":
        return Expr(K.rat_from_fraction(Fraction(f)))

    # -- structure ---------------------------------------------------------

    @property
    def key(self):
        if self._key is None:
            self._key = K.rat_key(self._rat)
        return self._key

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Expr.from_fraction(other)
        if not isinstance(other, Expr):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @property
    def is_zero_struct(self) -> bool:
        """Structural zero check (exact for the canonical form; never raises)."""
        return K.rat_is_zero(self._rat)

    def is_zero(self) -> bool:
        return is_zero(self)

    def equals(self, other) -> bool:
        """Semantic equality via exact zero test of the difference."""
        return is_zero(self - other)

    def as_fraction(self):
        """Fraction value when constant, else None."""
        return K.rat_as_fraction(self._rat)

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _lift(v):
        if isinstance(v, Expr):
            return v._rat
        if isinstance(v, int):
            return K.rat_from_int(v)
        if isinstance(v, Fraction):
            return K.rat_from_fraction(v)
        return None

    def __add__(self, other):
        r = Expr._lift(other)
        return Expr(K.rat_add(self._rat, r)) if r is not None else NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        r = Expr._lift(other)
        return Expr(K.rat_sub(self._rat, r)) if r is not None else NotImplemented

    def __rsub__(self, other):
        r = Expr._lift(other)
        return Expr(K.rat_sub(r, self._rat)) if r is not None else NotImplemented

    def __mul__(self, other):
        r = Expr._lift(other)
        return Expr(K.rat_mul(self._rat, r)) if r is not None else NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        r = Expr._lift(other)
        return Expr(K.rat_div(self._rat, r)) if r is not None else NotImplemented

    def __rtruediv__(self, other):
        r = Expr._lift(other)
        return Expr(K.rat_div(r, self._rat)) if r is not None else NotImplemented

    def __neg__(self):
        return Expr(K.rat_neg(self._rat))

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return Expr(K.rat_pow(self._rat, k))

    # -- calculus / inspection ----------------------------------------------

    def diff(self, coord) -> "Expr":
        return differentiate(self, coord)

    def subs(self, bindings) -> "Expr":
        return substitute(self, bindings)

    def free_functions(self):
        return free_functions(self)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Expr({render(self)})"


ZERO = Expr.from_int(0)
ONE = Expr.from_int(1)


def sum_exprs(terms) -> Expr:
    """Sum an iterable of expressions with denominator grouping."""
    rats = []
    for t in terms:
        r = Expr._lift(t)
        if r is None:
            raise TypeError(f"expected expression, got {t!r}")
        rats.append(r)
    return Expr(K.rat_sum(rats))


# --------------------------------------------------------------------------
# Symbol declaration
# --------------------------------------------------------------------------

def coordinate(name: str) -> Expr:
    if not name.isidentifier():
        raise ValueError(f"bad coordinate name {name!r}")
    return Expr(K.rat_atom(K.intern_coord(name)))


def coordinates(names) -> tuple:
    if isinstance(names, str):
        names = names.split()
    return tuple(coordinate(n) for n in names)


def _coord_atom_of(e) -> int:
    """Atom id when e is exactly one coordinate, else -1."""
    if isinstance(e, str):
        return K.lookup_coord(e)
    if not isinstance(e, Expr):
        return -1
    n, d = e._rat
    if len(n) == 1 and len(d) == 1 and () in d:
        (m, c), = n.items()
        if c == 1 and len(m) == 1 and m[0][1] == 1 \
                and K.atom_kind(m[0][0]) == _KIND_COORD:
            return m[0][0]
    return -1


def function_symbol(name: str, args=()) -> Expr:
    """Opaque smooth function of the given coordinates; () gives a constant."""
    if not name.isidentifier():
        raise ValueError(f"bad function name {name!r}")
    arg_atoms = []
    for a in args:
        ca = _coord_atom_of(a)
        if ca < 0:
            raise ValueError(f"function arguments must be coordinates, got {a!r}")
        arg_atoms.append(ca)
    atom = K.intern_func(name, arg_atoms, (0,) * len(arg_atoms))
    return Expr(K.rat_atom(atom))


def constant(name: str) -> Expr:
    return function_symbol(name, ())


def integer(n: int) -> Expr:
    return Expr.from_int(n)


def rational(p: int, q: int = 1) -> Expr:
    return Expr.from_fraction(Fraction(p, q))


# --------------------------------------------------------------------------
# Builtin functions
# --------------------------------------------------------------------------

def _as_rat(e):
    r = Expr._lift(e)
    if r is None:
        raise TypeError(f"expected expression, got {e!r}")
    return r


def sin(e) -> Expr:
    return Expr(K.build_sin(_as_rat(e)))


def cos(e) -> Expr:
    return Expr(K.build_cos(_as_rat(e)))


def exp(e) -> Expr:
    return Expr(K.build_exp(_as_rat(e)))


def log(e) -> Expr:
    return Expr(K.build_log(_as_rat(e)))


def sqrt(e) -> Expr:
    return Expr(K.build_sqrt(_as_rat(e)))


# --------------------------------------------------------------------------
# Differentiation
# --------------------------------------------------------------------------

_DERIV_CACHE: dict = {}


def _atom_derivative(a: int, c: int):
    key = (a, c)
    r = _DERIV_CACHE.get(key)
    if r is not None:
        return r
    kind = K.atom_kind(a)
    if kind == _KIND_COORD:
        r = K.rat_from_int(1 if a == c else 0)
    elif kind == _KIND_FUNC:
        name, args, deriv = K.atom_payload(a)
        if c in args:
            i = args.index(c)
            nd = list(deriv)
            nd[i] += 1
            r = K.rat_atom(K.intern_func(name, args, nd))
        else:
            r = K.rat_from_int(0)
    elif kind == _KIND_SIN:
        arg = K.atom_payload(a)
        r = K.rat_mul(K.build_cos(arg), _rat_diff(arg, c))
    elif kind == _KIND_COS:
        arg = K.atom_payload(a)
        r = K.rat_neg(K.rat_mul(K.build_sin(arg), _rat_diff(arg, c)))
    elif kind == _KIND_EXP:
        arg = K.atom_payload(a)
        r = K.rat_mul(K.rat_atom(a), _rat_diff(arg, c))
    elif kind == _KIND_LOG:
        arg = K.atom_payload(a)
        r = K.rat_div(_rat_diff(arg, c), arg)
    elif kind == _KIND_SQRT:
        rad = K.atom_payload(a)
        drad = K._poly_diff(rad, lambda aa: _atom_derivative(aa, c))
        # d sqrt(P) = P' * sqrt(P) / (2 P)
        r = K.rat_mul(drad, K.rat_div(K.rat_atom(a),
                                      K.rat_mul(K.rat_from_int(2), (rad, {(): Fraction(1)}))))
    else:  # pragma: no cover
        raise AssertionError("unknown atom kind")
    _DERIV_CACHE[key] = r
    return r


def _rat_diff(r, c: int):
    return K.rat_diff(r, lambda a: _atom_derivative(a, c))


def differentiate(e, coord) -> Expr:
    """Exact partial derivative with respect to a declared coordinate."""
    ca = _coord_atom_of(coord)
    if ca < 0:
        raise UnknownCoordinateError(f"unknown coordinate {coord!r}")
    return Expr(_rat_diff(_as_rat(e), ca))


def simplify(e) -> Expr:
    """Re-normalize; the canonical form makes this idempotent."""
    n, d = _as_rat(e)
    return Expr(K.rat_make(dict(n), dict(d)))


# --------------------------------------------------------------------------
# Atom closure and free functions
# --------------------------------------------------------------------------

def _atom_closure(rat, acc=None):
    """All atoms reachable from a rat, through builtin payloads."""
    if acc is None:
        acc = set()
    stack = list(K.rat_atoms(rat))
    while stack:
        a = stack.pop()
        if a in acc:
            continue
        acc.add(a)
        kind = K.atom_kind(a)
        if kind in (_KIND_SIN, _KIND_COS, _KIND_EXP, _KIND_LOG):
            stack.extend(K.rat_atoms(K.atom_payload(a)))
        elif kind == _KIND_SQRT:
            stack.extend(K.poly_atoms(K.atom_payload(a)))
    return acc


def free_functions(e) -> frozenset:
    """Names of function symbols occurring anywhere in the expression."""
    names = set()
    for a in _atom_closure(_as_rat(e)):
        if K.atom_kind(a) == _KIND_FUNC:
            names.add(K.atom_payload(a)[0])
    return frozenset(names)


def free_coordinates(e) -> frozenset:
    names = set()
    for a in _atom_closure(_as_rat(e)):
        if K.atom_kind(a) == _KIND_COORD:
            names.add(K.atom_payload(a)[0])
    return frozenset(names)


# --------------------------------------------------------------------------
# Exact zero test with explicit undecidability
# --------------------------------------------------------------------------

def _frac_linear_dependent(vectors) -> bool:
    """Exact rational linear dependence of coefficient-vector dicts."""
    basis = []
    for vec in vectors:
        v = dict(vec)
        for b in basis:
            piv, pval = b[0]
            x = v.get(piv)
            if x:
                f = x / pval
                for m, c in b[1].items():
                    nc = v.get(m, Fraction(0)) - f * c
                    if nc:
                        v[m] = nc
                    else:
                        v.pop(m, None)
        v = {m: c for m, c in v.items() if c}
        if not v:
            return True
        piv = next(iter(v))
        basis.append(((piv, v[piv]), v))
    return False


def _trig_args_dependent(args) -> bool:
    if len(args) < 2:
        return False
    # Clear denominators: a_i = N_i / D_i; test dependence of N_i * prod_{j!=i} D_j.
    dens = [a[1] for a in args]
    vecs = []
    for i, (n, _d) in enumerate(args):
        p = dict(n)
        for j, dj in enumerate(dens):
            if j != i:
                p = K.poly_mul(p, dj)
        vecs.append(p)
    return _frac_linear_dependent(vecs)


def _mult_decompose(r, depth=0):
    """Write a rat as rational * prod(atom^k) with k half-integers (sqrt atoms
    expanded); returns (Fraction, {atom: Fraction}) or None when not monomial."""
    if depth > 8:
        return None
    n, d = r
    if len(n) != 1 or len(d) != 1:
        return None
    (mn, cn), = n.items()
    (md, cd), = d.items()
    out = {}
    coef = cn / cd

    def _absorb(m, sgn):
        for a, e in m:
            if K.atom_kind(a) == _KIND_SQRT:
                sub = _mult_decompose((K.atom_payload(a), {(): Fraction(1)}), depth + 1)
                if sub is None:
                    return False
                c2, f2 = sub
                # sqrt contributes half exponents
                half = Fraction(e * sgn, 2)
                for aa, ee in f2.items():
                    out[aa] = out.get(aa, Fraction(0)) + ee * half
                if c2 != 1:
                    # fold sqrt of the rational content as a formal half power
                    out[("const", c2)] = out.get(("const", c2), Fraction(0)) + half
            else:
                out[a] = out.get(a, Fraction(0)) + Fraction(e * sgn)
        return True

    if not _absorb(mn, 1) or not _absorb(md, -1):
        return None
    return coef, {a: e for a, e in out.items() if e}


def _log_args_dependent(args) -> bool:
    if len(args) < 2:
        return False
    rows = []
    for r in args:
        dec = _mult_decompose(r)
        if dec is None:
            return True  # conservative: non-monomial argument
        coef, facs = dec
        row = dict(facs)
        # prime-factor the rational coefficient into pseudo-atoms
        for base, enum in ((coef.numerator, 1), (coef.denominator, -1)):
            m = abs(base)
            f = 2
            while f * f <= m and f < 100000:
                while m % f == 0:
                    row[("p", f)] = row.get(("p", f), Fraction(0)) + enum
                    m //= f
                f += 1
            if m > 1:
                row[("p", m)] = row.get(("p", m), Fraction(0)) + enum
        rows.append({k: v for k, v in row.items() if v})
    return _frac_linear_dependent(rows)


def _sqrt_radicands_dependent(rads) -> bool:
    k = len(rads)
    if k < 2:
        return False
    if k > 6:
        return True  # conservative cap
    for mask in range(1, 1 << k):
        if mask & (mask - 1) == 0:
            continue  # singletons are square-reduced by construction
        prod = {(): Fraction(1)}
        for i in range(k):
            if mask & (1 << i):
                prod = K._free_mul(prod, rads[i])
        if K.poly_sqrt(prod) is not None:
            return True
    return False


def is_zero(e) -> bool:
    """Exact zero decision; raises UndecidedZeroError outside the decidable class."""
    rat = _as_rat(e)
    if K.rat_is_zero(rat):
        return True
    closure = _atom_closure(rat)
    trig_args = {}
    log_args = {}
    sqrt_rads = {}
    for a in closure:
        kind = K.atom_kind(a)
        if kind in (_KIND_SIN, _KIND_COS):
            arg = K.atom_payload(a)
            trig_args[K.rat_key(arg)] = arg
        elif kind == _KIND_LOG:
            arg = K.atom_payload(a)
            log_args[K.rat_key(arg)] = arg
        elif kind == _KIND_SQRT:
            rad = K.atom_payload(a)
            sqrt_rads[K.poly_key(rad)] = rad
    if _trig_args_dependent(list(trig_args.values())):
        raise UndecidedZeroError(
            "nonzero normal form with rationally dependent trig arguments")
    if _sqrt_radicands_dependent(list(sqrt_rads.values())):
        raise UndecidedZeroError(
            "nonzero normal form with multiplicatively dependent square roots")
    if _log_args_dependent(list(log_args.values())):
        raise UndecidedZeroError(
            "nonzero normal form with multiplicatively dependent log arguments")
    return False


# --------------------------------------------------------------------------
# Substitution
# --------------------------------------------------------------------------

def _binding_tables(bindings):
    coord_map = {}
    func_map = {}
    for k, v in bindings.items():
        val = v if isinstance(v, Expr) else Expr.from_fraction(Fraction(v))
        ca = _coord_atom_of(k)
        if ca >= 0:
            coord_map[ca] = val
            continue
        name = None
        if isinstance(k, str):
            name = k
        elif isinstance(k, Expr):
            atoms = K.rat_atoms(k._rat)
            if len(atoms) == 1:
                a = next(iter(atoms))
                if K.atom_kind(a) == _KIND_FUNC:
                    name = K.atom_payload(a)[0]
        if name is None:
            raise SubstitutionError(f"binding key {k!r} is neither a coordinate "
                                    "nor a function symbol")
        func_map[name] = val
    return coord_map, func_map


def _subs_functions(rat, func_map):
    memo = {}

    def atom_val(a):
        r = memo.get(a)
        if r is not None:
            return r
        kind = K.atom_kind(a)
        if kind == _KIND_FUNC:
            name, args, deriv = K.atom_payload(a)
            if name in func_map:
                val = func_map[name]._rat
                for c, n in zip(args, deriv):
                    for _ in range(n):
                        val = _rat_diff(val, c)
                r = val
            else:
                r = K.rat_atom(a)
        elif kind in (_KIND_SIN, _KIND_COS, _KIND_EXP, _KIND_LOG):
            arg = rat_map(K.atom_payload(a))
            build = {_KIND_SIN: K.build_sin, _KIND_COS: K.build_cos,
                     _KIND_EXP: K.build_exp, _KIND_LOG: K.build_log}[kind]
            r = build(arg)
        elif kind == _KIND_SQRT:
            r = K.build_sqrt(rat_map((K.atom_payload(a), {(): Fraction(1)})))
        else:
            r = K.rat_atom(a)
        memo[a] = r
        return r

    def rat_map(r):
        return _rebuild_rat(r, atom_val)

    return rat_map(rat)


def _rebuild_rat(r, atom_val):
    n, d = r
    num = _rebuild_poly(n, atom_val)
    den = _rebuild_poly(d, atom_val)
    return K.rat_div(num, den)


def _rebuild_poly(p, atom_val):
    total = K.rat_from_int(0)
    for m, c in p.items():
        term = K.rat_from_fraction(c)
        for a, e in m:
            term = K.rat_mul(term, K.rat_pow(atom_val(a), e))
        total = K.rat_add(total, term)
    return total


def _subs_coordinates(rat, coord_map):
    memo = {}

    def atom_val(a):
        r = memo.get(a)
        if r is not None:
            return r
        kind = K.atom_kind(a)
        if kind == _KIND_COORD:
            r = coord_map[a]._rat if a in coord_map else K.rat_atom(a)
        elif kind == _KIND_FUNC:
            name, args, deriv = K.atom_payload(a)
            new_args = []
            changed = False
            for c in args:
                if c in coord_map:
                    ca = _coord_atom_of(coord_map[c])
                    if ca < 0:
                        raise SubstitutionError(
                            f"cannot substitute a non-coordinate expression for "
                            f"coordinate inside opaque function {name!r}")
                    new_args.append(ca)
                    changed = True
                else:
                    new_args.append(c)
            r = K.rat_atom(K.intern_func(name, new_args, deriv) if changed else a)
        elif kind in (_KIND_SIN, _KIND_COS, _KIND_EXP, _KIND_LOG):
            arg = _rebuild_rat(K.atom_payload(a), atom_val)
            build = {_KIND_SIN: K.build_sin, _KIND_COS: K.build_cos,
                     _KIND_EXP: K.build_exp, _KIND_LOG: K.build_log}[kind]
            r = build(arg)
        elif kind == _KIND_SQRT:
            r = K.build_sqrt(_rebuild_rat((K.atom_payload(a), {(): Fraction(1)}), atom_val))
        else:  # pragma: no cover
            raise AssertionError("unknown atom kind")
        memo[a] = r
        return r

    return _rebuild_rat(rat, atom_val)


def substitute(e, bindings) -> Expr:
    """Capture-free substitution (function bindings first, then coordinates)."""
    rat = _as_rat(e)
    coord_map, func_map = _binding_tables(bindings)
    if func_map:
        rat = _subs_functions(rat, func_map)
    if coord_map:
        rat = _subs_coordinates(rat, coord_map)
    return Expr(rat)


# --------------------------------------------------------------------------
# Numeric evaluation (exterior utility; the kernel itself stays float-free)
# --------------------------------------------------------------------------

def numeric_value(e, bindings) -> float:
    """Evaluate to a float with all coordinates/constants bound.

    ``bindings`` maps symbol names to numbers.  Opaque non-constant function
    symbols must be substituted away first; unbound symbols are reported.
    """
    rat = _as_rat(e)
    unbound = set()
    for a in _atom_closure(rat):
        kind = K.atom_kind(a)
        if kind == _KIND_COORD:
            name = K.atom_payload(a)[0]
            if name not in bindings:
                unbound.add(name)
        elif kind == _KIND_FUNC:
            name, args, _deriv = K.atom_payload(a)
            if args or name not in bindings:
                unbound.add(name)
    if unbound:
        raise UnboundSymbolError(unbound)
    memo = {}

    def atom_val(a):
        if a in memo:
            return memo[a]
        kind = K.atom_kind(a)
        if kind == _KIND_COORD:
            v = float(bindings[K.atom_payload(a)[0]])
        elif kind == _KIND_FUNC:
            v = float(bindings[K.atom_payload(a)[0]])
        elif kind == _KIND_SQRT:
            v = poly_val(K.atom_payload(a))
            v = math.sqrt(v) if v > 0 else float("nan")
        else:
            x = rat_val(K.atom_payload(a))
            v = {_KIND_SIN: math.sin, _KIND_COS: math.cos,
                 _KIND_EXP: math.exp, _KIND_LOG: math.log}[kind](x)
        memo[a] = v
        return v

    def poly_val(p):
        t = 0.0
        for m, c in p.items():
            term = float(c)
            for a, ee in m:
                term *= atom_val(a) ** ee
            t += term
        return t

    def rat_val(r):
        return poly_val(r[0]) / poly_val(r[1])

    return rat_val(rat)


# --------------------------------------------------------------------------
# Rendering (canonical, grammar-compatible)
# --------------------------------------------------------------------------

_DISPLAY_CACHE: dict = {}


def _atom_str(a) -> str:
    s = _DISPLAY_CACHE.get(a)
    if s is not None:
        return s
    kind = K.atom_kind(a)
    if kind == _KIND_COORD:
        s = K.atom_payload(a)[0]
    elif kind == _KIND_FUNC:
        name, args, deriv = K.atom_payload(a)
        app = name + "(" + ",".join(K.atom_payload(c)[0] for c in args) + ")" \
            if args else name
        if any(deriv):
            ds = []
            for c, n in zip(args, deriv):
                ds.extend([K.atom_payload(c)[0]] * n)
            s = "diff(" + app + "," + ",".join(ds) + ")"
        else:
            s = app
    elif kind == _KIND_SQRT:
        s = "sqrt(" + _poly_str(K.atom_payload(a)) + ")"
    else:
        s = _BUILTIN_NAMES[kind] + "(" + _rat_str(K.atom_payload(a)) + ")"
    _DISPLAY_CACHE[a] = s
    return s


def _atom_sort_key(a):
    kind = K.atom_kind(a)
    if kind == _KIND_COORD:
        return (0, K.atom_payload(a)[1], "")
    if kind == _KIND_FUNC:
        return (1, 0, _atom_str(a))
    return (2, kind, _atom_str(a))


def _mono_str(m, coeff) -> str:
    factors = []
    for a, e in sorted(m, key=lambda ae: _atom_sort_key(ae[0])):
        s = _atom_str(a)
        factors.append(s if e == 1 else f"{s}^{e}")
    c = abs(coeff)
    if not factors:
        return _frac_str(c)
    body = "*".join(factors)
    if c != 1:
        return _frac_str(c) + "*" + body
    return body


def _frac_str(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _term_order_key(item):
    m, _c = item
    deg = sum(e for _a, e in m)
    return (-deg, tuple((_atom_sort_key(a), -e) for a, e in
                        sorted(m, key=lambda ae: _atom_sort_key(ae[0]))))


def _poly_str(p) -> str:
    if not p:
        return "0"
    parts = []
    for m, c in sorted(p.items(), key=_term_order_key):
        s = _mono_str(m, c)
        if not parts:
            parts.append(("-" if c < 0 else "") + s)
        else:
            parts.append((" - " if c < 0 else " + ") + s)
    return "".join(parts)


def _rat_str(r) -> str:
    n, d = r
    ns = _poly_str(n)
    if len(d) == 1 and () in d and d[()] == 1:
        return ns
    ds = _poly_str(d)
    if len(n) > 1 or (len(n) == 1 and next(iter(n.values())) < 0):
        ns = "(" + ns + ")"
    if len(d) > 1 or len(next(iter(d))) > 1 or d.get((), Fraction(1)) != 1:
        ds = "(" + ds + ")"
    return ns + "/" + ds


def render(e) -> str:
    return _rat_str(_as_rat(e))
