"""Exact arithmetic kernel: sparse polynomials and rational functions over interned atoms.

This module is the hot inner core of the whole engine.  Every symbolic scalar is
normalized to a pair of polynomials (numerator, denominator) whose variables are
interned "atoms": coordinates, jets of opaque function symbols, and applications
of the builtin functions sin/cos/exp/log/sqrt.  The registered rewrite rules

    cos(a)^2        -> 1 - sin(a)^2
    exp(a) * exp(b) -> exp(a + b)
    log(exp(a))     -> a
    sqrt(a)^2       -> a

are applied eagerly during multiplication and atom construction, so within the
supported expression class the zero polynomial is the canonical form of zero.
Coefficients are arbitrary-precision rationals; no floating point enters.

The same file runs as pure Python or compiled by Cython (see setup.py); the
import system picks the built extension when present.  ``COMPILED`` reports
which backend is active.
"""

import threading
from fractions import Fraction
from math import gcd as _igcd, isqrt

try:
    import cython

    COMPILED = cython.compiled
except ImportError:  # pragma: no cover - cython is normally importable
    COMPILED = False

try:
    # exact GMP-backed rationals; a transparent drop-in several times faster
    # than fractions.Fraction, still arbitrary precision, never floating
    from gmpy2 import mpq as _Q

    GMP = True
except ImportError:  # pragma: no cover - gmpy2 is an optional accelerator
    _Q = Fraction
    GMP = False


class KernelError(ArithmeticError):
    """Internal arithmetic invariant violated (exact division failed, etc.)."""


# --------------------------------------------------------------------------
# Atom registry
# --------------------------------------------------------------------------

K_COORD = 0
K_FUNC = 1
K_SIN = 2
K_COS = 3
K_EXP = 4
K_LOG = 5
K_SQRT = 6

_ATOM_KIND = []
_ATOM_PAYLOAD = []
_INTERN = {}
_LOCK = threading.Lock()

_F0 = _Q(0)
_F1 = _Q(1)


def _new_atom(key, kind, payload):
    with _LOCK:
        a = _INTERN.get(key)
        if a is None:
            a = len(_ATOM_KIND)
            _ATOM_KIND.append(kind)
            _ATOM_PAYLOAD.append(payload)
            _INTERN[key] = a
    return a


def atom_kind(a):
    return _ATOM_KIND[a]


def atom_payload(a):
    return _ATOM_PAYLOAD[a]


def intern_coord(name):
    """Intern a coordinate symbol; payload is (name, declaration_seq)."""
    key = ("c", name)
    with _LOCK:
        a = _INTERN.get(key)
        if a is None:
            seq = sum(1 for k in _ATOM_KIND if k == K_COORD)
            a = len(_ATOM_KIND)
            _ATOM_KIND.append(K_COORD)
            _ATOM_PAYLOAD.append((name, seq))
            _INTERN[key] = a
    return a


def lookup_coord(name):
    """Atom id of an already-interned coordinate, or -1."""
    a = _INTERN.get(("c", name))
    return -1 if a is None else a


def intern_func(name, args, deriv):
    """Intern a function-symbol jet: ``name`` applied to the coordinate atoms
    ``args``, carrying the partial-derivative multi-index ``deriv``."""
    args = tuple(args)
    deriv = tuple(deriv)
    if len(args) != len(deriv):
        raise KernelError("derivative multi-index does not match argument list")
    return _new_atom(("f", name, args, deriv), K_FUNC, (name, args, deriv))


# A polynomial is {monomial: Fraction}; a monomial is a tuple of (atom, exp)
# pairs sorted by atom id with exp > 0.  () is the unit monomial.

def poly_key(p):
    """Hashable canonical key of a polynomial."""
    return tuple(sorted(p.items()))


def rat_key(r):
    return (poly_key(r[0]), poly_key(r[1]))


def poly_atoms(p, acc=None):
    if acc is None:
        acc = set()
    for m in p:
        for a, _e in m:
            acc.add(a)
    return acc


def rat_atoms(r):
    acc = poly_atoms(r[0])
    return poly_atoms(r[1], acc)


# --------------------------------------------------------------------------
# Monomials.  _mkey is graded lex (atom 0 most significant), a true monomial
# order, so leading terms are multiplicative: lead(p*q) = lead(p)*lead(q).
# --------------------------------------------------------------------------

def _mono_degree(m):
    d = 0
    for _a, e in m:
        d += e
    return d


def _mkey(m):
    return (_mono_degree(m), tuple((-a, e) for a, e in m))


def _poly_leading(p):
    """(monomial, coeff) of the leading term under graded lex."""
    best = None
    bk = None
    for m, c in p.items():
        k = _mkey(m)
        if bk is None or k > bk:
            bk = k
            best = (m, c)
    return best


def _mono_mul_plain(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = 0
    j = 0
    n1 = len(m1)
    n2 = len(m2)
    while i < n1 and j < n2:
        a1, e1 = m1[i]
        a2, e2 = m2[j]
        if a1 == a2:
            out.append((a1, e1 + e2))
            i += 1
            j += 1
        elif a1 < a2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def _mono_div(m, d):
    """m / d, or None when not divisible."""
    if not d:
        return m
    dd = dict(m)
    for a, e in d:
        have = dd.get(a, 0)
        if have < e:
            return None
        if have == e:
            del dd[a]
        else:
            dd[a] = have - e
    return tuple(sorted(dd.items()))


def _mono_gcd(m1, m2):
    if not m1 or not m2:
        return ()
    d2 = dict(m2)
    out = []
    for a, e in m1:
        e2 = d2.get(a, 0)
        if e2:
            out.append((a, e if e < e2 else e2))
    return tuple(out)


def _common_mono(p):
    """GCD of all monomials of p."""
    it = iter(p)
    try:
        g = next(it)
    except StopIteration:
        return ()
    for m in it:
        if not g:
            return ()
        g = _mono_gcd(g, m)
    return g


# --------------------------------------------------------------------------
# Free-ring helpers (no rewrite rules).  Used by gcd / exact division /
# square roots, where divisibility is judged in the free ring; quotients and
# gcds of reduced polynomials are automatically reduced (their per-atom
# degrees cannot exceed those of the inputs).
# --------------------------------------------------------------------------

def _add_term(acc, m, c):
    c0 = acc.get(m)
    if c0 is None:
        acc[m] = c
    else:
        c0 = c0 + c
        if c0:
            acc[m] = c0
        else:
            del acc[m]


def _free_mul(p, q):
    out = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            _add_term(out, _mono_mul_plain(m1, m2), c1 * c2)
    return out


# --------------------------------------------------------------------------
# Reducing polynomial arithmetic (rewrite rules applied)
# --------------------------------------------------------------------------

def poly_add(p, q):
    if not p:
        return dict(q)
    if not q:
        return dict(p)
    out = dict(p)
    for m, c in q.items():
        _add_term(out, m, c)
    return out


def poly_neg(p):
    return {m: -c for m, c in p.items()}


def poly_sub(p, q):
    return poly_add(p, poly_neg(q))


def poly_scale(p, f):
    if not f:
        return {}
    return {m: c * f for m, c in p.items()}


def _mono_needs_fix(m):
    kinds = _ATOM_KIND
    nexp = 0
    for a, e in m:
        k = kinds[a]
        if k == K_EXP:
            nexp += 1
            if e != 1 or nexp > 1:
                return True
        elif e >= 2 and (k == K_COS or k == K_SQRT):
            return True
    return False


def _normalize_mono_into(acc, m, c):
    """Rewrite a raw monomial (cos^2, sqrt^2, exp products) into ``acc``.

    Terminates: the cos rule only introduces sin atoms (never rewritten), and
    a sqrt radicand only contains atoms older than the sqrt atom itself.
    """
    plain = []
    pieces = []
    exp_arg = None
    for a, e in m:
        k = _ATOM_KIND[a]
        if k == K_COS and e >= 2:
            s = _new_atom(("s", rat_key(_ATOM_PAYLOAD[a])), K_SIN, _ATOM_PAYLOAD[a])
            base = {(): _F1, ((s, 2),): -_F1}  # 1 - sin(arg)^2
            pieces.append(poly_pow(base, e // 2))
            if e & 1:
                plain.append((a, 1))
        elif k == K_SQRT and e >= 2:
            pieces.append(poly_pow(_ATOM_PAYLOAD[a], e // 2))
            if e & 1:
                plain.append((a, 1))
        elif k == K_EXP:
            arg = _ATOM_PAYLOAD[a]
            if e != 1:
                arg = rat_mul(rat_from_int(e), arg)
            exp_arg = arg if exp_arg is None else rat_add(exp_arg, arg)
        else:
            plain.append((a, e))
    if exp_arg is not None and not rat_is_zero(exp_arg):
        plain.append((_new_atom(("e", rat_key(exp_arg)), K_EXP, exp_arg), 1))
    plain.sort()
    base = {tuple(plain): c}
    for piece in pieces:
        base = poly_mul(base, piece)
    for mm, cc in base.items():
        _add_term(acc, mm, cc)


def poly_mul(p, q):
    if not p or not q:
        return {}
    out = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = _mono_mul_plain(m1, m2)
            c = c1 * c2
            if _mono_needs_fix(m):
                _normalize_mono_into(out, m, c)
            else:
                _add_term(out, m, c)
    return out


def poly_pow(p, n):
    if n < 0:
        raise KernelError("negative polynomial power")
    out = {(): _F1}
    base = p
    while n:
        if n & 1:
            out = poly_mul(out, base)
        n >>= 1
        if n:
            base = poly_mul(base, base)
    return out


# --------------------------------------------------------------------------
# Content, gcd, exact division, square root
# --------------------------------------------------------------------------

def poly_content(p):
    """Rational content carrying the sign of the leading coefficient."""
    if not p:
        return _F0
    gn = 0
    ld = 1
    for c in p.values():
        gn = _igcd(gn, c.numerator)
        ld = ld // _igcd(ld, c.denominator) * c.denominator
    cont = _Q(gn, ld)
    if _poly_leading(p)[1] < 0:
        cont = -cont
    return cont


def _poly_primitive(p):
    """(content, primitive part): coprime integer coefficients, positive lead."""
    if not p:
        return _F0, {}
    cont = poly_content(p)
    if cont == 1:
        return cont, p
    inv = 1 / cont
    return cont, {m: c * inv for m, c in p.items()}


def _max_atom(p):
    best = -1
    for m in p:
        for a, _e in m:
            if a > best:
                best = a
    return best


def _to_uni(p, x):
    """View p as univariate in atom x: {degree: coefficient-poly}."""
    out = {}
    for m, c in p.items():
        d = 0
        rest = m
        for i in range(len(m) - 1, -1, -1):
            if m[i][0] == x:
                d = m[i][1]
                rest = m[:i] + m[i + 1:]
                break
            if m[i][0] < x:
                break
        cd = out.get(d)
        if cd is None:
            out[d] = {rest: c}
        else:
            _add_term(cd, rest, c)
    return {d: cp for d, cp in out.items() if cp}


def _from_uni(u, x):
    out = {}
    for d, cp in u.items():
        if d == 0:
            for m, c in cp.items():
                _add_term(out, m, c)
        else:
            xm = ((x, d),)
            for m, c in cp.items():
                _add_term(out, _mono_mul_plain(m, xm), c)
    return out


def _uni_content(u):
    g = {}
    for cp in sorted(u.values(), key=len):
        g = poly_gcd(g, cp)
        if len(g) == 1 and () in g:
            break
    return g


def _uni_primitive(u):
    if not u:
        return u
    g = _uni_content(u)
    if len(g) == 1 and () in g:
        return u
    return {d: poly_divexact(cp, g) for d, cp in u.items()}


def _uni_pseudo_rem(A, B, dB, lcB):
    """Pseudo-remainder of A by B (univariate dicts with poly coefficients);
    correct up to content, which the primitive PRS discards anyway."""
    R = {d: cp for d, cp in A.items()}
    while R:
        dR = max(R)
        if dR < dB:
            break
        lcR = R.pop(dR)
        nR = {}
        for d, cp in R.items():
            nR[d] = _free_mul(cp, lcB)
        for d, cp in B.items():
            if d == dB:
                continue
            shift = d + dR - dB
            t = poly_neg(_free_mul(cp, lcR))
            c0 = nR.get(shift)
            nc = poly_add(c0, t) if c0 is not None else t
            if nc:
                nR[shift] = nc
            else:
                nR.pop(shift, None)
        R = nR
    return R


def _atom_degree(p, x):
    d = 0
    for m in p:
        for a, e in m:
            if a == x and e > d:
                d = e
    return d


def _max_norm_int(p):
    """Largest absolute coefficient numerator (inputs are integer polys)."""
    mx = 0
    for c in p.values():
        v = c.numerator if c.numerator >= 0 else -c.numerator
        if v > mx:
            mx = v
    return mx


def _eval_atom(p, x, xi):
    """Substitute the integer xi for atom x."""
    out = {}
    powers = {0: 1}
    for m, c in p.items():
        e = 0
        rest = m
        for i in range(len(m)):
            if m[i][0] == x:
                e = m[i][1]
                rest = m[:i] + m[i + 1:]
                break
        if e:
            pw = powers.get(e)
            if pw is None:
                pw = xi ** e
                powers[e] = pw
            v = c * pw
        else:
            v = c
        c0 = out.get(rest)
        if c0 is None:
            out[rest] = v
        else:
            c0 = c0 + v
            if c0:
                out[rest] = c0
            else:
                del out[rest]
    return out


def _genpoly(e, xi, x):
    """Reconstruct a polynomial in x from its base-xi evaluation (symmetric
    digits), the interpolation step of the heuristic gcd."""
    out = {}
    half = xi // 2
    i = 0
    e = dict(e)
    while e:
        digit = {}
        nxt = {}
        for m, c in e.items():
            r = c.numerator % xi
            if r > half:
                r -= xi
            if r:
                digit[m] = _Q(r)
            rest = (c - r) / xi
            if rest:
                nxt[m] = rest
        if digit:
            xm = ((x, i),) if i else ()
            for m, c in digit.items():
                out[_mono_mul_plain(m, xm)] = c
        e = nxt
        i += 1
        if i > 512:  # pragma: no cover - guards corrupt input
            raise KernelError("heuristic gcd reconstruction diverged")
    return out


def _try_divexact(p, d):
    try:
        return poly_divexact(p, d)
    except KernelError:
        return None


def _int_content_gcd(p, q):
    g = 0
    for c in p.values():
        g = _igcd(g, c.numerator)
        if g == 1:
            return {(): _F1}
    for c in q.values():
        g = _igcd(g, c.numerator)
        if g == 1:
            return {(): _F1}
    return {(): _Q(g)} if g else {}


def _heu_gcd(p, q, tries=6):
    """Heuristic evaluation gcd (integer-coefficient polys).

    Returns a verified common divisor, or None when the heuristic gives up;
    verification is by exact division, so a returned value is always sound.
    """
    common = poly_atoms(p) & poly_atoms(q)
    if not common:
        return _int_content_gcd(p, q)
    x = min(common, key=lambda a: _atom_degree(p, a) + _atom_degree(q, a))
    xi = 2 * min(_max_norm_int(p), _max_norm_int(q)) + 29
    for _ in range(tries):
        pe = _eval_atom(p, x, xi)
        qe = _eval_atom(q, x, xi)
        if pe and qe:
            ge = _heu_gcd(pe, qe, tries)
            if ge is not None and ge:
                cand = _poly_primitive(_genpoly(ge, xi, x))[1]
                if len(cand) == 1 and () in cand:
                    # trivial candidate: report coprimality without division
                    # (missing a rare cancellation is sound)
                    return {(): _F1}
                if cand and _try_divexact(p, cand) is not None \
                        and _try_divexact(q, cand) is not None:
                    return cand
        xi = xi * 73794 // 27011 + 1
    return None


def _prs_gcd(pp, qq, common):
    """Primitive PRS gcd; only safe for small inputs (fallback path)."""
    x = max(common)
    A = _to_uni(pp, x)
    B = _to_uni(qq, x)
    ca = _uni_content(A)
    cb = _uni_content(B)
    if not (len(ca) == 1 and () in ca):
        A = {d: poly_divexact(cp, ca) for d, cp in A.items()}
    if not (len(cb) == 1 and () in cb):
        B = {d: poly_divexact(cp, cb) for d, cp in B.items()}
    cont = poly_gcd(ca, cb)
    if max(A) < max(B):
        A, B = B, A
    while True:
        dB = max(B)
        R = _uni_pseudo_rem(A, B, dB, B[dB])
        if not R:
            g = _uni_primitive(B)
            break
        if max(R) == 0:
            g = None
            break
        A, B = B, _uni_primitive(R)
    gp = _from_uni(g, x) if g is not None else {(): _F1}
    if not (len(cont) == 1 and () in cont):
        gp = _free_mul(gp, cont)
    return gp


def poly_gcd(p, q):
    """Primitive (content-free, positive-leading) gcd in the free ring,
    including the common monomial factor.

    The workhorse is the heuristic evaluation gcd with exact-division
    verification; the primitive PRS serves as a small-input fallback.  When
    both give up the common monomial/content factor alone is returned, which
    only weakens cancellation, never correctness.
    """
    if not p:
        return _poly_primitive(q)[1] if q else {}
    if not q:
        return _poly_primitive(p)[1]
    mp = _common_mono(p)
    mq = _common_mono(q)
    mg = _mono_gcd(mp, mq)
    base = {mg: _F1}
    pp = {_mono_div(m, mp): c for m, c in p.items()}
    qq = {_mono_div(m, mq): c for m, c in q.items()}
    pp = _poly_primitive(pp)[1]
    qq = _poly_primitive(qq)[1]
    if len(pp) == 1 or len(qq) == 1:
        return base
    if poly_key(pp) == poly_key(qq):
        return _free_mul(base, pp) if mg else pp
    common = poly_atoms(pp) & poly_atoms(qq)
    if not common:
        return base
    gp = _heu_gcd(pp, qq)
    if gp is None:
        if len(pp) + len(qq) <= 60 and len(common) <= 3:
            gp = _prs_gcd(pp, qq, common)
        else:  # pragma: no cover - heuristic failure on large input
            gp = {(): _F1}
    gp = _poly_primitive(gp)[1]
    if mg:
        gp = _free_mul(gp, base)
    return gp


def poly_divexact(p, d):
    """Exact division in the free ring; raises KernelError when not exact."""
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    if not p:
        return {}
    if len(d) == 1:
        (dm, dc), = d.items()
        out = {}
        for m, c in p.items():
            mm = _mono_div(m, dm)
            if mm is None:
                raise KernelError("inexact monomial division")
            out[mm] = c / dc
        return out
    x = _max_atom(d)
    P = _to_uni(p, x)
    D = _to_uni(d, x)
    dD = max(D)
    lcD = D[dD]
    Q = {}
    while P:
        dP = max(P)
        if dP < dD:
            raise KernelError("inexact polynomial division")
        qc = poly_divexact(P[dP], lcD)
        Q[dP - dD] = qc
        for d2, cp in D.items():
            t = poly_neg(_free_mul(cp, qc))
            shift = d2 + dP - dD
            c0 = P.get(shift)
            nc = poly_add(c0, t) if c0 is not None else t
            if nc:
                P[shift] = nc
            else:
                P.pop(shift, None)
    return _from_uni(Q, x)


def _frac_sqrt(f):
    if f < 0:
        return None
    n = f.numerator
    d = f.denominator
    sn = isqrt(n)
    sd = isqrt(d)
    if sn * sn == n and sd * sd == d:
        return _Q(sn, sd)
    return None


def poly_sqrt(p):
    """Exact square root in the free ring, or None.

    Greedy head extraction under graded lex; the final verification makes the
    routine safe against any intermediate miss.
    """
    if not p:
        return {}
    lm, lc = _poly_leading(p)
    lcs = _frac_sqrt(lc)
    if lcs is None:
        return None
    half = []
    for a, e in lm:
        if e & 1:
            return None
        half.append((a, e // 2))
    hm = tuple(half)
    root = {hm: lcs}
    twol = lcs + lcs
    rem = poly_sub(p, _free_mul(root, root))
    guard = 4 * len(p) + 16
    while rem:
        guard -= 1
        if guard < 0:
            return None
        rm, rc = _poly_leading(rem)
        tm = _mono_div(rm, hm)
        if tm is None:
            return None
        root[tm] = rc / twol
        rem = poly_sub(p, _free_mul(root, root))
    cand = root
    if poly_key(_free_mul(cand, cand)) == poly_key(p):
        return cand
    return None


def _int_square_split(n):
    """n = s^2 * r with r squarefree-ish (trial division, perfect-square tail)."""
    s = 1
    r = 1
    m = n
    f = 2
    while f * f <= m and f < 100000:
        if m % f == 0:
            e = 0
            while m % f == 0:
                m //= f
                e += 1
            s *= f ** (e // 2)
            if e & 1:
                r *= f
        f += 1 if f == 2 else 2
    if m > 1:
        sm = isqrt(m)
        if sm * sm == m:
            s *= sm
        else:
            r *= m
    return s, r


# --------------------------------------------------------------------------
# Rational functions
# --------------------------------------------------------------------------

def rat_from_fraction(f):
    f = _Q(f)
    if not f:
        return ({}, {(): _F1})
    return ({(): f}, {(): _F1})


def rat_from_int(n):
    return rat_from_fraction(n)


def rat_atom(a):
    return ({((a, 1),): _F1}, {(): _F1})


def rat_is_zero(r):
    return not r[0]


def rat_is_const(r):
    n, d = r
    return (not n or (len(n) == 1 and () in n)) and len(d) == 1 and () in d


def rat_as_fraction(r):
    """The Fraction value of a constant rat, else None."""
    n, d = r
    if not n:
        return _F0
    if len(n) == 1 and len(d) == 1:
        cn = n.get(())
        cd = d.get(())
        if cn is not None and cd is not None:
            return cn / cd
    return None


def _den_strip_special(num, den):
    """Move exp factors and common sqrt factors out of the denominator."""
    cm = _common_mono(den)
    if not cm:
        return num, den
    for a, e in cm:
        k = _ATOM_KIND[a]
        if k == K_EXP:
            den = {_mono_div(m, ((a, e),)): c for m, c in den.items()}
            neg = rat_mul(rat_from_int(-e), _ATOM_PAYLOAD[a])
            num = poly_mul(num, {((_new_atom(("e", rat_key(neg)), K_EXP, neg), 1),): _F1})
        elif k == K_SQRT and (e & 1):
            sq = {((a, 1),): _F1}
            num = poly_mul(num, sq)
            den = poly_mul(den, sq)
    return num, den


def _first_den_sqrt(den):
    for m in den:
        for a, _e in m:
            if _ATOM_KIND[a] == K_SQRT:
                return a
    return -1


def _rationalize(num, den):
    """Clear sqrt atoms from the denominator by conjugation.

    Terminates: each conjugation replaces a sqrt atom by the atoms of its
    radicand, which were all interned earlier.
    """
    while True:
        a = _first_den_sqrt(den)
        if a < 0:
            return num, den
        A = {}
        B = {}
        am = ((a, 1),)
        for m, c in den.items():
            mm = _mono_div(m, am)
            if mm is None:
                _add_term(A, m, c)
            else:
                _add_term(B, mm, c)
        conj = poly_sub(A, poly_mul(B, {am: _F1}))
        num = poly_mul(num, conj)
        den = poly_sub(poly_mul(A, A), poly_mul(poly_mul(B, B), _ATOM_PAYLOAD[a]))
        if not den:
            raise KernelError("denominator collapsed during rationalization")


def rat_make(num, den):
    """Normalize a numerator/denominator pair into canonical form."""
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return ({}, {(): _F1})
    mn = _common_mono(num)
    md = _common_mono(den)
    mg = _mono_gcd(mn, md)
    if mg:
        num = {_mono_div(m, mg): c for m, c in num.items()}
        den = {_mono_div(m, mg): c for m, c in den.items()}
    num, den = _den_strip_special(num, den)
    num, den = _rationalize(num, den)
    if not (len(den) == 1 and () in den):
        g = poly_gcd(num, den)
        if not (len(g) == 1 and () in g):
            num = poly_divexact(num, g)
            den = poly_divexact(den, g)
    cont = poly_content(den)
    if cont != 1:
        inv = 1 / cont
        num = poly_scale(num, inv)
        den = poly_scale(den, inv)
    return (num, den)


def _is_const_poly(p):
    return len(p) == 1 and () in p


def rat_add(r1, r2):
    """Sum with Henrici-style cancellation: for reduced inputs the only common
    factor of the combined numerator and denominator divides gcd(d1, d2)."""
    n1, d1 = r1
    n2, d2 = r2
    if not n1:
        return r2
    if not n2:
        return r1
    if poly_key(d1) == poly_key(d2):
        return rat_make(poly_add(n1, n2), d1)
    if _is_const_poly(d1) or _is_const_poly(d2):
        num = poly_add(poly_mul(n1, d2), poly_mul(n2, d1))
        return rat_make(num, poly_mul(d1, d2))
    g = poly_gcd(d1, d2)
    if _is_const_poly(g):
        num = poly_add(poly_mul(n1, d2), poly_mul(n2, d1))
        return rat_make(num, poly_mul(d1, d2))
    d2g = poly_divexact(d2, g)
    d1g = poly_divexact(d1, g)
    t = poly_add(poly_mul(n1, d2g), poly_mul(n2, d1g))
    if not t:
        return ({}, {(): _F1})
    h = poly_gcd(t, g)
    den = poly_mul(d1, d2g)
    if not _is_const_poly(h):
        t = poly_divexact(t, h)
        den = poly_divexact(den, h)
    return rat_make(t, den)


def rat_sum(rats):
    """Sum many rats, grouping by denominator before normalizing.

    One normalization per distinct denominator instead of one per term; the
    workhorse for tensor component accumulation.
    """
    groups = {}
    order = []
    for r in rats:
        n, d = r
        if not n:
            continue
        k = poly_key(d)
        g = groups.get(k)
        if g is None:
            groups[k] = [d, dict(n)]
            order.append(k)
        else:
            g[1] = poly_add(g[1], n)
    total = ({}, {(): _F1})
    for k in order:
        d, n = groups[k]
        if n:
            total = rat_add(total, rat_make(n, d))
    return total


def rat_neg(r):
    return (poly_neg(r[0]), r[1])


def rat_sub(r1, r2):
    return rat_add(r1, rat_neg(r2))


def rat_mul(r1, r2):
    """Product with cross-cancellation before multiplying out."""
    n1, d1 = r1
    n2, d2 = r2
    if not n1 or not n2:
        return ({}, {(): _F1})
    if not _is_const_poly(d2) and not _is_const_poly(n1):
        g = poly_gcd(n1, d2)
        if not _is_const_poly(g):
            n1 = poly_divexact(n1, g)
            d2 = poly_divexact(d2, g)
    if not _is_const_poly(d1) and not _is_const_poly(n2):
        g = poly_gcd(n2, d1)
        if not _is_const_poly(g):
            n2 = poly_divexact(n2, g)
            d1 = poly_divexact(d1, g)
    return rat_make(poly_mul(n1, n2), poly_mul(d1, d2))


def rat_inv(r):
    n, d = r
    if not n:
        raise ZeroDivisionError("division by zero expression")
    return rat_make(d, n)


def rat_div(r1, r2):
    return rat_mul(r1, rat_inv(r2))


def rat_pow(r, k):
    if k == 0:
        return ({(): _F1}, {(): _F1})
    if k < 0:
        r = rat_inv(r)
        k = -k
    n, d = r
    return rat_make(poly_pow(n, k), poly_pow(d, k))


# --------------------------------------------------------------------------
# Builtin-function atoms (rewrites applied at build time)
# --------------------------------------------------------------------------

def _rat_sign_split(r):
    """(sign, |r|): canonical representative has a positive leading coefficient."""
    n, d = r
    if not n:
        return 1, r
    if _poly_leading(n)[1] < 0:
        return -1, (poly_neg(n), d)
    return 1, r


def build_sin(arg):
    if rat_is_zero(arg):
        return ({}, {(): _F1})
    sign, a = _rat_sign_split(arg)
    r = rat_atom(_new_atom(("s", rat_key(a)), K_SIN, a))
    return rat_neg(r) if sign < 0 else r


def build_cos(arg):
    if rat_is_zero(arg):
        return ({(): _F1}, {(): _F1})
    _sign, a = _rat_sign_split(arg)
    return rat_atom(_new_atom(("k", rat_key(a)), K_COS, a))


def build_exp(arg):
    if rat_is_zero(arg):
        return ({(): _F1}, {(): _F1})
    return rat_atom(_new_atom(("e", rat_key(arg)), K_EXP, arg))


def build_log(arg):
    if rat_is_zero(arg):
        raise ValueError("log of the zero expression")
    c = rat_as_fraction(arg)
    if c is not None:
        if c <= 0:
            raise ValueError("log of a non-positive constant")
        if c == 1:
            return ({}, {(): _F1})
    n, d = arg
    if len(n) == 1 and len(d) == 1 and d.get(()) == _F1:
        (m, cn), = n.items()
        if cn == _F1 and len(m) == 1 and m[0][1] == 1 and _ATOM_KIND[m[0][0]] == K_EXP:
            return _ATOM_PAYLOAD[m[0][0]]  # log(exp(a)) -> a
    return rat_atom(_new_atom(("l", rat_key(arg)), K_LOG, arg))


def build_sqrt(arg):
    """sqrt under generic-point (positive-branch) semantics.

    sqrt(n/d) = sqrt(n*d)/d; rational square content, even monomial powers and
    perfect-square polynomials are extracted, so the interned radicand is
    square-reduced and positive-content.
    """
    if rat_is_zero(arg):
        return ({}, {(): _F1})
    n, d = arg
    rad = poly_mul(n, d)
    den = dict(d)
    cont, prim = _poly_primitive(rad)
    if cont < 0:
        raise ValueError("sqrt of a negative-content expression")
    s, r = _int_square_split(cont.numerator * cont.denominator)
    num = {(): _Q(s, cont.denominator)}
    rad2 = poly_scale(prim, _Q(r)) if r != 1 else prim
    cm = _common_mono(rad2)
    evenpart = tuple((a, e - (e & 1)) for a, e in cm if e >= 2)
    if evenpart:
        num = poly_mul(num, {tuple((a, e // 2) for a, e in evenpart): _F1})
        rad2 = {_mono_div(m, evenpart): c for m, c in rad2.items()}
    full = poly_sqrt(rad2)
    if full is not None:
        return rat_make(poly_mul(num, full), den)
    atom = _new_atom(("q", poly_key(rad2)), K_SQRT, rad2)
    return rat_make(poly_mul(num, {((atom, 1),): _F1}), den)


# --------------------------------------------------------------------------
# Differentiation
# --------------------------------------------------------------------------

def _poly_formal_partial(p, a):
    """Formal partial derivative with respect to atom a (exponents only
    decrease, so no rewrite can trigger)."""
    out = {}
    for m, c in p.items():
        for i in range(len(m)):
            aa, e = m[i]
            if aa == a:
                if e == 1:
                    mm = m[:i] + m[i + 1:]
                else:
                    mm = m[:i] + ((aa, e - 1),) + m[i + 1:]
                _add_term(out, mm, c * e)
                break
    return out


def _poly_diff(p, deriv_cb):
    """Chain-rule derivative of a polynomial; deriv_cb maps an atom id to the
    rat derivative of that atom.  Returns a rat."""
    out = ({}, {(): _F1})
    for a in sorted(poly_atoms(p)):
        da = deriv_cb(a)
        if rat_is_zero(da):
            continue
        part = _poly_formal_partial(p, a)
        if part:
            out = rat_add(out, rat_mul((part, {(): _F1}), da))
    return out


def rat_diff(r, deriv_cb):
    n, d = r
    dn = _poly_diff(n, deriv_cb)
    if len(d) == 1 and () in d:
        return rat_mul(dn, rat_inv((d, {(): _F1})))
    dd = _poly_diff(d, deriv_cb)
    num = rat_sub(rat_mul(dn, (d, {(): _F1})), rat_mul((n, {(): _F1}), dd))
    return rat_mul(num, rat_inv((poly_mul(d, d), {(): _F1})))
