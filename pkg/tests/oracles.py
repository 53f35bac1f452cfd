"""Independent numeric oracles used to derive expected values.

The finite-difference pipeline below computes Christoffel symbols, Riemann
tensors and scalar contractions purely from a *numeric* metric callback with
numpy, never touching the symbolic differentiation path it cross-checks.
"""

import numpy as np

from curvinv.expr import numeric_value, substitute


def numeric_metric_fn(metric, func_bindings=None):
    """Callable point-dict -> numpy matrix, from a symbolic metric.

    Opaque functions must be bound to concrete expressions first.
    """
    mat = metric.matrix
    if func_bindings:
        mat = [[substitute(c, func_bindings) for c in row] for row in mat]
    names = metric.chart.names

    def fn(point):
        binds = dict(point)
        n = len(names)
        out = np.empty((n, n))
        for i in range(n):
            for j in range(n):
                out[i, j] = numeric_value(mat[i][j], binds)
        return out

    return fn


def fd_partial(fn, point, name, h=1e-5):
    """Central difference of a matrix-valued function of a point dict."""
    up = dict(point)
    dn = dict(point)
    up[name] = point[name] + h
    dn[name] = point[name] - h
    return (fn(up) - fn(dn)) / (2 * h)


def fd_christoffel(gfn, point, names, h=1e-5):
    """Gamma^a_{bc} by finite differences: the b slot is the differentiated
    one and c the direction, matching the engine's convention."""
    n = len(names)
    g = gfn(point)
    ginv = np.linalg.inv(g)
    dg = np.empty((n, n, n))  # dg[a][m][c] = d_c g_am
    for c, nm in enumerate(names):
        dg[:, :, c] = fd_partial(gfn, point, nm, h)
    low = np.empty((n, n, n))
    for a in range(n):
        for m in range(n):
            for c in range(n):
                low[a, m, c] = 0.5 * (dg[a, m, c] + dg[a, c, m] - dg[m, c, a])
    return np.einsum("ab,bmc->amc", ginv, low)


def fd_riemann(gfn, point, names, h=1e-4):
    """R^a_{bcd} from nested central differences of the connection."""
    n = len(names)

    def gamma_at(pt):
        return fd_christoffel(gfn, pt, names, h=1e-5)

    dgam = np.empty((n, n, n, n))  # d_e gamma^a_bc -> dgam[a,b,c,e]
    for e, nm in enumerate(names):
        up = dict(point)
        dn = dict(point)
        up[nm] = point[nm] + h
        dn[nm] = point[nm] - h
        dgam[:, :, :, e] = (gamma_at(up) - gamma_at(dn)) / (2 * h)
    gam = gamma_at(point)
    riem = np.empty((n, n, n, n))
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    val = dgam[a, b, d, c] - dgam[a, b, c, d]
                    val += np.dot(gam[a, :, c], gam[:, b, d])
                    val -= np.dot(gam[a, :, d], gam[:, b, c])
                    riem[a, b, c, d] = val
    return riem


def fd_kretschmann(gfn, point, names):
    """R_abcd R^abcd by finite differences and numpy contractions."""
    g = gfn(point)
    ginv = np.linalg.inv(g)
    riem = fd_riemann(gfn, point, names)
    low = np.einsum("ae,ebcd->abcd", g, riem)
    up = np.einsum("ap,bq,cr,ds,pqrs->abcd", ginv, ginv, ginv, ginv, low)
    return float(np.einsum("abcd,abcd->", low, up))


def fd_ricci_scalar(gfn, point, names):
    g = gfn(point)
    ginv = np.linalg.inv(g)
    riem = fd_riemann(gfn, point, names)
    ricci = np.einsum("abad->bd", riem)
    return float(np.einsum("bd,bd->", ginv, ricci))


def brute_force_contract(comps_a, var_a, comps_b, var_b, pair, n):
    """Direct index-summation oracle for tensor_product + contract.

    ``comps`` are dicts idx-tuple -> float; ``pair`` is (slot in a, slot in b)
    referring to the slots of the product tensor a (x) b.
    """
    ra = len(var_a)
    i, j = pair
    out = {}
    for ia, va in comps_a.items():
        for ib, vb in comps_b.items():
            idx = ia + ib
            if idx[i] != idx[j]:
                continue
            key = tuple(v for k, v in enumerate(idx) if k not in (i, j))
            out[key] = out.get(key, 0.0) + va * vb
    return out
