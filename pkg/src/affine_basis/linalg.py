"""Small exact linear algebra helpers over the rationals.

Ranks of large integer Gram matrices go through the kernel's fraction-free
elimination (kernels.rank_int); the routines here serve the outer layers
(coordinate solves, nullspaces, intertwiner systems), which are smaller but
need exact solutions, not just ranks.

Internally the eliminations run on gmpy2 rationals when gmpy2 is installed
(its arithmetic is several times faster than fractions.Fraction); results
are always converted back to Fraction so callers see one type.  Both paths
are exact.
"""

from fractions import Fraction

from .kernels import rank_int

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - gmpy2 present in the usual setup
    _Q = Fraction

_ZERO = _Q(0)
_ONE = _Q(1)


def _to_fraction(x):
    return Fraction(int(x.numerator), int(x.denominator))


def rank_exact(rows):
    """Rank of a matrix with int or Fraction entries."""
    if not rows or not rows[0]:
        return 0
    cleared = []
    for row in rows:
        lcm = 1
        for x in row:
            if isinstance(x, Fraction):
                d = x.denominator
                lcm = lcm * d // _gcd(lcm, d)
        cleared.append([int(x * lcm) for x in row])
    return rank_int(cleared)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _rref_q(rows):
    """Reduced row echelon form on _Q entries, in place on a fresh copy.
    Returns (matrix, pivot_cols)."""
    m = [[_Q(x) for x in row] for row in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    pivots = []
    r = 0
    for c in range(nc):
        piv = -1
        for rr in range(r, nr):
            if m[rr][c]:
                piv = rr
                break
        if piv < 0:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = _ONE / m[r][c]
        m[r] = [x * inv for x in m[r]]
        mr = m[r]
        for rr in range(nr):
            if rr != r and m[rr][c]:
                f = m[rr][c]
                m[rr] = [a - f * b for a, b in zip(m[rr], mr)]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return m, pivots


def rref(rows):
    """Reduced row echelon form over Fraction.  Returns (matrix, pivot_cols)."""
    m, pivots = _rref_q(rows)
    return [[_to_fraction(x) for x in row] for row in m], pivots


def _nullspace_q(rows):
    if not rows:
        return []
    nc = len(rows[0])
    m, pivots = _rref_q(rows)
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for fc in free:
        v = [_ZERO] * nc
        v[fc] = _ONE
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][fc]
        basis.append(v)
    return basis


def nullspace(rows):
    """Basis of the right nullspace (list of Fraction vectors), from RREF;
    deterministic: one basis vector per free column, in column order."""
    return [[_to_fraction(x) for x in v] for v in _nullspace_q(rows)]


def solve(a_rows, b):
    """Solve A x = b exactly.  Returns (particular, nullspace_basis) with
    particular None when inconsistent.  Free variables are set to zero, so
    the particular solution is deterministic.  One elimination serves both
    answers: the augmented RREF restricted to the coefficient columns is an
    RREF of A (the extra pivot, if any, sits in the constant column)."""
    nr = len(a_rows)
    nc = len(a_rows[0]) if nr else 0
    aug = [list(row) + [bv] for row, bv in zip(a_rows, b)]
    m, pivots = _rref_q(aug)
    pivots_a = [p for p in pivots if p < nc]
    free = [c for c in range(nc) if c not in pivots_a]
    null = []
    for fc in free:
        v = [_ZERO] * nc
        v[fc] = _ONE
        for r, pc in enumerate(pivots_a):
            v[pc] = -m[r][fc]
        null.append([_to_fraction(x) for x in v])
    if nc in pivots:
        return None, null
    x = [Fraction(0)] * nc
    for r, pc in enumerate(pivots_a):
        x[pc] = _to_fraction(m[r][nc])
    return x, null


def solve_unique(a_rows, b):
    """Solve a square nonsingular system exactly; raises if not unique."""
    x, null = solve(a_rows, b)
    if x is None:
        raise ValueError("inconsistent linear system")
    if null:
        raise ValueError("linear system is underdetermined")
    return x


def solve_sparse(rows, rhs, nvars):
    """Exact solve for sparse systems: each row is a dict {column: value}.
    Returns (particular, n_free) with particular None when inconsistent;
    free variables are set to zero.  Maintains a fully reduced (Gauss-Jordan)
    set of pivot rows keyed by pivot column, so work scales with the nonzero
    structure instead of the full matrix size."""
    pivrows = {}
    inconsistent = False
    for row, b in zip(rows, rhs):
        r = {}
        for c, v in row.items():
            if v:
                r[c] = _Q(v)
        bb = _Q(b)
        for c in list(r.keys()):
            pr = pivrows.get(c)
            f = r.get(c)
            if pr is None or not f:
                continue
            prow, pb = pr
            del r[c]
            for cc, vv in prow.items():
                if cc == c:
                    continue
                nv = r.get(cc, _ZERO) - f * vv
                if nv:
                    r[cc] = nv
                else:
                    r.pop(cc, None)
            bb = bb - f * pb
        if not r:
            if bb:
                inconsistent = True
            continue
        p = min(r)
        inv = _ONE / r[p]
        prow = {c: v * inv for c, v in r.items()}
        pb = bb * inv
        for q, (qrow, qb) in pivrows.items():
            f = qrow.get(p)
            if f:
                del qrow[p]
                for cc, vv in prow.items():
                    if cc == p:
                        continue
                    nv = qrow.get(cc, _ZERO) - f * vv
                    if nv:
                        qrow[cc] = nv
                    else:
                        qrow.pop(cc, None)
                pivrows[q] = (qrow, qb - f * pb)
        pivrows[p] = (prow, pb)
    n_free = nvars - len(pivrows)
    if inconsistent:
        return None, n_free
    x = [Fraction(0)] * nvars
    for p, (_, pb) in pivrows.items():
        x[p] = _to_fraction(pb)
    return x, n_free


def invert(a_rows):
    """Inverse of a square nonsingular matrix, as Fraction rows; raises
    ValueError when singular."""
    n = len(a_rows)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a_rows)]
    m, pivots = _rref_q(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [[_to_fraction(x) for x in row[n:]] for row in m[:n]]
