# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled straightening kernel: the Cython twin of _kernel_py.

The interfaces, encodings and algorithms are identical to _kernel_py (keep
the two in lockstep; the test suite cross-checks them).  Coefficients stay
Python integers on purpose: Gram entries and Bareiss minors routinely exceed
machine words, and exactness is the whole point.  The compiled win comes
from static dispatch in the recursion and loop bookkeeping.
"""

BACKEND = "c"


cdef class VermaKernel:
    """See _kernel_py.VermaKernel."""

    cdef public object bracket
    cdef public object form
    cdef public object sigma
    cdef public object lam
    cdef public object level
    cdef dict _memo
    cdef dict _pmemo

    def __init__(self, bracket, form, sigma, lam4, lam6, level):
        self.bracket = bracket
        self.form = form
        self.sigma = sigma
        self.lam = {4: lam4, 6: lam6}
        self.level = level
        self._memo = {}
        self._pmemo = {}

    cpdef dict act_le(self, long le, tuple mono):
        cdef tuple key = (le, mono)
        cdef dict out
        cdef dict acc
        cdef long mode, base, head, i, j, b1, b2, le2
        cdef object c, cf, c2, c3, f
        cdef tuple m2, m3, rest
        hit = self._memo.get(key)
        if hit is not None:
            return <dict>hit
        if not mono:
            mode = le >> 4
            if mode > 0:
                out = {}
            elif mode < 0:
                out = {(le,): 1}
            else:
                base = le & 15
                if base < 4:
                    out = {(le,): 1}
                elif base == 4 or base == 6:
                    lam = self.lam[base]
                    out = {(): lam} if lam else {}
                else:
                    out = {}
        elif le < 4 and le >= <long>mono[0]:
            out = {(le,) + mono: 1}
        else:
            head = <long>mono[0]
            rest = mono[1:]
            acc = {}
            for m2, c2 in self.act_le(le, rest).items():
                for m3, c3 in self.act_le(head, m2).items():
                    c = acc.get(m3, 0) + c2 * c3
                    if c:
                        acc[m3] = c
                    elif m3 in acc:
                        del acc[m3]
            i = le >> 4
            b1 = le & 15
            j = head >> 4
            b2 = head & 15
            for cf, k in self.bracket[b1][b2]:
                le2 = (i + j) * 16 + <long>k
                for m3, c3 in self.act_le(le2, rest).items():
                    c = acc.get(m3, 0) + cf * c3
                    if c:
                        acc[m3] = c
                    elif m3 in acc:
                        del acc[m3]
            if i + j == 0:
                f = self.form[b1][b2]
                if f:
                    c = acc.get(rest, 0) + i * f * self.level
                    if c:
                        acc[rest] = c
                    elif rest in acc:
                        del acc[rest]
            out = acc
        self._memo[key] = out
        return out

    cpdef dict act_word(self, tuple word, dict vec):
        cdef dict out
        cdef long idx
        cdef object le, c, c2, cc
        cdef tuple m, m2
        for idx in range(len(word) - 1, -1, -1):
            le = word[idx]
            out = {}
            for m, c in vec.items():
                for m2, c2 in self.act_le(<long>le, m).items():
                    cc = out.get(m2, 0) + c * c2
                    if cc:
                        out[m2] = cc
                    elif m2 in out:
                        del out[m2]
            vec = out
        return vec

    cpdef tuple transpose_word(self, tuple mono):
        cdef list out = []
        cdef long le
        cdef long idx
        sigma = self.sigma
        for idx in range(len(mono) - 1, -1, -1):
            le = <long>mono[idx]
            out.append((-(le >> 4)) * 16 + <long>sigma[le & 15])
        return tuple(out)

    cpdef object pair_monos(self, tuple m1, tuple m2):
        """<m1 . v, m2 . v>: peel the leading factor of m1 onto m2 through
        the form's adjoint property; memoized on (suffix, monomial) pairs so
        a whole Gram block shares its intermediate states."""
        cdef tuple key = (m1, m2)
        cdef long le, dual
        cdef tuple rest, m
        cdef object c, s, total
        val = self._pmemo.get(key)
        if val is not None:
            return val
        if not m1:
            val = 1 if not m2 else 0
        else:
            le = <long>m1[0]
            dual = (-(le >> 4)) * 16 + <long>self.sigma[le & 15]
            rest = m1[1:]
            total = 0
            for m, c in self.act_le(dual, m2).items():
                s = self.pair_monos(rest, m)
                if s:
                    total = total + c * s
            val = total
        self._pmemo[key] = val
        return val

    cpdef object pair_mono(self, tuple mono, dict vec):
        cdef object total = 0
        cdef tuple m
        cdef object c, s
        for m, c in vec.items():
            s = self.pair_monos(mono, m)
            if s:
                total = total + c * s
        return total

    cpdef list gram(self, monos):
        cdef long n = len(monos)
        cdef long i, j
        cdef list g = [[0] * n for _ in range(n)]
        cdef tuple mj
        for j in range(n):
            mj = monos[j]
            for i in range(j + 1):
                val = self.pair_monos(monos[i], mj)
                g[i][j] = val
                g[j][i] = val
        return g


cdef class UKernel:
    """See _kernel_py.UKernel."""

    cdef public object bracket
    cdef public object form
    cdef dict _memo

    def __init__(self, bracket, form):
        self.bracket = bracket
        self.form = form
        self._memo = {}

    cpdef dict mul_le(self, long le, tuple mono):
        cdef tuple key = (le, mono)
        cdef dict out, acc
        cdef long head, i, j, b1, b2, le2
        cdef tuple rest, m2, m3, k2
        cdef object c, c2, c3, cf, f
        cdef long dc2, dc3
        hit = self._memo.get(key)
        if hit is not None:
            return <dict>hit
        if not mono:
            out = {(0, (le,)): 1}
        elif le >= <long>mono[0]:
            out = {(0, (le,) + mono): 1}
        else:
            head = <long>mono[0]
            rest = mono[1:]
            acc = {}
            for (dc2, m2), c2 in self.mul_le(le, rest).items():
                for (dc3, m3), c3 in self.mul_le(head, m2).items():
                    k2 = (dc2 + dc3, m3)
                    c = acc.get(k2, 0) + c2 * c3
                    if c:
                        acc[k2] = c
                    elif k2 in acc:
                        del acc[k2]
            i = le >> 4
            b1 = le & 15
            j = head >> 4
            b2 = head & 15
            for cf, k in self.bracket[b1][b2]:
                le2 = (i + j) * 16 + <long>k
                for (dc3, m3), c3 in self.mul_le(le2, rest).items():
                    k2 = (dc3, m3)
                    c = acc.get(k2, 0) + cf * c3
                    if c:
                        acc[k2] = c
                    elif k2 in acc:
                        del acc[k2]
            if i + j == 0:
                f = self.form[b1][b2]
                if f:
                    k2 = (1, rest)
                    c = acc.get(k2, 0) + i * f
                    if c:
                        acc[k2] = c
                    elif k2 in acc:
                        del acc[k2]
            out = acc
        self._memo[key] = out
        return out

    cpdef dict mul_mono(self, tuple m1, tuple m2):
        cdef dict out = {(0, m2): 1}
        cdef dict nxt
        cdef long idx, dc, dc2
        cdef tuple m, m2b, k2
        cdef object c, c2, cc, le
        for idx in range(len(m1) - 1, -1, -1):
            le = m1[idx]
            nxt = {}
            for (dc, m), c in out.items():
                for (dc2, m2b), c2 in self.mul_le(<long>le, m).items():
                    k2 = (dc + dc2, m2b)
                    cc = nxt.get(k2, 0) + c * c2
                    if cc:
                        nxt[k2] = cc
                    elif k2 in nxt:
                        del nxt[k2]
            out = nxt
        return out


def rank_int(rows):
    """Rank of an integer matrix by fraction-free (Bareiss) elimination.
    Entries are Python ints (minors overflow machine words)."""
    cdef list m = [list(r) for r in rows]
    cdef long nr = len(m)
    cdef long nc = len(m[0]) if nr else 0
    cdef long rank = 0
    cdef long c, rr, cc, piv_row
    cdef object prev = 1
    cdef object piv, v
    cdef list row, prow
    for c in range(nc):
        piv_row = -1
        for rr in range(rank, nr):
            if m[rr][c]:
                piv_row = rr
                break
        if piv_row < 0:
            continue
        if piv_row != rank:
            m[rank], m[piv_row] = m[piv_row], m[rank]
        prow = m[rank]
        piv = prow[c]
        for rr in range(rank + 1, nr):
            row = m[rr]
            v = row[c]
            for cc in range(c + 1, nc):
                row[cc] = (piv * row[cc] - v * prow[cc]) // prev
            row[c] = 0
        prev = piv
        rank += 1
        if rank == nr:
            break
    return rank
