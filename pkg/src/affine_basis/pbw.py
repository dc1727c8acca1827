"""Highest weight modules and their PBW machinery.

Everything is computed inside a Verma-type module M with highest weight
vector v: monomial vectors are normal-ordered words applied to v, and the
irreducible quotient L is reached exactly through the contravariant (Gram)
form: a vector is zero in L iff it pairs to zero with every PBW monomial of
its (degree, weight) block, and graded dimensions of L are Gram ranks.
This avoids any reliance on character formulas.

Blocks are indexed by (degree, finite weight), with degree counting total
negated modes and weight the absolute eps-coordinate weight of the vectors
(highest weight included).  The set of blocks where L is nonzero ("support")
is discovered by breadth-first closure from the top block: if a monomial
vector is nonzero in L, peeling its leftmost factor gives a shorter monomial
vector that is also nonzero, so every nonzero block is reachable from
(0, highest weight) by single storable-generator steps.  The closure is
therefore complete, with no weight-support assumptions.

Module kinds are distinguished only by the generator subset used for
monomials:

  * GEN_C2     all ten basis elements (the full module),
  * GEN_A1     the long-root triple f, h, e (modules for the subalgebra),
  * GEN_COLORS the three commuting colors (principal subspace families).
"""

from dataclasses import dataclass
from fractions import Fraction
import json

from . import affine
from . import cache as cache_mod
from . import linalg
from .cartan import build_c2, table_hash, finite_weight, a1_subalgebra
from .kernels import VermaKernel, UKernel, rank_int

GEN_C2 = tuple(range(10))
GEN_A1 = a1_subalgebra()          # (0, 6, 9) = (f, h, e)
GEN_COLORS = affine.COLOR_BASES   # (5, 8, 9) = (x22, x12, x11)


@dataclass(frozen=True)
class HighestWeightSpec:
    """Dominant integral highest weight k0*L_0 + k1*L_1 + k2*L_2 (affine
    fundamental weights); the finite part is k1*omega1 + k2*omega2 and the
    central charge is k0 + k1 + k2."""

    k0: int
    k1: int
    k2: int = 0

    def __post_init__(self):
        for k in (self.k0, self.k1, self.k2):
            if k < 0 or k != int(k):
                raise ValueError("labels must be nonnegative integers")

    @property
    def level(self):
        return self.k0 + self.k1 + self.k2

    @property
    def weight(self):
        return finite_weight(self.k1, self.k2)

    def as_tuple(self):
        return (self.k0, self.k1, self.k2)


@dataclass(frozen=True)
class PBWMonomial:
    """A normal-ordered monomial: weakly decreasing tuple of loop codes."""

    codes: tuple

    def __post_init__(self):
        if not affine.is_normal_ordered(self.codes):
            raise ValueError("factors are not normal ordered or not storable")

    @property
    def degree(self):
        return affine.word_degree(self.codes)

    @property
    def weight_shift(self):
        return affine.word_weight(self.codes)

    def factors(self):
        """Run-length factorization [(mode, base, exponent)]."""
        out = []
        for le in self.codes:
            mode, base = affine.decode(le)
            if out and out[-1][0] == mode and out[-1][1] == base:
                out[-1][2] += 1
            else:
                out.append([mode, base, 1])
        return [tuple(t) for t in out]

    def tag(self):
        return " ".join(
            "%s%s" % (affine.tag_of(affine.encode(m, b)), "^%d" % e if e > 1 else "")
            for m, b, e in self.factors()
        ) or "1"


class ModuleVector:
    """A finite integer/rational combination of PBW monomial vectors."""

    __slots__ = ("module", "terms")

    def __init__(self, module, terms):
        self.module = module
        self.terms = {m: c for m, c in terms.items() if c}

    def is_zero_verma(self):
        return not self.terms

    def block(self):
        """(degree, weight) common to all terms; None for the zero vector.
        Raises if the vector is not homogeneous."""
        blocks = {
            (affine.word_degree(m), self.module.abs_weight(m)) for m in self.terms
        }
        if not blocks:
            return None
        if len(blocks) > 1:
            raise ValueError("vector is not homogeneous: blocks %r" % (sorted(blocks),))
        return blocks.pop()

    def scale(self, c):
        return ModuleVector(self.module, {m: c * v for m, v in self.terms.items()})

    def add(self, other, factor=1):
        out = dict(self.terms)
        for m, c in other.terms.items():
            cc = out.get(m, 0) + factor * c
            if cc:
                out[m] = cc
            else:
                out.pop(m, None)
        return ModuleVector(self.module, out)

    def __eq__(self, other):
        return isinstance(other, ModuleVector) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "<0>"
        bits = []
        for m in sorted(self.terms, reverse=True):
            bits.append("%s * %s.v" % (self.terms[m], PBWMonomial(m).tag()))
        return "<" + " + ".join(bits) + ">"


@dataclass
class GramBlock:
    """Gram matrix of all PBW monomial vectors of one (degree, weight) block
    under the contravariant form; its rank is the dimension of the block in
    the irreducible quotient."""

    degree: int
    weight: tuple
    basis: tuple       # monomial code tuples, deterministic order
    matrix: list       # integer Gram entries
    rank: int

    def to_json(self):
        return json.dumps(
            {
                "degree": self.degree,
                "weight": list(self.weight),
                "monomials": [list(m) for m in self.basis],
                "gram": [[str(x) for x in row] for row in self.matrix],
                "rank": self.rank,
            },
            sort_keys=True,
        )


@dataclass
class BlockBasis:
    """A true basis of one (degree, weight) block of the irreducible
    quotient: a maximal subfamily of PBW monomial vectors with nonsingular
    Gram matrix, found incrementally.  `candidates` counts the PBW monomials
    scanned (the Verma dimension of the block); rank == len(basis)."""

    degree: int
    weight: tuple
    basis: tuple       # chosen monomial code tuples, deterministic order
    matrix: list       # integer Gram entries of the chosen vectors
    rank: int
    candidates: int

    def to_json(self):
        return json.dumps(
            {
                "degree": self.degree,
                "weight": list(self.weight),
                "monomials": [list(m) for m in self.basis],
                "gram": [[str(x) for x in row] for row in self.matrix],
                "rank": self.rank,
                "candidates": self.candidates,
            },
            sort_keys=True,
        )


class VermaModule:
    """Highest weight module with monomials drawn from a generator subset."""

    def __init__(self, spec, gens=GEN_C2, cache_dir=None):
        self.spec = spec
        self.gens = tuple(sorted(gens))
        self.table = build_c2()
        wt = spec.weight
        self.lam_wt = wt
        self.kernel = VermaKernel(
            self.table.bracket,
            self.table.form,
            self.table.sigma,
            wt[1],  # weight(h2)
            wt[0],  # weight(h1)
            spec.level,
        )
        self.mode0_bases = tuple(b for b in self.gens if b <= 3)
        self.cache = cache_mod.GramCache(cache_dir)
        self._table_hash = table_hash(self.table)
        self._negparts = {}
        self._blocks = {}
        self._bases = {}

    # -- vectors ----------------------------------------------------------

    def vacuum(self):
        return ModuleVector(self, {(): 1})

    def act_word(self, word, vec=None):
        """Apply a word of loop codes (leftmost factor acts last)."""
        if vec is None:
            vec = self.vacuum()
        return ModuleVector(self, self.kernel.act_word(tuple(word), vec.terms))

    def vector(self, codes):
        """The monomial vector for an already normal-ordered code tuple."""
        PBWMonomial(tuple(codes))  # validate
        return ModuleVector(self, {tuple(codes): 1})

    def abs_weight(self, mono):
        sh = affine.word_weight(mono)
        return (self.lam_wt[0] + sh[0], self.lam_wt[1] + sh[1])

    def pair(self, u, v):
        """Contravariant form <u, v>, exact."""
        total = 0
        for m, c in u.terms.items():
            total += c * self.kernel.pair_mono(m, v.terms)
        return total

    # -- monomial enumeration ----------------------------------------------

    def _neg_parts(self, degree):
        """All weakly decreasing negative-mode code tuples of given total
        degree over the generator bases, with their weight shifts."""
        memo = self._negparts.get(degree)
        if memo is not None:
            return memo
        codes = [
            affine.encode(-m, b)
            for m in range(1, degree + 1)
            for b in self.gens
        ]
        codes.sort(reverse=True)
        weights = self.table.weights
        out = []

        def rec(idx, remaining, acc, wa, wb):
            if remaining == 0:
                out.append((tuple(acc), (wa, wb)))
                return
            if idx == len(codes):
                return
            le = codes[idx]
            step = affine.degree_of(le)
            w = weights[le & 15]
            rec(idx + 1, remaining, acc, wa, wb)
            count = 1
            while step * count <= remaining:
                rec(
                    idx + 1,
                    remaining - step * count,
                    acc + [le] * count,
                    wa + w[0] * count,
                    wb + w[1] * count,
                )
                count += 1

        rec(0, degree, [], 0, 0)
        out.sort(reverse=True)
        self._negparts[degree] = out
        return out

    def _mode0_solutions(self, t1, t2):
        """Exponent assignments for mode-0 storable generators matching the
        weight shift (t1, t2).  Finite: every such weight lowers eps1 or is
        (0,-2), so exponents are bounded by the target coordinates."""
        bases = self.mode0_bases
        weights = self.table.weights
        order = [b for b in (0, 1, 3, 2) if b in bases]
        sols = []

        def rec(idx, r1, r2, acc):
            if idx == len(order):
                if r1 == 0 and r2 == 0:
                    sols.append(tuple(acc))
                return
            b = order[idx]
            wa, wb = weights[b]
            if wa < 0:
                if r1 > 0:
                    return
                cap = r1 // wa
            else:  # base 2, weight (0,-2), always last
                if r1 != 0 or r2 > 0:
                    cap = 0 if (r1 == 0 and r2 == 0) else -1
                else:
                    cap = (-r2) // 2
            for e in range(cap + 1):
                rec(idx + 1, r1 - e * wa, r2 - e * wb, acc + [(b, e)])

        rec(0, t1, t2, [])
        return sols

    def pbw_monomials(self, degree, weight):
        """All normal-ordered monomials over the generator subset whose
        vectors lie in the (degree, weight) block, deterministically ordered."""
        out = []
        for negcodes, negwt in self._neg_parts(degree):
            t1 = weight[0] - self.lam_wt[0] - negwt[0]
            t2 = weight[1] - self.lam_wt[1] - negwt[1]
            for sol in self._mode0_solutions(t1, t2):
                zero = []
                for b, e in sorted(sol, reverse=True):
                    zero.extend([b] * e)
                out.append(tuple(zero) + negcodes)
        out.sort(reverse=True)
        return out

    # -- Gram blocks ---------------------------------------------------------

    def gram_of(self, monos):
        """Gram matrix of given monomial vectors, which must share one
        (degree, weight) block (mixed gradings are a usage error: their
        cross pairings vanish identically and would dilute rank counts)."""
        monos = [tuple(m) for m in monos]
        blocks = {(affine.word_degree(m), self.abs_weight(m)) for m in monos}
        if len(blocks) > 1:
            raise ValueError("monomials span several blocks: %r" % sorted(blocks))
        return self.kernel.gram(monos)

    def gram_block(self, degree, weight):
        key = (degree, tuple(weight))
        blk = self._blocks.get(key)
        if blk is not None:
            return blk
        monos = self.pbw_monomials(degree, weight)
        matrix = None
        ckey = None
        if self.cache.root and monos:
            ckey = cache_mod.block_key(
                self._table_hash,
                self.lam_wt + (len(self.gens),),
                self.spec.level,
                degree,
                weight,
                monos,
            )
            matrix = self.cache.get(ckey)
        if matrix is None:
            matrix = self.kernel.gram(monos)
            if ckey is not None:
                self.cache.put(ckey, matrix)
        blk = GramBlock(
            degree=degree,
            weight=tuple(weight),
            basis=tuple(monos),
            matrix=matrix,
            rank=rank_int(matrix),
        )
        self._blocks[key] = blk
        return blk

    def block_basis(self, degree, weight):
        """A true basis of the (degree, weight) block of the irreducible
        quotient, built incrementally: scan the PBW monomials in their
        deterministic order and keep each one whose Gram-Schur complement
        against the vectors already kept is nonzero.  The contravariant form
        is positive definite on every block of the quotient (the highest
        weight is dominant integral), so a zero complement certifies linear
        dependence and a zero self-pairing certifies the zero vector; the
        scan therefore needs only O(candidates * rank) pairings instead of a
        full candidates^2 Gram matrix."""
        key = (degree, tuple(weight))
        bb = self._bases.get(key)
        if bb is not None:
            return bb
        monos = self.pbw_monomials(degree, weight)
        chosen = gram = None
        ckey = None
        if self.cache.root and monos:
            ckey = cache_mod.block_key(
                self._table_hash,
                self.lam_wt + (len(self.gens),),
                self.spec.level,
                degree,
                weight,
                monos,
                flavor="basis",
            )
            rec = self.cache.get_json(ckey)
            if rec is not None:
                chosen = [monos[i] for i in rec["chosen"]]
                gram = [[cache_mod._parse(x) for x in row] for row in rec["gram"]]
        if chosen is None:
            chosen = []
            picked = []
            gram = []
            inv = None
            pair = self.kernel.pair_monos
            for idx, mono in enumerate(monos):
                p = [pair(b, mono) for b in chosen]
                nu = pair(mono, mono)
                if chosen:
                    x = [
                        sum((inv[r][i] * p[i] for i in range(len(p))), Fraction(0))
                        for r in range(len(p))
                    ]
                    s = nu - sum((p[r] * x[r] for r in range(len(p))), Fraction(0))
                else:
                    s = nu
                if s:
                    for r, row in enumerate(gram):
                        row.append(p[r])
                    gram.append(p + [nu])
                    chosen.append(mono)
                    picked.append(idx)
                    inv = linalg.invert(gram)
            if ckey is not None:
                self.cache.put_json(
                    ckey,
                    {"chosen": picked, "gram": [[str(x) for x in row] for row in gram]},
                )
        bb = BlockBasis(
            degree=degree,
            weight=tuple(weight),
            basis=tuple(chosen),
            matrix=gram,
            rank=len(chosen),
            candidates=len(monos),
        )
        self._bases[key] = bb
        return bb

    def graded_dimension(self, degree, weight):
        """dim of the (degree, weight) block of the irreducible quotient."""
        return self.block_basis(degree, weight).rank

    def block_support(self, max_degree):
        """All blocks with nonzero dimension up to max_degree, found by
        breadth-first closure from the top block (see module docstring for
        why this is complete).  Returns {(degree, weight): BlockBasis}."""
        start = (0, self.lam_wt)
        support = {}
        seen = {start}
        queue = [start]
        top = self.block_basis(*start)
        if top.rank:
            support[start] = top
        while queue:
            d, wt = queue.pop(0)
            for mode in range(0, -(max_degree - d) - 1, -1):
                for b in self.gens:
                    le = affine.encode(mode, b)
                    if not affine.storable(le):
                        continue
                    w = self.table.weights[b]
                    tgt = (d - mode, (wt[0] + w[0], wt[1] + w[1]))
                    if tgt in seen or tgt[0] > max_degree:
                        continue
                    seen.add(tgt)
                    blk = self.block_basis(*tgt)
                    if blk.rank:
                        support[tgt] = blk
                        queue.append(tgt)
        return dict(sorted(support.items()))

    def dims_by_degree(self, max_degree):
        """Total dimension of each degree slice of the irreducible quotient."""
        dims = [0] * (max_degree + 1)
        for (d, _), blk in self.block_support(max_degree).items():
            dims[d] += blk.rank
        return dims

    def zero_in_quotient(self, vec):
        """True iff the vector maps to zero in the irreducible quotient,
        i.e. pairs to zero with a spanning family of its block (the radical
        of the contravariant form is the maximal submodule, and the block
        basis spans the block)."""
        if vec.is_zero_verma():
            return True
        degree, weight = vec.block()
        for mono in self.block_basis(degree, weight).basis:
            if self.kernel.pair_mono(mono, vec.terms):
                return False
        return True


def independent_subset(matrix):
    """Greedy maximal independent row subset of an exact matrix; returns the
    selected row indices in increasing order."""
    picked = []
    reduced = []  # rows in echelon, as (pivot_col, row)
    ncols = len(matrix[0]) if matrix else 0
    for i, row in enumerate(matrix):
        work = [linalg._Q(x) for x in row]
        for pc, red in reduced:
            if work[pc]:
                f = work[pc]
                work = [a - f * b for a, b in zip(work, red)]
        pivot = next((c for c in range(ncols) if work[c]), None)
        if pivot is None:
            continue
        inv = 1 / work[pivot]
        work = [x * inv for x in work]
        reduced.append((pivot, work))
        picked.append(i)
    return picked


# ---------------------------------------------------------------------------
# enveloping algebra layer (operator identities, not vectors)
# ---------------------------------------------------------------------------

_UK = None


def ukernel():
    global _UK
    if _UK is None:
        t = build_c2()
        _UK = UKernel(t.bracket, t.form)
    return _UK


def straighten(word):
    """Normal-ordered form of a word of loop codes in the enveloping
    algebra: dict {(central_exponent, monomial): int}."""
    out = {(0, ()): 1}
    for le in reversed(tuple(word)):
        uk = ukernel()
        nxt = {}
        for (dc, m), c in out.items():
            for (dc2, m2), c2 in uk.mul_le(le, m).items():
                k = (dc + dc2, m2)
                cc = nxt.get(k, 0) + c * c2
                if cc:
                    nxt[k] = cc
                else:
                    nxt.pop(k, None)
        out = nxt
    return out


def algebra_add(a, b, factor=1):
    out = dict(a)
    for k, c in b.items():
        cc = out.get(k, 0) + factor * c
        if cc:
            out[k] = cc
        else:
            out.pop(k, None)
    return out


def algebra_scale(a, factor):
    if not factor:
        return {}
    return {k: factor * c for k, c in a.items()}


def algebra_mul(a, b):
    uk = ukernel()
    out = {}
    for (dc1, m1), c1 in a.items():
        for (dc2, m2), c2 in b.items():
            for (dc3, m3), c3 in uk.mul_mono(m1, m2).items():
                k = (dc1 + dc2 + dc3, m3)
                cc = out.get(k, 0) + c1 * c2 * c3
                if cc:
                    out[k] = cc
                else:
                    out.pop(k, None)
    return out


def algebra_ad(le, a):
    """ad of a single loop element: x*a - a*x, normal ordered."""
    x = {(0, (le,)): 1}
    return algebra_add(algebra_mul(x, a), algebra_mul(a, x), -1)
