"""Truncated modules, tensor models, and the color intertwiner.

A TruncatedModule is a finite exact model of an irreducible module up to a
degree window D: for every (degree, weight) block it stores a maximal
independent subset of PBW monomial vectors (a true basis of the block), the
nonsingular Gram matrix of that basis, and exact rational action matrices of
loop elements between blocks.  Coordinates are always recovered through the
contravariant pairing, so the model is faithful: no quotient basis is ever
guessed.

TensorModule combines several truncated modules with the coproduct action
(sum over slots) and the product pairing.  Levels add; the tensor of level-1
modules is the exact arena for level-k arguments.

The intertwiner w maps the level-1 module with labels (0,1,0) to the one
with labels (0,0,1), shifts finite weights by eps1, annihilates the highest
weight vector, sends the weight-(0,1) top vector to the top of the target,
and commutes with the three color operators at every mode.  solve_w finds
all such maps inside the window degree by degree, by exact linear algebra,
and reports the dimension of the solution space at each degree; the
returned map is the deterministic particular solution.

w_{k1, s} applies w to the last s tensor slots.  The projection-chain
verifier certifies, entirely inside tensor models, that the mode-0 block of
an admissible monomial is absorbed: w_{k1,c0} turns the color-monomial
vector with a mode-0 x21' block into a nonzero multiple of the plain color
monomial over the smaller highest weight, and w_{k1,s} with s > c0 kills it.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import itertools
import json
import time

from . import affine
from . import partitions as parts_mod
from .linalg import invert, solve_sparse
from .pbw import VermaModule, GEN_C2
from .verify import StepReport, _fmt

EPS1 = (1, 0)


class TruncatedModule:
    """Exact finite model of the irreducible module of `spec` up to degree
    max_degree.  Blocks are discovered by the Verma engine's support
    closure, so the block list is provably complete within the window."""

    def __init__(self, spec, max_degree, cache_dir=None):
        self.spec = spec
        self.max_degree = max_degree
        self.verma = VermaModule(spec, gens=GEN_C2, cache_dir=cache_dir)
        self.basis = {}
        self.gram = {}
        for key, blk in self.verma.block_support(max_degree).items():
            self.basis[key] = blk.basis
            self.gram[key] = blk.matrix
        self._act = {}
        self._gram_inv = {}

    def dim(self, key):
        return len(self.basis.get(key, ()))

    def block_keys(self):
        return sorted(self.basis)

    def top_key(self):
        return (0, self.verma.lam_wt)

    def target_key(self, le, key):
        w = affine.weight_of(le)
        return (
            key[0] + affine.degree_of(le),
            (key[1][0] + w[0], key[1][1] + w[1]),
        )

    def coordinates(self, key, terms):
        """Coordinates of a vector (dict of monomials, supported on block
        `key`) in the chosen basis, via the pairing against basis vectors."""
        basis = self.basis.get(key, ())
        if not basis:
            # dimension 0: the vector must vanish in the quotient, which its
            # norm certifies (the form is positive definite on each block)
            norm = 0
            for m, c in terms.items():
                norm += c * self.verma.kernel.pair_mono(m, terms)
            if norm:
                raise ArithmeticError(
                    "nonzero vector in a block reported empty: %r" % (key,)
                )
            return []
        p = [self.verma.kernel.pair_mono(m, terms) for m in basis]
        inv = self._gram_inv.get(key)
        if inv is None:
            inv = invert(self.gram[key])
            self._gram_inv[key] = inv
        return [sum((row[i] * p[i] for i in range(len(p))), Fraction(0)) for row in inv]

    def act_matrix(self, le, key):
        """Matrix of x(le) from block `key` to its target block, in the
        chosen bases, exact.  Returns (target_key, rows|None); None stands
        for the zero map (empty source or target)."""
        memo_key = (le, key)
        if memo_key in self._act:
            return self._act[memo_key]
        tgt = self.target_key(le, key)
        if tgt[0] > self.max_degree or tgt[0] < 0:
            raise ValueError("action leaves the degree window: %r -> %r" % (key, tgt))
        src_basis = self.basis.get(key, ())
        n_tgt = self.dim(tgt)
        if not src_basis or not n_tgt:
            for mono in src_basis:
                self.coordinates(tgt, self.verma.kernel.act_le(le, mono))
            out = (tgt, None)
            self._act[memo_key] = out
            return out
        cols = []
        for mono in src_basis:
            image = self.verma.kernel.act_le(le, mono)
            cols.append(self.coordinates(tgt, image))
        rows = [[cols[c][r] for c in range(len(cols))] for r in range(n_tgt)]
        out = (tgt, rows)
        self._act[memo_key] = out
        return out


_TRUNC_CACHE = {}


def get_truncated(spec, max_degree, cache_dir=None):
    key = (spec.as_tuple(), max_degree, cache_dir)
    mod = _TRUNC_CACHE.get(key)
    if mod is None:
        mod = TruncatedModule(spec, max_degree, cache_dir=cache_dir)
        _TRUNC_CACHE[key] = mod
    return mod


class TensorModule:
    """Tensor product of truncated modules with the coproduct action and the
    product pairing.  States are tuples, one (degree, weight, index) triple
    per slot; vectors are dicts {state: coeff}."""

    def __init__(self, factors, max_degree):
        self.factors = list(factors)
        self.max_degree = max_degree

    def vacuum(self):
        state = tuple((0, f.verma.lam_wt, 0) for f in self.factors)
        for f in self.factors:
            if f.basis.get(f.top_key(), ()) != ((),):
                raise AssertionError("top block basis is not the vacuum monomial")
        return {state: Fraction(1)}

    def act_le(self, le, vec):
        out = {}
        for state, coeff in vec.items():
            for slot, (d, wt, i) in enumerate(state):
                factor = self.factors[slot]
                tgt, rows = factor.act_matrix(le, (d, wt))
                if rows is None:
                    continue
                for r, row in enumerate(rows):
                    if not row[i]:
                        continue
                    new_state = state[:slot] + ((tgt[0], tgt[1], r),) + state[slot + 1 :]
                    if sum(s[0] for s in new_state) > self.max_degree:
                        raise ValueError("tensor action leaves the degree window")
                    cc = out.get(new_state, Fraction(0)) + coeff * row[i]
                    if cc:
                        out[new_state] = cc
                    else:
                        out.pop(new_state, None)
        return out

    def act_word(self, word, vec=None):
        if vec is None:
            vec = self.vacuum()
        for le in reversed(tuple(word)):
            vec = self.act_le(le, vec)
        return vec

    def pair(self, u, v):
        total = Fraction(0)
        for su, cu in u.items():
            for sv, cv in v.items():
                prod = Fraction(1)
                for slot, ((d1, w1, i), (d2, w2, j)) in enumerate(zip(su, sv)):
                    if (d1, w1) != (d2, w2):
                        prod = Fraction(0)
                        break
                    prod *= self.factors[slot].gram[(d1, w1)][i][j]
                if prod:
                    total += cu * cv * prod
        return total


# ---------------------------------------------------------------------------
# the intertwiner
# ---------------------------------------------------------------------------


@dataclass
class IntertwinerMap:
    """Weight-shift map between two truncated modules: one exact rational
    matrix per source block, shifting finite weights by eps1.  `freedom`
    records the solution-space dimension found at each degree (0 means the
    normalized map is unique there)."""

    source: TruncatedModule
    target: TruncatedModule
    blocks: dict
    freedom: dict = field(default_factory=dict)

    def block_matrix(self, key):
        return self.blocks.get(key)

    def apply_block(self, key, coeffs):
        """Image coordinates of a source-block coordinate vector."""
        mat = self.blocks.get(key)
        if mat is None:
            return None, []
        tgt = (key[0], (key[1][0] + EPS1[0], key[1][1] + EPS1[1]))
        out = [sum((row[c] * coeffs[c] for c in range(len(coeffs))), Fraction(0)) for row in mat]
        return tgt, out

    def to_json(self):
        return json.dumps(
            {
                "shift": list(EPS1),
                "freedom": {str(d): f for d, f in sorted(self.freedom.items())},
                "blocks": {
                    "%d|%d,%d" % (k[0], k[1][0], k[1][1]): [[_fmt(x) for x in row] for row in m]
                    for k, m in sorted(self.blocks.items())
                    if m is not None
                },
            },
            sort_keys=True,
        )


def _shift(key):
    return (key[0], (key[1][0] + EPS1[0], key[1][1] + EPS1[1]))


def solve_w(source, target, max_degree=None, colors=affine.COLOR_BASES):
    """Solve for all maps source -> target that shift finite weights by
    eps1, kill the source top vector, normalize the weight-(0,1) top basis
    vector to the target top, and commute with every color operator inside
    the window.  Returns (IntertwinerMap, report dict)."""
    if max_degree is None:
        max_degree = min(source.max_degree, target.max_degree)
    blocks = {}
    freedom = {}
    consistent = True
    for d in range(max_degree + 1):
        src_keys = [k for k in source.block_keys() if k[0] == d]
        var_index = {}
        nvars = 0
        for key in src_keys:
            n1 = source.dim(key)
            n2 = target.dim(_shift(key))
            if n1 and n2:
                var_index[key] = nvars
                nvars += n1 * n2
        rows = []
        rhs = []

        def w_entry(key, r, c, sign, row):
            """Add sign * W[key][r][c] to a sparse equation row (current
            unknowns), or return the known value (solved lower degrees /
            zero blocks)."""
            if key in var_index:
                col = var_index[key] + r * source.dim(key) + c
                cc = row.get(col, Fraction(0)) + sign
                if cc:
                    row[col] = cc
                else:
                    row.pop(col, None)
                return Fraction(0)
            if key in blocks:
                mat = blocks[key]
                return sign * (mat[r][c] if mat is not None else Fraction(0))
            if source.dim(key) and target.dim(_shift(key)):
                raise AssertionError(
                    "equation references an unsolved block %r at stage %d" % (key, d)
                )
            return Fraction(0)

        def add_equation(parts, const):
            row = {}
            known = Fraction(const)
            for key, r, c, sign in parts:
                known += w_entry(key, r, c, sign, row)
            if row or known:
                rows.append(row)
                rhs.append(-known)

        # normalization at degree 0: the weight-(0,1) basis vector maps to
        # the target top vector.
        if d == 0:
            v2_key = (0, (0, 1))
            if v2_key not in var_index:
                raise AssertionError("normalization block missing from the window")
            add_equation([(v2_key, 0, 0, 1)], -1)

        # Commutation W.A1 = A2.W with every color operator, staged so that
        # each equation involves unknowns of degree d only:
        #   * sources at degree d with mode >= 0 (the image degree d-n is
        #     already solved, or is degree d itself at mode 0);
        #   * sources at lower degrees d-n with lowering mode -n (the image
        #     lands at degree d).
        for base in colors:
            for key in src_keys:
                for n in range(0, d + 1):
                    eqs = _commutation_parts(source, target, key, affine.encode(n, base))
                    if eqs is not None:
                        for parts, const in eqs:
                            add_equation(parts, const)
            for n in range(1, d + 1):
                le = affine.encode(-n, base)
                for key in [k for k in source.block_keys() if k[0] == d - n]:
                    eqs = _commutation_parts(source, target, key, le)
                    if eqs is not None:
                        for parts, const in eqs:
                            add_equation(parts, const)

        if nvars or rows:
            sol, n_free = solve_sparse(rows, rhs, nvars)
            if sol is None:
                consistent = False
                freedom[d] = None
                break
            freedom[d] = n_free
            for key, start in var_index.items():
                n1 = source.dim(key)
                n2 = target.dim(_shift(key))
                blocks[key] = [
                    [sol[start + r * n1 + c] for c in range(n1)] for r in range(n2)
                ]
        else:
            freedom[d] = 0
        # source blocks with no unknowns carry the zero map
        for key in src_keys:
            blocks.setdefault(key, None)
    wmap = IntertwinerMap(source=source, target=target, blocks=blocks, freedom=freedom)
    report = {"consistent": consistent, "freedom": dict(freedom)}
    return wmap, report


def _commutation_parts(source, target, key, le):
    """Equations W_{T1} A1 - A2 W_{S} = 0 for one source block and one loop
    element, as lists of (block, r, c, sign) parts (constants handled by the
    assembler through solved blocks).  Returns None when the action leaves
    the window."""
    t1 = source.target_key(le, key)
    if t1[0] < 0 or t1[0] > source.max_degree:
        return None
    s2 = _shift(key)
    t2 = _shift(t1)
    if t2[0] > target.max_degree:
        return None
    _, a1 = source.act_matrix(le, key)
    _, a2 = target.act_matrix(le, s2)
    n1s = source.dim(key)
    n1t = source.dim(t1)
    n2s = target.dim(s2)
    n2t = target.dim(t2)
    eqs = []
    for r in range(n2t):
        for c in range(n1s):
            parts = []
            # (W_{T1} A1)[r][c] = sum_m W_{T1}[r][m] * A1[m][c]
            if a1 is not None:
                for m in range(n1t):
                    if a1[m][c]:
                        parts.append((t1, r, m, Fraction(a1[m][c])))
            # -(A2 W_S)[r][c] = -sum_m A2[r][m] * W_S[m][c]
            if a2 is not None:
                for m in range(n2s):
                    if a2[r][m]:
                        parts.append((key, m, c, -Fraction(a2[r][m])))
            if parts:
                eqs.append((parts, 0))
    return eqs


def verify_intertwiner(max_degree, cache_dir=None):
    """Solve for the intertwiner inside the window and certify: existence,
    uniqueness report per degree, annihilation of the source top vector, and
    (post hoc, independently of the solver) commutation with every color
    operator on every basis vector."""
    t0 = time.perf_counter()
    from .pbw import HighestWeightSpec

    source = get_truncated(HighestWeightSpec(0, 1, 0), max_degree, cache_dir)
    target = get_truncated(HighestWeightSpec(0, 0, 1), max_degree, cache_dir)
    wmap, report = solve_w(source, target, max_degree)
    ok = report["consistent"]
    v1_killed = None
    commutes = None
    if ok:
        top = source.top_key()
        tgt, img = wmap.apply_block(top, [Fraction(1)])
        v1_killed = tgt is None or not any(img)
        commutes = _check_commutation(source, target, wmap, max_degree)
        ok = v1_killed and commutes
    return StepReport(
        step="intertwiner",
        inputs={"max_degree": max_degree},
        ok=bool(ok),
        witness={
            "freedom": {str(d): f for d, f in report["freedom"].items()},
            "top_killed": v1_killed,
            "commutes": commutes,
        },
        seconds=time.perf_counter() - t0,
    )


def _check_commutation(source, target, wmap, max_degree):
    for key in source.block_keys():
        n1 = source.dim(key)
        for base in affine.COLOR_BASES:
            for n in range(-(max_degree - 0), max_degree + 1):
                le = affine.encode(-n, base)
                t1 = source.target_key(le, key)
                if t1[0] < 0 or t1[0] > max_degree or _shift(t1)[0] > max_degree:
                    continue
                _, a1 = source.act_matrix(le, key)
                _, a2 = target.act_matrix(le, _shift(key))
                for c in range(n1):
                    unit = [Fraction(0)] * n1
                    unit[c] = Fraction(1)
                    # w(x u)
                    if a1 is not None:
                        xu = [a1[r][c] for r in range(len(a1))]
                        _, wxu = wmap.apply_block(t1, xu)
                    else:
                        wxu = []
                    # x w(u)
                    _, wu = wmap.apply_block(key, unit)
                    if wu and a2 is not None:
                        xwu = [
                            sum((a2[r][m] * wu[m] for m in range(len(wu))), Fraction(0))
                            for r in range(len(a2))
                        ]
                    else:
                        xwu = []
                    la = [x for x in (wxu or [])]
                    lb = [x for x in (xwu or [])]
                    if len(la) < len(lb):
                        la += [Fraction(0)] * (len(lb) - len(la))
                    if len(lb) < len(la):
                        lb += [Fraction(0)] * (len(la) - len(lb))
                    if la != lb:
                        return False
    return True


# ---------------------------------------------------------------------------
# tensor-slot operators and the projection chain
# ---------------------------------------------------------------------------


def build_w_ks(wmap, n_slots, s):
    """Operator applying the intertwiner to the last s of n_slots tensor
    slots.  Input states must carry source-module triples in those slots;
    output states carry target-module triples there."""

    def apply(vec):
        out = {}
        for state, coeff in vec.items():
            expansions = [[(state[i], Fraction(1))] for i in range(n_slots)]
            for slot in range(n_slots - s, n_slots):
                d, wt, i = state[slot]
                mat = wmap.blocks.get((d, wt))
                terms = []
                if mat is not None:
                    tgt = (d, (wt[0] + EPS1[0], wt[1] + EPS1[1]))
                    for r, row in enumerate(mat):
                        if row[i]:
                            terms.append(((tgt[0], tgt[1], r), row[i]))
                expansions[slot] = terms
            for combo in itertools.product(*expansions):
                new_state = tuple(t for t, _ in combo)
                val = coeff
                for _, f in combo:
                    val *= f
                if val:
                    cc = out.get(new_state, Fraction(0)) + val
                    if cc:
                        out[new_state] = cc
                    else:
                        out.pop(new_state, None)
        return out

    return apply


def _tensor_proportionality(tensor, u, v):
    """Scalar s with u == s*v as tensor vectors (exact dict equality after
    scaling); None if not proportional."""
    if not v:
        return None
    key = next(iter(v))
    s = Fraction(u.get(key, 0), 1) / v[key]
    diff = dict(u)
    for k, c in v.items():
        cc = diff.get(k, Fraction(0)) - s * c
        if cc:
            diff[k] = cc
        else:
            diff.pop(k, None)
    return s if not diff else None


def verify_projection_chain(kind, pi, cache_dir=None):
    """Certify the absorption of the mode-0 block of an admissible partition
    inside tensor models of level-1 truncated modules:

      (i)  w_{k1,c0} sends the color-monomial vector of pi (mode-0 block
           realized by x21'(0) factors) to a nonzero multiple of the color
           monomial of pi without its mode-0 block, over the smaller highest
           weight (k0, k1-c0, c0);
      (ii) w_{k1,s} kills that vector for every s with c0 < s <= k1.
    """
    t0 = time.perf_counter()
    from .pbw import HighestWeightSpec

    k0, k1 = kind.k0, kind.k1
    pi1, c0 = pi.split_c0()
    depth = max(pi.degree, 1)
    m0 = get_truncated(HighestWeightSpec(1, 0, 0), depth, cache_dir)
    m1 = get_truncated(HighestWeightSpec(0, 1, 0), depth, cache_dir)
    m2 = get_truncated(HighestWeightSpec(0, 0, 1), depth, cache_dir)
    wmap, report = solve_w(m1, m2, depth)
    if not report["consistent"]:
        return StepReport(
            step="projection_chain",
            inputs={"partition": pi.to_dict(), "labels": [k0, k1]},
            ok=False,
            witness={"error": "no intertwiner in window"},
            seconds=time.perf_counter() - t0,
        )
    src = TensorModule([m0] * k0 + [m1] * k1, depth)
    word = parts_mod._literal_word(pi1, parts_mod.COLOR_BASES_MAP) + (
        affine.encode(0, 3),
    ) * c0
    u = src.act_word(word)
    n_slots = k0 + k1

    # clause (i): absorb the mode-0 block
    w_c0 = build_w_ks(wmap, n_slots, c0)
    lhs = w_c0(u)
    tgt = TensorModule([m0] * k0 + [m1] * (k1 - c0) + [m2] * c0, depth)
    rhs = tgt.act_word(parts_mod._literal_word(pi1, parts_mod.COLOR_BASES_MAP))
    mu = _tensor_proportionality(tgt, lhs, rhs)
    ok = mu is not None and mu != 0

    # clause (ii): one more application kills
    killed = []
    for s in range(c0 + 1, k1 + 1):
        w_s = build_w_ks(wmap, n_slots, s)
        killed.append(not w_s(u))
    if killed and not all(killed):
        ok = False

    return StepReport(
        step="projection_chain",
        inputs={"partition": pi.to_dict(), "labels": [k0, k1], "c0": c0},
        ok=bool(ok),
        witness={
            "mu": _fmt(mu) if mu is not None else None,
            "higher_killed": killed,
            "freedom": {str(d): f for d, f in report["freedom"].items()},
        },
        seconds=time.perf_counter() - t0,
    )


def sweep_projection_chain(kind, max_degree, cache_dir=None):
    """verify_projection_chain over every admissible partition up to
    max_degree, aggregated into one report."""
    t0 = time.perf_counter()
    results = []
    ok = True
    for pi in parts_mod.enumerate_admissible(kind, max_degree):
        rep = verify_projection_chain(kind, pi, cache_dir)
        ok = ok and rep.ok
        results.append({"partition": pi.tag(), "ok": rep.ok, "mu": rep.witness.get("mu")})
    return StepReport(
        step="projection_chain_sweep",
        inputs={
            "kind": kind.name,
            "labels": list(kind.as_tuple()),
            "max_degree": max_degree,
        },
        ok=ok,
        witness={"partitions": results},
        seconds=time.perf_counter() - t0,
    )


def verify_cross_model(kind, max_degree, cache_dir=None):
    """Certify that the Verma-engine pairing and the tensor-model pairing
    agree on every pair of admissible long-root monomial vectors in the same
    block (two independent computations of the same contravariant form)."""
    t0 = time.perf_counter()
    from .pbw import HighestWeightSpec

    k0, k1 = kind.k0, kind.k1
    verma = VermaModule(kind.spec(), gens=GEN_C2, cache_dir=cache_dir)
    m0 = get_truncated(HighestWeightSpec(1, 0, 0), max_degree, cache_dir)
    m1 = get_truncated(HighestWeightSpec(0, 1, 0), max_degree, cache_dir)
    tensor = TensorModule([m0] * k0 + [m1] * k1, max_degree)
    pis = parts_mod.enumerate_admissible(kind, max_degree)
    words = [kind.monomial_word(pi) for pi in pis]
    checked = 0
    ok = True
    mismatches = []
    for i in range(len(pis)):
        for j in range(i, len(pis)):
            wi, wj = words[i], words[j]
            if affine.word_degree(wi) != affine.word_degree(wj):
                continue
            if affine.word_weight(wi) != affine.word_weight(wj):
                continue
            a = verma.pair(verma.act_word(wi), verma.act_word(wj))
            b = tensor.pair(tensor.act_word(wi), tensor.act_word(wj))
            checked += 1
            if Fraction(a) != b:
                ok = False
                mismatches.append(
                    {
                        "left": pis[i].tag(),
                        "right": pis[j].tag(),
                        "verma": _fmt(a),
                        "tensor": _fmt(b),
                    }
                )
    return StepReport(
        step="cross_model",
        inputs={
            "kind": kind.name,
            "labels": list(kind.as_tuple()),
            "max_degree": max_degree,
        },
        ok=ok,
        witness={"pairs_checked": checked, "mismatches": mismatches},
        seconds=time.perf_counter() - t0,
    )
