"""Mechanical verifiers for the identities and rank claims behind the
combinatorial basis theorems.

Every verifier returns a StepReport: what was checked, over which inputs,
whether it held exactly, and a witness (extracted scalars, rank tables, or
the offending object on failure).  Nothing is asserted from formulas alone:
scalars are extracted from straightened expressions and reported, identities
are checked coefficient by coefficient, and passage to the irreducible
quotient always goes through the contravariant pairing.

The derivation T is the commutator action of the middle color x12 at mode 0.
On the long-root triple it acts as a chain f -> x21' -> x22 (and h -> x12)
that converts long-root monomials into color monomials; verify_t_power
certifies the conversion identity in the enveloping algebra itself.  The
DerivationTable driving t_apply is computed from the structure table but can
be mutated, which is how the negative controls poison it.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import json
import time
from concurrent.futures import ProcessPoolExecutor

from . import affine
from . import partitions as parts_mod
from . import pbw
from .cartan import build_c2, X12
from .linalg import nullspace
from .pbw import VermaModule, GEN_C2, straighten, algebra_add, algebra_scale


def _fmt(x):
    """Exact scalar as a short string (integers plain, rationals p/q)."""
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else "%d/%d" % (
        f.numerator,
        f.denominator,
    )


@dataclass
class StepReport:
    step: str
    inputs: dict
    ok: bool
    witness: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self):
        return json.dumps(
            {
                "step": self.step,
                "inputs": self.inputs,
                "ok": self.ok,
                "witness": self.witness,
                "seconds": round(self.seconds, 6),
            },
            sort_keys=True,
        )


# ---------------------------------------------------------------------------
# the derivation and its powers
# ---------------------------------------------------------------------------


class DerivationTable:
    """Single-generator replacement table of the derivation: base index ->
    tuple of (coeff, base).  Built from the bracket with x12; the mutate()
    hook returns a poisoned copy for negative controls."""

    def __init__(self, action=None):
        if action is None:
            table = build_c2()
            action = {b: tuple(table.bracket[X12][b]) for b in range(10)}
        self.action = action

    def mutate(self, base, new_terms):
        action = dict(self.action)
        action[base] = tuple(new_terms)
        return DerivationTable(action)


def t_apply(elem, table=None):
    """Apply the derivation to a straightened enveloping-algebra element by
    the Leibniz rule, re-straightening each replaced word.  The mode of each
    factor is preserved; only the base changes, through the table."""
    if table is None:
        table = DerivationTable()
    out = {}
    for (dc, mono), coeff in elem.items():
        for pos, le in enumerate(mono):
            mode = le >> 4
            for cf, b2 in table.action[le & 15]:
                word = mono[:pos] + (affine.encode(mode, b2),) + mono[pos + 1 :]
                for (dc2, m2), c2 in straighten(word).items():
                    k = (dc + dc2, m2)
                    cc = out.get(k, 0) + coeff * cf * c2
                    if cc:
                        out[k] = cc
                    else:
                        out.pop(k, None)
    return out


def verify_t_power(kind, pi, table=None):
    """Certify that the n'-th derivation power converts the long-root
    monomial of pi into a nonzero multiple of its color monomial, and that
    one more application kills it.  The scalar is extracted, not assumed."""
    t0 = time.perf_counter()
    n_prime = pi.n_prime()
    word = parts_mod._literal_word(pi, parts_mod.A1_BASES)
    elem = straighten(word)
    for _ in range(n_prime):
        elem = t_apply(elem, table)
    target = straighten(parts_mod._literal_word(pi, parts_mod.COLOR_BASES_MAP))
    scalar = _proportionality(elem, target)
    lam = None
    ok = scalar is not None and scalar != 0
    if ok:
        lam = Fraction(scalar)
        for i in range(2, n_prime + 1):
            lam /= i
        ok = lam != 0
    vanish = t_apply(elem, table) if ok else None
    if ok:
        ok = not vanish
    return StepReport(
        step="t_power",
        inputs={"partition": pi.to_dict(), "n_prime": n_prime},
        ok=bool(ok),
        witness={
            "scalar": _fmt(lam) if lam is not None else None,
            "next_power_vanishes": (not vanish) if vanish is not None else None,
        },
        seconds=time.perf_counter() - t0,
    )


def _proportionality(elem, target):
    """Scalar s with elem == s * target exactly, else None (0 if elem is 0)."""
    if not elem:
        return 0
    if not target:
        return None
    key = next(iter(target))
    if key not in elem:
        return None
    s = Fraction(elem[key], target[key])
    if algebra_add(elem, algebra_scale(target, s), -1):
        return None
    return s


# ---------------------------------------------------------------------------
# translation identity
# ---------------------------------------------------------------------------


def verify_translation(kind, pi, cache_dir=None, module=None):
    """Certify, inside the level (k0, k1) module, that applying the mode-0
    middle color n(pi) times to the long-root monomial vector yields a
    nonzero multiple of the color monomial of pi with its mode-0 block
    converted to x21'(0) factors, and that n(pi)+1 applications kill the
    vector.  Equality is checked in the Verma module first and through the
    contravariant pairing when needed."""
    t0 = time.perf_counter()
    if module is None:
        module = VermaModule(kind.spec(), gens=GEN_C2, cache_dir=cache_dir)
    n = pi.n_of()
    word = kind.monomial_word(pi)
    raiser = (affine.encode(0, X12),)
    u = module.act_word(raiser * n + word)
    pi1, c0 = pi.split_c0()
    cand_word = parts_mod._literal_word(pi1, parts_mod.COLOR_BASES_MAP) + (
        affine.encode(0, 3),
    ) * c0
    cand = module.act_word(cand_word)
    mu = _vector_proportionality(u, cand, module)
    ok = mu is not None and mu != 0
    killed = None
    if ok:
        u2 = module.act_word(raiser * (n + 1) + word)
        killed = u2.is_zero_verma() or module.zero_in_quotient(u2)
        ok = killed
    return StepReport(
        step="translation",
        inputs={"partition": pi.to_dict(), "labels": list(kind.as_tuple()), "n": n},
        ok=bool(ok),
        witness={"mu": _fmt(mu) if mu is not None else None, "killed": killed},
        seconds=time.perf_counter() - t0,
    )


def _vector_proportionality(u, cand, module):
    """Scalar s with u == s*cand in the irreducible quotient; None if the
    vectors are not proportional there."""
    if cand.is_zero_verma():
        return None
    key = next(iter(cand.terms))
    s = Fraction(u.terms.get(key, 0), cand.terms[key])
    diff = u.add(cand, -s)
    if diff.is_zero_verma() or module.zero_in_quotient(diff):
        return s
    return None


def verify_c0_nonvanishing(kind, cache_dir=None):
    """Certify the mode-0 string: x21'(0)^c applied to the highest weight
    vector is nonzero in the quotient exactly for c <= k1.  The monomial is
    the only one in its block, so its norm decides."""
    t0 = time.perf_counter()
    module = VermaModule(kind.spec(), gens=GEN_C2, cache_dir=cache_dir)
    k1 = kind.spec().k1
    norms = []
    ok = True
    for c in range(k1 + 2):
        mono = (affine.encode(0, 3),) * c
        block = module.gram_block(0, module.abs_weight(mono))
        if block.basis != (mono,):
            ok = False
            norms.append(None)
            continue
        norm = block.matrix[0][0]
        norms.append(norm)
        if c <= k1 and norm == 0:
            ok = False
        if c > k1 and norm != 0:
            ok = False
    return StepReport(
        step="c0_nonvanishing",
        inputs={"labels": list(kind.as_tuple()), "k1": k1},
        ok=ok,
        witness={"norms": [_fmt(x) if x is not None else None for x in norms]},
        seconds=time.perf_counter() - t0,
    )


# ---------------------------------------------------------------------------
# rank sweeps: independence and spanning
# ---------------------------------------------------------------------------


def _group_by_block(kind, module, pis):
    groups = {}
    for pi in pis:
        word = kind.monomial_word(pi)
        key = (affine.word_degree(word), module.abs_weight(word))
        groups.setdefault(key, []).append(pi)
    return dict(sorted(groups.items()))


def _block_vectors(kind, module, pis):
    return [module.act_word(kind.monomial_word(pi)) for pi in pis]


def _family_gram(module, vecs):
    n = len(vecs)
    g = [[0] * n for _ in range(n)]
    for j in range(n):
        for i in range(j + 1):
            val = module.pair(vecs[i], vecs[j])
            g[i][j] = val
            g[j][i] = val
    return g


def _independence_block(kind, module, key, pis):
    vecs = _block_vectors(kind, module, pis)
    gram = _family_gram(module, vecs)
    rank = pbw.rank_int([[int(x) for x in row] for row in gram])
    entry = {
        "degree": key[0],
        "weight": list(key[1]),
        "count": len(pis),
        "rank": rank,
    }
    if rank != len(pis):
        entry["dependent_subset"] = _minimal_dependent(gram, pis)
    return entry


def _minimal_dependent(gram, pis):
    """Tags of a minimal dependent subfamily, extracted from a nullvector of
    the Gram matrix and greedily shrunk."""
    null = nullspace(gram)
    if not null:
        return []
    support = [i for i, x in enumerate(null[0]) if x]

    def dependent(idx):
        sub = [[gram[i][j] for j in idx] for i in idx]
        return bool(nullspace(sub))

    changed = True
    while changed:
        changed = False
        for i in list(support):
            trial = [j for j in support if j != i]
            if trial and dependent(trial):
                support = trial
                changed = True
                break
    return [pis[i].tag() for i in support]


def _independence_worker(args):
    kind_name, labels, max_degree, cache_dir, key = args
    kind = parts_mod.parse_kind(kind_name, labels)
    module = kind.module(cache_dir)
    pis = [
        pi
        for pi in parts_mod.enumerate_admissible(kind, max_degree)
        if (
            affine.word_degree(kind.monomial_word(pi)),
            module.abs_weight(kind.monomial_word(pi)),
        )
        == key
    ]
    return key, _independence_block(kind, module, key, pis)


def verify_independence(kind, max_degree, cache_dir=None, jobs=1):
    """Certify that the admissible monomial vectors are linearly independent
    in the irreducible quotient, block by block: the Gram rank of each block
    family must equal its size."""
    t0 = time.perf_counter()
    module = kind.module(cache_dir)
    pis = parts_mod.enumerate_admissible(kind, max_degree)
    groups = _group_by_block(kind, module, pis)
    entries = []
    if jobs > 1 and len(groups) > 1:
        args = [
            (kind.name, list(kind.as_tuple()), max_degree, cache_dir, key)
            for key in groups
        ]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = dict(pool.map(_independence_worker, args))
        entries = [results[key] for key in sorted(results)]
    else:
        for key, group in groups.items():
            entries.append(_independence_block(kind, module, key, group))
    ok = all(e["count"] == e["rank"] for e in entries)
    return StepReport(
        step="independence",
        inputs={
            "kind": kind.name,
            "labels": list(kind.as_tuple()),
            "max_degree": max_degree,
            "families": len(pis),
        },
        ok=ok,
        witness={"blocks": entries},
        seconds=time.perf_counter() - t0,
    )


def verify_spanning(kind, max_degree, cache_dir=None, jobs=1):
    """Certify that the admissible families span every block of the target
    space up to max_degree: the Gram rank of the admissible family equals
    the rank of the full PBW family of the block (the block dimension).
    Together with verify_independence this certifies the basis property."""
    t0 = time.perf_counter()
    module = kind.module(cache_dir)
    support = module.block_support(max_degree)
    pis = parts_mod.enumerate_admissible(kind, max_degree)
    groups = _group_by_block(kind, module, pis)
    keys = sorted(set(support) | set(groups))
    entries = []
    ok = True
    for key in keys:
        block = module.block_basis(key[0], key[1])
        group = groups.get(key, [])
        vecs = _block_vectors(kind, module, group)
        gram = _family_gram(module, vecs)
        adm_rank = pbw.rank_int([[int(x) for x in row] for row in gram])
        entry = {
            "degree": key[0],
            "weight": list(key[1]),
            "dimension": block.rank,
            "admissible_count": len(group),
            "admissible_rank": adm_rank,
        }
        if adm_rank != block.rank:
            ok = False
            entry["deficit"] = block.rank - adm_rank
        entries.append(entry)
    return StepReport(
        step="spanning",
        inputs={
            "kind": kind.name,
            "labels": list(kind.as_tuple()),
            "max_degree": max_degree,
        },
        ok=ok,
        witness={"blocks": entries},
        seconds=time.perf_counter() - t0,
    )


# ---------------------------------------------------------------------------
# initial-condition propagation
# ---------------------------------------------------------------------------


def sweep_t_power(kind, max_degree, table=None):
    """verify_t_power over every admissible partition up to max_degree,
    aggregated into one report (witness lists each extracted scalar)."""
    t0 = time.perf_counter()
    results = []
    ok = True
    for pi in parts_mod.enumerate_admissible(kind, max_degree):
        rep = verify_t_power(kind, pi, table)
        ok = ok and rep.ok
        results.append(
            {"partition": pi.tag(), "ok": rep.ok, "scalar": rep.witness["scalar"]}
        )
    return StepReport(
        step="t_power_sweep",
        inputs={
            "kind": kind.name,
            "labels": list(kind.as_tuple()),
            "max_degree": max_degree,
        },
        ok=ok,
        witness={"partitions": results},
        seconds=time.perf_counter() - t0,
    )


def sweep_translation(kind, max_degree, cache_dir=None):
    """verify_translation over every admissible partition up to max_degree,
    sharing one module instance."""
    t0 = time.perf_counter()
    module = VermaModule(kind.spec(), gens=GEN_C2, cache_dir=cache_dir)
    results = []
    ok = True
    for pi in parts_mod.enumerate_admissible(kind, max_degree):
        rep = verify_translation(kind, pi, module=module)
        ok = ok and rep.ok
        results.append({"partition": pi.tag(), "ok": rep.ok, "mu": rep.witness["mu"]})
    return StepReport(
        step="translation_sweep",
        inputs={
            "kind": kind.name,
            "labels": list(kind.as_tuple()),
            "max_degree": max_degree,
        },
        ok=ok,
        witness={"partitions": results},
        seconds=time.perf_counter() - t0,
    )


def verify_icprop(kind, max_degree):
    """Certify combinatorially that splitting the mode-0 block off an
    admissible partition lands in an admissible family for the smaller
    labels (k0, k1 - c0, c0) of the principal-subspace kind."""
    t0 = time.perf_counter()
    entries = []
    ok = True
    for pi in parts_mod.enumerate_admissible(kind, max_degree):
        target = parts_mod.ic_propagation(pi, kind)
        pi1, c0 = pi.split_c0()
        sub = parts_mod.C2FS(*target)
        good = sub.admissible(pi1)
        if not good:
            ok = False
            entries.append({"partition": pi.tag(), "target": list(target)})
    return StepReport(
        step="icprop",
        inputs={
            "kind": kind.name,
            "labels": list(kind.as_tuple()),
            "max_degree": max_degree,
        },
        ok=ok,
        witness={"violations": entries},
        seconds=time.perf_counter() - t0,
    )
