"""Products on V, generator families of the O-spaces and the quotients A_{n,m}(V).

Every product is a finite combination of residues

    Res_z (1+z)^{wt u + shift} z^{-e} Y(u,z) v = sum_{j>=0} C(wt u + shift, j) u_{j-e} v,

evaluated exactly with :meth:`VertexOperatorAlgebra.mode`.  Spans are kept in
reduced echelon form with the highest-weight column as pivot, so the rows with
pivot weight <= w span the intersection with F_w.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .formal import binom
from .linalg import SpanBasis
from .vectors import GradedVector


# ---------------------------------------------------------------------------
# products


def res_product(voa, u, v, shift: int, e: int) -> GradedVector:
    """``Res_z (1+z)^{wt u+shift} z^{-e} Y(u,z) v`` (u split into homogeneous parts)."""
    out = GradedVector()
    u = GradedVector(u)
    v = GradedVector(v)
    if not u or not v:
        return out
    top_v = v.top_weight()
    for wu, comp in u.components():
        A = wu + shift
        j = 0
        # u_k v vanishes once k >= wt u + wt v
        while j - e < wu + top_v:
            if A >= 0 and j > A:
                break
            c = binom(A, j)
            if c:
                out.add_scaled(voa.mode(comp, j - e, v), c)
            j += 1
    return out


def star_general(voa, u, v, n: int, m: int, p: int) -> GradedVector:
    """``u *^n_{m,p} v``."""
    out = GradedVector()
    d = m + n - p
    for i in range(p + 1):
        c = binom(d + i, i)
        if i & 1:
            c = -c
        if c:
            out.add_scaled(res_product(voa, u, v, m, d + i + 1), c)
    return out


def star_bar(voa, u, v, m: int, n: int) -> GradedVector:
    """Left-action product ``u *bar^n_m v`` (p = n)."""
    return star_general(voa, u, v, n, m, n)


def star_right(voa, u, v, m: int, n: int) -> GradedVector:
    """Right-action product ``u *^n_m v`` (p = m)."""
    return star_general(voa, u, v, n, m, m)


def circle(voa, u, v, m: int, n: int) -> GradedVector:
    """``u o^n_m v = Res_z (1+z)^{wt u+m} z^{-(n+m+2)} Y(u,z) v``."""
    return res_product(voa, u, v, m, n + m + 2)


def res_family(voa, u, v, n: int, m: int, k: int, s: int) -> GradedVector:
    """``Res_z (1+z)^{wt u+m+s} z^{-(n+m+2+k)} Y(u,z) v`` with k >= s >= 0 (always in O'_{n,m})."""
    if not k >= s >= 0:
        raise ValueError(f"need k >= s >= 0, got k={k}, s={s}")
    return res_product(voa, u, v, m + s, n + m + 2 + k)


def lshift(voa, u, n: int, m: int) -> GradedVector:
    """``L(-1)u + (L(0) + m - n)u``."""
    u = GradedVector(u)
    return voa.L(-1, u) + voa.L(0, u) + u * (m - n)


def commutator_residue(voa, u, v, m: int, p2: int) -> GradedVector:
    """``Res_z (1+z)^{wt u-1+m-p2} Y(u,z) v``."""
    return res_product(voa, u, v, m - 1 - p2, 0)


def lshift_left_defect(voa, u, v, m: int, n: int) -> GradedVector:
    """``(L(-1)u + L(0)u) *bar^n_m v - (n+m+1)(-1)^n C(n+m,m) u o^n_m v`` (exactly zero)."""
    lhs = star_bar(voa, voa.L(-1, u) + voa.L(0, u), v, m, n)
    c = (n + m + 1) * binom(n + m, m) * (-1 if n & 1 else 1)
    return lhs - circle(voa, u, v, m, n) * c


def lshift_level_defect(voa, u, v, m: int, p1: int, p2: int) -> GradedVector:
    """``(L(-1)u + (L(0)+p1-p2)u) *^{p2}_{m,p1} v`` minus
    ``(-1)^{p1} C(m+p2,p1)(m+p2+1) Res_z (1+z)^{wt u+m} z^{-(m+p2+2)} Y(u,z)v`` (exactly zero)."""
    u = GradedVector(u)
    lhs = star_general(voa, voa.L(-1, u) + voa.L(0, u) + u * (p1 - p2), v, p2, m, p1)
    c = (m + p2 + 1) * binom(m + p2, p1) * (-1 if p1 & 1 else 1)
    return lhs - res_product(voa, u, v, m, m + p2 + 2) * c


def star_top(wu: int, wv: int, n: int, m: int) -> int:
    """A-priori top weight of ``u *^n_{m,p} v``."""
    return wu + wv + m + n


# ---------------------------------------------------------------------------
# O-spaces

KINDS = ("oprime", "odoubleprime", "otripleprime", "ofull")


@dataclass(frozen=True)
class OSpaceSpec:
    """Which O-space, at which levels, cutoff and auxiliary bound.

    ``slack`` widens the a-priori weight bound used to enumerate candidates; a
    candidate is admitted only if its actual support lies in F_cutoff.
    """

    kind: str
    n: int
    m: int
    cutoff: int
    aux_bound: Optional[int] = None
    slack: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown O-space kind {self.kind!r}; expected one of {KINDS}")
        if self.n < 0 or self.m < 0 or self.cutoff < 0:
            raise ValueError("levels and cutoff must be nonnegative")

    @property
    def P(self) -> int:
        return self.aux_bound if self.aux_bound is not None else max(self.n, self.m) + 2

    def to_json(self):
        return {"kind": self.kind, "n": self.n, "m": self.m, "cutoff": self.cutoff,
                "aux_bound": self.P, "slack": self.slack}


@dataclass
class OSpace:
    spec: OSpaceSpec
    span: SpanBasis
    ambient_dim: int
    generators: int = 0
    admitted: int = 0

    @property
    def rank(self) -> int:
        return self.span.rank

    @property
    def quotient_dim(self) -> int:
        return self.ambient_dim - self.rank

    def contains(self, vec) -> bool:
        return self.span.contains(vec)

    def reduce(self, vec) -> GradedVector:
        return self.span.reduce(vec)


def _within(vec: GradedVector, cutoff: int) -> bool:
    return vec.top_weight() <= cutoff


def _basis_by_weight(voa, top: int) -> List[Tuple[int, GradedVector]]:
    return [(w, GradedVector.basis(lab)) for w in range(top + 1) for lab in voa.basis(w)]


def _cache(voa) -> Dict:
    c = getattr(voa, "_ospace_cache", None)
    if c is None:
        c = {}
        voa._ospace_cache = c
    return c


def _admit(space: OSpace, vec: GradedVector) -> None:
    space.generators += 1
    if vec and _within(vec, space.spec.cutoff):
        space.admitted += 1
        space.span.add(vec)


def oprime_generators(voa, spec: OSpaceSpec) -> OSpace:
    """Span of ``u o^n_m v``, ``L(-1)u + (L(0)+m-n)u`` and the residue family
    ``Res_z (1+z)^{wt u+m+s} z^{-(n+m+2+k)} Y(u,z)v`` (k >= s >= 0) inside F_W."""
    key = ("oprime", spec.n, spec.m, spec.cutoff, spec.slack)
    cache = _cache(voa)
    if key in cache:
        return cache[key]
    n, m, W = spec.n, spec.m, spec.cutoff
    space = OSpace(spec, SpanBasis(), len(voa.filtered_basis(W)))
    basis = _basis_by_weight(voa, W)
    for wu, u in basis:
        if wu + 1 <= W + spec.slack:
            _admit(space, lshift(voa, u, n, m))
    bound = W + spec.slack
    # Members with s > 0 expand, via (1+z)^s, into s = 0 members with k-s <= k' <= k,
    # all of lower a-priori weight, so only s = 0 is enumerated.
    for k in range(0, max(bound - n - m, 0)):
        for wu, u in basis:
            if wu == 0:
                continue  # vacuum terms vanish identically
            for wv, v in basis:
                if wu + wv + n + m + 1 + k > bound:
                    break
                _admit(space, res_family(voa, u, v, n, m, k, 0))
    cache[key] = space
    return space


def _oprime_rows(voa, n: int, m: int, cutoff: int) -> List[GradedVector]:
    if cutoff < 0:
        return []
    sp = oprime_generators(voa, OSpaceSpec("oprime", n, m, cutoff))
    return sp.span.rows_up_to(cutoff)


def _dp_defects(voa, m: int, p1: int, p2: int, p3: int, cutoff: int) -> List[GradedVector]:
    """Associator defects ``(a*^{p3}_{p1,p2}b)*^{p3}_{m,p1}c - a*^{p3}_{m,p2}(b*^{p2}_{m,p1}c)``
    for basis a, b, c whose a-priori weight stays within ``cutoff``."""
    basis = _basis_by_weight(voa, cutoff)
    out = []
    for wa, a in basis:
        for wb, b in basis:
            t1 = wa + wb + p1 + p3
            t2 = wb + m + p2
            if min(t1, wa + t2 + m + p3) > cutoff:
                break
            for wc, c in basis:
                top = max(t1 + wc + m + p3, wa + wb + wc + 2 * m + p2 + p3)
                if top > cutoff:
                    break
                left = star_general(voa, star_general(voa, a, b, p3, p1, p2), c, p3, m, p1)
                right = star_general(voa, a, star_general(voa, b, c, p2, m, p1), p3, m, p2)
                d = left - right
                if d:
                    out.append(d)
    return out


def odoubleprime_generators(voa, spec: OSpaceSpec) -> OSpace:
    """Span of ``u *^n_{m,p3} D`` with D an associator defect and p1, p2, p3 <= P.

    The defects with a common ``p3`` are echelonised first; ``u *^n_{m,p3}`` is
    linear, so it is applied to the echelon rows.
    """
    key = ("odoubleprime", spec.n, spec.m, spec.cutoff, spec.P, spec.slack)
    cache = _cache(voa)
    if key in cache:
        return cache[key]
    n, m, W, P = spec.n, spec.m, spec.cutoff, spec.P
    space = OSpace(spec, SpanBasis(), len(voa.filtered_basis(W)))
    basis = _basis_by_weight(voa, W)
    for p3 in range(P + 1):
        dspan = SpanBasis()
        for p1 in range(P + 1):
            for p2 in range(P + 1):
                dspan.extend(_dp_defects(voa, m, p1, p2, p3, W + spec.slack))
        rows = dspan.rows_up_to(W)
        for wu, u in basis:
            for d in rows:
                if star_top(wu, d.top_weight(), n, m) > W + spec.slack:
                    continue
                _admit(space, star_general(voa, u, d, n, m, p3))
    cache[key] = space
    return space


def otripleprime_generators(voa, spec: OSpaceSpec) -> OSpace:
    """Span of ``(u *^n_{p,p} o) *^n_{m,p} v`` with o in O'_{p,p} and p <= P."""
    key = ("otripleprime", spec.n, spec.m, spec.cutoff, spec.P, spec.slack)
    cache = _cache(voa)
    if key in cache:
        return cache[key]
    n, m, W, P = spec.n, spec.m, spec.cutoff, spec.P
    bound = W + spec.slack
    space = OSpace(spec, SpanBasis(), len(voa.filtered_basis(W)))
    basis = _basis_by_weight(voa, W)
    for p in range(P + 1):
        inner = SpanBasis()
        for o in _oprime_rows(voa, p, p, bound):
            for wu, u in basis:
                if star_top(wu, o.top_weight(), n, p) > bound:
                    break
                x = star_general(voa, u, o, n, p, p)
                if x and _within(x, bound):
                    inner.add(x)
        for x in inner.rows_up_to(bound):
            for wv, v in basis:
                if star_top(x.top_weight(), wv, n, m) > bound:
                    break
                _admit(space, star_general(voa, x, v, n, m, p))
    cache[key] = space
    return space


def ofull_generators(voa, spec: OSpaceSpec) -> OSpace:
    """Join of O', O'' and O''' at the same cutoff."""
    key = ("ofull", spec.n, spec.m, spec.cutoff, spec.P, spec.slack)
    cache = _cache(voa)
    if key in cache:
        return cache[key]
    parts = [oprime_generators(voa, OSpaceSpec("oprime", spec.n, spec.m, spec.cutoff, spec.aux_bound, spec.slack)),
             odoubleprime_generators(voa, OSpaceSpec("odoubleprime", spec.n, spec.m, spec.cutoff,
                                                     spec.aux_bound, spec.slack)),
             otripleprime_generators(voa, OSpaceSpec("otripleprime", spec.n, spec.m, spec.cutoff,
                                                     spec.aux_bound, spec.slack))]
    span = parts[0].span.copy()
    for sp in parts[1:]:
        span.extend(sp.span.rows.values())
    space = OSpace(spec, span, parts[0].ambient_dim,
                   sum(p.generators for p in parts), sum(p.admitted for p in parts))
    cache[key] = space
    return space


BUILDERS = {"oprime": oprime_generators, "odoubleprime": odoubleprime_generators,
            "otripleprime": otripleprime_generators, "ofull": ofull_generators}


def build_ospace(voa, spec: OSpaceSpec) -> OSpace:
    return BUILDERS[spec.kind](voa, spec)


# ---------------------------------------------------------------------------
# quotients


@dataclass
class QuotientReport:
    n: int
    m: int
    cutoff: int
    kind: str
    aux_bound: int
    ambient_dim: int
    rank: int
    dim: int
    previous_dim: Optional[int]
    stabilized: bool
    basis: List = field(default_factory=list)

    def to_json(self):
        return {"params": {"n": self.n, "m": self.m, "cutoff": self.cutoff, "kind": self.kind,
                           "aux_bound": self.aux_bound},
                "ranks": {self.kind: self.rank},
                "dims": {"ambient": self.ambient_dim, "quotient": self.dim,
                         "previous_cutoff": self.previous_dim},
                "stabilized": self.stabilized,
                "quotient_basis": [list(b) for b in self.basis]}


def quotient_dim(voa, n: int, m: int, cutoff: int, kind: str = "ofull",
                 aux_bound: Optional[int] = None) -> QuotientReport:
    """Upper bound for the dimension of the image of F_cutoff in A_{n,m}(V).

    ``stabilized`` compares with the same computation at ``cutoff - 1``.
    """
    sp = build_ospace(voa, OSpaceSpec(kind, n, m, cutoff, aux_bound))
    prev = None
    if cutoff >= 1:
        prev = build_ospace(voa, OSpaceSpec(kind, n, m, cutoff - 1, aux_bound)).quotient_dim
    return QuotientReport(n, m, cutoff, kind, sp.spec.P, sp.ambient_dim, sp.rank, sp.quotient_dim,
                          prev, prev == sp.quotient_dim,
                          sp.span.complement(voa.filtered_basis(cutoff)))


# ---------------------------------------------------------------------------
# membership with headroom

HEADROOM = 2


def _cached_at_least(voa, kind, n, m, cutoff, aux_bound) -> Optional[OSpace]:
    """Smallest already-built space of this kind with cutoff >= ``cutoff``."""
    best = None
    for sp in _cache(voa).values():
        s = sp.spec
        if (s.kind, s.n, s.m, s.slack) == (kind, n, m, 0) and s.cutoff >= cutoff and \
                (kind == "oprime" or s.aux_bound == aux_bound):
            if best is None or s.cutoff < best.spec.cutoff:
                best = sp
    return best


def membership(voa, vec, n: int, m: int, cutoff: int = 0, kind: str = "oprime",
               aux_bound: Optional[int] = None) -> Tuple[bool, GradedVector]:
    """Is ``vec`` in the O-space at levels (n, m)?  Returns (ok, residual).

    The span is built at ``max(cutoff, top weight of vec + HEADROOM)``.
    """
    vec = GradedVector(vec)
    if not vec:
        return True, vec
    W = max(cutoff, vec.top_weight() + HEADROOM)
    if W > voa.max_weight:
        from .modules import WeightRangeError
        raise WeightRangeError(W, voa.max_weight)
    sp = _cached_at_least(voa, kind, n, m, W, aux_bound) or \
        build_ospace(voa, OSpaceSpec(kind, n, m, W, aux_bound))
    res = sp.reduce(vec)
    return not res, res


def commutator_residual(voa, u, v, m: int, p1: int, p2: int) -> GradedVector:
    """``u *^{N}_{m,p1} v - v *^{N}_{m,p2} u - Res_z (1+z)^{wt u-1+m-p2} Y(u,z)v`` with
    N = p1+p2-m; a product with a negative index is dropped (and for p1 < 0 the
    remaining product enters with the sign shown)."""
    N = p1 + p2 - m
    if N < 0:
        raise ValueError(f"need p1 + p2 - m >= 0, got {N}")
    if p1 < 0 and p2 < 0:
        raise ValueError("at most one of p1, p2 may be negative")
    out = GradedVector()
    if p1 >= 0:
        out.add_scaled(star_general(voa, u, v, N, m, p1), 1)
    if p2 >= 0:
        out.add_scaled(star_general(voa, v, u, N, m, p2), -1)
    out.add_scaled(commutator_residue(voa, u, v, m, p2), -1)
    return out


def membership_lemma23(voa, u, v, m: int, p1: int, p2: int, cutoff: int = 0):
    """(ok, residual) for the commutator congruence in O'_{p1+p2-m, m}."""
    res = commutator_residual(voa, u, v, m, p1, p2)
    return membership(voa, res, p1 + p2 - m, m, cutoff)


# ---------------------------------------------------------------------------
# sampling


def random_coefficient(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-2, 2), rng.choice((1, 2, 3)))


def random_homogeneous(voa, rng: random.Random, weight: int, density: float = 0.6) -> GradedVector:
    """Nonzero homogeneous element of the given weight with small rational coefficients."""
    labels = voa.basis(weight)
    if not labels:
        raise ValueError(f"{voa.ident} has no states of weight {weight}")
    while True:
        vec = GradedVector()
        for lab in labels:
            if len(labels) == 1 or rng.random() < density:
                c = random_coefficient(rng)
                if c:
                    vec[lab] = c
        if vec:
            return vec


def random_weight(voa, rng: random.Random, max_weight: int, min_weight: int = 0) -> int:
    ws = [w for w in range(min_weight, max_weight + 1) if voa.basis(w)]
    return rng.choice(ws)


def random_oprime_generator(voa, rng, n: int, m: int, max_weight: int) -> Tuple[str, GradedVector, dict]:
    """A random generator of O'_{n,m} built from random homogeneous inputs."""
    choice = rng.randrange(3)
    u = random_homogeneous(voa, rng, random_weight(voa, rng, max_weight))
    if choice == 0:
        return "lshift", lshift(voa, u, n, m), {"u": u}
    v = random_homogeneous(voa, rng, random_weight(voa, rng, max_weight))
    if choice == 1:
        return "circle", circle(voa, u, v, m, n), {"u": u, "v": v}
    k = rng.randint(0, 2)
    s = rng.randint(0, k)
    return "res_family", res_family(voa, u, v, n, m, k, s), {"u": u, "v": v, "k": k, "s": s}


# ---------------------------------------------------------------------------
# structural checks


class CheckReport:
    """Counts and witnesses for one suite."""

    def __init__(self, name: str, params: dict):
        self.name = name
        self.params = params
        self.counts: Dict[str, int] = {}
        self.passed: Dict[str, int] = {}
        self.failures: List[dict] = []
        self.evidence: Dict[str, object] = {}

    def record(self, check: str, ok: bool, inputs: dict = None, residual=None, voa=None,
               repro: str = None):
        self.counts[check] = self.counts.get(check, 0) + 1
        if ok:
            self.passed[check] = self.passed.get(check, 0) + 1
            return
        entry = {"check": check, "inputs": _jsonable(inputs or {}, voa)}
        if residual is not None:
            entry["residual"] = _fmt(residual, voa)
        if repro:
            entry["repro"] = repro
        self.failures.append(entry)

    def member(self, check: str, voa, vec, n: int, m: int, cutoff: int, inputs: dict,
               kind: str = "oprime") -> bool:
        """Record a membership test; failures carry a one-line CLI reproduction."""
        ok, res = membership(voa, vec, n, m, cutoff, kind)
        self.record(check, ok, inputs, res, voa,
                    None if ok else membership_command(voa, vec, n, m, cutoff, kind))
        return ok

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def to_json(self):
        return {"suite": self.name, "params": self.params, "counts": dict(sorted(self.counts.items())),
                "passed": dict(sorted(self.passed.items())), "ok": self.ok,
                "evidence": self.evidence, "failures": self.failures}


def membership_command(voa, vec, n: int, m: int, cutoff: int, kind: str = "oprime") -> str:
    from .expr import format_vector
    return (f'voabimod membership --voa {voa.ident} --max-weight {voa.max_weight} '
            f'--expr "{format_vector(GradedVector(vec), voa)}" --n {n} --m {m} --cutoff {cutoff} '
            f'--kind {kind}')


def product_command(voa, u, v, n: int, m: int, p: int) -> str:
    from .expr import format_vector
    return (f'voabimod product --voa {voa.ident} --max-weight {voa.max_weight} '
            f'--u "{format_vector(GradedVector(u), voa)}" --v "{format_vector(GradedVector(v), voa)}" '
            f'--n {n} --m {m} --p {p}')


def _fmt(vec, voa):
    if voa is None:
        return GradedVector(vec).to_json()
    from .expr import format_vector
    return format_vector(vec, voa)


def _jsonable(inputs: dict, voa):
    out = {}
    for k, v in inputs.items():
        out[k] = _fmt(v, voa) if isinstance(v, GradedVector) else v
    return out


def _sample_pair(voa, rng, max_weight):
    u = random_homogeneous(voa, rng, random_weight(voa, rng, max_weight))
    v = random_homogeneous(voa, rng, random_weight(voa, rng, max_weight))
    return u, v


def check_commutator_congruences(voa, samples: int, rng: random.Random, max_weight: int = 3,
                  max_level: int = 2, cutoff: int = 8) -> CheckReport:
    """Commutator congruences, including the branches with one negative index."""
    rep = CheckReport("lemma23", {"samples": samples, "max_weight": max_weight,
                                  "max_level": max_level, "cutoff": cutoff})
    for _ in range(samples):
        u, v = _sample_pair(voa, rng, max_weight)
        branch = rng.randrange(3)
        m = rng.randint(0, max_level)
        while True:
            if branch == 0:
                p1, p2 = rng.randint(0, max_level), rng.randint(0, max_level)
            elif branch == 1:
                p1, p2 = rng.randint(0, max_level + 2), -rng.randint(1, 2)
            else:
                p1, p2 = -rng.randint(1, 2), rng.randint(0, max_level + 2)
            if 0 <= p1 + p2 - m <= max_level:
                break
        rep.member(["both", "p2_negative", "p1_negative"][branch], voa,
                   commutator_residual(voa, u, v, m, p1, p2), p1 + p2 - m, m, cutoff,
                   {"u": u, "v": v, "m": m, "p1": p1, "p2": p2})
    return rep


def check_bimodule_laws(voa, n: int, m: int, samples: int, rng: random.Random,
                        max_weight: int = 3, cutoff: int = 8, associativity: bool = False) -> CheckReport:
    """Stability of O'_{n,m} under both actions and the commuting-actions defect.

    With ``associativity=True`` the left and right associator defects are also
    tested against O' (reported as evidence, not as failures).
    """
    rep = CheckReport("bimodule", {"n": n, "m": m, "samples": samples, "max_weight": max_weight,
                                   "cutoff": cutoff})
    assoc_in_oprime = 0
    assoc_total = 0
    for _ in range(samples):
        a, b = _sample_pair(voa, rng, max_weight)
        kind, o, _ = random_oprime_generator(voa, rng, n, m, max_weight - 1)
        rep.member("left_stability", voa, star_bar(voa, a, o, m, n), n, m, cutoff,
                   {"a": a, "o": o, "n": n, "m": m})
        rep.member("right_stability", voa, star_right(voa, o, a, m, n), n, m, cutoff,
                   {"o": o, "a": a, "n": n, "m": m})
        c = random_homogeneous(voa, rng, random_weight(voa, rng, max(max_weight - 1, 0)))
        d = star_right(voa, star_bar(voa, a, b, m, n), c, m, n) - \
            star_bar(voa, a, star_right(voa, b, c, m, n), m, n)
        rep.member("commuting_actions", voa, d, n, m, cutoff, {"a": a, "b": b, "c": c, "n": n, "m": m})
        if associativity:
            for side in ("left", "right"):
                if side == "left":
                    d = star_bar(voa, star_bar(voa, a, b, n, n), c, m, n) - \
                        star_bar(voa, a, star_bar(voa, b, c, m, n), m, n)
                else:
                    d = star_right(voa, star_right(voa, a, b, m, n), c, m, n) - \
                        star_right(voa, a, star_right(voa, b, c, m, m), m, n)
                assoc_total += 1
                assoc_in_oprime += membership(voa, d, n, m, cutoff)[0]
    if associativity:
        rep.evidence["associator_defects_in_oprime"] = f"{assoc_in_oprime}/{assoc_total}"
    return rep


def phi_generator_identity(voa, u, n: int, m: int) -> bool:
    """``phi(L(-1)u+(L(0)+m-n)u) == -(L(-1)+L(0))phi(u) - (n-m)phi(u)`` exactly."""
    pu = voa.phi(u)
    lhs = voa.phi(lshift(voa, u, n, m))
    rhs = -(voa.L(-1, pu) + voa.L(0, pu)) - pu * (n - m)
    return lhs == rhs


def phi_pushforward_check(voa, n: int, m: int, samples: int, rng: random.Random,
                          max_weight: int = 3, cutoff: int = 8) -> CheckReport:
    """phi maps u *^n_{m,p} v to phi(v) *^m_{n,p} phi(u) modulo O'_{m,n}, and O'_{n,m} into O'_{m,n}."""
    rep = CheckReport("phi", {"n": n, "m": m, "samples": samples, "max_weight": max_weight,
                              "cutoff": cutoff})
    for _ in range(samples):
        u, v = _sample_pair(voa, rng, max_weight)
        p = rng.randint(0, max(n, m) + 1)
        d = voa.phi(star_general(voa, u, v, n, m, p)) - \
            star_general(voa, voa.phi(v), voa.phi(u), m, n, p)
        rep.member("product_congruence", voa, d, m, n, cutoff, {"u": u, "v": v, "n": n, "m": m, "p": p})
        kind, o, _ = random_oprime_generator(voa, rng, n, m, max_weight)
        rep.member("generator_image", voa, voa.phi(o), m, n, cutoff, {"o": o, "kind": kind, "n": n, "m": m})
        rep.record("lshift_identity", phi_generator_identity(voa, u, n, m), {"u": u, "n": n, "m": m},
                   None, voa)
    return rep


def descent_residual(voa, u, v, n: int, m: int, p: int) -> GradedVector:
    return star_general(voa, u, v, n, m, p) - star_general(voa, u, v, n - 1, m - 1, p - 1)


def descent_check(voa, n: int, m: int, samples: int, rng: random.Random,
                  max_weight: int = 3, cutoff: int = 8) -> CheckReport:
    """The identity map descends A_{n,m} -> A_{n-1,m-1}."""
    if n < 1 or m < 1:
        raise ValueError("descent needs n, m >= 1")
    rep = CheckReport("descent", {"n": n, "m": m, "samples": samples, "max_weight": max_weight,
                                  "cutoff": cutoff})
    for _ in range(samples):
        u, v = _sample_pair(voa, rng, max_weight)
        p = rng.randint(0, max(n, m) + 1)
        res = descent_residual(voa, u, v, n, m, p)
        rep.member("product_descent", voa, res, n - 1, m - 1, cutoff,
                   {"u": u, "v": v, "n": n, "m": m, "p": p})
        kind, o, _ = random_oprime_generator(voa, rng, n, m, max_weight)
        rep.member("oprime_containment", voa, o, n - 1, m - 1, cutoff, {"o": o, "kind": kind, "n": n, "m": m})
    return rep


def psi_pairing(voa, u, v, n: int, p: int, m: int) -> GradedVector:
    """``psi(u (x) v) = u *^n_{m,p} v`` on representatives."""
    return star_general(voa, u, v, n, m, p)


def psi_balance_defect(voa, u, w, v, n: int, p: int, m: int) -> GradedVector:
    """``psi((u *^n_{p,p} w) (x) v) - psi(u (x) (w *^p_{m,p} v))``."""
    return psi_pairing(voa, star_general(voa, u, w, n, p, p), v, n, p, m) - \
        psi_pairing(voa, u, star_general(voa, w, v, p, m, p), n, p, m)


def psi_check(voa, n: int, p: int, m: int, samples: int, rng: random.Random,
              max_weight: int = 2, cutoff: int = 8) -> CheckReport:
    """Balance of psi over A_p(V), tested against the full O-space."""
    rep = CheckReport("psi", {"n": n, "p": p, "m": m, "samples": samples, "cutoff": cutoff})
    for _ in range(samples):
        u, v = _sample_pair(voa, rng, max_weight)
        w = random_homogeneous(voa, rng, random_weight(voa, rng, max_weight))
        d = psi_balance_defect(voa, u, w, v, n, p, m)
        rep.member("balance", voa, d, n, m, cutoff, {"u": u, "w": w, "v": v}, kind="ofull")
    return rep
