"""Concrete vertex operator algebras with exact mode products.

Modes of a composite state ``a_n b`` (``a`` the generating field) are computed
with the iterate formula

    (a_n b)_k = sum_{i>=0} (-1)^i C(n,i) [ a_{n-i} b_{k+i} - (-1)^n b_{n+k-i} a_i ]

from the modes of ``a``, which every module in :mod:`voabimod.modules` supplies.
The same recursion therefore computes the vertex operators of ``V`` acting on
``V`` itself and on any of its modules.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional

from .formal import binom
from .modules import FockModule, GradedModule, VirasoroModule, WeightRangeError
from .vectors import GradedVector, Label


def field_mode(module: GradedModule, state: Label, k: int, wlabel: Label) -> GradedVector:
    """``u_k w`` for the PBW state ``u`` labelled ``state`` and a module basis vector."""
    cache = module.field_cache
    key = (state, k, wlabel)
    hit = cache.get(key)
    if hit is not None:
        return hit
    d = sum(wlabel)
    if not state:
        out = GradedVector.basis(wlabel) if k == -1 else GradedVector()
        cache[key] = out
        return out
    target = d + sum(state) - k - 1
    if target < 0:
        out = GradedVector()
        cache[key] = out
        return out
    module.check_level(target)
    j, rest = state[0], state[1:]
    n = -j if module.gen_weight == 1 else 1 - j
    wt_b = sum(rest)
    out = GradedVector()
    # a_{n-i} b_{k+i} w
    for i in range(0, d + wt_b - k):
        c = binom(n, i)
        if not c:
            continue
        if i & 1:
            c = -c
        inner = field_mode(module, rest, k + i, wlabel)
        for lab, cf in inner.items():
            out.add_scaled(module.gen_mode(n - i, lab), c * cf)
    # - (-1)^n b_{n+k-i} a_i w
    sign_n = -1 if n & 1 else 1
    for i in range(0, d + module.gen_weight):
        c = binom(n, i)
        if not c:
            continue
        c = -sign_n * (-c if i & 1 else c)
        inner = module.gen_mode(i, wlabel)
        for lab, cf in inner.items():
            out.add_scaled(field_mode(module, rest, n + k - i, lab), c * cf)
    cache[key] = out
    return out


class VertexOperatorAlgebra:
    """A vertex operator algebra realised on one of the graded modules.

    ``kind`` is one of ``heisenberg``, ``virasoro`` (universal, central charge
    ``c``) or ``ising`` (the simple quotient at c = 1/2).  Basis labels are
    partitions; the weight of a label is the sum of its parts.
    """

    def __init__(self, kind: str, space: GradedModule, central_charge, max_weight: int):
        self.kind = kind
        self.space = space
        self.central_charge = Fraction(central_charge)
        self.max_weight = max_weight
        self.gen_weight = space.gen_weight

    def __repr__(self):
        return f"<VOA {self.ident} max_weight={self.max_weight}>"

    @property
    def ident(self) -> str:
        if self.kind == "virasoro":
            return f"virasoro:{self.central_charge}"
        return self.kind

    # --- bases -----------------------------------------------------------------
    def basis(self, weight: int) -> List[Label]:
        if weight > self.max_weight:
            raise WeightRangeError(weight, self.max_weight)
        return self.space.basis(weight)

    def dim(self, weight: int) -> int:
        return len(self.basis(weight))

    def filtered_basis(self, cutoff: int) -> List[Label]:
        """Basis of ``F_W``: every label of weight at most ``cutoff``."""
        out = []
        for w in range(cutoff + 1):
            out.extend(self.basis(w))
        return out

    def vacuum(self) -> GradedVector:
        return GradedVector.basis(())

    def conformal(self) -> GradedVector:
        if self.kind == "heisenberg":
            return GradedVector.basis((1, 1), Fraction(1, 2))
        return GradedVector.basis((2,))

    def generator(self) -> GradedVector:
        """The weight-1 (Heisenberg) or weight-2 (Virasoro) generating state."""
        return GradedVector.basis((1,) if self.kind == "heisenberg" else (2,))

    def element(self, label, coeff=1) -> GradedVector:
        label = tuple(label)
        if label not in self.space.basis(sum(label)):
            raise KeyError(f"{label} is not a basis label of {self.ident}")
        return GradedVector.basis(label, coeff)

    def normalize(self, vec) -> GradedVector:
        """Rewrite a vector on universal PBW labels in this algebra's basis."""
        if isinstance(self.space, VirasoroModule):
            return self.space.reduce(GradedVector(vec))
        return GradedVector(vec)

    # --- modes -----------------------------------------------------------------
    def module_mode(self, module: GradedModule, u, k: int, w) -> GradedVector:
        """``u_k w`` for ``u`` in V and ``w`` in ``module`` (bilinear)."""
        out = GradedVector()
        for ul, uc in u.items():
            for wl, wc in w.items():
                out.add_scaled(field_mode(module, ul, k, wl), uc * wc)
        return out

    def mode(self, u, k: int, v) -> GradedVector:
        """``u_k v`` inside V; raises WeightRangeError above ``max_weight``."""
        out = GradedVector()
        for ul, uc in u.items():
            wu = sum(ul)
            for vl, vc in v.items():
                t = wu + sum(vl) - k - 1
                if t < 0:
                    continue
                if t > self.max_weight:
                    raise WeightRangeError(t, self.max_weight)
                out.add_scaled(field_mode(self.space, ul, k, vl), uc * vc)
        return out

    def L(self, n: int, v) -> GradedVector:
        """``L(n) v = omega_{n+1} v``."""
        return self.mode(self.conformal(), n + 1, v)

    def L_power(self, n: int, v, times: int) -> GradedVector:
        for _ in range(times):
            v = self.L(n, v)
        return v

    def phi(self, v) -> GradedVector:
        """``e^{L(1)} (-1)^{L(0)} v``."""
        out = GradedVector()
        for w, comp in GradedVector(v).components():
            term = comp * (-1 if w & 1 else 1)
            j = 0
            while term:
                out.add_scaled(term, Fraction(1, factorial(j)))
                j += 1
                term = self.L(1, term)
        return out

    def skew_symmetry_check(self, u, v, modes) -> bool:
        """``u_k v == sum_j (-1)^{k+j+1} L(-1)^j/j! v_{k+j} u`` for every k in ``modes``."""
        u = GradedVector(u)
        v = GradedVector(v)
        for k in modes:
            lhs = self.mode(u, k, v)
            rhs = GradedVector()
            j = 0
            top = u.top_weight() + v.top_weight()
            while k + j < top:
                term = self.mode(v, k + j, u)
                term = self.L_power(-1, term, j)
                sign = -1 if (k + j + 1) & 1 else 1
                rhs.add_scaled(term, Fraction(sign, factorial(j)))
                j += 1
            if lhs != rhs:
                return False
        return True

    def commutator_check(self, u, v, w, p: int, q: int, module: Optional[GradedModule] = None) -> bool:
        """``[u_p, v_q] w == sum_i C(p,i) (u_i v)_{p+q-i} w`` on V or on ``module``."""
        act = (lambda x, k, y: self.module_mode(module, x, k, y)) if module else self.mode
        lhs = act(u, p, act(v, q, w)) - act(v, q, act(u, p, w))
        rhs = GradedVector()
        top = GradedVector(u).top_weight() + GradedVector(v).top_weight()
        for i in range(0, max(top, 0)):
            c = binom(p, i)
            if c:
                rhs.add_scaled(act(self.mode(u, i, v), p + q - i, w), c)
        return lhs == rhs


def heisenberg(max_weight: int = 24) -> VertexOperatorAlgebra:
    """Rank-one Heisenberg VOA ``M(1)`` (central charge 1, ``omega = a(-1)^2 1 / 2``)."""
    return VertexOperatorAlgebra("heisenberg", FockModule(0, max_weight), 1, max_weight)


def virasoro(c, max_weight: int = 24) -> VertexOperatorAlgebra:
    """Universal Virasoro VOA at central charge ``c``."""
    return VertexOperatorAlgebra("virasoro", VirasoroModule(c, 0, vacuum=True, max_level=max_weight),
                                 c, max_weight)


def build_simple_quotient(c, max_weight: int = 24) -> VertexOperatorAlgebra:
    """Simple Virasoro VOA ``L(c, 0)`` via the radical of the Gram form (c = 1/2 only)."""
    c = Fraction(c)
    if c != Fraction(1, 2):
        raise ValueError(f"unsupported central charge {c}: only c = 1/2 is supported")
    if max_weight < 6:
        raise ValueError("max_weight must be at least 6 to see the first singular vector")
    return VertexOperatorAlgebra("ising", VirasoroModule(c, 0, vacuum=True, simple=True,
                                                         max_level=max_weight), c, max_weight)


def ising(max_weight: int = 24) -> VertexOperatorAlgebra:
    return build_simple_quotient(Fraction(1, 2), max_weight)


def make_voa(spec: str, max_weight: int = 24) -> VertexOperatorAlgebra:
    """Parse ``heisenberg | virasoro:<c> | ising``."""
    spec = spec.strip().lower()
    if spec == "heisenberg":
        return heisenberg(max_weight)
    if spec == "ising":
        return ising(max_weight)
    if spec.startswith("virasoro:"):
        return virasoro(Fraction(spec.split(":", 1)[1]), max_weight)
    raise ValueError(f"unknown VOA {spec!r}; expected heisenberg, virasoro:<c> or ising")


def ising_module(h, max_level: int = 16) -> VirasoroModule:
    """Irreducible ``L(1/2, h)`` for h in {0, 1/2, 1/16}."""
    h = Fraction(h)
    if h not in (0, Fraction(1, 2), Fraction(1, 16)):
        raise ValueError(f"h={h} is not an Ising highest weight")
    return VirasoroModule(Fraction(1, 2), h, vacuum=(h == 0), simple=True, max_level=max_level)


ISING_WEIGHTS = (Fraction(0), Fraction(1, 2), Fraction(1, 16))


class CharacterTable:
    """Per-level dimensions of the irreducible modules of a rational VOA."""

    def __init__(self, name: str, dims: Dict[str, List[int]]):
        self.name = name
        self.dims = dims

    def dim(self, module: str, level: int) -> int:
        d = self.dims[module]
        if level < 0:
            return 0
        if level >= len(d):
            raise WeightRangeError(level, len(d) - 1, "level")
        return d[level]

    def hom_dimension(self, n: int, m: int) -> int:
        """``sum_{l<=min(m,n)} sum_i dim W^i(m-l) dim W^i(n-l)``."""
        return sum(self.dim(i, m - l) * self.dim(i, n - l)
                   for l in range(min(m, n) + 1) for i in self.dims)

    def to_json(self):
        return {"voa": self.name, "dims": self.dims}


def ising_character_table(levels: int = 6) -> CharacterTable:
    """Level dimensions of L(1/2,0), L(1/2,1/2), L(1/2,1/16) from Gram-form ranks."""
    dims = {}
    for h in ISING_WEIGHTS:
        mod = ising_module(h, max_level=levels)
        dims[str(h)] = mod.dims(levels)
    return CharacterTable("ising", dims)
