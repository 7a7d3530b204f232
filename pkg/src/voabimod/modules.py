"""Graded spaces carrying generator modes: Heisenberg Fock modules and Virasoro
highest-weight modules (universal or simple).

Each class exposes ``gen_mode(n, label)``: the ``n``-th mode of the generating
field (``alpha(z)`` for the Heisenberg algebra, ``omega`` for Virasoro, whose
``n``-th mode is ``L(n-1)``).  Everything else, including modes of composite
states, is derived from these in :mod:`voabimod.voa`.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, List, Tuple

from .linalg import SpanBasis, kernel
from .vectors import GradedVector, Label, Q


class WeightRangeError(ArithmeticError):
    """A result would live above the built weight (or level) range."""

    def __init__(self, needed: int, built: int, what: str = "weight"):
        self.needed = needed
        self.built = built
        super().__init__(f"result needs {what} {needed} but only {what}s <= {built} are built; "
                         f"rebuild with max {what} >= {needed}")


@lru_cache(maxsize=None)
def partitions(n: int, min_part: int = 1, max_part: int = None) -> Tuple[Label, ...]:
    """Partitions of ``n`` as weakly decreasing tuples with parts in [min_part, max_part]."""
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), min_part - 1, -1):
        for rest in partitions(n - first, min_part, first):
            out.append((first,) + rest)
    return tuple(sorted(out))


def insert_part(label: Label, part: int) -> Label:
    lst = list(label)
    i = 0
    while i < len(lst) and lst[i] >= part:
        i += 1
    lst.insert(i, part)
    return tuple(lst)


def remove_part(label: Label, part: int) -> Label:
    lst = list(label)
    lst.remove(part)
    return tuple(lst)


class GradedModule:
    """Common surface of the concrete module classes."""

    kind: str
    gen_weight: int
    max_level: int

    def basis(self, level: int) -> List[Label]:
        raise NotImplementedError

    def dim(self, level: int) -> int:
        return len(self.basis(level))

    def dims(self, top: int) -> List[int]:
        return [self.dim(k) for k in range(top + 1)]

    def check_level(self, level: int) -> None:
        if level > self.max_level:
            raise WeightRangeError(level, self.max_level, "level")

    def gen_mode_vec(self, n: int, vec) -> GradedVector:
        out = GradedVector()
        for lab, c in vec.items():
            out.add_scaled(self.gen_mode(n, lab), c)
        return out


class FockModule(GradedModule):
    """The Fock module ``M(1, lam)`` of the rank-one Heisenberg algebra.

    Basis ``alpha(-l1)...alpha(-lk) v_lam`` labelled by the partition ``(l1,...,lk)``;
    ``alpha_0`` acts by ``lam``.  ``lam = 0`` is the vertex operator algebra itself.
    """

    kind = "heisenberg"
    gen_weight = 1

    def __init__(self, lam=0, max_level: int = 24):
        self.lam = Q(lam)
        self.max_level = max_level
        self._gen: Dict[Tuple[int, Label], GradedVector] = {}
        self.field_cache: Dict = {}

    def __repr__(self):
        return f"FockModule(lam={self.lam}, max_level={self.max_level})"

    def basis(self, level: int) -> List[Label]:
        if level < 0:
            return []
        return list(partitions(level))

    def gen_mode(self, n: int, label: Label) -> GradedVector:
        key = (n, label)
        hit = self._gen.get(key)
        if hit is not None:
            return hit
        if n < 0:
            self.check_level(sum(label) - n)
            out = GradedVector.basis(insert_part(label, -n))
        elif n == 0:
            out = GradedVector.basis(label, self.lam) if self.lam else GradedVector()
        else:
            mult = label.count(n)
            out = GradedVector.basis(remove_part(label, n), n * mult) if mult else GradedVector()
        self._gen[key] = out
        return out

    def sugawara(self, n: int, vec) -> GradedVector:
        """``L(n) = 1/2 sum_j :alpha_j alpha_{n-j}:`` applied directly (independent oracle)."""
        out = GradedVector()
        for lab, c in vec.items():
            level = sum(lab)
            lo = -((-n) // 2)  # ceil(n/2)
            for b in range(lo, max(level, 0) + 1):
                a = n - b
                inner = self.gen_mode(b, lab)
                if not inner:
                    continue
                coeff = Q(1, 2) if a == b else Q(1)
                out.add_scaled(self.gen_mode_vec(a, inner), c * coeff)
        return out


class VirasoroModule(GradedModule):
    """Highest-weight module for the Virasoro algebra at central charge ``c``.

    ``vacuum=True`` builds the vacuum module ``V(c, 0)/<L(-1)1>`` (PBW parts >= 2),
    otherwise the Verma module ``M(c, h)`` (parts >= 1).  With ``simple=True`` the
    radical of the Shapovalov form is quotiented out level by level, producing
    ``L(c, h)``; the basis at each level is then the set of PBW monomials that are
    not pivots of the radical.
    """

    kind = "virasoro"
    gen_weight = 2

    def __init__(self, c, h=0, vacuum: bool = False, simple: bool = False, max_level: int = 24):
        self.c = Q(c)
        self.h = Q(h)
        if vacuum and self.h:
            raise ValueError("the vacuum module has h = 0")
        self.vacuum = vacuum
        self.simple = simple
        self.min_part = 2 if vacuum else 1
        self.max_level = max_level
        self._low: Dict[Tuple[int, Label], GradedVector] = {}
        self._up: Dict[Tuple[int, Label], GradedVector] = {}
        self._gen: Dict[Tuple[int, Label], GradedVector] = {}
        self._gram: Dict[Tuple[Label, Label], Q] = {}
        self._radical = SpanBasis()
        self._radical_done = -1
        self._basis: Dict[int, List[Label]] = {}
        self.field_cache: Dict = {}

    def __repr__(self):
        kind = "L" if self.simple else ("V" if self.vacuum else "M")
        return f"{kind}(c={self.c}, h={self.h})"

    # --- universal PBW action -------------------------------------------------
    def universal_basis(self, level: int) -> List[Label]:
        if level < 0:
            return []
        return list(partitions(level, self.min_part))

    def lower(self, a: int, label: Label) -> GradedVector:
        """``L(-a)`` (a >= 1) on a PBW monomial, in the universal module."""
        key = (a, label)
        hit = self._low.get(key)
        if hit is not None:
            return hit
        if not label:
            out = GradedVector() if a < self.min_part else GradedVector.basis((a,))
        elif a >= label[0]:
            out = GradedVector.basis((a,) + label)
        else:
            mu, rest = label[0], label[1:]
            out = GradedVector()
            for lab, cf in self.lower(a, rest).items():
                out.add_scaled(self.lower(mu, lab), cf)
            out.add_scaled(self.lower(a + mu, rest), mu - a)
        self._low[key] = out
        return out

    def raise_(self, n: int, label: Label) -> GradedVector:
        """``L(n)`` (n >= 0) on a PBW monomial, in the universal module."""
        key = (n, label)
        hit = self._up.get(key)
        if hit is not None:
            return hit
        if not label:
            out = GradedVector.basis((), self.h) if n == 0 and self.h else GradedVector()
        else:
            mu, rest = label[0], label[1:]
            out = GradedVector()
            for lab, cf in self.raise_(n, rest).items():
                out.add_scaled(self.lower(mu, lab), cf)
            shift = n - mu
            if shift < 0:
                out.add_scaled(self.lower(-shift, rest), n + mu)
            else:
                out.add_scaled(self.raise_(shift, rest), n + mu)
            if n == mu:
                out.add_scaled(GradedVector.basis(rest), self.c * (n ** 3 - n) / 12)
        self._up[key] = out
        return out

    def universal_L(self, n: int, label: Label) -> GradedVector:
        return self.lower(-n, label) if n < 0 else self.raise_(n, label)

    # --- Shapovalov form and radical -----------------------------------------
    def gram(self, x: Label, y: Label):
        """``<x, y>`` with ``L(n)^dagger = L(-n)`` and ``<v, v> = 1``."""
        if sum(x) != sum(y):
            return Q(0)
        if not x:
            return Q(1) if not y else Q(0)
        key = (x, y)
        hit = self._gram.get(key)
        if hit is not None:
            return hit
        total = Q(0)
        for lab, cf in self.raise_(x[0], y).items():
            total += cf * self.gram(x[1:], lab)
        self._gram[key] = total
        return total

    def gram_matrix(self, level: int) -> List[List]:
        b = self.universal_basis(level)
        return [[self.gram(x, y) for y in b] for x in b]

    def radical_basis(self, level: int) -> List[GradedVector]:
        b = self.universal_basis(level)
        return kernel(b, lambda x: GradedVector({y: self.gram(x, y) for y in b}))

    def _ensure_radical(self, level: int) -> None:
        while self._radical_done < level:
            k = self._radical_done + 1
            for vec in self.radical_basis(k):
                self._radical.add(vec)
            self._radical_done = k

    def reduce(self, vec) -> GradedVector:
        """Image of a universal vector in the module (identity unless simple)."""
        if not self.simple or not vec:
            return vec if isinstance(vec, GradedVector) else GradedVector(vec)
        self._ensure_radical(max(sum(l) for l in vec))
        return self._radical.reduce(vec)

    def basis(self, level: int) -> List[Label]:
        if level < 0:
            return []
        if not self.simple:
            return self.universal_basis(level)
        hit = self._basis.get(level)
        if hit is None:
            self._ensure_radical(level)
            hit = [l for l in self.universal_basis(level) if l not in self._radical.rows]
            self._basis[level] = hit
        return hit

    # --- module action -------------------------------------------------------
    def L(self, n: int, label: Label) -> GradedVector:
        key = (n + 1, label)
        hit = self._gen.get(key)
        if hit is not None:
            return hit
        if n < 0:
            self.check_level(sum(label) - n)
        out = self.reduce(self.universal_L(n, label))
        self._gen[key] = out
        return out

    def gen_mode(self, n: int, label: Label) -> GradedVector:
        """``omega_n = L(n-1)``."""
        return self.L(n - 1, label)

    def L_vec(self, n: int, vec) -> GradedVector:
        out = GradedVector()
        for lab, c in vec.items():
            out.add_scaled(self.L(n, lab), c)
        return out
