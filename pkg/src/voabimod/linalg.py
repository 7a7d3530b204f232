"""Exact reduced row-echelon spans over the rationals."""

from __future__ import annotations

from typing import Callable, Dict, Hashable, Iterable, List, Optional, Tuple

from .vectors import GradedVector, Q


def default_key(label):
    """Column order: (weight, label).  The pivot of a row is its largest column."""
    if label and isinstance(label[0], tuple):
        return (sum(label[0]),) + (label,)
    return (sum(label), label)


class SpanBasis:
    """Subspace held in reduced row-echelon form.

    Rows are normalised to 1 at their pivot, and every other row vanishes at
    that pivot, so reducing a vector is a single pass over its support.  Pivots
    are chosen as the highest-weight column; consequently the rows whose pivot
    weight is at most ``w`` span exactly ``span ∩ F_w``.

    With ``track=True`` every row also records how it was obtained as a
    combination of the tags passed to :meth:`add`.
    """

    def __init__(self, key: Callable = default_key, track: bool = False):
        self.key = key
        self.track = track
        self.rows: Dict[Hashable, GradedVector] = {}
        self.combos: Dict[Hashable, Dict[Hashable, object]] = {}
        self.added = 0

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce(self, vec, combo=None):
        res = GradedVector(vec)
        hits = [(p, res[p]) for p in res if p in self.rows]
        for p, c in hits:
            res.add_scaled(self.rows[p], -c)
            if combo is not None:
                for t, a in self.combos[p].items():
                    combo[t] = combo.get(t, 0) - c * a
        return res

    def reduce(self, vec) -> GradedVector:
        """Normal form of ``vec`` modulo the span (the membership witness)."""
        return self._reduce(vec)

    def reduce_tracked(self, vec) -> Tuple[GradedVector, Dict[Hashable, object]]:
        """Normal form together with the combination of tags subtracted from ``vec``.

        ``vec - residual == -sum(combo[t] * generator_t)``.
        """
        if not self.track:
            raise RuntimeError("span was built without tracking")
        combo: Dict[Hashable, object] = {}
        res = self._reduce(vec, combo)
        return res, {t: c for t, c in combo.items() if c}

    def contains(self, vec) -> bool:
        return not self.reduce(vec)

    def add(self, vec, tag=None) -> bool:
        """Insert ``vec``; returns True when it enlarged the span."""
        self.added += 1
        combo = {tag: Q(1)} if self.track else None
        res = self._reduce(vec, combo)
        if not res:
            return False
        piv = max(res, key=self.key)
        inv = 1 / res[piv]
        res = res * inv
        if combo is not None:
            combo = {t: c * inv for t, c in combo.items() if c}
        for p, row in self.rows.items():
            c = row.get(piv)
            if c:
                row.add_scaled(res, -c)
                if self.track:
                    cp = self.combos[p]
                    for t, a in combo.items():
                        nc = cp.get(t, 0) - c * a
                        if nc:
                            cp[t] = nc
                        else:
                            cp.pop(t, None)
        self.rows[piv] = res
        if self.track:
            self.combos[piv] = combo
        return True

    def extend(self, vecs: Iterable) -> int:
        return sum(1 for v in vecs if self.add(v))

    def pivots(self) -> List:
        return sorted(self.rows, key=self.key)

    def rank_up_to(self, max_weight: int) -> int:
        return sum(1 for p in self.rows if self.key(p)[0] <= max_weight)

    def rows_up_to(self, max_weight: int) -> List[GradedVector]:
        return [self.rows[p] for p in self.pivots() if self.key(p)[0] <= max_weight]

    def complement(self, ambient: Iterable) -> List:
        """Ambient labels that are not pivots: a basis of the quotient."""
        return [a for a in ambient if a not in self.rows]

    def copy(self) -> "SpanBasis":
        s = SpanBasis(self.key, self.track)
        s.rows = {p: r.copy() for p, r in self.rows.items()}
        s.combos = {p: dict(c) for p, c in self.combos.items()}
        s.added = self.added
        return s

    def union(self, other: "SpanBasis") -> "SpanBasis":
        s = self.copy()
        s.extend(other.rows.values())
        return s


def kernel(domain: Iterable, image: Callable[[Hashable], GradedVector],
           key: Callable = default_key) -> List[GradedVector]:
    """Basis of the kernel of the linear map ``e_d -> image(d)`` on ``domain``."""
    span = SpanBasis(key=key, track=True)
    out = []
    for d in domain:
        img = image(d)
        res, combo = span.reduce_tracked(img)
        if res:
            span.add(img, tag=d)
            continue
        vec = GradedVector({d: 1})
        for t, c in combo.items():
            vec.add_scaled(GradedVector({t: 1}), c)
        out.append(vec)
    return out


def solve_in_span(span: SpanBasis, vec) -> Optional[Dict[Hashable, object]]:
    """Coefficients ``x`` with ``vec == sum x[t] * generator_t``, or None."""
    res, combo = span.reduce_tracked(vec)
    if res:
        return None
    return {t: -c for t, c in combo.items()}
