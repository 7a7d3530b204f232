"""Sparse exact vectors over partition-labelled graded bases."""

from __future__ import annotations

import numbers
from typing import Dict, Iterator, Tuple

try:  # exact rationals; gmpy2 is an order of magnitude faster than fractions
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q

Label = Tuple[int, ...]


def label_weight(label) -> int:
    """Weight (or level) of a partition label: the sum of its parts."""
    return sum(label)


class GradedVector(dict):
    """Mapping ``label -> rational`` with no stored zeros.

    Every basis used in this package is labelled by a partition whose sum is the
    weight (or module level), so grading information travels with the labels.
    """

    __slots__ = ()

    def __init__(self, data=None):
        super().__init__()
        if data:
            for k, c in (data.items() if hasattr(data, "items") else data):
                if c:
                    self[k] = Q(c)

    @classmethod
    def basis(cls, label, coeff=1) -> "GradedVector":
        v = cls()
        v[tuple(label)] = Q(coeff)
        return v

    def copy(self) -> "GradedVector":
        v = GradedVector()
        dict.update(v, self)
        return v

    def add_scaled(self, other, coeff=1) -> "GradedVector":
        """In-place ``self += coeff * other``; returns self."""
        if not coeff:
            return self
        for k, c in other.items():
            nc = self.get(k, 0) + coeff * c
            if nc:
                self[k] = nc
            else:
                self.pop(k, None)
        return self

    def __add__(self, other):
        return self.copy().add_scaled(other, 1)

    def __sub__(self, other):
        return self.copy().add_scaled(other, -1)

    def __neg__(self):
        v = GradedVector()
        for k, c in self.items():
            v[k] = -c
        return v

    def __mul__(self, s):
        if not isinstance(s, numbers.Rational):
            return NotImplemented
        v = GradedVector()
        if s:
            for k, c in self.items():
                v[k] = c * s
        return v

    __rmul__ = __mul__

    def weights(self):
        return sorted({label_weight(k) for k in self})

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    @property
    def weight(self) -> int:
        ws = self.weights()
        if len(ws) != 1:
            raise ValueError("weight is defined only for a nonzero homogeneous vector")
        return ws[0]

    def top_weight(self) -> int:
        return max((label_weight(k) for k in self), default=-1)

    def components(self) -> Iterator[Tuple[int, "GradedVector"]]:
        """Homogeneous components as ``(weight, vector)`` in increasing weight."""
        parts: Dict[int, GradedVector] = {}
        for k, c in self.items():
            parts.setdefault(label_weight(k), GradedVector())[k] = c
        for w in sorted(parts):
            yield w, parts[w]

    def to_json(self):
        return [[list(k), str(c)] for k, c in sorted(self.items())]

    def __repr__(self):
        if not self:
            return "0"
        return " + ".join(f"{c}*{list(k)}" for k, c in sorted(self.items()))
