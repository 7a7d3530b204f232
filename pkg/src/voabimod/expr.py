"""Text form of VOA elements.

Grammar::

    element := term (('+' | '-') term)*
    term    := [rational] gen* 'vac'
    gen     := 'a(' int ')' | 'L(' int ')'

``a(k)`` is the Heisenberg mode alpha(k), ``L(k)`` the Virasoro mode; words act on
the vacuum from the right, so ``a(-1)a(-2)vac`` is alpha(-1)alpha(-2)1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .vectors import GradedVector


class ExprError(ValueError):
    """Syntax or resolution error, with the character offset where it was detected."""

    def __init__(self, msg: str, pos: int = None, src: str = None):
        self.pos = pos
        self.src = src
        where = ""
        if pos is not None and src is not None:
            where = f" at position {pos}: {src[:pos]}<<HERE>>{src[pos:]}"
        super().__init__(msg + where)


@dataclass(frozen=True)
class Term:
    coeff: Fraction
    gens: Tuple[Tuple[str, int], ...]  # (letter, mode index), leftmost first


@dataclass(frozen=True)
class ElementExpr:
    terms: Tuple[Term, ...]

    def __str__(self):
        return format_expr(self)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<gen>[aL])\(\s*(?P<idx>[+-]?\d+)\s*\)"
                    r"|(?P<vac>vac)|(?P<op>[+-])|(?P<star>\*))")


def parse_element(src: str) -> ElementExpr:
    """Parse ``src``; raises :class:`ExprError` with the offending position."""
    pos = 0
    n = len(src)
    terms: List[Term] = []
    sign = 1
    expect_term = True
    while True:
        while pos < n and src[pos].isspace():
            pos += 1
        if pos >= n:
            break
        if not expect_term:
            m = _TOKEN.match(src, pos)
            if not m or not m.group("op"):
                raise ExprError("expected '+' or '-'", pos, src)
            sign = 1 if m.group("op") == "+" else -1
            pos = m.end()
            expect_term = True
            continue
        # optional leading sign inside a term position
        m = _TOKEN.match(src, pos)
        if m and m.group("op"):
            if m.group("op") == "-":
                sign = -sign
            pos = m.end()
            m = _TOKEN.match(src, pos)
        coeff = Fraction(1)
        if m and m.group("num"):
            if re.fullmatch(r"\d+/0+", m.group("num")):
                raise ExprError("zero denominator", m.start("num"), src)
            coeff = Fraction(m.group("num"))
            pos = m.end()
            m = _TOKEN.match(src, pos)
            if m and m.group("star"):
                pos = m.end()
                m = _TOKEN.match(src, pos)
        gens = []
        while m and m.group("gen"):
            gens.append((m.group("gen"), int(m.group("idx"))))
            pos = m.end()
            m = _TOKEN.match(src, pos)
        if not (m and m.group("vac")):
            if src.startswith(("a(", "L("), pos):
                close = src.find(")", pos)
                bad = pos + 2 if close < 0 else pos
                raise ExprError("malformed generator; expected a(k) or L(k) with an integer k", bad, src)
            raise ExprError("expected a generator a(k), L(k) or 'vac'", pos, src)
        pos = m.end()
        terms.append(Term(sign * coeff, tuple(gens)))
        sign = 1
        expect_term = False
    if expect_term:
        raise ExprError("expected a term", pos, src)
    return ElementExpr(tuple(terms))


def _fmt_coeff(c: Fraction, first: bool) -> str:
    sign = "-" if c < 0 else ("" if first else "+")
    a = abs(c)
    body = "" if a == 1 else f"{a} "
    if first:
        return f"{sign}{body}"
    return f" {sign} {body}"


def format_expr(expr: ElementExpr) -> str:
    if not expr.terms:
        return "0 vac"
    out = []
    for i, t in enumerate(expr.terms):
        word = "".join(f"{g}({k})" for g, k in t.gens)
        out.append(_fmt_coeff(t.coeff, i == 0) + word + "vac")
    return "".join(out)


def evaluate(expr: ElementExpr, voa) -> GradedVector:
    """Evaluate a parsed element inside ``voa``."""
    letter = "a" if voa.kind == "heisenberg" else "L"
    out = GradedVector()
    space = voa.space
    for t in expr.terms:
        vec = voa.vacuum()
        for g, k in reversed(t.gens):
            if g != letter:
                raise ExprError(f"generator {g}({k}) is not available in {voa.ident}")
            nxt = GradedVector()
            for lab, c in vec.items():
                target = sum(lab) - k
                if target > voa.max_weight:
                    from .modules import WeightRangeError
                    raise WeightRangeError(target, voa.max_weight)
                img = space.gen_mode(k, lab) if letter == "a" else space.L(k, lab)
                nxt.add_scaled(img, c)
            vec = nxt
        out.add_scaled(vec, t.coeff)
    return out


def parse_vector(src: str, voa) -> GradedVector:
    return evaluate(parse_element(src), voa)


def format_vector(vec, voa) -> str:
    """Basis expansion of ``vec`` in the element grammar (round-trips through parse)."""
    letter = "a" if voa.kind == "heisenberg" else "L"
    if not vec:
        return "0 vac"
    terms = tuple(Term(c, tuple((letter, -p) for p in lab)) for lab, c in sorted(vec.items()))
    return format_expr(ElementExpr(terms))
