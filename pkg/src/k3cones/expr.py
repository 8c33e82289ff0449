"""Parser for divisor expressions such as ``3L+4H``, ``sqrt(3/4)L + 2H`` or ``2Ht-3B``.

Coefficients are built from integers, ``/``, ``*`` (or juxtaposition), parentheses and
square roots ``sqrt(r)``, ``√n`` or ``√(r)`` of nonnegative rationals.  Whitespace is ignored,
so the printed forms of classes such as ``((√70-4)/3)L+2H`` parse back.
"""

from __future__ import annotations

import re
from typing import Optional, Union

from .chow import DivisorE, DivisorS2
from .qfield import QuadElem, qe_sqrt

__all__ = ["ExpressionError", "parse_divisor"]


class ExpressionError(ValueError):
    pass


_BASIS = re.compile(r"(Ht|H~|L|H|B)$")
_NUMBER = re.compile(r"[0-9]+")


class _CoefParser:
    """Recursive descent over ``sum := product (+|- product)*``, ``product := atom ((*|/)? atom)*``."""

    def __init__(self, text: str, t: Optional[int]):
        self.text, self.pos, self.t = text, 0, t

    def error(self, what: str) -> ExpressionError:
        return ExpressionError(f"{what} in coefficient {self.text!r} at position {self.pos}")

    def peek(self, token: str) -> bool:
        return self.text.startswith(token, self.pos)

    def take(self, token: str) -> bool:
        if self.peek(token):
            self.pos += len(token)
            return True
        return False

    def parse(self) -> QuadElem:
        value = self.sum()
        if self.pos != len(self.text):
            raise self.error("unexpected text")
        return value

    def sum(self) -> QuadElem:
        sgn = 1
        if self.take("-"):
            sgn = -1
        else:
            self.take("+")
        value = sgn * self.product()
        while self.pos < len(self.text) and self.text[self.pos] in "+-":
            sgn = 1 if self.text[self.pos] == "+" else -1
            self.pos += 1
            value = value + sgn * self.product()
        return value

    def product(self) -> QuadElem:
        value = self.atom()
        while self.pos < len(self.text) and self.text[self.pos] not in "+-)":
            if self.take("/"):
                rhs = self.atom()
                if not rhs:
                    raise self.error("division by zero")
                value = value / rhs
            else:
                self.take("*")
                value = value * self.atom()
        return value

    def atom(self) -> QuadElem:
        if self.take("sqrt(") or self.take("√("):
            return self._root(self._closed())
        if self.take("√"):
            return self._root(QuadElem(self._number()))
        if self.take("("):
            return self._closed()
        if self.take("t"):
            if self.t is None:
                raise self.error("'t' needs a degree")
            return QuadElem(self.t)
        return QuadElem(self._number())

    def _closed(self) -> QuadElem:
        value = self.sum()
        if not self.take(")"):
            raise self.error("missing ')'")
        return value

    def _number(self) -> int:
        m = _NUMBER.match(self.text, self.pos)
        if not m:
            raise self.error("expected a number")
        self.pos = m.end()
        return int(m.group())

    def _root(self, arg: QuadElem) -> QuadElem:
        if not arg.is_rational or arg.rational() < 0:
            raise self.error("square roots take a nonnegative rational")
        return qe_sqrt(arg.rational())


def _coefficient(text: str, t: Optional[int] = None) -> QuadElem:
    return _CoefParser(text, t).parse()


def _split_terms(text: str) -> list[tuple[int, str]]:
    terms, depth, start, sgn = [], 0, 0, 1
    i = 0
    if text and text[0] in "+-":
        sgn = -1 if text[0] == "-" else 1
        start = i = 1
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0:
            terms.append((sgn, text[start:i]))
            sgn = -1 if ch == "-" else 1
            start = i + 1
        i += 1
    terms.append((sgn, text[start:]))
    return terms


def parse_divisor(text: str, t: Optional[int] = None) -> Union[DivisorE, DivisorS2]:
    """Parse into a ``DivisorE`` (basis L, H) or a ``DivisorS2`` (basis Ht, B).

    When ``t`` is given, the letter ``t`` in a coefficient stands for it.
    """
    s = "".join(text.split()).replace("−", "-").replace("H̃", "Ht")
    if not s:
        raise ExpressionError("empty expression")
    coeffs: dict[str, QuadElem] = {}
    for sgn, term in _split_terms(s):
        m = _BASIS.search(term)
        if not m:
            raise ExpressionError(f"term {term!r} has no basis divisor (L, H, Ht or B)")
        name = "Ht" if m[1] == "H~" else m[1]
        coef_text = term[: m.start()].rstrip("*")
        coef = _coefficient(coef_text, t) if coef_text else QuadElem(1)
        coeffs[name] = coeffs.get(name, QuadElem(0)) + sgn * coef
    on_e = {"L", "H"} & coeffs.keys()
    on_s2 = {"Ht", "B"} & coeffs.keys()
    if on_e and on_s2:
        raise ExpressionError("mixes the bases of E (L, H) and S^[2] (Ht, B)")
    if on_e:
        return DivisorE(coeffs.get("L", 0), coeffs.get("H", 0))
    ht, b = coeffs.get("Ht", QuadElem(0)), coeffs.get("B", QuadElem(0))
    if not (ht.is_rational and b.is_rational):
        raise ExpressionError("classes on S^[2] take rational coefficients")
    return DivisorS2(ht.a, b.a)
