"""Exact integer Laurent polynomials in one and two variables."""

from __future__ import annotations

from typing import Mapping


def _clean(terms: Mapping) -> dict:
    return {k: v for k, v in terms.items() if v != 0}


def _monomial(var: str, e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return var
    return f"{var}^{e}"


def _join(pieces: list[tuple[int, str]]) -> str:
    """Render ``(coeff, monomial)`` pairs as ``-q^-1 + 2*q``."""
    if not pieces:
        return "0"
    out = []
    for n, (c, mono) in enumerate(pieces):
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if n == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


class LaurentPoly:
    """Integer Laurent polynomial in a single variable (``A`` or ``q``)."""

    __slots__ = ("terms", "var")

    def __init__(self, terms: Mapping[int, int] | None = None, var: str = "q"):
        self.terms = _clean(dict(terms or {}))
        self.var = var

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1, var: str = "q") -> "LaurentPoly":
        return cls({exponent: coeff}, var)

    @classmethod
    def constant(cls, c: int, var: str = "q") -> "LaurentPoly":
        return cls({0: c}, var)

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.var != self.var and other.terms and self.terms:
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        if isinstance(other, int):
            return LaurentPoly({0: other}, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()}, self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self.terms.items()
            if abs(c) != 1:
                raise ValueError("monomial coefficient is not a unit")
            return LaurentPoly({e * n: c ** -n}, self.var)
        out = LaurentPoly({0: 1}, self.var)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == _clean({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms and (self.var == other.var or not self.terms)

    def __hash__(self):
        return hash((self.var, tuple(sorted(self.terms.items()))))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"LaurentPoly({self}, var={self.var!r})"

    def __str__(self):
        return _join([(self.terms[e], _monomial(self.var, e)) for e in sorted(self.terms)])

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``var^k``."""
        return LaurentPoly({e + k: c for e, c in self.terms.items()}, self.var)

    def reflect(self) -> "LaurentPoly":
        """Substitute ``var -> var^-1``."""
        return LaurentPoly({-e: c for e, c in self.terms.items()}, self.var)

    def evaluate(self, z: complex) -> complex:
        return sum(c * z ** e for e, c in self.terms.items())

    def min_degree(self) -> int:
        return min(self.terms)

    def max_degree(self) -> int:
        return max(self.terms)

    def to_json(self) -> dict[str, int]:
        return {str(e): self.terms[e] for e in sorted(self.terms)}

    @classmethod
    def from_json(cls, data: Mapping[str, int], var: str = "q") -> "LaurentPoly":
        return cls({int(e): int(c) for e, c in data.items()}, var)


class PoincarePoly:
    """Two-variable Laurent polynomial ``sum c * t^i q^j`` with integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        self.terms = _clean(dict(terms or {}))

    def __eq__(self, other):
        if not isinstance(other, PoincarePoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __repr__(self):
        return f"PoincarePoly({self})"

    def __str__(self):
        keys = sorted(self.terms)
        pieces = []
        for i, j in keys:
            mono = "*".join(p for p in (_monomial("t", i), _monomial("q", j)) if p)
            pieces.append((self.terms[(i, j)], mono))
        return _join(pieces)

    def evaluate(self, t: complex, q: complex) -> complex:
        return sum(c * t ** i * q ** j for (i, j), c in self.terms.items())

    def at_t(self, t: int) -> LaurentPoly:
        """Specialize ``t`` to ``+1`` or ``-1``; ``t = -1`` gives the Jones polynomial."""
        if t not in (1, -1):
            raise ValueError("t must be 1 or -1 to stay a Laurent polynomial in q")
        out: dict[int, int] = {}
        for (i, j), c in self.terms.items():
            out[j] = out.get(j, 0) + c * t ** abs(i)
        return LaurentPoly(out, "q")

    def to_json(self) -> dict:
        return {"terms": [{"t": i, "q": j, "coeff": self.terms[(i, j)]} for i, j in sorted(self.terms)]}
