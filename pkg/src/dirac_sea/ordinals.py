"""Ordinals below omega^omega in Cantor normal form.

An ordinal is stored as a tuple of ``(exponent, coefficient)`` pairs with
strictly decreasing natural exponents and positive coefficients, so that
``((2, 1), (0, 3))`` is ``w^2 + 3``.  With that layout plain tuple comparison
coincides with the ordinal order, which is what makes :class:`Ordinal`
directly sortable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

_TERM_RE = re.compile(r"^(?:w(?:\^(\d+))?(?:\*(\d+))?|(\d+))$")


@dataclass(frozen=True, order=True)
class Ordinal:
    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        prev = None
        for exp, coeff in self.terms:
            if exp < 0 or coeff <= 0:
                raise ValueError(f"bad Cantor normal form term ({exp}, {coeff})")
            if prev is not None and exp >= prev:
                raise ValueError("Cantor normal form exponents must strictly decrease")
            prev = exp

    @classmethod
    def of(cls, n: int) -> Ordinal:
        if n < 0:
            raise ValueError("ordinals are non-negative")
        return cls(((0, n),)) if n else cls()

    @classmethod
    def omega(cls, exponent: int = 1, coefficient: int = 1) -> Ordinal:
        return cls(((exponent, coefficient),))

    @classmethod
    def parse(cls, text: Union[str, int, Ordinal]) -> Ordinal:
        """Parse ``"w^2*3+w+5"`` style notation (``w`` stands for omega)."""
        if isinstance(text, Ordinal):
            return text
        if isinstance(text, int):
            return cls.of(text)
        s = text.replace(" ", "").replace("ω", "w")
        if not s:
            raise ValueError("empty ordinal")
        result = cls()
        for part in s.split("+"):
            m = _TERM_RE.match(part)
            if m is None:
                raise ValueError(f"cannot parse ordinal term {part!r} in {text!r}")
            if m.group(3) is not None:
                term = cls.of(int(m.group(3)))
            else:
                exp = int(m.group(1)) if m.group(1) is not None else 1
                coeff = int(m.group(2)) if m.group(2) is not None else 1
                if coeff == 0:
                    term = cls()
                else:
                    term = cls(((exp, coeff),)) if exp else cls.of(coeff)
            result = result + term
        return result

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for exp, coeff in self.terms:
            if exp == 0:
                out.append(str(coeff))
                continue
            base = "w" if exp == 1 else f"w^{exp}"
            out.append(base if coeff == 1 else f"{base}*{coeff}")
        return "+".join(out)

    def __repr__(self) -> str:
        return f"Ordinal({str(self)!r})"

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0] == 0)

    @property
    def is_limit(self) -> bool:
        return bool(self.terms) and self.terms[-1][0] > 0

    @property
    def degree(self) -> int:
        """Leading exponent (0 for finite ordinals)."""
        return self.terms[0][0] if self.terms else 0

    @property
    def limit_part(self) -> Ordinal:
        """The largest limit ordinal (or zero) below or equal to ``self``."""
        if self.terms and self.terms[-1][0] == 0:
            return Ordinal(self.terms[:-1])
        return self

    @property
    def finite_part(self) -> int:
        if self.terms and self.terms[-1][0] == 0:
            return self.terms[-1][1]
        return 0

    def __add__(self, other: Union[Ordinal, int]) -> Ordinal:
        if isinstance(other, int):
            other = Ordinal.of(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        if not other.terms:
            return self
        lead = other.terms[0][0]
        # lower terms of self are absorbed by the leading power of other
        kept = [t for t in self.terms if t[0] >= lead]
        if kept and kept[-1][0] == lead:
            merged = (lead, kept[-1][1] + other.terms[0][1])
            return Ordinal(tuple(kept[:-1]) + (merged,) + other.terms[1:])
        return Ordinal(tuple(kept) + other.terms)

    def successor(self) -> Ordinal:
        return self + 1

    def one_plus(self) -> Ordinal:
        """``1 + self``; equals ``self`` whenever ``self`` is infinite."""
        return Ordinal.of(1) + self

    def remainder_after(self, alpha: Ordinal) -> Ordinal:
        """The unique ``delta`` with ``alpha + delta == self`` (needs ``alpha <= self``)."""
        if alpha > self:
            raise ValueError(f"{alpha} exceeds {self}")
        for i, (a, b) in enumerate(zip(alpha.terms, self.terms)):
            if a == b:
                continue
            if a[0] == b[0]:
                return Ordinal(((b[0], b[1] - a[1]),) + self.terms[i + 1 :])
            return Ordinal(self.terms[i:])
        return Ordinal(self.terms[len(alpha.terms) :])

    def same_block(self, other: Ordinal) -> bool:
        """True when the interval between the two ordinals is finite."""
        return self.limit_part == other.limit_part


ZERO = Ordinal()
ONE = Ordinal.of(1)
OMEGA = Ordinal.omega()


def ordinal_sum(parts) -> Ordinal:
    total = ZERO
    for p in parts:
        total = total + p
    return total
