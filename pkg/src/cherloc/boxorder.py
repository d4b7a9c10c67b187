"""Parameters, box contents, and the content-based order on boxes.

The content of box (x, y, i) is h_i + kappa*(y - x).  Two boxes are
comparable only when their contents differ by an integer plus
(i - i')/ell, taken with the literal component indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .combinatorics import Box
from .scalars import KappaMode, ParamScalar, RationalLike, Sign


@dataclass(frozen=True)
class Params:
    """A kappa mode together with the component offsets h_0, ..., h_{ell-1}.

    The offsets are only meaningful up to a common summand; the
    constructor normalizes to the representative with sum(h) = 0.
    """

    mode: KappaMode
    h: tuple[ParamScalar, ...]

    def __post_init__(self) -> None:
        if not self.h:
            raise ValueError("need at least one component offset")
        h = tuple(self.h)
        for entry in h:
            if not isinstance(entry, ParamScalar) or entry.mode != self.mode:
                raise ValueError("offsets must be scalars in the declared kappa mode")
        total = self.mode.zero()
        for entry in h:
            total = total + entry
        shift = total / len(h)
        object.__setattr__(self, "h", tuple(entry - shift for entry in h))

    @classmethod
    def build(
        cls, mode: KappaMode, h: "list[ParamScalar | RationalLike]"
    ) -> Params:
        entries = tuple(
            entry if isinstance(entry, ParamScalar) else mode.scalar(entry)
            for entry in h
        )
        return cls(mode, entries)

    @property
    def ell(self) -> int:
        return len(self.h)

    @property
    def kappa(self) -> ParamScalar:
        return self.mode.kappa()

    def to_json(self) -> dict:
        return {
            "ell": self.ell,
            "kappa": self.mode.label(),
            "h": [entry.to_json() for entry in self.h],
        }

    @classmethod
    def from_json(cls, data: dict) -> Params:
        mode = KappaMode.from_label(data["kappa"])
        h = tuple(ParamScalar.from_json(entry, mode) for entry in data["h"])
        p = cls(mode, h)
        if p.ell != data["ell"]:
            raise ValueError("ell does not match the number of offsets")
        return p


def cont(p: Params, box: Box) -> ParamScalar:
    """Content of a box: h_i + kappa*(y - x)."""
    return p.h[box.i] + p.kappa * (box.y - box.x)


def box_equiv(p: Params, b1: Box, b2: Box) -> bool:
    """Whether two boxes are comparable under p.

    True when cont(b1) - cont(b2) lies in Z + (b1.i - b2.i)/ell with the
    literal component indices (no reduction mod ell).
    """
    diff = cont(p, b1) - cont(p, b2)
    return diff.in_integers_plus(Fraction(b1.i - b2.i, p.ell))


def box_less(p: Params, b1: Box, b2: Box, tiebreak: bool = False) -> bool:
    """Strict order: comparable boxes whose content difference is negative.

    With tiebreak enabled, comparable boxes of equal content are
    additionally ordered by component index.
    """
    if not box_equiv(p, b1, b2):
        return False
    sign = (cont(p, b1) - cont(p, b2)).rational_sign()
    if sign is Sign.NEGATIVE:
        return True
    if tiebreak and sign is Sign.ZERO and b1.i < b2.i:
        return True
    return False


def box_leq(p: Params, b1: Box, b2: Box, tiebreak: bool = False) -> bool:
    """Identical boxes, or b1 strictly below b2."""
    return b1 == b2 or box_less(p, b1, b2, tiebreak)


def content_class_key(p: Params, box: Box):
    """Hashable key constant exactly on comparability classes.

    Derived from cont(box) - i/ell: the kappa coefficient and the
    fractional part of the rational coefficient are invariants of the
    class, and together they separate distinct classes.
    """
    shifted = cont(p, box) - Fraction(box.i, p.ell)
    return (shifted.b, shifted.a % 1)
