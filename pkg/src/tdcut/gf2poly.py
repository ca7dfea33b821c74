"""Sparse multivariate polynomials over GF(2) with up to four bounded trackers.

The trackers are, in packing order, weight ``w``, size ``x``, edges ``e`` and
markers ``m``.  An exponent vector is packed into a single index

    idx = w + Bw * (x + Bx * (e + Be * m))        (Bt = bound_t + 1)

and a polynomial is the Python integer whose bit ``idx`` is set exactly when
that monomial has coefficient 1.  Because packing is linear, multiplying by a
monomial is a left shift, addition is XOR and multiplication is a carry-less
product, provided no tracker ever exceeds its bound.  Each polynomial carries
a per-tracker upper bound on the exponents it may contain so that an overflow
(which would silently carry into the next tracker) is caught instead.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterator

Exponent = tuple[int, int, int, int]

ZERO_EXP: Exponent = (0, 0, 0, 0)


class PolyOverflowError(ArithmeticError):
    """An exponent left its declared bound; this is a solver bug, never a clip."""


@dataclass(frozen=True)
class Layout:
    """Per-tracker maxima and the derived packing strides."""

    w: int
    x: int = 0
    e: int = 0
    m: int = 0

    @property
    def bounds(self) -> Exponent:
        return (self.w, self.x, self.e, self.m)

    @property
    def strides(self) -> Exponent:
        sw = 1
        sx = self.w + 1
        se = sx * (self.x + 1)
        sm = se * (self.e + 1)
        return (sw, sx, se, sm)

    def pack(self, exp: Exponent) -> int:
        self.check(exp)
        return sum(a * s for a, s in zip(exp, self.strides))

    def unpack(self, idx: int) -> Exponent:
        w, rest = idx % (self.w + 1), idx // (self.w + 1)
        x, rest = rest % (self.x + 1), rest // (self.x + 1)
        e, m = rest % (self.e + 1), rest // (self.e + 1)
        return (w, x, e, m)

    def check(self, exp: Exponent) -> None:
        if any(a < 0 or a > b for a, b in zip(exp, self.bounds)):
            raise PolyOverflowError(f"exponent {exp} outside bounds {self.bounds}")


class _LiveCounter:
    def __init__(self) -> None:
        self.live = 0
        self.peak = 0


_live: _LiveCounter | None = None


@contextmanager
def live_counter() -> Iterator[_LiveCounter]:
    """Count simultaneously alive TrackedPoly objects inside the block."""
    global _live
    prev, _live = _live, _LiveCounter()
    try:
        yield _live
    finally:
        _live = prev


class TrackedPoly:
    __slots__ = ("bits", "layout", "deg", "_counted")

    def __init__(self, layout: Layout, bits: int = 0, deg: Exponent = ZERO_EXP) -> None:
        self.bits = bits
        self.layout = layout
        # componentwise upper bound on the exponents present
        self.deg = deg if bits else ZERO_EXP
        counter = _live
        self._counted = counter
        if counter is not None:
            counter.live += 1
            if counter.live > counter.peak:
                counter.peak = counter.live

    def __del__(self) -> None:
        if self._counted is not None:
            self._counted.live -= 1

    # --- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.bits

    def __bool__(self) -> bool:
        return bool(self.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TrackedPoly):
            return NotImplemented
        return self.layout == other.layout and self.bits == other.bits

    def __hash__(self) -> int:
        return hash((self.layout, self.bits))

    def __repr__(self) -> str:
        terms = sorted(self.monomials())
        return f"TrackedPoly({terms})"

    def monomials(self) -> Iterator[Exponent]:
        b = self.bits
        while b:
            low = b & -b
            yield self.layout.unpack(low.bit_length() - 1)
            b ^= low

    def copy(self) -> "TrackedPoly":
        return TrackedPoly(self.layout, self.bits, self.deg)

    # --- in-place updates used by the recursion ---------------------------

    def _same(self, other: "TrackedPoly") -> None:
        if other.layout != self.layout:
            raise ValueError("polynomials have different tracker bounds")

    def iadd(self, other: "TrackedPoly") -> "TrackedPoly":
        self._same(other)
        self.bits ^= other.bits
        self.deg = tuple(map(max, self.deg, other.deg)) if self.bits else ZERO_EXP
        return self

    def iadd_shifted(self, other: "TrackedPoly", shift: Exponent) -> "TrackedPoly":
        """self += other * Z^shift, without materialising the product."""
        self._same(other)
        if not other.bits:
            return self
        deg = tuple(a + b for a, b in zip(other.deg, shift))
        self.layout.check(deg)
        self.bits ^= other.bits << self.layout.pack(shift)
        self.deg = tuple(map(max, self.deg, deg)) if self.bits else ZERO_EXP
        return self

    def imul(self, other: "TrackedPoly") -> "TrackedPoly":
        self._same(other)
        if not self.bits or not other.bits:
            self.bits, self.deg = 0, ZERO_EXP
            return self
        deg = tuple(a + b for a, b in zip(self.deg, other.deg))
        self.layout.check(deg)
        self.bits = _clmul(self.bits, other.bits)
        self.deg = deg if self.bits else ZERO_EXP
        return self

    # --- operator sugar ----------------------------------------------------

    def __add__(self, other: "TrackedPoly") -> "TrackedPoly":
        return add(self, other)

    def __mul__(self, other: "TrackedPoly") -> "TrackedPoly":
        return mul(self, other)


def _clmul(a: int, b: int) -> int:
    """Carry-less product: XOR shifted copies of b for every set bit of a."""
    if a.bit_count() > b.bit_count():
        a, b = b, a
    out = 0
    while a:
        low = a & -a
        out ^= b << (low.bit_length() - 1)
        a ^= low
    return out


def poly_zero(layout: Layout) -> TrackedPoly:
    return TrackedPoly(layout)


def poly_one(layout: Layout) -> TrackedPoly:
    return TrackedPoly(layout, 1)


def monomial(layout: Layout, exp: Exponent) -> TrackedPoly:
    return TrackedPoly(layout, 1 << layout.pack(exp), exp)


def from_monomials(layout: Layout, exps) -> TrackedPoly:
    """Sum of the given monomials (repeats cancel)."""
    p = poly_zero(layout)
    for exp in exps:
        p.iadd(monomial(layout, tuple(exp)))
    return p


def add(p: TrackedPoly, q: TrackedPoly) -> TrackedPoly:
    return p.copy().iadd(q)


def mul(p: TrackedPoly, q: TrackedPoly) -> TrackedPoly:
    return p.copy().imul(q)


def mul_monomial(p: TrackedPoly, shift: Exponent) -> TrackedPoly:
    return poly_zero(p.layout).iadd_shifted(p, shift)


def coeff(p: TrackedPoly, at: Exponent) -> int:
    try:
        idx = p.layout.pack(at)
    except PolyOverflowError:
        return 0
    return (p.bits >> idx) & 1


def weight_slice(p: TrackedPoly, x: int = 0, e: int = 0, m: int = 0) -> int:
    """Bitmask over weights w of the coefficients of Z_W^w Z_X^x Z_E^e Z_M^m."""
    lay = p.layout
    if not (0 <= x <= lay.x and 0 <= e <= lay.e and 0 <= m <= lay.m):
        return 0
    base = lay.pack((0, x, e, m))
    return (p.bits >> base) & ((1 << (lay.w + 1)) - 1)


def dump(p: TrackedPoly) -> str:
    """One monomial per line, ``w x e m``, lexicographically sorted."""
    return "".join(f"{w} {x} {e} {m}\n" for w, x, e, m in sorted(p.monomials()))
