"""Imaginary quadratic field invariants and the split-prime package.

Class numbers come from enumerating reduced binary quadratic forms
(a, b, c) with b^2 - 4ac = D, |b| <= a <= c, and b >= 0 when |b| = a or
a = c.  For a split odd prime p, `pi_bar` solves the norm equation
(x^2 - D y^2)/4 = p^h and returns the conjugate whose image under the
fixed embedding into Q_p is a unit, together with the Iwasawa log of
that image.  The embedding sends sqrt(D) to the Hensel lift whose
residue mod p is the least positive square root of D mod p; the
`conjugate_lift` flag selects the other embedding, which swaps the two
coordinate pairs but leaves the logged value unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .characters import char_from_kronecker, kronecker_symbol
from .padic import PadicContext, PadicNumber, iwasawa_log, sqrt_unit

__all__ = [
    "QuadFieldData",
    "SplitPrimeData",
    "quad_field_data",
    "quad_field_from_discriminant",
    "split_behavior",
    "pi_bar",
    "reduced_forms",
    "class_number_by_reduction",
    "primitive_norm_representations",
]


def _squarefree(n: int) -> bool:
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class QuadFieldData:
    """Q(sqrt(-d)): fundamental discriminant D < 0, class number h, unit count w."""

    d: int
    D: int
    h: int
    w: int

    def character(self):
        """The odd quadratic character attached to the field."""
        return char_from_kronecker(self.D)


def reduced_forms(D: int) -> list[tuple[int, int, int]]:
    """All reduced forms (a, b, c) of discriminant D < 0."""
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError("D must be a negative discriminant")
    out = []
    for a in range(1, isqrt(-D // 3) + 1):
        for b in range(-a, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a:
                continue
            if b < 0 and (-b == a or a == c):
                continue
            out.append((a, b, c))
    return out


def _reduce_form(a: int, b: int, c: int) -> tuple[int, int, int]:
    # classical reduction loop for positive definite forms
    while True:
        if c < a or (c == a and b < 0):
            a, b, c = c, -b, a
            continue
        if b > a or b <= -a:
            r = (a - b) // (2 * a)
            b2 = b + 2 * r * a
            c = a * r * r + b * r + c
            b = b2
            continue
        break
    if b < 0 and (-b == a or a == c):
        b = -b
    return (a, b, c)


def class_number_by_reduction(D: int) -> int:
    """Independent h(D): reduce every small form and count distinct classes.

    Enumerates all (a, b, c) with a <= sqrt(|D|/3) and |b| <= 2a, runs the
    reduction algorithm on each, and counts canonical representatives.
    """
    seen = set()
    for a in range(1, isqrt(-D // 3) + 2):
        for b in range(-2 * a, 2 * a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c <= 0:
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            seen.add(_reduce_form(a, b, c))
    return len(seen)


def quad_field_data(d: int) -> QuadFieldData:
    """Invariants of Q(sqrt(-d)) for squarefree d > 0."""
    if d < 1 or not _squarefree(d):
        raise ValueError(f"d must be a squarefree positive integer, got {d}")
    D = -d if d % 4 == 3 else -4 * d
    h = len(reduced_forms(D))
    w = 6 if D == -3 else 4 if D == -4 else 2
    return QuadFieldData(d=d, D=D, h=h, w=w)


def quad_field_from_discriminant(D: int) -> QuadFieldData:
    """Same data keyed by a fundamental discriminant D < 0."""
    from .characters import is_fundamental_discriminant
    if D >= 0 or not is_fundamental_discriminant(D):
        raise ValueError(f"{D} is not a negative fundamental discriminant")
    d = -D if D % 4 == 1 else -D // 4
    return quad_field_data(d)


def split_behavior(F: QuadFieldData, p: int) -> str:
    """'split', 'inert', or 'ramified'; p = 2 handled through (D/2)."""
    if p < 2:
        raise ValueError("p must be a prime")
    s = kronecker_symbol(F.D, p)
    return "split" if s == 1 else "inert" if s == -1 else "ramified"


@dataclass(frozen=True)
class SplitPrimeData:
    """The split-prime package at p.

    Coordinates (x, y) encode (x + y*sqrt(D))/2; pibar_coords is the
    conjugate whose embedding image is a unit and generates the h-th power
    of the prime missed by the embedding.
    """

    p: int
    h: int
    sqrt_disc: PadicNumber
    pi_coords: tuple[int, int]
    pibar_coords: tuple[int, int]
    pibar_unit: PadicNumber
    log_pibar: PadicNumber
    conjugate_lift: bool

    def embed(self, coords: tuple[int, int]) -> PadicNumber:
        """Image of (x + y*sqrt(D))/2 under the fixed embedding."""
        x, y = coords
        return (self.sqrt_disc * y + x) / 2


def primitive_norm_representations(F: QuadFieldData, p: int,
                                   max_count: int | None = None):
    """Primitive (x, y), x, y >= 0, with (x^2 - D y^2)/4 = p^h.

    Rejects pairs with p | x and p | y, which are exactly the generators
    of mixed ideals.  Yields in order of increasing y.
    """
    D, h = F.D, F.h
    target = 4 * p**h
    found = 0
    y = 0
    while target + D * y * y >= 0:
        t = target + D * y * y
        x = isqrt(t)
        if x * x == t and (x - y * D) % 2 == 0:
            if not (x % p == 0 and y % p == 0):
                yield (x, y)
                found += 1
                if max_count is not None and found >= max_count:
                    return
        y += 1


def pi_bar(F: QuadFieldData, p: int, ctx: PadicContext,
           conjugate_lift: bool = False,
           representation: tuple[int, int] | None = None) -> SplitPrimeData:
    """Generator data for the h-th power of the conjugate prime above p.

    Needs p split in F.  Any primitive norm representation gives the same
    log_pibar because generators differ by roots of unity, which the
    Iwasawa log kills; pass `representation` to check that explicitly.
    """
    if ctx.p != p:
        raise ValueError("context prime and p disagree")
    if split_behavior(F, p) != "split":
        raise ValueError(f"p = {p} does not split in Q(sqrt({F.D}))")
    D, h = F.D, F.h
    r0 = min(t for t in range(1, p) if (t * t - D) % p == 0)
    if conjugate_lift:
        r0 = p - r0
    w = sqrt_unit(ctx.from_int(D), residue=r0)
    if representation is None:
        rep = next(primitive_norm_representations(F, p, max_count=1), None)
        if rep is None:
            raise ArithmeticError(
                f"no primitive representation of 4*{p}^{h} found; "
                "this cannot happen for split p")
    else:
        x, y = representation
        if (x * x - D * y * y) != 4 * p**h or (x - y * D) % 2:
            raise ValueError("not a valid norm representation")
        if x % p == 0 and y % p == 0:
            raise ValueError("representation is not primitive")
        rep = representation
    x, y = rep
    plus = (w * y + x) / 2
    minus = (w * (-y) + x) / 2
    plus_unit = (not plus.is_zero()) and plus.valuation() == 0
    minus_unit = (not minus.is_zero()) and minus.valuation() == 0
    if plus_unit == minus_unit:
        raise ArithmeticError("exactly one conjugate must be a unit")
    if plus_unit:
        pibar_coords, pi_coords, pibar_img = (x, y), (x, -y), plus
    else:
        pibar_coords, pi_coords, pibar_img = (x, -y), (x, y), minus
    return SplitPrimeData(
        p=p, h=h, sqrt_disc=w,
        pi_coords=pi_coords, pibar_coords=pibar_coords,
        pibar_unit=pibar_img, log_pibar=iwasawa_log(pibar_img),
        conjugate_lift=conjugate_lift)
