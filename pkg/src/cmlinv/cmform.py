"""CM newform data at an ordinary prime: a_p, Hecke roots, validation.

For weight-2 desk examples a_p comes from counting points on a CM curve
over F_p; higher-weight data is synthesized from Hecke-root powers by
the symmetric-power layer.  The unit root alpha_p of
x^2 - a_p x + psi(p) p^(k-1) is obtained by Hensel lifting from
x = a_p mod p, and beta_p = psi(p) p^(k-1) / alpha_p.
"""

from __future__ import annotations

from dataclasses import dataclass

from .characters import DirichletCharacter, trivial_character
from .padic import PadicContext, PadicNumber
from .quadfield import QuadFieldData, quad_field_data, split_behavior

__all__ = [
    "CMFormSpec",
    "HeckeRoots",
    "ap_point_count",
    "cm_spec",
    "cm_spec_from_curve",
    "unit_root",
    "curve_discriminant",
]


def curve_discriminant(curve: tuple[int, ...]) -> int:
    """Discriminant of y^2 = x^3 + a2 x^2 + a4 x + a6."""
    a2, a4, a6 = _curve_coeffs(curve)
    b2 = 4 * a2
    b4 = 2 * a4
    b6 = 4 * a6
    b8 = 4 * a2 * a6 - a4 * a4
    return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def _curve_coeffs(curve) -> tuple[int, int, int]:
    t = tuple(curve)
    if len(t) == 2:
        return (0, t[0], t[1])
    if len(t) == 3:
        return t
    raise ValueError("curve must be (a4, a6) or (a2, a4, a6)")


def ap_point_count(curve: tuple[int, ...], p: int) -> int:
    """a_p = p + 1 - #E(F_p) by direct enumeration with quadratic-residue tests."""
    if p < 3:
        raise ValueError("p must be an odd prime")
    a2, a4, a6 = _curve_coeffs(curve)
    if curve_discriminant(curve) % p == 0:
        raise ValueError(f"bad reduction at {p}")
    total = 0
    for x in range(p):
        f = (x * x * x + a2 * x * x + a4 * x + a6) % p
        if f == 0:
            continue
        total += 1 if pow(f, (p - 1) // 2, p) == 1 else -1
    return -total


@dataclass(frozen=True)
class CMFormSpec:
    """(F, k, psi, a_p, N): a p-ordinary CM eigenform's local data at p."""

    field: QuadFieldData
    weight: int
    nebentypus: DirichletCharacter
    ap: PadicNumber
    level: int
    context: PadicContext

    @property
    def p(self) -> int:
        return self.context.p


def cm_spec(field: QuadFieldData, weight: int, nebentypus: DirichletCharacter,
            ap, level: int, ctx: PadicContext) -> CMFormSpec:
    """Validated CM form spec.

    Rejects non-ordinary a_p, p | N, nebentypus parity not matching the
    weight, and fields in which p is not split.
    """
    p = ctx.p
    if weight < 2:
        raise ValueError("weight must be >= 2")
    ap = ctx.convert(ap)
    if ap.is_zero() or ap.valuation() != 0:
        raise ValueError("a_p must be a p-adic unit (ordinarity)")
    if level % p == 0:
        raise ValueError("level must be prime to p")
    if nebentypus.conductor() % p == 0:
        raise ValueError("nebentypus conductor must be prime to p")
    if nebentypus.parity() != (-1) ** weight:
        raise ValueError("nebentypus parity must equal (-1)^weight")
    if split_behavior(field, p) != "split":
        raise ValueError(f"p = {p} does not split in Q(sqrt({field.D}))")
    return CMFormSpec(field=field, weight=weight, nebentypus=nebentypus,
                      ap=ap, level=level, context=ctx)


def cm_spec_from_curve(curve: tuple[int, ...], d: int, level: int,
                       ctx: PadicContext) -> CMFormSpec:
    """Weight-2, trivial-nebentypus spec with a_p counted on the given curve."""
    F = quad_field_data(d)
    ap = ap_point_count(curve, ctx.p)
    return cm_spec(F, 2, trivial_character(), ap, level, ctx)


@dataclass(frozen=True)
class HeckeRoots:
    """Unit root alpha and non-unit root beta of x^2 - a_p x + psi(p) p^(k-1)."""

    alpha: PadicNumber
    beta: PadicNumber


def unit_root(spec: CMFormSpec) -> HeckeRoots:
    """Hecke roots; alpha found by Hensel lifting from alpha = a_p mod p."""
    ctx = spec.context
    p = ctx.p
    c = spec.nebentypus.value_padic(p, ctx) * ctx.from_int(p) ** (spec.weight - 1)
    ap = spec.ap
    x = ctx.from_int(ap.residue(1))
    # Newton for f(x) = x^2 - a_p x + c; f'(alpha) = alpha - beta is a unit
    for _ in range(ctx.N.bit_length() + 2):
        fx = x * x - ap * x + c
        x = x - fx / (2 * x - ap)
    if not (x * x - ap * x + c).is_zero():
        raise ArithmeticError("Hensel lift for the unit root failed")
    return HeckeRoots(alpha=x, beta=c / x)
