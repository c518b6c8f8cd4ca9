"""Symmetric-power layer: decomposition into a Dirichlet factor and
twisted modular factors, critical integers, trivial-zero prediction,
and the non-vanishing interpolation product.

For an even power n = 2m the weight-0 normalization splits off the
quadratic character of the CM field raised to the m-th power plus m
modular factors; factor j comes from the 2j-th power of the Hecke
character, has weight 2j(k-1) + 1, cyclotomic shift j(k-1), twist
psi^(-j) theta^(m-j), and Hecke roots

    alpha_j = psi(p)^(-j) alpha^(2j),   beta_j = psi(p)^(-j) beta^(2j),

using theta(p) = 1 at split p.  Odd powers decompose into modular
factors only (odd Hecke-character powers), so no trivial zero occurs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .characters import DirichletCharacter, char_product, trivial_character
from .cmform import CMFormSpec, unit_root
from .kl import branch_series
from .padic import PadicNumber

__all__ = [
    "SymPowerFactor",
    "SymPowerDecomposition",
    "TrivialZeroReport",
    "TrivialZeroCertificate",
    "decompose",
    "critical_integers",
    "trivial_zero_locations",
    "e_plus",
    "inspect_interpolation_factors",
]


@dataclass(frozen=True)
class SymPowerFactor:
    """One factor of the decomposed symmetric power.

    kind is "dirichlet" (then only `character` is set) or "modular" (then
    the Hecke-character power r determines the weight r(k-1) + 1, and the
    cyclotomic shift, twist character, and Hecke roots of the twisted form
    are stored explicitly).
    """

    kind: str
    character: DirichletCharacter | None = None
    eta_power: int | None = None
    weight: int | None = None
    shift: int | None = None
    twist: DirichletCharacter | None = None
    alpha: PadicNumber | None = None
    beta: PadicNumber | None = None

    @property
    def j(self) -> int:
        """Factor index for even powers (eta_power = 2j)."""
        if self.kind != "modular" or self.eta_power is None or self.eta_power % 2:
            raise ValueError("j is defined for the even-power modular factors")
        return self.eta_power // 2


@dataclass(frozen=True)
class SymPowerDecomposition:
    n: int
    m: int
    spec: CMFormSpec
    factors: tuple[SymPowerFactor, ...]

    def dirichlet_factor(self) -> SymPowerFactor | None:
        for f in self.factors:
            if f.kind == "dirichlet":
                return f
        return None

    def frobenius_eigenvalues(self) -> list[PadicNumber]:
        """Multiset of Frobenius eigenvalues at p implied by the factor list.

        The twist's value at p is already folded into alpha/beta, so each
        modular factor contributes alpha * p^(-shift) and beta * p^(-shift).
        """
        ctx = self.spec.context
        out = []
        for f in self.factors:
            if f.kind == "dirichlet":
                out.append(f.character.value_padic(ctx.p, ctx))
            else:
                scale = ctx.from_int(ctx.p) ** (-f.shift)
                out.append(f.alpha * scale)
                out.append(f.beta * scale)
        return out


def decompose(spec: CMFormSpec, n: int) -> SymPowerDecomposition:
    """Factor list of the weight-0-normalized n-th symmetric power."""
    if n < 1:
        raise ValueError("n must be >= 1")
    ctx = spec.context
    m = n // 2
    theta = spec.field.character()
    psi = spec.nebentypus
    roots = unit_root(spec)
    psi_p = psi.value_padic(ctx.p, ctx)
    factors: list[SymPowerFactor] = []
    if n % 2 == 0:
        factors.append(SymPowerFactor(
            kind="dirichlet",
            character=theta if m % 2 else trivial_character()))
    # block i holds the Hecke-character power r = n - 2i; twist psi^(i-m) theta^i,
    # cyclotomic shift (m - i)(k - 1) for even n, ((r-1)/2)(k - 1) for odd n
    r_values = range(n, 1, -2) if n % 2 == 0 else range(n, 0, -2)
    for r in r_values:
        i = (n - r) // 2
        twist = char_product(psi.power(i - m), theta.power(i % 2))
        scale = psi_p ** (i - m)
        shift = ((m - i) if n % 2 == 0 else (r - 1) // 2) * (spec.weight - 1)
        factors.append(SymPowerFactor(
            kind="modular", eta_power=r,
            weight=r * (spec.weight - 1) + 1,
            shift=shift, twist=twist,
            alpha=scale * roots.alpha**r,
            beta=scale * roots.beta**r))
    return SymPowerDecomposition(n=n, m=m, spec=spec, factors=tuple(factors))


def critical_integers(n: int, k: int) -> list[int]:
    """The critical set for the even power n; refuses odd n.

    Worked out from the Gamma factors of the weight-0 motive: the
    smallest modular factor confines a to [2-k, k-1], and the real
    Gamma factor of the middle line fixes the parity -- for m odd
    (odd character) non-positive evens and positive odds, for m even
    (trivial character) negative odds and positive evens with 0 and 1
    excluded.  The result is symmetric under a -> 1 - a, as the
    functional equation of a self-dual weight-0 motive demands.
    """
    if n < 2 or n % 2:
        raise ValueError(
            "critical integers are tabulated for even symmetric powers only")
    if k < 2:
        raise ValueError("weight must be >= 2")
    m = n // 2
    out = []
    for a in range(2 - k, k):
        if m % 2 == 1:
            ok = (a <= 0 and a % 2 == 0) or (a >= 1 and a % 2 == 1)
        else:
            ok = (a <= -1 and a % 2 != 0) or (a >= 2 and a % 2 == 0)
        if ok:
            out.append(a)
    return out


@dataclass(frozen=True)
class TrivialZeroCertificate:
    branch: int
    s: int
    order: int
    c0: PadicNumber
    c1: PadicNumber
    n_cert: int


@dataclass(frozen=True)
class TrivialZeroReport:
    n: int
    locations: tuple[tuple[int, int], ...]
    certificates: tuple[TrivialZeroCertificate, ...] = ()


def trivial_zero_locations(spec: CMFormSpec, n: int,
                           with_certificates: bool = False,
                           n_cert: int = 8) -> TrivialZeroReport:
    """Exactly two order-1 trivial zeroes, at (branch 0, s=0) and
    (branch 1, s=1), when n = 2m with m odd; none otherwise."""
    if n < 1:
        raise ValueError("n must be >= 1")
    m = n // 2
    if n % 2 or m % 2 == 0:
        return TrivialZeroReport(n=n, locations=())
    locations = ((0, 0), (1, 1))
    certs = ()
    if with_certificates:
        theta = spec.field.character()
        certs = tuple(
            _order_one_certificate(spec, theta, i, s, n_cert)
            for (i, s) in locations)
    return TrivialZeroReport(n=n, locations=locations, certificates=certs)


def _order_one_certificate(spec, theta, i, s, n_cert) -> TrivialZeroCertificate:
    bs = branch_series(i, theta, s, 2, spec.context, n_cert=n_cert)
    c0, c1 = bs.coefficients[0], bs.coefficients[1]
    if c0.min_valuation() < bs.n_cert:
        raise ArithmeticError("predicted trivial zero has a nonvanishing value")
    if c1.is_zero() or c1.valuation() >= bs.n_cert:
        raise ArithmeticError("predicted order-1 zero has a vanishing derivative")
    return TrivialZeroCertificate(branch=i, s=s, order=1, c0=c0, c1=c1,
                                  n_cert=bs.n_cert)


def inspect_interpolation_factors(spec: CMFormSpec, n: int):
    """Direct inspection: which near-central (branch, point) pairs have a
    vanishing Dirichlet interpolation factor and no vanishing modular factor.

    Independent of the trivial-zero predicate: computes the factors
    themselves.  The trivial character contributes no zero because at
    a = 0 or 1 criticality forces an odd twist, killing chi^(-1)(p).
    """
    dec = decompose(spec, n)
    ctx = spec.context
    p = ctx.p
    out = []
    dirichlet = dec.dirichlet_factor()
    if dirichlet is None:
        return out
    theta_m = dirichlet.character
    for (i, a) in ((0, 0), (1, 1)):
        if theta_m.is_trivial():
            # criticality at a = 0, 1 for the trivial character needs an odd
            # twist chi, and then chi^(-1)(p) = 0 keeps the factor at 1
            continue
        # Dirichlet factor (1 - p^(-a) theta(p)) at a <= 0, (1 - p^(a-1) theta(p)) at a >= 1
        tp = theta_m.value_exact(p)
        euler = 1 - tp * p**(-a) if a <= 0 else 1 - tp * p**(a - 1)
        if euler != 0:
            continue
        modular_vanishes = False
        for f in dec.factors:
            if f.kind != "modular":
                continue
            f1 = 1 - ctx.from_int(p) ** (a + f.shift - 1) / f.alpha
            f2 = 1 - ctx.from_int(p) ** (-a - f.shift) * f.beta
            if f1.is_zero() or f2.is_zero():
                modular_vanishes = True
        if not modular_vanishes:
            out.append((i, a))
    return out


def e_plus(spec: CMFormSpec, n: int, i: int) -> PadicNumber:
    """Interpolation product with the vanishing Dirichlet factor removed:

        prod_{j=1..m} (1 - p^(i + j(k-1) - 1)/alpha_j)(1 - p^(-i - j(k-1)) beta_j)

    at the trivial twist.  Defined only at a genuine trivial zero
    (n = 2m, m odd, i in {0, 1}); every factor is p-integral and the
    product is nonzero at working precision.
    """
    if i not in (0, 1):
        raise ValueError("branch index must be 0 or 1")
    m = n // 2
    if n % 2 or m % 2 == 0:
        raise ValueError(f"no trivial zero at n = {n}; the product is not defined")
    ctx = spec.context
    p = ctx.p
    dec = decompose(spec, n)
    acc = ctx.one()
    for f in dec.factors:
        if f.kind != "modular":
            continue
        acc = acc * (1 - ctx.from_int(p) ** (i + f.shift - 1) / f.alpha)
        acc = acc * (1 - ctx.from_int(p) ** (-i - f.shift) * f.beta)
    if acc.is_zero():
        raise ArithmeticError("interpolation product vanished at working precision")
    return acc
