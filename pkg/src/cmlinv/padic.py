"""Exact arithmetic in Q_p with per-value precision tracking.

Every number is either an exact zero, an inexact zero O(p^A), or
p^v * u with the unit u kept modulo p^r; r is the relative precision
and v + r the absolute precision.  Arithmetic never reports more
precision than the operands justify: addition works at the minimum
absolute precision, multiplication and division at the minimum
relative precision, and series (log, exp) inherit the per-term losses
from the division operators they use.

Special functions: Teichmuller lift, the Iwasawa branch of log_p
(log_p(p) = 0), the p-adic exponential on pZ_p, Morita's p-adic Gamma
function, and square roots of units (Hensel).
"""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = [
    "PadicContext",
    "PadicNumber",
    "make_context",
    "teichmuller",
    "iwasawa_log",
    "padic_exp",
    "morita_gamma",
    "sqrt_unit",
]

_INF = math.inf


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin, valid far beyond desk scale
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def ordp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("ord_p(0) is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class PadicContext:
    """A fixed odd prime p and a working precision of N p-adic digits."""

    __slots__ = ("p", "N")

    def __init__(self, p: int, N: int = 32):
        if not isinstance(p, int) or p < 3 or not _is_prime(p):
            raise ValueError(f"p must be an odd prime, got {p}")
        if not isinstance(N, int) or N < 1:
            raise ValueError(f"precision N must be a positive integer, got {N}")
        self.p = p
        self.N = N

    def __repr__(self):
        return f"PadicContext(p={self.p}, N={self.N})"

    def __eq__(self, other):
        return isinstance(other, PadicContext) and (self.p, self.N) == (other.p, other.N)

    def __hash__(self):
        return hash((self.p, self.N))

    # --- element factories ---------------------------------------------

    def zero(self) -> "PadicNumber":
        return PadicNumber(self, None, 0, _INF)

    def inexact_zero(self, abs_prec: int) -> "PadicNumber":
        return PadicNumber(self, None, 0, abs_prec)

    def one(self) -> "PadicNumber":
        return self.from_int(1)

    def from_int(self, n: int) -> "PadicNumber":
        if n == 0:
            return self.zero()
        v = ordp(n, self.p)
        u = (n // self.p**v) % self.p**self.N
        return PadicNumber(self, v, u, v + self.N)

    def from_rational(self, q) -> "PadicNumber":
        q = Fraction(q)
        if q == 0:
            return self.zero()
        num, den = q.numerator, q.denominator
        vn = ordp(num, self.p)
        vd = ordp(den, self.p)
        v = vn - vd
        m = self.p**self.N
        u = (num // self.p**vn) * pow(den // self.p**vd, -1, m) % m
        return PadicNumber(self, v, u, v + self.N)

    def convert(self, x) -> "PadicNumber":
        if isinstance(x, PadicNumber):
            if x.context.p != self.p:
                raise ValueError("cannot mix p-adic numbers for different primes")
            if x.context.N == self.N:
                return x
            return x._retag(self)
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, Fraction):
            return self.from_rational(x)
        raise TypeError(f"cannot convert {type(x).__name__} to a p-adic number")


def make_context(p: int, N: int = 32) -> PadicContext:
    """Context for exact computation in Q_p; rejects p = 2, composite p, N < 1."""
    return PadicContext(p, N)


class PadicNumber:
    """Element of Q_p known to a stated absolute precision.

    States:
      * exact zero           -- abs_prec is +infinity
      * inexact zero O(p^A)  -- zero modulo p^A, nothing more known
      * p^v * u + O(p^(v+r)) -- unit u coprime to p, kept modulo p^r
    """

    __slots__ = ("context", "_val", "_unit", "_abs")

    def __init__(self, context, val, unit, abs_prec):
        self.context = context
        if val is None:
            self._val = None
            self._unit = 0
            self._abs = abs_prec
        else:
            rel = abs_prec - val
            if rel <= 0:
                # value indistinguishable from zero at this precision
                self._val = None
                self._unit = 0
                self._abs = abs_prec
                return
            rel = min(rel, context.N)
            unit %= context.p**rel
            if unit == 0 or unit % context.p == 0:
                raise ValueError("unit part must be coprime to p")
            self._val = val
            self._unit = unit
            self._abs = val + rel

    # --- state queries ---------------------------------------------------

    def is_zero(self) -> bool:
        """True when the value is indistinguishable from 0 at its precision."""
        return self._val is None

    def is_exact_zero(self) -> bool:
        return self._val is None and self._abs == _INF

    @property
    def abs_prec(self):
        return self._abs

    @property
    def rel_prec(self) -> int:
        if self._val is None:
            return 0
        return self._abs - self._val

    def valuation(self):
        """Exact valuation; math.inf for the exact zero.

        Raises on an inexact zero, whose valuation is only bounded below
        (use min_valuation for the bound).
        """
        if self._val is not None:
            return self._val
        if self._abs == _INF:
            return _INF
        raise ValueError(f"valuation of O(p^{self._abs}) is only bounded below")

    def min_valuation(self):
        """Largest k with the value provably in p^k Z_p."""
        return self._abs if self._val is None else self._val

    def is_unit(self) -> bool:
        return self._val == 0

    def unit_int(self) -> int:
        """The unit part as an integer in [1, p^rel)."""
        if self._val is None:
            raise ValueError("zero has no unit part")
        return self._unit

    def residue(self, k: int) -> int:
        """Integer representative modulo p^k (requires valuation >= 0 and abs_prec >= k)."""
        if k > self._abs:
            raise ValueError(f"residue mod p^{k} not determined at O(p^{self._abs})")
        if self._val is None:
            return 0
        if self._val < 0:
            raise ValueError("residue undefined at negative valuation")
        return self._unit * self.context.p**self._val % self.context.p**k

    def digits(self) -> list[int]:
        """Base-p digits of the unit part, length rel_prec (empty for zero)."""
        if self._val is None:
            return []
        p = self.context.p
        u = self._unit
        out = []
        for _ in range(self.rel_prec):
            u, d = divmod(u, p)
            out.append(d)
        return out

    # --- precision management ---------------------------------------------

    def _retag(self, ctx: PadicContext) -> "PadicNumber":
        if self._val is None:
            return PadicNumber(ctx, None, 0, self._abs)
        return PadicNumber(ctx, self._val, self._unit, self._abs)

    def truncate_abs(self, k: int) -> "PadicNumber":
        """Forget everything beyond absolute precision k (exact zeros stay exact)."""
        if self._val is None:
            if self._abs == _INF:
                return self
            return PadicNumber(self.context, None, 0, min(self._abs, k))
        if k >= self._abs:
            return self
        return PadicNumber(self.context, self._val, self._unit, k)

    # --- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PadicNumber):
            if other.context.p != self.context.p:
                raise ValueError("cannot mix p-adic numbers for different primes")
            return other
        if isinstance(other, (int, Fraction)):
            return self.context.convert(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        ctx, p = self.context, self.context.p
        a = min(self._abs, o._abs)
        if self.is_zero() and o.is_zero():
            return PadicNumber(ctx, None, 0, a)
        if self.is_zero():
            return PadicNumber(ctx, o._val, o._unit, a) if o._val is not None and o._val < a \
                else PadicNumber(ctx, None, 0, a)
        if o.is_zero():
            return PadicNumber(ctx, self._val, self._unit, a) if self._val < a \
                else PadicNumber(ctx, None, 0, a)
        m = min(self._val, o._val)
        k = a - m
        if k <= 0:
            return PadicNumber(ctx, None, 0, a)
        s = (self._unit * p ** (self._val - m) + o._unit * p ** (o._val - m)) % p**k
        if s == 0:
            return PadicNumber(ctx, None, 0, a)
        w = ordp(s, p)
        return PadicNumber(ctx, m + w, s // p**w, a)

    __radd__ = __add__

    def __neg__(self):
        if self._val is None:
            return self
        return PadicNumber(self.context, self._val,
                           -self._unit % self.context.p**self.rel_prec, self._abs)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        ctx = self.context
        if self.is_exact_zero() or o.is_exact_zero():
            return ctx.zero()
        if self.is_zero() or o.is_zero():
            # O(p^A) * (p^v * unit) = O(p^(A+v)); O(p^A) * O(p^B) = O(p^(A+B))
            a = self._abs if self._val is None else self._val
            b = o._abs if o._val is None else o._val
            return PadicNumber(ctx, None, 0, a + b)
        v = self._val + o._val
        rel = min(self.rel_prec, o.rel_prec)
        u = self._unit * o._unit % ctx.p**rel
        return PadicNumber(ctx, v, u, v + rel)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        ctx = self.context
        if o.is_zero():
            raise ZeroDivisionError("division by (inexact) zero")
        if self.is_exact_zero():
            return ctx.zero()
        if self.is_zero():
            return PadicNumber(ctx, None, 0, self._abs - o._val)
        v = self._val - o._val
        rel = min(self.rel_prec, o.rel_prec)
        m = ctx.p**rel
        u = self._unit * pow(o._unit, -1, m) % m
        return PadicNumber(ctx, v, u, v + rel)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        ctx = self.context
        if e == 0:
            return ctx.one()
        if self.is_zero():
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            if self.is_exact_zero():
                return ctx.zero()
            return PadicNumber(ctx, None, 0, self._abs * e)
        rel = self.rel_prec
        m = ctx.p**rel
        u = pow(self._unit, e, m) if e > 0 else pow(pow(self._unit, -1, m), -e, m)
        v = self._val * e
        return PadicNumber(ctx, v, u, v + rel)

    def __eq__(self, other):
        """Equality at the shared precision."""
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).is_zero()

    __hash__ = None

    def equal_to_precision(self, other, k: int) -> bool:
        """True when self - other lies in p^k Z_p at the tracked precision."""
        d = self - self._coerce(other)
        return d.min_valuation() >= k

    def __repr__(self):
        p = self.context.p
        if self.is_exact_zero():
            return f"0 (exact, {p}-adic)"
        if self.is_zero():
            return f"O({p}^{self._abs})"
        return f"{self._unit}*{p}^{self._val} + O({p}^{self._abs})"


# --- special functions ------------------------------------------------------


def teichmuller(a: PadicNumber) -> PadicNumber:
    """Teichmuller lift: the (p-1)-st root of unity congruent to a mod p.

    Requires a unit; the result is exact, so it carries full context
    precision.  Computed by iterating x -> x^p, which converges one digit
    per step.
    """
    if a.is_zero() or not a.is_unit():
        raise ValueError("teichmuller requires a p-adic unit")
    ctx = a.context
    p, N = ctx.p, ctx.N
    m = p**N
    x = a.unit_int() % m
    for _ in range(N):
        x = pow(x, p, m)
    return PadicNumber(ctx, 0, x, N)


def _unit_from_int(ctx: PadicContext, u: int, rel: int) -> PadicNumber:
    return PadicNumber(ctx, 0, u % ctx.p**rel, rel)


def iwasawa_log(x: PadicNumber) -> PadicNumber:
    """Iwasawa branch of log_p: log_p(p) = 0 and roots of unity map to 0.

    Writes x = p^v * omega(u) * <u> and returns the convergent series
    log(<u>).  Dividing the n-th series term by n costs ord_p(n) digits;
    that loss is visible in the result's precision.
    """
    if x.is_zero():
        raise ValueError("iwasawa_log of zero")
    ctx = x.context
    p = ctx.p
    rel = x.rel_prec
    u = _unit_from_int(ctx, x.unit_int(), rel)
    omega = teichmuller(u)
    z = u / omega - 1
    if z.is_zero():
        # <u> = 1 at the known precision
        return PadicNumber(ctx, None, 0, z.abs_prec)
    target = z.abs_prec
    # r*ord(z) - log_p(r) is increasing in r, so all terms past n_terms are
    # below the target precision
    n_terms = target
    while n_terms * z.valuation() - math.log(n_terms + 1, p) <= target:
        n_terms += 1
    acc = ctx.inexact_zero(target)
    zpow = z
    for r in range(1, n_terms + 1):
        term = zpow / r
        if r % 2 == 0:
            term = -term
        acc = acc + term
        if r < n_terms:
            zpow = zpow * z
    return acc


def padic_exp(x: PadicNumber) -> PadicNumber:
    """exp_p on pZ_p (odd p): sum x^n / n!, with ord(x) >= 1 required."""
    if x.is_zero():
        if x.is_exact_zero() or x.abs_prec >= 1:
            return x.context.one().truncate_abs(
                x.abs_prec if not x.is_exact_zero() else x.context.N)
        raise ValueError("padic_exp requires ord_p(x) >= 1")
    if x.valuation() < 1:
        raise ValueError("padic_exp requires ord_p(x) >= 1")
    ctx = x.context
    p = ctx.p
    v = x.valuation()
    target = min(x.abs_prec, ctx.N)
    # term r has valuation r*v - ord(r!) >= r*(v - 1/(p-1)), increasing in r
    n_terms = 1
    while n_terms * v - _factorial_valuation(n_terms, p) <= target:
        n_terms += 1
    acc = ctx.one()
    term = ctx.one()
    for r in range(1, n_terms + 1):
        term = term * x / r
        acc = acc + term
    return acc.truncate_abs(target)


def _factorial_valuation(n: int, p: int) -> int:
    v = 0
    q = p
    while q <= n:
        v += n // q
        q *= p
    return v


def morita_gamma(x: PadicNumber, digits: int | None = None,
                 cost_ceiling: int | None = None) -> PadicNumber:
    """Morita's p-adic Gamma at x in Z_p.

    On integers n >= 0 this is (-1)^n times the product of the positive
    j < n prime to p; general x is evaluated at an integer approximant
    congruent to x mod p^digits, which is legitimate because
    Gamma_p(x) = Gamma_p(y) mod p^k whenever x = y mod p^k.  The direct
    product costs about p^digits multiplications, so `digits` is capped
    by `cost_ceiling` (default p^6 multiplications).
    """
    ctx = x.context
    p = ctx.p
    if not x.is_zero() and x.valuation() < 0:
        raise ValueError("morita_gamma requires x in Z_p")
    ceiling = cost_ceiling if cost_ceiling is not None else p**6
    max_digits = 0
    while p ** (max_digits + 1) <= ceiling:
        max_digits += 1
    if digits is None:
        digits = min(ctx.N, max_digits)
    if digits < 1 or p**digits > ceiling:
        raise ValueError(
            f"requested {digits} digits needs ~p^{digits} multiplications, "
            f"over the cost ceiling {ceiling}")
    digits = min(digits, ctx.N, int(x.abs_prec) if x.abs_prec != _INF else digits)
    if digits < 1:
        raise ValueError("input knows fewer than one digit")
    n = x.residue(digits)
    m = p**digits
    acc = 1
    for j in range(1, n):
        if j % p:
            acc = acc * j % m
    if n % 2:
        acc = -acc % m
    if acc % p == 0:  # cannot happen: the product is a unit
        raise ArithmeticError("morita_gamma produced a non-unit")
    return PadicNumber(ctx, 0, acc, digits)


def sqrt_unit(a: PadicNumber, residue: int | None = None) -> PadicNumber:
    """Square root of a unit by Hensel lifting (odd p).

    `residue` selects the root class mod p; by default the numerically
    least positive root mod p is lifted.
    """
    if a.is_zero() or not a.is_unit():
        raise ValueError("sqrt_unit requires a p-adic unit")
    ctx = a.context
    p = ctx.p
    rel = a.rel_prec
    m = p**rel
    a0 = a.unit_int() % p
    roots = [t for t in range(1, p) if t * t % p == a0]
    if not roots:
        raise ValueError(f"{a0} is not a square mod {p}")
    r0 = min(roots)
    if residue is not None:
        if residue % p not in roots:
            raise ValueError(f"{residue} mod {p} is not a square root class")
        r0 = residue % p
    au = a.unit_int()
    x = r0
    k = 1
    while k < rel:
        k = min(2 * k, rel)
        mm = p**k
        x = (x - (x * x - au) * pow(2 * x, -1, mm)) % mm
    if (x * x - au) % m:
        raise ArithmeticError("Hensel lift failed")
    return PadicNumber(ctx, 0, x, rel)
