"""p-adically valued Dirichlet characters and their Bernoulli numbers.

Every character in scope is a product of a quadratic Kronecker symbol
and a power of the Teichmuller character, so each value is stored as a
pair (sign, e) meaning sign * zeta^e, where zeta is the Teichmuller
lift of a fixed primitive root mod p.  Pure quadratic characters need
no p-adic context at all and stay exact.

Generalized Bernoulli numbers B_{n,chi} = f^{n-1} sum_a chi(a) B_n(a/f)
come out as exact Fractions for rational-valued chi and as tracked
p-adic numbers otherwise; L(a, chi) at integers a <= 0 is
-B_{1-a,chi}/(1-a).  Note the sign convention this fixes for the
trivial character: B_{1,1} = B_1(1) = +1/2 (the Bernoulli numbers
themselves follow B_1 = -1/2).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, lcm

from .padic import PadicContext, PadicNumber, teichmuller

__all__ = [
    "kronecker_symbol",
    "is_fundamental_discriminant",
    "DirichletCharacter",
    "char_from_kronecker",
    "char_teichmuller_power",
    "char_product",
    "trivial_character",
    "gen_bernoulli",
    "dirichlet_L_nonpositive",
    "bernoulli_number",
    "bernoulli_polynomial",
    "BernoulliCache",
]


def _legendre(a: int, q: int) -> int:
    a %= q
    if a == 0:
        return 0
    return 1 if pow(a, (q - 1) // 2, q) == 1 else -1


def kronecker_symbol(D: int, n: int) -> int:
    """Kronecker symbol (D/n) for n >= 1, by factoring the denominator."""
    if n < 1:
        raise ValueError("denominator must be positive")
    if n == 1:
        return 1
    res = 1
    if n % 2 == 0:
        if D % 2 == 0:
            return 0
        two = 1 if D % 8 in (1, 7) else -1
        while n % 2 == 0:
            n //= 2
            res *= two
    q = 3
    while q * q <= n:
        while n % q == 0:
            n //= q
            s = _legendre(D, q)
            if s == 0:
                return 0
            res *= s
        q += 2
    if n > 1:
        s = _legendre(D, n)
        if s == 0:
            return 0
        res *= s
    return res


def _squarefree(n: int) -> bool:
    n = abs(n)
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        while n % d == 0:
            n //= d
        d += 1
    return True


def is_fundamental_discriminant(D: int) -> bool:
    if D == 0 or D == 1:
        return False
    if D % 4 == 1:
        return _squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


@lru_cache(maxsize=None)
def _primitive_root(p: int) -> int:
    phi = p - 1
    facs = []
    m = phi
    d = 2
    while d * d <= m:
        if m % d == 0:
            facs.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        facs.append(m)
    for g in range(2, p):
        if all(pow(g, phi // q, p) != 1 for q in facs):
            return g
    raise ArithmeticError(f"no primitive root mod {p}")


@lru_cache(maxsize=None)
def _index_table(p: int) -> dict:
    g = _primitive_root(p)
    tab = {}
    x = 1
    for k in range(p - 1):
        tab[x] = k
        x = x * g % p
    return tab


@lru_cache(maxsize=None)
def _teichmuller_generator(ctx: PadicContext) -> PadicNumber:
    return teichmuller(ctx.from_int(_primitive_root(ctx.p)))


class DirichletCharacter:
    """Character mod f with values sign * zeta^e, zeta a (p-1)-st root of unity.

    `teich_order` is p-1 when a Teichmuller component is present (then a
    context is attached) and 1 for purely quadratic/trivial characters.
    """

    __slots__ = ("modulus", "_values", "teich_order", "context", "_conductor")

    def __init__(self, modulus: int, values: dict, teich_order: int = 1,
                 context: PadicContext | None = None, _validate: bool = True):
        if modulus < 1:
            raise ValueError("modulus must be >= 1")
        self.modulus = modulus
        self._values = dict(values)
        self.teich_order = teich_order
        self.context = context
        self._conductor = None
        if teich_order > 1 and context is None:
            raise ValueError("Teichmuller components need a p-adic context")
        if _validate:
            self._check()

    def _check(self):
        f, q = self.modulus, self.teich_order
        coprime = [a for a in range(1, f + 1) if gcd(a, f) == 1] if f > 1 else [1]
        if sorted(self._values) != sorted(a % f for a in coprime):
            raise ValueError("value table must cover exactly the residues coprime to the modulus")
        for s, e in self._values.values():
            if s not in (1, -1) or not 0 <= e < max(q, 1):
                raise ValueError("malformed character value")
        for a in coprime:
            for b in coprime:
                sa, ea = self._values[a % f]
                sb, eb = self._values[b % f]
                sc, ec = self._values[a * b % f]
                if sc != sa * sb or ec != (ea + eb) % max(q, 1):
                    raise ValueError("character table is not multiplicative")

    # --- evaluation -------------------------------------------------------

    def value_pair(self, a: int):
        """(sign, teich exponent) at a, or None when gcd(a, f) > 1."""
        f = self.modulus
        if f == 1:
            return (1, 0)
        a %= f
        return self._values.get(a)

    def is_rational(self) -> bool:
        q = self.teich_order
        return all(e == 0 or 2 * e == q for _, e in self._values.values())

    def value_exact(self, a: int) -> int:
        """Value in {-1, 0, 1}; only for rational-valued characters."""
        pair = self.value_pair(a)
        if pair is None:
            return 0
        s, e = pair
        if e == 0:
            return s
        if 2 * e == self.teich_order:
            return -s
        raise ValueError("character is not rational-valued at this argument")

    def value_padic(self, a: int, ctx: PadicContext | None = None) -> PadicNumber:
        ctx = ctx or self.context
        if ctx is None:
            raise ValueError("no p-adic context available")
        pair = self.value_pair(a)
        if pair is None:
            return ctx.zero()
        s, e = pair
        if e == 0:
            return ctx.from_int(s)
        out = _teichmuller_generator(ctx)**e
        return -out if s < 0 else out

    def parity(self) -> int:
        """chi(-1)."""
        return self.value_exact(self.modulus - 1) if self.modulus > 1 else 1

    def is_odd(self) -> bool:
        return self.parity() == -1

    def is_trivial(self) -> bool:
        return all(s == 1 and e == 0 for s, e in self._values.values())

    # --- conductor / primitivity -------------------------------------------

    def conductor(self) -> int:
        if self._conductor is not None:
            return self._conductor
        f = self.modulus
        best = f
        for d in _divisors(f):
            if d >= best:
                continue
            # trivial on the kernel of (Z/f)* -> (Z/d)* ?
            if all(self._values[a] == (1, 0)
                   for a in self._values if a % d == 1 % d):
                best = d
        self._conductor = best
        return best

    def primitive(self) -> "DirichletCharacter":
        """The primitive character inducing this one."""
        d = self.conductor()
        if d == self.modulus:
            return self
        f = self.modulus
        vals = {}
        for b in (range(1, d + 1) if d > 1 else [1]):
            if gcd(b, d) != 1:
                continue
            a = b
            while gcd(a, f) != 1:
                a += d
            vals[b % d] = self._values[a % f]
        return DirichletCharacter(d, vals, self.teich_order, self.context,
                                  _validate=False)

    # --- products -----------------------------------------------------------

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        return char_product(self, other)

    def inverse(self) -> "DirichletCharacter":
        q = max(self.teich_order, 1)
        vals = {a: (s, (-e) % q) for a, (s, e) in self._values.items()}
        return DirichletCharacter(self.modulus, vals, self.teich_order,
                                  self.context, _validate=False)

    def power(self, e: int) -> "DirichletCharacter":
        """chi^e, conductor-reduced."""
        if e == 0:
            return trivial_character()
        base = self if e > 0 else self.inverse()
        out = base
        for _ in range(abs(e) - 1):
            out = char_product(out, base)
        return out.primitive() if out.modulus == self.modulus else out

    def cache_key(self) -> str:
        """Canonical id for cache files; rational-valued characters only."""
        if not self.is_rational():
            raise ValueError("cache keys exist only for rational-valued characters")
        f = self.modulus
        sig = "".join("+" if self.value_exact(a) > 0 else "-"
                      for a in range(1, f + 1) if gcd(a, f) == 1)
        return f"m{f}:{sig}"

    def __repr__(self):
        kind = "trivial" if self.is_trivial() else \
            ("quadratic" if self.is_rational() else f"order|{2 * self.teich_order}")
        return f"DirichletCharacter(mod {self.modulus}, conductor {self.conductor()}, {kind})"


def _divisors(n: int):
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def trivial_character() -> DirichletCharacter:
    return DirichletCharacter(1, {0: (1, 0)}, 1, None, _validate=False)


def char_from_kronecker(D: int) -> DirichletCharacter:
    """Quadratic character a -> (D/a) mod |D|, for a fundamental discriminant."""
    if not is_fundamental_discriminant(D):
        raise ValueError(f"{D} is not a fundamental discriminant")
    f = abs(D)
    vals = {}
    for a in range(1, f + 1):
        if gcd(a, f) != 1:
            continue
        s = kronecker_symbol(D, a)
        if s == 0:
            raise ArithmeticError("Kronecker symbol vanished on a coprime residue")
        vals[a % f] = (s, 0)
    return DirichletCharacter(f, vals, 1, None, _validate=False)


def char_teichmuller_power(i: int, ctx: PadicContext) -> DirichletCharacter:
    """omega^i as a character mod p; i = 0 collapses to the trivial character mod 1."""
    p = ctx.p
    i %= p - 1
    if i == 0:
        return trivial_character()
    ind = _index_table(p)
    vals = {a: (1, i * ind[a] % (p - 1)) for a in range(1, p)}
    return DirichletCharacter(p, vals, p - 1, ctx, _validate=False)


def char_product(chi1: DirichletCharacter, chi2: DirichletCharacter) -> DirichletCharacter:
    """Pointwise product on the lcm modulus, conductor-reduced."""
    ctx = chi1.context or chi2.context
    if chi1.context and chi2.context and chi1.context.p != chi2.context.p:
        raise ValueError("cannot multiply characters over different primes")
    q = max(chi1.teich_order, chi2.teich_order)
    if chi1.teich_order > 1 and chi2.teich_order > 1 and chi1.teich_order != chi2.teich_order:
        raise ValueError("incompatible Teichmuller orders")
    f = lcm(chi1.modulus, chi2.modulus)
    vals = {}
    for a in range(1, f + 1):
        if gcd(a, f) != 1:
            continue
        s1, e1 = chi1.value_pair(a)
        s2, e2 = chi2.value_pair(a)
        vals[a % f] = (s1 * s2, (e1 + e2) % q)
    prod = DirichletCharacter(f, vals, q, ctx, _validate=False)
    prim = prod.primitive()
    # drop an unused Teichmuller tag so pure quadratics stay context-free
    if prim.teich_order > 1 and all(e == 0 for _, e in prim._values.values()):
        return DirichletCharacter(prim.modulus, prim._values, 1, None, _validate=False)
    return prim


# --- Bernoulli machinery ------------------------------------------------------


@lru_cache(maxsize=None)
def bernoulli_number(n: int) -> Fraction:
    """B_n, first convention (B_1 = -1/2)."""
    if n == 0:
        return Fraction(1)
    s = Fraction(0)
    for j in range(n):
        s += comb(n + 1, j) * bernoulli_number(j)
    return -s / (n + 1)


@lru_cache(maxsize=None)
def bernoulli_polynomial(n: int) -> tuple:
    """Coefficients of B_n(x), highest degree first."""
    return tuple(comb(n, j) * bernoulli_number(j) for j in range(n + 1))


def _bernoulli_poly_at(n: int, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in bernoulli_polynomial(n):
        acc = acc * x + c
    return acc


class BernoulliCache:
    """Text-file cache of exact B_{n,chi} for rational-valued characters.

    Line format (tab separated): n, character cache key, value as
    "numerator/denominator".  Round-trips are bit-exact.
    """

    VERSION = "bnchi-cache v1"

    def __init__(self):
        self._store: dict[tuple[int, str], Fraction] = {}

    def get(self, n: int, key: str):
        return self._store.get((n, key))

    def put(self, n: int, key: str, value: Fraction):
        self._store[(n, key)] = Fraction(value)

    def __len__(self):
        return len(self._store)

    def save(self, path):
        with open(path, "w", encoding="ascii") as fh:
            fh.write(self.VERSION + "\n")
            for (n, key) in sorted(self._store):
                v = self._store[(n, key)]
                fh.write(f"{n}\t{key}\t{v.numerator}/{v.denominator}\n")

    @classmethod
    def load(cls, path) -> "BernoulliCache":
        cache = cls()
        with open(path, encoding="ascii") as fh:
            header = fh.readline().rstrip("\n")
            if header != cls.VERSION:
                raise ValueError(f"unsupported cache version: {header!r}")
            for line in fh:
                if not line.strip():
                    continue
                ns, key, frac = line.rstrip("\n").split("\t")
                num, den = frac.split("/")
                cache._store[(int(ns), key)] = Fraction(int(num), int(den))
        return cache


def gen_bernoulli(n: int, chi: DirichletCharacter,
                  ctx: PadicContext | None = None,
                  cache: BernoulliCache | None = None):
    """Generalized Bernoulli number B_{n,chi}.

    Exact Fraction for rational-valued chi, tracked PadicNumber otherwise
    (the character values force a context).  Uses the modulus of chi as f,
    which matches the primitive L-series only when chi is primitive --
    callers wanting interpolation data reduce first.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    f = chi.modulus
    if chi.is_rational():
        key = chi.cache_key()
        if cache is not None:
            hit = cache.get(n, key)
            if hit is not None:
                return hit
        acc = Fraction(0)
        for a in (range(1, f + 1) if f > 1 else [1]):
            if gcd(a, f) != 1:
                continue
            acc += chi.value_exact(a) * _bernoulli_poly_at(n, Fraction(a, f))
        acc *= Fraction(f) ** (n - 1)
        if cache is not None:
            cache.put(n, key, acc)
        return acc
    ctx = ctx or chi.context
    acc = ctx.zero()
    scale = Fraction(f) ** (n - 1)
    for a in range(1, f + 1):
        if gcd(a, f) != 1:
            continue
        acc = acc + chi.value_padic(a, ctx) * ctx.from_rational(
            scale * _bernoulli_poly_at(n, Fraction(a, f)))
    return acc


def dirichlet_L_nonpositive(a: int, chi: DirichletCharacter,
                            ctx: PadicContext | None = None):
    """L(a, chi) = -B_{1-a,chi}/(1-a) for integers a <= 0."""
    if a > 0:
        raise ValueError("only non-positive integers are supported")
    n = 1 - a
    return -gen_bernoulli(n, chi, ctx) / n
