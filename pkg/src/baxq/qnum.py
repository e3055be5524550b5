"""Deformation-parameter arithmetic: q-numbers, exact exponent keys, series.

Everything downstream works with powers of a fixed deformation parameter q.
Exponents are kept exact (as rational combinations of 1 and the twist
parameters tau_1..tau_{l+1}) until the moment a complex number is needed,
which keeps symbolic cancellations exact instead of approximate.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]

_F0 = Fraction(0)


@dataclass(frozen=True)
class QContext:
    """Numeric context shared across a computation.

    Attributes:
        q: The deformation parameter (nonzero, not a root of unity; the
            default regime is real with 0 < q < 1).
        tolerance: Relative threshold used when pruning symbolic expressions
            and when screening traces for poles.
        tau: Numeric values of the twist parameters tau_1..tau_{l+1}; used to
            evaluate exponent keys that carry twist dependence.
    """

    q: complex = 0.7
    tolerance: float = 1e-12
    tau: tuple = ()

    @property
    def kappa(self) -> complex:
        return self.q - 1.0 / self.q

    def qpow(self, nu) -> complex:
        """q**nu on the principal branch (exact for real positive q)."""
        if isinstance(nu, Fraction):
            nu = float(nu)
        if isinstance(self.q, complex) or self.q <= 0:
            return cmath.exp(nu * cmath.log(self.q))
        if isinstance(nu, complex):
            return cmath.exp(nu * math.log(self.q))
        return self.q ** nu


@dataclass(frozen=True)
class ExpKey:
    """Exact exponent of q: const + sum_a taus[a] * tau_{a+1}.

    Coefficients are rational; trailing zero twist coefficients are trimmed
    so that equal exponents always hash equally.
    """

    const: Fraction = _F0
    taus: tuple = ()

    def __post_init__(self):
        const = Fraction(self.const)
        taus = tuple(Fraction(c) for c in self.taus)
        while taus and taus[-1] == 0:
            taus = taus[:-1]
        object.__setattr__(self, "const", const)
        object.__setattr__(self, "taus", taus)

    @classmethod
    def of(cls, const: Rational = 0, taus: Sequence[Rational] = ()) -> "ExpKey":
        return cls(Fraction(const), tuple(Fraction(c) for c in taus))

    def __add__(self, other) -> "ExpKey":
        if isinstance(other, (int, Fraction)):
            return ExpKey(self.const + other, self.taus)
        n = max(len(self.taus), len(other.taus))
        a = self.taus + (_F0,) * (n - len(self.taus))
        b = other.taus + (_F0,) * (n - len(other.taus))
        return ExpKey(self.const + other.const, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self) -> "ExpKey":
        return ExpKey(-self.const, tuple(-c for c in self.taus))

    def __sub__(self, other) -> "ExpKey":
        if isinstance(other, (int, Fraction)):
            return ExpKey(self.const - other, self.taus)
        return self + (-other)

    def __mul__(self, c: Rational) -> "ExpKey":
        c = Fraction(c)
        return ExpKey(self.const * c, tuple(x * c for x in self.taus))

    __rmul__ = __mul__

    def is_constant(self) -> bool:
        return not self.taus

    def value(self, ctx: QContext) -> float:
        """Numeric value of the exponent under the context's twist."""
        v = float(self.const)
        if self.taus:
            if len(self.taus) > len(ctx.tau):
                raise ValueError(
                    "exponent involves tau_%d but context provides only %d "
                    "twist values" % (len(self.taus), len(ctx.tau))
                )
            v += sum(float(c) * ctx.tau[i] for i, c in enumerate(self.taus) if c)
        return v

    def to_json(self) -> dict:
        return {
            "const": [self.const.numerator, self.const.denominator],
            "taus": [[c.numerator, c.denominator] for c in self.taus],
        }

    @classmethod
    def from_json(cls, d: dict) -> "ExpKey":
        return cls(
            Fraction(*d["const"]), tuple(Fraction(*c) for c in d["taus"])
        )


def q_number(nu, ctx: QContext) -> complex:
    """[nu]_q = (q^nu - q^-nu) / (q - q^-1)."""
    return (ctx.qpow(nu) - ctx.qpow(-nu)) / ctx.kappa


def q_factorial_numbers(alpha: int, nu0, ctx: QContext) -> complex:
    """Product [nu0]_q [nu0-1]_q ... [nu0-alpha+1]_q."""
    out = 1.0 + 0j
    for j in range(alpha):
        out *= q_number(nu0 - j, ctx)
    return out


def f_series(rank_plus_one: int, z: complex, ctx: QContext,
             max_terms: int = 100000) -> complex:
    """sum_{n>=1} z^n / (n [rank_plus_one]_{q^n}), convergent for |z| < 1.

    Satisfies sum_{j=1}^{L} F(q^{L-2j+1} z) = -log(1 - z) with
    L = rank_plus_one, which the tests exercise.
    """
    if abs(z) >= 1.0:
        raise ValueError("series diverges for |z| >= 1 (got |z|=%g)" % abs(z))
    total = 0.0 + 0j
    zn = 1.0 + 0j
    for n in range(1, max_terms + 1):
        zn *= z
        term = zn / (n * _q_int(rank_plus_one, n, ctx))
        total += term
        if abs(term) < ctx.tolerance * max(1.0, abs(total)):
            return total
    raise RuntimeError("series did not converge within %d terms" % max_terms)


def _q_int(m: int, n: int, ctx: QContext) -> complex:
    """[m]_{q^n} without constructing a new context."""
    qn = ctx.qpow(n)
    return (qn ** m - qn ** (-m)) / (qn - 1.0 / qn)
