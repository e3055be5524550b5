"""Factorized spectral weights of oscillator and evaluation modules.

The joint eigenvalues of the commuting currents on the relevant modules are
ratios of products of factors (1 - q^e zeta^s u).  This module represents
such components as explicit factor lists (multisets of exponents e), which
supports both numerical evaluation and exact structural comparisons, and
implements:

* the l components of the oscillator-module weights (three cases: a = 1,
  a = 2..l, a = l+1) together with their omega-basis weight parts;
* the highest-weight components of the evaluation modules and their
  mirrored negative counterparts;
* the product identity expressing the evaluation highest weight as the
  product of shifted oscillator components;
* the general conjectured components for arbitrary occupation labels, with
  their structural independence from the out-of-window labels.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .qnum import QContext


@dataclass(frozen=True)
class FactorRatio:
    """Ratio prod(1 - q^e zeta^s u) over num/den exponent lists."""

    num: Tuple[float, ...] = ()
    den: Tuple[float, ...] = ()

    @classmethod
    def one(cls) -> "FactorRatio":
        return cls()

    def __mul__(self, other: "FactorRatio") -> "FactorRatio":
        return FactorRatio(self.num + other.num, self.den + other.den)

    def shifted(self, c: float) -> "FactorRatio":
        """Apply zeta -> q^{c/s} zeta, i.e. add c to every exponent."""
        return FactorRatio(tuple(e + c for e in self.num),
                           tuple(e + c for e in self.den))

    def canceled(self) -> "FactorRatio":
        """Remove exponents appearing in both lists (multiset cancel)."""
        num = list(self.num)
        den = []
        for e in self.den:
            if e in num:
                num.remove(e)
            else:
                den.append(e)
        return FactorRatio(tuple(sorted(num)), tuple(sorted(den)))

    def value(self, zeta: complex, u: complex, s: int,
              ctx: QContext) -> complex:
        zs = zeta ** s
        out = 1.0 + 0j
        for e in self.num:
            out *= 1.0 - ctx.qpow(e) * zs * u
        for e in self.den:
            out /= 1.0 - ctx.qpow(e) * zs * u
        return out

    def mirror_value(self, zeta: complex, u: complex, s: int,
                     ctx: QContext) -> complex:
        """Negative counterpart: factors (1 - q^{-e} zeta^{-s} u^{-1})."""
        zs = zeta ** (-s)
        out = 1.0 + 0j
        for e in self.num:
            out *= 1.0 - ctx.qpow(-e) * zs / u
        for e in self.den:
            out /= 1.0 - ctx.qpow(-e) * zs / u
        return out


@dataclass
class LWeight:
    """Weight part (omega basis) plus l factorized current components."""

    weight: Tuple[float, ...]
    plus_components: Tuple[FactorRatio, ...]


def osc_psi(a: int, n_tuple: Sequence[int], l: int) -> LWeight:
    """Weight data of the a-th oscillator module at occupation n_tuple."""
    n = list(n_tuple)
    if len(n) != l:
        raise ValueError("n_tuple must have l components")
    if not 1 <= a <= l + 1:
        raise ValueError("a out of range")

    def nsum(lo: int, hi: int) -> int:
        return sum(n[j - 1] for j in range(max(lo, 1), hi + 1))

    if a == l + 1:
        weight = [float(n[i] - n[i - 1]) for i in range(1, l)]
        weight.append(-float(nsum(1, l - 1) + 2 * n[l - 1]))
        comps = [FactorRatio.one() for _ in range(l - 1)]
        comps.append(FactorRatio(num=(1.0,)))
        return LWeight(tuple(weight), tuple(comps))

    weight = [0.0] * l
    for i in range(1, a - 1):
        weight[i - 1] += n[l + i - a + 1] - n[l + i - a]
    for i in range(a + 1, l + 1):
        weight[i - 1] -= n[i - a] - n[i - a - 1]
    if a >= 2:
        weight[a - 2] += (nsum(1, l - a + 1) - nsum(l - a + 2, l - 1)
                          - 2 * n[l - 1] + l - a + 1)
    weight[a - 1] -= (2 * n[0] + nsum(2, l - a + 1) - nsum(l - a + 2, l)
                      + l - a + 2)

    comps: List[FactorRatio] = []
    for i in range(1, l + 1):
        if i <= a - 2:
            comps.append(FactorRatio.one())
        elif i == a - 1:
            comps.append(FactorRatio(
                num=(-2 * nsum(1, l - a + 1) - l + a,)))
        elif i == a:
            comps.append(FactorRatio(
                num=(-2 * nsum(2, l - a + 1) - l + a + 1,),
                den=(-2 * nsum(1, l - a + 1) - l + a - 1,
                     -2 * nsum(1, l - a + 1) - l + a + 1)))
        else:
            comps.append(FactorRatio(
                num=(-2 * nsum(i - a, l - a + 1) - l + i - 1,
                     -2 * nsum(i - a + 2, l - a + 1) - l + i + 1),
                den=(-2 * nsum(i - a + 1, l - a + 1) - l + i - 1,
                     -2 * nsum(i - a + 1, l - a + 1) - l + i + 1)))
    return LWeight(tuple(float(w) for w in weight), tuple(comps))


def highest_lweight(mu: Sequence[float], l: int) -> LWeight:
    """Highest-weight data of the evaluation module with label mu."""
    if len(mu) != l + 1:
        raise ValueError("mu must have l + 1 components")
    weight = tuple(float(mu[i] - mu[i + 1]) for i in range(l))
    comps = tuple(
        FactorRatio(num=(2 * mu[i] - i + 1,), den=(2 * mu[i - 1] - i + 1,))
        for i in range(1, l + 1)
    )
    return LWeight(weight, comps)


def weight_shift(mu: Sequence[float], l: int) -> Tuple[float, ...]:
    """Shift delta = sum_i (-2 - mu_i + mu_{i+1}) omega_i."""
    return tuple(-2.0 - mu[i] + mu[i + 1] for i in range(l))


def shifted_product_component(mu: Sequence[float], i: int,
                              l: int) -> FactorRatio:
    """Product over a of the a-th oscillator component at q^{2(mu_a+rho_a)/s} zeta."""
    out = FactorRatio.one()
    for a in range(1, l + 2):
        comp = osc_psi(a, (0,) * l, l).plus_components[i - 1]
        out = out * comp.shifted(2 * mu[a - 1] + l - 2 * a + 2)
    return out


def check_shifted_product(mu: Sequence[float], zeta: complex, u: complex,
                          l: int, ctx: QContext) -> Tuple[float, float]:
    """Residuals of the factorization of the evaluation highest weight.

    Returns the worst relative component residual over i = 1..l and the
    worst absolute weight residual of
    sum_a psi_{a,0} = lambda_0 + delta.
    """
    s = l + 1
    target = highest_lweight(mu, l)
    comp_resid = 0.0
    for i in range(1, l + 1):
        lhs = shifted_product_component(mu, i, l).value(zeta, u, s, ctx)
        rhs = target.plus_components[i - 1].value(zeta, u, s, ctx)
        comp_resid = max(comp_resid, abs(lhs / rhs - 1.0))
    total = [0.0] * l
    for a in range(1, l + 2):
        w = osc_psi(a, (0,) * l, l).weight
        total = [x + y for x, y in zip(total, w)]
    delta = weight_shift(mu, l)
    weight_resid = max(
        abs(t - (w0 + d))
        for t, w0, d in zip(total, target.weight, delta)
    )
    return comp_resid, weight_resid


def conjectured_xi(mu: Sequence[float], n_mat: Sequence[Sequence[int]],
                   i: int, l: int) -> FactorRatio:
    """General component i for the (l+1) x l occupation array n_mat.

    Sum limits are clamped to the array window, which makes the structural
    independence from entries n_{a,j} with a + j > l + 1 manifest.
    """
    if len(n_mat) != l + 1 or any(len(row) != l for row in n_mat):
        raise ValueError("n_mat must be (l+1) x l")

    def nsum(a: int, lo: int) -> int:
        return sum(n_mat[a - 1][j - 1] for j in range(max(lo, 1), l - a + 2))

    num, den = [], []
    for a in range(1, i):
        num.append(2 * mu[a - 1] - 2 * nsum(a, i - a) + i - 2 * a + 1)
    for a in range(1, i + 1):
        den.append(2 * mu[a - 1] - 2 * nsum(a, i - a + 1) + i - 2 * a + 1)
    for a in range(1, i + 2):
        num.append(2 * mu[a - 1] - 2 * nsum(a, i - a + 2) + i - 2 * a + 3)
    for a in range(1, i + 1):
        den.append(2 * mu[a - 1] - 2 * nsum(a, i - a + 1) + i - 2 * a + 3)
    return FactorRatio(tuple(num), tuple(den))


def xi_weight(n_mat: Sequence[Sequence[int]], l: int) -> Tuple[float, ...]:
    """Weight part accompanying the general components."""

    def nn(a: int, j: int) -> int:
        if 1 <= a <= l + 1 and 1 <= j <= l:
            return n_mat[a - 1][j - 1]
        return 0

    out = []
    for i in range(1, l + 1):
        val = -2.0 - 2 * nn(i, 1) - 2 * nn(i + 1, l)
        for k in range(1, i):
            val += (nn(k, i - k) - nn(k, i - k + 1)
                    + nn(i, k - i + l + 1) - nn(i + 1, k - i + l))
        for k in range(i + 2, l + 2):
            val -= (nn(i, k - i) - nn(i + 1, k - i - 1)
                    + nn(k, i - k + l + 1) - nn(k, i - k + l + 2))
        out.append(val)
    return tuple(out)


def conjectured_lambda_plus(mu: Sequence[float],
                            m_mat: Sequence[Sequence[int]], i: int,
                            l: int) -> FactorRatio:
    """Component i for the evaluation module at occupation labels m_{a,j}.

    Obtained from the general oscillator-product components through the
    substitution n_{a,j} = m_{a,a+j}; m_mat[a-1][j-1] holds m_{a,j} for
    1 <= a < j <= l + 1 (other entries ignored).
    """
    n_mat = [
        [m_mat[a - 1][a + j - 1] if a + j <= l + 1 else 0
         for j in range(1, l + 1)]
        for a in range(1, l + 2)
    ]
    return conjectured_xi(mu, n_mat, i, l)
