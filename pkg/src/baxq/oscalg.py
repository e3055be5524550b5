"""Symbolic multi-mode q-oscillator algebra with exact traces.

An expression is a finite sum of normal-ordered monomials

    c * prod_k  bdag_k^{alpha_k}  b_k^{beta_k}  q^{E_k N_k}

over independent modes k = 1..l.  The exponents E_k are exact ExpKeys
(rational + twist-linear), the coefficients c are complex doubles.  Products
are normal-ordered on the fly via the exchange relation

    b bdag = (q q^N - q^{-1} q^{-N}) / (q - q^{-1}),

and graded traces over the level-raising/lowering Fock modules reduce to
closed-form geometric sums, so no Fock-space truncation is involved.  A
truncated matrix realization is provided separately as a numerical oracle.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Sequence, Tuple

import numpy as np

from .qnum import ExpKey, QContext

# A per-mode monomial label: (alpha, beta, ExpKey).
ModeKey = Tuple[int, int, ExpKey]
# A full monomial label: one ModeKey per mode.
MonoKey = Tuple[ModeKey, ...]

_ZERO_KEY = ExpKey()


class TracePoleError(ArithmeticError):
    """Raised when a graded trace hits a pole 1 - q^E = 0."""


def _mode_unit() -> ModeKey:
    return (0, 0, _ZERO_KEY)


@dataclass(frozen=True)
class OscExpr:
    """A sum of normal-ordered monomials over `modes` oscillator modes."""

    modes: int
    terms: tuple  # tuple of (MonoKey, complex) pairs, canonically sorted

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_dict(cls, modes: int, d: Dict[MonoKey, complex]) -> "OscExpr":
        items = tuple(sorted(
            ((k, complex(v)) for k, v in d.items() if v != 0),
            key=lambda kv: repr(kv[0]),
        ))
        return cls(modes, items)

    @classmethod
    def zero(cls, modes: int) -> "OscExpr":
        return cls.from_dict(modes, {})

    @classmethod
    def one(cls, modes: int) -> "OscExpr":
        return cls.from_dict(modes, {tuple(_mode_unit() for _ in range(modes)): 1.0})

    @classmethod
    def monomial(cls, modes: int, spec: Dict[int, ModeKey],
                 coeff: complex = 1.0) -> "OscExpr":
        """Single monomial; `spec` maps 1-based mode index to (a, b, E)."""
        key = []
        for k in range(1, modes + 1):
            a, b, e = spec.get(k, _mode_unit())
            key.append((a, b, e if isinstance(e, ExpKey) else ExpKey.of(e)))
        return cls.from_dict(modes, {tuple(key): coeff})

    @classmethod
    def q_exponent(cls, modes: int, exps: Sequence, coeff: complex = 1.0) -> "OscExpr":
        """prod_k q^{exps[k-1] N_k} as a single monomial."""
        key = tuple(
            (0, 0, e if isinstance(e, ExpKey) else ExpKey.of(e)) for e in exps
        )
        return cls.from_dict(modes, {tuple(key): coeff})

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "OscExpr") -> "OscExpr":
        if self.modes != other.modes:
            raise ValueError("mode count mismatch")
        d = dict(self.terms)
        for k, v in other.terms:
            d[k] = d.get(k, 0.0) + v
        return OscExpr.from_dict(self.modes, d)

    def __sub__(self, other: "OscExpr") -> "OscExpr":
        return self + other.scale(-1.0)

    def scale(self, c: complex) -> "OscExpr":
        return OscExpr.from_dict(self.modes, {k: c * v for k, v in self.terms})

    def __len__(self) -> int:
        return len(self.terms)

    def max_abs(self) -> float:
        return max((abs(v) for _, v in self.terms), default=0.0)

    def prune(self, ctx: QContext) -> "OscExpr":
        """Drop terms below tolerance relative to the largest coefficient."""
        cut = ctx.tolerance * self.max_abs()
        return OscExpr.from_dict(
            self.modes, {k: v for k, v in self.terms if abs(v) > cut}
        )


# -- normal ordering -------------------------------------------------------

# Cache of single-mode reorderings b^beta bdag^alpha =
#   sum c * bdag^a b^b q^{m N}, keyed by (q, beta, alpha); entries are lists
#   of (a, b, m, c).
_NO_CACHE: dict = {}


def _normal_order(beta: int, alpha: int, ctx: QContext) -> list:
    key = (ctx.q, beta, alpha)
    hit = _NO_CACHE.get(key)
    if hit is not None:
        return hit
    if beta == 0 or alpha == 0:
        out = [(alpha, beta, 0, 1.0 + 0j)]
    else:
        inner = _normal_order(beta - 1, alpha - 1, ctx)
        qa = ctx.qpow(alpha)
        cp = qa * ctx.q / (ctx.q * ctx.kappa)      # q^alpha / kappa
        cm = 1.0 / (qa * ctx.kappa)                # q^-alpha / kappa
        acc: Dict[Tuple[int, int, int], complex] = {}
        for a, b, m, c in inner:
            acc[(a, b, m + 1)] = acc.get((a, b, m + 1), 0.0) + cp * c
            acc[(a, b, m - 1)] = acc.get((a, b, m - 1), 0.0) - cm * c
        out = [(a, b, m, c) for (a, b, m), c in acc.items() if c != 0]
    _NO_CACHE[key] = out
    return out


def _mode_product(m1: ModeKey, m2: ModeKey, ctx: QContext) -> list:
    """Product of two single-mode monomials as [(ModeKey, coeff)]."""
    a1, b1, e1 = m1
    a2, b2, e2 = m2
    # Move q^{e1 N} through bdag^{a2} b^{b2}: picks up q^{e1 (a2 - b2)}.
    phase = ctx.qpow(e1.value(ctx) * (a2 - b2)) if (a2 or b2) else 1.0
    esum = e1 + e2
    out = []
    for a, b, m, c in _normal_order(b1, a2, ctx):
        # bdag^{a1} [bdag^a b^b q^{mN}] b^{b2} q^{esum N}
        coeff = phase * c * (ctx.qpow(-m * b2) if b2 else 1.0)
        out.append(((a1 + a, b + b2, esum + m), coeff))
    return out


def multiply(x: OscExpr, y: OscExpr, ctx: QContext) -> OscExpr:
    """Normal-ordered product x * y."""
    if x.modes != y.modes:
        raise ValueError("mode count mismatch")
    acc: Dict[MonoKey, complex] = {}
    for kx, cx in x.terms:
        for ky, cy in y.terms:
            partial = [((), cx * cy)]
            for mx, my in zip(kx, ky):
                factors = _mode_product(mx, my, ctx)
                partial = [
                    (key + (mk,), c * fc)
                    for key, c in partial
                    for mk, fc in factors
                ]
            for key, c in partial:
                acc[key] = acc.get(key, 0.0) + c
    return OscExpr.from_dict(x.modes, acc).prune(ctx)


def multiply_many(exprs: Sequence[OscExpr], ctx: QContext) -> OscExpr:
    out = exprs[0]
    for e in exprs[1:]:
        out = multiply(out, e, ctx)
    return out


# -- exact graded traces ---------------------------------------------------

def _mode_trace(mode: ModeKey, sign: int, ctx: QContext) -> complex:
    """Graded trace of bdag^a b^b q^{EN} over one Fock module.

    `sign` is +1 for the raising-type module and -1 for the lowering-type
    one (whose trace is the negative of the other).  Off-diagonal powers
    (a != b) trace to zero.
    """
    a, b, e = mode
    if a != b:
        return 0.0
    # bdag^a b^a = [N]_q [N-1]_q ... [N-a+1]_q; expand the product of
    # (q^{-j} q^N - q^{j} q^{-N})/kappa factors into shifts of the exponent.
    shifts: Dict[int, complex] = {0: 1.0 + 0j}
    for j in range(a):
        nxt: Dict[int, complex] = {}
        qj = ctx.qpow(j)
        for m, c in shifts.items():
            nxt[m + 1] = nxt.get(m + 1, 0.0) + c / (qj * ctx.kappa)
            nxt[m - 1] = nxt.get(m - 1, 0.0) - c * qj / ctx.kappa
        shifts = nxt
    ev = e.value(ctx)
    total = 0.0 + 0j
    for m, c in shifts.items():
        pole = 1.0 - ctx.qpow(ev + m)
        if abs(pole) < ctx.tolerance:
            raise TracePoleError(
                "trace pole at exponent %r + %d" % (e, m)
            )
        total += c / pole
    return sign * total


def trace_exact(x: OscExpr, signs: Sequence[int], ctx: QContext) -> complex:
    """Graded trace over a product of Fock modules, one sign per mode."""
    if len(signs) != x.modes:
        raise ValueError("need one module sign per mode")
    total = 0.0 + 0j
    for key, c in x.terms:
        val = c
        for mode, s in zip(key, signs):
            val *= _mode_trace(mode, s, ctx)
            if val == 0:
                break
        total += val
    return total


# -- truncated Fock oracle -------------------------------------------------

@dataclass(frozen=True)
class TruncatedFock:
    """Finite matrix realization of one oscillator mode.

    kind=+1 realizes the raising-type module (bdag shifts the level up,
    b w_n = [n]_q w_{n-1}); kind=-1 realizes the lowering-type one
    (b shifts up, bdag w_n = -[n]_q w_{n-1}, q^{nu N} w_n = q^{-nu(n+1)} w_n).
    """

    cutoff: int
    kind: int
    ctx: QContext

    def _qnums(self) -> np.ndarray:
        q, k = self.ctx.q, self.ctx.kappa
        n = np.arange(self.cutoff, dtype=complex)
        return (q ** n - q ** (-n)) / k

    def raising(self) -> np.ndarray:
        m = np.zeros((self.cutoff, self.cutoff), dtype=complex)
        idx = np.arange(self.cutoff - 1)
        m[idx + 1, idx] = 1.0
        return m

    def lowering(self) -> np.ndarray:
        m = np.zeros((self.cutoff, self.cutoff), dtype=complex)
        idx = np.arange(1, self.cutoff)
        m[idx - 1, idx] = self._qnums()[idx]
        return m

    def bdag(self) -> np.ndarray:
        return self.raising() if self.kind > 0 else -self.lowering()

    def b(self) -> np.ndarray:
        return self.lowering() if self.kind > 0 else self.raising()

    def q_n(self, nu: float) -> np.ndarray:
        n = np.arange(self.cutoff)
        if self.kind > 0:
            diag = np.array([self.ctx.qpow(nu * int(k)) for k in n])
        else:
            diag = np.array([self.ctx.qpow(-nu * (int(k) + 1)) for k in n])
        return np.diag(diag.astype(complex))

    def mono_matrix(self, mode: ModeKey) -> np.ndarray:
        a, b, e = mode
        m = self.q_n(e.value(self.ctx))
        bop = self.b()
        for _ in range(b):
            m = bop @ m
        bd = self.bdag()
        for _ in range(a):
            m = bd @ m
        return m


def to_truncated(x: OscExpr, focks: Sequence[TruncatedFock]) -> np.ndarray:
    """Dense matrix of the expression on the tensor product of cutoffs."""
    if len(focks) != x.modes:
        raise ValueError("need one truncation per mode")
    dim = int(np.prod([f.cutoff for f in focks]))
    out = np.zeros((dim, dim), dtype=complex)
    for key, c in x.terms:
        m = np.eye(1, dtype=complex)
        for mode, f in zip(key, focks):
            m = np.kron(m, f.mono_matrix(mode))
        out += c * m
    return out


def truncated_trace(x: OscExpr, focks: Sequence[TruncatedFock]) -> complex:
    """Trace of to_truncated(x) computed mode-by-mode (no Kronecker blowup).

    The sign grading of the lowering-type module is baked into its matrix
    realization, so a plain matrix trace is the graded trace.
    """
    total = 0.0 + 0j
    for key, c in x.terms:
        val = c
        for mode, f in zip(key, focks):
            val *= np.trace(f.mono_matrix(mode))
            if val == 0:
                break
        total += val
    return total
