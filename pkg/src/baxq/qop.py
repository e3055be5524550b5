"""Baxter operators on the twisted spin chain via graded oscillator traces.

The chain Hilbert space is (C^{l+1})^(x n), flattened row-major with site 1
as the leftmost tensor factor.  The a-th Baxter operator is the graded trace
over the a-th oscillator module family of the monodromy built from the
rotated Lax matrices (site-n factor leftmost), times the oscillator image of
the twist exponential, finally dressed with a sector-diagonal power of the
spectral parameter.  Operators with different a and different spectral
parameters all commute, which the tests verify.

Determinants of shifted Baxter operators (generalized Q-functions) feed the
functional relations in `funcrel`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import numpy as np

from .borelhoms import TwistConfig, module_signs, twist_diagonal
from .lop import GradingConfig, LOperator, build_L_a
from .oscalg import OscExpr, multiply, trace_exact
from .qnum import QContext


@dataclass(frozen=True)
class SectorLabel:
    """Occupation numbers (k_1..k_{l+1}) of a weight sector."""

    k: Tuple[int, ...]

    @property
    def n(self) -> int:
        return sum(self.k)


def basis_states(l: int, n: int):
    """Multi-indices (i_1..i_n), i in 1..l+1, row-major order."""
    return list(itertools.product(range(1, l + 2), repeat=n))


def state_index(state: Sequence[int], l: int) -> int:
    idx = 0
    for i in state:
        idx = idx * (l + 1) + (i - 1)
    return idx


def sector_of(state: Sequence[int], l: int) -> SectorLabel:
    k = [0] * (l + 1)
    for i in state:
        k[i - 1] += 1
    return SectorLabel(tuple(k))


def sectors(l: int, n: int) -> Dict[SectorLabel, list]:
    """Map from sector label to the ordered list of basis indices in it."""
    out: Dict[SectorLabel, list] = {}
    for st in basis_states(l, n):
        out.setdefault(sector_of(st, l), []).append(state_index(st, l))
    return out


@dataclass(frozen=True)
class DressedExponent:
    """Sector eigenvalue of the zeta-power dressing of operator a."""

    a: int
    value: float


def dressing_exponent(a: int, label: SectorLabel, twist: TwistConfig,
                      grading: GradingConfig) -> float:
    """D_{a,k}: the power of zeta multiplying sector k of operator a.

    Built from h'_j = h_j - t_j, so the twist enters with a minus sign.
    """
    l = grading.l
    k = label.k
    s = grading.total
    acc = 0.0
    for j in range(1, l + 1):
        term = k[j - 1] - k[j] - twist.t(j)
        if j <= a - 1:
            acc += j * term
        else:
            acc -= (l - j + 1) * term
    return s * acc / (2 * (l + 1))


def monodromy_entry(lop: LOperator, row_state: Sequence[int],
                    col_state: Sequence[int], ctx: QContext) -> OscExpr:
    """Oscillator entry L_{i_n j_n} ... L_{i_1 j_1} of the n-site monodromy."""
    n = len(row_state)
    expr = lop.entry(row_state[-1], col_state[-1])
    for site in range(n - 2, -1, -1):
        expr = multiply(expr, lop.entry(row_state[site], col_state[site]), ctx)
    return expr


def q_prime(a: int, zeta: complex, n: int, twist: TwistConfig,
            grading: GradingConfig, ctx: QContext) -> np.ndarray:
    """Undressed Baxter operator: graded trace of monodromy times twist."""
    l = grading.l
    if tuple(ctx.tau) != tuple(twist.tau):
        ctx = QContext(q=ctx.q, tolerance=ctx.tolerance, tau=tuple(twist.tau))
    lop = build_L_a(a, zeta, grading, ctx)
    tw = twist_diagonal(a, twist, ctx)
    signs = module_signs(a, l)
    dim = (l + 1) ** n
    out = np.zeros((dim, dim), dtype=complex)
    states = basis_states(l, n)
    by_sector: Dict[SectorLabel, list] = {}
    for st in states:
        by_sector.setdefault(sector_of(st, l), []).append(st)
    for members in by_sector.values():
        for row in members:
            for col in members:
                expr = monodromy_entry(lop, row, col, ctx)
                expr = multiply(expr, tw, ctx)
                val = trace_exact(expr, signs, ctx)
                out[state_index(row, l), state_index(col, l)] = val
    return out


def q_operator(a: int, zeta: complex, n: int, twist: TwistConfig,
               grading: GradingConfig, ctx: QContext) -> np.ndarray:
    """Dressed Baxter operator Q_a(zeta) = zeta^{D_a} Q'_a(zeta)."""
    import cmath

    l = grading.l
    mat = q_prime(a, zeta, n, twist, grading, ctx)
    logz = cmath.log(zeta)
    scale = np.ones((l + 1) ** n, dtype=complex)
    for label, idxs in sectors(l, n).items():
        d = dressing_exponent(a, label, twist, grading)
        scale[idxs] = cmath.exp(d * logz)
    return scale[:, None] * mat


def c_l_diagonal(n: int, twist: TwistConfig, grading: GradingConfig,
                 ctx: QContext) -> np.ndarray:
    """Diagonal of the twisted Weyl-denominator-type normalization operator.

    Sector eigenvalue: prod_{i<j} q^{e_ij/2} / (1 - q^{e_ij}) with
    e_ij = (k_i - k_j) - (tau_i - tau_j).
    """
    l = grading.l
    diag = np.zeros((l + 1) ** n, dtype=complex)
    for label, idxs in sectors(l, n).items():
        val = 1.0 + 0j
        for i in range(1, l + 2):
            for j in range(i + 1, l + 2):
                e = (label.k[i - 1] - label.k[j - 1]) \
                    - (twist.tau[i - 1] - twist.tau[j - 1])
                den = 1.0 - ctx.qpow(e)
                if abs(den) < ctx.tolerance:
                    raise ArithmeticError("degenerate twist in normalization")
                val *= ctx.qpow(e / 2.0) / den
        diag[idxs] = val
    return diag


def op_det(blocks: list, row: int = 0) -> np.ndarray:
    """Determinant of a matrix of mutually commuting operators.

    Cofactor expansion along the given row; entries are dense ndarrays.
    """
    p = len(blocks)
    if p == 1:
        return blocks[0][0]
    out = None
    for col in range(p):
        entry = blocks[row][col]
        minor = [[blocks[r][c] for c in range(p) if c != col]
                 for r in range(p) if r != row]
        term = entry @ op_det(minor)
        if (row + col) % 2:
            term = -term
        out = term if out is None else out + term
    return out


MATRIX_FORMAT_VERSION = 1


def save_matrix(path: str, mat: np.ndarray, meta: dict) -> None:
    """Write a complex matrix as flat binary plus a JSON sidecar.

    The sidecar (path + ".json") records the shape, dtype, format version
    and whatever run metadata (l, n, zeta, tau, grading, ...) is supplied.
    """
    import json

    arr = np.ascontiguousarray(mat, dtype=np.complex128)
    arr.tofile(path)
    sidecar = dict(meta)
    sidecar.update({
        "shape": list(arr.shape),
        "dtype": "complex128",
        "format_version": MATRIX_FORMAT_VERSION,
    })
    with open(path + ".json", "w", encoding="utf-8") as f:
        json.dump(sidecar, f, indent=2, sort_keys=True)


def load_matrix(path: str) -> Tuple[np.ndarray, dict]:
    """Read a matrix written by `save_matrix`; returns (matrix, sidecar)."""
    import json

    with open(path + ".json", encoding="utf-8") as f:
        meta = json.load(f)
    if meta.get("format_version") != MATRIX_FORMAT_VERSION:
        raise ValueError("unsupported matrix format version: %r"
                         % meta.get("format_version"))
    arr = np.fromfile(path, dtype=np.complex128).reshape(meta["shape"])
    return arr, meta


class QFamily:
    """Cache of Baxter operators for one chain (fixed l, n, twist, grading)."""

    def __init__(self, n: int, twist: TwistConfig, grading: GradingConfig,
                 ctx: QContext):
        if grading.l != twist.l:
            raise ValueError("twist and grading rank mismatch")
        self.n = n
        self.twist = twist
        self.grading = grading
        self.ctx = QContext(q=ctx.q, tolerance=ctx.tolerance,
                            tau=tuple(twist.tau))
        self._cache: dict = {}

    @property
    def l(self) -> int:
        return self.grading.l

    @property
    def dim(self) -> int:
        return (self.l + 1) ** self.n

    def q_op(self, a: int, zeta: complex) -> np.ndarray:
        key = ("q", a, complex(zeta))
        if key not in self._cache:
            self._cache[key] = q_operator(a, zeta, self.n, self.twist,
                                          self.grading, self.ctx)
        return self._cache[key]

    def shifted(self, a: int, zeta: complex, power) -> np.ndarray:
        """Q_a at q^{power/s} zeta (power may be rational)."""
        s = self.grading.total
        shift = self.ctx.qpow(float(power) / s)
        return self.q_op(a, shift * zeta)

    def generalized_q(self, a_tuple: Sequence[int], zeta: complex,
                      row: int = 0) -> np.ndarray:
        """det( Q_{a_i}(q^{(p - 2j + 1)/s} zeta) )_{i,j=1..p}; empty -> 1."""
        p = len(a_tuple)
        if p == 0:
            return np.eye(self.dim, dtype=complex)
        blocks = [
            [self.shifted(a_tuple[i], zeta, p - 2 * (j + 1) + 1)
             for j in range(p)]
            for i in range(p)
        ]
        return op_det(blocks, row=row)

    def c_l(self) -> np.ndarray:
        return c_l_diagonal(self.n, self.twist, self.grading, self.ctx)
