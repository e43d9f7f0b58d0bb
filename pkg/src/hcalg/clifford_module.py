"""The calibrated modules D^lambda_f (n even) and E^lambda_f (n odd).

Both are free over a Clifford algebra with basis v_T, T running over the
paths to lambda.  A basis vector is c^eps v_T with eps a bitmask: bit i is
c_i (0 <= i <= d) and, for E, bit d+1 is c_M, which sits leftmost in the
normally ordered monomial.  Basis order is path-major, mask-minor.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp

from .bratteli import STAR, BratteliGraph, PathTableau, paths_to, s_action
from .shifted_combinatorics import StrictPartition

EVEN = "D"
ODD = "E"


# -- Clifford monomials ------------------------------------------------------

def _positions(nbits: int, lead_bit: Optional[int]) -> List[int]:
    """Position of each bit in the normal order of monomials."""
    pos = list(range(nbits))
    if lead_bit is not None:
        for b in range(nbits):
            pos[b] = b + 1 if b < lead_bit else (0 if b == lead_bit else b)
    return pos


def clifford_sign(eps: int, delta: int, lead_bit: Optional[int] = None) -> Tuple[int, int]:
    """c^eps * c^delta = sign * c^(eps xor delta) with c_i^2 = -1.

    ``lead_bit`` marks a generator (c_M) that is ordered before all others.
    """
    if eps == 0:
        return 1, delta
    nbits = max(eps.bit_length(), delta.bit_length(), (lead_bit or 0) + 1)
    pos = _positions(nbits, lead_bit)
    ea = [pos[b] for b in range(nbits) if (eps >> b) & 1]
    db = [pos[b] for b in range(nbits) if (delta >> b) & 1]
    inversions = sum(1 for a in ea for b in db if a > b)
    inversions += bin(eps & delta).count("1")
    return (-1 if inversions & 1 else 1), eps ^ delta


# -- eigenvalues and the f condition -----------------------------------------

def kappa_squared(T: PathTableau, i: int) -> int:
    if i == 0:
        m, p = T.first_row, T.p
        return m * p * (m - p)
    c = T.content_of(i)
    return c * (c + 1)


def kappa(T: PathTableau, i: int) -> float:
    return math.sqrt(kappa_squared(T, i))


def _n_of(T: PathTableau) -> int:
    return len(T.alpha)


@dataclass(frozen=True)
class KappaData:
    """kappa_0, kappa_1 of T and of s_0.T, with N_0 = n(n+1)."""
    k0: float
    k1: float
    k0p: float
    k1p: float
    p: int
    N0: int

    @property
    def ksq(self) -> float:
        return self.k0 ** 2 + self.k1 ** 2

    def c_forms(self) -> Tuple[float, float, float]:
        k0, k1, k0p, k1p, p, N0 = self.k0, self.k1, self.k0p, self.k1p, self.p, self.N0
        ksq = self.ksq
        first = (2 * N0 / ksq * (ksq - k1 ** 2 - k1p ** 2) + (k1 ** 2 + k1p ** 2 - p * (p + 1))) / (
            2 * (k0 * k1 + k0p * k1p))
        tail = N0 / ksq * (p - 1) + 1
        second = k0 * k1 / (k0 ** 2 + p * k1 ** 2) * tail
        third = k0p * k1p / (k0p ** 2 + p * k1p ** 2) * tail
        return first, second, third

    @property
    def c(self) -> float:
        return self.c_forms()[1]


def kappa_data(T: PathTableau) -> KappaData:
    S = s_action(0, T)
    if S is STAR:
        raise ValueError("s_0.T is the star element")
    n = _n_of(T)
    return KappaData(kappa(T, 0), kappa(T, 1), kappa(S, 0), kappa(S, 1), T.p, n * (n + 1))


def f_rhs(T: PathTableau) -> complex:
    """F_T, the value prescribed for f(T) f(s_0.T)."""
    K = kappa_data(T)
    k0, k1, k0p, k1p, p, N0 = K.k0, K.k1, K.k0p, K.k1p, K.p, K.N0
    num = (k0 ** 2 + p ** 2 * k1 ** 2) * (N0 - k1 ** 2) * (N0 - k1p ** 2)
    den = (k0 ** 2 + p * k1 ** 2) ** 2 * ((k0 - k0p) ** 2 + (k1 + k1p) ** 2)
    return complex(-num / den)


def f_rhs_via_c(T: PathTableau) -> complex:
    """Same quantity through the constant c."""
    K = kappa_data(T)
    c = K.c
    zsq = (K.k0 - K.k0p) ** 2 + (K.k1 + K.k1p) ** 2
    return complex((K.N0 - K.N0 ** 2 / K.ksq - c ** 2 * K.ksq) / zsq)


FAssignment = Dict[PathTableau, complex]


def default_f(g: BratteliGraph, lam) -> FAssignment:
    """f(T) = principal square root of F_T for every T with s_0.T defined."""
    out: FAssignment = {}
    for T in paths_to(g, lam):
        if g.d >= 1 and s_action(0, T) is not STAR:
            out[T] = cmath.sqrt(f_rhs(T))
    return out


# -- the 2x2 pieces ----------------------------------------------------------

def Dmat(a, b) -> np.ndarray:
    return np.array([[a, b], [b, -a]], dtype=complex)


def x1_block(T: PathTableau, f: FAssignment) -> np.ndarray:
    """x_1 on (v_T, c0c1 v_T, c0 v_S, c1 v_S) with S = s_0.T; 2x2 if S is the star."""
    n = _n_of(T)
    N0, p = n * (n + 1), T.p
    k0, k1 = kappa(T, 0), kappa(T, 1)
    den = k0 ** 2 + p * k1 ** 2
    A = N0 / den * Dmat(p * k1, -k0) + k0 * k1 / den * Dmat(k0, k1)
    S = s_action(0, T)
    if S is STAR:
        return A
    k0p, k1p = kappa(S, 0), kappa(S, 1)
    denp = k0p ** 2 + p * k1p ** 2
    B = N0 / denp * Dmat(p * k1p, k0p) + k0p * k1p / denp * Dmat(k0p, -k1p)
    Z = Dmat(k0 - k0p, k1 + k1p)
    return np.block([[A, f[S] * Z], [f[T] * Z, B]])


# -- the module --------------------------------------------------------------

@dataclass
class ModuleRep:
    variant: str
    n: int
    p: int
    d: int
    lam: StrictPartition
    paths: List[PathTableau]
    nbits: int
    basis: List[Tuple[int, int]]  # (mask, path index)
    parity: np.ndarray
    generators: Dict[str, sp.csr_matrix]
    f: FAssignment = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def lead_bit(self) -> Optional[int]:
        return self.d + 1 if self.variant == ODD else None

    def index(self, mask: int, t: int) -> int:
        return t * (1 << self.nbits) + mask

    def generator_parity(self, name: str) -> int:
        return 1 if name.startswith("c") else 0

    def dense(self, name: str) -> np.ndarray:
        return self.generators[name].toarray()

    def basis_labels(self) -> List[str]:
        out = []
        for mask, t in self.basis:
            gens = []
            if self.lead_bit is not None and (mask >> self.lead_bit) & 1:
                gens.append("cM")
            gens += [f"c{i}" for i in range(self.d + 1) if (mask >> i) & 1]
            out.append(" ".join(["".join(gens), f"v[{t}]"]) if gens else f"v[{t}]")
        return out

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "n": self.n, "p": self.p, "d": self.d,
            "lambda": list(self.lam),
            "dim": self.dim,
            "paths": [[list(v) for v in T.vertices] for T in self.paths],
            "basis": self.basis_labels(),
            "parity": [int(x) for x in self.parity],
            "generators": {
                name: [[[float(z.real), float(z.imag)] for z in row] for row in m.toarray()]
                for name, m in self.generators.items()
            },
        }


class _Builder:
    def __init__(self, dim: int):
        self.rows: List[int] = []
        self.cols: List[int] = []
        self.vals: List[complex] = []
        self.dim = dim

    def add(self, r: int, c: int, v):
        if v != 0:
            self.rows.append(r)
            self.cols.append(c)
            self.vals.append(complex(v))

    def build(self) -> sp.csr_matrix:
        return sp.csr_matrix((self.vals, (self.rows, self.cols)), shape=(self.dim, self.dim), dtype=complex)


def build_module(g: BratteliGraph, lam, variant: str = EVEN, f: Optional[FAssignment] = None) -> ModuleRep:
    lam = StrictPartition(lam)
    if g.d < 1:
        raise ValueError("modules need d >= 1")
    if variant not in (EVEN, ODD):
        raise ValueError(f"variant must be {EVEN!r} or {ODD!r}")
    if lam not in g.row(g.d):
        raise ValueError(f"{lam} is not in row {g.d}")
    paths = paths_to(g, lam)
    if f is None:
        f = default_f(g, lam)
    d = g.d
    nbits = d + 1 + (1 if variant == ODD else 0)
    lead = d + 1 if variant == ODD else None
    nm = 1 << nbits
    index = {T: t for t, T in enumerate(paths)}
    basis = [(mask, t) for t in range(len(paths)) for mask in range(nm)]
    dim = len(basis)

    def idx(mask, t):
        return t * nm + mask

    parity = np.array([(paths[t].first_row + bin(mask).count("1")) % 2 for mask, t in basis], dtype=np.int8)
    gens: Dict[str, sp.csr_matrix] = {}

    def left_mult(j_mask: int, mask: int) -> Tuple[int, int]:
        return clifford_sign(j_mask, mask, lead)

    cnames = [(f"c{i}", 1 << i) for i in range(d + 1)]
    if variant == ODD:
        cnames.append(("cM", 1 << lead))
    for name, bit in cnames:
        b = _Builder(dim)
        for mask, t in basis:
            s, m2 = left_mult(bit, mask)
            b.add(idx(m2, t), idx(mask, t), s)
        gens[name] = b.build()

    kap = [[kappa(T, i) for i in range(d + 1)] for T in paths]
    for i in range(d + 1):
        b = _Builder(dim)
        for mask, t in basis:
            sign = -1 if (mask >> i) & 1 else 1
            b.add(idx(mask, t), idx(mask, t), sign * kap[t][i])
        gens[f"z{i}"] = b.build()

    for i in range(1, d):
        b = _Builder(dim)
        pair = (1 << i) | (1 << (i + 1))
        for t, T in enumerate(paths):
            ka, kb = kap[t][i], kap[t][i + 1]
            a_coef = -1 / (ka - kb)
            b_coef = 1 / (ka + kb)
            S = s_action(i, T)
            e_coef = cmath.sqrt(1 - b_coef ** 2 - a_coef ** 2) if S is not STAR else 0
            for mask in range(nm):
                # s_i c^eps = sign c^(sigma eps) s_i
                bi, bj = (mask >> i) & 1, (mask >> (i + 1)) & 1
                smask = mask & ~pair | (bj << i) | (bi << (i + 1))
                sign = -1 if (bi and bj) else 1
                col = idx(mask, t)
                b.add(idx(smask, t), col, sign * a_coef)
                s2, m2 = left_mult(smask, pair)
                b.add(idx(m2, t), col, sign * b_coef * s2)
                if S is not STAR:
                    b.add(idx(smask, index[S]), col, sign * e_coef)
        gens[f"s{i}"] = b.build()

    b = _Builder(dim)
    c0c1 = 0b11
    for t, T in enumerate(paths):
        X = x1_block(T, f)
        S = s_action(0, T)
        image = [(0, t, X[0, 0]), (c0c1, t, X[1, 0])]
        if S is not STAR:
            image += [(0b01, index[S], X[2, 0]), (0b10, index[S], X[3, 0])]
        for mask in range(nm):
            sign = -1 if (mask >> 1) & 1 else 1
            col = idx(mask, t)
            for m_img, t_img, val in image:
                s2, m2 = left_mult(mask, m_img)
                b.add(idx(m2, t_img), col, sign * s2 * val)
    gens["x1"] = b.build()

    return ModuleRep(variant, g.n, g.p, d, lam, paths, nbits, basis, parity, gens, dict(f))


def module_for(n: int, p: int, d: int, lam, variant: Optional[str] = None,
               f: Optional[FAssignment] = None) -> ModuleRep:
    """Convenience: D for even n, E for odd n unless told otherwise."""
    g = build_graph_cached(n, p, d)
    if variant is None:
        variant = EVEN if n % 2 == 0 else ODD
    return build_module(g, lam, variant, f)


_GRAPHS: Dict[Tuple[int, int, int], BratteliGraph] = {}


def build_graph_cached(n: int, p: int, d: int) -> BratteliGraph:
    from .bratteli import build_graph

    key = (n, p, d)
    if key not in _GRAPHS:
        _GRAPHS[key] = build_graph(n, p, d)
    return _GRAPHS[key]
