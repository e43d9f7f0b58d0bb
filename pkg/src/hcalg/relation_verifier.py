"""Relation checking, commutants, spectra, intertwiners and isomorphisms.

Relations are stored as text in the generator alphabet (``s1*z1``,
``x1*(s1*x1*s1 + (1 - c1*c2)*s1)``) and parsed with :mod:`ast`, so the
same relation data drives both the calibrated modules and the tensor-space
oracle.  An expression is always evaluated as an operator applied to a
right-hand block (the identity by default), which lets the oracle check a
relation on a subspace without forming restricted matrices.
"""
from __future__ import annotations

import ast
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp

from .bratteli import STAR, BratteliGraph, PathTableau, paths_to, s_action
from .clifford_module import EVEN, ODD, ModuleRep, build_module, kappa
from .core_arith import approx_zero, default_tolerance

COMMUTANT_THRESHOLD = 1e-7


# -- relation data -----------------------------------------------------------

@dataclass(frozen=True)
class Relation:
    name: str
    lhs: str
    rhs: str = "0"

    def generators(self) -> set:
        names = set()
        for side in (self.lhs, self.rhs):
            for node in ast.walk(ast.parse(side, mode="eval")):
                if isinstance(node, ast.Name):
                    names.add(node.id)
        return names


@dataclass(frozen=True)
class RelationSet:
    name: str
    relations: Tuple[Relation, ...]

    def generators(self) -> set:
        out = set()
        for r in self.relations:
            out |= r.generators()
        return out


def _sergeev(d: int, with_c0: bool) -> List[Relation]:
    cs = list(range(0 if with_c0 else 1, d + 1))
    rels = []
    for i in cs:
        rels.append(Relation(f"c{i}^2=-1", f"c{i}*c{i}", "-1"))
    for a in cs:
        for b in cs:
            if a < b:
                rels.append(Relation(f"c{a}c{b}=-c{b}c{a}", f"c{a}*c{b}", f"-c{b}*c{a}"))
    for i in range(1, d):
        rels.append(Relation(f"s{i}^2=1", f"s{i}*s{i}", "1"))
        for j in range(i + 2, d):
            rels.append(Relation(f"s{i}s{j}=s{j}s{i}", f"s{i}*s{j}", f"s{j}*s{i}"))
        if i + 1 < d:
            rels.append(Relation(f"braid{i}", f"s{i}*s{i+1}*s{i}", f"s{i+1}*s{i}*s{i+1}"))
        rels.append(Relation(f"s{i}c{i}=c{i+1}s{i}", f"s{i}*c{i}", f"c{i+1}*s{i}"))
        rels.append(Relation(f"s{i}c{i+1}=c{i}s{i}", f"s{i}*c{i+1}", f"c{i}*s{i}"))
        for j in cs:
            if j not in (i, i + 1):
                rels.append(Relation(f"s{i}c{j}=c{j}s{i}", f"s{i}*c{j}", f"c{j}*s{i}"))
    return rels


def _even_presentation(d: int, n: int, p: int) -> List[Relation]:
    rels = _sergeev(d, with_c0=True)
    for i in range(1, d):
        rels.append(Relation(f"s{i}z{i}=z{i+1}s{i}-1+c{i}c{i+1}", f"s{i}*z{i}", f"z{i+1}*s{i} - 1 + c{i}*c{i+1}"))
    for i in range(2, d):
        rels.append(Relation(f"x1s{i}=s{i}x1", f"x1*s{i}", f"s{i}*x1"))
    for i in range(1, d):
        for j in range(0, d + 1):
            if j not in (i, i + 1):
                rels.append(Relation(f"z{j}s{i}=s{i}z{j}", f"z{j}*s{i}", f"s{i}*z{j}"))
    rels.append(Relation("x1c1=-c1x1", "x1*c1", "-c1*x1"))
    for i in [0] + list(range(2, d + 1)):
        rels.append(Relation(f"c{i}x1=x1c{i}", f"c{i}*x1", f"x1*c{i}"))
    for i in range(0, d + 1):
        rels.append(Relation(f"z{i}c{i}=-c{i}z{i}", f"z{i}*c{i}", f"-c{i}*z{i}"))
        for j in range(0, d + 1):
            if j != i:
                rels.append(Relation(f"c{i}z{j}=z{j}c{i}", f"c{i}*z{j}", f"z{j}*c{i}"))
    if d >= 2:
        w = "(s1*x1*s1 + (1 - c1*c2)*s1)"
        rels.append(Relation("x1x2 commute", f"x1*{w}", f"{w}*x1"))
        rels.append(Relation("z1z2=z2z1", "z1*z2", "z2*z1"))
        rels.append(Relation("z2x1=x1z2", "z2*x1", "x1*z2"))
    rels.append(Relation("boundary anticommutation", "(z0*c0*c1 + z1 - x1)*x1", "-x1*(z0*c0*c1 + z1 - x1)"))
    rels.append(Relation("x1^2=n(n+1)", "x1*x1", str(n * (n + 1))))
    rels.append(Relation("(z1-x1)^2((z1-x1)^2-p(p+1))=0",
                         f"(z1 - x1)**2*((z1 - x1)**2 - {p * (p + 1)})", "0"))
    return rels


def _odd_extra(d: int) -> List[Relation]:
    rels = [Relation("cM^2=-1", "cM*cM", "-1")]
    for i in range(0, d + 1):
        rels.append(Relation(f"cMc{i}=-c{i}cM", f"cM*c{i}", f"-c{i}*cM"))
        rels.append(Relation(f"cMz{i}=z{i}cM", f"cM*z{i}", f"z{i}*cM"))
    for i in range(1, d):
        rels.append(Relation(f"cMs{i}=s{i}cM", f"cM*s{i}", f"s{i}*cM"))
    rels.append(Relation("cMx1=x1cM", "cM*x1", "x1*cM"))
    return rels


def _affine(d: int) -> List[Relation]:
    rels = _sergeev(d, with_c0=False)
    for i in range(1, d + 1):
        for j in range(i + 1, d + 1):
            rels.append(Relation(f"x{i}x{j}=x{j}x{i}", f"x{i}*x{j}", f"x{j}*x{i}"))
    for i in range(1, d):
        rels.append(Relation(f"s{i}x{i}=x{i+1}s{i}-1+c{i}c{i+1}", f"s{i}*x{i}", f"x{i+1}*s{i} - 1 + c{i}*c{i+1}"))
        for j in range(1, d + 1):
            if j not in (i, i + 1):
                rels.append(Relation(f"s{i}x{j}=x{j}s{i}", f"s{i}*x{j}", f"x{j}*s{i}"))
    for i in range(1, d + 1):
        rels.append(Relation(f"c{i}x{i}=-x{i}c{i}", f"c{i}*x{i}", f"-x{i}*c{i}"))
        for j in range(1, d + 1):
            if j != i:
                rels.append(Relation(f"c{i}x{j}=x{j}c{i}", f"c{i}*x{j}", f"x{j}*c{i}"))
    return rels


def _twoboundary(d: int) -> List[Relation]:
    """Defining relations in the odd generators xt1, zt0..ztd."""
    rels = _sergeev(d, with_c0=False)
    for i in range(1, d):
        rels.append(Relation(f"s{i}zt{i}=zt{i+1}s{i}+c{i}-c{i+1}", f"s{i}*zt{i}", f"zt{i+1}*s{i} + c{i} - c{i+1}"))
    for i in range(2, d):
        rels.append(Relation(f"xt1s{i}=s{i}xt1", f"xt1*s{i}", f"s{i}*xt1"))
    for i in range(1, d):
        for j in range(0, d + 1):
            if j not in (i, i + 1):
                rels.append(Relation(f"zt{j}s{i}=s{i}zt{j}", f"zt{j}*s{i}", f"s{i}*zt{j}"))
    for i in range(1, d + 1):
        rels.append(Relation(f"c{i}xt1=-xt1c{i}", f"c{i}*xt1", f"-xt1*c{i}"))
        for j in range(0, d + 1):
            rels.append(Relation(f"c{i}zt{j}=-zt{j}c{i}", f"c{i}*zt{j}", f"-zt{j}*c{i}"))
    if d >= 2:
        w = "(s1*xt1*s1 - (c1 - c2)*s1)"
        rels.append(Relation("xt1xt2 anticommute", f"xt1*{w}", f"-{w}*xt1"))
        rels.append(Relation("zt1zt2=-zt2zt1", "zt1*zt2", "-zt2*zt1"))
        rels.append(Relation("zt2xt1=-xt1zt2", "zt2*xt1", "-xt1*zt2"))
    rels.append(Relation("zt0zt1=-zt1zt0", "zt0*zt1", "-zt1*zt0"))
    rels.append(Relation("(zt0-zt1+xt1) anticommutes with xt1",
                         "(zt0 - zt1 + xt1)*xt1", "-xt1*(zt0 - zt1 + xt1)"))
    return rels


def _extragenerators(d: int) -> List[Relation]:
    rels = []
    for i in range(1, d + 1):
        for j in range(1, d):
            if i not in (j, j + 1):
                rels.append(Relation(f"xt{i}s{j}=s{j}xt{i}", f"xt{i}*s{j}", f"s{j}*xt{i}"))
                rels.append(Relation(f"yt{i}s{j}=s{j}yt{i}", f"yt{i}*s{j}", f"s{j}*yt{i}"))
        for j in range(1, d + 1):
            rels.append(Relation(f"c{j}xt{i}=-xt{i}c{j}", f"c{j}*xt{i}", f"-xt{i}*c{j}"))
            rels.append(Relation(f"c{j}yt{i}=-yt{i}c{j}", f"c{j}*yt{i}", f"-yt{i}*c{j}"))
            if i != j:
                rels.append(Relation(f"xt{i}xt{j} anticommute", f"xt{i}*xt{j}", f"-xt{j}*xt{i}"))
                rels.append(Relation(f"yt{i}yt{j} anticommute", f"yt{i}*yt{j}", f"-yt{j}*yt{i}"))
            if i < j:
                rels.append(Relation(f"xt{i}zt{j} anticommute", f"xt{i}*zt{j}", f"-zt{j}*xt{i}"))
                rels.append(Relation(f"yt{i}zt{j} anticommute", f"yt{i}*zt{j}", f"-zt{j}*yt{i}"))
        rhs = f"zt{i}" + "".join(f" - (c{j} - c{i})*t{j}_{i}" for j in range(1, i))
        rels.append(Relation(f"xt{i}+yt{i} Jucys-Murphy", f"xt{i} + yt{i}", rhs))
    for i in range(0, d + 1):
        for j in range(i + 1, d + 1):
            rels.append(Relation(f"zt{i}zt{j} anticommute", f"zt{i}*zt{j}", f"-zt{j}*zt{i}"))
    rels.append(Relation("(zt0+zt1-yt1) anticommutes with yt1", "(zt0 + zt1 - yt1)*yt1", "-yt1*(zt0 + zt1 - yt1)"))
    return rels


RELATION_SET_NAMES = ("Sergeev", "H_d-affine", "H_d-twoboundary", "H_ev", "H_od", "extragenerators")


def relation_set(name: str, d: int, n: Optional[int] = None, p: Optional[int] = None) -> RelationSet:
    if name == "Sergeev":
        rels = _sergeev(d, with_c0=False)
    elif name == "H_d-affine":
        rels = _affine(d)
    elif name == "H_d-twoboundary":
        rels = _twoboundary(d)
    elif name == "H_ev":
        rels = _even_presentation(d, n, p)
    elif name == "H_od":
        rels = _even_presentation(d, n, p) + _odd_extra(d)
    elif name == "extragenerators":
        rels = _extragenerators(d)
    else:
        raise ValueError(f"unknown relation set {name!r}; choose from {RELATION_SET_NAMES}")
    return RelationSet(name, tuple(rels))


# -- evaluation --------------------------------------------------------------

def _is_sparse(m) -> bool:
    return sp.issparse(m)


def _identity_like(env: Mapping[str, object]):
    m = next(iter(env.values()))
    n = m.shape[0]
    if _is_sparse(m):
        return sp.identity(n, dtype=m.dtype, format="csr")
    return np.eye(n, dtype=m.dtype)


def evaluate(expr: str, env: Mapping[str, object], right=None):
    """Value of ``expr`` (a word in generator names) applied to ``right``."""
    if right is None:
        right = _identity_like(env)
    tree = ast.parse(expr, mode="eval").body
    return _eval(tree, env, right)


def _scalar(node) -> Optional[object]:
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float, complex)):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        v = _scalar(node.operand)
        return None if v is None else -v
    if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Div):
        a, b = _scalar(node.left), _scalar(node.right)
        if a is not None and b is not None:
            return Fraction(a, b) if isinstance(a, int) and isinstance(b, int) else a / b
    return None


def _scale(c, m):
    if isinstance(c, Fraction):
        if c.denominator == 1:
            c = c.numerator
        else:
            c = float(c)
    return m * c


def _eval(node, env, right):
    s = _scalar(node)
    if s is not None:
        return _scale(s, right)
    if isinstance(node, ast.Name):
        if node.id not in env:
            raise KeyError(f"generator {node.id!r} is not provided by the representation")
        return env[node.id] @ right
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_eval(node.operand, env, right)
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Add):
            return _eval(node.left, env, right) + _eval(node.right, env, right)
        if isinstance(node.op, ast.Sub):
            return _eval(node.left, env, right) - _eval(node.right, env, right)
        if isinstance(node.op, ast.Mult):
            return _eval(node.left, env, _eval(node.right, env, right))
        if isinstance(node.op, ast.Pow):
            e = _scalar(node.right)
            if not isinstance(e, int) or e < 0:
                raise ValueError("only non-negative integer powers are supported")
            out = right
            for _ in range(e):
                out = _eval(node.left, env, out)
            return out
    raise ValueError(f"unsupported syntax in relation: {ast.dump(node)}")


def _max_abs(m) -> float:
    if _is_sparse(m):
        if m.nnz == 0:
            return 0.0
        return float(np.max(np.abs(m.data)))
    m = np.asarray(m)
    if m.size == 0:
        return 0.0
    if m.dtype == object:
        return float(max((abs(x) for x in m.flat), default=0))
    return float(np.max(np.abs(m)))


# -- reports -----------------------------------------------------------------

@dataclass
class RelationResult:
    name: str
    residual: float
    passed: bool


@dataclass
class VerificationReport:
    title: str
    tolerance: Optional[float]
    results: List[RelationResult] = field(default_factory=list)
    info: Dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def max_residual(self) -> float:
        return max((r.residual for r in self.results), default=0.0)

    def failures(self) -> List[RelationResult]:
        return [r for r in self.results if not r.passed]

    def add(self, name: str, residual: float, passed: bool):
        self.results.append(RelationResult(name, float(residual), bool(passed)))

    def to_json(self) -> dict:
        return {
            "title": self.title,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "max_residual": self.max_residual,
            "results": [{"name": r.name, "residual": r.residual, "passed": r.passed} for r in self.results],
            "info": {k: (v if isinstance(v, (int, float, str, bool, list, dict, type(None))) else str(v))
                     for k, v in self.info.items()},
        }

    def text(self) -> str:
        head = f"{self.title}: {'PASS' if self.passed else 'FAIL'}"
        if self.tolerance is not None:
            head += f" (tol {self.tolerance:g}, max residual {self.max_residual:.3g})"
        else:
            head += " (exact)"
        lines = [head]
        for r in self.failures():
            lines.append(f"  failed: {r.name} residual {r.residual:.3g}")
        for k, v in self.info.items():
            lines.append(f"  {k}: {v}")
        return "\n".join(lines)


def generator_env(rep) -> Dict[str, object]:
    """Generator matrices of a ModuleRep or anything with ``generators``."""
    return dict(rep.generators)


def verify_relations(rep, rs: RelationSet, tol: Optional[float] = None, exact: bool = False,
                     env: Optional[Mapping[str, object]] = None, right=None) -> VerificationReport:
    """Evaluate every relation; residual is scaled by the largest operand entry.

    With ``exact`` the matrices are expected to be integer or rational and the
    check is equality, no tolerance.
    """
    if env is None:
        env = generator_env(rep)
    missing = sorted(rs.generators() - set(env))
    if missing:
        raise KeyError(f"representation lacks generators {missing} needed by {rs.name}")
    if tol is None and not exact:
        tol = default_tolerance()
    report = VerificationReport(rs.name, None if exact else tol)
    for rel in rs.relations:
        diff = evaluate(rel.lhs, env, right) - evaluate(rel.rhs, env, right)
        scale = max([1.0] + [_max_abs(env[g]) for g in rel.generators()])
        res = _max_abs(diff)
        if exact:
            report.add(rel.name, res, res == 0)
        else:
            report.add(rel.name, res / scale, approx_zero(res / scale, 1.0, tol))
    return report


# -- derived generators ------------------------------------------------------

def derived_generators(rep, env: Optional[Mapping[str, object]] = None) -> Dict[str, object]:
    """xt_i, yt_i, zt_i and t{j}_{i} from x1, z_i, c_i, s_i of the even presentation."""
    env = dict(generator_env(rep) if env is None else env)
    d = rep.d
    out: Dict[str, object] = {}
    out["xt1"] = -(env["x1"] @ env["c1"])
    for i in range(0, d + 1):
        out[f"zt{i}"] = -(env[f"z{i}"] @ env[f"c{i}"])
    return _extend_tilde(out, env, d)


def _extend_tilde(out: Dict[str, object], env: Mapping[str, object], d: int) -> Dict[str, object]:
    out["yt1"] = out["zt1"] - out["xt1"]
    for i in range(1, d):
        s, ci, cj = env[f"s{i}"], env[f"c{i}"], env[f"c{i+1}"]
        out[f"xt{i+1}"] = s @ out[f"xt{i}"] @ s - (ci - cj) @ s
        out[f"yt{i+1}"] = s @ out[f"yt{i}"] @ s - (ci - cj) @ s
    for i in range(2, d + 1):
        for j in range(1, i):
            t = env[f"s{i-1}"]
            for k in range(i - 2, j - 1, -1):
                t = env[f"s{k}"] @ t @ env[f"s{k}"]
            out[f"t{j}_{i}"] = t
    return out


def verify_extragenerators(rep, tol: Optional[float] = None, exact: bool = False,
                           env: Optional[Mapping[str, object]] = None) -> VerificationReport:
    base = dict(generator_env(rep) if env is None else env)
    if "xt1" not in base:
        base.update(derived_generators(rep, base))
    else:
        base.update(_extend_tilde({k: base[k] for k in base if k.startswith(("xt1", "zt"))}, base, rep.d))
    return verify_relations(rep, relation_set("extragenerators", rep.d), tol, exact, env=base)


def tilde_relation_report(rep, tol: Optional[float] = None) -> VerificationReport:
    """The defining two-boundary relations, read through the tilde dictionary."""
    env = generator_env(rep)
    env.update(derived_generators(rep, env))
    return verify_relations(rep, relation_set("H_d-twoboundary", rep.d), tol, env=env)


def yt1_square_spectrum(rep) -> np.ndarray:
    yt = derived_generators(rep)["yt1"]
    y2 = (yt @ yt).toarray() if _is_sparse(yt) else yt @ yt
    return np.linalg.eigvals(y2)


# -- commutant ---------------------------------------------------------------

def _diagonal_generators(env: Mapping[str, object]) -> List[np.ndarray]:
    out = []
    for m in env.values():
        a = m if _is_sparse(m) else sp.csr_matrix(m)
        off = a - sp.diags(a.diagonal())
        if off.nnz == 0 or _max_abs(off) == 0:
            out.append(a.diagonal())
    return out


def _blocks_from_diagonals(diags: List[np.ndarray], dim: int, tol: float = 1e-8) -> List[int]:
    """Group basis indices by their joint diagonal values (a block label per index)."""
    if not diags:
        return [0] * dim
    keys = np.stack([np.round(np.real(x) / tol) + 1j * np.round(np.imag(x) / tol) for x in diags], axis=1)
    labels: Dict[tuple, int] = {}
    out = []
    for row in keys:
        k = tuple(row)
        out.append(labels.setdefault(k, len(labels)))
    return out


def _solve_intertwiners(gens_src: Sequence[Tuple[object, int]], gens_dst: Sequence[object],
                        parity_src: np.ndarray, parity_dst: np.ndarray, want_odd: bool,
                        block_src: Sequence[int], block_dst: Sequence[int],
                        threshold: float) -> np.ndarray:
    """Null space of X g_src - (+-) g_dst X = 0 over allowed positions of X.

    Positions are restricted to pairs with equal block label (joint eigenspaces
    of the diagonal generators) and with the requested parity behaviour.
    Returns a basis of solutions, one column per solution, in the position
    coordinates given by the returned index arrays.
    """
    dim_s, dim_d = len(parity_src), len(parity_dst)
    pos_r, pos_c = [], []
    by_block: Dict[int, List[int]] = {}
    for a in range(dim_s):
        by_block.setdefault(block_src[a], []).append(a)
    for r in range(dim_d):
        for c in by_block.get(block_dst[r], []):
            if (parity_dst[r] != parity_src[c]) == want_odd:
                pos_r.append(r)
                pos_c.append(c)
    u = len(pos_r)
    if u == 0:
        return np.zeros((0, 0)), np.array(pos_r), np.array(pos_c)
    pos_r = np.array(pos_r)
    pos_c = np.array(pos_c)
    # vec(X) uses column-major index c*dim_d + r
    col_index = pos_c * dim_d + pos_r
    select = sp.csr_matrix((np.ones(u), (col_index, np.arange(u))), shape=(dim_d * dim_s, u))
    pieces = []
    for (g_s, gpar), g_d in zip(gens_src, gens_dst):
        gs = g_s if _is_sparse(g_s) else sp.csr_matrix(g_s)
        gd = g_d if _is_sparse(g_d) else sp.csr_matrix(g_d)
        sign = -1 if (want_odd and gpar) else 1
        # X g_s - sign g_d X ;  vec(X g) = (g^T kron I) vec X
        op = sp.kron(gs.T, sp.identity(dim_d), format="csr") - sign * sp.kron(sp.identity(dim_s), gd, format="csr")
        pieces.append(op @ select)
    A = sp.vstack(pieces, format="csr")
    G = (A.conj().T @ A).toarray()
    G = (G + G.conj().T) / 2
    w, v = np.linalg.eigh(G)
    top = max(w.max(), 0.0)
    if top == 0:
        return np.eye(u), pos_r, pos_c
    # singular values of A are sqrt(w); threshold relative to sigma_max
    null = v[:, w <= (threshold ** 2) * top]
    return null, pos_r, pos_c


def _generator_parity(name: str) -> int:
    return 1 if name.startswith("c") else 0


def commutant_dimension(rep, threshold: float = COMMUTANT_THRESHOLD,
                        env: Optional[Mapping[str, object]] = None,
                        parity: Optional[np.ndarray] = None) -> Tuple[int, int]:
    """(even, odd) dimensions of the super-commutant of the generators."""
    env = generator_env(rep) if env is None else env
    parity = rep.parity if parity is None else parity
    names = sorted(env)
    dim = len(parity)
    blocks = _blocks_from_diagonals(_diagonal_generators(env), dim)
    gens = [(env[k], _generator_parity(k)) for k in names]
    out = []
    for odd in (False, True):
        null, _, _ = _solve_intertwiners(gens, [env[k] for k in names], parity, parity, odd,
                                         blocks, blocks, threshold)
        out.append(null.shape[1])
    return out[0], out[1]


# -- spectra -----------------------------------------------------------------

def calibrated_spectrum_check(rep: ModuleRep, g: BratteliGraph, lam, tol: Optional[float] = None) -> bool:
    tol = default_tolerance() if tol is None else tol
    d = rep.d
    Z = []
    for i in range(d + 1):
        z = rep.generators[f"z{i}"]
        off = z - sp.diags(z.diagonal())
        if off.nnz and _max_abs(off) > tol * max(1.0, _max_abs(z)):
            return False
        Z.append(z.diagonal())
    Z = np.stack(Z, axis=1)
    paths = paths_to(g, lam)
    expected = []
    for T in paths:
        kap = [kappa(T, i) for i in range(d + 1)]
        for eps in range(1 << (d + 1)):
            expected.append(tuple((-1 if (eps >> i) & 1 else 1) * kap[i] for i in range(d + 1)))
    mult = 2 if rep.variant == ODD else 1
    if len(expected) * mult != rep.dim:
        return False
    scale = max(1.0, float(np.max(np.abs(Z))))
    remaining = [np.array(e) for e in expected for _ in range(mult)]
    used = np.zeros(len(remaining), dtype=bool)
    ref = np.array(remaining)
    for row in Z:
        dist = np.max(np.abs(ref - row), axis=1)
        dist[used] = np.inf
        j = int(np.argmin(dist))
        if dist[j] > tol * scale:
            return False
        used[j] = True
    # joint eigenspaces have dimension exactly `mult`
    distinct = {tuple(np.round(e, 8)) for e in expected}
    return len(distinct) == len(expected)


def ydefinition(a: float, b: float) -> float:
    return (a ** 2 - b ** 2) ** 2 - (a - b) ** 2 - (a + b) ** 2


def intertwiner_check(rep: ModuleRep, i: int, tol: Optional[float] = None,
                      clifford_pair: Optional[Tuple[int, int]] = None) -> VerificationReport:
    """Nazarov-type intertwiner Phi_i = s_i(z_i^2 - z_{i+1}^2) + (z_i + z_{i+1}) - c c'(z_i - z_{i+1}).

    ``clifford_pair`` selects the Clifford product c c' in the last term.  The
    default is c_i c_{i+1}; passing (0, 1) gives the c_0 c_1 variant, which
    does not intertwine (c_0 c_1 fails to commute with z_0).
    """
    tol = default_tolerance() if tol is None else tol
    d = rep.d
    if not 1 <= i <= d - 1:
        raise ValueError("need 1 <= i <= d-1")
    a, b = clifford_pair if clifford_pair is not None else (i, i + 1)
    env = dict(rep.generators)
    phi = f"(s{i}*(z{i}**2 - z{i+1}**2) + (z{i} + z{i+1}) - c{a}*c{b}*(z{i} - z{i+1}))"
    env_phi = dict(env)
    env_phi["Phi"] = evaluate(phi, env)
    # -Y as a diagonal operator, built path by path
    ydiag = np.zeros(rep.dim, dtype=complex)
    nonzero_ok = True
    for t, T in enumerate(rep.paths):
        ka, kb = kappa(T, i), kappa(T, i + 1)
        y = ydefinition(ka, kb)
        if s_action(i, T) is not STAR and not abs(y) > tol:
            nonzero_ok = False
        for mask in range(1 << rep.nbits):
            ydiag[rep.index(mask, t)] = y
    env_phi["Y"] = sp.diags(ydiag, format="csr")
    rels = [Relation(f"Phi z{i} = z{i+1} Phi", f"Phi*z{i}", f"z{i+1}*Phi"),
            Relation(f"Phi z{i+1} = z{i} Phi", f"Phi*z{i+1}", f"z{i}*Phi")]
    for j in range(0, d + 1):
        if j not in (i, i + 1):
            rels.append(Relation(f"Phi z{j} = z{j} Phi", f"Phi*z{j}", f"z{j}*Phi"))
    rels.append(Relation("Phi^2 = -Y", "Phi*Phi", "-Y"))
    report = verify_relations(rep, RelationSet(f"intertwiner s{i} with c{a}c{b}", tuple(rels)), tol, env=env_phi)
    report.add("Y_T(i) nonzero when s_i.T defined", 0.0 if nonzero_ok else 1.0, nonzero_ok)
    return report


# -- isomorphism -------------------------------------------------------------

def isomorphism_criterion(paths: Sequence[PathTableau], f: Mapping, g: Mapping, d: int,
                          tol: float = 1e-9) -> bool:
    """f(T)/g(T) = f(s_i.T)/g(s_i.T) for 2 <= i <= d-1 whenever both sides are defined."""
    for T in paths:
        if T not in f:
            continue
        r = f[T] / g[T]
        for i in range(2, d):
            S = s_action(i, T)
            if S is STAR or S not in f:
                continue
            r2 = f[S] / g[S]
            if abs(r - r2) > tol * max(1.0, abs(r)):
                return False
    return True


def _even_intertwiner_space(repF: ModuleRep, repG: ModuleRep, threshold: float):
    if (repF.n, repF.p, repF.d, repF.lam, repF.variant) != (repG.n, repG.p, repG.d, repG.lam, repG.variant):
        raise ValueError("modules are over different data")
    names = sorted(repF.generators)
    envF, envG = repF.generators, repG.generators
    # blocks labelled by the joint z-eigenvalues, shared between the two modules
    zF = np.stack([envF[k].diagonal() for k in names if k.startswith("z")], axis=1)
    zG = np.stack([envG[k].diagonal() for k in names if k.startswith("z")], axis=1)
    labels: Dict[tuple, int] = {}
    bF = [labels.setdefault(tuple(np.round(r, 7)), len(labels)) for r in zF]
    bG = [labels.setdefault(tuple(np.round(r, 7)), len(labels)) for r in zG]
    gens = [(envF[k], _generator_parity(k)) for k in names]
    return _solve_intertwiners(gens, [envG[k] for k in names], repF.parity, repG.parity,
                               False, bF, bG, threshold)


def intertwiner_space_dimension(repF: ModuleRep, repG: ModuleRep,
                                threshold: float = COMMUTANT_THRESHOLD) -> int:
    """Dimension of the even solutions of Phi gF = gG Phi."""
    null, _, _ = _even_intertwiner_space(repF, repG, threshold)
    return null.shape[1]


def isomorphism_check(repF: ModuleRep, repG: ModuleRep, threshold: float = COMMUTANT_THRESHOLD):
    """An even invertible Phi with Phi gF = gG Phi for every generator, or None."""
    null, pr, pc = _even_intertwiner_space(repF, repG, threshold)
    if null.shape[1] == 0:
        return None
    Phi = np.zeros((repG.dim, repF.dim), dtype=complex)
    Phi[pr, pc] = null[:, 0]
    if np.linalg.matrix_rank(Phi) < repF.dim:
        return None
    k = np.argmax(np.abs(np.diag(Phi)))
    return Phi / Phi[k, k]


def intertwining_residual(Phi: np.ndarray, repF: ModuleRep, repG: ModuleRep) -> float:
    worst = 0.0
    for k in repF.generators:
        a = repF.generators[k].toarray()
        b = repG.generators[k].toarray()
        worst = max(worst, np.max(np.abs(Phi @ a - b @ Phi)) / max(1.0, np.max(np.abs(a))))
    return float(worst)


def shape_twist(paths: Sequence[PathTableau], f: Mapping, H: Callable[[PathTableau], complex]) -> dict:
    """g(T) = f(T) H(s_0.T) / H(T): isomorphic to f when H depends on the first two edges."""
    out = {}
    for T in paths:
        if T in f:
            S = s_action(0, T)
            out[T] = f[T] * H(S) / H(T)
    return out


# -- projections -------------------------------------------------------------

def projection_operator(rep: ModuleRep, T: PathTableau, eps: int) -> np.ndarray:
    """Product formula for the projection onto span(c^eps v_T)."""
    d = rep.d
    zs = [rep.generators[f"z{i}"].toarray() for i in range(d + 1)]
    I = np.eye(rep.dim, dtype=complex)
    if rep.variant == ODD:
        eps &= (1 << (d + 1)) - 1

    def spec(S, sigma):
        return [(-1 if (sigma >> i) & 1 else 1) * kappa(S, i) for i in range(d + 1)]

    target = spec(T, eps)
    P = I.copy()
    for S in rep.paths:
        for sigma in range(1 << (d + 1)):
            if S == T and sigma == eps:
                continue
            other = spec(S, sigma)
            num = sum((zs[i] - other[i] * I) @ (zs[i] - other[i] * I) for i in range(d + 1))
            den = sum((target[i] - other[i]) ** 2 for i in range(d + 1))
            if abs(den) < 1e-12:
                raise ZeroDivisionError(f"coinciding joint spectra for {T} and {S}")
            P = P @ (num / den)
    return P


def classify_hypothesis(n: int, p: int) -> bool:
    """True when n^2(n+1)^2 + p^2(p+1)^2 is not a perfect square."""
    v = n * n * (n + 1) ** 2 + p * p * (p + 1) ** 2
    r = math.isqrt(v)
    return r * r != v
