"""Exact arithmetic helpers.

Rationals are ``fractions.Fraction``.  Polynomials are sparse dictionaries
keyed by packed exponent integers (``_BITS`` bits per variable), which keeps
monomial multiplication down to a single integer addition.

The quotient rings used by the identity suites all have the shape

    Q[base][aux] / (aux_i^2 - r_i(base))

so every element has a unique normal form with each aux exponent in {0, 1}.
``QElem`` stores that normal form directly as ``{aux bitmask: base poly}``.
"""
from __future__ import annotations

import cmath
import math
import os
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

BigRational = Fraction
Coeff = Union[int, Fraction]

TOLERANCE_ENV = "HCALG_TOLERANCE"
DEFAULT_TOLERANCE = 1e-9

_BITS = 16
_MASK = (1 << _BITS) - 1


def _norm(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def rational(x) -> Fraction:
    """Coerce ints, strings like '3/4' and Fractions to a Fraction."""
    return Fraction(x)


# ---------------------------------------------------------------------------
# packed sparse polynomials (plain dicts, used by both MultiPoly and QElem)

def _pack(exps: Sequence[int]) -> int:
    key = 0
    for i, e in enumerate(exps):
        if e < 0 or e > _MASK:
            raise ValueError(f"exponent {e} out of range")
        key |= e << (_BITS * i)
    return key


def _unpack(key: int, nvars: int) -> Tuple[int, ...]:
    return tuple((key >> (_BITS * i)) & _MASK for i in range(nvars))


def _padd(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for k, c in b.items():
        v = out.get(k, 0) + sign * c
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def _pmul(a: dict, b: dict) -> dict:
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: _norm(c) for k, c in out.items() if c}


def _pscale(a: dict, s: Coeff) -> dict:
    if not s:
        return {}
    return {k: _norm(c * s) for k, c in a.items()}


def _ppow(a: dict, e: int) -> dict:
    result = {0: 1}
    base = a
    while e:
        if e & 1:
            result = _pmul(result, base)
        e >>= 1
        if e:
            base = _pmul(base, base)
    return result


# ---------------------------------------------------------------------------

class MultiPoly:
    """Sparse multivariate polynomial with rational coefficients."""

    __slots__ = ("variables", "_t")

    def __init__(self, variables: Sequence[str], terms: Mapping | None = None):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("repeated variable name")
        self._t: dict = {}
        for exps, c in (terms or {}).items():
            if isinstance(exps, int):
                key = exps
            else:
                if len(exps) != len(self.variables):
                    raise ValueError("exponent vector has wrong length")
                key = _pack(exps)
            c = _norm(Fraction(c)) if not isinstance(c, int) else c
            if c:
                self._t[key] = self._t.get(key, 0) + c
        self._t = {k: c for k, c in self._t.items() if c}

    @classmethod
    def _raw(cls, variables: tuple, t: dict) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj.variables = variables
        obj._t = t
        return obj

    @classmethod
    def const(cls, variables: Sequence[str], c: Coeff) -> "MultiPoly":
        c = _norm(Fraction(c))
        return cls._raw(tuple(variables), {0: c} if c else {})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "MultiPoly":
        variables = tuple(variables)
        return cls._raw(variables, {1 << (_BITS * variables.index(name)): 1})

    @classmethod
    def gens(cls, variables: Sequence[str]) -> Tuple["MultiPoly", ...]:
        return tuple(cls.var(variables, v) for v in variables)

    @property
    def terms(self) -> Dict[Tuple[int, ...], Coeff]:
        n = len(self.variables)
        return {_unpack(k, n): c for k, c in self._t.items()}

    def is_zero(self) -> bool:
        return not self._t

    def degree(self, name: str) -> int:
        i = self.variables.index(name)
        return max(((k >> (_BITS * i)) & _MASK for k in self._t), default=0)

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise ValueError("polynomials live in different rings")
            return other
        return MultiPoly.const(self.variables, other)

    def __add__(self, other):
        o = self._coerce(other)
        return MultiPoly._raw(self.variables, _padd(self._t, o._t))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return MultiPoly._raw(self.variables, _padd(self._t, o._t, -1))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return MultiPoly._raw(self.variables, {k: -c for k, c in self._t.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MultiPoly._raw(self.variables, _pscale(self._t, _norm(Fraction(other))))
        o = self._coerce(other)
        return MultiPoly._raw(self.variables, _pmul(self._t, o._t))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        return MultiPoly._raw(self.variables, _ppow(self._t, e))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.variables, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.variables == other.variables and self._t == other._t

    def __hash__(self):
        return hash((self.variables, frozenset(self._t.items())))

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if not self._t:
            return "0"
        n = len(self.variables)
        parts = []
        for key in sorted(self._t, reverse=True):
            c = self._t[key]
            mono = "*".join(
                v if e == 1 else f"{v}^{e}"
                for v, e in zip(self.variables, _unpack(key, n)) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


class SquareRelationIdeal:
    """Ideal generated by aux^2 - r(base) for each aux variable.

    ``aux_relations`` maps an aux name to a MultiPoly over ``base_vars``.
    """

    def __init__(self, base_vars: Sequence[str], aux_relations: Mapping[str, MultiPoly]):
        self.base_vars = tuple(base_vars)
        self.aux_vars = tuple(aux_relations)
        if set(self.base_vars) & set(self.aux_vars):
            raise ValueError("a variable cannot be both base and aux")
        self.aux_relations = {}
        for a, r in aux_relations.items():
            if not set(_support(r)) <= set(self.base_vars):
                raise ValueError(f"relation for {a} uses a non-base variable")
            self.aux_relations[a] = _reindex(r, self.base_vars)
        self._r = [self.aux_relations[a]._t for a in self.aux_vars]

    @classmethod
    def from_generators(cls, variables: Sequence[str], gens: Iterable[MultiPoly]):
        """Build from generators of the form  +-(aux^2) + base-poly  as written
        in the listings, e.g. ``m^2+1-mp1^2``."""
        variables = tuple(variables)
        gens = list(gens)
        rels: Dict[str, MultiPoly] = {}
        supports = [set(_support(g)) for g in gens]
        for g in gens:
            aux_terms = [(e, c) for e, c in g.terms.items() if any(e) and _is_square_of_single(e)]
            # the aux variable is private to its generator: m in m^2+1-mp1^2 is shared
            # ties go to the "base - aux^2" shape
            aux_terms.sort(key=lambda ec: (sum(variables[next(j for j, x in enumerate(ec[0]) if x)] in sp
                                               for sp in supports), ec[1] > 0))
            found = None
            for e, c in aux_terms:
                i = next(j for j, x in enumerate(e) if x)
                name = variables[i]
                rest = g - MultiPoly(variables, {e: c})
                if name not in _support(rest) and abs(c) == 1:
                    found = (name, rest * (-Fraction(1) / c))
                    break
            if found is None:
                raise ValueError(f"generator {g} is not of square-relation shape")
            rels[found[0]] = found[1]
        base = [v for v in variables if v not in rels]
        for a, r in rels.items():
            if set(_support(r)) & set(rels):
                raise ValueError(f"relation for {a} involves another aux variable")
        return cls(base, {a: _reindex(r, base) for a, r in rels.items()})

    def all_vars(self) -> Tuple[str, ...]:
        return self.base_vars + self.aux_vars


def _is_square_of_single(e) -> bool:
    nz = [x for x in e if x]
    return len(nz) == 1 and nz[0] == 2


def _support(p: MultiPoly) -> list:
    n = len(p.variables)
    used = set()
    for k in p._t:
        for i, e in enumerate(_unpack(k, n)):
            if e:
                used.add(p.variables[i])
    return [v for v in p.variables if v in used]


def _reindex(p: MultiPoly, variables: Sequence[str]) -> MultiPoly:
    variables = tuple(variables)
    if p.variables == variables:
        return p
    n = len(p.variables)
    pos = []
    for v in p.variables:
        pos.append(variables.index(v) if v in variables else -1)
    out: dict = {}
    for k, c in p._t.items():
        key = 0
        for i, e in enumerate(_unpack(k, n)):
            if e:
                if pos[i] < 0:
                    raise ValueError(f"variable {p.variables[i]} missing from target ring")
                key |= e << (_BITS * pos[i])
        out[key] = out.get(key, 0) + c
    return MultiPoly._raw(variables, {k: c for k, c in out.items() if c})


class QElem:
    """Normal-form element of Q[base][aux]/(aux_i^2 - r_i)."""

    __slots__ = ("ideal", "parts")

    def __init__(self, ideal: SquareRelationIdeal, parts: Dict[int, dict]):
        self.ideal = ideal
        self.parts = parts

    @classmethod
    def const(cls, ideal, c: Coeff) -> "QElem":
        c = _norm(Fraction(c))
        return cls(ideal, {0: {0: c}} if c else {})

    @classmethod
    def var(cls, ideal, name: str) -> "QElem":
        if name in ideal.base_vars:
            return cls(ideal, {0: {1 << (_BITS * ideal.base_vars.index(name)): 1}})
        if name in ideal.aux_vars:
            return cls(ideal, {1 << ideal.aux_vars.index(name): {0: 1}})
        raise ValueError(f"unknown variable {name!r}")

    def is_zero(self) -> bool:
        return not self.parts

    def key(self):
        return tuple(sorted((m, tuple(sorted(p.items()))) for m, p in self.parts.items()))

    def leading_sign(self) -> int:
        if not self.parts:
            return 0
        m = max(self.parts)
        p = self.parts[m]
        return 1 if p[max(p)] > 0 else -1

    def _lift(self, other) -> "QElem":
        if isinstance(other, QElem):
            return other
        return QElem.const(self.ideal, other)

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self.parts)
        for m, p in o.parts.items():
            s = _padd(out.get(m, {}), p)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return QElem(self.ideal, out)

    __radd__ = __add__

    def __neg__(self):
        return QElem(self.ideal, {m: {k: -c for k, c in p.items()} for m, p in self.parts.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            s = _norm(Fraction(other))
            if not s:
                return QElem(self.ideal, {})
            return QElem(self.ideal, {m: _pscale(p, s) for m, p in self.parts.items()})
        o = self._lift(other)
        rel = self.ideal._r
        out: Dict[int, dict] = {}
        for ma, pa in self.parts.items():
            for mb, pb in o.parts.items():
                prod = _pmul(pa, pb)
                both = ma & mb
                i = 0
                while both:
                    if both & 1:
                        prod = _pmul(prod, rel[i])
                    both >>= 1
                    i += 1
                m = ma ^ mb
                s = _padd(out.get(m, {}), prod)
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return QElem(self.ideal, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power; use a fraction")
        result = QElem.const(self.ideal, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def to_multipoly(self) -> MultiPoly:
        I = self.ideal
        variables = I.all_vars()
        nb = len(I.base_vars)
        out: dict = {}
        for m, p in self.parts.items():
            shift = 0
            for i in range(len(I.aux_vars)):
                if (m >> i) & 1:
                    shift |= 1 << (_BITS * (nb + i))
            for k, c in p.items():
                out[k | shift] = c
        return MultiPoly._raw(variables, out)

    def __str__(self):
        return str(self.to_multipoly())


def to_quotient(p: MultiPoly, I: SquareRelationIdeal) -> QElem:
    """Map a MultiPoly into normal form, substituting aux squares."""
    known = set(I.all_vars())
    for v in p.variables:
        if v not in known:
            raise ValueError(f"variable {v!r} is neither a base nor an aux variable of the ideal")
    n = len(p.variables)
    base_pos = {v: i for i, v in enumerate(I.base_vars)}
    aux_pos = {v: i for i, v in enumerate(I.aux_vars)}
    pow_cache: Dict[Tuple[int, int], dict] = {}
    out: Dict[int, dict] = {}
    for k, c in p._t.items():
        exps = _unpack(k, n)
        bkey = 0
        mask = 0
        poly = {0: c}
        for v, e in zip(p.variables, exps):
            if not e:
                continue
            if v in base_pos:
                bkey += e << (_BITS * base_pos[v])
            else:
                j = aux_pos[v]
                q, r = divmod(e, 2)
                if r:
                    mask |= 1 << j
                if q:
                    if (j, q) not in pow_cache:
                        pow_cache[(j, q)] = _ppow(I._r[j], q)
                    poly = _pmul(poly, pow_cache[(j, q)])
        poly = {kk + bkey: cc for kk, cc in poly.items()}
        s = _padd(out.get(mask, {}), poly)
        if s:
            out[mask] = s
        else:
            out.pop(mask, None)
    return QElem(I, out)


def reduce_in_quotient(p: MultiPoly, I: SquareRelationIdeal) -> MultiPoly:
    """Normal form of ``p`` modulo the square relations of ``I``.

    The result lives in the ring of ``p``; it is zero iff ``p`` is in the ideal.
    """
    nf = to_quotient(p, I).to_multipoly()
    return _reindex(nf, p.variables)


# ---------------------------------------------------------------------------
# numeric side

def default_tolerance() -> float:
    """Verification tolerance, overridable through ``HCALG_TOLERANCE``."""
    raw = os.environ.get(TOLERANCE_ENV)
    if raw is None or raw == "":
        return DEFAULT_TOLERANCE
    tol = float(raw)
    if not tol > 0:
        raise ValueError(f"{TOLERANCE_ENV} must be positive, got {raw!r}")
    return tol


def as_complex_scalar(x) -> complex:
    z = complex(x)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite scalar {x!r}")
    return z


def approx_zero(x, scale: float, tol: float) -> bool:
    if not tol > 0:
        raise ValueError("tol must be positive")
    return abs(complex(x)) <= tol * max(1.0, scale)


def principal_sqrt(x) -> complex:
    return cmath.sqrt(complex(x))
