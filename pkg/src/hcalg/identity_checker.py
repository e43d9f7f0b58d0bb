"""Exact identity suites over quotient rings Q[base][aux]/(aux^2 - r).

Rational functions are kept as a numerator over a product of denominator
factors.  Adding two of them uses the least common multiple of the factor
lists, so long sums of fractions with few distinct denominators stay small.
A suite passes when every numerator has normal form 0.  Every denominator
factor is checked to be nonzero in normal form when it is created; the
quotient rings here are field extensions of Q(base), so a fraction with a
nonzero denominator vanishes exactly when its numerator does.

The verification listings are stored as Magma source and executed by a small
interpreter built on ``ast``.
"""
from __future__ import annotations

import ast
import re
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .core_arith import MultiPoly, QElem, SquareRelationIdeal
from .relation_verifier import VerificationReport


class DenominatorVanishes(ZeroDivisionError):
    """A denominator reduced to 0 in the quotient ring (misencoded relation)."""


# -- rational functions with factored denominators ----------------------------

def _content(q: QElem) -> Fraction:
    """Positive rational c such that q / c has coprime integer coefficients."""
    nums, dens = [], []
    for p in q.parts.values():
        for c in p.values():
            c = Fraction(c)
            nums.append(abs(c.numerator))
            dens.append(c.denominator)
    if not nums:
        return Fraction(1)
    g = reduce(gcd, nums)
    l = reduce(lambda a, b: a * b // gcd(a, b), dens)
    return Fraction(g, l)


def _normal_factor(q: QElem) -> Tuple[Fraction, QElem]:
    """Split q = s * f with s rational and f primitive with positive leading term."""
    c = _content(q)
    if q.leading_sign() < 0:
        c = -c
    return c, q * (1 / c)


@dataclass
class RatFunc:
    """num / prod(f^e) over the factors in ``den`` (keyed by normal form)."""
    ideal: SquareRelationIdeal
    num: QElem
    den: Dict[tuple, Tuple[QElem, int]] = field(default_factory=dict)

    @classmethod
    def const(cls, ideal, c) -> "RatFunc":
        return cls(ideal, QElem.const(ideal, Fraction(c)))

    @classmethod
    def var(cls, ideal, name: str) -> "RatFunc":
        return cls(ideal, QElem.var(ideal, name))

    def _lift(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc.const(self.ideal, other)
        raise TypeError(f"cannot combine RatFunc with {type(other).__name__}")

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def denominator(self) -> QElem:
        out = QElem.const(self.ideal, 1)
        for f, e in self.den.values():
            out = out * f ** e
        return out

    def _scaled_num(self, target: Mapping[tuple, Tuple[QElem, int]]) -> QElem:
        out = self.num
        for k, (f, e) in target.items():
            mine = self.den.get(k, (f, 0))[1]
            if e > mine:
                out = out * f ** (e - mine)
        return out

    def __add__(self, other):
        o = self._lift(other)
        if not self.den and not o.den:
            return RatFunc(self.ideal, self.num + o.num)
        lcm = dict(self.den)
        for k, (f, e) in o.den.items():
            if k not in lcm or lcm[k][1] < e:
                lcm[k] = (f, e)
        return RatFunc(self.ideal, self._scaled_num(lcm) + o._scaled_num(lcm), lcm)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.ideal, -self.num, dict(self.den))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        den = dict(self.den)
        for k, (f, e) in o.den.items():
            den[k] = (f, den.get(k, (f, 0))[1] + e)
        return RatFunc(self.ideal, self.num * o.num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise DenominatorVanishes("division by an expression that reduces to 0")
        s, f = _normal_factor(self.num)
        num = QElem.const(self.ideal, 1 / s)
        for g, e in self.den.values():
            num = num * g ** e
        if f.key() == QElem.const(self.ideal, 1).key():
            return RatFunc(self.ideal, num)
        return RatFunc(self.ideal, num, {f.key(): (f, 1)})

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            raise TypeError("only integer powers")
        if e < 0:
            return self.inverse() ** (-e)
        return RatFunc(self.ideal, self.num ** e, {k: (f, m * e) for k, (f, m) in self.den.items()})

    def numerator(self) -> "RatFunc":
        return RatFunc(self.ideal, self.num)


def numerator_size(r: RatFunc) -> int:
    return sum(len(p) for p in r.num.parts.values())


# -- identity suites ----------------------------------------------------------

@dataclass
class IdentitySuite:
    """Named expressions over one quotient ring; each must vanish."""
    name: str
    ideal: SquareRelationIdeal
    expressions: List[Tuple[str, RatFunc]]
    info: Dict[str, object] = field(default_factory=dict)


def run_suite(s: IdentitySuite) -> VerificationReport:
    """Residual of an entry is the number of terms left in its reduced numerator."""
    report = VerificationReport(s.name, None, info=dict(s.info))
    for label, expr in s.expressions:
        size = numerator_size(expr)
        report.add(label, size, size == 0)
    return report


# -- a small interpreter for the Magma listings -------------------------------

_ASSIGN = re.compile(r"^\s*([A-Za-z_]\w*)\s*:=\s*(.+)$", re.S)
_RING = re.compile(r"^\s*(?:[A-Za-z_]\w*)?\s*<([^>]*)>\s*:=\s*PolynomialRing\(", re.S)
_IDEAL = re.compile(r"^\s*([A-Za-z_]\w*)\s*:=\s*ideal\s*<\s*\w+\s*\|(.*)>\s*$", re.S)
_MEMBER = re.compile(r"^\s*(.+?)\s+in\s+([A-Za-z_]\w*)\s*$", re.S)


class _Eval(ast.NodeVisitor):
    def __init__(self, env: Mapping[str, object], funcs: Mapping[str, object]):
        self.env = env
        self.funcs = funcs

    def generic_visit(self, node):
        raise SyntaxError(f"unsupported syntax: {ast.dump(node)}")

    def visit_Expression(self, node):
        return self.visit(node.body)

    def visit_Constant(self, node):
        if isinstance(node.value, int):
            return node.value
        raise SyntaxError(f"unsupported constant {node.value!r}")

    def visit_Name(self, node):
        if node.id not in self.env:
            raise NameError(f"undefined name {node.id!r}")
        return self.env[node.id]

    def visit_UnaryOp(self, node):
        v = self.visit(node.operand)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
        return self.generic_visit(node)

    def visit_BinOp(self, node):
        a, b = self.visit(node.left), self.visit(node.right)
        op = node.op
        if isinstance(op, ast.Add):
            return a + b
        if isinstance(op, ast.Sub):
            return a - b
        if isinstance(op, ast.Mult):
            return a * b
        if isinstance(op, ast.Div):
            if isinstance(a, int) and isinstance(b, int):
                return Fraction(a, b)
            return a / b
        if isinstance(op, ast.Pow):
            if not isinstance(b, int):
                raise SyntaxError("exponent must be an integer literal")
            return a ** b
        return self.generic_visit(node)

    def visit_Call(self, node):
        if not isinstance(node.func, ast.Name) or node.func.id not in self.funcs:
            raise SyntaxError("unsupported call")
        return self.funcs[node.func.id](*[self.visit(a) for a in node.args])


def _py(expr: str) -> ast.Expression:
    return ast.parse("(" + expr.replace("^", "**").strip() + ")", mode="eval")


@dataclass
class ListingResult:
    name: str
    checks: List[Tuple[str, RatFunc]]
    ideal: SquareRelationIdeal
    variables: Tuple[str, ...]
    env: Dict[str, RatFunc]


def run_listing(name: str, source: str) -> ListingResult:
    """Execute a listing.  ``X in Ideal`` and a bare ``Numerator(X)`` become checks."""
    variables: Tuple[str, ...] = ()
    ideal: Optional[SquareRelationIdeal] = None
    ideal_name = None
    env: Dict[str, object] = {}
    checks: List[Tuple[str, RatFunc]] = []
    funcs = {"Numerator": lambda r: r.numerator()}

    def ensure_ideal():
        nonlocal ideal
        if ideal is None and not variables:
            raise SyntaxError(f"listing {name} uses a value before declaring a ring")
        if ideal is None:
            ideal = SquareRelationIdeal(variables, {})
            for v in variables:
                env[v] = RatFunc.var(ideal, v)

    for stmt in (s.strip() for s in source.split(";")):
        if not stmt:
            continue
        m = _RING.match(stmt)
        if m:
            variables = tuple(v.strip() for v in m.group(1).split(","))
            continue
        m = _IDEAL.match(stmt)
        if m:
            gens_env = dict(zip(variables, MultiPoly.gens(variables)))
            gens = [_Eval(gens_env, {}).visit(_py(g)) for g in m.group(2).split(",")]
            ideal = SquareRelationIdeal.from_generators(variables, gens)
            ideal_name = m.group(1)
            for v in variables:
                env[v] = RatFunc.var(ideal, v)
            continue
        m = _MEMBER.match(stmt)
        if m and m.group(2) == ideal_name:
            ensure_ideal()
            checks.append((m.group(1).strip(), _Eval(env, funcs).visit(_py(m.group(1)))))
            continue
        m = _ASSIGN.match(stmt)
        if m:
            rhs = m.group(2).strip()
            if re.match(r"^(IntegerRing|RationalField)\(\)$", rhs):
                continue
            ensure_ideal()
            env[m.group(1)] = _Eval(env, funcs).visit(_py(rhs))
            continue
        if stmt.startswith("Numerator("):
            ensure_ideal()
            checks.append((stmt, _Eval(env, funcs).visit(_py(stmt))))
            continue
        raise SyntaxError(f"cannot interpret statement {stmt!r} in listing {name}")
    if ideal is None:
        raise SyntaxError(f"listing {name} declares no ring")
    return ListingResult(name, checks, ideal, variables, env)


def listing_suite(name: str, source: str, info: Optional[dict] = None) -> IdentitySuite:
    res = run_listing(name, source)
    meta = {"variables": list(res.variables), "aux": list(res.ideal.aux_vars)}
    meta.update(info or {})
    return IdentitySuite(name, res.ideal, res.checks, meta)


# -- the listings, transcribed -----------------------------------------------

KAPPA_LISTING = """
C := IntegerRing();  R<m,p,mmp,mp1,mmpp1,mmpm1> := PolynomialRing(C,6);
Ideal := ideal<R|m^2-1-p-mmpm1^2,  m^2+1-mp1^2, m^2+1-p-mmpp1^2, m^2-p-mmp^2>;
k1k1p:=m*mp1*mmp*mmpp1;  k0k0p:=p*k1k1p;
sumk1square:=m^2*(m^2+1)+(m^2-p)*(m^2-p+1);
kappasquare:=m^2*(p+1)*(m^2-p+1);
Q1:=(sumk1square+2*k1k1p)*(2*kappasquare-2*k0k0p-2*k1k1p);
M1:=p*(p+1)*(2*kappasquare-2*k0k0p+2*k1k1p);
F:= Q1-M1;  F in Ideal;
Q2:=(sumk1square+2*k1k1p)*(2*kappasquare+2*k0k0p-2*k1k1p);
M2:=(p*(p+1)+4*(m^2+1)*(m^2-p)*p/(1+p))*(2*kappasquare+2*k0k0p+2*k1k1p);
G:=Q2-M2;  Numerator(G) in Ideal;
"""

BLOCK_LISTING = """
Q:=RationalField(); <m,p>:=PolynomialRing(Q,2);
k0:=m*p*(m-p); k1:=m*(m+1); k:=k0+k1; k3:=k0+p*k1;
x:=(k-2*k1-2*k0*k1*(p-1)/k3)^2-p*(p+1)*k-p*(p+1)*k*k0*k1*(p-1)^2/k3^2;
Numerator(x);
"""

S1_HEADER = """
C := IntegerRing();  R<m,p,mmp,mp1,n,np1,mmpp1,mmpm1,mm1> := PolynomialRing(C,9);
Ideal := ideal<R|m^2-1-mm1^2, m^2-1-p^2-mmpm1^2,  m^2+1-mp1^2,  n^2+1-np1^2,
m^2+1-p^2-mmpp1^2, m^2-p^2-mmp^2>;
N:=n*np1;
"""

S1_PATHS = {
    "L1": """k0:=(m*p*(mmp));  k1:=(n*(np1));  k2:=(m*(mp1));
k0p:=k0;  k1p:=k1;  k0pp:=((mp1)*p*(mmpp1));  k2pp:=((mmp)*(mmpp1));""",
    "L2": """k0:=(m*p*(mmp)); k1:=(m*(mp1)); k2:=(n*(np1)); k0pp:=k0;
k2pp:=k2; k0p:=((mp1)*p*(mmpp1)); k1p:=((mmp)*(mmpp1));""",
    "L3": """k0:=((mp1)*p*(mmpp1)); k1:=((mmp)*(mmpp1)); k2:=(n*(np1)); k0pp:=k0;
k2pp:=k2; k0p:=(m*p*(mmp)); k1p:=(m*(mp1));""",
    "L4": """k2:=((mmp)*(mmpp1)); k0:=((mp1)*p*(mmpp1)); k1:=(N);
k0pp:=(m*p*(mmp)); k2pp:=(m*(mp1)); k0p:=k0; k1p:=k1;""",
    "T2": """k2:=(m*(mp1)); k0:=((m)*p*(mmp)); k1:=((mmpm1)*(mmp)); k0p:=((mm1)*p*(mmpm1));
k1p:=(m*(mm1)); k0pp:=((mp1)*p*(mmpp1)); k2pp:=((mmp)*(mmpp1));""",
    "T3": """k2:=((mmp)*(mmpm1)); k0p:=((mp1)*p*(mmpp1)); k1p:=((mmpp1)*(mmp));
k0:=(m*p*(mmp)); k1:=(m*(mp1)); k0pp:=((mm1)*p*(mmpm1)); k2pp:=((m)*(mm1));""",
}

S1_BODY = """
alpha:=-1/(k1-k2);  beta:=1/(k1+k2);  alpha1:=-1/(k2-k1);  beta1:=1/(k1+k2);
alpha2:=-1/(k2pp-k1);  beta2:=1/(k2pp+k1);
alphap:=-1/(k1p-k2);  betap:=1/(k1p+k2);
A:=k0-k0p;  B:=k1+k1p;  F:=k0-k0pp;  G:=k2+k2pp;
delta:=(-N^2+k1*k1)*k0/(k0*k0+p^2*k1*k1);
delta1:=(-N^2+k2*k2)*k0/(k0*k0+p^2*k2*k2);
gamma:=(N^2*p^2+k0*k0)*k1/(k0*k0+p^2*k1*k1);
 gamma1:=(N^2*p^2+k0*k0)*k2/(k0*k0+p^2*k2*k2);
M:=-(k0*k0+p^2*p^2*k2*k2)*(N^2-k2*k2)*(N^2-k2pp*k2pp)/
((k0*k0+p^2*k2*k2)*(k0*k0+p^2*k2*k2)*((k0-k0pp)*(k0-k0pp)+(k2+k2pp)*(k2+k2pp)));
K:=-(k0*k0+p^2*p^2*k1*k1)*(N^2-k1*k1)*(N^2-k1p*k1p)/
((k0*k0+p^2*k1*k1)*(k0*k0+p^2*k1*k1)*((k0-k0p)*(k0-k0p)+(k1+k1p)*(k1+k1p)));
C0:=-beta*gamma*gamma1-alpha*delta*delta1-delta1*delta1*alpha1
-gamma1*gamma1*beta1-gamma*gamma*beta-delta*delta*alpha-delta*delta1*alpha1
-gamma*gamma1*beta1+M*(-F*F*beta2-G*G*alpha2)
-K*(A*A*betap+B*B*alphap)+gamma1+gamma;
C3:=M*(-F^2*beta2-G^2*alpha2)-K*(A^2*betap+B^2*alphap)-gamma*beta*gamma1
-alpha*delta*delta1-gamma1^2*beta1-delta1^2*alpha1-gamma^2*beta-delta^2*alpha
-delta*delta1*alpha1-gamma*gamma1*beta1+gamma1+gamma;
C2:=M*(-G*F*beta2+G*F*alpha2)-K*(B*A*alphap-A*B*betap)+beta*delta*gamma1
+alpha*gamma*delta1-delta1*beta1*gamma1+gamma1*alpha1*delta1-delta*alpha*gamma
+gamma*beta*delta-delta*gamma1*alpha1-gamma*delta1*beta1+delta1-delta;
C1:=M*(G*F*alpha2-G*F*beta2)-K*(-A*B*betap+B*A*alphap)+alpha*delta*gamma1
-gamma*beta*delta1+delta1*alpha1*gamma1-gamma1*beta1*delta1+delta*beta*gamma
-gamma*alpha*delta-gamma*delta1*alpha1+delta*gamma1*beta1+delta1-delta;
Numerator(C0) in Ideal;  Numerator(C1) in Ideal;
Numerator(C2) in Ideal;  Numerator(C3) in Ideal;
"""

X1_LISTING = """
C := IntegerRing();  R<m,p,mmp,mp1,mmpp1> := PolynomialRing(C,5);
Ideal := ideal<R|m^2+1-mp1^2, m^2+1-p^2-mmpp1^2, m^2-p^2-mmp^2>;
k0:=m*p*mmp; k1:=m*mp1; k0p:=mp1*p*mmpp1; k1p:=mmp*mmpp1;
ksquare:=m^2*(p^2+1)*mmpp1^2; k1sum:=m^2*(m^2+1)+mmp^2*mmpp1^2;
denom:=k0*k1-k0p*k1p;
a1:=-p^2*(p^2+1)+ 2*k0*k1*(2*k1^2/ksquare+2*k0*k1*(ksquare-k1sum)/ksquare/denom)
*(k1sum-p^2*(p^2+1))/denom
+(1-(ksquare-k1sum)/denom*(k1sum-p^2*(p^2+1))/denom)
*(p^2*(p^2+1)+4*(m^2+1)*(m^2-p^2)*p^2/(1+p^2))
+2*k1^2-2*k0*k1*(k1sum-p^2*(p^2+1))/denom-(-p^2*(p^2+1)+2*k1^2)
*(2*k1^2/ksquare+2*k0*k1/ksquare*(ksquare-k1sum)/denom);
Numerator(a1) in Ideal;
a2:=1+(2*k1^2/ksquare+2*k0*k1*(ksquare-k1sum)/denom/ksquare)^2
-1/ksquare*(p^2*(p^2+1)+4*(m^2+1)*(m^2-p^2)*p^2/(p^2+1))
-2*(2*k1^2/ksquare+2*k0*k1*(ksquare-k1sum)/denom/ksquare);
b2:=(2*m^2-p^2+1)^2*(m^2-p^2)*(m^2+1)/(p^2+1)^2/(m^2+1-p^2)/m^2;
Numerator(a2-b2) in Ideal;
a0:=k1^4+(2*k0*k1*(k1sum-p^2*(p^2+1))/(2*denom))^2
-ksquare*((k1sum-p^2*(p^2+1))/(2*denom))^2*(p^2*(p^2+1)
+4*(m^2+1)*(m^2-p^2)*p^2/(p^2+1))
-p^2*(p^2+1)*k1^2-(-p^2*(p^2+1)+2*k1^2)*(2*k0*k1*(k1sum-p^2*(p^2+1))/(2*denom));
b0:=-4*p^4*m^2*(m^2+1)*(m^2-p^2)*(m^2-p^2+1)/(p^2-1)^2;
Numerator(a0-b0) in Ideal;
"""

S1_PATH_NAMES = tuple(S1_PATHS)


def s1_listing(path: str) -> str:
    if path not in S1_PATHS:
        raise KeyError(f"unknown path {path!r}; expected one of {', '.join(S1_PATHS)}")
    return S1_HEADER + S1_PATHS[path] + S1_BODY


def listing_suite_builders() -> List[Tuple[str, object]]:
    """(name, thunk) per listing; the s1 listing is run once per path."""
    out: List[Tuple[str, object]] = [
        ("kappa relations listing", lambda: listing_suite("kappa relations listing", KAPPA_LISTING)),
        ("upper-left block listing", lambda: listing_suite("upper-left block listing", BLOCK_LISTING)),
    ]
    for path in S1_PATHS:
        name = f"s1 coefficient listing, path {path}"
        out.append((name, lambda name=name, path=path: listing_suite(name, s1_listing(path), {"path": path})))
    out.append(("x1 coefficient listing", lambda: listing_suite("x1 coefficient listing", X1_LISTING)))
    return out


def listing_suites() -> List[IdentitySuite]:
    return [build() for _, build in listing_suite_builders()]


# -- kappa identities stated directly ------------------------------------------

def _kappa_ring():
    """sm, sp, ... are square roots: sm^2 = m, sp^2 = p, smp^2 = m - p and so on."""
    base = ("m", "p", "N0")
    mp = MultiPoly.gens(base)
    m, p, _ = mp
    aux = {
        "sm": m, "sp": p, "smp": m - p, "smp1": m + 1, "smpp1": m - p + 1,
    }
    return SquareRelationIdeal(base, aux)


def kappa_symbols():
    I = _kappa_ring()
    v = {name: RatFunc.var(I, name) for name in I.all_vars()}
    k0 = v["sm"] * v["sp"] * v["smp"]
    k1 = v["sm"] * v["smp1"]
    k0p = v["smp1"] * v["sp"] * v["smpp1"]
    k1p = v["smp"] * v["smpp1"]
    return I, v, (k0, k1, k0p, k1p)


def kappa_identity_suite(perturb: bool = False) -> IdentitySuite:
    """Every kappa identity and the three forms of c, as expressions that must vanish.

    kappa_0 = sqrt(m p (m-p)), kappa_1 = sqrt(m (m+1)) for T and
    kappa_0' = sqrt((m+1) p (m-p+1)), kappa_1' = sqrt((m-p)(m-p+1)) for s_0.T.
    With ``perturb`` the first identity is shifted by 1 (negative control).
    """
    I, v, (k0, k1, k0p, k1p) = kappa_symbols()
    m, p, N0 = v["m"], v["p"], v["N0"]
    ksq = k0 ** 2 + k1 ** 2
    a = k0 ** 2 + p ** 2 * k1 ** 2
    ap = k0p ** 2 + p ** 2 * k1p ** 2
    ex: List[Tuple[str, RatFunc]] = []
    first = ksq - (k0p ** 2 + k1p ** 2)
    if perturb:
        first = first + 1
    ex.append(("sum of squares agrees for T and s0.T", first))
    ex.append(("quartic relation", k0 ** 4 + p ** 2 * k1 ** 4 - p ** 3 * (p + 1) * k1 ** 2
               - p * (p + 1) * k0 ** 2 - 2 * p * k0 ** 2 * k1 ** 2))
    # primed values from unprimed, squared; unprimed from primed, squared
    ex.append(("kappa_0' squared from T", k0p ** 2 - p ** 2 * k1 ** 2 * ksq / a))
    ex.append(("kappa_1' squared from T", k1p ** 2 - k0 ** 2 * ksq / a))
    ex.append(("kappa_0 squared from s0.T", k0 ** 2 - p ** 2 * k1p ** 2 * ksq / ap))
    ex.append(("kappa_1 squared from s0.T", k1 ** 2 - k0p ** 2 * ksq / ap))
    # the unsquared forms: both sides carry the same sign, checked through the products
    ex.append(("kappa_0 kappa_0' = p kappa_1 kappa_1'", k0 * k0p - p * k1 * k1p))
    ex.append(("p(p+1) identity",
               p * (p + 1) - (k1 + k1p) ** 2 * ((k0 - k0p) ** 2 + (k1 - k1p) ** 2)
               / ((k0 - k0p) ** 2 + (k1 + k1p) ** 2)))
    ex.append(("shifted p(p+1) identity",
               p * (p + 1) + 4 * (m + 1) * (m - p) * p / (1 + p)
               - (k1 + k1p) ** 2 * ((k0 + k0p) ** 2 + (k1 - k1p) ** 2)
               / ((k0 + k0p) ** 2 + (k1 + k1p) ** 2)))
    c1 = (2 * N0 / ksq * (ksq - k1 ** 2 - k1p ** 2) + (k1 ** 2 + k1p ** 2 - p * (p + 1))) \
        / (2 * (k0 * k1 + k0p * k1p))
    c2 = k0 * k1 / (k0 ** 2 + p * k1 ** 2) * (N0 / ksq * (p - 1) + 1)
    c3 = k0p * k1p / (k0p ** 2 + p * k1p ** 2) * (N0 / ksq * (p - 1) + 1)
    ex.append(("c: first form = second form", c1 - c2))
    ex.append(("c: second form = third form", c2 - c3))
    ex.append(("c: first form = third form", c1 - c3))
    # the equivalent form of the condition on f, built on c
    ex.append(("condition on f through c",
               N0 - N0 ** 2 / ksq - c2 ** 2 * ksq
               + a / (k0 ** 2 + p * k1 ** 2) ** 2 * (N0 - k1 ** 2) * (N0 - k1p ** 2)))
    name = "kappa identities" + (" (perturbed)" if perturb else "")
    return IdentitySuite(name, I, ex, {"aux": list(I.aux_vars)})


def kappa_report(perturb: bool = False) -> VerificationReport:
    return run_suite(kappa_identity_suite(perturb))


def run_all(include_kappa: bool = True) -> List[VerificationReport]:
    """Every listing suite plus the kappa suite, each with its run time in info."""
    builders = listing_suite_builders()
    if include_kappa:
        builders.append(("kappa identities", kappa_identity_suite))
    out = []
    for _, build in builders:
        t0 = time.perf_counter()
        r = run_suite(build())
        r.info["seconds"] = round(time.perf_counter() - t0, 3)
        out.append(r)
    return out
