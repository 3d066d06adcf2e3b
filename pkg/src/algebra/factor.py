"""
Factorization and gcds over finite fields.

Univariate polynomials are dense coefficient lists, constant term first,
with no trailing zeros. Univariate factorization is the classical chain:
squarefree split, distinct-degree split, then Cantor–Zassenhaus
equal-degree splitting with a seeded generator. Bivariate gcds run the
primitive pseudo-remainder sequence in F_q[x][y].
"""

import itertools
import logging
import random
from typing import Dict, List, Sequence, Tuple

from src.algebra.fields import FieldDescriptor
from src.algebra.poly import MultiPoly, variable_monomials
from src.errors import NotDivisible, SchemaError, ZeroPolynomial

logger = logging.getLogger(__name__)

UPoly = List[int]


# ── univariate arithmetic ───────────────────────────────────────────────


def _trim(a: UPoly) -> UPoly:
    while a and a[-1] == 0:
        a.pop()
    return a


def _deg(a: UPoly) -> int:
    return len(a) - 1


def _add(F: FieldDescriptor, a: UPoly, b: UPoly) -> UPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return _trim(out)


def _sub(F: FieldDescriptor, a: UPoly, b: UPoly) -> UPoly:
    return _add(F, a, [F.neg(c) for c in b])


def _mul(F: FieldDescriptor, a: UPoly, b: UPoly) -> UPoly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return _trim(out)


def _scale(F: FieldDescriptor, a: UPoly, c: int) -> UPoly:
    return _trim([F.mul(x, c) for x in a])


def _monic(F: FieldDescriptor, a: UPoly) -> UPoly:
    if not a:
        return a
    return _scale(F, a, F.inv(a[-1]))


def _divmod(F: FieldDescriptor, a: UPoly, b: UPoly) -> Tuple[UPoly, UPoly]:
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(a)
    db = _deg(b)
    inv = F.inv(b[-1])
    q = [0] * max(len(a) - db, 0)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if c:
            c = F.mul(c, inv)
            q[i - db] = c
            for j in range(db + 1):
                r[i - db + j] = F.sub(r[i - db + j], F.mul(c, b[j]))
    return _trim(q), _trim(r[:db])


def _mod(F: FieldDescriptor, a: UPoly, b: UPoly) -> UPoly:
    return _divmod(F, a, b)[1]


def _gcd(F: FieldDescriptor, a: UPoly, b: UPoly) -> UPoly:
    a, b = list(a), list(b)
    while b:
        a, b = b, _mod(F, a, b)
    return _monic(F, a)


def _derivative(F: FieldDescriptor, a: UPoly) -> UPoly:
    return _trim([F.mul(F.from_int(i), c) for i, c in enumerate(a)][1:])


def _powmod(F: FieldDescriptor, a: UPoly, n: int, m: UPoly) -> UPoly:
    result: UPoly = [1]
    base = _mod(F, a, m)
    while n:
        if n & 1:
            result = _mod(F, _mul(F, result, base), m)
        base = _mod(F, _mul(F, base, base), m)
        n >>= 1
    return result


def _pth_root(F: FieldDescriptor, a: UPoly) -> UPoly:
    power = F.p ** (F.k - 1)
    return _trim([F.pow(a[i], power) for i in range(0, len(a), F.p)])


def _eval(F: FieldDescriptor, a: UPoly, x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


# ── univariate factorization ────────────────────────────────────────────


def _squarefree(F: FieldDescriptor, f: UPoly) -> List[Tuple[UPoly, int]]:
    """Monic squarefree factors with multiplicities (Yun-style, char p)."""
    out: List[Tuple[UPoly, int]] = []
    if _deg(f) < 1:
        return out
    df = _derivative(F, f)
    if not df:
        for g, e in _squarefree(F, _pth_root(F, f)):
            out.append((g, e * F.p))
        return out
    c = _gcd(F, f, df)
    w = _divmod(F, f, c)[0]
    i = 1
    while _deg(w) > 0:
        y = _gcd(F, w, c)
        z = _divmod(F, w, y)[0]
        if _deg(z) > 0:
            out.append((_monic(F, z), i))
        i += 1
        w = y
        c = _divmod(F, c, y)[0]
    if _deg(c) > 0:
        for g, e in _squarefree(F, _pth_root(F, c)):
            out.append((g, e * F.p))
    return out


def _distinct_degree(F: FieldDescriptor, f: UPoly) -> List[Tuple[UPoly, int]]:
    out = []
    x = [0, 1]
    h = list(x)
    i = 1
    while 2 * i <= _deg(f):
        h = _powmod(F, h, F.order, f)
        g = _gcd(F, f, _sub(F, h, x))
        if _deg(g) > 0:
            out.append((g, i))
            f = _divmod(F, f, g)[0]
            h = _mod(F, h, f)
        i += 1
    if _deg(f) > 0:
        out.append((_monic(F, f), _deg(f)))
    return out


def _equal_degree(F: FieldDescriptor, f: UPoly, d: int, rng: random.Random) -> List[UPoly]:
    n = _deg(f)
    if n == d:
        return [_monic(F, f)]
    q = F.order
    while True:
        a = _trim([rng.randrange(q) for _ in range(n)])
        if _deg(a) < 1:
            continue
        if F.p == 2:
            # absolute trace to F_2 of the residue ring element a
            t, s = list(a), list(a)
            for _ in range(F.k * d - 1):
                t = _mod(F, _mul(F, t, t), f)
                s = _add(F, s, t)
            b = s
        else:
            b = _sub(F, _powmod(F, a, (q**d - 1) // 2, f), [1])
        g = _gcd(F, f, b)
        if 0 < _deg(g) < n:
            rest = _divmod(F, f, g)[0]
            return _equal_degree(F, g, d, rng) + _equal_degree(F, rest, d, rng)


def factor_coeffs(F: FieldDescriptor, coeffs: Sequence[int], seed: int = 0) -> List[Tuple[UPoly, int]]:
    """Monic irreducible factors of a dense univariate polynomial, sorted."""
    f = _trim(list(coeffs))
    if not f:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    rng = random.Random(seed)
    out: List[Tuple[UPoly, int]] = []
    for part, e in _squarefree(F, _monic(F, f)):
        for block, d in _distinct_degree(F, part):
            for irreducible in _equal_degree(F, block, d, rng):
                out.append((irreducible, e))
    out.sort(key=lambda t: (len(t[0]), t[0], t[1]))
    return out


def univar_factor(f: MultiPoly, seed: int = 0) -> List[Tuple[MultiPoly, int]]:
    """Irreducible factors with multiplicities, up to the leading unit."""
    name = _single_variable(f)
    factors = factor_coeffs(f.field, f.univariate_coeffs(name), seed)
    return [(MultiPoly.from_univariate(f.field, f.vars, name, g), e) for g, e in factors]


def _single_variable(f: MultiPoly) -> str:
    used = [name for i, name in enumerate(f.vars) if any(e[i] for e in f.terms)]
    if len(used) > 1:
        raise SchemaError(f"{f} is not univariate")
    return used[0] if used else f.vars[0]


def find_roots(F: FieldDescriptor, coeffs: Sequence[int]) -> List[int]:
    """All roots in F by exhaustive evaluation, in element order."""
    coeffs = _trim(list(coeffs))
    if not coeffs:
        raise ZeroPolynomial("every element is a root of zero")
    return [x for x in F.elements() if _eval(F, coeffs, x) == 0]


# ── bivariate gcd and radical ───────────────────────────────────────────

BiPoly = Dict[int, UPoly]  # y-degree -> coefficient in F[x]


def _to_bivariate(f: MultiPoly) -> BiPoly:
    out: BiPoly = {}
    for (i, j), c in f.terms.items():
        coeff = out.setdefault(j, [])
        if len(coeff) <= i:
            coeff.extend([0] * (i + 1 - len(coeff)))
        coeff[i] = c
    return {j: _trim(c) for j, c in out.items() if _trim(c)}


def _from_bivariate(F: FieldDescriptor, vars, P: BiPoly) -> MultiPoly:
    terms = {}
    for j, coeff in P.items():
        for i, c in enumerate(coeff):
            if c:
                terms[(i, j)] = c
    return MultiPoly(F, vars, terms)


def _content(F: FieldDescriptor, P: BiPoly) -> UPoly:
    g: UPoly = []
    for coeff in P.values():
        g = _gcd(F, g, coeff)
        if _deg(g) == 0:
            break
    return g


def _primitive(F: FieldDescriptor, P: BiPoly) -> BiPoly:
    c = _content(F, P)
    return {j: _divmod(F, coeff, c)[0] for j, coeff in P.items()}


def _prem(F: FieldDescriptor, A: BiPoly, B: BiPoly) -> BiPoly:
    dB = max(B)
    lcB = B[dB]
    A = dict(A)
    while A and max(A) >= dB:
        dA = max(A)
        lcA = A[dA]
        shift = dA - dB
        out: BiPoly = {}
        for j, coeff in A.items():
            out[j] = _mul(F, coeff, lcB)
        for j, coeff in B.items():
            out[j + shift] = _sub(F, out.get(j + shift, []), _mul(F, coeff, lcA))
        A = {j: c for j, c in out.items() if c}
    return A


def bivariate_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Monic gcd in F_q[x, y] (leading coefficient 1 in grevlex)."""
    if f.nvars != 2 or g.nvars != 2:
        raise SchemaError("bivariate_gcd needs polynomials in two variables")
    F = f.field
    if f.is_zero:
        return g.monic()
    if g.is_zero:
        return f.monic()
    A, B = _to_bivariate(f), _to_bivariate(g)
    content = _gcd(F, _content(F, A), _content(F, B))
    A, B = _primitive(F, A), _primitive(F, B)
    if max(A) < max(B):
        A, B = B, A
    while B:
        R = _prem(F, A, B)
        A, B = B, (_primitive(F, R) if R else {})
    A = _primitive(F, A)
    result = _from_bivariate(F, f.vars, {j: _mul(F, c, content) for j, c in A.items()})
    return result.monic()


def radical(f: MultiPoly) -> MultiPoly:
    """Squarefree part of a bivariate (or univariate) polynomial."""
    if f.is_zero:
        raise ZeroPolynomial("the zero polynomial has no radical")
    if f.is_constant:
        return MultiPoly.constant(f.field, f.vars, f.field.one)
    while True:
        root = f.frobenius_root()
        if root is None or root.is_constant:
            break
        f = root
    if f.nvars != 2:
        name = _single_variable(f)
        parts = factor_coeffs(f.field, f.univariate_coeffs(name))
        out = MultiPoly.constant(f.field, f.vars, f.field.one)
        for g, _ in parts:
            out = out * MultiPoly.from_univariate(f.field, f.vars, name, g)
        return out
    d = bivariate_gcd(f, bivariate_gcd(f.derivative(f.vars[0]), f.derivative(f.vars[1])))
    if d.is_constant:
        return f.monic()
    r1 = f.exact_div(d)
    r2 = radical(d)
    common = bivariate_gcd(r1, r2)
    return (r1 * r2.exact_div(common)).monic()


def is_irreducible_bivariate(g: MultiPoly) -> bool:
    """Exhaustive trial division by every monic candidate of degree <= deg/2."""
    F = g.field
    n = g.total_degree
    if n < 1:
        return False
    for dh in range(1, n // 2 + 1):
        monomials = variable_monomials(g.nvars, 0, dh)
        for coeffs in itertools.product(range(F.order), repeat=len(monomials)):
            h = MultiPoly(F, g.vars, dict(zip(monomials, coeffs)))
            if h.total_degree != dh or h.leading_term()[1] != F.one:
                continue
            try:
                g.exact_div(h)
            except NotDivisible:
                continue
            return False
    return True
