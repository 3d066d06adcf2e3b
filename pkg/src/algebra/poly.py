"""
Sparse multivariate polynomials over a FieldDescriptor (or QQ).

`terms` maps exponent tuples to raw coefficients in the field's own
encoding; zero coefficients are never stored. Printing and `sorted_terms`
use graded reverse-lex order, highest first.
"""

import logging
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from src.algebra.fields import (
    Domain,
    FieldDescriptor,
    FieldElement,
    common_field,
    embed_value,
)
from src.algebra.linalg import EchelonReducer
from src.errors import FieldMismatch, NotDivisible, PointNotOnVariety, SchemaError, ZeroPolynomial

logger = logging.getLogger(__name__)

Exponents = Tuple[int, ...]


def grevlex_key(exps: Exponents) -> Tuple:
    return (sum(exps), tuple(-e for e in reversed(exps)))


class MultiPoly:
    __slots__ = ("field", "vars", "terms")

    def __init__(
        self,
        field: Domain,
        vars: Sequence[str],
        terms: Optional[Mapping[Exponents, object]] = None,
    ):
        self.field = field
        self.vars = tuple(vars)
        clean: Dict[Exponents, object] = {}
        n = len(self.vars)
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != n:
                raise SchemaError(f"exponent {exps} does not match variables {self.vars}")
            c = field.normalize(c)
            if not field.is_zero(c):
                clean[exps] = c
        self.terms = clean

    # ── constructors ────────────────────────────────────────────────────

    @classmethod
    def zero(cls, field: Domain, vars: Sequence[str]) -> "MultiPoly":
        return cls(field, vars)

    @classmethod
    def constant(cls, field: Domain, vars: Sequence[str], c) -> "MultiPoly":
        return cls(field, vars, {(0,) * len(vars): c})

    @classmethod
    def from_int(cls, field: Domain, vars: Sequence[str], n: int) -> "MultiPoly":
        return cls.constant(field, vars, field.from_int(n))

    @classmethod
    def var(cls, field: Domain, vars: Sequence[str], name: str) -> "MultiPoly":
        vars = tuple(vars)
        i = vars.index(name)
        exps = tuple(1 if j == i else 0 for j in range(len(vars)))
        return cls(field, vars, {exps: field.one})

    @classmethod
    def monomial(cls, field: Domain, vars: Sequence[str], exps: Exponents, c=None) -> "MultiPoly":
        return cls(field, vars, {tuple(exps): field.one if c is None else c})

    def _new(self, terms: Mapping[Exponents, object]) -> "MultiPoly":
        out = MultiPoly.__new__(MultiPoly)
        out.field = self.field
        out.vars = self.vars
        out.terms = {e: c for e, c in terms.items() if not self.field.is_zero(c)}
        return out

    # ── queries ─────────────────────────────────────────────────────────

    @property
    def nvars(self) -> int:
        return len(self.vars)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    @property
    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    @property
    def order(self) -> int:
        """Lowest total degree of a term (order at the origin)."""
        if not self.terms:
            raise ZeroPolynomial("the zero polynomial has no order")
        return min(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, self.field.zero)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def sorted_terms(self) -> List[Tuple[Exponents, object]]:
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def leading_term(self) -> Tuple[Exponents, object]:
        if not self.terms:
            raise ZeroPolynomial("the zero polynomial has no leading term")
        exps = max(self.terms, key=grevlex_key)
        return exps, self.terms[exps]

    def monic(self) -> "MultiPoly":
        if not self.terms:
            return self
        _, lc = self.leading_term()
        return self.scale(self.field.inv(lc))

    # ── arithmetic ──────────────────────────────────────────────────────

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.field != self.field or other.vars != self.vars:
                raise FieldMismatch(
                    f"{other.field!r}[{','.join(other.vars)}] vs "
                    f"{self.field!r}[{','.join(self.vars)}]"
                )
            return other
        if isinstance(other, int):
            return MultiPoly.from_int(self.field, self.vars, other)
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{other.field!r} vs {self.field!r}")
            return MultiPoly.constant(self.field, self.vars, other.value)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = F.add(out.get(e, F.zero), c)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return self._new({e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        F = self.field
        out: Dict[Exponents, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = F.add(out.get(e, F.zero), F.mul(c1, c2))
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise SchemaError("negative powers are not polynomials")
        result = MultiPoly.constant(self.field, self.vars, self.field.one)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "MultiPoly":
        F = self.field
        return self._new({e: F.mul(v, c) for e, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            if isinstance(other, int):
                return self == MultiPoly.from_int(self.field, self.vars, other)
            return NotImplemented
        return self.field == other.field and self.vars == other.vars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.field, self.vars, frozenset(self.terms.items())))

    # ── structure ───────────────────────────────────────────────────────

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return self._new({e: c for e, c in self.terms.items() if sum(e) == d})

    def lowest_form(self) -> Tuple[int, "MultiPoly"]:
        m = self.order
        return m, self.homogeneous_part(m)

    def truncate(self, below: int) -> "MultiPoly":
        """Drop every term of total degree >= `below`."""
        return self._new({e: c for e, c in self.terms.items() if sum(e) < below})

    def derivative(self, name: str) -> "MultiPoly":
        i = self.vars.index(name)
        F = self.field
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                out[e[:i] + (e[i] - 1,) + e[i + 1 :]] = F.mul(F.from_int(e[i]), c)
        return self._new(out)

    def exact_div(self, other: "MultiPoly") -> "MultiPoly":
        """Quotient of an exact division; NotDivisible otherwise."""
        other = self._coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        F = self.field
        lt_e, lt_c = other.leading_term()
        lt_inv = F.inv(lt_c)
        remainder = dict(self.terms)
        quotient: Dict[Exponents, object] = {}
        while remainder:
            r_e = max(remainder, key=grevlex_key)
            shift = tuple(a - b for a, b in zip(r_e, lt_e))
            if any(s < 0 for s in shift):
                raise NotDivisible(f"{other} does not divide {self}")
            c = F.mul(remainder[r_e], lt_inv)
            quotient[shift] = c
            for e, v in other.terms.items():
                key = tuple(a + b for a, b in zip(e, shift))
                nv = F.sub(remainder.get(key, F.zero), F.mul(c, v))
                if F.is_zero(nv):
                    remainder.pop(key, None)
                else:
                    remainder[key] = nv
        return self._new(quotient)

    def frobenius_root(self) -> Optional["MultiPoly"]:
        """g with g^p == self, when every exponent is divisible by p."""
        F = self.field
        if not isinstance(F, FieldDescriptor):
            return None
        p = F.p
        if any(x % p for e in self.terms for x in e):
            return None
        power = F.p ** (F.k - 1)
        return self._new({tuple(x // p for x in e): F.pow(c, power) for e, c in self.terms.items()})

    # ── changes of ring ─────────────────────────────────────────────────

    def base_change(self, target: Domain) -> "MultiPoly":
        if target == self.field:
            return self
        return MultiPoly(
            target,
            self.vars,
            {e: embed_value(self.field, target, c) for e, c in self.terms.items()},
        )

    def with_vars(self, new_vars: Sequence[str]) -> "MultiPoly":
        """Re-express in `new_vars`, which must contain every variable used."""
        new_vars = tuple(new_vars)
        index = {}
        for i, name in enumerate(self.vars):
            if name in new_vars:
                index[i] = new_vars.index(name)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(new_vars)
            for i, x in enumerate(e):
                if x:
                    if i not in index:
                        raise SchemaError(f"variable {self.vars[i]} is used by {self}")
                    ne[index[i]] = x
            out[tuple(ne)] = c
        return MultiPoly(self.field, new_vars, out)

    def set_var(self, name: str, value) -> "MultiPoly":
        """Substitute the raw field value `value` for `name` and drop it."""
        i = self.vars.index(name)
        F = self.field
        new_vars = self.vars[:i] + self.vars[i + 1 :]
        out: Dict[Exponents, object] = {}
        for e, c in self.terms.items():
            key = e[:i] + e[i + 1 :]
            out[key] = F.add(out.get(key, F.zero), F.mul(c, F.pow(value, e[i])))
        return MultiPoly(F, new_vars, out)

    def substitute(self, images: Mapping[str, "MultiPoly"]) -> "MultiPoly":
        """Compose: replace each variable by a polynomial in a common ring."""
        sample = next(iter(images.values()))
        F, vars = sample.field, sample.vars
        images = dict(images)
        for name in self.vars:
            if name not in images:
                images[name] = MultiPoly.var(F, vars, name) if name in vars else None
        cache: Dict[Tuple[str, int], MultiPoly] = {}

        def power(name: str, n: int) -> MultiPoly:
            key = (name, n)
            if key not in cache:
                img = images[name]
                if img is None:
                    raise SchemaError(f"no image for variable {name}")
                cache[key] = img**n
            return cache[key]

        result = MultiPoly.zero(F, vars)
        for e, c in self.terms.items():
            term = MultiPoly.constant(F, vars, embed_value(self.field, F, c))
            for name, x in zip(self.vars, e):
                if x:
                    term = term * power(name, x)
            result = result + term
        return result

    def shift(self, values: Sequence) -> "MultiPoly":
        """f(x_1 + v_1, ..., x_r + v_r) for raw field values v_i."""
        F = self.field
        n = self.nvars
        expansions: Dict[Tuple[int, int], List[Tuple[int, object]]] = {}

        def expansion(i: int, e: int):
            key = (i, e)
            if key not in expansions:
                terms = []
                for j in range(e + 1):
                    coeff = F.mul(F.from_int(comb(e, j)), F.pow(values[i], e - j))
                    if not F.is_zero(coeff):
                        terms.append((j, coeff))
                expansions[key] = terms
            return expansions[key]

        out: Dict[Exponents, object] = {}
        for exps, c in self.terms.items():
            partial = {(0,) * n: c}
            for i, e in enumerate(exps):
                if e == 0 or F.is_zero(values[i]):
                    if e:
                        partial = {k[:i] + (e,) + k[i + 1 :]: v for k, v in partial.items()}
                    continue
                nxt: Dict[Exponents, object] = {}
                for k, v in partial.items():
                    for j, b in expansion(i, e):
                        key = k[:i] + (j,) + k[i + 1 :]
                        nxt[key] = F.add(nxt.get(key, F.zero), F.mul(v, b))
                partial = nxt
            for k, v in partial.items():
                out[k] = F.add(out.get(k, F.zero), v)
        return self._new(out)

    def evaluate_raw(self, target: Domain, values: Sequence) -> object:
        """Value at raw `values` of `target`, into which the coefficients embed."""
        out = target.zero
        for e, c in self.terms.items():
            term = embed_value(self.field, target, c) if target != self.field else c
            for v, x in zip(values, e):
                if x:
                    term = target.mul(term, target.pow(v, x))
            out = target.add(out, term)
        return out

    def univariate_coeffs(self, name: Optional[str] = None) -> List:
        """Dense coefficient list, constant first, of a polynomial in one variable."""
        i = 0 if name is None else self.vars.index(name)
        if any(x for e in self.terms for j, x in enumerate(e) if j != i):
            raise SchemaError(f"{self} is not univariate in {self.vars[i]}")
        deg = max((e[i] for e in self.terms), default=-1)
        coeffs = [self.field.zero] * (deg + 1)
        for e, c in self.terms.items():
            coeffs[e[i]] = c
        return coeffs

    @classmethod
    def from_univariate(cls, field: Domain, vars: Sequence[str], name: str, coeffs: Sequence) -> "MultiPoly":
        vars = tuple(vars)
        i = vars.index(name)
        terms = {}
        for d, c in enumerate(coeffs):
            terms[tuple(d if j == i else 0 for j in range(len(vars)))] = c
        return cls(field, vars, terms)

    # ── printing ────────────────────────────────────────────────────────

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        F = self.field
        out = ""
        for exps, c in self.sorted_terms():
            sign = "+"
            if not F.is_finite and c < 0:
                sign, c = "-", -c
            coeff = F.format(c)
            mono = "*".join(
                name if x == 1 else f"{name}^{x}" for name, x in zip(self.vars, exps) if x
            )
            if any(ch in coeff for ch in "+-/"):
                coeff = f"({coeff})"
            if not mono:
                piece = coeff
            elif coeff == "1":
                piece = mono
            else:
                piece = f"{coeff}*{mono}"
            if not out:
                out = piece if sign == "+" else f"-{piece}"
            else:
                out += f"{sign}{piece}"
        return out

    def __repr__(self) -> str:
        return f"MultiPoly({self} over {self.field!r} in {','.join(self.vars)})"


# ── module-level operations ─────────────────────────────────────────────


def resolve_point(field: Domain, point: Sequence) -> Tuple[Domain, List]:
    """Common coefficient field of a point and the raw coordinate values there.

    Integer coordinates are read in `field`; FieldElement coordinates may live
    in any extension of it, and the largest one wins.
    """
    if not isinstance(field, FieldDescriptor):
        return field, [field.normalize(v) for v in point]
    fields = [field] + [v.field for v in point if isinstance(v, FieldElement)]
    target = common_field(fields)
    values = []
    for v in point:
        if isinstance(v, FieldElement):
            values.append(embed_value(v.field, target, v.value))
        elif isinstance(v, int):
            values.append(target.from_int(v))
        else:
            raise FieldMismatch(f"coordinate {v!r} is not a field element")
    return target, values


def poly_eval(f: MultiPoly, point: Sequence) -> FieldElement:
    if len(point) != f.nvars:
        raise SchemaError(f"point has {len(point)} coordinates, ring has {f.nvars} variables")
    target, values = resolve_point(f.field, point)
    value = f.evaluate_raw(target, values)
    if isinstance(target, FieldDescriptor):
        return FieldElement(target, value)
    return value


def translate_to_origin(f: MultiPoly, point: Sequence) -> MultiPoly:
    """f(x + P) over the field of P."""
    target, values = resolve_point(f.field, point)
    return f.base_change(target).shift(values)


def lowest_form(f: MultiPoly) -> Tuple[int, MultiPoly]:
    return f.lowest_form()


def jacobian_rank_at(generators: Sequence[MultiPoly], point: Sequence) -> int:
    """Rank of (∂g_i/∂x_j)(P); P must lie on every g_i."""
    if not generators:
        return 0
    ring = generators[0]
    target, values = resolve_point(ring.field, point)
    for g in generators:
        if not target.is_zero(g.evaluate_raw(target, values)):
            raise PointNotOnVariety(f"{g} does not vanish at the point")
    reducer = EchelonReducer(target)
    for g in generators:
        row = {}
        for j, name in enumerate(ring.vars):
            v = g.derivative(name).evaluate_raw(target, values)
            if not target.is_zero(v):
                row[j] = v
        reducer.add(row)
    return reducer.rank


def variable_monomials(nvars: int, low: int, high: int) -> List[Exponents]:
    """All exponent tuples of total degree in [low, high], by degree then grevlex."""
    out: List[Exponents] = []
    for d in range(low, high + 1):
        block = list(_compositions(d, nvars))
        block.sort(key=grevlex_key, reverse=True)
        out.extend(block)
    return out


def _compositions(total: int, parts: int) -> Iterable[Exponents]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest
