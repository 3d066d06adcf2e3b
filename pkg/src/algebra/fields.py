"""
Finite fields F_{p^k} and the rationals, as coefficient domains.

Elements of F_{p^k} are encoded as integers 0 <= a < p^k whose base-p digits
are the coordinates on the power basis 1, α, ..., α^{k-1}, α a root of the
field's modulus. The prime subfield is {0, ..., p-1} in every extension, so
prime-field constants never need converting.

Both FieldDescriptor and RationalField expose the same small protocol
(zero, one, from_int, add, sub, neg, mul, inv, pow, is_zero, format), which
is all MultiPoly and the linear algebra need.
"""

import functools
import logging
import math
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from sympy import isprime, primefactors

from src.errors import DegreeTooLarge, FieldMismatch, NoEmbedding, NotPrime

logger = logging.getLogger(__name__)

MAX_EXTENSION_DEGREE = 8
MAX_FIELD_ORDER = 2**16
GENERATOR_NAME = "a"


class FieldDescriptor:
    """F_{p^k} given by an explicit monic modulus over F_p (None when k = 1)."""

    __slots__ = ("p", "k", "modulus", "order", "_exp", "_log")

    def __init__(self, p: int, k: int = 1, modulus: Optional[Sequence[int]] = None):
        self.p = p
        self.k = k
        self.modulus = tuple(modulus) if modulus is not None else None
        self.order = p**k
        self._exp: Optional[List[int]] = None
        self._log: Optional[List[int]] = None

    # ── identity ────────────────────────────────────────────────────────

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldDescriptor)
            and self.p == other.p
            and self.k == other.k
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        if self.k == 1:
            return f"F_{self.p}"
        mod = _format_coords(self.modulus, self.p, GENERATOR_NAME)
        return f"F_{self.order}[{GENERATOR_NAME}]/({mod})"

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_prime_field(self) -> bool:
        return self.k == 1

    @property
    def is_finite(self) -> bool:
        return True

    # ── coefficient-domain protocol ─────────────────────────────────────

    zero = 0
    one = 1

    def from_int(self, n: int) -> int:
        return n % self.p

    def normalize(self, a) -> int:
        if not isinstance(a, int) or not 0 <= a < self.order:
            raise FieldMismatch(f"{a!r} is not an element of {self!r}")
        return a

    def is_zero(self, a: int) -> bool:
        return a == 0

    def elements(self) -> range:
        return range(self.order)

    def coords(self, a: int) -> Tuple[int, ...]:
        return _digits(a, self.p, self.k)

    def from_coords(self, coords: Sequence[int]) -> int:
        value = 0
        for c in reversed(list(coords)[: self.k]):
            value = value * self.p + (c % self.p)
        return value

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p, out, scale = self.p, 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * scale
            a //= p
            b //= p
            scale *= p
        return out

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        p, out, scale = self.p, 0, 1
        while a:
            out += ((-(a % p)) % p) * scale
            a //= p
            scale *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        exp, log = self._tables()
        return exp[(log[a] + log[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"inverse of 0 in {self!r}")
        if self.k == 1:
            return pow(a, -1, self.p)
        exp, log = self._tables()
        return exp[(-log[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n == 0:
            return 1
        if a == 0:
            if n < 0:
                raise ZeroDivisionError(f"inverse of 0 in {self!r}")
            return 0
        if self.k == 1:
            return pow(a, n, self.p)
        exp, log = self._tables()
        return exp[(log[a] * n) % (self.order - 1)]

    def frobenius(self, a: int, times: int = 1) -> int:
        """a -> a^(p^times)."""
        return self.pow(a, self.p**times)

    def format(self, a: int) -> str:
        if self.k == 1:
            return str(a)
        return _format_coords(self.coords(a), self.p, GENERATOR_NAME)

    def element(self, a: int) -> "FieldElement":
        return FieldElement(self, a)

    def generator(self) -> "FieldElement":
        """The class of the indeterminate, a root of the modulus."""
        return FieldElement(self, self.p if self.k > 1 else 1)

    # ── internals ───────────────────────────────────────────────────────

    def _mul_coords(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        ca, cb = self.coords(a), self.coords(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % p
        for deg in range(2 * k - 2, k - 1, -1):
            c = prod[deg]
            if c:
                for i in range(k + 1):
                    prod[deg - k + i] = (prod[deg - k + i] - c * self.modulus[i]) % p
        return self.from_coords(prod[:k])

    def _pow_coords(self, a: int, n: int) -> int:
        result, base = 1, a
        while n:
            if n & 1:
                result = self._mul_coords(result, base)
            base = self._mul_coords(base, base)
            n >>= 1
        return result

    def _tables(self) -> Tuple[List[int], List[int]]:
        if self._exp is None:
            q = self.order
            g = self._primitive_element()
            exp = [0] * (q - 1)
            log = [0] * q
            x = 1
            for i in range(q - 1):
                exp[i] = x
                log[x] = i
                x = self._mul_coords(x, g)
            self._log = log
            self._exp = exp
        return self._exp, self._log

    def _primitive_element(self) -> int:
        q = self.order
        cofactors = [(q - 1) // r for r in primefactors(q - 1)]
        for g in range(2, q):
            if all(self._pow_coords(g, c) != 1 for c in cofactors):
                return g
        raise RuntimeError(f"no primitive element in {self!r}")


class RationalField:
    """ℚ with Fraction coefficients; only the Fermat utility uses it."""

    __slots__ = ()

    zero = Fraction(0)
    one = Fraction(1)
    p = 0
    k = 1
    order = None
    characteristic = 0
    is_prime_field = False
    is_finite = False

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")

    def __repr__(self) -> str:
        return "QQ"

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def normalize(self, a) -> Fraction:
        return Fraction(a)

    def is_zero(self, a) -> bool:
        return a == 0

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / b

    def pow(self, a, n):
        return Fraction(a) ** n

    def format(self, a) -> str:
        return str(a)


QQ = RationalField()
Domain = Union[FieldDescriptor, RationalField]


class FieldElement:
    """An element of a FieldDescriptor, with the usual operators."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldDescriptor, value: int):
        self.field = field
        self.value = field.normalize(value)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{other.field!r} vs {self.field!r}")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    @property
    def coords(self) -> Tuple[int, ...]:
        return self.field.coords(self.value)

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub(b, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.div(self.value, b))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow(self.value, n))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"{self.field.format(self.value)} in {self.field!r}"

    def __str__(self) -> str:
        return self.field.format(self.value)


# ── constructors ────────────────────────────────────────────────────────


@functools.lru_cache(maxsize=None)
def make_prime_field(p: int) -> FieldDescriptor:
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise NotPrime(f"{p} is not prime")
    return FieldDescriptor(p)


@functools.lru_cache(maxsize=None)
def make_extension(base: FieldDescriptor, k: int) -> FieldDescriptor:
    """F_{p^k}: the first irreducible monic modulus in canonical order wins.

    Canonical order lists monic degree-k polynomials by the integer whose
    base-p digits are their lower coefficients, constant term first.
    """
    if not base.is_prime_field:
        raise FieldMismatch(f"make_extension expects a prime field, got {base!r}")
    if k < 1:
        raise DegreeTooLarge(f"extension degree must be positive, got {k}")
    if k > MAX_EXTENSION_DEGREE or base.p**k > MAX_FIELD_ORDER:
        raise DegreeTooLarge(
            f"F_{base.p}^{k} exceeds the desk-scale cap "
            f"(k <= {MAX_EXTENSION_DEGREE}, q <= {MAX_FIELD_ORDER})"
        )
    if k == 1:
        return base
    p = base.p
    for lower in range(p**k):
        modulus = _digits(lower, p, k) + (1,)
        if _irreducible_over_prime(modulus, p):
            field = FieldDescriptor(p, k, modulus)
            logger.debug("[Fields] %r found", field)
            return field
    raise RuntimeError(f"no irreducible polynomial of degree {k} over F_{p}")


def extension_of(field: FieldDescriptor, m: int) -> FieldDescriptor:
    """The degree-m extension of `field` (as a field of degree k·m over F_p)."""
    if m == 1:
        return field
    return make_extension(prime_subfield(field), field.k * m)


def prime_subfield(field: FieldDescriptor) -> FieldDescriptor:
    return make_prime_field(field.p)


# ── embeddings ──────────────────────────────────────────────────────────


@functools.lru_cache(maxsize=None)
def _generator_image(source: FieldDescriptor, target: FieldDescriptor) -> int:
    """First root (in element order) of the source modulus inside the target."""
    modulus = source.modulus
    for b in target.elements():
        acc = 0
        for c in reversed(modulus):
            acc = target.add(target.mul(acc, b), c)
        if acc == 0:
            return b
    raise NoEmbedding(f"{source!r} has no image in {target!r}")


def embed_value(source: FieldDescriptor, target: FieldDescriptor, a: int) -> int:
    if source == target:
        return a
    if not isinstance(source, FieldDescriptor) or not isinstance(target, FieldDescriptor):
        raise FieldMismatch(f"cannot map {source!r} into {target!r}")
    if source.p != target.p or target.k % source.k:
        raise NoEmbedding(f"{source!r} does not embed into {target!r}")
    if source.k == 1:
        return a
    beta = _generator_image(source, target)
    acc = 0
    for c in reversed(source.coords(a)):
        acc = target.add(target.mul(acc, beta), c)
    return acc


def embed_element(e: FieldElement, target: FieldDescriptor) -> FieldElement:
    return FieldElement(target, embed_value(e.field, target, e.value))


def common_field(fields: Iterable[FieldDescriptor]) -> FieldDescriptor:
    """The largest of a family of nested finite fields; all must embed into it."""
    fields = list(fields)
    if not fields:
        raise FieldMismatch("no field to choose from")
    top = max(fields, key=lambda f: f.k)
    for f in fields:
        if f.p != top.p or top.k % f.k:
            raise FieldMismatch(f"{f!r} and {top!r} have no common extension here")
    return top


def element_degree(base: FieldDescriptor, ext: FieldDescriptor, a: int) -> int:
    """Degree over `base` of an element of `ext`: its Frobenius orbit length."""
    q = base.order
    x = ext.pow(a, q)
    d = 1
    while x != a:
        x = ext.pow(x, q)
        d += 1
    return d


# ── integers ────────────────────────────────────────────────────────────


def gcd_of_list(values: Iterable[int]) -> int:
    """gcd with gcd(∅) = 0, so a running gcd starts from 'no information'."""
    return functools.reduce(math.gcd, values, 0)


# ── helpers ─────────────────────────────────────────────────────────────


def _irreducible_over_prime(modulus: Tuple[int, ...], p: int) -> bool:
    k = len(modulus) - 1
    for d in range(1, k // 2 + 1):
        for lower in range(p**d):
            divisor = _digits(lower, p, d) + (1,)
            if _remainder_is_zero(modulus, divisor, p):
                return False
    return True


def _digits(n: int, p: int, k: int) -> Tuple[int, ...]:
    out = []
    for _ in range(k):
        n, r = divmod(n, p)
        out.append(r)
    return tuple(out)


def _remainder_is_zero(num: Sequence[int], den: Sequence[int], p: int) -> bool:
    r = list(num)
    d = len(den) - 1
    for i in range(len(r) - 1, d - 1, -1):
        c = r[i] % p
        if c:
            for j in range(d + 1):
                r[i - d + j] = (r[i - d + j] - c * den[j]) % p
    return not any(x % p for x in r[:d])


def _format_coords(coords: Sequence[int], p: int, name: str) -> str:
    parts = []
    for i in range(len(coords) - 1, -1, -1):
        c = coords[i] % p
        if not c:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            mono = name if i == 1 else f"{name}^{i}"
            parts.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(parts) if parts else "0"
