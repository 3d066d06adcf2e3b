"""The x^p + (1-x)^p - 1 factorization behind degrees of points on Fermat curves."""

from typing import List, Tuple

from sympy import Poly, Rational, isprime, symbols

from src.algebra.fields import QQ
from src.algebra.poly import MultiPoly
from src.errors import BadPrime, NotDivisible

VARS = ("x",)


def _x(n: int = 1) -> MultiPoly:
    return MultiPoly.monomial(QQ, VARS, (n,))


def fermat_decomposition(p: int) -> Tuple[int, MultiPoly]:
    """(b, E_p) with x^p + (1-x)^p - 1 = x(x-1)(x^2-x+1)^b · E_p over ℚ."""
    if not isinstance(p, int) or p <= 3 or not isprime(p):
        raise BadPrime(f"need a prime p > 3, got {p}")
    b = 1 if p % 3 == 2 else 2
    one = MultiPoly.from_int(QQ, VARS, 1)
    x = _x()
    f = x**p + (one - x) ** p - one
    divisor = x * (x - one) * (x**2 - x + one) ** b
    try:
        quotient = f.exact_div(divisor)
    except NotDivisible as exc:
        raise BadPrime(f"x(x-1)(x^2-x+1)^{b} does not divide the p={p} polynomial") from exc
    return b, quotient


def factor_degrees(f: MultiPoly) -> List[int]:
    """Degrees of the irreducible factors over ℚ of a univariate f, with repetition."""
    if f.is_constant:
        return []
    coeffs = [Rational(c.numerator, c.denominator) for c in reversed(f.univariate_coeffs())]
    _, factors = Poly(coeffs, symbols(f.vars[0]), domain="QQ").factor_list()
    return sorted(g.degree() for g, k in factors for _ in range(k))


def fermat_known_degrees(p: int) -> List[int]:
    """Degrees of the evident closed points of x^p + y^p = z^p over ℚ.

    The line x + y = z meets the curve in points of degree 1 and 2 plus one
    point per irreducible factor of E_p; z = 0 contributes degrees 1 and
    p - 1, and a general line gives degree p.
    """
    _, e_p = fermat_decomposition(p)
    degrees = {1, 2, p - 1, p}
    degrees.update(factor_degrees(e_p))
    return sorted(degrees)
