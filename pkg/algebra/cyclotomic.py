"""Exact arithmetic in the cyclotomic field Q(zeta_M)"""
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, List, Sequence, Tuple, Union

import sympy

from errors import ZeroDivisionInField

Number = Union[int, Fraction]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to a Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not field elements")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot read {value!r} as an exact rational")


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@lru_cache(maxsize=None)
def cyclotomic_modulus(order: int) -> Tuple[Fraction, ...]:
    """Coefficients (low to high) of the order-th cyclotomic polynomial"""
    if order < 1:
        raise ValueError("field order must be positive")
    x = sympy.Symbol("x")
    poly = sympy.Poly(sympy.cyclotomic_poly(order, x), x)
    return tuple(Fraction(int(c)) for c in reversed(poly.all_coeffs()))


@lru_cache(maxsize=None)
def _reduction_table(order: int) -> Tuple[Tuple[Fraction, ...], ...]:
    """Row k holds zeta^(n+k) reduced to the power basis, n = phi(order)"""
    modulus = cyclotomic_modulus(order)
    n = len(modulus) - 1
    rows = []
    # zeta^n = -(c_0 + ... + c_{n-1} zeta^{n-1})
    current = [-c for c in modulus[:n]]
    for _ in range(max(n - 1, 1)):
        rows.append(tuple(current))
        top = current[-1]
        shifted = [Fraction(0)] + current[:-1]
        current = [shifted[i] - top * modulus[i] for i in range(n)]
    return tuple(rows)


def _poly_trim(coeffs: List[Fraction]) -> List[Fraction]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_divmod(num: List[Fraction], den: List[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
    num = _poly_trim(list(num))
    den = _poly_trim(list(den))
    if not den:
        raise ZeroDivisionInField("polynomial division by zero")
    quotient = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    while len(num) >= len(den) and num:
        shift = len(num) - len(den)
        factor = num[-1] / den[-1]
        quotient[shift] = factor
        for i, c in enumerate(den):
            num[i + shift] -= factor * c
        _poly_trim(num)
    return quotient, num


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    size = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(size)]
    return _poly_trim([Fraction(c) for c in out])


class CycloScalar:
    """Element of Q(zeta_M) stored as its reduced power-basis coefficient vector"""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable = ()):
        degree = len(cyclotomic_modulus(order)) - 1
        values = [as_fraction(c) for c in coeffs]
        if len(values) > degree:
            values = _reduce(order, values)
        values += [Fraction(0)] * (degree - len(values))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(values))

    def __setattr__(self, name, value):
        raise AttributeError("CycloScalar is immutable")

    # construction helpers
    @classmethod
    def rational(cls, order: int, value) -> "CycloScalar":
        return cls(order, [as_fraction(value)])

    @classmethod
    def zeta(cls, order: int, power: int = 1) -> "CycloScalar":
        power %= order
        return cls(order, [Fraction(0)] * power + [Fraction(1)])

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self.render()} is not rational")
        return self.coeffs[0]

    def _coerce(self, other) -> "CycloScalar":
        if isinstance(other, CycloScalar):
            if other.order != self.order:
                raise ValueError(f"field order mismatch: {self.order} vs {other.order}")
            return other
        return CycloScalar.rational(self.order, other)

    def __add__(self, other):
        other = self._coerce(other)
        return CycloScalar(self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloScalar(self.order, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        return CycloScalar(self.order, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, CycloScalar):
            factor = as_fraction(other)
            return CycloScalar(self.order, [a * factor for a in self.coeffs])
        other = self._coerce(other)
        if other.is_rational():
            return self * other.coeffs[0]
        if self.is_rational():
            return other * self.coeffs[0]
        return CycloScalar(self.order, _poly_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "CycloScalar":
        if self.is_zero():
            raise ZeroDivisionInField("division by zero in Q(zeta_%d)" % self.order)
        if self.is_rational():
            return CycloScalar.rational(self.order, 1 / self.coeffs[0])
        # extended Euclid: u*self + v*modulus = 1
        r0, r1 = list(cyclotomic_modulus(self.order)), _poly_trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        unit = r0[0]
        return CycloScalar(self.order, [c / unit for c in s0])

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CycloScalar.rational(self.order, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, CycloScalar):
            return self.order == other.order and self.coeffs == other.coeffs
        try:
            value = as_fraction(other)
        except TypeError:
            return NotImplemented
        return self.is_rational() and self.coeffs[0] == value

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    def __bool__(self):
        return not self.is_zero()

    def render(self) -> str:
        """Canonical text: a rational, or a parenthesized sum of c*w^k"""
        if self.is_rational():
            return _render_fraction(self.coeffs[0])
        parts = []
        for power, c in enumerate(self.coeffs):
            if c == 0:
                continue
            text = _render_fraction(c)
            parts.append(text if power == 0 else f"{text}*w^{power}")
        return "(" + " + ".join(parts) + ")"

    def to_json(self) -> List[str]:
        return [_render_fraction(c) for c in self.coeffs]

    def __repr__(self):
        return f"CycloScalar({self.order}, {self.render()})"


def _render_fraction(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _reduce(order: int, values: List[Fraction]) -> List[Fraction]:
    """Reduce a long coefficient list modulo the cyclotomic polynomial"""
    modulus = cyclotomic_modulus(order)
    n = len(modulus) - 1
    table = _reduction_table(order)
    if len(values) - 1 - n < len(table):
        out = list(values[:n])
        for k, c in enumerate(values[n:]):
            if c:
                row = table[k]
                for i in range(n):
                    out[i] += c * row[i]
        return out
    _, remainder = _poly_divmod(values, list(modulus))
    return remainder + [Fraction(0)] * (n - len(remainder))


def cyclo_ops(lhs: CycloScalar, rhs: CycloScalar, op: str) -> CycloScalar:
    """Dispatch one of add/sub/mul/div on two scalars of the same order"""
    if lhs.order != rhs.order:
        raise ValueError(f"field order mismatch: {lhs.order} vs {rhs.order}")
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "div":
        return lhs / rhs
    raise ValueError(f"unknown field operation {op!r}")


def default_field_order(delta: int) -> int:
    """Smallest order holding i and the delta-th roots of unity"""
    return lcm(4, delta)
