"""Canonical continued-fraction expansion driving the point blow-up count"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple


@dataclass(frozen=True)
class CFDigits:
    """Digits [c0; c1, ..., cN] of p/q with the last digit >= 2 when N >= 1"""
    digits: Tuple[int, ...]

    @property
    def k(self) -> int:
        return sum(self.digits)

    @property
    def c0(self) -> int:
        return self.digits[0]

    def evaluate(self) -> Fraction:
        value = Fraction(self.digits[-1])
        for digit in reversed(self.digits[:-1]):
            value = digit + 1 / value
        return value

    def to_json(self) -> dict:
        return {"digits": list(self.digits), "k": self.k}


def cf_expand(p: int, q: int) -> CFDigits:
    """Euclidean expansion of p/q; the last quotient of the remainder sequence is always >= 2"""
    if p < 1 or q < 1:
        raise ValueError("continued fractions are defined here for positive integers only")
    digits: List[int] = []
    a, b = p, q
    while b:
        digits.append(a // b)
        a, b = b, a % b
    return CFDigits(tuple(digits))


def euclid_chart_sequence(p: int, q: int) -> List[str]:
    """Subtractive Euclid on the exponent pair of y^p - a x^q.

    Each entry names the chart followed after one point blow-up: 'x' when the
    x-exponent dominates (chart (x, xy, xz)), 'y' otherwise (chart (xy, y, yz)),
    and a final 'x' once the pair is balanced. The length equals cf_expand(p, q).k.
    """
    moves: List[str] = []
    a, b = p, q
    while a != b:
        if a < b:
            moves.append("x")
            b -= a
        else:
            moves.append("y")
            a -= b
    moves.append("x")
    return moves
