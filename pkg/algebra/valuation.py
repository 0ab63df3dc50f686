"""Weighted order of G(Psi, z)"""
from fractions import Fraction
from math import gcd, inf
from typing import Union

from algebra.polynomial import MultiPoly


def weighted_valuation(G: MultiPoly, r: int) -> Union[Fraction, float]:
    """min (2*alpha + r*beta) / gcd(2, r) over the terms Psi^alpha z^beta of G; +inf for G = 0"""
    if G.variables != ("Psi", "z"):
        raise ValueError(f"G must be written in (Psi, z), got {G.variables}")
    if G.is_zero():
        return inf
    scale = gcd(2, r)
    return min(Fraction(2 * alpha + r * beta, scale) for alpha, beta in G.terms)


def surface_threshold(r: int) -> Fraction:
    return Fraction(r - 2, gcd(2, r))
