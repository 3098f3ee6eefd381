"""Jack symmetric functions in the integral (J) normalization.

Built by Gram-Schmidt on the monomial basis in a linear extension of
dominance order, under the alpha-deformed Hall product
<p_lambda, p_mu> = delta * z_lambda * alpha^len(lambda), then rescaled so the
coefficient of m_(1^n) is n!.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .symcore import (
    Basis, Partition, SymSeries, as_rat, basis_convert, partitions_of, z_lambda,
)

DEFAULT_DEGREE_CAP = 8


@dataclass(frozen=True)
class JackParam:
    """Jack parameter alpha (the inverse temperature is theta = 1/alpha)."""

    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_rat(self.alpha))
        if self.alpha <= 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")


@dataclass(frozen=True)
class JackTable:
    """Jack functions J_lambda for all |lambda| <= degree, in the power basis."""

    degree: int
    param: JackParam
    entries: dict  # Partition -> SymSeries (POWER basis)


def jack_inner(f: SymSeries, g: SymSeries, p: JackParam) -> Fraction:
    """Alpha-deformed Hall product of two homogeneous power-basis elements."""
    if f.basis is not Basis.POWER or g.basis is not Basis.POWER:
        raise ValueError("jack_inner expects power-basis series")
    if not f.is_homogeneous() or not g.is_homogeneous():
        raise ValueError("jack_inner expects homogeneous inputs")
    if f.coeffs and g.coeffs and f.degree() != g.degree():
        raise ValueError(
            f"degree mismatch: {f.degree()} vs {g.degree()}"
        )
    total = Fraction(0)
    for lam, cf in f.coeffs.items():
        cg = g.coeffs.get(lam)
        if cg:
            total += cf * cg * z_lambda(lam) * p.alpha ** lam.length
    return total


@lru_cache(maxsize=None)
def _jack_degree(d: int, alpha: Fraction) -> dict:
    """All J_lambda with |lambda| = d, keyed by partition, in the power basis."""
    param = JackParam(alpha)
    # increasing lex order refines dominance, so Gram-Schmidt sees every
    # dominance-smaller partition first
    order = sorted(partitions_of(d))
    built: dict[Partition, SymSeries] = {}
    gram: dict[Partition, Fraction] = {}
    out: dict[Partition, SymSeries] = {}
    for lam in order:
        vec = basis_convert(
            SymSeries(Basis.MONOMIAL, d, {lam: Fraction(1)}), Basis.POWER
        )
        for mu, p_mu in built.items():
            c = jack_inner(vec, p_mu, param)
            if c:
                vec = vec - p_mu.scale(c / gram[mu])
        built[lam] = vec
        gram[lam] = jack_inner(vec, vec, param)
        ones = basis_convert(vec, Basis.MONOMIAL)[Partition((1,) * d)]
        out[lam] = vec.scale(Fraction(_factorial(d)) / ones)
    return out


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def jack_J(lam: Partition, p: JackParam, degree_cap: int = DEFAULT_DEGREE_CAP) -> SymSeries:
    """The J-normalized Jack function of lambda, as a power-basis series."""
    lam = Partition(lam)
    if lam.size > degree_cap:
        raise ValueError(f"|lambda| = {lam.size} exceeds degree cap {degree_cap}")
    if not lam:
        return SymSeries(Basis.POWER, 0, {Partition(): Fraction(1)})
    return _jack_degree(lam.size, p.alpha)[lam]


def jack_table(degree: int, p: JackParam) -> JackTable:
    entries = {}
    for d in range(degree + 1):
        for lam in partitions_of(d):
            entries[lam] = jack_J(lam, p, degree_cap=degree)
    return JackTable(degree, p, entries)


def jack_weight(lam: Partition, p: JackParam, N: int, theta: Fraction) -> Fraction:
    """Coefficient of J_lambda(x) J_lambda(a) in the multivariate Bessel series.

    Equals 1 / (c_lambda(alpha) * c'_lambda(alpha) * prod over boxes (i,j) of
    (N theta + j - 1 - theta (i-1))), with c, c' the alpha-hook products.
    """
    lam = Partition(lam)
    theta = as_rat(theta)
    if theta <= 0:
        raise ValueError("theta must be positive")
    if lam.length > N:
        raise ValueError(f"len(lambda) = {lam.length} exceeds N = {N}")
    alpha = p.alpha
    conj = lam.conjugate()
    den = Fraction(1)
    for i, row in enumerate(lam, start=1):
        for j in range(1, row + 1):
            arm = row - j
            leg = conj[j - 1] - i
            nfac = N * theta + (j - 1) - theta * (i - 1)
            assert nfac > 0, "Bessel denominator vanished despite theta>0, len<=N"
            den *= (alpha * arm + leg + 1) * (alpha * arm + leg + alpha) * nfac
    return 1 / den


def jack_eval_power(series: SymSeries, power_values) -> Fraction:
    """Evaluate a power-basis series given the values of p_1, p_2, ....

    `power_values[k-1]` must hold p_k; any exact rational sequence works.
    """
    total = Fraction(0)
    for lam, c in series.coeffs.items():
        prod = c
        for part in lam:
            prod *= power_values[part - 1]
        total += prod
    return total
