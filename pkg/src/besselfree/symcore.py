"""Exact symmetric-function arithmetic.

Partitions, truncated graded series in the power-sum / monomial / elementary
bases, exact basis conversions, truncated exp/log, and the polynomials f_eta
expressing monomial symmetric functions through elementary ones.

All coefficients are `fractions.Fraction`; every value is immutable after
construction.  Transition tables are cached per degree via `lru_cache`.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Mapping, Sequence

Rat = Fraction


def as_rat(x) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError(f"refusing inexact float {x!r} in exact context")
    return Fraction(x)


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        for i, p in enumerate(parts):
            if p < 1:
                raise ValueError(f"partition parts must be >= 1, got {parts}")
            if i and parts[i - 1] < p:
                raise ValueError(f"parts not weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def multiplicity(self, j: int) -> int:
        return sum(1 for p in self if p == j)

    def multiplicities(self) -> Counter:
        return Counter(self)

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p >= j) for j in range(1, self[0] + 1))

    def remove_one(self, part: int) -> "Partition":
        """Partition with a single copy of `part` removed."""
        out = list(self)
        out.remove(part)
        return Partition(out)

    def add_part(self, part: int) -> "Partition":
        return Partition(sorted(self + (part,), reverse=True))

    def __repr__(self):
        return f"Partition{tuple(self)!r}"


EMPTY = Partition()


def partitions_of(d: int) -> list[Partition]:
    """All partitions of d, in reverse lexicographic order ((d) first)."""
    if d < 0:
        raise ValueError("d must be >= 0")
    return list(_partitions_of(d))


@lru_cache(maxsize=None)
def _partitions_of(d: int) -> tuple[Partition, ...]:
    out = []

    def rec(remaining, cap, prefix):
        if remaining == 0:
            out.append(Partition(prefix))
            return
        for first in range(min(cap, remaining), 0, -1):
            rec(remaining - first, first, prefix + (first,))

    rec(d, d if d else 1, ())
    return tuple(out)


def z_lambda(lam: Partition) -> int:
    """z_lambda = prod_j j^{m_j} * m_j!, the power-sum normalization factor."""
    z = 1
    for j, m in Counter(lam).items():
        z *= j ** m * factorial(m)
    return z


class Basis(Enum):
    POWER = "power"
    MONOMIAL = "monomial"
    ELEMENTARY = "elementary"


@dataclass(frozen=True)
class SymSeries:
    """Truncated graded symmetric-function element in a tagged basis.

    `coeffs` maps Partition -> Fraction; the empty partition carries the
    constant term.  Keys of degree above `truncation_degree` are rejected.
    """

    basis: Basis
    truncation_degree: int
    coeffs: Mapping[Partition, Fraction]

    def __post_init__(self):
        clean = {}
        for lam, c in self.coeffs.items():
            lam = lam if isinstance(lam, Partition) else Partition(lam)
            c = as_rat(c)
            if lam.size > self.truncation_degree:
                raise ValueError(
                    f"coefficient on {lam} exceeds truncation degree "
                    f"{self.truncation_degree}"
                )
            if c:
                clean[lam] = c
        object.__setattr__(self, "coeffs", clean)

    def __getitem__(self, lam) -> Fraction:
        return self.coeffs.get(Partition(lam), Fraction(0))

    @property
    def constant_term(self) -> Fraction:
        return self.coeffs.get(EMPTY, Fraction(0))

    def is_homogeneous(self) -> bool:
        degs = {lam.size for lam in self.coeffs}
        return len(degs) <= 1

    def degree(self) -> int:
        return max((lam.size for lam in self.coeffs), default=0)

    def __add__(self, other: "SymSeries") -> "SymSeries":
        if self.basis is not other.basis:
            raise ValueError("cannot add series in different bases")
        trunc = min(self.truncation_degree, other.truncation_degree)
        out = dict(_truncated(self.coeffs, trunc))
        for lam, c in other.coeffs.items():
            if lam.size <= trunc:
                out[lam] = out.get(lam, Fraction(0)) + c
        return SymSeries(self.basis, trunc, out)

    def __sub__(self, other: "SymSeries") -> "SymSeries":
        return self + other.scale(-1)

    def scale(self, c) -> "SymSeries":
        c = as_rat(c)
        return SymSeries(
            self.basis, self.truncation_degree,
            {lam: c * v for lam, v in self.coeffs.items()},
        )

    def multiply(self, other: "SymSeries") -> "SymSeries":
        """Truncated product; computed through the power basis."""
        if self.basis is not other.basis:
            raise ValueError("cannot multiply series in different bases")
        trunc = min(self.truncation_degree, other.truncation_degree)
        a = basis_convert(self, Basis.POWER)
        b = basis_convert(other, Basis.POWER)
        out = {}
        for lam, ca in a.coeffs.items():
            for mu, cb in b.coeffs.items():
                if lam.size + mu.size > trunc:
                    continue
                key = Partition(sorted(lam + mu, reverse=True))
                out[key] = out.get(key, Fraction(0)) + ca * cb
        return basis_convert(SymSeries(Basis.POWER, trunc, out), self.basis)


def _truncated(coeffs, trunc):
    return {lam: c for lam, c in coeffs.items() if lam.size <= trunc}


def sym_zero(basis: Basis, trunc: int) -> SymSeries:
    return SymSeries(basis, trunc, {})


def sym_one(basis: Basis, trunc: int) -> SymSeries:
    return SymSeries(basis, trunc, {EMPTY: Fraction(1)})


# ---------------------------------------------------------------------------
# transition tables between bases, per degree
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _pk_step(k: int, d: int):
    """Multiplication by p_k as a map from monomial coefficients in degree
    d-k to degree d; stored as {source mu: {target nu: int}}."""
    mat: dict[Partition, dict[Partition, int]] = {}
    for nu in _partitions_of(d):
        counts = Counter(nu)
        if counts[k]:
            mu = nu.remove_one(k)
            mat.setdefault(mu, {})[nu] = counts[k]
        for v in counts:
            if v > k:
                mu = nu.remove_one(v).add_part(v - k)
                row = mat.setdefault(mu, {})
                row[nu] = row.get(nu, 0) + counts[v]
    return mat


@lru_cache(maxsize=None)
def _ek_step(k: int, d: int):
    """Multiplication by e_k on monomial coefficients, degree d-k -> d.

    The coefficient of M_nu in M_mu * e_k counts k-subsets of the parts of nu
    whose decrement by one leaves the multiset mu.
    """
    mat: dict[Partition, dict[Partition, int]] = {}
    for nu in _partitions_of(d):
        for subset in itertools.combinations(range(len(nu)), k):
            chosen = set(subset)
            reduced = sorted(
                (p - 1 if i in chosen else p for i, p in enumerate(nu) if not (i in chosen and p == 1)),
                reverse=True,
            )
            mu = Partition(reduced)
            row = mat.setdefault(mu, {})
            row[nu] = row.get(nu, 0) + 1
    return mat


def _apply_step(step_mat, coeffs: dict) -> dict:
    out: dict[Partition, Fraction] = {}
    for mu, c in coeffs.items():
        for nu, mult in step_mat.get(mu, {}).items():
            out[nu] = out.get(nu, Fraction(0)) + c * mult
    return out


@lru_cache(maxsize=None)
def _power_in_monomial(lam: Partition) -> tuple[tuple[Partition, Fraction], ...]:
    """Expansion of p_lambda in the monomial basis."""
    if not lam:
        return ((EMPTY, Fraction(1)),)
    head, rest = lam[0], Partition(lam[1:])
    coeffs = dict(_power_in_monomial(rest))
    coeffs = _apply_step(_pk_step(head, lam.size), coeffs)
    return tuple(sorted(coeffs.items()))


@lru_cache(maxsize=None)
def _elementary_in_monomial(lam: Partition) -> tuple[tuple[Partition, Fraction], ...]:
    """Expansion of e_lambda in the monomial basis."""
    if not lam:
        return ((EMPTY, Fraction(1)),)
    head, rest = lam[0], Partition(lam[1:])
    coeffs = dict(_elementary_in_monomial(rest))
    coeffs = _apply_step(_ek_step(head, lam.size), coeffs)
    return tuple(sorted(coeffs.items()))


def _invert_expansion(expansions, d: int):
    """Invert {lam: expansion in basis B} into {B-element: expansion in lam}.

    Exact Gaussian elimination on the p(d) x p(d) transition matrix.
    """
    parts = list(_partitions_of(d))
    n = len(parts)
    idx = {lam: i for i, lam in enumerate(parts)}
    # A[i][j] = coefficient of M_{parts[j]} in the expansion of source parts[i];
    # then M_{parts[i]} = sum_j A^{-1}[i][j] * source parts[j].
    m = [[Fraction(0)] * n for _ in range(n)]
    inv = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for i, lam in enumerate(parts):
        for nu, c in expansions(lam):
            m[i][idx[nu]] = c
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col])
        m[col], m[piv] = m[piv], m[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        p = m[col][col]
        m[col] = [v / p for v in m[col]]
        inv[col] = [v / p for v in inv[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [v - f * w for v, w in zip(m[r], m[col])]
                inv[r] = [v - f * w for v, w in zip(inv[r], inv[col])]
    out = {}
    for i, nu in enumerate(parts):
        out[nu] = tuple(
            (parts[j], inv[i][j]) for j in range(n) if inv[i][j]
        )
    return out


@lru_cache(maxsize=None)
def _monomial_in_power(d: int):
    return _invert_expansion(_power_in_monomial, d)


@lru_cache(maxsize=None)
def _monomial_in_elementary(d: int):
    return _invert_expansion(_elementary_in_monomial, d)


def _convert_coeffs(coeffs, source: Basis, target: Basis):
    if source is target:
        return dict(coeffs)
    out: dict[Partition, Fraction] = {}

    def accumulate(expansion, c):
        for nu, w in expansion:
            out[nu] = out.get(nu, Fraction(0)) + c * w

    for lam, c in coeffs.items():
        if source is Basis.MONOMIAL:
            table = (_monomial_in_power(lam.size) if target is Basis.POWER
                     else _monomial_in_elementary(lam.size))
            accumulate(table[lam], c)
        elif target is Basis.MONOMIAL:
            expansion = (_power_in_monomial(lam) if source is Basis.POWER
                         else _elementary_in_monomial(lam))
            accumulate(expansion, c)
        else:
            # POWER <-> ELEMENTARY through the monomial basis
            mid = _convert_coeffs({lam: c}, source, Basis.MONOMIAL)
            for nu, w in _convert_coeffs(mid, Basis.MONOMIAL, target).items():
                out[nu] = out.get(nu, Fraction(0)) + w
    return {lam: c for lam, c in out.items() if c}


def basis_convert(s: SymSeries, target: Basis, num_vars: int | None = None) -> SymSeries:
    """Re-express `s` in `target` basis.

    With a finite `num_vars` = N the conversion requires truncation_degree <= N
    (below that bound the abstract transition coincides with the N-variable
    one and the monomial -> power map is unique).
    """
    if num_vars is not None and s.truncation_degree > num_vars:
        raise ValueError(
            f"degree {s.truncation_degree} exceeds variable count {num_vars}; "
            "power-sum expansion not unique"
        )
    return SymSeries(target, s.truncation_degree,
                     _convert_coeffs(s.coeffs, s.basis, target))


# ---------------------------------------------------------------------------
# f_eta and truncated exp/log
# ---------------------------------------------------------------------------

def f_eta_eval(eta: Partition, values: Sequence[Fraction]) -> Fraction:
    """Evaluate f_eta, the polynomial with m_eta = f_eta(e_1, e_2, ...),
    at e_k = values[k-1]."""
    eta = Partition(eta)
    if not eta:
        return Fraction(1)
    if len(values) < eta.size:
        raise ValueError(f"need e_1..e_{eta.size}, got {len(values)} values")
    m_eta = SymSeries(Basis.MONOMIAL, eta.size, {eta: Fraction(1)})
    in_e = basis_convert(m_eta, Basis.ELEMENTARY)
    total = Fraction(0)
    for lam, c in in_e.coeffs.items():
        prod = c
        for part in lam:
            prod *= as_rat(values[part - 1])
        total += prod
    return total


def series_exp(s: SymSeries) -> SymSeries:
    """Graded exponential of a series with zero constant term."""
    if s.constant_term != 0:
        raise ValueError("series_exp requires constant term 0")
    n = s.truncation_degree
    p = basis_convert(s, Basis.POWER)
    result = sym_one(Basis.POWER, n)
    term = sym_one(Basis.POWER, n)
    for k in range(1, n + 1):
        term = term.multiply(p).scale(Fraction(1, k))
        if not term.coeffs:
            break
        result = result + term
    return basis_convert(result, s.basis)


def series_log(s: SymSeries) -> SymSeries:
    """Graded logarithm of a series with constant term 1."""
    if s.constant_term != 1:
        raise ValueError("series_log requires constant term 1")
    n = s.truncation_degree
    u = basis_convert(s, Basis.POWER) - sym_one(Basis.POWER, n)
    result = sym_zero(Basis.POWER, n)
    power = sym_one(Basis.POWER, n)
    for j in range(1, n + 1):
        power = power.multiply(u)
        if not power.coeffs:
            break
        result = result + power.scale(Fraction((-1) ** (j + 1), j))
    return basis_convert(result, s.basis)
