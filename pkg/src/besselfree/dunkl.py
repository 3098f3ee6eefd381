"""Dunkl operators acting exactly on sparse multivariate polynomials.

The divided difference (1 - sigma_ij)/(x_i - x_j) is applied through its
closed two-case summation formula on monomials, never by polynomial division,
so every result is an exact polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .symcore import Partition, as_rat


class MVPoly:
    """Sparse exact-rational polynomial in a fixed number of variables.

    Terms are stored as {exponent tuple: Fraction} with no zero coefficients.
    """

    __slots__ = ("num_vars", "terms")

    def __init__(self, num_vars: int, terms=None):
        if num_vars < 1:
            raise ValueError("num_vars must be >= 1")
        self.num_vars = num_vars
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != num_vars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for {num_vars} variables")
            c = as_rat(c)
            if c:
                clean[exps] = c
        self.terms = clean

    @classmethod
    def constant(cls, num_vars: int, c) -> "MVPoly":
        return cls(num_vars, {(0,) * num_vars: as_rat(c)})

    @classmethod
    def variable(cls, num_vars: int, i: int) -> "MVPoly":
        """x_i, with i in 1..num_vars."""
        exps = [0] * num_vars
        exps[i - 1] = 1
        return cls(num_vars, {tuple(exps): Fraction(1)})

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.num_vars, Fraction(0))

    def coefficient(self, exps) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def __add__(self, other) -> "MVPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MVPoly(self.num_vars, out)

    __radd__ = __add__

    def __sub__(self, other) -> "MVPoly":
        return self + self._coerce(other).scale(-1)

    def __rsub__(self, other) -> "MVPoly":
        return self._coerce(other) - self

    def __neg__(self) -> "MVPoly":
        return self.scale(-1)

    def __mul__(self, other) -> "MVPoly":
        other = self._coerce(other)
        out: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return MVPoly(self.num_vars, out)

    __rmul__ = __mul__

    def _coerce(self, other) -> "MVPoly":
        if isinstance(other, MVPoly):
            self._check(other)
            return other
        return MVPoly.constant(self.num_vars, other)

    def scale(self, c) -> "MVPoly":
        c = as_rat(c)
        return MVPoly(self.num_vars, {e: c * v for e, v in self.terms.items()})

    def truncate(self, degree: int) -> "MVPoly":
        return MVPoly(self.num_vars,
                      {e: c for e, c in self.terms.items() if sum(e) <= degree})

    def partial(self, i: int) -> "MVPoly":
        """d/dx_i, with i in 1..num_vars."""
        idx = i - 1
        out = {}
        for e, c in self.terms.items():
            if e[idx]:
                key = e[:idx] + (e[idx] - 1,) + e[idx + 1:]
                out[key] = out.get(key, Fraction(0)) + c * e[idx]
        return MVPoly(self.num_vars, out)

    def restrict(self, m: int) -> "MVPoly":
        """Substitute x_{m+1} = ... = x_N = 0 and drop those variables."""
        if not 1 <= m <= self.num_vars:
            raise ValueError(f"cannot restrict {self.num_vars} variables to {m}")
        out = {}
        for e, c in self.terms.items():
            if any(e[m:]):
                continue
            key = e[:m]
            out[key] = out.get(key, Fraction(0)) + c
        return MVPoly(m, out)

    def evaluate(self, point) -> Fraction:
        point = [as_rat(v) for v in point]
        if len(point) != self.num_vars:
            raise ValueError("point has wrong dimension")
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for exp, x in zip(e, point):
                if exp:
                    v *= x ** exp
            total += v
        return total

    def is_symmetric(self) -> bool:
        groups: dict[tuple, set] = {}
        for e, c in self.terms.items():
            groups.setdefault(tuple(sorted(e, reverse=True)), set()).add(c)
        for key, values in groups.items():
            if len(values) > 1:
                return False
            expected = _distinct_permutation_count(key)
            present = sum(1 for e in self.terms if tuple(sorted(e, reverse=True)) == key)
            if present != expected:
                return False
        return True

    def _check(self, other):
        if not isinstance(other, MVPoly) or other.num_vars != self.num_vars:
            raise ValueError("operands must share the variable count")

    def __eq__(self, other):
        return (isinstance(other, MVPoly) and self.num_vars == other.num_vars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.num_vars, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "MVPoly(0)"
        bits = []
        for e in sorted(self.terms, key=lambda t: (sum(t), t), reverse=True):
            mono = "*".join(f"x{i+1}^{p}" for i, p in enumerate(e) if p)
            bits.append(f"{self.terms[e]}{'*' + mono if mono else ''}")
        return "MVPoly(" + " + ".join(bits) + ")"


def _distinct_permutation_count(sorted_exps) -> int:
    """Number of distinct rearrangements of an exponent vector."""
    from math import factorial
    from collections import Counter
    n = factorial(len(sorted_exps))
    for m in Counter(sorted_exps).values():
        n //= factorial(m)
    return n


def power_sum_poly(k: int, num_vars: int) -> MVPoly:
    """p_k = sum_i x_i^k as an MVPoly."""
    terms = {}
    for i in range(num_vars):
        e = [0] * num_vars
        e[i] = k
        terms[tuple(e)] = Fraction(1)
    return MVPoly(num_vars, terms)


def power_partition_poly(lam: Partition, num_vars: int) -> MVPoly:
    """p_lambda = prod_i p_{lambda_i} as an MVPoly."""
    out = MVPoly.constant(num_vars, 1)
    for part in lam:
        out = out * power_sum_poly(part, num_vars)
    return out


@dataclass(frozen=True)
class DunklContext:
    N: int
    theta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "theta", as_rat(self.theta))
        if self.N < 1:
            raise ValueError("N must be >= 1")
        if self.theta <= 0:
            raise ValueError("theta must be positive")

    def _check_index(self, i: int):
        if not 1 <= i <= self.N:
            raise IndexError(f"variable index {i} outside 1..{self.N}")


def divided_difference(ctx: DunklContext, i: int, j: int, f: MVPoly) -> MVPoly:
    """(1 - sigma_ij)/(x_i - x_j) applied to f, termwise.

    On a monomial with exponents m_i, m_j the result is
      sum_{a=m_j}^{m_i-1} x_i^a x_j^{m_i+m_j-1-a}   if m_i >= m_j,
      and the negated mirror sum if m_i < m_j.
    """
    ctx._check_index(i)
    ctx._check_index(j)
    if i == j:
        raise IndexError("divided difference needs distinct indices")
    if f.num_vars != ctx.N:
        raise ValueError("polynomial does not match context dimension")
    ii, jj = i - 1, j - 1
    out: dict[tuple, Fraction] = {}
    for e, c in f.terms.items():
        mi, mj = e[ii], e[jj]
        if mi == mj:
            continue
        sign = 1 if mi > mj else -1
        lo, hi = (mj, mi) if mi > mj else (mi, mj)
        base = list(e)
        for a in range(lo, hi):
            base[ii] = a
            base[jj] = mi + mj - 1 - a
            key = tuple(base)
            out[key] = out.get(key, Fraction(0)) + sign * c
    return MVPoly(ctx.N, out)


def dunkl_apply(ctx: DunklContext, i: int, f: MVPoly) -> MVPoly:
    """D_i f = d/dx_i f + theta * sum_{j != i} (1 - sigma_ij)/(x_i - x_j) f."""
    ctx._check_index(i)
    if f.num_vars != ctx.N:
        raise ValueError("polynomial does not match context dimension")
    out = f.partial(i)
    for j in range(1, ctx.N + 1):
        if j != i:
            out = out + divided_difference(ctx, i, j, f).scale(ctx.theta)
    return out


def pk_apply(ctx: DunklContext, k: int, f: MVPoly) -> MVPoly:
    """P_k f = sum_i D_i^k f."""
    if k < 1:
        raise ValueError("k must be >= 1")
    total = MVPoly(ctx.N, {})
    for i in range(1, ctx.N + 1):
        g = f
        for _ in range(k):
            g = dunkl_apply(ctx, i, g)
        total = total + g
    return total


def moment_extract(ctx: DunklContext, G: MVPoly, lam: Partition) -> Fraction:
    """(prod_i P_{lambda_i}) G at x = 0.

    When G truncates the Bessel generating function of mu to degree >= |lambda|
    this equals E_mu[prod_i sum_j a_j^{lambda_i}].
    """
    lam = Partition(lam)
    if G.degree() < lam.size:
        raise ValueError(
            f"insufficient truncation: G has degree {G.degree()} < |lambda| = {lam.size}"
        )
    if G.constant_term() != 1:
        raise ValueError("G must be normalized with G(0) = 1")
    out = G
    for part in lam:
        out = pk_apply(ctx, part, out)
    return out.constant_term()
