"""Truncated multivariate Bessel functions and Bessel generating functions.

The Bessel function of an N-point a is realized through its Jack expansion
    B_a(x) = sum_lambda  w_lambda  J_lambda(a) J_lambda(x),
with w_lambda from `jack.jack_weight` at alpha = 1/theta.  Atomic measures get
their generating function by mixing these series; log-coefficient extraction,
the LLN-appropriateness checker, theta-addition, corner restriction and the
Dyson-Brownian time factor all act on the extracted power-sum coefficients.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .dunkl import MVPoly, power_partition_poly
from .jack import DEFAULT_DEGREE_CAP, JackParam, jack_J, jack_weight
from .symcore import (
    Basis, Partition, SymSeries, as_rat, basis_convert, partitions_of,
    series_exp, series_log, sym_one,
)


@dataclass(frozen=True)
class AtomicMeasure:
    """Finite atomic probability measure on the closed Weyl chamber of R^N."""

    N: int
    atoms: tuple  # ((weight, point), ...) with point a length-N tuple

    def __post_init__(self):
        atoms = []
        total = Fraction(0)
        for weight, point in self.atoms:
            weight = as_rat(weight)
            point = tuple(as_rat(v) for v in point)
            if weight <= 0:
                raise ValueError("atom weights must be positive")
            if len(point) != self.N:
                raise ValueError(f"atom {point} does not have {self.N} coordinates")
            if any(point[i] > point[i + 1] for i in range(self.N - 1)):
                raise ValueError(f"atom {point} not in the Weyl chamber a1<=...<=aN")
            total += weight
            atoms.append((weight, point))
        if total != 1:
            raise ValueError(f"atom weights sum to {total}, expected 1")
        object.__setattr__(self, "atoms", tuple(atoms))

    @classmethod
    def point_mass(cls, point) -> "AtomicMeasure":
        point = tuple(as_rat(v) for v in point)
        return cls(len(point), ((Fraction(1), point),))

    @classmethod
    def from_json(cls, text: str) -> tuple["AtomicMeasure", Fraction]:
        """Parse the shared measure format; returns (measure, theta)."""
        data = json.loads(text)
        theta = Fraction(str(data["theta"]))
        atoms = tuple(
            (Fraction(str(atom["w"])), tuple(Fraction(str(v)) for v in atom["a"]))
            for atom in data["atoms"]
        )
        return cls(int(data["N"]), atoms), theta

    def to_json(self, theta) -> str:
        return json.dumps({
            "N": self.N,
            "theta": str(as_rat(theta)),
            "atoms": [
                {"w": str(w), "a": [str(v) for v in pt]} for w, pt in self.atoms
            ],
        })


@dataclass(frozen=True)
class BgfCoeffs:
    """Power-sum coefficients a_lambda of the log of a Bessel generating function."""

    N: int
    theta: Fraction
    series: SymSeries  # POWER basis, constant term 0

    def __post_init__(self):
        object.__setattr__(self, "theta", as_rat(self.theta))
        if self.series.basis is not Basis.POWER:
            raise ValueError("BgfCoeffs series must be in the power basis")
        if self.series.constant_term != 0:
            raise ValueError("log coefficients must have zero constant term")
        if self.N > 1 and self.series.truncation_degree > self.N:
            raise ValueError(
                f"truncation {self.series.truncation_degree} exceeds N = {self.N}; "
                "power-sum expansion not unique"
            )

    def __getitem__(self, lam) -> Fraction:
        return self.series[lam]


def _power_values(a: Sequence[Fraction], deg: int) -> list[Fraction]:
    a = [as_rat(v) for v in a]
    return [sum((v ** k for v in a), Fraction(0)) for k in range(1, deg + 1)]


@lru_cache(maxsize=None)
def _power_mvpoly(lam: Partition, num_vars: int) -> MVPoly:
    return power_partition_poly(lam, num_vars)


def _bessel_terms(n: int, N: int, theta: Fraction, degree_cap: int):
    """Pairs (lambda, weight) entering the truncated Jack expansion."""
    theta = as_rat(theta)
    if n > degree_cap:
        raise ValueError(f"truncation degree {n} exceeds degree cap {degree_cap}")
    param = JackParam(1 / theta)
    out = []
    for d in range(n + 1):
        for lam in partitions_of(d):
            if lam.length <= N:
                out.append((lam, jack_weight(lam, param, N, theta)))
    return out


def bessel_truncated(a: Sequence, theta, n: int,
                     degree_cap: int = DEFAULT_DEGREE_CAP) -> MVPoly:
    """Degree-n truncation of B_a(x; theta) as a polynomial in N = len(a) variables."""
    a = tuple(as_rat(v) for v in a)
    N = len(a)
    theta = as_rat(theta)
    param = JackParam(1 / theta)
    pvals = _power_values(a, max(n, 1))
    out = MVPoly(N, {})
    for lam, weight in _bessel_terms(n, N, theta, degree_cap):
        series = jack_J(lam, param, degree_cap)
        j_at_a = _eval_power_series(series, pvals)
        if not j_at_a:
            continue
        poly = MVPoly(N, {})
        for mu, c in series.coeffs.items():
            poly = poly + _power_mvpoly(mu, N).scale(c)
        out = out + poly.scale(weight * j_at_a)
    return out


def bessel_power_series(a: Sequence, theta, n: int,
                        degree_cap: int = DEFAULT_DEGREE_CAP) -> SymSeries:
    """Truncated B_a as an abstract power-sum series.

    Faithful to the N-variable polynomial only for n <= N (or N = 1, where
    every partition folds onto its single-row representative).
    """
    a = tuple(as_rat(v) for v in a)
    N = len(a)
    if n > N and N != 1:
        raise ValueError(f"abstract series requires n <= N, got n={n}, N={N}")
    theta = as_rat(theta)
    param = JackParam(1 / theta)
    pvals = _power_values(a, max(n, 1))
    out = sym_one(Basis.POWER, n)
    for lam, weight in _bessel_terms(n, N, theta, degree_cap):
        if not lam:
            continue
        series = jack_J(lam, param, degree_cap)
        j_at_a = _eval_power_series(series, pvals)
        if j_at_a:
            out = out + SymSeries(Basis.POWER, n, series.coeffs).scale(weight * j_at_a)
    if N == 1:
        out = _fold_single_variable(out)
    return out


def _eval_power_series(series: SymSeries, pvals) -> Fraction:
    total = Fraction(0)
    for lam, c in series.coeffs.items():
        prod = c
        for part in lam:
            prod *= pvals[part - 1]
        total += prod
    return total


def _fold_single_variable(s: SymSeries) -> SymSeries:
    """In one variable p_lambda = p_(|lambda|); collapse keys accordingly."""
    out: dict[Partition, Fraction] = {}
    for lam, c in s.coeffs.items():
        key = Partition((lam.size,)) if lam else lam
        out[key] = out.get(key, Fraction(0)) + c
    return SymSeries(Basis.POWER, s.truncation_degree, out)


def bgf_atomic(mu: AtomicMeasure, theta, n: int,
               degree_cap: int = DEFAULT_DEGREE_CAP) -> MVPoly:
    """Truncated Bessel generating function of a finite atomic measure."""
    out = MVPoly(mu.N, {})
    for weight, point in mu.atoms:
        out = out + bessel_truncated(point, theta, n, degree_cap).scale(weight)
    return out


def log_bgf_coeffs(G: MVPoly, theta) -> BgfCoeffs:
    """Extract the power-sum coefficients a_lambda of ln G.

    G must be symmetric with G(0) = 1 and degree <= N (any degree for N = 1,
    where the single-row expansion is unconditionally unique).
    """
    N = G.num_vars
    deg = G.degree()
    if G.constant_term() != 1:
        raise ValueError("G must have constant term 1")
    if deg > N and N != 1:
        raise ValueError(
            f"G has degree {deg} > N = {N}; power-sum expansion not unique"
        )
    mono = _monomial_series(G)
    logs = series_log(mono)
    power = basis_convert(logs, Basis.POWER)
    if N == 1:
        power = _fold_single_variable(power)
    return BgfCoeffs(N, theta, power)


def _monomial_series(G: MVPoly) -> SymSeries:
    """Symmetric N-variable polynomial -> monomial-basis series, with validation."""
    groups: dict[tuple, dict] = {}
    for e, c in G.terms.items():
        groups.setdefault(tuple(sorted(e, reverse=True)), {})[e] = c
    coeffs = {}
    for key, members in groups.items():
        values = set(members.values())
        from .dunkl import _distinct_permutation_count
        if len(values) > 1 or len(members) != _distinct_permutation_count(key):
            raise ValueError("asymmetric input: G is not a symmetric polynomial")
        lam = Partition(tuple(p for p in key if p))
        coeffs[lam] = next(iter(values))
    return SymSeries(Basis.MONOMIAL, G.degree(), coeffs)


def bgf_polynomial(g: BgfCoeffs) -> MVPoly:
    """Reconstruct the truncated generating function exp(sum a_lambda p_lambda)."""
    expanded = series_exp(g.series)
    out = MVPoly(g.N, {})
    for lam, c in expanded.coeffs.items():
        out = out + _power_mvpoly(lam, g.N).scale(c)
    return out


def point_mass_log_coeffs(a: Sequence, theta, deg: int,
                          degree_cap: int = DEFAULT_DEGREE_CAP) -> BgfCoeffs:
    """Log-BGF coefficients of a point mass, via the abstract series fast path.

    Equal to log_bgf_coeffs(bgf_atomic(delta_a, theta, deg)) whenever deg <= N.
    """
    series = bessel_power_series(a, theta, deg, degree_cap)
    power = series_log(series)
    if len(tuple(a)) == 1:
        power = _fold_single_variable(power)
    return BgfCoeffs(len(tuple(a)), theta, power)


# ---------------------------------------------------------------------------
# LLN-appropriateness checking
# ---------------------------------------------------------------------------

def _fit_inverse_n(points):
    """Exact least squares of y = c0 + c1/N over [(N, y)]; returns (c0, c1)."""
    xs = [Fraction(1, n) for n, _ in points]
    ys = [as_rat(y) for _, y in points]
    n = Fraction(len(points))
    s1 = sum(xs, Fraction(0))
    s2 = sum((x * x for x in xs), Fraction(0))
    t0 = sum(ys, Fraction(0))
    t1 = sum((x * y for x, y in zip(xs, ys)), Fraction(0))
    det = n * s2 - s1 * s1
    c0 = (s2 * t0 - s1 * t1) / det
    c1 = (n * t1 - s1 * t0) / det
    return c0, c1


@dataclass(frozen=True)
class LlnReport:
    """Outcome of the theta-LLN-appropriateness check on a BGF sequence.

    kappa_estimates holds the 1/N-extrapolated kappa_d; the residual maps feed
    the verdict: condition (a) residuals measure the deviation of the data from
    its c0 + c1/N fit, condition (b) residuals are the extrapolated limits of
    a_lambda / N^len(lambda) for len >= 2 (raw per-N values kept alongside).
    """

    theta: Fraction
    tol: float
    n_values: tuple
    kappa_estimates: dict       # d -> Fraction (fit)
    kappa_at_largest: dict      # d -> Fraction (largest N, no extrapolation)
    condition_a_residuals: dict  # (N, d) -> Fraction >= 0
    condition_b_residuals: dict  # Partition -> Fraction >= 0 (extrapolated)
    condition_b_raw: dict       # (N, Partition) -> Fraction >= 0
    verdict: bool

    def format_text(self) -> str:
        lines = [f"LLN check over N = {list(self.n_values)}, theta = {self.theta}"]
        for d in sorted(self.kappa_estimates):
            lines.append(
                f"  kappa_{d} = {self.kappa_estimates[d]} "
                f"(at largest N: {self.kappa_at_largest[d]})"
            )
        worst_a = max(self.condition_a_residuals.values(), default=Fraction(0))
        worst_b = max(self.condition_b_residuals.values(), default=Fraction(0))
        lines.append(f"  condition (a) worst fit residual: {float(worst_a):.3g}")
        lines.append(f"  condition (b) worst extrapolated residual: {float(worst_b):.3g}")
        lines.append(f"  verdict: {'pass' if self.verdict else 'FAIL'} (tol {self.tol})")
        return "\n".join(lines)


def lln_check(seq, theta, tol: float = 1e-2) -> LlnReport:
    """Check conditions (a)/(b) on a sequence of (N, BgfCoeffs) with increasing N."""
    theta = as_rat(theta)
    if len(seq) < 3:
        raise ValueError("insufficient sequence: need at least 3 values of N")
    ns = [n for n, _ in seq]
    if any(ns[i] >= ns[i + 1] for i in range(len(ns) - 1)):
        raise ValueError("N values must be strictly increasing")
    for n, g in seq:
        if g.N != n:
            raise ValueError(f"sequence entry labeled N={n} carries BgfCoeffs with N={g.N}")
        if g.theta != theta:
            raise ValueError("sequence mixes theta values")

    max_deg = min(g.series.truncation_degree for _, g in seq)
    kappa_fit, kappa_last = {}, {}
    res_a, res_b, raw_b = {}, {}, {}
    for d in range(1, max_deg + 1):
        pts = [(n, g[(d,)] / n) for n, g in seq]
        c0, c1 = _fit_inverse_n(pts)
        scale = d * theta ** (d - 1)
        kappa_fit[d] = scale * c0
        kappa_last[d] = scale * pts[-1][1]
        for n, y in pts:
            res_a[(n, d)] = abs(y - (c0 + c1 * Fraction(1, n)))
    multi = set()
    for _, g in seq:
        multi.update(lam for lam in g.series.coeffs if lam.length >= 2)
    for lam in sorted(multi):
        pts = [(n, g[lam] / Fraction(n) ** lam.length) for n, g in seq]
        c0, _ = _fit_inverse_n(pts)
        res_b[lam] = abs(c0)
        for n, y in pts:
            raw_b[(n, lam)] = abs(y)
    verdict = all(v < tol for v in res_a.values()) and all(
        v < tol for v in res_b.values()
    )
    return LlnReport(theta, tol, tuple(ns), kappa_fit, kappa_last,
                     res_a, res_b, raw_b, verdict)


# ---------------------------------------------------------------------------
# BGF-level operations
# ---------------------------------------------------------------------------

def theta_add(g1: BgfCoeffs, g2: BgfCoeffs) -> BgfCoeffs:
    """Theta-addition at the generating-function level: log-coefficients add."""
    if (g1.N, g1.theta, g1.series.truncation_degree) != (
            g2.N, g2.theta, g2.series.truncation_degree):
        raise ValueError("mismatched context: need equal N, theta and truncation")
    return BgfCoeffs(g1.N, g1.theta, g1.series + g2.series)


def corner_restrict(G: MVPoly, M: int) -> MVPoly:
    """Substitute x_{M+1} = ... = x_N = 0, the corners projection of the BGF."""
    if not 1 <= M < G.num_vars:
        raise ValueError(f"need 1 <= M < N = {G.num_vars}, got M = {M}")
    return G.restrict(M)


def dbm_factor(g: BgfCoeffs, t) -> BgfCoeffs:
    """Time-t Dyson-Brownian factor exp((t/2) p_2): adds t/2 to a_(2)."""
    t = as_rat(t)
    if g.series.truncation_degree < 2:
        raise ValueError("dbm_factor needs truncation degree >= 2")
    bump = SymSeries(Basis.POWER, g.series.truncation_degree,
                     {Partition((2,)): t / 2})
    return BgfCoeffs(g.N, g.theta, g.series + bump)
