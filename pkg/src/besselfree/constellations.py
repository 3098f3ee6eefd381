"""Rooted connected orientable constellations and the cumulant formula.

Encoding convention: a k-constellation of size d is a tuple of permutations
(sigma_0, sigma_1, ..., sigma_k) of the labels {0..d-1} whose generated group
is transitive.  Cycles of sigma_i are the color-i vertices, cycles of the
composite sigma_k o ... o sigma_0 are the faces, and label 0 is the root.
Rooted objects are orbits under relabelings fixing the root; since the
centralizer of a transitive group acts freely, each orbit contains exactly
(d-1)! labeled tuples.

The convention is pinned by three checks (see the tests): the Euler relation
holds on every enumerated object, d = 1 yields exactly one genus-0 object,
and the one-face genus-0 normal sum reproduces the free-cumulant polynomials.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .dunkl import MVPoly
from .symcore import Partition, as_rat, f_eta_eval

ENUM_SIZE_CAP = 4
ENUM_COLOR_CAP = 4


def _compose(p, q):
    """p after q: (p o q)[i] = p[q[i]]."""
    return tuple(p[q[i]] for i in range(len(q)))


def _cycles(p):
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = p[i]
        out.append(tuple(cyc))
    return out


def _cycle_type(p) -> Partition:
    return Partition(sorted((len(c) for c in _cycles(p)), reverse=True))


def _num_cycles(p) -> int:
    return len(_cycles(p))


def _is_transitive(perms, d: int) -> bool:
    seen = [False] * d
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        i = stack.pop()
        for p in perms:
            j = p[i]
            if not seen[j]:
                seen[j] = True
                count += 1
                stack.append(j)
    return count == d


def _conjugate(p, g, ginv):
    """g o p o g^{-1}."""
    return tuple(g[p[ginv[i]]] for i in range(len(p)))


@lru_cache(maxsize=None)
def _root_fixing_group(d: int):
    """Permutations of {0..d-1} fixing 0, with their inverses."""
    out = []
    for rest in itertools.permutations(range(1, d)):
        g = (0,) + rest
        ginv = [0] * d
        for i, v in enumerate(g):
            ginv[v] = i
        out.append((g, tuple(ginv)))
    return tuple(out)


@dataclass(frozen=True)
class OrientedConstellation:
    """Rooted connected orientable k-constellation given by its permutation tuple."""

    d: int
    k: int
    perms: tuple  # (sigma_0, ..., sigma_k)
    root: int = 0

    def face_permutation(self):
        phi = self.perms[0]
        for p in self.perms[1:]:
            phi = _compose(p, phi)
        return phi


@dataclass(frozen=True)
class ConstellationStats:
    mu1: Partition       # face degrees (color-0 corners per face)
    mu2: Partition       # color-0 vertex degrees
    eta: tuple           # d - v_i for colors i = 1..k
    genus: int
    normal: bool


def constellation_stats(M: OrientedConstellation) -> ConstellationStats:
    """Face/vertex/genus statistics; genus comes from the Euler relation."""
    d, k = M.d, M.k
    mu1 = _cycle_type(M.face_permutation())
    mu2 = _cycle_type(M.perms[0])
    vs = [_num_cycles(p) for p in M.perms[1:]]
    eta = tuple(d - v for v in vs)
    # chi = V - E + F with E = k*d
    chi = _num_cycles(M.perms[0]) + sum(vs) - k * d + mu1.length
    if chi % 2 or chi > 2:
        raise RuntimeError(
            f"Euler inconsistency: chi = {chi} for perms {M.perms}; encoding bug"
        )
    genus = (2 - chi) // 2
    normal = all(eta[i] >= eta[i + 1] for i in range(len(eta) - 1))
    return ConstellationStats(mu1, mu2, eta, genus, normal)


def enumerate_orientable(d: int, k: int) -> list[OrientedConstellation]:
    """All rooted connected orientable k-constellations of size d.

    Each orbit under root-fixing relabeling is returned once, through its
    lexicographically minimal permutation tuple.
    """
    if not 1 <= d <= ENUM_SIZE_CAP:
        raise ValueError(f"size d must lie in 1..{ENUM_SIZE_CAP}")
    if not 1 <= k <= ENUM_COLOR_CAP:
        raise ValueError(f"color count k must lie in 1..{ENUM_COLOR_CAP}")
    perms = list(itertools.permutations(range(d)))
    group = _root_fixing_group(d)
    out = []
    for tup in itertools.product(perms, repeat=k + 1):
        if not _is_transitive(tup, d):
            continue
        if any(tuple(_conjugate(p, g, ginv) for p in tup) < tup for g, ginv in group):
            continue
        out.append(OrientedConstellation(d, k, tup))
    return out


@lru_cache(maxsize=None)
def _f_eta_signs(eta: Partition) -> Fraction:
    """f_eta evaluated at e_k = (-1)^k."""
    if not eta:
        return Fraction(1)
    values = [Fraction((-1) ** k) for k in range(1, eta.size + 1)]
    return f_eta_eval(eta, values)


def _moment_monomial(mu2: Partition, num_vars: int) -> MVPoly:
    """prod over color-0 vertices of the formal moment m_{deg(v)}."""
    exps = [0] * num_vars
    for part in mu2:
        exps[part - 1] += 1
    return MVPoly(num_vars, {tuple(exps): Fraction(1)})


@lru_cache(maxsize=None)
def cumulant_polynomial(d: int) -> MVPoly:
    """kappa_d as a polynomial in the formal moments m_1..m_d.

    Sums prod_v m_{deg(v)} * f_eta({(-1)^k}) over rooted connected normal
    constellations of size d with one face and genus zero, the rooted count
    realized as labeled tuples weighted by 1/(d-1)!.
    """
    if not 1 <= d <= ENUM_SIZE_CAP:
        raise ValueError(f"d must lie in 1..{ENUM_SIZE_CAP}")
    levels = max(1, d - 1)
    perms = list(itertools.permutations(range(d)))
    by_cycles: dict[int, list] = {}
    for p in perms:
        by_cycles.setdefault(_num_cycles(p), []).append(p)
    weight = Fraction(1, factorial(d - 1))
    total = MVPoly(d, {})

    def extend(chain, prev_cycles):
        # normality: eta weakly decreasing <=> cycle counts weakly increasing
        if len(chain) == levels:
            yield tuple(chain)
            return
        for c in range(prev_cycles, d + 1):
            for p in by_cycles.get(c, []):
                chain.append(p)
                yield from extend(chain, c)
                chain.pop()

    for sigma0 in perms:
        mu2 = _cycle_type(sigma0)
        base = _moment_monomial(mu2, d).scale(weight)
        for colors in extend([], 1):
            tup = (sigma0,) + colors
            if not _is_transitive(tup, d):
                continue
            M = OrientedConstellation(d, levels, tup)
            stats = constellation_stats(M)
            if stats.genus != 0 or stats.mu1.length != 1:
                continue
            eta = Partition(tuple(e for e in stats.eta if e))
            total = total + base.scale(_f_eta_signs(eta))
    return total


def moment_polynomial_text(poly: MVPoly) -> str:
    """Render a polynomial in the formal moments, e.g. 'm2 - m1^2'."""
    if not poly.terms:
        return "0"
    keys = sorted(poly.terms, key=lambda e: tuple(reversed(e)), reverse=True)
    bits = []
    for e in keys:
        c = poly.terms[e]
        vars_txt = "".join(
            f"m{i + 1}" + (f"^{p}" if p > 1 else "")
            for i, p in enumerate(e) if p
        )
        mag = abs(c)
        coeff_txt = "" if (mag == 1 and vars_txt) else str(mag)
        term = coeff_txt + vars_txt if not (coeff_txt and vars_txt) else f"{coeff_txt}{vars_txt}"
        if not bits:
            bits.append(term if c > 0 else f"-{term}")
        else:
            bits.append(("+ " if c > 0 else "- ") + term)
    return " ".join(bits)


# ---------------------------------------------------------------------------
# leading-coefficient verification against exact Bessel data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LeadingCoeffRow:
    degree: int
    fitted: Fraction      # 1/N-extrapolated a_(d)^N / N
    predicted: Fraction   # theta^{1-d} kappa_d / d from the constellation sum
    residual: Fraction
    rel_residual: Fraction  # residual / max(|predicted|, 1)


@dataclass(frozen=True)
class LeadingCoeffReport:
    theta: Fraction
    n_values: tuple
    moments: tuple  # limiting m_k used in the prediction
    rows: tuple

    def format_text(self) -> str:
        lines = [f"leading-coefficient check, theta = {self.theta}, N grid {list(self.n_values)}"]
        for r in self.rows:
            lines.append(
                f"  d={r.degree}: fit a_(d)/N -> {r.fitted} "
                f"vs prediction {r.predicted} (rel residual {float(r.rel_residual):.3g})"
            )
        return "\n".join(lines)


def leading_coeff_verify(d: int, theta, profile, limit_moments=None) -> LeadingCoeffReport:
    """Compare 1/N-extrapolated a_(e)^N / N, e <= d, with the constellation
    prediction theta^{1-e} kappa_e / e.

    `profile` is a list of exact point vectors a(N) over a strictly increasing
    grid of N; `limit_moments` may supply the limiting m_k, otherwise they are
    extrapolated from the profile's scaled power sums.
    """
    from .bessel import _fit_inverse_n, point_mass_log_coeffs

    theta = as_rat(theta)
    profile = [tuple(as_rat(v) for v in vec) for vec in profile]
    ns = [len(vec) for vec in profile]
    if len(profile) < 3:
        raise ValueError("insufficient grid: need at least 3 values of N")
    if any(ns[i] >= ns[i + 1] for i in range(len(ns) - 1)):
        raise ValueError("profile vectors must come with strictly increasing N")
    if d > min(ns):
        raise ValueError("degree exceeds the smallest N in the grid")

    if limit_moments is None:
        moments = []
        for k in range(1, d + 1):
            pts = [
                (n, sum((v / n) ** k for v in vec) / n)
                for n, vec in zip(ns, profile)
            ]
            moments.append(_fit_inverse_n(pts)[0])
    else:
        moments = [as_rat(m) for m in limit_moments]
        if len(moments) < d:
            raise ValueError(f"need limiting moments through order {d}")

    coeff_seq = [point_mass_log_coeffs(vec, theta, d) for vec in profile]
    rows = []
    for e in range(1, d + 1):
        pts = [(n, g[(e,)] / n) for n, g in zip(ns, coeff_seq)]
        fitted = _fit_inverse_n(pts)[0]
        kappa_e = cumulant_polynomial(e).evaluate(moments[:e])
        predicted = theta ** (1 - e) * kappa_e / e
        residual = abs(fitted - predicted)
        rel = residual / max(abs(predicted), Fraction(1))
        rows.append(LeadingCoeffRow(e, fitted, predicted, residual, rel))
    return LeadingCoeffReport(theta, tuple(ns), tuple(moments), tuple(rows))
