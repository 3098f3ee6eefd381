"""Lukasiewicz-path moment/free-cumulant correspondence and free operations.

The forward map is the path sum
    m_k = sum over Lukasiewicz paths of length k of
          prod_d kappa_d^{# steps of rise d-1},
down-steps carrying weight one.  Its inverse is a triangular solve, and an
independent oracle recomputes cumulants through non-crossing partitions.
All maps work over any commutative scalars (Fractions, floats, polynomials).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

LUK_CAP = 12


@dataclass(frozen=True)
class LukPath:
    """Lattice path from (0,0) to (k,0), steps (1,d) with d >= -1, heights >= 0."""

    steps: tuple

    def __post_init__(self):
        steps = tuple(int(s) for s in self.steps)
        object.__setattr__(self, "steps", steps)
        h = 0
        for s in steps:
            if s < -1:
                raise ValueError(f"step rise {s} below -1")
            h += s
            if h < 0:
                raise ValueError(f"path {steps} leaves the first quadrant")
        if h != 0:
            raise ValueError(f"path {steps} does not return to height 0")

    def __len__(self):
        return len(self.steps)

    def rise_counts(self) -> dict:
        """Map d -> number of steps (1, d-1), for d >= 1."""
        out: dict[int, int] = {}
        for s in self.steps:
            if s >= 0:
                out[s + 1] = out.get(s + 1, 0) + 1
        return out


def luk_enumerate(k: int) -> list[LukPath]:
    """All Lukasiewicz paths of length k, in lexicographic step order."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > LUK_CAP:
        raise ValueError(f"enumeration capped at k <= {LUK_CAP}")
    out = []

    def rec(prefix, height, remaining):
        if remaining == 0:
            if height == 0:
                out.append(LukPath(tuple(prefix)))
            return
        # must be able to return to 0 with steps >= -1
        for rise in range(-1 if height else 0, remaining - height):
            prefix.append(rise)
            rec(prefix, height + rise, remaining - 1)
            prefix.pop()

    rec([], 0, k)
    return out


def moments_from_cumulants(kappa, K: int) -> list:
    """Moments m_1..m_K from cumulants via the Lukasiewicz path sum.

    Evaluated by dynamic programming over (steps taken, height); identical to
    summing the per-path products.
    """
    kappa = list(kappa)
    if len(kappa) < K:
        raise ValueError(f"need kappa through order {K}")
    out = []
    for k in range(1, K + 1):
        # state: height -> accumulated weight after some steps
        state = {0: 1}
        for pos in range(k):
            nxt: dict[int, object] = {}
            remaining = k - pos - 1
            for h, w in state.items():
                if h > 0:
                    _acc(nxt, h - 1, w)
                for rise in range(0, remaining - h + 1):
                    _acc(nxt, h + rise, w * kappa[rise])
            state = nxt
        out.append(state.get(0, 0))
    return out


def _acc(d, key, val):
    if key in d:
        d[key] = d[key] + val
    else:
        d[key] = val


def cumulants_from_moments(m, K: int) -> list:
    """Invert the path formula: m_k = kappa_k + polynomial in lower cumulants."""
    m = list(m)
    if len(m) < K:
        raise ValueError(f"need moments through order {K}")
    kappa: list = []
    for k in range(1, K + 1):
        partial = moments_from_cumulants(kappa + [0 * m[k - 1]], k)[k - 1]
        kappa.append(m[k - 1] - partial)
    return kappa


def noncrossing_partitions(k: int):
    """All non-crossing partitions of {0..k-1}, as tuples of sorted blocks."""
    if k == 0:
        return [()]
    out = []

    def rec(elements):
        if not elements:
            yield ()
            return
        first, rest = elements[0], elements[1:]
        # choose the rest of first's block; elements between consecutive
        # chosen points must be partitioned among themselves (non-crossing)
        for sub in _subsets(rest):
            block = (first,) + sub
            segments = []
            bounds = list(block) + [None]
            for i in range(len(block)):
                lo = block[i]
                hi = bounds[i + 1]
                seg = tuple(e for e in rest if e > lo and (hi is None or e < hi) and e not in sub)
                segments.append(seg)
            for combo in _product_partitions(segments):
                yield (block,) + combo

    out = list(rec(tuple(range(k))))
    return out


def _subsets(elements):
    n = len(elements)
    for mask in range(1 << n):
        yield tuple(elements[i] for i in range(n) if mask >> i & 1)


def _product_partitions(segments):
    if not segments:
        yield ()
        return
    head, tail = segments[0], segments[1:]
    for p_head in (noncrossing_partitions(len(head)) if head else [()]):
        relabeled = tuple(tuple(head[i] for i in block) for block in p_head)
        for p_tail in _product_partitions(tail):
            yield relabeled + p_tail


def nc_oracle_cumulants(m, K: int) -> list:
    """Cumulants from moments through the classical non-crossing partition sum.

    Independent of the Lukasiewicz route; their agreement is a theorem.
    """
    if K > 10:
        raise ValueError("non-crossing oracle capped at K <= 10")
    m = list(m)
    if len(m) < K:
        raise ValueError(f"need moments through order {K}")
    kappa: list = []
    for k in range(1, K + 1):
        total = 0 * m[k - 1]
        for pi in noncrossing_partitions(k):
            if len(pi) == 1:
                continue  # the full block carries kappa_k, solved for below
            prod = None
            for block in pi:
                prod = kappa[len(block) - 1] if prod is None else prod * kappa[len(block) - 1]
            total = total + prod
        kappa.append(m[k - 1] - total)
    return kappa


def free_convolve(kappa_a, kappa_b) -> list:
    """Free convolution: cumulants add componentwise."""
    kappa_a, kappa_b = list(kappa_a), list(kappa_b)
    if len(kappa_a) != len(kappa_b):
        raise ValueError("cumulant sequences must have equal length")
    return [a + b for a, b in zip(kappa_a, kappa_b)]


def free_project(kappa, alpha) -> list:
    """Free alpha-projection: every cumulant is divided by alpha in (0, 1]."""
    if isinstance(alpha, float):
        ok = 0.0 < alpha <= 1.0
    else:
        alpha = Fraction(alpha)
        ok = 0 < alpha <= 1
    if not ok:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    return [k / alpha for k in kappa]


def semicircle_cumulants(T, K: int) -> list:
    """Free cumulants (0, T, 0, 0, ...) of the semicircle law of variance T."""
    if (T < 0) if not isinstance(T, float) else (T < 0.0):
        raise ValueError("T must be >= 0")
    return [T if d == 2 else 0 * T for d in range(1, K + 1)]
