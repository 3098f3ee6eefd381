"""Seeded Monte-Carlo samplers for Gaussian beta-ensembles, theta-Dyson
Brownian motion, and theta-corners processes.

Determinism contract: every trajectory draws from its own stream derived from
(seed, trajectory index), so identical configurations reproduce bit-identical
output and batch or thread scheduling cannot change results.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

COLLISION_GUARD = 1e-12
MAX_HALVINGS = 10
TAME_FACTOR = 0.5          # drift kernel regularization, delta = 0.5 sqrt(theta dt)
MCMC_THIN = 10             # sweeps between recorded corner draws
MCMC_GRID = 512            # grid points for the one-dimensional conditionals
DBM_BATCH = 256


@dataclass
class SimConfig:
    N: int
    theta: float
    seed: int
    trajectories: int = 1
    dt: float = 1e-3
    t_final: float = 1.0
    mcmc_sweeps: int = 100   # burn-in sweeps for the corners Gibbs sampler

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be >= 1")
        if self.theta <= 0:
            raise ValueError("theta must be positive")
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.trajectories < 1:
            raise ValueError("trajectories must be >= 1")


@dataclass
class EnsembleSample:
    points: np.ndarray  # trajectories x N, rows weakly increasing

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, dtype=float))
        self.points = np.sort(pts, axis=1)

    @property
    def trajectories(self) -> int:
        return self.points.shape[0]

    @property
    def N(self) -> int:
        return self.points.shape[1]


@dataclass
class MomentEstimate:
    ks: tuple
    mean: np.ndarray
    stderr: np.ndarray

    def as_rows(self):
        return [(k, m, s) for k, m, s in zip(self.ks, self.mean, self.stderr)]


def _traj_rng(seed: int, traj: int) -> np.random.Generator:
    return np.random.default_rng([seed & 0xFFFFFFFFFFFFFFFF, traj])


def _map_batches(worker, n_traj: int, threads: int, batch: int):
    ranges = [(lo, min(lo + batch, n_traj)) for lo in range(0, n_traj, batch)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(lambda r: worker(*r), ranges))
    else:
        chunks = [worker(lo, hi) for lo, hi in ranges]
    return np.concatenate(chunks, axis=0)


# ---------------------------------------------------------------------------
# Gaussian beta-ensemble
# ---------------------------------------------------------------------------

def sample_gbe(cfg: SimConfig, variance: float, threads: int = 1) -> EnsembleSample:
    """Draws from the density ~ prod |l_i - l_j|^{2 theta} prod e^{-l^2/(2 variance)}.

    Sampled through the symmetric tridiagonal beta-Hermite model: Gaussian
    diagonal, chi off-diagonal with parameter beta (N - i), beta = 2 theta.
    """
    if variance <= 0:
        raise ValueError("variance must be positive")
    beta = 2.0 * cfg.theta
    scale = np.sqrt(variance)
    dfs = beta * np.arange(cfg.N - 1, 0, -1)

    def worker(lo, hi):
        out = np.empty((hi - lo, cfg.N))
        for t in range(lo, hi):
            rng = _traj_rng(cfg.seed, t)
            diag = scale * rng.standard_normal(cfg.N)
            if cfg.N == 1:
                out[t - lo] = diag
                continue
            off = scale * np.sqrt(rng.chisquare(dfs) / 2.0)
            out[t - lo] = eigvalsh_tridiagonal(diag, off)
        return out

    pts = _map_batches(worker, cfg.trajectories, threads, 512)
    return EnsembleSample(pts)


# ---------------------------------------------------------------------------
# theta-Dyson Brownian motion
# ---------------------------------------------------------------------------

def _dbm_drift(w: np.ndarray, theta: float, delta2: float) -> np.ndarray:
    diff = w[..., :, None] - w[..., None, :]
    kernel = diff / (diff * diff + delta2)
    return theta * kernel.sum(axis=-1)


def _dbm_substep(w, gen, dt, theta, delta2, depth):
    drift = _dbm_drift(w, theta, delta2)
    prop = w + drift * dt + np.sqrt(dt) * gen.standard_normal(w.shape[0])
    prop.sort()
    if np.diff(prop).min(initial=np.inf) >= COLLISION_GUARD:
        return prop
    if depth >= MAX_HALVINGS:
        raise RuntimeError(
            "blow-up: particle gap stayed below the collision guard "
            f"after {MAX_HALVINGS} step halvings"
        )
    half = _dbm_substep(w, gen, dt / 2.0, theta, delta2, depth + 1)
    return _dbm_substep(half, gen, dt / 2.0, theta, delta2, depth + 1)


def simulate_dbm(cfg: SimConfig, a0, threads: int = 1) -> EnsembleSample:
    """Euler-Maruyama endpoint of dW_i = theta sum_{j!=i} dt/(W_i-W_j) + dB_i.

    The drift kernel is regularized at distance delta ~ sqrt(theta dt) and the
    state is re-sorted after every step; a step leaving some gap below the
    collision guard is retried at halved dt, up to 10 halvings.
    """
    if cfg.theta < 0.5:
        raise ValueError("theta < 1/2 rejected: particles collide in finite time")
    a0 = np.asarray(a0, dtype=float)
    if a0.shape != (cfg.N,):
        raise ValueError(f"a0 must have length N = {cfg.N}")
    if np.any(np.diff(a0) < 0):
        raise ValueError("a0 must be sorted ascending")
    if cfg.t_final < 0:
        raise ValueError("t_final must be >= 0")
    if np.any(np.diff(a0) < COLLISION_GUARD):
        # ties are split deterministically at a harmless amplitude
        jitter = 1e-9 * max(1.0, float(np.abs(a0).max(initial=0.0)))
        a0 = a0 + jitter * np.arange(cfg.N)

    n_steps = int(np.ceil(cfg.t_final / cfg.dt)) if cfg.t_final > 0 else 0
    delta2 = (TAME_FACTOR ** 2) * cfg.theta * cfg.dt

    def worker(lo, hi):
        b = hi - lo
        gens = [_traj_rng(cfg.seed, t) for t in range(lo, hi)]
        noise = np.stack([g.standard_normal((n_steps, cfg.N)) for g in gens]) \
            if n_steps else np.zeros((b, 0, cfg.N))
        w = np.tile(a0, (b, 1))
        remaining = cfg.t_final
        for step in range(n_steps):
            dt = min(cfg.dt, remaining)
            prev = w
            drift = _dbm_drift(prev, cfg.theta, delta2)
            w = prev + drift * dt + np.sqrt(dt) * noise[:, step, :]
            w.sort(axis=1)
            if cfg.N > 1:
                gaps = np.diff(w, axis=1).min(axis=1)
                for row in np.nonzero(gaps < COLLISION_GUARD)[0]:
                    redo = _dbm_substep(prev[row].copy(), gens[row], dt / 2.0,
                                        cfg.theta, delta2, 1)
                    w[row] = _dbm_substep(redo, gens[row], dt / 2.0,
                                          cfg.theta, delta2, 1)
            remaining -= dt
        return w

    pts = _map_batches(worker, cfg.trajectories, threads, DBM_BATCH)
    return EnsembleSample(pts)


# ---------------------------------------------------------------------------
# corners processes
# ---------------------------------------------------------------------------

def sample_corner_matrix(a, M: int, theta: float, cfg: SimConfig,
                         threads: int = 1) -> EnsembleSample:
    """Eigenvalues of the top-left M x M block of U diag(a) U^* with U Haar.

    theta = 1/2 uses Haar orthogonal matrices, theta = 1 Haar unitary; other
    theta have no invariant matrix model and are rejected.
    """
    a = np.asarray(a, dtype=float)
    N = a.shape[0]
    if not 1 <= M < N:
        raise ValueError(f"need 1 <= M < N = {N}")
    if theta not in (0.5, 1.0):
        raise ValueError(f"unsupported theta {theta}: matrix model needs 1/2 or 1")
    complex_case = theta == 1.0

    def worker(lo, hi):
        out = np.empty((hi - lo, M))
        for t in range(lo, hi):
            rng = _traj_rng(cfg.seed, t)
            z = rng.standard_normal((N, N))
            if complex_case:
                z = z + 1j * rng.standard_normal((N, N))
            q, r = np.linalg.qr(z)
            d = np.diagonal(r)
            q = q * (d / np.abs(d))
            rows = q[:M, :]
            block = (rows * a) @ rows.conj().T
            out[t - lo] = np.linalg.eigvalsh(block)
        return out

    pts = _map_batches(worker, cfg.trajectories, threads, 256)
    return EnsembleSample(pts)


# unit grid with cells clustered at both endpoints, where the density may peak
_UNIT_BOUNDS = (1.0 - np.cos(np.pi * np.arange(MCMC_GRID + 1) / MCMC_GRID)) / 2.0
_UNIT_WIDTHS = np.diff(_UNIT_BOUNDS)
_UNIT_MIDS = 0.5 * (_UNIT_BOUNDS[1:] + _UNIT_BOUNDS[:-1])


def _gibbs_site(rng, lo, hi, same, adj, theta):
    """Inverse-CDF draw from c |y-s|^{2-2theta} prod |y-v|^{theta-1} on [lo, hi]."""
    span = hi - lo
    if span <= 0:
        return lo
    mids = lo + span * _UNIT_MIDS
    logw = np.zeros(MCMC_GRID)
    if same.size:
        logw += (2.0 - 2.0 * theta) * np.log(np.abs(mids[:, None] - same)).sum(axis=1)
    if adj.size:
        logw += (theta - 1.0) * np.log(np.abs(mids[:, None] - adj)).sum(axis=1)
    w = np.exp(logw - logw.max()) * _UNIT_WIDTHS
    cdf = np.cumsum(w)
    total = cdf[-1]
    if not np.isfinite(total) or total <= 0:
        return lo + span * rng.random()
    u = rng.random() * total
    j = min(int(np.searchsorted(cdf, u)), MCMC_GRID - 1)
    inside = (u - (cdf[j - 1] if j else 0.0)) / w[j]
    return lo + span * (_UNIT_BOUNDS[j] + _UNIT_WIDTHS[j] * inside)


def _interlace_bounds(upper, lower):
    """Per-site interval [lo_i, hi_i] for a level between its two neighbors."""
    los = upper[:-1].copy()
    his = upper[1:].copy()
    k = los.shape[0]
    if lower.size:
        los[1:] = np.maximum(los[1:], lower)
        his[:k - 1] = np.minimum(his[:k - 1], lower)
    return los, his


def sample_corner_mcmc(a, M: int, theta: float, cfg: SimConfig) -> EnsembleSample:
    """Gibbs sampler for the theta-corners density on interlacing arrays.

    Each site is resampled from its one-dimensional conditional on its
    interlacing interval (inverse CDF on a 512-cell endpoint-clustered grid);
    after `cfg.mcmc_sweeps` burn-in sweeps the level-M row is recorded every
    10 sweeps until `cfg.trajectories` draws are taken.  At theta = 1 the
    same-level coupling vanishes and every conditional is uniform, so whole
    levels are updated as one block.
    """
    a = np.asarray(a, dtype=float)
    N = a.shape[0]
    if not 1 <= M < N:
        raise ValueError(f"need 1 <= M < N = {N}")
    if np.any(np.diff(a) <= 0):
        raise ValueError("top row a must be strictly increasing (ties rejected)")
    if theta <= 0:
        raise ValueError("theta must be positive")

    rng = _traj_rng(cfg.seed, 0)
    levels: list = [None] * (N + 1)  # levels[k] has k entries, levels[N] = a
    levels[N] = a
    for k in range(N - 1, 0, -1):
        upper = levels[k + 1]
        levels[k] = 0.5 * (upper[:-1] + upper[1:])
    uniform_case = theta == 1.0

    def sweep():
        for k in range(N - 1, 0, -1):
            cur = levels[k]
            upper = levels[k + 1]
            lower = levels[k - 1] if k > 1 else np.empty(0)
            los, his = _interlace_bounds(upper, lower)
            if uniform_case:
                levels[k] = los + (his - los) * rng.random(k)
                continue
            adj = np.concatenate((lower, upper)) if k > 1 else upper
            for i in range(k):
                same = np.delete(cur, i)
                cur[i] = _gibbs_site(rng, los[i], his[i], same, adj, theta)

    for _ in range(cfg.mcmc_sweeps):
        sweep()
    draws = np.empty((cfg.trajectories, M))
    for t in range(cfg.trajectories):
        for _ in range(MCMC_THIN):
            sweep()
        draws[t] = levels[M]
    return EnsembleSample(draws)


def empirical_moments(s: EnsembleSample, ks, scale: float) -> MomentEstimate:
    """Means and standard errors of (1/N) sum_i (points_i / scale)^k."""
    if scale <= 0:
        raise ValueError("scale must be positive")
    ks = tuple(int(k) for k in ks)
    scaled = s.points / scale
    means, errs = [], []
    for k in ks:
        vals = (scaled ** k).sum(axis=1) / s.N
        means.append(vals.mean())
        if s.trajectories > 1:
            errs.append(vals.std(ddof=1) / np.sqrt(s.trajectories))
        else:
            errs.append(0.0)
    return MomentEstimate(ks, np.array(means), np.array(errs))
