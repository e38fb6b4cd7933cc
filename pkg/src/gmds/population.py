"""Ensemble-averaged cavity theory for Erdos-Renyi graphs.

Instead of a concrete graph, a population of cavity messages is evolved:
each update replaces one member with a message recomputed from a Poisson
number of randomly drawn members and freshly drawn edge weights.  Members
are stratified by the weight their receiving endpoint sends back, because
that value both enters the member's own threshold shift and is correlated
with the weight the member contributes when consumed (exactly correlated
for symmetric weight laws, anti-correlated for oriented ones).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .bp import Rho0Estimate, ThermoDensities, rho0_from_points
from .errors import InputError
from .generate import WeightDistribution

MIN_POPULATION = 1000


@dataclass(frozen=True)
class EnsembleDensities(ThermoDensities):
    """Monte-Carlo densities with batch standard errors."""

    rho_err: float = 0.0
    f_err: float = 0.0
    s_err: float = 0.0


class MessagePopulation:
    """A stratified pool of cavity messages for one (c, beta, weight law)."""

    def __init__(self, c: float, dist: WeightDistribution, beta: float,
                 theta: float = 1.0, size: int = 100_000, seed: int = 0,
                 grid: float | None = None):
        if size < MIN_POPULATION:
            raise InputError(f"population size must be >= {MIN_POPULATION}")
        if c < 0:
            raise InputError("mean degree must be >= 0")
        if theta <= 0:
            raise InputError("theta must be > 0")
        self.c = float(c)
        self.dist = dist
        self.beta = float(beta)
        self.theta = float(theta)
        self.size = int(size)
        if grid is None:
            scale = max([theta] + [v for v, _ in dist.atoms])
            grid = scale / 10.0
        self.grid = float(grid)
        self.theta_units = max(1, int(math.ceil(theta / grid - 1e-9)))

        strata = dist.receiving_values()
        self._stratum_of = {v: s for s, v in enumerate(strata)}
        self.stratum_values = strata

        pairs = dist.pair_atoms
        self._pair_cum = np.cumsum([p for _, p in pairs])
        self._pair_in_units = np.array(
            [int(round(a / grid)) for (a, _b), _ in pairs], dtype=np.int64)
        self._pair_out_units = np.array(
            [int(round(b / grid)) for (_a, b), _ in pairs], dtype=np.int64)
        self._pair_stratum = np.array(
            [self._stratum_of[b] for (_a, b), _ in pairs], dtype=np.int64)
        self._pair_rev_stratum = np.array(
            [self._stratum_of[a] for (a, _b), _ in pairs], dtype=np.int64)

        # stratum sizes proportional to the receiving-weight marginal
        weight_of = {v: 0.0 for v in strata}
        for (_a, b), p in pairs:
            weight_of[b] += p
        raw = [weight_of[v] * size for v in strata]
        sizes = [max(1, int(round(x))) for x in raw]
        while sum(sizes) > size:
            sizes[int(np.argmax(sizes))] -= 1
        while sum(sizes) < size:
            sizes[int(np.argmin(sizes))] += 1
        self.stratum_ptr = np.zeros(len(strata) + 1, dtype=np.int64)
        np.cumsum(sizes, out=self.stratum_ptr[1:])

        self.members = np.full((self.size, 3), 0.25)
        self._scratch = np.zeros(self.theta_units + 2)
        self.sweeps_done = 0
        self.seed = int(seed)
        self._stream_idx = 0

    def next_stream_seed(self) -> int:
        """Derive a fresh kernel seed from (object seed, call counter).

        The compiled RNG state is process-global, so every kernel call
        reseeds from this object-local counter; trajectories then depend
        only on the object's own seed and history, not on other solvers
        interleaved in the same process.
        """
        self._stream_idx += 1
        return (self.seed * 1_000_003 + self._stream_idx * 7_919) % (2**31 - 1)

    def exp_mb(self) -> float:
        return math.exp(-self.beta)

    def set_beta(self, beta: float) -> None:
        """Retarget the pool; callers should re-equilibrate afterwards."""
        self.beta = float(beta)


def population_sweep(pop: MessagePopulation, n_sweeps: int = 1) -> MessagePopulation:
    """One sweep = as many uniformly targeted single-member updates as members."""
    for _ in range(n_sweeps):
        _kernels.seed_rng(pop.next_stream_seed())
        _kernels.pop_sweep(
            pop.members, pop.stratum_ptr, pop._pair_cum, pop._pair_in_units,
            pop._pair_out_units, pop._pair_stratum, pop.c, pop.theta_units,
            pop.exp_mb(), pop._scratch, pop.size)
        pop.sweeps_done += 1
    return pop


def ensemble_densities(pop: MessagePopulation, n_samples: int,
                       n_batches: int = 10,
                       sweeps_between: int = 5) -> EnsembleDensities:
    """Monte-Carlo estimate of the thermodynamic densities of the ensemble.

    Vertex terms draw a full Poisson degree of members and weights; edge
    terms draw one weight pair and the two opposite messages from the
    matching strata.  The free-energy density combines them with edge
    density c/2.  Measurement batches are separated by ``sweeps_between``
    sweeps and averaged, so residual population drift enters the quoted
    batch standard errors instead of biasing a single snapshot.  The caller
    is responsible for prior equilibration.
    """
    if n_samples < 100:
        raise InputError("n_samples must be >= 100")
    if n_batches < 2:
        raise InputError("n_batches must be >= 2")
    per = max(1, n_samples // n_batches)
    rhos, fs, ss = [], [], []
    beta = pop.beta
    for b in range(n_batches):
        if b and sweeps_between:
            population_sweep(pop, sweeps_between)
        _kernels.seed_rng(pop.next_stream_seed())
        sum_q1, sum_lnzv, sum_lnze = _kernels.pop_measure(
            pop.members, pop.stratum_ptr, pop._pair_cum, pop._pair_in_units,
            pop._pair_stratum, pop._pair_rev_stratum, pop.c, pop.theta_units,
            pop.exp_mb(), pop._scratch, per)
        rho = sum_q1 / per
        lnz = (sum_lnzv - (pop.c / 2.0) * sum_lnze) / per
        rhos.append(rho)
        if beta == 0:
            ss.append(lnz)
            fs.append(math.nan)
        else:
            f = -lnz / beta
            fs.append(f)
            ss.append((rho - f) * beta)
    rho = float(np.mean(rhos))
    s = float(np.mean(ss))
    f = math.nan if beta == 0 else float(np.mean(fs))
    err = lambda xs: float(np.std(xs, ddof=1) / math.sqrt(len(xs)))
    return EnsembleDensities(
        beta=beta, rho=rho, f=f, s=s, converged=True, residual=0.0,
        rho_err=err(rhos), f_err=0.0 if beta == 0 else err(fs), s_err=err(ss))


def ensemble_scan(c: float, dist: WeightDistribution, betas,
                  theta: float = 1.0, pop_size: int = 100_000,
                  equil_sweeps: int = 1000, extra_sweeps: int = 200,
                  n_samples: int = 10_000, n_batches: int = 10,
                  seed: int = 0, grid: float | None = None
                  ) -> list[EnsembleDensities]:
    """Equilibrate and measure along an increasing beta grid, warm-starting.

    The first beta gets ``equil_sweeps`` of equilibration; subsequent betas
    reuse the population and get ``extra_sweeps`` each.
    """
    betas = [float(b) for b in betas]
    if sorted(betas) != betas:
        raise InputError("beta grid must be increasing")
    pop = MessagePopulation(c, dist, betas[0], theta=theta, size=pop_size,
                            seed=seed, grid=grid)
    out: list[EnsembleDensities] = []
    for k, beta in enumerate(betas):
        pop.set_beta(beta)
        population_sweep(pop, equil_sweeps if k == 0 else extra_sweeps)
        out.append(ensemble_densities(pop, n_samples, n_batches))
    return out


def ensemble_rho0(c: float, dist: WeightDistribution, betas,
                  **scan_kwargs) -> Rho0Estimate:
    """Entropy zero crossing of the ensemble scan (see ``estimate_rho0``)."""
    points = ensemble_scan(c, dist, betas, **scan_kwargs)
    usable: list[EnsembleDensities] = []
    for p in points:
        usable.append(p)
        if p.s <= 0:
            break
    return rho0_from_points(usable)


def rho0_curve(c_values, dist_factory, betas, theta: float = 1.0,
               **scan_kwargs) -> list[tuple[float, float]]:
    """Minimum-density curve over mean degree.

    ``dist_factory`` maps theta to a weight distribution so each degree uses
    an identically parameterized law.
    """
    curve = []
    for c in c_values:
        if c <= 0:
            raise InputError("mean degrees must be positive")
        est = ensemble_rho0(float(c), dist_factory(theta), betas,
                            theta=theta, **scan_kwargs)
        curve.append((float(c), est.rho0))
    return curve
