"""Cuckoo search loops: the standard algorithm and the enhanced variant.

Both algorithms share one engine so that the enhanced variant with
degenerate constant schedules and random initialization is bit-identical
to the standard one under the same seed.  Per iteration the engine runs:

1. Levy phase.  Every nest proposes
   ``x' = clamp(x + alpha * L (x - x_best))`` with ``L`` a Mantegna Levy
   step (elementwise product); the best nest itself proposes
   ``x' = clamp(x_best + alpha * L)`` so it is not frozen at zero
   displacement.  A proposal replaces its parent only when strictly
   better.
2. Discovery phase.  Every coordinate of every nest except the global
   best is discovered independently with probability ``pa``; discovered
   coordinates move along a biased random walk
   ``x' = clamp(x + r * (x_p - x_q))`` built from two distinct random
   nests and one shared uniform factor ``r`` per iteration.  The walk
   proposal replaces the nest only when strictly better, and the global
   best nest always survives the phase untouched.
3. The per-iteration best fitness is recorded and the parameter
   schedules advance (a no-op for constant schedules).

Per-nest greedy selection plus the best-nest exemption make every
convergence trace non-increasing.  Evaluation counts are deterministic:
``population`` for initialization plus ``2 * population - 1`` per
iteration in all-nests mode (``population`` per iteration in
single-cuckoo mode).

Estimators follow the scikit-learn protocol: hyperparameters are stored
verbatim in ``__init__``, validated in ``fit``, results land in
trailing-underscore attributes and ``get_params``/``set_params`` allow
programmatic configuration.
"""

from __future__ import annotations

import inspect
from dataclasses import dataclass

import numpy as np

from .core import Candidate, SearchBox, as_search_box, clamp
from .levy import LevyParams, levy_matrix, levy_step
from .rng import RandomSource, as_random_source
from .schedule import ScheduleState, advance, constant, cosine_value
from .sobol import sobol_population

INIT_MODES = ("random", "sobol")
UPDATE_MODES = ("all_nests", "single_cuckoo")


@dataclass
class RunTrace:
    """Complete record of one optimization run."""

    best_fitness_per_iteration: np.ndarray
    best_candidate: Candidate
    evaluations: int
    walk_replacements: int


def _batch_evaluator(objective):
    """Row-wise evaluator; uses ``objective.evaluate_many`` when offered."""
    many = getattr(objective, "evaluate_many", None)
    if callable(many):
        return lambda X: np.asarray(many(X), dtype=float)
    return lambda X: np.array([float(objective(x)) for x in X], dtype=float)


def init_population(
    count: int,
    box: SearchBox,
    objective,
    rng: RandomSource,
    init: str = "random",
) -> list[Candidate]:
    """Build and evaluate the initial nests.

    ``random`` draws uniformly inside the box; ``sobol`` takes the first
    ``count`` Sobol points mapped onto the box (the first nest is the box
    midpoint).
    """
    if count < 1:
        raise ValueError(f"population must be >= 1, got {count}")
    if init not in INIT_MODES:
        raise ValueError(f"init must be one of {INIT_MODES}, got {init!r}")
    if init == "sobol":
        X = sobol_population(box.dim, count, box)
    else:
        X = box.lower + rng.random((count, box.dim)) * box.width
    F = _batch_evaluator(objective)(X)
    return [Candidate(X[i].copy(), F[i]) for i in range(count)]


def levy_update(
    nest: Candidate,
    best: Candidate,
    alpha: float,
    rng: RandomSource,
    box: SearchBox,
    objective,
    params: LevyParams | None = None,
) -> Candidate:
    """Greedy Levy-flight update of a single nest against the global best."""
    if nest.position.size != best.position.size:
        raise ValueError("nest and best must share dimension")
    params = params or LevyParams()
    step = levy_step(params, rng, box.dim)
    if np.array_equal(nest.position, best.position):
        displacement = alpha * step
    else:
        displacement = alpha * step * (nest.position - best.position)
    proposal = clamp(nest.position + displacement, box)
    fitness = float(objective(proposal))
    if fitness < nest.fitness:
        return Candidate(proposal, fitness)
    return nest


def abandon_worst(
    population: list[Candidate],
    pa: float,
    rng: RandomSource,
    box: SearchBox,
    objective,
) -> list[Candidate]:
    """Discovery phase over a candidate list (greedy biased random walk)."""
    if not 0.0 <= pa <= 1.0:
        raise ValueError(f"pa must be in [0, 1], got {pa}")
    X = np.array([c.position for c in population])
    F = np.array([c.fitness for c in population])
    X, F, accepted = _discovery_phase(X, F, pa, rng, box, _batch_evaluator(objective))
    return [Candidate(X[i].copy(), F[i]) for i in range(len(population))]


def _discovery_phase(X, F, pa, rng, box, batch):
    """Vectorized discovery walk; returns updated (X, F, accepted count)."""
    pop = X.shape[0]
    best = int(np.argmin(F))
    mask = rng.random(X.shape) < pa
    mask[best] = False
    r = rng.random()
    p = rng.integers(pop, size=pop)
    shifted = rng.integers(pop - 1, size=pop) if pop > 1 else np.zeros(pop, dtype=np.int64)
    q = shifted + (shifted >= p) if pop > 1 else p
    W = clamp(X + r * mask * (X[p] - X[q]), box)
    rows = np.flatnonzero(np.arange(pop) != best)
    if rows.size == 0:
        return X, F, 0
    FW = batch(W[rows])
    accept = FW < F[rows]
    idx = rows[accept]
    X[idx] = W[rows][accept]
    F[idx] = FW[accept]
    return X, F, int(accept.sum())


def run(
    objective,
    box: SearchBox,
    *,
    population: int,
    iterations: int,
    pa_schedule: ScheduleState,
    alpha_schedule: ScheduleState,
    init: str,
    rng: RandomSource,
    levy_params: LevyParams | None = None,
    update: str = "all_nests",
) -> RunTrace:
    """Execute the full optimization loop and return its trace."""
    if iterations < 0:
        raise ValueError(f"iterations must be >= 0, got {iterations}")
    if update not in UPDATE_MODES:
        raise ValueError(f"update must be one of {UPDATE_MODES}, got {update!r}")
    params = levy_params or LevyParams()
    batch = _batch_evaluator(objective)

    nests = init_population(population, box, objective, rng, init=init)
    X = np.array([c.position for c in nests])
    F = np.array([c.fitness for c in nests])
    evaluations = population
    walk_replacements = 0
    trace = np.empty(iterations)

    for t in range(iterations):
        pa = cosine_value(pa_schedule)
        alpha = cosine_value(alpha_schedule)

        best = int(np.argmin(F))
        if update == "all_nests":
            steps = levy_matrix(params, rng, population, box.dim)
            displacement = alpha * steps * (X - X[best])
            displacement[best] = alpha * steps[best]
            P = clamp(X + displacement, box)
            FP = batch(P)
            evaluations += population
            accept = FP < F
            X[accept] = P[accept]
            F[accept] = FP[accept]
        else:
            i = rng.integers(population)
            step = levy_step(params, rng, box.dim)
            if i == best:
                displacement = alpha * step
            else:
                displacement = alpha * step * (X[i] - X[best])
            proposal = clamp(X[i] + displacement, box)
            fitness = batch(proposal[None, :])[0]
            evaluations += 1
            j = rng.integers(population)
            if fitness < F[j]:
                X[j] = proposal
                F[j] = fitness

        X, F, accepted = _discovery_phase(X, F, pa, rng, box, batch)
        evaluations += max(population - 1, 0)
        walk_replacements += accepted

        trace[t] = F.min()
        pa_schedule = advance(pa_schedule)
        alpha_schedule = advance(alpha_schedule)

    best = int(np.argmin(F))
    return RunTrace(
        best_fitness_per_iteration=trace,
        best_candidate=Candidate(X[best].copy(), F[best]),
        evaluations=evaluations,
        walk_replacements=walk_replacements,
    )


class BaseOptimizer:
    """Minimal scikit-learn style estimator base (get_params/set_params)."""

    @classmethod
    def _param_names(cls):
        signature = inspect.signature(cls.__init__)
        return [name for name in signature.parameters if name != "self"]

    def get_params(self, deep: bool = True) -> dict:
        return {name: getattr(self, name) for name in self._param_names()}

    def set_params(self, **params):
        valid = set(self._param_names())
        for name, value in params.items():
            if name not in valid:
                raise ValueError(
                    f"invalid parameter {name!r} for {type(self).__name__}; "
                    f"valid parameters are {sorted(valid)}"
                )
            setattr(self, name, value)
        return self

    def __repr__(self) -> str:
        args = ", ".join(f"{k}={v!r}" for k, v in self.get_params().items())
        return f"{type(self).__name__}({args})"


class CuckooSearch(BaseOptimizer):
    """Standard cuckoo search with fixed discovery rate and step size.

    Parameters mirror the usual presets: 50 nests, 500 iterations,
    ``pa=0.25``, ``alpha=0.01``, random initialization.

    After ``fit``: ``best_position_``, ``best_fitness_``, ``trace_``
    (best fitness per iteration), ``n_evaluations_``,
    ``n_walk_replacements_`` and ``run_trace_``.
    """

    algorithm = "csa"

    def __init__(
        self,
        population: int = 50,
        iterations: int = 500,
        pa: float = 0.25,
        alpha: float = 0.01,
        levy_beta: float = 1.5,
        init: str = "random",
        update: str = "all_nests",
        seed=None,
    ):
        self.population = population
        self.iterations = iterations
        self.pa = pa
        self.alpha = alpha
        self.levy_beta = levy_beta
        self.init = init
        self.update = update
        self.seed = seed

    def _validate(self):
        if self.population < 1:
            raise ValueError(f"population must be >= 1, got {self.population}")
        if self.iterations < 0:
            raise ValueError(f"iterations must be >= 0, got {self.iterations}")
        if not 0.0 <= self.pa <= 1.0:
            raise ValueError(f"pa must be in [0, 1], got {self.pa}")
        if self.alpha <= 0.0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if self.init not in INIT_MODES:
            raise ValueError(f"init must be one of {INIT_MODES}, got {self.init!r}")
        if self.update not in UPDATE_MODES:
            raise ValueError(f"update must be one of {UPDATE_MODES}, got {self.update!r}")

    def _schedules(self) -> tuple[ScheduleState, ScheduleState]:
        return constant(self.pa), constant(self.alpha)

    def fit(self, objective, bounds):
        """Minimize ``objective`` over ``bounds`` and store the results.

        ``objective`` is a callable mapping a position vector to a float;
        objects additionally exposing ``evaluate_many(X)`` are evaluated
        in batches.  ``bounds`` is anything :func:`as_search_box`
        accepts.  Returns ``self``.
        """
        box = as_search_box(bounds)
        self._validate()
        pa_schedule, alpha_schedule = self._schedules()
        result = run(
            objective,
            box,
            population=self.population,
            iterations=self.iterations,
            pa_schedule=pa_schedule,
            alpha_schedule=alpha_schedule,
            init=self.init,
            rng=as_random_source(self.seed),
            levy_params=LevyParams(beta=self.levy_beta),
            update=self.update,
        )
        self.box_ = box
        self.run_trace_ = result
        self.trace_ = result.best_fitness_per_iteration
        self.best_position_ = result.best_candidate.position
        self.best_fitness_ = result.best_candidate.fitness
        self.n_evaluations_ = result.evaluations
        self.n_walk_replacements_ = result.walk_replacements
        return self


class EnhancedCuckooSearch(CuckooSearch):
    """Cuckoo search with Sobol initialization and annealed parameters.

    The discovery rate and step size follow cosine annealing with warm
    restarts over ``[pa_min, pa_max]`` and ``[alpha_min, alpha_max]``,
    both starting at their maxima; the two schedules share one clock
    (initial cycle ``t0`` iterations, multiplied by ``t_mult`` at every
    restart).  Initialization defaults to the Sobol low-discrepancy
    population.
    """

    algorithm = "ecsa"

    def __init__(
        self,
        population: int = 50,
        iterations: int = 500,
        pa_min: float = 0.25,
        pa_max: float = 0.5,
        alpha_min: float = 0.01,
        alpha_max: float = 0.05,
        t0: int = 100,
        t_mult: float = 2.0,
        levy_beta: float = 1.5,
        init: str = "sobol",
        update: str = "all_nests",
        seed=None,
    ):
        self.population = population
        self.iterations = iterations
        self.pa_min = pa_min
        self.pa_max = pa_max
        self.alpha_min = alpha_min
        self.alpha_max = alpha_max
        self.t0 = t0
        self.t_mult = t_mult
        self.levy_beta = levy_beta
        self.init = init
        self.update = update
        self.seed = seed

    def _validate(self):
        if self.population < 1:
            raise ValueError(f"population must be >= 1, got {self.population}")
        if self.iterations < 0:
            raise ValueError(f"iterations must be >= 0, got {self.iterations}")
        if not 0.0 <= self.pa_min <= self.pa_max <= 1.0:
            raise ValueError(
                f"need 0 <= pa_min <= pa_max <= 1, got [{self.pa_min}, {self.pa_max}]"
            )
        if not 0.0 < self.alpha_min <= self.alpha_max:
            raise ValueError(
                f"need 0 < alpha_min <= alpha_max, got [{self.alpha_min}, {self.alpha_max}]"
            )
        if self.t0 < 1:
            raise ValueError(f"t0 must be >= 1, got {self.t0}")
        if self.t_mult < 1.0:
            raise ValueError(f"t_mult must be >= 1, got {self.t_mult}")
        if self.init not in INIT_MODES:
            raise ValueError(f"init must be one of {INIT_MODES}, got {self.init!r}")
        if self.update not in UPDATE_MODES:
            raise ValueError(f"update must be one of {UPDATE_MODES}, got {self.update!r}")

    def _schedules(self) -> tuple[ScheduleState, ScheduleState]:
        pa = ScheduleState(self.pa_min, self.pa_max, self.t0, 0, self.t_mult)
        alpha = ScheduleState(self.alpha_min, self.alpha_max, self.t0, 0, self.t_mult)
        return pa, alpha
