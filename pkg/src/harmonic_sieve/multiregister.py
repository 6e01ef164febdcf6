"""Operators on k group-valued registers: coset states, per-subset isotypic
projectors, their span, and the trivial-vs-conjugate measurement.

Amplitudes are indexed by register tuples (x_0, ..., x_{k-1}) flattened
row-major (register 0 varies slowest).  All projectors act by diagonal
right multiplication on a chosen register subset:

    (R_I(g) psi)(y) = psi(y_0, ..., y_i * g, ...)   for i in I,

so the projector for irreducible eta on subset I is

    P = (d_eta/|G|) sum_g conj(chi_eta(g)) R_I(g),

an idempotent Hermitian operator whose image is spanned by the vectors
that decompose to eta under the diagonal action on I.  Dense matrices are
refused above a configurable dimension guard; applications are matrix-free.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import reduce
from itertools import product as _cartesian

import numpy as np

from .characters import CharacterTable, character_table
from .errors import NumericalFailureError, ResourceLimitError
from .groups import GroupTable, SubgroupHandle, conjugate_subgroup, left_cosets

DENSE_GUARD_DEFAULT = 4096
GUARD_ENV_VAR = "HARMONIC_SIEVE_GUARD"

SPAN_EIG_RELATIVE_THRESHOLD = 1e-8
SPAN_AMBIGUITY_BAND = 10.0
_BORN_ZERO_CLAMP = 1e-12


def dense_guard_from_env(default: int = DENSE_GUARD_DEFAULT) -> int:
    """Dense-dimension guard, overridable via HARMONIC_SIEVE_GUARD."""
    raw = os.environ.get(GUARD_ENV_VAR)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ResourceLimitError(f"{GUARD_ENV_VAR} must be an integer, got {raw!r}")
    if value < 1:
        raise ResourceLimitError(f"{GUARD_ENV_VAR} must be positive, got {value}")
    return value


@dataclass(frozen=True)
class MultiRegisterSpace:
    """The |G|^k-dimensional Hilbert space of k group-valued registers."""

    group: GroupTable
    k: int
    guard: int = DENSE_GUARD_DEFAULT

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"register count must be >= 1, got {self.k}")

    @property
    def dim(self) -> int:
        return self.group.order**self.k

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.group.order,) * self.k

    @property
    def chars(self) -> CharacterTable:
        return character_table(self.group)

    def require_dense(self, what: str) -> None:
        if self.dim > self.guard:
            raise ResourceLimitError(
                f"{what} needs dense dimension {self.dim} > guard {self.guard}; "
                "raise the guard or use ensemble mode"
            )


def nonempty_subsets(k: int) -> list[tuple[int, ...]]:
    """All nonempty register subsets, lexicographic by bitmask."""
    return [
        tuple(i for i in range(k) if mask >> i & 1) for mask in range(1, 2**k)
    ]


def register_map(space: MultiRegisterSpace, subset: tuple[int, ...], g: int) -> np.ndarray:
    """Gather map for R_subset(g): (R psi)[y] = psi[map[y]]."""
    idx = np.arange(space.dim).reshape(space.shape)
    col = space.group.mul[:, g]
    for axis in subset:
        idx = idx.take(col, axis=axis)
    return idx.ravel()


class SubsetProjector:
    """Isotypic projector on the diagonal right action of one register subset."""

    def __init__(self, space: MultiRegisterSpace, subset: tuple[int, ...], eta: int):
        subset = tuple(sorted(set(int(i) for i in subset)))
        if not subset:
            raise ValueError("register subset must be nonempty")
        if subset[0] < 0 or subset[-1] >= space.k:
            raise ValueError(f"subset {subset} out of range for k={space.k}")
        ct = space.chars
        if not 0 <= eta < ct.num_irreps:
            raise ValueError(f"irreducible index {eta} out of range")
        self.space = space
        self.subset = subset
        self.eta = int(eta)
        self.degree = int(ct.degrees[eta])
        self._coeffs = (
            self.degree / space.group.order * ct.values_on_elements(eta).conj()
        )
        self._active = [g for g in range(space.group.order) if abs(self._coeffs[g]) > 1e-15]
        self._maps: dict[int, np.ndarray] = {}

    def _map(self, g: int) -> np.ndarray:
        cached = self._maps.get(g)
        if cached is None:
            cached = register_map(self.space, self.subset, g)
            self._maps[g] = cached
        return cached

    @property
    def expected_trace(self) -> int:
        """d_eta^2 |G|^(k-1): the dimension the trace identity predicts."""
        return self.degree**2 * self.space.group.order ** (self.space.k - 1)

    def apply(self, vec: np.ndarray) -> np.ndarray:
        """Matrix-free application; accepts a vector or a (dim, m) block."""
        out = np.zeros(vec.shape, dtype=complex)
        for g in self._active:
            out += self._coeffs[g] * vec[self._map(g)]
        return out

    def trace(self) -> float:
        """Trace measured from fixed points of the register maps."""
        base = np.arange(self.space.dim)
        total = 0.0 + 0.0j
        for g in self._active:
            total += self._coeffs[g] * int((self._map(g) == base).sum())
        if abs(total.imag) > 1e-8 * (1.0 + abs(total.real)):
            raise NumericalFailureError(f"projector trace {total!r} is not real")
        return float(total.real)

    def trace_int(self) -> int:
        value = self.trace()
        nearest = round(value)
        if abs(value - nearest) > 1e-6:
            raise NumericalFailureError(
                f"projector trace {value!r} is not within 1e-6 of an integer"
            )
        return int(nearest)

    def dense(self) -> np.ndarray:
        self.space.require_dense("dense subset projector")
        dim = self.space.dim
        rows = np.arange(dim)
        out = np.zeros((dim, dim), dtype=complex)
        for g in self._active:
            out[rows, self._map(g)] += self._coeffs[g]
        return out


def subset_projector(
    space: MultiRegisterSpace, subset: tuple[int, ...], eta: int
) -> SubsetProjector:
    return SubsetProjector(space, subset, eta)


# ---------------------------------------------------------------------------
# coset states


@dataclass(frozen=True)
class CosetStateEnsemble:
    """The k-fold product coset state, dense or as pure-vector ensemble."""

    space: MultiRegisterSpace
    subgroup: SubgroupHandle
    mode: str                        # "dense" | "ensemble"
    coset_reps: tuple[int, ...]      # minimal representative of each coset
    rho: np.ndarray | None = None

    @property
    def num_vectors(self) -> int:
        return len(self.coset_reps) ** self.space.k

    def vector(self, reps: tuple[int, ...]) -> np.ndarray:
        """|c H^k> for one tuple of coset representatives."""
        g = self.space.group
        members = np.array(self.subgroup.members)
        flat = np.zeros(1, dtype=np.int64)
        for c in reps:
            coset = np.sort(g.mul[c, members])
            flat = (flat[:, None] * g.order + coset[None, :]).ravel()
        vec = np.zeros(self.space.dim, dtype=complex)
        vec[flat] = 1.0 / math.sqrt(len(members) ** self.space.k)
        return vec

    def iter_vectors(self):
        for reps in _cartesian(self.coset_reps, repeat=self.space.k):
            yield reps, self.vector(reps)

    def density(self) -> np.ndarray:
        if self.rho is None:
            raise ResourceLimitError(
                "ensemble-mode state has no dense density matrix; "
                "rebuild with mode='dense'"
            )
        return self.rho


def build_coset_state(
    space: MultiRegisterSpace, h: SubgroupHandle, mode: str = "ensemble"
) -> CosetStateEnsemble:
    """The product state of k independent coset states of the subgroup."""
    if h.parent is not space.group:
        raise ValueError("subgroup belongs to a different group table")
    if mode not in ("dense", "ensemble"):
        raise ValueError(f"mode must be 'dense' or 'ensemble', got {mode!r}")
    reps = tuple(coset[0] for coset in left_cosets(space.group, h))
    rho = None
    if mode == "dense":
        space.require_dense("dense coset state")
        g = space.group
        members = np.array(h.members)
        single = np.zeros((g.order, g.order), dtype=complex)
        for c in reps:
            coset = g.mul[c, members]
            single[np.ix_(coset, coset)] = 1.0 / g.order
        rho = reduce(np.kron, [single] * space.k)
    return CosetStateEnsemble(
        space=space, subgroup=h, mode=mode, coset_reps=reps, rho=rho
    )


def verify_annihilation(p: SubsetProjector, s: CosetStateEnsemble) -> float:
    """Largest surviving mass: max_c ||P |cH^k>||, or ||P rho||_F in dense mode."""
    if s.mode == "dense":
        return float(np.linalg.norm(p.apply(s.density())))
    worst = 0.0
    for _, vec in s.iter_vectors():
        worst = max(worst, float(np.linalg.norm(p.apply(vec))))
    return worst


# ---------------------------------------------------------------------------
# pairwise traces, spans, bounds


def pairwise_trace(
    space: MultiRegisterSpace,
    subset_i: tuple[int, ...],
    subset_j: tuple[int, ...],
    eta: int,
    approximate: bool = False,
    samples: int = 512,
    seed: int = 0,
) -> float:
    """tr(P_I P_J) for the eta-projectors of two register subsets.

    Exact (dense) below the guard; with approximate=True a matrix-free
    Hutchinson estimate over complex Gaussian probes is returned instead.
    """
    p = subset_projector(space, subset_i, eta)
    q = subset_projector(space, subset_j, eta)
    if not approximate:
        space.require_dense("exact pairwise trace")
        value = complex(np.sum(p.dense() * q.dense().T))
    else:
        rng = np.random.default_rng(seed)
        shape = (space.dim, samples)
        probes = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
        value = complex(np.einsum("dm,dm->", probes.conj(), p.apply(q.apply(probes))) / samples)
    if abs(value.imag) > 1e-6 * (1.0 + abs(value.real)):
        raise NumericalFailureError(f"pairwise trace {value!r} is not real")
    return float(value.real)


def expected_pairwise_trace(space: MultiRegisterSpace, eta: int) -> float:
    """(d_eta^2/|G|)^2 |G|^k, the value forced by subspace independence."""
    d = space.chars.degrees[eta]
    n = space.group.order
    return (d**2 / n) ** 2 * n**space.k


@dataclass(frozen=True)
class SpanData:
    """Spectral summary of M = sum_I P_I and the projector onto its range."""

    dimension: int
    projector: np.ndarray
    eigenvalues: np.ndarray
    threshold: float


def span_data(space: MultiRegisterSpace, eta: int) -> SpanData:
    space.require_dense("span-dimension computation")
    dim = space.dim
    accumulated = np.zeros((dim, dim), dtype=complex)
    for subset in nonempty_subsets(space.k):
        accumulated += subset_projector(space, subset, eta).dense()
    eigvals, eigvecs = np.linalg.eigh(accumulated)
    top = float(eigvals[-1])
    if top <= 0:
        raise NumericalFailureError("accumulated projector sum has no positive spectrum")
    threshold = SPAN_EIG_RELATIVE_THRESHOLD * top
    band = (np.abs(eigvals) > threshold / SPAN_AMBIGUITY_BAND) & (
        np.abs(eigvals) < threshold * SPAN_AMBIGUITY_BAND
    )
    if band.any():
        raise NumericalFailureError(
            "ambiguous rank: eigenvalues within a factor of "
            f"{SPAN_AMBIGUITY_BAND} of the threshold {threshold:.3e}; spectrum:\n"
            f"{np.array2string(eigvals, precision=3)}"
        )
    keep = eigvals > threshold
    basis = eigvecs[:, keep]
    return SpanData(
        dimension=int(keep.sum()),
        projector=basis @ basis.conj().T,
        eigenvalues=eigvals,
        threshold=threshold,
    )


def span_dimension(space: MultiRegisterSpace, eta: int) -> int:
    """dim of the span of all 2^k - 1 per-subset eta-subspaces."""
    return span_data(space, eta).dimension


def span_bound(total_dim: float, count: int, subspace_dim: float) -> float:
    """Lower bound 1 - 1/(1 + m d/(D - d)) on the span fraction of m
    pairwise-independent d-dimensional subspaces of a D-dimensional space."""
    if count < 1:
        raise ValueError(f"subspace count must be >= 1, got {count}")
    if not 0 < subspace_dim < total_dim:
        raise ValueError(
            f"need 0 < d < D, got d={subspace_dim}, D={total_dim}"
        )
    return 1.0 - 1.0 / (1.0 + count * subspace_dim / (total_dim - subspace_dim))


def frobenius_norm_squared(space: MultiRegisterSpace, eta: int) -> float:
    """||sum_I P_I||_F^2, measured densely."""
    space.require_dense("Frobenius norm of the projector sum")
    dim = space.dim
    accumulated = np.zeros((dim, dim), dtype=complex)
    for subset in nonempty_subsets(space.k):
        accumulated += subset_projector(space, subset, eta).dense()
    return float(np.sum(np.abs(accumulated) ** 2))


# ---------------------------------------------------------------------------
# the trivial-vs-conjugate measurement


@dataclass(frozen=True)
class MeasurementStats:
    """Outcome tallies of the span measurement under a fixed hidden subgroup."""

    hidden: str
    eta: int
    trials: int
    reports_trivial: int
    empirical_frequency: float
    exact_probability: float
    dim_w: int
    fraction: float

    @property
    def standard_error(self) -> float:
        if self.trials == 0:
            return 0.0
        p = self.exact_probability
        return math.sqrt(max(p * (1.0 - p), 0.0) / self.trials)


def simulate_measurement(
    space: MultiRegisterSpace,
    h: SubgroupHandle | None,
    eta: int,
    trials: int,
    seed: int,
) -> MeasurementStats:
    """Sample the {span, complement} measurement on random coset states.

    hidden subgroup trivial (h None or order 1): each trial prepares a
    uniformly random basis state; otherwise each trial draws a uniformly
    random conjugate of h and a random coset tuple.  Born probabilities
    below floating-point noise are treated as exact zeros.
    """
    data = span_data(space, eta)
    projector = data.projector
    dim = space.dim
    rng = np.random.default_rng(seed)
    fraction = data.dimension / dim

    if h is None or h.order == 1:
        diag = projector.diagonal().real
        exact = float(diag.sum() / dim)
        reports = 0
        for _ in range(trials):
            c = int(rng.integers(dim))
            if rng.random() < diag[c]:
                reports += 1
        return MeasurementStats(
            hidden="trivial",
            eta=eta,
            trials=trials,
            reports_trivial=reports,
            empirical_frequency=reports / trials if trials else 0.0,
            exact_probability=exact,
            dim_w=data.dimension,
            fraction=fraction,
        )

    g = space.group
    states: dict[int, CosetStateEnsemble] = {}
    coset_of: dict[int, np.ndarray] = {}
    probs: dict[tuple[int, tuple[int, ...]], float] = {}

    def state_for(c: int) -> CosetStateEnsemble:
        if c not in states:
            conj = conjugate_subgroup(g, h, c)
            ensemble = build_coset_state(space, conj, mode="ensemble")
            lookup = np.empty(g.order, dtype=int)
            for rep_idx, coset in enumerate(left_cosets(g, conj)):
                lookup[list(coset)] = rep_idx
            states[c] = ensemble
            coset_of[c] = lookup
        return states[c]

    def born(c: int, rep_ids: tuple[int, ...]) -> float:
        key = (c, rep_ids)
        if key not in probs:
            ensemble = states[c]
            reps = tuple(ensemble.coset_reps[i] for i in rep_ids)
            vec = ensemble.vector(reps)
            p = float(np.real(np.vdot(vec, projector @ vec)))
            probs[key] = 0.0 if p < _BORN_ZERO_CLAMP else min(p, 1.0)
        return probs[key]

    reports = 0
    for _ in range(trials):
        c = int(rng.integers(g.order))
        ensemble = state_for(c)
        elems = rng.integers(g.order, size=space.k)
        rep_ids = tuple(int(coset_of[c][e]) for e in elems)
        if rng.random() < born(c, rep_ids):
            reports += 1

    # exact expectation: average over all conjugating elements and cosets
    total = 0.0
    for c in range(g.order):
        ensemble = state_for(c)
        partial = 0.0
        for _, vec in ensemble.iter_vectors():
            partial += float(np.real(np.vdot(vec, projector @ vec)))
        total += partial / ensemble.num_vectors
    exact = total / g.order
    if exact < _BORN_ZERO_CLAMP:
        exact = 0.0

    return MeasurementStats(
        hidden=f"conjugates of order-{h.order} subgroup",
        eta=eta,
        trials=trials,
        reports_trivial=reports,
        empirical_frequency=reports / trials if trials else 0.0,
        exact_probability=exact,
        dim_w=data.dimension,
        fraction=fraction,
    )


# ---------------------------------------------------------------------------
# per-block refinement


@dataclass(frozen=True)
class SigmaBlockRow:
    """Contribution of one k-tuple of register irreducibles to the span."""

    sigma: tuple[int, ...]
    plancherel: float
    span_dim_in_block: int       # dim of the span restricted to this block
    copy_fraction: float         # span dim within one copy / block copy dim


@dataclass(frozen=True)
class PerSigmaTable:
    rows: tuple[SigmaBlockRow, ...]
    weighted_average: float
    span_fraction: float


def per_sigma_decomposition(space: MultiRegisterSpace, eta: int) -> PerSigmaTable:
    """Split the span over the blocks of register-wise irreducible names.

    The Plancherel-weighted average of the per-block copy fractions must
    reproduce the global span fraction.
    """
    space.require_dense("per-block decomposition")
    g = space.group
    ct = space.chars
    data = span_data(space, eta)

    # single-register central projectors, one per irreducible name
    singles = []
    rows_idx = np.arange(g.order)
    for sigma in range(ct.num_irreps):
        coeffs = ct.degrees[sigma] / g.order * ct.values_on_elements(sigma).conj()
        block = np.zeros((g.order, g.order), dtype=complex)
        for e in range(g.order):
            block[rows_idx, g.mul[:, e]] += coeffs[e]
        singles.append(block)

    rows = []
    weighted = 0.0
    for sigma_tuple in _cartesian(range(ct.num_irreps), repeat=space.k):
        block_proj = reduce(np.kron, [singles[s] for s in sigma_tuple])
        raw = complex(np.sum(block_proj * data.projector.T))
        nearest = round(raw.real)
        if abs(raw - nearest) > 1e-6:
            raise NumericalFailureError(
                f"span dimension inside block {sigma_tuple} is not integral: {raw!r}"
            )
        copy_dim = math.prod(ct.degrees[s] for s in sigma_tuple)
        planch = math.prod(ct.degrees[s] ** 2 for s in sigma_tuple) / g.order**space.k
        fraction = nearest / copy_dim**2 if nearest else 0.0
        weighted += planch * fraction
        rows.append(
            SigmaBlockRow(
                sigma=sigma_tuple,
                plancherel=planch,
                span_dim_in_block=int(nearest),
                copy_fraction=fraction,
            )
        )
    return PerSigmaTable(
        rows=tuple(rows),
        weighted_average=weighted,
        span_fraction=data.dimension / space.dim,
    )
