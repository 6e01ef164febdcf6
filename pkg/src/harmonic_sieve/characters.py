"""Complex character tables from the class algebra, plus Plancherel weights.

The table is computed numerically: the class-sum structure constants are
simultaneously diagonalized with a random real splitting combination, the
resulting eigenvectors are rescaled into character rows, and the whole
table is polished by projecting the class-size-weighted matrix onto the
nearest unitary.  Degrees are snapped to integers with residue checks; a
failed certification retries with a fresh splitting vector.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalFailureError
from .groups import GroupTable

_MAX_SPLIT_ATTEMPTS = 8
_ORTHOGONALITY_TOL = 1e-10
_DEGREE_SNAP_TOL = 1e-6


@dataclass(frozen=True)
class CharacterTable:
    """Character values indexed by (irreducible, conjugacy class).

    Rows are sorted by (degree, then descending rounded values) so that the
    trivial character is always index 0 and indices are reproducible.
    """

    group: GroupTable
    chars: np.ndarray          # (r, r) complex, rows = irreducibles
    degrees: tuple[int, ...]
    labels: tuple[str, ...]    # "1a", "1b", "2a", ...

    @property
    def num_irreps(self) -> int:
        return len(self.degrees)

    @property
    def trivial_index(self) -> int:
        return 0

    def values_on_elements(self, tau: int) -> np.ndarray:
        """chi_tau evaluated at every element index."""
        return self.chars[tau, self.group.class_of]

    def index_of_label(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no irreducible labelled {label!r}") from None


@dataclass(frozen=True)
class PlancherelDistribution:
    """Probability d_tau^2 / |G| of each irreducible under weak sampling."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        total = float(self.probs.sum())
        if abs(total - 1.0) > 1e-12 or (self.probs <= 0).any():
            raise NumericalFailureError(
                f"Plancherel weights must be positive and sum to 1, got sum {total!r}"
            )


def _class_structure_tensor(g: GroupTable) -> np.ndarray:
    """A[i, j, k]: class-sum products K_i K_j = sum_k A[i,j,k] K_k."""
    r = g.num_classes
    sizes = g.class_sizes
    tensor = np.zeros((r, r, r))
    for i, ci in enumerate(g.classes):
        ci_arr = np.array(ci)
        for j, cj in enumerate(g.classes):
            prods = g.mul[np.ix_(ci_arr, np.array(cj))].ravel()
            counts = np.bincount(g.class_of[prods], minlength=r)
            tensor[i, j] = counts / sizes
    return tensor


def _letters(i: int) -> str:
    out = ""
    i += 1
    while i > 0:
        i, rem = divmod(i - 1, 26)
        out = chr(ord("a") + rem) + out
    return out


def _extract_rows(g: GroupTable, tensor: np.ndarray, rng: np.random.Generator):
    """One diagonalization attempt; returns unsorted character rows or None."""
    r = g.num_classes
    sizes = g.class_sizes.astype(float)
    order = float(g.order)
    identity_class = int(g.class_of[g.identity])

    if r == 1:
        return np.ones((1, 1), dtype=complex)

    weights = rng.standard_normal(r)
    combo = np.tensordot(weights, tensor, axes=1)
    _, vecs = np.linalg.eig(combo)

    rows = np.zeros((r, r), dtype=complex)
    for col in range(r):
        v = vecs[:, col]
        if abs(v[identity_class]) < 1e-12:
            return None
        v = v / v[identity_class]
        vv = float(np.real(np.vdot(v, v)))
        # least-squares eigenvalue of each class matrix on this eigenvector
        omegas = np.array([np.vdot(v, tensor[i] @ v) / vv for i in range(r)])
        denom = float(np.sum(np.abs(omegas) ** 2 / sizes).real)
        if denom <= 0:
            return None
        degree = np.sqrt(order / denom)
        rows[col] = degree * omegas / sizes

    # polish: rows weighted by sqrt(|C|/|G|) must form a unitary matrix
    scale = np.sqrt(sizes / order)
    u, _, vt = np.linalg.svd(rows * scale[None, :])
    polished = (u @ vt) / scale[None, :]
    if np.max(np.abs(polished - rows)) > 1e-4:
        return None
    return polished


def _certify(g: GroupTable, rows: np.ndarray) -> tuple[int, ...] | None:
    """Integer degrees if the candidate table passes all checks, else None."""
    r = rows.shape[0]
    sizes = g.class_sizes.astype(float)
    identity_class = int(g.class_of[g.identity])
    gram = (rows * sizes[None, :] / g.order) @ rows.conj().T
    if np.max(np.abs(gram - np.eye(r))) > _ORTHOGONALITY_TOL:
        return None
    raw_degrees = rows[:, identity_class]
    if np.max(np.abs(raw_degrees.imag)) > _DEGREE_SNAP_TOL:
        return None
    degrees = np.rint(raw_degrees.real).astype(int)
    if np.max(np.abs(raw_degrees.real - degrees)) > _DEGREE_SNAP_TOL:
        return None
    if (degrees < 1).any() or int((degrees**2).sum()) != g.order:
        return None
    return tuple(int(d) for d in degrees)


def character_table(g: GroupTable) -> CharacterTable:
    """Compute (and cache) the full complex character table of a group."""
    cached = g._cache.get("character_table")
    if cached is not None:
        return cached

    tensor = _class_structure_tensor(g)
    rows = None
    degrees = None
    for attempt in range(_MAX_SPLIT_ATTEMPTS):
        rng = np.random.default_rng(0xC1A55 + attempt)
        candidate = _extract_rows(g, tensor, rng)
        if candidate is None:
            continue
        certified = _certify(g, candidate)
        if certified is not None:
            rows, degrees = candidate, certified
            break
    if rows is None:
        raise NumericalFailureError(
            f"character table of {g.name}: no splitting vector separated the "
            f"class algebra after {_MAX_SPLIT_ATTEMPTS} attempts"
        )

    # deterministic row order: by degree, then descending rounded values,
    # which places the trivial character first.
    def sort_key(idx: int):
        vals = np.round(rows[idx], 8)
        return (degrees[idx], tuple((-v.real, -v.imag) for v in vals))

    perm = sorted(range(len(degrees)), key=sort_key)
    rows = rows[perm]
    degrees = tuple(degrees[i] for i in perm)

    labels = []
    per_degree: dict[int, int] = {}
    for d in degrees:
        labels.append(f"{d}{_letters(per_degree.get(d, 0))}")
        per_degree[d] = per_degree.get(d, 0) + 1

    rows.setflags(write=False)
    table = CharacterTable(group=g, chars=rows, degrees=degrees, labels=tuple(labels))
    g._cache["character_table"] = table
    return table


def plancherel(ct: CharacterTable) -> PlancherelDistribution:
    """probs[tau] = d_tau^2 / |G|."""
    degrees = np.array(ct.degrees, dtype=float)
    return PlancherelDistribution(probs=degrees**2 / ct.group.order)


def tensor_decompose(ct: CharacterTable, taus: list[int] | tuple[int, ...]) -> np.ndarray:
    """Multiplicities of each irreducible in the tensor product of the given ones.

    a_tau = (1/|G|) sum_g (prod_i chi_{sigma_i}(g)) chi_tau(g)*, snapped to
    integers with a residue check.
    """
    if not taus:
        raise ValueError("need at least one irreducible to decompose")
    sizes = ct.group.class_sizes.astype(float)
    product = np.ones(ct.num_irreps, dtype=complex)
    for t in taus:
        product = product * ct.chars[t]
    mults = (ct.chars.conj() * sizes[None, :]) @ product / ct.group.order
    snapped = np.rint(mults.real)
    residue = float(np.max(np.abs(mults - snapped)))
    if residue > 1e-6:
        raise NumericalFailureError(
            f"tensor decomposition multiplicities are not integral (residue {residue:.3e})"
        )
    if (snapped < 0).any():
        raise NumericalFailureError("negative multiplicity in tensor decomposition")
    return snapped.astype(int)
