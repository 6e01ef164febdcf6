"""Explicit unitary irreducible matrices and projector machinery.

Degree-1 irreducibles come straight from the character table for any
group.  Higher-degree matrices are constructed per family: planar
rotation/reflection pairs for dihedral groups, Young's orthogonal form
for symmetric groups, and Kronecker products for direct products.  Every
construction is matched to its character-table row by its trace vector.

The regular representation acts by right multiplication as the
homomorphism (R(g) psi)(y) = psi(y*g), i.e. R(g)|x> = |x g^-1>; the left
variant is (L(g) psi)(y) = psi(g^-1 y).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .characters import CharacterTable, character_table
from .errors import (
    InvalidActionError,
    NumericalFailureError,
    ResourceLimitError,
    UnsupportedFamilyError,
)
from .groups import (
    Cyclic,
    Dihedral,
    DirectProduct,
    ElementaryAbelian2,
    GroupTable,
    SubgroupHandle,
    Symmetric,
)

_DENSE_REG_CAP = 4096


@dataclass(frozen=True)
class IrrepMatrices:
    """Unitary matrices of one irreducible, indexed by element."""

    group: GroupTable
    irrep_index: int
    dim: int
    mats: np.ndarray  # (order, dim, dim) complex

    def traces(self) -> np.ndarray:
        return np.einsum("gii->g", self.mats)


@dataclass(frozen=True)
class RegularRep:
    """The group acting on its own algebra, stored as permutations."""

    group: GroupTable
    side: str = "right"

    def __post_init__(self) -> None:
        if self.side not in ("right", "left"):
            raise ValueError(f"side must be 'right' or 'left', got {self.side!r}")

    @property
    def dim(self) -> int:
        return self.group.order

    def index_map(self, g: int) -> np.ndarray:
        """Gather map: (rep(g) v)[y] = v[index_map(g)[y]]."""
        if self.side == "right":
            return self.group.mul[:, g]
        return self.group.mul[self.group.inverse[g], :]

    def dense(self, g: int) -> np.ndarray:
        n = self.group.order
        mat = np.zeros((n, n))
        mat[np.arange(n), self.index_map(g)] = 1.0
        return mat

    def character(self, g: int) -> int:
        return int((self.index_map(g) == np.arange(self.group.order)).sum())


# ---------------------------------------------------------------------------
# family constructions


def _degree_one(g: GroupTable, ct: CharacterTable, sigma: int) -> np.ndarray:
    vals = ct.values_on_elements(sigma)
    return vals.reshape(g.order, 1, 1).copy()


def _dihedral_planar_mats(g: GroupTable) -> list[np.ndarray]:
    """All 2-dimensional irreducibles of D_n as rotation/reflection pairs."""
    n = g.spec.n  # type: ignore[union-attr]
    flip = np.array([[1.0, 0.0], [0.0, -1.0]])
    out = []
    for h in range(1, (n + 1) // 2 if n % 2 else n // 2):
        mats = np.zeros((2 * n, 2, 2), dtype=complex)
        for j in range(n):
            theta = 2.0 * np.pi * h * j / n
            rot = np.array(
                [[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]]
            )
            mats[j] = rot
            mats[n + j] = rot @ flip
        out.append(mats)
    return out


def _partitions(n: int) -> list[tuple[int, ...]]:
    if n == 0:
        return [()]
    out = []

    def rec(remaining: int, largest: int, prefix: tuple[int, ...]) -> None:
        if remaining == 0:
            out.append(prefix)
            return
        for part in range(min(remaining, largest), 0, -1):
            rec(remaining - part, part, prefix + (part,))

    rec(n, n, ())
    return out


def _corner_cells(shape: tuple[int, ...]) -> list[int]:
    """Rows whose last cell can be removed leaving a partition."""
    rows = []
    for i, length in enumerate(shape):
        below = shape[i + 1] if i + 1 < len(shape) else 0
        if length > below:
            rows.append(i)
    return rows


def _standard_tableaux(shape: tuple[int, ...]) -> list[tuple[tuple[int, ...], ...]]:
    """All standard fillings with 0..n-1, rows increasing left-to-right."""
    n = sum(shape)
    if n == 0:
        return [()]
    out = []
    for row in _corner_cells(shape):
        smaller = list(shape)
        smaller[row] -= 1
        if smaller[-1] == 0:
            smaller.pop()
        for sub in _standard_tableaux(tuple(smaller)):
            rows = [list(r) for r in sub]
            while len(rows) <= row:
                rows.append([])
            rows[row].append(n - 1)
            out.append(tuple(tuple(r) for r in rows))
    return sorted(out)


def _tableau_positions(tab: tuple[tuple[int, ...], ...]) -> dict[int, tuple[int, int]]:
    return {val: (i, j) for i, row in enumerate(tab) for j, val in enumerate(row)}


def _yor_adjacent_matrices(shape: tuple[int, ...]) -> tuple[list[np.ndarray], int]:
    """Young's orthogonal form matrices for the adjacent swaps of values j, j+1."""
    tableaux = _standard_tableaux(shape)
    index = {t: a for a, t in enumerate(tableaux)}
    dim = len(tableaux)
    n = sum(shape)
    mats = []
    for j in range(n - 1):
        mat = np.zeros((dim, dim))
        for a, tab in enumerate(tableaux):
            pos = _tableau_positions(tab)
            (ri, ci), (rj, cj) = pos[j], pos[j + 1]
            axial = (cj - rj) - (ci - ri)
            mat[a, a] = 1.0 / axial
            swapped = tuple(
                tuple(j if v == j + 1 else j + 1 if v == j else v for v in row)
                for row in tab
            )
            partner = index.get(swapped)  # absent when the swap is not standard
            if partner is not None and partner > a:
                coupling = math.sqrt(1.0 - 1.0 / axial**2)
                mat[a, partner] = coupling
                mat[partner, a] = coupling
        mats.append(mat)
    return mats, dim


def _adjacent_word(perm: Sequence[int]) -> list[int]:
    """Bubble-sort word: perm = s_{w[-1]} o ... o s_{w[0]}."""
    arr = list(perm)
    word = []
    changed = True
    while changed:
        changed = False
        for j in range(len(arr) - 1):
            if arr[j] > arr[j + 1]:
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
                word.append(j)
                changed = True
    return word


def _symmetric_yor_mats(g: GroupTable) -> list[np.ndarray]:
    """Matrices of every irreducible of S_n with degree > 1, via Young's form."""
    n = g.spec.n  # type: ignore[union-attr]
    assert g.perm_action is not None
    out = []
    for shape in _partitions(n):
        adjacents, dim = _yor_adjacent_matrices(shape)
        if dim == 1:
            continue
        mats = np.zeros((g.order, dim, dim), dtype=complex)
        for e, perm in enumerate(g.perm_action):
            word = _adjacent_word(perm)
            acc = np.eye(dim)
            for j in word:  # perm = s_{word[-1]} o ... o s_{word[0]}
                acc = adjacents[j] @ acc
            mats[e] = acc
        out.append(mats)
    return out


def _product_mats(g: GroupTable) -> list[np.ndarray]:
    assert g.factors is not None
    left, right = g.factors
    left_all = all_irrep_matrices(left)
    right_all = all_irrep_matrices(right)
    a = np.arange(g.order) // right.order
    b = np.arange(g.order) % right.order
    out = []
    for la in left_all:
        for rb in right_all:
            if la.dim * rb.dim == 1:
                continue
            mats = np.einsum("gij,gkl->gikjl", la.mats[a], rb.mats[b]).reshape(
                g.order, la.dim * rb.dim, la.dim * rb.dim
            )
            out.append(mats)
    return out


def _higher_degree_candidates(g: GroupTable) -> list[np.ndarray]:
    cached = g._cache.get("family_mats")
    if cached is not None:
        return cached
    spec = g.spec
    if isinstance(spec, (Cyclic, ElementaryAbelian2)) or g.order == 1:
        candidates: list[np.ndarray] = []
    elif isinstance(spec, Dihedral):
        candidates = _dihedral_planar_mats(g)
    elif isinstance(spec, Symmetric):
        candidates = _symmetric_yor_mats(g)
    elif isinstance(spec, DirectProduct):
        candidates = _product_mats(g)
    else:
        family = type(spec).__name__ if spec is not None else "untyped table"
        raise UnsupportedFamilyError(
            f"no explicit matrix construction for family {family} ({g.name})"
        )
    g._cache["family_mats"] = candidates
    return candidates


def irrep_matrices(g: GroupTable, sigma: int) -> IrrepMatrices:
    """Explicit unitary matrices for one irreducible of a supported family."""
    cache = g._cache.setdefault("irreps", {})
    if sigma in cache:
        return cache[sigma]
    ct = character_table(g)
    if not 0 <= sigma < ct.num_irreps:
        raise ValueError(f"irreducible index {sigma} out of range")
    if ct.degrees[sigma] == 1:
        mats = _degree_one(g, ct, sigma)
    else:
        target = ct.values_on_elements(sigma)
        mats = None
        for cand in _higher_degree_candidates(g):
            if cand.shape[1] != ct.degrees[sigma]:
                continue
            if np.allclose(np.einsum("gii->g", cand), target, atol=1e-6):
                mats = cand
                break
        if mats is None:
            raise UnsupportedFamilyError(
                f"no constructed matrices match irreducible {ct.labels[sigma]} of {g.name}"
            )
    mats = np.ascontiguousarray(mats, dtype=complex)
    mats.setflags(write=False)
    rep = IrrepMatrices(group=g, irrep_index=sigma, dim=int(ct.degrees[sigma]), mats=mats)
    cache[sigma] = rep
    return rep


def all_irrep_matrices(g: GroupTable) -> list[IrrepMatrices]:
    ct = character_table(g)
    return [irrep_matrices(g, sigma) for sigma in range(ct.num_irreps)]


def regular_representation(g: GroupTable, side: str = "right") -> RegularRep:
    return RegularRep(group=g, side=side)


# ---------------------------------------------------------------------------
# averages, projectors, ranks


def subgroup_average(rep, h: SubgroupHandle) -> np.ndarray:
    """(1/|H|) sum_{h in H} rep(h); always an idempotent Hermitian matrix."""
    members = np.array(h.members)
    if isinstance(rep, IrrepMatrices):
        return rep.mats[members].mean(axis=0)
    if isinstance(rep, RegularRep):
        n = rep.dim
        if n > _DENSE_REG_CAP:
            raise ResourceLimitError(
                f"dense regular average of dimension {n} exceeds {_DENSE_REG_CAP}"
            )
        out = np.zeros((n, n))
        rows = np.arange(n)
        for m in members:
            out[rows, rep.index_map(int(m))] += 1.0 / len(members)
        return out
    mats = np.asarray([rep[m] for m in members])
    return mats.mean(axis=0)


def isotypic_projector(
    ct: CharacterTable, tau: int, action: Sequence[np.ndarray] | np.ndarray
) -> np.ndarray:
    """(d_tau/|G|) sum_g chi_tau(g)* U(g) for a caller-certified action U."""
    g = ct.group
    coeffs = ct.degrees[tau] / g.order * ct.values_on_elements(tau).conj()
    proj = np.zeros_like(np.asarray(action[0], dtype=complex))
    for e in range(g.order):
        proj = proj + coeffs[e] * np.asarray(action[e])
    residue = float(np.max(np.abs(proj @ proj - proj)))
    if residue > 1e-8:
        raise InvalidActionError(
            f"isotypic projector is not idempotent (residue {residue:.3e}); "
            "the supplied action is not a homomorphism image"
        )
    return proj


def rank_of_projector(p: np.ndarray) -> int:
    """Rank of an idempotent Hermitian matrix, read off its trace."""
    idem = float(np.max(np.abs(p @ p - p)))
    herm = float(np.max(np.abs(p - p.conj().T)))
    if idem > 1e-8 or herm > 1e-8:
        raise NumericalFailureError(
            f"matrix is not a projector (idempotence {idem:.3e}, hermiticity {herm:.3e})"
        )
    trace = complex(np.trace(p))
    nearest = round(trace.real)
    if abs(trace - nearest) > 1e-6:
        raise NumericalFailureError(
            f"projector trace {trace!r} is not within 1e-6 of an integer"
        )
    return int(nearest)


def fourier_matrix(g: GroupTable) -> tuple[np.ndarray, list[tuple[int, int, int]]]:
    """Unitary change of basis F[(sigma,i,j), g] = sqrt(d/|G|) sigma(g)[i,j].

    Requires explicit matrices for every irreducible; returns the matrix and
    the (irrep, row, column) labelling of its rows.
    """
    reps = all_irrep_matrices(g)
    rows = []
    labels = []
    for rep in reps:
        block = np.sqrt(rep.dim / g.order) * rep.mats  # (order, d, d)
        for i in range(rep.dim):
            for j in range(rep.dim):
                rows.append(block[:, i, j])
                labels.append((rep.irrep_index, i, j))
    mat = np.array(rows)
    residual = float(np.max(np.abs(mat @ mat.conj().T - np.eye(g.order))))
    if residual > 1e-10:
        raise NumericalFailureError(
            f"Fourier matrix failed unitarity certification (residual {residual:.3e})"
        )
    return mat, labels
