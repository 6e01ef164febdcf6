"""Missing-harmonic detection and sufficient-condition audits.

An irreducible eta is a missing harmonic of a subgroup H when the subgroup
average eta(H) vanishes, which happens exactly when the character of eta
sums to zero over H.  The detector works from character sums alone and,
for supported families, cross-validates against the rank of the explicit
subgroup average.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .characters import CharacterTable
from .errors import NumericalFailureError, UnsupportedFamilyError
from .groups import (
    GroupTable,
    SubgroupHandle,
    is_normal,
    is_transitive,
    left_cosets,
    subgroup_from_members,
)
from .representations import irrep_matrices, rank_of_projector, subgroup_average

CHARACTER_SUM_TOL = 1e-8

CONDITION_NAMES = (
    "normal_nontrivial",
    "meets_every_coset_of_a_normal_subgroup",
    "transitive_in_full_symmetric_group",
    "index_below_sum_of_degrees",
)


@dataclass(frozen=True)
class ConditionReport:
    """One sufficient condition: holds is None when not applicable."""

    name: str
    holds: bool | None
    detail: str
    witness: dict | None = None


@dataclass(frozen=True)
class HarmonicReport:
    subgroup: SubgroupHandle
    missing: tuple[int, ...]
    missing_labels: tuple[str, ...]
    character_sums: np.ndarray          # |sum_{h in H} chi_eta(h)| per irreducible
    conditions: tuple[ConditionReport, ...]

    @property
    def any_condition_holds(self) -> bool:
        return any(c.holds for c in self.conditions)


def normal_subgroups(g: GroupTable) -> list[SubgroupHandle]:
    """All normal subgroups, as closures of unions of conjugacy classes.

    Grown breadth-first: adjoining one extra class to a known class-closed
    union and re-closing under multiplication reaches every normal subgroup
    without scanning the full powerset of classes.
    """
    cached = g._cache.get("normal_subgroups")
    if cached is not None:
        return list(cached)

    identity_class = int(g.class_of[g.identity])

    def close(class_set: frozenset[int]) -> frozenset[int]:
        current = set(class_set)
        while True:
            members = np.concatenate([np.array(g.classes[c]) for c in sorted(current)])
            produced = set(np.unique(g.class_of[g.mul[np.ix_(members, members)]]).tolist())
            if produced <= current:
                return frozenset(current)
            current |= produced

    seed = frozenset({identity_class})
    found = {seed}
    frontier = [seed]
    while frontier:
        base = frontier.pop()
        for c in range(g.num_classes):
            if c in base:
                continue
            grown = close(base | {c})
            if grown not in found:
                found.add(grown)
                frontier.append(grown)

    handles = []
    for class_set in found:
        members = sorted(
            int(x) for c in class_set for x in g.classes[c]
        )
        handles.append(subgroup_from_members(g, members))
    handles.sort(key=lambda h: (h.order, h.members))
    g._cache["normal_subgroups"] = tuple(handles)
    return handles


def _coset_cover_condition(g: GroupTable, h: SubgroupHandle) -> ConditionReport:
    name = CONDITION_NAMES[1]
    h_members = np.array(h.members)
    for k in normal_subgroups(g):
        if k.is_whole_group:
            continue
        cosets = left_cosets(g, k)
        coset_of = np.empty(g.order, dtype=int)
        for idx, coset in enumerate(cosets):
            coset_of[list(coset)] = idx
        hit = np.unique(coset_of[h_members])
        if len(hit) == len(cosets):
            return ConditionReport(
                name=name,
                holds=True,
                detail=(
                    f"subgroup meets all {len(cosets)} cosets of a normal "
                    f"subgroup of order {k.order}"
                ),
                witness={"normal_subgroup": k.members},
            )
    return ConditionReport(
        name=name,
        holds=False,
        detail="no proper normal subgroup has every coset met by the subgroup",
    )


def sufficient_conditions(
    g: GroupTable, ct: CharacterTable, h: SubgroupHandle
) -> tuple[ConditionReport, ...]:
    """The four audited conditions, each of which forces a missing harmonic."""
    cond1 = ConditionReport(
        name=CONDITION_NAMES[0],
        holds=bool(is_normal(g, h) and h.order > 1),
        detail=f"normal={is_normal(g, h)}, order={h.order}",
    )

    cond2 = _coset_cover_condition(g, h)

    if g.perm_action is None:
        cond3 = ConditionReport(
            name=CONDITION_NAMES[2],
            holds=None,
            detail="group carries no permutation action",
        )
    else:
        degree = len(g.perm_action[0])
        full = g.order == math.factorial(degree) and degree >= 2
        transitive = is_transitive(g, h)
        cond3 = ConditionReport(
            name=CONDITION_NAMES[2],
            holds=bool(full and transitive),
            detail=f"full_symmetric={full}, transitive={transitive}",
            witness={"degree": degree},
        )

    degree_sum = int(sum(ct.degrees))
    index = g.order // h.order
    cond4 = ConditionReport(
        name=CONDITION_NAMES[3],
        holds=bool(index < degree_sum),
        detail=f"index {index} vs degree sum {degree_sum}",
        witness={"index": index, "degree_sum": degree_sum},
    )
    return (cond1, cond2, cond3, cond4)


def find_missing_harmonics(
    g: GroupTable,
    ct: CharacterTable,
    h: SubgroupHandle,
    cross_validate: bool = True,
) -> HarmonicReport:
    """All irreducibles whose character sums to zero over the subgroup.

    When explicit matrices exist, each verdict is cross-checked against
    rank(eta(H)) == 0; a disagreement is a numerical failure.
    """
    members = np.array(h.members)
    sums = np.abs(ct.chars[:, g.class_of[members]].sum(axis=1))
    missing = tuple(int(t) for t in np.flatnonzero(sums < CHARACTER_SUM_TOL * h.order))

    if cross_validate:
        for tau in range(ct.num_irreps):
            try:
                rep = irrep_matrices(g, tau)
            except UnsupportedFamilyError:
                continue
            rank = rank_of_projector(subgroup_average(rep, h))
            if (rank == 0) != (tau in missing):
                raise NumericalFailureError(
                    f"character-sum verdict for {ct.labels[tau]} disagrees with "
                    f"explicit rank {rank} of the subgroup average"
                )

    return HarmonicReport(
        subgroup=h,
        missing=missing,
        missing_labels=tuple(ct.labels[t] for t in missing),
        character_sums=sums,
        conditions=sufficient_conditions(g, ct, h),
    )
