"""Finite groups as explicit multiplication tables.

Elements are integers ``0..order-1`` in a canonical, constructor-defined
ordering (rotations before reflections for dihedral groups, lexicographic
one-line forms for permutations), so element indices and every downstream
fixture are stable across runs.  Conjugacy classes are computed eagerly at
build time by brute force; subgroups are immutable index sets bound to
their parent table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import permutations as _lex_permutations
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import GroupSpecError, ResourceLimitError

DEFAULT_ORDER_CAP = 5040


# ---------------------------------------------------------------------------
# group specifications


@dataclass(frozen=True)
class Cyclic:
    """Integers mod n under addition."""

    n: int


@dataclass(frozen=True)
class Dihedral:
    """Symmetries of the regular n-gon: n rotations, n reflections."""

    n: int


@dataclass(frozen=True)
class Symmetric:
    """All permutations of n points."""

    n: int


@dataclass(frozen=True)
class ElementaryAbelian2:
    """(Z_2)^n under bitwise xor."""

    n: int


@dataclass(frozen=True)
class DirectProduct:
    left: "GroupSpec"
    right: "GroupSpec"


@dataclass(frozen=True)
class PermGens:
    """Group generated by explicit permutations on a common 0-based domain."""

    perms: tuple[tuple[int, ...], ...]


GroupSpec = Union[Cyclic, Dihedral, Symmetric, ElementaryAbelian2, DirectProduct, PermGens]


# ---------------------------------------------------------------------------
# core types


@dataclass(frozen=True, eq=False)
class GroupTable:
    """A finite group materialized as an order x order multiplication table.

    ``mul[a, b]`` is the index of the product a*b; for permutation-built
    groups the product acts by composition, (a*b)(x) = a(b(x)).
    Instances are immutable after construction and safe to share.
    """

    order: int
    mul: np.ndarray
    identity: int
    inverse: np.ndarray
    labels: tuple[str, ...]
    classes: tuple[tuple[int, ...], ...]
    class_of: np.ndarray
    name: str
    spec: GroupSpec | None = None
    perm_action: tuple[tuple[int, ...], ...] | None = None
    factors: tuple["GroupTable", "GroupTable"] | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    @property
    def class_sizes(self) -> np.ndarray:
        return np.array([len(c) for c in self.classes])

    def class_representatives(self) -> tuple[int, ...]:
        return tuple(c[0] for c in self.classes)

    def conjugate_element(self, c: int, x: int) -> int:
        return int(self.mul[self.mul[c, x], self.inverse[c]])

    def index_of_label(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no element labelled {label!r} in {self.name}") from None

    def __repr__(self) -> str:  # pragma: no cover - debug convenience
        return f"GroupTable({self.name}, order={self.order})"


@dataclass(frozen=True, eq=False)
class SubgroupHandle:
    """A subgroup of a GroupTable, stored as its sorted member indices."""

    parent: GroupTable
    members: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    @property
    def is_trivial(self) -> bool:
        return len(self.members) == 1

    @property
    def is_whole_group(self) -> bool:
        return len(self.members) == self.parent.order

    def member_labels(self) -> tuple[str, ...]:
        return tuple(self.parent.labels[m] for m in self.members)

    def __repr__(self) -> str:  # pragma: no cover - debug convenience
        return f"SubgroupHandle(order={self.order}, members={self.members})"


# ---------------------------------------------------------------------------
# construction helpers


def _conjugacy_classes(order: int, mul: np.ndarray, inverse: np.ndarray):
    everyone = np.arange(order)
    class_of = np.full(order, -1, dtype=np.int64)
    classes: list[tuple[int, ...]] = []
    for x in range(order):
        if class_of[x] >= 0:
            continue
        # all conjugates c*x*c^-1 at once
        conj = mul[mul[everyone, x], inverse[everyone]]
        members = np.unique(conj)
        class_of[members] = len(classes)
        classes.append(tuple(int(m) for m in members))
    return tuple(classes), class_of


def _finish_table(
    mul: np.ndarray,
    labels: Sequence[str],
    name: str,
    spec: GroupSpec | None,
    perm_action: tuple[tuple[int, ...], ...] | None = None,
    factors: tuple[GroupTable, GroupTable] | None = None,
) -> GroupTable:
    order = mul.shape[0]
    mul = np.ascontiguousarray(mul, dtype=np.int64)
    everyone = np.arange(order)
    row_ident = (mul == everyone[None, :]).all(axis=1)
    col_ident = (mul == everyone[:, None]).all(axis=0)
    ident = np.flatnonzero(row_ident & col_ident)
    if ident.size != 1:
        raise GroupSpecError(f"table for {name} has no unique two-sided identity")
    identity = int(ident[0])
    inverse = np.argmax(mul == identity, axis=1).astype(np.int64)
    if not np.array_equal(mul[everyone, inverse], np.full(order, identity)):
        raise GroupSpecError(f"table for {name} has elements without inverses")
    classes, class_of = _conjugacy_classes(order, mul, inverse)
    mul.setflags(write=False)
    inverse.setflags(write=False)
    class_of.setflags(write=False)
    return GroupTable(
        order=order,
        mul=mul,
        identity=identity,
        inverse=inverse,
        labels=tuple(labels),
        classes=classes,
        class_of=class_of,
        name=name,
        spec=spec,
        perm_action=perm_action,
        factors=factors,
    )


def _spec_order(spec: GroupSpec) -> int | None:
    """Order implied by the spec, or None when only closure can tell."""
    if isinstance(spec, Cyclic):
        return spec.n
    if isinstance(spec, Dihedral):
        return 2 * spec.n
    if isinstance(spec, Symmetric):
        return math.factorial(spec.n)
    if isinstance(spec, ElementaryAbelian2):
        return 2**spec.n
    if isinstance(spec, DirectProduct):
        lo = _spec_order(spec.left)
        ro = _spec_order(spec.right)
        if lo is None or ro is None:
            return None
        return lo * ro
    return None


def _build_cyclic(spec: Cyclic) -> GroupTable:
    n = spec.n
    idx = np.arange(n)
    mul = np.add.outer(idx, idx) % n
    return _finish_table(mul, [str(i) for i in range(n)], f"Z{n}", spec)


def _build_dihedral(spec: Dihedral) -> GroupTable:
    # element j is the rotation r^j; element n+j is the reflection r^j s,
    # with s r^b = r^-b s.
    n = spec.n
    mul = np.zeros((2 * n, 2 * n), dtype=np.int64)
    a = np.arange(n)
    rot_sum = np.add.outer(a, a) % n
    rot_diff = np.subtract.outer(a, a) % n
    mul[:n, :n] = rot_sum
    mul[:n, n:] = rot_sum + n
    mul[n:, :n] = rot_diff + n
    mul[n:, n:] = rot_diff
    labels = [f"r{j}" for j in range(n)] + [f"s{j}" for j in range(n)]
    return _finish_table(mul, labels, f"D{n}", spec)


def _perm_label(p: Sequence[int]) -> str:
    seen = [False] * len(p)
    cycles = []
    for start in range(len(p)):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        cyc = [start]
        seen[start] = True
        nxt = p[start]
        while nxt != start:
            cyc.append(nxt)
            seen[nxt] = True
            nxt = p[nxt]
        cycles.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
    return "".join(cycles) if cycles else "()"


def _lehmer_ranks(arr: np.ndarray, factorials: np.ndarray) -> np.ndarray:
    """Lexicographic ranks of permutation rows; inverse of itertools order."""
    n = arr.shape[1]
    ranks = np.zeros(arr.shape[0], dtype=np.int64)
    for i in range(n - 1):
        smaller = (arr[:, i + 1 :] < arr[:, i : i + 1]).sum(axis=1)
        ranks += smaller * factorials[n - 1 - i]
    return ranks


def _build_symmetric(spec: Symmetric) -> GroupTable:
    n = spec.n
    elems = np.array(list(_lex_permutations(range(n))), dtype=np.int64)
    m = elems.shape[0]
    facts = np.array([math.factorial(i) for i in range(n + 1)], dtype=np.int64)
    mul = np.zeros((m, m), dtype=np.int64)
    for j in range(m):
        composed = elems[:, elems[j]]  # row i = p_i applied after p_j
        mul[:, j] = _lehmer_ranks(composed, facts)
    labels = [_perm_label(p) for p in elems]
    action = tuple(tuple(int(x) for x in p) for p in elems)
    return _finish_table(mul, labels, f"S{n}", spec, perm_action=action)


def _build_elementary_abelian2(spec: ElementaryAbelian2) -> GroupTable:
    n = spec.n
    idx = np.arange(2**n)
    mul = np.bitwise_xor.outer(idx, idx)
    labels = [format(i, f"0{n}b") for i in idx]
    return _finish_table(mul, labels, f"Z2^{n}", spec)


def _build_product(spec: DirectProduct, max_order: int) -> GroupTable:
    left = build_group(spec.left, max_order=max_order)
    right = build_group(spec.right, max_order=max_order)
    order = left.order * right.order
    if order > max_order:
        raise ResourceLimitError(
            f"direct product order {order} exceeds the cap {max_order}"
        )
    idx = np.arange(order)
    a, b = idx // right.order, idx % right.order
    mul = left.mul[np.ix_(a, a)] * right.order + right.mul[np.ix_(b, b)]
    labels = [f"({left.labels[x]},{right.labels[y]})" for x, y in zip(a, b)]
    name = f"{left.name}x{right.name}"
    return _finish_table(mul, labels, name, spec, factors=(left, right))


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(p[x] for x in q)


def _build_permgens(spec: PermGens, max_order: int) -> GroupTable:
    if not spec.perms:
        raise GroupSpecError("PermGens needs at least one permutation")
    domain = len(spec.perms[0])
    for p in spec.perms:
        if len(p) != domain:
            raise GroupSpecError("permutation generators act on mismatched domains")
        if sorted(p) != list(range(domain)):
            raise GroupSpecError(f"{p} is not a permutation of 0..{domain - 1}")
    identity = tuple(range(domain))
    members = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for cur in frontier:
            for gen in spec.perms:
                prod = _compose(cur, gen)
                if prod not in members:
                    if len(members) >= max_order:
                        raise ResourceLimitError(
                            f"generated group exceeds the order cap {max_order}"
                        )
                    members.add(prod)
                    nxt.append(prod)
        frontier = nxt
    elems = sorted(members)  # identity is lexicographically first
    index = {p: i for i, p in enumerate(elems)}
    m = len(elems)
    mul = np.zeros((m, m), dtype=np.int64)
    for i, p in enumerate(elems):
        for j, q in enumerate(elems):
            mul[i, j] = index[_compose(p, q)]
    labels = [_perm_label(p) for p in elems]
    return _finish_table(mul, labels, f"perm[{m}]", spec, perm_action=tuple(elems))


def build_group(spec: GroupSpec, max_order: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """Materialize a group specification as a multiplication table."""
    known = _spec_order(spec)
    if known is not None and known > max_order:
        raise ResourceLimitError(
            f"group of order {known} exceeds the cap {max_order}"
        )
    if isinstance(spec, Cyclic):
        if spec.n < 1:
            raise GroupSpecError("Cyclic order must be >= 1")
        return _build_cyclic(spec)
    if isinstance(spec, Dihedral):
        if spec.n < 1:
            raise GroupSpecError("Dihedral index must be >= 1")
        return _build_dihedral(spec)
    if isinstance(spec, Symmetric):
        if spec.n < 1:
            raise GroupSpecError("Symmetric degree must be >= 1")
        return _build_symmetric(spec)
    if isinstance(spec, ElementaryAbelian2):
        if spec.n < 1:
            raise GroupSpecError("ElementaryAbelian2 rank must be >= 1")
        return _build_elementary_abelian2(spec)
    if isinstance(spec, DirectProduct):
        return _build_product(spec, max_order)
    if isinstance(spec, PermGens):
        return _build_permgens(spec, max_order)
    raise GroupSpecError(f"unknown group spec {spec!r}")


def verify_group_axioms(g: GroupTable) -> bool:
    """Full associativity / identity / inverse check; O(order^3) memory-lean."""
    n = g.order
    left = g.mul[g.mul, :]            # left[a,b,c] = (a*b)*c
    right = g.mul[:, g.mul]           # right[a,b,c] = a*(b*c)
    if not np.array_equal(left, right):
        return False
    everyone = np.arange(n)
    if not np.array_equal(g.mul[g.identity], everyone):
        return False
    if not np.array_equal(g.mul[:, g.identity], everyone):
        return False
    return bool(np.array_equal(g.mul[everyone, g.inverse], np.full(n, g.identity)))


# ---------------------------------------------------------------------------
# subgroup operations


def subgroup_from_members(g: GroupTable, members: Iterable[int]) -> SubgroupHandle:
    """Wrap an explicit member set, validating closure and the identity."""
    mem = sorted({int(m) for m in members})
    if any(m < 0 or m >= g.order for m in mem):
        raise ValueError("member index out of range")
    if g.identity not in mem:
        raise ValueError("subgroup must contain the identity")
    arr = np.array(mem)
    products = g.mul[np.ix_(arr, arr)]
    if not np.isin(products, arr).all():
        raise ValueError("member set is not closed under multiplication")
    return SubgroupHandle(parent=g, members=tuple(mem))


def subgroup_closure(g: GroupTable, gens: Iterable[int]) -> SubgroupHandle:
    """Smallest subgroup containing the generators, with sorted members."""
    members = {g.identity}
    for x in gens:
        x = int(x)
        if x < 0 or x >= g.order:
            raise ValueError(f"generator index {x} out of range for {g.name}")
        members.add(x)
    while True:
        arr = np.fromiter(members, dtype=np.int64)
        products = set(g.mul[np.ix_(arr, arr)].ravel().tolist())
        if products <= members:
            break
        members |= products
    return SubgroupHandle(parent=g, members=tuple(sorted(members)))


def left_cosets(g: GroupTable, h: SubgroupHandle) -> list[tuple[int, ...]]:
    """Partition of the group into left cosets c*H, ordered by minimal member."""
    members = np.array(h.members)
    seen = np.zeros(g.order, dtype=bool)
    cosets = []
    for c in range(g.order):
        if seen[c]:
            continue
        coset = np.sort(g.mul[c, members])
        seen[coset] = True
        cosets.append(tuple(int(x) for x in coset))
    return cosets


def conjugate_subgroup(g: GroupTable, h: SubgroupHandle, c: int) -> SubgroupHandle:
    """The subgroup c H c^-1."""
    members = np.array(h.members)
    conj = g.mul[g.mul[c, members], g.inverse[c]]
    return SubgroupHandle(parent=g, members=tuple(int(x) for x in np.sort(conj)))


def is_normal(g: GroupTable, h: SubgroupHandle) -> bool:
    """True iff the member set is a union of conjugacy classes."""
    hit = np.unique(g.class_of[np.array(h.members)])
    return int(sum(len(g.classes[c]) for c in hit)) == h.order


def is_transitive(g: GroupTable, h: SubgroupHandle) -> bool:
    """Whether the subgroup's permutation action has a single orbit."""
    if g.perm_action is None:
        raise ValueError(
            f"{g.name} carries no permutation action; transitivity is undefined"
        )
    domain = len(g.perm_action[0])
    orbit = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for m in h.members:
                y = g.perm_action[m][x]
                if y not in orbit:
                    orbit.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(orbit) == domain


def all_subgroups(g: GroupTable) -> list[SubgroupHandle]:
    """Every subgroup, found by closing each known subgroup with one extra element."""
    cached = g._cache.get("all_subgroups")
    if cached is not None:
        return list(cached)
    trivial = subgroup_closure(g, ())
    found: dict[tuple[int, ...], SubgroupHandle] = {trivial.members: trivial}
    frontier = [trivial]
    while frontier:
        h = frontier.pop()
        inside = h.member_set
        for x in range(g.order):
            if x in inside:
                continue
            t = subgroup_closure(g, h.members + (x,))
            if t.members not in found:
                found[t.members] = t
                frontier.append(t)
    result = sorted(found.values(), key=lambda s: (s.order, s.members))
    g._cache["all_subgroups"] = tuple(result)
    return list(result)
