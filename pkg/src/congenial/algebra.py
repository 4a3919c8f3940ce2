"""Finite semigroups given by Cayley tables, and stable partial orders on them.

Elements are dense 0-based indices; names only matter for display and I/O.
Every function here is pure and works on the index representation.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence


class AlgebraError(ValueError):
    """Base class for validation failures of tables and orders."""


class BadIndex(AlgebraError):
    pass


class NonAssociative(AlgebraError):
    def __init__(self, i: int, j: int, k: int, names: Sequence[str] | None = None):
        self.triple = (i, j, k)
        if names is not None:
            i, j, k = names[i], names[j], names[k]
        super().__init__(f"NonAssociative({i}, {j}, {k})")


class NotAntisymmetric(AlgebraError):
    def __init__(self, x: int, y: int, names: Sequence[str] | None = None):
        self.pair = (x, y)
        if names is not None:
            x, y = names[x], names[y]
        super().__init__(f"NotAntisymmetric({x}, {y}): {x} <= {y} and {y} <= {x}")


class NotStable(AlgebraError):
    def __init__(self, x: int, y: int, s: int, side: str, names: Sequence[str] | None = None):
        self.witness = (x, y, s, side)
        if names is not None:
            x, y, s = names[x], names[y], names[s]
        if side == "left":
            msg = f"{x} <= {y} but not {s}*{x} <= {s}*{y}"
        else:
            msg = f"{x} <= {y} but not {x}*{s} <= {y}*{s}"
        super().__init__(f"NotStable({x}, {y}, {s}, {side}): {msg}")


class EmptyGeneratorSet(AlgebraError):
    pass


Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class FiniteSemigroup:
    elements: tuple[str, ...]
    table: Table

    def __len__(self) -> int:
        return len(self.elements)

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def product(self, seq: Iterable[int]) -> int:
        it = iter(seq)
        acc = next(it)
        for x in it:
            acc = self.table[acc][x]
        return acc

    def index(self, name: str) -> int:
        return self.elements.index(name)

    @cached_property
    def identity(self) -> int | None:
        rn = range(len(self.elements))
        for e in rn:
            if all(self.table[e][x] == x == self.table[x][e] for x in rn):
                return e
        return None


@dataclass(frozen=True)
class StableOrder:
    """The relation matrix: ``relation[i][j]`` holds iff element i <= element j."""

    relation: tuple[tuple[bool, ...], ...]

    def le(self, x: int, y: int) -> bool:
        return self.relation[x][y]

    def pairs(self) -> list[tuple[int, int]]:
        n = len(self.relation)
        return [(x, y) for x in range(n) for y in range(n) if x != y and self.relation[x][y]]

    def covers(self) -> list[tuple[int, int]]:
        """Pairs x < y with nothing strictly between them (the Hasse diagram)."""
        n = len(self.relation)
        r = self.relation
        out = []
        for x, y in self.pairs():
            if not any(z != x and z != y and r[x][z] and r[z][y] for z in range(n)):
                out.append((x, y))
        return out


@dataclass(frozen=True)
class OrderedSemigroup:
    semigroup: FiniteSemigroup
    order: StableOrder

    # the ordered semigroup is used wherever a plain one is expected
    @property
    def elements(self) -> tuple[str, ...]:
        return self.semigroup.elements

    @property
    def table(self) -> Table:
        return self.semigroup.table

    def __len__(self) -> int:
        return len(self.semigroup)

    def mul(self, x: int, y: int) -> int:
        return self.semigroup.table[x][y]

    def product(self, seq: Iterable[int]) -> int:
        return self.semigroup.product(seq)

    def index(self, name: str) -> int:
        return self.semigroup.index(name)

    def le(self, x: int, y: int) -> bool:
        return self.order.relation[x][y]

    @property
    def identity(self) -> int | None:
        return self.semigroup.identity


def validate_semigroup(elements: Sequence[str], table: Sequence[Sequence[int]]) -> FiniteSemigroup:
    """Check that ``table`` is a total associative operation on ``elements``.

    Associativity is checked over all n**3 triples; the first failing triple
    in lexicographic order is reported.
    """
    names = tuple(str(e) for e in elements)
    n = len(names)
    if n == 0:
        raise AlgebraError("a semigroup needs at least one element")
    if len(set(names)) != n:
        raise AlgebraError("element names must be distinct")
    if len(table) != n:
        raise BadIndex(f"table has {len(table)} rows, expected {n}")
    rows = []
    for i, row in enumerate(table):
        if len(row) != n:
            raise BadIndex(f"row {names[i]} has {len(row)} entries, expected {n}")
        for j, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < n:
                raise BadIndex(f"entry {names[i]}*{names[j]} = {v!r} is not an index in [0, {n})")
        rows.append(tuple(row))
    t = tuple(rows)
    for i, j, k in product(range(n), repeat=3):
        if t[t[i][j]][k] != t[i][t[j][k]]:
            raise NonAssociative(i, j, k, names)
    return FiniteSemigroup(names, t)


def reflexive_transitive_closure(n: int, pairs: Iterable[tuple[int, int]]) -> list[list[bool]]:
    rel = [[i == j for j in range(n)] for i in range(n)]
    for x, y in pairs:
        if not (0 <= x < n and 0 <= y < n):
            raise BadIndex(f"order pair ({x}, {y}) out of range")
        rel[x][y] = True
    # Warshall
    for k in range(n):
        rk = rel[k]
        for i in range(n):
            if rel[i][k]:
                ri = rel[i]
                for j in range(n):
                    if rk[j]:
                        ri[j] = True
    return rel


def validate_order(S: FiniteSemigroup, pairs: Iterable[tuple[int, int]] = ()) -> StableOrder:
    """Close ``pairs`` (x <= y) reflexively and transitively, then check it is a stable partial order."""
    n = len(S)
    rel = reflexive_transitive_closure(n, pairs)
    names = S.elements
    for x in range(n):
        for y in range(x + 1, n):
            if rel[x][y] and rel[y][x]:
                raise NotAntisymmetric(x, y, names)
    t = S.table
    for x in range(n):
        for y in range(n):
            if x == y or not rel[x][y]:
                continue
            for s in range(n):
                if not rel[t[s][x]][t[s][y]]:
                    raise NotStable(x, y, s, "left", names)
                if not rel[t[x][s]][t[y][s]]:
                    raise NotStable(x, y, s, "right", names)
    return StableOrder(tuple(tuple(r) for r in rel))


def equality_order(n: int) -> StableOrder:
    return StableOrder(tuple(tuple(i == j for j in range(n)) for i in range(n)))


def ordered(S: FiniteSemigroup, pairs: Iterable[tuple[int, int]] = ()) -> OrderedSemigroup:
    return OrderedSemigroup(S, validate_order(S, pairs))


def omega(S, s: int) -> int:
    """The unique idempotent power of ``s``."""
    t = S.table
    x = s
    for _ in range(len(t) + 1):
        if t[x][x] == x:
            return x
        x = t[x][s]
    raise AssertionError("no idempotent power found; table is not a finite semigroup")


def omega_plus_one(S, s: int) -> int:
    return S.table[omega(S, s)][s]


def omega_table(S) -> list[int]:
    return [omega(S, s) for s in range(len(S.table))]


def idempotents(S) -> list[int]:
    t = S.table
    return [e for e in range(len(t)) if t[e][e] == e]


def generated_subsemigroup(S, gens: Iterable[int]) -> frozenset[int]:
    t = S.table
    found = set(gens)
    if not found:
        raise EmptyGeneratorSet("cannot generate from an empty set")
    frontier = list(found)
    while frontier:
        x = frontier.pop()
        for y in list(found):
            for z in (t[x][y], t[y][x]):
                if z not in found:
                    found.add(z)
                    frontier.append(z)
    return frozenset(found)


def _multipliers(S) -> list[int | None]:
    # S^1: None stands for an adjoined neutral element
    n = len(S.table)
    if S.identity is not None:
        return list(range(n))
    return [None, *range(n)]


def left_ideal(S, t_: int) -> frozenset[int]:
    """S^1 t."""
    t = S.table
    return frozenset(t_ if y is None else t[y][t_] for y in _multipliers(S))


def principal_ideal(S, s: int) -> frozenset[int]:
    """S^1 s S^1."""
    t = S.table
    ms = _multipliers(S)
    left = {s if x is None else t[x][s] for x in ms}
    return frozenset(u if y is None else t[u][y] for u in left for y in ms)


def leq_L(S, s: int, t: int) -> bool:
    return s in left_ideal(S, t)


def green_L(S, s: int, t: int) -> bool:
    return leq_L(S, s, t) and leq_L(S, t, s)


def green_J(S, s: int, t: int) -> bool:
    return principal_ideal(S, s) == principal_ideal(S, t)


def leq_L_matrix(S) -> list[list[bool]]:
    n = len(S.table)
    ideals = [left_ideal(S, t) for t in range(n)]
    return [[s in ideals[t] for t in range(n)] for s in range(n)]


def j_classes(S) -> list[list[int]]:
    """J-classes, each sorted, listed by smallest member."""
    by_ideal: dict[frozenset[int], list[int]] = {}
    for s in range(len(S.table)):
        by_ideal.setdefault(principal_ideal(S, s), []).append(s)
    return sorted(by_ideal.values())


def is_simple(S) -> bool:
    return len(j_classes(S)) == 1


def find_idempotent_factor(S, sequence: Sequence[int]) -> tuple[int, int] | None:
    """1-based (i, j) with s_i...s_j idempotent, or None.

    Scans j = 1, 2, ... and for each j the start i from j down to 1, so the
    answer is the first idempotent factor to end, and among those the shortest.
    """
    t = S.table
    for j in range(len(sequence)):
        p = sequence[j]
        for i in range(j, -1, -1):
            if i < j:
                p = t[sequence[i]][p]
            if t[p][p] == p:
                return i + 1, j + 1
    return None


def idempotent_factor_bound(S) -> int:
    """Least n such that every sequence of n elements has an idempotent factor.

    Computed exactly: the state after reading a sequence is the set of its
    suffix products, and a sequence avoids idempotent factors iff no state
    along the way contains an idempotent. The bound is one more than the
    longest path in that (acyclic, by finiteness) state graph.
    """
    t = S.table
    n = len(t)
    idem = {e for e in range(n) if t[e][e] == e}
    longest: dict[frozenset[int], int] = {}

    def succ(state: frozenset[int]):
        for s in range(n):
            nxt = frozenset({t[p][s] for p in state} | {s})
            if not nxt & idem:
                yield nxt

    root: frozenset[int] = frozenset()
    stack = [(root, succ(root))]
    on_path = {root}
    best = {root: 0}
    while stack:
        state, it = stack[-1]
        child = next(it, None)
        if child is None:
            stack.pop()
            on_path.discard(state)
            longest[state] = best[state]
            if stack:
                parent = stack[-1][0]
                best[parent] = max(best[parent], longest[state] + 1)
            continue
        if child in longest:
            best[state] = max(best[state], longest[child] + 1)
            continue
        if child in on_path:
            raise AssertionError("idempotent-free sequences of unbounded length")
        on_path.add(child)
        best[child] = 0
        stack.append((child, succ(child)))
    return longest[root] + 1


def restrict(S: OrderedSemigroup, subset: Iterable[int]) -> tuple[OrderedSemigroup, list[int]]:
    """The subsemigroup on ``subset`` (which must be closed) with the induced order.

    Returns the new ordered semigroup and the list mapping new indices to old.
    """
    new_to_old = sorted(subset)
    old_to_new = {x: i for i, x in enumerate(new_to_old)}
    t = S.table
    try:
        table = tuple(tuple(old_to_new[t[a][b]] for b in new_to_old) for a in new_to_old)
    except KeyError:
        raise AlgebraError("subset is not closed under multiplication") from None
    sg = FiniteSemigroup(tuple(S.elements[x] for x in new_to_old), table)
    rel = tuple(tuple(S.le(a, b) for b in new_to_old) for a in new_to_old)
    return OrderedSemigroup(sg, StableOrder(rel)), new_to_old
