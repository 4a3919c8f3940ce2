"""Element-level conditions that are necessary or sufficient for congeniality.

Every checker scans its quantifier range in a fixed order and reports the
first violation, so counterexamples are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import OrderedSemigroup, idempotents, leq_L_matrix, omega_table
from .decider import decide_wqo
from .words import eval_homomorphism, necklaces


class ConditionError(ValueError):
    pass


class TupleBudgetExceeded(ConditionError):
    pass


class CarrierTooLarge(ConditionError):
    pass


@dataclass(frozen=True)
class ConditionReport:
    name: str
    holds: bool
    counterexample: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.holds != (self.counterexample is None):
            raise ValueError("a counterexample is given exactly when the condition fails")

    def show(self, S: OrderedSemigroup) -> str:
        if self.holds:
            return f"{self.name}: holds"
        ce = ", ".join(S.elements[x] for x in self.counterexample)
        return f"{self.name}: fails at ({ce})"


def check_condition_1(S: OrderedSemigroup) -> ConditionReport:
    """s <= (st)^w s  or  t <= t (st)^w, for all s, t. Necessary."""
    t, le, w = S.table, S.order.relation, omega_table(S)
    n = len(t)
    for s in range(n):
        for u in range(n):
            e = w[t[s][u]]
            if not (le[s][t[e][s]] or le[u][t[u][e]]):
                return ConditionReport("condition_1", False, (s, u))
    return ConditionReport("condition_1", True)


def check_sufficient_xyx(S: OrderedSemigroup) -> ConditionReport:
    """x <= x (yx)^w for all x, y. Sufficient."""
    t, le, w = S.table, S.order.relation, omega_table(S)
    n = len(t)
    for x in range(n):
        for y in range(n):
            if not le[x][t[x][w[t[y][x]]]]:
                return ConditionReport("sufficient_xyx", False, (x, y))
    return ConditionReport("sufficient_xyx", True)


def check_kunc_unordered(S) -> ConditionReport:
    """(st)^w s = s  or  t (st)^w = t; the order is ignored."""
    t, w = S.table, omega_table(S)
    n = len(t)
    for s in range(n):
        for u in range(n):
            e = w[t[s][u]]
            if t[e][s] != s and t[u][e] != u:
                return ConditionReport("kunc_unordered", False, (s, u))
    return ConditionReport("kunc_unordered", True)


def check_cyclic_condition(S: OrderedSemigroup, n: int, tuple_budget: int = 5_000_000) -> ConditionReport:
    """For all s_1..s_n some i has s_i <= s_i (s_{i+1}...s_n s_1...s_i)^w.

    Only lexicographically least rotations are visited: the existential over
    i makes the condition invariant under rotating the tuple. Holding for
    every n characterises congeniality, but no single n does.
    """
    if n < 1:
        raise ConditionError("n must be at least 1")
    size = len(S)
    if size ** n > tuple_budget * n:
        raise TupleBudgetExceeded(f"{size}^{n} tuples exceed the budget of {tuple_budget} rotation classes")
    t, le, w = S.table, S.order.relation, omega_table(S)
    name = f"cyclic_{n}"
    for tup in necklaces(size, n):
        # rot[i] = s_{i+1} ... s_n s_1 ... s_i (1-based) = product of tup rotated to start after i
        ok = False
        for i in range(n):
            p = tup[(i + 1) % n]
            for j in range(2, n + 1):
                p = t[p][tup[(i + j) % n]]
            s = tup[i]
            if le[s][t[s][w[p]]]:
                ok = True
                break
        if not ok:
            return ConditionReport(name, False, tuple(tup))
    return ConditionReport(name, True)


def check_polstar(S: OrderedSemigroup, max_size: int = 16) -> ConditionReport:
    """Every non-empty F has some s in F with s <= s e for each idempotent e of <F> with e <=_L s.

    Sufficient for congeniality. All 2^|S| - 1 subsets are visited, ordered by
    their bitmask; the counterexample is the failing subset F.
    """
    n = len(S)
    if n > max_size:
        raise CarrierTooLarge(f"{n} elements exceed the subset-scan cap of {max_size}")
    t, le = S.table, S.order.relation
    leqL = leq_L_matrix(S)
    idem = 0
    for e in idempotents(S):
        idem |= 1 << e
    # <F> for F = F' + {x} is closed from <F'> and x; F' is F without its top bit
    closure = [0] * (1 << n)
    for mask in range(1, 1 << n):
        top = mask.bit_length() - 1
        rest = mask ^ (1 << top)
        closure[mask] = _close(t, closure[rest], top, n)
        es = [e for e in range(n) if closure[mask] >> e & 1 and idem >> e & 1]
        members = [s for s in range(n) if mask >> s & 1]
        if not any(all(not leqL[e][s] or le[s][t[s][e]] for e in es) for s in members):
            return ConditionReport("polstar", False, tuple(members))
    return ConditionReport("polstar", True)


def _close(t, closed: int, x: int, n: int) -> int:
    """Bitmask of the subsemigroup generated by the closed set ``closed`` and ``x``."""
    if closed >> x & 1:
        return closed
    found = closed | (1 << x)
    frontier = [x]
    while frontier:
        y = frontier.pop()
        for z in range(n):
            if found >> z & 1:
                for p in (t[y][z], t[z][y]):
                    if not found >> p & 1:
                        found |= 1 << p
                        frontier.append(p)
    return found


def is_congenial(S: OrderedSemigroup, **kwargs) -> bool:
    """Decide congeniality through the evaluation homomorphism of S."""
    return decide_wqo(eval_homomorphism(S), **kwargs).wqo


def all_reports(S: OrderedSemigroup, max_n: int = 4, polstar_cap: int = 16) -> list[ConditionReport]:
    """Every checker that fits the size limits, in a fixed order."""
    reports = [check_condition_1(S), check_sufficient_xyx(S), check_kunc_unordered(S)]
    if len(S) <= polstar_cap:
        reports.append(check_polstar(S, polstar_cap))
    for n in range(1, max_n + 1):
        reports.append(check_cyclic_condition(S, n))
    return reports


def exists_power_form(S: OrderedSemigroup, s: int, u: int, cap: int | None = None) -> bool:
    """Some p in 1..cap with s <= s (us)^p; cap defaults to 2|S|."""
    t, le = S.table, S.order.relation
    x = t[u][s]
    p = x
    for _ in range(cap if cap is not None else 2 * len(S)):
        if le[s][t[s][p]]:
            return True
        p = t[p][x]
    return False

