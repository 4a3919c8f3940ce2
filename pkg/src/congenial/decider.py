"""The suffix-summary automaton of a homomorphism and the wqo decision built on it.

A state summarises the suffixes of length >= 2 of the word read so far as
triples (value, first letter, last letter). Reading a letter that would create
a summary (s, a, a) with sigma(a) <= s means the word now has a factor a...a
above its first letter, and the transition is undefined. The quasi-order is a
wqo exactly when no infinite path leaves the initial state, i.e. when no cycle
is reachable.

Internally a state is an int: 0 is the initial state, 1..k the letter states,
and a triple set with last letter c and bitmask m over (value, first) pairs
is ``k + 1 + c + k * m``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Sequence

from .words import (Homomorphism, UnknownLetter, Word, format_word, is_primitive,
                    necklaces, onto_image)


class DeciderError(ValueError):
    pass


class StarOnIota(DeciderError):
    pass


class StateBudgetExceeded(DeciderError):
    pass


class Triple(NamedTuple):
    value: int
    first: int
    last: int


@dataclass(frozen=True, order=True)
class SuffixState:
    """The initial state (kind 0), a letter state (kind 1) or a coherent triple set (kind 2)."""

    kind: int
    letter: int = -1
    triples: tuple[Triple, ...] = ()

    @classmethod
    def of(cls, triples) -> SuffixState:
        ts = tuple(sorted(Triple(*t) for t in set(triples)))
        if not ts or len({t.last for t in ts}) != 1:
            raise DeciderError("a set state must be non-empty and coherent")
        return cls(2, -1, ts)

    @property
    def is_iota(self) -> bool:
        return self.kind == 0

    @property
    def last(self) -> int:
        """The letter every summarised suffix ends with."""
        if self.kind == 1:
            return self.letter
        if self.kind == 2:
            return self.triples[0].last
        raise DeciderError("the initial state has no last letter")


IOTA = SuffixState(0)


def letter_state(a: int) -> SuffixState:
    return SuffixState(1, a)


def _letter_images(hom: Homomorphism) -> list[int]:
    return [hom.letter_map[a] for a in hom.alphabet]


def forbidden_set(hom: Homomorphism, one_sided: bool = False) -> frozenset[Triple]:
    """{(s, a, a) | sigma(a) <= s}; with ``one_sided`` the last letter is free."""
    S = hom.target
    img = _letter_images(hom)
    k = len(img)
    out = set()
    for a in range(k):
        for s in range(len(S)):
            if S.le(img[a], s):
                if one_sided:
                    out.update(Triple(s, a, c) for c in range(k))
                else:
                    out.add(Triple(s, a, a))
    return frozenset(out)


class _Machine:
    """The transition function on int-encoded states."""

    def __init__(self, hom: Homomorphism, one_sided: bool = False):
        self.hom = hom
        self.one_sided = one_sided
        t = hom.target.table
        le = hom.target.order.relation
        img = _letter_images(hom)
        n, k = len(t), len(img)
        self.n, self.k = n, k
        # bit s*k + b stands for the triple (s, b, last)
        # shift[a][p]: where bit p goes when letter a is appended
        self.shift = [[1 << (t[p // k][img[a]] * k + p % k) for p in range(n * k)]
                      for a in range(k)]
        # seed[c][a]: the new length-2 suffix c a
        self.seed = [[1 << (t[img[c]][img[a]] * k + c) for a in range(k)] for c in range(k)]
        if one_sided:
            bad = 0
            for s in range(n):
                for b in range(k):
                    if le[img[b]][s]:
                        bad |= 1 << (s * k + b)
            self.forbid = [bad] * k
        else:
            self.forbid = [sum(1 << (s * k + a) for s in range(n) if le[img[a]][s])
                           for a in range(k)]

    def step(self, q: int, a: int) -> int | None:
        k = self.k
        if q == 0:
            return a + 1
        if q <= k:
            m = self.seed[q - 1][a]
        else:
            r = q - k - 1
            c = r % k
            old = r // k
            sh = self.shift[a]
            m = self.seed[c][a]
            while old:
                low = old & -old
                m |= sh[low.bit_length() - 1]
                old ^= low
        if m & self.forbid[a]:
            return None
        return k + 1 + a + k * m

    def encode(self, state: SuffixState) -> int:
        k = self.k
        if state.kind == 0:
            return 0
        if state.kind == 1:
            return state.letter + 1
        m = 0
        for tr in state.triples:
            m |= 1 << (tr.value * k + tr.first)
        return k + 1 + state.last + k * m

    def decode(self, q: int) -> SuffixState:
        k = self.k
        if q == 0:
            return IOTA
        if q <= k:
            return letter_state(q - 1)
        r = q - k - 1
        c, m = r % k, r // k
        triples = []
        while m:
            low = m & -m
            p = low.bit_length() - 1
            triples.append(Triple(p // k, p % k, c))
            m ^= low
        return SuffixState(2, -1, tuple(sorted(triples)))


def _letter_index(hom: Homomorphism, a: str) -> int:
    try:
        return hom.alphabet.index(a)
    except ValueError:
        raise UnknownLetter(f"letter {a!r} is not in the alphabet") from None


def star(hom: Homomorphism, state: SuffixState, a: str, one_sided: bool = False) -> SuffixState | None:
    """q * a, or None when it meets the forbidden set."""
    if state.kind == 0:
        raise StarOnIota("star is not defined on the initial state")
    machine = _Machine(hom, one_sided)
    r = machine.step(machine.encode(state), _letter_index(hom, a))
    return None if r is None else machine.decode(r)


def delta(hom: Homomorphism, word: Sequence[str], one_sided: bool = False,
          start: SuffixState = IOTA) -> SuffixState | None:
    """The state reached from ``start`` on ``word``; None where the run gets stuck."""
    if len(word) == 0:
        raise DeciderError("delta is defined on non-empty words")
    machine = _Machine(hom, one_sided)
    q = machine.encode(start)
    for a in word:
        q = machine.step(q, _letter_index(hom, a))
        if q is None:
            return None
    return machine.decode(q)


def check_word_avoids(hom: Homomorphism, w: Sequence[str], one_sided: bool = False) -> bool:
    """True iff no factor of ``w`` lies in L_sigma (or the one-sided language)."""
    if len(w) == 0:
        return True
    return delta(hom, w, one_sided) is not None


def _periodic_run(machine: _Machine, letters: Sequence[int]) -> tuple[int, int] | None:
    """Run u u u ...; return (i, j) with the states after u^i and u^j equal, or None if stuck."""
    seen = {0: 0}
    q = 0
    rounds = 0
    while True:
        for a in letters:
            q = machine.step(q, a)
            if q is None:
                return None
        rounds += 1
        if q in seen:
            return seen[q], rounds
        seen[q] = rounds


def check_periodic_word_avoids(hom: Homomorphism, u: Sequence[str], one_sided: bool = False) -> bool:
    """True iff the infinite word u u u ... has no factor in L_sigma.

    Runs the automaton period by period; a repeated state at a period boundary
    means the run continues forever.
    """
    if len(u) == 0:
        raise DeciderError("the period must be non-empty")
    machine = _Machine(hom, one_sided)
    return _periodic_run(machine, [_letter_index(hom, a) for a in u]) is not None


def state_bound(hom: Homomorphism) -> int:
    """|A| * 2^(|S| |A|) + |A| + 1."""
    k, n = len(hom.alphabet), len(hom.target)
    return k * 2 ** (n * k) + k + 1


@dataclass
class SuffixAutomaton:
    """The part of the automaton reachable from the initial state.

    ``states[0]`` is the initial state; ids follow breadth-first discovery with
    letters tried in alphabet order.
    """

    hom: Homomorphism
    states: list[SuffixState]
    transitions: dict[tuple[int, int], int]
    one_sided: bool = False
    index: dict[SuffixState, int] = field(default_factory=dict, repr=False)

    @property
    def n_states(self) -> int:
        return len(self.states)

    @property
    def n_transitions(self) -> int:
        return len(self.transitions)

    def successors(self, q: int) -> Iterator[tuple[int, int]]:
        for a in range(len(self.hom.alphabet)):
            r = self.transitions.get((q, a))
            if r is not None:
                yield a, r

    def edges(self) -> list[tuple[int, str, int]]:
        A = self.hom.alphabet
        return sorted((q, A[a], r) for (q, a), r in self.transitions.items())


def explore(hom: Homomorphism, one_sided: bool = False, state_budget: int | None = None) -> SuffixAutomaton:
    """Breadth-first construction of the reachable part of the automaton."""
    hom = onto_image(hom)
    budget = state_bound(hom) if state_budget is None else state_budget
    machine = _Machine(hom, one_sided)
    codes = [0]
    index = {0: 0}
    transitions: dict[tuple[int, int], int] = {}
    queue = deque([0])
    while queue:
        q = queue.popleft()
        for a in range(machine.k):
            r = machine.step(codes[q], a)
            if r is None:
                continue
            i = index.get(r)
            if i is None:
                if len(codes) >= budget:
                    raise StateBudgetExceeded(f"more than {budget} reachable states")
                i = index[r] = len(codes)
                codes.append(r)
                queue.append(i)
            transitions[(q, a)] = i
    states = [machine.decode(c) for c in codes]
    return SuffixAutomaton(hom, states, transitions, one_sided,
                           {s: i for i, s in enumerate(states)})


@dataclass(frozen=True)
class WqoVerdict:
    """Outcome of the decision.

    When the quasi-order is not a wqo, ``prefix`` leads from the initial state
    into a cycle labelled ``period``; ``prefix + period**k`` avoids L_sigma for
    every k. ``states``/``transitions`` count what the search materialised,
    which is the full reachable part whenever the answer is WQO.
    """

    wqo: bool
    prefix: Word | None
    period: Word | None
    states: int
    transitions: int

    @property
    def label(self) -> str:
        return "WQO" if self.wqo else "NOT-WQO"

    def describe(self) -> str:
        if self.wqo:
            return "WQO"
        return f"NOT-WQO prefix={format_word(self.prefix)} period={format_word(self.period)}"


def _find_cycle(start, successors) -> tuple[list[int], list[int]] | None:
    """First back edge of an iterative white/grey/black DFS.

    ``successors(node)`` yields (letter, node) pairs in letter order. Returns
    (prefix letters, cycle letters) or None when no cycle is reachable.
    """
    GREY, BLACK = 1, 2
    colour = {start: GREY}
    path_nodes = [start]
    path_letters: list[int] = []
    stack = [successors(start)]
    while stack:
        step = next(stack[-1], None)
        if step is None:
            stack.pop()
            colour[path_nodes.pop()] = BLACK
            if path_letters:
                path_letters.pop()
            continue
        a, r = step
        c = colour.get(r)
        if c == GREY:
            entry = path_nodes.index(r)
            return path_letters[:entry], path_letters[entry:] + [a]
        if c == BLACK:
            continue
        colour[r] = GREY
        path_nodes.append(r)
        path_letters.append(a)
        stack.append(successors(r))
    return None


def find_cycle(automaton: SuffixAutomaton) -> WqoVerdict:
    """Decide on an already explored automaton by depth-first search."""
    A = automaton.hom.alphabet
    found = _find_cycle(0, automaton.successors)
    if found is None:
        return WqoVerdict(True, None, None, automaton.n_states, automaton.n_transitions)
    prefix, cycle = found
    return WqoVerdict(False, tuple(A[a] for a in prefix), tuple(A[a] for a in cycle),
                      automaton.n_states, automaton.n_transitions)


# default work allowance for the periodic probe, in letters read
PROBE_BUDGET = 20_000


def probe_periods(hom: Homomorphism, one_sided: bool = False, max_length: int = 6,
                  budget: int = PROBE_BUDGET) -> tuple[Word, Word] | None:
    """Look for a short period u with u^inf avoiding L_sigma.

    Candidates are primitive necklaces, shortest first, then lexicographic in
    alphabet order. Returns (prefix, period) with prefix = u^i and period =
    u^(j-i) where the boundary states after u^i and u^j coincide, or None once
    ``max_length`` or ``budget`` is exhausted.
    """
    hom = onto_image(hom)
    machine = _Machine(hom, one_sided)
    A = hom.alphabet
    spent = 0
    for length in range(1, max_length + 1):
        for u in necklaces(machine.k, length):
            if not is_primitive(u):
                continue
            hit = _periodic_run(machine, u)
            spent += length
            if hit is not None:
                i, j = hit
                word = tuple(A[a] for a in u)
                return word * i, word * (j - i)
            if spent >= budget:
                return None
    return None


def decide_wqo(hom: Homomorphism, one_sided: bool = False, state_budget: int | None = None,
               probe: bool = True) -> WqoVerdict:
    """Is <=_sigma a well quasi-order?

    With ``probe`` a bounded search over short periodic words runs first; any
    hit is a complete witness. Otherwise (or when nothing is found) states are
    generated lazily during a depth-first search from the initial state, and
    the verdict and witness coincide with ``find_cycle(explore(hom))``.
    """
    hom = onto_image(hom)
    if probe:
        hit = probe_periods(hom, one_sided)
        if hit is not None:
            return WqoVerdict(False, hit[0], hit[1], 0, 0)
    budget = state_bound(hom) if state_budget is None else state_budget
    machine = _Machine(hom, one_sided)
    step, k = machine.step, machine.k
    seen = {0}
    n_edges = 0

    def successors(q: int):
        nonlocal n_edges
        for a in range(k):
            r = step(q, a)
            if r is None:
                continue
            n_edges += 1
            if r not in seen:
                if len(seen) >= budget:
                    raise StateBudgetExceeded(f"more than {budget} reachable states")
                seen.add(r)
            yield a, r

    found = _find_cycle(0, successors)
    A = hom.alphabet
    if found is None:
        return WqoVerdict(True, None, None, len(seen), n_edges)
    prefix, cycle = found
    return WqoVerdict(False, tuple(A[a] for a in prefix), tuple(A[a] for a in cycle),
                      len(seen), n_edges)


def format_triple(hom: Homomorphism, t: Triple) -> str:
    S, A = hom.target, hom.alphabet
    return f"({S.elements[t.value]},{A[t.first]},{A[t.last]})"


def format_state(hom: Homomorphism, q: SuffixState) -> str:
    if q.kind == 0:
        return "ι"
    if q.kind == 1:
        return f"{hom.alphabet[q.letter]}̄"
    return ",".join(format_triple(hom, t) for t in q.triples)


def export_dot(automaton: SuffixAutomaton) -> str:
    """Graphviz text with nodes q0..qk in discovery order."""
    hom = automaton.hom
    lines = ["digraph suffix_automaton {", "  rankdir=LR;", "  start [shape=point];"]
    for i, q in enumerate(automaton.states):
        label = format_state(hom, q).replace('"', '\\"')
        lines.append(f'  q{i} [label="{label}"];')
    lines.append("  start -> q0;")
    for q, a, r in automaton.edges():
        lines.append(f'  q{q} -> q{r} [label="{a}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
