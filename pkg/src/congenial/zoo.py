"""Concrete ordered semigroups, each packaged with its natural letter map."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from string import ascii_lowercase
from typing import Callable, Iterator, Sequence

from .algebra import (
    FiniteSemigroup,
    OrderedSemigroup,
    equality_order,
    validate_order,
    validate_semigroup,
)


class UnknownZooName(KeyError):
    def __str__(self):
        return f"unknown zoo entry: {self.args[0]!r}"


@dataclass(frozen=True)
class ZooEntry:
    name: str
    semigroup: OrderedSemigroup
    alphabet: tuple[str, ...]
    letter_map: dict[str, int]

    def hom(self):
        from .words import make_homomorphism

        return make_homomorphism(self.semigroup, self.alphabet, self.letter_map)


def _build(name, elements, mul: Callable, pairs, alphabet, letter_map) -> ZooEntry:
    idx = {e: i for i, e in enumerate(elements)}
    table = [[idx[mul(x, y)] for y in elements] for x in elements]
    names = [_show(e) for e in elements]
    S = validate_semigroup(names, table)
    order = validate_order(S, [(idx[x], idx[y]) for x, y in pairs])
    return ZooEntry(name, OrderedSemigroup(S, order), tuple(alphabet),
                    {a: idx[e] for a, e in letter_map.items()})


def _show(e) -> str:
    return e if isinstance(e, str) else str(e)


def brandt_b2(variant: str = "plus") -> ZooEntry:
    """B2 = {a, b, ab, ba, 0} with a^2 = b^2 = 0, aba = a, bab = b.

    Realised as 2x2 matrix units: a = E12, b = E21, ab = E11, ba = E22.
    ``plus`` puts 0 below the other four elements, ``minus`` above them.
    """
    if variant not in ("plus", "minus"):
        raise ValueError("variant must be 'plus' or 'minus'")
    units = {"a": (1, 2), "b": (2, 1), "ab": (1, 1), "ba": (2, 2)}
    by_unit = {v: k for k, v in units.items()}
    elements = ["a", "b", "ab", "ba", "0"]

    def mul(x, y):
        if x == "0" or y == "0":
            return "0"
        (i, j), (k, l) = units[x], units[y]
        return by_unit[(i, l)] if j == k else "0"

    nonzero = elements[:4]
    if variant == "plus":
        pairs = [("0", x) for x in nonzero]
    else:
        pairs = [(x, "0") for x in nonzero]
    return _build(f"b2-{variant}", elements, mul, pairs, "ab", {"a": "a", "b": "b"})


def _lrb_product(x: str, y: str) -> str:
    out = []
    for c in x + y:
        if c not in out:
            out.append(c)
    return "".join(out)


# Hasse diagram of the order on F_LRB(3): lower -> upper
FLRB3_COVERS = [
    ("a", "ac"), ("ac", "acb"), ("ab", "abc"), ("abc", "acb"),
    ("b", "ba"), ("ba", "bac"), ("bc", "bca"), ("bca", "bac"),
    ("c", "cb"), ("cb", "cba"), ("ca", "cab"), ("cab", "cba"),
]


def free_left_regular_band_3() -> ZooEntry:
    """The free left-regular band on a, b, c (15 elements)."""
    letters = "abc"
    elements = []
    for k in (1, 2, 3):
        for w in product(letters, repeat=k):
            if len(set(w)) == k:
                elements.append("".join(w))
    return _build("flrb3", elements, _lrb_product, FLRB3_COVERS, letters,
                  {c: c for c in letters})


def _letters(k: int) -> str:
    if not 1 <= k <= len(ascii_lowercase):
        raise ValueError(f"alphabet size must be in [1, 26], got {k}")
    return ascii_lowercase[:k]


def powerset_semigroup(k: int) -> ZooEntry:
    """Non-empty subsets of a k-letter alphabet under union, ordered by inclusion."""
    if k < 1:
        raise ValueError("k must be at least 1")
    letters = _letters(k)
    elements = []
    for size in range(1, k + 1):
        for mask in range(1, 2 ** k):
            if bin(mask).count("1") == size:
                elements.append("".join(c for i, c in enumerate(letters) if mask >> i & 1))

    def union(x, y):
        return "".join(c for c in letters if c in x or c in y)

    pairs = [(x, y) for x in elements for y in elements if x != y and set(x) <= set(y)]
    return _build(f"powerset-{k}", elements, union, pairs, letters, {c: c for c in letters})


def gap_embedding_semigroup(k: int, linear_order: Sequence[str] | None = None) -> ZooEntry:
    """A x A with (a, b)(c, d) = (min(a, c), d), ordered by equality.

    ``linear_order`` lists the alphabet from smallest to largest. The diagonal
    letter map only generates the pairs (x, y) with x <= y, so this entry's
    canonical homomorphism is not onto.
    """
    letters = _letters(k)
    rank_order = list(linear_order) if linear_order is not None else list(letters)
    if sorted(rank_order) != list(letters):
        raise ValueError(f"linear order must be a permutation of {letters!r}")
    rank = {c: i for i, c in enumerate(rank_order)}
    elements = [f"({x},{y})" for x in letters for y in letters]

    def mul(p, q):
        a, b = p[1], p[3]
        c, d = q[1], q[3]
        return f"({min(a, c, key=rank.__getitem__)},{d})"

    return _build(f"gap-{k}", elements, mul, [], letters, {c: f"({c},{c})" for c in letters})


def _sm_reduce(word: tuple[int, ...], m: int) -> tuple[int, ...] | None:
    """Normal form of a word over a_1..a_m (as 0-based letter indices); None is 0."""
    for x, y in zip(word, word[1:]):
        if y != (x + 1) % m:
            return None
    w = word
    while len(w) >= 2 * m:
        # the leading length-2m factor is a conjugate of uu; keep one half of it
        w = w[:m] + w[2 * m:]
    return w


def s_m(m: int) -> ZooEntry:
    """The ordered semigroup S_m on letters a1..am.

    Non-zero elements are the factors of (a1...am)^inf of length 1..2m-1;
    everything else is 0, which is the top of the order.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    letters = [f"a{i + 1}" for i in range(m)]
    words = [tuple((start + i) % m for i in range(length))
             for length in range(1, 2 * m) for start in range(m)]
    zero = "0"

    def name(w):
        return ".".join(letters[i] for i in w)

    elements = [name(w) for w in words] + [zero]
    by_name = {name(w): w for w in words}

    def mul(x, y):
        if x == zero or y == zero:
            return zero
        r = _sm_reduce(by_name[x] + by_name[y], m)
        return zero if r is None else name(r)

    def is_prefix_and_suffix(x, y):
        return y[:len(x)] == x and y[-len(x):] == x

    pairs = [(name(w), zero) for w in words]
    for x in words:
        for y in words:
            if 1 < len(x) < m <= len(y) and is_prefix_and_suffix(x, y):
                pairs.append((name(x), name(y)))
    return _build(f"s-{m}", elements, mul, pairs, letters, {c: c for c in letters})


def with_equality_order(S: FiniteSemigroup) -> OrderedSemigroup:
    return OrderedSemigroup(S, equality_order(len(S)))


def trivial() -> ZooEntry:
    S = validate_semigroup(["e"], [[0]])
    return ZooEntry("trivial", with_equality_order(S), ("e",), {"e": 0})


def cyclic_group(k: int) -> ZooEntry:
    """Z_k with equality order, generated by 1."""
    if k < 1:
        raise ValueError("k must be at least 1")
    S = validate_semigroup([str(i) for i in range(k)],
                           [[(i + j) % k for j in range(k)] for i in range(k)])
    return ZooEntry(f"group-{k}", with_equality_order(S), ("g",), {"g": 1 % k})


# name pattern -> (description, constructor taking the parameter or None)
CATALOG: dict[str, tuple[str, Callable]] = {
    "b2-plus": ("Brandt semigroup B2, 0 at the bottom", lambda: brandt_b2("plus")),
    "b2-minus": ("Brandt semigroup B2, 0 at the top", lambda: brandt_b2("minus")),
    "flrb3": ("free left-regular band on three generators", free_left_regular_band_3),
    "powerset-k": ("non-empty subsets of k letters, union, inclusion (k >= 1)", powerset_semigroup),
    "gap-k": ("A x A with (a,b)(c,d) = (min(a,c), d), equality order (k >= 1)",
              gap_embedding_semigroup),
    "s-m": ("the semigroup S_m on a1..am, 0 on top (m >= 2)", s_m),
    "group-k": ("cyclic group Z_k, equality order (k >= 1)", cyclic_group),
    "trivial": ("one idempotent element", trivial),
}


def get(name: str) -> ZooEntry:
    """Look up an entry such as ``b2-plus``, ``powerset-3`` or ``s-4``."""
    if name in CATALOG and not name.endswith(("-k", "-m")):
        return CATALOG[name][1]()
    head, sep, param = name.rpartition("-")
    for pattern in (f"{head}-k", f"{head}-m"):
        if sep and pattern in CATALOG and param.isdigit():
            try:
                return CATALOG[pattern][1](int(param))
            except ValueError as exc:
                raise UnknownZooName(f"{name} ({exc})") from None
    raise UnknownZooName(name)


def standard_entries() -> list[ZooEntry]:
    """The fixed battery used by the test suite and the acceptance run."""
    return [
        trivial(),
        cyclic_group(3),
        brandt_b2("plus"),
        brandt_b2("minus"),
        free_left_regular_band_3(),
        powerset_semigroup(1),
        powerset_semigroup(2),
        powerset_semigroup(3),
        gap_embedding_semigroup(2),
        gap_embedding_semigroup(3, "cab"),
        s_m(2),
        s_m(3),
        s_m(4),
    ]


def all_semigroups(n: int) -> Iterator[FiniteSemigroup]:
    """Every associative table on {0, ..., n-1}, in lexicographic table order (not up to isomorphism)."""
    names = [str(i) for i in range(n)]
    rn = range(n)
    for flat in product(rn, repeat=n * n):
        t = [flat[i * n:(i + 1) * n] for i in rn]
        if all(t[t[i][j]][k] == t[i][t[j][k]] for i in rn for j in rn for k in rn):
            yield FiniteSemigroup(tuple(names), tuple(tuple(r) for r in t))
