"""Homomorphisms A+ -> S, word evaluation and the block-factorization quasi-order."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .algebra import OrderedSemigroup, generated_subsemigroup, restrict

Word = tuple[str, ...]


class WordError(ValueError):
    pass


class EmptyWord(WordError):
    pass


class UnknownLetter(WordError):
    pass


class UnknownElement(WordError):
    pass


class IndexOutOfRange(WordError, IndexError):
    pass


@dataclass(frozen=True)
class Homomorphism:
    target: OrderedSemigroup
    alphabet: tuple[str, ...]
    letter_map: Mapping[str, int]
    onto: bool

    def __hash__(self):
        return hash((self.target, self.alphabet, tuple(sorted(self.letter_map.items()))))

    def __call__(self, word: Sequence[str]) -> int:
        return sigma_eval(self, word)

    def image(self, letter: str) -> int:
        try:
            return self.letter_map[letter]
        except KeyError:
            raise UnknownLetter(f"letter {letter!r} is not in the alphabet") from None


def make_homomorphism(target: OrderedSemigroup, alphabet: Sequence[str],
                      letter_map: Mapping[str, int | str]) -> Homomorphism:
    """Build sigma from a letter -> element map; elements may be given by index or by name."""
    alphabet = tuple(alphabet)
    if len(set(alphabet)) != len(alphabet):
        raise WordError("alphabet letters must be distinct")
    if not alphabet:
        raise WordError("alphabet must not be empty")
    n = len(target)
    resolved = {}
    for a in alphabet:
        if a not in letter_map:
            raise UnknownLetter(f"letter {a!r} has no image")
        v = letter_map[a]
        if isinstance(v, str):
            if v not in target.elements:
                raise UnknownElement(f"letter {a!r} maps to unknown element {v!r}")
            v = target.index(v)
        elif not (isinstance(v, int) and 0 <= v < n):
            raise UnknownElement(f"letter {a!r} maps to {v!r}, not an element index")
        resolved[a] = v
    extra = set(letter_map) - set(alphabet)
    if extra:
        raise UnknownLetter(f"map mentions letters outside the alphabet: {sorted(extra)}")
    onto = len(generated_subsemigroup(target, resolved.values())) == n
    return Homomorphism(target, alphabet, resolved, onto)


def eval_homomorphism(S: OrderedSemigroup) -> Homomorphism:
    """eval_S: the alphabet is the carrier and every letter maps to itself."""
    return make_homomorphism(S, S.elements, {e: i for i, e in enumerate(S.elements)})


def onto_image(hom: Homomorphism) -> Homomorphism:
    """The same letter map, corestricted to the subsemigroup it generates."""
    if hom.onto:
        return hom
    image = generated_subsemigroup(hom.target, hom.letter_map.values())
    sub, new_to_old = restrict(hom.target, image)
    old_to_new = {x: i for i, x in enumerate(new_to_old)}
    return Homomorphism(sub, hom.alphabet,
                        {a: old_to_new[x] for a, x in hom.letter_map.items()}, True)


def parse_word(text: str, alphabet: Sequence[str]) -> Word:
    """Letters are separated by '.', or are single characters when no '.' occurs."""
    if text == "":
        return ()
    if "." in text:
        letters = tuple(text.split("."))
    elif text in alphabet:
        letters = (text,)
    else:
        letters = tuple(text)
    known = set(alphabet)
    for a in letters:
        if a not in known:
            raise UnknownLetter(f"letter {a!r} is not in the alphabet")
    return letters


def format_word(word: Sequence[str]) -> str:
    if all(len(a) == 1 for a in word):
        return "".join(word)
    return ".".join(word)


def sigma_eval(hom: Homomorphism, word: Sequence[str]) -> int:
    if len(word) == 0:
        raise EmptyWord("sigma is defined on non-empty words only")
    t = hom.target.table
    acc = hom.image(word[0])
    for a in word[1:]:
        acc = t[acc][hom.image(a)]
    return acc


@dataclass(frozen=True)
class FactorizationProof:
    """u = a_1 ... a_n against v = v_1 ... v_n with sigma(a_i) <= sigma(v_i)."""

    letters: Word
    blocks: tuple[Word, ...]

    def __len__(self):
        return len(self.letters)

    @property
    def u(self) -> Word:
        return self.letters

    @property
    def v(self) -> Word:
        return tuple(a for b in self.blocks for a in b)

    def check(self, hom: Homomorphism) -> bool:
        if len(self.letters) != len(self.blocks):
            return False
        S = hom.target
        return all(b and S.le(hom.image(a), sigma_eval(hom, b))
                   for a, b in zip(self.letters, self.blocks))


def _factor_values(hom: Homomorphism, v: Sequence[str]) -> list[list[int]]:
    # vals[j][k] = sigma(v[j:k]) for j < k
    t = hom.target.table
    m = len(v)
    vals = [[-1] * (m + 1) for _ in range(m + 1)]
    for j in range(m):
        acc = hom.image(v[j])
        vals[j][j + 1] = acc
        for k in range(j + 1, m):
            acc = t[acc][hom.image(v[k])]
            vals[j][k + 1] = acc
    return vals


def leq_sigma(hom: Homomorphism, u: Sequence[str], v: Sequence[str]) -> FactorizationProof | None:
    """A proof of u <=_sigma v, or None when the words are not related.

    Every block of the returned proof is the shortest one that still lets the
    remaining letters be matched.
    """
    u, v = tuple(u), tuple(v)
    for a in u + v:
        hom.image(a)
    if not u or not v:
        return FactorizationProof((), ()) if not u and not v else None
    n, m = len(u), len(v)
    if n > m:
        return None
    le = hom.target.order.relation
    vals = _factor_values(hom, v)
    img = [hom.image(a) for a in u]
    # ok[i][j]: u[i:] <=_sigma v[j:]
    ok = [[False] * (m + 1) for _ in range(n + 1)]
    ok[n][m] = True
    for i in range(n - 1, -1, -1):
        x = img[i]
        row, nxt = ok[i], ok[i + 1]
        for j in range(m - (n - i), -1, -1):
            vj = vals[j]
            for k in range(j + 1, m - (n - i - 1) + 1):
                if nxt[k] and le[x][vj[k]]:
                    row[j] = True
                    break
    if not ok[0][0]:
        return None
    blocks = []
    j = 0
    for i in range(n):
        x = img[i]
        k = j + 1
        while not (ok[i + 1][k] and le[x][vals[j][k]]):
            k += 1
        blocks.append(v[j:k])
        j = k
    return FactorizationProof(u, tuple(blocks))


def in_L_sigma(hom: Homomorphism, w: Sequence[str]) -> bool:
    """w = a x a with sigma(a) <= sigma(w)."""
    if len(w) < 2 or w[0] != w[-1]:
        return False
    return hom.target.le(hom.image(w[0]), sigma_eval(hom, w))


def in_one_sided_L(hom: Homomorphism, w: Sequence[str]) -> bool:
    """w = a x with x non-empty and sigma(a) <= sigma(w)."""
    if len(w) < 2:
        return False
    return hom.target.le(hom.image(w[0]), sigma_eval(hom, w))


def consequence_of_proof(proof: FactorizationProof, i: int, j: int) -> tuple[Word, Word]:
    """(a_i...a_j, v_i...v_j) for 1 <= i <= j <= n."""
    if not 1 <= i <= j <= len(proof):
        raise IndexOutOfRange(f"need 1 <= i <= j <= {len(proof)}, got ({i}, {j})")
    left = proof.letters[i - 1:j]
    right = tuple(a for b in proof.blocks[i - 1:j] for a in b)
    return left, right


def necklaces(k: int, n: int):
    """Lexicographically least rotations of the words of length n over range(k), in order.

    Fredricksen-Kessler-Maiorana generation of pre-necklaces, keeping those
    whose Lyndon prefix length divides n.
    """
    if n < 1 or k < 1:
        return
    a = [0] * (n + 1)
    p = 1
    t = 1
    while True:
        if n % p == 0:
            yield tuple(a[1:])
        t = n
        while t > 0 and a[t] == k - 1:
            t -= 1
        if t == 0:
            return
        a[t] += 1
        for j in range(t + 1, n + 1):
            a[j] = a[j - t]
        p = t


def is_primitive(w: Sequence) -> bool:
    n = len(w)
    return all(tuple(w[:d]) * (n // d) != tuple(w) for d in range(1, n) if n % d == 0)
