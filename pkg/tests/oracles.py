"""Independent brute-force references used by the tests.

Nothing here imports the decision machinery: each oracle recomputes its
answer straight from the definitions, trading speed for obviousness.
"""
from itertools import combinations, product


def word_value(table, images, word):
    acc = images[word[0]]
    for a in word[1:]:
        acc = table[acc][images[a]]
    return acc


def compositions(m, n):
    """All ways to cut range(m) into n non-empty consecutive blocks, as cut lists."""
    for cuts in combinations(range(1, m), n - 1):
        yield (0,) + cuts + (m,)


def brute_leq_sigma(table, le, images, u, v):
    if not u or not v:
        return not u and not v
    if len(u) > len(v):
        return False
    for cuts in compositions(len(v), len(u)):
        if all(le[images[u[i]]][word_value(table, images, v[cuts[i]:cuts[i + 1]])]
               for i in range(len(u))):
            return True
    return False


def brute_suff(table, images, letters, w):
    """{(sigma(x), first x, last x)} over suffixes x of w with |x| >= 2, letters as indices."""
    return {(word_value(table, images, w[i:]), letters.index(w[i]), letters.index(w[-1]))
            for i in range(len(w) - 1)}


def brute_fact(table, images, letters, w):
    out = set()
    for j in range(2, len(w) + 1):
        out |= brute_suff(table, images, letters, w[:j])
    return out


def brute_forbidden(le, images, letters, n):
    return {(s, i, i) for i, a in enumerate(letters) for s in range(n) if le[images[a]][s]}


def has_L_factor(table, le, images, w):
    """Does w contain a factor a x a with sigma(a) <= sigma(a x a)?"""
    for i in range(len(w)):
        for j in range(i + 1, len(w)):
            if w[i] == w[j] and le[images[w[i]]][word_value(table, images, w[i:j + 1])]:
                return True
    return False


def words_upto(letters, lo, hi):
    for n in range(lo, hi + 1):
        yield from product(letters, repeat=n)


def brute_omega(table, s):
    powers = [s]
    while True:
        p = table[powers[-1]][s]
        if p in powers:
            break
        powers.append(p)
    idem = [p for p in powers if table[p][p] == p]
    assert len(idem) == 1
    return idem[0]


def brute_associative(table):
    n = len(table)
    return all(table[table[x][y]][z] == table[x][table[y][z]]
               for x in range(n) for y in range(n) for z in range(n))


def left_ideal_S1(table, s):
    """S^1 s as a set."""
    return {s} | {table[x][s] for x in range(len(table))}


def two_sided_ideal_S1(table, s):
    """S^1 s S^1 as a set."""
    n = range(len(table))
    return ({s} | {table[x][s] for x in n} | {table[s][y] for y in n}
            | {table[table[x][s]][y] for x in n for y in n})


def brute_kunc(table):
    n = len(table)
    for s in range(n):
        for t in range(n):
            e = brute_omega(table, table[s][t])
            if table[e][s] != s and table[t][e] != t:
                return False
    return True


def brute_cyclic(table, le, n_len):
    """Plain enumeration of all n-tuples, no rotation pruning."""
    n = len(table)
    for tup in product(range(n), repeat=n_len):
        ok = False
        for i in range(n_len):
            rot = [tup[(i + j) % n_len] for j in range(1, n_len + 1)]
            p = rot[0]
            for x in rot[1:]:
                p = table[p][x]
            s = tup[i]
            if le[s][table[s][brute_omega(table, p)]]:
                ok = True
                break
        if not ok:
            return False
    return True


def canonical_edges(edges, root, letters):
    """Relabel a deterministic labelled graph by breadth-first order from root.

    Two deterministic graphs are isomorphic (as rooted, letter-labelled
    graphs with every node reachable) iff their canonical edge lists agree.
    """
    out = {}
    for q, a, r in edges:
        assert (q, a) not in out, "graph is not deterministic"
        out[q, a] = r
    number = {root: 0}
    queue = [root]
    for q in queue:
        for a in letters:
            r = out.get((q, a))
            if r is not None and r not in number:
                number[r] = len(number)
                queue.append(r)
    nodes = {q for q, _, _ in edges} | {r for _, _, r in edges} | {root}
    assert set(number) == nodes, "some node is unreachable"
    return sorted((number[q], a, number[r]) for (q, a), r in out.items())
