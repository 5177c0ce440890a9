"""Slow, obviously-correct reference computations used only by the tests."""

from fractions import Fraction
from math import gcd
import random

from evotensor.linalg import Matrix


def cofactor_det(rows):
    rows = [list(r) for r in rows]
    if not rows:
        return Fraction(1)
    if len(rows) == 1:
        return Fraction(rows[0][0])
    total = Fraction(0)
    for j, x in enumerate(rows[0]):
        if x:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * x * cofactor_det(minor)
    return total


def kron_by_index(a, b):
    """(A (x) B)[i*p + k][j*q + l] = A[i][j] * B[k][l]."""
    n, m = len(a), len(a[0])
    p, q = len(b), len(b[0])
    out = [[None] * (m * q) for _ in range(n * p)]
    for i in range(n):
        for j in range(m):
            for k in range(p):
                for l in range(q):
                    out[i * p + k][j * q + l] = Fraction(a[i][j]) * Fraction(b[k][l])
    return out


def reachable(adj, start):
    seen, stack = set(), [start]
    while stack:
        u = stack.pop()
        for v, edge in enumerate(adj[u]):
            if edge and v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def strongly_connected(adj):
    n = len(adj)
    return all(reachable(adj, u) == set(range(n)) for u in range(n))


def closed_walk_gcd(adj, max_len):
    """gcd of the lengths L <= max_len for which some closed walk of length L exists."""
    n = len(adj)
    d = 0
    # frontier[v] = set of start vertices with a walk of the current length ending at v
    frontier = [{u} for u in range(n)]
    for length in range(1, max_len + 1):
        nxt = [set() for _ in range(n)]
        for u in range(n):
            for v in range(n):
                if adj[u][v]:
                    nxt[v] |= frontier[u]
        frontier = nxt
        if any(v in frontier[v] for v in range(n)):
            d = gcd(d, length)
    return d


def undirected_components(adj):
    n = len(adj)
    und = [[bool(adj[i][j] or adj[j][i]) for j in range(n)] for i in range(n)]
    left, count = set(range(n)), 0
    while left:
        u = left.pop()
        comp = reachable(und, u) | {u}
        left -= comp
        count += 1
    return count


def random_rational(rng: random.Random, bound=4, zero_bias=0.3):
    if rng.random() < zero_bias:
        return Fraction(0)
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_matrix(rng: random.Random, n, m=None, **kw) -> Matrix:
    m = n if m is None else m
    return Matrix(n, m, [random_rational(rng, **kw) for _ in range(n * m)])


def random_strongly_connected(rng: random.Random, n, p=0.3):
    """Random digraph on n vertices: a Hamiltonian cycle in shuffled order plus extra edges."""
    order = list(range(n))
    rng.shuffle(order)
    adj = [[False] * n for _ in range(n)]
    for i in range(n):
        adj[order[i]][order[(i + 1) % n]] = True
    for i in range(n):
        for j in range(n):
            if rng.random() < p:
                adj[i][j] = True
    return adj


def random_cycle_structure(rng: random.Random, n):
    """Blown-up directed cycle, often with a nontrivial period; not always strongly connected."""
    d = rng.randint(1, n)
    parts = [[] for _ in range(d)]
    for v in range(n):
        parts[v % d].append(v)
    adj = [[False] * n for _ in range(n)]
    for k in range(d):
        nxt = parts[(k + 1) % d]
        for u in parts[k]:
            adj[u][rng.choice(nxt)] = True
            for v in nxt:
                if rng.random() < 0.5:
                    adj[u][v] = True
        # every vertex of the next layer needs an incoming edge
        for v in nxt:
            if not any(adj[u][v] for u in parts[k]):
                adj[rng.choice(parts[k])][v] = True
    return adj
