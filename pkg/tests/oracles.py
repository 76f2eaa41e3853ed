"""Brute-force reference implementations for natural-coordinate subrings.

Everything here works on an explicit finite set of box points, so it shares
no code path with the graded search in :mod:`subfact.monolattice`.
"""

import itertools


def box_points(n, B):
    return list(itertools.product(range(B + 1), repeat=n))


def members_by_combination(gens, n, B):
    """All sum c_i g_i with every coordinate <= B, by enumerating coefficients."""
    out = {(0,) * n}
    caps = []
    for g in gens:
        caps.append(min(B // x for x in g if x) if any(g) else 0)
    for cs in itertools.product(*[range(c + 1) for c in caps]):
        v = tuple(sum(c * g[i] for c, g in zip(cs, gens)) for i in range(n))
        if all(x <= B for x in v):
            out.add(v)
    return out


def _le(a, b):
    return all(x <= y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def atoms(mem):
    """Non-zero members that are not a sum of two non-zero members."""
    zero = next(iter(mem)) and tuple(0 for _ in next(iter(mem)))
    nz = [v for v in mem if v != zero]
    out = set()
    for v in nz:
        if not any(a != v and _le(a, v) and _sub(v, a) in mem for a in nz):
            out.add(v)
    return out


def squarefree(mem, v):
    """No non-zero member b with v - 2b a member."""
    zero = tuple(0 for _ in v)
    return not any(b != zero and _le(tuple(2 * x for x in b), v) and _sub(v, tuple(2 * x for x in b)) in mem for b in mem)


def prime_fails(mem, r):
    """Some a, b, a+b in the box with r | a+b and r dividing neither."""
    def div(x):
        return _le(r, x) and _sub(x, r) in mem
    nd = [a for a in mem if not div(a)]
    for a in nd:
        for b in nd:
            c = tuple(x + y for x, y in zip(a, b))
            if c in mem and div(c):
                return True
    return False


def exhaustive_instances():
    """Every n = 1 subring with <= 3 generators in 1..6 and every n = 2
    subring with <= 2 generators in {0..6}^2 minus the origin."""
    out = []
    for k in (1, 2, 3):
        for gs in itertools.combinations(range(1, 7), k):
            out.append((1, [(g,) for g in gs]))
    pts = [p for p in box_points(2, 6) if any(p)]
    for k in (1, 2):
        for gs in itertools.combinations(pts, k):
            out.append((2, list(gs)))
    return out
