#!/usr/bin/env python3
"""Independent enumeration oracle for symmetric admissibility counts.

For each symmetry case and vertex count this enumerates every (graph,
action) class with |E| = 2n-2, graph invariant under the action,
connected, minimum degree 2 (a vertex of degree < 2 cannot lie in two
spanning trees), and counts how many are admissible: the case's
fixed-edge rule holds and the edges split into two spanning trees obeying
the mode law (each tree invariant, or the trees exchanged, as the case
demands).  One canonical generator per cycle type; graphs are
deduplicated by canonical form over the generator's centralizer, i.e. by
isomorphism of the (graph, action) pair with the generator marked.

Everything here is brute force over subsets and permutations, sharing no
code with the library.  Run first; the table freezes into the C++ tests.
"""

import itertools
import sys


def canonical_perms(n, case):
    perms = []
    if case in ("cs_preserving", "cs_swapping", "c2"):
        for m in range(1, n // 2 + 1):
            f = n - 2 * m
            p = list(range(n))
            for i in range(m):
                a, b = f + 2 * i, f + 2 * i + 1
                p[a], p[b] = b, a
            perms.append(tuple(p))
    else:
        for q in range(1, n // 4 + 1):
            for m in range((n - 4 * q) // 2 + 1):
                f = n - 4 * q - 2 * m
                p = list(range(n))
                for i in range(m):
                    a, b = f + 2 * i, f + 2 * i + 1
                    p[a], p[b] = b, a
                base = f + 2 * m
                for i in range(q):
                    s = base + 4 * i
                    p[s], p[s + 1], p[s + 2], p[s + 3] = s + 1, s + 2, s + 3, s
                perms.append(tuple(p))
    return perms


def centralizer(n, perm):
    out = []
    for sigma in itertools.permutations(range(n)):
        if all(sigma[perm[i]] == perm[sigma[i]] for i in range(n)):
            out.append(sigma)
    return out


def edge_orbits(n, perm):
    seen = set()
    orbits = []
    for u in range(n):
        for v in range(u + 1, n):
            e = (u, v)
            if e in seen:
                continue
            orb = []
            cur = e
            while cur not in seen:
                seen.add(cur)
                orb.append(cur)
                a, b = perm[cur[0]], perm[cur[1]]
                cur = (min(a, b), max(a, b))
            orbits.append(orb)
    return orbits


def connected(n, edges):
    adj = {v: [] for v in range(n)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def min_degree(n, edges):
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    return min(deg)


def is_spanning_tree(n, edges):
    if len(edges) != n - 1:
        return False
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def apply_edge(perm, e):
    a, b = perm[e[0]], perm[e[1]]
    return (min(a, b), max(a, b))


def has_mode_pair(n, perm, edges, mode):
    eset = set(edges)
    for pick in itertools.combinations(range(len(edges)), n - 1):
        chosen = set(pick)
        t1 = [edges[i] for i in pick]
        if not is_spanning_tree(n, t1):
            continue
        t2 = [edges[i] for i in range(len(edges)) if i not in chosen]
        if not is_spanning_tree(n, t2):
            continue
        img1 = {apply_edge(perm, e) for e in t1}
        if mode == "invariant":
            if img1 == set(t1):
                return True
        else:
            if img1 == set(t2):
                return True
    return False


def admissible(n, case, perm, edges):
    fixed = [e for e in edges if apply_edge(perm, e) == e]
    if case in ("cs_preserving", "cs_swapping"):
        if fixed:
            return False
    elif case == "c2":
        if len(fixed) not in (0, 2):
            return False
    else:  # c4: no generator-fixed edge, 0 or 2 square-fixed edges
        if fixed:
            return False
        p2 = tuple(perm[perm[i]] for i in range(n))
        fixed2 = [e for e in edges if apply_edge(p2, e) == e]
        if len(fixed2) not in (0, 2):
            return False
    mode = "swapped" if case in ("cs_swapping", "c4") else "invariant"
    return has_mode_pair(n, perm, edges, mode)


def classes(n, case):
    universe = set()
    adm = set()
    target = 2 * n - 2
    for perm in canonical_perms(n, case):
        cent = centralizer(n, perm)
        orbits = edge_orbits(n, perm)
        sizes = [len(o) for o in orbits]
        k = len(orbits)

        # All orbit subsets whose sizes sum to the edge target.
        def rec(idx, remaining, chosen):
            if remaining == 0:
                edges = sorted(e for i in chosen for e in orbits[i])
                if min_degree(n, edges) < 2 or not connected(n, edges):
                    return
                key = min(
                    tuple(sorted(apply_edge(s, e) for e in edges)) for s in cent
                )
                tag = (perm, key)
                if tag in universe:
                    return
                universe.add(tag)
                if admissible(n, case, perm, edges):
                    adm.add(tag)
                return
            if idx == k or remaining < 0:
                return
            if sum(sizes[idx:]) < remaining:
                return
            rec(idx + 1, remaining - sizes[idx], chosen + [idx])
            rec(idx + 1, remaining, chosen)

        rec(0, target, [])
    return len(universe), len(adm)


def wheel_facts():
    # All 120 vertex maps of W5: automorphisms, involutions among them,
    # and involutions fixing no edge.
    n, edges = 5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (1, 4)]
    eset = set(edges)
    autos = []
    for p in itertools.permutations(range(n)):
        if all(apply_edge(p, e) in eset for e in edges):
            autos.append(p)
    invol = [p for p in autos if tuple(p[p[i]] for i in range(n)) == tuple(range(n))
             and p != tuple(range(n))]
    free = [p for p in invol if all(apply_edge(p, e) != e for e in edges)]
    print(f"W5: vertex_maps=120 automorphisms={len(autos)} involutions={len(invol)}"
          f" fixed_edge_free_involutions={len(free)} which={free}")


def ball_isometries():
    # Linear maps permuting the ball's vertex set, for the square and the
    # diamond; a candidate is determined by the images of two independent
    # vertices and must map the remaining vertices consistently.
    from fractions import Fraction as F

    def count(verts):
        vs = [(F(x), F(y)) for x, y in verts]
        found = set()
        for a in vs:
            for b in vs:
                det = a[0] * b[1] - a[1] * b[0]
                if det == 0:
                    continue
                # Matrix sending verts[0] -> a, verts[1] -> b.
                v0, v1 = vs[0], vs[1]
                d0 = v0[0] * v1[1] - v0[1] * v1[0]
                # Solve M v0 = a, M v1 = b.
                m00 = (a[0] * v1[1] - b[0] * v0[1]) / d0
                m01 = (b[0] * v0[0] - a[0] * v1[0]) / d0
                m10 = (a[1] * v1[1] - b[1] * v0[1]) / d0
                m11 = (b[1] * v0[0] - a[1] * v1[0]) / d0
                img = {(m00 * x + m01 * y, m10 * x + m11 * y) for x, y in vs}
                if img == set(vs):
                    found.add((m00, m01, m10, m11))
        return len(found)

    sq = count([(1, 1), (1, -1), (-1, 1), (-1, -1)])
    di = count([(1, 0), (0, 1), (-1, 0), (0, -1)])
    print(f"ball_isometries: square={sq} diamond={di}")


def main():
    wheel_facts()
    ball_isometries()
    jobs = []
    for case in ("cs_preserving", "cs_swapping", "c2"):
        for n in range(4, 8):
            jobs.append((case, n))
    for n in range(4, 10):
        jobs.append(("c4", n))
    for case, n in jobs:
        u, a = classes(n, case)
        print(f"{case} n={n}: universe={u} admissible={a}")
        sys.stdout.flush()


if __name__ == "__main__":
    main()
