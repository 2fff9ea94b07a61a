#!/usr/bin/env python3
"""Exhaustive values of ex(n; family) for tiny n, written to search.json.

A family is a list of (s, l): no l edges may span at most s vertices.
Pairwise-only families go through maximum cliques of the compatibility
graph; the rest through full subset enumeration (n <= 6) or a plain DFS.
"""
import itertools
import json
import sys

import networkx as nx


def bad(edges, checks):
    for s, l in checks:
        for sub in itertools.combinations(edges, l):
            if len(frozenset().union(*sub)) <= s:
                return True
    return False


def by_clique(n, r, checks):
    cands = [frozenset(c) for c in itertools.combinations(range(n), r)]
    g = nx.Graph()
    g.add_nodes_from(range(len(cands)))
    for i, j in itertools.combinations(range(len(cands)), 2):
        if not bad([cands[i], cands[j]], checks):
            g.add_edge(i, j)
    best, _ = nx.max_weight_clique(g, weight=None)
    return len(best), [sorted(cands[i]) for i in sorted(best)]


def by_subsets(n, r, checks):
    cands = [frozenset(c) for c in itertools.combinations(range(n), r)]
    for t in range(len(cands), 0, -1):
        for sub in itertools.combinations(cands, t):
            if not bad(list(sub), checks):
                return t, [sorted(e) for e in sub]
    return 0, []


def by_dfs(n, r, checks):
    cands = [frozenset(c) for c in itertools.combinations(range(n), r)]
    best = [0, []]

    def ok_with(cur, e):
        for s, l in checks:
            for sub in itertools.combinations(cur, l - 1):
                if len(e.union(*sub)) <= s:
                    return False
        return True

    def go(cur, rest):
        if len(cur) > best[0]:
            best[0], best[1] = len(cur), list(cur)
        if len(cur) + len(rest) <= best[0]:
            return
        for i, e in enumerate(rest):
            if len(cur) + len(rest) - i <= best[0]:
                return
            cur.append(e)
            go(cur, [f for f in rest[i + 1:] if ok_with(cur, f)])
            cur.pop()

    go([], [e for e in cands if ok_with([], e)])
    return best[0], [sorted(e) for e in best[1]]


FAMILIES = {
    "F(4,2)": (3, [(4, 2)]),
    "F(5,3)": (3, [(5, 3)]),
    "G3": (3, [(3, 2), (5, 3)]),
    "F(6,4)": (3, [(6, 4)]),
    "G4": (3, [(3, 2), (4, 3), (6, 4)]),
    "F(6,2)": (4, [(6, 2)]),
}
RANGES = {
    "F(4,2)": range(3, 10),
    "F(5,3)": range(3, 8),
    "G3": range(3, 8),
    "F(6,4)": range(3, 8),
    "G4": range(3, 8),
    "F(6,2)": range(4, 9),
}


def main():
    out = []
    for name, (r, checks) in FAMILIES.items():
        for n in RANGES[name]:
            if all(l == 2 for _, l in checks):
                v, w = by_clique(n, r, checks)
                how = "clique"
            elif n <= 6:
                v, w = by_subsets(n, r, checks)
                how = "subsets"
            else:
                v, w = by_dfs(n, r, checks)
                how = "dfs"
            assert not bad([frozenset(e) for e in w], checks) and len(w) == v
            out.append({"family": name, "r": r, "n": n, "checks": checks, "value": v, "method": how})
            print(name, r, n, v, how, file=sys.stderr)
    json.dump(out, open(sys.argv[1] if len(sys.argv) > 1 else "search.json", "w"), indent=1)


if __name__ == "__main__":
    main()
