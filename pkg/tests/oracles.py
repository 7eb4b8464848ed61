"""Brute-force oracles kept independent of the package code paths they check."""
from itertools import combinations


def _is_spanning_tree(n, edges):
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


def _rooted_code(adj, root, parent):
    return "(" + "".join(sorted(_rooted_code(adj, c, root) for c in adj[root] if c != parent)) + ")"


def _centres(n, adj):
    degree = [len(a) for a in adj]
    leaves = [v for v in range(n) if degree[v] <= 1]
    remaining = n
    while remaining > 2:
        remaining -= len(leaves)
        nxt = []
        for leaf in leaves:
            for u in adj[leaf]:
                degree[u] -= 1
                if degree[u] == 1:
                    nxt.append(u)
        leaves = nxt
    return leaves


def tree_code(n, edges):
    """Isomorphism-invariant code of a free tree (AHU encoding at its centre)."""
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return min(_rooted_code(adj, c, -1) for c in _centres(n, adj))


def count_trees_by_edge_subsets(n):
    """Unlabeled tree count from all (n-1)-edge subsets of K_n that are spanning trees."""
    if n == 1:
        return 1
    codes = set()
    for edges in combinations(combinations(range(n), 2), n - 1):
        if _is_spanning_tree(n, edges):
            codes.add(tree_code(n, edges))
    return len(codes)
