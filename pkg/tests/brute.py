"""Pure-Python reference implementations used as test oracles.

Nothing here imports the package: every function works on plain ints and
lists so that agreement with the library is evidence rather than tautology.
"""

from itertools import combinations, product


def nonempty_subsets(r):
    for k in range(1, r + 1):
        yield from combinations(range(r), k)


def cr_witness_mod(m, A, M):
    """First (rows, s) with every ``s + sum_{i in rows} M[i][j]`` in A (mod m), or None."""
    A = set(A)
    r, n = len(M), len(M[0])
    for rows in nonempty_subsets(r):
        sums = [sum(M[i][j] for i in rows) for j in range(n)]
        for s in range(m):
            if all((s + c) % m in A for c in sums):
                return rows, s
    return None


def cr_holds_mod(m, A, n, r):
    """Exhaustive CR check over Z_m; returns (holds, first counterexample)."""
    for flat in product(range(m), repeat=r * n):
        M = [list(flat[i * n:(i + 1) * n]) for i in range(r)]
        if cr_witness_mod(m, A, M) is None:
            return False, M
    return True, None


def mono_ap_free_colorings(k, c, N):
    """Count c-colorings of 1..N with no monochromatic k-term progression."""
    aps = [[a + i * d for i in range(k)] for d in range(1, N) for a in range(1, N + 1) if a + (k - 1) * d <= N]
    count = 0
    for col in product(range(c), repeat=N):
        if not any(len({col[x - 1] for x in ap}) == 1 for ap in aps):
            count += 1
    return count


def ap_pairs_window(lo, hi, A, L):
    A = set(A)
    return {(a, b) for a in range(lo, hi + 1) for b in range(lo, hi + 1)
            if all(a + i * b <= hi and a + i * b in A for i in range(L + 1))}


def thick_x_window(lo, hi, A, E):
    A = set(A)
    for x in range(lo, hi + 1):
        if all(e + x <= hi and e + x in A for e in E):
            return x
    return None
