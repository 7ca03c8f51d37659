"""Pure-Python Omega_0 kernels; reference twin of the compiled ``_kernels``.

Upper-triangular entries are stored flat in row-major order
(c_12, c_13, ..., c_1n, c_23, ...). An element of Omega_0 is encoded as the
mixed-radix integer of its entries with radices a_j - a_i, first entry most
significant, so integer order equals lexicographic order of entry tuples.
"""
from functools import lru_cache

BACKEND = "python"


@lru_cache(maxsize=256)
def _layout(roots):
    n = len(roots)
    pos = {}
    for i in range(n):
        for j in range(i + 1, n):
            pos[i, j] = len(pos)
    gaps = [roots[j] - roots[i] for (i, j) in pos]
    steps = []
    for i in range(n - 2, -1, -1):
        for j in range(i + 1, n):
            rows = tuple((pos[i, k], pos[j, k]) for k in range(j + 1, n))
            cols = tuple((pos[k, j], pos[k, i]) for k in range(i))
            steps.append((pos[i, j], roots[j] - roots[i], rows, cols))
    signs = []
    for s in range(1 << (n - 1)):
        eps = [1] + [-1 if (s >> (k - 1)) & 1 else 1 for k in range(1, n)]
        signs.append(tuple(eps[i] * eps[j] for (i, j) in pos))
    return pos, tuple(gaps), tuple(steps), tuple(signs)


def reduce_flat(roots, e):
    """Reduce flat upper entries ``e`` (a list, modified in place) into Omega_0."""
    for p, g, rows, cols in _layout(roots)[2]:
        t = -(e[p] // g)
        if t:
            e[p] += t * g
            for a, b in rows:
                e[a] += t * e[b]
            for a, b in cols:
                e[a] -= t * e[b]
    return e


def encode(roots, e):
    gaps = _layout(roots)[1]
    idx = 0
    for x, g in zip(e, gaps):
        idx = idx * g + x
    return idx


def decode(roots, idx):
    gaps = _layout(roots)[1]
    out = [0] * len(gaps)
    for k in range(len(gaps) - 1, -1, -1):
        idx, out[k] = divmod(idx, gaps[k])
    return out


def canonical_flat(roots, upper):
    """Lexicographically least reduced form over all sign conjugations."""
    roots = tuple(roots)
    best = None
    for sg in _layout(roots)[3]:
        e = reduce_flat(roots, [x * s for x, s in zip(upper, sg)])
        if best is None or e < best:
            best = e
    return tuple(best)


def scan_omega0(roots, want_reps=False):
    """Walk Omega_0 once.

    Returns (orbit_count, fix, reps): ``fix[s]`` is the number of U_n-orbits
    fixed by the s-th sign matrix (first sign +1), ``reps`` the encoded
    lexicographically least member of each D_n-orbit when requested.
    """
    roots = tuple(roots)
    _, gaps, steps, signs = _layout(roots)
    m = len(gaps)
    nsig = len(signs)
    fix = [0] * nsig
    reps = [] if want_reps else None
    orbits = 0
    e = [0] * m
    total = 1
    for g in gaps:
        total *= g
    for idx in range(total):
        is_min = True
        fix[0] += 1
        for s in range(1, nsig):
            sg = signs[s]
            f = [x * y for x, y in zip(e, sg)]
            for p, g, rows, cols in steps:
                t = -(f[p] // g)
                if t:
                    f[p] += t * g
                    for a, b in rows:
                        f[a] += t * f[b]
                    for a, b in cols:
                        f[a] -= t * f[b]
            j = 0
            for x, g in zip(f, gaps):
                j = j * g + x
            if j == idx:
                fix[s] += 1
            elif j < idx:
                is_min = False
        if is_min:
            orbits += 1
            if want_reps:
                reps.append(idx)
        # odometer increment, last entry least significant
        k = m - 1
        while k >= 0:
            e[k] += 1
            if e[k] < gaps[k]:
                break
            e[k] = 0
            k -= 1
    return orbits, fix, reps
