"""Shared oracles for the test suite; deliberately independent of the kernels."""
import itertools
import random

from tdrings.arithmetic import RootConfig
from tdrings.linalg import identity, integer_inverse, matmul
from tdrings.matrices import OmegaMatrix, reduce_to_omega0, upper_positions


def random_unimodular(n, rng, steps=6, bound=3):
    U = identity(n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        t = rng.randint(-bound, bound)
        U[i] = [x + t * y for x, y in zip(U[i], U[j])]
    if rng.random() < 0.5:
        U[0] = [-x for x in U[0]]
    return U


def conjugate(U, A):
    return matmul(matmul(U, A), integer_inverse(U))


def orbit_count_union_find(roots):
    """Orbits of the upper-triangular group on Omega_0 via generators.

    Each generator (a sign flip at one index, or I + E_ij) is applied at the
    matrix level and the result is pulled back into Omega_0 with the matrix
    reduction sweep, so no flat-kernel code is involved.
    """
    n = len(roots)
    gaps = [roots[j] - roots[i] for i, j in upper_positions(n)]
    nodes = list(itertools.product(*[range(g) for g in gaps]))
    index = {u: k for k, u in enumerate(nodes)}
    parent = list(range(len(nodes)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    gens = []
    for k in range(n):
        D = identity(n)
        D[k][k] = -1
        gens.append(D)
    for i, j in upper_positions(n):
        E = identity(n)
        E[i][j] = 1
        gens.append(E)
    for u in nodes:
        A = OmegaMatrix(roots, u).matrix()
        for g in gens:
            B = conjugate(g, A)
            R, _ = reduce_to_omega0(OmegaMatrix.from_matrix(B, roots))
            a, b = find(index[u]), find(index[R.upper])
            if a != b:
                parent[a] = b
    return len({find(k) for k in range(len(nodes))})


def small_configs(n, max_top, start=0):
    for rest in itertools.combinations(range(start + 1, max_top + 1), n - 1):
        yield RootConfig((start,) + rest)


def rng(seed=0):
    return random.Random(seed)
