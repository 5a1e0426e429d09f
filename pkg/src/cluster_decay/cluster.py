"""Cluster graphs, cluster states, stabilizers, and cluster Hamiltonians.

Sites are 1-based.  A cluster state is prepared by applying CZ to every
edge of the graph with all qubits initialized in |+>; equivalently it is
the unique joint +1 eigenstate of the stabilizers K_i = X_i prod_nb Z_j.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .quantum_core import PauliString, tensor, pauli


@dataclass(frozen=True)
class ClusterGraph:
    """Qubit lattice: site count n and a set of undirected edges (i, j), i < j."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("graph needs at least one site")
        norm = set()
        for e in self.edges:
            i, j = e
            if i == j:
                raise ValueError(f"self-loop at site {i}")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"edge {e} endpoint out of range 1..{self.n}")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(norm))

    @property
    def dim(self) -> int:
        return 2 ** self.n

    def neighbors(self, i: int) -> tuple:
        if not 1 <= i <= self.n:
            raise ValueError(f"site {i} out of range 1..{self.n}")
        out = []
        for a, b in self.edges:
            if a == i:
                out.append(b)
            elif b == i:
                out.append(a)
        return tuple(sorted(out))


def chain(n: int) -> ClusterGraph:
    """Linear chain 1-2-...-n."""
    return ClusterGraph(n, frozenset((i, i + 1) for i in range(1, n)))


def ladder(k: int) -> ClusterGraph:
    """2 x k ladder; sites 1..k on the top rail, k+1..2k on the bottom."""
    edges = set()
    for i in range(1, k):
        edges.add((i, i + 1))
        edges.add((k + i, k + i + 1))
    for i in range(1, k + 1):
        edges.add((i, k + i))
    return ClusterGraph(2 * k, frozenset(edges))


def parse_graph(literal: str) -> ClusterGraph:
    """Parse the flat graph literal `n=5; edges=1-2,2-3,3-4,4-5`."""
    n = None
    edges = set()
    for part in literal.split(";"):
        part = part.strip()
        if not part:
            continue
        key, _, value = part.partition("=")
        key = key.strip().lower()
        value = value.strip()
        if key == "n":
            n = int(value)
        elif key == "edges":
            if value:
                for item in value.split(","):
                    a, _, b = item.strip().partition("-")
                    edges.add((int(a), int(b)))
        else:
            raise ValueError(f"unknown graph field {key!r}")
    if n is None:
        raise ValueError("graph literal must set n")
    return ClusterGraph(n, frozenset(edges))


def graph_literal(g: ClusterGraph) -> str:
    """Canonical literal form of a graph (inverse of parse_graph)."""
    edges = ",".join(f"{a}-{b}" for a, b in sorted(g.edges))
    return f"n={g.n}; edges={edges}"


def cz_phases(g: ClusterGraph) -> np.ndarray:
    """Diagonal of the product of CZ gates over all edges, as +-1 entries."""
    d = np.ones(g.dim)
    idx = np.arange(g.dim)
    for (i, j) in g.edges:
        bi = (idx >> (g.n - i)) & 1
        bj = (idx >> (g.n - j)) & 1
        d[(bi & bj).astype(bool)] *= -1
    return d


def cluster_state(g: ClusterGraph) -> np.ndarray:
    """|Psi_C> = (prod_edges CZ) |+>^n."""
    return cz_phases(g).astype(complex) / np.sqrt(g.dim)


def stabilizer(g: ClusterGraph, i: int) -> PauliString:
    """K_i = X_i prod_{j in nb(i)} Z_j with phase +1."""
    nb = g.neighbors(i)
    letters = []
    for site in range(1, g.n + 1):
        if site == i:
            letters.append("X")
        elif site in nb:
            letters.append("Z")
        else:
            letters.append("I")
    return PauliString(1, "".join(letters))


def stabilizer_sum(g: ClusterGraph) -> np.ndarray:
    """Dense sum of all stabilizers, built per-site without forming each
    full Kronecker product from scratch."""
    total = np.zeros((g.dim, g.dim), dtype=complex)
    for i in range(1, g.n + 1):
        nb = set(g.neighbors(i))
        factors = []
        for site in range(1, g.n + 1):
            if site == i:
                factors.append(pauli("X"))
            elif site in nb:
                factors.append(pauli("Z"))
            else:
                factors.append(pauli("I"))
        total += tensor(*factors)
    return total


def cluster_hamiltonian(g: ClusterGraph, j: float) -> np.ndarray:
    """H = -J sum_i K_i; non-degenerate ground state |Psi_C> at energy -nJ,
    with all level spacings equal to 2J."""
    if j <= 0:
        raise ValueError("coupling J must be positive")
    return -j * stabilizer_sum(g)
