"""Transition graphs of covering pairs and the loop-sum correlation route.

Superimposing two dimer coverings decomposes the lattice into closed
loops: degenerate loops (the two coverings share a dimer, 2 sites) and
non-degenerate alternating loops (even length >= 4).  With all pairs
oriented A-first the overlap of two covering products is positive,
``<c_k|c_l> = 2**(L - N)`` where L counts the loops and N the dimers, so
an equal-weight superposition gives the two-site Werner parameter as a
ratio of integer loop sums:

    p(i, j) = sign(i, j) * sum_{k,l} X_ij(g_kl) 2**L(g_kl)
                         / sum_{k,l} 2**L(g_kl)

summed over ordered covering pairs, where X_ij is 1 when i and j lie on
the same loop, and sign is +1 for opposite sublattices, -1 otherwise.
Weights are exact powers of two, so numerator and denominator are exact
integers; this route never touches the exponentially large state vector
and serves as an independent check of the state-assembly pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coverings import CoveringEnsemble, DimerCovering
from .errors import CapExceeded
from .lattice import Sublattice
from .states import assemble, reduced_density_matrix

MAX_GRAPH_PAIRS = 100_000


@dataclass(frozen=True)
class TransitionGraph:
    """Loop decomposition of one ordered pair of coverings.

    ``covering_pair`` holds the ensemble indices when built by a scan,
    or (-1, -1) for graphs built directly from two coverings.  Loops are
    site cycles, each listed from its smallest site, ordered by that
    site; a loop of length 2 is degenerate.
    """

    covering_pair: tuple[int, int]
    loops: tuple[tuple[int, ...], ...]
    degenerate_count: int
    nondegenerate_count: int

    @property
    def loop_count(self) -> int:
        return self.degenerate_count + self.nondegenerate_count

    def same_loop(self, i: int, j: int) -> bool:
        home = None
        for loop in self.loops:
            if i in loop:
                home = loop
                break
        if home is None:
            raise ValueError(f"site {i} not covered by this graph")
        if j not in home and not any(j in loop for loop in self.loops):
            raise ValueError(f"site {j} not covered by this graph")
        return j in home


def build_transition_graph(
    c_k: DimerCovering,
    c_l: DimerCovering,
    indices: tuple[int, int] = (-1, -1),
) -> TransitionGraph:
    """Superimpose two coverings of the same sites into loops."""
    if c_k.a_sites != c_l.a_sites:
        raise ValueError("coverings pair different site sets")
    if set(c_k.b_partners) != set(c_l.b_partners):
        raise ValueError("coverings pair different site sets")
    n_sites = 2 * c_k.n_pairs
    p_k = c_k.partner_array(n_sites)
    p_l = c_l.partner_array(n_sites)
    visited = [False] * n_sites
    loops: list[tuple[int, ...]] = []
    degenerate = 0
    for start in range(n_sites):
        if visited[start]:
            continue
        cycle = []
        s = start
        while not visited[s]:
            visited[s] = True
            cycle.append(s)
            t = int(p_k[s])
            visited[t] = True
            cycle.append(t)
            s = int(p_l[t])
        if len(cycle) == 2:
            degenerate += 1
        loops.append(tuple(cycle))
    return TransitionGraph(
        covering_pair=tuple(int(x) for x in indices),
        loops=tuple(loops),
        degenerate_count=degenerate,
        nondegenerate_count=len(loops) - degenerate,
    )


def _loop_labels(p_k: np.ndarray, p_l: np.ndarray) -> tuple[np.ndarray, int]:
    """Per-site loop labels and loop count, without storing cycles."""
    n_sites = p_k.shape[0]
    labels = np.full(n_sites, -1, dtype=np.int64)
    count = 0
    for start in range(n_sites):
        if labels[start] >= 0:
            continue
        s = start
        while labels[s] < 0:
            labels[s] = count
            t = p_k[s]
            labels[t] = count
            s = p_l[t]
        count += 1
    return labels, count


def _check_scannable(ensemble: CoveringEnsemble) -> None:
    if not ensemble.has_equal_weights:
        raise ValueError("loop-sum route requires an equal-weight ensemble")


def loop_formula_scan(ensemble: CoveringEnsemble) -> np.ndarray:
    """Werner parameters for all site pairs via the loop sum.

    Returns a symmetric (sites x sites) array with the sublattice sign
    applied; the diagonal is set to 0 (undefined).  Raises
    :class:`CapExceeded` above ``MAX_GRAPH_PAIRS`` ordered pairs.
    """
    _check_scannable(ensemble)
    n_cov = len(ensemble.coverings)
    if n_cov * n_cov > MAX_GRAPH_PAIRS:
        raise CapExceeded(
            f"loop scan capped at {MAX_GRAPH_PAIRS} ordered covering pairs; "
            f"ensemble needs {n_cov * n_cov}"
        )
    lattice = ensemble.lattice
    n_sites = lattice.site_count
    partners = [c.partner_array(n_sites) for c in ensemble.coverings]
    numerator = np.zeros((n_sites, n_sites), dtype=np.float64)
    denominator = 0.0
    for p_k in partners:
        for p_l in partners:
            labels, count = _loop_labels(p_k, p_l)
            weight = float(2**count)  # exact: small power of two
            same = labels[:, None] == labels[None, :]
            numerator += weight * same
            denominator += weight
    a_mask = np.array(
        [lattice.sublattice_of(s) is Sublattice.A for s in range(n_sites)]
    )
    sign = np.where(a_mask[:, None] == a_mask[None, :], -1.0, 1.0)
    p_matrix = sign * numerator / denominator
    np.fill_diagonal(p_matrix, 0.0)
    return p_matrix


def loop_formula_p(
    ensemble: CoveringEnsemble,
    i: int,
    j: int,
    max_graph_pairs: int = MAX_GRAPH_PAIRS,
) -> float:
    """Werner parameter of one site pair via the loop sum.

    Ensembles above ``max_graph_pairs`` ordered pairs are routed to the
    exact state-vector oracle instead (assemble, reduce, fit), which has
    its own qubit cap.
    """
    _check_scannable(ensemble)
    lattice = ensemble.lattice
    n_sites = lattice.site_count
    if not (0 <= i < n_sites and 0 <= j < n_sites) or i == j:
        raise ValueError(f"need two distinct sites in [0, {n_sites}), got ({i}, {j})")
    n_cov = len(ensemble.coverings)
    if n_cov * n_cov > max_graph_pairs:
        from .entanglement import extract_werner_p

        state = assemble(ensemble)
        dm = reduced_density_matrix(state, tuple(sorted((i, j))))
        return extract_werner_p(dm).p

    partners = [c.partner_array(n_sites) for c in ensemble.coverings]
    numerator = 0
    denominator = 0
    for p_k in partners:
        for p_l in partners:
            labels, count = _loop_labels(p_k, p_l)
            weight = 1 << count  # python int, exact
            denominator += weight
            if labels[i] == labels[j]:
                numerator += weight
    sign = (
        1.0
        if lattice.sublattice_of(i) is not lattice.sublattice_of(j)
        else -1.0
    )
    return sign * numerator / denominator


def same_sublattice_scan(ensemble: CoveringEnsemble) -> list[tuple[tuple[int, int], float]]:
    """((i, j), p) for every same-sublattice pair, via the loop sum.

    All values are <= 0 up to rounding: same-sublattice sites never see
    a positive singlet weight in an equal-weight covering superposition.
    """
    p_matrix = loop_formula_scan(ensemble)
    lattice = ensemble.lattice
    out: list[tuple[tuple[int, int], float]] = []
    for i in range(lattice.site_count):
        for j in range(i + 1, lattice.site_count):
            if lattice.sublattice_of(i) is lattice.sublattice_of(j):
                out.append(((i, j), float(p_matrix[i, j])))
    return out
