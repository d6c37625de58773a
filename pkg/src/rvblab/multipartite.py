"""Bipartition mixedness audits and genuine multipartite entanglement.

For a pure global state, a subset is entangled with the rest exactly when
its reduced state is mixed, so subset purity/entropy scans certify
entanglement structure directly.  Spectra are computed on the Schmidt
route: reshape the amplitude tensor so the subset indexes rows, then take
the Gram matrix of the smaller side.  This keeps exhaustive scans over
thousands of subsets fast; the density-matrix module covers the same
quantities one subset at a time through its own eigensolver, and the
tests pin the two routes against each other.

Genuine multipartite entanglement of a pure state means every nontrivial
bipartition is entangled; the certificate scans all 2**(n-1) - 1 cuts
(subsets containing site 0, so each unordered cut appears once).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceeded
from .states import StateVector

ENTANGLED_PURITY_TOL = 1e-9
CERTIFICATE_MAX_QUBITS = 12
AUDIT_MAX_SUBSETS = 20_000
DEFAULT_SEED = 2004


@dataclass(frozen=True)
class BipartitionVerdict:
    """Mixedness of one subset against the rest of a pure state."""

    subset: tuple[int, ...]
    purity: float
    entropy_bits: float
    entangled: bool


@dataclass(frozen=True)
class AuditResult:
    """Verdicts for a family of subsets; ``sampled`` marks a partial scan."""

    verdicts: tuple[BipartitionVerdict, ...]
    sampled: bool

    @property
    def all_entangled(self) -> bool:
        return all(v.entangled for v in self.verdicts)


def subset_spectrum(state: StateVector, subset: Sequence[int]) -> np.ndarray:
    """Descending Schmidt spectrum (reduced eigenvalues) of a site subset."""
    subset = tuple(int(s) for s in subset)
    n = state.n_qubits
    if list(subset) != sorted(set(subset)):
        raise ValueError("subset must be strictly ascending and distinct")
    if any(not 0 <= s < n for s in subset):
        raise ValueError(f"subset {subset} out of range for {n} qubits")
    if not 0 < len(subset) < n:
        raise ValueError("subset must be a proper nonempty subset")
    k = len(subset)
    tensor = state.amplitudes.reshape((2,) * n)
    kept_axes = [n - 1 - s for s in reversed(subset)]
    rest = [ax for ax in range(n) if ax not in set(kept_axes)]
    block = np.transpose(tensor, kept_axes + rest).reshape(2**k, -1)
    if block.shape[0] <= block.shape[1]:
        gram = block @ block.T
    else:
        gram = block.T @ block
    w = np.linalg.eigvalsh(gram)
    w = np.clip(w, 0.0, None)[::-1]
    return w


def bipartition_verdict(state: StateVector, subset: Sequence[int]) -> BipartitionVerdict:
    w = subset_spectrum(state, subset)
    pur = float(np.sum(w * w))
    positive = w[w > 0.0]
    ent = float(-np.sum(positive * np.log2(positive)))
    return BipartitionVerdict(
        subset=tuple(int(s) for s in subset),
        purity=pur,
        entropy_bits=ent,
        entangled=pur < 1.0 - ENTANGLED_PURITY_TOL,
    )


def _unrank_combination(rank: int, n: int, k: int) -> tuple[int, ...]:
    """rank-th (0-based) k-combination of range(n) in lexicographic order."""
    out = []
    x = 0
    for slot in range(k, 0, -1):
        while True:
            block = math.comb(n - x - 1, slot - 1)
            if rank < block:
                break
            rank -= block
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


def _iter_subsets(
    n: int, sizes: Iterable[int], max_subsets: int, seed: int
) -> tuple[list[tuple[int, ...]], bool]:
    sizes = sorted(set(int(k) for k in sizes))
    if any(not 0 < k < n for k in sizes):
        raise ValueError(f"subset sizes must be proper, got {sizes} for {n} sites")
    total = sum(math.comb(n, k) for k in sizes)
    if total <= max_subsets:
        out: list[tuple[int, ...]] = []
        for k in sizes:
            out.extend(combinations(range(n), k))
        return out, False
    # deterministic sample: seeded ranks, unranked to combinations
    rng = np.random.default_rng(seed)
    quota = max(1, max_subsets // len(sizes))
    out = []
    for k in sizes:
        count = math.comb(n, k)
        if count <= quota:
            out.extend(combinations(range(n), k))
            continue
        ranks = np.sort(rng.choice(count, size=quota, replace=False))
        out.extend(_unrank_combination(int(r), n, k) for r in ranks)
    return out, True


def odd_subset_audit(
    state: StateVector,
    max_size: int = 5,
    max_subsets: int = AUDIT_MAX_SUBSETS,
    seed: int = DEFAULT_SEED,
) -> AuditResult:
    """Verdicts for all odd-size subsets up to ``max_size``.

    Odd subsets of a singlet superposition are always mixed (a dimer
    must cross the cut), so every verdict should come back entangled.
    """
    n = state.n_qubits
    sizes = [k for k in range(1, min(max_size, n - 1) + 1, 2)]
    subsets, sampled = _iter_subsets(n, sizes, max_subsets, seed)
    verdicts = tuple(bipartition_verdict(state, s) for s in subsets)
    return AuditResult(verdicts=verdicts, sampled=sampled)


def even_subset_audit(
    state: StateVector,
    max_size: int = 4,
    max_subsets: int = AUDIT_MAX_SUBSETS,
    seed: int = DEFAULT_SEED,
) -> AuditResult:
    """Verdicts for even-size proper subsets up to ``max_size``."""
    n = state.n_qubits
    sizes = [k for k in range(2, min(max_size, n - 1) + 1, 2)]
    if not sizes:
        raise ValueError("no even proper subset sizes available")
    subsets, sampled = _iter_subsets(n, sizes, max_subsets, seed)
    verdicts = tuple(bipartition_verdict(state, s) for s in subsets)
    return AuditResult(verdicts=verdicts, sampled=sampled)


@dataclass(frozen=True)
class CertificateReport:
    """Outcome of the exhaustive bipartition scan of a pure state."""

    genuine: bool
    n_cuts: int
    min_entropy_bits: float
    min_cut: tuple[int, ...]


def genuine_multipartite_certificate(state: StateVector) -> CertificateReport:
    """Exhaustive check that every bipartition of a pure state is entangled.

    Scans the 2**(n-1) - 1 cuts whose subset contains site 0.  Raises
    :class:`CapExceeded` above 12 qubits (2047 cuts).
    """
    n = state.n_qubits
    if n > CERTIFICATE_MAX_QUBITS:
        raise CapExceeded(
            f"certificate capped at {CERTIFICATE_MAX_QUBITS} qubits; state has {n}"
        )
    if n < 2:
        raise ValueError("certificate needs at least two sites")
    best_entropy = math.inf
    best_cut: tuple[int, ...] = ()
    genuine = True
    n_cuts = 0
    for k in range(1, n):
        for rest in combinations(range(1, n), k - 1):
            subset = (0,) + rest
            n_cuts += 1
            verdict = bipartition_verdict(state, subset)
            if verdict.entropy_bits < best_entropy:
                best_entropy = verdict.entropy_bits
                best_cut = subset
            if not verdict.entangled:
                genuine = False
    return CertificateReport(
        genuine=genuine,
        n_cuts=n_cuts,
        min_entropy_bits=float(best_entropy),
        min_cut=best_cut,
    )
