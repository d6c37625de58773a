"""Dimer coverings (perfect matchings) and weighted ensembles of them.

A covering pairs every A-sublattice site with exactly one B-sublattice
site.  Canonical storage is the A-indexed permutation form: ``a_sites``
ascending with ``b_partners[k]`` matched to ``a_sites[k]``.  Pairs are
always ordered A-first; that orientation fixes the sign convention of the
singlet product built from a covering, so it is enforced rather than
silently normalized.

Two enumerations are provided: the gas (every A-B pairing of a complete
bipartite lattice, ``N!`` coverings) and the liquid (nearest-neighbor
pairings of a grid).  Both are deterministic: repeated calls yield the
same coverings in the same order.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceeded
from .lattice import Kind, LatticeSpec, Sublattice, lattice_from_config, lattice_to_config

# N! coverings: the default cap keeps gas enumeration under ~10^5 states.
GAS_MAX_N = 8


class Variant(enum.Enum):
    GAS = "gas"
    LIQUID = "liquid"
    CUSTOM = "custom"


@dataclass(frozen=True)
class DimerCovering:
    """One perfect matching, stored as an A-indexed permutation."""

    a_sites: tuple[int, ...]
    b_partners: tuple[int, ...]
    weight: float = 1.0

    def __post_init__(self) -> None:
        if len(self.a_sites) != len(self.b_partners):
            raise ValueError("a_sites and b_partners must have equal length")
        if not self.a_sites:
            raise ValueError("covering must contain at least one pair")
        if list(self.a_sites) != sorted(self.a_sites):
            raise ValueError("a_sites must be strictly ascending")
        if len(set(self.b_partners)) != len(self.b_partners):
            raise ValueError("b_partners must be distinct")

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(zip(self.a_sites, self.b_partners))

    @property
    def n_pairs(self) -> int:
        return len(self.a_sites)

    def partner_array(self, n_sites: int) -> np.ndarray:
        """site -> matched partner, as an int array of length ``n_sites``."""
        out = np.full(n_sites, -1, dtype=np.int64)
        for a, b in zip(self.a_sites, self.b_partners):
            out[a] = b
            out[b] = a
        return out

    @classmethod
    def from_pairs(
        cls,
        lattice: LatticeSpec,
        pairs: Iterable[tuple[int, int]],
        weight: float = 1.0,
    ) -> "DimerCovering":
        """Validate ``pairs`` against ``lattice`` and canonicalize ordering.

        Every pair must be (A-site, B-site); pass pairs A-first, since the
        reversed orientation denotes a different (sign-flipped) state.
        """
        plist = [(int(a), int(b)) for a, b in pairs]
        seen: set[int] = set()
        for a, b in plist:
            if lattice.sublattice_of(a) is not Sublattice.A:
                raise ValueError(f"pair ({a}, {b}) is not ordered A-first")
            if lattice.sublattice_of(b) is not Sublattice.B:
                raise ValueError(f"pair ({a}, {b}) does not end on sublattice B")
            for s in (a, b):
                if s in seen:
                    raise ValueError(f"site {s} appears in more than one pair")
                seen.add(s)
        if len(seen) != lattice.site_count:
            missing = sorted(set(range(lattice.site_count)) - seen)
            raise ValueError(f"not a perfect matching; uncovered sites {missing}")
        plist.sort()
        return cls(
            a_sites=tuple(a for a, _ in plist),
            b_partners=tuple(b for _, b in plist),
            weight=float(weight),
        )


@dataclass(frozen=True)
class CoveringEnsemble:
    """A lattice plus a weighted, ordered list of its coverings."""

    lattice: LatticeSpec
    coverings: tuple[DimerCovering, ...]
    variant: Variant

    def __post_init__(self) -> None:
        if not self.coverings:
            raise ValueError("ensemble must contain at least one covering")
        n = self.coverings[0].n_pairs
        if any(c.n_pairs != n for c in self.coverings):
            raise ValueError("coverings must all cover the same lattice")
        if self.variant in (Variant.GAS, Variant.LIQUID):
            w0 = self.coverings[0].weight
            if any(c.weight != w0 for c in self.coverings):
                raise ValueError(f"{self.variant.value} ensembles carry equal weights")
        if self.variant is Variant.LIQUID:
            for c in self.coverings:
                for a, b in c.pairs:
                    if b not in self.lattice.neighbors(a):
                        raise ValueError(
                            f"liquid covering contains non-nearest-neighbor pair ({a}, {b})"
                        )

    def __len__(self) -> int:
        return len(self.coverings)

    @property
    def weights(self) -> np.ndarray:
        return np.array([c.weight for c in self.coverings], dtype=np.float64)

    @property
    def has_equal_weights(self) -> bool:
        w = self.weights
        return bool(np.all(w == w[0]))


def enumerate_gas(lattice: LatticeSpec, max_n: int = GAS_MAX_N) -> CoveringEnsemble:
    """All ``N!`` equal-weight pairings of a complete bipartite lattice.

    Coverings are emitted in lexicographic order of the partner
    permutation.  Raises :class:`CapExceeded` when ``N > max_n``.
    """
    if lattice.kind is not Kind.COMPLETE_BIPARTITE:
        raise ValueError("gas enumeration is defined on complete bipartite lattices")
    n = lattice.n_per_sublattice
    if n > max_n:
        raise CapExceeded(f"gas enumeration capped at N={max_n}; requested N={n}")
    a = lattice.a_sites()
    covs = tuple(
        DimerCovering(a_sites=a, b_partners=perm)
        for perm in permutations(lattice.b_sites())
    )
    return CoveringEnsemble(lattice=lattice, coverings=covs, variant=Variant.GAS)


def enumerate_liquid(lattice: LatticeSpec) -> CoveringEnsemble:
    """All equal-weight nearest-neighbor coverings of a square grid.

    Backtracks over the lowest-index unmatched site; output order is
    deterministic (lexicographic in the sequence of matched bonds).
    """
    if lattice.kind is not Kind.SQUARE_GRID:
        raise ValueError("liquid enumeration is defined on square grids")
    n = lattice.site_count
    adj = [lattice.neighbors(s) for s in range(n)]
    matched = [False] * n
    bond_stack: list[tuple[int, int]] = []
    found: list[DimerCovering] = []

    def extend() -> None:
        site = next((s for s in range(n) if not matched[s]), None)
        if site is None:
            found.append(DimerCovering.from_pairs(lattice, _orient(bond_stack)))
            return
        matched[site] = True
        for t in adj[site]:
            if not matched[t]:
                matched[t] = True
                bond_stack.append((site, t))
                extend()
                bond_stack.pop()
                matched[t] = False
        matched[site] = False

    def _orient(bonds: list[tuple[int, int]]) -> list[tuple[int, int]]:
        return [
            (s, t) if lattice.sublattice_of(s) is Sublattice.A else (t, s)
            for s, t in bonds
        ]

    extend()
    if not found:
        raise ValueError("lattice admits no nearest-neighbor perfect matching")
    return CoveringEnsemble(lattice=lattice, coverings=tuple(found), variant=Variant.LIQUID)


def custom_ensemble(
    lattice: LatticeSpec,
    pair_lists: Sequence[Iterable[tuple[int, int]]],
    weights: Sequence[float] | None = None,
) -> CoveringEnsemble:
    """Ensemble from explicit coverings; weights default to 1."""
    if weights is None:
        weights = [1.0] * len(pair_lists)
    if len(weights) != len(pair_lists):
        raise ValueError("one weight per covering required")
    covs = tuple(
        DimerCovering.from_pairs(lattice, pairs, weight=w)
        for pairs, w in zip(pair_lists, weights)
    )
    return CoveringEnsemble(lattice=lattice, coverings=covs, variant=Variant.CUSTOM)


# ----------------------------------------------------------------------
# serialization: integers for pairs are exact, weights are decimal floats

def ensemble_to_json(ensemble: CoveringEnsemble) -> str:
    doc = {
        "schema": 1,
        "lattice": lattice_to_config(ensemble.lattice),
        "variant": ensemble.variant.value,
        "coverings": [[list(p) for p in c.pairs] for c in ensemble.coverings],
        "weights": [c.weight for c in ensemble.coverings],
    }
    return json.dumps(doc, sort_keys=True)


def ensemble_from_json(text: str) -> CoveringEnsemble:
    doc = json.loads(text)
    lattice = lattice_from_config(doc["lattice"])
    variant = Variant(doc["variant"])
    covs = tuple(
        DimerCovering.from_pairs(lattice, [tuple(p) for p in pairs], weight=w)
        for pairs, w in zip(doc["coverings"], doc["weights"])
    )
    return CoveringEnsemble(lattice=lattice, coverings=covs, variant=variant)
