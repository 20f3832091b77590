"""Class counting through characters of the diagonal normal subgroup.

A group G with a normal diagonal code A has k(G) = NFC + FC, where NFC is
the class count of G/A and FC counts irreducibles nontrivial on A. FC is
assembled from the G-orbits of nontrivial functionals eta: A -> {+-1}; an
orbit contributes gamma = k(I/K) - k(I/A), with I the stabiliser of eta and
K its kernel.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .groupkit import (
    ClassPartition,
    Group,
    NotNormalError,
    closure,
    group_from_elements,
    is_normal,
    is_simple,
    quotient_class_count,
    traces,
    trivial_group,
)
from .signedperm import DEGREE, Gf2Code, SignedPerm, diag, dot, permute_vec, vec_text

__all__ = [
    "ClassFunction",
    "CliffordCount",
    "Functional",
    "OrbitRecord",
    "adjoin_neg_identity",
    "char_norm",
    "clifford_count",
    "code_group",
    "functional_orbits",
    "functionals",
    "gamma",
    "inertia_group",
    "is_simple",
    "is_transitive_on_axes",
    "natural_character",
]


@dataclass(frozen=True)
class ClassFunction:
    partition: ClassPartition
    values: tuple[int, ...]

    def __getitem__(self, k: int) -> int:
        return self.values[k]

    def value_at(self, g: SignedPerm) -> int:
        idx = np.searchsorted(self.partition.elements, g.code)
        return self.values[int(self.partition.labels[idx])]


def natural_character(G: Group) -> ClassFunction:
    partition = G.classes
    values = traces(partition.representatives)
    return ClassFunction(partition, tuple(int(v) for v in values))


def char_norm(G: Group) -> Fraction:
    """(chi, chi) for the natural character, exact."""
    t = traces(G.elements)
    return Fraction(int((t * t).sum()), G.order)


def is_transitive_on_axes(G: Group) -> bool:
    reached = {0}
    frontier = [0]
    perms = [g.perm for g in G.generators]
    while frontier:
        i = frontier.pop()
        for p in perms:
            if p[i] not in reached:
                reached.add(p[i])
                frontier.append(p[i])
    return len(reached) == DEGREE


def code_group(code: Gf2Code) -> Group:
    if code.dimension == 0:
        return trivial_group()
    return closure([diag(b) for b in code.basis])


@dataclass(frozen=True)
class Functional:
    """A nontrivial character of the diagonal group A, a -> (-1)^(u.a).

    ``vector`` is the smallest representative of u modulo the dual of A.
    """

    code: Gf2Code = field(compare=False, repr=False)
    vector: int

    def __call__(self, a: int) -> int:
        return -1 if dot(self.vector, a) else 1

    def kernel(self) -> Gf2Code:
        return Gf2Code(w for w in self.code.enumerate() if dot(self.vector, w) == 0)

    def moved_by(self, perm: Sequence[int]) -> "Functional":
        return Functional(self.code, _dual_reps(self.code)[permute_vec(perm, self.vector)])

    def __repr__(self) -> str:
        return f"Functional({vec_text(self.vector)})"


_DUAL_REPS: dict[tuple[int, ...], list[int]] = {}


def _dual_reps(code: Gf2Code) -> list[int]:
    key = code.basis
    if key not in _DUAL_REPS:
        _DUAL_REPS[key] = code.dual().coset_table()
    return _DUAL_REPS[key]


def functionals(A: Gf2Code) -> list[Functional]:
    if A.dimension == 0:
        raise ValueError("the trivial code has no nontrivial functionals")
    reps = sorted(set(_dual_reps(A)) - {0})
    return [Functional(A, u) for u in reps]


def _check_normalizes(G: Group, A: Gf2Code) -> None:
    for g in G.generators:
        if A.permuted(g.perm) != A:
            raise NotNormalError("G does not normalise the diagonal code")


def functional_orbits(G: Group, A: Gf2Code) -> list[list[Functional]]:
    _check_normalizes(G, A)
    perms = [g.perm for g in G.generators]
    remaining = set(functionals(A))
    orbits = []
    while remaining:
        start = min(remaining, key=lambda f: f.vector)
        orbit = {start}
        frontier = [start]
        while frontier:
            f = frontier.pop()
            for p in perms:
                h = f.moved_by(p)
                if h not in orbit:
                    orbit.add(h)
                    frontier.append(h)
        remaining -= orbit
        orbits.append(sorted(orbit, key=lambda f: f.vector))
    return orbits


def _moved_vectors(codes: np.ndarray, u: int) -> np.ndarray:
    out = np.zeros(codes.shape, dtype=np.int64)
    for i in range(DEGREE):
        if (u >> i) & 1:
            out |= np.int64(1) << ((codes >> (7 + 3 * i)) & 7)
    return out


def inertia_group(G: Group, eta: Functional) -> Group:
    _check_normalizes(G, eta.code)
    reps = np.array(_dual_reps(eta.code), dtype=np.int64)
    fixed = reps[_moved_vectors(G.elements, eta.vector)] == eta.vector
    start = [diag(b) for b in eta.code.basis]
    return group_from_elements(G.elements[fixed], start=start)


def gamma(G: Group, eta: Functional, inertia: Group | None = None) -> int:
    I = inertia if inertia is not None else inertia_group(G, eta)
    A = code_group(eta.code)
    K = code_group(eta.kernel())
    return quotient_class_count(I, K) - quotient_class_count(I, A)


@dataclass(frozen=True)
class OrbitRecord:
    size: int
    inertia_index: int
    gamma: int
    representative: str


@dataclass(frozen=True)
class CliffordCount:
    nfc: int
    fc_orbit: int
    fc_paper: int | None
    direct: int
    orbits: tuple[OrbitRecord, ...]
    alpha_orbits: int | None
    uniform_gamma: int | None

    @property
    def consistent(self) -> bool:
        return self.direct == self.nfc + self.fc_orbit

    def as_json(self) -> dict:
        return {
            "nfc": self.nfc,
            "fc_paper": self.fc_paper,
            "fc_orbit": self.fc_orbit,
            "direct_classes": self.direct,
            "orbits": [
                {"size": o.size, "inertia_index": o.inertia_index, "gamma": o.gamma} for o in self.orbits
            ],
        }


def _default_alpha() -> SignedPerm:
    return SignedPerm([(i + 1) % DEGREE for i in range(DEGREE)])


def clifford_count(G: Group, A: Gf2Code, alpha: SignedPerm | None = None) -> CliffordCount:
    """Count classes of G as NFC + FC, with FC obtained two ways.

    ``fc_orbit`` sums gamma over representatives of the G-orbits of
    functionals. ``fc_paper`` takes gamma of the smallest functional and
    multiplies by the number of <alpha>-orbits, assuming every orbit looks
    alike; it is None when alpha is not in G.
    """
    if A.dimension == 0:
        raise ValueError("clifford_count needs a nontrivial diagonal code")
    A_group = code_group(A)
    if not is_normal(G, A_group):
        raise NotNormalError("A is not normal in G")
    nfc = quotient_class_count(G, A_group)
    records = []
    gammas = {}
    for orbit in functional_orbits(G, A):
        rep = orbit[0]
        I = inertia_group(G, rep)
        if I.order * len(orbit) != G.order:
            raise AssertionError("orbit-stabiliser violated")
        g = gamma(G, rep, I)
        gammas[rep] = g
        records.append(OrbitRecord(len(orbit), G.order // I.order, g, vec_text(rep.vector)))
    fc_orbit = sum(r.gamma for r in records)

    alpha = alpha if alpha is not None else _default_alpha()
    fc_paper = alpha_orbit_count = uniform_gamma = None
    if alpha in G:
        alpha_orbit_count = len(functional_orbits(closure([alpha]), A))
        first = functionals(A)[0]
        uniform_gamma = gammas.get(first)
        if uniform_gamma is None:
            uniform_gamma = gamma(G, first)
        fc_paper = uniform_gamma * alpha_orbit_count
    return CliffordCount(
        nfc=nfc,
        fc_orbit=fc_orbit,
        fc_paper=fc_paper,
        direct=G.classes.count,
        orbits=tuple(records),
        alpha_orbits=alpha_orbit_count,
        uniform_gamma=uniform_gamma,
    )


def adjoin_neg_identity(G: Group) -> Group:
    minus = SignedPerm.neg_identity()
    if minus in G:
        raise ValueError("-I is already in G")
    return closure(list(G.generators) + [minus])
