"""Finite group algorithms over explicit sets of signed permutations.

Groups are held as sorted arrays of packed element words; every operation
that sweeps a whole group goes through the vectorised kernels in
:mod:`so7atlas.kernels`.
"""

from __future__ import annotations

import hashlib
import itertools
import logging
import random
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from . import kernels
from .signedperm import IDENTITY_CODE, Gf2Code, SignedPerm, compose, inverse, vec_text

log = logging.getLogger(__name__)

# twice the order of the determinant-one monomial group, i.e. all 2^7 * 7!
CAPACITY = 645120

CACHE_HEADER = "so7-atlas group-cache v1"


class CapacityError(RuntimeError):
    pass


class NotASubgroupError(ValueError):
    pass


class NotNormalError(ValueError):
    pass


def _codes(elements: Iterable[SignedPerm | int]) -> np.ndarray:
    return np.array([e.code if isinstance(e, SignedPerm) else int(e) for e in elements], dtype=np.int64)


def inverse_codes(codes: np.ndarray) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    out = np.zeros_like(codes)
    for i in range(7):
        p = (codes >> (7 + 3 * i)) & 7
        out |= (np.int64(i) << (7 + 3 * p)) | (((codes >> i) & 1) << p)
    return out


def element_orders(codes: np.ndarray) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    orders = np.zeros(codes.shape, dtype=np.int64)
    power = codes.copy()
    n = 1
    while True:
        hit = (orders == 0) & (power == IDENTITY_CODE)
        orders[hit] = n
        if (orders > 0).all():
            return orders
        power = kernels.compose(power, codes)
        n += 1


def traces(codes: np.ndarray) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    out = np.zeros(codes.shape, dtype=np.int64)
    for i in range(7):
        fixed = ((codes >> (7 + 3 * i)) & 7) == i
        out += np.where(fixed, 1 - 2 * ((codes >> i) & 1), 0)
    return out


def determinants(codes: np.ndarray) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    # parity of the permutation from its inversion count, parity of signs by popcount
    perms = [(codes >> (7 + 3 * i)) & 7 for i in range(7)]
    inversions = np.zeros(codes.shape, dtype=np.int64)
    for i, j in itertools.combinations(range(7), 2):
        inversions += perms[i] > perms[j]
    negs = np.zeros(codes.shape, dtype=np.int64)
    for i in range(7):
        negs += (codes >> i) & 1
    return 1 - 2 * ((inversions + negs) & 1)


def _canonical_labels(labels: np.ndarray) -> np.ndarray:
    # renumber so classes appear in order of their first (smallest) element
    _, first, inv = np.unique(labels, return_index=True, return_inverse=True)
    rank = np.empty(first.size, dtype=np.int64)
    rank[np.argsort(first)] = np.arange(first.size)
    return rank[inv]


class Group:
    """A finite group given by generators and its complete element set."""

    def __init__(self, generators: Sequence[SignedPerm], elements: np.ndarray):
        self.generators = tuple(generators)
        self.elements = np.asarray(elements, dtype=np.int64)

    @property
    def order(self) -> int:
        return int(self.elements.size)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"Group(order={self.order}, generators={len(self.generators)})"

    def __contains__(self, g: SignedPerm) -> bool:
        return bool(self.contains_codes(np.array([g.code]))[0])

    def __iter__(self):
        return (SignedPerm.from_code(int(c)) for c in self.elements)

    def __eq__(self, other):
        if not isinstance(other, Group):
            return NotImplemented
        return self.order == other.order and bool(np.array_equal(self.elements, other.elements))

    def __hash__(self) -> int:
        return hash(self.key)

    @cached_property
    def key(self) -> str:
        return hashlib.sha1(self.elements.tobytes()).hexdigest()

    def index_of(self, codes: np.ndarray) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        pos = np.searchsorted(self.elements, codes)
        pos = np.minimum(pos, self.order - 1)
        return np.where(self.elements[pos] == codes, pos, -1)

    def contains_codes(self, codes: np.ndarray) -> np.ndarray:
        return self.index_of(codes) >= 0

    def issubset(self, other: "Group") -> bool:
        return bool(other.contains_codes(self.elements).all())

    @cached_property
    def is_abelian(self) -> bool:
        return all(compose(a, b) == compose(b, a) for a, b in itertools.combinations(self.generators, 2))

    @cached_property
    def classes(self) -> "ClassPartition":
        return conjugacy_classes(self)


def closure(generators: Sequence[SignedPerm], limit: int | None = None) -> Group:
    """Smallest group containing ``generators``.

    With ``limit`` set, returns ``None`` as soon as the closure grows past it.
    """
    generators = list(generators)
    if not generators:
        raise ValueError("closure needs at least one generator")
    cap = CAPACITY if limit is None else min(limit, CAPACITY)
    elements = kernels.closure(_codes(generators), cap)
    if elements is None:
        if limit is None:
            raise CapacityError(f"closure exceeds {CAPACITY} elements")
        return None
    return Group(generators, elements)


def trivial_group() -> Group:
    return closure([SignedPerm.identity()])


def generating_set(elements: np.ndarray, seed: int = 0, start: Sequence[SignedPerm] = ()) -> list[SignedPerm]:
    """A small generating set for the group whose element set is ``elements``."""
    elements = np.sort(np.asarray(elements, dtype=np.int64))
    gens = list(start)
    current = closure(gens) if gens else trivial_group()
    order = np.random.default_rng(seed).permutation(elements.size)
    for idx in order:
        if current.order == elements.size:
            break
        code = int(elements[idx])
        if current.contains_codes(np.array([code]))[0]:
            continue
        gens.append(SignedPerm.from_code(code))
        current = closure(gens)
    if not np.array_equal(current.elements, elements):
        raise ValueError("element set is not a group")
    return gens or [SignedPerm.identity()]


def group_from_elements(elements: np.ndarray, seed: int = 0, start: Sequence[SignedPerm] = ()) -> Group:
    elements = np.sort(np.asarray(elements, dtype=np.int64))
    return Group(generating_set(elements, seed, start), elements)


@dataclass(frozen=True)
class ClassPartition:
    """Conjugacy classes as a labelling of a sorted element array."""

    elements: np.ndarray
    labels: np.ndarray

    @cached_property
    def sizes(self) -> list[int]:
        return np.bincount(self.labels).tolist()

    @property
    def count(self) -> int:
        return len(self.sizes)

    @cached_property
    def representatives(self) -> np.ndarray:
        _, first = np.unique(self.labels, return_index=True)
        return self.elements[first]

    @property
    def classes(self) -> list[np.ndarray]:
        order = np.argsort(self.labels, kind="stable")
        bounds = np.cumsum([0] + self.sizes)
        sorted_elements = self.elements[order]
        return [sorted_elements[bounds[k] : bounds[k + 1]] for k in range(self.count)]


def _conjugation_targets(G: Group, conjugators: Sequence[SignedPerm]) -> np.ndarray:
    targets = np.empty((len(conjugators), G.order), dtype=np.int64)
    for k, g in enumerate(conjugators):
        conj = kernels.compose(kernels.compose(g.code, G.elements), inverse(g).code)
        targets[k] = G.index_of(conj)
    return targets


def conjugacy_classes(G: Group) -> ClassPartition:
    targets = _conjugation_targets(G, G.generators)
    if (targets < 0).any():
        raise ValueError("element set is not closed under conjugation by its generators")
    labels = kernels.components(G.order, targets)
    return ClassPartition(G.elements, _canonical_labels(labels))


def random_conjugation_class_count(G: Group, rounds: int = 24, seed: int = 0) -> int:
    """Class count by union-find over random conjugations.

    Independent of :func:`conjugacy_classes`: pure Python, scalar compose,
    random conjugators drawn from the whole group instead of its generators.
    Each element is linked to ``rounds`` uniform conjugates, which connects
    every class with overwhelming probability for the group sizes used here.
    """
    elements = [SignedPerm.from_code(int(c)) for c in G.elements]
    index = {g.code: i for i, g in enumerate(elements)}
    parent = list(range(len(elements)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    rng = random.Random(seed)
    pairs = [(h, inverse(h)) for h in rng.choices(elements, k=4 * rounds)]
    for i, x in enumerate(elements):
        for h, h_inv in rng.sample(pairs, rounds):
            j = index[compose(compose(h, x), h_inv).code]
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    return len({find(i) for i in range(len(elements))})


def _require_subgroup(G: Group, H: Group) -> None:
    if not H.issubset(G):
        raise NotASubgroupError("H is not contained in G")


def is_normal(G: Group, H: Group) -> bool:
    _require_subgroup(G, H)
    h_codes = _codes(H.generators)
    for g in G.generators:
        conj = kernels.compose(kernels.compose(g.code, h_codes), inverse(g).code)
        if not H.contains_codes(conj).all():
            return False
    return True


def centralizer(G: Group, g: SignedPerm) -> Group:
    if g not in G:
        raise ValueError(f"{g} is not an element of G")
    commuting = kernels.compose(G.elements, g.code) == kernels.compose(g.code, G.elements)
    return group_from_elements(G.elements[commuting])


def center(G: Group) -> Group:
    mask = np.ones(G.order, dtype=bool)
    for g in G.generators:
        mask &= kernels.compose(G.elements, g.code) == kernels.compose(g.code, G.elements)
    return group_from_elements(G.elements[mask])


def normal_closure(G: Group, gens: Sequence[SignedPerm]) -> Group:
    gens = list(gens) or [SignedPerm.identity()]
    N = closure(gens)
    changed = True
    while changed:
        changed = False
        for g in G.generators:
            g_inv = inverse(g)
            for n in list(N.generators):
                c = compose(compose(g, n), g_inv)
                if c not in N:
                    N = closure(list(N.generators) + [c])
                    changed = True
    return N


def derived_subgroup(G: Group) -> Group:
    comms = [
        compose(compose(a, b), compose(inverse(a), inverse(b)))
        for a, b in itertools.combinations(G.generators, 2)
    ]
    return normal_closure(G, comms)


@dataclass
class QuotientGroup:
    """G/N materialised through coset labels of G's elements."""

    parent: Group
    normal: Group
    labels: np.ndarray  # coset index of each element of parent
    representatives: np.ndarray  # smallest element of each coset
    generators: tuple[int, ...]  # coset indices of parent's generators

    @property
    def order(self) -> int:
        return int(self.representatives.size)

    @property
    def identity(self) -> int:
        return int(self.labels[self.parent.index_of(np.array([IDENTITY_CODE]))[0]])

    def coset_of(self, codes: np.ndarray) -> np.ndarray:
        idx = self.parent.index_of(codes)
        if (idx < 0).any():
            raise ValueError("element outside the parent group")
        return self.labels[idx]

    def mul(self, i, j) -> np.ndarray:
        return self.coset_of(kernels.compose(self.representatives[i], self.representatives[j]))

    def inverse(self, i) -> np.ndarray:
        return self.coset_of(inverse_codes(self.representatives[i]))

    @cached_property
    def table(self) -> np.ndarray:
        n = self.order
        everything = np.arange(n)
        return np.stack([self.mul(i, everything) for i in range(n)])


def quotient(G: Group, N: Group) -> QuotientGroup:
    if not is_normal(G, N):
        raise NotNormalError("N is not normal in G")
    diagonal = ((N.elements >> 7) == (IDENTITY_CODE >> 7)).all()
    if diagonal:
        # xN keeps x's permutation and shifts its signs by the code N
        code = Gf2Code(int(c) & 127 for c in N.elements)
        table = np.array(code.coset_table(), dtype=np.int64)
        keys = (G.elements >> 7 << 7) | table[G.elements & 127]
        _, first, labels = np.unique(keys, return_index=True, return_inverse=True)
    else:
        labels = np.full(G.order, -1, dtype=np.int64)
        first = []
        while (labels < 0).any():
            i = int(np.argmax(labels < 0))
            coset = G.index_of(kernels.compose(G.elements[i], N.elements))
            labels[coset] = len(first)
            first.append(i)
        first = np.array(first, dtype=np.int64)
    labels = np.asarray(labels, dtype=np.int64).ravel()
    reps = G.elements[first]
    gens = tuple(int(labels[G.index_of(np.array([g.code]))[0]]) for g in G.generators)
    return QuotientGroup(G, N, labels, reps, gens)


def quotient_classes(Q: QuotientGroup) -> ClassPartition:
    everything = np.arange(Q.order)
    targets = []
    for j in Q.generators:
        j_inv = int(Q.inverse(np.array([j]))[0])
        targets.append(Q.mul(Q.mul(np.full(Q.order, j), everything), np.full(Q.order, j_inv)))
    if not targets:
        targets = [everything]
    labels = kernels.components(Q.order, np.stack(targets))
    return ClassPartition(np.arange(Q.order, dtype=np.int64), _canonical_labels(labels))


def quotient_class_count(G: Group, N: Group) -> int:
    return quotient_classes(quotient(G, N)).count


def _double_coset_reps(G: Group, H: Group) -> np.ndarray:
    """One element of each double coset HxH other than H itself."""
    targets = []
    for h in H.generators:
        targets.append(G.index_of(kernels.compose(h.code, G.elements)))
        targets.append(G.index_of(kernels.compose(G.elements, h.code)))
    labels = kernels.components(G.order, np.stack(targets))
    _, first = np.unique(labels, return_index=True)
    reps = G.elements[np.sort(first)]
    return reps[~H.contains_codes(reps)]


def subgroups_above(
    G: Group,
    S: Group,
    max_order: int | None = None,
    keep: Callable[[Group], bool] | None = None,
) -> list[Group]:
    """Every subgroup H with S <= H <= G, each exactly once.

    Breadth-first upward search: each known subgroup is extended by one
    element from every double coset it does not cover. ``max_order`` and
    ``keep`` prune branches; ``keep`` must be inherited by subgroups for the
    pruned search to stay complete.
    """
    _require_subgroup(G, S)
    found = {S.key: S}
    frontier = [S]
    while frontier:
        next_frontier = []
        for H in frontier:
            if H.order == G.order or (max_order is not None and 2 * H.order > max_order):
                continue
            for x in _double_coset_reps(G, H):
                K = closure(list(H.generators) + [SignedPerm.from_code(int(x))], limit=max_order)
                if K is None or K.key in found:
                    continue
                if keep is not None and not keep(K):
                    continue
                found[K.key] = K
                next_frontier.append(K)
        frontier = next_frontier
    return sorted(found.values(), key=lambda H: (H.order, H.elements.tolist()))


def are_conjugate(H1: Group, H2: Group, M: Group) -> bool:
    if H1.order != H2.order:
        return False
    gens = _codes(H1.generators)
    for m in M.elements:
        m = int(m)
        conj = kernels.compose(kernels.compose(m, gens), int(inverse_codes(np.array([m]))[0]))
        if H2.contains_codes(conj).all():
            return True
    return False


def merge_conjugates(groups: Sequence[Group], M: Group) -> list[Group]:
    """Keep one representative per M-conjugacy class of subgroups."""
    reps: list[Group] = []
    for H in groups:
        if not any(are_conjugate(H, R, M) for R in reps):
            reps.append(H)
    return reps


def _intersection_order(H: Group, A: Group) -> int:
    return int(A.contains_codes(H.elements).sum())


def quotient_generators(G: Group, A: Group) -> list[SignedPerm]:
    """Greedy choice of elements of G whose images generate G/A."""
    chosen: list[SignedPerm] = []
    current = closure(list(A.generators))
    for g in G.generators:
        if current.order == G.order:
            break
        if g in current:
            continue
        chosen.append(g)
        current = closure(list(A.generators) + chosen)
    return chosen


def complement_search(G: Group, A: Group, max_generators: int = 3) -> Group | None:
    """A subgroup C with C A = G and C meeting A trivially, or None.

    Lifts of a generating set of G/A are tried exhaustively; a lift whose
    order differs from the order of its image in G/A is skipped because it
    cannot lie in a complement.
    """
    if not is_normal(G, A):
        raise NotNormalError("A is not normal in G")
    target = G.order // A.order
    if target == 1:
        return trivial_group()
    gens = quotient_generators(G, A)
    if len(gens) > max_generators:
        raise ValueError(f"G/A needs {len(gens)} generators here, more than {max_generators}")
    a_codes = np.concatenate([[IDENTITY_CODE], A.elements[A.elements != IDENTITY_CODE]])
    lift_options = []
    for g in gens:
        image_order = 1
        power = g
        while power not in A:
            power = compose(power, g)
            image_order += 1
        lifts = kernels.compose(g.code, a_codes)
        lifts = lifts[element_orders(lifts) == image_order]
        lift_options.append([SignedPerm.from_code(int(c)) for c in lifts])
    for combo in itertools.product(*lift_options):
        C = closure(list(combo), limit=target)
        if C is not None and C.order == target and _intersection_order(C, A) == 1:
            return C
    return None


@dataclass(frozen=True)
class GroupFingerprint:
    order: int
    class_sizes: tuple[int, ...]
    order_histogram: tuple[tuple[int, int], ...]
    derived_order: int
    center_order: int

    @property
    def class_count(self) -> int:
        return len(self.class_sizes)


def fingerprint(G: Group) -> GroupFingerprint:
    histogram = Counter(element_orders(G.elements).tolist())
    return GroupFingerprint(
        order=G.order,
        class_sizes=tuple(sorted(G.classes.sizes)),
        order_histogram=tuple(sorted(histogram.items())),
        derived_order=derived_subgroup(G).order,
        center_order=center(G).order,
    )


def is_simple(G: Group) -> bool:
    """True iff no proper nontrivial normal subgroup exists.

    The trivial group counts as simple here; callers flag it as degenerate.
    """
    if G.order == 1:
        return True
    for rep in G.classes.representatives:
        rep = int(rep)
        if rep == IDENTITY_CODE:
            continue
        if normal_closure(G, [SignedPerm.from_code(rep)]).order != G.order:
            return False
    return True


@lru_cache(maxsize=1)
def _text_tables() -> tuple[dict[int, str], dict[int, str], dict[str, int], dict[str, int]]:
    perm_text = {}
    for p in itertools.permutations(range(7)):
        perm_text[SignedPerm(p).code >> 7] = "p=[{}]".format(",".join(map(str, p)))
    sign_text = {v: vec_text(v) for v in range(128)}
    return perm_text, sign_text, {t: f for f, t in perm_text.items()}, {t: v for v, t in sign_text.items()}


def elements_to_text(codes: np.ndarray) -> list[str]:
    perm_text, sign_text, _, _ = _text_tables()
    return [f"{perm_text[c >> 7]};s={sign_text[c & 127]}" for c in np.asarray(codes).tolist()]


def elements_from_text(lines: Sequence[str]) -> np.ndarray:
    _, _, perm_field, sign_bits = _text_tables()
    out = np.empty(len(lines), dtype=np.int64)
    for k, line in enumerate(lines):
        head, _, tail = line.strip().partition(";s=")
        try:
            out[k] = (perm_field[head] << 7) | sign_bits[tail]
        except KeyError:
            out[k] = SignedPerm.from_text(line).code  # raises with a precise message
    return out


class CacheError(ValueError):
    pass


def save_group(G: Group, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [CACHE_HEADER, *elements_to_text(G.elements), f"order={G.order}"]
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text("\n".join(lines) + "\n")
    tmp.replace(path)


def load_group(path: str | Path, start: Sequence[SignedPerm] = ()) -> Group:
    """Read a cache file and re-derive the group from scratch.

    The stored element set must equal the closure of a generating set drawn
    from it (beginning with ``start``), and the order line must match.
    """
    lines = Path(path).read_text().splitlines()
    if not lines or lines[0] != CACHE_HEADER:
        raise CacheError(f"{path}: bad header")
    if not lines[-1].startswith("order="):
        raise CacheError(f"{path}: missing order line")
    try:
        stated = int(lines[-1][len("order=") :])
        codes = np.sort(elements_from_text(lines[1:-1]))
    except ValueError as exc:
        raise CacheError(f"{path}: {exc}") from exc
    if codes.size != stated or np.unique(codes).size != codes.size:
        raise CacheError(f"{path}: element count does not match order line")
    if not all(codes[np.searchsorted(codes, g.code) % codes.size] == g.code for g in start):
        raise CacheError(f"{path}: expected generators missing")
    try:
        return group_from_elements(codes, start=start)
    except ValueError as exc:
        raise CacheError(f"{path}: stored elements are not closed") from exc
