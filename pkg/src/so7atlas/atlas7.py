"""The catalog of imprimitive irreducible subgroups of SO(7), made explicit.

Coordinates are indexed by the powers of a primitive element w of GF(8),
w^3 = w + 1: axis i carries the vector w^i of GF(2)^3. Multiplication by w
is then the 7-cycle i -> i+1 and squaring is i -> 2i, so both normalise the
simplex code A8 and the Fano plane with lines {i, i+1, i+3}.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from . import clifford
from .groupkit import (
    Group,
    closure,
    complement_search,
    fingerprint,
    generating_set,
    group_from_elements,
    is_simple,
    subgroups_above,
)
from .signedperm import (
    DEGREE,
    Gf2Code,
    SignedPerm,
    cyclic_code,
    diag,
    perm_sign,
    shift,
    weight,
)

log = logging.getLogger(__name__)

# GF(8) element w^i as a 3-bit vector, for i = 0..6
GF8_POWERS: tuple[int, ...] = tuple(
    itertools.accumulate(range(DEGREE - 1), lambda v, _: ((v << 1) ^ 0b1011) if v & 0b100 else v << 1, initial=1)
)
_LOG = {v: i for i, v in enumerate(GF8_POWERS)}

FANO_LINES = tuple(sorted(frozenset({i, (i + 1) % 7, (i + 3) % 7}) for i in range(DEGREE)))


def build_A8() -> Gf2Code:
    """Words (u . w^i)_i for u in GF(2)^3: the [7,3] simplex code."""
    words = []
    for u in range(1, 8):
        words.append(sum(1 << i for i, v in enumerate(GF8_POWERS) if weight(u & v) & 1))
    return Gf2Code(words)


def build_A64() -> Gf2Code:
    return Gf2Code(3 << i for i in range(DEGREE - 1))


def perm_from_map(f: Callable[[int], int]) -> tuple[int, ...]:
    return tuple(f(i) % DEGREE for i in range(DEGREE))


ALPHA_PERM = perm_from_map(lambda i: i + 1)
BETA_PERM = perm_from_map(lambda i: 2 * i)
NEGATION_PERM = perm_from_map(lambda i: -i)
TRIPLING_PERM = perm_from_map(lambda i: 3 * i)
TRANSPOSITION_PERM = (1, 0, 2, 3, 4, 5, 6)
THREE_CYCLE_PERM = (1, 2, 0, 3, 4, 5, 6)


def alpha() -> SignedPerm:
    return SignedPerm(ALPHA_PERM)


def f21_beta() -> SignedPerm:
    return SignedPerm(BETA_PERM)


def twisted(perm) -> SignedPerm:
    """p -> sgn(p) p: odd permutations are negated so the determinant is +1."""
    return SignedPerm(perm, 0 if perm_sign(perm) == 1 else 0b1111111)


def sign_twisted_lift(perms) -> list[SignedPerm]:
    return [twisted(p.perm if isinstance(p, SignedPerm) else p) for p in perms]


def permutation_group(perms) -> Group:
    return closure([SignedPerm(p) for p in perms])


@lru_cache(maxsize=None)
def symmetric_group() -> Group:
    return permutation_group([ALPHA_PERM, TRANSPOSITION_PERM])


def _gl32_perms() -> list[tuple[int, ...]]:
    perms = set()
    for cols in itertools.product(range(8), repeat=3):
        def apply(v):
            out = 0
            for b in range(3):
                if (v >> b) & 1:
                    out ^= cols[b]
            return out

        images = [apply(v) for v in GF8_POWERS]
        if 0 in images or len(set(images)) != DEGREE:
            continue
        perms.add(tuple(_LOG[v] for v in images))
    return sorted(perms)


@lru_cache(maxsize=None)
def build_gl32() -> Group:
    """GL(3,2) acting on the seven nonzero vectors, as permutation matrices."""
    perms = _gl32_perms()
    codes = np.sort(np.array([SignedPerm(p).code for p in perms], dtype=np.int64))
    return group_from_elements(codes, start=[alpha()])


def gl32_generators() -> list[tuple[int, ...]]:
    return [g.perm for g in build_gl32().generators]


@dataclass(frozen=True)
class ConstructionRecipe:
    id: str
    case: int
    code: str | None  # "A8", "A64" or None
    quotient_generators: tuple[tuple[int, ...], ...]
    lift: str  # "plain", "sign-twisted" or "search"
    quotient_name: str
    order: int

    @property
    def diagonal_code(self) -> Gf2Code | None:
        return {"A8": build_A8, "A64": build_A64}[self.code]() if self.code else None


def _recipes() -> list[ConstructionRecipe]:
    gl = tuple(gl32_generators())
    r = ConstructionRecipe
    return [
        r("case1-psl27", 1, None, (), "search", "PSL(2,7)", 168),
        r("case2-z7", 2, "A8", (ALPHA_PERM,), "plain", "Z7", 8 * 7),
        r("case2-f21", 2, "A8", (ALPHA_PERM, BETA_PERM), "plain", "F21", 8 * 21),
        r("case2-psl32-split", 2, "A8", gl, "plain", "PSL(3,2)", 8 * 168),
        r("case2-psl32-nonsplit", 2, "A8", (), "search", "PSL(3,2)", 8 * 168),
        r("case3-z7", 3, "A64", (ALPHA_PERM,), "sign-twisted", "Z7", 64 * 7),
        r("case3-d14", 3, "A64", (ALPHA_PERM, NEGATION_PERM), "sign-twisted", "D14", 64 * 14),
        r("case3-f21", 3, "A64", (ALPHA_PERM, BETA_PERM), "sign-twisted", "F21", 64 * 21),
        r("case3-f42", 3, "A64", (ALPHA_PERM, TRIPLING_PERM), "sign-twisted", "F42", 64 * 42),
        r("case3-psl32", 3, "A64", gl, "sign-twisted", "PSL(3,2)", 64 * 168),
        r("case3-a7", 3, "A64", (ALPHA_PERM, THREE_CYCLE_PERM), "sign-twisted", "Alt(7)", 64 * 2520),
        r("case3-s7", 3, "A64", (ALPHA_PERM, TRANSPOSITION_PERM), "sign-twisted", "Sym(7)", 64 * 5040),
    ]


RECIPES: dict[str, ConstructionRecipe] = {rec.id: rec for rec in _recipes()}
BASE_IDS: tuple[str, ...] = tuple(RECIPES)
CATALOG: tuple[str, ...] = BASE_IDS + tuple(f"{i}+neg" for i in BASE_IDS)


def parse_id(group_id: str) -> tuple[ConstructionRecipe, bool]:
    base, neg = (group_id[:-4], True) if group_id.endswith("+neg") else (group_id, False)
    if base not in RECIPES:
        raise KeyError(f"unknown group id {group_id!r}")
    return RECIPES[base], neg


def catalog_order(group_id: str) -> int:
    recipe, neg = parse_id(group_id)
    return recipe.order * (2 if neg else 1)


def recipe_generators(recipe: ConstructionRecipe) -> list[SignedPerm]:
    if recipe.lift == "search":
        raise ValueError(f"{recipe.id} is found by search, not built from a recipe")
    gens = [diag(b) for b in recipe.diagonal_code.basis]
    if recipe.lift == "plain":
        gens += [SignedPerm(p) for p in recipe.quotient_generators]
    else:
        gens += sign_twisted_lift(recipe.quotient_generators)
    return gens


class ConstructionError(RuntimeError):
    pass


@lru_cache(maxsize=None)
def named_group(group_id: str) -> Group:
    recipe, neg = parse_id(group_id)
    if neg:
        G = clifford.adjoin_neg_identity(named_group(recipe.id))
    elif recipe.id == "case1-psl27":
        G = search_case1_psl27()
    elif recipe.id == "case2-psl32-nonsplit":
        G = _nonsplit_1344()
    else:
        G = closure(recipe_generators(recipe))
    if G.order != catalog_order(group_id):
        raise ConstructionError(f"{group_id}: built order {G.order}, catalog says {catalog_order(group_id)}")
    return G


def diagonal_group(code: Gf2Code) -> Group:
    return clifford.code_group(code)


@lru_cache(maxsize=None)
def normalizer_of_A8() -> Group:
    """All determinant-one signed permutations normalising A8: 64 * 168."""
    A8 = build_A8()
    perms = [g.perm for g in build_gl32()]
    assert all(A8.permuted(p) == A8 for p in perms)
    even = build_A64().enumerate()
    codes = np.sort(np.array([SignedPerm(p, s).code for p in perms for s in even], dtype=np.int64))
    start = [diag(b) for b in build_A64().basis] + [SignedPerm(p) for p in gl32_generators()]
    N = Group(generating_set(codes, start=start), codes)
    return N


def _diagonal_count(H: Group) -> int:
    return int(((H.elements >> 7) == (SignedPerm.identity().code >> 7)).sum())


@lru_cache(maxsize=None)
def order_1344_candidates() -> tuple[Group, ...]:
    """Subgroups G of the A8-normaliser with |G| = 1344 and G meeting the
    even diagonals exactly in A8, among those containing the plain 7-cycle.

    Every such G contains a conjugate (by an even diagonal) of the plain
    7-cycle, since alpha acts without fixed points on A64.
    """
    N = normalizer_of_A8()
    seed = closure([diag(b) for b in build_A8().basis] + [alpha()])
    found = subgroups_above(N, seed, max_order=1344, keep=lambda H: _diagonal_count(H) == 8)
    return tuple(H for H in found if H.order == 1344)


@lru_cache(maxsize=None)
def search_order_1344() -> tuple[Group, ...]:
    """The order-1344 candidates, one per fingerprint, split one first."""
    A8 = diagonal_group(build_A8())
    reps: dict = {}
    for H in order_1344_candidates():
        reps.setdefault(fingerprint(H), H)
    return tuple(sorted(reps.values(), key=lambda H: complement_search(H, A8) is None))


def _nonsplit_1344() -> Group:
    A8 = diagonal_group(build_A8())
    nonsplit = [H for H in search_order_1344() if complement_search(H, A8) is None]
    if len(nonsplit) != 1:
        raise ConstructionError(f"expected one non-split order-1344 group, found {len(nonsplit)}")
    return nonsplit[0]


@lru_cache(maxsize=None)
def case1_candidates() -> tuple[Group, ...]:
    """Order-168 subgroups of the A8-normaliser meeting the diagonals trivially
    and containing the plain 7-cycle."""
    N = normalizer_of_A8()
    found = subgroups_above(N, closure([alpha()]), max_order=168, keep=lambda H: _diagonal_count(H) == 1)
    return tuple(H for H in found if H.order == 168)


class SearchError(RuntimeError):
    pass


@lru_cache(maxsize=None)
def search_case1_psl27() -> Group:
    for H in case1_candidates():
        if clifford.char_norm(H) == 1 and is_simple(H):
            return H
    raise SearchError("no irreducible simple complement of order 168 found")


@dataclass(frozen=True)
class InvariantCode:
    generator_poly: int  # bit k is the coefficient of x^k
    code: Gf2Code
    fixed_point_free: bool

    @property
    def dimension(self) -> int:
        return self.code.dimension

    @property
    def order(self) -> int:
        return self.code.size


def _poly_divmod(a: int, b: int) -> tuple[int, int]:
    q = 0
    while a and a.bit_length() >= b.bit_length():
        s = a.bit_length() - b.bit_length()
        q |= 1 << s
        a ^= b << s
    return q, a


def _poly_mul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def _is_irreducible(p: int) -> bool:
    return all(_poly_divmod(p, e)[1] for e in range(2, p) if e.bit_length() < p.bit_length())


def factor_x7_minus_1() -> list[int]:
    """Irreducible factors of x^7 - 1 over GF(2), by trial division.

    Polynomials are ints with bit k the coefficient of x^k.
    """
    f = (1 << 7) | 1
    factors = []
    for d in range(2, 1 << 4):
        if not _is_irreducible(d):
            continue
        q, r = _poly_divmod(f, d)
        while r == 0:
            factors.append(d)
            f = q
            q, r = _poly_divmod(f, d)
    if f != 1:
        raise AssertionError("x^7 - 1 did not factor into degree <= 3 pieces")
    return factors


def enumerate_invariant_codes() -> list[InvariantCode]:
    """Nonzero shift-invariant codes of length 7 with only even weights."""
    factors = factor_x7_minus_1()
    out = []
    for mask in range(1 << len(factors)):
        g = 1
        for k, f in enumerate(factors):
            if (mask >> k) & 1:
                g = _poly_mul(g, f)
        code = cyclic_code(g & 0b1111111) if g.bit_length() <= DEGREE else Gf2Code()
        if code.dimension == 0 or any(weight(w) % 2 for w in code.enumerate()):
            continue
        fpf = all(shift(w) != w for w in code.enumerate() if w)
        out.append(InvariantCode(g, code, fpf))
    return sorted(out, key=lambda c: (c.dimension, c.generator_poly))


def preimage_of(quotient_perms) -> Group:
    A64 = build_A64()
    return closure([diag(b) for b in A64.basis] + sign_twisted_lift(quotient_perms))


@lru_cache(maxsize=None)
def sylow7_overgroups() -> tuple[Group, ...]:
    return tuple(subgroups_above(symmetric_group(), permutation_group([ALPHA_PERM])))


def preimages_split(quotient_order: int) -> list[bool]:
    """Split status over A64 of the preimage of every subgroup of Sym(7)
    of the given order containing the 7-cycle."""
    A64 = diagonal_group(build_A64())
    results = []
    for Q in sylow7_overgroups():
        if Q.order != quotient_order:
            continue
        G = preimage_of([g.perm for g in Q.generators])
        assert G.order == 64 * quotient_order
        results.append(complement_search(G, A64) is not None)
    return results


def exclude_nonsplit_64_14() -> bool:
    results = preimages_split(14)
    return bool(results) and all(results)
