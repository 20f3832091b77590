"""Degree-7 signed permutation matrices and binary codes of length 7.

An element is packed into one integer word::

    bits 0..6    sign bits, bit i set means the entry in source column i is -1
    bits 7..27   image of coordinate i in bits 7+3i .. 9+3i

The represented matrix M has ``M[perm[i]][i] = (-1)**signs[i]`` and zeros
elsewhere, so ``M e_i = +-e_{perm[i]}`` and composition is matrix product.
"""

from __future__ import annotations

import itertools
import re
from typing import Iterable, Iterator, Sequence

DEGREE = 7
SIGN_MASK = (1 << DEGREE) - 1
PERM_SHIFT = DEGREE
ALL_ONES = SIGN_MASK

_TEXT_RE = re.compile(r"^p=\[(\d(?:,\d){6})\];s=([01]{7})$")


def pack(perm: Sequence[int], signs: int = 0) -> int:
    field = 0
    for i, p in enumerate(perm):
        field |= p << (3 * i)
    return (field << PERM_SHIFT) | (signs & SIGN_MASK)


def unpack_perm(code: int) -> tuple[int, ...]:
    field = code >> PERM_SHIFT
    return tuple((field >> (3 * i)) & 7 for i in range(DEGREE))


IDENTITY_CODE = pack(range(DEGREE))


class SignedPerm:
    """An immutable signed permutation matrix of degree 7.

    Equality, hashing and ordering all go through the packed word, so two
    elements compare equal exactly when their matrices do.
    """

    __slots__ = ("code",)

    def __init__(self, perm: Sequence[int] = tuple(range(DEGREE)), signs: int | Sequence[int] = 0):
        perm = tuple(int(p) for p in perm)
        if len(perm) != DEGREE or sorted(perm) != list(range(DEGREE)):
            raise ValueError(f"not a permutation of 0..6: {perm!r}")
        if not isinstance(signs, int):
            signs = vec_from_bits(signs)
        if not 0 <= signs <= SIGN_MASK:
            raise ValueError(f"sign vector out of range: {signs}")
        object.__setattr__(self, "code", pack(perm, signs))

    def __setattr__(self, name, value):
        raise AttributeError("SignedPerm is immutable")

    @classmethod
    def from_code(cls, code: int) -> "SignedPerm":
        obj = object.__new__(cls)
        object.__setattr__(obj, "code", int(code))
        return obj

    @classmethod
    def identity(cls) -> "SignedPerm":
        return cls.from_code(IDENTITY_CODE)

    @classmethod
    def diag(cls, v: int) -> "SignedPerm":
        return cls.from_code(IDENTITY_CODE | (v & SIGN_MASK))

    @classmethod
    def neg_identity(cls) -> "SignedPerm":
        return cls.diag(ALL_ONES)

    @classmethod
    def from_matrix(cls, m: Sequence[Sequence[int]]) -> "SignedPerm":
        if len(m) != DEGREE or any(len(row) != DEGREE for row in m):
            raise ValueError("expected a 7x7 matrix")
        perm = [-1] * DEGREE
        signs = 0
        for i in range(DEGREE):
            hits = [r for r in range(DEGREE) if m[r][i] != 0]
            if len(hits) != 1 or m[hits[0]][i] not in (1, -1):
                raise ValueError(f"column {i} is not a signed unit vector")
            perm[i] = hits[0]
            if m[hits[0]][i] == -1:
                signs |= 1 << i
        return cls(perm, signs)

    @classmethod
    def from_text(cls, text: str) -> "SignedPerm":
        match = _TEXT_RE.match(text.strip())
        if match is None:
            raise ValueError(f"malformed element text: {text!r}")
        perm = [int(x) for x in match.group(1).split(",")]
        return cls(perm, vec_from_text(match.group(2)))

    @property
    def perm(self) -> tuple[int, ...]:
        return unpack_perm(self.code)

    @property
    def signs(self) -> int:
        return self.code & SIGN_MASK

    def __mul__(self, other: "SignedPerm") -> "SignedPerm":
        return compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, SignedPerm):
            return NotImplemented
        return self.code == other.code

    def __lt__(self, other: "SignedPerm") -> bool:
        return self.code < other.code

    def __le__(self, other: "SignedPerm") -> bool:
        return self.code <= other.code

    def __hash__(self) -> int:
        return hash(self.code)

    def __repr__(self) -> str:
        return f"SignedPerm({to_text(self)})"

    def __str__(self) -> str:
        return to_text(self)


def compose(a: SignedPerm, b: SignedPerm) -> SignedPerm:
    """Return the element whose matrix is ``to_matrix(a) @ to_matrix(b)``."""
    pa, pb = a.perm, b.perm
    sa, sb = a.signs, b.signs
    perm = [pa[pb[i]] for i in range(DEGREE)]
    signs = 0
    for i in range(DEGREE):
        if ((sb >> i) ^ (sa >> pb[i])) & 1:
            signs |= 1 << i
    return SignedPerm.from_code(pack(perm, signs))


def inverse(g: SignedPerm) -> SignedPerm:
    p, s = g.perm, g.signs
    inv = [0] * DEGREE
    signs = 0
    for i in range(DEGREE):
        inv[p[i]] = i
        if (s >> i) & 1:
            signs |= 1 << p[i]
    return SignedPerm.from_code(pack(inv, signs))


def power(g: SignedPerm, n: int) -> SignedPerm:
    if n < 0:
        g, n = inverse(g), -n
    result = SignedPerm.identity()
    while n:
        if n & 1:
            result = compose(result, g)
        g = compose(g, g)
        n >>= 1
    return result


def perm_sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def det(g: SignedPerm) -> int:
    return perm_sign(g.perm) * (-1 if weight(g.signs) % 2 else 1)


def trace(g: SignedPerm) -> int:
    p, s = g.perm, g.signs
    return sum(-1 if (s >> i) & 1 else 1 for i in range(DEGREE) if p[i] == i)


def element_order(g: SignedPerm) -> int:
    n, x = 1, g
    while x.code != IDENTITY_CODE:
        x = compose(x, g)
        n += 1
    return n


def to_matrix(g: SignedPerm) -> list[list[int]]:
    m = [[0] * DEGREE for _ in range(DEGREE)]
    p, s = g.perm, g.signs
    for i in range(DEGREE):
        m[p[i]][i] = -1 if (s >> i) & 1 else 1
    return m


def matrix_text(g: SignedPerm) -> str:
    return "\n".join(" ".join(str(x) for x in row) for row in to_matrix(g))


def to_text(g: SignedPerm) -> str:
    return "p=[{}];s={}".format(",".join(map(str, g.perm)), vec_text(g.signs))


# GF(2) vectors are plain ints: bit i is coordinate i.

def weight(v: int) -> int:
    return bin(v & SIGN_MASK).count("1")


def dot(u: int, v: int) -> int:
    return weight(u & v) & 1


def vec_text(v: int) -> str:
    return "".join("1" if (v >> i) & 1 else "0" for i in range(DEGREE))


def vec_from_text(text: str) -> int:
    text = text.strip()
    if len(text) != DEGREE or set(text) - {"0", "1"}:
        raise ValueError(f"expected 7 binary digits, got {text!r}")
    return sum(1 << i for i, ch in enumerate(text) if ch == "1")


def vec_from_bits(bits: Iterable[int]) -> int:
    bits = list(bits)
    if len(bits) != DEGREE:
        raise ValueError("expected 7 bits")
    return sum(1 << i for i, b in enumerate(bits) if b)


def permute_vec(perm: Sequence[int], v: int) -> int:
    """Move coordinate i of ``v`` to coordinate ``perm[i]``.

    This is how conjugation by an element with permutation part ``perm``
    acts on diagonal sign vectors.
    """
    out = 0
    for i in range(DEGREE):
        if (v >> i) & 1:
            out |= 1 << perm[i]
    return out


def shift(v: int, k: int = 1) -> int:
    k %= DEGREE
    return ((v << k) | (v >> (DEGREE - k))) & SIGN_MASK


class Gf2Code:
    """A binary linear code of length 7, held as an echelon basis."""

    def __init__(self, vectors: Iterable[int] = ()):
        basis: list[int] = []
        for v in vectors:
            v = _reduce(v & SIGN_MASK, basis)
            if v:
                basis.append(v)
                basis.sort(reverse=True)
        self._pivots = basis
        self.basis = tuple(sorted(basis))

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return 1 << self.dimension

    def __len__(self) -> int:
        return self.size

    def __contains__(self, v: int) -> bool:
        return _reduce(v & SIGN_MASK, self._pivots) == 0

    def __iter__(self) -> Iterator[int]:
        return iter(self.enumerate())

    def __eq__(self, other):
        if not isinstance(other, Gf2Code):
            return NotImplemented
        return self.enumerate() == other.enumerate()

    def __hash__(self) -> int:
        return hash(tuple(self.enumerate()))

    def __repr__(self) -> str:
        return f"Gf2Code(dim={self.dimension}, basis=[{', '.join(vec_text(b) for b in self.basis)}])"

    def enumerate(self) -> list[int]:
        words = {0}
        for b in self.basis:
            words |= {w ^ b for w in words}
        return sorted(words)

    def coset_rep(self, v: int) -> int:
        """Smallest vector (as an integer) in ``v + code``."""
        return min(v ^ w for w in self.enumerate())

    def coset_table(self) -> list[int]:
        return [self.coset_rep(v) for v in range(1 << DEGREE)]

    def dual(self) -> "Gf2Code":
        return Gf2Code(u for u in range(1 << DEGREE) if all(dot(u, b) == 0 for b in self.basis))

    def weights(self) -> list[int]:
        return [weight(w) for w in self.enumerate()]

    def is_shift_invariant(self) -> bool:
        return all(shift(b) in self for b in self.basis)

    def permuted(self, perm: Sequence[int]) -> "Gf2Code":
        return Gf2Code(permute_vec(perm, b) for b in self.basis)


def _reduce(v: int, pivots: list[int]) -> int:
    # pivots sorted descending by leading bit
    for b in pivots:
        v = min(v, v ^ b)
    return v


def cyclic_code(generator: int) -> Gf2Code:
    return Gf2Code(shift(generator, k) for k in range(DEGREE))


def diag(v: int) -> SignedPerm:
    return SignedPerm.diag(v)


def all_perms() -> Iterator[tuple[int, ...]]:
    return itertools.permutations(range(DEGREE))
