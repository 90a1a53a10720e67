"""Concrete matrix realizations of the algebra elements.

Exact complex matrices (CMatrix), the standard Dirac gamma matrices, the
anti-Hermitian Pauli set, su(p,q) membership tests, a faithful tensor-ladder
representation of complex Clifford algebras, the homomorphism embedding a
degenerate algebra into a non-degenerate one, and the nilpotent 4x4 example
pair.

CMatrix deliberately shares the operator surface of Multivector (product,
sum, unit, is_zero, coefficients, inverse), so candidates built from
matrices flow through lie_ymp unchanged.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from . import linalg
from .clifford import Algebra, Multivector, blade_indices
from .scalars import QQi, as_scalar


class CMatrix:
    """Square matrix with exact Gaussian-rational entries."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        r = tuple(tuple(as_scalar(x) for x in row) for row in rows)
        d = len(r)
        if any(len(row) != d for row in r):
            raise ValueError("matrix must be square")
        self.rows = r

    @property
    def order(self) -> int:
        return len(self.rows)

    @classmethod
    def zeros(cls, d: int) -> "CMatrix":
        return cls([[0] * d for _ in range(d)])

    @classmethod
    def identity(cls, d: int) -> "CMatrix":
        return cls([[1 if i == j else 0 for j in range(d)] for i in range(d)])

    def unit(self) -> "CMatrix":
        return CMatrix.identity(self.order)

    def __add__(self, other):
        if not isinstance(other, CMatrix):
            return NotImplemented
        self._check(other)
        return CMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __sub__(self, other):
        if not isinstance(other, CMatrix):
            return NotImplemented
        self._check(other)
        return CMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __neg__(self):
        return CMatrix([[-a for a in row] for row in self.rows])

    def __mul__(self, other):
        if isinstance(other, CMatrix):
            self._check(other)
            cols = list(zip(*other.rows))
            return CMatrix(
                [
                    [
                        sum((a * b for a, b in zip(row, col)), QQi(0))
                        for col in cols
                    ]
                    for row in self.rows
                ]
            )
        try:
            s = as_scalar(other)
        except TypeError:
            return NotImplemented
        return CMatrix([[a * s for a in row] for row in self.rows])

    def __rmul__(self, other):
        return self.__mul__(other)

    def __eq__(self, other):
        if not isinstance(other, CMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def _check(self, other: "CMatrix"):
        if self.order != other.order:
            raise ValueError(f"matrix orders differ: {self.order} vs {other.order}")

    def dagger(self) -> "CMatrix":
        """Conjugate transpose."""
        d = self.order
        return CMatrix(
            [[self.rows[j][i].conjugate() for j in range(d)] for i in range(d)]
        )

    def trace(self) -> QQi:
        return sum((self.rows[i][i] for i in range(self.order)), QQi(0))

    def is_zero(self) -> bool:
        return all(not a for row in self.rows for a in row)

    def coefficients(self) -> list[QQi]:
        """Dense row-major entry list (aligned across equal orders)."""
        return [a for row in self.rows for a in row]

    def norm2(self) -> Fraction:
        total = Fraction(0)
        for row in self.rows:
            for a in row:
                total += a.norm2()
        return total

    def inverse(self) -> "CMatrix":
        return CMatrix(linalg.invert([list(row) for row in self.rows]))

    def power(self, k: int) -> "CMatrix":
        acc = CMatrix.identity(self.order)
        for _ in range(k):
            acc = acc * self
        return acc

    def __repr__(self):
        body = "; ".join(
            "[" + ", ".join(str(a) for a in row) + "]" for row in self.rows
        )
        return f"CMatrix({body})"


def kron(a: CMatrix, b: CMatrix) -> CMatrix:
    db = b.order
    d = a.order * db
    rows = [[QQi(0)] * d for _ in range(d)]
    for i, arow in enumerate(a.rows):
        for j, av in enumerate(arow):
            if not av:
                continue
            for k, brow in enumerate(b.rows):
                for l, bv in enumerate(brow):
                    if bv:
                        rows[i * db + k][j * db + l] = av * bv
    return CMatrix(rows)


_i = QQi(0, 1)

PAULI_X = CMatrix([[0, 1], [1, 0]])
PAULI_Y = CMatrix([[0, -_i], [_i, 0]])
PAULI_Z = CMatrix([[1, 0], [0, -1]])


def dirac_gammas() -> tuple[CMatrix, CMatrix, CMatrix, CMatrix]:
    """The four gamma matrices in the Dirac representation (gamma^0 diagonal)."""
    g0 = CMatrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]])
    g1 = CMatrix([[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]])
    g2 = CMatrix([[0, 0, 0, -_i], [0, 0, _i, 0], [0, _i, 0, 0], [-_i, 0, 0, 0]])
    g3 = CMatrix([[0, 0, 1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, 1, 0, 0]])
    return g0, g1, g2, g3


def pauli_taus() -> tuple[CMatrix, CMatrix, CMatrix]:
    """Pauli matrices times i: anti-Hermitian, traceless, squaring to -1."""
    return _i * PAULI_X, _i * PAULI_Y, _i * PAULI_Z


def su_membership(s: CMatrix, beta: Optional[CMatrix] = None) -> bool:
    """Is s in su(p,q) w.r.t. beta: beta s^dagger beta = -s and tr s = 0?

    beta defaults to the identity (plain su(d)); it must be diagonal with
    entries +-1.
    """
    d = s.order
    if beta is None:
        beta = CMatrix.identity(d)
    if beta.order != d:
        raise ValueError("beta order does not match")
    for i in range(d):
        for j in range(d):
            v = beta.rows[i][j]
            if i == j:
                if v != QQi(1) and v != QQi(-1):
                    raise ValueError("beta must be diagonal with entries +-1")
            elif v:
                raise ValueError("beta must be diagonal")
    return beta * s.dagger() * beta == -s and not s.trace()


class Representation:
    """Generator images of a complex Clifford algebra in order 2^ceil(n/2).

    Built from the tensor ladder Z x ... x Z x {X, Y} x 1 x ... x 1, with a
    factor i on images of generators that square to -1.  The defining
    relations hold exactly and for even n the image of the full blade basis
    is linearly independent (onto Mat(2^{n/2})).  For odd n the map is not
    onto; this particular ladder still keeps the blade images independent
    (2^n <= 2^{n+1}), which is more than is promised.
    """

    def __init__(self, algebra: Algebra, images: Sequence[CMatrix]):
        self.algebra = algebra
        self.images = tuple(images)
        self.order = self.images[0].order if self.images else 1
        self._blade_cache: dict[int, CMatrix] = {0: CMatrix.identity(self.order)}

    def blade_image(self, mask: int) -> CMatrix:
        cached = self._blade_cache.get(mask)
        if cached is not None:
            return cached
        acc = CMatrix.identity(self.order)
        for idx in blade_indices(mask):
            acc = acc * self.images[idx - 1]
        self._blade_cache[mask] = acc
        return acc

    def apply(self, mv: Multivector) -> CMatrix:
        if mv.algebra != self.algebra:
            raise ValueError("multivector from a different algebra")
        acc = CMatrix.zeros(self.order)
        for mask, v in mv.components().items():
            acc = acc + v * self.blade_image(mask)
        return acc

    def is_faithful(self) -> bool:
        """Exact rank test: are all 2^n blade images linearly independent?"""
        dim = 1 << self.algebra.n
        rows = []
        for mask in range(dim):
            rows.append(self.blade_image(mask).coefficients())
        return linalg.rank(rows) == dim


def faithful_rep(alg: Algebra) -> Representation:
    """Tensor-ladder representation of Cl^C(p,q), r = 0, n <= 8."""
    if alg.field != "C":
        raise ValueError("matrix representation is set up for complex algebras")
    if alg.is_degenerate:
        raise ValueError("degenerate algebras embed via embed_degenerate first")
    n = alg.n
    if n > 8:
        raise ValueError("representation supported up to n = 8")
    m = (n + 1) // 2
    images = []
    for a in range(1, n + 1):
        j = (a + 1) // 2  # ladder position
        head = PAULI_X if a % 2 == 1 else PAULI_Y
        mat = None
        for pos in range(1, m + 1):
            if pos < j:
                factor = PAULI_Z
            elif pos == j:
                factor = head
            else:
                factor = CMatrix.identity(2)
            mat = factor if mat is None else kron(mat, factor)
        if alg.generator_square(a) == -1:
            mat = _i * mat
        images.append(mat)
    return Representation(alg, images)


class DegenerateEmbedding:
    """Algebra map psi: Cl^C(p,q,r) -> Cl^C(p+r, q+r).

    Positive and negative generators map to themselves; each degenerate
    generator maps to the sum of a fresh +1 and a fresh -1 generator, which
    squares to zero.  Extending along blade products gives an injective
    algebra homomorphism.
    """

    def __init__(self, source: Algebra):
        if source.field != "C":
            raise ValueError("embedding is set up for complex algebras")
        if source.r == 0:
            raise ValueError("source algebra is already non-degenerate")
        target = Algebra(source.p + source.r, source.q + source.r, 0, "C", source.backend)
        self.source = source
        self.target = target
        images = []
        p, q, r = source.p, source.q, source.r
        for a in range(1, source.n + 1):
            if a <= p:
                images.append(target.gen(a))
            elif a <= p + q:
                images.append(target.gen(p + r + (a - p)))
            else:
                m = a - p - q
                images.append(target.gen(p + m) + target.gen(p + r + q + m))
        self.images = tuple(images)
        self._blade_cache: dict[int, Multivector] = {0: target.one()}

    def blade_image(self, mask: int) -> Multivector:
        cached = self._blade_cache.get(mask)
        if cached is not None:
            return cached
        acc = self.target.one()
        for idx in blade_indices(mask):
            acc = acc * self.images[idx - 1]
        self._blade_cache[mask] = acc
        return acc

    def apply(self, mv: Multivector) -> Multivector:
        if mv.algebra != self.source:
            raise ValueError("multivector from a different algebra")
        acc = self.target.zero()
        for mask, v in mv.components().items():
            acc = acc + v * self.blade_image(mask)
        return acc


def embed_degenerate(source: Algebra) -> DegenerateEmbedding:
    return DegenerateEmbedding(source)


def grassmann_example_matrices() -> tuple[CMatrix, CMatrix]:
    """The nilpotent anticommuting 4x4 pair (A1^2 = A2^2 = 0, A1 A2 = -A2 A1)."""
    a1 = CMatrix([[0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0]])
    a2 = CMatrix([[0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0], [0, -1, 0, 0]])
    return a1, a2
