"""Clifford algebras Cl(p,q,r) over exact Gaussian rationals.

Basis blades are bitmasks over the generator set: bit i-1 set means the
blade contains generator e^i, and blades are always kept in ascending
generator order.  The first p generators square to +1, the next q to -1,
and the last r to 0 (Grassmann directions).

The algebra carries a scalar backend: "exact" (Gaussian rationals, the
default) or "float" (complex doubles, used when embedding numerical
solver output back into the algebra).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .scalars import QQi, as_scalar

MAX_GENERATORS = 16


class AlgebraMismatchError(ValueError):
    """Raised when operands belong to different algebras."""


@dataclass(frozen=True)
class Algebra:
    """Signature (p, q, r) plus scalar field and backend selection."""

    p: int
    q: int
    r: int = 0
    field: str = "R"
    backend: str = "exact"

    def __post_init__(self):
        if min(self.p, self.q, self.r) < 0:
            raise ValueError("signature counts must be nonnegative")
        if self.n > MAX_GENERATORS:
            raise ValueError(f"at most {MAX_GENERATORS} generators supported")
        if self.field not in ("R", "C"):
            raise ValueError("field must be 'R' or 'C'")
        if self.backend not in ("exact", "float"):
            raise ValueError("backend must be 'exact' or 'float'")

    @property
    def n(self) -> int:
        return self.p + self.q + self.r

    @property
    def is_degenerate(self) -> bool:
        return self.r > 0

    def generator_square(self, index: int) -> int:
        """Square of generator e^index (1-based): +1, -1 or 0."""
        if not 1 <= index <= self.n:
            raise ValueError(f"generator index {index} out of range 1..{self.n}")
        if index <= self.p:
            return 1
        if index <= self.p + self.q:
            return -1
        return 0

    @property
    def squares(self) -> tuple[int, ...]:
        return tuple(self.generator_square(i) for i in range(1, self.n + 1))

    # -- scalar handling --------------------------------------------------

    def coerce(self, value):
        """Coerce a raw value into this algebra's scalar type."""
        if self.backend == "exact":
            if isinstance(value, complex):
                raise TypeError("complex floats are not exact; use the float backend")
            s = as_scalar(value)
            if self.field == "R" and s.im != 0:
                raise ValueError("imaginary coefficient in a real algebra")
            return s
        if isinstance(value, QQi):
            return value.to_complex()
        return complex(value)

    # -- element constructors ---------------------------------------------

    def zero(self) -> "Multivector":
        return Multivector(self, {})

    def scalar(self, value) -> "Multivector":
        return Multivector(self, {0: value})

    def one(self) -> "Multivector":
        return self.scalar(1)

    def gen(self, index: int) -> "Multivector":
        """Generator e^index as a multivector (1-based)."""
        if not 1 <= index <= self.n:
            raise ValueError(f"generator index {index} out of range 1..{self.n}")
        return Multivector(self, {1 << (index - 1): 1})

    def blade(self, indices: Iterable[int]) -> "Multivector":
        """Basis blade e^{i1...ik} for strictly increasing indices."""
        return Multivector(self, {mask_from_indices(indices, self.n): 1})

    def mv(self, components: Mapping[int, object]) -> "Multivector":
        return Multivector(self, dict(components))

    def to_float(self) -> "Algebra":
        return Algebra(self.p, self.q, self.r, "C", "float")


# -- blade utilities -------------------------------------------------------


def grade(mask: int) -> int:
    return mask.bit_count()


def blade_indices(mask: int) -> tuple[int, ...]:
    """1-based generator indices of a blade mask, ascending."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def mask_from_indices(indices: Iterable[int], n: int) -> int:
    mask = 0
    prev = 0
    for i in indices:
        if not 1 <= i <= n:
            raise ValueError(f"generator index {i} out of range 1..{n}")
        if i <= prev:
            raise ValueError("blade indices must be strictly increasing")
        mask |= 1 << (i - 1)
        prev = i
    return mask


def blade_product(mask_a: int, mask_b: int, squares: Sequence[int]) -> tuple[int, int]:
    """Product of two basis blades: (result mask, sign in {-1, 0, +1}).

    The sign counts the transpositions needed to merge the two ascending
    index lists (popcount-prefix method), then folds in the squares of the
    repeated generators; a repeated degenerate generator kills the term.
    """
    swaps = 0
    a = mask_a >> 1
    while a:
        swaps += (a & mask_b).bit_count()
        a >>= 1
    sign = -1 if swaps & 1 else 1
    common = mask_a & mask_b
    while common:
        low = common & -common
        s = squares[low.bit_length() - 1]
        if s == 0:
            return 0, 0
        sign *= s
        common ^= low
    return mask_a ^ mask_b, sign


class Multivector:
    """Sparse blade -> coefficient map over one algebra.

    Treated as an immutable value; all operations return new instances.
    """

    __slots__ = ("algebra", "_c")

    def __init__(self, algebra: Algebra, components: Mapping[int, object]):
        c = {}
        coerce = algebra.coerce
        for mask, value in components.items():
            if not 0 <= mask < (1 << algebra.n):
                raise ValueError(f"blade mask {mask} invalid for n={algebra.n}")
            v = coerce(value)
            if v:
                c[mask] = v
        self.algebra = algebra
        self._c = c

    # -- inspection -------------------------------------------------------

    def components(self) -> dict[int, object]:
        return dict(self._c)

    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self._c))

    def coefficient(self, mask: int):
        return self._c.get(mask, self.algebra.coerce(0))

    def coefficients(self):
        return list(self._c.values())

    def is_zero(self) -> bool:
        return not self._c

    def scalar_part(self):
        """Coefficient of the identity blade."""
        return self._c.get(0, self.algebra.coerce(0))

    def grade_project(self, k: int) -> "Multivector":
        if not 0 <= k <= self.algebra.n:
            raise ValueError(f"grade {k} out of range 0..{self.algebra.n}")
        return Multivector(
            self.algebra, {m: v for m, v in self._c.items() if grade(m) == k}
        )

    def grades(self) -> set[int]:
        return {grade(m) for m in self._c}

    def norm2(self):
        """Sum of squared coefficient magnitudes (Fraction or float)."""
        if self.algebra.backend == "exact":
            total = Fraction(0)
            for v in self._c.values():
                total += v.norm2()
            return total
        return sum(abs(v) ** 2 for v in self._c.values())

    def unit(self) -> "Multivector":
        """Multiplicative identity of the ambient algebra."""
        return self.algebra.one()

    def to_float(self) -> "Multivector":
        target = self.algebra.to_float()
        return Multivector(target, {m: v for m, v in self._c.items()})

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "Multivector"):
        if self.algebra != other.algebra:
            raise AlgebraMismatchError(
                f"operands from different algebras: {self.algebra} vs {other.algebra}"
            )

    def __add__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        self._check(other)
        c = dict(self._c)
        for m, v in other._c.items():
            c[m] = (c[m] + v) if m in c else v
        return Multivector(self.algebra, c)

    def __sub__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        self._check(other)
        c = dict(self._c)
        for m, v in other._c.items():
            c[m] = (c[m] - v) if m in c else -v
        return Multivector(self.algebra, c)

    def __neg__(self):
        return Multivector(self.algebra, {m: -v for m, v in self._c.items()})

    def __mul__(self, other):
        if isinstance(other, Multivector):
            self._check(other)
            squares = self.algebra.squares
            acc: dict[int, object] = {}
            for ma, va in self._c.items():
                for mb, vb in other._c.items():
                    mask, sign = blade_product(ma, mb, squares)
                    if sign == 0:
                        continue
                    term = va * vb if sign > 0 else -(va * vb)
                    acc[mask] = (acc[mask] + term) if mask in acc else term
            return Multivector(self.algebra, acc)
        try:
            s = self.algebra.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return Multivector(self.algebra, {m: v * s for m, v in self._c.items()})

    def __rmul__(self, other):
        # scalars commute with everything
        return self.__mul__(other)

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.algebra == other.algebra and self._c == other._c

    def __hash__(self):
        return hash((self.algebra, frozenset(self._c.items())))

    def inverse(self) -> "Multivector":
        """Exact inverse, found by solving S X = 1 in blade coordinates."""
        from . import linalg

        if self.algebra.backend != "exact":
            raise ValueError("exact inversion requires the exact backend")
        n = self.algebra.n
        dim = 1 << n
        squares = self.algebra.squares
        rows = [[QQi(0) for _ in range(dim)] for _ in range(dim)]
        for mb in range(dim):
            for ma, va in self._c.items():
                mask, sign = blade_product(ma, mb, squares)
                if sign == 0:
                    continue
                rows[mask][mb] = rows[mask][mb] + (va if sign > 0 else -va)
        rhs = [QQi(1 if m == 0 else 0) for m in range(dim)]
        try:
            x = linalg.solve(rows, rhs)
        except linalg.InconsistentSystemError:
            raise linalg.SingularMatrixError("multivector is not invertible") from None
        return Multivector(self.algebra, {m: x[m] for m in range(dim) if x[m]})

    def __repr__(self):
        if not self._c:
            return "0"
        terms = []
        for m in sorted(self._c, key=lambda mm: (grade(mm), mm)):
            name = "e" + "".join(str(i) for i in blade_indices(m)) if m else "1"
            terms.append(f"({self._c[m]})*{name}")
        return " + ".join(terms)


# -- products and projections ----------------------------------------------


def geometric_product(u: Multivector, v: Multivector) -> Multivector:
    return u * v


def commutator(u: Multivector, v: Multivector):
    return u * v - v * u


def anticommutator(u: Multivector, v: Multivector):
    return u * v + v * u


def bracket(u, v, kind: str = "commutator"):
    """uv - vu (commutator) or uv + vu (anticommutator)."""
    if kind == "commutator":
        return commutator(u, v)
    if kind == "anticommutator":
        return anticommutator(u, v)
    raise ValueError(f"unknown bracket kind {kind!r}")


def grade_project(u: Multivector, k: int) -> Multivector:
    return u.grade_project(k)


def scalar_part(u: Multivector):
    return u.scalar_part()


# -- distinguished blade sets ------------------------------------------------


def center_basis(alg: Algebra) -> tuple[int, ...]:
    """Blade masks spanning the center: {1} for even n, {1, e^{1..n}} for odd."""
    if alg.is_degenerate:
        raise ValueError("center of a degenerate algebra is not supported")
    if alg.n % 2 == 0:
        return (0,)
    return (0, (1 << alg.n) - 1)


def lie_basis(alg: Algebra) -> tuple[int, ...]:
    """All non-central basis blades; closed under the commutator."""
    central = set(center_basis(alg))
    return tuple(m for m in range(1 << alg.n) if m not in central)


def radical_basis(alg: Algebra) -> tuple[int, ...]:
    """Blades containing at least one degenerate generator (the radical)."""
    if not alg.is_degenerate:
        raise ValueError("non-degenerate algebra has trivial radical")
    degen = ((1 << alg.r) - 1) << (alg.p + alg.q)
    return tuple(m for m in range(1 << alg.n) if m & degen)
