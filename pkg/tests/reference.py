"""Independent reference implementations used as test oracles.

Everything here is deliberately naive and shares no code path with the
package: blade products are computed by explicit adjacent transpositions
on index lists, not by bitmask popcount tricks.
"""

from __future__ import annotations

import random
from fractions import Fraction

from ymproca.clifford import Algebra, Multivector
from ymproca.scalars import QQi


def blade_product_reference(indices_a, indices_b, squares):
    """Multiply basis blades given as ascending index tuples.

    Returns (sign, result_indices); sign is 0 when a degenerate generator
    repeats.  Sign comes from bubble-sorting the concatenation with a flip
    per adjacent swap, then contracting adjacent equal generators.
    """
    seq = list(indices_a) + list(indices_b)
    sign = 1
    changed = True
    while changed:
        changed = False
        for i in range(len(seq) - 1):
            if seq[i] > seq[i + 1]:
                seq[i], seq[i + 1] = seq[i + 1], seq[i]
                sign = -sign
                changed = True
    out = []
    i = 0
    while i < len(seq):
        if i + 1 < len(seq) and seq[i] == seq[i + 1]:
            square = squares[seq[i] - 1]
            if square == 0:
                return 0, ()
            sign *= square
            i += 2
        else:
            out.append(seq[i])
            i += 1
    return sign, tuple(out)


def multiply_reference(u: Multivector, v: Multivector) -> Multivector:
    """Geometric product through the transposition-count oracle."""
    from ymproca.clifford import blade_indices, mask_from_indices

    alg = u.algebra
    acc: dict[int, QQi] = {}
    for ma, ca in u.components().items():
        for mb, cb in v.components().items():
            sign, idx = blade_product_reference(
                blade_indices(ma), blade_indices(mb), alg.squares
            )
            if sign == 0:
                continue
            mask = mask_from_indices(idx, alg.n)
            term = sign * ca * cb
            acc[mask] = acc.get(mask, QQi(0)) + term
    return Multivector(alg, acc)


def random_multivector(
    alg: Algebra,
    rng: random.Random,
    terms: int = 4,
    span: int = 3,
    complex_parts: bool = None,
) -> Multivector:
    if complex_parts is None:
        complex_parts = alg.field == "C"
    comps = {}
    for _ in range(terms):
        mask = rng.randrange(1 << alg.n)
        re = Fraction(rng.randint(-span, span), rng.randint(1, span))
        im = Fraction(rng.randint(-span, span), rng.randint(1, span)) if complex_parts else 0
        comps[mask] = comps.get(mask, QQi(0)) + QQi(re, im)
    return Multivector(alg, comps)


def signatures_up_to(max_n: int, min_n: int = 1):
    for n in range(min_n, max_n + 1):
        for p in range(n + 1):
            yield p, n - p
