"""Constant solutions of the cubic system [A_mu, [A^mu, A^nu]] = lambda A^nu.

Covers residual evaluation and verification, lambda fitting, the symmetry
transforms (scaling, global conjugation, pseudo-orthogonal frames), the
known solution factories (anticommuting sets, zeroed subsets, commuting
sets, Grassmann sets, the extra n=3 class), structure constants of a Lie
basis, and the n=2 / n=3 solution classifiers.

Components of a candidate may be Multivectors or any other associative
algebra elements with the same operator surface (CMatrix from matrix_rep
qualifies); everything here is written against that shared surface.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg
from .clifford import Algebra, Multivector, commutator, anticommutator
from .scalars import QQi


@dataclass(frozen=True)
class Metric:
    """Diagonal metric with p entries +1 followed by q entries -1."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise ValueError("metric signature counts must be nonnegative")

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def signs(self) -> tuple[int, ...]:
        return (1,) * self.p + (-1,) * self.q

    def sign(self, mu: int) -> int:
        """eta^{mu mu} for 0-based mu; equals eta_{mu mu}."""
        return 1 if mu < self.p else -1


class SolutionCandidate:
    """A covector of algebra elements plus lambda and the theta/kappa tags."""

    __slots__ = ("algebra", "metric", "A", "lam", "theta", "kappa")

    def __init__(
        self,
        metric: Metric,
        A: Sequence,
        lam,
        theta: Optional[int] = None,
        kappa=1,
        algebra: Optional[Algebra] = None,
    ):
        A = tuple(A)
        if len(A) != metric.n:
            raise ValueError(
                f"candidate has {len(A)} components but the metric dimension is {metric.n}"
            )
        if algebra is None and A and isinstance(A[0], Multivector):
            algebra = A[0].algebra
        if algebra is not None:
            for comp in A:
                if isinstance(comp, Multivector) and comp.algebra != algebra:
                    raise ValueError("candidate components live in different algebras")
        elif A:
            # matrix-valued (or other dense) components must share one order
            orders = {getattr(comp, "order", None) for comp in A}
            if len(orders) != 1:
                raise ValueError("candidate components have mismatched orders")
        if theta not in (None, 1, -1):
            raise ValueError("theta must be +1, -1 or None")
        self.metric = metric
        self.A = A
        self.lam = Fraction(lam)
        self.theta = theta
        self.kappa = Fraction(kappa)
        self.algebra = algebra

    def with_components(self, A: Sequence, **overrides) -> "SolutionCandidate":
        kw = dict(
            metric=self.metric,
            A=A,
            lam=self.lam,
            theta=self.theta,
            kappa=self.kappa,
            algebra=self.algebra,
        )
        kw.update(overrides)
        return SolutionCandidate(**kw)

    def __repr__(self):
        return (
            f"SolutionCandidate(n={self.metric.n}, lambda={self.lam}, "
            f"theta={self.theta}, kappa={self.kappa})"
        )


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    max_residual_norm: float


# -- residual and verification ----------------------------------------------


def _raised(c: SolutionCandidate) -> list:
    """A^nu = eta^{nu nu} A_nu."""
    return [c.metric.sign(nu) * c.A[nu] for nu in range(c.metric.n)]


def ymp_residual(c: SolutionCandidate) -> tuple:
    """R^nu = sum_mu eta_{mu mu} [A_mu, [A_mu, A^nu]] - lambda A^nu."""
    n = c.metric.n
    up = _raised(c)
    out = []
    for nu in range(n):
        acc = None
        for mu in range(n):
            term = commutator(c.A[mu], commutator(c.A[mu], up[nu]))
            if c.metric.sign(mu) < 0:
                term = -term
            acc = term if acc is None else acc + term
        acc = acc - c.lam * up[nu]
        out.append(acc)
    return tuple(out)


def _component_norm2(elem):
    total = None
    for v in elem.coefficients():
        sq = v.norm2() if isinstance(v, QQi) else abs(v) ** 2
        total = sq if total is None else total + sq
    return total if total is not None else Fraction(0)


def verify(c: SolutionCandidate, tol: float = 0.0) -> VerifyReport:
    """Check the residual componentwise; tol = 0 means exact equality."""
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    worst = 0.0
    ok = True
    for comp in ymp_residual(c):
        n2 = _component_norm2(comp)
        if tol == 0:
            if n2 != 0:
                ok = False
        elif math.sqrt(float(n2)) > tol:
            ok = False
        worst = max(worst, math.sqrt(float(n2)))
    return VerifyReport(ok=ok, max_residual_norm=worst)


def _inner(u, v) -> Fraction:
    """Real Euclidean inner product on coefficient pairs (re, im)."""
    cu = u.components() if isinstance(u, Multivector) else None
    if cu is not None:
        cv = v.components()
        total = Fraction(0)
        for m, a in cu.items():
            b = cv.get(m)
            if b is not None:
                total += a.re * b.re + a.im * b.im
        return total
    # generic fallback: paired coefficient lists (dense element types)
    total = Fraction(0)
    for a, b in zip(u.coefficients(), v.coefficients()):
        total += a.re * b.re + a.im * b.im
    return total


def lambda_fit(A: Sequence, metric: Metric) -> tuple[Fraction, float]:
    """Best lambda for the cubic system, plus the residual norm it leaves.

    lambda* = <T, A^> / <A^, A^> where T is the triple-bracket side and the
    inner product is Euclidean on blade coefficients.
    """
    if len(A) != metric.n:
        raise ValueError("component count does not match the metric dimension")
    probe = SolutionCandidate(metric, A, lam=0)
    up = _raised(probe)
    T = ymp_residual(probe)  # lambda = 0, so this is the triple-bracket side
    denom = sum((_inner(a, a) for a in up), Fraction(0))
    if denom == 0:
        raise ValueError("cannot fit lambda to an all-zero covector")
    numer = sum((_inner(t, a) for t, a in zip(T, up)), Fraction(0))
    lam = numer / denom
    res2 = Fraction(0)
    for t, a in zip(T, up):
        diff = t - lam * a
        res2 += _component_norm2(diff)
    return lam, math.sqrt(float(res2))


# -- symmetry transforms ------------------------------------------------------


def scale(c: SolutionCandidate, kappa) -> SolutionCandidate:
    """A -> kappa A, lambda -> kappa^2 lambda."""
    kappa = Fraction(kappa)
    if kappa == 0:
        raise ValueError("scaling constant must be nonzero")
    return c.with_components(
        [kappa * a for a in c.A],
        lam=c.lam * kappa * kappa,
        kappa=c.kappa * kappa,
    )


def conjugate(c: SolutionCandidate, S) -> SolutionCandidate:
    """Global transform A_mu -> S^{-1} A_mu S; lambda is unchanged."""
    S_inv = S.inverse()
    return c.with_components([S_inv * a * S for a in c.A])


@dataclass(frozen=True)
class Frame:
    """Exact pseudo-orthogonal matrix y^mu_a: y^mu_a y^nu_b eta^{ab} = eta^{mu nu}."""

    metric: Metric
    y: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = self.metric.n
        y = tuple(tuple(Fraction(v) for v in row) for row in self.y)
        object.__setattr__(self, "y", y)
        if len(y) != n or any(len(row) != n for row in y):
            raise ValueError("frame matrix must be n x n")
        eta = self.metric.signs
        for mu in range(n):
            for nu in range(n):
                total = sum(eta[a] * y[mu][a] * y[nu][a] for a in range(n))
                expected = eta[mu] if mu == nu else 0
                if total != expected:
                    raise ValueError("frame is not pseudo-orthogonal")


def identity_frame(metric: Metric) -> Frame:
    n = metric.n
    return Frame(metric, tuple(
        tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)
    ))


def _plane_matrix(n: int, i: int, j: int, a: Fraction, b: Fraction, boost: bool):
    rows = [[Fraction(1 if r == c else 0) for c in range(n)] for r in range(n)]
    rows[i][i] = a
    rows[j][j] = a
    if boost:
        rows[i][j] = b
        rows[j][i] = b
    else:
        rows[i][j] = -b
        rows[j][i] = b
    return rows


def rotation_frame(metric: Metric, i: int, j: int, t) -> Frame:
    """Rotation in a plane of equal metric sign, from a rational circle point."""
    t = Fraction(t)
    if i == j:
        raise ValueError("plane needs two distinct axes")
    if metric.sign(i) != metric.sign(j):
        raise ValueError("rotation plane must have equal metric signs")
    c = (1 - t * t) / (1 + t * t)
    s = 2 * t / (1 + t * t)
    return Frame(metric, _plane_matrix(metric.n, i, j, c, s, boost=False))


def boost_frame(metric: Metric, i: int, j: int, t) -> Frame:
    """Boost in a mixed-sign plane, from a rational hyperbola point (|t| != 1)."""
    t = Fraction(t)
    if metric.sign(i) == metric.sign(j):
        raise ValueError("boost plane must mix metric signs")
    if abs(t) == 1:
        raise ValueError("boost parameter must satisfy |t| != 1")
    ch = (1 + t * t) / (1 - t * t)
    sh = 2 * t / (1 - t * t)
    return Frame(metric, _plane_matrix(metric.n, i, j, ch, sh, boost=True))


def compose_frames(a: Frame, b: Frame) -> Frame:
    if a.metric != b.metric:
        raise ValueError("frames over different metrics")
    n = a.metric.n
    rows = tuple(
        tuple(sum(a.y[i][k] * b.y[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )
    return Frame(a.metric, rows)


def random_frame(metric: Metric, rng: random.Random, steps: int = 4) -> Frame:
    """Exact random frame: a product of random plane rotations and boosts."""
    frame = identity_frame(metric)
    n = metric.n
    for _ in range(steps):
        i, j = sorted(rng.sample(range(n), 2))
        t = Fraction(rng.randint(-8, 8), rng.randint(1, 9))
        if metric.sign(i) == metric.sign(j):
            step = rotation_frame(metric, i, j, t)
        else:
            if abs(t) == 1:
                t = t / 2
            step = boost_frame(metric, i, j, t)
        frame = compose_frames(frame, step)
    return frame


# -- anticommuting machinery ---------------------------------------------------


def check_anticommuting_set(gens: Sequence, metric: Metric, theta: int, kappa=1) -> bool:
    """Do the elements satisfy g_mu g_nu + g_nu g_mu = 2 theta kappa^2 eta_{mu nu} 1?"""
    kappa = Fraction(kappa)
    if not gens:
        return False
    one = gens[0].unit()
    for mu in range(metric.n):
        for nu in range(mu, metric.n):
            ac = anticommutator(gens[mu], gens[nu])
            if mu == nu:
                if ac != (2 * theta * kappa * kappa * metric.sign(mu)) * one:
                    return False
            elif not ac.is_zero():
                return False
    return True


def infer_theta(gens: Sequence, metric: Metric, kappa=1) -> int:
    for theta in (1, -1):
        if check_anticommuting_set(gens, metric, theta, kappa):
            return theta
    raise ValueError("elements do not form an anticommuting set for either sign")


# -- factories -----------------------------------------------------------------


def factory_anticommuting(
    alg: Algebra, metric: Metric, theta: int, kappa=1
) -> SolutionCandidate:
    """Generator-based anticommuting solution with lambda = 4 theta (n-1) kappa^2."""
    kappa = Fraction(kappa)
    if kappa == 0:
        raise ValueError("kappa must be nonzero")
    if theta not in (1, -1):
        raise ValueError("theta must be +1 or -1")
    if alg.is_degenerate:
        raise ValueError("anticommuting factory needs a non-degenerate algebra")
    if (alg.p, alg.q) != (metric.p, metric.q):
        raise ValueError("algebra signature must match the metric signature")
    n = metric.n
    if n < 2:
        raise ValueError("need dimension n >= 2")
    if theta == 1:
        comps = [kappa * alg.gen(mu + 1) for mu in range(n)]
    else:
        if alg.field != "C":
            raise ValueError(
                "theta = -1 needs the complex algebra (components i * generators)"
            )
        i_unit = QQi(0, 1)
        comps = [(kappa * i_unit) * alg.gen(mu + 1) for mu in range(n)]
    if not check_anticommuting_set(comps, metric, theta, kappa):
        raise AssertionError("factory output violates the anticommutation relations")
    lam = Fraction(4 * theta * (n - 1)) * kappa * kappa
    return SolutionCandidate(metric, comps, lam, theta=theta, kappa=kappa, algebra=alg)


def admissible_subsignatures(p: int, q: int) -> list[tuple[int, int]]:
    """Sub-signatures (p', q') with p' <= p, q' <= q, p' + q' >= 2.

    These are the dimensions reachable by zeroing components of an
    anticommuting solution over R^{p,q}; for p, q >= 1 there are
    (p+1)(q+1) - 3 of them (only (0,0), (1,0), (0,1) drop out).
    """
    return [
        (pp, qq)
        for pp in range(p + 1)
        for qq in range(q + 1)
        if pp + qq >= 2
    ]


def factory_zero_subset(c: SolutionCandidate, zero_indices: Sequence[int]) -> SolutionCandidate:
    """Zero out 1 <= r <= n-2 components of an anticommuting solution.

    The remaining n' = n - r components still anticommute, so lambda drops
    to 4 theta (n'-1) kappa^2.
    """
    if c.theta is None:
        raise ValueError("zero-subset factory needs an anticommuting candidate")
    zero = sorted(set(zero_indices))
    n = c.metric.n
    if any(not 0 <= i < n for i in zero):
        raise ValueError("zero index out of range")
    r = len(zero)
    n_rem = n - r
    if r < 1 or n_rem < 2:
        raise ValueError("must zero between 1 and n-2 components")
    comps = list(c.A)
    zero_elem = comps[0].unit() * 0 if not isinstance(comps[0], Multivector) else c.algebra.zero()
    for i in zero:
        comps[i] = zero_elem
    lam = Fraction(4 * c.theta * (n_rem - 1)) * c.kappa * c.kappa
    return c.with_components(comps, lam=lam)


def factory_commuting(alg: Algebra, seeds: Sequence[Multivector], metric: Metric) -> SolutionCandidate:
    """Any mutually commuting covector solves the system with lambda = 0."""
    if len(seeds) != metric.n:
        raise ValueError("need one seed per metric dimension")
    for i in range(len(seeds)):
        for j in range(i + 1, len(seeds)):
            if not commutator(seeds[i], seeds[j]).is_zero():
                raise ValueError(f"seeds {i} and {j} do not commute")
    return SolutionCandidate(metric, list(seeds), lam=0, theta=None, algebra=alg)


def grassmann_generators(alg: Algebra, count: int) -> tuple[list[Multivector], list[Multivector]]:
    """Nilpotent pairs theta^k = (e^k + i e^{N+k})/2, pi^k = (e^k - i e^{N+k})/2."""
    if alg.field != "C":
        raise ValueError("Grassmann construction needs the complex algebra")
    if alg.is_degenerate or alg.q != 0:
        raise ValueError("construction is set up over Cl^C(n) = Cl^C(n, 0)")
    if alg.n < 2 * count:
        raise ValueError(f"need n >= 2*count generators, got n={alg.n}, count={count}")
    half = QQi(Fraction(1, 2))
    ihalf = QQi(0, Fraction(1, 2))
    thetas, pis = [], []
    for k in range(1, count + 1):
        a, b = alg.gen(k), alg.gen(count + k)
        thetas.append(half * a + ihalf * b)
        pis.append(half * a - ihalf * b)
    return thetas, pis


def factory_grassmann(alg: Algebra, count: int, metric: Optional[Metric] = None) -> SolutionCandidate:
    """Grassmann covector (theta^1..theta^N, 0, ..., 0): lambda = 0."""
    thetas, _ = grassmann_generators(alg, count)
    if metric is None:
        metric = Metric(alg.p, alg.q)
    if metric.n < count:
        raise ValueError("metric dimension smaller than the Grassmann count")
    comps = thetas + [alg.zero()] * (metric.n - count)
    return SolutionCandidate(metric, comps, lam=0, theta=None, algebra=alg)


def factory_extra_n3(alg: Algebra) -> SolutionCandidate:
    """The extra n=3 class (e^1, e^2, e^1 e^2) with tr(A1 A2 A3) != 0.

    Exists for the real signatures (2,1) and (0,3).  The squares force the
    candidate metric: (2,1) with theta=+1, and the Euclidean metric (3,0)
    with theta=-1 for the (0,3) algebra.
    """
    sig = (alg.p, alg.q)
    if alg.is_degenerate or sig not in ((2, 1), (0, 3)):
        raise ValueError("extra n=3 class exists only for signatures (2,1) and (0,3)")
    comps = [alg.gen(1), alg.gen(2), alg.gen(1) * alg.gen(2)]
    if sig == (2, 1):
        metric, theta = Metric(2, 1), 1
    else:
        metric, theta = Metric(3, 0), -1
    if not check_anticommuting_set(comps, metric, theta):
        raise AssertionError("extra n=3 construction failed the anticommutation check")
    triple = comps[0] * comps[1] * comps[2]
    if not triple.scalar_part():
        raise AssertionError("extra n=3 construction has vanishing triple trace")
    lam = Fraction(4 * theta * 2)
    return SolutionCandidate(metric, comps, lam, theta=theta, kappa=1, algebra=alg)


def apply_frame(frame: Frame, gens: Sequence, kappa=1) -> SolutionCandidate:
    """A^mu = kappa y^mu_a g^a for an anticommuting set g^a; same theta."""
    kappa = Fraction(kappa)
    if kappa == 0:
        raise ValueError("kappa must be nonzero")
    metric = frame.metric
    n = metric.n
    if len(gens) != n:
        raise ValueError("need one generator per dimension")
    theta = infer_theta(gens, metric)
    upper = []
    for mu in range(n):
        acc = None
        for a in range(n):
            coeff = kappa * frame.y[mu][a]
            if coeff == 0:
                continue
            term = coeff * gens[a]
            acc = term if acc is None else acc + term
        if acc is None:
            acc = 0 * gens[0]
        upper.append(acc)
    # store lower components: A_mu = eta_{mu mu} A^mu
    comps = [metric.sign(mu) * upper[mu] for mu in range(n)]
    lam = Fraction(4 * theta * (n - 1)) * kappa * kappa
    algebra = gens[0].algebra if isinstance(gens[0], Multivector) else None
    return SolutionCandidate(metric, comps, lam, theta=theta, kappa=kappa, algebra=algebra)


# -- structure constants --------------------------------------------------------


@dataclass(frozen=True)
class LieBasis:
    """Basis t^r with exact rational structure constants [t^r,t^s] = c^{rs}_l t^l."""

    elements: tuple[Multivector, ...]
    c: tuple[tuple[tuple[Fraction, ...], ...], ...]

    @property
    def N(self) -> int:
        return len(self.elements)

    @property
    def algebra(self) -> Algebra:
        return self.elements[0].algebra

    def coordinates(self, mv: Multivector) -> list[Fraction]:
        """Exact real coordinates of mv in this basis (raises if outside span)."""
        coeffs = _span_solve(self.elements, mv)
        if coeffs is None:
            raise ValueError("element lies outside the span of the basis")
        return coeffs

    def combine(self, coords: Sequence) -> Multivector:
        acc = self.algebra.zero()
        for x, t in zip(coords, self.elements):
            if x:
                acc = acc + Fraction(x) * t
        return acc


def _span_solve(basis: Sequence[Multivector], target: Multivector) -> Optional[list[Fraction]]:
    alg = basis[0].algebra
    dim = 1 << alg.n
    rows = [[QQi(0)] * len(basis) for _ in range(dim)]
    for j, b in enumerate(basis):
        for mask, v in b.components().items():
            rows[mask][j] = v
    rhs = [QQi(0)] * dim
    for mask, v in target.components().items():
        rhs[mask] = v
    try:
        x = linalg.solve(rows, rhs)
    except linalg.InconsistentSystemError:
        return None
    out = []
    for v in x:
        if v.im != 0:
            raise ValueError("structure constants must be real rationals")
        out.append(v.re)
    return out


def structure_constants(basis: Sequence[Multivector]) -> LieBasis:
    """Exact c^{rs}_l for a linearly independent basis closed under brackets."""
    basis = tuple(basis)
    if not basis:
        raise ValueError("empty basis")
    alg = basis[0].algebra
    for b in basis:
        if b.algebra != alg:
            raise ValueError("basis elements live in different algebras")
    dim = 1 << alg.n
    coord_matrix = [[QQi(0)] * len(basis) for _ in range(dim)]
    for j, b in enumerate(basis):
        for mask, v in b.components().items():
            coord_matrix[mask][j] = v
    if linalg.rank(coord_matrix) != len(basis):
        raise ValueError("basis elements are linearly dependent")
    N = len(basis)
    zero_row = tuple(Fraction(0) for _ in range(N))
    c = [[zero_row] * N for _ in range(N)]
    for r in range(N):
        for s in range(r + 1, N):
            br = commutator(basis[r], basis[s])
            coords = _span_solve(basis, br)
            if coords is None:
                raise ValueError(
                    f"bracket of basis elements {r} and {s} leaves the span"
                )
            c[r][s] = tuple(coords)
            c[s][r] = tuple(-x for x in coords)
    return LieBasis(elements=basis, c=tuple(tuple(row) for row in c))


def clifford_lie_basis(alg: Algebra) -> LieBasis:
    """Structure constants of the non-central blade basis of Cl(p,q)."""
    from .clifford import lie_basis as lie_blades

    elements = [Multivector(alg, {m: 1}) for m in lie_blades(alg)]
    return structure_constants(elements)


# -- classifiers ---------------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    label: str
    mu: Optional[QQi] = None


def _central_square_scalar(u: Multivector) -> QQi:
    """Scalar of u assuming u is central (grade-0 only); raises otherwise."""
    if u.grades() - {0}:
        raise ValueError("expected a central (scalar) element")
    return u.scalar_part()


def classify_n2(c: SolutionCandidate) -> Classification:
    """Case split for n=2 candidates over the non-central blade space.

    Returns one of: anticommuting, proportional, zero_component, commuting,
    unknown.  Each label's defining predicate is re-checked before it is
    returned, so a label is never a guess.
    """
    if c.metric.n != 2:
        raise ValueError("classify_n2 needs a two-component candidate")
    if c.algebra is None or c.algebra.n != 2 or c.algebra.is_degenerate:
        raise ValueError("classify_n2 needs components of Cl(p,q) with p+q=2")
    A1, A2 = c.A
    for comp in (A1, A2):
        if 0 in comp.grades():
            raise ValueError("components must lie outside the center")
    if A1.is_zero() or A2.is_zero():
        return Classification("zero_component")
    eta = c.metric.signs
    U1, U2 = eta[0] * A1, eta[1] * A2
    anti = anticommutator(U1, U2)
    sq1 = _central_square_scalar(U1 * U1)
    sq2 = _central_square_scalar(U2 * U2)
    lam = QQi(c.lam)
    quarter = QQi(Fraction(1, 4))
    if anti.is_zero():
        if sq1 == lam * quarter * eta[0] and sq2 == lam * quarter * eta[1]:
            return Classification("anticommuting")
        return Classification("unknown")
    anti_scalar = _central_square_scalar(anti)
    if sq2:
        mu = anti_scalar / (2 * sq2)
        if A1 == mu * A2:
            return Classification("proportional", mu=mu)
    if sq1:
        mu_rev = anti_scalar / (2 * sq1)
        if mu_rev and A2 == mu_rev * A1:
            return Classification("proportional", mu=QQi(1) / mu_rev)
    if commutator(A1, A2).is_zero():
        return Classification("commuting")
    return Classification("unknown")


def classify_n3(c: SolutionCandidate) -> Classification:
    """Predicate checker over the named n=3 classes (not a full decomposition)."""
    if c.metric.n != 3:
        raise ValueError("classify_n3 needs a three-component candidate")
    eta = c.metric.signs
    up = _raised(c)
    one = c.A[0].unit()
    lam8 = QQi(c.lam / 8)

    def pairwise_anticommute(elems):
        return all(
            anticommutator(elems[i], elems[j]).is_zero()
            for i in range(len(elems))
            for j in range(i + 1, len(elems))
        )

    # anticommuting: eta_{ii} (A^i)^2 = lambda/8 and pairwise anticommutation
    if all(not a.is_zero() for a in c.A):
        squares_ok = all(
            eta[i] * (up[i] * up[i]) == lam8 * one for i in range(3)
        )
        if squares_ok and pairwise_anticommute(c.A):
            return Classification("anticommuting")
    # one component zero, the rest a dimension-2 anticommuting pair
    zero_idx = [i for i in range(3) if c.A[i].is_zero()]
    if len(zero_idx) == 1:
        rest = [i for i in range(3) if i not in zero_idx]
        lam4 = QQi(c.lam / 4)
        pair_ok = anticommutator(c.A[rest[0]], c.A[rest[1]]).is_zero() and all(
            eta[i] * (up[i] * up[i]) == lam4 * one for i in rest
        )
        if pair_ok:
            return Classification("zero_component")
    if len(zero_idx) >= 2:
        return Classification("zero_component")
    # proportional: all components rational multiples of one nonzero component
    base = next((a for a in c.A if not a.is_zero()), None)
    if base is not None:
        coords = None
        try:
            lb = structure_constants([base])
            coords = [lb.coordinates(a) for a in c.A]
        except ValueError:
            coords = None
        if coords is not None:
            return Classification("proportional")
    if all(
        commutator(c.A[i], c.A[j]).is_zero()
        for i in range(3)
        for j in range(i + 1, 3)
    ):
        return Classification("commuting")
    return Classification("unknown")
