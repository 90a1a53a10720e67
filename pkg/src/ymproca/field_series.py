"""x-dependent fields as finite plane-wave sums with algebra-valued weights.

A field is a finite map  k -> (C_1, ..., C_m)  representing
sum_k (C_1, ..., C_m) e^{i k.x}  with exact rational wavevectors k and
multivector coefficients C_i.  Derivatives act in Fourier space
(d_mu -> i k_mu), so every differential identity in this module can be
checked exactly.

Conventions: potential-like fields carry lower components (A_mu, a_mu,
B_mu), current-like results carry upper components (J^nu); indices are
raised with the diagonal metric.

SeriesField is a truncated power series of such fields; arithmetic on it
is degree-wise with Cauchy products, so the generic operators below apply
verbatim to both field types.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .clifford import Algebra, Multivector
from .lie_ymp import Metric, SolutionCandidate, check_anticommuting_set
from .scalars import QQi

WaveVector = tuple[Fraction, ...]


class InconsistentOrderError(ValueError):
    """A linear order-by-order solve left a residual above tolerance."""

    def __init__(self, residual_norm: float, tol: float):
        self.residual_norm = residual_norm
        self.tol = tol
        super().__init__(
            f"order solve is inconsistent: residual {residual_norm:.3e} > tol {tol:.3e}"
        )


def wavevector(values: Sequence, n: Optional[int] = None) -> WaveVector:
    k = tuple(Fraction(v) for v in values)
    if n is not None and len(k) != n:
        raise ValueError(f"wavevector must have {n} components")
    return k


class PlaneWaveField:
    """Finite plane-wave sum with a fixed number of multivector components.

    Immutable value type: every operation returns a new field, so instances
    are safe to share across threads.
    """

    __slots__ = ("algebra", "metric", "ncomp", "waves")

    def __init__(self, algebra: Algebra, metric: Metric, ncomp: int, waves):
        if ncomp < 1:
            raise ValueError("field needs at least one component")
        clean: dict[WaveVector, tuple[Multivector, ...]] = {}
        for k, comps in waves.items():
            k = wavevector(k, metric.n)
            comps = tuple(comps)
            if len(comps) != ncomp:
                raise ValueError(f"wave {k} has {len(comps)} components, expected {ncomp}")
            for c in comps:
                if c.algebra != algebra:
                    raise ValueError("coefficient from a different algebra")
            if any(not c.is_zero() for c in comps):
                clean[k] = comps
        self.algebra = algebra
        self.metric = metric
        self.ncomp = ncomp
        self.waves = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, algebra: Algebra, metric: Metric, ncomp: int) -> "PlaneWaveField":
        return cls(algebra, metric, ncomp, {})

    @classmethod
    def constant(cls, metric: Metric, comps: Sequence[Multivector]) -> "PlaneWaveField":
        comps = tuple(comps)
        alg = comps[0].algebra
        k0 = tuple(Fraction(0) for _ in range(metric.n))
        return cls(alg, metric, len(comps), {k0: comps})

    @classmethod
    def single(cls, metric: Metric, k, comps: Sequence[Multivector]) -> "PlaneWaveField":
        comps = tuple(comps)
        return cls(comps[0].algebra, metric, len(comps), {wavevector(k, metric.n): comps})

    @classmethod
    def stack(cls, fields: Sequence["PlaneWaveField"]) -> "PlaneWaveField":
        """Combine 1-component fields into one multi-component field."""
        first = fields[0]
        zero = first.algebra.zero()
        waves: dict[WaveVector, list] = {}
        for i, f in enumerate(fields):
            if f.ncomp != 1 or f.metric != first.metric or f.algebra != first.algebra:
                raise ValueError("stack expects aligned 1-component fields")
            for k, comps in f.waves.items():
                slot = waves.setdefault(k, [zero] * len(fields))
                slot[i] = comps[0]
        return cls(first.algebra, first.metric, len(fields), {k: tuple(v) for k, v in waves.items()})

    # -- structure -----------------------------------------------------------

    def component(self, i: int) -> "PlaneWaveField":
        if not 0 <= i < self.ncomp:
            raise ValueError(f"component {i} out of range")
        return PlaneWaveField(
            self.algebra,
            self.metric,
            1,
            {k: (comps[i],) for k, comps in self.waves.items()},
        )

    def support(self) -> list[WaveVector]:
        return sorted(self.waves)

    def is_zero(self) -> bool:
        return not self.waves

    def norm(self) -> float:
        total = 0.0
        for comps in self.waves.values():
            for c in comps:
                total += float(c.norm2())
        return math.sqrt(total)

    def to_float(self) -> "PlaneWaveField":
        return PlaneWaveField(
            self.algebra.to_float(),
            self.metric,
            self.ncomp,
            {k: tuple(c.to_float() for c in comps) for k, comps in self.waves.items()},
        )

    def evaluate(self, x: Sequence[float]) -> list[dict[int, complex]]:
        """Numeric value at a point: one blade->complex map per component."""
        out: list[dict[int, complex]] = [{} for _ in range(self.ncomp)]
        for k, comps in self.waves.items():
            kx = sum(float(km) * xm for km, xm in zip(k, x))
            phase = complex(math.cos(kx), math.sin(kx))
            for i, c in enumerate(comps):
                for mask, v in c.components().items():
                    vv = v.to_complex() if isinstance(v, QQi) else complex(v)
                    out[i][mask] = out[i].get(mask, 0j) + vv * phase
        return out

    def is_abelian(self) -> bool:
        """True when every coefficient is a multiple of the identity blade."""
        return all(
            c.grades() <= {0} for comps in self.waves.values() for c in comps
        )

    # -- arithmetic ------------------------------------------------------------

    def _check(self, other: "PlaneWaveField"):
        if self.algebra != other.algebra or self.metric != other.metric:
            raise ValueError("fields over different algebras or metrics")

    def __add__(self, other):
        if not isinstance(other, PlaneWaveField):
            return NotImplemented
        self._check(other)
        if self.ncomp != other.ncomp:
            raise ValueError("component counts differ")
        waves = dict(self.waves)
        for k, comps in other.waves.items():
            if k in waves:
                waves[k] = tuple(a + b for a, b in zip(waves[k], comps))
            else:
                waves[k] = comps
        return PlaneWaveField(self.algebra, self.metric, self.ncomp, waves)

    def __sub__(self, other):
        if not isinstance(other, PlaneWaveField):
            return NotImplemented
        return self + other.scaled(-1)

    def __neg__(self):
        return self.scaled(-1)

    def scaled(self, c) -> "PlaneWaveField":
        return PlaneWaveField(
            self.algebra,
            self.metric,
            self.ncomp,
            {k: tuple(c * comp for comp in comps) for k, comps in self.waves.items()},
        )

    def d(self, mu: int) -> "PlaneWaveField":
        """Partial derivative d_mu: multiply each wave by i k_mu."""
        waves = {}
        for k, comps in self.waves.items():
            if self.algebra.backend == "exact":
                factor = QQi(0, k[mu])
            else:
                factor = 1j * float(k[mu])
            waves[k] = tuple(factor * c for c in comps)
        return PlaneWaveField(self.algebra, self.metric, self.ncomp, waves)

    def __mul__(self, other):
        """Pointwise product: convolution over wavevectors.

        Component counts must match, or one operand must have a single
        component (broadcast).
        """
        if not isinstance(other, PlaneWaveField):
            return NotImplemented
        self._check(other)
        if self.ncomp == other.ncomp:
            pick = lambda ca, cb, i: (ca[i], cb[i])
            ncomp = self.ncomp
        elif self.ncomp == 1:
            pick = lambda ca, cb, i: (ca[0], cb[i])
            ncomp = other.ncomp
        elif other.ncomp == 1:
            pick = lambda ca, cb, i: (ca[i], cb[0])
            ncomp = self.ncomp
        else:
            raise ValueError("component counts are not broadcastable")
        waves: dict[WaveVector, list] = {}
        zero = self.algebra.zero()
        for ka, ca in self.waves.items():
            for kb, cb in other.waves.items():
                k = tuple(a + b for a, b in zip(ka, kb))
                slot = waves.setdefault(k, [zero] * ncomp)
                for i in range(ncomp):
                    u, v = pick(ca, cb, i)
                    slot[i] = slot[i] + u * v
        return PlaneWaveField(
            self.algebra, self.metric, ncomp, {k: tuple(v) for k, v in waves.items()}
        )

    def __eq__(self, other):
        if not isinstance(other, PlaneWaveField):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.metric == other.metric
            and self.ncomp == other.ncomp
            and self.waves == other.waves
        )

    def __repr__(self):
        return f"PlaneWaveField(ncomp={self.ncomp}, waves={len(self.waves)})"


class SeriesField:
    """Truncated power series of plane-wave fields (orders 0..K)."""

    __slots__ = ("orders",)

    def __init__(self, orders: Sequence[PlaneWaveField]):
        orders = tuple(orders)
        if not orders:
            raise ValueError("series needs at least the order-0 entry")
        first = orders[0]
        for o in orders:
            if (o.algebra, o.metric, o.ncomp) != (first.algebra, first.metric, first.ncomp):
                raise ValueError("series orders must share algebra, metric and shape")
        self.orders = orders

    @property
    def algebra(self) -> Algebra:
        return self.orders[0].algebra

    @property
    def metric(self) -> Metric:
        return self.orders[0].metric

    @property
    def ncomp(self) -> int:
        return self.orders[0].ncomp

    @property
    def truncation(self) -> int:
        return len(self.orders) - 1

    @classmethod
    def stack(cls, fields: Sequence["SeriesField"]) -> "SeriesField":
        K = fields[0].truncation
        if any(f.truncation != K for f in fields):
            raise ValueError("stack expects equal truncation orders")
        return cls(
            [PlaneWaveField.stack([f.orders[k] for f in fields]) for k in range(K + 1)]
        )

    def component(self, i: int) -> "SeriesField":
        return SeriesField([o.component(i) for o in self.orders])

    def d(self, mu: int) -> "SeriesField":
        return SeriesField([o.d(mu) for o in self.orders])

    def scaled(self, c) -> "SeriesField":
        return SeriesField([o.scaled(c) for o in self.orders])

    def is_zero(self) -> bool:
        return all(o.is_zero() for o in self.orders)

    def __add__(self, other):
        if not isinstance(other, SeriesField):
            return NotImplemented
        if self.truncation != other.truncation:
            raise ValueError("series truncations differ")
        return SeriesField([a + b for a, b in zip(self.orders, other.orders)])

    def __sub__(self, other):
        if not isinstance(other, SeriesField):
            return NotImplemented
        return self + other.scaled(-1)

    def __neg__(self):
        return self.scaled(-1)

    def __mul__(self, other):
        """Cauchy product truncated at the common order."""
        if not isinstance(other, SeriesField):
            return NotImplemented
        if self.truncation != other.truncation:
            raise ValueError("series truncations differ")
        K = self.truncation
        out = []
        for k in range(K + 1):
            acc = None
            for i in range(k + 1):
                term = self.orders[i] * other.orders[k - i]
                acc = term if acc is None else acc + term
            out.append(acc)
        return SeriesField(out)

    def __eq__(self, other):
        if not isinstance(other, SeriesField):
            return NotImplemented
        return self.orders == other.orders

    def __repr__(self):
        return f"SeriesField(K={self.truncation}, ncomp={self.ncomp})"


@dataclass(frozen=True)
class YmpParams:
    """Interaction constant rho, mass m, optional anticommuting sign."""

    rho: Fraction
    m: Fraction
    theta: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "rho", Fraction(self.rho))
        object.__setattr__(self, "m", Fraction(self.m))
        if self.rho == 0:
            raise ValueError("interaction constant rho must be nonzero")

    @property
    def lam(self) -> Fraction:
        return -self.m * self.m / (self.rho * self.rho)


# -- basic operators ---------------------------------------------------------


def pw_derivative(f: PlaneWaveField, mu: int) -> PlaneWaveField:
    return f.d(mu)


def pw_product(f: PlaneWaveField, g: PlaneWaveField) -> PlaneWaveField:
    return f * g


def _comm(f, g):
    return f * g - g * f


def _zero_like(field, ncomp: int = 1):
    return field.component(0).scaled(0) if ncomp == 1 else None


def _sum_terms(terms, zero):
    acc = None
    for t in terms:
        acc = t if acc is None else acc + t
    return acc if acc is not None else zero


_PAIRS_CACHE: dict[int, list[tuple[int, int]]] = {}


def antisym_pairs(n: int) -> list[tuple[int, int]]:
    if n not in _PAIRS_CACHE:
        _PAIRS_CACHE[n] = [(m, v) for m in range(n) for v in range(m + 1, n)]
    return _PAIRS_CACHE[n]


def field_strength(A, rho=1):
    """F_{mu nu} = d_mu A_nu - d_nu A_mu - rho [A_mu, A_nu], stored per pair mu<nu."""
    n = A.metric.n
    comps = []
    for mu, nu in antisym_pairs(n):
        am, an = A.component(mu), A.component(nu)
        comps.append(an.d(mu) - am.d(nu) - _comm(am, an).scaled(rho))
    return type(A).stack(comps)


def strength_component(F, mu: int, nu: int):
    """Signed lookup of F_{mu nu} from the packed antisymmetric storage."""
    n = F.metric.n
    pairs = antisym_pairs(n)
    if mu == nu:
        return _zero_like(F)
    if mu < nu:
        return F.component(pairs.index((mu, nu)))
    return F.component(pairs.index((nu, mu))).scaled(-1)


def divergence(A):
    """d_mu A^mu for a lower-component field."""
    eta = A.metric.signs
    terms = [A.component(mu).d(mu).scaled(eta[mu]) for mu in range(A.metric.n)]
    return _sum_terms(terms, _zero_like(A))


def raised(A):
    """A^nu = eta^{nu nu} A_nu, componentwise."""
    eta = A.metric.signs
    return type(A).stack(
        [A.component(nu).scaled(eta[nu]) for nu in range(A.metric.n)]
    )


def ym_current(A, rho=1):
    """J^nu = d_mu F^{mu nu} - rho [A_mu, F^{mu nu}] for a lower-component A."""
    n = A.metric.n
    eta = A.metric.signs
    F = field_strength(A, rho)
    out = []
    for nu in range(n):
        terms = []
        for mu in range(n):
            if mu == nu:
                continue
            f = strength_component(F, mu, nu)
            terms.append((f.d(mu) - _comm(A.component(mu), f).scaled(rho)).scaled(eta[mu]))
        acc = _sum_terms(terms, _zero_like(A))
        out.append(acc.scaled(eta[nu]))
    return type(A).stack(out)


def ym_residual(A, j_given, rho=1):
    """Left side of the second-order potential equation minus the given current."""
    return ym_current(A, rho) - j_given


def conservation_defect(A, rho=1):
    """d_nu J^nu - rho [A_nu, J^nu] for J derived from A; identically zero."""
    J = ym_current(A, rho)
    n = A.metric.n
    terms = []
    for nu in range(n):
        jn = J.component(nu)
        terms.append(jn.d(nu) - _comm(A.component(nu), jn).scaled(rho))
    return _sum_terms(terms, _zero_like(A))


def box(f):
    """d_mu d^mu, componentwise."""
    eta = f.metric.signs
    comps = []
    for i in range(f.ncomp):
        fi = f.component(i)
        comps.append(
            _sum_terms(
                [fi.d(mu).d(mu).scaled(eta[mu]) for mu in range(f.metric.n)],
                _zero_like(f),
            )
        )
    return type(f).stack(comps)


def ymp_residual_field(A, params: YmpParams):
    """Second-order massive residual; cross-checks both forms when div A = 0."""
    rho, m2 = params.rho, params.m * params.m
    primary = ym_current(A, rho) + raised(A).scaled(m2)
    if A.algebra.backend == "exact" and divergence(A).is_zero():
        alt = _ymp_second_form(A, rho, m2)
        if not (primary - alt).is_zero():
            raise RuntimeError(
                "internal error: the two second-order forms disagree under the "
                "divergence-free condition"
            )
    return primary


def _ymp_second_form(A, rho, m2):
    """box A^nu - 2 rho [A^mu, d_mu A^nu] + rho [A_mu, d^nu A^mu]
    + rho^2 [A_mu, [A^mu, A^nu]] + m^2 A^nu."""
    n = A.metric.n
    eta = A.metric.signs
    up = raised(A)
    out = []
    for nu in range(n):
        an_up = up.component(nu)
        terms = [box(an_up)]
        for mu in range(n):
            am, am_up = A.component(mu), up.component(mu)
            terms.append(_comm(am_up, an_up.d(mu)).scaled(-2 * rho))
            terms.append(_comm(am, am_up.d(nu).scaled(eta[nu])).scaled(rho))
            terms.append(_comm(am, _comm(am_up, an_up)).scaled(rho * rho))
        terms.append(an_up.scaled(m2))
        out.append(_sum_terms(terms, _zero_like(A)))
    return type(A).stack(out)


def constant_residual_matches_cubic(c: SolutionCandidate, params: YmpParams) -> bool:
    """For constant A the field residual is rho^2 (cubic residual at lambda=-m^2/rho^2)."""
    from .lie_ymp import ymp_residual

    if params.lam != c.lam:
        raise ValueError("candidate lambda does not match -m^2/rho^2")
    field = PlaneWaveField.constant(c.metric, c.A)
    lhs = ymp_residual_field(field, params)
    cubic = ymp_residual(c)
    scaled = [params.rho * params.rho * comp for comp in cubic]
    expect = PlaneWaveField.constant(c.metric, scaled)
    # lhs carries upper components; so does the cubic residual
    return lhs == expect


# -- abelian reductions --------------------------------------------------------


def maxwell_residual(a: PlaneWaveField, j: Optional[PlaneWaveField] = None):
    """d_mu d^mu a^nu - d^nu d_mu a^mu - j^nu for an identity-valued potential."""
    if not a.is_abelian():
        raise ValueError("maxwell operator needs an abelian (identity-valued) field")
    n = a.metric.n
    eta = a.metric.signs
    div = divergence(a)
    out = []
    for nu in range(n):
        t = box(a.component(nu)) - div.d(nu)
        out.append(t.scaled(eta[nu]))
    res = type(a).stack(out)
    if j is not None:
        res = res - j
    return res


def abelian_gauge_shift(a: PlaneWaveField, sigma: PlaneWaveField) -> PlaneWaveField:
    """a_mu -> a_mu + d_mu sigma for a scalar (1-component abelian) sigma."""
    if sigma.ncomp != 1 or not sigma.is_abelian():
        raise ValueError("gauge function must be a 1-component abelian field")
    comps = [a.component(mu) + sigma.d(mu) for mu in range(a.metric.n)]
    return type(a).stack(comps)


@dataclass(frozen=True)
class ProcaReport:
    ok: bool
    pair_residual_norm: float
    klein_gordon_norm: float


def proca_from_current(j: PlaneWaveField, m) -> tuple[PlaneWaveField, ProcaReport]:
    """a_mu = -j_mu / m^2 for a conserved current supported on the k^2 = m^2 shell."""
    m = Fraction(m)
    if m == 0:
        raise ValueError("mass must be nonzero")
    if not j.is_abelian():
        raise ValueError("expected an abelian current")
    eta = j.metric.signs
    n = j.metric.n
    bad = []
    for k, comps in j.waves.items():
        divergence_coeff = _sum_terms(
            [comps[nu] * QQi(k[nu]) for nu in range(n)], j.algebra.zero()
        )
        ksq = sum(eta[mu] * k[mu] * k[mu] for mu in range(n))
        if not divergence_coeff.is_zero():
            bad.append((k, "k . j(k) != 0"))
        if ksq != m * m:
            bad.append((k, f"k^2 = {ksq} != m^2"))
    if bad:
        detail = "; ".join(f"k={tuple(map(str, k))}: {why}" for k, why in bad)
        raise ValueError(f"current violates the Proca preconditions: {detail}")
    inv = Fraction(-1) / (m * m)
    comps = [j.component(mu).scaled(inv * eta[mu]) for mu in range(n)]
    a = type(j).stack(comps)
    pair = ym_current(a, rho=0) + raised(a).scaled(m * m)
    kg = box(raised(a)) + raised(a).scaled(m * m)
    report = ProcaReport(
        ok=pair.is_zero() and kg.is_zero(),
        pair_residual_norm=pair.norm(),
        klein_gordon_norm=kg.norm(),
    )
    return a, report


# -- perturbation terms --------------------------------------------------------


def _qk_single(orders: Sequence[PlaneWaveField], k: int, rho=1) -> PlaneWaveField:
    """Order-k coefficient of the expanded second-order operator.

    `orders` lists the lower-component fields of orders 0..k (entries past
    k are ignored); the result carries upper components.
    """
    metric = orders[0].metric
    n = metric.n
    eta = metric.signs
    up = [raised(o) for o in orders]
    div = [divergence(o) for o in orders]

    ak_up = up[k]
    boxed = box(ak_up)
    out = []
    for nu in range(n):
        t = boxed.component(nu) - div[k].d(nu).scaled(eta[nu])
        # - rho sum_l ([d_mu A_l^mu, A_{k-l}^nu] + [A_l^mu, d_mu A_{k-l}^nu])
        for l in range(k + 1):
            t = t - _comm(div[l], up[k - l].component(nu)).scaled(rho)
            inner = [
                _comm(up[l].component(mu), up[k - l].component(nu).d(mu))
                for mu in range(n)
            ]
            t = t - _sum_terms(inner, _zero_like(orders[0])).scaled(rho)
        # - rho sum_s [A_{k-s, mu}, d^mu A_s^nu - d^nu A_s^mu - rho sum_r [A_r^mu, A_{s-r}^nu]]
        for s in range(k + 1):
            for mu in range(n):
                x = up[s].component(nu).d(mu).scaled(eta[mu]) - up[s].component(mu).d(nu).scaled(eta[nu])
                for r in range(s + 1):
                    x = x - _comm(up[r].component(mu), up[s - r].component(nu)).scaled(rho)
                t = t - _comm(orders[k - s].component(mu), x).scaled(rho)
        out.append(t)
    return type(orders[0]).stack(out)


def qk_terms(series: SeriesField, K: int, theta: int, rho=1, check: bool = True):
    """Coefficients Q_0..Q_K of the eps-expansion of the second-order operator.

    With an exact backend the result is cross-checked against the
    degree-wise expansion of the full nonlinear operator applied to the
    truncated series (run with the constant current 4 theta (n-1) gamma^nu
    so both code paths are exercised); a mismatch is an internal error.
    """
    if series.truncation < K:
        raise ValueError(f"series provides orders 0..{series.truncation}, need 0..{K}")
    orders = list(series.orders[: K + 1])
    qs = [_qk_single(orders, k, rho) for k in range(K + 1)]
    if check and series.algebra.backend == "exact":
        n = series.metric.n
        factor = Fraction(4 * theta * (n - 1))
        j0 = raised(orders[0]).scaled(factor)
        zero = PlaneWaveField.zero(series.algebra, series.metric, series.ncomp)
        j_series = SeriesField([j0] + [zero] * K)
        truncated = SeriesField(orders)
        expanded = ym_residual(truncated, j_series, rho) + j_series
        for k in range(K + 1):
            if not (expanded.orders[k] - qs[k]).is_zero():
                raise RuntimeError(
                    f"internal error: expanded operator disagrees with the order-{k} term"
                )
    return qs


def linearized_residual(B: PlaneWaveField, gammas: Sequence[Multivector], theta: int):
    """The linearized operator around a constant anticommuting set (rho = 1)."""
    metric = B.metric
    n = metric.n
    eta = metric.signs
    if len(gammas) != n:
        raise ValueError("need one constant component per dimension")
    if not check_anticommuting_set(gammas, metric, theta):
        raise ValueError("constant set fails the anticommutation relations")
    g = PlaneWaveField.constant(metric, gammas)
    if B.algebra != g.algebra:
        raise ValueError("field and constants live in different algebras")
    g_low = [g.component(mu) for mu in range(n)]
    g_up = [g_low[mu].scaled(eta[mu]) for mu in range(n)]
    b_low = [B.component(mu) for mu in range(n)]
    b_up = [b_low[mu].scaled(eta[mu]) for mu in range(n)]
    div_b = _sum_terms([b_up[mu].d(mu) for mu in range(n)], _zero_like(B))
    out = []
    for nu in range(n):
        t = box(b_up[nu]) - div_b.d(nu).scaled(eta[nu])
        t = t + _comm(g_up[nu], div_b)
        for mu in range(n):
            t = t - _comm(g_up[mu], b_up[nu].d(mu)).scaled(2)
            t = t + _comm(g_low[mu], b_up[mu].d(nu).scaled(eta[nu]))
            t = t + _comm(g_low[mu], _comm(g_up[mu], b_up[nu]))
            t = t + _comm(g_low[mu], _comm(b_up[mu], g_up[nu]))
            t = t + _comm(b_low[mu], _comm(g_up[mu], g_up[nu]))
        out.append(t)
    return type(B).stack(out)


# -- order-by-order solving ------------------------------------------------------


@dataclass
class OrderSolveReport:
    field: PlaneWaveField
    residual_norm: float
    unknown_count: int
    nullspace_dim: int
    nullspace_fields: Optional[list[PlaneWaveField]] = None


def solve_order(
    series: Sequence[PlaneWaveField],
    k: int,
    wave_support: Sequence,
    rho=1,
    tol: float = 1e-9,
    nullspace_basis: int = 0,
) -> OrderSolveReport:
    """Solve Q_k = 0 for the order-k field over the given wavevector support.

    The unknown is expanded in (wave, component, blade) coordinates; the
    resulting finite linear system is solved in the minimum-norm
    least-squares sense with complex floats.  A residual above `tol` means
    the requested support cannot satisfy the order-k equation and raises
    InconsistentOrderError.  With `nullspace_basis` = b > 0, up to b
    homogeneous solutions (an orthonormal kernel basis of the linear part)
    are returned alongside the particular solution.
    """
    import numpy as np

    if len(series) != k:
        raise ValueError(f"need exactly the orders 0..{k-1}, got {len(series)} fields")
    base = [o.to_float() for o in series]
    alg = base[0].algebra
    metric = base[0].metric
    n = metric.n
    dim = 1 << alg.n
    support = [wavevector(kv, n) for kv in wave_support]
    unknowns = [(kv, mu, mask) for kv in support for mu in range(n) for mask in range(dim)]

    zero_field = PlaneWaveField.zero(alg, metric, n)

    def q_with(field: PlaneWaveField) -> PlaneWaveField:
        return _qk_single(base + [field], k, rho)

    def flatten(field: PlaneWaveField) -> dict[tuple, complex]:
        flat = {}
        for kv, comps in field.waves.items():
            for i, c in enumerate(comps):
                for mask, v in c.components().items():
                    flat[(kv, i, mask)] = complex(v)
        return flat

    q0 = q_with(zero_field)
    inhom = flatten(q0)
    columns = []
    for kv, mu, mask in unknowns:
        comps = [alg.zero()] * n
        comps[mu] = Multivector(alg, {mask: 1.0})
        basis_field = PlaneWaveField(alg, metric, n, {kv: tuple(comps)})
        columns.append(flatten(q_with(basis_field) - q0))

    keys = sorted(set(inhom) | {key for col in columns for key in col})
    key_index = {key: i for i, key in enumerate(keys)}
    A = np.zeros((len(keys), len(unknowns)), dtype=complex)
    b = np.zeros(len(keys), dtype=complex)
    for key, v in inhom.items():
        b[key_index[key]] = -v
    for j, col in enumerate(columns):
        for key, v in col.items():
            A[key_index[key], j] = v
    if len(keys) == 0:
        x = np.zeros(len(unknowns), dtype=complex)
        rank = 0
    else:
        x, _, rank, _ = np.linalg.lstsq(A, b, rcond=None)

    def build_field(coords) -> PlaneWaveField:
        waves: dict[WaveVector, list] = {}
        for (kv, mu, mask), coeff in zip(unknowns, coords):
            if abs(coeff) < 1e-14:
                continue
            slot = waves.setdefault(kv, [dict() for _ in range(n)])
            slot[mu][mask] = slot[mu].get(mask, 0j) + complex(coeff)
        built = {
            kv: tuple(Multivector(alg, comp) for comp in comps)
            for kv, comps in waves.items()
        }
        return PlaneWaveField(alg, metric, n, built)

    field = build_field(x)
    residual = q_with(field).norm()
    if residual > tol:
        raise InconsistentOrderError(residual, tol)
    kernel_fields = []
    if nullspace_basis > 0 and len(keys) > 0:
        _, svals, vh = np.linalg.svd(A)
        cutoff = max(A.shape) * (svals[0] if len(svals) else 0.0) * 1e-12
        kernel = vh[int((svals > cutoff).sum()):].conj()
        for vec in kernel[: min(nullspace_basis, len(kernel))]:
            kernel_fields.append(build_field(vec))
    return OrderSolveReport(
        field=field,
        residual_norm=residual,
        unknown_count=len(unknowns),
        nullspace_dim=len(unknowns) - int(rank),
        nullspace_fields=kernel_fields,
    )


def perturbation_series(
    base: SolutionCandidate,
    K: int,
    wave_support: Sequence,
    theta: int,
    rho=1,
    order1: Optional[PlaneWaveField] = None,
    tol: float = 1e-9,
) -> tuple[list[PlaneWaveField], list[float]]:
    """Order-by-order construction around a constant anticommuting solution.

    Returns the fields of orders 0..K (floats past order 0) and the
    attained |Q_k| for each solved order.  An explicit order-1 field (for
    example a null-wave solution of the linearized system) short-circuits
    the k=1 solve.
    """
    if not check_anticommuting_set(base.A, base.metric, theta, base.kappa):
        raise ValueError("base candidate is not an anticommuting solution")
    orders = [PlaneWaveField.constant(base.metric, base.A).to_float()]
    norms: list[float] = []
    for k in range(1, K + 1):
        if k == 1 and order1 is not None:
            f = order1.to_float()
            q1 = _qk_single(orders + [f], 1, rho).norm()
            if q1 > tol:
                raise InconsistentOrderError(q1, tol)
            orders.append(f)
            norms.append(q1)
            continue
        report = solve_order(orders, k, wave_support, rho=rho, tol=tol)
        orders.append(report.field)
        norms.append(report.residual_norm)
    return orders, norms
