"""Numerical search for constant solutions via the structure-constant system.

Decomposing A^mu = a^mu_r t^r over a Lie basis turns the cubic field system
into n*N polynomial equations in the n*N real coordinates a^mu_r, driven
entirely by the structure constants.  The solver is damped Newton with a
minimum-norm least-squares fallback for the (common) singular Jacobians,
wrapped in a deterministic multistart.

The residual evaluator exists twice on purpose: once over exact rationals
(for identity checks against the multivector path) and once over floats
(for the solver).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .lie_ymp import LieBasis, Metric, SolutionCandidate


@dataclass(frozen=True)
class CubicSystem:
    """R(a)^nu_k = sum_mu eta_mu (a^mu . a^mu . a^nu via c) - lambda a^nu_k."""

    basis: LieBasis
    metric: Metric
    lam: Fraction
    c_float: np.ndarray = field(repr=False, compare=False, default=None)

    def __post_init__(self):
        N = self.basis.N
        arr = np.zeros((N, N, N))
        for r in range(N):
            for s in range(N):
                for l in range(N):
                    arr[r, s, l] = float(self.basis.c[r][s][l])
        object.__setattr__(self, "c_float", arr)

    @property
    def n(self) -> int:
        return self.metric.n

    @property
    def N(self) -> int:
        return self.basis.N

    @property
    def size(self) -> int:
        return self.n * self.N

    @property
    def eta(self) -> np.ndarray:
        return np.array(self.metric.signs, dtype=float)

    # -- float path -------------------------------------------------------

    def _trilinear(self, x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
        """B(x,y,z)^nu = sum_mu eta_mu [x^mu, [y^mu, z^nu]] in coordinates."""
        c = self.c_float
        inner = np.einsum("mr,vs,rsl->mvl", y, z, c)
        return np.einsum("m,mu,mvl,ulk->vk", self.eta, x, inner, c)

    def residual(self, a: np.ndarray) -> np.ndarray:
        v = np.asarray(a, dtype=float).reshape(self.n, self.N)
        r = self._trilinear(v, v, v) - float(self.lam) * v
        return r.reshape(self.size)

    def jacobian(self, a: np.ndarray) -> np.ndarray:
        v = np.asarray(a, dtype=float).reshape(self.n, self.N)
        c = self.c_float
        eta = self.eta
        inner_aa = np.einsum("mr,vs,rsl->mvl", v, v, c)
        j1 = np.einsum("m,mvl,ulk->vkmu", eta, inner_aa, c)
        j2 = np.einsum("m,mu,vs,rsl,ulk->vkmr", eta, v, v, c, c)
        block = np.einsum("m,mu,mr,rsl,ulk->sk", eta, v, v, c, c)
        j3 = np.zeros((self.n, self.N, self.n, self.N))
        for nu in range(self.n):
            j3[nu, :, nu, :] = block.T
        jac = (j1 + j2 + j3).reshape(self.size, self.size)
        return jac - float(self.lam) * np.eye(self.size)

    # -- exact path -------------------------------------------------------

    def residual_exact(self, a: Sequence[Fraction]) -> list[Fraction]:
        """Same residual over exact rationals (layout a[mu*N + r])."""
        n, N = self.n, self.N
        if len(a) != self.size:
            raise ValueError(f"expected {self.size} coordinates")
        v = [[Fraction(a[mu * N + r]) for r in range(N)] for mu in range(n)]
        c = self.basis.c
        eta = self.metric.signs
        out = [[Fraction(0)] * N for _ in range(n)]
        for mu in range(n):
            for nu in range(n):
                inner = [Fraction(0)] * N
                for r in range(N):
                    if not v[mu][r]:
                        continue
                    for s in range(N):
                        if not v[nu][s]:
                            continue
                        crs = c[r][s]
                        prod = v[mu][r] * v[nu][s]
                        for l in range(N):
                            if crs[l]:
                                inner[l] += prod * crs[l]
                for u in range(N):
                    if not v[mu][u]:
                        continue
                    for l in range(N):
                        if not inner[l]:
                            continue
                        cul = c[u][l]
                        prod = v[mu][u] * inner[l]
                        for k in range(N):
                            if cul[k]:
                                out[nu][k] += eta[mu] * prod * cul[k]
        for nu in range(n):
            for k in range(N):
                out[nu][k] -= self.lam * v[nu][k]
        return [out[mu][r] for mu in range(n) for r in range(N)]

    # -- embedding back into the algebra -----------------------------------

    def embed_exact(self, a: Sequence[Fraction]) -> SolutionCandidate:
        """Exact candidate from rational coordinates of the raised components."""
        n, N = self.n, self.N
        comps = []
        for mu in range(n):
            upper = self.basis.combine([Fraction(a[mu * N + r]) for r in range(N)])
            comps.append(self.metric.sign(mu) * upper)
        return SolutionCandidate(self.metric, comps, lam=self.lam)

    def embed_float(self, a: np.ndarray) -> SolutionCandidate:
        """Float-backend candidate from solver coordinates."""
        n, N = self.n, self.N
        alg = self.basis.algebra.to_float()
        elems = [t.to_float() for t in self.basis.elements]
        comps = []
        for mu in range(n):
            acc = alg.zero()
            for r in range(N):
                coeff = float(a[mu * N + r])
                if coeff:
                    acc = acc + coeff * elems[r]
            comps.append(self.metric.sign(mu) * acc)
        return SolutionCandidate(self.metric, comps, lam=self.lam, algebra=alg)


def expand_system(basis: LieBasis, metric: Metric, lam) -> CubicSystem:
    """n*N cubic equations for the n*N coordinates a^mu_r."""
    return CubicSystem(basis=basis, metric=metric, lam=Fraction(lam))


def residual_and_jacobian(sys: CubicSystem, a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return sys.residual(a), sys.jacobian(a)


@dataclass
class SolveReport:
    success: bool
    a: Optional[np.ndarray]
    residual_norm: float
    iterations: int
    restart_index: Optional[int] = None
    seed: Optional[int] = None
    message: str = ""
    rational_exact: bool = False


def newton_solve(
    sys: CubicSystem,
    a0: np.ndarray,
    tol: float = 1e-12,
    max_iter: int = 100,
    max_halvings: int = 30,
    patience: int = 8,
) -> SolveReport:
    """Damped Newton iteration from a0.

    Steps come from the square solve when the Jacobian permits, otherwise
    from the minimum-norm least-squares solution (solution orbits make
    singular Jacobians the normal case, not an error).  Steps are halved
    until the residual norm decreases; `patience` rejected iterations in a
    row count as divergence.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    a = np.asarray(a0, dtype=float).copy()
    if a.shape != (sys.size,):
        raise ValueError(f"start vector must have length {sys.size}")
    r = sys.residual(a)
    norm = float(np.linalg.norm(r))
    stalled = 0
    for it in range(max_iter):
        if norm <= tol:
            return newton_report(sys, a, it, True, "converged")
        jac = sys.jacobian(a)
        step = None
        try:
            step = np.linalg.solve(jac, -r)
            if not np.all(np.isfinite(step)):
                step = None
        except np.linalg.LinAlgError:
            step = None
        if step is None:
            step, *_ = np.linalg.lstsq(jac, -r, rcond=None)
        t = 1.0
        improved = False
        for _ in range(max_halvings):
            trial = a + t * step
            rt = sys.residual(trial)
            nt = float(np.linalg.norm(rt))
            if nt < norm:
                a, r, norm = trial, rt, nt
                improved = True
                break
            t *= 0.5
        if not improved:
            stalled += 1
            if stalled >= patience:
                return newton_report(sys, a, it + 1, False, "diverged (no descent step)")
        else:
            stalled = 0
    success = norm <= tol
    msg = "converged" if success else "max iterations exceeded"
    return newton_report(sys, a, max_iter, success, msg)


def newton_report(sys: CubicSystem, a: np.ndarray, iterations: int, success: bool, message: str) -> SolveReport:
    # the reported norm is always recomputed from the final point
    norm = float(np.linalg.norm(sys.residual(a)))
    return SolveReport(
        success=success,
        a=a if success else None,
        residual_norm=norm,
        iterations=iterations,
        message=message,
    )


def snap_rational(a: np.ndarray, max_denominator: int = 10**6) -> list[Fraction]:
    """Continued-fraction snap of float coordinates to rationals."""
    return [Fraction(float(x)).limit_denominator(max_denominator) for x in a]


def multistart(
    sys: CubicSystem,
    seed: int,
    restarts: int,
    tol: float = 1e-10,
    box: float = 2.0,
    max_iter: int = 100,
) -> list[SolveReport]:
    """Deterministic multistart Newton; returns deduplicated solutions.

    Start points are uniform in [-box, box]^{nN}, restart i seeded with
    seed XOR i so restarts are schedule-independent.  Surviving solutions
    are sorted canonically, deduplicated by rounding to 6 decimals, and
    re-verified: the residual norm is recomputed, and coordinates that snap
    to nearby rationals are certified exactly.
    """
    if restarts < 1:
        raise ValueError("need at least one restart")
    found: list[SolveReport] = []
    for i in range(restarts):
        rng = np.random.default_rng(seed ^ i)
        a0 = rng.uniform(-box, box, sys.size)
        rep = newton_solve(sys, a0, tol=tol, max_iter=max_iter)
        if rep.success and rep.residual_norm <= tol:
            rep.restart_index = i
            rep.seed = seed
            found.append(rep)
    found.sort(key=lambda rep: tuple(np.round(rep.a, 6)))
    unique: list[SolveReport] = []
    last_key = None
    for rep in found:
        key = tuple(np.round(rep.a, 6))
        if key == last_key:
            continue
        last_key = key
        rep.residual_norm = float(np.linalg.norm(sys.residual(rep.a)))
        snapped = snap_rational(rep.a)
        exact = sys.residual_exact(snapped)
        if all(x == 0 for x in exact) and np.allclose(
            [float(x) for x in snapped], rep.a, atol=1e-9
        ):
            rep.rational_exact = True
        unique.append(rep)
    return unique
