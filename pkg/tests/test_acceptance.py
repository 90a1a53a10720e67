"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with  pytest tests/test_acceptance.py -s  to see the per-criterion lines.
Every tolerance is stated inline; "exact" means exact rational equality.
"""

import itertools
import random
import time
from fractions import Fraction

import numpy as np

from ymproca.clifford import Algebra, Multivector, radical_basis
from ymproca.lie_ymp import (
    Metric,
    SolutionCandidate,
    apply_frame,
    clifford_lie_basis,
    factory_anticommuting,
    factory_grassmann,
    factory_zero_subset,
    random_frame,
    scale,
    structure_constants,
    verify,
    ymp_residual,
)
from ymproca.matrix_rep import (
    CMatrix,
    dirac_gammas,
    embed_degenerate,
    faithful_rep,
    grassmann_example_matrices,
    pauli_taus,
    su_membership,
)
from ymproca.newton_solver import expand_system, multistart, residual_and_jacobian
from ymproca.field_series import (
    PlaneWaveField,
    SeriesField,
    conservation_defect,
    proca_from_current,
    qk_terms,
    raised,
    maxwell_residual,
    solve_order,
    wavevector,
    ym_residual,
)
from ymproca.scalars import QQi

from reference import random_multivector


def _report(num, name, fn):
    try:
        fn()
    except BaseException:
        print(f"criterion {num:2d} [{name}]: FAIL")
        raise
    print(f"criterion {num:2d} [{name}]: PASS")


def _signatures(n_min, n_max):
    for n in range(n_min, n_max + 1):
        for p in range(n + 1):
            yield p, n - p


def test_criterion_01_theorem1_sweep():
    def run():
        start = time.perf_counter()
        for p, q in _signatures(2, 6):
            n = p + q
            cand = factory_anticommuting(Algebra(p, q), Metric(p, q), theta=1)
            assert cand.lam == 4 * (n - 1)
            assert all(r.is_zero() for r in ymp_residual(cand)), (p, q, 1)
            ccand = factory_anticommuting(
                Algebra(p, q, field="C"), Metric(p, q), theta=-1
            )
            assert ccand.lam == -4 * (n - 1)
            assert all(r.is_zero() for r in ymp_residual(ccand)), (p, q, -1)
        elapsed = time.perf_counter() - start
        assert elapsed < 5.0, f"sweep took {elapsed:.2f}s"

    _report(1, "theorem-1 sweep, exact, <5s", run)


def test_criterion_02_theorem2_sweep():
    def run():
        start = time.perf_counter()
        for p, q in _signatures(2, 6):
            n = p + q
            bases = [factory_anticommuting(Algebra(p, q), Metric(p, q), theta=1)]
            bases.append(
                factory_anticommuting(Algebra(p, q, field="C"), Metric(p, q), theta=-1)
            )
            for base in bases:
                for r in range(1, n - 1):
                    for subset in itertools.combinations(range(n), r):
                        cand = factory_zero_subset(base, subset)
                        assert cand.lam == 4 * base.theta * (n - r - 1)
                        assert all(
                            x.is_zero() for x in ymp_residual(cand)
                        ), (p, q, base.theta, subset)
        elapsed = time.perf_counter() - start
        assert elapsed < 5.0, f"sweep took {elapsed:.2f}s"

    _report(2, "theorem-2 zeroed subsets, exact, <5s", run)


def test_criterion_03_dirac_random_frames():
    def run():
        i = QQi(0, 1)
        igammas = [i * g for g in dirac_gammas()]
        metric = Metric(1, 3)
        rng = random.Random(1234)
        for trial in range(20):
            frame = random_frame(metric, rng, steps=4)
            for kappa in (Fraction(1), Fraction(2), Fraction(3, 2)):
                cand = apply_frame(frame, igammas, kappa=kappa)
                assert cand.lam == -12 * kappa * kappa
                assert verify(cand).ok, (trial, kappa)

    _report(3, "Dirac frames, lambda=-12k^2, exact", run)


def test_criterion_04_su2_and_su22():
    def run():
        taus = pauli_taus()
        for kappa in (Fraction(1), Fraction(2), Fraction(5, 3)):
            cand = SolutionCandidate(
                Metric(3, 0), list(taus), lam=-8, theta=-1
            )
            scaled = scale(cand, kappa)
            assert scaled.lam == -8 * kappa * kappa
            assert verify(scaled).ok
        beta = dirac_gammas()[0]
        i = QQi(0, 1)
        for g in dirac_gammas():
            assert su_membership(i * g, beta=beta)

    _report(4, "su(2) taus at -8k^2; i*gamma in su(2,2), exact", run)


def test_criterion_05_grassmann():
    def run():
        alg = Algebra(4, 0, field="C")
        cand = factory_grassmann(alg, 2)
        assert cand.lam == 0 and verify(cand).ok
        th1, th2 = cand.A[0], cand.A[1]
        assert (th1 * th1).is_zero() and (th2 * th2).is_zero()
        assert (th1 * th2 + th2 * th1).is_zero()
        a1, a2 = grassmann_example_matrices()
        assert (a1 * a1).is_zero() and (a2 * a2).is_zero()
        assert (a1 * a2 + a2 * a1).is_zero()
        zero = CMatrix.zeros(4)
        mcand = SolutionCandidate(Metric(1, 3), [a1, a2, zero, zero], lam=0)
        assert verify(mcand).ok

    _report(5, "Grassmann factory and example matrices, lambda=0, exact", run)


def test_criterion_06_cubic_system_equivalence():
    def run():
        rng = random.Random(77)
        cases = []
        basis20 = clifford_lie_basis(Algebra(2, 0))
        cases.append((basis20, Metric(2, 0), Fraction(4)))
        alg30 = Algebra(3, 0)
        su2 = structure_constants(
            [alg30.blade([2, 3]), alg30.blade([1, 3]), alg30.blade([1, 2])]
        )
        cases.append((su2, Metric(1, 3), Fraction(-3, 2)))  # 12 eqs, 12 unknowns
        for basis, metric, lam in cases:
            system = expand_system(basis, metric, lam)
            if metric.n == 4:
                assert system.size == 12
            for _ in range(100):
                a = [
                    Fraction(rng.randint(-8, 8), rng.randint(1, 5))
                    for _ in range(system.size)
                ]
                numeric = system.residual_exact(a)
                cand = system.embed_exact(a)
                for nu, comp in enumerate(ymp_residual(cand)):
                    coords = basis.coordinates(comp)
                    assert coords == numeric[nu * basis.N : (nu + 1) * basis.N]

    _report(6, "structure-constant residual == multivector residual, 100 pts, exact", run)


def test_criterion_07_solver():
    def run():
        start = time.perf_counter()
        basis = clifford_lie_basis(Algebra(2, 0))
        system = expand_system(basis, Metric(2, 0), 4)
        # Jacobian vs central finite differences at 1e-6
        rng = np.random.default_rng(42)
        for _ in range(3):
            a = rng.uniform(-2, 2, system.size)
            _, jac = residual_and_jacobian(system, a)
            h = 1e-6
            fd = np.zeros_like(jac)
            for j in range(system.size):
                step = np.zeros(system.size)
                step[j] = h
                fd[:, j] = (system.residual(a + step) - system.residual(a - step)) / (2 * h)
            assert np.max(np.abs(jac - fd)) <= 1e-6 * max(1.0, np.max(np.abs(jac)))
        reports = multistart(system, seed=20240601, restarts=64, tol=1e-10)
        good = [rp for rp in reports if rp.residual_norm <= 1e-10]
        assert good, "no solution at 1e-10"
        reverified = 0
        for rp in good:
            cand = system.embed_float(rp.a)
            if verify(cand, tol=1e-10).ok:
                reverified += 1
        assert reverified >= 1
        elapsed = time.perf_counter() - start
        assert elapsed < 30.0, f"solver criterion took {elapsed:.2f}s"

    _report(7, "multistart 64 restarts finds |R|<=1e-10, FD Jacobian 1e-6, <30s", run)


def test_criterion_08_conservation():
    def run():
        alg = Algebra(1, 3, field="C")
        metric = Metric(1, 3)
        rng = random.Random(99)
        for trial in range(20):
            waves = {}
            for _ in range(rng.randint(1, 3)):
                k = tuple(
                    Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(4)
                )
                waves[k] = tuple(
                    random_multivector(alg, rng, terms=2) for _ in range(4)
                )
            A = PlaneWaveField(alg, metric, 4, waves)
            rho = Fraction(rng.randint(1, 4), rng.randint(1, 3))
            assert conservation_defect(A, rho=rho).is_zero(), trial

    _report(8, "non-abelian conservation identity, 20 random fields, exact", run)


def test_criterion_09_series():
    def run():
        alg = Algebra(1, 3, field="C")
        metric = Metric(1, 3)
        gens = [alg.gen(i + 1) for i in range(4)]
        const = PlaneWaveField.constant(metric, gens)
        zero = PlaneWaveField.zero(alg, metric, 4)

        # Q0 = 4 theta (n-1) gamma^nu exactly
        qs = qk_terms(SeriesField([const, zero]), 1, theta=1)
        expected = PlaneWaveField.constant(
            metric, [Fraction(12) * metric.sign(nu) * gens[nu] for nu in range(4)]
        )
        assert qs[0] == expected

        # central-wave B with null k gives Q1 = 0 exactly
        k = wavevector(["1", "1", "0", "0"])
        B = PlaneWaveField.single(
            metric, k, [alg.zero(), alg.zero(), alg.one(), alg.zero()]
        )
        assert maxwell_residual(B).is_zero()
        qs = qk_terms(SeriesField([const, B]), 1, theta=1)
        assert qs[1].is_zero()

        # per-order formula == brute-force series expansion through order 3
        rng = random.Random(55)

        def small_field():
            kk = tuple(Fraction(rng.randint(-2, 2), rng.randint(1, 2)) for _ in range(4))
            comps = tuple(random_multivector(alg, rng, terms=2) for _ in range(4))
            return PlaneWaveField(alg, metric, 4, {kk: comps})

        orders = [const] + [small_field() for _ in range(3)]
        series = SeriesField(orders)
        qs = qk_terms(series, 3, theta=1)
        j0 = raised(const).scaled(Fraction(12))
        j_series = SeriesField([j0, zero, zero, zero])
        expanded = ym_residual(series, j_series, rho=1) + j_series
        for kk in range(4):
            assert qs[kk] == expanded.orders[kk], kk

        # solve_order at k=2: non-central order-1 kernel direction, |Q2| <= 1e-9
        rep1 = solve_order([const], 1, [k], nullspace_basis=16)
        chosen = next(
            f
            for f in rep1.nullspace_fields
            if any(c.grades() - {0} for comps in f.waves.values() for c in comps)
        )
        k2 = tuple(2 * x for x in k)
        rep2 = solve_order([const, chosen], 2, [k, k2], tol=1e-9)
        assert rep2.residual_norm <= 1e-9

    _report(9, "series: Q0 exact, central Q1=0, Qk==expansion (K=3), |Q2|<=1e-9", run)


def test_criterion_10_representations():
    def run():
        rng = random.Random(31)
        alg = Algebra(1, 3, field="C")
        rep = faithful_rep(alg)
        for _ in range(50):
            u = random_multivector(alg, rng, terms=3)
            v = random_multivector(alg, rng, terms=3)
            assert rep.apply(u * v) == rep.apply(u) * rep.apply(v)
        src = Algebra(1, 1, 1, field="C")
        emb = embed_degenerate(src)
        for _ in range(50):
            u = random_multivector(src, rng, terms=3)
            v = random_multivector(src, rng, terms=3)
            assert emb.apply(u * v) == emb.apply(u) * emb.apply(v)
        for r in (1, 2, 3):
            dalg = Algebra(1, 1, r, field="C")
            rad = radical_basis(dalg)
            for _ in range(5):
                picks = rng.sample(rad, min(3, len(rad)))
                elem = Multivector(
                    dalg,
                    {
                        mask: Fraction(rng.randint(-3, 3), rng.randint(1, 3))
                        for mask in picks
                    },
                )
                power = dalg.one()
                for _ in range(r + 1):
                    power = power * elem
                assert power.is_zero(), r

    _report(10, "representation+embedding homomorphisms (50 pairs), radical nilpotency r<=3, exact", run)


def test_criterion_11_abelian():
    def run():
        alg = Algebra(1, 3, field="C")
        metric = Metric(1, 3)
        # vacuum plane-wave Maxwell: null k, k.b = 0
        k = wavevector(["1", "1", "0", "0"])
        a = PlaneWaveField.single(
            metric, k, [alg.zero(), alg.zero(), alg.one(), alg.zero()]
        )
        assert maxwell_residual(a).is_zero()
        # Proca: a = -j/m^2 on the k^2 = m^2 shell solves the pair and KG exactly
        kp = wavevector(["5/4", "3/4", "0", "0"])  # k^2 = 1
        j = PlaneWaveField.single(
            metric,
            kp,
            [
                alg.scalar(Fraction(3, 4)),
                alg.scalar(Fraction(-5, 4)),
                alg.scalar(QQi(1, 2)),
                alg.zero(),
            ],
        )
        a_proca, report = proca_from_current(j, m=1)
        assert report.ok
        assert report.pair_residual_norm == 0.0
        assert report.klein_gordon_norm == 0.0

    _report(11, "abelian: vacuum Maxwell zero; Proca + Klein-Gordon on shell, exact", run)
