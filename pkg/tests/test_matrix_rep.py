"""Matrix realizations: gamma/tau constants, representations, embeddings."""

import random
from fractions import Fraction

import pytest

from ymproca.clifford import Algebra, Multivector
from ymproca.lie_ymp import Metric, SolutionCandidate, verify
from ymproca.matrix_rep import (
    CMatrix,
    dirac_gammas,
    embed_degenerate,
    faithful_rep,
    grassmann_example_matrices,
    kron,
    pauli_taus,
    su_membership,
)
from ymproca.scalars import QQi

from reference import random_multivector

I = QQi(0, 1)


# -- CMatrix basics -------------------------------------------------------------


def test_cmatrix_arithmetic():
    a = CMatrix([[1, 2], [3, 4]])
    b = CMatrix([[0, 1], [1, 0]])
    assert a * b == CMatrix([[2, 1], [4, 3]])
    assert a + b == CMatrix([[1, 3], [4, 4]])
    assert a - a == CMatrix.zeros(2)
    assert (2 * a).rows[0][0] == QQi(2)
    assert a * CMatrix.identity(2) == a
    assert a.unit() == CMatrix.identity(2)


def test_cmatrix_dagger_trace_inverse():
    m = CMatrix([[I, 1], [0, 2]])
    assert m.dagger() == CMatrix([[-I, 0], [1, 2]])
    assert m.trace() == QQi(2, 1)
    inv = m.inverse()
    assert m * inv == CMatrix.identity(2)
    with pytest.raises(Exception):
        CMatrix.zeros(2).inverse()


def test_kron_order():
    a = CMatrix([[0, 1], [1, 0]])
    b = CMatrix([[1, 0], [0, -1]])
    k = kron(a, b)
    assert k.order == 4
    assert k.rows[0][2] == QQi(1)
    assert k.rows[1][3] == QQi(-1)


# -- golden constants -------------------------------------------------------------


GAMMA0_ROWS = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]
GAMMA1_ROWS = [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]]
GAMMA3_ROWS = [[0, 0, 1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, 1, 0, 0]]


def test_dirac_gammas_golden_entries():
    g0, g1, g2, g3 = dirac_gammas()
    assert g0 == CMatrix(GAMMA0_ROWS)
    assert g1 == CMatrix(GAMMA1_ROWS)
    assert g3 == CMatrix(GAMMA3_ROWS)
    assert g2.rows[0][3] == -I and g2.rows[1][2] == I
    assert g2.rows[2][1] == I and g2.rows[3][0] == -I


def test_dirac_relations():
    gammas = dirac_gammas()
    eta = (1, -1, -1, -1)
    ident = CMatrix.identity(4)
    for a in range(4):
        for b in range(4):
            anti = gammas[a] * gammas[b] + gammas[b] * gammas[a]
            expected = (2 * eta[a]) * ident if a == b else CMatrix.zeros(4)
            assert anti == expected
    # gamma^0 gamma^0 = identity
    assert gammas[0] * gammas[0] == ident


def test_dirac_hermiticity_relation():
    gammas = dirac_gammas()
    g0 = gammas[0]
    for g in gammas:
        assert g.dagger() == g0 * g * g0
        ig = I * g
        assert ig.dagger() == -(g0 * ig * g0)


def test_pauli_taus():
    taus = pauli_taus()
    ident = CMatrix.identity(2)
    for a in range(3):
        assert taus[a] * taus[a] == -1 * ident
        assert su_membership(taus[a])
        for b in range(a + 1, 3):
            assert (taus[a] * taus[b] + taus[b] * taus[a]).is_zero()


def test_tau_candidate_solves_at_minus_eight():
    cand = SolutionCandidate(Metric(3, 0), list(pauli_taus()), lam=-8, theta=-1)
    assert verify(cand).ok


def test_su22_membership():
    gammas = dirac_gammas()
    beta = gammas[0]
    for g in gammas:
        assert su_membership(I * g, beta=beta)
        assert not su_membership(g, beta=beta)
    assert su_membership(CMatrix.zeros(4), beta=beta)
    with pytest.raises(ValueError):
        su_membership(CMatrix.zeros(2), beta=beta)
    with pytest.raises(ValueError):
        su_membership(CMatrix.zeros(2), beta=CMatrix([[1, 1], [0, 1]]))


# -- faithful representation --------------------------------------------------------


def test_faithful_rep_defining_relations():
    for p, q in [(2, 0), (1, 1), (1, 3), (3, 0), (2, 3)]:
        alg = Algebra(p, q, field="C")
        rep = faithful_rep(alg)
        assert rep.order == 2 ** ((alg.n + 1) // 2)
        ident = CMatrix.identity(rep.order)
        for a in range(1, alg.n + 1):
            for b in range(1, alg.n + 1):
                anti = (
                    rep.images[a - 1] * rep.images[b - 1]
                    + rep.images[b - 1] * rep.images[a - 1]
                )
                if a == b:
                    assert anti == (2 * alg.generator_square(a)) * ident
                else:
                    assert anti.is_zero()


def test_faithful_rep_homomorphism_random_pairs():
    rng = random.Random(41)
    alg = Algebra(1, 3, field="C")
    rep = faithful_rep(alg)
    for _ in range(20):
        u = random_multivector(alg, rng)
        v = random_multivector(alg, rng)
        assert rep.apply(u * v) == rep.apply(u) * rep.apply(v)
        assert rep.apply(u + v) == rep.apply(u) + rep.apply(v)


def test_faithful_rep_rank_even_n():
    for p, q in [(2, 0), (1, 3)]:
        rep = faithful_rep(Algebra(p, q, field="C"))
        assert rep.is_faithful()


def test_odd_n_representation_stays_injective():
    # the truncated ladder leaves room in Mat(2^ceil(n/2)) for odd n too:
    # the top blade image is not a scalar and the blade images stay
    # independent (2^n <= 2^(n+1))
    alg = Algebra(3, 0, field="C")
    rep = faithful_rep(alg)
    assert rep.order == 4
    top = rep.blade_image(0b111)
    ident = CMatrix.identity(rep.order)
    assert top not in (I * ident, -1 * (I * ident), ident, -1 * ident)
    assert rep.is_faithful()


def test_faithful_rep_rejects_real_and_large():
    with pytest.raises(ValueError):
        faithful_rep(Algebra(2, 0))
    with pytest.raises(ValueError):
        faithful_rep(Algebra(9, 0, field="C"))


# -- degenerate embedding -------------------------------------------------------------


def test_embed_degenerate_images():
    src = Algebra(0, 0, 2, field="C")
    emb = embed_degenerate(src)
    assert (emb.target.p, emb.target.q, emb.target.r) == (2, 2, 0)
    t = emb.target
    assert emb.images[0] == t.gen(1) + t.gen(3)
    assert emb.images[1] == t.gen(2) + t.gen(4)
    th1 = src.gen(1)
    assert (emb.apply(th1) * emb.apply(th1)).is_zero()
    assert emb.apply(src.one()) == t.one()


def test_embed_degenerate_mixed_signature():
    src = Algebra(1, 1, 1, field="C")
    emb = embed_degenerate(src)
    assert (emb.target.p, emb.target.q) == (2, 2)
    # squares preserved for all source generators
    for a in range(1, src.n + 1):
        img = emb.images[a - 1]
        sq = img * img
        assert sq == emb.target.scalar(src.generator_square(a))


def test_embed_degenerate_homomorphism_random_pairs():
    rng = random.Random(43)
    src = Algebra(1, 1, 1, field="C")
    emb = embed_degenerate(src)
    for _ in range(20):
        u = random_multivector(src, rng)
        v = random_multivector(src, rng)
        assert emb.apply(u * v) == emb.apply(u) * emb.apply(v)
        assert emb.apply(u + v) == emb.apply(u) + emb.apply(v)


def test_embedding_then_representation_nilpotent_matrices():
    src = Algebra(1, 0, 2, field="C")
    emb = embed_degenerate(src)
    rep = faithful_rep(emb.target)
    rng = random.Random(47)
    from ymproca.clifford import radical_basis

    rad = radical_basis(src)
    for _ in range(5):
        comps = {
            mask: Fraction(rng.randint(-2, 2), rng.randint(1, 2))
            for mask in rng.sample(rad, 3)
        }
        elem = Multivector(src, comps)
        mat = rep.apply(emb.apply(elem))
        assert mat.power(src.r + 1).is_zero()


def test_embed_degenerate_rejects_nondegenerate():
    with pytest.raises(ValueError):
        embed_degenerate(Algebra(2, 0, field="C"))


# -- example matrices ---------------------------------------------------------------


def test_candidate_rejects_mismatched_matrix_orders():
    with pytest.raises(ValueError):
        SolutionCandidate(
            Metric(1, 1), [CMatrix.zeros(2), CMatrix.zeros(4)], lam=0
        )


def test_grassmann_example_matrices():
    a1, a2 = grassmann_example_matrices()
    assert (a1 * a1).is_zero()
    assert (a2 * a2).is_zero()
    assert (a1 * a2 + a2 * a1).is_zero()
    zero = CMatrix.zeros(4)
    cand = SolutionCandidate(Metric(1, 3), [a1, a2, zero, zero], lam=0)
    assert verify(cand).ok
