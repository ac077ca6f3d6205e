import random

import pytest

from unicomplex.errors import InputError
from unicomplex.homology import (
    IntMatrix,
    boundary_matrix,
    rank_mod_p,
    rank_over_q,
    reduced_homology,
    reisner_check,
    smith_normal_form,
)
from unicomplex.scomplex import SimplicialComplex
from unicomplex.universal_fp import UniversalKind, build_universal, sphere_count


def labeled(n):
    return {i: str(i) for i in range(n)}


def circle():
    return SimplicialComplex.from_simplices([(0, 1), (0, 2), (1, 2)], labeled(3))


def rp2():
    facets = [
        (0, 1, 4), (0, 1, 5), (0, 2, 3), (0, 2, 4), (0, 3, 5),
        (1, 2, 3), (1, 2, 5), (1, 3, 4), (2, 4, 5), (3, 4, 5),
    ]
    return SimplicialComplex.from_simplices(facets, labeled(6))


def test_boundary_triangle():
    M = boundary_matrix(circle(), 1)
    assert (M.rows, M.cols) == (3, 3)
    for j in range(3):
        col = [M.data[i][j] for i in range(3)]
        assert sorted(col) == [-1, 0, 1]


def test_boundary_augmentation():
    M = boundary_matrix(circle(), 0)
    assert M.data == [[1, 1, 1]]


def test_boundary_out_of_range():
    with pytest.raises(InputError):
        boundary_matrix(circle(), 2)


def test_chain_complex_identity():
    K = build_universal(UniversalKind("K", 2, 3))
    for d in range(1, K.dim + 1):
        lower = boundary_matrix(K, d)
        upper = boundary_matrix(K, d + 1) if d < K.dim else None
        if upper is not None:
            assert lower.mul(upper).is_zero()


def test_snf_gcd_lcm_oracle():
    snf = smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 3]]))
    assert snf.diagonal == (1, 6)


def test_snf_identity_and_zero():
    eye = IntMatrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert smith_normal_form(eye) == smith_normal_form(eye)
    assert smith_normal_form(eye).diagonal == (1, 1, 1)
    zero = IntMatrix.from_rows([[0, 0], [0, 0]])
    assert smith_normal_form(zero).diagonal == ()
    assert smith_normal_form(zero).rank == 0


def test_snf_permutation_invariance():
    rng = random.Random(5)
    base = [[rng.randint(-4, 4) for _ in range(5)] for _ in range(4)]
    want = smith_normal_form(IntMatrix.from_rows(base))
    for _ in range(10):
        rows = base[:]
        rng.shuffle(rows)
        cols = list(range(5))
        rng.shuffle(cols)
        shuffled = [[row[c] for c in cols] for row in rows]
        assert smith_normal_form(IntMatrix.from_rows(shuffled)) == want


def test_snf_divisibility_chain_random():
    rng = random.Random(17)
    for _ in range(40):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        M = IntMatrix.from_rows(
            [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        )
        snf = smith_normal_form(M)
        for a, b in zip(snf.diagonal, snf.diagonal[1:]):
            assert b % a == 0
        assert snf.rank == rank_over_q(M)


def test_rank_q_equals_snf_rank_on_boundaries():
    K = build_universal(UniversalKind("X", 3, 2))
    for d in range(K.dim + 1):
        M = boundary_matrix(K, d)
        assert rank_over_q(M) == smith_normal_form(M).rank


def test_rank_mod_p_detects_torsion_prime():
    # multiplication by 2 on a rank-1 lattice: rank 1 over Q, 0 over F_2
    M = IntMatrix.from_rows([[2]])
    assert rank_over_q(M) == 1
    assert rank_mod_p(M, 2) == 0
    assert rank_mod_p(M, 3) == 1


def test_homology_circle():
    prof = reduced_homology(circle())
    assert prof.betti == (0, 1)
    assert prof.torsion_free


def test_homology_sphere():
    K = SimplicialComplex.from_simplices(
        [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)], labeled(4)
    )
    assert reduced_homology(K).betti == (0, 0, 1)


def test_homology_torsion_rp2():
    prof = reduced_homology(rp2())
    assert prof.betti == (0, 0, 0)
    assert prof.torsion == ((), (2,), ())


def test_homology_universal_wedges():
    for variant, p, n in (("K", 3, 2), ("K", 2, 3), ("X", 3, 2)):
        kind = UniversalKind(variant, p, n)
        prof = reduced_homology(build_universal(kind))
        assert prof.betti[-1] == sphere_count(kind).count
        assert not any(prof.betti[:-1])
        assert prof.torsion_free


def test_euler_consistency():
    for K in (circle(), rp2()):
        prof = reduced_homology(K)
        chi = K.f_vector().euler
        assert sum((-1) ** d * b for d, b in enumerate(prof.betti)) == chi - 1


def test_rank_only_mode_flags_inexact(monkeypatch):
    import unicomplex.homology as hom

    monkeypatch.setattr(hom, "DENSE_COLUMN_LIMIT", 4)
    K = build_universal(UniversalKind("X", 3, 2))
    prof = hom.reduced_homology(K)
    assert prof.betti == (0, 17)
    assert not prof.exact


def test_rank_only_mode_refuses_hidden_torsion(monkeypatch):
    import unicomplex.homology as hom
    from unicomplex.errors import ResourceLimitError

    monkeypatch.setattr(hom, "DENSE_COLUMN_LIMIT", 4)
    with pytest.raises(ResourceLimitError):
        hom.reduced_homology(rp2())


def test_reisner_universal_true():
    ok, witness = reisner_check(build_universal(UniversalKind("K", 3, 2)))
    assert ok and witness is None
    ok, _ = reisner_check(build_universal(UniversalKind("X", 2, 3)), orbit_sample=True)
    assert ok


def test_reisner_disjoint_edges_false():
    K = SimplicialComplex.from_simplices([(0, 1), (2, 3)], labeled(4))
    ok, witness = reisner_check(K)
    assert not ok
    assert witness == ((), 0)
