import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supporting_plane import (ContractViolation, FarkasWitness, FastVerdict,
                              InputError, Outcome, SeparatingFunctional,
                              Verdict, VectorSet, build_functional_4x3,
                              coplanar_reduce, decide, farkas_oracle,
                              pairwise_plane_check, rank_and_basis,
                              separable_2d, theorem3_signs, verify_certificate)
from supporting_plane.separability import normalize_functional

E1, E2, E3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
SEP, NOT = Outcome.SEPARABLE, Outcome.NOT_SEPARABLE


def vs(*rows):
    return VectorSet.of(rows)


def functional(*c):
    return Verdict(SEP, SeparatingFunctional(tuple(c)))


def witness(*w):
    return Verdict(NOT, FarkasWitness(tuple(Fraction(x) for x in w)))


small = st.integers(-3, 3)
vec3 = st.tuples(small, small, small)
four3 = st.lists(vec3, min_size=4, max_size=4)


# --- verify_certificate ----------------------------------------------------

def test_verify_examples():
    assert verify_certificate(vs((1, 0), (0, 1)), functional(1, 1))
    assert verify_certificate(vs(E1, (-1, 0, 0)), witness("1/2", "1/2"))
    assert not verify_certificate(vs((1, 0), (0, 1)), functional(1, -1))


@pytest.mark.parametrize("vectors, verdict", [
    ([E1, E2], functional(0, 0, 0)),          # zero functional
    ([E1, E2], functional(1, 1)),             # wrong length
    ([E1, E2], functional(1, 0, 0)),          # f(e2) = 0 is not strict
    ([E1, (-1, 0, 0)], witness(1, 1)),        # sum is not 1
    ([E1, (-2, 0, 0)], witness("1/2", "1/2")),  # combination not zero
    ([E1, (-1, 0, 0), E2], witness("1/2", "1/2")),  # missing weight
    ([E1, E2], witness("3/2", "-1/2")),       # negative weight
    ([E1, E2], Verdict(SEP)),                 # no certificate at all
    ([E1, E2], Verdict(SEP, FarkasWitness((1, 0)))),  # mismatched kind
])
def test_verify_rejects(vectors, verdict):
    assert not verify_certificate(vs(*vectors), verdict)


# --- rank_and_basis --------------------------------------------------------

def test_rank_examples():
    assert rank_and_basis(vs(E1, E2, E3))[0] == 3
    r, basis, coords = rank_and_basis(vs((1, 2, 3), (2, 4, 6)))
    assert (r, basis, coords) == (1, [0], [(1,), (2,)])
    r, basis, coords = rank_and_basis(vs(E1, E2, (1, 1, 0), E3))
    assert r == 3 and basis == [0, 1, 3]
    assert rank_and_basis(vs(E1, E2, (1, 1, 0)))[0] == 2


@given(st.lists(st.tuples(small, small, small, small), min_size=1, max_size=7))
def test_rank_coordinates_reconstruct(rows):
    s = VectorSet(4, tuple(rows))
    r, basis, coords = rank_and_basis(s)
    assert len(basis) == r <= 4
    for x, c in zip(s.vectors, coords):
        rebuilt = [sum(ct * s[b][j] for ct, b in zip(c, basis)) for j in range(4)]
        assert rebuilt == list(x)
    # basis vectors are independent: coordinates of basis are unit vectors
    for t, b in enumerate(basis):
        assert coords[b] == tuple(1 if u == t else 0 for u in range(r))


# --- separable_2d ----------------------------------------------------------

@pytest.mark.parametrize("rows, outcome, cert", [
    ([(1, 0), (0, 1)], SEP, (1, 1)),
    ([(1, 0), (-1, 0)], NOT, (Fraction(1, 2), Fraction(1, 2))),
    ([(1, 0), (0, 1), (-1, 1)], SEP, (1, 2)),
    ([(1, 0), (0, 1), (-1, -1)], NOT, (Fraction(1, 3),) * 3),
])
def test_separable_2d_examples(rows, outcome, cert):
    s = vs(*rows)
    v = separable_2d(s)
    assert v.outcome is outcome
    assert verify_certificate(s, v)
    got = (v.certificate.coefficients if outcome is SEP else v.certificate.weights)
    assert got == cert


def test_separable_2d_single_direction_and_duplicates():
    s = vs((2, 1), (4, 2), ("0.2", "0.1"))
    v = separable_2d(s)
    assert v.separable and v.certificate.coefficients == (2, 1)


def test_separable_2d_rejects_zero():
    with pytest.raises(ValueError):
        separable_2d(vs((0, 0), (1, 0)))


@given(st.lists(st.tuples(small, small).filter(any), min_size=1, max_size=8))
def test_separable_2d_agrees_with_oracle(rows):
    s = VectorSet(2, tuple(rows))
    v = separable_2d(s)
    assert v.outcome is farkas_oracle(s).outcome
    assert verify_certificate(s, v)


# --- theorem3_signs / pairwise_plane_check --------------------------------

def test_theorem3_examples():
    signs, fast = theorem3_signs(vs(E1, E2, E3, (-1, -1, -1)))
    assert tuple(signs) == (1, 1, 1, 1) and fast is FastVerdict.NOT_SEPARABLE
    assert verify_certificate(vs(E1, E2, E3, (-1, -1, -1)), witness(1, 1, 1, 1)
                              ) is False  # weights must be normalized
    assert verify_certificate(vs(E1, E2, E3, (-1, -1, -1)),
                              witness(*["1/4"] * 4))
    signs, fast = theorem3_signs(vs(E1, E2, E3, (1, 1, 1)))
    assert signs.s1 == 1 and signs.s2 == -1 and fast is FastVerdict.SEPARABLE
    signs, fast = theorem3_signs(vs(E1, E2, (1, 1, 0), E3))
    assert signs.s1 == 0 and fast is FastVerdict.DEGENERATE


def test_theorem3_rejects_wrong_shape():
    with pytest.raises(InputError):
        theorem3_signs(vs(E1, E2, E3))
    with pytest.raises(InputError):
        theorem3_signs(vs((1, 0), (0, 1), (1, 1), (2, 1)))


def test_pairwise_examples():
    v, pair, side = pairwise_plane_check(vs(E1, E2, E3, (1, 1, 1)))
    assert v.separable and pair == (0, 1) and side == 1
    tet = vs((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1))
    assert pairwise_plane_check(vs(E1, E2, E3, (-1, -1, -1)))[0].outcome is NOT
    assert pairwise_plane_check(tet)[0].outcome is NOT
    with pytest.raises(ValueError):
        pairwise_plane_check(vs(E1, E2, (1, 1, 0), E3))


@settings(max_examples=400)
@given(four3)
def test_sign_test_matches_pairwise(rows):
    s = VectorSet(3, tuple(rows))
    signs, fast = theorem3_signs(s)
    if fast is FastVerdict.DEGENERATE:
        return
    assert pairwise_plane_check(s)[0].separable == (fast is FastVerdict.SEPARABLE)


# --- build_functional_4x3 --------------------------------------------------

def test_build_functional_examples():
    s = vs(E1, E2, E3, (1, 1, 1))
    f = build_functional_4x3(s, (0, 1), 1)
    assert f.coefficients == (1, 1, 1)
    assert [f(x) for x in s.vectors] == [1, 1, 1, 3]
    # P(e1, e3) leaves e2 and (1,1,1) both at det = -1.
    f = build_functional_4x3(s, (0, 2), -1)
    assert verify_certificate(s, Verdict(SEP, f))
    with pytest.raises(ValueError):
        build_functional_4x3(s, (0, 2), 1)


def test_build_functional_needs_obtuse_branch():
    # x_i . x_j < 0 exercises the Gram-value construction of the tilt.
    s = vs((1, 0, 0), (-1, 1, 0), (0, 1, 1), (0, -1, 1))
    v, pair, side = pairwise_plane_check(s)
    assert v.separable and pair == (0, 1) and side == 1
    f = build_functional_4x3(s, (0, 1), side)
    assert verify_certificate(s, Verdict(SEP, f))


def test_build_functional_antipodal_is_error():
    s = vs(E1, (-1, 0, 0), E2, E3)
    with pytest.raises(ValueError):
        build_functional_4x3(s, (0, 1), 1)


@settings(max_examples=400)
@given(four3)
def test_build_functional_every_qualifying_pair(rows):
    s = VectorSet(3, tuple(rows))
    if theorem3_signs(s)[1] is not FastVerdict.SEPARABLE:
        return
    x = s.vectors
    from supporting_plane import sign_det3
    for i, j in itertools.combinations(range(4), 2):
        r, t = (u for u in range(4) if u not in (i, j))
        side = sign_det3(x[i], x[j], x[r])
        if side == sign_det3(x[i], x[j], x[t]):
            f = build_functional_4x3(s, (i, j), side)
            assert verify_certificate(s, Verdict(SEP, f))


# --- coplanar_reduce -------------------------------------------------------

def test_coplanar_examples():
    s = vs(E1, E2, (1, 1, 0), E3)
    v = coplanar_reduce(s, (0, 1, 2))
    assert v.separable and verify_certificate(s, v)
    assert verify_certificate(s, functional(1, 1, 1))
    assert farkas_oracle(s).separable

    s = vs(E1, E2, (-1, -1, 0), E3)
    v = coplanar_reduce(s, (0, 1, 2))
    assert v.outcome is NOT
    assert v.certificate.weights == (Fraction(1, 3),) * 3 + (0,)

    s = vs(E1, E2, (1, 1, 0), (2, 1, 0))
    assert decide(s, True).separable


def test_coplanar_contract():
    with pytest.raises(ContractViolation):
        coplanar_reduce(vs(E1, E2, E3, (1, 1, 1)), (0, 1, 2))


@settings(max_examples=400)
@given(four3)
def test_coplanar_reduce_any_dependent_triple(rows):
    # The reduction holds for every coplanar triple, not just the first.
    s = VectorSet(3, tuple(rows))
    if any(not any(x) for x in rows) or rank_and_basis(s)[0] != 3:
        return
    expected = farkas_oracle(s).outcome
    for tri in itertools.combinations(range(4), 3):
        if rank_and_basis(VectorSet(3, tuple(rows[t] for t in tri)))[0] == 2:
            v = coplanar_reduce(s, tri)
            assert v.outcome is expected
            assert verify_certificate(s, v)


# --- decide ----------------------------------------------------------------

@pytest.mark.parametrize("rows, outcome, cert", [
    ([E1, E2, E3, (1, 1, 1)], SEP, (1, 1, 1)),
    ([(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)], NOT,
     (Fraction(1, 4),) * 4),
    ([(1, 0, 0), (2, 0, 0), ("1/2", 0, 0)], SEP, (1, 0, 0)),
    ([(1, 0, 0), (-1, 0, 0), (0, 0, 1)], NOT, (Fraction(1, 2), Fraction(1, 2), 0)),
])
def test_decide_examples(rows, outcome, cert):
    rows = [[Fraction(c) if isinstance(c, str) else c for c in r] for r in rows]
    s = VectorSet.of(rows)
    v = decide(s, want_certificate=True)
    assert v.outcome is outcome
    assert verify_certificate(s, v)
    got = v.certificate.coefficients if outcome is SEP else v.certificate.weights
    assert got == cert
    assert decide(s).outcome is outcome


def test_decide_empty_and_zero():
    empty = VectorSet(3, ())
    assert decide(empty).separable
    assert verify_certificate(empty, decide(empty, True))
    s = vs(E1, (0, 0, 0), E2)
    v = decide(s, True)
    assert v.outcome is NOT and v.certificate.weights == (0, 1, 0)


def test_decide_dimension_mismatch():
    with pytest.raises(InputError):
        vs((1, 0), (0, 1, 0))


def test_decide_oracle_bounds():
    with pytest.raises(InputError):
        decide(VectorSet(9, tuple(tuple(int(i == j) for j in range(9))
                                  for i in range(9))))
    with pytest.raises(InputError):
        farkas_oracle(VectorSet(2, ((1, 0),) * 65))


@pytest.mark.parametrize("rows, outcome", [
    # rank 3 inside R^4 with k = 4 goes through the fast path in coordinates
    ([(1, 0, 0, 5), (0, 1, 0, 5), (0, 0, 1, 5), (-1, -1, -1, -15)], NOT),
    ([(1, 0, 0, 5), (0, 1, 0, 5), (0, 0, 1, 5), (1, 1, 1, 15)], SEP),
    # rank 2 and rank 1 in R^5
    ([(1, 2, 0, 0, 1), (2, 1, 0, 0, 1), (-3, -3, 0, 0, -2)], NOT),
    ([(1, 2, 0, 0, 1), (2, 1, 0, 0, 1), (3, 3, 0, 0, 2)], SEP),
    ([(1, 1, 1, 1, 1), (-2, -2, -2, -2, -2)], NOT),
    ([(1, 1, 1, 1, 1), ("2.5", "2.5", "2.5", "2.5", "2.5")], SEP),
    # k = 5 in R^3 uses the oracle
    ([E1, E2, E3, (1, 1, 1), (2, 1, 1)], SEP),
    ([E1, E2, E3, (1, 1, 1), (-1, -1, -1)], NOT),
    # d = 1
    ([(3,), ("0.5",)], SEP),
    ([(3,), (-1,)], NOT),
])
def test_decide_dispatch(rows, outcome):
    s = VectorSet.of(rows)
    v = decide(s, True)
    assert v.outcome is outcome is farkas_oracle(s).outcome
    assert verify_certificate(s, v)


def test_kernel_witness_identity():
    # w_i from 3x3 minors combine four vectors in R^3 to zero.
    from supporting_plane import det3
    rng = random.Random(5)
    for _ in range(200):
        x1, x2, x3, x4 = [tuple(rng.randint(-9, 9) for _ in range(3))
                          for _ in range(4)]
        w = (det3(x2, x3, x4), -det3(x1, x3, x4), det3(x1, x2, x4),
             -det3(x1, x2, x3))
        assert all(sum(wi * x[j] for wi, x in zip(w, (x1, x2, x3, x4))) == 0
                   for j in range(3))


# --- invariants ------------------------------------------------------------

@settings(max_examples=300)
@given(four3)
def test_certificates_always_verify(rows):
    s = VectorSet(3, tuple(rows))
    v = decide(s, True)
    assert verify_certificate(s, v)
    assert v.outcome is farkas_oracle(s).outcome


@settings(max_examples=150)
@given(st.integers(1, 5), st.integers(1, 8), st.data())
def test_oracle_certificates_any_shape(dim, k, data):
    rows = data.draw(st.lists(st.lists(st.fractions(-5, 5, max_denominator=4),
                                       min_size=dim, max_size=dim),
                              min_size=k, max_size=k))
    s = VectorSet.of(rows)
    v = farkas_oracle(s)
    assert verify_certificate(s, v)
    assert decide(s).outcome is v.outcome


def test_mutual_exclusivity_on_not_separable():
    rng = random.Random(11)
    seen = 0
    while seen < 50:
        rows = [tuple(rng.randint(-4, 4) for _ in range(3)) for _ in range(4)]
        s = VectorSet(3, tuple(rows))
        if decide(s).separable:
            continue
        seen += 1
        for _ in range(100):
            f = tuple(Fraction(rng.randint(-50, 50), rng.randint(1, 9))
                      for _ in range(3))
            assert any(sum(a * b for a, b in zip(f, x)) <= 0 for x in rows)


@given(vec3.filter(any), st.lists(vec3, max_size=4), st.randoms())
def test_antipodal_and_zero_rules(x, rest, rnd):
    neg = tuple(-c for c in x)
    rows = rest + [x, neg]
    rnd.shuffle(rows)
    assert not decide(VectorSet(3, tuple(rows))).separable
    rows = rest + [(0, 0, 0)]
    assert not decide(VectorSet(3, tuple(rows))).separable


@given(four3, st.lists(st.fractions(Fraction(1, 10), 10), min_size=4, max_size=4))
def test_positive_scaling(rows, scales):
    scaled = [tuple(s * c for c in r) for r, s in zip(rows, scales)]
    assert decide(VectorSet(3, tuple(rows))).outcome is \
        decide(VectorSet(3, tuple(scaled))).outcome


def _apply(m, x):
    return tuple(sum(m[i][j] * x[j] for j in range(3)) for i in range(3))


@given(four3, st.lists(st.lists(small, min_size=3, max_size=3), min_size=3,
                       max_size=3))
def test_linear_invariance_and_certificate_transport(rows, m):
    from supporting_plane import det3
    if det3(*[tuple(r[j] for r in m) for j in range(3)]) == 0:
        return
    s = VectorSet(3, tuple(rows))
    t = VectorSet(3, tuple(_apply(m, x) for x in rows))
    v, w = decide(s, True), decide(t, True)
    assert v.outcome is w.outcome
    if v.separable:
        # f o M^-1 separates the image: solve g M = f.
        from supporting_plane.separability import _solve
        mt = [[m[j][i] for j in range(3)] for i in range(3)]
        g = _solve(mt, v.certificate.coefficients)
        assert verify_certificate(t, functional(*normalize_functional(g)))
    else:
        assert verify_certificate(t, v)  # weights are unchanged by M
