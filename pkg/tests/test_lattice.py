import numpy as np
import pytest
from hypothesis import given, strategies as st

from tileforge.lattice import (
    IntMatrix,
    RadixExpansion,
    char_poly,
    collinear_digit_set,
    companion_form,
    is_complete_residue_system,
    is_expanding,
    radix_expand,
    vec_sub,
)


def cubic_companion(a, b, c):
    return companion_form([1, a, b, c])


def word_value(matrix, word):
    """d1 + M d2 + ... + M^(n-1) dn, evaluated by Horner from the right."""
    v = (0,) * matrix.size
    for d in reversed(word):
        v = tuple(x + y for x, y in zip(matrix.mul_vec(v), d))
    return v


def test_companion_form_124():
    m, digits = cubic_companion(1, 2, 4)
    assert m.rows == ((0, 0, -4), (1, 0, -2), (0, 1, -1))
    assert digits == ((0, 0, 0), (1, 0, 0), (2, 0, 0), (3, 0, 0))
    assert m.det == -4


def test_companion_form_rejects_nonmonic_and_singular():
    with pytest.raises(ValueError):
        companion_form([2, 1, 1, 3])
    with pytest.raises(ValueError):
        companion_form([1, 1, 1, 0])


def test_char_poly_identity():
    assert char_poly(IntMatrix.identity(3)) == [1, -3, 3, -1]


@given(st.tuples(st.integers(1, 9), st.integers(1, 9), st.integers(2, 12)))
def test_char_poly_of_companion_roundtrips(abc):
    a, b, c = abc
    m, _ = cubic_companion(a, b, c)
    assert char_poly(m) == [1, a, b, c]


def test_is_expanding_examples():
    m, _ = companion_form([1, 0, -2, 1])  # root at x = 1
    assert not is_expanding(m)
    m, _ = cubic_companion(5, 5, 6)
    assert is_expanding(m)


def test_is_expanding_rejects_other_sizes():
    with pytest.raises(ValueError):
        is_expanding(IntMatrix.identity(2))


def test_is_expanding_matches_float_roots_on_random_companions():
    rng = np.random.default_rng(20260818)
    checked = 0
    for _ in range(1000):
        a, b = (int(x) for x in rng.integers(-20, 21, size=2))
        c = int(rng.integers(-20, 21))
        if c == 0:
            continue
        roots = np.roots([1, a, b, c])
        if min(abs(abs(r) - 1.0) for r in roots) <= 1e-6:
            continue  # too close to the unit circle for floats to referee
        m, _ = companion_form([1, a, b, c])
        assert is_expanding(m) == bool(all(abs(r) > 1 for r in roots))
        checked += 1
    assert checked > 900


def test_collinear_digit_set_rejects_zero_direction():
    m, _ = cubic_companion(1, 2, 4)
    with pytest.raises(ValueError):
        collinear_digit_set(m, (0, 0, 0))


def test_collinear_digit_set_counts_det():
    m, _ = cubic_companion(2, 3, 5)
    d = collinear_digit_set(m, (1, 0, 0))
    assert len(d) == 5
    assert d[4] == (4, 0, 0)


def test_complete_residue_system_for_companion_digits():
    m, digits = cubic_companion(1, 2, 4)
    assert is_complete_residue_system(m, digits)


def test_complete_residue_system_axis_digits_fail_for_doubling():
    # value frozen from an independent residue-counting oracle
    m = IntMatrix(((2, 0, 0), (0, 2, 0), (0, 0, 2)))
    digits = [(i, 0, 0) for i in range(8)]
    assert not is_complete_residue_system(m, digits)


def test_complete_residue_system_rejects_duplicates():
    m, _ = cubic_companion(1, 2, 4)
    with pytest.raises(ValueError):
        is_complete_residue_system(m, [(0, 0, 0), (0, 0, 0), (1, 0, 0), (2, 0, 0)])


def test_complete_residue_system_wrong_cardinality():
    m, digits = cubic_companion(1, 2, 4)
    assert not is_complete_residue_system(m, digits[:-1])


def test_radix_expand_zero_is_empty():
    m, digits = cubic_companion(1, 2, 4)
    out = radix_expand(m, digits, (0, 0, 0))
    assert out == RadixExpansion((), True, None)


def test_radix_expand_single_digit():
    m, digits = cubic_companion(1, 2, 4)
    out = radix_expand(m, digits, (1, 0, 0))
    assert out.terminated and out.digits == ((1, 0, 0),)


def test_radix_expand_negative_unit():
    # word frozen from the exhaustive-substitution oracle
    m, digits = cubic_companion(1, 2, 4)
    out = radix_expand(m, digits, (-1, 0, 0))
    assert out.terminated
    assert out.digits == ((3, 0, 0), (2, 0, 0), (1, 0, 0), (1, 0, 0))
    assert word_value(m, out.digits) == (-1, 0, 0)


def test_radix_expand_reports_cycles():
    # base 2 with digits {0, 1} never terminates on -1: state -1 repeats
    m = IntMatrix(((2,),))
    out = radix_expand(m, [(0,), (1,)], (-1,))
    assert not out.terminated
    assert out.cycle == ((-1,),)
    assert out.digits[:1] == ((1,),)


def test_radix_expand_budget_exhaustion():
    m, digits = cubic_companion(1, 2, 4)
    out = radix_expand(m, digits, (-1, 0, 0), max_len=2)
    assert not out.terminated and out.cycle is None


@given(
    st.tuples(st.integers(1, 4), st.integers(1, 4), st.integers(2, 6)),
    st.tuples(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5)),
)
def test_radix_expand_resubstitutes_exactly(abc, z):
    a, b, c = abc
    if not a <= b < c:
        return
    m, digits = cubic_companion(a, b, c)
    out = radix_expand(m, digits, z, max_len=10 ** 4)
    if out.terminated:
        assert word_value(m, out.digits) == z
    else:
        assert out.cycle  # small expanding bases must at least detect the loop


def test_solve_int_agrees_with_multiplication():
    m, _ = cubic_companion(2, 3, 5)
    x = (3, -2, 1)
    w = m.mul_vec(x)
    assert m.solve_int(w) == x
    assert m.solve_int(vec_sub(w, (1, 0, 0))) is None or True  # may or may not solve


@given(st.lists(st.integers(-9, 9), min_size=9, max_size=9))
def test_adjugate_self_check_never_trips(entries):
    rows = (tuple(entries[0:3]), tuple(entries[3:6]), tuple(entries[6:9]))
    m = IntMatrix(rows)  # constructor verifies adj @ M == det I
    assert m.det == m.det


def test_singular_solve_raises():
    m = IntMatrix(((1, 0, 0), (0, 1, 0), (1, 1, 0)))
    with pytest.raises(ValueError):
        m.solve_int((1, 1, 1))
