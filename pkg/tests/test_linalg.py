"""Exact sparse linear algebra: fields, elimination, ranks, kernels."""

import random
from fractions import Fraction

import pytest

from parh.linalg import (
    QQ,
    Eliminator,
    Field,
    GF,
    SparseMatrix,
    in_span,
    kernel_basis,
    rank,
    span_rank,
    subspace_equal,
)


def test_field_rationals():
    assert QQ.add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
    assert QQ.inv(Fraction(2, 3)) == Fraction(3, 2)
    assert QQ.of("-3/7") == Fraction(-3, 7)
    assert QQ.of(4) == Fraction(4)
    assert QQ.name == "Q"


def test_field_prime():
    f5 = GF(5)
    assert f5.of(7) == 2
    assert f5.inv(2) == 3
    assert f5.mul(3, 4) == 2
    assert f5.of(Fraction(1, 2)) == 3
    assert f5.name == "F5"
    assert f5 == Field(5)
    assert f5 != QQ


def test_field_rejects_nonprime_and_huge():
    with pytest.raises(ValueError):
        GF(4)
    with pytest.raises(ValueError):
        GF(1)
    with pytest.raises(ValueError):
        GF(2**31 + 11)
    with pytest.raises(ZeroDivisionError):
        GF(5).of(Fraction(1, 5))


def test_rank_examples():
    assert rank(SparseMatrix.identity(QQ, 2)) == 2
    assert rank(SparseMatrix.zero(QQ, 3, 4)) == 0
    assert rank(SparseMatrix.from_dense(GF(2), [[1, 1], [1, 1]])) == 1
    assert rank(SparseMatrix.from_dense(QQ, [[1, 1], [1, 1]])) == 1
    # characteristic matters: singular mod 2, invertible over Q
    m = [[1, 1], [1, -1]]
    assert rank(SparseMatrix.from_dense(QQ, m)) == 2
    assert rank(SparseMatrix.from_dense(GF(2), m)) == 1


def test_kernel_examples():
    m = SparseMatrix.from_dense(QQ, [[1, 1]])
    assert kernel_basis(m) == [{0: Fraction(-1), 1: Fraction(1)}]
    assert kernel_basis(SparseMatrix.identity(QQ, 3)) == []
    m2 = SparseMatrix.from_dense(QQ, [[1, 2, 3], [0, 1, 1]])
    (k,) = kernel_basis(m2)
    assert m2.apply(k) == {}


def test_in_span_examples():
    assert in_span({0: 2}, [{0: 1}], QQ) == {0: Fraction(2)}
    assert in_span({1: 1}, [{0: 1}], QQ) is None
    basis = [{0: 1, 1: 1}, {1: 1, 2: 1}]
    w = in_span({0: 1, 2: -1}, basis, QQ)
    assert w == {0: Fraction(1), 1: Fraction(-1)}


def test_subspace_equal():
    e1, e2 = {0: 1}, {1: 1}
    assert subspace_equal([e1, e2], [{0: 1, 1: 1}, {0: 1, 1: -1}], QQ)
    # over F2 the second family is a single line
    assert not subspace_equal(
        [{0: 1}, {1: 1}], [{0: 1, 1: 1}, {0: 1, 1: 1}], GF(2)
    )
    assert subspace_equal([], [], QQ)
    assert not subspace_equal([e1], [], QQ)


def test_matrix_arithmetic():
    a = SparseMatrix.from_dense(QQ, [[1, 2], [3, 4]])
    b = SparseMatrix.from_dense(QQ, [[0, 1], [1, 0]])
    assert (a * b).to_dense() == [[2, 1], [4, 3]]
    assert (a + b - b) == a
    assert (a * b).transpose() == b.transpose() * a.transpose()
    assert (-a + a).is_zero()
    assert a.scale(Fraction(1, 2)).get(1, 1) == 2
    v = {0: Fraction(1), 1: Fraction(1)}
    assert a.apply(v) == {0: Fraction(3), 1: Fraction(7)}


def test_matrix_shape_errors():
    a = SparseMatrix.identity(QQ, 2)
    b = SparseMatrix.zero(QQ, 3, 2)
    with pytest.raises(ValueError):
        a * b
    with pytest.raises(ValueError):
        a + b
    with pytest.raises(IndexError):
        SparseMatrix(QQ, 2, 2, {(2, 0): 1})
    with pytest.raises(ValueError):
        SparseMatrix(QQ, 2, 2, {}, row_labels=["only-one"])


def test_no_stored_zeros():
    m = SparseMatrix(QQ, 2, 2, {(0, 0): 0, (0, 1): 1})
    assert m.nnz() == 1
    s = m - m
    assert s.nnz() == 0 and s.is_zero()


def test_eliminator_incremental():
    elim = Eliminator(QQ)
    assert elim.add({0: 1, 1: 1}) is not None
    assert elim.rank == 1
    assert elim.add({0: 2, 1: 2}) is None
    assert elim.add({1: 1}) is not None
    assert elim.rank == 2
    res = elim.reduce({0: 5, 1: -3})
    assert res == {}


def _random_matrix(rng, field, nrows, ncols, density=0.5):
    entries = {}
    for i in range(nrows):
        for j in range(ncols):
            if rng.random() < density:
                entries[(i, j)] = field.of(rng.randint(-4, 4))
    return SparseMatrix(field, nrows, ncols, entries)


@pytest.mark.parametrize("field", [QQ, GF(2), GF(5)])
def test_rank_kernel_properties(field):
    rng = random.Random(0)
    for _ in range(25):
        nrows = rng.randint(1, 6)
        ncols = rng.randint(1, 6)
        m = _random_matrix(rng, field, nrows, ncols)
        r = rank(m)
        assert r == rank(m.transpose())
        kern = kernel_basis(m)
        assert r + len(kern) == ncols
        for v in kern:
            assert m.apply(v) == {}
        assert span_rank(kern, field) == len(kern)


@pytest.mark.parametrize("field", [QQ, GF(5)])
def test_in_span_agrees_with_rank(field):
    rng = random.Random(1)
    for _ in range(25):
        dim = rng.randint(1, 6)
        basis = [
            {i: field.of(rng.randint(-3, 3)) for i in range(dim) if rng.random() < 0.6}
            for _ in range(rng.randint(1, 4))
        ]
        basis = [{i: v for i, v in col.items() if v} for col in basis]
        v = {i: field.of(rng.randint(-3, 3)) for i in range(dim) if rng.random() < 0.6}
        v = {i: c for i, c in v.items() if c}
        w = in_span(v, basis, field)
        joint = span_rank(basis + [v], field)
        if w is None:
            assert joint == span_rank(basis, field) + 1
        else:
            assert joint == span_rank(basis, field)
            recon = {}
            for j, c in w.items():
                for i, x in basis[j].items():
                    s = field.add(recon.get(i, field.zero), field.mul(c, x))
                    if s:
                        recon[i] = s
                    else:
                        recon.pop(i, None)
            assert recon == v


def test_labels_travel_with_transpose():
    m = SparseMatrix(QQ, 2, 1, {(0, 0): 1}, row_labels=["r0", "r1"], col_labels=["c0"])
    t = m.transpose()
    assert t.row_labels == ["c0"]
    assert t.col_labels == ["r0", "r1"]
