"""Block splitting by similarity: certificates and eigenvalue series."""

import random
from fractions import Fraction

import pytest

from specrig.errors import NotRegularSemisimple, SpecrigError, SpectraOverlap
from specrig.matrf import localize
from specrig.series import Series
from specrig.splitting import (cmat_charpoly, cmat_identity, cmat_mul,
                               full_split, htl_from_reduction, null_vector,
                               ramified_pullback, smat_mul, smat_sub,
                               solve_linear, split_once, sylvester_solve)
from specrig.tower import FieldTower

from conftest import mat


F = Fraction


def smat(rows, prec=None):
    """Series matrix from {exp: coeff} dicts / numbers."""
    out = []
    for row in rows:
        srow = []
        for c in row:
            if isinstance(c, dict):
                srow.append(Series({e: F(v) for e, v in c.items()}, prec))
            elif c:
                srow.append(Series.const(F(c), prec))
            else:
                srow.append(Series.zero(prec))
        out.append(srow)
    return out


class TestLinearAlgebra:
    def test_solve_linear(self):
        m = [[F(2), F(1)], [F(1), F(3)]]
        x = solve_linear(m, [F(5), F(10)])
        assert x == [F(1), F(3)]

    def test_solve_singular_raises(self):
        with pytest.raises(SpectraOverlap):
            solve_linear([[F(1), F(1)], [F(2), F(2)]], [F(1), F(1)])

    def test_null_vector(self):
        a = [[F(1), F(2)], [F(2), F(4)]]
        v = null_vector(a)
        assert any(v)
        assert all(sum(r[j] * v[j] for j in range(2)) == 0 for r in a)

    def test_cmat_charpoly(self):
        cp = cmat_charpoly([[F(1), F(2)], [F(3), F(4)]])
        # y^2 - 5y - 2
        assert cp.coeffs == (F(-2), F(-5), F(1))


class TestSylvester:
    def test_scalar(self):
        t = sylvester_solve([[F(1)]], [[F(2)]], [[F(3)]])
        assert t == [[F(3)]]

    def test_defining_equation(self):
        p = [[F(0), F(1)], [F(-1), F(0)]]
        q = [[F(5)]]
        c = [[F(2)], [F(3)]]
        t = sylvester_solve(p, q, c)
        lhs = [[t[i][0] * 5 - sum(p[i][k] * t[k][0] for k in range(2))]
               for i in range(2)]
        assert lhs == c

    def test_overlapping_spectra(self):
        with pytest.raises(SpectraOverlap):
            sylvester_solve([[F(1)]], [[F(1)]], [[F(1)]])


class TestSplitOnce:
    def test_eigenvalue_series_2x2(self):
        # [[1, t], [t, 2]]: eigenvalues 1 - t^2 + ..., 2 + t^2 + ...
        g = smat([[1, {1: 1}], [{1: 1}, 2]], prec=4)
        cert = split_once(g, 1)
        b1, b2 = cert.block(0)[0][0], cert.block(1)[0][0]
        assert b1.coeff(0) == 1 and b1.coeff(2) == -1
        assert b2.coeff(0) == 2 and b2.coeff(2) == 1
        assert b1.coeff(1) == 0 and b2.coeff(1) == 0

    def test_residual_vanishes(self):
        g = smat([[0, {1: 2}], [{2: -1}, 3]], prec=6)
        cert = split_once(g, 1)
        resid = smat_sub(smat_mul(cert.T, g), smat_mul(cert.B, cert.T))
        assert all(e.known_zero_to_prec() for row in resid for e in row)

    def test_block_diagonal_required(self):
        g = smat([[0, 1], [1, 3]], prec=4)
        with pytest.raises(SpecrigError):
            split_once(g, 1)

    def test_trace_preserved(self):
        g = smat([[1, {1: 3}], [{1: -2}, 4]], prec=5)
        cert = split_once(g, 1)
        tr = cert.block(0)[0][0] + cert.block(1)[0][0]
        orig = g[0][0] + g[1][1]
        diff = tr - orig
        assert diff.known_zero_to_prec()

    def test_3x3_blocks(self):
        g = smat([[1, 0, {1: 1}],
                  [0, 2, {2: 1}],
                  [{1: -1}, {1: 1}, 5]], prec=5)
        cert = split_once(g, 2)
        top = cert.block(0)
        assert len(top) == 2
        resid = smat_sub(smat_mul(cert.T, g), smat_mul(cert.B, cert.T))
        assert all(e.known_zero_to_prec() for row in resid for e in row)


class TestFullSplit:
    def test_distinct_leading_eigenvalues(self):
        g = smat([[1, {1: 1}], [{1: 1}, 2]], prec=4)
        eigs = full_split(g, FieldTower())
        assert sorted(e.coeff(0) for e in eigs) == [1, 2]

    def test_scalar_stripping(self):
        # 3/t * I + diag-splittable remainder
        g = smat([[{-1: 3, 0: 1}, {1: 1}], [{1: 1}, {-1: 3, 0: 2}]], prec=4)
        eigs = full_split(g, FieldTower())
        assert sorted(e.coeff(-1) for e in eigs) == [3, 3]
        assert sorted(e.coeff(0) for e in eigs) == [1, 2]

    def test_nilpotent_leading_raises(self):
        g = smat([[0, 1], [{1: 1}, 0]], prec=4)
        with pytest.raises(NotRegularSemisimple):
            full_split(g, FieldTower())

    def test_balancing(self):
        # diag power gauge separates [[0, 1], [t^2, 0]]
        g = smat([[0, 1], [{2: 1}, 0]], prec=6)
        eigs = full_split(g, FieldTower())
        leads = sorted(e.leading() for e in eigs)
        assert [e.valuation() for e in eigs] == [1, 1]
        assert leads == [-1, 1]


class TestPullback:
    def test_rescaling(self):
        g = smat([[{-2: 1}]])
        gt = ramified_pullback(g, 3)
        # z = t^3: (1/z^2) dz/... -> 3 t^{-4} in the t chart
        assert gt[0][0].terms == {F(-4): 3}

    def test_identity_order(self):
        g = smat([[{0: 5}]])
        assert ramified_pullback(g, 1)[0][0].terms == {F(0): 5}

    def test_invalid_order(self):
        with pytest.raises(SpecrigError):
            ramified_pullback(smat([[1]]), 0)


class TestHtlFromReduction:
    def test_airy_cells(self):
        a = mat([["0", "1"], ["z", "0"]])
        g, _ = localize(a, "inf", 12)
        cells = htl_from_reduction(g, 2, FieldTower())
        assert len(cells) == 2
        qs = [q for q, _ in cells]
        assert all(list(q.terms) == [F(-3, 2)] for q in qs)
        c1, c2 = qs[0].terms[F(-3, 2)], qs[1].terms[F(-3, 2)]
        assert c1 == -c2 and c1 * c1 == 1
        assert cells[0][1] + cells[1][1] == 0  # residues sum to the trace

    def test_rank1(self):
        g = smat([[{-2: 1, -1: 5}]])
        cells = htl_from_reduction(g, 1, FieldTower())
        assert len(cells) == 1
        q, residue = cells[0]
        assert q.terms == {F(-1): 1}
        assert residue == 5

    def test_regular_diagonal(self):
        g = smat([[{-1: F(1, 2)}, 0], [0, {-1: F(1, 3)}]], prec=4)
        cells = htl_from_reduction(g, 1, FieldTower())
        assert sorted(res for _, res in cells) == [F(1, 3), F(1, 2)]
        assert all(not q.terms for q, _ in cells)


def random_split_example(rng):
    """Block-diagonal leading matrix with disjoint rational spectra plus
    random higher-order noise; returns (matrix, n1)."""
    n1 = rng.randint(1, 2)
    n2 = rng.randint(1, 2)
    n = n1 + n2
    spec1 = rng.sample(range(-5, 5), n1)
    spec2 = rng.sample(range(6, 15), n2)
    a0 = [[F(0)] * n for _ in range(n)]
    for i, e in enumerate(spec1):
        a0[i][i] = F(e)
        for j in range(i):
            a0[j][i] = F(rng.randint(-2, 2))
    for i, e in enumerate(spec2):
        a0[n1 + i][n1 + i] = F(e)
        for j in range(i):
            a0[n1 + j][n1 + i] = F(rng.randint(-2, 2))
    order = rng.randint(3, 12)
    lead = rng.randint(-3, 0)
    g = []
    for i in range(n):
        row = []
        for j in range(n):
            terms = {lead: a0[i][j]}
            for m in range(1, order + 1):
                terms[lead + m] = F(rng.randint(-3, 3))
            row.append(Series(terms, lead + order + 1))
        g.append(row)
    return g, n1


def test_randomized_certificates():
    rng = random.Random(2024)
    for _ in range(20):
        g, n1 = random_split_example(rng)
        cert = split_once(g, n1)
        resid = smat_sub(smat_mul(cert.T, g), smat_mul(cert.B, cert.T))
        assert all(e.known_zero_to_prec() for row in resid for e in row)
        n = len(g)
        for i in range(n):
            for j in range(n):
                if (i < n1) != (j < n1):
                    assert not cert.B[i][j].terms
