import numpy as np
import pytest

from rankform.closed_forms import (
    closed_form,
    complete_r2,
    complete_to_line_r2,
    complete_with_outlink_r2,
    line_r2,
    line_sharing_node_r2,
    line_split_r2,
    line_to_complete_r2,
    line_with_attached_node_r2,
    line_with_backlink_inverse,
    line_with_backlink_r2,
)
from rankform.errors import COutOfRange, InvalidParams
from rankform.graph import StructureKind, StructureSpec, generate
from rankform.linalg import invert, system_matrix
from rankform.solver import pagerank_r2
from tests.conftest import small_structures

K = StructureKind
GRID_C = (0.05, 0.3, 0.5, 0.85, 0.95)


def _assert_matches_solver(spec, cs=GRID_C):
    g = generate(spec)
    for c in cs:
        expected = pagerank_r2(g, c).values
        result = closed_form(spec, c)
        assert result.r2.shape == expected.shape, spec
        np.testing.assert_allclose(result.r2, expected, rtol=0, atol=1e-9, err_msg=str(spec))


class TestExamples:
    def test_line(self):
        np.testing.assert_allclose(line_r2(5, 0.85).r2, [3.70863125, 3.186625, 2.5725, 1.85, 1.0], rtol=1e-12)
        np.testing.assert_array_equal(line_r2(1, 0.3).r2, [1.0])
        np.testing.assert_allclose(line_r2(3, 0.5).r2, [1.75, 1.5, 1.0], rtol=1e-15)

    def test_attached_node(self):
        r = line_with_attached_node_r2(5, 3, 0.5)
        assert r[3] == pytest.approx(2.25)
        assert r[4] == pytest.approx(1.5)
        assert r[6] == pytest.approx(1.0)

        r = line_with_attached_node_r2(2, 2, 0.85)
        assert r[2] == pytest.approx(1.85)
        assert r[1] == pytest.approx(2.5725)

    def test_complete(self):
        np.testing.assert_allclose(complete_r2(5, 0.85).r2, 1 / 0.15, rtol=1e-12)
        np.testing.assert_allclose(complete_r2(2, 0.5).r2, [2.0, 2.0])
        np.testing.assert_allclose(complete_r2(5, 0.85).r1, 0.2)

    def test_complete_with_outlink(self):
        r = complete_with_outlink_r2(5, 0.85)
        assert r[1] == pytest.approx(24.25 / 4.36, rel=1e-12)
        for node in range(2, 6):
            assert r[node] == pytest.approx(23.4 / 4.36, rel=1e-12)
        assert len(r.r2) == 6
        assert r[1] > r[2]

    def test_complete_to_line(self):
        _assert_matches_solver(StructureSpec(K.COMPLETE_TO_LINE, n_L=5, n_G=5, j=3), cs=(0.85,))
        r = complete_to_line_r2(5, 4, 1, 0.6)
        np.testing.assert_allclose(r.r2[1:5], line_r2(5, 0.6).r2[1:5], rtol=1e-15)
        assert r[1] > line_r2(5, 0.6)[1]

    def test_line_to_complete(self):
        _assert_matches_solver(StructureSpec(K.LINE_TO_COMPLETE, n_L=5, n_G=5, j=3), cs=(0.85,))

    def test_line_sharing_node(self):
        _assert_matches_solver(
            StructureSpec(K.LINE_SHARING_NODE_WITH_COMPLETE, n_L=10, n_G=10, j=6), cs=(0.85,)
        )
        _assert_matches_solver(
            StructureSpec(K.LINE_SHARING_NODE_WITH_COMPLETE, n_L=6, n_G=2, j=1), cs=(0.3, 0.85)
        )

    def test_line_split(self):
        for c in (0.1, 0.5, 0.85, 0.99):
            expected = [1 + c, 1.0, 1 + c + c * c, 1 + c, 1.0]
            r = line_split_r2(5, 2, c)
            np.testing.assert_allclose(r.r2, expected, rtol=0, atol=1e-12)
            assert r.normalizer == pytest.approx(5 + 3 * c + c * c, abs=1e-12)
            np.testing.assert_allclose(pagerank_r2(generate(r.spec), c).values, expected, atol=1e-12)

    def test_backlink_inverse(self):
        inv = line_with_backlink_inverse(5, 0.5)
        assert inv[0, 0] == pytest.approx(4.0 / 3.0)
        assert inv[0, 1] == pytest.approx(2.0 / 3.0)

        s = 1.0 / (1.0 - 0.85 ** 2)
        np.testing.assert_allclose(line_with_backlink_inverse(2, 0.85), [[s, s * 0.85], [s * 0.85, s]])

        for n_L in (2, 3, 6, 12):
            for c in (0.2, 0.85):
                dense = invert(system_matrix(generate(StructureSpec(K.LINE_WITH_BACKLINK, n_L=n_L)), c))
                np.testing.assert_allclose(line_with_backlink_inverse(n_L, c), dense, atol=1e-9)

    def test_backlink_rows_below_cycle_are_line_rows(self):
        inv = line_with_backlink_inverse(6, 0.7)
        for row in range(2, 6):
            for col in range(6):
                expected = 0.7 ** (col - row) if col >= row else 0.0
                assert inv[row, col] == pytest.approx(expected, abs=1e-15)

    def test_small_c_limit(self):
        for spec in small_structures():
            np.testing.assert_allclose(closed_form(spec, 1e-12).r2, 1.0, atol=1e-11, err_msg=str(spec))


class TestErrors:
    def test_invalid_parameters(self):
        with pytest.raises(InvalidParams):
            line_r2(0, 0.5)
        with pytest.raises(InvalidParams):
            complete_r2(1, 0.5)
        with pytest.raises(InvalidParams):
            line_with_attached_node_r2(4, 5, 0.5)
        with pytest.raises(InvalidParams):
            line_sharing_node_r2(4, 3, 0, 0.5)
        with pytest.raises(InvalidParams):
            line_with_backlink_inverse(1, 0.5)

    def test_c_out_of_range(self):
        with pytest.raises(COutOfRange):
            complete_r2(4, 1.0)
        with pytest.raises(COutOfRange):
            line_to_complete_r2(5, 4, 2, 0.0)


class TestOracleEquivalence:
    def test_single_parameter_kinds(self):
        for n_L in range(1, 21):
            _assert_matches_solver(StructureSpec(K.LINE, n_L=n_L))
            if n_L >= 2:
                _assert_matches_solver(StructureSpec(K.LINE_WITH_BACKLINK, n_L=n_L))
        for n_G in range(2, 21):
            _assert_matches_solver(StructureSpec(K.COMPLETE, n_G=n_G))
            _assert_matches_solver(StructureSpec(K.COMPLETE_WITH_OUTLINK, n_G=n_G))

    def test_line_with_attached_node_and_split(self):
        for n_L in range(1, 21):
            for j in range(1, n_L + 1):
                _assert_matches_solver(StructureSpec(K.LINE_WITH_ATTACHED_NODE, n_L=n_L, j=j))
                if j < n_L:
                    _assert_matches_solver(StructureSpec(K.LINE_SPLIT, n_L=n_L, j=j))

    @pytest.mark.parametrize("kind", [
        K.COMPLETE_TO_LINE,
        K.LINE_TO_COMPLETE,
        K.LINE_SHARING_NODE_WITH_COMPLETE,
    ])
    def test_compositions(self, kind):
        for n_L in range(1, 21):
            for n_G in range(2, 21):
                for j in range(1, n_L + 1):
                    _assert_matches_solver(StructureSpec(kind, n_L=n_L, n_G=n_G, j=j))


class TestProperties:
    def test_complete_value_is_size_independent(self):
        for c in np.arange(0.05, 0.96, 0.05):
            expected = 1.0 / (1.0 - c)
            for n_G in range(2, 101):
                r = complete_r2(n_G, c)
                assert np.all(np.abs(r.r2 - expected) <= 1e-12 * expected)
            assert complete_r2(100, c).normalizer == pytest.approx(100 * expected)

    def test_complete_solver_agrees(self):
        for n_G in (2, 3, 10, 50, 100):
            g = generate(StructureSpec(K.COMPLETE, n_G=n_G))
            for c in (0.05, 0.5, 0.95):
                np.testing.assert_allclose(pagerank_r2(g, c).values, 1.0 / (1.0 - c), rtol=0, atol=1e-9)
        assert complete_r2(5, 0.85)[1] == pytest.approx(6.6667, abs=1e-3)

    def test_out_linking_node_ranks_highest(self):
        for n_G in range(2, 101):
            for c in np.arange(0.01, 1.0, 0.01):
                r = complete_with_outlink_r2(n_G, float(c)).r2
                assert np.all(r[0] > r[1:n_G]), (n_G, c)

    def test_line_nodes_below_link_lose(self):
        for n_L in (3, 8, 15):
            for n_G in (2, 5, 12):
                for j in range(2, n_L + 1):
                    for c in (0.2, 0.85):
                        r = line_to_complete_r2(n_L, n_G, j, c).r2
                        pure = line_r2(n_L, c).r2
                        assert np.all(r[: j - 1] < pure[: j - 1])
                        np.testing.assert_allclose(r[j - 1:n_L], pure[j - 1:], rtol=1e-15)

    def test_analytic_normalizers(self):
        specs = small_structures() + [
            StructureSpec(K.LINE, n_L=20),
            StructureSpec(K.LINE_WITH_ATTACHED_NODE, n_L=12, j=7),
            StructureSpec(K.LINE_SPLIT, n_L=9, j=4),
            StructureSpec(K.LINE_SHARING_NODE_WITH_COMPLETE, n_L=10, n_G=10, j=6),
            StructureSpec(K.LINE_SHARING_NODE_WITH_COMPLETE, n_L=10, n_G=5, j=10),
        ]
        for spec in specs:
            for c in GRID_C:
                r = closed_form(spec, c)
                assert r.normalizer == pytest.approx(r.r2.sum(), rel=1e-12)
                if r.analytic_normalizer is not None:
                    assert r.analytic_normalizer == pytest.approx(r.normalizer, rel=1e-9), spec

    def test_r1_sums_to_one(self):
        for spec in small_structures():
            assert closed_form(spec, 0.7).r1.sum() == pytest.approx(1.0, abs=1e-12)

    def test_every_entry_at_least_one(self):
        for spec in small_structures():
            for c in GRID_C:
                assert closed_form(spec, c).r2.min() >= 1.0 - 1e-12

    def test_backlink_total(self):
        for n_L in (2, 5, 9):
            r = line_with_backlink_r2(n_L, 0.85)
            assert r.analytic_normalizer == pytest.approx(n_L / 0.15)
