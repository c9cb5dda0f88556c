import csv
import io

import numpy as np
import pytest

from rankform.app import RankForm
from rankform.config.config import Config
from rankform.graph import StructureKind, StructureSpec, generate, write_edge_list
from tests.conftest import FOUR_NODE_TEXT


def run(*argv):
    return RankForm().run(list(argv))


def rows(text):
    """CSV rows of a command's stdout, comment lines dropped"""
    body = "\n".join(line for line in text.splitlines() if line and not line.startswith("#"))
    return list(csv.DictReader(io.StringIO(body)))


def report(line):
    """Parse 'key=value, key=value' report lines"""
    return dict(part.strip().split("=", 1) for part in line.replace(",", " ").split())


@pytest.fixture
def four_node_file(tmp_path):
    path = tmp_path / "four_node.txt"
    path.write_bytes(FOUR_NODE_TEXT)
    return str(path)


@pytest.fixture
def complete4_file(tmp_path):
    path = tmp_path / "complete4.txt"
    path.write_bytes(write_edge_list(generate(StructureSpec(StructureKind.COMPLETE, n_G=4))))
    return str(path)


class TestSolve:
    def test_four_node_defaults(self, four_node_file, capsys):
        assert run("solve", "--graph", four_node_file) == 0
        table = rows(capsys.readouterr().out)
        assert [r["node"] for r in table] == ["1", "2", "3", "4"]
        assert float(table[1]["value"]) == pytest.approx(0.3763, abs=5e-4)

    def test_r2_on_complete(self, complete4_file, capsys):
        assert run("solve", "--graph", complete4_file, "--variant", "r2", "--c", "0.85") == 0
        values = [float(r["value"]) for r in rows(capsys.readouterr().out)]
        np.testing.assert_allclose(values, 1 / 0.15, rtol=1e-10)

    def test_weights_file(self, complete4_file, tmp_path, capsys):
        weights = tmp_path / "w.txt"
        weights.write_text("1 1 1 1\n")
        assert run("solve", "--graph", complete4_file, "--variant", "r3", "--weights", str(weights)) == 0
        values = [float(r["value"]) for r in rows(capsys.readouterr().out)]
        np.testing.assert_allclose(values, 4 * 0.25 / (1 - Config.DEFAULT_C), rtol=1e-8)

    def test_neumann_engine(self, four_node_file, capsys):
        assert run("solve", "--graph", four_node_file, "--engine", "neumann") == 0
        assert float(rows(capsys.readouterr().out)[0]["value"]) == pytest.approx(0.3328, abs=5e-4)

    def test_c_out_of_range(self, four_node_file, capsys):
        assert run("solve", "--graph", four_node_file, "--c", "1.5") == 2
        assert "c out of range" in capsys.readouterr().err

    def test_not_converged_exits_3(self, four_node_file, capsys):
        assert run("solve", "--graph", four_node_file, "--max-iter", "1") == 3
        assert "no convergence" in capsys.readouterr().err

    def test_missing_file(self, tmp_path, capsys):
        assert run("solve", "--graph", str(tmp_path / "absent.txt")) == 2

    def test_malformed_file(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_bytes(b"n 2\n1 1\n")
        assert run("solve", "--graph", str(path)) == 2
        assert "links to itself" in capsys.readouterr().err

    def test_node_cap(self, four_node_file, monkeypatch, capsys):
        monkeypatch.setattr(Config, "MAX_NODES", 3)
        assert run("solve", "--graph", four_node_file) == 2
        assert "exceeds the limit of 3" in capsys.readouterr().err

    def test_huge_header_rejected_before_allocation(self, tmp_path, capsys):
        path = tmp_path / "huge.txt"
        path.write_bytes(b"n 1000000000\n")
        assert run("solve", "--graph", str(path)) == 2
        assert "line 1: node count 1000000000 exceeds the limit" in capsys.readouterr().err

    def test_near_singular_warning(self, four_node_file, capsys):
        assert run("solve", "--graph", four_node_file, "--c", "0.995") == 0
        assert "warning: c=0.995" in capsys.readouterr().err


class TestGenerate:
    def test_line(self, capsys):
        assert run("generate", "--kind", "line", "--nl", "5") == 0
        assert capsys.readouterr().out == "n 5\n2 1\n3 2\n4 3\n5 4\n"

    def test_share_to_file(self, tmp_path, capsys):
        out = tmp_path / "share.txt"
        assert run("generate", "--kind", "share", "--nl", "10", "--ng", "10", "--j", "6", "--out", str(out)) == 0
        assert out.read_text().splitlines()[0] == "n 19"
        assert "19 nodes" in capsys.readouterr().err

    def test_invalid_structure(self, capsys):
        assert run("generate", "--kind", "complete", "--ng", "1") == 2
        assert run("generate", "--kind", "star", "--ng", "4") == 2


class TestClosedForm:
    def test_complete(self, capsys):
        assert run("closed-form", "--kind", "complete", "--ng", "5", "--c", "0.85") == 0
        out = capsys.readouterr().out
        np.testing.assert_allclose([float(r["r2"]) for r in rows(out)], 1 / 0.15, rtol=1e-10)
        np.testing.assert_allclose([float(r["r1"]) for r in rows(out)], 0.2, rtol=1e-10)
        assert "# normalizer=" in out

    def test_complete_with_outlink(self, capsys):
        assert run("closed-form", "--kind", "complete-out", "--ng", "5", "--c", "0.85") == 0
        table = rows(capsys.readouterr().out)
        assert len(table) == 6
        assert float(table[0]["r2"]) == pytest.approx(5.56192, abs=1e-5)

    def test_single_node_line(self, capsys):
        assert run("closed-form", "--kind", "line", "--nl", "1", "--c", "0.5") == 0
        table = rows(capsys.readouterr().out)
        assert len(table) == 1
        assert float(table[0]["r2"]) == 1.0


class TestCompare:
    def _table(self, capsys):
        return {(r["graph"], r["variant"]): [float(r[f"node_{k}"]) for k in range(1, 5)]
                for r in rows(capsys.readouterr().out)}

    def test_default_damping(self, capsys):
        assert run("compare", "--c", "0.85") == 0
        table = self._table(capsys)
        np.testing.assert_allclose(table["complete", "r1"], 0.25, atol=1e-10)
        np.testing.assert_allclose(table["dangling", "r1"], 0.25, atol=1e-10)
        np.testing.assert_allclose(table["complete", "r2"], 6.67, atol=1e-2)
        assert table["dangling", "r2"] == [1.0, 1.0, 1.0, 1.0]

    def test_low_damping(self, capsys):
        assert run("compare", "--c", "0.3") == 0
        table = self._table(capsys)
        np.testing.assert_allclose(table["complete", "r2"], 1 / 0.7, rtol=1e-10)
        assert table["dangling", "r2"] == [1.0, 1.0, 1.0, 1.0]

    def test_near_singular_warns_first(self, capsys):
        assert run("compare", "--c", "0.999") == 0
        captured = capsys.readouterr()
        assert "warning" in captured.err
        assert captured.out.startswith("# c=0.999")


class TestAnalysisCommands:
    def test_cmax(self, capsys):
        assert run("cmax", "--kind", "share", "--nl", "10", "--ng", "10", "--j", "6", "--node", "7") == 0
        fields = report(capsys.readouterr().out.strip())
        assert float(fields["c_max"]) == pytest.approx(0.300, abs=5e-3)
        assert float(fields["max"]) == pytest.approx(0.053, abs=1e-3)
        assert fields["boundary_hit"] == "false"

    def test_cmax_bad_node(self, capsys):
        assert run("cmax", "--kind", "share", "--nl", "10", "--ng", "10", "--j", "6", "--node", "40") == 2

    def test_perturb_bound(self, capsys):
        assert run("perturb", "bound", "--c", "0.85") == 0
        assert float(capsys.readouterr().out) == pytest.approx(3.6036, abs=1e-4)

    def test_perturb_zero(self, complete4_file, capsys):
        assert run("perturb", "zero", "--graph", complete4_file, "--nodes", "1", "2", "3", "4") == 0
        deltas = [float(r["delta"]) for r in rows(capsys.readouterr().out)]
        np.testing.assert_allclose(deltas, 1 / (1 - Config.DEFAULT_C), rtol=1e-10)

    def test_perturb_reweight(self, four_node_file, tmp_path, capsys):
        weights = tmp_path / "w.txt"
        weights.write_text("# only node 1\n1 0 0 0\n")
        assert run("perturb", "reweight", "--graph", four_node_file, "--weights", str(weights)) == 0
        values = [float(r["value"]) for r in rows(capsys.readouterr().out)]
        assert values[0] >= 4.0

    def test_perturb_invalid_node(self, four_node_file, capsys):
        assert run("perturb", "double", "--graph", four_node_file, "--nodes", "9") == 2

    def test_derivative(self, capsys):
        assert run("derivative", "--kind", "share", "--nl", "10", "--ng", "10", "--j", "6",
                   "--c", "0.5", "--nodes", "6", "12") == 0
        table = rows(capsys.readouterr().out)
        assert [r["node"] for r in table] == ["6", "12"]
        assert table[0]["source"] == "literal"
        assert table[1]["source"] == "numeric"
        assert float(table[1]["value"]) == pytest.approx(float(table[1]["numeric"]))

    def test_sweep_with_svg(self, tmp_path, capsys):
        svg = tmp_path / "sweep.svg"
        assert run("sweep", "--kind", "complete", "--ng", "3", "--variant", "r2",
                   "--c-lo", "0.1", "--c-hi", "0.9", "--steps", "5", "--svg", str(svg)) == 0
        table = rows(capsys.readouterr().out)
        assert len(table) == 15
        first = table[0]
        assert float(first["value"]) == pytest.approx(1 / 0.9)
        assert "<svg" in svg.read_text()

    def test_sweep_graph_file(self, four_node_file, capsys):
        assert run("sweep", "--graph", four_node_file, "--nodes", "2", "--steps", "3") == 0
        assert len(rows(capsys.readouterr().out)) == 3

    def test_sweep_needs_a_target(self, capsys):
        assert run("sweep") == 2
        assert "--kind or --graph" in capsys.readouterr().err

    def test_sweep_invalid_range(self, capsys):
        assert run("sweep", "--kind", "line", "--nl", "4", "--c-lo", "0.9", "--c-hi", "0.1") == 2


class TestWalk:
    def test_complete_visits(self, complete4_file, capsys):
        assert run("walk", "--graph", complete4_file, "--c", "0.85", "--walks", "100000", "--seed", "1") == 0
        out = capsys.readouterr().out
        table = rows(out)
        for r in table:
            assert abs(float(r["mean"]) - 1 / 0.15) <= 4 * float(r["stderr"])
        assert "# truncated=0" in out

    def test_hitting_probability(self, tmp_path, capsys):
        path = tmp_path / "line.txt"
        path.write_bytes(write_edge_list(generate(StructureSpec(StructureKind.LINE, n_L=5))))
        assert run("walk", "--graph", str(path), "--seed", "3", "--walks", "50000", "--hit", "5", "4") == 0
        fields = report(capsys.readouterr().out.strip())
        assert abs(float(fields["probability"]) - Config.DEFAULT_C) <= 4 * float(fields["stderr"])

    def test_seed_required(self, complete4_file, capsys):
        assert run("walk", "--graph", complete4_file) == 2


class TestApplication:
    def test_version(self, capsys):
        assert run("--version") == 0
        assert Config.VERSION in capsys.readouterr().out

    def test_unknown_command(self, capsys):
        assert run("teleport") == 2

    def test_invalid_configuration(self, monkeypatch, four_node_file, capsys):
        monkeypatch.setattr(Config, "DEFAULT_C", 1.5)
        assert run("solve", "--graph", four_node_file) == 2
        assert "invalid configuration" in capsys.readouterr().err

    def test_debug_info_lists_settings(self):
        info = Config.debug_info()
        assert f"Default c: {Config.DEFAULT_C}" in info
        assert "Log file:" in info

    def test_runner(self, four_node_file, capsys):
        from main import RankFormRunner

        assert RankFormRunner().run(["solve", "--graph", four_node_file]) == 0
        assert len(rows(capsys.readouterr().out)) == 4
