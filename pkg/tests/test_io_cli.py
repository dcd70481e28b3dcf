import json

import pytest

from monoidlab import cli
from monoidlab.catalog import named
from monoidlab.errors import EntryOutOfRange, NonAssociative, SyntaxError_
from monoidlab.io import (
    format_action,
    is_path_argument,
    parse_action_text,
    parse_mon_text,
    parse_monoid_file,
    resolve_monoid,
    write_mon,
)
from monoidlab.products import validate_action, wreath_product
from monoidlab.schutz import SchutzProduct, schutz_monoid


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestMonFormat:
    def test_z2(self):
        M = parse_mon_text("2\n0 1\n1 0\n")
        assert M.order == 2 and M.identity == 0

    def test_out_of_range_line(self):
        with pytest.raises(EntryOutOfRange) as ei:
            parse_mon_text("2\n0 1\n1 2\n")
        assert ei.value.line == 3

    def test_nonassociative(self):
        with pytest.raises(NonAssociative) as ei:
            parse_mon_text("3\n0 1 2\n1 2 0\n2 0 2\n")
        assert ei.value.triple == (1, 1, 2)

    def test_syntax_errors(self):
        with pytest.raises(SyntaxError_) as ei:
            parse_mon_text("2\n0 x\n1 0\n")
        assert (ei.value.line, ei.value.column) == (2, 3)
        with pytest.raises(SyntaxError_) as ei:
            parse_mon_text("2\n0 1\n")
        assert ei.value.line == 3
        with pytest.raises(SyntaxError_):
            parse_mon_text("2\n0 1\n1 0\ngarbage\n")

    def test_comments_allowed(self):
        assert parse_mon_text("1\n0\n# trivial\n\n# more\n").order == 1

    @pytest.mark.parametrize("build", [
        lambda: named("t2"),
        lambda: schutz_monoid(named("u1"), named("u1")),
        lambda: wreath_product(named("zn:2"), named("u1")),
    ])
    def test_round_trip(self, build, tmp_path):
        M = build()
        written = write_mon(M, tmp_path / "m.mon")
        assert parse_monoid_file(tmp_path / "m.mon").same_table(M)
        if M.elements is not None:
            lines = written[1].read_text().splitlines()
            assert len(lines) == M.order

    def test_sidecar_triples(self, tmp_path):
        M = SchutzProduct(named("u1"), named("u1")).monoid()
        write_mon(M, tmp_path / "p.mon")
        lines = (tmp_path / "p.dec").read_text().splitlines()
        assert lines[0] == "0 0 0" and lines[16] == "1 0 0" and lines[32] == "0 0 1"


class TestActFormat:
    def test_round_trip(self):
        Z3, Z2 = named("zn:3"), named("zn:2")
        act = validate_action(Z3, Z2, [[0, 1, 2], [0, 2, 1]])
        text = format_action(act)
        assert text == "3 2\n0 1 2\n0 2 1\n"
        assert parse_action_text(text, Z3, Z2).maps == act.maps

    def test_bad_header(self):
        with pytest.raises(SyntaxError_):
            parse_action_text("2 2\n0 1\n0 1\n", named("zn:3"), named("zn:2"))


def test_path_disambiguation(tmp_path):
    assert is_path_argument("dir/x") and is_path_argument("x.mon")
    assert not is_path_argument("zn:2")
    p = tmp_path / "u.mon"
    p.write_text("2\n0 1\n1 1\n")
    assert resolve_monoid(str(p)).same_table(named("u1"))


class TestCli:
    def test_theorem(self, capsys):
        code, out, _ = run(capsys, "theorem", "--which", "1", "A=zn:2", "B=zn:2")
        assert code == 0 and "verdict True" in out

    def test_theorem_expect_mismatch(self, capsys):
        code, _, _ = run(capsys, "theorem", "--which", "1", "--expect", "true", "A=u1", "B=u1")
        assert code == 1

    def test_regular_product(self, capsys):
        code, out, _ = run(capsys, "regular", "--product", "schutz", "--format", "json", "A=u1", "B=u1")
        d = json.loads(out)
        assert code == 0 and d["regular"] is False
        assert d["witness"] == {"a": 1, "P": [[0, 0]], "b": 0}

    def test_regular_expect(self, capsys):
        assert run(capsys, "regular", "--expect", "regular", "monogenic:2,1")[0] == 1
        assert run(capsys, "regular", "--expect", "non_regular", "monogenic:2,1")[0] == 0

    def test_regular_cap(self, capsys):
        code, _, err = run(capsys, "regular", "--product", "variant", "--cap", "100", "A=zn:2", "B=zn:2")
        assert code == 2 and "cap" in err

    def test_info(self, capsys):
        code, out, _ = run(capsys, "info", "--format", "json", "monogenic:2,1")
        d = json.loads(out)
        assert code == 0 and d["regular"] is False and d["witness"] == 1 and d["idempotents"] == [0, 2]

    def test_validate_codes(self, capsys, tmp_path):
        good = tmp_path / "g.mon"
        good.write_text("2\n0 1\n1 0\n")
        bad = tmp_path / "b.mon"
        bad.write_text("3\n0 1 2\n1 2 0\n2 0 2\n")
        junk = tmp_path / "j.mon"
        junk.write_text("2\n0 q\n1 0\n")
        assert run(capsys, "validate", str(good))[0] == 0
        code, out, _ = run(capsys, "validate", str(bad))
        assert code == 1 and "(1,1,2)" in out
        assert run(capsys, "validate", str(junk))[0] == 2
        assert run(capsys, "validate", str(tmp_path / "missing.mon"))[0] == 2

    def test_product_writes_files(self, capsys, tmp_path):
        out = tmp_path / "w.mon"
        code, _, _ = run(capsys, "product", "--kind", "wreath", "-o", str(out), "A=zn:2", "B=zn:2")
        assert code == 0 and parse_monoid_file(out).order == 8 and out.with_suffix(".dec").exists()

    def test_semidirect_with_action(self, capsys, tmp_path):
        act = tmp_path / "inv.act"
        act.write_text("3 2\n0 1 2\n0 2 1\n")
        code, out, _ = run(capsys, "product", "--kind", "semidirect", "--action", str(act), "A=zn:3", "B=zn:2")
        assert code == 0 and out.startswith("6\n")
        act.write_text("3 2\n0 1 2\n0 1 1\n")
        assert run(capsys, "product", "--kind", "semidirect", "--action", str(act), "A=zn:3", "B=zn:2")[0] == 2

    def test_usage_errors(self, capsys):
        assert run(capsys, "theorem", "--which", "1", "A=zn:2", "A=zn:2")[0] == 2
        assert run(capsys, "info", "bogus")[0] == 2
        with pytest.raises(SystemExit) as ei:
            cli.main(["frobnicate"])
        assert ei.value.code == 2

    def test_sweep(self, capsys, tmp_path):
        code, out, _ = run(capsys, "sweep", "--max-order", "2", "--kind", "schutz", "-o", str(tmp_path))
        assert code == 0
        assert len(list(tmp_path.glob("*.json"))) == 9
        summary = (tmp_path / "summary.csv").read_text().splitlines()
        assert len(summary) == 9 and summary[0] == "trivial,trivial,schutz,2,regular,true,true"
        assert "agree 9, disagree 0" in out

    def test_sweep_parallel_matches_serial(self, capsys, tmp_path):
        run(capsys, "sweep", "--max-order", "2", "--kind", "variant", "-o", str(tmp_path / "s"))
        run(capsys, "sweep", "--max-order", "2", "--kind", "variant", "--workers", "2", "-o", str(tmp_path / "p"))
        s = (tmp_path / "s" / "summary.csv").read_text()
        assert s == (tmp_path / "p" / "summary.csv").read_text()

    def test_sweep_disagreement_exits_1_and_writes(self, capsys, tmp_path, monkeypatch):
        import monoidlab.theorems as th

        real = th.theorem_verdict

        def flipped(kind, A, B):
            tv = real(kind, A, B)
            tv.verdict = not tv.verdict
            return tv

        monkeypatch.setattr(th, "theorem_verdict", flipped)
        code, _, _ = run(capsys, "sweep", "--max-order", "1", "--kind", "schutz", "-o", str(tmp_path))
        assert code == 1
        d = json.loads((tmp_path / "trivial__trivial__schutz.json").read_text())
        assert d["agree"] is False and d["counterexample"] is not None

    def test_catalog(self, capsys, tmp_path):
        code, out, _ = run(capsys, "catalog", "--enumerate", "3", "--export", str(tmp_path))
        assert code == 0 and len(out.splitlines()) == 7
        assert len(list(tmp_path.glob("*.mon"))) == 7
        code, out, _ = run(capsys, "catalog", "--enumerate", "2", "--labeled")
        assert len(out.splitlines()) == 4
