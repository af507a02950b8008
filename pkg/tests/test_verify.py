from __future__ import annotations

import json

import pytest

from cremona_lab.verify import RunConfig, list_claims, run_claim, run_claims
from cremona_lab.verify.cli import main
from cremona_lab.verify.registry import BadParameter, UnknownClaim, coerce_param, get_claim

FAST = ["dp8.product_order4", "pic.bertini.kperp", "pic.exceptional_counts", "thm3.norm_sum", "weyl.e8.longest"]


def _run(capsys, *argv) -> tuple[int, str, str]:
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_registry_contents():
    ids = [c.id for c in list_claims()]
    assert ids == sorted(ids) and len(ids) == len(set(ids))
    for prefix in ("lemma1.", "thm3.", "ex.dejonquieres.", "weyl.", "pic.", "dp2.", "dp1."):
        assert any(i.startswith(prefix) for i in ids), prefix
    assert all(c.anchor and c.description for c in list_claims())


def test_param_coercion():
    assert coerce_param("n", "4", 2) == 4
    assert coerce_param("q", "2,3", (2, 3)) == (2, 3)
    assert coerce_param("flag", "true", False) is True
    with pytest.raises(BadParameter):
        coerce_param("n", "four", 2)
    with pytest.raises(UnknownClaim):
        get_claim("no.such.claim")


def test_run_claim_verdicts():
    assert run_claim("pic.exceptional_counts").status == "verified"
    v = run_claim("thm3.norm_sum")
    assert v.status == "refuted" and v.witness["sum"] == "t1^2"
    assert run_claim("weyl.enumerate", {"type": "E8"}).status == "exceeded"


def test_report_shape_and_ordering():
    report = run_claims(list(reversed(FAST)), RunConfig(seed=3, normalize_timing=True))
    data = report.to_json()
    assert [c["id"] for c in data["claims"]] == sorted(FAST)
    assert data["seed"] == 3 and data["summary"]["refuted"] == 1
    for c in data["claims"]:
        assert {"id", "anchor", "params", "verdict", "millis"} <= set(c)
        assert c["millis"] == 0
        if c["verdict"] == "refuted":
            assert "witness" in c
    assert report.exit_code() == 1


def test_expect_refuted_and_exclude():
    cfg = RunConfig(expect_refuted=("thm3.*",), exclude=("pic.*",))
    report = run_claims(FAST, cfg)
    by_id = {v.claim_id: v for v in report.verdicts}
    assert by_id["thm3.norm_sum"].expected_refuted
    assert by_id["pic.bertini.kperp"].status == "skipped"
    assert report.exit_code() == 0


def test_parallel_matches_serial():
    serial = run_claims(FAST, RunConfig(seed=5, normalize_timing=True)).to_json()
    parallel = run_claims(FAST, RunConfig(seed=5, jobs=2, normalize_timing=True)).to_json()
    assert serial == parallel


def test_cli_list(capsys):
    code, out, _ = _run(capsys, "list", "--prefix", "pic.", "--json")
    assert code == 0
    assert all(c["id"].startswith("pic.") for c in json.loads(out))


def test_cli_run_text_and_json(capsys):
    code, out, _ = _run(capsys, "run", "--claim", "dp8.product_order4")
    assert code == 0 and "✓ dp8.product_order4" in out
    code, out, _ = _run(capsys, "run", "--claim", "thm3.norm_sum", "--param", "p=3", "--json")
    assert code == 1
    claim = json.loads(out)["claims"][0]
    assert claim["verdict"] == "refuted" and claim["witness"]["sum"] == "2*t1^2"


def test_cli_error_exits(capsys):
    assert _run(capsys, "run", "--claim", "no.such.claim")[0] == 2
    assert _run(capsys, "run", "--claim", "thm3.norm_sum", "--param", "bogus=1")[0] == 2
    assert _run(capsys, "run", "--claim", "thm3.norm_sum", "--param", "p=x")[0] == 2
    assert _run(capsys, "run")[0] == 2
    code, out, _ = _run(capsys, "run", "--claim", "weyl.enumerate", "--param", "type=E8")
    assert code == 0 and "exceeded" in out


def test_cli_figures(capsys, tmp_path):
    code, out, _ = _run(capsys, "run", "--claim", "dp3.e6.cor611", "--figures", str(tmp_path))
    assert code == 0
    assert (tmp_path / "verdicts.png").stat().st_size > 0
    assert (tmp_path / "profile_dp3_e6_cor611.png").stat().st_size > 0


def test_cli_map_order(capsys, tmp_path):
    wp = tmp_path / "wp.json"
    wp.write_text(json.dumps({"field": 3, "vars": ["t0:1", "t1:1", "t2:2"], "components": ["t0 + t1", "t1", "t2 + t0^2"]}))
    code, out, _ = _run(capsys, "map-order", "--map-file", str(wp))
    assert code == 0 and json.loads(out)["order"] == 9
    dj = tmp_path / "dj.json"
    dj.write_text(
        json.dumps(
            {
                "kind": "dejonquieres",
                "field": 2,
                "base": [1, 1, 0, 1],
                "fiber": ["x^3 + x^2 + x", "x^4 + x^2 + 1", "x^2 + x", "x^3 + x^2 + x"],
            }
        )
    )
    code, out, _ = _run(capsys, "map-order", "--map-file", str(dj))
    assert code == 0 and json.loads(out)["order"] == 4
    assert _run(capsys, "map-order", "--map-file", str(tmp_path / "missing.json"))[0] == 2


def test_cli_surface(capsys, tmp_path):
    f = tmp_path / "dp1.json"
    f.write_text(json.dumps({"b": "u*v", "a6": "v^6", "field": 4}))
    code, out, _ = _run(capsys, "surface", "--file", str(f))
    data = json.loads(out)
    assert code == 0 and data["tau_order"] == 4
    assert data["singularity"]["smooth"] is False and data["discriminant"] == "u^12"
    g = tmp_path / "dp2.json"
    g.write_text(
        json.dumps(
            {"vars": ["x:1", "y:1", "z:1", "u:2"], "F": "u^2 + x^2*u + z^2*(z+x)^2 + y^4", "field": 2, "points": [[0, 0, 1, 1]]}
        )
    )
    code, out, _ = _run(capsys, "surface", "--file", str(g))
    assert code == 0 and json.loads(out)["points"][0]["singular"] is True


def test_refuted_witnesses_reverify():
    import numpy as np

    from cremona_lab.algebra import PolyRing, field_make
    from cremona_lab.birmaps import norm_sum, p11n_map, wp_order
    from cremona_lab.weyl import WeylElement, root_system

    R = PolyRing(field_make(2), ("t0", "t1"), (1, 1))
    w = run_claim("thm3.norm_sum").witness
    assert norm_sum(R(w["f"])) == R(w["sum"])

    w = run_claim("thm3.wp_order").witness
    assert wp_order(p11n_map(field_make(2), 2, (1, 1, 0, 1), 1, w["f"])) == w["order"] == 4

    w = run_claim("weyl.e7.profile").witness
    rs = root_system("E7")
    g = WeylElement(rs, np.array(w["element"], dtype=np.int64))
    assert g.preserves_form() and g.order == w["order"] == 8
    assert g.fixed_rank == 0 and np.linalg.matrix_rank(g.matrix - np.eye(7)) == 7
