from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from catcausal import cli
from catcausal.causal import markov_equivalent, parse_dot, standard_imset
from catcausal.elements import collider_query, migrate_left_kan
from catcausal.homology import classifying_space_profile
from catcausal.io import dumps, instance_to_json, load, load_category
from catcausal.nerve import nerve
from catcausal.simplex import check_kan_condition

FIX = Path(__file__).parent / "fixtures"


def run(capsys, *args):
    code = cli.main(["--format", "json", *[str(a) for a in args]])
    out, err = capsys.readouterr()
    return code, (json.loads(out) if code == 0 else None), err


def test_validate_collider_dot(capsys):
    code, out, _ = run(capsys, "validate", FIX / "collider.dot")
    assert code == 0 and out["summary"] == "3 variables, 2 edges, acyclic"


def test_validate_text_format(capsys):
    assert cli.main(["validate", str(FIX / "collider.dot")]) == 0
    assert "3 variables, 2 edges, acyclic" in capsys.readouterr().out


def test_validate_cyclic_exit_2(capsys):
    code, _, err = run(capsys, "validate", FIX / "cyclic.dot")
    assert code == 2 and "cycle" in err and "witness" in err


def test_validate_malformed_exit_3(capsys):
    code, _, err = run(capsys, "validate", FIX / "malformed.json")
    assert code == 3 and "malformed" in err


def test_missing_file_exit_3(capsys):
    code, _, _ = run(capsys, "validate", FIX / "nope.json")
    assert code == 3


def test_nerve_scale_guard_exit_4(capsys, tmp_path):
    objs = [str(i) for i in range(6)]
    p = tmp_path / "big.json"
    p.write_text(json.dumps({"objects": objs, "morphisms": [], "composition": []}))
    code, _, _ = run(capsys, "nerve", p, "--full")
    assert code == 4


def test_nerve_report_matches_module(capsys):
    code, out, _ = run(capsys, "nerve", FIX / "poset2.json", "--truncation", "2", "--horns", "all")
    rep = check_kan_condition(nerve(load_category("poset2.json", FIX), 2).sset, 2, inner_only=False)
    assert code == 0
    assert (out["horns"]["total"], out["horns"]["filled"]) == (rep.total, rep.filled)


def test_homology_matches_module(capsys, tmp_path):
    code, out, _ = run(capsys, "homology", FIX / "poset2.json", "--export", tmp_path)
    assert code == 0
    assert out["profile"] == classifying_space_profile(load_category("poset2.json", FIX)).to_json()
    assert sorted(p.name for p in tmp_path.iterdir())


def test_imset_compare_equal(capsys):
    code, out, _ = run(capsys, "imset", FIX / "chain.dot", FIX / "fork.dot", "--compare")
    assert code == 0 and out["result"] == "equal"
    expect = standard_imset(parse_dot((FIX / "chain.dot").read_text())).to_json()
    assert out["imsets"][0] == expect


def test_imset_compare_different(capsys):
    code, out, _ = run(capsys, "imset", FIX / "chain.dot", FIX / "collider.dot", "--compare")
    assert out["result"] == "different"


def test_markov_eq_matches_module(capsys):
    code, out, _ = run(capsys, "markov-eq", FIX / "chain.dot", FIX / "collider.dot")
    a = parse_dot((FIX / "chain.dot").read_text())
    b = parse_dot((FIX / "collider.dot").read_text())
    v = markov_equivalent(a, b)
    assert code == 0 and out["equivalent"] is v.equivalent is False
    assert out["witness"] == v.witness


def test_intervene(capsys):
    code, out, _ = run(capsys, "intervene", FIX / "chain.dot", "--do", "b")
    assert code == 0 and out["dag"]["edges"] == [["b", "c"]]
    code, out, _ = run(capsys, "intervene", FIX / "chain.dot", "--delete-edge", "a->b")
    assert out["dag"]["edges"] == [["b", "c"]]
    code, _, _ = run(capsys, "intervene", FIX / "chain.dot", "--do", "z")
    assert code == 2


def test_query_collider_matches_module(capsys):
    code, out, _ = run(capsys, "query", FIX / "collider_model.json", FIX / "collider_instance.json", "--pattern", "collider")
    schema = load_category("collider_model.json", FIX)
    inst = cli._load_instance(str(FIX / "collider_instance.json"), schema)
    matches = collider_query(inst)
    assert code == 0 and out["count"] == len(matches) == 4
    assert [s["collider"] for s in out["solutions"]] == [m.labels(inst.category)["collider"] for m in matches]


def test_query_source_edge(capsys):
    code, out, _ = run(capsys, "query", FIX / "graph_schema.json", FIX / "graph_instance.json", "--pattern", "source-edge")
    assert code == 0 and out["all_solvable"] is True
    assert all(s["edges"] for s in out["solutions"])


def test_migrate_left_matches_module(capsys):
    code, out, _ = run(capsys, "migrate", FIX / "collapse.json", FIX / "two_points_instance.json", "--kind", "left")
    _, f = load(FIX / "collapse.json")
    inst = cli._load_instance(str(FIX / "two_points_instance.json"), f.source)
    assert code == 0
    assert out["instance"] == json.loads(dumps(instance_to_json(migrate_left_kan(f, inst))))


def test_effect_do_bind_certifies_degree_0(capsys):
    code, out, _ = run(capsys, "effect", FIX / "chain_model.json", FIX / "chain_instance.json", "--do", "b=0")
    assert code == 0
    assert out["verdict"] == "NonIsomorphicCertified" and out["degree"] == 0
    assert out["before"]["betti"][0] == 1 and out["after"]["betti"][0] == 2


def test_effect_unknown_row_exit_2(capsys):
    code, _, _ = run(capsys, "effect", FIX / "chain_model.json", FIX / "chain_instance.json", "--do", "b=9")
    assert code == 2


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["no-such-command"])
    assert exc.value.code == 2


def test_console_entry_point_runs():
    res = subprocess.run(
        [sys.executable, "-m", "catcausal.cli", "validate", str(FIX / "collider.dot")],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0 and "acyclic" in res.stdout
