import json

import pytest

from config.settings import Settings
from fixcat.cli.main import build_parser


@pytest.fixture
def run_json(cli):
    def run(*argv):
        code, out = cli(*argv)
        return code, json.loads(out)

    return run


def test_lfp_of_a_constant_map(run_json, corpus):
    code, doc = run_json("lfp", "--lattice", corpus / "two-chain.json", "--map", corpus / "const-top.json")
    assert code == 0
    assert doc["element"] == "⊤"
    assert doc["format"] == "fixcat/1"


def test_gfp_through_both_routes(run_json, corpus):
    code, doc = run_json("gfp", "--map", corpus / "diamond-swap.json", "--via", "both", "--trace")
    assert code == 0
    assert doc["agree"]
    assert doc["element"] == "1"
    assert doc["trace"][-1] == "1"


def test_initial_algebra_over_budget_exits_3(run_json, corpus):
    code, doc = run_json("initial-algebra", "--functor", corpus / "one-plus-x.json", "--budget", 8)
    assert code == 3
    assert doc["status"] == "not-stabilized"
    assert doc["trend"] == "strictly-increasing"
    assert len(doc["stage_sizes"]) == 9


def test_initial_algebra_of_a_constant(run_json, corpus):
    code, doc = run_json("initial-algebra", "--functor", corpus / "const-a.json")
    assert code == 0
    assert doc["index"] == 2
    assert doc["carrier_size"] == 1
    assert doc["verified"]


def test_terminal_stream_coalgebra_exits_3(cli, corpus):
    code, _ = cli("terminal-coalgebra", "--functor", corpus / "x-times-bits.json", "--budget", 5)
    assert code == 3


@pytest.mark.parametrize("route", ["direct", "lax"])
def test_free_algebra_routes(run_json, corpus, route):
    code, doc = run_json("free-algebra", "--functor", corpus / "const-a.json", "--on", corpus / "point-object.json",
                         "--route", route)
    assert code == 0
    assert doc["carrier_size"] == 2
    assert len(doc["unit"]) == 1


def test_free_lax_reports_the_first_pushout(run_json, corpus):
    code, doc = run_json("free-lax", "--lax", corpus / "point-lax.json")
    assert code == 0
    assert doc["first_step"] == {"E": 1, "FB": 1, "B": 1, "P": 1}


def test_verify_lambek(run_json, corpus):
    code, doc = run_json("verify", "lambek", "--functor", corpus / "const-a.json")
    assert code == 0
    assert doc["passed"]
    assert doc["carrier_size"] == 1


def test_verify_pfp_and_llift(run_json, corpus):
    code, doc = run_json("verify", "pfp", "--functor", corpus / "identity.json", "--max-apex", 1)
    assert code == 0 and doc["checked"] > 0
    code, doc = run_json("verify", "llift", "--functor", corpus / "identity.json")
    assert code == 0
    assert doc["skipped"] == 0


def test_seeded_locality_sample_is_reproducible(cli, corpus):
    argv = ("verify", "llift", "--functor", corpus / "identity.json", "--max-carrier", 3, "--sample", 50, "--seed", 7)
    first, second = cli(*argv), cli(*argv)
    assert first == second
    code, out = first
    doc = json.loads(out)
    assert code == 0
    assert doc["checked"] + doc["skipped"] == 50
    assert doc["seed"] == 7
    assert doc["population"] > 50


def test_seeded_pfp_sample(run_json, corpus):
    code, doc = run_json("verify", "pfp", "--functor", corpus / "identity.json", "--sample", 5, "--seed", 1)
    assert code == 0
    assert doc["checked"] == 5
    assert doc["sample"] == 5


def test_reflect_with_adjunction_check(run_json, corpus):
    code, doc = run_json("reflect", "--coalgebra", corpus / "lasso-coalgebra.json", "--check")
    assert code == 0
    assert doc["index"] == 1
    assert doc["fixed_point"]["carrier"] == [1, 2]
    assert doc["adjunction"]["passed"]


def test_is_local(run_json, corpus):
    code, doc = run_json("is-local", "--hom", corpus / "lasso-to-swap.json")
    assert code == 0
    assert doc["local"]
    assert set(doc["verdicts"]) == {"reflection", "section", "lift"}


def test_dataflow(run_json, corpus):
    code, doc = run_json("dataflow", "--cfg", corpus / "reaching-definitions.json", "--mode", "gauss-seidel")
    assert code == 0
    assert doc["oracle_agrees"]


def test_sigma_hom_count(run_json):
    code, doc = run_json("sigma", "hom", "--src", "2", "--tgt", "2")
    assert code == 0
    assert doc["count"] == 10
    assert doc["source"] == "(2)"


def test_sigma_hom_long_flags(run_json):
    code, doc = run_json("sigma", "hom", "--source", "1", "--target", "1")
    assert code == 0
    assert doc["count"] == 3


def test_sigma_hom_into_a_higher_object(run_json):
    code, doc = run_json("sigma", "hom", "--src", "1,1", "--tgt", "2")
    assert code == 0
    assert doc["target"] == "(2)"


def test_free_algebra_on_inline_elements(run_json, corpus):
    code, doc = run_json("free-algebra", "--functor", corpus / "const-a.json", "--object", "x,y")
    assert code == 0
    assert doc["carrier_size"] == 3


def test_complete_check_of_a_representable(run_json):
    code, doc = run_json("sigma", "complete-check", "--obj", "2,1")
    assert code == 0
    assert doc["passed"]
    assert doc["representable"] == "(2,1)"
    assert doc["bound"] == [2, 2, 2]


def test_complete_check_needs_a_target(cli, corpus):
    assert cli("sigma", "complete-check")[0] == 2
    assert cli("sigma", "complete-check", "--obj", "1", "--presheaf", corpus / "walking-iso.json")[0] == 2
    assert cli("sigma", "complete-check", "--obj", "3", "--bound", "2,2,2")[0] == 2


def test_sigma_presheaf_checks(cli, corpus):
    assert cli("sigma", "segal-check", "--presheaf", corpus / "representable-1.json")[0] == 0
    assert cli("sigma", "complete-check", "--presheaf", corpus / "walking-iso.json")[0] == 1


def test_noetherian_self_loop_fails(run_json, corpus):
    code, doc = run_json("noetherian", "--spec", corpus / "self-loop.json", "--witness")
    assert code == 1
    assert not doc["noetherian"]
    assert doc["witness"]["cycle"] == [[0, ["x", "x"]]]


def test_verify_noeth_rank_sweep(run_json):
    code, doc = run_json("verify", "noeth-rank", "--max-states", 2)
    assert code == 0
    assert doc["checked"] > 0


def test_verify_noeth_rank_defaults_to_three_states():
    args = build_parser().parse_args(["verify", "noeth-rank"])
    assert args.max_states == 3


def test_skeleton_count(run_json):
    code, doc = run_json("skeletons", "--max-objects", 2, "--max-depth", 2, "--count")
    assert code == 0
    assert doc["count"] == 12
    assert "skeletons" not in doc


def test_text_output(cli, corpus):
    code, out = cli("rank", "--spec", corpus / "double-suspension.json", "--format", "text")
    assert code == 0
    assert "rank: finite:2" in out.splitlines()
    assert "hom" in out


def test_dot_output(cli, corpus):
    code, out = cli("initial-algebra", "--functor", corpus / "const-a.json", "--format", "dot")
    assert code == 0
    assert out.startswith("digraph initial {")
    assert 'X2 [label="X2 |1| *"];' in out


def test_missing_file_exits_2(run_json, tmp_path):
    code, doc = run_json("initial-algebra", "--functor", tmp_path / "absent.json")
    assert code == 2
    assert doc["status"] == "error"
    assert doc["error"] == "IllTypedInput"


def test_malformed_document_exits_2(cli, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"functor": {"kind": "constant"}}), encoding="utf-8")
    assert cli("initial-algebra", "--functor", bad)[0] == 2


def test_usage_errors_exit_2(cli, corpus):
    assert cli()[0] == 2
    assert cli("initial-algebra", "--functor", corpus / "const-a.json", "--budget", 0)[0] == 2


def test_schemas_command_writes_every_schema(run_json, tmp_path):
    code, doc = run_json("schemas", "--out", tmp_path)
    assert code == 0
    assert len(doc["written"]) == 12


def test_settings_validation():
    s = Settings()
    assert s.validate() == []
    s.FORMAT = "yaml"
    s.STAGE_BUDGET = 0
    problems = s.validate()
    assert len(problems) == 2


def test_dot_without_a_diagram_falls_back_with_a_warning(cli, corpus, caplog):
    code, out = cli("lfp", "--lattice", corpus / "two-chain.json", "--map", corpus / "const-top.json", "--format", "dot")
    assert code == 0
    assert json.loads(out)["element"] == "⊤"
    assert any("no diagram" in r.getMessage() and r.levelname == "WARNING" for r in caplog.records)
