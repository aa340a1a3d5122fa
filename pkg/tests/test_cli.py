import json

from hexad.catalog import get
from hexad.cli import main



def run(capsys, *argv):
    code = main([*argv, "--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_periodic_derivation_exit_zero(capsys):
    code, rep = run(capsys, "deriv", "periodic", "--algebra", "catalog:N23", "--map",
                    "witnesses/periodic_derivation.json")
    assert code == 0 and rep["verdict"] == "order 6"
    assert rep["result"]["periodicity"]["order"] == 6 and rep["result"]["certificate_replays"]
    assert all(len(h) == 64 for k, h in rep["inputs"].items() if k.endswith(".json"))


def test_obstruction_solve_exit_one(capsys, tmp_path):
    path = tmp_path / "system.json"
    path.write_text(json.dumps(get("N24_mod_I5").witnesses["obstruction"].system.to_json()))
    code, rep = run(capsys, "units", "solve", "--system", str(path))
    assert code == 1 and rep["result"]["status"] == "UNSAT"


def test_unknown_exit_two(capsys, tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"vars": ["a", "b", "g"], "forms": [[2, 2, 2]]}))
    code, rep = run(capsys, "units", "solve", "--system", str(path))
    assert code == 2 and rep["result"]["status"] == "UNKNOWN"


def test_usage_errors_exit_two(capsys):
    assert main(["bogus"]) == 2
    assert main(["units", "oracle", "--system", "x.json"]) == 2
    assert main(["deriv", "check", "--algebra", "catalog:nope", "--map", "x.json"]) == 2
    assert main(["deriv", "check", "--algebra", "catalog:N23", "--map", "/no/such/file.json"]) == 2
    capsys.readouterr()


def test_global_flags_before_or_after(capsys):
    a = main(["--json", "algebra", "series", "--algebra", "catalog:heisenberg_2"])
    first = capsys.readouterr().out
    b = main(["algebra", "series", "--algebra", "catalog:heisenberg_2", "--json"])
    second = capsys.readouterr().out
    assert a == b == 0
    assert json.loads(first)["result"] == json.loads(second)["result"]


def test_json_is_deterministic(capsys):
    argv = ["engel", "span", "--algebra", "catalog:filiform_L7", "-m", "4", "--json"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first
    assert "seconds" not in json.loads(first)


def test_timing_flag(capsys):
    main(["algebra", "show", "--algebra", "catalog:N22", "--json", "--timing"])
    assert "seconds" in json.loads(capsys.readouterr().out)


def test_refuted_membership_exit_one(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"diagonal": ["1", "1", "1"]}))
    code, rep = run(capsys, "deriv", "check", "--algebra", "catalog:heisenberg_1", "--map", str(path))
    assert code == 1 and rep["result"]["holds"] is False


def test_grading_roundtrip_through_files(capsys, tmp_path):
    base = ["--algebra", "catalog:heisenberg_1"]
    code, rep = run(capsys, "deriv", "extend-order", *base, "--map", "witnesses/periodic_derivation.json",
                    "--k", "2")
    assert code == 0
    ext = tmp_path / "d12.json"
    ext.write_text(json.dumps(rep))
    code, rep = run(capsys, "deriv", "periodic", *base, "--map", str(ext))
    assert code == 0 and rep["result"]["periodicity"]["order"] == 12
    code, rep = run(capsys, "grading", "from-deriv", *base, "--map", "witnesses/periodic_derivation.json")
    assert code == 0
    gpath = tmp_path / "grading.json"
    gpath.write_text(json.dumps(rep))
    code, _ = run(capsys, "grading", "verify", *base, "--grading", str(gpath))
    assert code == 0
    code, rep = run(capsys, "grading", "to-deriv", *base, "--grading", str(gpath))
    assert code == 0 and rep["result"]["order"] == 6


def test_freenil_commands(capsys):
    code, rep = run(capsys, "freenil", "build", "--class", "3", "--generators", "2")
    assert code == 0 and rep["result"]["dim"] == 5
    code, rep = run(capsys, "freenil", "search-partition", "--generators", "4", "--pairs", "1-2,3-4")
    assert code == 0 and rep["result"]["found"]
    code, rep = run(capsys, "freenil", "estimates", "--dim", "10", "--generators", "4", "--relations", "0")
    assert code == 1


def test_engel_and_property_f(capsys):
    code, _ = run(capsys, "engel", "identity", "--algebra", "catalog:N52", "-m", "4")
    assert code == 1
    code, _ = run(capsys, "engel", "identity", "--algebra", "catalog:N42", "-m", "4")
    assert code == 0
    code, rep = run(capsys, "engel", "falsify-f", "--algebra", "catalog:example_513",
                    "--witness", "witnesses/property_f_witness.json")
    assert code == 0 and rep["result"]["not_property_f"]


def test_catalog_list(capsys):
    code, rep = run(capsys, "catalog", "list")
    assert code == 0 and len(rep["result"]["entries"]) == 28


def test_human_output(capsys):
    assert main(["deriv", "periodic", "--algebra", "catalog:N23", "--map", "witnesses/periodic_derivation.json"]) == 0
    out = capsys.readouterr().out
    assert "order 6" in out and not out.lstrip().startswith("{")
