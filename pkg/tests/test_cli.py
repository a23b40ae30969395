import json
from importlib import resources

import jsonschema
import pytest

from lieposet.cli import main
from lieposet.frobenius import Attachment, GluingStep
from lieposet.poset import antichain, complete_poset
from lieposet.signed import hexagon_bcd
from lieposet.topology import example_morse_assignment


def schema(name: str) -> dict:
    return json.loads(resources.files("lieposet").joinpath(f"schemas/{name}.json").read_text())


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def files(tmp_path):
    def write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return path

    return {
        "p112": write("p112.json", complete_poset([1, 1, 2]).to_json()),
        "empty5": write("empty5.json", antichain(5).to_json()),
        "hexagon": write("hexagon.json", hexagon_bcd().to_json()),
        "p211": write("p211.json", complete_poset([2, 1, 1]).to_json()),
        "cycle": write("cycle.json", {"n": 2, "covers": [[1, 2], [2, 1]]}),
        "broken": tmp_path / "missing.json",
        "trace": write(
            "trace.json",
            {"steps": [s.to_json() for s in (GluingStep("P112"), GluingStep("P211", "C", Attachment(3, None, None)))]},
        ),
        "write": write,
    }


def test_index_empty_covers(capsys, files):
    code, out, _ = run(capsys, "index", "--poset", files["empty5"], "--seed", 1)
    data = json.loads(out)
    assert code == 0 and data["index"] == 4
    jsonschema.validate(data, schema("index"))


def test_index_is_byte_identical(capsys, files):
    first = run(capsys, "index", "--poset", files["p112"], "--seed", 1)
    second = run(capsys, "index", "--poset", files["p112"], "--seed", 1)
    assert first == second


def test_seed_required(capsys, files):
    code, _, err = run(capsys, "index", "--poset", files["p112"])
    assert code == 2
    jsonschema.validate(json.loads(err), schema("error"))
    assert "seed" in json.loads(err)["error"]


def test_invalid_inputs(capsys, files):
    code, _, err = run(capsys, "classify", "--poset", files["cycle"])
    assert code == 2 and "cycle" in json.loads(err)["error"]
    code, _, err = run(capsys, "classify", "--poset", files["broken"])
    assert code == 2 and "cannot read" in json.loads(err)["error"]


def test_frobenius_variants(capsys, files):
    for variant, expected in (("B", "frobenius"), ("A", "not_frobenius")):
        code, out, _ = run(capsys, "frobenius", "--poset", files["hexagon"], "--variant", variant, "--seed", 2)
        data = json.loads(out)
        jsonschema.validate(data, schema("frobenius"))
        assert code == 0 and data["verdict"] == expected


def test_classify(capsys, files):
    code, out, _ = run(capsys, "classify", "--poset", files["p112"])
    data = json.loads(out)
    jsonschema.validate(data, schema("classify"))
    assert data["formula_index"] == 0 and data["frobenius_by_characterization"] is True


def test_homology(capsys, files):
    code, out, _ = run(capsys, "homology", "--poset", files["hexagon"], "--faces")
    data = json.loads(out)
    jsonschema.validate(data, schema("homology"))
    assert data["betti"][:2] == [1, 1]


def test_morse_trace_and_assignment(capsys, files):
    code, out, _ = run(capsys, "morse", "--trace", files["trace"])
    data = json.loads(out)
    jsonschema.validate(data, schema("morse"))
    assert data["is_morse"] and len(data["critical"]) == 1
    _, f = example_morse_assignment("P112")
    assignment = files["write"]("f.json", [[list(face), v] for face, v in f.items()])
    code, out, _ = run(capsys, "morse", "--poset", files["p112"], "--assignment", assignment)
    assert json.loads(out)["is_morse"]


def test_spectrum(capsys, files):
    code, out, _ = run(capsys, "spectrum", "--poset", files["p211"], "--seed", 3)
    data = json.loads(out)
    jsonschema.validate(data, schema("spectrum"))
    assert sorted(map(tuple, data["spectrum"])) == [(0, 1, 4), (1, 1, 4)]
    code, _, _ = run(capsys, "spectrum", "--poset", files["empty5"], "--seed", 3)
    assert code == 2


def test_generate(capsys):
    code, out, _ = run(capsys, "generate", "--blocks", 2, "--seed", 0)
    data = json.loads(out)
    jsonschema.validate(data, schema("generate"))
    assert data["count"] == len(data["posets"]) > 2
    code, _, _ = run(capsys, "generate", "--rules", "Z", "--seed", 0)
    assert code == 2


def test_sweep(capsys, tmp_path):
    out_file = tmp_path / "records.jsonl"
    code, out, _ = run(capsys, "sweep", "--n-max", 3, "--seed", 0, "--out", out_file)
    data = json.loads(out)
    jsonschema.validate(data, schema("sweep"))
    assert data["ok"] and data["posets"] == 8
    for line in out_file.read_text().splitlines():
        record = json.loads(line)
        jsonschema.validate(record, schema("atlas_record"))
        jsonschema.validate(record["poset"], schema("poset"))
        jsonschema.validate(record["certificate"], schema("certificate"))


def test_out_file(capsys, files, tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "index", "--poset", files["p112"], "--seed", 0, "--out", target, "--pretty")
    assert json.loads(target.read_text()) == json.loads(out)
