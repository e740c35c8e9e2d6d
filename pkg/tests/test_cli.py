import json

import pytest

from molconv import cli
from molconv.serialize import measure_from_dict

TWO_POINT = '{"group": "real", "atoms": [{"point": 1, "coeff": 1}, {"point": 0, "coeff": -1}]}'
POSITIVE = '{"group": "real", "atoms": [{"point": 2, "coeff": 1}]}'


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {"m": TWO_POINT, "pos": POSITIVE, "bad": '{"group": "real", "atoms": [{"point": 0}]}'}.items():
        p = tmp_path / f"{name}.json"
        p.write_text(text)
        paths[name] = str(p)
    paths["missing"] = str(tmp_path / "missing.json")
    return paths


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_norm_prints_two_point_value(capsys, files):
    code, out, _ = run(capsys, "norm", "--group", "real", "--pm", "euclidean", "--measure", files["m"])
    assert code == 0
    rep = json.loads(out)
    assert rep["value"] == 1 and rep["exact"] and rep["solver"] == "lp-simplex"


def test_example31_tsv(capsys):
    code, out, _ = run(capsys, "example31", "--jmax", "10", "--format", "tsv", "--exact")
    assert code == 0
    rows = [line.split("\t") for line in out.splitlines() if line and not line.startswith("#")]
    assert rows[0][:4] == ["j", "norm_delta", "norm_sqrt_delta", "conv_norm"]
    assert len(rows) == 11
    for j, row in enumerate(rows[1:], start=1):
        assert row[:4] == [str(j), "1" if j == 1 else f"1/{j}", "1", "2"]


def test_witness_report(capsys):
    code, out, _ = run(
        capsys, "witness", "--group", "affine", "--pm", "affine-hyp-right",
        "--theta", "affine-hyp-right", "--eps", "0.15",
    )
    rep = json.loads(out)
    assert code == 0 and rep["success"]
    assert rep["norm_m_delta"] == pytest.approx(0.15)
    assert rep["norm_n_delta"] < 0.15 and rep["norm_conv_theta"] >= 1


def test_convolve_round_trips(capsys, files):
    code, out, _ = run(capsys, "convolve", "--measure", files["m"], "--measure2", files["m"])
    assert code == 0
    m = measure_from_dict(json.loads(out))
    assert dict((p.payload, c) for p, c in m.atoms) == {0: 1, 1: -2, 2: 1}


@pytest.mark.parametrize(
    "argv",
    [
        ["lemma25", "--group", "real", "--pm", "euclidean", "--count", "3"],
        ["lemma24", "--group", "free:2", "--pm", "word", "--count", "3"],
        ["sin-probe", "--group", "affine", "--pm", "affine-hyp-right", "--v", "1,0.01"],
        ["scan", "--group", "real", "--theta", "euclidean", "--eps", "0.5"],
        ["demo-separate", "--group", "real", "--pm", "euclidean", "--measure", "{pos}", "--kmax", "3"],
    ],
)
@pytest.mark.parametrize("fmt", ["json", "tsv"])
def test_subcommands_succeed_and_parse(capsys, files, argv, fmt):
    argv = [a.format(**files) for a in argv]
    code, out, _ = run(capsys, *argv, "--format", fmt)
    assert code == 0
    if fmt == "json":
        json.loads(out)
    else:
        assert all("\t" in line or line.startswith("#") for line in out.splitlines())


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["frobnicate"], 64),
        (["norm", "--group", "real"], 64),
        (["example31", "--bogus"], 64),
        (["lemma25", "--group", "real", "--pm", "euclidean", "--measure", "{m}"], 64),
        (["norm", "--group", "real", "--pm", "euclidean", "--measure", "{bad}"], 65),
        (["convolve", "--measure", "{bad}", "--measure2", "{m}"], 65),
        (["norm", "--group", "real", "--pm", "euclidean", "--measure", "{missing}"], 2),
        (["lemma25", "--group", "affine", "--pm", "affine-hyp-right", "--count", "1"], 2),
        (["witness", "--group", "real", "--pm", "euclidean", "--theta", "euclidean", "--eps", "-1"], 2),
        (["demo-separate", "--group", "real", "--pm", "euclidean", "--measure", "{m}"], 2),
        (["sin-probe", "--group", "real", "--pm", "word", "--v", "1"], 2),
        (["example31", "--jmax", "0"], 2),
    ],
)
def test_exit_codes(capsys, files, argv, expected):
    code, out, err = run(capsys, *[a.format(**files) for a in argv])
    assert code == expected
    assert out == "" and err


def test_malformed_measure_diagnostic_names_field(capsys, files):
    _, _, err = run(capsys, "norm", "--group", "real", "--pm", "euclidean", "--measure", files["bad"])
    assert "atoms[0]" in err


def test_format_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("MOLCONV_FORMAT", "tsv")
    _, out, _ = run(capsys, "example31", "--jmax", "1")
    assert out.startswith("#") or out.startswith("j\t")
