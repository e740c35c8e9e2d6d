import json
from fractions import Fraction

import numpy as np
import pytest

from molconv.groups import AFFINE, REAL, free_group, real_vector
from molconv.lab import random_measure
from molconv.serialize import (
    MeasureFormatError,
    load_measure,
    measure_from_json,
    measure_to_dict,
    measure_to_json,
    measure_to_tsv,
    record_to_tsv,
)

GROUPS = [REAL, real_vector(2), AFFINE, free_group(2)]


@pytest.mark.parametrize("group", GROUPS, ids=lambda g: g.tag)
@pytest.mark.parametrize("exact", [False, True])
def test_round_trip(group, exact):
    rng = np.random.default_rng(0)
    for _ in range(30):
        m = random_measure(rng, group, 4, 3.0, 2.0, exact=exact)
        assert measure_from_json(measure_to_json(m)) == m


def test_rationals_are_strings():
    text = '{"group": "real", "atoms": [{"point": "1/3", "coeff": 2}, {"point": 0, "coeff": "-1/2"}]}'
    m = measure_from_json(text)
    assert m.coeffs == (Fraction(-1, 2), 2) and m.exact
    doc = measure_to_dict(m)
    assert doc["atoms"][1] == {"point": "1/3", "coeff": 2}


@pytest.mark.parametrize(
    "text, needle",
    [
        ('{"group": "real", "atoms": [', "line 1"),
        ('{"atoms": []}', "'group'"),
        ('{"group": "torus", "atoms": []}', "'group'"),
        ('{"group": "real", "atoms": 3}', "'atoms'"),
        ('{"group": "real", "atoms": [{"point": 0}]}', "atoms[0]"),
        ('{"group": "real", "atoms": [{"point": 0, "coeff": "x"}]}', "atoms[0].coeff"),
        ('{"group": "affine", "atoms": [{"point": [-1, 0], "coeff": 1}]}', "atoms[0].point"),
        ('{"group": "free:2", "atoms": [{"point": 5, "coeff": 1}]}', "atoms[0].point"),
        ("[]", "top level"),
    ],
)
def test_malformed_documents(text, needle):
    with pytest.raises(MeasureFormatError, match=needle.replace("[", r"\[").replace("]", r"\]")):
        measure_from_json(text)


def test_load_measure_names_the_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{\n  oops\n}")
    with pytest.raises(MeasureFormatError, match="bad.json: line 2"):
        load_measure(path)


def test_tsv_writers():
    m = measure_from_json('{"group": "vec:2", "atoms": [{"point": [1, "1/2"], "coeff": 3}]}')
    assert measure_to_tsv(m) == "# group=vec:2\npoint\tcoeff\n1,1/2\t3\n"
    assert record_to_tsv({"a": True, "b": None, "c": [1, 2]}) == "a\tb\tc\ntrue\t\t1,2\n"
    json.loads(measure_to_json(m))
