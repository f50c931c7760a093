import random

import pytest
from hypothesis import given, strategies as st

from lietriple import io
from lietriple.catalog import random_lts, sl2, t2
from lietriple.cochains import Cochain, cohomology_dim
from lietriple.errors import (BadScalarError, DimensionError, IndexOutOfRangeError, InputError,
                              NotALieTripleSystemError, ParseError)
from lietriple.extension import build_extension
from lietriple.fields import GF, QQ
from lietriple.linalg import Matrix

from conftest import DATA, PAIRS


def test_load_t2_fixture():
    T = io.lts_from_json(io.load(DATA / "T2.json"))
    assert T == t2()
    assert T.names == ["e1", "e2"]


def test_lts_roundtrip_is_byte_stable():
    for T in (t2(), sl2(), t2(GF(7))):
        text = io.dumps(io.lts_to_json(T))
        back = io.lts_from_json(io.loads(text))
        assert back == T and back.field is T.field
        assert io.dumps(io.lts_to_json(back)) == text


@given(st.integers(0, 10 ** 6))
def test_random_lts_roundtrip(seed):
    T = random_lts(random.Random(seed))
    assert io.lts_from_json(io.loads(io.dumps(io.lts_to_json(T)))) == T


def test_rep_roundtrip(pair):
    T, rep = pair
    back = io.rep_from_json(io.loads(io.dumps(io.rep_to_json(rep))), T)
    assert back == rep


def test_cochain_roundtrip():
    T, rep = PAIRS["T2-adjoint"]
    (w,) = cohomology_dim(T, rep, 3).representatives
    obj = io.cochain_to_json(w)
    assert io.cochain_from_json(obj, QQ, 2, 2) == w
    assert obj == io.load(DATA / "T2_h3.json")


def test_operator_and_extension_roundtrip():
    role, M = io.operator_from_json(io.load(DATA / "nu.json"), QQ, (2, 2))
    assert role == "witness" and M == Matrix([[1, 2], [0, -1]])
    assert io.operator_from_json(io.operator_to_json(M, "witness"), QQ) == ("witness", M)
    T, rep = PAIRS["T2-adjoint"]
    E = build_extension(T, rep, Cochain.zero(1, 2, 2, QQ))
    E2 = io.extension_from_json(io.loads(io.dumps(io.extension_to_json(E))))
    assert E2.total == E.total and E2.inj == E.inj and E2.proj == E.proj


def test_scalar_normalisation():
    # "3/−6" uses U+2212 and reduces to -1/2, so the system is T2 scaled by -1/2
    T = io.lts_from_json(io.load(DATA / "scalar_minus.json"), validate=False)
    assert io.lts_to_json(T)["bracket"][0]["value"] == [[1, "-1/2"]]


@pytest.mark.parametrize("value", [1.5, True, None, [1], "1/0", "x"])
def test_bad_scalars(value):
    with pytest.raises(BadScalarError):
        io.parse_scalar(QQ, value, "here")


def test_integer_scalars_accepted():
    assert io.parse_scalar(QQ, 3, "here") == 3
    assert io.parse_scalar(GF(7), "-1", "here") == GF(7)(6)


def test_index_out_of_range():
    with pytest.raises(IndexOutOfRangeError) as info:
        io.lts_from_json(io.load(DATA / "T2_bad_index.json"))
    assert "bracket[0].i" in str(info.value)


def test_broken_system_rejected_only_when_validating():
    obj = io.load(DATA / "T2_broken.json")
    with pytest.raises(NotALieTripleSystemError):
        io.lts_from_json(obj)
    io.lts_from_json(obj, validate=False)


def test_json_syntax_error_has_position():
    with pytest.raises(ParseError) as info:
        io.loads('{"field": "Q",\n "dim": }', "sys.json")
    assert "sys.json, line 2" in str(info.value)


def test_missing_file():
    with pytest.raises(InputError):
        io.load(DATA / "does_not_exist.json")


@pytest.mark.parametrize("obj,exc", [
    ({"field": "Q", "dim": -1, "bracket": []}, ParseError),
    ({"field": "F4", "dim": 2, "bracket": []}, InputError),
    ({"field": "Q", "dim": 2, "bracket": {}}, ParseError),
])
def test_malformed_lts(obj, exc):
    with pytest.raises(exc):
        io.lts_from_json(obj)


def test_field_defaults_to_rationals():
    T = io.lts_from_json({"dim": 2, "bracket": []})
    assert T.field is QQ and not T.c.any()


def test_duplicate_theta_block():
    obj = {"dimV": 1, "theta": [{"i": 0, "j": 0, "matrix": [["1"]]}, {"i": 0, "j": 0, "matrix": [["2"]]}]}
    with pytest.raises(ParseError):
        io.rep_from_json(obj, t2())


def test_cochain_dimension_checks():
    obj = io.load(DATA / "T2_h3.json")
    with pytest.raises(DimensionError):
        io.cochain_from_json(obj, QQ, 3, 2)
    bad = dict(obj, entries=[{"index": [0, 1], "component": 0, "value": "1"}])
    with pytest.raises(ParseError):
        io.cochain_from_json(bad, QQ)


def test_operator_shape_and_role():
    obj = io.load(DATA / "nu.json")
    with pytest.raises(DimensionError):
        io.operator_from_json(obj, QQ, (3, 3))
    with pytest.raises(ParseError):
        io.operator_from_json(dict(obj, role="banana"), QQ)


def test_dumps_is_canonical():
    assert io.dumps({"b": 1, "a": "−"}) == '{\n  "a": "−",\n  "b": 1\n}\n'
