from decimal import Decimal

import pytest
from hypothesis import given, settings, strategies as st

from ldforecast.errors import DuplicateSection, LDSyntaxError, MissingSection, UnknownLabel
from ldforecast.intermediate import (
    CloudRecord, EpisodeRecord, IntermediateDocument, TemperatureRecord, parse,
    quantize_proportion, serialize, to_document,
)
from ldforecast.operators import describe

DOC = IntermediateDocument(
    cloud=CloudRecord("CHRONO", (("B", "C"), ("H", "PC"), ("E", "VC"))),
    precipitation=(EpisodeRecord(4, 6, ("P", "SN", "P")),),
    wind=(EpisodeRecord(2, 4, (322, 322, 322)),),
    temperature=TemperatureRecord("N", "N", "WC", "SI"),
)
TEXT = "LDv1\nCC CHRONO (B,C)(H,PC)(E,VC)\nP 4 6 P,SN,P\nW 2 4 322,322,322\nT N N WC SI\n"


def test_serialize_lines():
    assert serialize(DOC) == TEXT


def test_parse_lines(config):
    assert parse(TEXT, config) == DOC


def test_quant_line(config):
    text = "LDv1\nCC QUANT (PREDOMINANT,C,0.8333)(OCCASIONAL,PC,0.0000)(OCCASIONAL,VC,0.1667)\nT N N WC WC\n"
    doc = parse(text, config)
    assert doc.cloud.items[2] == ("OCCASIONAL", "VC", Decimal("0.1667"))
    assert serialize(doc) == text


@pytest.mark.parametrize("value,expected", [
    (Decimal("0.00005"), "0.0000"),
    (Decimal("0.00015"), "0.0002"),
    (Decimal("0.12345"), "0.1234"),
])
def test_round_half_even(value, expected):
    assert str(quantize_proportion(value)) == expected


def test_from_operators(config, make_dataset):
    wind = [300] * 12
    wind[2:5] = [322] * 3
    ds = make_dataset(sky=[101] * 4 + [105] * 4 + [111] * 4, wind=wind,
                      tmax=[14, 14, 15, 17], tmin=[7, 7, 7, 7])
    text = serialize(describe(ds, config))
    assert "CC CHRONO (B,C)(H,PC)(E,VC)" in text.splitlines()
    assert "W 2 4 322,322,322" in text.splitlines()
    assert "P 8 11 P,P,P,P" in text.splitlines()
    assert text.splitlines()[-1] == "T N N WC SI"


MALFORMED = [
    ("LDv1\nCC CHRONO (B,C)(H,C)(E,C)\nT N N WC\n", LDSyntaxError),
    ("LDv1\nCC CHRONO (B,C)(H,C)(E,C)\nP 4 2 I,I,I\nT N N WC WC\n", LDSyntaxError),
    ("LDv1\nCC CHRONO (B,C)(H,C)(E,C)\nP 2 4 I,I\nT N N WC WC\n", LDSyntaxError),
    ("LDv1\nCC CHRONO (B,C)(H,C)(E,C)\nP 2 12 I\nT N N WC WC\n", LDSyntaxError),
    ("LDv1\nCC CHRONO (B,C) (H,C)\nT N N WC WC\n", LDSyntaxError),
    ("LDv1\nCC FUZZY (B,C)\nT N N WC WC\n", LDSyntaxError),
    ("LDv1\nCC QUANT (OCCASIONAL,C,1.5000)\nT N N WC WC\n", LDSyntaxError),
    ("LDv1\nCC CHRONO (B,C)\nP 5 6 I,I\nP 2 3 I,I\nT N N WC WC\n", LDSyntaxError),
    ("LDv1\nCC CHRONO (B,C)\nX 1\nT N N WC WC\n", LDSyntaxError),
    ("CC CHRONO (B,C)\nT N N WC WC\n", LDSyntaxError),
    ("LDv1\nCC CHRONO (B,C)(H,XX)(E,C)\nT N N WC WC\n", UnknownLabel),
    ("LDv1\nCC CHRONO (B,C)\nP 2 2 Z\nT N N WC WC\n", UnknownLabel),
    ("LDv1\nCC CHRONO (B,C)\nW 2 2 300\nT N N WC WC\n", UnknownLabel),
    ("LDv1\nCC CHRONO (B,C)\nT N N WC QQ\n", UnknownLabel),
    ("LDv1\nCC CHRONO (B,C)\nCC CHRONO (B,C)\nT N N WC WC\n", DuplicateSection),
    ("LDv1\nCC CHRONO (B,C)\nT N N WC WC\nT N N WC WC\n", DuplicateSection),
    ("LDv1\nLDv1\nCC CHRONO (B,C)\nT N N WC WC\n", DuplicateSection),
    ("LDv1\nT N N WC WC\n", MissingSection),
    ("LDv1\nCC CHRONO (B,C)\n", MissingSection),
]


@pytest.mark.parametrize("text,error", MALFORMED)
def test_malformed(config, text, error):
    with pytest.raises(error):
        parse(text, config)


def test_syntax_error_position(config):
    with pytest.raises(LDSyntaxError) as info:
        parse("LDv1\nCC CHRONO (B,C)(H,C)(E,C)\nP 4 2 I,I,I\nT N N WC WC\n", config)
    assert (info.value.line, info.value.column) == (3, 5)


def test_labels_unchecked_without_config():
    doc = parse("LDv1\nCC CHRONO (X,Y)\nT A B C D\n")
    assert doc.cloud.items == (("X", "Y"),)


# -- random documents --

labels = st.sampled_from(["I", "P", "SN", "ST", "H"])


@st.composite
def documents(draw):
    if draw(st.booleans()):
        cloud = CloudRecord("CHRONO", tuple((t, draw(st.sampled_from(["C", "PC", "VC"])))
                                            for t in ("B", "H", "E")))
    else:
        counts = draw(st.lists(st.integers(0, 12), min_size=3, max_size=3))
        cloud = CloudRecord("QUANT", tuple(
            (draw(st.sampled_from(["OCCASIONAL", "RELEVANT", "PREDOMINANT"])), cov,
             quantize_proportion(Decimal(n) / 12))
            for cov, n in zip(["C", "PC", "VC"], counts)))

    def episodes(label_strategy):
        starts = sorted(draw(st.sets(st.integers(0, 11), max_size=4)))
        out = []
        last_end = -2
        for s in starts:
            if s <= last_end + 1:
                continue
            e = draw(st.integers(s, 11))
            out.append(EpisodeRecord(s, e, tuple(draw(label_strategy) for _ in range(e - s + 1))))
            last_end = e
        return tuple(out)

    return IntermediateDocument(
        cloud=cloud,
        precipitation=episodes(labels),
        wind=episodes(st.integers(317, 332)),
        temperature=TemperatureRecord(*(draw(st.sampled_from(ids)) for ids in (
            ["VL", "L", "N", "H", "VH"], ["VL", "L", "N", "H", "VH"],
            ["ED", "WC", "EI"], ["SD", "SI", "MI"]))),
    )


@settings(max_examples=500)
@given(documents())
def test_round_trip(doc):
    from ldforecast.config import default_config

    assert parse(serialize(doc), default_config()) == doc


@given(documents(), documents())
def test_serialize_injective(a, b):
    if a != b:
        assert serialize(a) != serialize(b)


def test_to_document_quantizes(config, make_dataset):
    doc = to_document(describe(make_dataset(sky=[111, 111] + [101] * 10), config))
    assert doc.cloud.items[2][2] == Decimal("0.1667")
