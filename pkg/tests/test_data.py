import datetime

import pytest
from hypothesis import given, strategies as st

from ldforecast.data import (
    ForecastDataset, Part, TimePoint, dump_dataset, index_to_timepoint, load_dataset,
    validate_dataset,
)
from ldforecast.errors import LengthError, ParseError, RangeError


def test_minimum_codes_are_valid(make_dataset):
    ds = make_dataset(sky=[101] * 12, wind=[299] * 12, tmax=[20] * 4, tmin=[10] * 4)
    assert validate_dataset(ds) is ds


def test_sky_code_past_upper_bound(make_dataset):
    sky = [101] * 12
    sky[5] = 122
    with pytest.raises(RangeError) as info:
        validate_dataset(make_dataset(sky=sky))
    assert (info.value.field, info.value.index) == ("sky", 5)


def test_temperature_past_upper_bound(make_dataset):
    with pytest.raises(RangeError) as info:
        validate_dataset(make_dataset(tmax=[61, 20, 20, 20]))
    assert info.value.index == 0


@pytest.mark.parametrize("field,value", [("wind", 298), ("wind", 333), ("tmin", -61), ("sky", 100)])
def test_other_range_violations(make_dataset, field, value):
    kwargs = {"wind": [299] * 12, "tmin": [0] * 4, "sky": [101] * 12}
    kwargs[field][-1] = value
    with pytest.raises(RangeError):
        validate_dataset(make_dataset(**{field: kwargs[field]}))


def test_wrong_length(make_dataset):
    with pytest.raises(LengthError):
        validate_dataset(make_dataset(sky=[101] * 11))


def test_float_temperatures_rejected_at_parse():
    raw = {"municipality_id": "1", "issue_date": "2013-12-09", "sky": [101] * 12,
           "wind": [299] * 12, "tmax": [20.5, 20, 20, 20], "tmin": [1, 1, 1, 1]}
    with pytest.raises(ParseError):
        ForecastDataset.from_mapping(raw)


def test_missing_key():
    with pytest.raises(ParseError, match="sky"):
        ForecastDataset.from_mapping({"municipality_id": "1", "issue_date": "2013-12-09",
                                      "wind": [], "tmax": [], "tmin": []})


def test_file_round_trip(tmp_path, make_dataset):
    ds = make_dataset(sky=[101, 105, 111] * 4, tmax=[3, -2, 0, 1])
    path = tmp_path / "ds.yaml"
    path.write_text(dump_dataset(ds))
    assert load_dataset(path) == ds
    assert isinstance(load_dataset(path).issue_date, datetime.date)


def test_validate_is_idempotent(make_dataset):
    ds = make_dataset()
    assert validate_dataset(validate_dataset(ds)) == ds


@pytest.mark.parametrize("index,day,part", [
    (0, 0, Part.MORNING),
    (2, 0, Part.NIGHT),
    (4, 1, Part.AFTERNOON),
    (11, 3, Part.NIGHT),
])
def test_index_to_timepoint(index, day, part):
    assert index_to_timepoint(index) == TimePoint(index, day, part)


@pytest.mark.parametrize("bad", [-1, 12, 1.0, True])
def test_index_out_of_range(bad):
    with pytest.raises(RangeError):
        index_to_timepoint(bad)


def test_timepoint_bijection():
    points = {(tp.day, tp.part) for tp in map(index_to_timepoint, range(12))}
    assert points == {(d, p) for d in range(4) for p in Part}


@given(st.integers(0, 11))
def test_timepoint_inverse(i):
    tp = index_to_timepoint(i)
    assert tp.day * 3 + tp.part == i
