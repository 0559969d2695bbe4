import pytest
from hypothesis import given
from hypothesis import strategies as st

from banglish_demand.catalog import (
    DeviceCatalog,
    load_catalog,
    normalize_model,
    read_catalog,
    strip_markers,
    write_catalog,
)
from banglish_demand.errors import DataError


@pytest.mark.parametrize(
    "raw, expected",
    [
        ("Galaxy S20 (2020)", "Galaxy S20"),
        ("iPhone XS", "iPhone XS"),
        ("Nokia 3310  ", "Nokia 3310"),
        ("Redmi Note 8 2019", "Redmi Note 8"),
        ("Moto G™ (5th gen)", "Moto G"),
        ("Nokia 2030", "Nokia"),
        ("Nokia 1100", "Nokia 1100"),
        ("Galaxy S2031", "Galaxy S2031"),
        ("Xperia ((nested) note) 1", "Xperia 1"),
    ],
)
def test_strip_markers(raw, expected):
    assert strip_markers(raw) == expected


def test_normalize_apple_prefix():
    assert normalize_model("Apple", "Apple iPhone XS").normalized_model == "iPhone XS"


def test_normalize_seven_char_guard():
    assert normalize_model("Nokia", "Nokia 3310").normalized_model == "Nokia 3310"


def test_normalize_no_prefix():
    assert normalize_model("Apple", "Galaxy S20").normalized_model == "Galaxy S20"


def test_normalize_rejects_empty():
    with pytest.raises(ValueError):
        normalize_model("Apple", "  ")


def test_load_catalog_dedups(tmp_path):
    p = tmp_path / "c.csv"
    p.write_text("brand,model\nSamsung,Samsung Galaxy S20\nApple,Apple iPhone XS\nSamsung,galaxy s20 (2020)\n")
    cat = load_catalog(p)
    assert cat.models == ["Galaxy S20", "iPhone XS"]


def test_load_catalog_errors(tmp_path):
    empty = tmp_path / "e.csv"
    empty.write_text("brand,model\n")
    with pytest.raises(DataError, match="empty"):
        load_catalog(empty)
    bad = tmp_path / "b.csv"
    bad.write_text("maker,model\nApple,iPhone\n")
    with pytest.raises(DataError, match="'brand'"):
        load_catalog(bad)


def test_max_model_tokens():
    assert DeviceCatalog.from_models(["iPhone XS", "Galaxy Note 10 Plus"]).max_model_tokens == 4


def test_fixture_catalog(phone_catalog):
    assert "Galaxy S20" in phone_catalog.models
    assert "Nokia 3310" in phone_catalog.models
    assert "iPhone SE" in phone_catalog.models
    assert len(phone_catalog) == 52


def test_write_read_round_trip(phone_catalog, tmp_path):
    path = tmp_path / "norm.csv"
    write_catalog(phone_catalog, path)
    assert path.read_text().splitlines()[0] == "brand,full_model,normalized_model"
    assert read_catalog(path) == phone_catalog


words = st.text(alphabet="abcXYZ19 ", min_size=1, max_size=14)


@given(st.sampled_from(["a", "Apple", "Nokia", "ab c"]), words)
def test_normalize_idempotent_and_prefix_rule(brand, model):
    if not model.strip():
        return
    entry = normalize_model(brand, model)
    assert entry.normalized_model
    again = normalize_model(brand, entry.normalized_model)
    assert again.normalized_model == entry.normalized_model
    prefix = brand.casefold() + " "
    if entry.normalized_model.casefold().startswith(prefix):
        rest = entry.normalized_model[len(prefix):].strip()
        assert len(rest) < 7


@given(st.text(max_size=40))
def test_strip_markers_whitespace(text):
    out = strip_markers(text)
    assert "  " not in out
    assert out == out.strip()
