import io
import json
import math

import pytest

from deltawall.emit import Dataset, package_version, write_dataset


def _dataset():
    dataset = Dataset(("param", "energy", "exists"), metadata={"bc": "dirichlet"})
    dataset.append(0.1, None, False)
    dataset.append(1.0, -0.203125, True)
    dataset.append(math.inf, -0.25, True)
    return dataset


def test_csv():
    stream = io.StringIO()
    write_dataset(_dataset(), stream, "csv")
    assert stream.getvalue() == (
        "param,energy,exists\n"
        "0.1,,false\n"
        "1.0,-0.203125,true\n"
        "inf,-0.25,true\n"
    )


def test_csv_floats_round_trip():
    dataset = Dataset(("value",))
    dataset.append(1.0 / 3.0)
    stream = io.StringIO()
    write_dataset(dataset, stream)
    assert float(stream.getvalue().splitlines()[1]) == 1.0 / 3.0


def test_json():
    stream = io.StringIO()
    write_dataset(_dataset(), stream, "json")
    document = json.loads(stream.getvalue())
    assert document["metadata"] == {"bc": "dirichlet"}
    assert document["columns"] == ["param", "energy", "exists"]
    assert document["rows"][0] == {"param": 0.1, "energy": None, "exists": False}
    assert document["rows"][2]["param"] == "inf"


def test_output_is_deterministic():
    first, second = io.StringIO(), io.StringIO()
    write_dataset(_dataset(), first, "json")
    write_dataset(_dataset(), second, "json")
    assert first.getvalue() == second.getvalue()


def test_rows_must_match_columns():
    with pytest.raises(ValueError):
        Dataset(("a", "b")).append(1.0)


def test_unknown_format():
    with pytest.raises(ValueError):
        write_dataset(_dataset(), io.StringIO(), "xml")


def test_package_version():
    assert isinstance(package_version(), str)
