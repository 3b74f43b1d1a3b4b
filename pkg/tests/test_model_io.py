import numpy as np
import pytest

from helpers import parallel_lines_data
from qtsvm.classical import Dataset, train_classical
from qtsvm.exceptions import CsvFormatError
from qtsvm.model_io import (
    ModelRecord,
    dataset_fingerprint,
    load_model,
    read_dataset_csv,
    read_samples_csv,
    save_model,
    write_dataset_csv,
)
from qtsvm.prep import classical_hyperplane_state


def test_dataset_csv_roundtrip(tmp_path):
    data = Dataset(A=[[0.1, -2.5], [1e-17, 3.0]], B=[[7.25, 0.0]])
    path = tmp_path / "d.csv"
    write_dataset_csv(path, data)
    back, fp = read_dataset_csv(path)
    assert np.array_equal(back.A, data.A)
    assert np.array_equal(back.B, data.B)
    assert fp == dataset_fingerprint(path)


def test_read_dataset_accepts_plus_prefixed_labels(tmp_path):
    path = tmp_path / "d.csv"
    path.write_text("label,x0\n+1,0.5\n-1,1.5\n")
    data, _ = read_dataset_csv(path)
    assert data.A.tolist() == [[0.5]]
    assert data.B.tolist() == [[1.5]]


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("", "empty"),
        ("x0,x1\n0,1\n", "first column must be 'label'"),
        ("label\n1\n", "no feature columns"),
        ("label,x0\n1,0.5\n1,0.5,9\n", "line 3"),
        ("label,x0\n2,0.5\n-1,1\n", "label must be +1 or -1"),
        ("label,x0\n1,abc\n-1,1\n", "line 2"),
        ("label,x0\n1,0.5\n+1,1.5\n", "both classes"),
    ],
)
def test_read_dataset_rejects_malformed_files(tmp_path, text, fragment):
    path = tmp_path / "bad.csv"
    path.write_text(text)
    with pytest.raises(CsvFormatError) as err:
        read_dataset_csv(path)
    assert fragment in str(err.value)


def test_read_dataset_missing_file():
    with pytest.raises(CsvFormatError):
        read_dataset_csv("/nonexistent/never.csv")


def test_read_samples_with_and_without_label_column(tmp_path):
    labeled = tmp_path / "l.csv"
    labeled.write_text("label,x0,x1\n1,0.5,1.5\n-1,2.5,3.5\n")
    assert read_samples_csv(labeled).tolist() == [[0.5, 1.5], [2.5, 3.5]]
    bare = tmp_path / "b.csv"
    bare.write_text("x0,x1\n0.5,1.5\n")
    assert read_samples_csv(bare).tolist() == [[0.5, 1.5]]
    empty = tmp_path / "e.csv"
    empty.write_text("x0,x1\n")
    with pytest.raises(CsvFormatError):
        read_samples_csv(empty)


def test_classical_model_roundtrip(tmp_path):
    model = train_classical(parallel_lines_data(), 2.0, 0.5, ridge=1e-9)
    record = ModelRecord(classical=model, dataset_fingerprint="abc123")
    path = tmp_path / "m.json"
    save_model(path, record)
    back = load_model(path)
    assert not back.is_quantum
    assert back.dataset_fingerprint == "abc123"
    assert np.array_equal(back.classical.w1, model.w1)
    assert back.classical.b1 == model.b1
    assert np.array_equal(back.classical.w2, model.w2)
    assert (back.classical.c1, back.classical.c2) == (2.0, 0.5)
    assert back.classical.ridge == 1e-9


def test_quantum_model_roundtrip_is_bit_exact(tmp_path):
    model = train_classical(parallel_lines_data(), 1.0, 1.0)
    s1 = classical_hyperplane_state(model, 1)
    s2 = classical_hyperplane_state(model, 2)
    record = ModelRecord(
        classical=model,
        dataset_fingerprint="ff00",
        quantum_state1=s1,
        quantum_state2=s2,
        quantum_report={"plane1": {"t0": 3.125}},
    )
    path = tmp_path / "q.json"
    save_model(path, record)
    back = load_model(path)
    assert back.is_quantum
    assert np.array_equal(back.quantum_state1.amplitudes, s1.amplitudes)
    assert np.array_equal(back.quantum_state2.amplitudes, s2.amplitudes)
    assert back.quantum_report == {"plane1": {"t0": 3.125}}


def test_load_model_rejects_bad_files(tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    with pytest.raises(CsvFormatError):
        load_model(path)
    path.write_text('{"version": "999"}')
    with pytest.raises(CsvFormatError):
        load_model(path)
    with pytest.raises(CsvFormatError):
        load_model(tmp_path / "missing.json")
