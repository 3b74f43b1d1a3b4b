"""Dataset CSV and model JSON persistence.

Dataset CSV: a header row, a leading ``label`` column holding +1 or -1,
then one float column per feature.  Sample CSVs for prediction are the
same minus the label column (a present label column is ignored).

Model JSON: version-tagged, carries the classical hyperplanes, optionally
the quantum solution states (amplitudes as [re, im] pairs so the file is
plain JSON), and a SHA-256 fingerprint of the training CSV.  Floats are
serialized with full round-trip precision, so save -> load -> predict
reproduces results bit for bit.
"""

from __future__ import annotations

import csv
import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .classical import ClassicalModel, Dataset
from .exceptions import CsvFormatError
from .states import StateVector, single_register

MODEL_FILE_VERSION = "1"


def dataset_fingerprint(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def write_dataset_csv(path, data: Dataset) -> None:
    n = data.n_features
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["label"] + [f"x{i}" for i in range(n)])
        for row in data.A:
            writer.writerow(["1"] + [repr(float(v)) for v in row])
        for row in data.B:
            writer.writerow(["-1"] + [repr(float(v)) for v in row])


def _read_rows(path) -> tuple[list[str], list[tuple[int, list[str]]]]:
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            rows = [(i + 1, row) for i, row in enumerate(reader) if row]
    except OSError as exc:
        raise CsvFormatError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise CsvFormatError(f"{path}: file is empty")
    header = [h.strip() for h in rows[0][1]]
    return header, rows[1:]


def read_dataset_csv(path) -> tuple[Dataset, str]:
    """Parse a labeled dataset CSV; returns the dataset and its fingerprint."""
    header, body = _read_rows(path)
    if not header or header[0] != "label":
        raise CsvFormatError(f"{path}: line 1: first column must be 'label'")
    width = len(header)
    if width < 2:
        raise CsvFormatError(f"{path}: line 1: no feature columns")
    pos, neg = [], []
    for lineno, row in body:
        if len(row) != width:
            raise CsvFormatError(
                f"{path}: line {lineno}: expected {width} columns, got {len(row)}"
            )
        label = row[0].strip()
        if label not in ("1", "+1", "-1"):
            raise CsvFormatError(
                f"{path}: line {lineno}: label must be +1 or -1, got {label!r}"
            )
        try:
            feats = [float(v) for v in row[1:]]
        except ValueError as exc:
            raise CsvFormatError(f"{path}: line {lineno}: {exc}") from exc
        (pos if label in ("1", "+1") else neg).append(feats)
    if not pos or not neg:
        raise CsvFormatError(f"{path}: both classes must be present")
    return Dataset(A=np.array(pos), B=np.array(neg)), dataset_fingerprint(path)


def read_samples_csv(path) -> np.ndarray:
    """Parse an unlabeled samples CSV; a leading label column is skipped."""
    header, body = _read_rows(path)
    skip = 1 if header and header[0] == "label" else 0
    width = len(header)
    if width - skip < 1:
        raise CsvFormatError(f"{path}: line 1: no feature columns")
    rows = []
    for lineno, row in body:
        if len(row) != width:
            raise CsvFormatError(
                f"{path}: line {lineno}: expected {width} columns, got {len(row)}"
            )
        try:
            rows.append([float(v) for v in row[skip:]])
        except ValueError as exc:
            raise CsvFormatError(f"{path}: line {lineno}: {exc}") from exc
    if not rows:
        raise CsvFormatError(f"{path}: no sample rows")
    return np.array(rows)


def _state_to_json(state: StateVector) -> list[list[float]]:
    return [[float(a.real), float(a.imag)] for a in state.amplitudes]


def _state_from_json(pairs, register: str = "data") -> StateVector:
    amps = np.array([complex(re, im) for re, im in pairs])
    qubits = (len(pairs) - 1).bit_length() if len(pairs) > 1 else 0
    return StateVector(amps, single_register(register, qubits))


@dataclass(frozen=True)
class ModelRecord:
    """Everything a saved model carries."""

    classical: ClassicalModel
    dataset_fingerprint: str
    quantum_state1: StateVector | None = None
    quantum_state2: StateVector | None = None
    quantum_report: dict | None = None

    @property
    def is_quantum(self) -> bool:
        return self.quantum_state1 is not None


def save_model(path, record: ModelRecord) -> None:
    doc = {
        "version": MODEL_FILE_VERSION,
        "dataset_fingerprint": record.dataset_fingerprint,
        "classical": {
            "w1": [float(v) for v in record.classical.w1],
            "b1": record.classical.b1,
            "w2": [float(v) for v in record.classical.w2],
            "b2": record.classical.b2,
            "c1": record.classical.c1,
            "c2": record.classical.c2,
            "ridge": record.classical.ridge,
        },
        "quantum": None,
    }
    if record.is_quantum:
        doc["quantum"] = {
            "state1": _state_to_json(record.quantum_state1),
            "state2": _state_to_json(record.quantum_state2),
            "report": record.quantum_report,
        }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")


def load_model(path) -> ModelRecord:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CsvFormatError(f"cannot read model file {path}: {exc}") from exc
    if doc.get("version") != MODEL_FILE_VERSION:
        raise CsvFormatError(
            f"{path}: unsupported model version {doc.get('version')!r}"
        )
    cl = doc["classical"]
    classical = ClassicalModel(
        w1=np.array(cl["w1"], dtype=float),
        b1=float(cl["b1"]),
        w2=np.array(cl["w2"], dtype=float),
        b2=float(cl["b2"]),
        c1=float(cl["c1"]),
        c2=float(cl["c2"]),
        ridge=float(cl["ridge"]),
    )
    q = doc.get("quantum")
    if q is None:
        return ModelRecord(classical=classical, dataset_fingerprint=doc["dataset_fingerprint"])
    return ModelRecord(
        classical=classical,
        dataset_fingerprint=doc["dataset_fingerprint"],
        quantum_state1=_state_from_json(q["state1"]),
        quantum_state2=_state_from_json(q["state2"]),
        quantum_report=q.get("report"),
    )
