import datetime
import json
import os
from typing import Any, Dict, Optional

import numpy as np

from src.core.errors import DimensionMismatchError, MatrixFileError
from src.core.numerics.matrix import ComplexMatrix


class Serialization:
    """Handles saving and loading operator matrices and reports to/from disk"""

    @staticmethod
    def matrix_to_dict(matrix: ComplexMatrix, meta: Optional[Dict[str, Any]] = None) -> Dict:
        """MatrixFile document with split real and imaginary parts"""
        return {
            "dim": matrix.dim,
            "label_offset": matrix.label_offset,
            "labels": [list(label) if isinstance(label, tuple) else label for label in matrix.label_list()],
            "re": matrix.entries.real.tolist(),
            "im": matrix.entries.imag.tolist(),
            "meta": dict(meta or {}),
        }

    @staticmethod
    def matrix_from_dict(data: Dict) -> ComplexMatrix:
        try:
            dim = int(data["dim"])
            re = np.asarray(data["re"], dtype=float)
            im = np.asarray(data["im"], dtype=float)
            label_offset = int(data.get("label_offset", 0))
            labels = data.get("labels")
        except (KeyError, TypeError, ValueError) as e:
            raise MatrixFileError(f"malformed matrix document: {e}") from e

        if re.shape != (dim, dim) or im.shape != (dim, dim):
            raise DimensionMismatchError(f"re/im arrays must be {dim}x{dim}, got {re.shape} and {im.shape}")
        entries = re + 1j * im
        # integer windows are fully described by label_offset
        explicit = None
        if labels is not None and any(isinstance(label, list) for label in labels):
            explicit = [tuple(label) for label in labels]
        return ComplexMatrix(entries, label_offset, explicit)

    @staticmethod
    def save_matrix(matrix: ComplexMatrix, filepath: str, meta: Optional[Dict[str, Any]] = None) -> str:
        """Save a matrix as a JSON MatrixFile; floats are written with round-trip precision"""
        directory = os.path.dirname(filepath)
        try:
            if directory:
                os.makedirs(directory, exist_ok=True)
            with open(filepath, 'w') as f:
                json.dump(Serialization.matrix_to_dict(matrix, meta), f)
        except OSError as e:
            raise MatrixFileError(f"cannot write {filepath}: {e}") from e
        return filepath

    @staticmethod
    def load_matrix(filepath: str) -> ComplexMatrix:
        matrix, _ = Serialization.load_matrix_with_meta(filepath)
        return matrix

    @staticmethod
    def load_matrix_with_meta(filepath: str):
        try:
            with open(filepath, 'r') as f:
                data = json.load(f)
        except OSError as e:
            raise MatrixFileError(f"cannot read {filepath}: {e}") from e
        except json.JSONDecodeError as e:
            raise MatrixFileError(f"{filepath} is not valid JSON: {e}") from e
        if not isinstance(data, dict):
            raise MatrixFileError(f"{filepath} does not hold a matrix document")
        return Serialization.matrix_from_dict(data), data.get("meta", {})

    @staticmethod
    def save_report(report: Dict, filepath: str) -> str:
        """Save a report with a creation timestamp"""
        directory = os.path.dirname(filepath)
        document = dict(report)
        document.setdefault("timestamp", datetime.datetime.now().isoformat())
        try:
            if directory:
                os.makedirs(directory, exist_ok=True)
            with open(filepath, 'w') as f:
                json.dump(document, f, indent=2)
        except OSError as e:
            raise MatrixFileError(f"cannot write {filepath}: {e}") from e
        return filepath

    @staticmethod
    def report_to_json(report: Dict) -> str:
        return json.dumps(report, indent=2)
