# report.py
import json
from typing import Dict, List

import pandas as pd

import sys
from pathlib import Path
sys.path.append(str(Path(__file__).parent))
from src.exceptions import DomainError

FORMATS = ("json", "csv")
LIST_SEPARATOR = ";"


class ReportWriter:
    """Serializes command results as {meta, results} JSON or flat CSV."""

    def __init__(self, fmt: str = "json"):
        if fmt not in FORMATS:
            raise DomainError(f"Unsupported report format {fmt!r}; choose one of {FORMATS}")
        self.fmt = fmt

    def render(self, meta: Dict, results: List[Dict]) -> str:
        if self.fmt == "json":
            return self.to_json(meta, results)
        return self.to_csv(results)

    @staticmethod
    def to_json(meta: Dict, results: List[Dict]) -> str:
        """
        Deterministic JSON: sorted keys, fixed indentation, no timestamps.

        Args:
            meta: Run header ({version, config})
            results: One dictionary per record

        Returns:
            UTF-8 text ending in a newline
        """
        payload = {"meta": meta, "results": results}
        return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False) + "\n"

    @staticmethod
    def to_csv(results: List[Dict]) -> str:
        """Flatten results into CSV rows; list fields are joined with ';'."""
        if not results:
            return ""
        flat = []
        for record in results:
            row = {}
            for key, value in record.items():
                if isinstance(value, (list, tuple)):
                    value = LIST_SEPARATOR.join(str(v) for v in value)
                row[key] = value
            flat.append(row)
        df = pd.DataFrame(flat, columns=list(results[0].keys()))
        return df.to_csv(index=False, lineterminator="\r\n")

    def write(self, text: str, out: str = None):
        """Write to `out`, or to stdout when no path is given."""
        if not out or out == "-":
            sys.stdout.write(text)
            sys.stdout.flush()
            return
        out_path = Path(out)
        out_path.parent.mkdir(parents=True, exist_ok=True)
        with open(out_path, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
