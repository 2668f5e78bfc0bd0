"""Report sink: CSV tables and JSON documents under the output directory.

Every file embeds the resolved settings that affect results. Output is byte-stable for a
fixed configuration: keys are sorted, floats are written with 17 significant
digits, and run times are omitted under ``deterministic``.
"""

import io
import json
import logging
from collections.abc import Sequence
from pathlib import Path
from typing import Any, Optional

import pandas as pd
from pydantic import BaseModel

from common.config import OutputFormat, Settings, get_tolerances
from common.schemas import IdentityReport

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"

# Settings that change how a run executes but never what it computes.
EXECUTION_FIELDS = {"THREADS", "OUT_DIR", "LOG_LEVEL"}


def _json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _dump(item: Any) -> Any:
    if isinstance(item, BaseModel):
        return item.model_dump(mode="json", by_alias=True)
    return item


def rows_to_text(rows: Sequence[dict[str, Any]], fmt: OutputFormat) -> str:
    """Render rows as CSV (header included) or as a JSON list."""
    if fmt is OutputFormat.JSON:
        return _json([dict(row) for row in rows])
    buffer = io.StringIO()
    pd.DataFrame(list(rows)).to_csv(
        buffer, index=False, float_format=FLOAT_FORMAT, lineterminator="\n"
    )
    return buffer.getvalue()


class ReportSink:
    """Writes tables and documents for one run; the only mutable state of the CLI."""

    def __init__(self, settings: Settings):
        self.settings = settings
        self.out_dir = Path(settings.OUT_DIR)
        self.format = OutputFormat(settings.OUTPUT_FORMAT)
        self.written: list[Path] = []

    @property
    def config(self) -> dict[str, Any]:
        resolved = self.settings.model_dump(mode="json", exclude=EXECUTION_FIELDS)
        return {**resolved, "fixtures_version": get_tolerances().version}

    def _write(self, name: str, suffix: str, text: str) -> Path:
        self.out_dir.mkdir(parents=True, exist_ok=True)
        path = self.out_dir / f"{name}.{suffix}"
        path.write_text(text, encoding="utf-8")
        self.written.append(path)
        logger.info("wrote %s", path)
        return path

    def write_rows(
        self, name: str, rows: Sequence[dict[str, Any]], fmt: Optional[OutputFormat] = None
    ) -> Path:
        """One table in the configured format; CSV carries the config as a ``#`` header line."""
        if (fmt or self.format) is OutputFormat.JSON:
            payload = {"config": self.config, "rows": [dict(row) for row in rows]}
            return self._write(name, "json", _json(payload))
        header = "# config: " + json.dumps(self.config, sort_keys=True) + "\n"
        return self._write(name, "csv", header + rows_to_text(rows, OutputFormat.CSV))

    def write_document(self, name: str, payload: Any) -> Path:
        """Always JSON: ``{"config": ..., "result": ...}``."""
        if isinstance(payload, (list, tuple)):
            result: Any = [_dump(item) for item in payload]
        else:
            result = _dump(payload)
        return self._write(name, "json", _json({"config": self.config, "result": result}))

    def write_reports(self, name: str, reports: Sequence[IdentityReport]) -> list[Path]:
        """Every report as one JSON object, plus a CSV summary row per check."""
        document = self.write_document(name, list(reports))
        summary = [report.summary_row() for report in reports]
        return [document, self.write_rows(name, summary, OutputFormat.CSV)]
