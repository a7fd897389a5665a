"""
JSON schemas of the --json reports

The files under schemas/ are generated from the report models with
``partialpi schema --out schemas`` and shipped with the repository.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Type, Union

import jsonschema
from pydantic import BaseModel

from src.cli.models import CharReport, ChiefSeriesReport, ClassReport, LatticeReport, OrderReport, VerifyReport
from src.core.exceptions import GroupFormatError
from src.embeddings.models import PredicateReport
from src.verify.models import CorpusSummary

SCHEMA_DIR = Path(__file__).resolve().parents[2] / "schemas"

REPORT_MODELS: Dict[str, Type[BaseModel]] = {
    "order": OrderReport,
    "lattice": LatticeReport,
    "chief-series": ChiefSeriesReport,
    "classify": ClassReport,
    "char": CharReport,
    "check": PredicateReport,
    "verify": VerifyReport,
    "corpus-run": CorpusSummary,
}


def _model_for(command: str) -> Type[BaseModel]:
    try:
        return REPORT_MODELS[command]
    except KeyError:
        raise GroupFormatError(f"no report schema for {command!r}; choose from {sorted(REPORT_MODELS)}") from None


def schema_for(command: str) -> Dict[str, Any]:
    """Schema generated from the report model of a command"""
    schema = _model_for(command).model_json_schema()
    if command == "corpus-run":
        # canonical reports carry the computed verdict
        schema["properties"]["ok"] = {"title": "Ok", "type": "boolean"}
        schema["required"] = sorted(set(schema.get("required", [])) | {"ok"})
    return schema


def schema_path(command: str, directory: Union[str, Path, None] = None) -> Path:
    _model_for(command)
    return Path(directory or SCHEMA_DIR) / f"{command}.schema.json"


def write_schemas(directory: Union[str, Path, None] = None) -> List[Path]:
    """Write one schema file per command; returns the written paths"""
    target = Path(directory or SCHEMA_DIR)
    target.mkdir(parents=True, exist_ok=True)
    written = []
    for command in REPORT_MODELS:
        path = schema_path(command, target)
        path.write_text(json.dumps(schema_for(command), sort_keys=True, indent=2) + "\n", encoding="utf-8")
        written.append(path)
    return written


def load_schema(command: str, directory: Union[str, Path, None] = None) -> Dict[str, Any]:
    path = schema_path(command, directory)
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise GroupFormatError(f"cannot read schema {path}: {e}") from e


def validate_report(command: str, payload: Dict[str, Any], directory: Union[str, Path, None] = None) -> None:
    """
    Validate a --json payload against the shipped schema

    Raises:
        jsonschema.ValidationError: the payload does not match
    """
    jsonschema.validate(instance=payload, schema=load_schema(command, directory))
