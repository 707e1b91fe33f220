"""
File IO and logging helpers shared by the CLI and the batch scripts.

Arrangement files are JSON documents:

    {"dim": 2, "field": "Q",
     "hyperplanes": [{"coeffs": ["-1", "1"], "constant": "1"}, ...],
     "group": [[2, 3, 1, 4], [2, 1, 3, 4]]}

or, in matrix mode, ``{"matrix": [[...], ...], "constants": [...]}`` with the
normal vectors as matrix columns. Scalars are integers or strings in the
``a/b`` / ``a+b*sqrt(m)`` grammar; permutations use 1-based one-line notation.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from src.arrangement import Arrangement
from src.exact import Field, Scalar, ScalarParseError
from src.permgroup import PermGroup


LOGGER = logging.getLogger(__name__)
LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"


class InputFormatError(ValueError):
    """A malformed input file, with the position of the problem when known."""

    def __init__(
        self,
        message: str,
        path: Optional[Path | str] = None,
        line: Optional[int] = None,
        column: Optional[int] = None,
    ) -> None:
        self.path = str(path) if path is not None else None
        self.line = line
        self.column = column
        location = ""
        if self.path:
            location = self.path
            if line is not None:
                location += f":{line}:{column}"
            location += ": "
        super().__init__(f"{location}{message}")


def configure_logging(level: str = "WARNING") -> None:
    logging.basicConfig(level=getattr(logging, level.upper(), logging.WARNING), format=LOG_FORMAT)


def read_json(path: Path | str) -> Any:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Input file not found: {path}")
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InputFormatError(exc.msg, path, exc.lineno, exc.colno) from exc


def _locate(path: Optional[Path | str], literal: Any) -> Tuple[Optional[int], Optional[int]]:
    """Line and column of the first occurrence of ``literal`` in the file, 1-based."""
    if path is None or not Path(path).is_file():
        return None, None
    text = Path(path).read_text(encoding="utf-8")
    offset = text.find(json.dumps(literal, ensure_ascii=False))
    if offset < 0:
        return None, None
    line_start = text.rfind("\n", 0, offset) + 1
    return text.count("\n", 0, offset) + 1, offset - line_start + 1


def _field_value(
    field: Field, value: Any, where: str = "", path: Optional[Path | str] = None
) -> Scalar:
    prefix = f"{where}: " if where else ""
    if isinstance(value, float):
        raise InputFormatError(
            f"{prefix}inexact number {value!r}; write it as a string such as \"1/3\"",
            path,
            *_locate(path, value),
        )
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise InputFormatError(f"{prefix}expected an integer or a string, got {value!r}", path)
    try:
        return field.parse(value) if isinstance(value, str) else field(value)
    except ScalarParseError as exc:
        raise InputFormatError(f"{prefix}{exc}", path, *_locate(path, value)) from exc


def _field_from_json(payload: Dict[str, Any], path: Optional[Path | str]) -> Field:
    try:
        return Field.from_json(payload.get("field"))
    except (TypeError, ValueError) as exc:
        raise InputFormatError(str(exc), path, *_locate(path, payload.get("field"))) from exc


def _one_line_generators(generators: Any, path: Optional[Path | str]) -> List[List[int]]:
    if not isinstance(generators, list):
        raise InputFormatError("'group' must be a list of permutations", path)
    for position, images in enumerate(generators):
        if not isinstance(images, list) or not all(
            isinstance(i, int) and not isinstance(i, bool) for i in images
        ):
            raise InputFormatError(
                f"group generator {position + 1} must be a list of integers, got {images!r}", path
            )
    return generators


def _require_key(payload: Dict[str, Any], key: str, path: Optional[Path | str]) -> Any:
    if key not in payload:
        raise InputFormatError(f"Missing key {key!r}", path)
    return payload[key]


def arrangement_from_payload(
    payload: Any, path: Optional[Path | str] = None
) -> Tuple[Arrangement, Optional[PermGroup]]:
    """Build an arrangement (and the group, if the document carries one)."""
    if not isinstance(payload, dict):
        raise InputFormatError("Expected a JSON object", path)
    field = _field_from_json(payload, path)

    if "matrix" in payload:
        matrix = payload["matrix"]
        if not isinstance(matrix, list) or not all(isinstance(row, list) for row in matrix):
            raise InputFormatError("'matrix' must be a list of rows", path)
        constants = payload.get("constants")
        if constants is not None and not isinstance(constants, list):
            raise InputFormatError("'constants' must be a list", path)
        arrangement = Arrangement.from_matrix(
            [
                [_field_value(field, v, f"matrix row {i + 1}, column {j + 1}", path) for j, v in enumerate(row)]
                for i, row in enumerate(matrix)
            ],
            None
            if constants is None
            else [_field_value(field, v, f"constant {j + 1}", path) for j, v in enumerate(constants)],
            field=field,
        )
    else:
        dim = _require_key(payload, "dim", path)
        hyperplanes = _require_key(payload, "hyperplanes", path)
        if not isinstance(dim, int) or dim < 0:
            raise InputFormatError(f"'dim' must be a non-negative integer, got {dim!r}", path)
        coefficients, constants = [], []
        if not isinstance(hyperplanes, list):
            raise InputFormatError("'hyperplanes' must be a list", path)
        for position, entry in enumerate(hyperplanes):
            if not isinstance(entry, dict) or not isinstance(entry.get("coeffs"), list):
                raise InputFormatError(f"hyperplanes[{position}] needs a 'coeffs' list", path)
            where = f"hyperplane {position + 1}"
            coefficients.append(
                [
                    _field_value(field, v, f"{where}, coefficient {j + 1}", path)
                    for j, v in enumerate(entry["coeffs"])
                ]
            )
            constants.append(_field_value(field, entry.get("constant", 0), f"{where}, constant", path))
        arrangement = Arrangement.from_rows(coefficients, constants, field=field, dim=dim)

    duplicates = arrangement.duplicates()
    if duplicates:
        LOGGER.warning(
            "Repeated hyperplanes %s", [(i + 1, j + 1) for i, j in duplicates]
        )
    group = None
    if "group" in payload:
        group = PermGroup.from_one_line(_one_line_generators(payload["group"], path), arrangement.n)
    return arrangement, group


def load_arrangement(path: Path | str) -> Tuple[Arrangement, Optional[PermGroup]]:
    arrangement, group = arrangement_from_payload(read_json(path), path)
    LOGGER.info(
        "Loaded %d hyperplanes in dimension %d over %s from %s",
        arrangement.n,
        arrangement.dim,
        arrangement.field.tag,
        path,
    )
    return arrangement, group


def load_group(path: Path | str, degree: int) -> PermGroup:
    """A JSON list of one-line permutations, or an object with a 'group' key."""
    payload = read_json(path)
    if isinstance(payload, dict):
        payload = _require_key(payload, "group", path)
    return PermGroup.from_one_line(_one_line_generators(payload, path), degree)


def load_points(path: Path | str) -> Tuple[List[List[Scalar]], Field]:
    """``{"field": ..., "points": [[...], ...]}`` or a bare list of points."""
    payload = read_json(path)
    field = _field_from_json(payload, path) if isinstance(payload, dict) else Field()
    points = _require_key(payload, "points", path) if isinstance(payload, dict) else payload
    if not isinstance(points, list) or not all(isinstance(point, list) for point in points):
        raise InputFormatError("Expected a list of points", path)
    return [
        [_field_value(field, v, f"point {i + 1}, coordinate {j + 1}", path) for j, v in enumerate(point)]
        for i, point in enumerate(points)
    ], field


def arrangement_to_payload(arrangement: Arrangement, group: Optional[PermGroup] = None) -> Dict[str, Any]:
    field = arrangement.field
    payload: Dict[str, Any] = {
        "dim": arrangement.dim,
        "field": field.to_json(),
        "hyperplanes": [
            {
                "coeffs": [field.render(v) for v in hyperplane.coeffs],
                "constant": field.render(hyperplane.constant),
            }
            for hyperplane in arrangement.hyperplanes
        ],
    }
    if group is not None and not group.is_trivial:
        payload["group"] = group.one_line_generators()
    return payload


def dump_json(payload: Any, path: Optional[Path | str] = None) -> str:
    text = json.dumps(payload, indent=2, ensure_ascii=False)
    if path is not None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text + "\n", encoding="utf-8")
        LOGGER.info("Wrote %s", path)
    return text


__all__ = [
    "InputFormatError",
    "LOG_FORMAT",
    "arrangement_from_payload",
    "arrangement_to_payload",
    "configure_logging",
    "dump_json",
    "load_arrangement",
    "load_group",
    "load_points",
    "read_json",
]
