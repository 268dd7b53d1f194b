"""
JSON interchange format for instances.

An instance file is a UTF-8 JSON object with fields "name", "M", "Gamma",
"add_M", "add_Gamma" and "prod" (indexed [a][alpha][b], 0-based indices).
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Union

import structlog

from gsr.core.semiring import AxiomViolation, GammaSemiring, validate
from gsr.errors import AxiomViolationError, InstanceIOError, MalformedTableError

logger = structlog.get_logger(__name__)

FIELDS = ("name", "M", "Gamma", "add_M", "add_Gamma", "prod")


def instance_to_dict(instance: GammaSemiring) -> Dict[str, Any]:
    return {
        "name": instance.name,
        "M": list(instance.m_elems),
        "Gamma": list(instance.g_elems),
        "add_M": instance.add_m.tolist(),
        "add_Gamma": instance.add_g.tolist(),
        "prod": instance.prod.tolist(),
    }


def dumps_instance(instance: GammaSemiring) -> str:
    """Deterministic JSON text for `instance`, newline-terminated."""
    return json.dumps(instance_to_dict(instance), separators=(",", ":"), ensure_ascii=False) + "\n"


def dump_instance(instance: GammaSemiring, path: Union[str, Path]) -> Path:
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(dumps_instance(instance), encoding="utf-8")
    except OSError as exc:
        raise InstanceIOError(f"Cannot write {target}: {exc}") from exc
    logger.debug("instance_written", instance=instance.name, path=str(target))
    return target


def read_document(path: Union[str, Path]) -> Dict[str, Any]:
    """Load and shape-check the JSON object without validating the axioms."""
    source = Path(path)
    try:
        text = source.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InstanceIOError(f"Cannot read {source}: {exc}") from exc
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedTableError(f"{source} is not valid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise MalformedTableError(f"{source} does not hold a JSON object")
    missing = [field for field in FIELDS if field not in document]
    if missing:
        raise MalformedTableError(f"{source} is missing fields: {', '.join(missing)}")
    for field in ("M", "Gamma"):
        labels = document[field]
        if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
            raise MalformedTableError(f"{field} must be an array of strings")
    if not isinstance(document["name"], str):
        raise MalformedTableError("name must be a string")
    return document


def validate_document(document: Dict[str, Any]) -> Union[GammaSemiring, List[AxiomViolation]]:
    n, g = len(document["M"]), len(document["Gamma"])
    for field, rows in (("add_M", n), ("add_Gamma", g)):
        if not isinstance(document[field], list) or len(document[field]) != rows:
            raise MalformedTableError(f"{field} must have {rows} rows to match the labels")
    return validate(
        document["add_M"],
        document["add_Gamma"],
        document["prod"],
        name=document["name"],
        m_elems=document["M"],
        g_elems=document["Gamma"],
    )


def parse_instance(path: Union[str, Path]) -> GammaSemiring:
    """Load, shape-check and validate an instance file.

    Raises:
        InstanceIOError: the file cannot be read
        MalformedTableError: bad JSON, ragged arrays or out-of-range indices
        AxiomViolationError: the tables break at least one axiom family
    """
    result = validate_document(read_document(path))
    if isinstance(result, GammaSemiring):
        logger.info("instance_loaded", instance=result.name, n=result.n, g=result.g)
        return result
    raise AxiomViolationError(
        f"{path} violates {', '.join(v.axiom.value for v in result)}", result
    )
