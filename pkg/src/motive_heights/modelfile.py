"""YAML configuration files for the counting experiments.

Three kinds, discriminated by the top-level `kind` key:

  kind: height-model     -> HeightModel (degree, blocks with exact "num/den"
                            Gram rows, masses, torsion_order, tamagawa)
  kind: two-quotient     -> TwoQuotientModel via make_two_quotient_model
  kind: three-quotient   -> ThreeQuotientModel via make_three_quotient_model

See docs/model_format.md for the field-by-field schema and configs/ for full
examples.  Parse failures raise ModelFileError; semantically invalid models
raise ModelValidationError.
"""

from __future__ import annotations

from pathlib import Path

import yaml

from .heights import HeightModel, PlaceBlock, QuadraticForm
from .motive_counts import (
    ThreeQuotientModel,
    TwoQuotientModel,
    make_three_quotient_model,
    make_two_quotient_model,
)
from .special_values import DEFAULT_PRECISION

__all__ = [
    "ModelFileError",
    "ModelValidationError",
    "load_model_config",
]


class ModelFileError(ValueError):
    """The configuration file cannot be read or parsed."""


class ModelValidationError(ValueError):
    """The configuration parsed but describes an invalid model."""


_KINDS = ("height-model", "two-quotient", "three-quotient")

_HEIGHT_KEYS = {
    "kind",
    "degree",
    "archimedean",
    "finite_places",
    "torsion_order",
    "compact_mass",
    "tamagawa",
}
_TWO_KEYS = {
    "kind",
    "m",
    "n",
    "sha_m",
    "sha_n",
    "sha_mn",
    "delta_order",
    "two_exp",
    "u",
    "precision",
    "reg_n",
    "reg_mn",
    "torsion",
}
_THREE_KEYS = {
    "kind",
    "sha_3",
    "sha_9",
    "sha_12",
    "two_exp_3",
    "two_exp_9",
    "precision",
    "reg_3",
    "reg_9",
    "torsion",
}


def _require_mapping(value, context: str) -> dict:
    if not isinstance(value, dict):
        raise ModelFileError(f"{context} must be a mapping, got {type(value).__name__}")
    return value


def _reject_unknown(data: dict, allowed: set[str], context: str) -> None:
    unknown = set(data) - allowed
    if unknown:
        raise ModelFileError(f"unknown keys in {context}: {sorted(unknown)}")


def _get_int(data: dict, key: str, context: str, default=None) -> int:
    if key not in data:
        if default is not None:
            return default
        raise ModelFileError(f"missing required key '{key}' in {context}")
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ModelFileError(f"'{key}' in {context} must be an integer, got {value!r}")
    return value


def _get_number(data: dict, key: str, context: str, default=None) -> float:
    if key not in data:
        if default is not None:
            return default
        raise ModelFileError(f"missing required key '{key}' in {context}")
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise ModelFileError(f"'{key}' in {context} must be a number, got {value!r}")
    try:
        if isinstance(value, str):
            num, _, den = value.partition("/")
            return int(num) / int(den) if den else float(value)
        return float(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ModelFileError(f"'{key}' in {context}: cannot parse {value!r}") from exc


def _parse_form(data: dict, rank: int, context: str) -> QuadraticForm:
    gram = data.get("gram")
    if gram is None:
        if rank == 0:
            return QuadraticForm([])
        raise ModelFileError(f"missing 'gram' in {context}")
    if not isinstance(gram, list) or any(not isinstance(row, list) for row in gram):
        raise ModelFileError(f"'gram' in {context} must be a list of rows")
    if len(gram) != rank:
        raise ModelFileError(
            f"'gram' in {context} has {len(gram)} rows, declared rank is {rank}"
        )
    try:
        return QuadraticForm(gram)
    except ValueError as exc:
        raise ModelValidationError(f"{context}: {exc}") from exc


def _parse_height_model(data: dict) -> HeightModel:
    _reject_unknown(data, _HEIGHT_KEYS, "height-model config")
    degree = _get_int(data, "degree", "height-model config")
    arch_data = _require_mapping(data.get("archimedean", {}), "'archimedean'")
    _reject_unknown(arch_data, {"rank", "gram"}, "'archimedean'")
    arch_rank = _get_int(arch_data, "rank", "'archimedean'", default=0)
    arch = PlaceBlock.archimedean(_parse_form(arch_data, arch_rank, "'archimedean'"))

    blocks: list[PlaceBlock] = []
    masses: dict[int, float] = {}
    places = data.get("finite_places", []) or []
    if not isinstance(places, list):
        raise ModelFileError("'finite_places' must be a list")
    for i, entry in enumerate(places):
        context = f"finite_places[{i}]"
        entry = _require_mapping(entry, context)
        _reject_unknown(entry, {"prime", "rank", "gram", "mass"}, context)
        prime = _get_int(entry, "prime", context)
        rank = _get_int(entry, "rank", context, default=0)
        form = _parse_form(entry, rank, context)
        try:
            blocks.append(PlaceBlock.finite(prime, form))
        except ValueError as exc:
            raise ModelValidationError(f"{context}: {exc}") from exc
        masses[prime] = _get_number(entry, "mass", context, default=1.0)

    try:
        return HeightModel(
            degree=degree,
            archimedean=arch,
            finite_blocks=tuple(blocks),
            torsion_order=_get_int(data, "torsion_order", "height-model config", default=1),
            compact_mass=_get_number(data, "compact_mass", "height-model config", default=1.0),
            local_masses=masses,
            tamagawa=_get_number(data, "tamagawa", "height-model config", default=1.0),
        )
    except ValueError as exc:
        raise ModelValidationError(str(exc)) from exc


def _parse_two_quotient(data: dict) -> TwoQuotientModel:
    _reject_unknown(data, _TWO_KEYS, "two-quotient config")
    kwargs = dict(
        m=_get_int(data, "m", "two-quotient config"),
        n=_get_int(data, "n", "two-quotient config"),
        sha_m=_get_int(data, "sha_m", "two-quotient config", default=1),
        sha_n=_get_int(data, "sha_n", "two-quotient config", default=1),
        sha_mn=_get_int(data, "sha_mn", "two-quotient config", default=1),
        delta_order=_get_int(data, "delta_order", "two-quotient config", default=1),
        two_exp=_get_int(data, "two_exp", "two-quotient config", default=0),
        u=_get_int(data, "u", "two-quotient config", default=1),
        precision=_get_int(data, "precision", "two-quotient config", default=DEFAULT_PRECISION),
    )
    if "reg_n" in data:
        kwargs["reg_n"] = _get_number(data, "reg_n", "two-quotient config")
    if "reg_mn" in data:
        kwargs["reg_mn"] = _get_number(data, "reg_mn", "two-quotient config")
    if "torsion" in data:
        kwargs["torsion"] = _get_int(data, "torsion", "two-quotient config")
    try:
        return make_two_quotient_model(**kwargs)
    except ValueError as exc:
        raise ModelValidationError(str(exc)) from exc


def _parse_three_quotient(data: dict) -> ThreeQuotientModel:
    _reject_unknown(data, _THREE_KEYS, "three-quotient config")
    kwargs = dict(
        sha_3=_get_int(data, "sha_3", "three-quotient config", default=1),
        sha_9=_get_int(data, "sha_9", "three-quotient config", default=1),
        sha_12=_get_int(data, "sha_12", "three-quotient config", default=691),
        two_exp_3=_get_int(data, "two_exp_3", "three-quotient config", default=0),
        two_exp_9=_get_int(data, "two_exp_9", "three-quotient config", default=0),
        precision=_get_int(data, "precision", "three-quotient config", default=DEFAULT_PRECISION),
    )
    if "reg_3" in data:
        kwargs["reg_3"] = _get_number(data, "reg_3", "three-quotient config")
    if "reg_9" in data:
        kwargs["reg_9"] = _get_number(data, "reg_9", "three-quotient config")
    if "torsion" in data:
        kwargs["torsion"] = _get_int(data, "torsion", "three-quotient config")
    try:
        return make_three_quotient_model(**kwargs)
    except ValueError as exc:
        raise ModelValidationError(str(exc)) from exc


def load_model_config(path: str | Path):
    """Parse a model configuration file; returns a HeightModel,
    TwoQuotientModel, or ThreeQuotientModel depending on its `kind`."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ModelFileError(f"cannot read {path}: {exc}") from exc
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ModelFileError(f"cannot parse {path}: {exc}") from exc
    data = _require_mapping(data, f"config {path}")
    kind = data.get("kind")
    if kind == "height-model":
        return _parse_height_model(data)
    if kind == "two-quotient":
        return _parse_two_quotient(data)
    if kind == "three-quotient":
        return _parse_three_quotient(data)
    raise ModelFileError(f"config {path}: 'kind' must be one of {_KINDS}, got {kind!r}")
