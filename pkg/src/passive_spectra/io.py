"""JSON system files and deterministic report serialization.

A system file holds a ``name`` and exactly one representation::

    {"name": ..., "A": [[...]], "B": [[...]], "C": [[...]], "D": [[...]]}
    {"name": ..., "num": [...], "den": [...]}
    {"name": ..., "g_inf": 1.0, "poles": [...], "residues": [...]}
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Union

import numpy as np

from .exceptions import DimensionError, ValidationError
from .model import PoleResidue, RationalFunction, Realization

__all__ = ["SystemFile", "parse_system", "load_system", "system_to_dict", "to_jsonable", "dumps"]

_SS = ("A", "B", "C", "D")
_TF = ("num", "den")
_PR = ("g_inf", "poles", "residues")

System = Union[Realization, RationalFunction, PoleResidue]


@dataclass(frozen=True, eq=False)
class SystemFile:
    name: str
    system: System

    @property
    def kind(self) -> str:
        return {Realization: "ss", RationalFunction: "tf", PoleResidue: "pr"}[type(self.system)]


def _matrix(v, key):
    if not isinstance(v, list) or not v or not all(isinstance(r, list) for r in v):
        raise DimensionError(f"{key} must be a nonempty list of rows")
    widths = {len(r) for r in v}
    if len(widths) != 1:
        raise DimensionError(f"{key} is not rectangular")
    try:
        return np.array(v, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{key} has non-numeric entries") from exc


def _vector(v, key):
    if not isinstance(v, list):
        raise ValidationError(f"{key} must be a list")
    try:
        return [float(x) for x in v]
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{key} has non-numeric entries") from exc


def parse_system(data: dict) -> SystemFile:
    if not isinstance(data, dict):
        raise ValidationError("system file must hold a JSON object")
    present = [grp for grp in (_SS, _TF, _PR) if any(k in data for k in grp)]
    if len(present) != 1:
        raise ValidationError("exactly one of A/B/C/D, num/den or g_inf/poles/residues is required")
    grp = present[0]
    missing = [k for k in grp if k not in data]
    if missing:
        raise ValidationError(f"missing keys: {', '.join(missing)}")
    name = str(data.get("name", "system"))
    if grp is _SS:
        sysobj = Realization(*(_matrix(data[k], k) for k in _SS))
    elif grp is _TF:
        sysobj = RationalFunction(_vector(data["num"], "num"), _vector(data["den"], "den"))
    else:
        try:
            g_inf = float(data["g_inf"])
        except (TypeError, ValueError) as exc:
            raise ValidationError("g_inf must be a number") from exc
        sysobj = PoleResidue(g_inf, tuple(_vector(data["poles"], "poles")),
                             tuple(_vector(data["residues"], "residues")))
    return SystemFile(name, sysobj)


def load_system(path) -> SystemFile:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON in {path}: {exc}") from exc
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc
    return parse_system(data)


def system_to_dict(name: str, system: System) -> dict:
    if isinstance(system, Realization):
        return {"name": name, **{k: getattr(system, k) for k in _SS}}
    if isinstance(system, RationalFunction):
        return {"name": name, "num": list(system.num), "den": list(system.den)}
    return {"name": name, "g_inf": system.g_inf, "poles": list(system.poles),
            "residues": list(system.residues)}


def _num(x: float):
    x = float(x)
    if not np.isfinite(x):
        return None
    r = float(f"{x:.12g}")
    return 0.0 if r == 0 else r


def to_jsonable(obj):
    """Recursively convert numpy data; floats rounded to 12 significant digits.

    Complex numbers become ``{"re": ..., "im": ...}``.
    """
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": _num(obj.real), "im": _num(obj.imag)}
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    if hasattr(obj, "value") and isinstance(obj.value, str):
        return obj.value
    return obj


def dumps(obj) -> str:
    return json.dumps(to_jsonable(obj), indent=2, sort_keys=False) + "\n"
