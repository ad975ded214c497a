"""JSON instrument-config loading, validation and serialization.

Configs are strict: every key must be known (a typo in a physics config
should fail loudly, not silently fall back to a default) and every value
must satisfy the invariants of the domain type it feeds.  Parse failures
(unreadable file, bad JSON) and validation failures (bad schema or
physics) raise distinct exception types so the CLI can report distinct
exit codes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields
from pathlib import Path

from .dispersion import DispersionSpec, SpectralSpec
from .model import DetectionSpec, GyroGeometry, OpticalPath, SourceSpec, WindowMode, _require, _require_finite


class ConfigError(Exception):
    pass


class ConfigParseError(ConfigError):
    """The config file could not be read or is not valid JSON."""


class ConfigValidationError(ConfigError):
    """The config parsed but violates the schema or a physics invariant."""


@dataclass(frozen=True)
class InstrumentConfig:
    """Complete instrument description consumed by every CLI command."""

    geometry: GyroGeometry
    source: SourceSpec
    path: OpticalPath
    detection: DetectionSpec
    spectrum: SpectralSpec
    dispersion: DispersionSpec = DispersionSpec()
    base_coherence: float = 1.0
    bias_phase_rad: float = 0.0
    rotation_rad_per_s: float = 0.0

    def __post_init__(self) -> None:
        _require_finite(self.base_coherence, "base_coherence")
        _require(0.0 < self.base_coherence <= 1.0, "base_coherence",
                 f"must lie in (0, 1], got {self.base_coherence}")
        _require_finite(self.bias_phase_rad, "bias_phase_rad")
        _require_finite(self.rotation_rad_per_s, "rotation_rad_per_s")


_SECTIONS = {
    "geometry": GyroGeometry,
    "source": SourceSpec,
    "path": OpticalPath,
    "detection": DetectionSpec,
    "spectrum": SpectralSpec,
    "dispersion": DispersionSpec,
}
_REQUIRED_SECTIONS = ("geometry", "source", "path", "detection", "spectrum")
_SCALARS = ("base_coherence", "bias_phase_rad", "rotation_rad_per_s")


def _check_number(value, where: str):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigValidationError(f"{where}: expected a number, got {value!r}")
    return value


def _build_section(cls, data, section: str):
    if not isinstance(data, dict):
        raise ConfigValidationError(f"{section}: expected an object, got {type(data).__name__}")
    allowed = {f.name for f in fields(cls)}
    unknown = set(data) - allowed
    if unknown:
        raise ConfigValidationError(f"{section}: unknown key(s) {sorted(unknown)}")
    kwargs = {}
    for key, value in data.items():
        if key == "window_mode":
            try:
                kwargs[key] = WindowMode(value)
            except ValueError:
                raise ConfigValidationError(
                    f"{section}.window_mode: must be one of "
                    f"{[m.value for m in WindowMode]}, got {value!r}") from None
        elif key == "noon_order":
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigValidationError(f"{section}.noon_order: expected an integer, got {value!r}")
            kwargs[key] = value
        else:
            kwargs[key] = float(_check_number(value, f"{section}.{key}"))
    try:
        return cls(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigValidationError(f"{section}: {exc}") from exc


def config_from_dict(data: dict) -> InstrumentConfig:
    if not isinstance(data, dict):
        raise ConfigValidationError(f"top level: expected an object, got {type(data).__name__}")
    allowed = set(_SECTIONS) | set(_SCALARS)
    unknown = set(data) - allowed
    if unknown:
        raise ConfigValidationError(f"top level: unknown key(s) {sorted(unknown)}")
    missing = [s for s in _REQUIRED_SECTIONS if s not in data]
    if missing:
        raise ConfigValidationError(f"top level: missing required section(s) {missing}")

    kwargs = {}
    for section, cls in _SECTIONS.items():
        if section in data:
            kwargs[section] = _build_section(cls, data[section], section)
    for key in _SCALARS:
        if key in data:
            kwargs[key] = float(_check_number(data[key], key))
    try:
        return InstrumentConfig(**kwargs)
    except ValueError as exc:
        raise ConfigValidationError(str(exc)) from exc


def config_to_dict(cfg: InstrumentConfig) -> dict:
    """Inverse of :func:`config_from_dict`; round-trips exactly."""
    out: dict = {}
    for section, cls in _SECTIONS.items():
        spec = getattr(cfg, section)
        body = {}
        for f in fields(cls):
            value = getattr(spec, f.name)
            body[f.name] = value.value if isinstance(value, WindowMode) else value
        out[section] = body
    for key in _SCALARS:
        out[key] = getattr(cfg, key)
    return out


def load_config(path) -> InstrumentConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigParseError(f"{path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigParseError(f"{path}: invalid JSON: {exc}") from exc
    return config_from_dict(data)


def dump_config(cfg: InstrumentConfig) -> str:
    return json.dumps(config_to_dict(cfg), indent=2) + "\n"
