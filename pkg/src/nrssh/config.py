"""Experiment configuration files.

Grammar: INI-style sections with ``key = value`` lines, ``#`` or ``;``
comments. Sections and keys::

    [model]            nu, kappa1, kappa2, n_cells
    [circuit]          lambda (optional), ref_L, ref_C, v0
    [run]              subcommand options, see ``RUN_KEYS``

Numeric values accept plain floats or SPICE-suffixed values (``100p``,
``1m``). Lists are comma separated; sweep points are ``k1:k2`` or
``k1:k2:lambda``.

Every validation failure is reported as ``<file>:<line>: <message>``.
"""
from configparser import ConfigParser, Error as ConfigParserError
from dataclasses import dataclass, field
from pathlib import Path
import re

from .errors import ValidationError
from .lattice import ModelParams
from .netlist import parse_value

MODEL_KEYS = ("nu", "kappa1", "kappa2", "n_cells")
CIRCUIT_KEYS = ("lambda", "ref_l", "ref_c", "v0")
RUN_KEYS = (
    "t_end", "n_times", "initial_site", "dump_eigenvectors", "aipr_t",
    "quadrature_step", "points", "kappa1_values", "kappa2_values",
    "quantum_n_cells", "circuit_n_cells", "quantum_t_end",
)


class ConfigError(ValidationError):
    pass


@dataclass
class CircuitBlock:
    lam: float = None
    ref_L: float = 1e-3
    ref_C: float = 100e-12
    v0: float = 1.0


@dataclass
class ExperimentConfig:
    model: ModelParams
    circuit: CircuitBlock
    run: dict = field(default_factory=dict)
    source: str = "<config>"
    lines: dict = field(default_factory=dict)

    def where(self, section, key):
        line = self.lines.get((section, key))
        return f"{self.source}:{line}" if line else self.source

    def _raw(self, key):
        return self.run.get(key)

    def run_float(self, key, default):
        raw = self._raw(key)
        if raw is None:
            return default
        try:
            return parse_value(raw)
        except ValidationError:
            raise ConfigError(f"{self.where('run', key)}: {key} must be a number, got {raw!r}")

    def run_int(self, key, default):
        raw = self._raw(key)
        if raw is None:
            return default
        try:
            return int(raw)
        except ValueError:
            raise ConfigError(f"{self.where('run', key)}: {key} must be an integer, got {raw!r}")

    def run_bool(self, key, default):
        raw = self._raw(key)
        if raw is None:
            return default
        low = raw.strip().lower()
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"{self.where('run', key)}: {key} must be a boolean, got {raw!r}")

    def run_floats(self, key):
        raw = self._raw(key)
        if raw is None:
            return None
        try:
            return [parse_value(x) for x in raw.split(",") if x.strip()]
        except ValidationError:
            raise ConfigError(f"{self.where('run', key)}: {key} must be a comma-separated number list")

    def sweep_points(self):
        """List of ``(kappa1, kappa2, lambda_or_None)`` in file order."""
        raw = self._raw("points")
        if raw is not None:
            out = []
            for item in raw.split(","):
                item = item.strip()
                if not item:
                    continue
                parts = item.split(":")
                try:
                    nums = [parse_value(x) for x in parts]
                except ValidationError:
                    nums = []
                if len(nums) not in (2, 3):
                    raise ConfigError(
                        f"{self.where('run', 'points')}: bad sweep point {item!r}; "
                        "expected k1:k2 or k1:k2:lambda")
                out.append((nums[0], nums[1], nums[2] if len(nums) == 3 else None))
            return out
        k1s = self.run_floats("kappa1_values")
        k2s = self.run_floats("kappa2_values")
        if not k1s or not k2s:
            raise ConfigError(
                f"{self.source}: sweep needs run.points or both run.kappa1_values and run.kappa2_values")
        return [(a, b, None) for a in k1s for b in k2s]


def _line_index(text):
    index = {}
    section = None
    sec_re = re.compile(r"^\s*\[([^\]]+)\]")
    key_re = re.compile(r"^\s*([^=:#;\s][^=:]*?)\s*[=:]")
    for lineno, line in enumerate(text.splitlines(), start=1):
        m = sec_re.match(line)
        if m:
            section = m.group(1).strip().lower()
            index[(section, None)] = lineno
            continue
        m = key_re.match(line)
        if m and section is not None:
            index[(section, m.group(1).strip().lower())] = lineno
    return index


def parse_config(text: str, source: str = "<config>", overrides=None) -> ExperimentConfig:
    """Parse and validate configuration text.

    ``overrides`` maps ``"section.key"`` to a string value and takes
    precedence over the file.
    """
    cp = ConfigParser(inline_comment_prefixes=("#", ";"), interpolation=None)
    try:
        cp.read_string(text, source=source)
    except ConfigParserError as exc:
        raise ConfigError(f"{source}: {exc}") from exc
    lines = _line_index(text)
    for dotted, value in (overrides or {}).items():
        section, _, key = dotted.partition(".")
        if not key:
            raise ConfigError(f"override {dotted!r} must look like section.key")
        if not cp.has_section(section):
            cp.add_section(section)
        cp.set(section, key, str(value))
        lines[(section, key.lower())] = None

    def where(section, key=None):
        line = lines.get((section, key)) or lines.get((section, None))
        return f"{source}:{line}" if line else source

    known = {"model": MODEL_KEYS, "circuit": CIRCUIT_KEYS, "run": RUN_KEYS}
    for section in cp.sections():
        if section not in known:
            raise ConfigError(f"{where(section)}: unknown section [{section}]")
        for key in cp[section]:
            if key not in known[section]:
                raise ConfigError(f"{where(section, key)}: unknown key {key!r} in [{section}]")

    def number(section, key, default=None):
        if not cp.has_option(section, key):
            if default is None:
                raise ConfigError(f"{where(section)}: missing {section}.{key}")
            return default
        raw = cp.get(section, key)
        try:
            return parse_value(raw)
        except ValidationError:
            raise ConfigError(f"{where(section, key)}: {key} must be a number, got {raw!r}")

    if not cp.has_section("model"):
        raise ConfigError(f"{source}: missing [model] section")
    n_raw = cp.get("model", "n_cells", fallback=None)
    if n_raw is None:
        raise ConfigError(f"{where('model')}: missing model.n_cells")
    try:
        n_cells = int(n_raw)
    except ValueError:
        raise ConfigError(f"{where('model', 'n_cells')}: n_cells must be an integer, got {n_raw!r}")
    try:
        model = ModelParams(
            nu=number("model", "nu", 1.0),
            kappa1=number("model", "kappa1"),
            kappa2=number("model", "kappa2"),
            n_cells=n_cells,
        )
    except ConfigError:
        raise
    except ValidationError as exc:
        raise ConfigError(f"{where('model')}: {exc}") from exc

    circuit = CircuitBlock(
        lam=number("circuit", "lambda", -1.0) if cp.has_option("circuit", "lambda") else None,
        ref_L=number("circuit", "ref_l", 1e-3),
        ref_C=number("circuit", "ref_c", 100e-12),
        v0=number("circuit", "v0", 1.0),
    )
    if circuit.ref_L <= 0 or circuit.ref_C <= 0:
        key = "ref_l" if circuit.ref_L <= 0 else "ref_c"
        raise ConfigError(f"{where('circuit', key)}: {key} must be positive")
    run = dict(cp["run"]) if cp.has_section("run") else {}
    return ExperimentConfig(model=model, circuit=circuit, run=run, source=source, lines=lines)


def load_config(path, overrides=None) -> ExperimentConfig:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    return parse_config(text, source=str(path), overrides=overrides)
