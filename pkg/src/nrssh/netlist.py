"""SPICE netlist export and a reader for the emitted subset.

Grammar of the emitted netlist (one card per line, LF endings)::

    * comment
    <name> <node+> <node-> <value>      element card, name starts with L or C
    .IC V(<node>)=<value> ...           initial node voltages
    .TRAN <tstep> <tstop> UIC           transient analysis from the .IC state
    .END

Nodes are ``A1, B1, ..., A<N>`` and ground ``0``. Element names:
``LA<n>``/``LB<n>`` ground inductors, ``CDA<n>``/``CDB<n>`` ground
capacitors, ``CA<n>``/``CB<n>`` chain capacitors (``CA1`` and ``CB<N>`` tie
the chain ends to ground). Zero-valued elements are left out. Values use
SPICE scale suffixes (``f p n u m k meg g t``); the reader ignores trailing
unit letters such as ``100pF``.
"""
from dataclasses import dataclass, field
import math
import re

import numpy as np

from .circuit import CircuitDesign
from .errors import ValidationError

_SUFFIXES = [
    ("t", 1e12), ("g", 1e9), ("meg", 1e6), ("k", 1e3), ("", 1.0),
    ("m", 1e-3), ("u", 1e-6), ("n", 1e-9), ("p", 1e-12), ("f", 1e-15),
]
_PARSE_SCALE = {"t": 1e12, "g": 1e9, "meg": 1e6, "k": 1e3, "m": 1e-3,
                "u": 1e-6, "n": 1e-9, "p": 1e-12, "f": 1e-15}
_NUMBER = re.compile(r"^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)([a-zA-Z]*)$")

TRAN_STEP = 1e-3
TRAN_STOP = 100.0


def format_value(x: float, digits: int = 12) -> str:
    """Engineering notation with a SPICE suffix, e.g. ``3.90625u``."""
    if x == 0:
        return "0"
    mag = abs(x)
    for suffix, scale in _SUFFIXES:
        if mag >= scale * (1 - 1e-15):
            mantissa = x / scale
            break
    else:
        suffix, scale = "f", 1e-15
        mantissa = x / scale
    text = f"{mantissa:.{digits}g}"
    return text + suffix


def parse_value(text: str) -> float:
    m = _NUMBER.match(text.strip())
    if not m:
        raise ValidationError(f"cannot parse SPICE value {text!r}")
    number, tail = m.groups()
    tail = tail.lower()
    if tail.startswith("meg"):
        return float(number) * 1e6
    if tail and tail[0] in _PARSE_SCALE:
        return float(number) * _PARSE_SCALE[tail[0]]
    return float(number)


def node_names(n_cells: int):
    names = []
    for n in range(1, n_cells + 1):
        names.append(f"A{n}")
        if n < n_cells:
            names.append(f"B{n}")
    return names


def _elements(d: CircuitDesign):
    N = d.n_cells
    for n in range(1, N + 1):
        i = n - 1
        a = f"A{n}"
        yield f"LA{n}", a, "0", d.L_A[i]
        yield f"CDA{n}", a, "0", d.D_A[i]
        if n == 1:
            yield "CA1", a, "0", d.C_A[i]
        if n < N:
            b = f"B{n}"
            yield f"CB{n}", a, b, d.C_B[i]
            yield f"LB{n}", b, "0", d.L_B[i]
            yield f"CDB{n}", b, "0", d.D_B[i]
            yield f"CA{n + 1}", b, f"A{n + 1}", d.C_A[i + 1]
        else:
            yield f"CB{n}", a, "0", d.C_B[i]


def export_netlist(d: CircuitDesign, v0: float = 1.0) -> str:
    p = d.params
    lines = [
        "* nonreciprocal SSH LC chain, open boundaries (both ends grounded)",
        f"* nu={p.nu!r} kappa1={p.kappa1!r} kappa2={p.kappa2!r} lambda={d.lam!r} n_cells={p.n_cells}",
        f"* ref_L={format_value(d.ref_L)} ref_C={format_value(d.ref_C)} "
        f"omega0={d.omega0:.12g} rad/s",
    ]
    for name, n1, n2, value in _elements(d):
        if value == 0:
            continue
        lines.append(f"{name} {n1} {n2} {format_value(value)}")
    nodes = node_names(d.n_cells)
    ic = [f"V({nodes[0]})={format_value(v0)}"] + [f"V({n})=0" for n in nodes[1:]]
    lines.append(".IC " + " ".join(ic))
    lines.append(f".TRAN {format_value(TRAN_STEP / d.omega0)} {format_value(TRAN_STOP / d.omega0)} UIC")
    lines.append(".END")
    return "\n".join(lines) + "\n"


@dataclass
class Netlist:
    elements: dict = field(default_factory=dict)
    initial_conditions: dict = field(default_factory=dict)
    tran: tuple = None

    def count(self, prefix):
        return sum(1 for name in self.elements if name.startswith(prefix))

    def nodes(self):
        out = set()
        for n1, n2, _ in self.elements.values():
            out.update((n1, n2))
        out.discard("0")
        return out

    def component_arrays(self, n_cells: int):
        """Rebuild per-cell arrays; absent elements read as 0."""
        arrays = {key: np.zeros(n_cells) for key in ("C_A", "C_B", "D_A", "D_B", "L_A", "L_B")}
        pattern = re.compile(r"^(LA|LB|CDA|CDB|CA|CB)(\d+)$")
        key_of = {"LA": "L_A", "LB": "L_B", "CDA": "D_A", "CDB": "D_B", "CA": "C_A", "CB": "C_B"}
        for name, (_, _, value) in self.elements.items():
            m = pattern.match(name)
            if m:
                arrays[key_of[m.group(1)]][int(m.group(2)) - 1] = value
        return arrays


def parse_netlist(text: str) -> Netlist:
    """Read the subset written by ``export_netlist``."""
    out = Netlist()
    ic_re = re.compile(r"V\((\w+)\)=(\S+)", re.IGNORECASE)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("*"):
            continue
        head = line.split()[0].upper()
        if head == ".END":
            break
        if head == ".IC":
            for node, value in ic_re.findall(line):
                out.initial_conditions[node.upper()] = parse_value(value)
        elif head == ".TRAN":
            fields = line.split()
            if len(fields) < 3:
                raise ValidationError(f"line {lineno}: .TRAN needs tstep and tstop")
            out.tran = (parse_value(fields[1]), parse_value(fields[2]))
        elif head[0] in "LC":
            fields = line.split()
            if len(fields) != 4:
                raise ValidationError(f"line {lineno}: expected '<name> <n+> <n-> <value>'")
            name, n1, n2, value = fields
            out.elements[name.upper()] = (n1.upper(), n2.upper(), parse_value(value))
        else:
            raise ValidationError(f"line {lineno}: unsupported card {head!r}")
    return out
