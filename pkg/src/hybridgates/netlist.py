"""Text netlists: parsing, serialization, execution and depth metrics.

Grammar (one directive per line, ``#`` starts a comment)::

    modes <label>+
    bs   <a> <b> <gamma> <delta>
    pbs  <a> <b>
    ipbs <a> <b> <r> <theta>
    spdc <a> <b> <alphaRe> <alphaIm> <betaRe> <betaIm>
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from hybridgates.elements import (
    BeamSplitter,
    Element,
    ElementError,
    IdealPbs,
    ImperfectPbs,
    SpdcSource,
    apply_element,
    spdc_prepare,
)
from hybridgates.state import LABEL_RE, PhotonicState, StateError


class NetlistError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Netlist:
    modes: tuple[str, ...]
    elements: tuple[Element, ...] = ()
    source: SpdcSource | None = None

    def __post_init__(self):
        declared = set(self.modes)
        if len(declared) != len(self.modes):
            raise NetlistError("duplicate mode label")
        used = [p for el in self.elements for p in el.paths]
        if self.source is not None:
            used += [self.source.a, self.source.b]
        for label in used:
            if label not in declared:
                raise NetlistError(f"undeclared mode {label!r}")

    def count(self, kind: str) -> int:
        return sum(1 for el in self.elements if el.kind == kind)


@dataclass(frozen=True)
class DepthReport:
    element_count: int
    optical_depth: int
    per_kind: dict[str, int] = field(default_factory=dict)


_ARITY = {"modes": None, "bs": 4, "pbs": 2, "ipbs": 4, "spdc": 6}


def _tokens(line: str) -> list[tuple[str, int]]:
    out = []
    i = 0
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < len(line) and not line[j].isspace():
            j += 1
        out.append((line[i:j], i + 1))
        i = j
    return out


def parse_netlist(text: str) -> Netlist:
    modes: list[str] | None = None
    elements: list[Element] = []
    source = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = _tokens(raw.split("#", 1)[0])
        if not toks:
            continue
        (head, hcol), args = toks[0], toks[1:]
        if head not in _ARITY:
            raise NetlistError(f"unknown directive {head!r}", lineno, hcol)

        if head == "modes":
            if modes is not None:
                raise NetlistError("'modes' declared twice", lineno, hcol)
            if not args:
                raise NetlistError("'modes' needs at least one label", lineno, hcol)
            modes = []
            for label, col in args:
                if not LABEL_RE.match(label):
                    raise NetlistError(f"invalid label {label!r}", lineno, col)
                if label in modes:
                    raise NetlistError(f"duplicate label {label!r}", lineno, col)
                modes.append(label)
            continue

        if modes is None:
            raise NetlistError(f"'{head}' before 'modes'", lineno, hcol)
        if len(args) != _ARITY[head]:
            raise NetlistError(f"'{head}' takes {_ARITY[head]} arguments, got {len(args)}", lineno, hcol)
        for label, col in args[:2]:
            if label not in modes:
                raise NetlistError(f"undeclared mode {label!r}", lineno, col)
        nums = []
        for tok, col in args[2:]:
            try:
                v = float(tok)
            except ValueError:
                raise NetlistError(f"malformed number {tok!r}", lineno, col) from None
            if not math.isfinite(v):
                raise NetlistError(f"non-finite number {tok!r}", lineno, col)
            nums.append(v)

        a, b = args[0][0], args[1][0]
        try:
            if head == "bs":
                elements.append(BeamSplitter(a, b, *nums))
            elif head == "pbs":
                elements.append(IdealPbs(a, b))
            elif head == "ipbs":
                elements.append(ImperfectPbs(a, b, *nums))
            else:
                if source is not None:
                    raise NetlistError("at most one source per netlist", lineno, hcol)
                source = SpdcSource(a, b, complex(nums[0], nums[1]), complex(nums[2], nums[3]))
        except ElementError as exc:
            raise NetlistError(str(exc), lineno, hcol) from None

    if modes is None:
        raise NetlistError("missing 'modes' declaration")
    return Netlist(tuple(modes), tuple(elements), source)


def _num(v: float) -> str:
    return repr(float(v))


def serialize_netlist(n: Netlist) -> str:
    lines = ["modes " + " ".join(n.modes)]
    if n.source is not None:
        s = n.source
        a, b = complex(s.alpha), complex(s.beta)
        lines.append(f"spdc {s.a} {s.b} {_num(a.real)} {_num(a.imag)} {_num(b.real)} {_num(b.imag)}")
    for el in n.elements:
        if isinstance(el, BeamSplitter):
            lines.append(f"bs {el.a} {el.b} {_num(el.gamma)} {_num(el.delta)}")
        elif isinstance(el, IdealPbs):
            lines.append(f"pbs {el.a} {el.b}")
        else:
            lines.append(f"ipbs {el.a} {el.b} {_num(el.r)} {_num(el.theta)}")
    return "\n".join(lines) + "\n"


def execute_netlist(n: Netlist, state: PhotonicState | None = None) -> PhotonicState:
    """Run the elements in order.

    A netlist carrying a source generates its own input, so ``state`` must then
    be omitted; otherwise ``state`` must declare every mode of the netlist.
    """
    if n.source is not None:
        if state is not None:
            raise StateError("netlist has a source; do not pass an input state")
        state = spdc_prepare(n.source, n.modes)
    elif state is None:
        raise StateError("netlist has no source; an input state is required")
    missing = [m for m in n.modes if m not in state.modes]
    if missing:
        raise StateError(f"input state does not declare netlist modes {missing}")
    for el in n.elements:
        state = apply_element(state, el)
    return state


def analyze_depth(n: Netlist) -> DepthReport:
    """Element count and optical depth (most elements met along one path)."""
    touches = Counter(p for el in n.elements for p in el.paths)
    kinds = Counter(el.kind for el in n.elements)
    return DepthReport(
        element_count=len(n.elements),
        optical_depth=max(touches.values(), default=0),
        per_kind=dict(sorted(kinds.items())),
    )
