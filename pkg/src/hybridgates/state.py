"""Photonic states of one or two photons as polynomials in creation operators.

A state is stored as a map from canonical monomials (sorted tuples of
:class:`Mode`) to complex amplitudes. Everything here is immutable; every
operation returns a new :class:`PhotonicState`.

>>> s = PhotonicState.from_terms(1, ["a", "b"], [(1.0, [("a", "H")])])
>>> t = apply_mode_map(s, {Mode("a", "H"): {Mode("a", "H"): 0.6, Mode("b", "H"): 0.8}})
>>> sorted(t.amplitudes.values(), key=abs)
[(0.6+0j), (0.8+0j)]
"""

from __future__ import annotations

import math
import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

DROP_TOL = 1e-15
POLARIZATIONS = ("H", "V")
LABEL_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


class StateError(ValueError):
    """Contract violation on a photonic state (photon number, undeclared mode, ...)."""


class StateParseError(StateError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class Mode(NamedTuple):
    """One (spatial path, polarization) mode. Tuple order gives the canonical sort."""

    spatial: str
    pol: str

    def __str__(self) -> str:
        return f"{self.spatial}:{self.pol}"


Monomial = tuple[Mode, ...]
ModeMap = Mapping[Mode, Mapping[Mode, complex]]


def as_mode(m) -> Mode:
    if isinstance(m, Mode):
        mode = m
    elif isinstance(m, str):
        spatial, _, pol = m.partition(":")
        mode = Mode(spatial, pol)
    else:
        mode = Mode(*m)
    if mode.pol not in POLARIZATIONS:
        raise StateError(f"polarization must be H or V, got {mode.pol!r}")
    return mode


def canonical(modes: Iterable) -> Monomial:
    return tuple(sorted(as_mode(m) for m in modes))


def bosonic_weight(mono: Monomial) -> int:
    """<vac| a..a a^dag..a^dag |vac> for the monomial: product of occupation factorials."""
    w = 1
    for mode in set(mono):
        w *= math.factorial(mono.count(mode))
    return w


@dataclass(frozen=True)
class PhotonicState:
    photons: int
    modes: tuple[str, ...]
    amplitudes: Mapping[Monomial, complex] = field(default_factory=dict)

    def __post_init__(self):
        if self.photons not in (1, 2):
            raise StateError(f"photon number must be 1 or 2, got {self.photons}")
        declared = set(self.modes)
        if len(declared) != len(self.modes):
            raise StateError("duplicate spatial label in declared modes")
        for mono in self.amplitudes:
            if len(mono) != self.photons:
                raise StateError(f"monomial {fmt_monomial(mono)} does not have {self.photons} photon(s)")
            if tuple(sorted(mono)) != mono:
                raise StateError("monomials must be stored in canonical order")
            for m in mono:
                if m.spatial not in declared:
                    raise StateError(f"spatial mode {m.spatial!r} is not declared")

    @classmethod
    def from_terms(cls, photons: int, modes: Iterable[str], terms: Iterable) -> PhotonicState:
        """Build a state from ``(amplitude, [mode, ...])`` pairs, merging like terms."""
        acc: dict[Monomial, complex] = {}
        for amp, ops in terms:
            key = canonical(ops)
            acc[key] = acc.get(key, 0j) + complex(amp)
        return cls(photons, tuple(modes), _clean(acc))

    @classmethod
    def vacuum_plus(cls, modes: Iterable[str], *ops) -> PhotonicState:
        """Single monomial with amplitude 1, e.g. ``vacuum_plus("abcd", "a:V", "c:V")``."""
        return cls.from_terms(len(ops), modes, [(1.0, ops)])

    def norm(self) -> float:
        return math.sqrt(inner_product(self, self).real)

    def amplitude(self, *ops) -> complex:
        return self.amplitudes.get(canonical(ops), 0j)

    def scaled(self, c: complex) -> PhotonicState:
        return PhotonicState(self.photons, self.modes, _clean({k: c * v for k, v in self.amplitudes.items()}))

    def __add__(self, other: PhotonicState) -> PhotonicState:
        if self.photons != other.photons:
            raise StateError("cannot add states with different photon numbers")
        modes = self.modes + tuple(m for m in other.modes if m not in self.modes)
        acc = dict(self.amplitudes)
        for k, v in other.amplitudes.items():
            acc[k] = acc.get(k, 0j) + v
        return PhotonicState(self.photons, modes, _clean(acc))

    def with_modes(self, modes: Iterable[str]) -> PhotonicState:
        return PhotonicState(self.photons, tuple(modes), self.amplitudes)

    def __str__(self) -> str:
        if not self.amplitudes:
            return "0"
        return " + ".join(f"({v:.6g}) {fmt_monomial(k)}" for k, v in self.amplitudes.items())


def fmt_monomial(mono: Monomial) -> str:
    return " ".join(str(m) for m in mono)


def _clean(acc: Mapping[Monomial, complex]) -> dict[Monomial, complex]:
    # Sorted insertion makes equal states compare (and serialize) identically.
    return {k: complex(acc[k]) for k in sorted(acc) if abs(acc[k]) >= DROP_TOL}


def inner_product(s1: PhotonicState, s2: PhotonicState) -> complex:
    """<s1|s2>, conjugate-linear in the first argument."""
    if s1.photons != s2.photons:
        raise StateError(f"photon-number mismatch: {s1.photons} vs {s2.photons}")
    total = 0j
    for mono, a1 in s1.amplitudes.items():
        a2 = s2.amplitudes.get(mono)
        if a2 is not None:
            total += a1.conjugate() * a2 * bosonic_weight(mono)
    return total


def apply_mode_map(s: PhotonicState, table: ModeMap) -> PhotonicState:
    """Substitute every creation operator by its image under ``table``.

    Modes missing from the table map to themselves. Products are re-expanded
    and like terms merged; amplitudes under ``DROP_TOL`` are discarded.
    """
    declared = set(s.modes)
    images: dict[Mode, list[tuple[Mode, complex]]] = {}
    for src, img in table.items():
        src = as_mode(src)
        out = []
        for dst, c in img.items():
            dst = as_mode(dst)
            if dst.spatial not in declared:
                raise StateError(f"mode map targets undeclared spatial mode {dst.spatial!r}")
            out.append((dst, complex(c)))
        images[src] = out

    acc: dict[Monomial, complex] = {}
    for mono, amp in s.amplitudes.items():
        expansions: list[tuple[tuple[Mode, ...], complex]] = [((), amp)]
        for op in mono:
            img = images.get(op, [(op, 1.0)])
            expansions = [(ops + (dst,), c * k) for ops, c in expansions for dst, k in img]
        for ops, c in expansions:
            key = tuple(sorted(ops))
            acc[key] = acc.get(key, 0j) + c
    return PhotonicState(s.photons, s.modes, _clean(acc))


def mode_map_matrix(table: ModeMap, modes: Iterable) -> np.ndarray:
    """Single-photon matrix of ``table`` on the listed modes; column j is the image of mode j."""
    modes = [as_mode(m) for m in modes]
    index = {m: i for i, m in enumerate(modes)}
    u = np.zeros((len(modes), len(modes)), dtype=complex)
    for j, m in enumerate(modes):
        img = table.get(m, {m: 1.0})
        for dst, c in img.items():
            u[index[as_mode(dst)], j] += c
    return u


def is_unitary(u: np.ndarray, atol: float = 1e-12) -> bool:
    return np.allclose(u.conj().T @ u, np.eye(u.shape[0]), rtol=0, atol=atol)


# --- state file format -------------------------------------------------------


def parse_state(text: str) -> PhotonicState:
    """Read the line-oriented state format (``photons``/``modes``/``amp`` directives)."""
    photons = None
    modes = None
    terms = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "photons":
            if photons is not None or len(rest) != 1 or rest[0] not in ("1", "2"):
                raise StateParseError("expected 'photons <1|2>' exactly once", lineno)
            photons = int(rest[0])
        elif head == "modes":
            if photons is None or modes is not None:
                raise StateParseError("'modes' must follow 'photons' and appear once", lineno)
            if not rest or any(not LABEL_RE.match(x) for x in rest):
                raise StateParseError("invalid spatial label list", lineno)
            modes = rest
        elif head == "amp":
            if modes is None:
                raise StateParseError("'amp' before 'modes'", lineno)
            if len(rest) < 3:
                raise StateParseError("expected 'amp <re> <im> <mode>...'", lineno)
            try:
                amp = complex(float(rest[0]), float(rest[1]))
            except ValueError:
                raise StateParseError("malformed number", lineno) from None
            ops = []
            for tok in rest[2:]:
                spatial, sep, pol = tok.partition(":")
                if not sep or pol not in POLARIZATIONS or not LABEL_RE.match(spatial):
                    raise StateParseError(f"malformed mode {tok!r}", lineno)
                if spatial not in modes:
                    raise StateParseError(f"undeclared spatial mode {spatial!r}", lineno)
                ops.append(Mode(spatial, pol))
            if len(ops) != photons:
                raise StateParseError(f"term has {len(ops)} operator(s), expected {photons}", lineno)
            terms.append((amp, ops))
        else:
            raise StateParseError(f"unknown directive {head!r}", lineno)
    if photons is None or modes is None:
        raise StateParseError("missing 'photons' or 'modes' header", 0)
    return PhotonicState.from_terms(photons, modes, terms)


def serialize_state(s: PhotonicState) -> str:
    lines = [f"photons {s.photons}", "modes " + " ".join(s.modes)]
    for mono, amp in s.amplitudes.items():
        lines.append(f"amp {amp.real!r} {amp.imag!r} {fmt_monomial(mono)}")
    return "\n".join(lines) + "\n"
