"""Linear-optical elements acting on a pair of spatial paths.

Each element is a frozen dataclass exposing ``mode_map()``, the linear
substitution it performs on creation operators. The ``apply_*`` helpers
run that substitution on a :class:`~hybridgates.state.PhotonicState`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from hybridgates.state import Mode, PhotonicState, StateError, apply_mode_map

NORM_TOL = 1e-12
SPDC_NORM_TOL = 1e-9


class ElementError(ValueError):
    pass


def _check_pair(a: str, b: str):
    if a == b:
        raise ElementError(f"element needs two distinct paths, got {a!r} twice")


def _check_declared(s: PhotonicState, *labels: str):
    for label in labels:
        if label not in s.modes:
            raise StateError(f"spatial mode {label!r} is not declared in the state")


@dataclass(frozen=True)
class BeamSplitter:
    """Polarization-independent splitter: ``a -> gamma a + delta b``.

    The partner input is completed to the real rotation
    ``b -> -delta a + gamma b`` so the element is unitary on both ports.
    """

    a: str
    b: str
    gamma: float
    delta: float

    kind = "bs"

    def __post_init__(self):
        _check_pair(self.a, self.b)
        for v in (self.gamma, self.delta):
            if isinstance(v, complex) or not math.isfinite(v):
                raise ElementError("beam splitter coefficients must be finite reals")
        if abs(self.gamma**2 + self.delta**2 - 1) > NORM_TOL:
            raise ElementError(
                f"beam splitter not normalized: {self.gamma}^2 + {self.delta}^2 = {self.gamma**2 + self.delta**2}"
            )

    @property
    def paths(self) -> tuple[str, str]:
        return (self.a, self.b)

    def mode_map(self):
        g, d = self.gamma, self.delta
        table = {}
        for p in ("H", "V"):
            ma, mb = Mode(self.a, p), Mode(self.b, p)
            table[ma] = {ma: g, mb: d}
            table[mb] = {ma: -d, mb: g}
        return table


@dataclass(frozen=True)
class IdealPbs:
    """Transmits H between the two paths, reflects V in place."""

    a: str
    b: str

    kind = "pbs"

    def __post_init__(self):
        _check_pair(self.a, self.b)

    @property
    def paths(self) -> tuple[str, str]:
        return (self.a, self.b)

    def mode_map(self):
        ah, bh = Mode(self.a, "H"), Mode(self.b, "H")
        return {ah: {bh: 1.0}, bh: {ah: 1.0}}


@dataclass(frozen=True)
class ImperfectPbs:
    """PBS with polarization extinction ratio ``r`` and mount deviation ``theta``.

    With ``c = cos(theta) - sqrt(r) sin(theta)``, ``s = sin(theta) + sqrt(r) cos(theta)``
    and ``k = 1/sqrt(1 + r)``, on the path pair (x, y)::

        x_H -> k (c y_H - s y_V)        y_H -> k (c x_H - s x_V)
        x_V -> k (s x_H + c x_V)        y_V -> k (s y_H + c y_V)

    Since ``c**2 + s**2 = 1 + r`` every column has unit norm.
    """

    a: str
    b: str
    r: float
    theta: float

    kind = "ipbs"

    def __post_init__(self):
        _check_pair(self.a, self.b)
        if isinstance(self.r, complex) or not (0.0 <= self.r <= 1.0):
            raise ElementError(f"extinction ratio must be a real number in [0, 1], got {self.r!r}")
        if not math.isfinite(self.theta):
            raise ElementError("theta must be finite")

    @property
    def paths(self) -> tuple[str, str]:
        return (self.a, self.b)

    def coefficients(self) -> tuple[float, float, float]:
        sr = math.sqrt(self.r)
        c = math.cos(self.theta) - sr * math.sin(self.theta)
        s = math.sin(self.theta) + sr * math.cos(self.theta)
        return c, s, 1.0 / math.sqrt(1.0 + abs(self.r))

    def mode_map(self):
        c, s, k = self.coefficients()
        xh, xv = Mode(self.a, "H"), Mode(self.a, "V")
        yh, yv = Mode(self.b, "H"), Mode(self.b, "V")
        return {
            xh: {yh: k * c, yv: -k * s},
            yh: {xh: k * c, xv: -k * s},
            xv: {xh: k * s, xv: k * c},
            yv: {yh: k * s, yv: k * c},
        }


@dataclass(frozen=True)
class SpdcSource:
    """Ideal polarization-entangled pair ``(alpha a_H b_H + beta a_V b_V)|vac>``."""

    a: str
    b: str
    alpha: complex
    beta: complex

    kind = "spdc"

    def __post_init__(self):
        _check_pair(self.a, self.b)
        n = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(n - 1) > SPDC_NORM_TOL:
            raise ElementError(f"SPDC amplitudes not normalized: |alpha|^2 + |beta|^2 = {n}")


Element = Union[BeamSplitter, IdealPbs, ImperfectPbs]


def apply_element(s: PhotonicState, el: Element) -> PhotonicState:
    _check_declared(s, *el.paths)
    return apply_mode_map(s, el.mode_map())


def apply_bs(s: PhotonicState, bs: BeamSplitter) -> PhotonicState:
    return apply_element(s, bs)


def apply_ideal_pbs(s: PhotonicState, p: IdealPbs) -> PhotonicState:
    return apply_element(s, p)


def apply_imperfect_pbs(s: PhotonicState, p: ImperfectPbs) -> PhotonicState:
    return apply_element(s, p)


def spdc_prepare(src: SpdcSource, modes=None) -> PhotonicState:
    """Two-photon state emitted by ``src``; ``modes`` defaults to the source's two paths."""
    modes = tuple(modes) if modes is not None else (src.a, src.b)
    for label in (src.a, src.b):
        if label not in modes:
            raise StateError(f"source path {label!r} is not among the declared modes")
    return PhotonicState.from_terms(
        2,
        modes,
        [
            (src.alpha, [Mode(src.a, "H"), Mode(src.b, "H")]),
            (src.beta, [Mode(src.a, "V"), Mode(src.b, "V")]),
        ],
    )
