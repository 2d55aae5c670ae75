"""Fidelity of the three-qubit controlled-SWAP when its two PBSs are imperfect.

Two independent routes to the input-averaged fidelity are provided: the
closed form in :func:`average_fidelity_closed_form` and a uniform tensor-grid
quadrature over the input angles (x, y, z) whose integrand comes from
simulating the imperfect and ideal gates (:func:`average_fidelity_quadrature`).
The integrand is a trigonometric polynomial of degree at most 4 in each angle,
so any grid with 8 or more points per axis integrates it exactly.
"""

from __future__ import annotations

import cmath
import io
import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from hybridgates.elements import ImperfectPbs
from hybridgates.gates import FanoutSpec, build_cswap, encode_logical
from hybridgates.netlist import Netlist, execute_netlist
from hybridgates.state import PhotonicState, inner_product

DEFAULT_R_RANGE = (0.0, 1e-3)
DEFAULT_THETA_RANGE = (0.0, 5e-3)
DEFAULT_EPSILON = 0.02
DEFAULT_DELTA_PHI = math.pi / 36
MIN_POINTS = 8

_CIRCUIT = build_cswap(2)
ENCODING = _CIRCUIT.encoding
IDEAL_GATE = _CIRCUIT.gate
BASIS = ENCODING.basis()


@dataclass(frozen=True)
class ImperfectionParams:
    r: float
    theta: float

    def __post_init__(self):
        if not (0.0 <= self.r <= 1.0):
            raise ValueError(f"extinction ratio must lie in [0, 1], got {self.r}")
        if not math.isfinite(self.theta):
            raise ValueError("theta must be finite")

    def coefficients(self) -> tuple[float, float, float]:
        """(cos t - sqrt(r) sin t, sin t + sqrt(r) cos t, 1 + r)."""
        sr = math.sqrt(self.r)
        return (
            math.cos(self.theta) - sr * math.sin(self.theta),
            math.sin(self.theta) + sr * math.cos(self.theta),
            1.0 + abs(self.r),
        )


@dataclass(frozen=True)
class ComparisonParams:
    epsilon: float = DEFAULT_EPSILON
    delta_phi: float = DEFAULT_DELTA_PHI

    def __post_init__(self):
        if not (math.isfinite(self.epsilon) and math.isfinite(self.delta_phi)):
            raise ValueError("comparison parameters must be finite")


@dataclass(frozen=True)
class FidelityReport:
    value: float
    method: str  # "closed_form" | "quadrature" | "state_overlap"
    params: dict = field(default_factory=dict)


def imperfect_gate(imp: ImperfectionParams) -> Netlist:
    """The d=2 gate with each PBS replaced by its imperfect model."""
    return Netlist(
        IDEAL_GATE.modes,
        tuple(ImperfectPbs(el.a, el.b, imp.r, imp.theta) for el in IDEAL_GATE.elements),
    )


def input_state(alpha, beta, gamma, delta, mu, nu) -> PhotonicState:
    """Prepared gate input: SPDC pair, then BS1 (gamma, delta) on photon one and BS2 (mu, nu) on photon two."""
    circuit = build_cswap(2, FanoutSpec.from_numbered(2, [(gamma, delta), (mu, nu)]), alpha, beta)
    return execute_netlist(circuit.prep)


def ideal_output_state(params: Sequence[float]) -> PhotonicState:
    return execute_netlist(IDEAL_GATE, input_state(*params))


def real_output_state(params: Sequence[float], imp: ImperfectionParams) -> PhotonicState:
    return execute_netlist(imperfect_gate(imp), input_state(*params))


def state_fidelity(real: PhotonicState, ideal: PhotonicState) -> float:
    return abs(inner_product(real, ideal)) ** 2


def basis_fidelity(label, imp: ImperfectionParams) -> float:
    """Fidelity for one logical basis input, by simulation."""
    psi = encode_logical(ENCODING, label)
    real = execute_netlist(imperfect_gate(imp), psi)
    ideal = execute_netlist(IDEAL_GATE, psi)
    return state_fidelity(real, ideal)


def basis_fidelity_closed_form(imp: ImperfectionParams) -> float:
    c, _, n = imp.coefficients()
    return abs(c * c / n) ** 2


def overlap_matrix(imp: ImperfectionParams) -> np.ndarray:
    """``M[k, l] = <U_real e_k | U_ideal e_l>`` over the eight logical basis states."""
    real_gate = imperfect_gate(imp)
    reals = [execute_netlist(real_gate, encode_logical(ENCODING, b)) for b in BASIS]
    ideals = [execute_netlist(IDEAL_GATE, encode_logical(ENCODING, b)) for b in BASIS]
    return np.array([[inner_product(rk, il) for il in ideals] for rk in reals])


def input_amplitudes(x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Logical amplitude table of the prepared input, shape ``(..., 8)`` in basis order.

    alpha, beta = cos x, sin x; gamma, delta = cos y, sin y; mu, nu = cos z, sin z.
    """
    pol = {0: np.sin(x), 1: np.cos(x)}
    path1 = [np.cos(y), np.sin(y)]
    path2 = [np.cos(z), np.sin(z)]
    return np.stack([pol[c] * path1[i] * path2[j] for c, i, j in BASIS], axis=-1)


def average_fidelity_quadrature(imp: ImperfectionParams, points: int = 16) -> float:
    """Mean of |<psi_real|psi_out>|^2 over a uniform ``points**3`` grid on [0, 2 pi)^3."""
    if points < MIN_POINTS:
        raise ValueError(f"need at least {MIN_POINTS} points per axis, got {points}")
    m = overlap_matrix(imp)
    grid = 2 * np.pi * np.arange(points) / points
    x, y, z = np.meshgrid(grid, grid, grid, indexing="ij")
    theta = input_amplitudes(x, y, z).reshape(-1, len(BASIS))
    overlap = np.einsum("nk,kl,nl->n", theta.conj(), m, theta)
    return float(np.mean(np.abs(overlap) ** 2))


def average_fidelity_closed_form(imp: ImperfectionParams) -> float:
    c, s, n = imp.coefficients()
    return c**4 / n**2 + (3 / 16) * s**4 / n**2


def comparison_fidelity_000(imp: ImperfectionParams) -> float:
    """Baseline fidelity of the earlier scheme for control-off inputs."""
    return basis_fidelity_closed_form(imp) * abs(1 / (1 + imp.r)) ** 2


def comparison_fidelity_100(imp: ImperfectionParams, cmp: ComparisonParams) -> float:
    """Baseline fidelity of the earlier scheme for control-on inputs."""
    eps, dphi = cmp.epsilon, cmp.delta_phi
    factor = 1j * (1 + eps) * (1 - cmath.exp(1j * (math.pi - dphi))) / (2 + 2 * eps + eps**2)
    return comparison_fidelity_000(imp) * abs(factor**4) ** 2


def _grid(lo: float, hi: float, steps: int) -> np.ndarray:
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if hi < lo:
        raise ValueError(f"range must be non-decreasing, got [{lo}, {hi}]")
    return np.array([lo]) if steps == 1 else np.linspace(lo, hi, steps)


def _surface_point(args) -> FidelityReport:
    r, theta, method, points = args
    imp = ImperfectionParams(float(r), float(theta))
    if method == "quadrature":
        value = average_fidelity_quadrature(imp, points)
    else:
        value = average_fidelity_closed_form(imp)
    return FidelityReport(value, method, {"r": float(r), "theta": float(theta)})


def fidelity_surface(
    r_range: tuple[float, float] = DEFAULT_R_RANGE,
    theta_range: tuple[float, float] = DEFAULT_THETA_RANGE,
    steps: int = 51,
    method: str = "closed_form",
    points: int = 16,
    workers: int = 1,
) -> list[FidelityReport]:
    """Average fidelity on a ``steps x steps`` grid, row-major in r then theta."""
    if method not in ("closed_form", "quadrature"):
        raise ValueError(f"unknown method {method!r}")
    jobs = [(r, t, method, points) for r in _grid(*r_range, steps) for t in _grid(*theta_range, steps)]
    if workers <= 1:
        return [_surface_point(j) for j in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        # map() yields in submission order, so output order is worker-independent
        return list(pool.map(_surface_point, jobs))


@dataclass(frozen=True)
class CurveRow:
    x: float
    f_ours: float
    f_cmp000: float
    f_cmp100: float


def fidelity_curves(
    fixed: str,
    value: float,
    cmp: ComparisonParams = ComparisonParams(),
    points: int = 101,
) -> list[CurveRow]:
    """Sweep the free parameter over its plotting range with the other held at ``value``.

    ``fixed="theta"`` sweeps r over [0, 1e-3]; ``fixed="r"`` sweeps theta over [0, 5e-3].
    ``f_ours`` is the simulated |000> fidelity (all eight basis fidelities coincide).
    """
    if fixed == "theta":
        xs = _grid(*DEFAULT_R_RANGE, points)
        imps = [ImperfectionParams(float(x), value) for x in xs]
    elif fixed == "r":
        xs = _grid(*DEFAULT_THETA_RANGE, points)
        imps = [ImperfectionParams(value, float(x)) for x in xs]
    else:
        raise ValueError("fixed must be 'r' or 'theta'")
    return [
        CurveRow(float(x), basis_fidelity((0, 0, 0), imp), comparison_fidelity_000(imp), comparison_fidelity_100(imp, cmp))
        for x, imp in zip(xs, imps)
    ]


def _g(v: float) -> str:
    return f"{v:.17g}"


def surface_csv(reports: Sequence[FidelityReport]) -> str:
    buf = io.StringIO()
    buf.write("r,theta,F\n")
    for rep in reports:
        buf.write(f"{_g(rep.params['r'])},{_g(rep.params['theta'])},{_g(rep.value)}\n")
    return buf.getvalue()


def curves_csv(rows: Sequence[CurveRow]) -> str:
    buf = io.StringIO()
    buf.write("x,F_ours,F_cmp000,F_cmp100\n")
    for row in rows:
        buf.write(f"{_g(row.x)},{_g(row.f_ours)},{_g(row.f_cmp000)},{_g(row.f_cmp100)}\n")
    return buf.getvalue()
