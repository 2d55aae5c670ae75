"""Circuit builders for the hybrid polarization/spatial CNOT and controlled-SWAP gates.

Logical encodings
-----------------
CNOT (one photon): polarization carries the control (V=0, H=1), the path
carries the target (a=0, b=1).

Controlled-SWAP on C2 x Cd x Cd (two photons): the pair's joint polarization
carries the control (VV=0, HH=1); photon one's path ``A[i]`` and photon two's
path ``B[j]`` carry the target dits ``i`` and ``j``. The gate is one PBS per
index, on the path pair ``(A[i], B[i])``.

State preparation fans each photon out over ``d`` paths with ``d - 1`` beam
splitters arranged as a complete binary tree (balanced bisection). The second
photon's tree is the mirror image of the first, which reproduces the d=2 and
d=3 preparation layouts exactly, source paths ``(A[0], B[d-1])`` included.
"""

from __future__ import annotations

import functools
import itertools
import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from hybridgates.elements import BeamSplitter, IdealPbs, SpdcSource
from hybridgates.netlist import Netlist, execute_netlist
from hybridgates.state import Mode, PhotonicState, fmt_monomial

LEAK_TOL = 1e-12
MAX_D = 64


class LeakageError(RuntimeError):
    """Output of a basis input has weight outside the encoded subspace."""


@dataclass(frozen=True)
class LogicalEncoding:
    kind: str  # "cnot" | "cswap"
    d: int
    target_paths: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        flat = [p for paths in self.target_paths for p in paths]
        if len(set(flat)) != len(flat):
            raise ValueError("target path lists must be disjoint")
        if any(len(paths) != self.d for paths in self.target_paths):
            raise ValueError("each target path list must have length d")
        if self.kind == "cnot" and len(self.target_paths) != 1:
            raise ValueError("CNOT encoding has one target")
        if self.kind == "cswap" and len(self.target_paths) != 2:
            raise ValueError("controlled-SWAP encoding has two targets")

    @property
    def photons(self) -> int:
        return 1 if self.kind == "cnot" else 2

    @property
    def modes(self) -> tuple[str, ...]:
        return tuple(p for paths in self.target_paths for p in paths)

    def basis(self) -> list[tuple[int, ...]]:
        """Logical labels ordered control-major, then targets lexicographically."""
        ranges = [range(2)] + [range(self.d)] * len(self.target_paths)
        return list(itertools.product(*ranges))

    def monomial(self, label: tuple[int, ...]) -> tuple[Mode, ...]:
        control, *targets = label
        if control not in (0, 1) or len(targets) != len(self.target_paths):
            raise ValueError(f"invalid logical label {label}")
        pol = "H" if control else "V"
        ops = []
        for t, paths in zip(targets, self.target_paths):
            if not 0 <= t < self.d:
                raise ValueError(f"target index {t} out of range for d={self.d}")
            ops.append(Mode(paths[t], pol))
        return tuple(sorted(ops))


@dataclass(frozen=True)
class GateMatrix:
    entries: np.ndarray
    basis: tuple[tuple[int, ...], ...]
    leakage: float = 0.0

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    def max_deviation(self, other: GateMatrix) -> float:
        if self.basis != other.basis:
            raise ValueError("gate matrices use different bases")
        return float(np.max(np.abs(self.entries - other.entries)))


def cswap_paths(d: int) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Path labels for the two photons. Letters a.. for d <= 3, indexed a0../b0.. otherwise."""
    if d == 2:
        return ("a", "b"), ("c", "d")
    if d == 3:
        return ("a", "b", "c"), ("d", "e", "f")
    return tuple(f"a{i}" for i in range(d)), tuple(f"b{i}" for i in range(d))


def fanout_splits(d: int) -> list[tuple[int, int, int, int]]:
    """Beam-splitter tree that spreads one path over ``d`` paths.

    Returns ``(kept, new, kept_size, new_size)`` per splitter in application
    order: the splitter on path ``kept`` sends light to path ``new``; the two
    outputs go on to feed ``kept_size`` and ``new_size`` final paths. Breadth
    first over a balanced bisection, so for ``d = 2**n + q`` the leaves sit at
    depth n (``2**n - q`` of them) or n + 1 (``2 q`` of them).
    """
    splits = []
    queue = deque([(0, d)])
    while queue:
        start, size = queue.popleft()
        if size == 1:
            continue
        lower = (size + 1) // 2
        splits.append((start, start + lower, lower, size - lower))
        queue.append((start, lower))
        queue.append((start + lower, size - lower))
    return splits


@dataclass(frozen=True)
class FanoutSpec:
    """Beam-splitter amplitudes for the two preparation trees.

    ``a_params[k] = (x, y)``: splitter k on photon one keeps ``x`` on its path
    and sends ``y`` to the new path. ``b_params[k] = (x, y)``: the mirrored
    splitter on photon two sends ``x`` to the new path and keeps ``y``.
    Numbering splitters alternately (a0, b0, a1, b1, ...) as BS1, BS2, BS3, ...
    gives the preparation-figure numbering.
    """

    d: int
    a_params: tuple[tuple[float, float], ...]
    b_params: tuple[tuple[float, float], ...]
    n: int = field(init=False)
    q: int = field(init=False)

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("d must be at least 2")
        n = self.d.bit_length() - 1
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "q", self.d - 2**n)
        for params in (self.a_params, self.b_params):
            if len(params) != self.d - 1:
                raise ValueError(f"need {self.d - 1} splitter parameter pairs per photon")
            for x, y in params:
                if abs(x * x + y * y - 1) > 1e-12:
                    raise ValueError(f"splitter parameters ({x}, {y}) not normalized")

    @classmethod
    def uniform(cls, d: int) -> FanoutSpec:
        """Parameters giving amplitude 1/sqrt(d) on every path of each photon."""
        a, b = [], []
        for _, _, lo, hi in fanout_splits(d):
            keep, send = math.sqrt(lo / (lo + hi)), math.sqrt(hi / (lo + hi))
            a.append((keep, send))
            b.append((send, keep))
        return cls(d, tuple(a), tuple(b))

    @classmethod
    def from_numbered(cls, d: int, params) -> FanoutSpec:
        """From ``[(x1, y1), (x2, y2), ...]`` in BS1, BS2, ... order."""
        params = [tuple(map(float, p)) for p in params]
        return cls(d, tuple(params[0::2]), tuple(params[1::2]))


@dataclass(frozen=True)
class Circuit:
    prep: Netlist
    gate: Netlist
    encoding: LogicalEncoding


def build_cnot(gamma: float = 1 / math.sqrt(2), delta: float = 1 / math.sqrt(2)) -> Circuit:
    """One BS for preparation, one PBS as the gate, both on paths (a, b)."""
    modes = ("a", "b")
    prep = Netlist(modes, (BeamSplitter("a", "b", gamma, delta),))
    gate = Netlist(modes, (IdealPbs("a", "b"),))
    return Circuit(prep, gate, LogicalEncoding("cnot", 2, (modes,)))


def cnot_initial_state(alpha: complex, beta: complex) -> PhotonicState:
    """Single photon ``(alpha a_H + beta a_V)|vac>`` on paths (a, b)."""
    return PhotonicState.from_terms(1, ("a", "b"), [(alpha, ["a:H"]), (beta, ["a:V"])])


def build_cswap(
    d: int,
    fanout: FanoutSpec | None = None,
    alpha: complex = 1 / math.sqrt(2),
    beta: complex = 1 / math.sqrt(2),
) -> Circuit:
    if d < 2:
        raise ValueError(f"controlled-SWAP needs d >= 2, got {d}")
    if d > MAX_D:
        raise ValueError(f"d={d} exceeds the supported maximum {MAX_D}")
    fanout = fanout or FanoutSpec.uniform(d)
    if fanout.d != d:
        raise ValueError("fan-out spec built for a different d")
    pa, pb = cswap_paths(d)
    modes = pa + pb

    prep_elements = []
    for (kept, new, _, _), (ax, ay), (bx, by) in zip(fanout_splits(d), fanout.a_params, fanout.b_params):
        prep_elements.append(BeamSplitter(pa[kept], pa[new], ax, ay))
        prep_elements.append(BeamSplitter(pb[d - 1 - kept], pb[d - 1 - new], by, bx))
    prep = Netlist(modes, tuple(prep_elements), SpdcSource(pa[0], pb[d - 1], alpha, beta))

    gate = Netlist(modes, tuple(IdealPbs(pa[i], pb[i]) for i in range(d)))
    return Circuit(prep, gate, LogicalEncoding("cswap", d, (pa, pb)))


def target_matrix(kind: str, d: int = 2) -> GateMatrix:
    """Ideal permutation matrix in the control-major logical basis."""
    if kind == "cnot":
        if d != 2:
            raise ValueError("CNOT is defined for d = 2 only")
        basis = list(itertools.product(range(2), range(2)))

        def image(label):
            c, t = label
            return (c, t ^ c)

    elif kind == "cswap":
        if d < 2:
            raise ValueError(f"controlled-SWAP needs d >= 2, got {d}")
        basis = list(itertools.product(range(2), range(d), range(d)))

        def image(label):
            c, i, j = label
            return (c, j, i) if c else label

    else:
        raise ValueError(f"unsupported gate kind {kind!r}")
    index = {b: k for k, b in enumerate(basis)}
    u = np.zeros((len(basis), len(basis)), dtype=complex)
    for col, label in enumerate(basis):
        u[index[image(label)], col] = 1.0
    return GateMatrix(u, tuple(basis))


def encode_logical(enc: LogicalEncoding, label) -> PhotonicState:
    return PhotonicState(enc.photons, enc.modes, {enc.monomial(tuple(label)): 1.0 + 0j})


@functools.lru_cache(maxsize=64)
def _monomial_lookup(enc: LogicalEncoding) -> dict[tuple[Mode, ...], tuple[int, ...]]:
    return {enc.monomial(b): b for b in enc.basis()}


def decode_logical(enc: LogicalEncoding, state: PhotonicState) -> tuple[dict[tuple[int, ...], complex], float]:
    """Split ``state`` into logical amplitudes and the norm of what lies outside the encoding."""
    lookup = _monomial_lookup(enc)
    table = {b: 0j for b in lookup.values()}
    outside = 0.0
    for mono, amp in state.amplitudes.items():
        label = lookup.get(mono)
        if label is None:
            outside += abs(amp) ** 2
        else:
            table[label] = amp
    return table, math.sqrt(outside)


def extract_logical_unitary(gate: Netlist, enc: LogicalEncoding, tol: float = LEAK_TOL) -> GateMatrix:
    """Column k is the decoded output for logical basis input k."""
    if any(el.kind not in ("bs", "pbs") for el in gate.elements):
        raise ValueError("logical extraction needs a netlist of ideal elements")
    if gate.source is not None:
        raise ValueError("gate netlist must not contain a source")
    basis = enc.basis()
    u = np.zeros((len(basis), len(basis)), dtype=complex)
    worst = 0.0
    for col, label in enumerate(basis):
        out = execute_netlist(gate, encode_logical(enc, label).with_modes(gate.modes))
        table, leak = decode_logical(enc, out)
        if leak > tol:
            stray = next(m for m in out.amplitudes if m not in _monomial_lookup(enc))
            raise LeakageError(
                f"input {label} leaves encoded subspace (weight {leak:.3e}, e.g. {fmt_monomial(stray)})"
            )
        worst = max(worst, leak)
        u[:, col] = [table[b] for b in basis]
    return GateMatrix(u, tuple(basis), worst)


def prep_logical_state(
    prep: Netlist, enc: LogicalEncoding, initial: PhotonicState | None = None
) -> tuple[PhotonicState, dict[tuple[int, ...], complex]]:
    """Run the preparation netlist and decode the result into logical amplitudes.

    CSWAP preparations carry their own source; the CNOT preparation needs
    ``initial`` (see :func:`cnot_initial_state`).
    """
    state = execute_netlist(prep, initial)
    table, leak = decode_logical(enc, state)
    if leak > LEAK_TOL:
        raise LeakageError(f"prepared state has weight {leak:.3e} outside the encoded subspace")
    return state, table
