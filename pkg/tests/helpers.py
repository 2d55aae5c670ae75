"""Independent oracles for the tests.

These deliberately avoid the package's monomial-substitution engine: one- and
two-photon states become a vector / a tensor over single-photon modes, and
linear optics becomes matrix algebra.
"""

import itertools

import numpy as np

from hybridgates.state import Mode, PhotonicState


def single_modes(labels):
    return [Mode(s, p) for s in sorted(labels) for p in "HV"]


def to_tensor(state: PhotonicState, modes):
    """c * a_k^dag a_l^dag  ->  T[k, l] += c (unsymmetrized); one photon gives a vector."""
    idx = {m: i for i, m in enumerate(modes)}
    n = len(modes)
    t = np.zeros((n,) * state.photons, dtype=complex)
    for mono, amp in state.amplitudes.items():
        t[tuple(idx[m] for m in mono)] += amp
    return t


def from_tensor(t, modes, labels, photons):
    terms = []
    if photons == 1:
        for k, m in enumerate(modes):
            terms.append((t[k], [m]))
    else:
        for k, l in itertools.combinations_with_replacement(range(len(modes)), 2):
            c = t[k, l] + t[l, k] if k != l else t[k, k]
            terms.append((c, [modes[k], modes[l]]))
    return PhotonicState.from_terms(photons, labels, terms)


def evolve(state: PhotonicState, u, modes):
    """Apply single-photon unitary ``u`` (columns = images of ``modes``) by tensor algebra."""
    t = to_tensor(state, modes)
    t = u @ t if state.photons == 1 else u @ t @ u.T
    return from_tensor(t, modes, state.modes, state.photons)


def tensor_norm(state: PhotonicState, modes) -> float:
    t = to_tensor(state, modes)
    if state.photons == 1:
        return float(np.linalg.norm(t))
    sym = t + t.T
    # <psi|psi> = sum_{k,l} |T_kl + T_lk|^2 / 2  for bosonic pairs
    return float(np.sqrt(np.sum(np.abs(sym) ** 2) / 2))


def random_unitary(n, rng):
    z = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_state(rng, labels, photons, terms=None):
    modes = single_modes(labels)
    if terms is None:
        terms = int(rng.integers(1, 2 * len(modes) + 1))
    out = []
    for _ in range(terms):
        ops = [modes[i] for i in rng.integers(0, len(modes), size=photons)]
        out.append((complex(rng.normal(), rng.normal()), ops))
    s = PhotonicState.from_terms(photons, labels, out)
    return s.scaled(1 / s.norm()) if s.amplitudes else random_state(rng, labels, photons, terms)


def states_equal(s1: PhotonicState, s2: PhotonicState, atol=1e-12) -> bool:
    keys = set(s1.amplitudes) | set(s2.amplitudes)
    return all(abs(s1.amplitudes.get(k, 0) - s2.amplitudes.get(k, 0)) <= atol for k in keys)
