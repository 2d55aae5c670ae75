import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import evolve, random_state, random_unitary, single_modes, states_equal, tensor_norm
from hybridgates.state import (
    Mode,
    PhotonicState,
    StateError,
    StateParseError,
    apply_mode_map,
    inner_product,
    is_unitary,
    mode_map_matrix,
    parse_state,
    serialize_state,
)

AH, AV, BH, BV = Mode("a", "H"), Mode("a", "V"), Mode("b", "H"), Mode("b", "V")
seeds = st.integers(0, 2**32 - 1)


def table_from_matrix(u, modes):
    return {src: {dst: u[i, j] for i, dst in enumerate(modes)} for j, src in enumerate(modes)}


class TestInnerProduct:
    def test_normalized_self_overlap(self):
        s = PhotonicState.from_terms(1, "ab", [(0.6, [AH]), (0.8j, [BV])])
        assert inner_product(s, s) == pytest.approx(1 + 0j, abs=1e-15)

    def test_orthogonal_polarizations(self):
        h = PhotonicState.vacuum_plus("a", AH)
        v = PhotonicState.vacuum_plus("a", AV)
        assert inner_product(h, v) == 0

    def test_conjugate_linear_in_first_slot(self):
        s = PhotonicState.vacuum_plus("a", AH)
        assert inner_product(s.scaled(1j), s) == -1j
        assert inner_product(s, s.scaled(1j)) == 1j

    def test_doubly_occupied_mode_has_weight_two(self):
        s = PhotonicState.from_terms(2, "a", [(1.0, [AH, AH])])
        assert inner_product(s, s) == 2

    def test_photon_number_mismatch(self):
        one = PhotonicState.vacuum_plus("ab", AH)
        two = PhotonicState.vacuum_plus("ab", AH, BH)
        with pytest.raises(StateError):
            inner_product(one, two)

    @given(seeds, st.sampled_from([1, 2]))
    def test_conjugate_symmetry(self, seed, photons):
        rng = np.random.default_rng(seed)
        s1 = random_state(rng, "abc", photons)
        s2 = random_state(rng, "abc", photons)
        assert inner_product(s1, s2) == pytest.approx(inner_product(s2, s1).conjugate(), abs=1e-14)


class TestApplyModeMap:
    def test_identity_table(self):
        s = PhotonicState.from_terms(2, "ab", [(0.6, [AH, BV]), (0.8, [AV, BV])])
        assert apply_mode_map(s, {}) == s
        assert apply_mode_map(s, {AH: {AH: 1.0}}) == s

    def test_balanced_split_matches_matrix_oracle(self):
        s = PhotonicState.vacuum_plus("ab", AH)
        k = 1 / math.sqrt(2)
        out = apply_mode_map(s, {AH: {AH: k, BH: k}})
        modes = single_modes("ab")
        u = np.eye(4, dtype=complex)
        u[:, modes.index(AH)] = 0
        u[modes.index(AH), modes.index(AH)] = k
        u[modes.index(BH), modes.index(AH)] = k
        # only the a_H column of the oracle matters for this input
        assert states_equal(out, evolve(s, u, modes), atol=0)
        assert out.amplitude(AH) == pytest.approx(k) and out.amplitude(BH) == pytest.approx(k)

    def test_swap_of_commuting_pair_is_same_monomial(self):
        s = PhotonicState.vacuum_plus("ab", AH, BH)
        out = apply_mode_map(s, {AH: {BH: 1.0}, BH: {AH: 1.0}})
        assert out == s

    def test_undeclared_target(self):
        s = PhotonicState.vacuum_plus("a", AH)
        with pytest.raises(StateError):
            apply_mode_map(s, {AH: {Mode("z", "H"): 1.0}})

    def test_dust_is_dropped(self):
        s = PhotonicState.from_terms(1, "ab", [(1.0, [AH]), (1e-16, [BH])])
        assert list(s.amplitudes) == [(AH,)]

    @settings(max_examples=60)
    @given(seeds, st.sampled_from([1, 2]))
    def test_random_unitary_agrees_with_tensor_oracle(self, seed, photons):
        rng = np.random.default_rng(seed)
        modes = single_modes("abc")
        u = random_unitary(len(modes), rng)
        assert is_unitary(u)
        s = random_state(rng, "abc", photons)
        out = apply_mode_map(s, table_from_matrix(u, modes))
        assert states_equal(out, evolve(s, u, modes), atol=1e-12)
        assert out.norm() == pytest.approx(1.0, abs=1e-12)
        assert tensor_norm(out, modes) == pytest.approx(1.0, abs=1e-12)

    @given(seeds)
    def test_linearity(self, seed):
        rng = np.random.default_rng(seed)
        modes = single_modes("ab")
        table = table_from_matrix(random_unitary(4, rng), modes)
        p = random_state(rng, "ab", 2)
        q = random_state(rng, "ab", 2)
        a, b = complex(*rng.normal(size=2)), complex(*rng.normal(size=2))
        lhs = apply_mode_map(p.scaled(a) + q.scaled(b), table)
        rhs = apply_mode_map(p, table).scaled(a) + apply_mode_map(q, table).scaled(b)
        assert states_equal(lhs, rhs, atol=1e-13)

    def test_mode_map_matrix_columns(self):
        u = mode_map_matrix({AH: {BH: 1.0}, BH: {AH: 1.0}}, [AH, AV, BH, BV])
        assert np.array_equal(u.real, np.array([[0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1]]))


@given(st.permutations([AH, BV]), st.permutations([BH, AV]))
def test_canonicalization_ignores_operator_order(p1, p2):
    ref = PhotonicState.from_terms(2, "ab", [(0.5, [AH, BV]), (0.5j, [BH, AV])])
    s = PhotonicState.from_terms(2, "ab", [(0.5, p1), (0.5j, p2)])
    assert s == ref
    assert serialize_state(s) == serialize_state(ref)


def test_construction_rejects_undeclared_and_wrong_count():
    with pytest.raises(StateError):
        PhotonicState.vacuum_plus("a", "b:H")
    with pytest.raises(StateError):
        PhotonicState(2, ("a",), {(AH,): 1.0})
    with pytest.raises(StateError):
        PhotonicState.vacuum_plus("abc", AH, BH, Mode("c", "H"))


class TestStateFile:
    text = "photons 2\nmodes a c\namp 0.6 0 a:H c:H\namp 0 0.8 c:V a:V\n"

    def test_parse(self):
        s = parse_state(self.text)
        assert s.photons == 2 and s.modes == ("a", "c")
        assert s.amplitude("a:V", "c:V") == 0.8j

    @given(seeds, st.sampled_from([1, 2]))
    def test_round_trip(self, seed, photons):
        s = random_state(np.random.default_rng(seed), ["a", "b1", "c_2"], photons)
        assert parse_state(serialize_state(s)) == s

    @pytest.mark.parametrize(
        "text, line",
        [
            ("photons 1\nmodes a\nbogus 1\n", 3),
            ("photons 3\n", 1),
            ("photons 1\nmodes a\namp x 0 a:H\n", 3),
            ("photons 1\nmodes a\namp 1 0 b:H\n", 3),
            ("photons 1\nmodes a\namp 1 0 a:H a:V\n", 3),
            ("photons 1\nmodes a\namp 1 0 a:D\n", 3),
            ("amp 1 0 a:H\n", 1),
        ],
    )
    def test_errors_carry_line_numbers(self, text, line):
        with pytest.raises(StateParseError) as err:
            parse_state(text)
        assert err.value.line == line
        assert f"line {line}" in str(err.value)
