from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphmoments import GuardError, InputError
from graphmoments.graphs import complete, cycle, edgeless, multi_edge, path
from graphmoments.homs import density_parameter
from graphmoments.moments import (FiniteSupportMeasure, MomentSequence,
                                  finite_difference, hankel_matrix,
                                  hankel_psd_rank, hausdorff_check,
                                  induced_nonnegativity,
                                  recover_finite_support)
from graphmoments.targets import constant_target

F = Fraction


def test_moment_sequence_validation():
    with pytest.raises(InputError):
        MomentSequence([])
    with pytest.raises(InputError):
        MomentSequence([0, 1])
    with pytest.raises(InputError):
        MomentSequence([-1, 1])
    seq = MomentSequence([2, 1])
    assert seq.normalized().values == [F(1), F(1, 2)]
    assert len(seq) == 2 and seq[1] == 1


def test_moment_sequence_json():
    seq = MomentSequence([1, "1/2", "1/4"])
    assert MomentSequence.from_json(seq.to_json()).values == seq.values
    with pytest.raises(InputError):
        MomentSequence.from_json({})


def test_hankel_layout():
    seq = MomentSequence([1, 2, 3, 4, 5])
    h = hankel_matrix(seq)
    assert h.rows == [[1, 2, 3], [2, 3, 4], [3, 4, 5]]
    h2 = hankel_matrix(seq, size=2)
    assert h2.rows == [[1, 2], [2, 3]]
    with pytest.raises(InputError):
        hankel_matrix(seq, size=4)  # needs 7 moments
    with pytest.raises(InputError):
        hankel_matrix(seq, size=0)


def test_point_mass_moments():
    # delta at 1/2: a_m = 2^-m; all Hausdorff differences are 2^{-n-k}
    seq = MomentSequence([F(1, 2) ** m for m in range(7)])
    ok, witness = hausdorff_check(seq)
    assert ok and witness is None
    for n in range(4):
        for k in range(3):
            assert finite_difference(seq, n, k) == F(1, 2) ** (n + k)
    verdict, rank = hankel_psd_rank(seq)
    assert verdict.ok and rank == 1
    with pytest.raises(InputError):
        finite_difference(seq, 6, 1)


def test_bad_sequence_is_caught():
    # decays too fast to be a moment sequence of anything on [0, 1]
    seq = MomentSequence([1, "1/2", "1/10", "1/10"])
    verdict, _ = hankel_psd_rank(seq)
    assert not verdict.ok
    assert verdict.value < 0
    ok, (n, k, value) = hausdorff_check(seq)
    assert not ok
    assert (n, k, value) == (0, 3, F(-3, 10))
    assert finite_difference(seq, n, k) == value


def test_hausdorff_catches_line_measure_escaping_unit_interval():
    # point mass at 2: Hankel-PSD on the line, but a_0 - a_1 = -1 < 0
    seq = MomentSequence([1, 2, 4])
    verdict, _ = hankel_psd_rank(seq)
    assert verdict.ok
    ok, witness = hausdorff_check(seq)
    assert not ok
    assert witness == (0, 1, F(-1))


def test_measure_basics():
    mu = FiniteSupportMeasure(["1/2", 0], ["1/3", "2/3"])
    assert mu.size == 2 and mu.mass == 1
    assert mu.atoms == [F(0), F(1, 2)]  # sorted
    assert mu.moment(0) == 1
    assert mu.moment(2) == F(1, 3) * F(1, 4)
    with pytest.raises(InputError):
        FiniteSupportMeasure([0, 0], [1, 1])
    with pytest.raises(InputError):
        FiniteSupportMeasure([1], [0])
    with pytest.raises(InputError):
        FiniteSupportMeasure([], [])
    assert FiniteSupportMeasure.from_json(mu.to_json()) == mu


def test_recover_fair_coin():
    mu = FiniteSupportMeasure([0, 1], ["1/2", "1/2"])
    got = recover_finite_support(mu.moments(5), 2)
    assert got == mu
    # rank cap honored
    with pytest.raises(InputError):
        recover_finite_support(mu.moments(5), 1)


def test_recover_needs_enough_moments():
    mu = FiniteSupportMeasure([0, "1/2", 1], [1, 1, 1])
    with pytest.raises(InputError):
        recover_finite_support(mu.moments(5), 3)  # rank 3 needs 6 moments
    got = recover_finite_support(mu.moments(7), 3)
    assert got == mu


def test_recover_rejects_irrational_atoms():
    # moments of symmetric +-sqrt(2) mass: 1, 0, 2, 0, 4
    seq = MomentSequence([1, 0, 2, 0, 4])
    with pytest.raises(InputError):
        recover_finite_support(seq, 2)


def test_recover_rejects_non_psd():
    with pytest.raises(InputError):
        recover_finite_support(MomentSequence([1, "1/2", "1/10", "1/10"]), 2)


def test_recover_rejects_bad_max_atoms():
    with pytest.raises(InputError):
        recover_finite_support(MomentSequence([1]), 0)


measures = st.builds(
    lambda atoms, weights: FiniteSupportMeasure(atoms, weights[:len(atoms)]),
    st.lists(st.fractions(min_value=-2, max_value=2, max_denominator=4),
             min_size=1, max_size=3, unique=True),
    st.lists(st.fractions(min_value=F(1, 4), max_value=2, max_denominator=4),
             min_size=3, max_size=3))


@given(measures)
@settings(max_examples=60)
def test_recover_round_trip(mu):
    got = recover_finite_support(mu.moments(2 * mu.size + 1), mu.size)
    assert got == mu


def test_recover_round_trip_with_vanishing_first_moment():
    # regression: this measure's first moment is 0, which once tripped the
    # integer rank sweep into overcounting the Hankel rank as 4
    mu = FiniteSupportMeasure([F(-5, 3), F(0), F(1)], [F(1), F(1, 4), F(5, 3)])
    seq = mu.moments(2 * mu.size + 1)
    _verdict, rank = hankel_psd_rank(seq)
    assert rank == 3
    assert recover_finite_support(seq, mu.size) == mu


@given(measures)
@settings(max_examples=40)
def test_hankel_rank_equals_support_size(mu):
    seq = mu.moments(2 * mu.size + 1)
    verdict, rank = hankel_psd_rank(seq)
    assert verdict.ok
    assert rank == mu.size


def test_induced_nonnegativity_for_density():
    p = density_parameter(constant_target("1/2"))
    # complete patterns have no non-edges: the sum is t itself
    ok, value = induced_nonnegativity(p, cycle(3))
    assert ok and value == F(1, 8)
    ok2, value2 = induced_nonnegativity(p, multi_edge(2))
    assert ok2 and value2 == F(1, 4)
    # path on 3 nodes: t(P_3) - t(C_3) = 1/4 - 1/8
    ok3, value3 = induced_nonnegativity(p, path(3))
    assert ok3 and value3 == F(1, 8)
    ok4, value4 = induced_nonnegativity(p, edgeless(2))
    assert ok4 and value4 == F(1, 2)


def test_induced_nonnegativity_flags_fake_parameter():
    # an arbitrary multiplicative-looking parameter that is NOT a density:
    # f(F) = (-1)^{|E(F)|} fails on the one-edge pattern inside 3 nodes
    fake = lambda g: F(-1) ** g.edge_count()
    ok, value = induced_nonnegativity(fake, multi_edge(1))
    assert not ok and value < 0


def test_induced_nonnegativity_guard():
    p = density_parameter(constant_target("1/2"))
    with pytest.raises(GuardError):
        induced_nonnegativity(p, complete(7))
