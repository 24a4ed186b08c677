"""Symmetry algebra on generalized Gaussians: closed-form actions,
extension identities, group laws, the cross-family conjugation, and the
divergence classifier."""

import cmath
import math
import random
from fractions import Fraction

import mpmath as mp
import pytest

from paracert.symmetry import (
    CheckRow,
    CrossAction,
    GeneralizedGaussian,
    OrthogonalityReport,
    ParamSequencePair,
    SpacetimeSymmetry,
    SymmetryParams,
    apply_symmetry,
    classify_orthogonality,
    compose,
    cross_phase,
    extension_of_gaussian,
    inverse,
    random_gaussian,
    random_params,
    reflect,
    run_property_suite,
)

mp.mp.dps = 30


def direct_action(s: SymmetryParams, g: GeneralizedGaussian, xi) -> complex:
    """The defining symmetry formula, transcribed literally."""
    u = tuple(s.lam * xi[j] - s.xi[j] for j in range(s.d))
    usq = sum(v * v for v in u)
    phase = s.sign * s.t0 * usq + sum(a * b for a, b in zip(s.x0, u))
    return s.lam ** (s.d / float(s.p)) * cmath.exp(1j * phase) * g(u)


def sample_points(rng, d, n=5):
    return [tuple(rng.uniform(-2, 2) for _ in range(d)) for _ in range(n)]


class TestGeneralizedGaussian:
    def test_standard_values(self):
        g = GeneralizedGaussian.standard(1)
        assert g(( 0.0,)) == pytest.approx(1.0)
        assert g((0.5,)) == pytest.approx(math.exp(-0.25))
        assert GeneralizedGaussian.standard(2).d == 2

    def test_requires_decay(self):
        with pytest.raises(ValueError):
            GeneralizedGaussian(-1.0, (0.0,), 0.0)
        with pytest.raises(ValueError):
            GeneralizedGaussian(1j, (0.0,), 0.0)

    def test_complex_coefficients(self):
        g = GeneralizedGaussian(1 + 2j, (0.5 - 1j,), 0.25j)
        xi = (0.7,)
        expect = cmath.exp(-(1 + 2j) * 0.49 + (0.5 - 1j) * 0.7 + 0.25j)
        assert g(xi) == pytest.approx(expect)


class TestSymmetryParams:
    def test_identity(self):
        s = SymmetryParams.identity(2)
        assert s.lam == 1.0 and s.t0 == 0.0
        assert s.x0 == (0.0, 0.0) and s.xi == (0.0, 0.0)
        assert s.d == 2

    def test_exponent_relation(self):
        assert SymmetryParams.identity(1).q == 6
        assert SymmetryParams.identity(2).q == 4

    def test_validation(self):
        with pytest.raises(ValueError):
            SymmetryParams(0, 1.0, 0.0, (0.0,), (0.0,))
        with pytest.raises(ValueError):
            SymmetryParams(+1, -1.0, 0.0, (0.0,), (0.0,))
        with pytest.raises(ValueError):
            SymmetryParams(+1, 1.0, 0.0, (0.0, 0.0), (0.0,))


class TestApplySymmetry:
    def test_identity_fixes_gaussian(self):
        g = random_gaussian(random.Random(5), 2)
        out = apply_symmetry(SymmetryParams.identity(2), g)
        assert out.a == pytest.approx(g.a)
        assert out.b[0] == pytest.approx(g.b[0])
        assert out.c == pytest.approx(g.c)

    def test_pure_scaling(self):
        g = GeneralizedGaussian.standard(1)
        s = SymmetryParams(+1, 2.0, 0.0, (0.0,), (0.0,))
        out = apply_symmetry(s, g)
        assert out.a == pytest.approx(4.0)
        assert out.b == (0.0,)
        # normalisation keeps the squared mass: factor lam^(d/p) = sqrt(2)
        assert cmath.exp(out.c) == pytest.approx(math.sqrt(2.0))

    def test_matches_defining_formula(self):
        rng = random.Random(11)
        for d in (1, 2):
            for sign in (+1, -1):
                g = random_gaussian(rng, d)
                s = random_params(rng, d, sign)
                out = apply_symmetry(s, g)
                for xi in sample_points(rng, d):
                    assert out(xi) == pytest.approx(
                        direct_action(s, g, xi), abs=1e-12
                    )

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            apply_symmetry(
                SymmetryParams.identity(2), GeneralizedGaussian.standard(1)
            )


class TestReflect:
    def test_involution(self):
        g = random_gaussian(random.Random(7), 2)
        back = reflect(reflect(g))
        assert back.a == g.a and back.b == g.b and back.c == g.c

    def test_real_even_fixed_point(self):
        g = GeneralizedGaussian(1.5, (0.0,), -0.25)
        r = reflect(g)
        assert (r.a, r.b, r.c) == (g.a, g.b, g.c)

    def test_pointwise_meaning(self):
        rng = random.Random(8)
        g = random_gaussian(rng, 1)
        r = reflect(g)
        for xi in sample_points(rng, 1):
            neg = tuple(-v for v in xi)
            assert r(xi) == pytest.approx(g(neg).conjugate())


class TestExtension:
    def test_closed_form_against_quadrature(self):
        g = GeneralizedGaussian.standard(1)
        t, x = 0.3, -0.7
        closed = extension_of_gaussian(g, +1, t, (x,))
        truth = mp.quad(
            lambda xi: mp.e ** (-(xi**2)) * mp.e ** (1j * (t * xi**2 + x * xi)),
            [-12, 0, 12],
        )
        assert abs(closed - complex(truth)) < 1e-12

    def test_value_at_origin(self):
        # at t = 0, x = 0 the integral of exp(-|xi|^2) is pi^(d/2)
        for d in (1, 2):
            g = GeneralizedGaussian.standard(d)
            assert extension_of_gaussian(g, +1, 0.0, (0.0,) * d) == pytest.approx(
                math.pi ** (d / 2)
            )

    def test_reflection_conjugates_families(self):
        rng = random.Random(9)
        g = random_gaussian(rng, 2)
        gr = reflect(g)
        for _ in range(5):
            t = rng.uniform(-2, 2)
            x = tuple(rng.uniform(-2, 2) for _ in range(2))
            minus = extension_of_gaussian(g, -1, t, x)
            plus = extension_of_gaussian(gr, +1, t, x)
            assert minus == pytest.approx(plus.conjugate())

    def test_intertwining(self):
        rng = random.Random(10)
        for sign in (+1, -1):
            g = random_gaussian(rng, 1)
            s = random_params(rng, 1, sign)
            moved = apply_symmetry(s, g)
            T = SpacetimeSymmetry.from_params(s)
            right = T.apply_to(lambda t, x: extension_of_gaussian(g, sign, t, x))
            for _ in range(5):
                t = rng.uniform(-1.5, 1.5)
                x = (rng.uniform(-1.5, 1.5),)
                lhs = extension_of_gaussian(moved, sign, t, x)
                assert lhs == pytest.approx(right(t, x), abs=1e-11)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            extension_of_gaussian(GeneralizedGaussian.standard(2), +1, 0.0, (0.0,))


class TestGroupLaws:
    def test_compose_with_identity(self):
        rng = random.Random(12)
        s = random_params(rng, 1, +1)
        e = SymmetryParams.identity(1)
        left, ph_l = compose(e, s)
        right, ph_r = compose(s, e)
        for got in (left, right):
            assert got.lam == pytest.approx(s.lam)
            assert got.t0 == pytest.approx(s.t0)
            assert got.x0[0] == pytest.approx(s.x0[0])
            assert got.xi[0] == pytest.approx(s.xi[0])
        assert ph_l == pytest.approx(1.0)
        assert ph_r == pytest.approx(1.0)

    def test_compose_pointwise(self):
        rng = random.Random(13)
        for d, sign in ((1, +1), (2, -1)):
            g = random_gaussian(rng, d)
            s1 = random_params(rng, d, sign)
            s2 = random_params(rng, d, sign)
            params, phase = compose(s1, s2)
            assert abs(abs(phase) - 1.0) < 1e-14
            lhs = apply_symmetry(s1, apply_symmetry(s2, g))
            rhs = apply_symmetry(params, g)
            for xi in sample_points(rng, d):
                assert lhs(xi) == pytest.approx(phase * rhs(xi), abs=1e-11)

    def test_compose_rejects_mixed_families(self):
        with pytest.raises(ValueError):
            compose(SymmetryParams.identity(1, +1), SymmetryParams.identity(1, -1))

    def test_inverse_roundtrip(self):
        rng = random.Random(14)
        for sign in (+1, -1):
            g = random_gaussian(rng, 1)
            s = random_params(rng, 1, sign)
            params, phase = compose(inverse(s), s)
            assert params.lam == pytest.approx(1.0)
            assert params.t0 == pytest.approx(0.0, abs=1e-13)
            assert params.x0[0] == pytest.approx(0.0, abs=1e-13)
            assert params.xi[0] == pytest.approx(0.0, abs=1e-13)
            roundtrip = apply_symmetry(inverse(s), apply_symmetry(s, g))
            for xi in sample_points(rng, 1):
                assert roundtrip(xi) == pytest.approx(phase * g(xi), abs=1e-12)

    def test_associativity_up_to_phase(self):
        rng = random.Random(15)
        s1, s2, s3 = (random_params(rng, 1, +1) for _ in range(3))
        p12, ph12 = compose(s1, s2)
        pa, pha = compose(p12, s3)
        p23, ph23 = compose(s2, s3)
        pb, phb = compose(s1, p23)
        assert pa.lam == pytest.approx(pb.lam)
        assert pa.t0 == pytest.approx(pb.t0)
        assert pa.x0[0] == pytest.approx(pb.x0[0])
        assert pa.xi[0] == pytest.approx(pb.xi[0])
        assert ph12 * pha == pytest.approx(ph23 * phb)


class TestSpacetimeSymmetry:
    def test_roundtrip_is_identity(self):
        rng = random.Random(16)
        s = random_params(rng, 1, -1)
        T = SpacetimeSymmetry.from_params(s)

        def F(t, x):
            return cmath.exp(-(t * t) - x[0] * x[0] + 1j * x[0])

        back = T.apply_inverse_to(T.apply_to(F))
        for _ in range(6):
            t = rng.uniform(-2, 2)
            x = (rng.uniform(-2, 2),)
            assert back(t, x) == pytest.approx(F(t, x), abs=1e-13)

    def test_modulus_scaling(self):
        # |T F| carries only the lam power, evaluated at the moved point
        s = SymmetryParams(+1, 2.0, 0.0, (0.0,), (0.0,))
        T = SpacetimeSymmetry.from_params(s)

        def F(t, x):
            return cmath.exp(1j * t) * (1.0 + 0.5 * x[0])

        out = T.apply_to(F)
        t, x = 0.8, 0.6
        expect = 2.0 ** (-0.5) * abs(F(t / 4.0, (x / 2.0,)))
        assert abs(out(t, (x,))) == pytest.approx(expect)


class TestCrossAction:
    def test_phase_vanishes_without_translations(self):
        s_plus = SymmetryParams(+1, 1.3, 0.0, (0.0,), (0.7,))
        r_minus = SymmetryParams(-1, 0.8, 0.0, (0.0,), (-0.4,))
        action, theta = cross_phase(s_plus, r_minus)
        assert theta == 0.0
        assert action.theta == 0.0

    def test_phase_vanishes_without_frequencies(self):
        s_plus = SymmetryParams(+1, 1.3, 0.5, (0.2,), (0.0,))
        r_minus = SymmetryParams(-1, 0.8, -0.9, (1.1,), (0.0,))
        _, theta = cross_phase(s_plus, r_minus)
        assert theta == 0.0

    def test_matches_direct_conjugation(self):
        rng = random.Random(17)
        s_plus = random_params(rng, 1, +1)
        r_minus = random_params(rng, 1, -1)
        action, _ = cross_phase(s_plus, r_minus)
        T = SpacetimeSymmetry.from_params(s_plus)
        U = SpacetimeSymmetry.from_params(r_minus)

        def F(t, x):
            return cmath.exp(-0.5 * t * t - x[0] * x[0] + 1j * (t + 0.3 * x[0]))

        direct = U.apply_inverse_to(T.apply_to(F))
        closed = action.apply_to(F)
        for _ in range(6):
            t = rng.uniform(-1.5, 1.5)
            x = (rng.uniform(-1.5, 1.5),)
            assert closed(t, x) == pytest.approx(direct(t, x), abs=1e-11)

    def test_requires_ordered_pair(self):
        with pytest.raises(ValueError):
            cross_phase(SymmetryParams.identity(1, -1), SymmetryParams.identity(1, +1))


class TestPropertySuite:
    def test_default_seed_passes(self):
        report = run_property_suite(seed=0, cases=100)
        assert report.passed
        names = [r.name for r in report.rows]
        assert names == [
            "apply_pointwise",
            "intertwining",
            "conjugation_identity",
            "compose_pointwise",
            "inverse_roundtrip",
            "cross_action",
            "isometry_quadrature",
            "extension_quadrature",
        ]
        for row in report.rows:
            assert row.max_error < row.tolerance, row.name

    def test_other_seeds_pass(self):
        assert run_property_suite(seed=20260816, cases=40).passed

    def test_deterministic(self):
        a = run_property_suite(seed=3, cases=25)
        b = run_property_suite(seed=3, cases=25)
        assert a.to_json_dict() == b.to_json_dict()

    def test_json_shape(self):
        report = run_property_suite(seed=1, cases=10)
        payload = report.to_json_dict()
        assert payload["seed"] == 1
        assert payload["passed"] is True
        assert len(payload["checks"]) == 8
        assert all(
            set(c) == {"name", "cases", "max_error", "tolerance", "passed"}
            for c in payload["checks"]
        )

    def test_check_row_verdict(self):
        assert CheckRow("x", 5, 1e-14, 1e-12).passed
        assert not CheckRow("x", 5, 1.0, 0.5).passed


def constant_params(sign=+1, lam=1.0, t0=0.0, x0=(0.0,), xi=(0.0,)):
    return SymmetryParams(sign, lam, t0, x0, xi)


class TestSequencePair:
    def test_requires_three_samples(self):
        short = [SymmetryParams.identity(1)] * 2
        with pytest.raises(ValueError):
            ParamSequencePair(short, short)

    def test_requires_equal_lengths(self):
        with pytest.raises(ValueError):
            ParamSequencePair(
                [SymmetryParams.identity(1)] * 3, [SymmetryParams.identity(1)] * 4
            )

    def test_rejects_mixed_dimensions(self):
        with pytest.raises(ValueError):
            ParamSequencePair(
                [SymmetryParams.identity(1)] * 3,
                [SymmetryParams.identity(1)] * 2 + [SymmetryParams.identity(2)],
            )

    def test_rejects_sign_changes_within_sequence(self):
        seq = [
            SymmetryParams.identity(1, +1),
            SymmetryParams.identity(1, -1),
            SymmetryParams.identity(1, +1),
        ]
        with pytest.raises(ValueError):
            ParamSequencePair(seq, seq)

    def test_mixed_signs_flag(self):
        plus = [SymmetryParams.identity(1, +1)] * 3
        minus = [SymmetryParams.identity(1, -1)] * 3
        assert ParamSequencePair(plus, minus).mixed_signs
        assert not ParamSequencePair(plus, plus).mixed_signs
        assert len(ParamSequencePair(plus, minus)) == 3


class TestClassifier:
    def test_scale_divergence(self):
        first = [constant_params(lam=2.0**n) for n in range(1, 9)]
        second = [constant_params() for _ in range(8)]
        report = classify_orthogonality(ParamSequencePair(first, second))
        assert report.condition == 1
        assert report.orthogonal
        assert report.label == "scale separation"
        assert report.witnesses["scale"][-1] == pytest.approx(256.0)

    def test_scale_divergence_is_symmetric_in_rho(self):
        # shrinking scales diverge just like growing ones
        first = [constant_params(lam=0.5**n) for n in range(1, 9)]
        second = [constant_params() for _ in range(8)]
        assert classify_orthogonality(ParamSequencePair(first, second)).condition == 1

    def test_frequency_divergence_same_family(self):
        first = [constant_params(xi=(50.0 * n,)) for n in range(1, 6)]
        second = [constant_params() for _ in range(5)]
        report = classify_orthogonality(ParamSequencePair(first, second))
        assert report.condition == 2
        assert report.label == "frequency separation"

    def test_frequency_sum_for_opposite_families(self):
        # opposite families compare xi_n + eta_n: equal frequencies
        # diverge, opposite frequencies cancel
        plus = [constant_params(sign=+1, xi=(60.0 * n,)) for n in range(1, 6)]
        minus_same = [
            constant_params(sign=-1, xi=(60.0 * n,)) for n in range(1, 6)
        ]
        minus_opp = [
            constant_params(sign=-1, xi=(-60.0 * n,)) for n in range(1, 6)
        ]
        fires = classify_orthogonality(ParamSequencePair(plus, minus_same))
        cancels = classify_orthogonality(ParamSequencePair(plus, minus_opp))
        assert fires.condition == 2
        assert cancels.condition == 0

    def test_spacetime_divergence(self):
        first = [constant_params(t0=50.0 * n) for n in range(1, 6)]
        second = [constant_params() for _ in range(5)]
        report = classify_orthogonality(ParamSequencePair(first, second))
        assert report.condition == 3
        assert report.label == "spacetime separation"

    def test_identical_sequences_do_not_fire(self):
        rng = random.Random(18)
        seq = [random_params(rng, 1, +1) for _ in range(5)]
        report = classify_orthogonality(ParamSequencePair(seq, seq))
        assert report.condition == 0
        assert not report.orthogonal
        assert report.label == "none"

    def test_decreasing_witness_does_not_fire(self):
        # large but shrinking scale ratio fails the trend gate
        first = [constant_params(lam=v) for v in (400.0, 300.0, 200.0, 150.0)]
        second = [constant_params() for _ in range(4)]
        report = classify_orthogonality(ParamSequencePair(first, second))
        assert report.condition == 0

    def test_threshold_is_respected(self):
        first = [constant_params(lam=2.0**n) for n in range(1, 6)]
        second = [constant_params() for _ in range(5)]
        pair = ParamSequencePair(first, second)
        assert classify_orthogonality(pair, threshold=10.0).condition == 1
        assert classify_orthogonality(pair, threshold=1e6).condition == 0

    def test_report_carries_witness_series(self):
        first = [constant_params(lam=2.0**n) for n in range(1, 6)]
        second = [constant_params() for _ in range(5)]
        report = classify_orthogonality(ParamSequencePair(first, second))
        assert set(report.witnesses) == {"scale", "frequency", "spacetime"}
        assert len(report.witnesses["scale"]) == 5
        assert "never certifies" in report.heuristic
