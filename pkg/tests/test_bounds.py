"""Tail constants, duality quotients, the scaling sweep, wire formats."""

import json
import math

import numpy as np
import pytest

from pwhankel.bounds import (
    CSV_HEADER,
    BoundsReport,
    closed_form_lower_bound,
    compute_report,
    duality_lower_bound,
    estimate_tail_constant,
    reports_to_csv,
    result_to_json_dict,
    scaling_experiment,
)
from pwhankel.errors import DomainError
from pwhankel.fourier import DEFAULT_PROFILE, tail_mass
from pwhankel.geometry import admissible_radius
from pwhankel.symbols import bhat_norms, build_symbol

# frozen after the first full pipeline run (tol = 1e-3)
DUALITY_LOWER_N4 = 0.06913325789992433


@pytest.fixture(scope="module")
def tail4():
    return estimate_tail_constant(4.0)


class TestTailConstant:
    def test_samples_satisfy_bound_by_construction(self, tail4):
        for rho, mass in tail4.rho_samples:
            assert mass <= tail4.a_kappa / rho ** (tail4.kappa - 1) * (1 + 1e-12)

    def test_kappa_one_reduces_to_largest_tail(self):
        bound = estimate_tail_constant(1.0)
        masses = dict(bound.rho_samples)
        assert bound.a_kappa == pytest.approx(masses[1.0], rel=1e-12)

    def test_kappa4_strict_at_largest_rho(self, tail4):
        # super-polynomial decay: the rho = 16 sample sits strictly below
        # the constant fixed by the interior samples
        assert tail_mass(DEFAULT_PROFILE, 16.0).value * 16.0**3 < tail4.a_kappa

    def test_domain(self):
        with pytest.raises(DomainError):
            estimate_tail_constant(0.5)


class TestDualityLowerBound:
    def test_numerator_lower_bound(self):
        for n in (2, 4, 8):
            assert n * bhat_norms(admissible_radius(n)).l2sq >= math.pi * n * admissible_radius(n) ** 2 / 4

    def test_capped_by_trivial_witness(self):
        n = 4
        value = duality_lower_bound(n)
        assert value <= n * bhat_norms(admissible_radius(n)).l1

    def test_frozen_regression_n4(self):
        assert duality_lower_bound(4) == pytest.approx(DUALITY_LOWER_N4, rel=1e-8)


class TestClosedFormLowerBound:
    def test_formula_instantiation(self, tail4):
        n, kappa = 4, 4.0
        r = admissible_radius(n)
        want = math.pi * r * r * n ** (0.5 - 1 / (2 * kappa)) / (
            4 * (math.pi + tail4.a_kappa)
        )
        assert closed_form_lower_bound(n, kappa, tail4) == pytest.approx(want, rel=1e-15)

    def test_large_kappa_exponent_limit(self):
        # the n-exponent of the formula is 1/2 - 1/(2 kappa) -> 1/2;
        # measure it from two n values at fixed tail constant
        from pwhankel.bounds import TailBound

        def measured_exponent(kappa):
            tail = TailBound(kappa=kappa, a_kappa=1.0, rho_samples=())
            lo = closed_form_lower_bound(4, kappa, tail) / (
                math.pi * admissible_radius(4) ** 2
            )
            hi = closed_form_lower_bound(16, kappa, tail) / (
                math.pi * admissible_radius(16) ** 2
            )
            return math.log(hi / lo) / math.log(4.0)

        assert measured_exponent(4.0) == pytest.approx(0.5 - 1 / 8, rel=1e-12)
        assert measured_exponent(5000.0) == pytest.approx(0.5, abs=1e-4)

    def test_sandwich_against_duality(self, tail4):
        # the analytic bound lower-bounds the same quotient computed with
        # the actual ||f||_1, up to quadrature slack
        assert closed_form_lower_bound(4, 4.0, tail4) <= duality_lower_bound(4) * 1.02


class TestReports:
    def test_ratio_bookkeeping(self):
        rep = compute_report(4, tail=estimate_tail_constant(4.0))
        assert rep.ratio == rep.lower_duality / rep.upper_computed
        assert rep.upper_closed_form == pytest.approx(math.pi * rep.r**2, rel=1e-15)
        assert rep.lower_duality <= rep.n * bhat_norms(rep.r).l1

    def test_single_point_slope_absent(self):
        result = scaling_experiment([4])
        assert result.slope is None
        assert len(result.reports) == 1 and not result.reports[0].error

    def test_two_point_sweep_and_failure_capture(self):
        # an absolute resolution fine enough for n = 4 but too coarse for
        # n = 8 must carry a per-n error without aborting the sweep
        h4 = admissible_radius(4) / 8
        result = scaling_experiment([4, 8], h=h4)
        assert not result.reports[0].error
        assert result.reports[1].error
        assert result.slope is None  # only one valid point remains

    def test_validation(self):
        with pytest.raises(DomainError):
            scaling_experiment([])
        with pytest.raises(DomainError):
            scaling_experiment([8, 4])
        with pytest.raises(DomainError):
            scaling_experiment([1, 4])


class TestWireFormats:
    def test_csv_header_and_shape(self):
        rep = BoundsReport(n=4, r=0.25, error="boom, with comma")
        text = reports_to_csv([rep])
        lines = text.strip().split("\n")
        assert lines[0] == CSV_HEADER
        fields = lines[1].split(",")
        assert len(fields) == len(CSV_HEADER.split(","))
        assert fields[0] == "4" and fields[-1] == "boom; with comma"

    def test_deterministic_serialization(self):
        result_a = scaling_experiment([4], tol=1e-3)
        result_b = scaling_experiment([4], tol=1e-3)
        assert reports_to_csv(result_a.reports) == reports_to_csv(result_b.reports)
        ja = json.dumps(result_to_json_dict(result_a, "r/8", 1e-3, 7), sort_keys=True)
        jb = json.dumps(result_to_json_dict(result_b, "r/8", 1e-3, 7), sort_keys=True)
        assert ja == jb

    def test_json_provenance_fields(self):
        result = scaling_experiment([4], tol=1e-3)
        payload = result_to_json_dict(result, "r/8", 1e-3, 7)
        prov = payload["provenance"]
        assert prov["kappa"] == 4.0 and prov["a_kappa"] > 0
        assert prov["profile"] == {
            "transition_lower": 0.5,
            "transition_upper": 1.0,
        }
        assert payload["reports"][0]["upper_paper"] == pytest.approx(
            math.pi * 0.0625, rel=1e-12
        )

    def test_nan_rows_serialize_as_null(self):
        result = scaling_experiment([4, 8], h=admissible_radius(4) / 8)
        payload = result_to_json_dict(result, "abs", 1e-3, 7)
        assert payload["reports"][1]["ratio"] is None
        text = json.dumps(payload, sort_keys=True)
        assert "NaN" not in text
