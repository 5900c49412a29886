"""End-to-end command line tests: exit codes, files, determinism."""

import json
import xml.etree.ElementTree as ET

import pytest

from pwhankel.cli import main


class TestGeometryCommand:
    def test_full_range_certifies(self, capsys):
        assert main(["geometry"]) == 0
        out = capsys.readouterr().out
        assert "OVERLAP" not in out
        assert out.count("ok") >= 63

    def test_oversized_radius_fails_certification(self, tmp_path):
        code = main(
            ["geometry", "--n-list", "64", "--r-scale", "4.0",
             "--out-dir", str(tmp_path)]
        )
        assert code == 2
        payload = json.loads((tmp_path / "geometry.json").read_text())
        assert payload["all_disjoint"] is False

    def test_empty_range_usage_error(self):
        assert main(["geometry", "--n-list", "8:4"]) == 64

    def test_malformed_list_usage_error(self):
        assert main(["geometry", "--n-list", "4,x"]) == 64


class TestNormCommand:
    def test_standard_resolution(self, tmp_path, capsys):
        assert main(["norm", "--n", "4", "--out-dir", str(tmp_path)]) == 0
        out = capsys.readouterr().out
        assert "refinement ladder" in out
        payload = json.loads((tmp_path / "norm.json").read_text())
        assert payload["sigma_max"] <= payload["upper_pi_r_sq"] * 1.05
        assert set(payload["ladder"]) == {"r/4", "r/8", "r/16"}

    def test_coarse_resolution_is_numerical_failure(self):
        assert main(["norm", "--n", "4", "--h", "r/2"]) == 3

    def test_small_n_rejected(self):
        assert main(["norm", "--n", "1"]) == 64


class TestScalingCommand:
    def test_single_point_slope_absent(self, tmp_path, capsys):
        code = main(["scaling", "--n-list", "4", "--out-dir", str(tmp_path)])
        assert code == 0
        assert "undefined" in capsys.readouterr().out
        payload = json.loads((tmp_path / "scaling.json").read_text())
        assert payload["slope"] is None
        csv_text = (tmp_path / "scaling.csv").read_text()
        assert csv_text.startswith("n,r,upper_paper,upper_computed,")
        assert len(csv_text.strip().split("\n")) == 2

    def test_malformed_list(self):
        assert main(["scaling", "--n-list", "4,x"]) == 64

    def test_extended_gating(self):
        assert main(["scaling", "--n-list", "4,32"]) == 64
        assert main(["scaling", "--n-list", "4,40", "--extended"]) == 64

    def test_descending_list(self):
        assert main(["scaling", "--n-list", "8,4"]) == 64

    def test_deterministic_outputs(self, tmp_path):
        dir_a = tmp_path / "a"
        dir_b = tmp_path / "b"
        args = ["scaling", "--n-list", "4,8"]
        assert main(args + ["--out-dir", str(dir_a)]) == 0
        assert main(args + ["--out-dir", str(dir_b)]) == 0
        for name in ("scaling.csv", "scaling.json", "scaling.svg"):
            assert (dir_a / name).read_bytes() == (dir_b / name).read_bytes()

    def test_svg_is_valid_xml_with_slope(self, tmp_path):
        assert main(["scaling", "--n-list", "4,8", "--out-dir", str(tmp_path)]) == 0
        root = ET.fromstring((tmp_path / "scaling.svg").read_text())
        assert root.tag.endswith("svg")
        text = (tmp_path / "scaling.svg").read_text()
        assert "fitted slope" in text


class TestHsCommand:
    def test_output_schema(self, tmp_path, capsys):
        assert main(["hs", "--n", "2", "--out-dir", str(tmp_path)]) == 0
        payload = json.loads((tmp_path / "hs.json").read_text())
        for key in ("hs_norm_direct", "hs_norm_lens", "peng_integral"):
            assert key in payload and payload[key] > 0
        assert payload["ratio_direct_lens"] == pytest.approx(1.0, rel=5e-3)
        out = capsys.readouterr().out
        assert "hs_norm_direct" in out


class TestUsage:
    def test_no_subcommand(self):
        assert main([]) == 64

    def test_unknown_flag(self):
        assert main(["geometry", "--bogus"]) == 64

    def test_bad_tolerance(self):
        assert main(["scaling", "--n-list", "4", "--tol", "-1"]) == 64
