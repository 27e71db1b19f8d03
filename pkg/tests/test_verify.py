# tests/test_verify.py
import pytest

from src.core.verify import (
    CheckResult,
    check_binary_average,
    check_codec_order,
    check_minimax_oracle,
    check_minmax_exhaustive,
    check_oracle_equivalence,
    check_worst_depth,
    run_checks,
)


class TestChecks:
    def test_minmax_exhaustive(self):
        result = check_minmax_exhaustive(40, 7)
        assert result.passed, result.detail
        assert "0 violations" in result.detail

    def test_minimax_oracle(self):
        assert check_minimax_oracle(512).passed

    def test_worst_depth(self):
        assert check_worst_depth(48).passed

    def test_oracle_equivalence(self):
        result = check_oracle_equivalence(300, 3)
        assert result.passed, result.detail

    def test_codec_order(self):
        assert check_codec_order(2000, 5).passed

    def test_binary_average(self):
        assert check_binary_average(100).passed

    def test_run_checks_reports_every_check(self):
        results = run_checks(max_n=24, instances=200, seed=11)
        assert [result.name for result in results] == [
            "minmax-exhaustive",
            "minimax-depth",
            "itp-strict-worst-depth",
            "oracle-equivalence",
            "codec-order",
            "binary-average-depth",
        ]
        assert all(isinstance(result, CheckResult) and result.passed for result in results)


@pytest.mark.slow
class TestFullScale:
    def test_exhaustive_minmax_up_to_256(self):
        assert check_minmax_exhaustive(256, 7).passed

    def test_worst_depth_up_to_1024(self):
        assert check_worst_depth(1024).passed

    def test_oracle_equivalence_at_scale(self):
        assert check_oracle_equivalence(10 ** 5, 7).passed

    def test_codec_order_at_scale(self):
        assert check_codec_order(10 ** 5, 7).passed
