import csv
import hashlib
import io
import json
import sys

import pytest

from summability.calculus.partitions import BlockPartition
from summability.errors import ConfigError, HypothesisError
from summability.harness.families import FamilyKind
from summability.harness.sweep import CSV_HEADER, SweepConfig, SweepConfigBuilder, sweep, write_report

DIAGONAL_CONFIG = {
    "families": ["diagonal"],
    "n": [2, 4, 8],
    "p": [4, 4, 4],
    "partition": "1,2|3",
    "rule": "hl-block",
}


def rows_of(report):
    return list(csv.DictReader(io.StringIO(report.to_csv())))


def test_diagonal_sweep_reproduces_ratio_one():
    report = sweep(SweepConfig.from_mapping(DIAGONAL_CONFIG))
    rows = rows_of(report)
    assert [int(row["n"]) for row in rows] == [2, 4, 8]
    for row in rows:
        assert float(row["ratio"]) == pytest.approx(1.0, abs=1e-6)
        assert [float(v) for v in row["s"].split(";")] == pytest.approx([4.0, 2.4], abs=1e-12)
        assert row["converged"] == "true"


def test_csv_header():
    report = sweep(SweepConfig.from_mapping(DIAGONAL_CONFIG))
    assert report.to_csv().splitlines()[0] == ",".join(CSV_HEADER)


def test_empty_size_grid_gives_an_empty_report():
    report = sweep(SweepConfig.from_mapping({**DIAGONAL_CONFIG, "n": []}))
    assert report.rows == ()
    assert report.to_csv() == ",".join(CSV_HEADER) + "\n"


def test_reruns_are_byte_identical():
    document = {
        **DIAGONAL_CONFIG,
        "families": ["random-sign", "random-gaussian", "block-repeated"],
        "n": [3, 2],
        "seeds": 2,
        "master_seed": 17,
        "numeric": {"ascent_restarts": 4},
    }
    first = sweep(SweepConfig.from_mapping(document)).to_csv()
    second = sweep(SweepConfig.from_mapping(document)).to_csv()
    threaded = sweep(SweepConfig.from_mapping({**document, "numeric": {"ascent_restarts": 4, "workers": 3}})).to_csv()
    assert first == second == threaded
    keys = [tuple(line.split(",")[:3]) for line in first.splitlines()[1:]]
    assert keys == sorted(keys, key=lambda key: (key[0], int(key[1]), int(key[2])))
    assert len(keys) == 12


def test_rows_can_be_rebuilt_alone():
    document = {**DIAGONAL_CONFIG, "families": ["random-sign"], "n": [3], "seeds": [0, 5]}
    both = rows_of(sweep(SweepConfig.from_mapping(document)))
    alone = rows_of(sweep(SweepConfig.from_mapping({**document, "seeds": [5]})))
    assert both[1] == alone[0]


def test_write_report(tmp_path):
    report = sweep(SweepConfig.from_mapping(DIAGONAL_CONFIG))
    csv_path, json_path = write_report(report, tmp_path / "out" / "r.csv")
    assert csv_path.read_text(encoding="utf-8") == report.to_csv()
    sidecar = json.loads(json_path.read_text(encoding="utf-8"))
    assert json_path.name == "r.json"
    assert sidecar["csv_sha256"] == hashlib.sha256(csv_path.read_bytes()).hexdigest()
    assert sidecar["config"]["partition"] == "1,2|3"
    assert sidecar["config"]["numeric"]["ascent_restarts"] == 20
    assert set(sidecar["versions"]) == {"summability", "numpy", "python"}
    assert sorted(p.name for p in (tmp_path / "out").iterdir()) == ["r.csv", "r.json"]


def test_builder_matches_the_mapping():
    built = (
        SweepConfigBuilder()
        .set_families(["diagonal"])
        .set_sizes([2, 4, 8])
        .set_exponents([4, 4, 4])
        .set_partition(BlockPartition.parse("1,2|3"))
        .set_rule("hl-block")
        .build()
    )
    assert built == SweepConfig.from_mapping(DIAGONAL_CONFIG)
    assert built.families == (FamilyKind.DIAGONAL,)
    assert built.exponents == pytest.approx((4.0, 2.4))


def test_custom_and_isotropic_rules():
    custom = SweepConfig.from_mapping({**DIAGONAL_CONFIG, "rule": "custom", "s": ["inf", 2]})
    assert custom.exponents == (float("inf"), 2.0)
    isotropic = SweepConfig.from_mapping({**DIAGONAL_CONFIG, "rule": "isotropic"})
    assert isotropic.exponents == pytest.approx((4.0, 4.0))


@pytest.mark.parametrize(
    "change",
    [
        {"rule": "corollary"},
        {"rule": "custom"},
        {"s": [2, 2]},
        {"families": []},
        {"families": ["kahane"]},
        {"n": [0]},
        {"seeds": [-1]},
        {"p": [4, 4]},
        {"colour": "blue"},
        {"method": "simplex"},
        {"numeric": {"restarts": 3}},
        {"method": "exact-sign"},
        {"method": "exact-sign", "p": ["inf", "inf", 4]},
        {"method": "exact-sign", "p": ["inf", "inf", "inf"], "n": [2, 13]},
        {"method": "exact-sign", "p": ["inf", "inf", "inf"], "numeric": {"sign_budget_bits": 15}},
        {"method": "exact-closed"},
        {"method": "exact-closed", "p": [1, 2, 2]},
    ],
)
def test_invalid_configs_fail_before_running(change):
    with pytest.raises(ConfigError):
        SweepConfig.from_mapping({**DIAGONAL_CONFIG, **change})


def test_missing_keys_and_failed_hypotheses():
    with pytest.raises(ConfigError):
        SweepConfig.from_mapping({key: value for key, value in DIAGONAL_CONFIG.items() if key != "p"})
    with pytest.raises(HypothesisError):
        SweepConfig.from_mapping({**DIAGONAL_CONFIG, "p": [8, 8, 8]})


def test_exact_methods_accept_configs_they_can_run():
    signs = SweepConfig.from_mapping(
        {**DIAGONAL_CONFIG, "p": ["inf", "inf", "inf"], "rule": "custom", "s": [2, 2], "method": "exact-sign"}
    )
    # the diagonal form has norm n when every p is inf
    assert [row.norm for row in sweep(signs).rows] == [2.0, 4.0, 8.0]
    closed = SweepConfig.from_mapping(
        {
            **DIAGONAL_CONFIG,
            "p": [2, 2],
            "partition": "1|2",
            "n": [3],
            "rule": "custom",
            "s": [2, 2],
            "method": "exact-closed",
        }
    )
    assert [row.converged for row in sweep(closed).rows] == [True]


def test_every_ratio_is_lhs_over_norm():
    document = {
        **DIAGONAL_CONFIG,
        "families": ["random-sign", "random-gaussian", "block-repeated", "diagonal"],
        "n": [2, 3],
        "seeds": 2,
        "numeric": {"ascent_restarts": 4},
    }
    report = sweep(SweepConfig.from_mapping(document))
    assert len(report.rows) == 16
    for row in report.rows:
        assert row.ratio == pytest.approx(row.lhs / row.norm, rel=1e-12)
    for row in rows_of(report):
        assert float(row["ratio"]) == pytest.approx(float(row["lhs"]) / float(row["norm"]), rel=1e-12)


def test_a_failed_sidecar_write_leaves_no_csv(tmp_path, monkeypatch):
    report = sweep(SweepConfig.from_mapping(DIAGONAL_CONFIG))
    # the package re-exports the sweep function under the module's name
    sweep_module = sys.modules["summability.harness.sweep"]
    real_write = sweep_module.atomic_write_text

    def failing_write(path, text):
        if str(path).endswith(".json"):
            raise OSError("disk full")
        return real_write(path, text)

    monkeypatch.setattr(sweep_module, "atomic_write_text", failing_write)
    with pytest.raises(OSError):
        write_report(report, tmp_path / "r.csv")
    assert list(tmp_path.iterdir()) == []
