import numpy as np
import pytest
from pydantic import ValidationError

from app.choices import ExperimentId, ModelName, VerifyTarget
from app.exceptions.conductance import MixingCapExceededError
from app.exceptions.harness import EnumerationTooLargeError, UnsupportedModelError
from app.exceptions.model import UnknownModelError
from app.harness.csvio import format_cell, format_float, render_csv, write_csv
from app.harness.experiments import (
    log_log_slope,
    run_experiment,
    run_fig3a,
    run_fig3b,
    run_fig3c,
    run_table1_asymptotics,
    sweep_perms,
)
from app.harness.verification import VERIFICATION_HEADER, fuzz_models, run_verifications, stationarity_report
from app.schemas.experiment import ExperimentSpec, PermutationPolicy
from app.zoo.sequence import build_sequence_of_dependencies


def test_format_float():
    assert format_float(1 / 3) == "0.333333333333"
    assert format_float((5 / 6) ** 5) == "0.401877572016"
    assert format_float(2.0) == "2"


@pytest.mark.parametrize("value, expected", [
    (None, ""),
    (True, "true"),
    (7, 7),
    (0.5, "0.5"),
    ("capped", "capped"),
])
def test_format_cell(value, expected):
    assert format_cell(value) == expected


def test_render_csv():
    assert render_csv(["n", "t"], [[1, 2.5], [2, None]]) == "n,t\n1,2.5\n2,\n"
    assert render_csv(None, [["a"]]) == "a\n"


@pytest.mark.parametrize("cell, line", [
    ("systematic(1,3,2)", '"systematic(1,3,2)"'),
    ('say "hi"', '"say ""hi"""'),
    ("two\nlines", '"two\nlines"'),
])
def test_render_csv_quotes_cells(cell, line):
    assert render_csv(["scan", "t"], [[cell, 3]]) == f"scan,t\n{line},3\n"


def test_write_csv(tmp_path, capsys):
    out = tmp_path / "nested" / "table.csv"
    text = write_csv(["a", "b"], [[1, 0.25]], out)
    assert out.read_bytes() == b"a,b\n1,0.25\n"
    assert text == "a,b\n1,0.25\n"

    write_csv(["a"], [[1]])
    assert capsys.readouterr().out == "a\n1\n"


def test_fig3a_seq_deps():
    header, rows = run_fig3a(["seq-deps"], [10])["seq-deps"]
    assert header == ["n", "r", "b", "w"]
    n, r, b, w = rows[0]
    assert (n, b, w) == (10, 10, 91)
    assert isinstance(r, int) and r > b


def test_fig3a_pyramid_has_one_systematic_scan():
    _, rows = run_fig3a(["pyramid"], [3, 4])["pyramid"]
    assert [row[0] for row in rows] == [3, 4]
    assert all(row[2] == row[3] for row in rows)


def test_fig3a_capped_cells():
    _, rows = run_fig3a(["seq-deps"], [4], max_steps=2)["seq-deps"]
    assert rows == [[4, "capped", "capped", "capped"]]


def test_fig3a_rejects_other_models():
    with pytest.raises(UnsupportedModelError):
        run_fig3a(["memorize-repeat"], [2])


def test_fig3b_small():
    header, rows = run_fig3b(3, 0.1, iterations=50, every=10)
    assert header == ["t", "r", "b", "w"]
    assert [row[0] for row in rows] == [0, 10, 20, 30, 40, 50]
    assert rows[0][1:] == [0.0, 0.0, 0.0]
    assert all(0.0 <= mass <= 1.0 for row in rows for mass in row[1:])


def test_fig3b_converges_on_a_small_model():
    stationary = 7 / 14.1
    _, rows = run_fig3b(3, 0.1, iterations=50_000, every=5_000)
    assert rows[-1][0] == 50_000
    assert all(abs(mass - stationary) <= 1e-3 for mass in rows[-1][1:])


@pytest.mark.slow
def test_fig3b_acceptance():
    n = 10
    stationary = (2**n - 1) / (2 * (2**n - 1) + 0.1)
    _, rows = run_fig3b(n, 0.1)
    masses = np.array([row[1:] for row in rows], dtype=float)
    assert np.abs(masses[-1] - stationary).max() <= 1e-3

    times = np.array([row[0] for row in rows])
    best = times[np.argmax(masses[:, 1] >= stationary / 2)]
    worst = times[np.argmax(masses[:, 2] >= stationary / 2)]
    assert worst >= 3 * best


def test_sweep_perms_is_independent_of_workers():
    _, sequential = sweep_perms("seq-deps", 5, workers=1)
    _, parallel = sweep_perms("seq-deps", 5, workers=2)
    assert sequential == parallel
    assert sequential[0].permutation == (0, 1, 2, 3, 4)
    assert sequential[0].t_mix == 5


def test_fig3c_seq_deps():
    header, rows = run_fig3c("seq-deps", 5)
    assert header == ["percentile", "t_mix"]
    assert len(rows) == 121
    assert rows[0] == [0.0, 5]
    assert rows[-2] == [100.0, 21]
    assert rows[-1][0] == "random"
    values = [row[1] for row in rows[:-1]]
    assert values == sorted(values)


def test_fig3c_two_islands_simplified():
    _, rows = run_fig3c("two-islands-simplified", 3)
    assert len(rows) == 721
    assert rows[0] == [0.0, 26]
    assert rows[-2] == [100.0, 67]
    assert rows[-1] == ["random", 46]


@pytest.mark.slow
def test_fig3c_acceptance():
    _, rows = run_fig3c("seq-deps", 7)
    assert rows[0] == [0.0, 7]
    assert rows[-2] == [100.0, 43]


def test_fig3c_enumeration_limit():
    with pytest.raises(EnumerationTooLargeError):
        run_fig3c("seq-deps", 9)


def test_fig3c_rejects_unknown_model():
    with pytest.raises(UnsupportedModelError):
        run_fig3c("random", 3)


def test_sample_policy_is_deterministic():
    policy = PermutationPolicy.sample(10, seed=3)
    first = run_fig3c("seq-deps", 9, policy=policy)
    assert first == run_fig3c("seq-deps", 9, policy=policy)
    assert len(first[1]) == 11


def test_named_policy():
    policy = PermutationPolicy(kind="named", names=["best", "worst"])
    _, results = sweep_perms("seq-deps", 4, policy=policy)
    assert [result.t_mix for result in results] == [4, 13]


@pytest.mark.parametrize("fields", [{"kind": "sample"}, {"kind": "named"}, {"kind": "sample", "count": 0}])
def test_permutation_policy_validation(fields):
    with pytest.raises(ValidationError):
        PermutationPolicy(**fields)


def test_log_log_slope():
    sizes = [2, 4, 8, 16]
    assert log_log_slope(sizes, [n**2 for n in sizes]) == pytest.approx(2.0)
    assert log_log_slope(sizes, [3 * n for n in sizes]) == pytest.approx(1.0)


def test_table1_small_cell():
    cells = [(ModelName.SEQ_DEPS, "worst", tuple(range(3, 9)), 2.0)]
    header, rows = run_table1_asymptotics(cells=cells)
    assert header == ["model", "scan", "slope", "expected", "tolerance", "holds"]
    assert rows[0][:2] == ["seq-deps", "worst"]
    assert rows[0][-1] is True


def test_table1_refuses_capped_mixing_times():
    cells = [(ModelName.PYRAMID, "systematic", (3, 4), 3.0)]
    with pytest.raises(MixingCapExceededError):
        run_table1_asymptotics(max_steps=0, cells=cells)


@pytest.mark.slow
def test_table1_acceptance():
    _, rows = run_table1_asymptotics()
    assert all(row[-1] for row in rows)


def test_run_experiment():
    spec = ExperimentSpec(experiment=ExperimentId.FIG3A, models=["seq-deps"], n_range=[3, 4])
    tables = run_experiment(spec)
    assert [row[2] for row in tables["seq-deps"][1]] == [3, 4]

    spec = ExperimentSpec(experiment=ExperimentId.FIG3C, models=["seq-deps"], n_range=[4], workers=1)
    _, rows = run_experiment(spec)["seq-deps"]
    assert rows[0] == [0.0, 4]

    spec = ExperimentSpec(
        experiment=ExperimentId.FIG3B, models=["two-islands-modified"], n_range=[2], iterations=20, every=10
    )
    _, rows = run_experiment(spec)["two-islands-modified"]
    assert [row[0] for row in rows] == [0, 10, 20]


def test_run_experiment_verification():
    spec = ExperimentSpec(experiment=ExperimentId.VERIFY_LEMMA1, models=["seq-deps"], n_range=[2])
    header, rows = run_experiment(spec)["verify-lemma1"]
    assert header == VERIFICATION_HEADER
    assert {row[1] for row in rows} == {"stationarity", "lemma1"}
    assert all(row[-1] is True for row in rows)

    with pytest.raises(UnknownModelError):
        run_experiment(ExperimentSpec(experiment=ExperimentId.VERIFY_THEOREM1, models=["ising"], n_range=[2]))


def test_run_experiment_writes_output(tmp_path):
    out = tmp_path / "fig3c.csv"
    spec = ExperimentSpec(experiment=ExperimentId.FIG3C, models=["seq-deps"], n_range=[3], workers=1, output=out)
    run_experiment(spec)
    assert out.read_text().split("\n")[:2] == ["percentile,t_mix", "0,3"]

    out = tmp_path / "figs"
    spec = ExperimentSpec(experiment=ExperimentId.FIG3A, models=["seq-deps", "pyramid"], n_range=[3], output=out)
    run_experiment(spec)
    assert (out / "fig3a-seq-deps.csv").read_text().startswith("n,r,b,w\n3,")
    assert (out / "fig3a-pyramid.csv").exists()


def test_experiment_spec_validation():
    with pytest.raises(ValidationError):
        ExperimentSpec(experiment="fig3a", models=[], n_range=[3])
    with pytest.raises(ValidationError):
        ExperimentSpec(experiment="fig3a", models=["seq-deps"], n_range=[0])
    with pytest.raises(ValidationError):
        ExperimentSpec(experiment="fig3a", models=["seq-deps"], n_range=[3], epsilon=1.0)


def test_stationarity_report():
    report = stationarity_report(build_sequence_of_dependencies(3, 10.0), (2, 1, 0))
    assert report.holds
    assert report.quantities["states"] == 4
    assert "stationary[augmented-systematic]" in [inequality.name for inequality in report.inequalities]


def test_fuzz_models_are_deterministic():
    first, second = fuzz_models(5, 42), fuzz_models(5, 42)
    assert [model.size for model in first] == [model.size for model in second]
    assert all(np.allclose(a.pi.probs, b.pi.probs) for a, b in zip(first, second))


def test_run_verifications_lemma1():
    report = run_verifications(VerifyTarget.LEMMA1, grid=[(ModelName.SEQ_DEPS, 2)], fuzz=3)
    assert report.holds
    assert not report.skips
    checks = {check for check, _ in report.reports}
    assert checks == {"stationarity", "lemma1", "fuzz-upper", "fuzz-stationarity"}
    assert report.rows()[0][1] == "stationarity"


def test_run_verifications_skips_large_models():
    report = run_verifications(VerifyTarget.LEMMA1, grid=[(ModelName.SEQ_DEPS, 5)], fuzz=0)
    assert len(report.skips) == 120
    assert report.skips[0].check == "lemma1"
    assert report.rows()[-1][2] == "skipped"


@pytest.mark.slow
def test_run_verifications_default_grid():
    report = run_verifications(VerifyTarget.ALL)
    assert report.holds, report.violations
