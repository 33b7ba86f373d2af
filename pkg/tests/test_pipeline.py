import json

import pytest

from bbdeciders.pipeline import (
    DECIDERS, PipelineConfig, config_from_mapping, decide_machine, parse_config_text, run_pipeline,
    verify_file,
)
from bbdeciders.tm import parse_machine
from conftest import (
    BACKWARD_EXAMPLE, BOUNCER, CHAMPION, CYCLER, FAR_EXAMPLE, SEGMENT_EXAMPLE, random_machines,
)

FIVE = [SEGMENT_EXAMPLE, BACKWARD_EXAMPLE, FAR_EXAMPLE, BOUNCER, CYCLER]
QUICK = PipelineConfig(halt_limit=100_000)


@pytest.fixture(scope="module")
def five_results():
    return list(run_pipeline(FIVE, QUICK))


def test_empty_input():
    assert list(run_pipeline([], QUICK)) == []


def test_five_machines(five_results):
    got = [(r["machine"], r["verdict"], r["decider"]) for r in five_results]
    assert got == [
        (SEGMENT_EXAMPLE, "nonhalt", "translated-cyclers"),
        (BACKWARD_EXAMPLE, "nonhalt", "backward"),
        (FAR_EXAMPLE, "nonhalt", "far-direct"),
        (BOUNCER, "nonhalt", "bouncers"),
        (CYCLER, "nonhalt", "cyclers"),
    ]
    assert five_results[1]["witness"]["depth"] == 3
    assert five_results[2]["certificate"]["kind"] == "far"
    assert five_results[3]["certificate"]["kind"] == "bouncer"


@pytest.mark.parametrize("code, decider, key, value", [
    (SEGMENT_EXAMPLE, "halting-segment", "n", 2),
    (BACKWARD_EXAMPLE, "backward", "depth", 3),
    (FAR_EXAMPLE, "far-direct", "n", 2),
])
def test_intended_decider_alone(code, decider, key, value):
    res = decide_machine(parse_machine(code), PipelineConfig(deciders=[decider], halt_limit=10_000))
    assert res["verdict"] == "nonhalt" and res["decider"] == decider
    assert res["witness"][key] == value


def test_halting_by_quick_simulation():
    res = decide_machine(parse_machine("1RB1LB_1LA---"), QUICK)
    assert res == {"machine": "1RB1LB_1LA---", "decider": "simulation", "verdict": "halt", "step": 6}


def test_unknown_when_nothing_applies():
    res = decide_machine(parse_machine(CHAMPION), PipelineConfig(deciders=["cyclers"], halt_limit=20_000))
    assert res["verdict"] == "unknown"


def test_bad_machine_is_reported_not_raised():
    out = list(run_pipeline(["1RB", CYCLER], QUICK))
    assert "error" in out[0] and out[1]["verdict"] == "nonhalt"


def test_jobs_do_not_change_results():
    machines = FIVE + random_machines(3, 12, sizes=(2, 3, 4))
    one = list(run_pipeline(machines, PipelineConfig(halt_limit=50_000, jobs=1)))
    two = list(run_pipeline(machines, PipelineConfig(halt_limit=50_000, jobs=2)))
    assert one == two


def test_no_contradictions_on_random_machines():
    '''A machine that halts within the limit is never called nonhalting.'''
    from bbdeciders.tm import Halted, simulate
    for code in random_machines(77, 80, sizes=(2, 3, 4)):
        res = decide_machine(parse_machine(code), PipelineConfig(halt_limit=20_000))
        halts = isinstance(simulate(parse_machine(code), 20_000), Halted)
        assert (res["verdict"] == "halt") == halts
        if res["verdict"] == "nonhalt" and "certificate" in res:
            from bbdeciders.pipeline import verify_certificate
            assert verify_certificate(res["certificate"], res["certificate"]["kind"]) is None


def test_champion_halts_through_pipeline():
    res = decide_machine(parse_machine(CHAMPION), PipelineConfig())
    assert res["verdict"] == "halt" and res["step"] == 47_176_870


class TestConfig:
    def test_parse_text(self):
        text = "# comment\npipeline = cyclers, backward\nhalt_limit = 1_000\nbackward.max_depth = 5\n"
        cfg = config_from_mapping(parse_config_text(text))
        assert cfg.deciders == ["cyclers", "backward"]
        assert cfg.halt_limit == 1000
        assert cfg.decider_params("backward") == {"max_depth": 5, "node_budget": 100_000}

    def test_defaults(self):
        cfg = PipelineConfig()
        assert cfg.deciders == list(DECIDERS)
        assert cfg.halt_limit == 47_176_871 and cfg.jobs == 1

    @pytest.mark.parametrize("mapping", [
        {"pipeline": "cyclers,nope"}, {"nope.x": 1}, {"backward.depth": 3}, {"jobs": 0}, {"colour": "red"},
    ])
    def test_rejects(self, mapping):
        with pytest.raises(ValueError):
            config_from_mapping(mapping)

    def test_line_without_equals(self):
        with pytest.raises(ValueError):
            parse_config_text("pipeline cyclers")


class TestVerifyFile:
    def test_pass_and_fail(self, tmp_path, five_results):
        path = tmp_path / "results.jsonl"
        path.write_text("".join(json.dumps(r) + "\n" for r in five_results))
        far = verify_file(path, "far")
        bouncer = verify_file(path, "bouncer")
        assert [r["ok"] for r in far] == [True] and [r["ok"] for r in bouncer] == [True]

        cert = dict(five_results[3]["certificate"], start_step=five_results[3]["certificate"]["start_step"] - 1)
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps([cert, {"kind": "bouncer", "machine": BOUNCER}]))
        reports = verify_file(bad, "bouncer")
        assert [r["ok"] for r in reports] == [False, False]
        assert "not in the formula's language" in reports[0]["violation"]
        assert "error" in reports[1]

    def test_garbage_line(self, tmp_path):
        path = tmp_path / "x.jsonl"
        path.write_text('{"kind": "far"}\nnot json\n')
        reports = verify_file(path, "far")
        assert [r["ok"] for r in reports] == [False, False]
