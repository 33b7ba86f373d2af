"""Running machines through the decider suite."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Iterator, List, Optional

from .backward import decide_backward
from .bouncers.decider import BouncerCertificate, bouncer_certificate_violation, decide_bouncers
from .decision import Decision, Verdict
from .far.certificate import verify_far_file_entry
from .far.direct import decide_far_direct_sweep
from .far.mitm import decide_far_mitm_sweep
from .halting_segment import decide_halting_segment_sweep
from .loops import decide_cyclers, decide_translated_cyclers
from .tm import Halted, TransitionTable, format_machine, parse_machine, simulate

# 47,176,870 is the longest halting run of any 5-state machine
DEFAULT_HALT_LIMIT = 47_176_871
DEFAULT_QUICK_HALT_LIMIT = 10_000

DECIDERS: Dict[str, tuple] = {
    "cyclers": (lambda t, p: decide_cyclers(t, **p), {"time_limit": 1000}),
    "translated-cyclers": (lambda t, p: decide_translated_cyclers(t, **p), {"time_limit": 1000}),
    "backward": (lambda t, p: decide_backward(t, **p), {"max_depth": 30, "node_budget": 100_000}),
    "halting-segment": (lambda t, p: decide_halting_segment_sweep(t, **p), {"n_max": 8, "node_budget": 1_000_000}),
    "far-direct": (lambda t, p: decide_far_direct_sweep(t, **p), {"n_max": 4, "max_calls": 200_000}),
    "far-mitm": (lambda t, p: decide_far_mitm_sweep(t, **p), {"n_max": 4}),
    "bouncers": (lambda t, p: decide_bouncers(t, **p),
                 {"step_limit": 1000, "macro_limit": 200, "max_formula_tapes": 16}),
}
DEFAULT_ORDER = list(DECIDERS)


@dataclass
class PipelineConfig:
    deciders: List[str] = field(default_factory=lambda: list(DEFAULT_ORDER))
    params: Dict[str, dict] = field(default_factory=dict)
    halt_limit: int = DEFAULT_HALT_LIMIT
    quick_halt_limit: int = DEFAULT_QUICK_HALT_LIMIT
    jobs: int = 1

    def __post_init__(self):
        for name in self.deciders:
            if name not in DECIDERS:
                raise ValueError(f"unknown decider {name!r}")
        for name, params in self.params.items():
            if name not in DECIDERS:
                raise ValueError(f"parameters for unknown decider {name!r}")
            unknown = set(params) - set(DECIDERS[name][1])
            if unknown:
                raise ValueError(f"unknown parameters for {name}: {sorted(unknown)}")
        if self.halt_limit < 0 or self.quick_halt_limit < 0 or self.jobs < 1:
            raise ValueError("limits must be >= 0 and jobs >= 1")

    def decider_params(self, name: str) -> dict:
        params = dict(DECIDERS[name][1])
        params.update(self.params.get(name, {}))
        return params


def _coerce(value: str):
    low = value.lower()
    if low in ("true", "false"):
        return low == "true"
    try:
        return int(value.replace("_", ""))
    except ValueError:
        return value


def parse_config_text(text: str) -> dict:
    '''``key = value`` lines; ``#`` starts a comment.  Decider parameters are
    written ``decider.param = value``.'''
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key] = value.strip('"')
    return out


def config_from_mapping(values: dict) -> PipelineConfig:
    kwargs = {"params": {}}
    for key, value in values.items():
        if key == "pipeline":
            kwargs["deciders"] = [x.strip() for x in str(value).split(",") if x.strip()]
        elif key in ("halt_limit", "quick_halt_limit", "jobs"):
            kwargs[key] = int(_coerce(str(value)))
        elif "." in key:
            name, param = key.split(".", 1)
            kwargs["params"].setdefault(name, {})[param] = _coerce(str(value))
        else:
            raise ValueError(f"unknown config key {key!r}")
    return PipelineConfig(**kwargs)


def decide_machine(table: TransitionTable, config: PipelineConfig) -> dict:
    '''Result record for one machine (a JSON-ready dict).'''
    machine = format_machine(table)
    quick = min(config.quick_halt_limit, config.halt_limit)
    outcome = simulate(table, quick)
    if isinstance(outcome, Halted):
        return {"machine": machine, "decider": "simulation", "verdict": "halt", "step": outcome.step}
    for name in config.deciders:
        func, _ = DECIDERS[name]
        decision: Decision = func(table, config.decider_params(name))
        if decision.verdict is Verdict.HALT:
            return {"machine": machine, "decider": name, "verdict": "halt", "step": decision.witness["step"]}
        if decision.verdict is Verdict.NONHALT:
            out = decision.to_json(machine)
            if decision.certificate is not None:
                out["certificate"] = decision.certificate
            return out
    if config.halt_limit > quick:
        outcome = simulate(table, config.halt_limit)
        if isinstance(outcome, Halted):
            return {"machine": machine, "decider": "simulation", "verdict": "halt", "step": outcome.step}
    return {"machine": machine, "decider": None, "verdict": "unknown"}


def _worker(args):
    text, config = args
    try:
        table = parse_machine(text) if isinstance(text, str) else text
        return decide_machine(table, config)
    except Exception as exc:  # one bad machine must not stop the stream
        return {"machine": text if isinstance(text, str) else format_machine(text), "error": str(exc)}


def run_pipeline(machines: Iterable, config: Optional[PipelineConfig] = None) -> Iterator[dict]:
    '''Results in input order; ``machines`` holds strings or tables.'''
    config = config or PipelineConfig()
    items = ((m, config) for m in machines)
    if config.jobs == 1:
        for item in items:
            yield _worker(item)
        return
    with ProcessPoolExecutor(config.jobs) as pool:
        yield from pool.map(_worker, items, chunksize=4)


# ---------------------------------------------------------------------------
# certificate files

def _load_entries(path) -> list:
    with open(path) as fh:
        text = fh.read()
    try:
        data = json.loads(text)
        return data if isinstance(data, list) else [data]
    except json.JSONDecodeError:
        pass
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            out.append(json.loads(line))
        except json.JSONDecodeError as exc:
            out.append({"_error": f"line {lineno}: {exc}"})
    return out


def verify_certificate(cert: dict, kind: str) -> Optional[str]:
    '''First violated condition, or None.'''
    if kind == "far":
        return verify_far_file_entry(cert)
    if kind == "bouncer":
        c = BouncerCertificate.from_json(cert)
        return bouncer_certificate_violation(parse_machine(c.machine), c)
    raise ValueError(f"unknown certificate kind {kind!r}")


def verify_file(path, kind: str) -> List[dict]:
    '''One report per certificate found in the file.  Pipeline output lines
    are accepted too; their ``certificate`` field is checked.'''
    reports = []
    for index, entry in enumerate(_load_entries(path)):
        if "_error" in entry:
            reports.append({"entry": index, "ok": False, "error": entry["_error"]})
            continue
        if "verdict" in entry:
            # a pipeline result line: only its certificate is of interest
            cert = entry.get("certificate")
            if cert is None:
                continue
        else:
            cert = entry
        if cert.get("kind", kind) != kind:
            continue
        try:
            violation = verify_certificate(cert, kind)
        except (KeyError, ValueError, TypeError) as exc:
            reports.append({"entry": index, "machine": cert.get("machine"), "ok": False, "error": str(exc)})
            continue
        report = {"entry": index, "machine": cert.get("machine"), "ok": violation is None}
        if violation is not None:
            report["violation"] = violation
        reports.append(report)
    return reports
