"""Run-configuration files: a flat sectioned text format (INI dialect).

Grammar::

    [simulation]
    experiments = 1 2 3          # subset of {1,2,3}; spaces or commas
    n_grid = 50 100 200          # strictly ascending positive integers
    reps = 500
    master_seed = 20260809
    alpha = 0.05
    delta_override = 0.1         # optional: delta fed to Hoeffding intervals

    [output]
    out_dir = results
    workers = 1

    [estimators]
    roster = ht adj_ht_crossfit dr_logistic

    [estimator.adj_ht_crossfit]  # optional per-estimator settings
    family = forest              # forest | logistic
    cao_weighted = false
    n_trees = 100
    min_node_size = 5
    bootstrap = true
    max_depth = 30
    ci = normal                  # hoeffding | normal | none
    folds = 3                    # dr_* only
    clip_low = 0.01
    clip_high = 0.99

Unknown sections or keys are rejected. The environment variables SIM_SEED
and SIM_WORKERS override the file, and CLI flags override both.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass

from .errors import ConfigParseError, UnknownEstimator
from .estimators import REGISTRY
from .montecarlo import EstimatorSetting, McConfig

_SIMULATION_KEYS = {
    "experiments", "n_grid", "reps", "master_seed", "alpha", "delta_override",
}
_OUTPUT_KEYS = {"out_dir", "workers"}
_ESTIMATORS_KEYS = {"roster"}
_ESTIMATOR_OPTION_KEYS = {
    "family", "ps_family", "cao_weighted", "n_trees", "min_node_size",
    "bootstrap", "max_depth", "ci", "folds", "clip_low", "clip_high",
}
_BOOL_VALUES = {
    "true": True, "yes": True, "1": True, "on": True,
    "false": False, "no": False, "0": False, "off": False,
}


@dataclass(frozen=True)
class RunConfig:
    mc: McConfig
    out_dir: str
    workers: int


def _split_list(text: str) -> list[str]:
    return text.replace(",", " ").split()


def _parse_int(text: str, field: str) -> int:
    try:
        return int(text)
    except ValueError as exc:
        raise ConfigParseError(f"{field}: expected an integer, got {text!r}") from exc


def _parse_float(text: str, field: str) -> float:
    try:
        return float(text)
    except ValueError as exc:
        raise ConfigParseError(f"{field}: expected a number, got {text!r}") from exc


def _parse_bool(text: str, field: str) -> bool:
    try:
        return _BOOL_VALUES[text.strip().lower()]
    except KeyError as exc:
        raise ConfigParseError(f"{field}: expected a boolean, got {text!r}") from exc


def _parse_estimator_options(section: str, items) -> dict:
    opts: dict = {}
    for key, value in items:
        field = f"{section}.{key}"
        if key not in _ESTIMATOR_OPTION_KEYS:
            raise ConfigParseError(f"unknown key {field}")
        if key in ("family", "ps_family"):
            if value not in ("forest", "logistic"):
                raise ConfigParseError(f"{field}: must be forest or logistic")
            opts[key] = value
        elif key in ("cao_weighted", "bootstrap"):
            opts[key] = _parse_bool(value, field)
        elif key in ("n_trees", "min_node_size", "max_depth", "folds"):
            parsed = _parse_int(value, field)
            if key == "folds" and parsed not in (1, 3):
                raise ConfigParseError(f"{field}: folds must be 1 or 3")
            if key != "folds" and parsed < (0 if key == "max_depth" else 1):
                raise ConfigParseError(f"{field}: must be positive")
            opts[key] = parsed
        elif key == "ci":
            if value not in ("hoeffding", "normal", "none"):
                raise ConfigParseError(f"{field}: must be hoeffding, normal or none")
            opts[key] = value
        else:  # clip_low / clip_high
            parsed = _parse_float(value, field)
            if not 0.0 < parsed < 1.0:
                raise ConfigParseError(f"{field}: must lie in (0, 1)")
            opts[key] = parsed
    return opts


def load_run_config(path) -> RunConfig:
    """Parse and validate a run-configuration file."""
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except OSError:
        raise
    except configparser.Error as exc:
        raise ConfigParseError(f"cannot parse {path}: {exc}") from exc

    known_sections = {"simulation", "output", "estimators"}
    for section in parser.sections():
        if section in known_sections:
            continue
        if section.startswith("estimator."):
            name = section[len("estimator."):]
            if name not in REGISTRY:
                raise UnknownEstimator(f"[{section}]: unknown estimator {name!r}")
            continue
        raise ConfigParseError(f"unknown section [{section}]")

    sim = parser["simulation"] if parser.has_section("simulation") else {}
    for key in sim:
        if key not in _SIMULATION_KEYS:
            raise ConfigParseError(f"unknown key simulation.{key}")
    out = parser["output"] if parser.has_section("output") else {}
    for key in out:
        if key not in _OUTPUT_KEYS:
            raise ConfigParseError(f"unknown key output.{key}")
    est = parser["estimators"] if parser.has_section("estimators") else {}
    for key in est:
        if key not in _ESTIMATORS_KEYS:
            raise ConfigParseError(f"unknown key estimators.{key}")

    experiments = tuple(
        _parse_int(tok, "simulation.experiments")
        for tok in _split_list(sim.get("experiments", "1 2 3"))
    )
    if any(e not in (1, 2, 3) for e in experiments) or not experiments:
        raise ConfigParseError("simulation.experiments: must be a subset of 1 2 3")
    n_grid = tuple(
        _parse_int(tok, "simulation.n_grid")
        for tok in _split_list(sim.get("n_grid", "50 100 200 500 1000 2000 5000"))
    )
    if not n_grid or list(n_grid) != sorted(set(n_grid)) or n_grid[0] < 1:
        raise ConfigParseError("simulation.n_grid: must be strictly ascending positive integers")
    reps = _parse_int(sim.get("reps", "500"), "simulation.reps")
    if reps < 1:
        raise ConfigParseError("simulation.reps: must be >= 1")
    master_seed = _parse_int(sim.get("master_seed", "20260809"), "simulation.master_seed")
    alpha = _parse_float(sim.get("alpha", "0.05"), "simulation.alpha")
    if not 0.0 < alpha < 1.0:
        raise ConfigParseError("simulation.alpha: must lie in (0, 1)")
    delta_override = None
    if "delta_override" in sim:
        delta_override = _parse_float(sim["delta_override"], "simulation.delta_override")
        if not 0.0 < delta_override < 0.5:
            raise ConfigParseError("simulation.delta_override: must lie in (0, 0.5)")

    roster_names = _split_list(est.get("roster", " ".join(REGISTRY)))
    if not roster_names:
        raise ConfigParseError("estimators.roster: must name at least one estimator")
    seen = set()
    for name in roster_names:
        if name not in REGISTRY:
            raise UnknownEstimator(f"estimators.roster: unknown estimator {name!r}")
        if name in seen:
            raise ConfigParseError(f"estimators.roster: duplicate entry {name!r}")
        seen.add(name)

    roster = []
    for name in roster_names:
        section = f"estimator.{name}"
        options = {}
        if parser.has_section(section):
            options = _parse_estimator_options(section, parser.items(section))
        roster.append(EstimatorSetting(name=name, options=tuple(options.items())))

    workers = _parse_int(out.get("workers", "1"), "output.workers")
    if workers < 1:
        raise ConfigParseError("output.workers: must be >= 1")

    mc = McConfig(
        experiments=experiments,
        n_grid=n_grid,
        reps=reps,
        master_seed=master_seed,
        alpha=alpha,
        roster=tuple(roster),
        delta_override=delta_override,
    )
    return RunConfig(mc=mc, out_dir=out.get("out_dir", "results"), workers=workers)
