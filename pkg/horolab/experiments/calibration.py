"""Fitting the calibrated constants and the lockfile that stores them.

Each constant is the largest sampled value of the quantity it bounds,
times MARGIN. A percentile bootstrap of that maximum is recorded next to
it. Entries of the lockfile are keyed by n and the tau entries; a run
whose (n, tau) matches an entry takes its constants in place of the
configured ones.

Lockfile layout:
    {"schema": "horolab.lock/1",
     "entries": [{"n": 3, "tau": [...], "constants": {"rho_star": 2.1, ...}}]}
"""

from __future__ import annotations

import dataclasses
import json
import math
from pathlib import Path
from typing import Any, Callable

import numpy as np

from horolab.chambers.flags import canonical_unipotent
from horolab.chambers.regions import distance_to_flat
from horolab.chambers.shadows import (
    minimal_enlarge_time,
    random_chamber_in_shadow,
    random_point_in_dx,
    rho,
)
from horolab.core.config import RunConfig
from horolab.core.exceptions import (
    CalibrationFailure,
    ConfigurationError,
    ErrorContext,
    SchemaViolation,
)
from horolab.experiments.reports import SuiteReport, atomic_write_text
from horolab.experiments.suites import point_at_height
from horolab.filling.schemas import LOCK_ID, LockDocument, validate
from horolab.filling.serialization import dumps
from horolab.horosphere.context import HorosphereContext, pushing_constant
from horolab.horosphere.projection import (
    lipschitz_profile_i_u,
    sample_shadow_pair,
    two_point_profile,
)
from horolab.liecore.algebra import CartanVector
from horolab.liecore.groups import SpecialLinear
from horolab.symspace.boundary import Flat
from horolab.symspace.points import random_point, random_point_in_ball
from horolab.utilities import bootstrap_slope, debug_print, make_rng

LOCK_NAME = "horolab.lock.json"
MARGIN = 1.25
CALIBRATED = (
    "c_compare",
    "c_enlarge",
    "rho_star",
    "c_pushing",
    "pushing_cap",
    "two_point_cap",
)

# tau entries are matched after rounding to this many digits
_TAU_DIGITS = 12


def bootstrap_max(
    values: list[float], rng: np.random.Generator, rounds: int = 200, level: float = 0.9
) -> tuple[float, float, float]:
    """The sample maximum and a percentile bootstrap interval for it."""
    data = np.asarray(values, dtype=float)
    draws = [float(np.max(rng.choice(data, size=data.size))) for _ in range(rounds)]
    tail = 50.0 * (1.0 - level)
    low, high = np.percentile(draws, [tail, 100.0 - tail])
    return float(data.max()), float(low), float(high)


def _sample_compare(config: RunConfig, rng: np.random.Generator, count: int) -> list[float]:
    """Bootstrap slopes of log rho against the distance to E_d."""
    dists, logs = [], []
    for _ in range(count):
        x = random_point(rng, config.n, 2.0)
        d = random_chamber_in_shadow(rng, x, float(rng.uniform(0.1, 3.0)))
        query = rho(x, d, config.policy)
        flat = Flat(SpecialLinear(canonical_unipotent(d, config.policy).entries))
        dists.append(distance_to_flat(x, flat, config.policy, rng))
        logs.append(math.log(query.rho))
    _, _, high = bootstrap_slope(dists, logs, rng)
    return [max(high, 0.0)]


def _sample_enlarge(config: RunConfig, rng: np.random.Generator, count: int) -> list[float]:
    """Minimal enlarge times per unit of r + 1."""
    v = CartanVector(np.asarray(config.tau_entries))
    x = random_point(rng, config.n, 1.0)
    return [
        minimal_enlarge_time(x, v, r, int(rng.integers(2**32)), count, config.policy) / (r + 1.0)
        for r in config.grid.enlarge_radii
    ]


def _sample_rho_star(config: RunConfig, rng: np.random.Generator, count: int) -> list[float]:
    values = []
    for _ in range(count):
        x = random_point(rng, config.n, 2.0)
        y = random_point_in_dx(rng, x)
        d = random_chamber_in_shadow(rng, x, 1.0)
        values.append(rho(y, d, config.policy).rho)
    return values


def _sample_c_pushing(config: RunConfig, rng: np.random.Generator, count: int) -> list[float]:
    return [pushing_constant(config.n, count, rng)]


def _sample_pushing_cap(config: RunConfig, rng: np.random.Generator, count: int) -> list[float]:
    """Lipschitz ratios of i_u divided by (rho + 1)^2 h(u)."""
    ctx = HorosphereContext.from_run(config)
    values = []
    for h in config.grid.pushing_heights:
        u = point_at_height(rng, ctx, h)
        summary = lipschitz_profile_i_u(u, count, rng, ctx, 1.0)
        values.append(summary.measured / ((ctx.rho + 1.0) ** 2 * h))
    return values


def _sample_two_point(config: RunConfig, rng: np.random.Generator, count: int) -> list[float]:
    ctx = HorosphereContext.from_run(config)
    values = []
    for _ in range(count):
        u1 = point_at_height(rng, ctx, float(rng.uniform(2.0, 6.0)))
        u2 = random_point_in_ball(rng, u1, 0.5)
        flat, s1, s2 = sample_shadow_pair(rng, u1, ctx)
        values.append(two_point_profile(u1, u2, s1, s2, ctx, flat))
    return values


_SAMPLERS: dict[str, Callable[[RunConfig, np.random.Generator, int], list[float]]] = {
    "c_compare": _sample_compare,
    "c_enlarge": _sample_enlarge,
    "rho_star": _sample_rho_star,
    "c_pushing": _sample_c_pushing,
    "pushing_cap": _sample_pushing_cap,
    "two_point_cap": _sample_two_point,
}


def calibrate(config: RunConfig) -> tuple[dict[str, float], SuiteReport]:
    """Fit every calibrated constant.

    Returns:
        The constants, and a report holding one fit per constant.

    Raises:
        CalibrationFailure: If a sampled maximum is not positive.
    """
    report = SuiteReport("calibration", config.n, config.seed, config.tau_entries)
    count = config.samples.shadow_checks
    constants: dict[str, float] = {}
    for index, name in enumerate(CALIBRATED):
        rng = make_rng([config.seed, 201, index])
        values = _SAMPLERS[name](config, rng, count)
        top, low, high = bootstrap_max(values, rng)
        if not top > 0:
            raise CalibrationFailure(
                f"Sampled values for {name} are not positive",
                context=ErrorContext(operation="calibrate", detail={"max": top}),
            )
        constants[name] = MARGIN * top
        report.fit(f"calibration.{name}", MARGIN * top, MARGIN * low, MARGIN * high)
        debug_print(f"calibrate: {name} = {constants[name]:.6g} from {len(values)} values")
    return constants, report


def _tau_key(tau: Any) -> tuple[float, ...]:
    return tuple(round(float(v), _TAU_DIGITS) for v in tau)


def read_lock(path: str | Path) -> dict[str, Any]:
    """Parse and validate a lockfile; a missing file gives an empty lock.

    Raises:
        SchemaViolation: If the file is not a valid lockfile.
    """
    target = Path(path)
    if not target.exists():
        return {"schema": LOCK_ID, "entries": []}
    try:
        doc = json.loads(target.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise SchemaViolation(f"{target} is not JSON: {e}", "$") from e
    validate(doc, LockDocument)
    return doc


def write_lock(config: RunConfig, constants: dict[str, float]) -> Path:
    """Store constants under (n, tau) in the lockfile of out_dir."""
    path = Path(config.out_dir) / LOCK_NAME
    doc = read_lock(path)
    key = (config.n, _tau_key(config.tau_entries))
    entries = [e for e in doc["entries"] if (e["n"], _tau_key(e["tau"])) != key]
    entries.append(
        {"n": config.n, "tau": list(config.tau_entries), "constants": dict(sorted(constants.items()))}
    )
    entries.sort(key=lambda e: (e["n"], _tau_key(e["tau"])))
    return atomic_write_text(path, dumps({"schema": LOCK_ID, "entries": entries}))


def apply_lock(config: RunConfig) -> RunConfig:
    """config with the locked constants of its (n, tau), if any.

    Raises:
        SchemaViolation: If the lockfile is malformed.
        ConfigurationError: If it names an unknown constant.
    """
    doc = read_lock(Path(config.out_dir) / LOCK_NAME)
    key = (config.n, _tau_key(config.tau_entries))
    for entry in doc["entries"]:
        if (entry["n"], _tau_key(entry["tau"])) != key:
            continue
        unknown = set(entry["constants"]) - set(CALIBRATED)
        if unknown:
            raise ConfigurationError(
                f"Lockfile names unknown constants: {', '.join(sorted(unknown))}",
                context=ErrorContext(operation="apply_lock"),
            )
        calibration = dataclasses.replace(
            config.calibration, **{k: float(v) for k, v in entry["constants"].items()}
        )
        debug_print(f"apply_lock: using locked constants for n = {config.n}")
        return dataclasses.replace(config, calibration=calibration)
    return config


__all__ = [
    "CALIBRATED",
    "LOCK_NAME",
    "MARGIN",
    "apply_lock",
    "bootstrap_max",
    "calibrate",
    "read_lock",
    "write_lock",
]
