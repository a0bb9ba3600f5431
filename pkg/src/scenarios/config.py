#!/usr/bin/env python3
"""
Scenario Configuration Loader

Loads builtin scenarios from YAML, parses user scenario files and
turns each (scenario, sweep value) into solver inputs.
"""

import copy
import logging
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml

from config import (
    AUTO_DIM_FLOOR,
    AUTO_DIM_HEADROOM,
    DEFAULT_DIM,
    DEFAULT_DT_MAX,
    DEFAULT_INTEGRATOR,
    DEFAULT_REPORT_POPULATIONS,
    DEFAULT_SAMPLE_DT,
    DEFAULT_T0,
    SOLVER_ORDER,
    TRUNCATION_LEVELS,
)
from drive.pulse import PulseTrain, resonance_detuning
from errors import ConfigError, InvalidParameterError
from fock.operators import SystemParams
from fock.states import temp_to_nth
from solvers.core.types import EvolutionConfig, TrajectoryConfig

logger = logging.getLogger(__name__)

# Cache for the loaded builtin document
_builtins_cache: Dict[str, Any] = {}

# Thermal tail allowed in the top levels when picking dim automatically
AUTO_DIM_TAIL = 1e-8

SECTION_KEYS = {
    "system": {"chi", "gamma", "delta", "n_th", "dim", "resonance_order", "hbar_omega_over_kT"},
    "pulses": {"omega", "width_T", "period_tau", "t0", "count"},
    "evolution": {"t_end", "dt_max", "sample_dt", "initial_state", "integrator"},
    "trajectories": {"n_traj", "seed", "chunk_size"},
    "output": {"directory", "report_populations"},
}
TOP_LEVEL_KEYS = set(SECTION_KEYS) | {"name", "description", "solver", "sweep"}
SOLVER_CHOICES = SOLVER_ORDER + ["both"]


def get_config_path() -> Path:
    """Get the path to the scenario config directory"""
    return Path(__file__).parent / "config"


def load_builtins() -> Dict[str, Any]:
    """
    Load the builtin scenario document from builtins.yaml

    Returns:
        Dictionary with 'defaults' and 'scenarios' blocks

    Raises:
        ConfigError: if the file cannot be read or parsed
    """
    global _builtins_cache

    if _builtins_cache:
        return _builtins_cache

    builtins_path = get_config_path() / "builtins.yaml"

    try:
        with open(builtins_path, 'r') as f:
            _builtins_cache = yaml.safe_load(f)
        logger.info(f"Loaded builtin scenarios from {builtins_path}")
        return _builtins_cache
    except (OSError, yaml.YAMLError) as e:
        raise ConfigError(f"Failed to load builtin scenarios from {builtins_path}: {e}") from e


def reload_builtins():
    """Reload the builtin scenarios (clears cache)"""
    global _builtins_cache
    _builtins_cache.clear()
    logger.info("Builtin scenario cache cleared")


def list_builtin_names() -> List[str]:
    return list(load_builtins().get("scenarios", {}).keys())


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    """Section-wise merge: override sections update base sections"""
    merged = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict) and key != "sweep":
            merged[key].update(copy.deepcopy(value))
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def builtin_document(name: str) -> Dict[str, Any]:
    """
    Fully merged scenario document of a builtin

    Raises:
        ConfigError: unknown builtin name
    """
    builtins = load_builtins()
    scenarios = builtins.get("scenarios", {})
    if name not in scenarios:
        raise ConfigError(f"Unknown builtin scenario '{name}'. Available: {', '.join(scenarios)}")
    document = _merge(builtins.get("defaults", {}), scenarios[name])
    document["name"] = name
    return document


@dataclass
class SweepSpec:
    """Parameter path such as system.n_th and the values it takes"""
    path: str
    values: List[Any]

    @property
    def section(self) -> str:
        return self.path.split(".", 1)[0]

    @property
    def key(self) -> str:
        return self.path.split(".", 1)[1]


@dataclass
class OutputSpec:
    directory: Path
    report_populations: int


@dataclass
class ScenarioPoint:
    """Solver inputs of one (scenario, sweep value)"""
    scenario: str
    sweep_value: Optional[Any]
    params: SystemParams
    train: PulseTrain
    evolution: EvolutionConfig
    trajectories: TrajectoryConfig
    resolved: Dict[str, Any] = field(default_factory=dict)

    @property
    def label(self) -> str:
        if self.sweep_value is None:
            return self.scenario
        return f"{self.scenario}[{self.sweep_value}]"


@dataclass
class Scenario:
    """A validated scenario document"""
    name: str
    description: str
    system: Dict[str, Any]
    pulses: Dict[str, Any]
    evolution: Dict[str, Any]
    solver: str
    trajectories: Dict[str, Any]
    output: OutputSpec
    sweep: Optional[SweepSpec] = None

    @property
    def solvers(self) -> List[str]:
        return list(SOLVER_ORDER) if self.solver == "both" else [self.solver]

    def to_document(self) -> Dict[str, Any]:
        """Plain-data form, as written by generate-builtins"""
        document = {
            "name": self.name,
            "description": self.description,
            "system": dict(self.system),
            "pulses": dict(self.pulses),
            "evolution": dict(self.evolution),
            "solver": self.solver,
            "trajectories": dict(self.trajectories),
            "output": {
                "directory": str(self.output.directory),
                "report_populations": self.output.report_populations,
            },
        }
        if self.sweep is not None:
            document["sweep"] = {"path": self.sweep.path, "values": list(self.sweep.values)}
        return document

    def points(self) -> List[ScenarioPoint]:
        """
        One ScenarioPoint per sweep value (a single point without a sweep)

        Raises:
            ConfigError: if a point's parameters are invalid
        """
        if self.sweep is None:
            return [self._point(None, self.system, self.pulses, self.evolution, self.trajectories)]

        points = []
        for value in self.sweep.values:
            sections = {
                "system": dict(self.system),
                "pulses": dict(self.pulses),
                "evolution": dict(self.evolution),
                "trajectories": dict(self.trajectories),
            }
            sections[self.sweep.section][self.sweep.key] = value
            points.append(self._point(value, **sections))
        return points

    def _point(self, sweep_value, system, pulses, evolution, trajectories) -> ScenarioPoint:
        try:
            params = build_system_params(system)
            train = PulseTrain(
                omega=complex(pulses["omega"]),
                width_T=float(pulses["width_T"]),
                period_tau=float(pulses["period_tau"]),
                t0=float(pulses.get("t0", DEFAULT_T0)),
                count=pulses.get("count"),
            )
            t_end = evolution.get("t_end")
            t_end = 4.0 * train.period_tau if t_end is None else float(t_end)
            evolution_kwargs = dict(
                t_end=t_end,
                dt_max=float(evolution.get("dt_max", DEFAULT_DT_MAX)),
                sample_dt=float(evolution.get("sample_dt", DEFAULT_SAMPLE_DT)),
                initial_state=evolution.get("initial_state", "thermal"),
                integrator=evolution.get("integrator", DEFAULT_INTEGRATOR),
                report_populations=self.output.report_populations,
            )
            evolution_cfg = EvolutionConfig(**evolution_kwargs)
            trajectory_cfg = TrajectoryConfig(
                **evolution_kwargs,
                **{key: int(value) for key, value in trajectories.items() if value is not None},
            )
        except KeyError as e:
            raise ConfigError(f"Scenario '{self.name}': missing required field {e}") from e
        except (InvalidParameterError, TypeError, ValueError) as e:
            raise ConfigError(f"Scenario '{self.name}': {e}") from e

        if not 1 <= self.output.report_populations < params.dim:
            raise ConfigError(
                f"Scenario '{self.name}': report_populations={self.output.report_populations} "
                f"must lie in 1..{params.dim - 1} for dim={params.dim}"
            )

        resolved = {
            "system": {
                "chi": params.chi,
                "gamma": params.gamma,
                "delta": params.delta,
                "n_th": params.n_th,
                "dim": params.dim,
            },
            "pulses": {
                "omega": _plain_complex(train.omega),
                "width_T": train.width_T,
                "period_tau": train.period_tau,
                "t0": train.t0,
                "count": train.spanning(t_end).count,
            },
            "evolution": {key: value for key, value in evolution_kwargs.items()},
        }
        return ScenarioPoint(
            scenario=self.name,
            sweep_value=sweep_value,
            params=params,
            train=train,
            evolution=evolution_cfg,
            trajectories=trajectory_cfg,
            resolved=resolved,
        )


def _plain_complex(value: complex):
    value = complex(value)
    return value.real if value.imag == 0 else [value.real, value.imag]


def auto_dim(n_th: float) -> int:
    """
    Smallest truncation whose thermal tail leaves < 1e-8 in the top levels, plus drive headroom

    The top three levels of a geometric distribution with ratio r = n_th / (n_th + 1)
    hold at most r^(dim - 3). Never below AUTO_DIM_FLOOR, never above DEFAULT_DIM.
    """
    if n_th <= 0:
        return AUTO_DIM_FLOOR
    ratio = n_th / (n_th + 1.0)
    tail_dim = TRUNCATION_LEVELS + math.ceil(math.log(AUTO_DIM_TAIL) / math.log(ratio))
    return int(min(DEFAULT_DIM, max(AUTO_DIM_FLOOR, tail_dim + AUTO_DIM_HEADROOM)))


def build_system_params(system: Dict[str, Any]) -> SystemParams:
    """
    Resolve derived inputs (resonance_order, hbar_omega_over_kT, dim: auto)

    Raises:
        ConfigError: conflicting inputs
    """
    if "resonance_order" in system and "delta" in system:
        raise ConfigError("Give either delta or resonance_order, not both")
    if "hbar_omega_over_kT" in system and system.get("n_th") not in (None, 0, 0.0):
        raise ConfigError("Give either n_th or hbar_omega_over_kT, not both")

    chi = float(system["chi"])
    if "resonance_order" in system:
        delta = resonance_detuning(int(system["resonance_order"]), chi)
    else:
        delta = float(system.get("delta", 0.0))

    if "hbar_omega_over_kT" in system:
        n_th = temp_to_nth(float(system["hbar_omega_over_kT"]))
    else:
        n_th = float(system.get("n_th", 0.0))

    dim = system.get("dim", "auto")
    dim = auto_dim(n_th) if dim in (None, "auto") else int(dim)

    return SystemParams(chi=chi, delta=delta, n_th=n_th, dim=dim, gamma=float(system.get("gamma", 1.0)))


def _section(document: Dict[str, Any], name: str) -> Dict[str, Any]:
    value = document.get(name) or {}
    if not isinstance(value, dict):
        raise ConfigError(f"Section '{name}' must be a mapping")
    unknown = set(value) - SECTION_KEYS[name]
    if unknown:
        raise ConfigError(f"Unknown field(s) in '{name}': {', '.join(sorted(unknown))}")
    return dict(value)


def parse_scenario(document: Dict[str, Any]) -> Scenario:
    """
    Validate a scenario document

    Raises:
        ConfigError: unknown fields, unknown solver, bad sweep path or empty sweep
    """
    if not isinstance(document, dict):
        raise ConfigError("Scenario document must be a mapping")
    unknown = set(document) - TOP_LEVEL_KEYS
    if unknown:
        raise ConfigError(f"Unknown top-level field(s): {', '.join(sorted(unknown))}")

    name = document.get("name")
    if not name:
        raise ConfigError("Scenario needs a name")

    solver = document.get("solver", "master-equation")
    if solver not in SOLVER_CHOICES:
        raise ConfigError(f"Unknown solver '{solver}'. Choose from: {', '.join(SOLVER_CHOICES)}")

    for required in ("system", "pulses"):
        if required not in document:
            raise ConfigError(f"Scenario '{name}' has no '{required}' section")

    output = _section(document, "output")
    sweep = None
    if document.get("sweep") is not None:
        raw = document["sweep"]
        if not isinstance(raw, dict) or "path" not in raw:
            raise ConfigError(f"Scenario '{name}': sweep needs a path and values")
        path = str(raw["path"])
        section, _, key = path.partition(".")
        if section not in SECTION_KEYS or section == "output" or key not in SECTION_KEYS[section]:
            raise ConfigError(f"Scenario '{name}': unknown sweep path '{path}'")
        values = raw.get("values") or []
        if not isinstance(values, list) or not values:
            raise ConfigError(f"Scenario '{name}': sweep over '{path}' has no values")
        sweep = SweepSpec(path=path, values=values)

    return Scenario(
        name=str(name),
        description=str(document.get("description", "")),
        system=_section(document, "system"),
        pulses=_section(document, "pulses"),
        evolution=_section(document, "evolution"),
        solver=solver,
        trajectories=_section(document, "trajectories"),
        output=OutputSpec(
            directory=Path(output.get("directory", "results")),
            report_populations=int(output.get("report_populations", DEFAULT_REPORT_POPULATIONS)),
        ),
        sweep=sweep,
    )


def get_builtin(name: str) -> Scenario:
    return parse_scenario(builtin_document(name))


def load_scenario_file(path: Path) -> Scenario:
    """
    Parse a scenario YAML file; missing fields fall back to the builtin defaults

    Raises:
        ConfigError: unreadable or invalid file
    """
    path = Path(path)
    try:
        with open(path, 'r') as f:
            document = yaml.safe_load(f)
    except (OSError, yaml.YAMLError) as e:
        raise ConfigError(f"Failed to read scenario file {path}: {e}") from e

    if not isinstance(document, dict):
        raise ConfigError(f"Scenario file {path} does not contain a mapping")
    document = _merge(load_builtins().get("defaults", {}), document)
    document.setdefault("name", path.stem)
    return parse_scenario(document)


def resolve_scenario(config: str) -> Scenario:
    """A scenario file path, or the name of a builtin"""
    path = Path(config)
    if path.exists():
        return load_scenario_file(path)
    if config in list_builtin_names():
        return get_builtin(config)
    raise ConfigError(f"'{config}' is neither a scenario file nor a builtin scenario")


def apply_overrides(scenario: Scenario, solver: Optional[str] = None, seed: Optional[int] = None,
                    n_traj: Optional[int] = None, output_dir: Optional[Path] = None,
                    dim: Optional[int] = None) -> Scenario:
    """Command-line overrides of scenario fields"""
    if solver is not None and solver not in SOLVER_CHOICES:
        raise ConfigError(f"Unknown solver '{solver}'. Choose from: {', '.join(SOLVER_CHOICES)}")

    system = dict(scenario.system)
    trajectories = dict(scenario.trajectories)
    if dim is not None:
        system["dim"] = dim
    if seed is not None:
        trajectories["seed"] = seed
    if n_traj is not None:
        trajectories["n_traj"] = n_traj

    return replace(
        scenario,
        solver=solver or scenario.solver,
        system=system,
        trajectories=trajectories,
        output=replace(scenario.output, directory=Path(output_dir)) if output_dir else scenario.output,
    )
