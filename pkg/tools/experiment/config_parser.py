#!/usr/bin/env python3
"""
Experiment configuration parser
For parsing YAML experiment configurations (density, window, connection set,
template, intensity schedule and per-experiment settings)
"""

import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml

project_root = Path(__file__).parent.parent.parent
sys.path.insert(0, str(project_root))

from geograph.connection import ConnectionSet
from motif.template import MotifTemplate, template_from_edges, template_from_preset
from ppp.density import Density
from ppp.integrability import require_integrable, truncation_radius
from ppp.window import Window


class ConfigError(ValueError):
    """Invalid or refused experiment configuration (exit code 2)"""


class RegimeError(ConfigError):
    """The SLLN regime condition t^{k-gamma} rho_t^{d(k-1)} bounded below fails"""


def check_slln_regime(k: int, d: int, beta: float, gamma: Optional[float] = None) -> float:
    """
    Check beta*d*(k-1) <= k - gamma for some gamma > 0 (rho_t = t^-beta)

    Returns:
        The configured gamma, or the largest admissible one when none is given

    Raises:
        RegimeError: no admissible gamma, or the configured one violates the condition
    """
    slack = k - beta * d * (k - 1)
    if gamma is None:
        if slack <= 0:
            raise RegimeError(
                f"SLLN regime violated: no gamma > 0 with beta*d*(k-1) <= k - gamma "
                f"(beta={beta:g}, d={d}, k={k})")
        return slack
    gamma = float(gamma)
    if not gamma > 0 or beta * d * (k - 1) > k - gamma + 1e-12:
        raise RegimeError(
            f"SLLN regime violated: beta*d*(k-1) = {beta * d * (k - 1):g} > k - gamma = {k - gamma:g}")
    return gamma


@dataclass(frozen=True)
class RhoRule:
    """rho_t = value (fixed) or rho_t = t^(-value) (power)"""
    kind: str
    value: float

    def __call__(self, t: float) -> float:
        if self.kind == "fixed":
            return self.value
        return t ** (-self.value)

    @property
    def beta(self) -> float:
        return 0.0 if self.kind == "fixed" else self.value


@dataclass
class ExperimentConfig:
    """Resolved experiment configuration"""
    name: str
    density: Density
    window_spec: Dict[str, Any]
    connection_shape: ConnectionSet
    template: MotifTemplate
    t_grid: List[float]
    rho_rule: RhoRule
    replicates: int
    master_seed: int
    output_dir: Path
    tails: Dict[str, Any] = field(default_factory=dict)
    slln: Dict[str, Any] = field(default_factory=dict)
    moments: Dict[str, Any] = field(default_factory=dict)
    derived: Dict[str, Any] = field(default_factory=dict)

    @property
    def d(self) -> int:
        return self.density.d

    def rho(self, t: float) -> float:
        return self.rho_rule(t)

    def connection(self, t: float) -> ConnectionSet:
        return self.connection_shape.rescaled(self.rho(t))

    def window(self, t: float) -> Window:
        """Sampling window at intensity t (truncation windows depend on t and rho_t)"""
        spec = self.window_spec
        kind = spec.get("kind")
        if kind == "ball":
            return Window.ball(spec.get("center", [0.0] * self.d), float(spec["radius"]))
        if kind == "box":
            return Window.box(spec["lo"], spec["hi"])
        if kind == "truncation":
            rho = self.rho(t)
            theta_rho = self.template.diam * self.connection_shape.theta * rho
            radius = truncation_radius(self.density, self.template.k, theta_rho, t, rho,
                                       float(spec["eps"]), j_max=self.template.a_H)
            self.derived[f"truncation_radius@t={t:.17g}"] = radius
            return Window.ball([0.0] * self.d, radius)
        # uniform box without an explicit window: the box itself
        return Window.box(self.density.params["lo"], self.density.params["hi"])

    def covers_support(self, window: Window) -> bool:
        """True when the window contains the whole support of the density"""
        if self.density.params.get("lo") is None:
            return False
        lo, hi = window.bounding_box()
        if window.kind.value != "box":
            return False
        return bool((lo <= self.density.params["lo"]).all() and (hi >= self.density.params["hi"]).all())

    def limit_window(self) -> Optional[Window]:
        """
        Window the asymptotic constants are taken over

        A fixed ball or box that misses part of the support keeps the process on that
        window for every t, so its limits integrate over the window only. Truncation
        windows grow with t and a covering window changes nothing: both return None.
        """
        if self.window_spec.get("kind") not in ("ball", "box"):
            return None
        window = self.window(self.t_grid[0])
        return None if self.covers_support(window) else window


class ConfigParser:
    """Experiment configuration parser"""

    def __init__(self, config_path: str, overrides: Optional[Dict[str, Any]] = None):
        """
        Initialize configuration parser

        Args:
            config_path: Configuration file path
            overrides: Command-line overrides (master_seed, output_dir, replicates)
        """
        self.config_path = Path(config_path)
        if not self.config_path.exists():
            raise FileNotFoundError(f"Configuration file not found: {config_path}")

        self._config_data = self._load_config()
        self._apply_overrides(overrides or {})
        self._validate_config()

    def _load_config(self) -> Dict[str, Any]:
        """Load YAML configuration file"""
        try:
            with open(self.config_path, 'r', encoding='utf-8') as f:
                data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigError(f"YAML parsing error: {e}")
        if not isinstance(data, dict):
            raise ConfigError(f"Configuration must be a mapping: {self.config_path}")
        return data

    def _apply_overrides(self, overrides: Dict[str, Any]):
        experiment = self._config_data.setdefault('experiment', {})
        for key in ('master_seed', 'output_dir', 'replicates'):
            if overrides.get(key) is not None:
                experiment[key] = overrides[key]

    def _validate_config(self):
        """Validate required sections, build library objects and apply the integrability gate"""
        required_sections = ['experiment', 'density', 'connection', 'template', 'schedule']
        for section in required_sections:
            if section not in self._config_data:
                raise ConfigError(f"Missing required configuration section: {section}")

        experiment = self._config_data['experiment']
        if int(experiment.get('replicates', 1)) < 1:
            raise ConfigError(f"experiment.replicates must be >= 1: {experiment.get('replicates')}")
        if int(experiment.get('master_seed', 0)) < 0:
            raise ConfigError(f"experiment.master_seed must be non-negative: {experiment.get('master_seed')}")

        t_grid = self._config_data['schedule'].get('t_grid')
        if not t_grid or any(not float(t) > 0 for t in t_grid):
            raise ConfigError(f"schedule.t_grid must be a non-empty list of positive values: {t_grid}")

        try:
            self._density = self._build_density()
            self._template = self._build_template()
            self._connection = self._build_connection()
            self._rho_rule = self._build_rho_rule()
        except ConfigError:
            raise
        except (ValueError, KeyError, TypeError) as e:
            raise ConfigError(f"Invalid configuration: {e}") from e

        window = self._config_data.get('window')
        if window is not None and window.get('kind') not in ('ball', 'box', 'truncation'):
            raise ConfigError(f"window.kind must be ball, box or truncation: {window.get('kind')}")
        if window is None and self._density.family.value != 'uniform_box':
            raise ConfigError("A window section is required for densities with unbounded support")

        try:
            require_integrable(self._density, self._template.k)
        except ValueError as e:
            raise ConfigError(f"Configuration refused: {e}") from e

        if 'slln' in self._config_data:
            self.validate_slln_regime()

    def _build_density(self) -> Density:
        spec = self._config_data['density']
        family = spec.get('family')
        if family == 'power_law':
            return Density.power_law(float(spec['A']), float(spec['gamma']), int(spec['d']))
        if family == 'uniform_box':
            return Density.uniform_box(spec['lo'], spec['hi'], float(spec.get('level', 1.0)))
        raise ConfigError(f"density.family must be power_law or uniform_box: {family}")

    def _build_template(self) -> MotifTemplate:
        spec = self._config_data['template']
        if 'preset' in spec:
            return template_from_preset(spec['preset'])
        return template_from_edges(int(spec['k']), spec['edges'], name=spec.get('name', 'custom'))

    def _build_connection(self) -> ConnectionSet:
        spec = self._config_data['connection']
        if spec.get('kind', 'lp_ball') != 'lp_ball':
            raise ConfigError(f"connection.kind must be lp_ball: {spec.get('kind')}")
        p = spec.get('p', 2)
        p = math.inf if str(p).lower() in ('inf', 'infinity') else float(p)
        return ConnectionSet.lp_ball(p, 1.0, self._density.d)

    def _build_rho_rule(self) -> RhoRule:
        rule = self._config_data['schedule'].get('rho_rule')
        if rule is None:
            rho = self._config_data['connection'].get('rho')
            if rho is None:
                raise ConfigError("Either schedule.rho_rule or connection.rho must be given")
            rule = {'fixed': rho}
        if 'fixed' in rule:
            value = float(rule['fixed'])
            if not value > 0:
                raise ConfigError(f"Fixed rho must be positive: {value}")
            return RhoRule('fixed', value)
        if 'power' in rule:
            value = float(rule['power'])
            if value < 0:
                raise ConfigError(f"Power-rule exponent beta must be non-negative: {value}")
            return RhoRule('power', value)
        raise ConfigError(f"schedule.rho_rule must be {{fixed: rho}} or {{power: beta}}: {rule}")

    def validate_slln_regime(self) -> float:
        """Check the SLLN regime for the configured schedule; returns the gamma used"""
        gamma = self._config_data.get('slln', {}).get('gamma')
        return check_slln_regime(self._template.k, self._density.d, self._rho_rule.beta, gamma)

    def get_experiment_config(self) -> ExperimentConfig:
        experiment = self._config_data['experiment']
        name = experiment.get('name', self.config_path.stem)
        return ExperimentConfig(
            name=name,
            density=self._density,
            window_spec=dict(self._config_data.get('window') or {}),
            connection_shape=self._connection,
            template=self._template,
            t_grid=[float(t) for t in self._config_data['schedule']['t_grid']],
            rho_rule=self._rho_rule,
            replicates=int(experiment.get('replicates', 1000)),
            master_seed=int(experiment.get('master_seed', 0)),
            output_dir=Path(experiment.get('output_dir', Path('results') / name)),
            tails=self.get_tails_config(),
            slln=self.get_slln_config(),
            moments=self.get_moments_config(),
        )

    def get_tails_config(self) -> Dict[str, Any]:
        spec = self._config_data.get('tails', {})
        return {
            'r_points': int(spec.get('r_points', 41)),
            'r_max_sd': float(spec.get('r_max_sd', 5.0)),
            'r_grid': [float(r) for r in spec['r_grid']] if 'r_grid' in spec else None,
            'n_samples': int(spec.get('n_samples', 200_000)),
            'inner_samples': int(spec.get('inner_samples', 32)),
        }

    def get_slln_config(self) -> Dict[str, Any]:
        spec = self._config_data.get('slln', {})
        return {
            'seeds': int(spec.get('seeds', 100)),
            'gamma': float(spec['gamma']) if spec.get('gamma') is not None else None,
            'eps': float(spec.get('eps', 0.1)),
            'n_samples': int(spec.get('n_samples', 200_000)),
        }

    def get_moments_config(self) -> Dict[str, Any]:
        spec = self._config_data.get('moments', {})
        return {
            'n_samples': int(spec.get('n_samples', 100_000)),
            'inner_samples': int(spec.get('inner_samples', 32)),
        }

    def to_resolved_dict(self, cfg: Optional[ExperimentConfig] = None) -> Dict[str, Any]:
        """Effective configuration including overrides and derived values"""
        resolved = yaml.safe_load(yaml.safe_dump(self._config_data))
        if cfg is not None and cfg.derived:
            resolved['derived'] = {key: float(value) for key, value in cfg.derived.items()}
        return resolved

    def write_resolved(self, output_dir, cfg: Optional[ExperimentConfig] = None) -> Path:
        path = Path(output_dir) / "config.resolved.yaml"
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as f:
            yaml.safe_dump(self.to_resolved_dict(cfg), f, sort_keys=False, allow_unicode=True)
        return path
