"""
📦 Module: convoy_model.py

Synthetic two-agent convoy scenes with a known causal graph.

Responsibilities:
    - Hold every generation parameter with its default (SceneGenConfig)
    - Simulate lead c0, follower c1 and independent i0 on the sample grid
    - Regenerate scenes that end in a collision and log the event
    - Write scene batches plus an INI manifest of seeds and realized noise
"""

# 🧱 Standard library
import configparser
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

# 🧩 Third-party libraries
import numpy as np
from joblib import Parallel, delayed

# 🧠 First-party (project-specific)
from models.errors import ConfigError, CausalToolkitError
from models.graph_model import SummaryGraph
from models.scene_model import TimeSeriesScene, Variant, save_scene_csv
from utils.logger import get_logger

AGENTS = ("c0", "c1", "i0")
LEAD, FOLLOWER, INDEPENDENT = range(3)

Range = tuple[float, float]


@dataclass(frozen=True)
class SceneGenConfig:
    """
    🚦 Parameters of the synthetic convoy generator.

    Ranges are (low, high) tuples. Noise ranges are sampled once per scene.
    """
    variant: Variant = Variant.ACCELERATION
    frequency_hz: float = 10.0
    duration_range_s: Range = (50.0, 70.0)
    convoy_actions: int = 12
    independent_actions: int = 12
    min_convoy_distance_m: float = 10.0
    max_convoy_distance_m: float = 100.0
    proportional_gain: float = 1.0
    integral_gain: float = 0.0
    derivative_gain: float = 0.0
    min_action_interval_s: float = 1.0
    velocity_bounds_mps: Range = (0.0, 44.7)
    start_velocity_bounds_mps: Range = (4.47, 26.8)
    acceleration_bounds_mps2: Range = (-6.56, 3.5)
    safe_distance_over_velocity_s: float = 2.24
    reaction_time_s: float = 0.5
    fixed_actuary_noise_mps2: Range = (0.1, 1.6)
    proportional_actuary_noise: Range = (0.1, 1.6)
    fixed_sensory_noise_m: Range = (0.01, 0.16)
    proportional_sensory_noise: Range = (0.005, 0.08)
    seed: int = 0
    max_attempts: int = 100

    def __post_init__(self):
        for name in ("duration_range_s", "velocity_bounds_mps", "start_velocity_bounds_mps",
                     "acceleration_bounds_mps2", "fixed_actuary_noise_mps2", "proportional_actuary_noise",
                     "fixed_sensory_noise_m", "proportional_sensory_noise"):
            low, high = (float(v) for v in getattr(self, name))
            if not (math.isfinite(low) and math.isfinite(high)) or low > high:
                raise ConfigError(f"{name} must be a finite range with low <= high, got ({low}, {high})")
            object.__setattr__(self, name, (low, high))

        if not self.frequency_hz > 0:
            raise ConfigError("frequency_hz must be positive")
        if self.duration_range_s[0] <= 0:
            raise ConfigError("duration_range_s must be positive")
        if not all(math.isfinite(g) for g in (self.proportional_gain, self.integral_gain, self.derivative_gain)):
            raise ConfigError("controller gains must be finite")
        low, high = self.start_velocity_bounds_mps
        if low < self.velocity_bounds_mps[0] or high > self.velocity_bounds_mps[1]:
            raise ConfigError("start_velocity_bounds_mps must lie inside velocity_bounds_mps")
        if self.acceleration_bounds_mps2[0] > 0 or self.acceleration_bounds_mps2[1] < 0:
            raise ConfigError("acceleration_bounds_mps2 must contain 0")
        if self.min_convoy_distance_m <= 0 or self.min_convoy_distance_m > self.max_convoy_distance_m:
            raise ConfigError("convoy distance bounds must satisfy 0 < min <= max")
        if self.convoy_actions < 0 or self.independent_actions < 0:
            raise ConfigError("action counts must be non-negative")
        if self.min_action_interval_s < 0 or self.reaction_time_s < 0:
            raise ConfigError("intervals and times must be non-negative")
        if not self.safe_distance_over_velocity_s > 0:
            raise ConfigError("safe_distance_over_velocity_s must be positive")
        if self.seed < 0:
            raise ConfigError("seed must be non-negative")
        if self.max_attempts < 1:
            raise ConfigError("max_attempts must be >= 1")

    @property
    def reaction_delay_samples(self) -> int:
        """Reaction time on the sample grid."""
        return int(round(self.reaction_time_s * self.frequency_hz))

    def check_feasible(self) -> None:
        """
        Raises:
            ConfigError: Too many actions to keep the minimum interval inside the shortest duration.
        """
        longest = max(self.convoy_actions, self.independent_actions) * self.min_action_interval_s
        if longest > self.duration_range_s[0]:
            raise ConfigError(
                f"{max(self.convoy_actions, self.independent_actions)} actions spaced "
                f"{self.min_action_interval_s} s apart do not fit into {self.duration_range_s[0]} s")


@dataclass(frozen=True)
class NoiseParams:
    """
    🔊 Per-scene noise levels drawn from the configured ranges.
    """
    fixed_actuary_noise_mps2: float
    proportional_actuary_noise: float
    fixed_sensory_noise_m: float
    proportional_sensory_noise: float


@dataclass(frozen=True)
class InitialState:
    """
    🏁 Start of a simulation: lead speed (shared by the follower), independent speed, gap.
    """
    lead_velocity_mps: float
    independent_velocity_mps: float
    gap_m: float


@dataclass(frozen=True)
class GoalChange:
    """
    🎯 Velocity goal that takes effect at `step` (first sample at or after `time_s`).
    """
    time_s: float
    step: int
    goal_mps: float


@dataclass(frozen=True, eq=False)
class Trajectory:
    """
    🛣️ Simulated kinematics, T×3 arrays in agent order c0, c1, i0.
    """
    positions: np.ndarray
    velocities: np.ndarray
    accelerations: np.ndarray

    @property
    def gaps(self) -> np.ndarray:
        """Lead position minus follower position."""
        return self.positions[:, LEAD] - self.positions[:, FOLLOWER]


@dataclass(frozen=True, eq=False)
class GeneratedScene:
    """
    📦 A generated scene with its ground truth and everything needed to reproduce it.
    """
    scene: TimeSeriesScene
    ground_truth: SummaryGraph
    seed: int
    realized_noise_params: NoiseParams
    attempts: int = 1
    initial_state: InitialState | None = None
    lead_schedule: tuple[GoalChange, ...] = field(default=())
    independent_schedule: tuple[GoalChange, ...] = field(default=())
    trajectory: Trajectory | None = None


def variable_names(variant: Variant) -> tuple[str, ...]:
    """Header of a convoy scene: c0.x, c1.x, i0.x with x the variant suffix."""
    return tuple(f"{agent}.{variant.suffix}" for agent in AGENTS)


def convoy_ground_truth(names: tuple[str, ...] | list[str]) -> SummaryGraph:
    """
    Single edge from the c0 series to the c1 series.

    Raises:
        CausalToolkitError: Names lack a c0 or c1 series.
    """
    names = tuple(names)
    lead = [name for name in names if name.split(".")[0] == "c0"]
    follower = [name for name in names if name.split(".")[0] == "c1"]
    if len(lead) != 1 or len(follower) != 1:
        raise CausalToolkitError(f"Cannot derive the convoy ground truth from variables {list(names)}")
    return SummaryGraph(names, frozenset({(lead[0], follower[0])}))


def draw_schedule(rng: np.random.Generator, count: int, duration_s: float, config: SceneGenConfig) -> tuple[GoalChange, ...]:
    """
    `count` goal changes at uniformly spaced times with jitter, never closer than the minimum interval.
    """
    if count == 0:
        return ()
    spacing = duration_s / (count + 1)
    minimum = config.min_action_interval_s
    if spacing >= minimum:
        half_width = (spacing - minimum) / 2.0
        times = [spacing * (i + 1) + rng.uniform(-half_width, half_width) for i in range(count)]
    else:
        spacing = duration_s / count
        times = [spacing * (i + 0.5) for i in range(count)]

    low, high = config.velocity_bounds_mps
    changes = []
    for time_s in times:
        goal = rng.uniform(low, high)
        changes.append(GoalChange(time_s, int(math.ceil(time_s * config.frequency_hz - 1e-9)), goal))
    return tuple(changes)


def draw_noise(rng: np.random.Generator, config: SceneGenConfig) -> NoiseParams:
    """One uniform draw from each noise range."""
    return NoiseParams(
        fixed_actuary_noise_mps2=rng.uniform(*config.fixed_actuary_noise_mps2),
        proportional_actuary_noise=rng.uniform(*config.proportional_actuary_noise),
        fixed_sensory_noise_m=rng.uniform(*config.fixed_sensory_noise_m),
        proportional_sensory_noise=rng.uniform(*config.proportional_sensory_noise),
    )


class _Controller:
    """PID on a scalar error; with zero I and D gains a plain proportional controller."""

    def __init__(self, config: SceneGenConfig, dt: float):
        self.kp = config.proportional_gain
        self.ki = config.integral_gain
        self.kd = config.derivative_gain
        self.dt = dt
        self.integral = 0.0
        self.previous: float | None = None

    def command(self, error: float) -> float:
        self.integral += error * self.dt
        derivative = 0.0 if self.previous is None else (error - self.previous) / self.dt
        self.previous = error
        return self.kp * error + self.ki * self.integral + self.kd * derivative


def _goal_at(schedule: tuple[GoalChange, ...], step: int, start: float) -> float:
    goal = start
    for change in schedule:
        if change.step <= step:
            goal = change.goal_mps
    return goal


def simulate_convoy(config: SceneGenConfig, n_samples: int, initial: InitialState,
                    lead_schedule: tuple[GoalChange, ...], independent_schedule: tuple[GoalChange, ...],
                    noise: NoiseParams, rng: np.random.Generator) -> Trajectory:
    """
    🚗 Steps the three agents forward on the sample grid.

    c0 and i0 track their velocity goals. c1 sees the lead through a delay: its command at step n
    uses the lead state produced by the lead's action at step n - reaction_delay_samples, so its
    reaction lands one reaction time after the lead's action. c1 mirrors the observed lead
    acceleration and corrects the spacing error (observed gap plus headway × relative speed, minus
    the target gap headway × own speed) through the controller, scaled by 1 / headway².
    Sensory noise perturbs the observed gap. Every command is clipped, perturbed by actuary noise
    and clipped again; velocities are clipped to their bounds and the recorded acceleration is the
    one actually applied over the step.
    """
    dt = 1.0 / config.frequency_hz
    observed_lag = max(config.reaction_delay_samples - 1, 0)
    a_low, a_high = config.acceleration_bounds_mps2
    v_low, v_high = config.velocity_bounds_mps
    headway = config.safe_distance_over_velocity_s

    positions = np.zeros((n_samples, 3))
    velocities = np.zeros((n_samples, 3))
    accelerations = np.zeros((n_samples, 3))
    positions[0] = (initial.gap_m, 0.0, 0.0)
    velocities[0] = (initial.lead_velocity_mps, initial.lead_velocity_mps, initial.independent_velocity_mps)
    controllers = [_Controller(config, dt) for _ in AGENTS]

    for step in range(n_samples):
        observed_step = max(step - observed_lag, 0)
        true_gap = positions[observed_step, LEAD] - positions[observed_step, FOLLOWER]
        sensory_std = noise.fixed_sensory_noise_m + noise.proportional_sensory_noise * abs(true_gap)
        observed_gap = true_gap + rng.normal(0.0, sensory_std)
        observed_lead_velocity = velocities[observed_step, LEAD]
        observed_lead_acceleration = accelerations[observed_step - 1, LEAD] if observed_step > 0 else 0.0
        follower_velocity = velocities[step, FOLLOWER]
        spacing_error = (observed_gap - headway * follower_velocity
                         + headway * (observed_lead_velocity - follower_velocity))

        commands = (
            controllers[LEAD].command(
                _goal_at(lead_schedule, step, initial.lead_velocity_mps) - velocities[step, LEAD]),
            observed_lead_acceleration + controllers[FOLLOWER].command(spacing_error) / headway ** 2,
            controllers[INDEPENDENT].command(
                _goal_at(independent_schedule, step, initial.independent_velocity_mps) - velocities[step, INDEPENDENT]),
        )
        for agent, raw in enumerate(commands):
            command = min(max(raw, a_low), a_high)
            actuary_std = noise.fixed_actuary_noise_mps2 + noise.proportional_actuary_noise * abs(command)
            applied = min(max(command + rng.normal(0.0, actuary_std), a_low), a_high)
            next_velocity = min(max(velocities[step, agent] + applied * dt, v_low), v_high)
            accelerations[step, agent] = (next_velocity - velocities[step, agent]) / dt
            if step + 1 < n_samples:
                velocities[step + 1, agent] = next_velocity
                positions[step + 1, agent] = positions[step, agent] + (velocities[step, agent] + next_velocity) / 2.0 * dt

    return Trajectory(positions, velocities, accelerations)


def generate_scene(config: SceneGenConfig, scene_id: str | None = None) -> GeneratedScene:
    """
    Draws and simulates one scene; collisions are regenerated from a derived seed.

    Attempt 0 uses `config.seed`, attempt k > 0 the seed sequence (seed, k).

    Raises:
        ConfigError: Infeasible action schedule.
        CausalToolkitError: Every attempt collided.
    """
    logger = get_logger("ConvoyGenerator")
    config.check_feasible()
    scene_id = scene_id if scene_id is not None else f"seed_{config.seed}"
    names = variable_names(config.variant)

    for attempt in range(config.max_attempts):
        rng = np.random.default_rng(config.seed if attempt == 0 else [config.seed, attempt])
        duration = rng.uniform(*config.duration_range_s)
        n_samples = max(int(round(duration * config.frequency_hz)), 2)
        noise = draw_noise(rng, config)
        initial = InitialState(
            lead_velocity_mps=rng.uniform(*config.start_velocity_bounds_mps),
            independent_velocity_mps=rng.uniform(*config.start_velocity_bounds_mps),
            gap_m=rng.uniform(config.min_convoy_distance_m, config.max_convoy_distance_m),
        )
        scene_duration = n_samples / config.frequency_hz
        lead_schedule = draw_schedule(rng, config.convoy_actions, scene_duration, config)
        independent_schedule = draw_schedule(rng, config.independent_actions, scene_duration, config)

        trajectory = simulate_convoy(config, n_samples, initial, lead_schedule, independent_schedule, noise, rng)
        if np.any(trajectory.gaps <= 0.0):
            logger.warning("Scéna %s (seed %d): kolize v pokusu %d, generuji znovu",
                           scene_id, config.seed, attempt + 1)
            continue

        series = trajectory.accelerations if config.variant is Variant.ACCELERATION else trajectory.velocities
        scene = TimeSeriesScene(scene_id, names, config.frequency_hz, series, config.variant)
        return GeneratedScene(
            scene=scene,
            ground_truth=convoy_ground_truth(names),
            seed=config.seed,
            realized_noise_params=noise,
            attempts=attempt + 1,
            initial_state=initial,
            lead_schedule=lead_schedule,
            independent_schedule=independent_schedule,
            trajectory=trajectory,
        )

    raise CausalToolkitError(f"Scene {scene_id} collided in all {config.max_attempts} attempts (seed {config.seed})")


def scene_file_name(index: int) -> str:
    """Batch scene id for position `index`."""
    return f"scene_{index:04d}"


def write_manifest(scenes: list[GeneratedScene], config: SceneGenConfig, path: Path) -> None:
    """INI manifest: a [Batch] section plus one section per scene."""
    manifest = configparser.ConfigParser()
    manifest.optionxform = str
    manifest["Batch"] = {
        "count": str(len(scenes)),
        "base_seed": str(config.seed),
        "variant": config.variant.value,
        "frequency_hz": repr(config.frequency_hz),
    }
    for generated in scenes:
        noise = generated.realized_noise_params
        manifest[generated.scene.scene_id] = {
            "file": f"{generated.scene.scene_id}.csv",
            "seed": str(generated.seed),
            "attempts": str(generated.attempts),
            "variant": generated.scene.variant.value,
            "n_samples": str(generated.scene.n_samples),
            "duration_s": repr(generated.scene.duration_s),
            "fixed_actuary_noise_mps2": repr(noise.fixed_actuary_noise_mps2),
            "proportional_actuary_noise": repr(noise.proportional_actuary_noise),
            "fixed_sensory_noise_m": repr(noise.fixed_sensory_noise_m),
            "proportional_sensory_noise": repr(noise.proportional_sensory_noise),
        }
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        manifest.write(f)


def generate_batch(config: SceneGenConfig, count: int, out_dir: Path | str, jobs: int = 1) -> list[GeneratedScene]:
    """
    Generates `count` scenes with seeds config.seed + i, writes CSVs and `manifest.ini`.

    Args:
        config (SceneGenConfig): Base configuration.
        count (int): Number of scenes, >= 1.
        out_dir (Path | str): Output directory, created when missing.
        jobs (int): Worker processes; output does not depend on it.
    """
    logger = get_logger("ConvoyGenerator")
    if count < 1:
        raise ConfigError(f"count must be >= 1, got {count}")
    config.check_feasible()
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    tasks = [(replace(config, seed=config.seed + i), scene_file_name(i)) for i in range(count)]
    scenes = Parallel(n_jobs=jobs)(delayed(generate_scene)(scene_config, scene_id) for scene_config, scene_id in tasks)

    for generated in scenes:
        save_scene_csv(generated.scene, out_dir / f"{generated.scene.scene_id}.csv")
    write_manifest(scenes, config, out_dir / "manifest.ini")
    logger.info("Vygenerováno %d scén (%s) do %s", count, config.variant.value, out_dir)
    return list(scenes)
