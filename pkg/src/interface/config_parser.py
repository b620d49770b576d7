"""Sectioned key-value experiment documents.

A document looks like::

    [instance]
    means = 0.9, 0.5, 0.5
    dist_kind = bernoulli

    [channel]
    epsilon = 0.5
    fallback = last_received

    [policy]
    kind = repeat
    inner = ucb

    [run]
    T = 10000
    seed = 7

Lists may be written bare or in brackets (``[0.1, 0.5]``).
"""
import configparser
from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple, Type

from pydantic import BaseModel, BeforeValidator, ConfigDict, ValidationError

from config.settings import settings
from src.bandit.agent import FallbackKind
from src.bandit.environment import DistKind
from src.bandit.instances import gap_instance, lower_bound_instance
from src.models.schemas import ExperimentSetup, PolicyKind
from src.utils.helpers import fingerprint
from src.utils.validators import ArmIndexError, ConfigParseError, ConfigurationError

SECTIONS = ("instance", "channel", "policy", "run", "output")
SWEEP_AXES = {"epsilon": "epsilon", "T": "horizon", "policy": "policy"}


def split_list(value: Any) -> Any:
    """'[0.1, 0.5]' or '0.1, 0.5' -> ['0.1', '0.5']; non-strings pass through."""
    if not isinstance(value, str):
        return value
    text = value.strip()
    if text.startswith("[") and text.endswith("]"):
        text = text[1:-1]
    return [item.strip() for item in text.split(",") if item.strip()]


FloatList = Annotated[List[float], BeforeValidator(split_list)]
IntList = Annotated[List[int], BeforeValidator(split_list)]
StrList = Annotated[List[str], BeforeValidator(split_list)]


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class InstanceSection(_Section):
    means: Optional[FloatList] = None
    generator: Optional[Literal["lower_bound", "gap"]] = None
    K: Optional[int] = None
    best: Optional[int] = None
    gap: Optional[float] = None
    top: Optional[float] = None
    dist_kind: Optional[DistKind] = None


class ChannelSection(_Section):
    epsilon: Optional[float] = None
    epsilons: Optional[FloatList] = None
    fallback: FallbackKind = FallbackKind.LAST_RECEIVED
    fixed_arm: Optional[int] = None


class PolicySection(_Section):
    kind: str
    inner: Optional[str] = None
    c_prime: float = 1.0


class RunSection(_Section):
    T: int
    seed: int
    reps: Optional[int] = None
    checkpoints: Optional[IntList] = None


class OutputSection(_Section):
    directory: Optional[str] = None


class SweepSection(_Section):
    epsilon: Optional[FloatList] = None
    T: Optional[IntList] = None
    policy: Optional[StrList] = None


def _convert(exc: ValidationError, section: str) -> ConfigurationError:
    err = exc.errors()[0]
    key = ".".join([section] + [str(p) for p in err["loc"] if not isinstance(p, int)])
    if err["type"] == "missing":
        return ConfigParseError(f"missing required key {key}", key)
    if err["type"] == "extra_forbidden":
        return ConfigParseError(f"unknown key {key}", key)
    return ConfigurationError(f"invalid value for {key}: {err['msg']}", key)


def _load(model: Type[BaseModel], section: str, values: Dict[str, str]):
    try:
        return model.model_validate(values)
    except ValidationError as exc:
        raise _convert(exc, section) from exc


def _read_document(text: str, allowed: Tuple[str, ...]) -> Dict[str, Dict[str, str]]:
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigParseError(f"malformed config document: {exc}", "document") from exc

    unknown = [s for s in parser.sections() if s not in allowed]
    if unknown:
        raise ConfigParseError(f"unknown section [{unknown[0]}]", unknown[0])
    return {name: dict(parser[name]) if parser.has_section(name) else {} for name in allowed}


def _policy_kind(section: PolicySection) -> PolicyKind:
    kind = section.kind.strip().lower()
    if kind == "repeat":
        if section.inner is None:
            raise ConfigurationError("policy kind repeat needs an inner policy (ucb or sae)", "policy.inner")
        kind = f"{section.inner.strip().lower()}+repeat"
    elif section.inner is not None:
        raise ConfigurationError(f"policy.inner is only valid with kind = repeat, got kind = {kind}",
                                 "policy.inner")
    try:
        return PolicyKind(kind)
    except ValueError:
        raise ConfigurationError(f"unknown policy kind {kind!r}", "policy.kind")


def _means(section: InstanceSection) -> Tuple[Tuple[float, ...], DistKind]:
    if section.generator is None:
        if section.means is None:
            raise ConfigParseError("missing required key instance.means", "instance.means")
        extra = [k for k in ("K", "best", "gap", "top") if getattr(section, k) is not None]
        if extra:
            raise ConfigParseError(f"instance.{extra[0]} is only valid with a generator", f"instance.{extra[0]}")
        return tuple(section.means), section.dist_kind or DistKind.BERNOULLI

    if section.means is not None:
        raise ConfigurationError("give either instance.means or instance.generator, not both", "instance.means")
    if section.K is None:
        raise ConfigParseError("missing required key instance.K", "instance.K")

    if section.generator == "lower_bound":
        if section.best is None:
            raise ConfigParseError("missing required key instance.best", "instance.best")
        if section.dist_kind not in (None, DistKind.DETERMINISTIC):
            raise ConfigurationError("the lower_bound generator is always deterministic", "instance.dist_kind")
        try:
            instance = lower_bound_instance(section.K, section.best)
        except ArmIndexError as exc:
            raise ConfigurationError(exc.message, "instance.best") from exc
    else:
        if section.gap is None:
            raise ConfigParseError("missing required key instance.gap", "instance.gap")
        try:
            instance = gap_instance(section.K, section.gap,
                                    top=0.5 if section.top is None else section.top,
                                    best=1 if section.best is None else section.best,
                                    dist_kind=section.dist_kind or DistKind.BERNOULLI)
        except ArmIndexError as exc:
            raise ConfigurationError(exc.message, "instance.best") from exc
    return instance.means, instance.dist_kind


def _build_setup(sections: Dict[str, Dict[str, str]]) -> ExperimentSetup:
    instance = _load(InstanceSection, "instance", sections["instance"])
    channel = _load(ChannelSection, "channel", sections["channel"])
    policy = _load(PolicySection, "policy", sections["policy"])
    run = _load(RunSection, "run", sections["run"])
    output = _load(OutputSection, "output", sections["output"])

    if channel.epsilon is None and channel.epsilons is None:
        raise ConfigParseError("missing required key channel.epsilon", "channel.epsilon")

    means, dist_kind = _means(instance)
    fields = {
        "means": means,
        "dist_kind": dist_kind,
        "epsilon": channel.epsilon,
        "epsilons": channel.epsilons,
        "policy": _policy_kind(policy),
        "fallback": channel.fallback,
        "fixed_arm": channel.fixed_arm,
        "horizon": run.T,
        "reps": settings.default_reps if run.reps is None else run.reps,
        "seed": run.seed,
        "checkpoints": run.checkpoints,
        "c_prime": policy.c_prime,
        "output_dir": output.directory,
    }
    try:
        return ExperimentSetup.model_validate(fields)
    except ValidationError as exc:
        raise _convert(exc, "setup") from exc


def parse_config(text: str) -> ExperimentSetup:
    """Parse and fully validate one experiment document."""
    return _build_setup(_read_document(text, SECTIONS))


def parse_sweep(text: str) -> Tuple[ExperimentSetup, Dict[str, List[Any]]]:
    """Parse a grid document: the base setup plus its ``[sweep]`` axes.

    Axes keep declaration order and map onto setup fields
    (epsilon -> epsilon, T -> horizon, policy -> policy).
    """
    sections = _read_document(text, SECTIONS + ("sweep",))
    base = _build_setup(sections)
    grid = _load(SweepSection, "sweep", sections["sweep"])

    axes: Dict[str, List[Any]] = {}
    for key in sections["sweep"]:
        values = getattr(grid, key)
        if not values:
            raise ConfigurationError(f"sweep.{key} has no values", f"sweep.{key}")
        if key == "policy":
            values = [_policy_kind(PolicySection(kind=v)) for v in values]
        axes[SWEEP_AXES[key]] = list(values)
    if not axes:
        raise ConfigParseError("missing [sweep] section or axes", "sweep")
    return base, axes


def _join(values) -> str:
    return ", ".join(repr(v) for v in values)


def render_config(setup: ExperimentSetup) -> str:
    """Canonical document for ``setup``; ``parse_config`` inverts it exactly."""
    lines = ["[instance]", f"means = {_join(setup.means)}", f"dist_kind = {setup.dist_kind.value}", ""]

    lines.append("[channel]")
    if setup.epsilons is not None:
        lines.append(f"epsilons = {_join(setup.epsilons)}")
    else:
        lines.append(f"epsilon = {setup.epsilon!r}")
    lines.append(f"fallback = {setup.fallback.value}")
    if setup.fixed_arm is not None:
        lines.append(f"fixed_arm = {setup.fixed_arm}")
    lines.append("")

    lines += ["[policy]", f"kind = {setup.policy.value}", f"c_prime = {setup.c_prime!r}", ""]

    lines += ["[run]", f"T = {setup.horizon}", f"reps = {setup.reps}", f"seed = {setup.seed}"]
    if setup.checkpoints is not None:
        lines.append(f"checkpoints = {', '.join(str(c) for c in setup.checkpoints)}")

    if setup.output_dir is not None:
        lines += ["", "[output]", f"directory = {setup.output_dir}"]
    return "\n".join(lines) + "\n"


def config_hash(setup: ExperimentSetup) -> str:
    """12-hex-digit SHA-256 prefix of the canonical rendering."""
    return fingerprint(render_config(setup))


def setup_fingerprint(setup: ExperimentSetup) -> str:
    """``config_hash`` with the output directory left out, so results do not depend on where they go."""
    return config_hash(setup.model_copy(update={"output_dir": None}))


def apply_overrides(setup: ExperimentSetup, reps: Optional[int] = None, seed: Optional[int] = None,
                    output_dir: Optional[str] = None) -> ExperimentSetup:
    """Command-line flags win over document values."""
    fields = setup.model_dump()
    if reps is not None:
        fields["reps"] = reps
    if seed is not None:
        fields["seed"] = seed
    if output_dir is not None:
        fields["output_dir"] = output_dir
    try:
        return ExperimentSetup.model_validate(fields)
    except ValidationError as exc:
        raise _convert(exc, "flags") from exc
