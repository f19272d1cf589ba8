"""Typed settings for every stage of a featurefinch run.

Values come from three layers: built-in defaults, the flat config file
and command-line flags, with later layers overriding earlier ones.
"""
import json
from typing import Any, ClassVar, Dict, List, Literal, Optional

from pydantic import BaseModel, Extra, ValidationError, validator

from featurefinch import __version__
from featurefinch.config.exceptions import SettingsError

DEFAULT_EXCLUSIONS = ["*_spec__*", "spec__*", "__automaton_fail"]


class Settings(BaseModel):
    """Base class for settings models."""

    class Config:
        """Reject unknown fields."""

        extra = Extra.forbid
        validate_assignment = True


class EngineConfig(Settings):
    """Settings of the symbolic execution engine.

    Attributes:
        timeout_secs: Wall clock budget for one product.
        max_paths: Budget of terminated paths for one product.
        longest: Number of longest call sequences kept per normal path.
        loop_bound: Number of times a loop body is unrolled.
        search: Worklist order.
        store_key_mode: Whether the store map is keyed by object
            or by (object, offset).
        feasibility_budget: Largest domain product enumerated exactly.
        seed: Seed for any randomised choice.
    """

    timeout_secs: float = 60.0
    max_paths: int = 100000
    longest: int = 10
    loop_bound: int = 8
    search: Literal["dfs", "bfs"] = "dfs"
    store_key_mode: Literal["base-address", "object-offset"] = "base-address"
    feasibility_budget: int = 4096
    seed: int = 0

    @validator("timeout_secs")
    def check_timeout(cls, value: float) -> float:  # noqa: N805
        """Require a positive timeout."""
        if value <= 0:
            raise ValueError("timeout-secs must be positive")
        return value

    @validator("max_paths", "longest", "loop_bound", "feasibility_budget")
    def check_positive(cls, value: int, field: Any) -> int:  # noqa: N805
        """Require a count of at least one."""
        if value < 1:
            name = field.name.replace("_", "-")
            raise ValueError(f"{name} must be at least 1")
        return value


class MineConfig(Settings):
    """Settings of the association rule miner.

    Attributes:
        min_support: Smallest support of a frequent itemset.
        min_confidence: Smallest confidence of a reported rule.
        max_size: Largest itemset size.
        locator: How dependency endpoints are mapped to features.
        role_separator: Marker between a function base name and its
            feature in name mode.
    """

    min_support: float = 0.01
    min_confidence: float = 0.6
    max_size: int = 2
    locator: Literal["directive", "name"] = "directive"
    role_separator: str = "__role__"

    @validator("min_support")
    def check_support(cls, value: float) -> float:  # noqa: N805
        """Require 0 < min-support <= 1."""
        if not 0 < value <= 1:
            raise ValueError("min-support must be in (0, 1]")
        return value

    @validator("min_confidence")
    def check_confidence(cls, value: float) -> float:  # noqa: N805
        """Require 0 <= min-confidence <= 1."""
        if not 0 <= value <= 1:
            raise ValueError("min-confidence must be in [0, 1]")
        return value

    @validator("max_size")
    def check_size(cls, value: int) -> int:  # noqa: N805
        """Require itemsets of at least one item."""
        if value < 1:
            raise ValueError("max-size must be at least 1")
        return value


class LearnConfig(Settings):
    """Settings of the classification pipeline.

    Attributes:
        source: Which tokens make up a trace document.
        model: Classifier kind.
        k_neighbors: Neighbours considered by SMOTE.
        test_fraction: Share of the corpus held out for testing.
        repeats: Repeats of cross validation.
        folds: Folds per repeat.
        nb_alpha: Additive smoothing of naive Bayes.
        svm_lambda: Regularisation of the linear SVM.
        svm_epochs: Passes of stochastic subgradient descent.
        rf_trees: Number of trees in the forest.
        rf_max_depth: Depth limit of each tree.
        top_k: Tokens kept by importance-guided retraining.
        fractions: Head fractions removed by the partial data run.
        timings: Whether reports carry measured train and predict times.
        seed: Seed of splits, sampling and training.
    """

    source: Literal["stack", "constraints", "combined"] = "combined"
    model: Literal["nb", "svm", "rf"] = "svm"
    k_neighbors: int = 5
    test_fraction: float = 0.2
    repeats: int = 5
    folds: int = 10
    nb_alpha: float = 1.0
    svm_lambda: float = 1e-4
    svm_epochs: int = 50
    rf_trees: int = 100
    rf_max_depth: int = 16
    top_k: int = 5
    fractions: List[float] = [0.25, 0.5, 0.75]
    timings: bool = False
    seed: int = 0

    @validator("test_fraction")
    def check_test_fraction(cls, value: float) -> float:  # noqa: N805
        """Require a held out share strictly between 0 and 1."""
        if not 0 < value < 1:
            raise ValueError("test-fraction must be in (0, 1)")
        return value

    @validator(
        "k_neighbors",
        "repeats",
        "folds",
        "svm_epochs",
        "rf_trees",
        "rf_max_depth",
        "top_k",
    )
    def check_count(cls, value: int, field: Any) -> int:  # noqa: N805
        """Require a count of at least one."""
        if value < 1:
            name = field.name.replace("_", "-")
            raise ValueError(f"{name} must be at least 1")
        return value

    @validator("fractions", each_item=True)
    def check_fraction(cls, value: float) -> float:  # noqa: N805
        """Require removal fractions in [0, 1]."""
        if not 0 <= value <= 1:
            raise ValueError("fractions must be in [0, 1]")
        return value


class RunConfig(Settings):
    """Settings of one command, embedded in every report header.

    Attributes:
        pipeline: Name of the command being run.
        engine: Engine settings.
        mine: Miner settings.
        learn: Learner settings.
        exclusions: Function name patterns removed from call sequences.
        inputs: Input paths of the command.
        output: Output directory of the command.
        seed: Seed shared by the engine and the learner.
    """

    pipeline: str = ""
    engine: EngineConfig = EngineConfig()
    mine: MineConfig = MineConfig()
    learn: LearnConfig = LearnConfig()
    exclusions: List[str] = list(DEFAULT_EXCLUSIONS)
    inputs: List[str] = []
    output: Optional[str] = None
    seed: int = 0

    ALIASES: ClassVar[Dict[str, str]] = {"l": "longest"}

    @classmethod
    def from_options(cls, *layers: Dict[str, Any]) -> "RunConfig":
        """Build a RunConfig from flat option layers.

        Each layer maps flat option names (flag names with underscores)
        to values. Later layers override earlier ones; None values are
        skipped so unset flags keep the lower layer's value.

        Args:
            layers: Flat option dictionaries, lowest precedence first.

        Returns:
            RunConfig: Validated settings.

        Raises:
            SettingsError: If an option is unknown or invalid.
        """
        sections = {"engine": {}, "mine": {}, "learn": {}}
        top: Dict[str, Any] = {}
        models = {
            "engine": EngineConfig,
            "mine": MineConfig,
            "learn": LearnConfig,
        }

        for layer in layers:
            for key, value in layer.items():
                if value is None:
                    continue
                name = key.replace("-", "_")
                name = cls.ALIASES.get(name, name)
                if name == "exclusions" and isinstance(value, str):
                    value = [
                        part.strip()
                        for part in value.split(",")
                        if part.strip()
                    ]

                placed = False
                if name in cls.__fields__ and name not in models:
                    top[name] = value
                    placed = True
                for section, model in models.items():
                    if name in model.__fields__:
                        sections[section][name] = value
                        placed = True
                if not placed:
                    raise SettingsError(f"unknown setting '{key}'")

        seed = top.get("seed")
        if seed is not None:
            for section in ("engine", "learn"):
                sections[section].setdefault("seed", seed)

        try:
            return cls(
                **top,
                engine=EngineConfig(**sections["engine"]),
                mine=MineConfig(**sections["mine"]),
                learn=LearnConfig(**sections["learn"]),
            )
        except ValidationError as error:
            raise SettingsError(f"invalid settings: {error}") from error

    def to_json(self) -> str:
        """Render the settings as canonical JSON.

        Returns:
            str: JSON with sorted keys and no whitespace.
        """
        return json.dumps(
            self.dict(), sort_keys=True, separators=(",", ":")
        )

    def to_header(self) -> str:
        """Render the report header lines.

        Returns:
            str: Version line and config line, each newline terminated.
        """
        return f"# featurefinch {__version__}\n# config {self.to_json()}\n"
