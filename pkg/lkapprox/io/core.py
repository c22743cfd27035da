"""Core data structures for experiment configuration."""

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from lkapprox.bounds.lemmas import DEFAULT_TAIL_TOL, LemmaParams
from lkapprox.spaces.besov import BesovParams, TheoremParams
from lkapprox.spaces.errors import ParseError
from lkapprox.spaces.grid import TestFunction
from lkapprox.spaces.norms import SpaceParams
from lkapprox.spaces.svfun import C_SLACK, WeightV

KINDS = (
    "norm",
    "cross",
    "block-norm",
    "lemma1",
    "lemma2",
    "theorem1-lower",
    "theorem1-upper",
    "sv-check",
)

KNOWN_KEYS = frozenset(
    {
        "kind", "m", "p", "q", "tau", "tau2", "r", "theta", "eps", "alpha", "gamma",
        "gamma_prime", "weights", "weights2", "n", "s_max", "window", "grid", "tail_tol",
        "slack", "function", "k", "amplitude", "height", "fraction", "value", "recipe",
        "limit", "bound", "n0", "oversample", "sizes",
    }
)

DEFAULT_WINDOWS = {
    "lemma1": (10, 25),
    "lemma2": (10, 25),
    "theorem1-lower": (3, 7),
    "theorem1-upper": (3, 7),
}


def parse_window(text: str) -> Tuple[int, int]:
    """Parse ``"a:b"`` into an inclusive ``(a, b)`` window."""
    try:
        first, last = (int(part) for part in str(text).split(":"))
    except ValueError as e:
        raise ParseError(f"window must look like 'a:b', got {text!r}") from e
    if first > last:
        raise ParseError(f"window start {first} exceeds its end {last}")
    return first, last


@dataclass
class ExperimentConfig:
    """One experiment: its kind, its flat parameter document and where results go.

    Attributes:
        kind: Experiment kind, one of :data:`KINDS`
        values: Parsed ``key = value`` entries
        out: Output directory for CSV and plot-data artifacts
        source: Config file the values came from, if any
    """

    kind: str
    values: Dict[str, Any] = field(default_factory=dict)
    out: Path = Path(".")
    source: Optional[Path] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ParseError(f"unknown experiment kind {self.kind!r}; expected one of {KINDS}")
        self.out = Path(self.out)

    @classmethod
    def from_args(cls, args: Any, values: Optional[Dict[str, Any]] = None) -> "ExperimentConfig":
        """Merge command-line overrides (kind, ``--out``, ``--window``, ``--grid``) into ``values``."""
        merged = dict(values or {})
        kind = getattr(args, "kind", None) or merged.get("kind")
        if kind is None:
            raise ParseError("no experiment kind given on the command line or in the config")
        if getattr(args, "window", None):
            merged["window"] = args.window
        if getattr(args, "grid", None):
            merged["grid"] = args.grid
        source = getattr(args, "config", None)
        return cls(
            kind=kind,
            values=merged,
            out=Path(getattr(args, "out", None) or "."),
            source=Path(source) if source else None,
        )

    def has(self, key: str) -> bool:
        return key in self.values

    def get(self, key: str, default: Any = None) -> Any:
        return self.values.get(key, default)

    def _require(self, key: str) -> Any:
        if key not in self.values:
            raise ParseError(f"{self.kind} experiment needs the key {key!r}")
        return self.values[key]

    def get_float(self, key: str, default: Optional[float] = None) -> float:
        if key not in self.values and default is None:
            self._require(key)
        value = self.values.get(key, default)
        try:
            return float(value)
        except (TypeError, ValueError) as e:
            raise ParseError(f"{key} must be a number, got {value!r}") from e

    def get_int(self, key: str, default: Optional[int] = None) -> int:
        value = self.get_float(key, default)
        if value != int(value):
            raise ParseError(f"{key} must be an integer, got {value!r}")
        return int(value)

    @property
    def dims(self) -> int:
        """``m``, or the length of the first per-axis list present."""
        if "m" in self.values:
            return self.get_int("m")
        for key in ("p", "gamma", "sizes", "k", "weights"):
            value = self.values.get(key)
            if isinstance(value, list) and value and not isinstance(value[0], list):
                return len(value)
        return 1

    def get_floats(self, key: str, default: Any = None) -> Tuple[float, ...]:
        """Per-axis list; a scalar is repeated over all axes."""
        if key not in self.values and default is None:
            self._require(key)
        value = self.values.get(key, default)
        items = value if isinstance(value, list) else [value] * self.dims
        if len(items) != self.dims:
            raise ParseError(f"{key} needs {self.dims} entries, got {len(items)}")
        try:
            return tuple(float(v) for v in items)
        except (TypeError, ValueError) as e:
            raise ParseError(f"{key} must hold numbers, got {value!r}") from e

    def get_ints(self, key: str, default: Any = None) -> Tuple[int, ...]:
        values = self.get_floats(key, default)
        if any(v != int(v) for v in values):
            raise ParseError(f"{key} must hold integers, got {values}")
        return tuple(int(v) for v in values)

    def get_weights(self, key: str) -> Tuple[WeightV, ...]:
        """Per-axis weights from SV encodings; ``V == 1`` when the key is absent."""
        value = self.values.get(key, "1")
        items = value if isinstance(value, list) else [value] * self.dims
        if len(items) != self.dims:
            raise ParseError(f"{key} needs {self.dims} entries, got {len(items)}")
        return tuple(WeightV.parse(str(v)) for v in items)

    def get_window(self) -> List[int]:
        """Tabulated ``n`` values; ``window`` may be ``"a:b"`` or an explicit list."""
        value = self.values.get("window")
        if isinstance(value, list):
            return [int(v) for v in value]
        if value is None:
            if self.kind not in DEFAULT_WINDOWS:
                raise ParseError(f"{self.kind} experiment needs a window")
            first, last = DEFAULT_WINDOWS[self.kind]
        else:
            first, last = parse_window(value)
        return list(range(first, last + 1))

    def get_sizes(self) -> Optional[Tuple[int, ...]]:
        """Explicit grid: ``sizes`` per axis, else ``grid`` on every axis, else ``None``."""
        if "sizes" in self.values:
            return self.get_ints("sizes")
        if "grid" in self.values:
            return (self.get_int("grid"),) * self.dims
        return None

    def get_optional_float(self, key: str) -> Optional[float]:
        return self.get_float(key) if key in self.values else None

    def get_optional_int(self, key: str) -> Optional[int]:
        return self.get_int(key) if key in self.values else None

    def space_params(self) -> SpaceParams:
        """Source space ``(p, tau, weights)``; ``tau`` defaults to ``p``."""
        p = self.get_floats("p")
        return SpaceParams(p=p, tau=self.get_floats("tau", list(p)), weights=self.get_weights("weights"))

    def target_params(self) -> SpaceParams:
        """Target space ``(q, tau2, weights2)``; ``tau2`` defaults to ``q``."""
        q = self.get_floats("q")
        return SpaceParams(
            p=q, tau=self.get_floats("tau2", list(q)), weights=self.get_weights("weights2")
        )

    def theorem_params(self) -> TheoremParams:
        source = BesovParams(
            space=self.space_params(), r=self.get_floats("r"), theta=self.get_floats("theta")
        )
        return TheoremParams(
            source=source,
            target=self.target_params(),
            gamma_prime=self.get_floats("gamma_prime", [1.0] * self.dims),
        )

    def lemma_params(self) -> LemmaParams:
        """``theta`` for lemma1, ``eps`` for lemma2; ``gamma'`` defaults to ``gamma``."""
        gamma = self.get_floats("gamma")
        exponent_key = "eps" if self.kind == "lemma2" else "theta"
        return LemmaParams(
            alpha=self.get_float("alpha"),
            gamma=gamma,
            gamma_prime=self.get_floats("gamma_prime", list(gamma)),
            exponents=self.get_floats(exponent_key),
            weights=self.get_weights("weights"),
        )

    def test_function(self) -> TestFunction:
        name = str(self._require("function"))
        params = {
            key: self.values[key]
            for key in ("k", "amplitude", "height", "fraction", "value")
            if key in self.values
        }
        return TestFunction(name, params)

    @property
    def tail_tol(self) -> float:
        return self.get_float("tail_tol", DEFAULT_TAIL_TOL)

    @property
    def slack(self) -> float:
        return self.get_float("slack", C_SLACK)

    def echo(self) -> Dict[str, Any]:
        """Parameter echo for artifact headers, in a stable key order."""
        echo = {"kind": self.kind}
        for key in sorted(self.values):
            if key != "kind":
                echo[key] = self.values[key]
        return echo


def format_value(value: Any) -> str:
    """Render a value in the config syntax."""
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(format_value(v) for v in value) + "]"
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return repr(value)
    return str(value)
