"""Sampled 2*pi-periodic functions and their non-increasing rearrangements.

A :class:`GridFunction` of ``m`` variables stores its samples in a numpy array of
shape ``(N_m, ..., N_1)``: row-major with axis ``m`` slowest, so axis 1 is the last
numpy axis. The sample ``values[i_m, ..., i_1]`` sits at ``x_j = 2*pi*i_j/N_j``.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Sequence, Tuple

import numpy as np

from lkapprox.spaces.errors import CatalogError, DomainError, LKError

logger = logging.getLogger(__name__)

MAX_DIMS = 4


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Uniformly sampled periodic function of ``dims`` variables."""

    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=complex if np.iscomplexobj(self.values) else float)
        if values.ndim < 1 or values.ndim > MAX_DIMS:
            raise DomainError(f"grid functions support 1..{MAX_DIMS} variables, got {values.ndim}")
        if values.size == 0:
            raise DomainError("grid function needs at least one sample per axis")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def dims(self) -> int:
        return self.values.ndim

    @property
    def sizes(self) -> Tuple[int, ...]:
        """Per-axis sample counts ``(N_1, ..., N_m)``."""
        return tuple(reversed(self.values.shape))

    def numpy_axis(self, axis: int) -> int:
        """Numpy axis holding variable ``axis`` (1-based)."""
        if not 1 <= axis <= self.dims:
            raise DomainError(f"axis must be in 1..{self.dims}, got {axis}")
        return self.dims - axis

    def modulus(self) -> np.ndarray:
        return np.abs(self.values)

    def __add__(self, other: "GridFunction") -> "GridFunction":
        if not isinstance(other, GridFunction):
            return NotImplemented
        return GridFunction(self.values + other.values)

    def scaled(self, factor: complex) -> "GridFunction":
        return GridFunction(self.values * factor)


@dataclass(frozen=True, eq=False)
class RearrangedProfile:
    """Non-increasing step function on ``(0, 1]`` with equal-measure steps."""

    steps: np.ndarray

    def __post_init__(self):
        steps = np.array(self.steps, dtype=float)
        steps.setflags(write=False)
        object.__setattr__(self, "steps", steps)

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def measure(self) -> float:
        """Measure carried by each step."""
        return 1.0 / len(self.steps)


def grid_nodes(sizes: Sequence[int]) -> Tuple[np.ndarray, ...]:
    """Coordinates ``x_1, ..., x_m`` broadcastable to the value shape ``(N_m, ..., N_1)``."""
    dims = len(sizes)
    nodes = []
    for axis, size in enumerate(sizes, start=1):
        shape = [1] * dims
        shape[dims - axis] = size
        nodes.append((2 * np.pi * np.arange(size) / size).reshape(shape))
    return tuple(nodes)


def rearrange_1d(values: Sequence[complex]) -> RearrangedProfile:
    """Non-increasing rearrangement of ``|values|``.

    Raises:
        DomainError: If ``values`` is empty
    """
    moduli = np.abs(np.asarray(values)).ravel()
    if moduli.size == 0:
        raise DomainError("cannot rearrange an empty sequence")
    return RearrangedProfile(np.sort(moduli, kind="stable")[::-1])


def rearrange_axis(f: GridFunction, axis: int) -> GridFunction:
    """Replace every fiber along ``axis`` by its non-increasing rearrangement.

    Raises:
        DomainError: If ``axis`` is not in ``1..f.dims``
    """
    np_axis = f.numpy_axis(axis)
    ordered = np.sort(f.modulus(), axis=np_axis, kind="stable")
    return GridFunction(np.flip(ordered, axis=np_axis))


def iterated_rearrangement(f: GridFunction) -> GridFunction:
    """Rearrange along axes ``1, 2, ..., m`` in turn."""
    result = f
    for axis in range(1, f.dims + 1):
        result = rearrange_axis(result, axis)
    return result


@dataclass(frozen=True)
class TestFunction:
    """Closed-form catalog entry, e.g. ``TestFunction("exponential", {"k": (1, 0)})``."""

    __test__ = False

    name: str
    params: Dict[str, Any] = field(default_factory=dict)


def _zero(params: Dict[str, Any], nodes: Tuple[np.ndarray, ...]) -> np.ndarray:
    return np.zeros(np.broadcast_shapes(*(x.shape for x in nodes)))


def _constant(params: Dict[str, Any], nodes: Tuple[np.ndarray, ...]) -> np.ndarray:
    return np.full(np.broadcast_shapes(*(x.shape for x in nodes)), params.get("value", 1.0))


def _frequency(k: Any, dims: int) -> Tuple[int, ...]:
    """Integer frequency vector; a scalar applies to every axis."""
    if isinstance(k, (int, float)):
        k = (k,) * dims
    if isinstance(k, str):
        raise CatalogError(f"frequency must be a number or a list of numbers, got {k!r}")
    try:
        frequency = tuple(float(v) for v in k)
    except (TypeError, ValueError) as e:
        raise CatalogError(f"frequency must be a number or a list of numbers, got {k!r}") from e
    if any(v != int(v) for v in frequency):
        raise CatalogError(f"frequencies must be integers, got {k!r}")
    if len(frequency) != dims:
        raise DomainError(f"frequency {tuple(k)} does not have {dims} components")
    return tuple(int(v) for v in frequency)


def _exponential_term(k: Any, nodes: Tuple[np.ndarray, ...]) -> np.ndarray:
    k = _frequency(k, len(nodes))
    phase = sum(kj * xj for kj, xj in zip(k, nodes))
    return np.exp(1j * phase)


def _exponential(params: Dict[str, Any], nodes: Tuple[np.ndarray, ...]) -> np.ndarray:
    return params.get("amplitude", 1.0) * _exponential_term(params["k"], nodes)


def _trig_sum(params: Dict[str, Any], nodes: Tuple[np.ndarray, ...]) -> np.ndarray:
    frequencies = params["k"]
    amplitudes = params.get("amplitude", [1.0] * len(frequencies))
    total = _zero(params, nodes).astype(complex)
    for amplitude, k in zip(amplitudes, frequencies):
        total = total + amplitude * _exponential_term(k, nodes)
    return total


def _plateau(params: Dict[str, Any], nodes: Tuple[np.ndarray, ...]) -> np.ndarray:
    fraction = params.get("fraction", 0.5)
    fractions = fraction if isinstance(fraction, (list, tuple)) else [fraction] * len(nodes)
    inside = np.ones(np.broadcast_shapes(*(x.shape for x in nodes)), dtype=bool)
    for frac, x in zip(fractions, nodes):
        inside = inside & (x < 2 * np.pi * frac)
    return params.get("height", 1.0) * inside.astype(float)


CATALOG: Dict[str, Callable[[Dict[str, Any], Tuple[np.ndarray, ...]], np.ndarray]] = {
    "zero": _zero,
    "constant": _constant,
    "exponential": _exponential,
    "trig_sum": _trig_sum,
    "plateau": _plateau,
}


def sample(expr: TestFunction, sizes: Sequence[int]) -> GridFunction:
    """Sample a catalog test function on the uniform grid with ``sizes``.

    Raises:
        CatalogError: If ``expr.name`` is not in :data:`CATALOG` or its parameters are malformed
        DomainError: If a size is below 1
    """
    if expr.name not in CATALOG:
        raise CatalogError(f"unknown catalog entry {expr.name!r}; known: {sorted(CATALOG)}")
    if not sizes or any(int(n) < 1 for n in sizes):
        raise DomainError(f"grid sizes must all be >= 1, got {tuple(sizes)}")

    nodes = grid_nodes([int(n) for n in sizes])
    try:
        values = CATALOG[expr.name](expr.params, nodes)
    except LKError:
        raise
    except KeyError as e:
        raise CatalogError(f"catalog entry {expr.name!r} needs the parameter {e}") from e
    except (TypeError, ValueError) as e:
        raise CatalogError(f"bad parameters {expr.params} for {expr.name!r}: {e}") from e
    logger.debug("sampled %s on grid %s", expr.name, tuple(sizes))
    return GridFunction(np.broadcast_to(values, tuple(reversed([int(n) for n in sizes]))))
