"""Fourier analysis of grid functions and dyadic frequency-index combinatorics.

Frequencies ``k = (k_1, ..., k_m)`` are stored sparsely as an ``(K, m)`` integer index
array (column ``j - 1`` holds ``k_j``) plus a coefficient array, rows sorted
lexicographically. Block indices ``s`` are plain tuples of non-negative integers.

Inner products ``<s, gamma>`` are compared against the threshold ``n`` exactly when
``gamma`` and ``n`` are rationals with small denominators (they are scaled to integers),
and with the absolute tolerance :data:`DOT_TOL` otherwise.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import fft

from lkapprox.spaces.errors import AliasingError, DimensionMismatchError, DomainError
from lkapprox.spaces.grid import GridFunction

logger = logging.getLogger(__name__)

DOT_TOL = 1e-9
MAX_DENOMINATOR = 1000

BlockIndex = Tuple[int, ...]


@dataclass(frozen=True, eq=False)
class SpectralFunction:
    """Trigonometric polynomial ``sum_k a_k exp(i <k, x>)`` with finite support."""

    dims: int
    indices: np.ndarray
    coeffs: np.ndarray

    def __post_init__(self):
        if not 1 <= self.dims:
            raise DomainError(f"dims must be positive, got {self.dims}")
        indices = np.asarray(self.indices, dtype=np.int64).reshape(-1, self.dims)
        coeffs = np.asarray(self.coeffs, dtype=complex).ravel()
        if len(indices) != len(coeffs):
            raise DimensionMismatchError(
                f"{len(indices)} frequencies but {len(coeffs)} coefficients"
            )

        if len(indices):
            unique, inverse = np.unique(indices, axis=0, return_inverse=True)
            merged = np.zeros(len(unique), dtype=complex)
            np.add.at(merged, inverse.ravel(), coeffs)
            keep = merged != 0
            indices, coeffs = unique[keep], merged[keep]

        indices.setflags(write=False)
        coeffs.setflags(write=False)
        object.__setattr__(self, "indices", indices)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def empty(cls, dims: int) -> "SpectralFunction":
        return cls(dims, np.zeros((0, dims), dtype=np.int64), np.zeros(0, dtype=complex))

    @classmethod
    def from_mapping(
        cls, mapping: Mapping[Tuple[int, ...], complex], dims: Optional[int] = None
    ) -> "SpectralFunction":
        """Build from ``{(k_1, ..., k_m): a_k}``; ``dims`` is required when empty."""
        if dims is None:
            if not mapping:
                raise DomainError("dims is required for an empty spectrum")
            dims = len(next(iter(mapping)))
        keys = list(mapping)
        return cls(dims, np.array(keys, dtype=np.int64).reshape(-1, dims), [mapping[k] for k in keys])

    def __len__(self) -> int:
        return len(self.coeffs)

    @property
    def is_empty(self) -> bool:
        return len(self.coeffs) == 0

    @property
    def bandwidth(self) -> Tuple[int, ...]:
        """Per-axis maximum ``|k_j|`` (zeros for an empty spectrum)."""
        if self.is_empty:
            return (0,) * self.dims
        return tuple(int(b) for b in np.max(np.abs(self.indices), axis=0))

    def as_dict(self) -> Dict[Tuple[int, ...], complex]:
        return {tuple(int(k) for k in row): complex(c) for row, c in zip(self.indices, self.coeffs)}

    def coefficient(self, k: Sequence[int]) -> complex:
        """``a_k``, zero outside the support."""
        if len(k) != self.dims:
            raise DimensionMismatchError(f"frequency {tuple(k)} does not have {self.dims} components")
        hits = np.flatnonzero(np.all(self.indices == np.asarray(k), axis=1))
        return complex(self.coeffs[hits[0]]) if len(hits) else 0j

    def restrict(self, mask: np.ndarray) -> "SpectralFunction":
        """Keep the coefficients selected by the boolean ``mask``."""
        return SpectralFunction(self.dims, self.indices[mask], self.coeffs[mask])

    def scaled(self, factor: complex) -> "SpectralFunction":
        return SpectralFunction(self.dims, self.indices, self.coeffs * factor)

    def _check_compatible(self, other: "SpectralFunction") -> None:
        if other.dims != self.dims:
            raise DimensionMismatchError(f"cannot combine {self.dims}- and {other.dims}-variate spectra")

    def __add__(self, other: "SpectralFunction") -> "SpectralFunction":
        if not isinstance(other, SpectralFunction):
            return NotImplemented
        self._check_compatible(other)
        return SpectralFunction(
            self.dims,
            np.concatenate([self.indices, other.indices]),
            np.concatenate([self.coeffs, other.coeffs]),
        )

    def __sub__(self, other: "SpectralFunction") -> "SpectralFunction":
        if not isinstance(other, SpectralFunction):
            return NotImplemented
        return self + other.scaled(-1.0)


def _signed_frequencies(size: int) -> np.ndarray:
    return np.rint(fft.fftfreq(size) * size).astype(np.int64)


def analyze(f: GridFunction, atol: float = 0.0) -> SpectralFunction:
    """Discrete Fourier coefficients ``a_k = mean_x f(x) exp(-i <k, x>)``.

    Exact for trigonometric polynomials whose bandwidth is below the Nyquist limit of
    the grid. Coefficients with ``|a_k| <= atol`` are dropped.
    """
    transformed = fft.fftn(f.values, norm="forward")
    positions = np.nonzero(np.abs(transformed) > atol)
    columns = [
        _signed_frequencies(transformed.shape[axis])[positions[axis]]
        for axis in reversed(range(f.dims))
    ]
    indices = np.stack(columns, axis=1) if columns else np.zeros((0, f.dims), dtype=np.int64)
    return SpectralFunction(f.dims, indices, transformed[positions])


def synthesize(g: SpectralFunction, sizes: Sequence[int]) -> GridFunction:
    """Sample ``sum_k a_k exp(i <k, x>)`` on the grid with per-axis ``sizes``.

    Raises:
        DimensionMismatchError: If ``len(sizes) != g.dims``
        AliasingError: If some ``sizes[j] < 2 * bandwidth_j + 1``
    """
    sizes = tuple(int(n) for n in sizes)
    if len(sizes) != g.dims:
        raise DimensionMismatchError(f"need {g.dims} grid sizes, got {len(sizes)}")
    for axis, (size, bw) in enumerate(zip(sizes, g.bandwidth), start=1):
        if size < 2 * bw + 1:
            raise AliasingError(
                f"grid size {size} on axis {axis} aliases bandwidth {bw}; need >= {2 * bw + 1}"
            )

    spectrum = np.zeros(tuple(reversed(sizes)), dtype=complex)
    if not g.is_empty:
        position = tuple(g.indices[:, j] % sizes[j] for j in reversed(range(g.dims)))
        spectrum[position] = g.coeffs
    return GridFunction(fft.ifftn(spectrum, norm="forward"))


def minimal_sizes(bandwidth: Sequence[int], oversample: int = 1) -> Tuple[int, ...]:
    """Smallest powers of two holding ``oversample * (2 * bandwidth_j + 1)`` samples."""
    if oversample < 1:
        raise DomainError(f"oversample must be >= 1, got {oversample}")
    return tuple(1 << (oversample * (2 * int(bw) + 1) - 1).bit_length() for bw in bandwidth)


def block_of(k: Sequence[int]) -> BlockIndex:
    """Dyadic block ``s`` with ``k`` in ``rho(s)``."""
    return tuple(int(s) for s in np.frexp(np.abs(np.asarray(k, dtype=float)))[1])


def block_indices(indices: np.ndarray) -> np.ndarray:
    """Row-wise :func:`block_of` for an ``(K, m)`` frequency array."""
    return np.frexp(np.abs(indices).astype(float))[1].astype(np.int64)


def _check_block(s: Sequence[int]) -> BlockIndex:
    block = tuple(int(v) for v in s)
    if any(v < 0 for v in block) or not block:
        raise DomainError(f"block index must be a nonempty tuple of non-negative ints, got {tuple(s)}")
    return block


def _rho_axis(s: int) -> np.ndarray:
    if s == 0:
        return np.zeros(1, dtype=np.int64)
    positive = np.arange(1 << (s - 1), 1 << s, dtype=np.int64)
    return np.concatenate([-positive[::-1], positive])


def rho_size(s: Sequence[int]) -> int:
    return math.prod(1 if v == 0 else 1 << v for v in _check_block(s))


def rho_set(s: Sequence[int]) -> np.ndarray:
    """Frequencies with ``[2**(s_j - 1)] <= |k_j| < 2**s_j``, as a lexicographic ``(K, m)`` array."""
    block = _check_block(s)
    axes = np.meshgrid(*(_rho_axis(v) for v in block), indexing="ij")
    return np.stack([a.ravel() for a in axes], axis=1)


def dyadic_block(g: SpectralFunction, s: Sequence[int]) -> SpectralFunction:
    """Restriction of ``g`` to ``rho(s)``."""
    block = _check_block(s)
    if len(block) != g.dims:
        raise DimensionMismatchError(f"block {block} does not have {g.dims} components")
    if g.is_empty:
        return g
    return g.restrict(np.all(block_indices(g.indices) == np.asarray(block), axis=1))


def block_decomposition(g: SpectralFunction) -> Dict[BlockIndex, SpectralFunction]:
    """Nonzero dyadic blocks of ``g`` keyed by ``s`` in lexicographic order."""
    if g.is_empty:
        return {}
    blocks = block_indices(g.indices)
    present = np.unique(blocks, axis=0)
    return {
        tuple(int(v) for v in s): g.restrict(np.all(blocks == s, axis=1)) for s in present
    }


def _as_fraction(value: float) -> Optional[Fraction]:
    candidate = Fraction(value).limit_denominator(MAX_DENOMINATOR)
    return candidate if abs(float(candidate) - value) <= 1e-12 * max(1.0, abs(value)) else None


@dataclass(frozen=True)
class CrossSpec:
    """Stepped hyperbolic cross ``Q_n^gamma``: blocks with ``<s, gamma> < n``."""

    gamma: Tuple[float, ...]
    n: float

    def __post_init__(self):
        gamma = tuple(float(g) for g in self.gamma)
        if not gamma or any(not g > 0 for g in gamma):
            raise DomainError(f"gamma entries must be positive, got {gamma}")
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "n", float(self.n))

    @property
    def dims(self) -> int:
        return len(self.gamma)

    def comparator(self) -> "DotComparator":
        return DotComparator(self.gamma, self.n)


class DotComparator:
    """Sign of ``<s, gamma> - n``, exact for small-denominator rationals."""

    def __init__(self, gamma: Sequence[float], n: float):
        self.gamma = tuple(float(g) for g in gamma)
        self.n = float(n)
        fractions = [_as_fraction(v) for v in (*self.gamma, self.n)]
        if all(f is not None for f in fractions):
            denominator = math.lcm(*(f.denominator for f in fractions))
            scaled = [int(f * denominator) for f in fractions]
            self.integer_gamma: Optional[np.ndarray] = np.array(scaled[:-1], dtype=np.int64)
            self.integer_n = scaled[-1]
        else:
            self.integer_gamma = None
            self.integer_n = 0

    @property
    def exact(self) -> bool:
        return self.integer_gamma is not None

    def signs(self, blocks: np.ndarray) -> np.ndarray:
        """Row-wise sign of ``<s, gamma> - n`` for an ``(K, m)`` block array."""
        blocks = np.asarray(blocks, dtype=np.int64).reshape(-1, len(self.gamma))
        if self.integer_gamma is not None:
            return np.sign(blocks @ self.integer_gamma - self.integer_n)
        difference = blocks @ np.asarray(self.gamma) - self.n
        return np.where(np.abs(difference) <= DOT_TOL, 0, np.sign(difference)).astype(np.int64)

    def sign(self, s: Sequence[int]) -> int:
        return int(self.signs(np.asarray(s))[0])


def _walk(
    comparator: DotComparator, dims: int, prefix: Tuple[int, ...], strict: bool
) -> Iterator[BlockIndex]:
    if len(prefix) == dims:
        sign = comparator.sign(prefix)
        if (strict and sign < 0) or (not strict and sign == 0):
            yield prefix
        return
    padding = (0,) * (dims - len(prefix) - 1)
    for value in itertools.count():
        sign = comparator.sign(prefix + (value,) + padding)
        if sign > 0 or (strict and sign == 0):
            break
        yield from _walk(comparator, dims, prefix + (value,), strict)


def cross_blocks(spec: CrossSpec) -> List[BlockIndex]:
    """Blocks ``s`` in ``Z_+^m`` with ``<s, gamma> < n``, lexicographic."""
    return list(_walk(spec.comparator(), spec.dims, (), strict=True))


def shell_kappa(spec: CrossSpec) -> List[BlockIndex]:
    """Blocks with ``<s, gamma> = n``, lexicographic; possibly empty."""
    blocks = list(_walk(spec.comparator(), spec.dims, (), strict=False))
    if not blocks:
        logger.info("kappa set is empty for gamma=%s, n=%g", spec.gamma, spec.n)
    return blocks


def _caps(s_cap: Union[int, Sequence[int]], dims: int) -> Tuple[int, ...]:
    caps = (int(s_cap),) * dims if isinstance(s_cap, (int, np.integer)) else tuple(int(c) for c in s_cap)
    if len(caps) != dims:
        raise DimensionMismatchError(f"need {dims} caps, got {len(caps)}")
    if any(c < 0 for c in caps):
        raise DomainError(f"caps must be non-negative, got {caps}")
    return caps


def capped_box(s_cap: Union[int, Sequence[int]], dims: int) -> np.ndarray:
    """All blocks with ``0 <= s_j <= cap_j`` as a lexicographic ``(K, m)`` array."""
    caps = _caps(s_cap, dims)
    axes = np.meshgrid(*(np.arange(c + 1, dtype=np.int64) for c in caps), indexing="ij")
    return np.stack([a.ravel() for a in axes], axis=1)


def shell_Y(spec: CrossSpec, s_cap: Union[int, Sequence[int]]) -> List[BlockIndex]:
    """Truncated complement ``{s : <s, gamma> >= n, s_j <= cap_j}``, lexicographic."""
    box = capped_box(s_cap, spec.dims)
    selected = box[spec.comparator().signs(box) >= 0]
    return [tuple(int(v) for v in s) for s in selected]


def cross_mask(g: SpectralFunction, spec: CrossSpec) -> np.ndarray:
    """Boolean mask of the coefficients of ``g`` whose frequency lies in ``Q_n^gamma``."""
    if spec.dims != g.dims:
        raise DimensionMismatchError(f"cross is {spec.dims}-variate, spectrum {g.dims}-variate")
    if g.is_empty:
        return np.zeros(0, dtype=bool)
    return spec.comparator().signs(block_indices(g.indices)) < 0


def project_onto_cross(g: SpectralFunction, spec: CrossSpec) -> SpectralFunction:
    """Partial Fourier sum of ``g`` over the hyperbolic cross ``Q_n^gamma``."""
    return g.restrict(cross_mask(g, spec))


def cross_residual(g: SpectralFunction, spec: CrossSpec) -> SpectralFunction:
    """``g`` minus its cross projection; its spectrum lies outside ``Q_n^gamma``."""
    return g.restrict(~cross_mask(g, spec))


def cross_size(spec: CrossSpec) -> int:
    """Number of frequencies in ``Q_n^gamma``."""
    return sum(rho_size(s) for s in cross_blocks(spec))
