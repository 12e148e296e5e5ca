"""Graded homogeneous vector-space structure.

A layout fixes anisotropic dilations x -> t.x acting on layer k by t**p_k,
with rational exponents 1 = p_1 < p_2 < ... < p_d.  Everything downstream
(norms, kernel classes, Fourier conventions) is relative to such a layout.

Conventions:
  * points are flat numpy arrays of length ``layout.dim`` (or stacks of them,
    shape ``(..., dim)``); layer blocks are contiguous coordinate ranges;
  * layer indices in the public API are 1-based, matching the usual notation
    |x|_j for partial norms;
  * exponents, homogeneous dimensions and multiindex lengths are exact
    ``fractions.Fraction`` values -- no floating point enters until a norm is
    actually evaluated.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

Rational = Union[Fraction, int, str]


def as_fraction(value: Rational) -> Fraction:
    """Coerce ints, strings like '3/2', and Fractions to Fraction.

    Floats are rejected: layouts and orders are exact data, and silently
    converting 0.1 to 3602879701896397/36028797018963968 helps nobody.
    """
    if isinstance(value, float):
        raise TypeError(f"refusing inexact float {value!r}; pass an int, Fraction or 'p/q' string")
    return Fraction(value)


@dataclass(frozen=True)
class GradedLayout:
    """Dilation structure: ordered layers of (exponent p_k, dimension n_k).

    ``layers`` may be empty (the scalar layout reached by removing every
    layer of a flag; it carries the empty order vector).  Layouts built via
    :meth:`of` / :meth:`from_spec` additionally enforce p_1 = 1; layouts
    produced by :meth:`remove_layer` keep the inherited exponents, so their
    first exponent need not be 1.
    """

    layers: tuple[tuple[Fraction, int], ...]

    def __post_init__(self) -> None:
        prev = Fraction(0)
        for p, n in self.layers:
            if not isinstance(p, Fraction):
                raise TypeError(f"layer exponent {p!r} is not a Fraction")
            if p <= prev:
                raise ValueError(f"layer exponents must be strictly increasing and positive, got {self.exponents}")
            if not (isinstance(n, int) and n >= 1):
                raise ValueError(f"layer dimension must be a positive integer, got {n!r}")
            prev = p

    @classmethod
    def of(cls, *layers: tuple[Rational, int]) -> "GradedLayout":
        """Build a normalized layout from (p_k, n_k) pairs; requires p_1 = 1."""
        lay = cls(tuple((as_fraction(p), int(n)) for p, n in layers))
        if lay.d and lay.exponents[0] != 1:
            raise ValueError(f"first dilation exponent must be 1, got {lay.exponents[0]}")
        return lay

    @classmethod
    def from_spec(cls, spec: str) -> "GradedLayout":
        """Parse 'p:n,p:n,...' with exact rational p, e.g. '1:2,2:1'."""
        pairs = []
        for item in spec.split(","):
            item = item.strip()
            if not item:
                continue
            try:
                p_str, n_str = item.split(":")
                pairs.append((as_fraction(p_str.strip()), int(n_str.strip())))
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"bad layout item {item!r} (expected 'p:n'): {exc}") from None
        if not pairs:
            raise ValueError(f"empty layout spec {spec!r}")
        return cls.of(*pairs)

    # -- derived structure -------------------------------------------------

    @property
    def d(self) -> int:
        return len(self.layers)

    @property
    def exponents(self) -> tuple[Fraction, ...]:
        return tuple(p for p, _ in self.layers)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(n for _, n in self.layers)

    @property
    def dim(self) -> int:
        return sum(self.dims)

    @property
    def Qk(self) -> tuple[Fraction, ...]:
        return tuple(p * n for p, n in self.layers)

    @property
    def Q(self) -> Fraction:
        return sum(self.Qk, Fraction(0))

    @property
    def layer_slices(self) -> tuple[slice, ...]:
        out, start = [], 0
        for _, n in self.layers:
            out.append(slice(start, start + n))
            start += n
        return tuple(out)

    def coordinate_exponents(self) -> np.ndarray:
        """Float dilation exponent of every coordinate, shape (dim,)."""
        return np.repeat([float(p) for p, _ in self.layers], self.dims)

    def remove_layer(self, j: int) -> "GradedLayout":
        """Layout with 1-based layer j removed (exponents inherited as-is)."""
        self._check_layer(j)
        return GradedLayout(self.layers[: j - 1] + self.layers[j:])

    def _check_layer(self, j: int) -> None:
        if not 1 <= j <= self.d:
            raise ValueError(f"layer index {j} out of range 1..{self.d}")

    def check_point(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape[-1:] != (self.dim,):
            raise ValueError(f"point shape {x.shape} does not match layout dimension {self.dim}")
        return x

    def spec_string(self) -> str:
        return ",".join(f"{p}:{n}" for p, n in self.layers)

    def __str__(self) -> str:
        return f"GradedLayout({self.spec_string()})" if self.layers else "GradedLayout(scalar)"


SCALAR_LAYOUT = GradedLayout(())


def minimal_smooth_exponent(layout: GradedLayout) -> int:
    """Smallest positive integer M with 2M/p_k an even integer for every layer.

    2M/p_k even <=> M/p_k a positive integer; with p_k = a/b in lowest terms
    that means (a / gcd(a, b)) divides M, and a/gcd(a,b) = a since gcd(a,b)=1.
    """
    M = 1
    for p in layout.exponents:
        M = math.lcm(M, p.numerator)
    return M


def validate_smooth_exponent(layout: GradedLayout, M: int) -> None:
    if not (isinstance(M, int) and M >= 1):
        raise ValueError(f"smooth-norm parameter M must be a positive integer, got {M!r}")
    for p in layout.exponents:
        e = Fraction(2 * M) / p
        if e.denominator != 1 or e.numerator % 2 != 0:
            raise ValueError(f"invalid M={M}: 2M/p_k = {e} is not an even integer for p_k = {p}")


def dilate(layout: GradedLayout, t: float, x: np.ndarray) -> np.ndarray:
    """Anisotropic dilation: layer k of x scaled by t**p_k.  Requires t > 0."""
    if not t > 0:
        raise ValueError(f"dilation parameter must be positive, got {t}")
    x = layout.check_point(x)
    return x * np.power(float(t), layout.coordinate_exponents())


def _block_norms(layout: GradedLayout, x: np.ndarray, upto: int | None = None, frm: int | None = None) -> np.ndarray:
    """Euclidean norms of the layer blocks, shape (..., d); zeroed outside [frm, upto]."""
    x = layout.check_point(x)
    cols = []
    for k, sl in enumerate(layout.layer_slices, start=1):
        if (upto is not None and k > upto) or (frm is not None and k < frm):
            cols.append(np.zeros(x.shape[:-1]))
        else:
            cols.append(np.sqrt(np.sum(np.square(x[..., sl]), axis=-1)))
    return np.stack(cols, axis=-1)


def _norm_from_blocks(layout: GradedLayout, bn: np.ndarray, variant: str, M: int | None) -> np.ndarray:
    if layout.d == 0:
        return np.zeros(bn.shape[:-1])
    ps = layout.exponents
    if variant == "max":
        vals = np.stack([np.power(bn[..., k], 1.0 / float(ps[k])) for k in range(layout.d)], axis=-1)
        return np.max(vals, axis=-1)
    if variant == "smooth":
        if M is None:
            M = minimal_smooth_exponent(layout)
        validate_smooth_exponent(layout, M)
        acc = np.zeros(bn.shape[:-1])
        for k in range(layout.d):
            acc = acc + np.power(bn[..., k], 2.0 * M / float(ps[k]))
        return np.power(acc, 1.0 / (2.0 * M))
    raise ValueError(f"unknown norm variant {variant!r} (expected 'max' or 'smooth')")


def hom_norm(layout: GradedLayout, x: np.ndarray, variant: str = "smooth", M: int | None = None) -> np.ndarray:
    """Homogeneous norm: |t.x| = t|x| exactly, zero only at x = 0.

    'max' is max_k ||x_k||^(1/p_k); 'smooth' is the power mean
    (sum_k ||x_k||^(2M/p_k))^(1/2M), smooth away from 0 because every
    ||x_k||^(2M/p_k) is a polynomial in the coordinates.
    """
    return _norm_from_blocks(layout, _block_norms(layout, x), variant, M)


def partial_norm_primal(layout: GradedLayout, x: np.ndarray, j: int, variant: str = "smooth", M: int | None = None) -> np.ndarray:
    """|x|_j = |(x_1, ..., x_j, 0, ..., 0)|; |x|_1 uses the first block alone, |x|_d = |x|."""
    layout._check_layer(j)
    return _norm_from_blocks(layout, _block_norms(layout, x, upto=j), variant, M)


def partial_norm_dual(layout: GradedLayout, xi: np.ndarray, j: int, variant: str = "smooth", M: int | None = None) -> np.ndarray:
    """|xi|_j = |(0, ..., 0, xi_j, ..., xi_d)|; |xi|_1 = |xi|, |xi|_d uses the last block alone."""
    layout._check_layer(j)
    return _norm_from_blocks(layout, _block_norms(layout, xi, frm=j), variant, M)


@dataclass(frozen=True)
class MultiIndex:
    """Per-layer tuples of nonnegative integer derivative/monomial orders."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        for block in self.entries:
            for a in block:
                if not (isinstance(a, int) and a >= 0):
                    raise ValueError(f"multiindex entries must be nonnegative integers, got {a!r}")

    @classmethod
    def of(cls, layout: GradedLayout, entries: Iterable[Iterable[int]]) -> "MultiIndex":
        alpha = cls(tuple(tuple(int(a) for a in block) for block in entries))
        alpha.check_layout(layout)
        return alpha

    @classmethod
    def zero(cls, layout: GradedLayout) -> "MultiIndex":
        return cls(tuple(tuple(0 for _ in range(n)) for n in layout.dims))

    @classmethod
    def from_flat(cls, layout: GradedLayout, flat: Sequence[int]) -> "MultiIndex":
        flat = tuple(int(a) for a in flat)
        if len(flat) != layout.dim:
            raise ValueError(f"flat multiindex length {len(flat)} != layout dimension {layout.dim}")
        return cls(tuple(flat[sl] for sl in layout.layer_slices))

    def check_layout(self, layout: GradedLayout) -> None:
        if tuple(len(b) for b in self.entries) != layout.dims:
            raise ValueError(f"multiindex block shape {tuple(len(b) for b in self.entries)} does not match layout dims {layout.dims}")

    def as_flat(self) -> tuple[int, ...]:
        return tuple(a for block in self.entries for a in block)

    def __add__(self, other: "MultiIndex") -> "MultiIndex":
        if tuple(len(b) for b in self.entries) != tuple(len(b) for b in other.entries):
            raise ValueError("multiindex shapes differ")
        return MultiIndex(tuple(tuple(a + b for a, b in zip(ba, bb)) for ba, bb in zip(self.entries, other.entries)))

    @property
    def total_order(self) -> int:
        return sum(self.as_flat())


def layer_lengths(layout: GradedLayout, alpha: MultiIndex) -> tuple[Fraction, ...]:
    """Homogeneous lengths |alpha_k| = p_k * sum_i alpha_ki, one per layer."""
    alpha.check_layout(layout)
    return tuple(p * sum(block) for (p, _), block in zip(layout.layers, alpha.entries))


def multiindex_length(layout: GradedLayout, alpha: MultiIndex) -> Fraction:
    """Homogeneous length |alpha| = sum_k p_k * sum_i alpha_ki (exact)."""
    return sum(layer_lengths(layout, alpha), Fraction(0))
