"""Exact order arithmetic for the kernel classes F, F0 and S.

Order vectors transform under four operations: monomial multiplication and
differentiation (layerwise shifts), Fourier transform (nu -> -Q - nu, with a
primal/dual side flip), and convolution (addition, gated for F by the strict
layerwise inequality mu_k + nu_k > -Q_k).  Everything here is exact Fraction
arithmetic; no floating point.

Two rules are provided for the monomial/derivative shift because the printed
statement is internally inconsistent with its own use; the 'corrected' rule
mu_k = nu_k - |alpha_k| + |beta_k| is the default and is the one the numeric
size fits confirm (see verify.check_size discrimination test).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .graded import GradedLayout, MultiIndex, Rational, as_fraction, layer_lengths

TAGS = ("F", "F0", "S")
SIDES = ("primal", "dual")


def order_vector(layout: GradedLayout, values: Iterable[Rational]) -> tuple[Fraction, ...]:
    nu = tuple(as_fraction(v) for v in values)
    if len(nu) != layout.d:
        raise ValueError(f"order vector length {len(nu)} != layout depth {layout.d}")
    return nu


@dataclass(frozen=True)
class KernelClass:
    """A class tag (F / F0 / S) with its layout and exact order vector.

    ``side`` records whether the class lives on the primal space (flag along
    the leading variable) or on the dual (flag along the trailing one, where
    Fourier transforms of F-kernels land).
    """

    tag: str
    layout: GradedLayout
    order: tuple[Fraction, ...]
    side: str = "primal"

    def __post_init__(self) -> None:
        if self.tag not in TAGS:
            raise ValueError(f"unknown class tag {self.tag!r}, expected one of {TAGS}")
        if self.side not in SIDES:
            raise ValueError(f"unknown side {self.side!r}, expected one of {SIDES}")
        if len(self.order) != self.layout.d:
            raise ValueError(f"order length {len(self.order)} != layout depth {self.layout.d}")
        for v in self.order:
            if not isinstance(v, Fraction):
                raise TypeError(f"order entry {v!r} is not a Fraction")

    @classmethod
    def F(cls, layout: GradedLayout, *order: Rational, side: str = "primal") -> "KernelClass":
        return cls("F", layout, order_vector(layout, order), side)

    @classmethod
    def F0(cls, layout: GradedLayout, *order: Rational, side: str = "primal") -> "KernelClass":
        return cls("F0", layout, order_vector(layout, order), side)

    @classmethod
    def S(cls, layout: GradedLayout, *order: Rational, side: str = "primal") -> "KernelClass":
        return cls("S", layout, order_vector(layout, order), side)

    def with_order(self, order: Iterable[Rational]) -> "KernelClass":
        return KernelClass(self.tag, self.layout, order_vector(self.layout, order), self.side)

    def __str__(self) -> str:
        body = ",".join(str(v) for v in self.order)
        tag = {"F": "F", "F0": "F0", "S": "S"}[self.tag]
        suffix = "" if self.side == "primal" else "^"
        return f"{tag}{suffix}[{body}]"


@dataclass(frozen=True)
class ComposabilityVerdict:
    """Outcome of the convolution gate: which layers fail mu_k + nu_k > -Q_k."""

    composable: bool
    failing_layers: frozenset[int]
    result: Optional[KernelClass]

    def __post_init__(self) -> None:
        if self.composable != (not self.failing_layers):
            raise ValueError("failing_layers must be empty exactly when composable")
        if self.composable and self.result is None:
            raise ValueError("composable verdict requires a resulting class")

    def __str__(self) -> str:
        if self.composable:
            return f"composable -> {self.result}"
        layers = ",".join(str(j) for j in sorted(self.failing_layers))
        return f"not composable (layers {{{layers}}} fail mu_k+nu_k > -Q_k)"


def _require(cls: KernelClass, *tags: str) -> None:
    if cls.tag not in tags:
        raise ValueError(f"operation requires tag in {tags}, got {cls.tag}")


def monomial_derivative_order(cls: KernelClass, alpha: MultiIndex, beta: MultiIndex, rule: str = "corrected") -> KernelClass:
    """Order of x^alpha D^beta P for P of the given F-order.

    rule='corrected': mu_k = nu_k - |alpha_k| + |beta_k|   (default)
    rule='printed':   mu_k = nu_k + |alpha_k| - |beta_k|

    The names refer to the two candidate signs of the shift; the corrected
    rule is the one consistent with the size-condition bookkeeping
    |D^alpha P| <= C prod |x|_k^(-nu_k - Q_k - |alpha_k|).
    """
    _require(cls, "F", "F0")
    a = layer_lengths(cls.layout, alpha)
    b = layer_lengths(cls.layout, beta)
    if rule == "corrected":
        mu = tuple(n - ak + bk for n, ak, bk in zip(cls.order, a, b))
    elif rule == "printed":
        mu = tuple(n + ak - bk for n, ak, bk in zip(cls.order, a, b))
    else:
        raise ValueError(f"unknown rule {rule!r} (expected 'corrected' or 'printed')")
    return KernelClass(cls.tag, cls.layout, mu, cls.side)


def fourier_order(cls: KernelClass) -> KernelClass:
    """Fourier transform of an F-class: order mu_k = -Q_k - nu_k on the other side."""
    _require(cls, "F")
    mu = tuple(-q - n for q, n in zip(cls.layout.Qk, cls.order))
    side = "dual" if cls.side == "primal" else "primal"
    return KernelClass("F", cls.layout, mu, side)


def convolution_order(a: KernelClass, b: KernelClass) -> ComposabilityVerdict:
    """Convolution gate.

    F * F is admitted iff mu_k + nu_k > -Q_k strictly on every layer (the
    counterexample |xi|^(-1/2) * |xi|^(-1/2) on R sits exactly on the
    boundary -1 = -Q and is rejected).  F0 * F0 composes unconditionally.
    Mixed tags are rejected: there is no stated mixed rule.
    """
    if a.layout != b.layout:
        raise ValueError(f"layout mismatch: {a.layout} vs {b.layout}")
    if a.side != b.side:
        raise ValueError(f"side mismatch: {a.side} vs {b.side}")
    if a.tag != b.tag or a.tag not in ("F", "F0"):
        raise ValueError(f"convolution gate needs two F or two F0 classes, got {a.tag} and {b.tag}")
    total = tuple(x + y for x, y in zip(a.order, b.order))
    if a.tag == "F0":
        return ComposabilityVerdict(True, frozenset(), KernelClass("F0", a.layout, total, a.side))
    failing = frozenset(k for k, (s, q) in enumerate(zip(total, a.layout.Qk), start=1) if not s > -q)
    if failing:
        return ComposabilityVerdict(False, failing, None)
    return ComposabilityVerdict(True, frozenset(), KernelClass("F", a.layout, total, a.side))


def s_convolution_order(a: KernelClass, b: KernelClass) -> KernelClass:
    """S(mu) * S(nu) -> S(mu + nu), unconditional."""
    _require(a, "S")
    _require(b, "S")
    if a.layout != b.layout:
        raise ValueError(f"layout mismatch: {a.layout} vs {b.layout}")
    return KernelClass("S", a.layout, tuple(x + y for x, y in zip(a.order, b.order)), a.side)


def cancellation_exponent(cls: KernelClass, j: int) -> tuple[Fraction, KernelClass]:
    """Normalization exponent nu_j of the layer-j cancellation condition and
    the reduced class F(nu') on the layout with layer j removed.

    For d = 1 the reduced class is the scalar class (empty layout): plain
    uniform boundedness of the normalized pairings.
    """
    _require(cls, "F")
    cls.layout._check_layer(j)
    reduced_layout = cls.layout.remove_layer(j)
    reduced_order = cls.order[: j - 1] + cls.order[j:]
    return cls.order[j - 1], KernelClass("F", reduced_layout, reduced_order, cls.side)


def cancellation_free(cls: KernelClass) -> bool:
    """True iff every nu_j < 0, in which case the size estimates already imply
    the cancellation conditions and no separate cancellation test is needed."""
    _require(cls, "F")
    return all(v < 0 for v in cls.order)
