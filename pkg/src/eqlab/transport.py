"""Crossing factors and ordered products with explicit error budgets.

A unit tangent vector transported across a stack of triangles picks up
one near-identity factor per crossing; the factors are listed in
crossing order and composed as maps, earliest acting first.  Products
over decaying families are truncated under an explicit tail policy and
every truncation reports the bound

    error <= prod(1 + |s_i|) * sum of dropped |s_i|,

with s_i the factor's offset from the identity in Frobenius norm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .hyp import (
    BoundaryPoint,
    Geodesic,
    HPoint,
    MoebiusTransform,
    UnitTangent,
    apply,
    moebius_between,
    moebius_from_triples,
    orientation,
)
from .triangle import IdealTriangle, shear_between_adjacent


class DivergentBudgetError(ValueError):
    """Partial sums of factor deviations exceeded the declared budget."""


def frobenius_deviation(m: MoebiusTransform) -> float:
    """Frobenius norm of m - identity on the canonical representative."""
    return math.sqrt(
        (m.a - 1.0) ** 2 + m.b ** 2 + m.c ** 2 + (m.d - 1.0) ** 2
    )


@dataclass(frozen=True)
class CrossingFactor:
    """One near-identity transport factor with its position along the arc."""

    matrix: MoebiusTransform
    deviation: float
    order_key: float

    def __post_init__(self):
        measured = frobenius_deviation(self.matrix)
        if abs(measured - self.deviation) > 1e-12 * (1.0 + measured):
            raise ValueError(
                f"stored deviation {self.deviation} does not match matrix ({measured})"
            )

    @classmethod
    def from_matrix(cls, m: MoebiusTransform, order_key: float = 0.0) -> "CrossingFactor":
        return cls(m, frobenius_deviation(m), order_key)


def horocycle_conjugate(t: float) -> MoebiusTransform:
    """Unit horocycle step conjugated by time-t geodesic flow.

    Exactly the triple product diag(e^{-t/2}, e^{t/2}) (1 1; 0 1)
    diag(e^{t/2}, e^{-t/2}), which works out to the identity plus e^{-t}
    in the upper-right corner.
    """
    p = math.exp(-t / 2.0)
    q = 1.0 / p
    # ((p,0),(0,q)) @ ((1,1),(0,1)) @ ((q,0),(0,p))
    return MoebiusTransform(p * q, p * p, 0.0, q * p)


def crossing_factor(v_minus: UnitTangent, v_plus: UnitTangent,
                    order_key: float = 0.0) -> CrossingFactor:
    """Factor carrying the entry edge tangent to the exit edge tangent."""
    return CrossingFactor.from_matrix(moebius_between(v_minus, v_plus), order_key)


@dataclass(frozen=True)
class TailPolicy:
    """Truncation rule for ordered products.

    Factors with deviation below `deviation_floor` are dropped into the
    error bound; a running deviation sum above `divergence_budget`
    aborts with DivergentBudgetError.
    """

    deviation_floor: float = 1e-14
    divergence_budget: float = 64.0


DEFAULT_POLICY = TailPolicy()


@dataclass(frozen=True)
class OrderedProduct:
    factors: tuple[CrossingFactor, ...]
    value: MoebiusTransform
    error_bound: float
    raw_value: np.ndarray = field(repr=False, default=None)


def _as_array(m: MoebiusTransform) -> np.ndarray:
    return np.array([[m.a, m.b], [m.c, m.d]], dtype=float)


def ordered_product(factors, policy: TailPolicy | None = None,
                    tail_deviation: float = 0.0) -> OrderedProduct:
    """Compose factors in crossing order under the truncation policy.

    `tail_deviation` accounts for factors the caller never materialized
    (the remainder of a decaying family); it enters the error bound the
    same way dropped factors do.
    """
    if policy is None:
        policy = DEFAULT_POLICY
    factors = tuple(factors)
    keys = [f.order_key for f in factors]
    if any(k2 < k1 for k1, k2 in zip(keys, keys[1:])):
        raise ValueError("factors must be listed in crossing order")

    running = tail_deviation
    growth = 1.0
    retained: list[CrossingFactor] = []
    dropped = tail_deviation
    for f in factors:
        running += f.deviation
        if running > policy.divergence_budget:
            raise DivergentBudgetError(
                f"deviation sum {running} exceeds budget {policy.divergence_budget}"
            )
        growth *= 1.0 + f.deviation
        if f.deviation < policy.deviation_floor:
            dropped += f.deviation
        else:
            retained.append(f)

    acc = np.eye(2)
    for f in retained:
        acc = _as_array(f.matrix) @ acc  # earliest factor acts first
    value = MoebiusTransform(acc[0, 0], acc[0, 1], acc[1, 0], acc[1, 1])
    return OrderedProduct(
        factors=tuple(retained),
        value=value,
        error_bound=growth * dropped,
        raw_value=acc,
    )


@dataclass(frozen=True)
class Spike:
    """Two asymptotic geodesics sharing an ideal point."""

    edge_a: Geodesic
    edge_b: Geodesic
    vertex: BoundaryPoint

    def __post_init__(self):
        for g in (self.edge_a, self.edge_b):
            if min(g.start.gap(self.vertex), g.end.gap(self.vertex)) > 1e-10:
                raise ValueError("spike vertex must be an endpoint of both edges")
        if self._other(self.edge_a).gap(self._other(self.edge_b)) <= 1e-12:
            raise ValueError("spike edges must be distinct")

    def _other(self, g: Geodesic) -> BoundaryPoint:
        return g.end if g.start.gap(self.vertex) <= g.end.gap(self.vertex) else g.start

    def normalizer(self) -> MoebiusTransform:
        """Transform placing the spike at edges x=0, x=1 with vertex at infinity."""
        a = self._other(self.edge_a)
        b = self._other(self.edge_b)
        if orientation(a, self.vertex, b) > 0.0:
            a, b = b, a
        return moebius_from_triples(
            (a, self.vertex, b),
            (
                BoundaryPoint.from_value(0.0),
                BoundaryPoint.infinity(),
                BoundaryPoint.from_value(1.0),
            ),
        )

    @classmethod
    def normalized(cls) -> "Spike":
        return cls(
            Geodesic.from_values(0, "inf"),
            Geodesic.from_values(1, "inf"),
            BoundaryPoint.infinity(),
        )


def spike_crossing_sequence(spike: Spike, leaf_depths) -> list[CrossingFactor]:
    """Crossing factors for leaves at the given depths into the spike.

    Depths are measured from the unit-width horocycle and must increase
    strictly; each factor is the depth-d horocycle step expressed in the
    mouth frame of the spike, so its deviation is bounded by a constant
    times e^{-depth}, the constant depending only on the normalization.
    """
    depths = [float(d) for d in leaf_depths]
    if any(d2 <= d1 for d1, d2 in zip(depths, depths[1:])):
        raise ValueError("leaf depths must be strictly increasing")
    w = spike.normalizer()
    w_inv = w.inverse()
    return [
        CrossingFactor.from_matrix(w_inv @ horocycle_conjugate(d) @ w, order_key=d)
        for d in depths
    ]


@dataclass(frozen=True)
class SharedEdgeStep:
    """Two placed triangles glued along one edge: a degenerate chain link."""

    t_prev: IdealTriangle
    t_next: IdealTriangle


@dataclass(frozen=True)
class FactorArcStep:
    """Transport across intermediate crossings, then land on an edge.

    The transported reference vector is pushed through the ordered
    product of `factors`; the step value is the signed coordinate gap
    from the transported landing point to `landing_reference`, measured
    along `landing_edge` toward its end point.
    """

    factors: tuple[CrossingFactor, ...]
    v_start: UnitTangent
    landing_edge: Geodesic
    landing_reference: HPoint
    tail_deviation: float = 0.0


@dataclass(frozen=True)
class TransportChain:
    segments: tuple


@dataclass(frozen=True)
class ChainShearEstimate:
    value: float
    error_bound: float


def transport_shear_estimate(chain: TransportChain,
                             policy: TailPolicy | None = None) -> ChainShearEstimate:
    """Total signed shear along the chain with the accumulated error bound."""
    total = 0.0
    error = 0.0
    for seg in chain.segments:
        if isinstance(seg, SharedEdgeStep):
            total += shear_between_adjacent(seg.t_prev, seg.t_next)
        elif isinstance(seg, FactorArcStep):
            prod = ordered_product(seg.factors, policy=policy,
                                   tail_deviation=seg.tail_deviation)
            landed = apply(prod.value, seg.v_start).basepoint()
            coord = seg.landing_edge.to_imaginary_axis()
            z_land = apply(coord, landed)
            z_ref = apply(coord, seg.landing_reference)
            total += math.log(abs(z_ref.z)) - math.log(abs(z_land.z))
            error += prod.error_bound
        else:
            raise TypeError(f"unknown chain segment {type(seg).__name__}")
    return ChainShearEstimate(total, error)


def shear_via_transport(chain: TransportChain, policy: TailPolicy | None = None) -> float:
    """Total signed shear accumulated along the chain, additive over concatenation."""
    return transport_shear_estimate(chain, policy=policy).value
