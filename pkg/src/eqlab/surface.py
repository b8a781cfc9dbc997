"""Closed-surface desk models built from pants: Fenchel-Nielsen data,
holonomy representations, twist flows, and the spiral-transport shear
across a cuff.

The genus-two harness glues two pants (each a pair of ideal triangles)
along three cuffs.  Each cuff carries a length and a twist; earthquakes
in cuff multicurves translate the twists.  The shear of an arc crossing
a cuff is computed by developing the two spiraling triangle families,
transporting a reference vector through the crossing factors on each
side, and reading the signed gap between the two landing points on the
cuff geodesic.  Twisting the gluing by epsilon slides one landing point
by exactly epsilon, which is what the twist-response and conjugacy
verifiers check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .hyp import (
    BoundaryPoint,
    Geodesic,
    HPoint,
    MoebiusTransform,
    UnitTangent,
    apply,
    moebius_from_triples,
    orientation,
    project_to_geodesic,
)
from .transport import (
    CrossingFactor,
    FactorArcStep,
    TailPolicy,
    TransportChain,
    crossing_factor,
    ordered_product,
    transport_shear_estimate,
)
from .triangle import (
    Developer,
    ShearTriangulation,
    edge_tangency_point,
    holonomy,
    pants_boundary_words,
    pants_triangulation,
    shears_from_cuffs,
)


class InvalidGluingError(ValueError):
    """The gluing data does not describe the supported closed surface."""


class UnsupportedCurveError(ValueError):
    """A multicurve weight references a cuff the surface does not have."""


@dataclass(frozen=True)
class Gluing:
    """One cuff: a pair of pants boundary slots with length and twist."""

    id: int
    cuffs: tuple[tuple[int, int], tuple[int, int]]
    length: float
    twist: float
    spiral_signs: tuple[int, int] = (1, 1)


@dataclass(frozen=True)
class FNSurface:
    pants: tuple[int, ...]
    gluings: tuple[Gluing, ...]

    def __post_init__(self):
        used = set()
        for g in self.gluings:
            if not g.length > 0.0:
                raise InvalidGluingError(f"cuff {g.id} needs positive length")
            for pants_id, slot in g.cuffs:
                if pants_id not in self.pants:
                    raise InvalidGluingError(f"cuff {g.id} references unknown pants {pants_id}")
                if slot not in (0, 1, 2):
                    raise InvalidGluingError(f"cuff {g.id} has invalid slot {slot}")
                if (pants_id, slot) in used:
                    raise InvalidGluingError(f"boundary slot {(pants_id, slot)} glued twice")
                used.add((pants_id, slot))
        for pants_id in self.pants:
            for slot in range(3):
                if (pants_id, slot) not in used:
                    raise InvalidGluingError(f"boundary slot {(pants_id, slot)} left unglued")

    @classmethod
    def genus2(cls, lengths=(2.0, 2.5, 3.0), twists=(0.0, 0.0, 0.0),
               spiral_signs=((1, 1), (1, 1), (1, 1))) -> "FNSurface":
        """Two pants glued slot-to-slot along three cuffs."""
        return cls(
            pants=(0, 1),
            gluings=tuple(
                Gluing(k, ((0, k), (1, k)), lengths[k], twists[k], spiral_signs[k])
                for k in range(3)
            ),
        )

    def gluing_by_id(self, cuff_id: int) -> Gluing:
        for g in self.gluings:
            if g.id == cuff_id:
                return g
        raise UnsupportedCurveError(f"no cuff with id {cuff_id}")

    def pants_slot_data(self, pants_id: int):
        """(length, spiral sign, gluing) per boundary slot of one pants."""
        out = [None, None, None]
        for g in self.gluings:
            for side, (pid, slot) in enumerate(g.cuffs):
                if pid == pants_id:
                    out[slot] = (g.length, g.spiral_signs[side], g)
        return out

    def pants_triangulation(self, pants_id: int) -> ShearTriangulation:
        data = self.pants_slot_data(pants_id)
        lengths = tuple(d[0] for d in data)
        signs = tuple(d[1] for d in data)
        return pants_triangulation(*shears_from_cuffs(*lengths, signs))


@dataclass(frozen=True)
class WeightedMulticurve:
    """Nonnegative weights on cuff ids, at least one positive."""

    weights: dict

    def __post_init__(self):
        if not any(w > 0.0 for w in self.weights.values()):
            raise ValueError("multicurve needs at least one positive weight")
        if any(w < 0.0 for w in self.weights.values()):
            raise ValueError("multicurve weights must be nonnegative")

    def weight(self, cuff_id: int) -> float:
        return self.weights.get(cuff_id, 0.0)


@dataclass(frozen=True)
class HolonomyRep:
    """Surface group representation: four generators and one relator.

    Generators: 'a' and 'b' are two cuff loops, 'c' and 'd' the
    connector loops through the other two cuffs; uppercase letters in a
    word denote inverses.  The third cuff loop is the word "BA".
    """

    generators: dict
    relator: str = "abcACdBD"

    def evaluate(self, word: str) -> MoebiusTransform:
        m = MoebiusTransform.identity()
        for letter in word:
            g = self.generators[letter.lower()]
            m = m @ (g.inverse() if letter.isupper() else g)
        return m

    def relator_defect(self) -> float:
        return self.evaluate(self.relator).projective_distance(MoebiusTransform.identity())


def dehn_twist_substitution(cuff_index: int) -> dict:
    """Generator substitution realized by twisting one cuff by its length.

    Returns a map letter -> replacement word for the rep of the
    canonical genus-two surface.
    """
    if cuff_index == 0:
        return {"a": "a", "b": "b", "c": "abc", "d": "abd"}
    if cuff_index == 1:
        return {"a": "a", "b": "b", "c": "cA", "d": "d"}
    if cuff_index == 2:
        return {"a": "a", "b": "b", "c": "c", "d": "dB"}
    raise ValueError("cuff index must be 0, 1 or 2")


def substitute_word(word: str, substitution: dict) -> str:
    def flip(w: str) -> str:
        return "".join(ch.lower() if ch.isupper() else ch.upper() for ch in reversed(w))

    out = []
    for letter in word:
        rep = substitution[letter.lower()]
        out.append(flip(rep) if letter.isupper() else rep)
    return "".join(out)


def pants_rep(l1: float, l2: float, l3: float):
    """Boundary holonomies of the pants with the given cuff lengths.

    Returns three hyperbolic elements whose translation lengths are the
    cuff lengths and whose ordered product is the identity up to sign.
    Cusps are not allowed here: lengths must be positive.
    """
    for l in (l1, l2, l3):
        if not l > 0.0:
            raise ValueError("pants boundary lengths must be positive")
    tri = pants_triangulation(*shears_from_cuffs(l1, l2, l3))
    return tuple(holonomy(tri, w) for w in pants_boundary_words())


def _twist_matrix(tau: float) -> MoebiusTransform:
    e = math.exp(tau / 2.0)
    return MoebiusTransform(e, 0.0, 0.0, 1.0 / e)


_FLIP = MoebiusTransform(0.0, -1.0, 1.0, 0.0)  # swaps the ends of the axis


def fixed_points(m: MoebiusTransform) -> tuple[BoundaryPoint, BoundaryPoint]:
    """(repelling, attracting) fixed points of a hyperbolic element."""
    if abs(m.trace) <= 2.0:
        raise ValueError("fixed points requested for a non-hyperbolic element")
    if abs(m.c) > 1e-12:
        disc = math.sqrt(m.trace * m.trace - 4.0)
        x1 = (m.a - m.d + disc) / (2.0 * m.c)
        x2 = (m.a - m.d - disc) / (2.0 * m.c)
        p1, p2 = BoundaryPoint.from_value(x1), BoundaryPoint.from_value(x2)
        # attracting fixed point has derivative modulus below one: |cx + d| > 1
        if abs(m.c * x1 + m.d) > 1.0:
            return p2, p1
        return p1, p2
    finite = BoundaryPoint.from_value(m.b / (m.d - m.a))
    inf = BoundaryPoint.infinity()
    if abs(m.a) > abs(m.d):
        return finite, inf  # infinity attracting
    return inf, finite


def axis_frame(m: MoebiusTransform) -> MoebiusTransform:
    """Frame with F^-1 m F = diag(e^{l/2}, e^{-l/2}): 0 to the repelling,
    infinity to the attracting fixed point.  Deterministic choice of the
    diagonal freedom."""
    rep, att = fixed_points(m)
    a, b = att.p, rep.p
    c, d = att.q, rep.q
    if a * d - b * c < 0.0:
        b, d = -b, -d
    return MoebiusTransform(a, b, c, d)


def axis_geodesic(m: MoebiusTransform) -> Geodesic:
    rep, att = fixed_points(m)
    return Geodesic(rep, att)


def fn_to_holonomy(s: FNSurface) -> HolonomyRep:
    """Amalgamate the two pants representations along the three cuffs.

    The front pants provides the cuff generators; the back pants is
    conjugated so its first cuff matches the front one reversed, at the
    first twist; connectors through the other two cuffs carry the other
    twists.  The relator holds by construction and is re-verified
    numerically by callers.
    """
    if len(s.pants) != 2 or len(s.gluings) != 3:
        raise InvalidGluingError("holonomy assembly expects two pants and three cuffs")
    front, back = s.pants
    for k, g in enumerate(s.gluings):
        pants_ids = {pid for pid, _ in g.cuffs}
        if pants_ids != {front, back}:
            raise InvalidGluingError("each cuff must join the two pants")
        slots = {slot for _, slot in g.cuffs}
        if slots != {k}:
            raise InvalidGluingError(
                "holonomy assembly expects slot-aligned gluings (cuff k at slot k)"
            )

    lengths = tuple(g.length for g in s.gluings)
    twists = tuple(g.twist for g in s.gluings)
    A = pants_rep(*lengths)  # A[0] A[1] A[2] = identity up to sign
    B = pants_rep(*lengths)

    f_a1_inv = axis_frame(A[0].inverse())
    f_b = tuple(axis_frame(B[k]) for k in range(3))
    conj = f_a1_inv @ _twist_matrix(twists[0]) @ f_b[0].inverse()

    def connector(k: int) -> MoebiusTransform:
        # covariant frame for the conjugated back cuff keeps the Dehn
        # substitution exact for the first twist as well
        frame_back = conj @ f_b[k]
        return frame_back @ _twist_matrix(twists[k]) @ axis_frame(A[k].inverse()).inverse()

    return HolonomyRep(
        generators={
            "a": A[1],
            "b": A[2],
            "c": connector(1),
            "d": connector(2),
        }
    )


def earthquake_flow(s: FNSurface, mc: WeightedMulticurve, t: float) -> FNSurface:
    """Twist translation: lengths unchanged, twists advanced by t times weight."""
    ids = {g.id for g in s.gluings}
    for cuff_id in mc.weights:
        if cuff_id not in ids:
            raise UnsupportedCurveError(f"multicurve weight on unknown cuff {cuff_id}")
    return FNSurface(
        pants=s.pants,
        gluings=tuple(
            replace(g, twist=g.twist + t * mc.weight(g.id)) for g in s.gluings
        ),
    )


def multicurve_length(s: FNSurface, mc: WeightedMulticurve) -> float:
    """Weighted sum of cuff lengths; invariant under earthquake_flow in mc."""
    ids = {g.id for g in s.gluings}
    for cuff_id in mc.weights:
        if cuff_id not in ids:
            raise UnsupportedCurveError(f"multicurve weight on unknown cuff {cuff_id}")
    return sum(mc.weight(g.id) * g.length for g in s.gluings)


@dataclass(frozen=True)
class CuffShear:
    value: float
    error_bound: float


@dataclass(frozen=True)
class _SideLanding:
    """One spiral side: landing of the reference leaf on the cuff."""

    landing: HPoint
    error_bound: float
    cuff_holonomy: MoebiusTransform
    factors: tuple[CrossingFactor, ...]
    start_vector: UnitTangent
    tail_deviation: float


def _shared_vertex(e1: Geodesic, e2: Geodesic) -> BoundaryPoint:
    best, vertex = math.inf, None
    for p in (e1.start, e1.end):
        for q in (e2.start, e2.end):
            if p.gap(q) < best:
                best, vertex = p.gap(q), p
    if best > 1e-9:
        raise InvalidGluingError("consecutive spiral edges share no ideal vertex")
    return vertex


def _other_end(g: Geodesic, vertex: BoundaryPoint) -> BoundaryPoint:
    return g.end if g.start.gap(vertex) <= g.end.gap(vertex) else g.start


def _crossed_edges(tri: ShearTriangulation, word, count: int):
    """The first `count` crossed edge geodesics along the repeated word.

    Only the first period is developed triangle by triangle; deeper
    layers are images of it under the corner holonomy.  All spiral
    edges share the corner vertex, which is the repelling fixed point
    of the holonomy, so that endpoint is pinned exactly rather than
    iterated (iteration would amplify its error exponentially).
    """
    dev = Developer(tri)
    letters = []
    edges = []
    first_exit = None
    for m in range(min(count, len(word))):
        placed = dev.place(tuple(letters))
        letter = word[m % len(word)]
        (_, exit_side), _ = tri.cross(placed.tri, letter)
        edges.append(placed.triangle.side(exit_side))
        if first_exit is None:
            first_exit = (placed.triangle, exit_side)
        letters.append(letter)
    h = holonomy(tri, word)
    period = len(word)
    if count > period:
        vertex = _shared_vertex(edges[0], edges[1])
        while len(edges) < count:
            far = apply(h, _other_end(edges[-period], vertex))
            edges.append(Geodesic(vertex, far))
    return edges, first_exit


def _horocycle_jump(vertex: BoundaryPoint, e_from: Geodesic, e_to: Geodesic,
                    z: HPoint) -> HPoint:
    """Carry a point along the horocycle centered at the spike vertex."""
    a = _other_end(e_from, vertex)
    b = _other_end(e_to, vertex)
    zero = BoundaryPoint.from_value(0.0)
    one = BoundaryPoint.from_value(1.0)
    inf = BoundaryPoint.infinity()
    # normalize the spike to vertical edges; the target triple must match
    # the source orientation, which depends on which side e_to lies
    if orientation(a, vertex, b) < 0.0:
        w = moebius_from_triples((a, vertex, b), (zero, inf, one))
        landing_x = 1.0
    else:
        w = moebius_from_triples((a, vertex, b), (one, inf, zero))
        landing_x = 0.0
    height = apply(w, z).y
    landed = apply(w.inverse(), HPoint(landing_x, height))
    # deep in the spiral the normalization above loses relative accuracy
    # across the thin gap; snap the landing back onto the target edge
    return project_to_geodesic(e_to, landed)


def _decays(tri: ShearTriangulation, word, probe: int = 7) -> bool:
    try:
        edges, first = _crossed_edges(tri, word, probe)
        vertex = _shared_vertex(edges[0], edges[1])
        z = edge_tangency_point(*first)
        devs = []
        for m in range(probe - 1):
            z_next = _horocycle_jump(vertex, edges[m], edges[m + 1], z)
            v1 = UnitTangent.along_geodesic(_toward(edges[m], vertex), z)
            v2 = UnitTangent.along_geodesic(_toward(edges[m + 1], vertex), z_next)
            devs.append(crossing_factor(v1, v2).deviation)
            z = z_next
    except ValueError:
        return False  # outward direction: layers do not converge
    return devs[4] < devs[2] < devs[0]


def _toward(g: Geodesic, vertex: BoundaryPoint) -> Geodesic:
    """The edge oriented toward the spike vertex."""
    return g if g.end.gap(vertex) <= g.start.gap(vertex) else g.reversed()


_LAYER_CAP = 4000


def _spiral_landing(tri: ShearTriangulation, slot: int, depth_budget: float,
                    policy: TailPolicy | None = None) -> _SideLanding:
    """Transport the reference leaf through the spiral layers at one cuff.

    Develops the corner word repeatedly, collects the crossing factors,
    and pushes the tangency reference of the first crossed edge through
    their ordered product; the landing point sits on the cuff geodesic
    up to the reported error bound.
    """
    word = pants_boundary_words()[slot]
    if not _decays(tri, word):
        word = tuple(reversed(word))
        if not _decays(tri, word):
            raise InvalidGluingError("no spiraling direction decays at this cuff")

    floor = max(math.exp(-depth_budget), 1e-15)
    h = holonomy(tri, word)
    period = len(word)
    edges, first_exit = _crossed_edges(tri, word, period)
    vertex = _shared_vertex(edges[0], edges[1])
    z = edge_tangency_point(*first_exit)
    v_start = UnitTangent.along_geodesic(_toward(edges[0], vertex), z)
    v_prev = v_start
    factors: list[CrossingFactor] = []

    for m in range(1, _LAYER_CAP):
        if m >= len(edges):
            edges.append(Geodesic(vertex, apply(h, _other_end(edges[m - period], vertex))))
        try:
            z = _horocycle_jump(vertex, edges[m - 1], edges[m], z)
            v_here = UnitTangent.along_geodesic(_toward(edges[m], vertex), z)
            factor = crossing_factor(v_prev, v_here, order_key=float(m))
        except ValueError:
            break  # layers collapsed below float resolution: pure tail
        if len(factors) >= period and factor.deviation >= factors[-period].deviation:
            break  # numeric noise floor reached: the true decay never rises
        factors.append(factor)
        v_prev = v_here
        if factor.deviation < floor:
            break
    else:
        raise InvalidGluingError("spiral transport did not reach the depth budget")

    # geometric tail estimate from the measured period-two decay
    if len(factors) >= 3:
        ratio = math.sqrt(factors[-1].deviation / factors[-3].deviation)
        ratio = min(ratio, 0.95)
        tail = factors[-1].deviation * ratio / (1.0 - ratio)
    else:
        tail = factors[-1].deviation if factors else 0.0

    prod = ordered_product(factors, policy=policy, tail_deviation=tail)
    landing = apply(prod.value, v_start).basepoint()
    h = holonomy(tri, word)
    return _SideLanding(
        landing=landing,
        error_bound=prod.error_bound,
        cuff_holonomy=h,
        factors=tuple(factors),
        start_vector=v_start,
        tail_deviation=tail,
    )


def cuff_landing_oracle(tri: ShearTriangulation, slot: int) -> HPoint:
    """Closed-form landing point: all spiral spikes at one cuff share the
    corner vertex, so the reference leaf is a single horocycle centered
    there; intersect it with the cuff axis directly."""
    word = pants_boundary_words()[slot]
    if not _decays(tri, word):
        word = tuple(reversed(word))
    edges, first = _crossed_edges(tri, word, 2)
    vertex = _shared_vertex(edges[0], edges[1])
    z0 = edge_tangency_point(*first)
    rep, att = fixed_points(holonomy(tri, word))
    if rep.gap(vertex) > 1e-9:
        raise InvalidGluingError("spiral vertex is not the repelling fixed point")
    return _horocycle_jump(vertex, edges[0], Geodesic(rep, att), z0)


def shear_across_cuff(s: FNSurface, cuff_id: int, depth_budget: float = 30.0,
                      policy: TailPolicy | None = None) -> CuffShear:
    """Shear between the reference triangles of the two pants at a cuff.

    Both spiraling families are developed and transported to the cuff;
    the value is the signed gap between the two landing points in the
    cuff coordinate, oriented so that a Fenchel-Nielsen twist by epsilon
    changes the shear by exactly epsilon.
    """
    g = s.gluing_by_id(cuff_id)
    (pants_a, slot_a), (pants_b, slot_b) = g.cuffs
    side_a = _spiral_landing(s.pants_triangulation(pants_a), slot_a, depth_budget, policy)
    side_b = _spiral_landing(s.pants_triangulation(pants_b), slot_b, depth_budget, policy)

    frame_a = axis_frame(side_a.cuff_holonomy)
    frame_b = axis_frame(side_b.cuff_holonomy)
    gluing_map = frame_a @ _twist_matrix(g.twist) @ _FLIP @ frame_b.inverse()

    axis = apply(frame_a, Geodesic.from_values(0, "inf"))
    reference = apply(gluing_map, side_b.landing)
    chain = TransportChain((
        FactorArcStep(
            factors=side_a.factors,
            v_start=side_a.start_vector,
            landing_edge=axis,
            landing_reference=reference,
            tail_deviation=side_a.tail_deviation,
        ),
    ))
    estimate = transport_shear_estimate(chain, policy=policy)
    return CuffShear(estimate.value, estimate.error_bound + side_b.error_bound)
