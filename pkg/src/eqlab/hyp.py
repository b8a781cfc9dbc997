"""Exact-contract numerics for PSL(2,R) acting on the upper half-plane.

Points live in the open half-plane, boundary points are projective pairs
(so infinity needs no special cases), and unit tangent vectors are stored
as group elements: the frame g such that the vector is g applied to the
upward unit vector based at i.  Every operation is a pure function over
immutable values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

ALG_TOL = 1e-12   # algebraic identities (determinants, projective gaps)
GEOM_TOL = 1e-9   # geometric identities (distances, fixed points)

_DET_FLOOR = 1e-14


class EllipticError(ValueError):
    """Raised when a translation length is requested for an elliptic element."""


def _canonical_sign(a, b, c, d):
    tr = a + d
    flip = False
    if tr < 0.0:
        flip = True
    elif tr == 0.0:
        for entry in (a, b, c, d):
            if entry != 0.0:
                flip = entry < 0.0
                break
    if flip:
        return -a, -b, -c, -d
    return a, b, c, d


@dataclass(frozen=True)
class MoebiusTransform:
    """Real 2x2 matrix of determinant one, canonicalized up to sign.

    The stored representative has trace >= 0 (ties broken by the first
    nonzero entry being positive), so projective equality is plain
    entrywise comparison.
    """

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if not det > _DET_FLOOR:
            raise ValueError(f"matrix determinant {det} is not positive")
        s = 1.0 / math.sqrt(det)
        a, b, c, d = _canonical_sign(self.a * s, self.b * s, self.c * s, self.d * s)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @classmethod
    def identity(cls) -> "MoebiusTransform":
        return cls(1.0, 0.0, 0.0, 1.0)

    @property
    def trace(self) -> float:
        return self.a + self.d

    def entries(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)

    def inverse(self) -> "MoebiusTransform":
        return MoebiusTransform(self.d, -self.b, -self.c, self.a)

    def __matmul__(self, other: "MoebiusTransform") -> "MoebiusTransform":
        return MoebiusTransform(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def projective_distance(self, other: "MoebiusTransform") -> float:
        """Frobenius distance minimized over the global sign."""
        plus = minus = 0.0
        for x, y in zip(self.entries(), other.entries()):
            plus += (x - y) ** 2
            minus += (x + y) ** 2
        return math.sqrt(min(plus, minus))

    def close_to(self, other: "MoebiusTransform", tol: float = GEOM_TOL) -> bool:
        return self.projective_distance(other) <= tol

    def is_identity(self, tol: float = GEOM_TOL) -> bool:
        return self.close_to(MoebiusTransform.identity(), tol)


@dataclass(frozen=True)
class HPoint:
    """Point of the upper half-plane, y strictly positive."""

    x: float
    y: float

    def __post_init__(self):
        if not self.y > 0.0:
            raise ValueError(f"half-plane point needs y > 0, got {self.y}")

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)

    @classmethod
    def from_complex(cls, z: complex) -> "HPoint":
        return cls(z.real, z.imag)


@dataclass(frozen=True)
class BoundaryPoint:
    """Projective pair (p : q) on the circle at infinity; q = 0 is infinity.

    Normalized so max(|p|, |q|) = 1 with a canonical sign, so two equal
    boundary points have equal fields.
    """

    p: float
    q: float

    def __post_init__(self):
        m = max(abs(self.p), abs(self.q))
        if m == 0.0:
            raise ValueError("boundary point needs a nonzero projective pair")
        p, q = self.p / m, self.q / m
        if q < 0.0 or (q == 0.0 and p < 0.0):
            p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @classmethod
    def from_value(cls, x) -> "BoundaryPoint":
        """Accepts a real number, infinity, or the string 'inf'."""
        if x == "inf" or (isinstance(x, float) and math.isinf(x)):
            return cls.infinity()
        return cls(float(x), 1.0)

    @classmethod
    def infinity(cls) -> "BoundaryPoint":
        return cls(1.0, 0.0)

    @property
    def is_infinity(self) -> bool:
        return self.q == 0.0

    @property
    def value(self) -> float:
        return math.inf if self.q == 0.0 else self.p / self.q

    def gap(self, other: "BoundaryPoint") -> float:
        """Projective cross product; zero iff the two points coincide."""
        return abs(self.p * other.q - other.p * self.q)

    def angle(self) -> float:
        """Position on the circle via the boundary-preserving disk map.

        Strictly increasing along the reals, with infinity at angle 0.
        Used only for circular-order tests.
        """
        # (p : q) maps to (p - i q)/(p + i q) on the unit circle
        w = complex(self.p, -self.q) / complex(self.p, self.q)
        return math.atan2(w.imag, w.real)


@dataclass(frozen=True)
class Geodesic:
    """Geodesic given by two distinct boundary points.

    The stored order (start, end) orients the geodesic; operations that
    only need the underlying set ignore it.  Positive translation along
    the geodesic moves toward `end`.
    """

    start: BoundaryPoint
    end: BoundaryPoint

    def __post_init__(self):
        if self.start.gap(self.end) <= ALG_TOL:
            raise ValueError("geodesic endpoints must be distinct")

    @classmethod
    def from_values(cls, a, b) -> "Geodesic":
        return cls(BoundaryPoint.from_value(a), BoundaryPoint.from_value(b))

    def reversed(self) -> "Geodesic":
        return Geodesic(self.end, self.start)

    def same_unoriented(self, other: "Geodesic", tol: float = ALG_TOL) -> bool:
        direct = max(self.start.gap(other.start), self.end.gap(other.end))
        swapped = max(self.start.gap(other.end), self.end.gap(other.start))
        return min(direct, swapped) <= tol

    def to_imaginary_axis(self) -> MoebiusTransform:
        """A transform sending start to 0 and end to infinity.

        Determined up to a positive diagonal factor; every consumer of
        this map is invariant under that freedom.
        """
        s, e = self.start, self.end
        det = s.p * e.q - s.q * e.p
        k = 1.0 if det > 0 else -1.0
        return MoebiusTransform(k * s.q, -k * s.p, e.q, -e.p)

    def contains(self, point: HPoint, tol: float = GEOM_TOL) -> bool:
        w = apply(self.to_imaginary_axis(), point)
        return abs(w.x) <= tol * w.y


@dataclass(frozen=True)
class UnitTangent:
    """Unit tangent vector as the frame carrying the reference vector.

    The reference vector is the upward unit vector based at i; the vector
    represented is frame applied to it.
    """

    frame: MoebiusTransform

    @classmethod
    def reference(cls) -> "UnitTangent":
        return cls(MoebiusTransform.identity())

    @classmethod
    def upward_at(cls, point: HPoint) -> "UnitTangent":
        r = math.sqrt(point.y)
        return cls(MoebiusTransform(r, point.x / r, 0.0, 1.0 / r))

    @classmethod
    def along_geodesic(cls, geo: Geodesic, base: HPoint) -> "UnitTangent":
        """Tangent at `base` pointing along `geo` toward its end point."""
        m = geo.to_imaginary_axis()
        w = apply(m, base)
        if abs(w.x) > 1e-7 * w.y:
            raise ValueError("base point does not lie on the geodesic")
        r = math.sqrt(w.y)
        return cls(m.inverse() @ MoebiusTransform(r, 0.0, 0.0, 1.0 / r))

    def basepoint(self) -> HPoint:
        return apply(self.frame, HPoint(0.0, 1.0))


def compose(a: MoebiusTransform, b: MoebiusTransform) -> MoebiusTransform:
    """Matrix product, renormalized to determinant one."""
    return a @ b


def apply(m: MoebiusTransform, p):
    """Fractional linear action on points, boundary points, vectors, geodesics."""
    if isinstance(p, HPoint):
        z = (m.a * p.z + m.b) / (m.c * p.z + m.d)
        return HPoint(z.real, z.imag)
    if isinstance(p, BoundaryPoint):
        return BoundaryPoint(m.a * p.p + m.b * p.q, m.c * p.p + m.d * p.q)
    if isinstance(p, UnitTangent):
        return UnitTangent(m @ p.frame)
    if isinstance(p, Geodesic):
        return Geodesic(apply(m, p.start), apply(m, p.end))
    raise TypeError(f"cannot apply a MoebiusTransform to {type(p).__name__}")


def hyp_distance(p: HPoint, q: HPoint) -> float:
    """Hyperbolic distance, arccosh(1 + |p - q|^2 / (2 y_p y_q))."""
    dx = p.x - q.x
    dy = p.y - q.y
    arg = 1.0 + (dx * dx + dy * dy) / (2.0 * p.y * q.y)
    return math.acosh(max(arg, 1.0))


def translation_along(g: Geodesic, t: float) -> MoebiusTransform:
    """Hyperbolic element with axis g and translation length |t|.

    Positive t translates toward g.end; t = 0 gives the identity.
    """
    m = g.to_imaginary_axis()
    e = math.exp(t / 2.0)
    return m.inverse() @ MoebiusTransform(e, 0.0, 0.0, 1.0 / e) @ m


def translation_length(m: MoebiusTransform, tol: float = GEOM_TOL) -> float:
    """Translation length 2 arccosh(|tr|/2); zero for parabolics.

    Raises EllipticError when |tr| < 2 - tol.
    """
    half = abs(m.trace) / 2.0
    if half < 1.0 - tol / 2.0:
        raise EllipticError(f"|trace| = {2 * half} < 2: elliptic element")
    return 2.0 * math.acosh(max(half, 1.0))


def frame_distance(v: UnitTangent, w: UnitTangent) -> float:
    """Left-invariant distance on unit tangent vectors.

    Frobenius norm of frame(v)^-1 frame(w) - identity, minimized over the
    projective sign.  Only the bi-Lipschitz class matters to callers.
    """
    rel = v.frame.inverse() @ w.frame
    plus = (rel.a - 1.0) ** 2 + rel.b ** 2 + rel.c ** 2 + (rel.d - 1.0) ** 2
    minus = (rel.a + 1.0) ** 2 + rel.b ** 2 + rel.c ** 2 + (rel.d + 1.0) ** 2
    return math.sqrt(min(plus, minus))


def moebius_between(v: UnitTangent, w: UnitTangent) -> MoebiusTransform:
    """The unique transform carrying v to w (the frames form a torsor)."""
    return w.frame @ v.frame.inverse()


def orientation(p: BoundaryPoint, q: BoundaryPoint, r: BoundaryPoint) -> float:
    """Positive for counterclockwise boundary triples, negative for clockwise."""
    b01 = p.p * q.q - q.p * p.q
    b12 = q.p * r.q - r.p * q.q
    b20 = r.p * p.q - p.p * r.q
    return b01 * b12 * b20


def moebius_from_triples(src, dst) -> MoebiusTransform:
    """Transform carrying one ordered boundary triple to another.

    Both triples must be pairwise distinct and equally oriented, else no
    orientation-preserving transform exists and ValueError is raised.
    """
    s_or = orientation(*src)
    d_or = orientation(*dst)
    if s_or * d_or < 0.0:
        raise ValueError("triples have opposite orientations")
    if s_or > 0.0:
        # the reference triple (0, inf, 1) is clockwise; present both
        # triples clockwise, preserving the elementwise correspondence
        src = (src[0], src[2], src[1])
        dst = (dst[0], dst[2], dst[1])
    m_src = _to_zero_inf_one(*src)
    m_dst = _to_zero_inf_one(*dst)
    return m_dst.inverse() @ m_src


def _to_zero_inf_one(p: BoundaryPoint, q: BoundaryPoint, r: BoundaryPoint) -> MoebiusTransform:
    # maps the clockwise triple (p, q, r) to (0, inf, 1);
    # row one kills p, row two kills q; scale rows so r lands at 1
    k1 = q.q * r.p - q.p * r.q
    k2 = p.q * r.p - p.p * r.q
    a = k1 * p.q
    b = -k1 * p.p
    c = k2 * q.q
    d = -k2 * q.p
    # rescale by a common factor (row ratios pin the third point) so that
    # nearly-degenerate triples keep a well-scaled determinant
    s1 = max(abs(a), abs(b))
    s2 = max(abs(c), abs(d))
    if s1 == 0.0 or s2 == 0.0:
        raise ValueError("degenerate boundary triple")
    scale = 1.0 / math.sqrt(s1 * s2)
    a, b, c, d = a * scale, b * scale, c * scale, d * scale
    det = a * d - b * c
    if abs(det) <= _DET_FLOOR:
        raise ValueError("degenerate boundary triple")
    if det < 0.0:
        raise ValueError("boundary triple is negatively oriented")
    return MoebiusTransform(a, b, c, d)


def geodesic_through(p: HPoint, q: HPoint) -> Geodesic:
    """Oriented geodesic through two interior points, running p to q."""
    if p.x == q.x and p.y == q.y:
        raise ValueError("need two distinct points")
    if abs(p.x - q.x) <= 1e-14 * max(1.0, abs(p.x)):
        if q.y > p.y:
            return Geodesic(BoundaryPoint(p.x, 1.0), BoundaryPoint.infinity())
        return Geodesic(BoundaryPoint.infinity(), BoundaryPoint(p.x, 1.0))
    c = (q.x * q.x + q.y * q.y - p.x * p.x - p.y * p.y) / (2.0 * (q.x - p.x))
    r = math.hypot(p.x - c, p.y)
    left = BoundaryPoint(c - r, 1.0)
    right = BoundaryPoint(c + r, 1.0)
    # q is ahead of p: headed toward the endpoint on q's side of the arc
    if math.atan2(q.y, q.x - c) < math.atan2(p.y, p.x - c):
        return Geodesic(left, right)
    return Geodesic(right, left)


def project_to_geodesic(g: Geodesic, p: HPoint) -> HPoint:
    """Orthogonal foot of a point on a geodesic."""
    w = apply(g.to_imaginary_axis(), p)
    return apply(g.to_imaginary_axis().inverse(), HPoint(0.0, math.hypot(w.x, w.y)))


def side_of(g: Geodesic, p: HPoint) -> float:
    """Signed side of a point: the real part after normalizing g to the axis.

    Positive values are on the right of the oriented geodesic.
    """
    return apply(g.to_imaginary_axis(), p).x


def intersect_geodesics(g1: Geodesic, g2: Geodesic) -> HPoint | None:
    """Transverse intersection point of two geodesics, or None."""
    m = g1.to_imaginary_axis()
    h = apply(m, g2)
    a, b = h.start.value, h.end.value
    if math.isinf(a) or math.isinf(b):
        return None  # shared endpoint with g1: asymptotic, not transverse
    if a * b >= 0.0:
        return None  # both endpoints on one side: no crossing of the axis
    y = math.sqrt(-a * b)
    return apply(m.inverse(), HPoint(0.0, y))
