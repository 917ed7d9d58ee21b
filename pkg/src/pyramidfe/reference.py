"""Reference geometry of the finite and infinite pyramids.

The finite pyramid has the unit square base {0 <= xi, eta <= 1 - zeta}
and apex v5 = (0,0,1).  The infinite pyramid is the square column
{x, y in [0,1], z >= 0} compactified by a point at infinity; the
projective map phi identifies the two, sending infinity to the apex.

Entity labelling convention (the quarter-turn rotation generates each
orbit from its first member):

    vertices   v1=(0,0,0)  v2=(1,0,0)  v3=(1,1,0)  v4=(0,1,0)  v5=apex
    vertical   e1: v1->v5, e2: v2->v5, e3: v3->v5, e4: v4->v5
    base edges b1: v1->v2, b2: v2->v3, b3: v3->v4, b4: v1->v4
    faces      S1: eta=0,  S2: xi+zeta=1,  S3: eta+zeta=1,  S4: xi=0,  B: zeta=0

Edge tangents run from the lower-indexed to the higher-indexed vertex;
face normals point outward.  All geometry is exact rational, and the
apex exists only on the finite pyramid.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .rationals import Q, as_q


class Frame(enum.Enum):
    INFINITE_PYRAMID = "infinite"
    FINITE_PYRAMID = "finite"


INFINITE = Frame.INFINITE_PYRAMID
FINITE = Frame.FINITE_PYRAMID


class GeometryDomainError(ValueError):
    """Point outside the reference pyramid in question."""


class ApexSingularityError(ArithmeticError):
    """Operation undefined at the apex (the image of infinity)."""


def _q3(point):
    p = tuple(as_q(c) for c in point)
    if len(p) != 3:
        raise ValueError("expected a rational triple")
    return p


def in_infinite_pyramid(point) -> bool:
    x, y, z = _q3(point)
    return 0 <= x <= 1 and 0 <= y <= 1 and z >= 0


def in_finite_pyramid(point) -> bool:
    xi, eta, zeta = _q3(point)
    return (
        xi >= 0 and eta >= 0 and zeta >= 0 and xi <= 1 - zeta and eta <= 1 - zeta
    )


def phi(point):
    """Projective map from the infinite to the finite pyramid."""
    x, y, z = _q3(point)
    if not in_infinite_pyramid((x, y, z)):
        raise GeometryDomainError("point %s outside the infinite pyramid" % (point,))
    d = 1 + z
    return (x / d, y / d, z / d)


def phi_inverse(point):
    """Inverse of phi; undefined at the apex."""
    xi, eta, zeta = _q3(point)
    if zeta == 1:
        raise ApexSingularityError("the apex is the image of the point at infinity")
    if not in_finite_pyramid((xi, eta, zeta)):
        raise GeometryDomainError("point %s outside the finite pyramid" % (point,))
    d = 1 - zeta
    return (xi / d, eta / d, zeta / d)


def rotate_infinite(point):
    """Quarter turn of the infinite pyramid about its axis."""
    x, y, z = _q3(point)
    if not in_infinite_pyramid((x, y, z)):
        raise GeometryDomainError("point %s outside the infinite pyramid" % (point,))
    return (1 - y, x, z)


def rotate_finite(point):
    """Quarter turn of the finite pyramid; fixes the apex and the base centre."""
    xi, eta, zeta = _q3(point)
    if not in_finite_pyramid((xi, eta, zeta)):
        raise GeometryDomainError("point %s outside the finite pyramid" % (point,))
    return (1 - eta - zeta, xi, zeta)


def jacobian_phi(point):
    """Exact 3x3 Jacobian of phi at a point of the infinite pyramid."""
    x, y, z = _q3(point)
    d2 = (1 + z) ** 2
    return (
        (Q(1 + z) / d2, Q(0), -x / d2),
        (Q(0), Q(1 + z) / d2, -y / d2),
        (Q(0), Q(0), Q(1) / d2),
    )


# ---------------------------------------------------------------------
# entities
# ---------------------------------------------------------------------

VERTICES = {
    "v1": (Q(0), Q(0), Q(0)),
    "v2": (Q(1), Q(0), Q(0)),
    "v3": (Q(1), Q(1), Q(0)),
    "v4": (Q(0), Q(1), Q(0)),
    "v5": (Q(0), Q(0), Q(1)),
}

VERTEX_NAMES = ("v1", "v2", "v3", "v4", "v5")
EDGE_NAMES = ("e1", "e2", "e3", "e4", "b1", "b2", "b3", "b4")
FACE_NAMES = ("S1", "S2", "S3", "S4", "B")
TRI_FACE_NAMES = ("S1", "S2", "S3", "S4")
ENTITY_ORDER = VERTEX_NAMES + EDGE_NAMES + FACE_NAMES + ("volume",)


@dataclass(frozen=True)
class Edge:
    name: str
    tail: str
    head: str

    @property
    def is_vertical(self) -> bool:
        return self.name.startswith("e")

    def point(self, t):
        """Affine point tail + t*(head - tail) on the finite pyramid."""
        t = as_q(t)
        a = VERTICES[self.tail]
        b = VERTICES[self.head]
        return tuple(p + t * (q - p) for p, q in zip(a, b))

    @property
    def direction(self):
        a = VERTICES[self.tail]
        b = VERTICES[self.head]
        return tuple(q - p for p, q in zip(a, b))


EDGES = {
    "e1": Edge("e1", "v1", "v5"),
    "e2": Edge("e2", "v2", "v5"),
    "e3": Edge("e3", "v3", "v5"),
    "e4": Edge("e4", "v4", "v5"),
    "b1": Edge("b1", "v1", "v2"),
    "b2": Edge("b2", "v2", "v3"),
    "b3": Edge("b3", "v3", "v4"),
    "b4": Edge("b4", "v1", "v4"),
}


@dataclass(frozen=True)
class Face:
    """A face with an affine parameterization whose frame is fixed once.

    point(u, v) runs over {u,v >= 0, u+v <= 1} for the triangles and the
    unit square for the base.  normal is the outward normal scaled so
    that normal du dv is exactly the vector area element (the cross
    product of the parameter tangents, orientation corrected).
    """

    name: str
    vertices: tuple[str, ...]
    edges: tuple[str, ...]
    origin: tuple
    tangent_u: tuple
    tangent_v: tuple
    normal: tuple
    plane: tuple  # (coeff_xi, coeff_eta, coeff_zeta, offset): plane . p = offset

    @property
    def is_base(self) -> bool:
        return self.name == "B"

    def point(self, u, v):
        u = as_q(u)
        v = as_q(v)
        return tuple(
            o + u * tu + v * tv
            for o, tu, tv in zip(self.origin, self.tangent_u, self.tangent_v)
        )

    def on_plane(self, point) -> bool:
        p = _q3(point)
        a = self.plane
        return a[0] * p[0] + a[1] * p[1] + a[2] * p[2] == a[3]


FACES = {
    "S1": Face(
        "S1",
        ("v1", "v2", "v5"),
        ("b1", "e1", "e2"),
        (Q(0), Q(0), Q(0)),
        (Q(1), Q(0), Q(0)),
        (Q(0), Q(0), Q(1)),
        (Q(0), Q(-1), Q(0)),
        (Q(0), Q(1), Q(0), Q(0)),
    ),
    "S2": Face(
        "S2",
        ("v2", "v3", "v5"),
        ("b2", "e2", "e3"),
        (Q(1), Q(0), Q(0)),
        (Q(0), Q(1), Q(0)),
        (Q(-1), Q(0), Q(1)),
        (Q(1), Q(0), Q(1)),
        (Q(1), Q(0), Q(1), Q(1)),
    ),
    "S3": Face(
        "S3",
        ("v3", "v4", "v5"),
        ("b3", "e3", "e4"),
        (Q(1), Q(1), Q(0)),
        (Q(-1), Q(0), Q(0)),
        (Q(-1), Q(-1), Q(1)),
        (Q(0), Q(1), Q(1)),
        (Q(0), Q(1), Q(1), Q(1)),
    ),
    "S4": Face(
        "S4",
        ("v4", "v1", "v5"),
        ("b4", "e4", "e1"),
        (Q(0), Q(1), Q(0)),
        (Q(0), Q(-1), Q(0)),
        (Q(0), Q(-1), Q(1)),
        (Q(-1), Q(0), Q(0)),
        (Q(1), Q(0), Q(0), Q(0)),
    ),
    "B": Face(
        "B",
        ("v1", "v2", "v3", "v4"),
        ("b1", "b2", "b3", "b4"),
        (Q(0), Q(0), Q(0)),
        (Q(1), Q(0), Q(0)),
        (Q(0), Q(1), Q(0)),
        (Q(0), Q(0), Q(-1)),
        (Q(0), Q(0), Q(1), Q(0)),
    ),
}

# image of each entity under the quarter turn R
ROTATION_MAP = {
    "v1": "v2",
    "v2": "v3",
    "v3": "v4",
    "v4": "v1",
    "v5": "v5",
    "e1": "e2",
    "e2": "e3",
    "e3": "e4",
    "e4": "e1",
    "b1": "b2",
    "b2": "b3",
    "b3": "b4",
    "b4": "b1",
    "S1": "S2",
    "S2": "S3",
    "S3": "S4",
    "S4": "S1",
    "B": "B",
    "volume": "volume",
}


def closure(entity: str) -> frozenset:
    """All entities contained in the closure of the given entity."""
    if entity == "volume":
        return frozenset(ENTITY_ORDER)
    if entity.startswith("v"):
        return frozenset({entity})
    if entity in EDGES:
        e = EDGES[entity]
        return frozenset({entity, e.tail, e.head})
    f = FACES[entity]
    out = {entity}
    out.update(f.vertices)
    for e in f.edges:
        out.update(closure(e))
    return frozenset(out)


def entities_containing(entity: str) -> frozenset:
    """Entities whose closure contains the given entity (its star)."""
    return frozenset(e for e in ENTITY_ORDER if entity in closure(e))


def entity_dimension(entity: str) -> int:
    if entity == "volume":
        return 3
    if entity.startswith("v"):
        return 0
    if entity in EDGES:
        return 1
    return 2


@dataclass(frozen=True)
class PyramidTopology:
    """Bundled view of the labelled reference geometry."""

    vertices: dict
    edges: dict
    faces: dict
    rotation_map: dict

    def check_invariants(self) -> None:
        for name, p in self.vertices.items():
            if not in_finite_pyramid(p):
                raise AssertionError("vertex %s outside the pyramid" % name)
        if self.vertices["v5"] != (0, 0, 1):
            raise AssertionError("apex must be (0,0,1)")
        for face in self.faces.values():
            for (u, v) in ((0, 0), (1, 0), (0, 1), (Q(1, 3), Q(1, 4))):
                if not face.on_plane(face.point(u, v)):
                    raise AssertionError("face %s leaves its plane" % face.name)
        for i in range(4):
            src, dst = "S%d" % (i + 1), self.rotation_map["S%d" % (i + 1)]
            p = self.faces[src].point(Q(1, 5), Q(1, 7))
            if not self.faces[dst].on_plane(rotate_finite(p)):
                raise AssertionError("rotation does not map %s onto %s" % (src, dst))


TOPOLOGY = PyramidTopology(VERTICES, EDGES, FACES, ROTATION_MAP)
