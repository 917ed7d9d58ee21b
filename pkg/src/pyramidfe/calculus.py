"""Exterior calculus on the two reference pyramids.

grad/curl/div, the pullbacks along the projective map and its inverse,
pullbacks along the quarter-turn rotation, traces onto faces and edges,
and the weighted inner products of the infinite pyramid.

Finite-pyramid fields are stored in collapsed coordinates
(a,b,c) = (xi/(1-zeta), eta/(1-zeta), zeta).  The physical partial
derivatives act on that representation through the chain rule

    d/dxi  = (1/(1-c)) d/da
    d/deta = (1/(1-c)) d/db
    d/dzeta = (a d/da + b d/db)/(1-c) + d/dc,

so derivatives may raise the (1-c) weight by one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rationals import Q, QZERO, as_q
from .reference import EDGES, FACES, FINITE, Frame, INFINITE
from .ratpoly import (
    RING_EDGE_FIN,
    RING_EDGE_INF,
    RING_FACE_FIN,
    RING_FACE_INF,
    RING_FIN,
    RING_INF,
    RING_PHYS,
    FormField,
    FrameMismatchError,
    WP,
    integrate_finite,
    integrate_infinite,
    ring_for,
)


class RepresentationError(ValueError):
    """Inverse pullback leaves the collapsed-polynomial class.

    This is exactly the obstruction that forces some tensor functions
    out of the approximation spaces: their finite-pyramid counterparts
    have no limit at the apex.
    """


class TraceUndefinedError(ValueError):
    pass


# ---------------------------------------------------------------------
# partial derivatives and the de Rham operators
# ---------------------------------------------------------------------

_A = WP.variable(RING_FIN, 0)
_B = WP.variable(RING_FIN, 1)


def partials(f: WP) -> tuple[WP, WP, WP]:
    """Cartesian partial derivatives in the frame the field lives on."""
    if f.ring == RING_INF:
        return (f.diff(0), f.diff(1), f.diff(2))
    if f.ring == RING_FIN:
        fa, fb, fc = f.diff(0), f.diff(1), f.diff(2)
        return (
            fa.over(1),
            fb.over(1),
            (_A * fa + _B * fb).over(1) + fc,
        )
    raise FrameMismatchError("partials need a volume ring")


def gradient(u: FormField) -> FormField:
    return FormField(1, u.frame, partials(u.components[0]))


def curl(e: FormField) -> FormField:
    d = [partials(c) for c in e.components]
    return FormField(
        2,
        e.frame,
        (d[2][1] - d[1][2], d[0][2] - d[2][0], d[1][0] - d[0][1]),
    )


def divergence(v: FormField) -> FormField:
    d = [partials(c) for c in v.components]
    return FormField.scalar(3, v.frame, d[0][0] + d[1][1] + d[2][2])


def exterior_derivative(field: FormField) -> FormField:
    if field.degree == 0:
        return gradient(field)
    if field.degree == 1:
        return curl(field)
    if field.degree == 2:
        return divergence(field)
    raise ValueError("3-forms have no exterior derivative here")


# ---------------------------------------------------------------------
# pullbacks along the projective map
# ---------------------------------------------------------------------

_X = WP.variable(RING_INF, 0)
_Y = WP.variable(RING_INF, 1)
_ONE_PLUS_Z = WP(RING_INF, {(0, 0, 0): Q(1), (0, 0, 1): Q(1)})
_Z_OVER = WP.monomial(RING_INF, (0, 0, 1), 1, weight=1)  # z/(1+z)
_ONE_MINUS_C = WP(RING_FIN, {(0, 0, 0): Q(1), (0, 0, 1): Q(-1)})
_C_OVER = WP.monomial(RING_FIN, (0, 0, 1), 1, weight=1)  # c/(1-c)

_TO_INF_ARGS = (_X, _Y, _Z_OVER)
_TO_FIN_ARGS = (
    WP.variable(RING_FIN, 0),
    WP.variable(RING_FIN, 1),
    _C_OVER,
)


def _to_inf(f: WP) -> WP:
    """Collapsed-coordinate scalar composed with phi."""
    return f.substitute(_TO_INF_ARGS, _ONE_PLUS_Z)


def _to_fin(f: WP) -> WP:
    """Infinite-pyramid scalar composed with phi^{-1} (collapsed form)."""
    return f.substitute(_TO_FIN_ARGS, _ONE_MINUS_C)


def pullback(field: FormField) -> FormField:
    """Transport an s-form from the finite to the infinite pyramid."""
    if field.frame != FINITE:
        raise FrameMismatchError("pullback transports finite-pyramid fields")
    s = field.degree
    if s == 0:
        return FormField.scalar(0, INFINITE, _to_inf(field.components[0]))
    if s == 1:
        e1, e2, e3 = (_to_inf(c) for c in field.components)
        return FormField(
            1,
            INFINITE,
            (
                e1.over(1),
                e2.over(1),
                ((-_X) * e1 + (-_Y) * e2 + e3).over(2),
            ),
        )
    if s == 2:
        v1, v2, v3 = (_to_inf(c) for c in field.components)
        return FormField(
            2,
            INFINITE,
            (
                (v1 + _X * v3).over(3),
                (v2 + _Y * v3).over(3),
                (_ONE_PLUS_Z * v3).over(3),
            ),
        )
    q = _to_inf(field.components[0])
    return FormField.scalar(3, INFINITE, q.over(4))


def inverse_pullback(field: FormField) -> FormField:
    """Transport an s-form from the infinite to the finite pyramid.

    Raises RepresentationError when the result is not a polynomial in
    collapsed coordinates (no apex limit).
    """
    if field.frame != INFINITE:
        raise FrameMismatchError("inverse pullback transports infinite-pyramid fields")
    s = field.degree
    if s == 0:
        pre = (field.components[0],)
    elif s == 1:
        e1, e2, e3 = field.components
        pre = (
            _ONE_PLUS_Z * e1,
            _ONE_PLUS_Z * e2,
            _ONE_PLUS_Z * (_X * e1 + _Y * e2) + _ONE_PLUS_Z * _ONE_PLUS_Z * e3,
        )
    elif s == 2:
        v1, v2, v3 = field.components
        z2 = _ONE_PLUS_Z * _ONE_PLUS_Z
        z3 = z2 * _ONE_PLUS_Z
        pre = (z3 * v1 - _X * z2 * v3, z3 * v2 - _Y * z2 * v3, z2 * v3)
    else:
        pre = (_ONE_PLUS_Z**4 * field.components[0],)
    out = []
    for g in pre:
        h = _to_fin(g)
        if h.weight != 0:
            raise RepresentationError(
                "field has no collapsed-polynomial form on the finite pyramid"
            )
        out.append(h)
    return FormField(s, FINITE, tuple(out))


# ---------------------------------------------------------------------
# rotation pullbacks
# ---------------------------------------------------------------------

_ROT_INF_ARGS = (
    _Y,
    WP(RING_INF, {(0, 0, 0): Q(1), (1, 0, 0): Q(-1)}),  # 1-x
    WP.variable(RING_INF, 2),
)
_ROT_FIN_ARGS = (
    _B,
    WP(RING_FIN, {(0, 0, 0): Q(1), (1, 0, 0): Q(-1)}),  # 1-a
    WP.variable(RING_FIN, 2),
)
_INV_DENOM_INF = WP.constant(RING_INF, 1).over(1)
_INV_DENOM_FIN = WP.constant(RING_FIN, 1).over(1)


def rotate_field(field: FormField) -> FormField:
    """Pull back along the inverse quarter turn.

    A shape function attached to an entity maps to one attached to the
    rotated entity (v1 -> v2, e1 -> e2, S1 -> S2, ...).
    """
    s = field.degree
    if field.frame == INFINITE:
        comp = tuple(
            c.substitute(_ROT_INF_ARGS, _INV_DENOM_INF) for c in field.components
        )
        if s in (0, 3):
            return FormField.scalar(s, INFINITE, comp[0])
        # both the covariant and contravariant in-plane transforms are the
        # quarter-turn matrix [[0,-1],[1,0]] here since det = 1
        return FormField(s, INFINITE, (-comp[1], comp[0], comp[2]))
    comp = tuple(c.substitute(_ROT_FIN_ARGS, _INV_DENOM_FIN) for c in field.components)
    if s in (0, 3):
        return FormField.scalar(s, FINITE, comp[0])
    if s == 1:
        return FormField(1, FINITE, (-comp[1], comp[0], -comp[1] + comp[2]))
    return FormField(2, FINITE, (-comp[1] - comp[2], comp[0], comp[2]))


# ---------------------------------------------------------------------
# traces
# ---------------------------------------------------------------------

def _const2(ring, v):
    return WP.constant(ring, v)


def _var_u(ring):
    return WP.variable(ring, 0)


def _var_v(ring):
    return WP.variable(ring, 1)


def _u_over(ring):
    return WP.monomial(ring, (1, 0), 1, weight=1)


def _face_substitution(name: str, frame: Frame):
    """(args, inv_denom) sending a volume field to the face parameters."""
    if frame == INFINITE:
        ring = RING_FACE_INF
        u, v = _var_u(ring), _var_v(ring)
        inv = _const2(ring, 1).over(1)  # 1/(1+v)
        table = {
            "S1": ((u, _const2(ring, 0), v), inv),
            "S2": ((_const2(ring, 1), u, v), inv),
            "S3": ((1 - u, _const2(ring, 1), v), inv),
            "S4": ((_const2(ring, 0), 1 - u, v), inv),
            "B": ((u, v, _const2(ring, 0)), _const2(ring, 1)),
        }
        return table[name]
    ring = RING_FACE_FIN
    u, v = _var_u(ring), _var_v(ring)
    uo = _u_over(ring)  # u/(1-v)
    inv = _const2(ring, 1).over(1)  # 1/(1-v)
    table = {
        "S1": ((uo, _const2(ring, 0), v), inv),
        "S2": ((_const2(ring, 1), uo, v), inv),
        "S3": ((1 - uo, _const2(ring, 1), v), inv),
        "S4": ((_const2(ring, 0), 1 - uo, v), inv),
        "B": ((u, v, _const2(ring, 0)), _const2(ring, 1)),
    }
    return table[name]


def _edge_substitution(name: str, frame: Frame):
    if frame == INFINITE:
        ring = RING_EDGE_INF
        t = WP.variable(ring, 0)
        zero, one = _const2(ring, 0), _const2(ring, 1)
        inv = one.over(1)
        table = {
            "e1": ((zero, zero, t), inv),
            "e2": ((one, zero, t), inv),
            "e3": ((one, one, t), inv),
            "e4": ((zero, one, t), inv),
            "b1": ((t, zero, zero), one),
            "b2": ((one, t, zero), one),
            "b3": ((1 - t, one, zero), one),
            "b4": ((zero, t, zero), one),
        }
        return table[name]
    ring = RING_EDGE_FIN
    t = WP.variable(ring, 0)
    zero, one = _const2(ring, 0), _const2(ring, 1)
    inv = one.over(1)
    table = {
        "e1": ((zero, zero, t), inv),
        "e2": ((one, zero, t), inv),
        "e3": ((one, one, t), inv),
        "e4": ((zero, one, t), inv),
        "b1": ((t, zero, zero), one),
        "b2": ((one, t, zero), one),
        "b3": ((1 - t, one, zero), one),
        "b4": ((zero, t, zero), one),
    }
    return table[name]


# face frames: (tangent_u, tangent_v, outward scaled normal)
_FACE_FRAME_INF = {
    "S1": ((1, 0, 0), (0, 0, 1), (0, -1, 0)),
    "S2": ((0, 1, 0), (0, 0, 1), (1, 0, 0)),
    "S3": ((-1, 0, 0), (0, 0, 1), (0, 1, 0)),
    "S4": ((0, -1, 0), (0, 0, 1), (-1, 0, 0)),
    "B": ((1, 0, 0), (0, 1, 0), (0, 0, -1)),
}


def face_frame(name: str, frame: Frame):
    if frame == INFINITE:
        return _FACE_FRAME_INF[name]
    f = FACES[name]
    return (f.tangent_u, f.tangent_v, f.normal)


def edge_direction(name: str, frame: Frame):
    if frame == INFINITE:
        return {
            "e1": (0, 0, 1),
            "e2": (0, 0, 1),
            "e3": (0, 0, 1),
            "e4": (0, 0, 1),
            "b1": (1, 0, 0),
            "b2": (0, 1, 0),
            "b3": (-1, 0, 0),
            "b4": (0, 1, 0),
        }[name]
    return EDGES[name].direction


@dataclass(frozen=True)
class SurfaceField:
    """Face trace: a scalar for 0- and 2-forms, a tangential pair for 1-forms.

    The pair holds the components along the face's two parameter
    directions; the 2-form trace is the flux density against the
    outward vector area element.
    """

    face: str
    frame: Frame
    degree: int
    data: tuple[WP, ...]


@dataclass(frozen=True)
class EdgeTrace:
    edge: str
    frame: Frame
    degree: int
    data: WP


def _dot_with(field: FormField, vector) -> WP:
    total = WP.zero(ring_for(field.frame))
    for comp, coef in zip(field.components, vector):
        c = as_q(coef)
        if c:
            total = total + comp * c
    return total


def trace(field: FormField, entity: str):
    """Trace onto a face or edge.

    0-forms restrict; 1-forms keep tangential components (the pair
    along the face parameters, or the component along an edge);
    2-forms keep the normal flux density on faces.
    """
    s = field.degree
    if s == 3:
        raise TraceUndefinedError("3-forms have no boundary traces")
    if entity in FACES:
        args, inv = _face_substitution(entity, field.frame)
        tu, tv, nrm = face_frame(entity, field.frame)
        if s == 0:
            return SurfaceField(
                entity, field.frame, 0, (field.components[0].substitute(args, inv),)
            )
        if s == 1:
            return SurfaceField(
                entity,
                field.frame,
                1,
                (
                    _dot_with(field, tu).substitute(args, inv),
                    _dot_with(field, tv).substitute(args, inv),
                ),
            )
        return SurfaceField(
            entity, field.frame, 2, (_dot_with(field, nrm).substitute(args, inv),)
        )
    if entity in EDGES:
        if s == 2:
            raise TraceUndefinedError("2-forms have no edge traces")
        args, inv = _edge_substitution(entity, field.frame)
        if s == 0:
            return EdgeTrace(
                entity, field.frame, 0, field.components[0].substitute(args, inv)
            )
        d = edge_direction(entity, field.frame)
        return EdgeTrace(entity, field.frame, 1, _dot_with(field, d).substitute(args, inv))
    raise ValueError("unknown entity %r" % entity)


# ---------------------------------------------------------------------
# physical polynomials
# ---------------------------------------------------------------------

def physical_monomial(alpha: int, beta: int, gamma: int) -> WP:
    """xi^alpha eta^beta zeta^gamma as a collapsed-coordinate polynomial."""
    mono = WP.monomial(RING_FIN, (alpha, beta, gamma), 1)
    return mono * _ONE_MINUS_C ** (alpha + beta)


def physical_polynomial(f: WP) -> WP:
    """Convert a plain polynomial in (xi,eta,zeta) to collapsed form."""
    if f.ring != RING_PHYS or f.weight != 0:
        raise ValueError("expected a plain physical-coordinate polynomial")
    total = WP.zero(RING_FIN)
    for (al, be, ga), coef in f.terms.items():
        total = total + physical_monomial(al, be, ga) * coef
    return total


def physical_form(s: int, components) -> FormField:
    return FormField(s, FINITE, tuple(physical_polynomial(c) for c in components))


# ---------------------------------------------------------------------
# evaluation of finite-pyramid fields
# ---------------------------------------------------------------------

class ApexValueError(ArithmeticError):
    """The field has no single value at the apex (path-dependent limit)."""


def _collapsed_point(point):
    xi, eta, zeta = (as_q(c) for c in point)
    d = 1 - zeta
    return (xi / d, eta / d, zeta)


def evaluate_scalar(f: WP, point) -> Q:
    """Evaluate a collapsed-form scalar at a physical point of the pyramid."""
    xi, eta, zeta = (as_q(c) for c in point)
    if zeta != 1:
        return f.evaluate(_collapsed_point((xi, eta, zeta)))
    if f.weight != 0:
        raise ApexValueError("denominator pole at the apex")
    groups = {}
    for (a, b, c), coef in f.terms.items():
        groups[(a, b)] = groups.get((a, b), QZERO) + coef
    groups = {k: v for k, v in groups.items() if v}
    if not groups:
        return QZERO
    if set(groups) == {(0, 0)}:
        return groups[(0, 0)]
    raise ApexValueError("value at the apex depends on the approach path")


def evaluate_field(field: FormField, point):
    """Exact value(s) of a finite-pyramid field at a physical point."""
    if field.frame != FINITE:
        return tuple(c.evaluate(point) for c in field.components)
    vals = tuple(evaluate_scalar(c, point) for c in field.components)
    return vals


# ---------------------------------------------------------------------
# weighted inner products on the infinite pyramid
# ---------------------------------------------------------------------

def weight_matrix_first_kind():
    """|Dphi| Dphi^{-1} Dphi^{-T}: the 1-form metric (positive definite)."""
    x, y = _X, _Y
    opz = _ONE_PLUS_Z
    one = WP.constant(RING_INF, 1)
    rows = (
        (one + x * x, x * y, x * opz),
        (x * y, one + y * y, y * opz),
        (x * opz, y * opz, opz * opz),
    )
    return tuple(tuple(e.over(2) for e in row) for row in rows)


def weight_matrix_second_kind():
    """|Dphi^{-1}| Dphi^T Dphi: the 2-form metric (positive definite)."""
    x, y = _X, _Y
    opz = _ONE_PLUS_Z
    one = WP.constant(RING_INF, 1)
    return (
        (opz * opz, WP.zero(RING_INF), -x * opz),
        (WP.zero(RING_INF), opz * opz, -y * opz),
        (-x * opz, -y * opz, one + x * x + y * y),
    )


def _quadratic(matrix, vec: FormField) -> WP:
    total = WP.zero(RING_INF)
    for i in range(3):
        for j in range(3):
            if not matrix[i][j].is_zero():
                total = total + vec.components[i] * matrix[i][j] * vec.components[j]
    return total


def weighted_norm_sq(field: FormField) -> Q:
    """Exact squared weighted norm of an infinite-pyramid field."""
    if field.frame != INFINITE:
        raise FrameMismatchError("weighted norms live on the infinite pyramid")
    s = field.degree
    z4 = _ONE_PLUS_Z**4
    if s == 0:
        u = field.components[0]
        g = gradient(field)
        return integrate_infinite(
            (u * u).over(4) + _quadratic(weight_matrix_first_kind(), g)
        )
    if s == 1:
        c = curl(field)
        return integrate_infinite(
            _quadratic(weight_matrix_first_kind(), field)
            + _quadratic(weight_matrix_second_kind(), c)
        )
    if s == 2:
        d = divergence(field).components[0]
        return integrate_infinite(
            _quadratic(weight_matrix_second_kind(), field) + z4 * d * d
        )
    u = field.components[0]
    return integrate_infinite(z4 * u * u)


def sobolev_norm_sq(field: FormField) -> Q:
    """Exact squared Sobolev norm on the finite pyramid (graph norms)."""
    if field.frame != FINITE:
        raise FrameMismatchError("Sobolev norms live on the finite pyramid")
    s = field.degree

    def l2(f: FormField) -> Q:
        total = QZERO
        for c in f.components:
            total += integrate_finite(c * c)
        return total

    if s == 3:
        return l2(field)
    return l2(field) + l2(exterior_derivative(field))
