"""Bases of the conforming approximation spaces on the pyramid.

Shape functions are tabulated on the infinite pyramid for one
representative entity of each rotation orbit (base vertex v1, apex,
vertical edge e1, base edge b1, vertical face S1, base face, interior);
the quarter-turn pullback populates the remaining entities.  The
interior families double as the zero-trace bases used by the volume
degrees of freedom.

Two tabulated members are completions forced by the trace and
derivative constraints (every generated function is checked exactly in
the test suite, and the first-order basis is cross-checked against the
classical Whitney-type pyramid element):

* the top vertical-edge function of the edge element is the weighted
  gradient-span member with corner profile (1-x)(1-y), whose tangential
  face traces stay inside the triangular trace space;

* the normal-flux face family of the flux element carries the -z^k
  vertical component only on its (0, k-1) member, which is what keeps
  the divergence inside the scalar space.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .rationals import Q
from .reference import ENTITY_ORDER, FINITE, Frame, INFINITE, ROTATION_MAP, TRI_FACE_NAMES
from .ratpoly import (
    RING_FACE_FIN,
    RING_INF,
    FormField,
    WP,
)
from . import linalg
from .calculus import (
    curl,
    divergence,
    exterior_derivative,
    gradient,
    inverse_pullback,
    pullback,
    rotate_field,
    trace,
)

_X = WP.variable(RING_INF, 0)
_Y = WP.variable(RING_INF, 1)
_Z = WP.variable(RING_INF, 2)
_ONE = WP.constant(RING_INF, 1)
_ZERO = WP.zero(RING_INF)


@dataclass(frozen=True)
class ShapeFunction:
    field: FormField
    entity: str
    family: str
    multi_index: tuple[int, ...]


class BasisSet:
    """Entity-major ordered basis with per-entity dimension bookkeeping."""

    def __init__(self, s: int, k: int, frame: Frame, functions):
        self.s = s
        self.k = k
        self.frame = frame
        self.functions = tuple(functions)
        counts: dict[str, int] = {}
        for f in self.functions:
            counts[f.entity] = counts.get(f.entity, 0) + 1
        self.entity_counts = counts

    def __len__(self):
        return len(self.functions)

    def __iter__(self):
        return iter(self.functions)

    def fields(self):
        return [f.field for f in self.functions]

    def block_slices(self):
        """Ordered (entity, slice) pairs covering the basis."""
        out = []
        start = 0
        for entity in ENTITY_ORDER:
            n = self.entity_counts.get(entity, 0)
            if n:
                out.append((entity, slice(start, start + n)))
                start += n
        return out

    def to_finite(self) -> "BasisSet":
        if self.frame == FINITE:
            return self
        return BasisSet(
            self.s,
            self.k,
            FINITE,
            [
                ShapeFunction(inverse_pullback(f.field), f.entity, f.family, f.multi_index)
                for f in self.functions
            ],
        )


def _mono(a: int, b: int, c: int) -> WP:
    return WP.monomial(RING_INF, (a, b, c), 1)


def _grad_span_member(k: int, r: WP) -> FormField:
    """z^{k-1}/(1+z)^{k+1} (r_x z, r_y z, -r) for a profile r(x,y)."""
    rx, ry = r.diff(0), r.diff(1)
    zk1 = _Z ** (k - 1)
    return FormField(
        1,
        INFINITE,
        (
            (rx * zk1 * _Z).over(k + 1),
            (ry * zk1 * _Z).over(k + 1),
            (-r * zk1).over(k + 1),
        ),
    )


def _vec(c1: WP, c2: WP, c3: WP) -> FormField:
    return FormField(1, INFINITE, (c1, c2, c3))


def _vec2(c1: WP, c2: WP, c3: WP) -> FormField:
    return FormField(2, INFINITE, (c1, c2, c3))


# ---------------------------------------------------------------------
# representative families
# ---------------------------------------------------------------------

def _families_scalar(k: int):
    """(entity, family, [(multi_index, field)]) for the potential element."""
    corner = (1 - _X) * (1 - _Y)
    yield "v1", "vertex", [((), FormField.scalar(0, INFINITE, corner.over(k)))]
    yield "v5", "vertex", [((), FormField.scalar(0, INFINITE, (_Z**k).over(k)))]
    yield "e1", "edge", [
        ((a,), FormField.scalar(0, INFINITE, (corner * _Z**a).over(k)))
        for a in range(1, k)
    ]
    yield "b1", "edge", [
        ((a,), FormField.scalar(0, INFINITE, (corner * _X**a).over(k)))
        for a in range(1, k)
    ]
    yield "S1", "face", [
        ((a, b), FormField.scalar(0, INFINITE, (corner * _X**a * _Z**b).over(k)))
        for a in range(1, k)
        for b in range(1, k - a)
    ]
    yield "B", "face", [
        ((a, b), FormField.scalar(0, INFINITE, (corner * _X**a * _Y**b).over(k)))
        for a in range(1, k)
        for b in range(1, k)
    ]
    interior = _X * (1 - _X) * _Y * (1 - _Y) * _Z
    yield "volume", "interior", [
        ((a, b, c), FormField.scalar(0, INFINITE, (interior * _mono(a, b, c)).over(k)))
        for a, b, c in itertools.product(range(k - 1), repeat=3)
    ]


def _families_edge_element(k: int):
    """(entity, family, members) for the tangential (circulation) element."""
    corner = (1 - _X) * (1 - _Y)
    yield "e1", "edge", [
        (
            (c,),
            _vec(_ZERO, _ZERO, ((_X - 1) * (_Y - 1) * (1 + _Z) ** c).over(k + 1)),
        )
        for c in range(k - 1)
    ] + [((k - 1,), _grad_span_member(k, -corner))]
    yield "b1", "edge", [
        ((c,), _vec((_X**c * (1 - _Y)).over(k + 1), _ZERO, _ZERO)) for c in range(k)
    ]
    yield "S1", "face-tangent", [
        (
            (a, c),
            _vec((_Z * (1 - _Y) * _X**a * (1 + _Z) ** c).over(k + 1), _ZERO, _ZERO),
        )
        for a in range(k - 1)
        for c in range(k - 1 - a)
    ]
    yield "S1", "face-vertical", [
        (
            (a, c),
            _vec(_ZERO, _ZERO, (_X * (1 - _X) * (1 - _Y) * _X**a * _Z**c).over(k + 1)),
        )
        for a in range(max(k - 2, 0))
        for c in range(k - 2 - a)
    ]
    yield "S1", "face-mixed", [
        (
            (a,),
            _vec(
                (corner * _X**a * (1 + _Z) ** (k - a - 2) * _Z).over(k + 1),
                _ZERO,
                (-corner * _X ** (a + 1) * (1 + _Z) ** (k - a - 2)).over(k + 1),
            ),
        )
        for a in range(k - 1)
    ]
    ybub = _Y * (1 - _Y)
    xbub = _X * (1 - _X)
    yield "B", "face-u", [
        ((a, b), _vec((ybub * _X**a * _Y**b).over(k + 1), _ZERO, _ZERO))
        for a in range(k)
        for b in range(k - 1)
    ]
    yield "B", "face-v", [
        ((a, b), _vec(_ZERO, (xbub * _X**a * _Y**b).over(k + 1), _ZERO))
        for a in range(k - 1)
        for b in range(k)
    ]
    for entity, family, members in _families_edge_interior(k):
        yield entity, family, members


def _families_edge_interior(k: int):
    ybub = _Y * (1 - _Y)
    xbub = _X * (1 - _X)
    yield "volume", "interior-u", [
        ((a, b, c), _vec((ybub * _Z * _mono(a, b, c)).over(k + 1), _ZERO, _ZERO))
        for a in range(k)
        for b in range(k - 1)
        for c in range(k - 1)
    ]
    yield "volume", "interior-v", [
        ((a, b, c), _vec(_ZERO, (xbub * _Z * _mono(a, b, c)).over(k + 1), _ZERO))
        for b in range(k)
        for a in range(k - 1)
        for c in range(k - 1)
    ]
    yield "volume", "interior-w", [
        ((a, b, c), _vec(_ZERO, _ZERO, (xbub * ybub * _mono(a, b, c)).over(k + 1)))
        for a in range(k - 1)
        for b in range(k - 1)
        for c in range(k - 1)
    ]
    yield "volume", "interior-grad", [
        ((a, b), _grad_span_member(k, xbub * ybub * _X**a * _Y**b))
        for a in range(k - 1)
        for b in range(k - 1)
    ]


def _families_flux_element(k: int):
    """(entity, family, members) for the normal-flux element."""
    yield "S1", "face", [
        (
            (a, b),
            _vec2(
                _ZERO,
                (2 * (1 - _Y) * _X**a * _Z**b).over(k + 2),
                (-(_Z**k)).over(k + 2) if (a, b) == (0, k - 1) else _ZERO,
            ),
        )
        for a in range(k)
        for b in range(k - a)
    ]
    yield "B", "face", [
        ((a, b), _vec2(_ZERO, _ZERO, (_mono(a, b, 0)).over(k + 2)))
        for a in range(k)
        for b in range(k)
    ]
    for entity, family, members in _families_flux_interior(k):
        yield entity, family, members


def _tx_member(k: int, t: WP) -> FormField:
    """z^{k-1}/(1+z)^{k+2} (2t, 0, (1+z) t_x)."""
    zk1 = _Z ** (k - 1)
    return _vec2(
        (2 * t * zk1).over(k + 2),
        _ZERO,
        (t.diff(0) * zk1 * (1 + _Z)).over(k + 2),
    )


def _sy_member(k: int, s: WP) -> FormField:
    zk1 = _Z ** (k - 1)
    return _vec2(
        _ZERO,
        (2 * s * zk1).over(k + 2),
        (s.diff(1) * zk1 * (1 + _Z)).over(k + 2),
    )


def _families_flux_interior(k: int):
    xbub = _X * (1 - _X)
    ybub = _Y * (1 - _Y)
    yield "volume", "interior-t", [
        ((a, b), _tx_member(k, xbub * _X**a * _Y**b))
        for a in range(k - 1)
        for b in range(k)
    ]
    yield "volume", "interior-s", [
        ((a, b), _sy_member(k, ybub * _X**a * _Y**b))
        for a in range(k)
        for b in range(k - 1)
    ]
    yield "volume", "interior-1", [
        ((a, b, c), _vec2((xbub * _mono(a, b, c)).over(k + 2), _ZERO, _ZERO))
        for a in range(k - 1)
        for b in range(k)
        for c in range(k - 1)
    ]
    yield "volume", "interior-2", [
        ((a, b, c), _vec2(_ZERO, (ybub * _mono(a, b, c)).over(k + 2), _ZERO))
        for a in range(k)
        for b in range(k - 1)
        for c in range(k - 1)
    ]
    yield "volume", "interior-3", [
        ((a, b, c), _vec2(_ZERO, _ZERO, (_Z * _mono(a, b, c)).over(k + 2)))
        for a in range(k)
        for b in range(k)
        for c in range(k - 1)
    ]


def _families_density_element(k: int):
    yield "volume", "interior", [
        ((a, b, c), FormField.scalar(3, INFINITE, _mono(a, b, c).over(k + 3)))
        for a, b, c in itertools.product(range(k), repeat=3)
    ]


_FAMILIES = {
    0: _families_scalar,
    1: _families_edge_element,
    2: _families_flux_element,
    3: _families_density_element,
}

_ROTATING = {"v1", "e1", "b1", "S1"}


def _generate(s: int, k: int) -> list[ShapeFunction]:
    by_entity: dict[str, list[ShapeFunction]] = {e: [] for e in ENTITY_ORDER}
    for entity, family, members in _FAMILIES[s](k):
        for multi, field in members:
            by_entity[entity].append(ShapeFunction(field, entity, family, multi))
        if entity in _ROTATING:
            current = entity
            fields = [m[1] for m in members]
            multis = [m[0] for m in members]
            for _ in range(3):
                current = ROTATION_MAP[current]
                fields = [rotate_field(f) for f in fields]
                for multi, field in zip(multis, fields):
                    by_entity[current].append(ShapeFunction(field, current, family, multi))
    out = []
    for entity in ENTITY_ORDER:
        out.extend(by_entity[entity])
    return out


_BASIS_CACHE: dict[tuple, BasisSet] = {}


def basis(s: int, k: int, frame: Frame = INFINITE) -> BasisSet:
    """The full basis of the order-k space of s-forms, entity-major."""
    if k < 1:
        raise ValueError("order must be at least 1")
    if s not in (0, 1, 2, 3):
        raise ValueError("form degree must be 0..3")
    key = (s, k, frame)
    if key not in _BASIS_CACHE:
        if frame == FINITE:
            _BASIS_CACHE[key] = basis(s, k, INFINITE).to_finite()
        else:
            _BASIS_CACHE[key] = BasisSet(s, k, INFINITE, _generate(s, k))
    return _BASIS_CACHE[key]


def _subset_basis(s: int, k: int, frame: Frame, selector) -> BasisSet:
    members = []
    for entity, family, fams in selector(k):
        for multi, field in fams:
            members.append(ShapeFunction(field, entity, family, multi))
    bs = BasisSet(s, k, INFINITE, members)
    return bs.to_finite() if frame == FINITE else bs


def bubble_basis(k: int, frame: Frame = INFINITE) -> BasisSet:
    """Zero-boundary-trace potentials: (k-1)^3 interior functions."""

    def sel(k):
        yield from (fam for fam in _families_scalar(k) if fam[0] == "volume")

    return _subset_basis(0, k, frame, sel)


def zero_trace_basis(s: int, k: int, frame: Frame = INFINITE) -> BasisSet:
    """Members with vanishing tangential (s=1) or normal (s=2) boundary trace."""
    if s == 0:
        return bubble_basis(k, frame)
    if s == 1:
        return _subset_basis(1, k, frame, _families_edge_interior)
    if s == 2:
        return _subset_basis(2, k, frame, _families_flux_interior)
    raise ValueError("zero-trace bases exist for s = 0, 1, 2")


def curl_bubble_basis(k: int, frame: Frame = INFINITE) -> BasisSet:
    """The curl-injective complement of the gradients of the bubbles.

    Empty at k=1; dimension (2k+1)(k-1)^2 in general.
    """
    ybub = _Y * (1 - _Y)
    xbub = _X * (1 - _X)

    def sel(k):
        yield "volume", "curl-bubble-u", [
            ((a, b, c), _vec((ybub * _Z * _mono(a, b, c)).over(k + 1), _ZERO, _ZERO))
            for a in range(k)
            for b in range(k - 1)
            for c in range(k - 1)
        ]
        yield "volume", "curl-bubble-v", [
            ((a, b, c), _vec(_ZERO, (xbub * _Z * _mono(a, b, c)).over(k + 1), _ZERO))
            for b in range(k)
            for a in range(k - 1)
            for c in range(k - 1)
        ]
        yield "volume", "curl-bubble-w", [
            ((a, b), _vec(_ZERO, _ZERO, (xbub * ybub * _mono(a, b, 0)).over(k + 1)))
            for a in range(k - 1)
            for b in range(k - 1)
        ]

    return _subset_basis(1, k, frame, sel)


def div_bubble_basis(k: int, frame: Frame = INFINITE) -> BasisSet:
    """The div-injective complement inside the zero-flux space; k^3 - 1 members."""
    xbub = _X * (1 - _X)
    ybub = _Y * (1 - _Y)

    def sel(k):
        zk1 = _Z ** (k - 1)
        yield "volume", "div-bubble-r", [
            (
                (p, q),
                _vec2(
                    (r.diff(1) * zk1).over(k + 2),
                    (r.diff(0) * zk1).over(k + 2),
                    (r.diff(0).diff(1) * zk1 * (1 + _Z)).over(k + 2),
                ),
            )
            for p in range(k - 1)
            for q in range(k - 1)
            for r in [xbub * ybub * _X**p * _Y**q]
        ]
        yield "volume", "div-bubble-t", [
            ((p,), _tx_member(k, xbub * _X**p)) for p in range(k - 1)
        ]
        yield "volume", "div-bubble-s", [
            ((q,), _sy_member(k, ybub * _Y**q)) for q in range(k - 1)
        ]
        yield "volume", "div-bubble-z", [
            ((a, b, c), _vec2(_ZERO, _ZERO, (_Z * _mono(a, b, c)).over(k + 2)))
            for a in range(k)
            for b in range(k)
            for c in range(k - 1)
        ]

    return _subset_basis(2, k, frame, sel)


# ---------------------------------------------------------------------
# coordinates, rank, dimension
# ---------------------------------------------------------------------

def coordinate_rows(fields) -> list[dict]:
    """Sparse coefficient rows of the fields in a shared monomial basis.

    Per component the numerators are raised to a common weight, so the
    rows of a list of fields (or surface traces) are directly comparable.
    """
    fields = list(fields)
    if not fields:
        return []
    if isinstance(fields[0], FormField):
        comps = [f.components for f in fields]
    elif isinstance(fields[0], tuple):
        comps = fields
    else:
        comps = [(f,) for f in fields]
    ncomp = len(comps[0])
    weights = [max(c[i].weight for c in comps) for i in range(ncomp)]
    rows = []
    for c in comps:
        row = {}
        for i in range(ncomp):
            for exps, coef in c[i].numerator_at_weight(weights[i]).items():
                row[(i,) + exps] = coef
        rows.append(row)
    return rows


def exact_rank(fields) -> int:
    return linalg.rank_sparse(coordinate_rows(fields))


def in_span(fields, target):
    """Exact coefficients of target over the given fields, or None."""
    rows = coordinate_rows(list(fields) + [target])
    return linalg.solve_in_span(rows[:-1], rows[-1])


_DIM_CACHE: dict[tuple, int] = {}


def dimension(s: int, k: int) -> int:
    """Dimension of the order-k space of s-forms.

    Closed forms exist for the potential (k^3+3k+1) and density (k^3)
    elements; for s = 1, 2 the generated-basis cardinality is returned
    after an exact-rank independence cross-check.
    """
    if k < 1:
        raise ValueError("order must be at least 1")
    if s == 0:
        n = k**3 + 3 * k + 1
    elif s == 3:
        n = k**3
    elif (s, k) in _DIM_CACHE:
        return _DIM_CACHE[(s, k)]
    else:
        b = basis(s, k)
        n = len(b)
        if exact_rank(b.fields()) != n:
            raise AssertionError("generated basis for s=%d k=%d is dependent" % (s, k))
        _DIM_CACHE[(s, k)] = n
    return n


# ---------------------------------------------------------------------
# membership
# ---------------------------------------------------------------------

def _edge_trace_space_ok(pair, k: int) -> bool:
    """Tangential face trace constraint of the edge element.

    The pair of parameter-direction components must lie in
    (P^{k-1}_{k+1})^2 + span{ x^a (1+v)^{k-1-a} * (1+v, -x) }.
    """
    t1, t2 = pair
    w = k + 1
    if t1.weight > w or t2.weight > w:
        return False
    cols = []
    ring = t1.ring
    u = WP.variable(ring, 0)
    v = WP.variable(ring, 1)
    opv = 1 + v
    for i in range(k):
        for j in range(k - i):
            m = (u**i) * (v**j)
            cols.append((m, WP.zero(ring)))
            cols.append((WP.zero(ring), m))
    for a in range(k):
        sa = u**a * opv ** (k - 1 - a)
        cols.append((sa * opv, -(sa * u)))
    rows = coordinate_rows([tuple(c.over(w) if c.weight == 0 else c for c in col) for col in cols] + [(t1, t2)])
    return linalg.solve_in_span(rows[:-1], rows[-1]) is not None


def membership_in_space(field: FormField, s: int, k: int) -> bool:
    """Exact membership in the order-k conforming space of s-forms.

    Finite-pyramid fields are pulled back first.  The test combines the
    derivative characterization of the underlying tensor space with the
    per-face trace constraints.
    """
    if field.degree != s:
        return False
    if field.frame == FINITE:
        try:
            field = pullback(field)
        except Exception:
            return False
    km = k - 1
    if s == 0:
        u = field.components[0]
        if not u.in_Q(k, (k, k, k)):
            return False
        g = gradient(field)
        if not (
            g.components[0].in_Q(k, (km, k, km))
            and g.components[1].in_Q(k, (k, km, km))
            and g.components[2].in_Q(k + 1, (k, k, km))
        ):
            return False
        return all(trace(field, f).data[0].in_P(k, k) for f in TRI_FACE_NAMES)
    if s == 1:
        c1, c2, c3 = field.components
        if not (
            c1.in_Q(k + 1, (km, k, k))
            and c2.in_Q(k + 1, (k, km, k))
            and c3.in_Q(k + 1, (k, k, km))
        ):
            return False
        w = curl(field)
        if not (
            w.components[0].in_Q(k + 2, (k, km, km))
            and w.components[1].in_Q(k + 2, (km, k, km))
            and w.components[2].in_Q(k + 2, (km, km, k))
        ):
            return False
        return all(
            _edge_trace_space_ok(trace(field, f).data, k) for f in TRI_FACE_NAMES
        )
    if s == 2:
        c1, c2, c3 = field.components
        if not (
            c1.in_Q(k + 2, (k, km, km))
            and c2.in_Q(k + 2, (km, k, km))
            and c3.in_Q(k + 2, (km, km, k))
        ):
            return False
        d = divergence(field).components[0]
        if not d.in_Q(k + 3, (km, km, km)):
            return False
        return all(trace(field, f).data[0].in_P(k + 2, km) for f in TRI_FACE_NAMES)
    return field.components[0].in_Q(k + 3, (km, km, km))


def has_zero_boundary_trace(field: FormField, s: int) -> bool:
    """All relevant face traces (full / tangential / normal) vanish exactly."""
    from .reference import FACE_NAMES

    for f in FACE_NAMES:
        t = trace(field, f)
        if any(not d.is_zero() for d in t.data):
            return False
    return True


# ---------------------------------------------------------------------
# trace spaces of the neighbouring tetrahedral and hexahedral elements
# ---------------------------------------------------------------------

def trace_space_dimension(s: int, k: int, base: bool) -> int:
    if base:
        return {0: (k + 1) ** 2, 1: 2 * k * (k + 1), 2: k**2}[s]
    return {0: (k + 1) * (k + 2) // 2, 1: k * k + 2 * k, 2: k * (k + 1) // 2}[s]


def trace_space_generators(s: int, k: int, base: bool):
    """Spanning set of the target trace space in face parameters (u, v).

    Triangular faces carry total-degree spaces plus, for tangential
    traces, the rotated homogeneous completion; the base face carries
    the tensor-degree spaces.
    """
    ring = RING_FACE_FIN
    u = WP.variable(ring, 0)
    v = WP.variable(ring, 1)
    zero = WP.zero(ring)
    gens = []
    if s in (0, 2):
        deg = k if s == 0 else k - 1
        if base:
            rng_i = range(deg + 1) if s == 0 else range(k)
            for i in rng_i:
                for j in rng_i:
                    gens.append(((u**i) * (v**j),))
        else:
            for i in range(deg + 1):
                for j in range(deg + 1 - i):
                    gens.append(((u**i) * (v**j),))
        return gens
    if base:
        for i in range(k):
            for j in range(k + 1):
                gens.append(((u**i) * (v**j), zero))
        for i in range(k + 1):
            for j in range(k):
                gens.append((zero, (u**i) * (v**j)))
        return gens
    for i in range(k):
        for j in range(k - i):
            m = (u**i) * (v**j)
            gens.append((m, zero))
            gens.append((zero, m))
    # homogeneous degree-k completion: m*(v, -u) annihilated by (u, v)
    for i in range(k):
        m = (u**i) * (v ** (k - 1 - i))
        gens.append((m * v, -(m * u)))
    return gens


# ---------------------------------------------------------------------
# the classical first-order element
# ---------------------------------------------------------------------

def classical_lowest_order(s: int) -> list[FormField]:
    """The Whitney-type first-order pyramid basis on the infinite frame."""
    x, y, z = _X, _Y, _Z
    if s == 0:
        return [
            FormField.scalar(0, INFINITE, ((x - 1) * (y - 1)).over(1)),
            FormField.scalar(0, INFINITE, (x * (y - 1)).over(1)),
            FormField.scalar(0, INFINITE, ((x - 1) * y).over(1)),
            FormField.scalar(0, INFINITE, (x * y).over(1)),
            FormField.scalar(0, INFINITE, z.over(1)),
        ]
    if s == 1:
        def v(c1, c2, c3):
            return FormField(1, INFINITE, (c1.over(2), c2.over(2), c3.over(2)))

        zero = _ZERO
        return [
            v(1 - y, zero, zero),
            v(zero, x * _ONE, zero),
            v(y * _ONE, zero, zero),
            v(zero, 1 - x, zero),
            v(z * (1 - y), z * (1 - x), (1 - y) * (1 - x)),
            v(z * (y - 1), x * z, x * (1 - y)),
            v(y * z, z * (x - 1), y * (1 - x)),
            v(-y * z, -x * z, x * y),
        ]
    if s == 2:
        def w(c1, c2, c3):
            return FormField(2, INFINITE, (c1.over(3), c2.over(3), c3.over(3)))

        zero = _ZERO
        return [
            w(zero, 2 * (y - 1), z * _ONE),
            w(2 * (x - 1), zero, z * _ONE),
            w(2 * x * _ONE, zero, z * _ONE),
            w(zero, 2 * y * _ONE, z * _ONE),
            w(zero, zero, -_ONE),
        ]
    if s == 3:
        return [FormField.scalar(3, INFINITE, _ONE.over(4))]
    raise ValueError("s must be 0..3")


def classical_corrected_edge_pair() -> list[FormField]:
    """Finite-pyramid forms of the two repaired first-order edge functions.

    In collapsed coordinates:  (c(b-1), ac, a(1-c)(1-b) + abc)  and its
    mirror under swapping the two horizontal directions.
    """
    from .ratpoly import RING_FIN

    a = WP.variable(RING_FIN, 0)
    b = WP.variable(RING_FIN, 1)
    c = WP.variable(RING_FIN, 2)
    g6 = FormField(1, FINITE, (c * (b - 1), a * c, a * (1 - c) * (1 - b) + a * b * c))
    g7 = FormField(1, FINITE, (b * c, c * (a - 1), b * (1 - c) * (1 - a) + a * b * c))
    return [g6, g7]
