"""Degrees of freedom, their exact and numeric evaluation, and the
DOF-by-basis generalized Vandermonde matrices.

Exterior functionals match the tetrahedral element on the triangular
faces and the hexahedral element on the base: vertex values, edge
moments of the (tangential) trace, and face moments of the full,
tangential or normal trace.  Interior functionals are projections:
grad-against-grad over the scalar bubbles, curl-against-curl over the
curl bubbles, div-against-div over the div bubbles, plus the mean value
for the density element.

Entity moments are taken in each entity's affine parameter coordinates
with the parameter measure; this equals the arclength/area measure up
to a constant per entity, i.e. it is a legitimate choice of test basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

from .rationals import Q, QZERO, as_q, beta_moment
from .reference import (
    EDGE_NAMES,
    EDGES,
    FACE_NAMES,
    FACES,
    FINITE,
    TRI_FACE_NAMES,
    VERTEX_NAMES,
    VERTICES,
)
from .ratpoly import (
    RING_FIN,
    FormField,
    WP,
    integrate_finite,
    integrate_unit_interval,
    integrate_unit_square,
    integrate_unit_triangle,
)
from . import linalg
from .calculus import (
    curl,
    divergence,
    evaluate_scalar,
    exterior_derivative,
    face_frame,
    gradient,
    inverse_pullback,
    trace,
)
from .spaces import basis, bubble_basis, curl_bubble_basis, div_bubble_basis

VERTEX_EVAL = "VertexEval"
EDGE_MOMENT = "EdgeMoment"
TRI_FACE_MOMENT = "TriFaceMoment"
BASE_FACE_MOMENT = "BaseFaceMoment"
VOL_GRAD = "VolumeGradProj"
VOL_CURL = "VolumeCurlProj"
VOL_DIV = "VolumeDivProj"
VOL_L2 = "VolumeL2Proj"
MEAN_VALUE = "MeanValue"

_TRANSFORMS = {
    "id": lambda f: f,
    "grad": gradient,
    "curl": curl,
    "div": divergence,
}


class DofKindError(TypeError):
    pass


@dataclass(frozen=True)
class DofFunctional:
    """One functional: kind, entity, and its test data.

    Moment functionals carry monomial test exponents (and for the
    tangential element a parameter-direction slot).  Volume functionals
    carry the exact test field, already differentiated, together with
    the transform applied to the argument before pairing.
    """

    s: int
    k: int
    kind: str
    entity: str
    index: int
    test_exponents: tuple = ()
    slot: int = 0
    transform: str = "id"
    test_field: FormField | None = None
    source_field: FormField | None = None

    def label(self) -> str:
        if self.kind == VERTEX_EVAL:
            return "%s:eval" % self.entity
        if self.kind == EDGE_MOMENT:
            return "%s:t^%d" % (self.entity, self.test_exponents[0])
        if self.kind in (TRI_FACE_MOMENT, BASE_FACE_MOMENT):
            i, j = self.test_exponents
            tag = "%s:u^%dv^%d" % (self.entity, i, j)
            if self.s == 1:
                tag += ":slot%d" % self.slot
            return tag
        if self.kind == MEAN_VALUE:
            return "volume:mean"
        return "volume:%s#%d" % (self.transform, self.index)


# ---------------------------------------------------------------------
# DOF sets
# ---------------------------------------------------------------------

def _tri_monomials(max_total: int):
    return [(i, j) for i in range(max_total + 1) for j in range(max_total + 1 - i)]


def _quad_monomials(max_u: int, max_v: int):
    return [(i, j) for i in range(max_u + 1) for j in range(max_v + 1)]


_DOF_CACHE: dict[tuple, tuple] = {}


def dof_set(s: int, k: int) -> tuple[DofFunctional, ...]:
    """The ordered (entity-major) functionals of the order-k element."""
    if k < 1:
        raise ValueError("order must be at least 1")
    key = (s, k)
    if key in _DOF_CACHE:
        return _DOF_CACHE[key]
    out: list[DofFunctional] = []
    if s == 0:
        for v in VERTEX_NAMES:
            out.append(DofFunctional(s, k, VERTEX_EVAL, v, 0))
        for e in EDGE_NAMES:
            for j in range(k - 1):
                out.append(DofFunctional(s, k, EDGE_MOMENT, e, j, (j,)))
        for f in TRI_FACE_NAMES:
            for idx, (i, j) in enumerate(_tri_monomials(k - 3)):
                out.append(DofFunctional(s, k, TRI_FACE_MOMENT, f, idx, (i, j)))
        for idx, (i, j) in enumerate(_quad_monomials(k - 2, k - 2)):
            out.append(DofFunctional(s, k, BASE_FACE_MOMENT, "B", idx, (i, j)))
        for idx, sf in enumerate(bubble_basis(k, FINITE)):
            out.append(
                DofFunctional(
                    s,
                    k,
                    VOL_GRAD,
                    "volume",
                    idx,
                    transform="grad",
                    test_field=gradient(sf.field),
                    source_field=sf.field,
                )
            )
    elif s == 1:
        for e in EDGE_NAMES:
            for j in range(k):
                out.append(DofFunctional(s, k, EDGE_MOMENT, e, j, (j,)))
        for f in TRI_FACE_NAMES:
            idx = 0
            for slot in (0, 1):
                for (i, j) in _tri_monomials(k - 2):
                    out.append(
                        DofFunctional(s, k, TRI_FACE_MOMENT, f, idx, (i, j), slot=slot)
                    )
                    idx += 1
        idx = 0
        for (i, j) in _quad_monomials(k - 1, k - 2):
            out.append(DofFunctional(s, k, BASE_FACE_MOMENT, "B", idx, (i, j), slot=0))
            idx += 1
        for (i, j) in _quad_monomials(k - 2, k - 1):
            out.append(DofFunctional(s, k, BASE_FACE_MOMENT, "B", idx, (i, j), slot=1))
            idx += 1
        for idx, sf in enumerate(bubble_basis(k, FINITE)):
            out.append(
                DofFunctional(
                    s,
                    k,
                    VOL_GRAD,
                    "volume",
                    idx,
                    test_field=gradient(sf.field),
                    source_field=sf.field,
                )
            )
        for idx, sf in enumerate(curl_bubble_basis(k, FINITE)):
            out.append(
                DofFunctional(
                    s,
                    k,
                    VOL_CURL,
                    "volume",
                    idx,
                    transform="curl",
                    test_field=curl(sf.field),
                    source_field=sf.field,
                )
            )
    elif s == 2:
        for f in TRI_FACE_NAMES:
            for idx, (i, j) in enumerate(_tri_monomials(k - 1)):
                out.append(DofFunctional(s, k, TRI_FACE_MOMENT, f, idx, (i, j)))
        for idx, (i, j) in enumerate(_quad_monomials(k - 1, k - 1)):
            out.append(DofFunctional(s, k, BASE_FACE_MOMENT, "B", idx, (i, j)))
        for idx, sf in enumerate(curl_bubble_basis(k, FINITE)):
            out.append(
                DofFunctional(
                    s,
                    k,
                    VOL_CURL,
                    "volume",
                    idx,
                    test_field=curl(sf.field),
                    source_field=sf.field,
                )
            )
        for idx, sf in enumerate(div_bubble_basis(k, FINITE)):
            out.append(
                DofFunctional(
                    s,
                    k,
                    VOL_DIV,
                    "volume",
                    idx,
                    transform="div",
                    test_field=divergence(sf.field),
                    source_field=sf.field,
                )
            )
    elif s == 3:
        for idx, sf in enumerate(div_bubble_basis(k, FINITE)):
            out.append(
                DofFunctional(
                    s,
                    k,
                    VOL_L2,
                    "volume",
                    idx,
                    test_field=divergence(sf.field),
                    source_field=sf.field,
                )
            )
        out.append(
            DofFunctional(
                s,
                k,
                MEAN_VALUE,
                "volume",
                len(out),
                test_field=FormField.scalar(3, FINITE, WP.constant(RING_FIN, 1)),
            )
        )
    else:
        raise ValueError("form degree must be 0..3")
    _DOF_CACHE[key] = tuple(out)
    return _DOF_CACHE[key]


# ---------------------------------------------------------------------
# exact application
# ---------------------------------------------------------------------

def _shifted_moment_tri(trace_wp: WP, exps) -> Q:
    mono = WP.monomial(trace_wp.ring, tuple(exps), 1)
    return integrate_unit_triangle(trace_wp * mono)


def _shifted_moment_square(trace_wp: WP, exps) -> Q:
    mono = WP.monomial(trace_wp.ring, tuple(exps), 1)
    return integrate_unit_square(trace_wp * mono)


def pair_fields(left: FormField, right: FormField) -> Q:
    """Exact volume pairing of two finite-pyramid fields."""
    total = QZERO
    for a, b in zip(left.components, right.components):
        if not (a.is_zero() or b.is_zero()):
            total += integrate_finite(a * b)
    return total


def apply_dof_exact(dof: DofFunctional, field: FormField) -> Q:
    if field.frame != FINITE:
        field = inverse_pullback(field)
    if field.degree != dof.s:
        raise DofKindError(
            "functional for %d-forms applied to a %d-form" % (dof.s, field.degree)
        )
    kind = dof.kind
    if kind == VERTEX_EVAL:
        return evaluate_scalar(field.components[0], VERTICES[dof.entity])
    if kind == EDGE_MOMENT:
        tr = trace(field, dof.entity).data
        mono = WP.monomial(tr.ring, dof.test_exponents, 1)
        return integrate_unit_interval(tr * mono)
    if kind in (TRI_FACE_MOMENT, BASE_FACE_MOMENT):
        t = trace(field, dof.entity)
        data = t.data[dof.slot] if dof.s == 1 else t.data[0]
        if kind == TRI_FACE_MOMENT:
            return _shifted_moment_tri(data, dof.test_exponents)
        return _shifted_moment_square(data, dof.test_exponents)
    if kind in (VOL_GRAD, VOL_CURL, VOL_DIV, VOL_L2, MEAN_VALUE):
        arg = _TRANSFORMS[dof.transform](field)
        return pair_fields(dof.test_field, arg)
    raise DofKindError("unknown functional kind %r" % kind)


# ---------------------------------------------------------------------
# fast exact bilinear pairing (separable moments)
# ---------------------------------------------------------------------

def volume_pairing(lefts, rights) -> list[list[Q]]:
    """Matrix of exact volume pairings; separable-moment contraction.

    The collapsed volume element (1-c)^2 da db dc splits into three
    one-dimensional moments, so each entry is a three-mode contraction
    of the left coefficient cube against the right coefficient terms.
    """
    lefts = [f.components for f in lefts]
    rights = [f.components for f in rights]
    if not lefts or not rights:
        return [[] for _ in lefts]
    ncomp = len(lefts[0])
    out = [[QZERO] * len(rights) for _ in lefts]
    for comp in range(ncomp):
        wl = max(f[comp].weight for f in lefts)
        wr = max(f[comp].weight for f in rights)
        m = 2 - wl - wr
        if m < 0:
            # fall back to the direct product path
            for i, lf in enumerate(lefts):
                for j, rf in enumerate(rights):
                    if not (lf[comp].is_zero() or rf[comp].is_zero()):
                        out[i][j] += integrate_finite(lf[comp] * rf[comp])
            continue
        lterms = [f[comp].numerator_at_weight(wl) for f in lefts]
        rterms = [f[comp].numerator_at_weight(wr) for f in rights]
        if not any(lterms) or not any(rterms):
            continue
        la = 1 + max((e[0] for t in lterms for e in t), default=0)
        lb = 1 + max((e[1] for t in lterms for e in t), default=0)
        lc = 1 + max((e[2] for t in lterms for e in t), default=0)
        ra = 1 + max((e[0] for t in rterms for e in t), default=0)
        rb = 1 + max((e[1] for t in rterms for e in t), default=0)
        rc = 1 + max((e[2] for t in rterms for e in t), default=0)
        ka = [[Q(1, i + j + 1) for j in range(ra)] for i in range(la)]
        kb = [[Q(1, i + j + 1) for j in range(rb)] for i in range(lb)]
        kc = [[beta_moment(i + j, m) for j in range(rc)] for i in range(lc)]
        for i, terms in enumerate(lterms):
            if not terms:
                continue
            # mode-wise transform of the left cube against the kernels
            t1: dict = {}
            for (a, b, c), coef in terms.items():
                row = ka[a]
                for a2 in range(ra):
                    key = (a2, b, c)
                    t1[key] = t1.get(key, QZERO) + coef * row[a2]
            t2: dict = {}
            for (a2, b, c), coef in t1.items():
                row = kb[b]
                for b2 in range(rb):
                    key = (a2, b2, c)
                    t2[key] = t2.get(key, QZERO) + coef * row[b2]
            t3: dict = {}
            for (a2, b2, c), coef in t2.items():
                row = kc[c]
                for c2 in range(rc):
                    key = (a2, b2, c2)
                    t3[key] = t3.get(key, QZERO) + coef * row[c2]
            row_out = out[i]
            for j, rterm in enumerate(rterms):
                if not rterm:
                    continue
                acc = QZERO
                for exps, coef in rterm.items():
                    v = t3.get(exps)
                    if v:
                        acc += coef * v
                row_out[j] += acc
    return out


# ---------------------------------------------------------------------
# Vandermonde matrices
# ---------------------------------------------------------------------

_VAND_CACHE: dict[tuple, list] = {}
_SOLVER_CACHE: dict[tuple, linalg.BlockTriangularSolver] = {}


def vandermonde(s: int, k: int):
    """Exact matrix m_i(b_j) with entity-major rows (DOFs) and columns (basis)."""
    key = (s, k)
    if key in _VAND_CACHE:
        return _VAND_CACHE[key]
    bfin = basis(s, k, FINITE)
    dofs = dof_set(s, k)
    if len(bfin) != len(dofs):
        raise AssertionError(
            "size mismatch: %d functionals vs %d basis functions" % (len(dofs), len(bfin))
        )
    cols = bfin.fields()
    n = len(cols)
    rows = [[QZERO] * n for _ in range(n)]
    trace_cache: dict[tuple, object] = {}

    def cached_trace(j, entity):
        key2 = (j, entity)
        if key2 not in trace_cache:
            trace_cache[key2] = trace(cols[j], entity)
        return trace_cache[key2]

    # exterior rows, then contiguous volume groups via the fast pairing
    vol_groups: dict[tuple, list[int]] = {}
    for i, dof in enumerate(dofs):
        if dof.entity == "volume":
            vol_groups.setdefault((dof.kind, dof.transform), []).append(i)
            continue
        if dof.kind == VERTEX_EVAL:
            pt = VERTICES[dof.entity]
            for j in range(n):
                rows[i][j] = evaluate_scalar(cols[j].components[0], pt)
        elif dof.kind == EDGE_MOMENT:
            for j in range(n):
                tr = cached_trace(j, dof.entity).data
                mono = WP.monomial(tr.ring, dof.test_exponents, 1)
                rows[i][j] = integrate_unit_interval(tr * mono)
        else:
            for j in range(n):
                t = cached_trace(j, dof.entity)
                data = t.data[dof.slot] if s == 1 else t.data[0]
                if dof.kind == TRI_FACE_MOMENT:
                    rows[i][j] = _shifted_moment_tri(data, dof.test_exponents)
                else:
                    rows[i][j] = _shifted_moment_square(data, dof.test_exponents)
    for (_, transform), indices in vol_groups.items():
        lefts = [dofs[i].test_field for i in indices]
        rights = [_TRANSFORMS[transform](f) for f in cols]
        block = volume_pairing(lefts, rights)
        for bi, i in enumerate(indices):
            rows[i] = block[bi]
    _VAND_CACHE[key] = rows
    return rows


def dof_block_slices(s: int, k: int):
    """Ordered (entity, slice) blocks of the DOF/basis entity structure."""
    dofs = dof_set(s, k)
    out = []
    start = 0
    current = None
    for i, d in enumerate(dofs):
        if d.entity != current:
            if current is not None:
                out.append((current, slice(start, i)))
            current = d.entity
            start = i
    out.append((current, slice(start, len(dofs))))
    return out


def vandermonde_solver(s: int, k: int) -> linalg.BlockTriangularSolver:
    """Exact repeated-solve factorization exploiting the entity block structure."""
    key = (s, k)
    if key not in _SOLVER_CACHE:
        rows = vandermonde(s, k)
        blocks = [(sl.start, sl.stop) for _, sl in dof_block_slices(s, k)]
        _SOLVER_CACHE[key] = linalg.BlockTriangularSolver(rows, blocks)
    return _SOLVER_CACHE[key]


def unisolvency_determinant(s: int, k: int) -> Q:
    """Exact determinant of the Vandermonde matrix."""
    return vandermonde_solver(s, k).determinant()


# ---------------------------------------------------------------------
# numeric quadrature and smooth inputs
# ---------------------------------------------------------------------

def _gauss01(n: int):
    x, w = roots_legendre(n)
    return (x + 1.0) / 2.0, w / 2.0


def _jacobi01(n: int, alpha: int):
    x, w = roots_jacobi(n, alpha, 0.0)
    return (x + 1.0) / 2.0, w / (2.0 ** (alpha + 1))


@dataclass
class NumericQuadrature:
    """Tensor rules on the collapsed cube, the faces and the edges.

    The volume rule integrates f(a,b,c) (1-c)^2 da db dc exactly for f
    of per-direction degree <= 2n-1 (the (1-c)^2 factor is the built-in
    weight of the c-direction rule); points are also provided in
    physical coordinates for smooth callables.
    """

    n: int
    degree: int
    volume_collapsed: np.ndarray
    volume_physical: np.ndarray
    volume_weights: np.ndarray
    tri_params: np.ndarray
    tri_weights: np.ndarray
    square_params: np.ndarray
    square_weights: np.ndarray
    edge_params: np.ndarray
    edge_weights: np.ndarray
    _cache: dict = dataclass_field(default_factory=dict, repr=False)


def build_quadrature(n: int) -> NumericQuadrature:
    if n < 1:
        raise ValueError("need at least one point per direction")
    ga, wa = _gauss01(n)
    gc, wc = _jacobi01(n, 2)  # weight (1-c)^2
    gt, wt = _jacobi01(n, 1)  # weight (1-t): collapsed triangle factor
    a, b, c = np.meshgrid(ga, ga, gc, indexing="ij")
    w = np.einsum("i,j,k->ijk", wa, wa, wc)
    coll = np.column_stack([a.ravel(), b.ravel(), c.ravel()])
    phys = np.column_stack(
        [coll[:, 0] * (1 - coll[:, 2]), coll[:, 1] * (1 - coll[:, 2]), coll[:, 2]]
    )
    su, sv = np.meshgrid(ga, gt, indexing="ij")
    tri = np.column_stack([(su * (1 - sv)).ravel(), sv.ravel()])
    tri_w = np.einsum("i,j->ij", wa, wt).ravel()
    qu, qv = np.meshgrid(ga, ga, indexing="ij")
    sq = np.column_stack([qu.ravel(), qv.ravel()])
    sq_w = np.einsum("i,j->ij", wa, wa).ravel()
    return NumericQuadrature(
        n=n,
        degree=2 * n - 1,
        volume_collapsed=coll,
        volume_physical=phys,
        volume_weights=w.ravel(),
        tri_params=tri,
        tri_weights=tri_w,
        square_params=sq,
        square_weights=sq_w,
        edge_params=ga.copy(),
        edge_weights=wa.copy(),
    )


def compile_wp(f: WP):
    """Float evaluator of a weighted polynomial on (N, nvars) arrays."""
    if not f.terms:
        nv = f.ring.nvars
        return lambda pts: np.zeros(len(np.atleast_2d(pts)))
    exps = np.array(sorted(f.terms), dtype=np.int64)
    coefs = np.array([float(f.terms[tuple(e)]) for e in exps])
    w = f.weight
    sgn = f.ring.sign

    def evaluate(pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        vals = np.prod(pts[:, None, :] ** exps[None, :, :], axis=2) @ coefs
        if w:
            vals = vals / (1.0 + sgn * pts[:, -1]) ** w
        return vals

    return evaluate


def _physical_to_collapsed(pts: np.ndarray) -> np.ndarray:
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    d = 1.0 - pts[:, 2]
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.column_stack([pts[:, 0] / d, pts[:, 1] / d, pts[:, 2]])


def compile_field(field: FormField):
    """Float evaluator of a finite-pyramid field at physical points.

    At the apex the collapsed chart degenerates; there the c=1 limit of
    the constant-in-(a,b) part is used, which is the field value
    whenever the field extends continuously.
    """
    comps = [compile_wp(c) for c in field.components]
    apex_vals = []
    for c in field.components:
        if c.weight:
            apex_vals.append(float("nan"))
        else:
            apex_vals.append(
                float(sum((v for (a, b, _), v in c.terms.items() if a == b == 0), QZERO))
            )

    def evaluate(pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        coll = _physical_to_collapsed(pts)
        at_apex = pts[:, 2] >= 1.0
        coll[at_apex] = 0.0
        vals = np.column_stack([c(coll) for c in comps])
        if np.any(at_apex):
            vals[at_apex] = np.array(apex_vals)
        return vals[:, 0] if len(comps) == 1 else vals

    return evaluate


class SmoothField:
    """A smooth input: point evaluation plus caller-supplied derivatives.

    value maps (xi, eta, zeta) to a scalar (s = 0, 3) or length-3 array
    (s = 1, 2).  Functionals that integrate grad/curl/div of the input
    require the matching callable; no numeric differentiation is done.
    """

    def __init__(self, s: int, value, grad=None, curl=None, div=None):
        self.s = s
        self.value = value
        self.grad = grad
        self.curl = curl
        self.div = div

    @classmethod
    def from_exact(cls, field: FormField) -> "SmoothField":
        if field.frame != FINITE:
            field = inverse_pullback(field)
        ev = compile_field(field)
        kw = {}
        if field.degree in (0, 1, 2):
            d = exterior_derivative(field)
            dv = compile_field(d)
            kw = {{0: "grad", 1: "curl", 2: "div"}[field.degree]: lambda p, _f=dv: _f(p)}
        value = lambda p, _f=ev: _f(p)
        return cls(field.degree, value, **kw)

    def _component(self, pts, which: str):
        fn = getattr(self, which)
        if fn is None:
            raise DofKindError("smooth input lacks the %s callable" % which)
        return np.atleast_2d(np.asarray(fn(pts), dtype=float))


def _eval_smooth(smooth: SmoothField, pts) -> np.ndarray:
    vals = np.asarray(smooth.value(pts), dtype=float)
    return np.atleast_1d(vals)


def _test_values(quad: NumericQuadrature, field: FormField, tag: str) -> np.ndarray:
    key = (field, tag)
    if key not in quad._cache:
        comps = [compile_wp(c) for c in field.components]
        vals = np.column_stack([c(quad.volume_collapsed) for c in comps])
        quad._cache[key] = vals
    return quad._cache[key]


def apply_dof_numeric(dof: DofFunctional, smooth: SmoothField, quad: NumericQuadrature):
    if smooth.s != dof.s:
        raise DofKindError(
            "functional for %d-forms applied to a %d-form input" % (dof.s, smooth.s)
        )
    kind = dof.kind
    if kind == VERTEX_EVAL:
        pt = np.array([[float(c) for c in VERTICES[dof.entity]]])
        return float(_eval_smooth(smooth, pt)[0])
    if kind == EDGE_MOMENT:
        edge = EDGES[dof.entity]
        ts = quad.edge_params
        pts = np.array([[float(c) for c in edge.point(0)]]) + np.outer(
            ts, [float(c) for c in edge.direction]
        )
        vals = np.asarray(smooth.value(pts), dtype=float)
        if dof.s == 1:
            vals = np.atleast_2d(vals) @ np.array([float(c) for c in edge.direction])
        qv = ts ** dof.test_exponents[0]
        return float(np.sum(quad.edge_weights * qv * np.ravel(vals)))
    if kind in (TRI_FACE_MOMENT, BASE_FACE_MOMENT):
        face = FACES[dof.entity]
        params = quad.square_params if kind == BASE_FACE_MOMENT else quad.tri_params
        weights = quad.square_weights if kind == BASE_FACE_MOMENT else quad.tri_weights
        origin = np.array([float(c) for c in face.origin])
        tu = np.array([float(c) for c in face.tangent_u])
        tv = np.array([float(c) for c in face.tangent_v])
        pts = origin + np.outer(params[:, 0], tu) + np.outer(params[:, 1], tv)
        vals = np.asarray(smooth.value(pts), dtype=float)
        if dof.s == 0:
            integrand = np.ravel(vals)
        elif dof.s == 1:
            direction = (tu, tv)[dof.slot]
            integrand = np.atleast_2d(vals) @ direction
        else:
            _, _, nrm = face_frame(dof.entity, FINITE)
            integrand = np.atleast_2d(vals) @ np.array([float(c) for c in nrm])
        i, j = dof.test_exponents
        qv = params[:, 0] ** i * params[:, 1] ** j
        return float(np.sum(weights * qv * integrand))
    # volume projections
    tag = "%s/%s" % (dof.kind, dof.index)
    tvals = _test_values(quad, dof.test_field, tag)
    if dof.transform == "id":
        avals = np.asarray(smooth.value(quad.volume_physical), dtype=float)
    else:
        avals = smooth._component(quad.volume_physical, dof.transform)
    avals = np.atleast_2d(avals)
    if avals.shape[0] == 1 and tvals.shape[1] == 1:
        avals = avals.T
    prod = np.sum(np.atleast_2d(tvals) * avals, axis=1)
    return float(np.sum(quad.volume_weights * prod))


def apply_dof(dof: DofFunctional, target, quad: NumericQuadrature | None = None):
    """Exact value on FormFields, quadrature value on smooth inputs."""
    if isinstance(target, FormField):
        return apply_dof_exact(dof, target)
    if isinstance(target, SmoothField):
        if quad is None:
            quad = default_quadrature(dof.k)
        return apply_dof_numeric(dof, target, quad)
    raise DofKindError("target must be a FormField or a SmoothField")


_QUAD_CACHE: dict[int, NumericQuadrature] = {}


def default_quadrature(k: int) -> NumericQuadrature:
    """Default rule: k+3 points per direction (degree 2k+5 per direction)."""
    n = k + 3
    if n not in _QUAD_CACHE:
        _QUAD_CACHE[n] = build_quadrature(n)
    return _QUAD_CACHE[n]
