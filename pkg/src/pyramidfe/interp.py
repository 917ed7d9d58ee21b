"""Interpolation operators and the verification suite.

The interpolant of u is the unique member of the order-k space whose
functionals agree with those of u; existence and uniqueness are the
unisolvency of the functional sets, which is itself one of the checks.

The verification suite proves, in exact rational arithmetic:
dimension identities, unisolvency, discrete exactness of the
grad/curl/div sequence, the commuting-diagram property, polynomial
reproduction, the first-order cross-check, trace compatibility with the
neighbouring tetrahedral/hexahedral elements, the Helmholtz-type
interior decompositions, and the non-polynomial-extension
counterexample.  A secondary floating-point path exercises the same
operators on transcendental inputs through numeric quadrature.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .rationals import Q, QZERO, as_q, q_str
from .reference import FACE_NAMES, FINITE, INFINITE, TRI_FACE_NAMES
from .ratpoly import (
    RING_FACE_FIN,
    RING_FIN,
    RING_PHYS,
    FormField,
    WP,
    integrate_finite,
    linear_combination,
)
from . import linalg
from .calculus import (
    evaluate_scalar,
    exterior_derivative,
    gradient,
    inverse_pullback,
    physical_form,
    pullback,
    trace,
)
from .spaces import (
    BasisSet,
    basis,
    bubble_basis,
    classical_corrected_edge_pair,
    classical_lowest_order,
    coordinate_rows,
    curl_bubble_basis,
    dimension,
    div_bubble_basis,
    exact_rank,
    in_span,
    membership_in_space,
    trace_space_dimension,
    trace_space_generators,
    zero_trace_basis,
)
from .dofs import (
    NumericQuadrature,
    SmoothField,
    apply_dof_exact,
    apply_dof_numeric,
    default_quadrature,
    dof_set,
    unisolvency_determinant,
    vandermonde,
    vandermonde_solver,
    volume_pairing,
    _TRANSFORMS,
)


# ---------------------------------------------------------------------
# fast functional evaluation and interpolation
# ---------------------------------------------------------------------

def dof_values(s: int, k: int, target: FormField) -> list[Q]:
    """All functionals of the order-k element applied to an exact field."""
    if target.frame != FINITE:
        target = inverse_pullback(target)
    dofs = dof_set(s, k)
    out = [QZERO] * len(dofs)
    vol_groups: dict[str, list[int]] = {}
    for i, dof in enumerate(dofs):
        if dof.entity == "volume":
            vol_groups.setdefault(dof.transform, []).append(i)
        else:
            out[i] = apply_dof_exact(dof, target)
    for transform, indices in vol_groups.items():
        arg = _TRANSFORMS[transform](target)
        col = volume_pairing([dofs[i].test_field for i in indices], [arg])
        for pos, i in enumerate(indices):
            out[i] = col[pos][0]
    return out


@dataclass
class Interpolant:
    """Coefficients of the interpolant over the entity-major basis."""

    s: int
    k: int
    coefficients: list
    exact: bool

    def as_field(self, frame=FINITE) -> FormField:
        if not self.exact:
            raise ValueError("only exact interpolants expand to exact fields")
        return linear_combination(basis(self.s, self.k, frame).fields(), self.coefficients)

    def residual_dofs(self, target, quad: NumericQuadrature | None = None):
        """Per-functional defect m(u) - m(interpolant of u)."""
        dofs = dof_set(self.s, self.k)
        rows = vandermonde(self.s, self.k)
        if self.exact:
            mu = dof_values(self.s, self.k, target)
            return [
                mu[i] - sum((rows[i][j] * c for j, c in enumerate(self.coefficients) if c), QZERO)
                for i in range(len(dofs))
            ]
        quad = quad or default_quadrature(self.k)
        mu = np.array([apply_dof_numeric(d, target, quad) for d in dofs])
        vf = _vandermonde_float(self.s, self.k)
        return list(mu - vf @ np.asarray(self.coefficients))


_VAND_FLOAT: dict[tuple, np.ndarray] = {}


def _vandermonde_float(s: int, k: int) -> np.ndarray:
    key = (s, k)
    if key not in _VAND_FLOAT:
        _VAND_FLOAT[key] = np.array([[float(x) for x in row] for row in vandermonde(s, k)])
    return _VAND_FLOAT[key]


def interpolate(s: int, k: int, target, quad: NumericQuadrature | None = None) -> Interpolant:
    """Solve the functional-matching system for the given input."""
    if isinstance(target, FormField):
        rhs = dof_values(s, k, target)
        coeffs = vandermonde_solver(s, k).solve(rhs)
        return Interpolant(s, k, coeffs, exact=True)
    if isinstance(target, SmoothField):
        quad = quad or default_quadrature(k)
        rhs = np.array([apply_dof_numeric(d, target, quad) for d in dof_set(s, k)])
        coeffs = np.linalg.solve(_vandermonde_float(s, k), rhs)
        return Interpolant(s, k, coeffs, exact=False)
    raise TypeError("target must be a FormField or a SmoothField")


# ---------------------------------------------------------------------
# derivative transfer matrices
# ---------------------------------------------------------------------

_TRANSFER_CACHE: dict[tuple, list] = {}


def transfer_matrix(s: int, k: int):
    """Exact matrix of d: coefficients of d(b_j) over the (s+1)-basis.

    Each image is interpolated and then reconstructed exactly, which
    certifies d(b_j) membership in the next space independently of the
    interpolation step.
    """
    key = (s, k)
    if key in _TRANSFER_CACHE:
        return _TRANSFER_CACHE[key]
    bs = basis(s, k, FINITE)
    bnext = basis(s + 1, k, FINITE).fields()
    cols = []
    for f in bs.fields():
        df = exterior_derivative(f)
        coeffs = interpolate(s + 1, k, df).coefficients
        if linear_combination(bnext, coeffs) != df:
            raise AssertionError(
                "derivative of a basis function leaves the next space (s=%d,k=%d)" % (s, k)
            )
        cols.append(coeffs)
    n = len(bnext)
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(n)]
    _TRANSFER_CACHE[key] = rows
    return rows


# ---------------------------------------------------------------------
# check plumbing
# ---------------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    status: str  # pass / fail / skip
    details: dict = dataclass_field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status != "fail"


@dataclass
class VerificationReport:
    max_order: int
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "max_order": self.max_order,
            "passed": self.passed,
            "checks": [
                {
                    "name": c.name,
                    "status": c.status,
                    "details": c.details,
                    "seconds": round(c.seconds, 4),
                }
                for c in self.checks
            ],
        }

    def summary_lines(self) -> list:
        out = []
        for c in self.checks:
            out.append("[%s] %s (%.2fs)" % (c.status.upper().ljust(4), c.name, c.seconds))
        out.append(
            "%d/%d checks passed" % (sum(1 for c in self.checks if c.passed), len(self.checks))
        )
        return out


def _timed(name):
    def wrap(fn):
        def inner(*args, **kwargs):
            t0 = time.perf_counter()
            result = fn(*args, **kwargs)
            result.seconds = time.perf_counter() - t0
            result.name = result.name or name
            return result

        return inner

    return wrap


# ---------------------------------------------------------------------
# individual checks
# ---------------------------------------------------------------------

def verify_dimensions(k: int) -> CheckResult:
    t0 = time.perf_counter()
    observed = {
        "potential": dimension(0, k),
        "density": dimension(3, k),
        "potential_bubbles": len(bubble_basis(k)),
        "tangential_zero_trace": len(zero_trace_basis(1, k)),
        "curl_bubbles": len(curl_bubble_basis(k)),
        "flux_zero_trace": len(zero_trace_basis(2, k)),
        "div_bubbles": len(div_bubble_basis(k)),
    }
    expected = {
        "potential": k**3 + 3 * k + 1,
        "density": k**3,
        "potential_bubbles": (k - 1) ** 3,
        "tangential_zero_trace": 3 * k * (k - 1) ** 2,
        "curl_bubbles": (2 * k + 1) * (k - 1) ** 2,
        "flux_zero_trace": 3 * k**3 - 3 * k**2,
        "div_bubbles": k**3 - 1,
    }
    # independence of every family, so counts are dimensions
    families = [
        bubble_basis(k),
        zero_trace_basis(1, k),
        curl_bubble_basis(k),
        zero_trace_basis(2, k),
        div_bubble_basis(k),
    ]
    independent = all(exact_rank(b.fields()) == len(b) for b in families if len(b))
    ok = observed == expected and independent
    return CheckResult(
        "dimensions[k=%d]" % k,
        "pass" if ok else "fail",
        {"observed": observed, "expected": expected, "families_independent": independent},
        time.perf_counter() - t0,
    )


def verify_unisolvency(s: int, k: int, corrupt: bool = False) -> CheckResult:
    t0 = time.perf_counter()
    details: dict = {"dimension": dimension(s, k)}
    try:
        if corrupt:
            rows = [list(r) for r in vandermonde(s, k)]
            for r in rows:
                r[0] = r[-1]
            det = linalg.determinant(rows)
            details["corrupted"] = True
        else:
            det = unisolvency_determinant(s, k)
        details["determinant_is_zero"] = det == 0
        status = "fail" if det == 0 else "pass"
    except ValueError as exc:  # block structure violated
        details["error"] = str(exc)
        status = "fail"
    return CheckResult("unisolvency[s=%d,k=%d]" % (s, k), status, details, time.perf_counter() - t0)


def verify_exact_sequence(k: int) -> CheckResult:
    t0 = time.perf_counter()
    details: dict = {}
    ok = True
    dims = [dimension(s, k) for s in range(4)]
    try:
        t = [transfer_matrix(s, k) for s in range(3)]
    except AssertionError as exc:
        return CheckResult(
            "exact_sequence[k=%d]" % k,
            "fail",
            {"error": str(exc)},
            time.perf_counter() - t0,
        )
    ranks = [linalg.rank_dense(m) for m in t]
    details["ranks"] = {"grad": ranks[0], "curl": ranks[1], "div": ranks[2]}
    # constants span the kernel of grad
    const = FormField.scalar(0, FINITE, WP.constant(RING_FIN, 1))
    details["constants_in_space"] = in_span(basis(0, k, FINITE).fields(), const) is not None
    ok &= details["constants_in_space"]
    ok &= ranks[0] == dims[0] - 1
    # image(grad) = kernel(curl): d^2 = 0 plus matching dimensions
    dd0 = all(
        exterior_derivative(exterior_derivative(f)).is_zero()
        for f in basis(0, k, FINITE).fields()
    )
    dd1 = all(
        exterior_derivative(exterior_derivative(f)).is_zero()
        for f in basis(1, k, FINITE).fields()
    )
    details["dd_zero"] = dd0 and dd1
    ok &= dd0 and dd1
    ok &= ranks[1] == dims[1] - (dims[0] - 1)
    ok &= ranks[2] == dims[2] - ranks[1]
    details["div_surjective"] = ranks[2] == dims[2] - ranks[1] == dims[3]
    ok &= ranks[2] == dims[3]
    return CheckResult(
        "exact_sequence[k=%d]" % k, "pass" if ok else "fail", details, time.perf_counter() - t0
    )


def _physical_monomial_forms(s: int, max_degree: int):
    """All monomial s-forms of total degree <= max_degree (physical coords)."""
    monos = [
        (a, b, c)
        for a in range(max_degree + 1)
        for b in range(max_degree + 1 - a)
        for c in range(max_degree + 1 - a - b)
    ]
    out = []
    zero = WP.zero(RING_PHYS)
    for m in monos:
        p = WP.monomial(RING_PHYS, m, 1)
        if s in (0, 3):
            out.append((m, physical_form(s, [p])))
        else:
            for slot in range(3):
                comps = [zero, zero, zero]
                comps[slot] = p
                out.append((m + (slot,), physical_form(s, comps)))
    return out


def verify_commuting(k: int, quad: NumericQuadrature | None = None,
                     numeric: bool = True) -> CheckResult:
    t0 = time.perf_counter()
    details: dict = {}
    ok = True
    transfers = [transfer_matrix(s, k) for s in range(3)]
    exact_failures = []
    for s in range(3):
        for tag, p in _physical_monomial_forms(s, k + 1):
            left = linalg.mat_vec(transfers[s], interpolate(s, k, p).coefficients)
            right = interpolate(s + 1, k, exterior_derivative(p)).coefficients
            if any(a != b for a, b in zip(left, right)):
                exact_failures.append((s, tag))
    details["exact_monomial_failures"] = exact_failures
    ok &= not exact_failures
    if numeric:
        quad = quad or default_quadrature(k)
        worst = 0.0
        for sample in _transcendental_samples():
            for s in range(3):
                u, du = sample[s]
                tf = np.array([[float(x) for x in row] for row in transfers[s]])
                left = tf @ np.asarray(interpolate(s, k, u, quad).coefficients)
                right = np.asarray(interpolate(s + 1, k, du, quad).coefficients)
                gap = float(np.max(np.abs(left - right))) if len(left) else 0.0
                worst = max(worst, gap)
        details["numeric_worst_defect"] = worst
        details["numeric_tolerance"] = 1e-8
        ok &= worst <= 1e-8
    return CheckResult(
        "commuting_diagram[k=%d]" % k, "pass" if ok else "fail", details, time.perf_counter() - t0
    )


def _trig(amplitude, wave, phase):
    w = np.asarray(wave)

    def value(pts):
        pts = np.atleast_2d(pts)
        return amplitude * np.sin(pts @ w + phase)

    def partial(j):
        def d(pts):
            pts = np.atleast_2d(pts)
            return amplitude * w[j] * np.cos(pts @ w + phase)

        return d

    return value, partial


def _transcendental_samples():
    """Five smooth sample chains (0-form, 1-form, 2-form) with derivatives."""
    rng = random.Random(20240)
    samples = []
    for _ in range(5):
        waves = [
            np.array([rng.uniform(0.15, 0.55) for _ in range(3)]) for _ in range(4)
        ]
        phases = [rng.uniform(0.0, 2.0) for _ in range(4)]
        amps = [rng.uniform(0.5, 1.5) for _ in range(4)]
        f, fd = _trig(amps[0], waves[0], phases[0])
        grad0 = lambda pts, fd=fd: np.column_stack([fd(j)(pts) for j in range(3)])
        zero3 = lambda pts: np.zeros((len(np.atleast_2d(pts)), 3))
        zero1 = lambda pts: np.zeros(len(np.atleast_2d(pts)))
        p0 = SmoothField(0, f, grad=grad0)
        dp0 = SmoothField(1, grad0, curl=zero3)
        comps = [_trig(amps[i + 1], waves[i + 1], phases[i + 1]) for i in range(3)]

        def vec_value(pts, comps=comps):
            return np.column_stack([c[0](pts) for c in comps])

        def curl_value(pts, comps=comps):
            d = [[comps[i][1](j) for j in range(3)] for i in range(3)]
            return np.column_stack(
                [
                    d[2][1](pts) - d[1][2](pts),
                    d[0][2](pts) - d[2][0](pts),
                    d[1][0](pts) - d[0][1](pts),
                ]
            )

        def div_value(pts, comps=comps):
            return sum(comps[i][1](i)(pts) for i in range(3))

        u1 = SmoothField(1, vec_value, curl=curl_value)
        du1 = SmoothField(2, curl_value, div=zero1)
        u2 = SmoothField(2, vec_value, div=div_value)
        du2 = SmoothField(3, div_value)
        samples.append(((p0, dp0), (u1, du1), (u2, du2)))
    return samples


def verify_polynomial_reproduction(k: int) -> CheckResult:
    t0 = time.perf_counter()
    failures = []
    for s in range(4):
        deg = k if s == 0 else k - 1
        for tag, p in _physical_monomial_forms(s, deg):
            if not membership_in_space(p, s, k):
                failures.append((s, tag, "membership"))
                continue
            if interpolate(s, k, p).as_field() != p:
                failures.append((s, tag, "projection"))
    return CheckResult(
        "polynomial_reproduction[k=%d]" % k,
        "pass" if not failures else "fail",
        {"failures": failures},
        time.perf_counter() - t0,
    )


def verify_lowest_order() -> CheckResult:
    t0 = time.perf_counter()
    details: dict = {}
    ok = True
    for s in range(4):
        gen = basis(s, 1).fields()
        ref = classical_lowest_order(s)
        fwd = all(in_span(gen, g) is not None for g in ref)
        bwd = all(in_span(ref, g) is not None for g in gen)
        details["s=%d" % s] = {"reference_in_span": fwd, "generated_in_span": bwd}
        ok &= fwd and bwd and len(gen) == len(ref)
    g6, g7 = classical_corrected_edge_pair()
    pair_ok = (
        pullback(g6) == classical_lowest_order(1)[5]
        and pullback(g7) == classical_lowest_order(1)[6]
    )
    details["corrected_pair_matches"] = pair_ok
    ok &= pair_ok
    return CheckResult(
        "lowest_order_crosscheck", "pass" if ok else "fail", details, time.perf_counter() - t0
    )


def verify_trace_compatibility(k: int) -> CheckResult:
    t0 = time.perf_counter()
    details: dict = {}
    ok = True
    for s in range(3):
        bfin = basis(s, k, FINITE)
        for face in FACE_NAMES:
            base = face == "B"
            gens = trace_space_generators(s, k, base)
            dim_target = trace_space_dimension(s, k, base)
            traces = [trace(f, face).data for f in bfin.fields()]
            r_gens = exact_rank(gens)
            r_traces = exact_rank(traces)
            r_union = exact_rank(gens + traces)
            good = r_gens == dim_target and r_traces == dim_target and r_union == dim_target
            details["s=%d,%s" % (s, face)] = {
                "target_dim": dim_target,
                "span_rank": r_traces,
                "union_rank": r_union,
            }
            ok &= good
    return CheckResult(
        "trace_compatibility[k=%d]" % k, "pass" if ok else "fail", details, time.perf_counter() - t0
    )


def random_member(s: int, k: int, rng: random.Random, frame=FINITE) -> FormField:
    fields = basis(s, k, frame).fields()
    coeffs = [Q(rng.randint(-3, 3)) for _ in fields]
    if not any(coeffs):
        coeffs[0] = Q(1)
    return linear_combination(fields, coeffs)


def verify_helmholtz(k: int, seed: int = 7, trials: int = 3) -> CheckResult:
    t0 = time.perf_counter()
    rng = random.Random(seed)
    details: dict = {}
    ok = True

    def decomposition_check(name, part_sets, members, expected_dim):
        nonlocal ok
        columns = [f for fs in part_sets for f in fs]
        r = exact_rank(columns) if columns else 0
        unique = r == len(columns) == expected_dim
        solved = True
        for target in members:
            coeffs = in_span(columns, target) if columns else ([] if target.is_zero() else None)
            if coeffs is None:
                solved = False
                break
            rebuilt = linear_combination(columns, coeffs) if columns else target * Q(0)
            if rebuilt != target:
                solved = False
                break
        details[name] = {"direct_sum_dim": r, "expected_dim": expected_dim, "solved": solved}
        ok &= unique and solved

    # tangential zero-trace = gradients of bubbles + curl bubbles
    grads = [gradient(f) for f in bubble_basis(k, FINITE).fields()]
    curls_basis = curl_bubble_basis(k, FINITE).fields()
    members = [
        linear_combination(
            zero_trace_basis(1, k, FINITE).fields(),
            [Q(rng.randint(-3, 3)) for _ in range(len(zero_trace_basis(1, k, FINITE)))],
        )
        for _ in range(trials)
        if len(zero_trace_basis(1, k, FINITE))
    ]
    decomposition_check(
        "tangential", [grads, curls_basis], members, 3 * k * (k - 1) ** 2
    )
    # flux zero-trace = curls of curl bubbles + div bubbles
    curl_images = [exterior_derivative(f) for f in curls_basis]
    divb = div_bubble_basis(k, FINITE).fields()
    members = [
        linear_combination(
            zero_trace_basis(2, k, FINITE).fields(),
            [Q(rng.randint(-3, 3)) for _ in range(len(zero_trace_basis(2, k, FINITE)))],
        )
        for _ in range(trials)
        if len(zero_trace_basis(2, k, FINITE))
    ]
    decomposition_check("flux", [curl_images, divb], members, 3 * k**3 - 3 * k**2)
    # density = divergences of div bubbles + constants
    div_images = [exterior_derivative(f) for f in divb]
    const = FormField.scalar(3, FINITE, WP.constant(RING_FIN, 1))
    members = [random_member(3, k, rng) for _ in range(trials)]
    decomposition_check("density", [div_images, [const]], members, k**3)
    return CheckResult(
        "helmholtz[k=%d]" % k, "pass" if ok else "fail", details, time.perf_counter() - t0
    )


def verify_quadrature_fidelity(
    k: int, seed: int = 11, fields_per_space: int = 50, quad: NumericQuadrature | None = None
) -> CheckResult:
    t0 = time.perf_counter()
    rng = random.Random(seed)
    quad = quad or default_quadrature(k)
    worst = 0.0
    for s in range(4):
        rows = vandermonde(s, k)
        dofs = dof_set(s, k)
        nb = len(rows)
        for _ in range(fields_per_space):
            coeffs = [Q(rng.randint(-3, 3)) for _ in range(nb)]
            fld = linear_combination(basis(s, k, FINITE).fields(), coeffs)
            smooth = SmoothField.from_exact(fld)
            exact_vals = linalg.mat_vec(rows, coeffs)
            for dof, ev in zip(dofs, exact_vals):
                nv = apply_dof_numeric(dof, smooth, quad)
                gap = abs(float(ev) - nv) / max(1.0, abs(float(ev)))
                worst = max(worst, gap)
    ok = worst <= 1e-12
    return CheckResult(
        "quadrature_fidelity[k=%d]" % k,
        "pass" if ok else "fail",
        {"worst_relative_defect": worst, "tolerance": 1e-12, "fields_per_space": fields_per_space},
        time.perf_counter() - t0,
    )


# ---------------------------------------------------------------------
# the non-polynomial extension counterexample
# ---------------------------------------------------------------------

def counterexample_field() -> FormField:
    """xi zeta (xi+zeta-1)(eta+zeta-1) / (1-zeta), in collapsed form."""
    a = WP.variable(RING_FIN, 0)
    b = WP.variable(RING_FIN, 1)
    c = WP.variable(RING_FIN, 2)
    omc = WP(RING_FIN, {(0, 0, 0): Q(1), (0, 0, 1): Q(-1)})
    return FormField.scalar(0, FINITE, a * c * (a - 1) * (b - 1) * omc * omc)


def _phys_face_substitutions():
    ring = RING_PHYS
    u = WP.variable(RING_FACE_FIN, 0)
    v = WP.variable(RING_FACE_FIN, 1)
    one = WP.constant(RING_FACE_FIN, 1)
    zero = WP.zero(RING_FACE_FIN)
    return {
        "S1": (u, zero, v),
        "S2": (1 - v, u, v),
        "S3": (1 - u - v, 1 - v, v),
        "S4": (zero, 1 - u - v, v),
        "B": (u, v, zero),
    }


def counterexample_demo(max_poly_degree: int = 10, sample_points: int = 5) -> CheckResult:
    t0 = time.perf_counter()
    details: dict = {}
    ok = True
    u = counterexample_field()
    tr = trace(u, "S1").data[0]
    uu = WP.variable(RING_FACE_FIN, 0)
    vv = WP.variable(RING_FACE_FIN, 1)
    expected_s1 = -(uu * vv * (uu + vv - 1))
    details["trace_S1_matches"] = tr == expected_s1
    ok &= tr == expected_s1
    others_zero = all(trace(u, f).data[0].is_zero() for f in ("S2", "S3", "S4", "B"))
    details["other_traces_zero"] = others_zero
    ok &= others_zero
    g = gradient(u)
    energy = sum((integrate_finite(c * c) for c in g.components), QZERO)
    details["gradient_energy"] = q_str(energy)
    ok &= energy > 0
    # trace-matching system over polynomials of bounded total degree
    subs = _phys_face_substitutions()
    one = WP.constant(RING_FACE_FIN, 1)
    monos = [
        (a, b, c)
        for a in range(max_poly_degree + 1)
        for b in range(max_poly_degree + 1 - a)
        for c in range(max_poly_degree + 1 - a - b)
    ]
    columns = []
    for m in monos:
        p = WP.monomial(RING_PHYS, m, 1)
        col = {}
        for fi, face in enumerate(FACE_NAMES):
            restricted = p.substitute(subs[face], one)
            for exps, coef in restricted.terms.items():
                col[(fi,) + exps] = coef
        columns.append(col)
    target = {}
    for exps, coef in expected_s1.terms.items():
        target[(0,) + exps] = coef
    solution = linalg.solve_in_span(columns, target)
    details["trace_matching_feasible"] = solution is not None
    details["poly_degree_bound"] = max_poly_degree
    ok &= solution is None
    # report the interpolation gap of the counterexample at interior points
    k = 2
    interp_u = interpolate(0, k, u).as_field()
    gap = 0.0
    rng = random.Random(5)
    for _ in range(sample_points):
        zeta = Q(rng.randint(1, 3), 5)
        xi = Q(rng.randint(0, 3), 7) * (1 - zeta)
        eta = Q(rng.randint(0, 3), 7) * (1 - zeta)
        pt = (xi, eta, zeta)
        gap = max(
            gap,
            abs(
                float(evaluate_scalar(u.components[0], pt))
                - float(evaluate_scalar(interp_u.components[0], pt))
            ),
        )
    details["interpolation_gap_order2"] = gap
    return CheckResult(
        "counterexample", "pass" if ok else "fail", details, time.perf_counter() - t0
    )


# ---------------------------------------------------------------------
# full suite
# ---------------------------------------------------------------------

def run_verification(
    max_order: int,
    quad_n: int | None = None,
    seed: int = 11,
    counterexample_degree: int = 10,
    corrupt: bool = False,
    fields_per_space: int = 50,
) -> VerificationReport:
    """Run every acceptance check for k = 1..max_order."""
    from .dofs import build_quadrature

    checks = []
    for k in range(1, max_order + 1):
        checks.append(verify_dimensions(k))
        for s in range(4):
            checks.append(verify_unisolvency(s, k, corrupt=corrupt))
        checks.append(verify_exact_sequence(k))
        if k <= 3:
            quad = build_quadrature(quad_n) if quad_n else None
            checks.append(verify_commuting(k, quad=quad))
        checks.append(verify_polynomial_reproduction(k))
        checks.append(verify_trace_compatibility(k))
        checks.append(verify_helmholtz(k, seed=seed))
        if k <= 3:
            quad = build_quadrature(quad_n) if quad_n else None
            checks.append(
                verify_quadrature_fidelity(
                    k, seed=seed, fields_per_space=fields_per_space, quad=quad
                )
            )
    checks.append(verify_lowest_order())
    checks.append(counterexample_demo(counterexample_degree))
    return VerificationReport(max_order, checks)
