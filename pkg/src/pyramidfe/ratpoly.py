"""Exact arithmetic for weighted polynomials and form proxies.

A WeightedPolynomial is a multivariate polynomial with rational
coefficients divided by a power of a linear factor in the last variable:

    N(t_1, .., t_n) / (1 + sign * t_n)^weight

On the infinite pyramid the denominator is (1+z)^w.  On the finite
pyramid every field is stored in collapsed coordinates
(a, b, c) = (xi/(1-zeta), eta/(1-zeta), zeta), where the natural
denominator is (1-c)^w; the same structure covers face and edge traces
in their two- and one-parameter coordinates.

Values are immutable and always kept canonical: no zero coefficients are
stored and the weight is minimal (the numerator is not divisible by the
denominator factor).  Equality is therefore plain structural equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .rationals import Q, QONE, QZERO, as_q, beta_moment, q_str, qbinom, tail_moment
from .reference import Frame


class FrameMismatchError(ValueError):
    """Raised when combining fields that live on different pyramids."""


class DivergentIntegralError(ArithmeticError):
    """Raised when an exact integral does not converge."""


class SingularIntegrandError(ArithmeticError):
    """Raised when a collapsed-coordinate integrand has a pole."""


@dataclass(frozen=True)
class Ring:
    """Variable names plus the sign of the weight denominator (1 + sign*t_last)."""

    nvars: int
    sign: int
    names: tuple[str, ...]

    def __repr__(self):
        return "Ring(%s; 1%s%s)" % (
            ",".join(self.names),
            "+" if self.sign > 0 else "-",
            self.names[-1],
        )


RING_INF = Ring(3, +1, ("x", "y", "z"))
RING_FIN = Ring(3, -1, ("a", "b", "c"))
# Plain physical-coordinate polynomials on the finite pyramid (weight unused).
RING_PHYS = Ring(3, -1, ("xi", "eta", "zeta"))
RING_FACE_INF = Ring(2, +1, ("u", "v"))
RING_FACE_FIN = Ring(2, -1, ("u", "v"))
RING_EDGE_INF = Ring(1, +1, ("t",))
RING_EDGE_FIN = Ring(1, -1, ("t",))


def ring_for(frame: Frame) -> Ring:
    return RING_INF if frame == Frame.INFINITE_PYRAMID else RING_FIN


def _raise_terms(terms: Mapping[tuple, Q], dw: int, sign: int) -> dict:
    """Multiply a numerator by (1 + sign*t_last)^dw."""
    if dw == 0:
        return dict(terms)
    out: dict = {}
    for j in range(dw + 1):
        cj = qbinom(dw, j) * (sign**j)
        for exps, coef in terms.items():
            key = exps[:-1] + (exps[-1] + j,)
            val = out.get(key, QZERO) + coef * cj
            if val:
                out[key] = val
            elif key in out:
                del out[key]
    return out


def _divide_once(terms: Mapping[tuple, Q], sign: int) -> dict | None:
    """Divide a numerator by (1 + sign*t_last); None if not divisible."""
    groups: dict[tuple, dict[int, Q]] = {}
    for exps, coef in terms.items():
        groups.setdefault(exps[:-1], {})[exps[-1]] = coef
    out: dict = {}
    for rest, col in groups.items():
        d = max(col)
        q: dict[int, Q] = {}
        prev = QZERO
        for j in range(d, 0, -1):
            prev = sign * (col.get(j, QZERO) - prev)
            if prev:
                q[j - 1] = prev
        if col.get(0, QZERO) != prev:
            return None
        for j, coef in q.items():
            out[rest + (j,)] = coef
    return out


class WeightedPolynomial:
    __slots__ = ("ring", "terms", "weight")

    def __init__(self, ring: Ring, terms: Mapping[tuple, Q], weight: int = 0):
        if weight < 0:
            raise ValueError("negative weight")
        clean = {}
        for exps, coef in terms.items():
            if len(exps) != ring.nvars or any(e < 0 for e in exps):
                raise ValueError("bad exponent tuple %r" % (exps,))
            c = as_q(coef)
            if c:
                clean[tuple(exps)] = c
        # canonical form: minimal weight
        while weight > 0 and clean:
            lowered = _divide_once(clean, ring.sign)
            if lowered is None:
                break
            clean = lowered
            weight -= 1
        if not clean:
            weight = 0
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "weight", weight)

    def __setattr__(self, *args):
        raise AttributeError("WeightedPolynomial is immutable")

    # -- constructors ------------------------------------------------
    @classmethod
    def zero(cls, ring: Ring) -> "WeightedPolynomial":
        return cls(ring, {})

    @classmethod
    def constant(cls, ring: Ring, value) -> "WeightedPolynomial":
        return cls(ring, {(0,) * ring.nvars: as_q(value)})

    @classmethod
    def monomial(cls, ring: Ring, exps: tuple, coef=1, weight: int = 0):
        return cls(ring, {tuple(exps): as_q(coef)}, weight)

    @classmethod
    def variable(cls, ring: Ring, index: int) -> "WeightedPolynomial":
        exps = [0] * ring.nvars
        exps[index] = 1
        return cls(ring, {tuple(exps): QONE})

    # -- basic queries -----------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def numerator_at_weight(self, w: int) -> dict:
        if w < self.weight:
            raise ValueError("cannot lower weight below canonical %d" % self.weight)
        return _raise_terms(self.terms, w - self.weight, self.ring.sign)

    def degrees(self, at_weight: int | None = None) -> tuple[int, ...]:
        """Componentwise max exponents of the numerator (zero poly -> -1s)."""
        terms = self.terms if at_weight is None else self.numerator_at_weight(at_weight)
        if not terms:
            return (-1,) * self.ring.nvars
        return tuple(max(e[i] for e in terms) for i in range(self.ring.nvars))

    def total_degree(self, at_weight: int | None = None) -> int:
        terms = self.terms if at_weight is None else self.numerator_at_weight(at_weight)
        if not terms:
            return -1
        return max(sum(e) for e in terms)

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: "WeightedPolynomial"):
        if self.ring is not other.ring and self.ring != other.ring:
            raise FrameMismatchError(
                "cannot combine %r with %r" % (self.ring, other.ring)
            )

    def __add__(self, other):
        if not isinstance(other, WeightedPolynomial):
            other = WeightedPolynomial.constant(self.ring, other)
        self._check(other)
        w = max(self.weight, other.weight)
        terms = self.numerator_at_weight(w)
        for exps, coef in other.numerator_at_weight(w).items():
            val = terms.get(exps, QZERO) + coef
            if val:
                terms[exps] = val
            elif exps in terms:
                del terms[exps]
        return WeightedPolynomial(self.ring, terms, w)

    __radd__ = __add__

    def __neg__(self):
        return WeightedPolynomial(
            self.ring, {e: -c for e, c in self.terms.items()}, self.weight
        )

    def __sub__(self, other):
        if not isinstance(other, WeightedPolynomial):
            other = WeightedPolynomial.constant(self.ring, other)
        return self.__add__(other.__neg__())

    def __rsub__(self, other):
        return WeightedPolynomial.constant(self.ring, other).__sub__(self)

    def __mul__(self, other):
        if not isinstance(other, WeightedPolynomial):
            c = as_q(other)
            if not c:
                return WeightedPolynomial.zero(self.ring)
            return WeightedPolynomial(
                self.ring, {e: c * v for e, v in self.terms.items()}, self.weight
            )
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                val = out.get(key, QZERO) + c1 * c2
                if val:
                    out[key] = val
                elif key in out:
                    del out[key]
        return WeightedPolynomial(self.ring, out, self.weight + other.weight)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = WeightedPolynomial.constant(self.ring, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def over(self, extra_weight: int) -> "WeightedPolynomial":
        """Divide by (1 + sign*t_last)^extra_weight."""
        return WeightedPolynomial(self.ring, self.terms, self.weight + extra_weight)

    def __eq__(self, other):
        return (
            isinstance(other, WeightedPolynomial)
            and self.ring == other.ring
            and self.weight == other.weight
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, self.weight, frozenset(self.terms.items())))

    # -- calculus -----------------------------------------------------
    def diff(self, index: int) -> "WeightedPolynomial":
        """Exact partial derivative in the ring's own variables."""
        last = self.ring.nvars - 1
        dnum = {}
        for exps, coef in self.terms.items():
            if exps[index]:
                key = list(exps)
                key[index] -= 1
                dnum[tuple(key)] = coef * exps[index]
        if index != last or self.weight == 0:
            return WeightedPolynomial(self.ring, dnum, self.weight)
        # quotient rule: d/dt N/(1+st)^w = [N'(1+st) - w s N] / (1+st)^(w+1)
        s = self.ring.sign
        out = _raise_terms(dnum, 1, s)
        for exps, coef in self.terms.items():
            val = out.get(exps, QZERO) - self.weight * s * coef
            if val:
                out[exps] = val
            elif exps in out:
                del out[exps]
        return WeightedPolynomial(self.ring, out, self.weight + 1)

    # -- evaluation and substitution -----------------------------------
    def evaluate(self, point: Iterable) -> Q:
        pt = tuple(as_q(p) for p in point)
        if len(pt) != self.ring.nvars:
            raise ValueError("point dimension mismatch")
        den = (1 + self.ring.sign * pt[-1]) ** self.weight
        if den == 0:
            raise ZeroDivisionError("evaluation at the denominator pole")
        total = QZERO
        for exps, coef in self.terms.items():
            term = coef
            for p, e in zip(pt, exps):
                if e:
                    term *= p**e
            total += term
        return total / den

    def substitute(
        self, args: tuple["WeightedPolynomial", ...], inv_denom: "WeightedPolynomial"
    ) -> "WeightedPolynomial":
        """Compose: substitute args for the variables, inv_denom for 1/(1+st_last)."""
        ring = inv_denom.ring
        powers: list[dict[int, WeightedPolynomial]] = [dict() for _ in args]
        one = WeightedPolynomial.constant(ring, 1)

        def arg_power(i: int, e: int) -> WeightedPolynomial:
            if e == 0:
                return one
            cache = powers[i]
            if e not in cache:
                cache[e] = arg_power(i, e - 1) * args[i]
            return cache[e]

        total = WeightedPolynomial.zero(ring)
        for exps, coef in self.terms.items():
            term = WeightedPolynomial.constant(ring, coef)
            for i, e in enumerate(exps):
                if e:
                    term = term * arg_power(i, e)
            total = total + term
        if self.weight:
            total = total * inv_denom**self.weight
        return total

    # -- membership in the weighted polynomial scales -------------------
    def in_Q(self, w: int, bounds: tuple[int, ...]) -> bool:
        """Member of {u / (1+st)^w : u has componentwise degrees <= bounds}."""
        if self.is_zero():
            return True
        if self.weight > w:
            return False
        degs = self.degrees(at_weight=w)
        return all(d <= b for d, b in zip(degs, bounds))

    def in_P(self, w: int, n: int) -> bool:
        """Member of {u / (1+st)^w : u has total degree <= n}."""
        if self.is_zero():
            return True
        if self.weight > w:
            return False
        return self.total_degree() + (w - self.weight) <= n

    def in_tilde_P(self, w: int, n: int) -> bool:
        """Numerator at weight w homogeneous of degree n in (t_first, 1+st_last).

        Only meaningful for two-variable rings; used by the tangential
        trace constraint of the edge elements.
        """
        if self.is_zero():
            return True
        if self.weight > w:
            return False
        s = self.ring.sign
        # substitute t_last = s*(u - 1) so the denominator factor becomes u
        shifted: dict = {}
        for exps, coef in self.numerator_at_weight(w).items():
            g = exps[-1]
            for j in range(g + 1):
                cj = coef * qbinom(g, j) * (s**g) * ((-1) ** (g - j))
                key = exps[:-1] + (j,)
                val = shifted.get(key, QZERO) + cj
                if val:
                    shifted[key] = val
                elif key in shifted:
                    del shifted[key]
        return all(sum(e) == n for e in shifted)

    # -- printing -------------------------------------------------------
    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for exps in sorted(self.terms):
            coef = self.terms[exps]
            factors = []
            for name, e in zip(self.ring.names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append("%s^%d" % (name, e))
            body = "*".join(factors)
            if not body:
                bits.append(q_str(coef))
            elif coef == 1:
                bits.append(body)
            elif coef == -1:
                bits.append("-" + body)
            else:
                bits.append("%s*%s" % (q_str(coef), body))
        num = " + ".join(bits).replace("+ -", "- ")
        if self.weight == 0:
            return num
        sgn = "+" if self.ring.sign > 0 else "-"
        return "(%s)/(1%s%s)^%d" % (num, sgn, self.ring.names[-1], self.weight)


WP = WeightedPolynomial


def differentiate(f: WP, var: str) -> WP:
    """Derivative with respect to one of the ring's variables, by name."""
    return f.diff(f.ring.names.index(var))


# ---------------------------------------------------------------------
# exact integration
# ---------------------------------------------------------------------

def integrate_infinite(f: WP) -> Q:
    """Exact integral over the infinite pyramid (x,y in [0,1], z in [0,oo)).

    Every numerator term needs weight - z-degree >= 2; otherwise the
    integral diverges and the offending exponent triple is reported.
    """
    if f.ring != RING_INF:
        raise FrameMismatchError("integrate_infinite wants the infinite-pyramid ring")
    total = QZERO
    for (a, b, c), coef in f.terms.items():
        if f.weight - c < 2:
            raise DivergentIntegralError(
                "term x^%d y^%d z^%d at weight %d is not integrable" % (a, b, c, f.weight)
            )
        total += coef * Q(1, (a + 1) * (b + 1)) * tail_moment(c, f.weight)
    return total


def integrate_finite(f: WP) -> Q:
    """Exact integral over the finite pyramid of a collapsed-form scalar.

    The collapsed substitution (xi,eta,zeta) = ((1-c)a, (1-c)b, c) has
    volume element (1-c)^2 da db dc; the net (1-c) exponent 2 - weight
    must be nonnegative.
    """
    if f.ring not in (RING_FIN,):
        raise FrameMismatchError("integrate_finite wants the collapsed finite ring")
    m = 2 - f.weight
    if m < 0:
        raise SingularIntegrandError(
            "collapsed integrand has net (1-c) exponent %d < 0" % m
        )
    total = QZERO
    for (a, b, c), coef in f.terms.items():
        total += coef * Q(1, (a + 1) * (b + 1)) * beta_moment(c, m)
    return total


def integrate_unit_square(f: WP) -> Q:
    """Exact integral over the parameter square [0,1]^2 (weight must vanish)."""
    if f.ring.nvars != 2:
        raise ValueError("needs a two-variable trace ring")
    if f.weight != 0:
        raise SingularIntegrandError("square integrand keeps a denominator pole")
    total = QZERO
    for (a, b), coef in f.terms.items():
        total += coef * Q(1, (a + 1) * (b + 1))
    return total


def integrate_unit_triangle(f: WP) -> Q:
    """Exact integral over {u,v >= 0, u+v <= 1} of N(u,v)/(1-v)^w."""
    if f.ring != RING_FACE_FIN:
        raise FrameMismatchError("triangle integration wants the finite face ring")
    total = QZERO
    for (a, b), coef in f.terms.items():
        m = a + 1 - f.weight
        if m < 0:
            raise SingularIntegrandError(
                "face term u^%d v^%d at weight %d has a pole on v=1" % (a, b, f.weight)
            )
        total += coef * Q(1, a + 1) * beta_moment(b, m)
    return total


def integrate_unit_interval(f: WP) -> Q:
    """Exact integral over [0,1] of a one-parameter trace."""
    if f.ring.nvars != 1:
        raise ValueError("needs a one-variable trace ring")
    if f.weight != 0:
        raise SingularIntegrandError("edge integrand keeps a denominator pole")
    return sum((coef * Q(1, e[0] + 1) for e, coef in f.terms.items()), QZERO)


# ---------------------------------------------------------------------
# form fields
# ---------------------------------------------------------------------

_COMPONENTS = {0: 1, 1: 3, 2: 3, 3: 1}


class FormField:
    """An s-form proxy: 1 component for s=0,3 and 3 components for s=1,2.

    Components are Cartesian; on the finite pyramid they are stored as
    collapsed-coordinate weighted polynomials.
    """

    __slots__ = ("degree", "frame", "components")

    def __init__(self, degree: int, frame: Frame, components):
        comps = tuple(components)
        if degree not in _COMPONENTS or len(comps) != _COMPONENTS[degree]:
            raise ValueError("degree %r needs %s components" % (degree, _COMPONENTS.get(degree)))
        ring = ring_for(frame)
        for c in comps:
            if c.ring != ring:
                raise FrameMismatchError("component ring does not match frame")
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "frame", frame)
        object.__setattr__(self, "components", comps)

    def __setattr__(self, *args):
        raise AttributeError("FormField is immutable")

    @classmethod
    def scalar(cls, degree: int, frame: Frame, f: WP) -> "FormField":
        return cls(degree, frame, (f,))

    @classmethod
    def zero(cls, degree: int, frame: Frame) -> "FormField":
        z = WP.zero(ring_for(frame))
        return cls(degree, frame, (z,) * _COMPONENTS[degree])

    def _check(self, other: "FormField"):
        if self.frame != other.frame:
            raise FrameMismatchError("cannot combine fields on different pyramids")
        if self.degree != other.degree:
            raise ValueError("cannot combine forms of different degree")

    def __add__(self, other: "FormField") -> "FormField":
        self._check(other)
        return FormField(
            self.degree,
            self.frame,
            tuple(a + b for a, b in zip(self.components, other.components)),
        )

    def __sub__(self, other: "FormField") -> "FormField":
        self._check(other)
        return FormField(
            self.degree,
            self.frame,
            tuple(a - b for a, b in zip(self.components, other.components)),
        )

    def __mul__(self, scalar) -> "FormField":
        return FormField(
            self.degree, self.frame, tuple(c * scalar for c in self.components)
        )

    __rmul__ = __mul__

    def __neg__(self):
        return self * Q(-1)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __eq__(self, other):
        return (
            isinstance(other, FormField)
            and self.degree == other.degree
            and self.frame == other.frame
            and self.components == other.components
        )

    def __hash__(self):
        return hash((self.degree, self.frame, self.components))

    def __repr__(self):
        if len(self.components) == 1:
            return "FormField(s=%d, %s, %r)" % (self.degree, self.frame.name, self.components[0])
        return "FormField(s=%d, %s, [%s])" % (
            self.degree,
            self.frame.name,
            "; ".join(repr(c) for c in self.components),
        )


def linear_combination(fields, coefficients) -> FormField:
    fields = list(fields)
    total = FormField.zero(fields[0].degree, fields[0].frame)
    for f, c in zip(fields, coefficients):
        q = as_q(c)
        if q:
            total = total + f * q
    return total
