"""Exact arithmetic in the quotient ring Q[t, x1..x_{n-1}, rho] / (rho*(1+x.x) - 1).

Coordinates are indexed 0..n-1 with index 0 the time coordinate t.  The
Minkowski square is x.x = -t^2 + sum(xi^2) (signature -,+,+,...), rho stands
for 1/(1 + x.x), and the relation rho*(1 - t^2 + sum(xi^2)) = 1 is eliminated
by keeping every rho-layer s >= 1 at t-degree <= 1.  With that convention two
elements are equal iff their layer dictionaries are structurally equal, so
every identity below reduces to an exact zero test.

Coefficients are fractions.Fraction throughout; evaluation at a point is the
only place floating point enters.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import DimensionMismatch, SingularPoint

_SING_TOL = 1e-12

Monomial = tuple  # exponent tuple, length = dim, entry 0 is the t exponent


def grlex_key(exponents):
    """Graded lexicographic sort key (t is the most significant variable)."""
    return (sum(exponents), exponents)


def minkowski_norm_sq(point):
    """-t^2 + sum(xi^2) for a coordinate sequence (t, x1, ...)."""
    t = point[0]
    return -t * t + sum(v * v for v in point[1:])


class Polynomial:
    """Multivariate polynomial over Q with a canonical term dictionary.

    ``terms`` maps exponent tuples to nonzero Fractions; no zero coefficient
    is ever stored, so equality is plain structural equality.
    """

    __slots__ = ("dim", "terms")

    def __init__(self, dim, terms=None, _trusted=False):
        if dim < 1:
            raise DimensionMismatch(f"dim must be >= 1, got {dim}")
        self.dim = int(dim)
        if terms is None:
            self.terms = {}
        elif _trusted:
            self.terms = terms
        else:
            clean = {}
            for exps, coeff in terms.items():
                exps = tuple(int(e) for e in exps)
                if len(exps) != self.dim:
                    raise DimensionMismatch(
                        f"exponent tuple {exps} does not match dim {self.dim}")
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                coeff = Fraction(coeff)
                if coeff:
                    clean[exps] = clean.get(exps, Fraction(0)) + coeff
            self.terms = {e: c for e, c in clean.items() if c}

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, dim):
        return cls(dim, None, _trusted=True)

    @classmethod
    def constant(cls, dim, value):
        value = Fraction(value)
        if not value:
            return cls.zero(dim)
        return cls(dim, {(0,) * dim: value}, _trusted=True)

    @classmethod
    def coordinate(cls, dim, axis):
        if not 0 <= axis < dim:
            raise DimensionMismatch(f"axis {axis} out of range for dim {dim}")
        exps = [0] * dim
        exps[axis] = 1
        return cls(dim, {tuple(exps): Fraction(1)}, _trusted=True)

    @classmethod
    def monomial(cls, dim, exponents, coeff=1):
        return cls(dim, {tuple(exponents): Fraction(coeff)})

    # -- structure --------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def t_degree(self):
        if not self.terms:
            return -1
        return max(e[0] for e in self.terms)

    def is_homogeneous(self):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def sorted_terms(self):
        """Terms in descending graded-lex order (leading term first)."""
        return sorted(self.terms.items(), key=lambda item: grlex_key(item[0]),
                      reverse=True)

    # -- arithmetic -------------------------------------------------------

    def _check_dim(self, other):
        if self.dim != other.dim:
            raise DimensionMismatch(f"dim {self.dim} vs {other.dim}")

    def __add__(self, other):
        if isinstance(other, Polynomial):
            self._check_dim(other)
            terms = dict(self.terms)
            for e, c in other.terms.items():
                acc = terms.get(e, Fraction(0)) + c
                if acc:
                    terms[e] = acc
                elif e in terms:
                    del terms[e]
            return Polynomial(self.dim, terms, _trusted=True)
        return NotImplemented

    def __neg__(self):
        return Polynomial(self.dim, {e: -c for e, c in self.terms.items()},
                          _trusted=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            self._check_dim(other)
            terms = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    acc = terms.get(e, Fraction(0)) + c1 * c2
                    if acc:
                        terms[e] = acc
                    elif e in terms:
                        del terms[e]
            return Polynomial(self.dim, terms, _trusted=True)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, scalar):
        scalar = Fraction(scalar)
        if not scalar:
            return Polynomial.zero(self.dim)
        return Polynomial(self.dim,
                          {e: c * scalar for e, c in self.terms.items()},
                          _trusted=True)

    # -- calculus ---------------------------------------------------------

    def diff(self, axis):
        if not 0 <= axis < self.dim:
            raise DimensionMismatch(f"axis {axis} out of range for dim {self.dim}")
        terms = {}
        for e, c in self.terms.items():
            k = e[axis]
            if k:
                de = list(e)
                de[axis] = k - 1
                de = tuple(de)
                acc = terms.get(de, Fraction(0)) + c * k
                if acc:
                    terms[de] = acc
                elif de in terms:
                    del terms[de]
        return Polynomial(self.dim, terms, _trusted=True)

    def box(self):
        """D'Alembertian -d2/dt2 + sum_i d2/dxi2."""
        out = -self.diff(0).diff(0)
        for axis in range(1, self.dim):
            out = out + self.diff(axis).diff(axis)
        return out

    def euler_h(self):
        """Euler homogeneity operator t*dt + sum_i xi*dxi."""
        out = Polynomial.zero(self.dim)
        for axis in range(self.dim):
            out = out + Polynomial.coordinate(self.dim, axis) * self.diff(axis)
        return out

    # -- evaluation -------------------------------------------------------

    def eval_points(self, points):
        """Evaluate at an (m, dim) float array; returns an (m,) array."""
        points = np.asarray(points, dtype=float)
        if points.ndim == 1:
            points = points[None, :]
        if points.shape[1] != self.dim:
            raise DimensionMismatch(
                f"points have {points.shape[1]} coords, expected {self.dim}")
        out = np.zeros(points.shape[0])
        for e, c in self.terms.items():
            term = np.full(points.shape[0], float(c))
            for axis, k in enumerate(e):
                if k:
                    term = term * points[:, axis] ** k
            out += term
        return out

    def __call__(self, point):
        return float(self.eval_points(np.asarray(point, dtype=float)[None, :])[0])

    # -- display ----------------------------------------------------------

    def _term_str(self, exps, coeff):
        names = ["t"] + [f"x{i}" for i in range(1, self.dim)]
        if self.dim == 2:
            names = ["t", "x"]
        parts = []
        for name, k in zip(names, exps):
            if k == 1:
                parts.append(name)
            elif k > 1:
                parts.append(f"{name}^{k}")
        body = "*".join(parts)
        if not body:
            return str(coeff)
        if coeff == 1:
            return body
        if coeff == -1:
            return f"-{body}"
        return f"{coeff}*{body}"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = [self._term_str(e, c) for e, c in self.sorted_terms()]
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"Polynomial({self.dim}, {self})"


def _reduce_layer(poly):
    """Divide by (1 + sum xi^2) - t^2, treating t^2 as the head monomial.

    Returns (quotient, remainder) with poly == quotient*(1+x.x) + remainder
    and remainder of t-degree <= 1.  The rewrite t^2 -> 1 + sum xi^2 strictly
    lowers the t-exponent, so the loop terminates and the remainder is the
    unique t-reduced representative.
    """
    dim = poly.dim
    quot = {}
    rem = {}
    work = list(poly.terms.items())
    while work:
        e, c = work.pop()
        if not c:
            continue
        if e[0] < 2:
            acc = rem.get(e, Fraction(0)) + c
            if acc:
                rem[e] = acc
            elif e in rem:
                del rem[e]
            continue
        f = (e[0] - 2,) + e[1:]
        quot[f] = quot.get(f, Fraction(0)) - c
        work.append((f, c))
        for axis in range(1, dim):
            fe = list(f)
            fe[axis] += 2
            work.append((tuple(fe), c))
    quot = {e: c for e, c in quot.items() if c}
    return (Polynomial(dim, quot, _trusted=True),
            Polynomial(dim, rem, _trusted=True))


class RhoExpr:
    """Canonical element of Q[t, x, rho] / (rho*(1+x.x) - 1).

    ``layers`` maps the rho power s to a Polynomial coefficient; every layer
    with s >= 1 is kept at t-degree <= 1 and zero layers are dropped.
    """

    __slots__ = ("dim", "layers")

    def __init__(self, dim, layers, _normalized=False):
        if _normalized:
            self.dim = dim
            self.layers = layers
            return
        built = normalize([(s, p) for s, p in layers.items()], dim)
        self.dim = built.dim
        self.layers = built.layers

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, dim):
        return cls(dim, {}, _normalized=True)

    @classmethod
    def constant(cls, dim, value):
        value = Fraction(value)
        if not value:
            return cls.zero(dim)
        return cls(dim, {0: Polynomial.constant(dim, value)}, _normalized=True)

    @classmethod
    def from_polynomial(cls, poly, rho_power=0):
        return normalize([(rho_power, poly)], poly.dim)

    @classmethod
    def rho(cls, dim, power=1):
        if power < 0:
            raise ValueError("rho powers must be non-negative")
        if power == 0:
            return cls.constant(dim, 1)
        return cls(dim, {power: Polynomial.constant(dim, 1)}, _normalized=True)

    # -- structure --------------------------------------------------------

    def is_zero(self):
        return not self.layers

    def __eq__(self, other):
        if not isinstance(other, RhoExpr):
            return NotImplemented
        return self.dim == other.dim and self.layers == other.layers

    def __hash__(self):
        return hash((self.dim, frozenset((s, p) for s, p in self.layers.items())))

    def max_rho_power(self):
        return max(self.layers) if self.layers else 0

    # -- arithmetic -------------------------------------------------------

    def _check_dim(self, other):
        if self.dim != other.dim:
            raise DimensionMismatch(f"dim {self.dim} vs {other.dim}")

    def __add__(self, other):
        if not isinstance(other, RhoExpr):
            return NotImplemented
        self._check_dim(other)
        # sums of normal forms stay normal: t-degrees cannot grow
        layers = dict(self.layers)
        for s, p in other.layers.items():
            acc = layers.get(s)
            acc = p if acc is None else acc + p
            if acc.is_zero():
                layers.pop(s, None)
            else:
                layers[s] = acc
        return RhoExpr(self.dim, layers, _normalized=True)

    def __neg__(self):
        return RhoExpr(self.dim, {s: -p for s, p in self.layers.items()},
                       _normalized=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RhoExpr):
            self._check_dim(other)
            raw = []
            for s1, p1 in self.layers.items():
                for s2, p2 in other.layers.items():
                    raw.append((s1 + s2, p1 * p2))
            return normalize(raw, self.dim)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, Polynomial):
            return self * RhoExpr.from_polynomial(other)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, scalar):
        scalar = Fraction(scalar)
        if not scalar:
            return RhoExpr.zero(self.dim)
        return RhoExpr(self.dim, {s: p.scale(scalar) for s, p in self.layers.items()},
                       _normalized=True)

    # -- calculus ---------------------------------------------------------

    def diff(self, axis):
        """Partial derivative; uses d(rho)/dt = 2t rho^2, d(rho)/dxi = -2 xi rho^2."""
        if not 0 <= axis < self.dim:
            raise DimensionMismatch(f"axis {axis} out of range for dim {self.dim}")
        coord = Polynomial.coordinate(self.dim, axis)
        raw = []
        for s, p in self.layers.items():
            dp = p.diff(axis)
            if not dp.is_zero():
                raw.append((s, dp))
            if s:
                factor = Fraction(2 * s if axis == 0 else -2 * s)
                raw.append((s + 1, (coord * p).scale(factor)))
        return normalize(raw, self.dim)

    def box(self):
        """D'Alembertian -d2/dt2 + sum_i d2/dxi2 in normal form."""
        out = -self.diff(0).diff(0)
        for axis in range(1, self.dim):
            out = out + self.diff(axis).diff(axis)
        return out

    def euler_h(self):
        """Euler operator H = t*dt + sum_i xi*dxi (no metric signs)."""
        out = RhoExpr.zero(self.dim)
        for axis in range(self.dim):
            coord = RhoExpr.from_polynomial(Polynomial.coordinate(self.dim, axis))
            out = out + coord * self.diff(axis)
        return out

    # -- evaluation -------------------------------------------------------

    def eval_points(self, points):
        """Evaluate at an (m, dim) float array, substituting rho = 1/(1+x.x)."""
        points = np.asarray(points, dtype=float)
        if points.ndim == 1:
            points = points[None, :]
        if points.shape[1] != self.dim:
            raise DimensionMismatch(
                f"points have {points.shape[1]} coords, expected {self.dim}")
        denom = 1.0 - points[:, 0] ** 2 + np.sum(points[:, 1:] ** 2, axis=1)
        if np.any(np.abs(denom) < _SING_TOL):
            raise SingularPoint("evaluation on the singular set 1 + x.x = 0")
        rho = 1.0 / denom
        out = np.zeros(points.shape[0])
        for s, p in self.layers.items():
            out += p.eval_points(points) * rho ** s
        return out

    def __call__(self, point):
        return float(self.eval_points(np.asarray(point, dtype=float)[None, :])[0])

    # -- display ----------------------------------------------------------

    def __str__(self):
        if not self.layers:
            return "0"
        chunks = []
        for s in sorted(self.layers):
            p = self.layers[s]
            if s == 0:
                chunks.append(str(p))
            else:
                rho = "rho" if s == 1 else f"rho^{s}"
                body = str(p)
                if body == "1":
                    chunks.append(rho)
                elif body == "-1":
                    chunks.append(f"-{rho}")
                elif len(p.terms) == 1:
                    chunks.append(f"{body}*{rho}")
                else:
                    chunks.append(f"({body})*{rho}")
        out = chunks[0]
        for c in chunks[1:]:
            out += f" - {c[1:]}" if c.startswith("-") else f" + {c}"
        return out

    def __repr__(self):
        return f"RhoExpr({self.dim}, {self})"


def normalize(raw, dim):
    """Canonical RhoExpr from a list of (rho_power, Polynomial) pairs.

    For every layer s >= 1 the coefficient is divided by 1 + x.x (with t^2 as
    head); the quotient migrates to layer s-1 and the t-reduced remainder
    stays, repeated until every positive layer has t-degree <= 1.
    """
    layers = {}
    for s, poly in raw:
        if s < 0:
            raise ValueError("rho powers must be non-negative")
        if poly.dim != dim:
            raise DimensionMismatch(f"dim {poly.dim} vs {dim}")
        if poly.is_zero():
            continue
        acc = layers.get(s)
        acc = poly if acc is None else acc + poly
        if acc.is_zero():
            layers.pop(s, None)
        else:
            layers[s] = acc
    s = max(layers, default=0)
    while s >= 1:
        poly = layers.get(s)
        if poly is not None and poly.t_degree() >= 2:
            quot, rem = _reduce_layer(poly)
            if rem.is_zero():
                del layers[s]
            else:
                layers[s] = rem
            if not quot.is_zero():
                below = layers.get(s - 1)
                below = quot if below is None else below + quot
                if below.is_zero():
                    layers.pop(s - 1, None)
                else:
                    layers[s - 1] = below
        s -= 1
    layers = {s: p for s, p in layers.items() if not p.is_zero()}
    return RhoExpr(dim, layers, _normalized=True)
