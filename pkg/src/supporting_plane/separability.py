"""Deciding whether vectors admit a supporting hyperplane through the origin.

A set of vectors is *separable* when some linear form ``f`` has
``f(x_i) > 0`` for every ``x_i``.  Otherwise nonnegative weights, not all
zero, combine the vectors to zero.  Either outcome comes with a certificate
that :func:`verify_certificate` checks in exact arithmetic.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from . import farkas
from .exact import (Scalar, Sign, canonical, cross, cross2, det3, dot,
                    format_rational, sign_det3, to_exact,
                    angular_key)


class InputError(ValueError):
    """Input is well formed but violates a dimension or size contract."""


class ContractViolation(RuntimeError):
    """An internal guarantee failed; always a bug."""


class Outcome(enum.Enum):
    SEPARABLE = "separable"
    NOT_SEPARABLE = "not_separable"


@dataclass(frozen=True)
class VectorSet:
    dim: int
    vectors: Tuple[Tuple[Scalar, ...], ...]

    def __post_init__(self):
        if self.dim < 1:
            raise InputError(f"dimension must be positive, got {self.dim}")
        for i, v in enumerate(self.vectors):
            if len(v) != self.dim:
                raise InputError(
                    f"vector {i} has {len(v)} coordinates, expected {self.dim}")

    @classmethod
    def of(cls, rows, dim: Optional[int] = None) -> "VectorSet":
        """Build a set from any nested sequence of exact-coercible values."""
        vectors = tuple(tuple(to_exact(c) for c in row) for row in rows)
        if dim is None:
            if not vectors:
                raise InputError("cannot infer the dimension of an empty set")
            dim = len(vectors[0])
        return cls(dim, vectors)

    def __len__(self):
        return len(self.vectors)

    def __getitem__(self, i):
        return self.vectors[i]


@dataclass(frozen=True)
class SeparatingFunctional:
    coefficients: Tuple[Scalar, ...]

    def __call__(self, y) -> Scalar:
        return dot(self.coefficients, y)


@dataclass(frozen=True)
class FarkasWitness:
    weights: Tuple[Scalar, ...]


Certificate = Union[SeparatingFunctional, FarkasWitness]


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    certificate: Optional[Certificate] = None

    @property
    def separable(self) -> bool:
        return self.outcome is Outcome.SEPARABLE

    def to_json(self) -> dict:
        cert = None
        if isinstance(self.certificate, SeparatingFunctional):
            cert = {"functional": [format_rational(c)
                                   for c in self.certificate.coefficients]}
        elif isinstance(self.certificate, FarkasWitness):
            cert = {"weights": [format_rational(w)
                                for w in self.certificate.weights]}
        return {"verdict": self.outcome.value, "certificate": cert}


SEPARABLE = Verdict(Outcome.SEPARABLE)
NOT_SEPARABLE = Verdict(Outcome.NOT_SEPARABLE)


@dataclass(frozen=True)
class SignQuadruple:
    """Signs of det(x1,x2,x3), det(x1,x4,x2), det(x3,x2,x4), det(x1,x3,x4)."""

    s1: Sign
    s2: Sign
    s3: Sign
    s4: Sign

    def __iter__(self):
        return iter((self.s1, self.s2, self.s3, self.s4))


class FastVerdict(enum.Enum):
    SEPARABLE = "separable"
    NOT_SEPARABLE = "not_separable"
    DEGENERATE = "degenerate"


# ---------------------------------------------------------------------------
# certificates

def normalize_functional(coeffs) -> Tuple[int, ...]:
    """Scale a nonzero rational vector to coprime integers (same direction)."""
    coeffs = [Fraction(c) for c in coeffs]
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    if g == 0:
        raise ContractViolation("functional is identically zero")
    return tuple(c // g for c in ints)


def normalize_weights(weights) -> Tuple[Scalar, ...]:
    total = sum(weights)
    if total <= 0:
        raise ContractViolation("witness weights do not have a positive sum")
    return tuple(canonical(Fraction(w) / total) for w in weights)


def verify_certificate(vs: VectorSet, verdict: Verdict) -> bool:
    """Check a verdict's certificate exactly against ``vs``.

    A functional must be nonzero and strictly positive on every vector.  A
    witness needs one nonnegative weight per vector, summing to 1, whose
    weighted sum of the vectors is exactly zero.
    """
    cert = verdict.certificate
    if verdict.outcome is Outcome.SEPARABLE:
        if not isinstance(cert, SeparatingFunctional):
            return False
        f = cert.coefficients
        if len(f) != vs.dim or not any(f):
            return False
        return all(dot(f, x) > 0 for x in vs.vectors)
    if not isinstance(cert, FarkasWitness):
        return False
    w = cert.weights
    if len(w) != len(vs) or any(wi < 0 for wi in w) or sum(w) != 1:
        return False
    return all(sum(wi * x[j] for wi, x in zip(w, vs.vectors)) == 0
               for j in range(vs.dim))


def _checked(vs: VectorSet, verdict: Verdict) -> Verdict:
    if not verify_certificate(vs, verdict):
        raise ContractViolation(f"certificate failed verification: {verdict}")
    return verdict


def _functional(vs, coeffs) -> Verdict:
    return _checked(vs, Verdict(Outcome.SEPARABLE,
                                SeparatingFunctional(normalize_functional(coeffs))))


def _witness(vs, weights) -> Verdict:
    return _checked(vs, Verdict(Outcome.NOT_SEPARABLE,
                                FarkasWitness(normalize_weights(weights))))


# ---------------------------------------------------------------------------
# linear algebra plumbing

def rank_and_basis(vs: VectorSet):
    """Exact Gaussian elimination over the rationals.

    Returns ``(rank, basis, coords)``: ``basis`` lists the indices of the
    first linearly independent vectors in input order, and ``coords[i]`` are
    the coefficients expressing vector ``i`` in that basis.
    """
    # Each echelon row is (pivot column, row vector, combination of basis).
    echelon = []
    basis = []
    coords = []
    for idx, x in enumerate(vs.vectors):
        v = [Fraction(c) for c in x]
        combo = [Fraction(0)] * len(basis)
        for col, row, row_combo in echelon:
            a = v[col]
            if a:
                v = [vi - a * ri for vi, ri in zip(v, row)]
                combo = [ci + a * rc for ci, rc in zip(combo, row_combo)]
        col = next((j for j, c in enumerate(v) if c), None)
        if col is None:
            # x = sum(combo_t * echelon_t) = sum over basis.
            coords.append(tuple(canonical(c) for c in combo))
            continue
        lead = v[col]
        row = [c / lead for c in v]
        # row = (x - sum combo_t*e_t)/lead, expressed in the basis.
        row_combo = [-c / lead for c in combo] + [Fraction(1) / lead]
        for _, _, rc in echelon:
            rc.append(Fraction(0))
        # Normalize previous rows on the new pivot column.
        new_echelon = []
        for pcol, prow, pcombo in echelon:
            a = prow[col]
            if a:
                prow = [p - a * r for p, r in zip(prow, row)]
                pcombo = [p - a * r for p, r in zip(pcombo, row_combo)]
            new_echelon.append((pcol, prow, pcombo))
        echelon = new_echelon + [(col, row, row_combo)]
        basis.append(idx)
        coords.append(None)
    r = len(basis)
    out = []
    for i, c in enumerate(coords):
        if c is None:
            c = tuple(1 if basis[t] == i else 0 for t in range(r))
        out.append(tuple(c) + (0,) * (r - len(c)))
    return r, basis, out


def _solve(matrix, rhs):
    """Solve a square nonsingular rational system by Gauss-Jordan."""
    n = len(matrix)
    a = [[Fraction(c) for c in row] + [Fraction(b)]
         for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col])
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [c / p for c in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                m = a[r][col]
                a[r] = [c - m * d for c, d in zip(a[r], a[col])]
    return [row[n] for row in a]


def _lift_functional(basis_vectors, g):
    """Return f in span(basis) with f.b_t = g_t for every basis vector b_t."""
    gram = [[dot(b, c) for c in basis_vectors] for b in basis_vectors]
    mu = _solve(gram, g)
    dim = len(basis_vectors[0])
    return [sum(m * b[j] for m, b in zip(mu, basis_vectors)) for j in range(dim)]


# ---------------------------------------------------------------------------
# the oracle

def farkas_oracle(vs: VectorSet) -> Verdict:
    """Decide separability by exact linear programming; always certified."""
    if not 1 <= vs.dim <= farkas.MAX_DIM:
        raise InputError(f"oracle supports 1 <= dim <= {farkas.MAX_DIM}, "
                         f"got {vs.dim}")
    if not 1 <= len(vs) <= farkas.MAX_VECTORS:
        raise InputError(f"oracle supports 1 <= k <= {farkas.MAX_VECTORS} "
                         f"vectors, got {len(vs)}")
    status, sol = farkas.solve_phase1(vs.vectors, vs.dim)
    if status == "feasible":
        return _witness(vs, sol)
    return _functional(vs, sol)


# ---------------------------------------------------------------------------
# the plane

def separable_2d(vs: VectorSet, want_certificate: bool = True) -> Verdict:
    """Open-halfplane test for nonzero vectors in R^2 via circular gaps.

    Directions are sorted by angle and deduplicated.  The set is separable
    exactly when some gap between circularly consecutive directions exceeds
    pi, which for consecutive directions u -> v means orient2d(u, v) < 0.
    A gap of exactly pi (antipodal neighbours) is not enough.
    """
    if vs.dim != 2:
        raise InputError(f"separable_2d needs dim 2, got {vs.dim}")
    if any(not any(x) for x in vs.vectors):
        raise ValueError("separable_2d requires nonzero vectors")
    if not vs.vectors:
        return Verdict(Outcome.SEPARABLE,
                       SeparatingFunctional((1, 0))) if want_certificate else SEPARABLE
    dirs = sorted(set(_primitive(x) for x in vs.vectors), key=angular_key)
    if len(dirs) == 1:
        wide = (dirs[0], dirs[0])
    else:
        wide = None
        for u, v in zip(dirs, dirs[1:] + dirs[:1]):
            if cross2(u, v) < 0:
                wide = (u, v)
                break
    if wide is None:
        if not want_certificate:
            return NOT_SEPARABLE
        return farkas_oracle(vs)
    if not want_certificate:
        return SEPARABLE
    u, v = wide
    if u == v:
        return _functional(vs, u)
    # Every direction lies on the short arc from v counterclockwise to u;
    # rot_ccw(v) + rot_cw(u) is positive on both ends of that arc.
    return _functional(vs, (u[1] - v[1], v[0] - u[0]))


def _primitive(x):
    """Scale a nonzero 2D rational vector to coprime integers, same ray."""
    return normalize_functional(x)


# ---------------------------------------------------------------------------
# four vectors in R^3

def theorem3_signs(vs: VectorSet):
    """The four determinant signs and the verdict they imply.

    No supporting plane exists iff all four signs agree; a zero sign means
    three of the vectors are coplanar and the caller must reduce to 2D.
    """
    if vs.dim != 3 or len(vs) != 4:
        raise InputError("theorem3_signs needs exactly four vectors in R^3")
    x1, x2, x3, x4 = vs.vectors
    signs = SignQuadruple(sign_det3(x1, x2, x3), sign_det3(x1, x4, x2),
                          sign_det3(x3, x2, x4), sign_det3(x1, x3, x4))
    return signs, _fast_verdict(tuple(signs))


def _fast_verdict(signs) -> FastVerdict:
    if 0 in signs:
        return FastVerdict.DEGENERATE
    if signs[0] == signs[1] == signs[2] == signs[3]:
        return FastVerdict.NOT_SEPARABLE
    return FastVerdict.SEPARABLE


def pairwise_plane_check(vs: VectorSet):
    """Reference test over all six planes P(x_i, x_j).

    Returns ``(verdict, pair, side)``: for a separable set ``pair`` is the
    first (i, j), 0-based, whose plane leaves both remaining vectors on the
    open side ``side``; otherwise ``pair`` and ``side`` are None.
    """
    if vs.dim != 3 or len(vs) != 4:
        raise InputError("pairwise_plane_check needs four vectors in R^3")
    x = vs.vectors
    if any(sign_det3(*(x[t] for t in tri)) == 0
           for tri in itertools.combinations(range(4), 3)):
        raise ValueError("pairwise_plane_check requires no three coplanar vectors")
    for i, j in itertools.combinations(range(4), 2):
        r, s = (t for t in range(4) if t not in (i, j))
        sr = sign_det3(x[i], x[j], x[r])
        if sr == sign_det3(x[i], x[j], x[s]):
            return SEPARABLE, (i, j), sr
    return NOT_SEPARABLE, None, None


def build_functional_4x3(vs: VectorSet, pair, side: Sign) -> SeparatingFunctional:
    """Tilt the plane P(x_i, x_j) off both of its vectors.

    ``f = eps*u + side*(x_i cross x_j)`` where ``u`` is positive on x_i and
    x_j, and ``eps`` is small enough to keep the two remaining vectors on
    the positive side.  The result is verified; on failure the LP oracle's
    functional is used instead.
    """
    i, j = pair
    xi, xj = vs[i], vs[j]
    a, b, p = dot(xi, xi), dot(xj, xj), dot(xi, xj)
    if p >= 0:
        u = tuple(s + t for s, t in zip(xi, xj))
    else:
        delta = Fraction(a * b - p * p, -2 * p)
        u = tuple(b * s + (-p + delta) * t for s, t in zip(xi, xj))
    if dot(u, xi) <= 0 or dot(u, xj) <= 0:
        raise ValueError(f"vectors {i} and {j} are antipodal; "
                         "no tilt direction exists")
    normal = cross(xi, xj)
    eps = Fraction(1)
    for r in range(len(vs)):
        if r in pair:
            continue
        lift = side * dot(normal, vs[r])
        tilt = dot(u, vs[r])
        if lift <= 0:
            raise ValueError(f"vector {r} is not strictly on side {int(side):+d}")
        if tilt < 0:
            eps = min(eps, Fraction(lift) / (2 * -tilt))
    coeffs = [eps * s + side * n for s, n in zip(u, normal)]
    verdict = Verdict(Outcome.SEPARABLE,
                      SeparatingFunctional(normalize_functional(coeffs)))
    if verify_certificate(vs, verdict):
        return verdict.certificate
    fallback = farkas_oracle(vs)
    if not fallback.separable:
        raise ContractViolation("tilted functional failed and oracle disagrees")
    return fallback.certificate


def _kernel_witness(vs: VectorSet) -> Verdict:
    # For x1..x4 in R^3 spanning R^3 the dependency is given by 3x3 minors.
    x1, x2, x3, x4 = vs.vectors
    w = (det3(x2, x3, x4), -det3(x1, x3, x4), det3(x1, x2, x4), -det3(x1, x2, x3))
    if w[0] < 0:
        w = tuple(-c for c in w)
    return _witness(vs, w)


def _first_dependent_triple(vs: VectorSet):
    x = vs.vectors
    for tri in itertools.combinations(range(len(x)), 3):
        if det3(*(x[t] for t in tri)) == 0:
            return tri
    return None


def coplanar_reduce(vs: VectorSet, triple, want_certificate: bool = True) -> Verdict:
    """Reduce four vectors with a coplanar triple to a test inside that plane.

    With the triple spanning a plane P, separability of all four vectors
    equals separability of those lying in P, tested in 2D coordinates.
    """
    if vs.dim != 3 or len(vs) != 4:
        raise InputError("coplanar_reduce needs four vectors in R^3")
    x = vs.vectors
    tri = [x[t] for t in triple]
    if det3(*tri) != 0:
        raise ContractViolation(f"triple {triple} is not linearly dependent")
    pair = next(((a, b) for a, b in itertools.combinations(triple, 2)
                 if any(cross(x[a], x[b]))), None)
    if pair is None:
        raise ContractViolation(f"triple {triple} does not span a plane")
    b1, b2 = x[pair[0]], x[pair[1]]
    normal = cross(b1, b2)
    in_plane = [t for t in range(4) if t in triple or sign_det3(b1, b2, x[t]) == 0]
    off_plane = [t for t in range(4) if t not in in_plane]

    # Coordinates scaled by |normal|^2 > 0: still a linear bijection P -> Q^2.
    def coords(y):
        return (dot(cross(y, b2), normal), dot(cross(b1, y), normal))

    flat = VectorSet(2, tuple(coords(x[t]) for t in in_plane))
    verdict2 = separable_2d(flat, want_certificate)
    if not want_certificate:
        return verdict2
    if not verdict2.separable:
        w = [0] * 4
        for t, wt in zip(in_plane, verdict2.certificate.weights):
            w[t] = wt
        return _witness(vs, w)
    n2 = dot(normal, normal)
    g = verdict2.certificate.coefficients
    f_plane = _lift_functional([b1, b2], [g[0] * n2, g[1] * n2])
    f = list(f_plane)
    for t in off_plane:
        # Only one vector can be off the plane; push it to value 1.
        lam = (1 - dot(f_plane, x[t])) / Fraction(dot(normal, x[t]))
        f = [fc + lam * nc for fc, nc in zip(f_plane, normal)]
    return _functional(vs, f)


# ---------------------------------------------------------------------------
# dispatch

def decide(vs: VectorSet, want_certificate: bool = False) -> Verdict:
    """Decide whether ``vs`` admits a supporting hyperplane.

    Dispatch: empty set (separable), zero vector (not separable), then by
    rank. Rank 1 and 2 are tested in basis coordinates; four vectors of rank
    3 use the four-determinant test with the coplanar reduction as fallback;
    everything else goes to the LP oracle.
    """
    k, d = len(vs), vs.dim
    if k == 0:
        if want_certificate:
            return Verdict(Outcome.SEPARABLE,
                           SeparatingFunctional((1,) + (0,) * (d - 1)))
        return SEPARABLE
    for i, x in enumerate(vs.vectors):
        if not any(x):
            if not want_certificate:
                return NOT_SEPARABLE
            return _checked(vs, Verdict(
                Outcome.NOT_SEPARABLE,
                FarkasWitness(tuple(1 if t == i else 0 for t in range(k)))))
    if k == 4 and d == 3:
        verdict = _decide_4x3(vs, want_certificate)
        if verdict is not None:
            return verdict
    rank, basis, coords = rank_and_basis(vs)
    if rank <= 2 or (rank == 3 and k == 4):
        flat = VectorSet(rank, tuple(coords))
        if rank == 1:
            verdict = _decide_rank1(flat, want_certificate)
        elif rank == 2:
            verdict = separable_2d(flat, want_certificate)
        else:
            verdict = _decide_4x3(flat, want_certificate)
        if not want_certificate:
            return verdict
        return _lift(vs, verdict, [vs[b] for b in basis])
    verdict = farkas_oracle(vs)
    return verdict if want_certificate else Verdict(verdict.outcome)


def _decide_4x3(vs: VectorSet, want_certificate: bool) -> Optional[Verdict]:
    """Fast path for four vectors in R^3; None when their rank is below 3."""
    x1, x2, x3, x4 = vs.vectors
    d123 = det3(x1, x2, x3)
    d142 = det3(x1, x4, x2)
    d324 = det3(x3, x2, x4)
    d134 = det3(x1, x3, x4)
    signs = tuple((v > 0) - (v < 0) for v in (d123, d142, d324, d134))
    fast = _fast_verdict(signs)
    if fast is FastVerdict.NOT_SEPARABLE:
        return _kernel_witness(vs) if want_certificate else NOT_SEPARABLE
    if fast is FastVerdict.SEPARABLE:
        if not want_certificate:
            return SEPARABLE
        _, pair, side = pairwise_plane_check(vs)
        if pair is None:
            raise ContractViolation("sign test and pairwise planes disagree")
        return _checked(vs, Verdict(Outcome.SEPARABLE,
                                    build_functional_4x3(vs, pair, Sign(side))))
    if not any(signs):
        return None
    return coplanar_reduce(vs, _first_dependent_triple(vs), want_certificate)


def _decide_rank1(vs: VectorSet, want_certificate: bool) -> Verdict:
    # One coordinate per vector: the multiple of the common direction.
    c = [x[0] for x in vs.vectors]
    pos = next((i for i, v in enumerate(c) if v > 0), None)
    neg = next((i for i, v in enumerate(c) if v < 0), None)
    if pos is not None and neg is not None:
        if not want_certificate:
            return NOT_SEPARABLE
        w = [0] * len(c)
        w[pos], w[neg] = -c[neg], c[pos]
        return _witness(vs, w)
    side = 1 if neg is None else -1
    if not want_certificate:
        return SEPARABLE
    return _functional(vs, (side,))


def _lift(vs: VectorSet, verdict: Verdict, basis_vectors) -> Verdict:
    """Carry a certificate from basis coordinates back to the ambient space."""
    if not verdict.separable:
        return _checked(vs, verdict)
    f = _lift_functional(basis_vectors, verdict.certificate.coefficients)
    return _functional(vs, f)
