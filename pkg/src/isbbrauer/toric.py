"""Toric verification of the uv = xyz singularity resolution.

Pointed rational cones in Z^4, their duals by brute-force inequality
enumeration, Hilbert bases by bounded lattice-point search, smoothness
via Smith normal form, and star subdivisions.  Everything is exact
integer (or Fraction) arithmetic; scope is deliberately capped at
ambient rank 4 and 8 rays per cone, which covers the one cone this
package cares about — ``uv_xyz_cone()`` — and all of its transforms.

``resolve_demo`` runs the whole story: find the three singular faces,
derive candidate blow-up rays from their ray sums, and search the
orderings of three star subdivisions for one whose final fan is smooth.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

__all__ = [
    "DIM",
    "CapExceededError",
    "FanParseError",
    "FanScriptError",
    "ResolutionSearchError",
    "Cone",
    "Fan",
    "SmoothnessCertificate",
    "SmoothnessReport",
    "SubdivisionStep",
    "ResolutionReport",
    "FanScript",
    "dual_generators",
    "hilbert_basis",
    "faces",
    "singular_faces",
    "is_smooth",
    "star_subdivide",
    "support_contains",
    "intersection_cone",
    "fan_intersections_are_faces",
    "uv_xyz_cone",
    "resolve_demo",
    "parse_fan_script",
]

DIM = 4
_RAY_CAP = 8

Vec = tuple[int, ...]


class CapExceededError(ValueError):
    """The operation refused input past the rank-4 / 8-ray scope cap."""


class ResolutionSearchError(RuntimeError):
    """No ordering of the candidate subdivisions produced a smooth fan."""


class FanParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class FanScriptError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


# ---------------------------------------------------------------------------
# integer-vector utilities


def _as_vec(v) -> Vec:
    t = tuple(v)
    if len(t) != DIM or not all(isinstance(x, int) for x in t):
        raise ValueError(f"lattice vectors have {DIM} integer coordinates, got {v!r}")
    return t


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def _neg(v) -> Vec:
    return tuple(-x for x in v)


def _add(a, b) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def _gcd_all(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def _primitive(v) -> Vec:
    g = _gcd_all(v)
    if g == 0:
        raise ValueError("the zero vector has no primitive representative")
    return tuple(x // g for x in v)


def _is_primitive(v) -> bool:
    return _gcd_all(v) == 1


def _det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        total += (-1) ** j * m[0][j] * _det(minor)
    return total


def _rank(vectors) -> int:
    """Rank over Q by exact Gaussian elimination."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    rank = 0
    for col in range(len(rows[0]) if rows else 0):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _cofactor_normal(rows: tuple[Vec, ...], d: int) -> Vec | None:
    """Vector orthogonal to d-1 given vectors of length d, by cofactors.

    Returns None when the input has rank below d-1 (no unique normal).
    For zero input rows in dimension 1 the convention is (1,).
    """
    n = []
    for j in range(d):
        minor = [[row[k] for k in range(d) if k != j] for row in rows]
        n.append((-1) ** j * _det(minor))
    if all(x == 0 for x in n):
        return None
    return tuple(n)


def _smith_normal_form(rows: list[Vec], n: int) -> tuple[list[int], list[list[int]]]:
    """Invariant factors and the column-operation matrix V (U*M*V diagonal)."""
    m = [list(r) for r in rows]
    k = len(m)
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def col_swap(a, b):
        for row in m:
            row[a], row[b] = row[b], row[a]
        for row in v:
            row[a], row[b] = row[b], row[a]

    def col_add(src, dst, q):
        for row in m:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def col_negate(a):
        for row in m:
            row[a] = -row[a]
        for row in v:
            row[a] = -row[a]

    t = 0
    while t < k and t < n:
        pivot = None
        for i in range(t, k):
            for j in range(t, n):
                if m[i][j] and (pivot is None or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        m[t], m[pivot[0]] = m[pivot[0]], m[t]
        col_swap(t, pivot[1])
        while True:
            for i in range(k):
                if i != t and m[i][t]:
                    q = m[i][t] // m[t][t]
                    m[i] = [a - q * b for a, b in zip(m[i], m[t])]
            for j in range(n):
                if j != t and m[t][j]:
                    col_add(t, j, -(m[t][j] // m[t][t]))
            clean = all(not m[i][t] for i in range(k) if i != t) and all(
                not m[t][j] for j in range(n) if j != t
            )
            if clean:
                break
            # a division left a remainder strictly smaller than the pivot;
            # bring the smallest entry of row/column t to the pivot spot
            best_val = abs(m[t][t])
            best = None
            for i in range(k):
                if i != t and m[i][t] and abs(m[i][t]) < best_val:
                    best, best_val = ("row", i), abs(m[i][t])
            for j in range(n):
                if j != t and m[t][j] and abs(m[t][j]) < best_val:
                    best, best_val = ("col", j), abs(m[t][j])
            assert best is not None, "remainder after division must shrink"
            if best[0] == "row":
                m[t], m[best[1]] = m[best[1]], m[t]
            else:
                col_swap(t, best[1])
        offender = None
        for i in range(t + 1, k):
            for j in range(t + 1, n):
                if m[i][j] % m[t][t]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            m[t] = [a + b for a, b in zip(m[t], m[offender])]
            continue
        if m[t][t] < 0:
            col_negate(t)
        t += 1
    return [m[i][i] for i in range(t)], v


def _fraction_inverse(mat: list[list[int]]) -> list[list[int]]:
    """Exact inverse of a unimodular integer matrix (entries stay integral)."""
    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        pivot = next(i for i in range(col, n) if a[i][col])
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            entry = a[i][n + j]
            if entry.denominator != 1:
                raise ValueError("matrix is not unimodular")
            row.append(int(entry))
        out.append(row)
    return out


def _nullspace(vectors: list[Vec]) -> list[Vec]:
    """Saturated lattice basis of {x in Z^4 : <x, v> = 0 for all v}."""
    if not vectors:
        return [tuple(int(i == j) for j in range(DIM)) for i in range(DIM)]
    diag, v = _smith_normal_form(list(vectors), DIM)
    rank = sum(1 for d in diag if d != 0)
    kernel = []
    for j in range(rank, DIM):
        col = tuple(v[i][j] for i in range(DIM))
        kernel.append(_primitive(col))
    return sorted(kernel)


# ---------------------------------------------------------------------------
# dual cones


def _facet_normals(vectors: list[tuple[int, ...]], d: int) -> list[tuple[int, ...]]:
    """Extremal rays of the dual of a full-dimensional cone in Z^d.

    Every facet of cone(vectors) is spanned by generators lying in it, so
    candidate normals come from (d-1)-subsets; sign feasibility keeps the
    supporting ones.  In dimension 1 the empty subset yields the normal
    (1,) by the empty-determinant convention.
    """
    normals: set[tuple[int, ...]] = set()
    for subset in itertools.combinations(vectors, d - 1):
        n = _cofactor_normal(subset, d) if d > 1 else (1,)
        if n is None:
            continue
        pos = all(_dot(n, v) >= 0 for v in vectors)
        neg = all(_dot(n, v) <= 0 for v in vectors)
        if pos and neg:
            continue
        if pos:
            normals.add(_primitive(n))
        elif neg:
            normals.add(_primitive(_neg(n)))
    return sorted(normals)


def _coords_in_basis(v: Vec, basis: list[Vec]) -> tuple[int, ...]:
    """Integer coordinates of v in a saturated basis of its span."""
    r = len(basis)
    rows = [[Fraction(basis[i][k]) for i in range(r)] + [Fraction(v[k])] for k in range(DIM)]
    coords = [Fraction(0)] * r
    rank = 0
    for col in range(r):
        pivot = next((i for i in range(rank, DIM) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(DIM):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    for i in range(rank, DIM):
        if rows[i][r]:
            raise ValueError("vector does not lie in the span of the basis")
    pivot_cols = []
    for i in range(rank):
        pivot_cols.append(next(j for j in range(r) if rows[i][j]))
    for i, col in enumerate(pivot_cols):
        coords[col] = rows[i][r]
    out = []
    for x in coords:
        if x.denominator != 1:
            raise ValueError("coordinates are not integral in the saturated basis")
        out.append(int(x))
    return tuple(out)


def _lift_functional(n_local: tuple[int, ...], basis: list[Vec]) -> Vec:
    """The primitive m in span(basis) with <m, basis_j> proportional to n_local."""
    r = len(basis)
    gram = [[Fraction(_dot(basis[i], basis[j])) for j in range(r)] for i in range(r)]
    rhs = [Fraction(x) for x in n_local]
    # solve gram * c = rhs (gram is positive definite, hence invertible)
    aug = [gram[i] + [rhs[i]] for i in range(r)]
    for col in range(r):
        pivot = next(i for i in range(col, r) if aug[i][col])
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(r):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    c = [aug[i][r] for i in range(r)]
    m = [Fraction(0)] * DIM
    for i in range(r):
        for k in range(DIM):
            m[k] += c[i] * basis[i][k]
    denom = 1
    for x in m:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = tuple(int(x * denom) for x in m)
    return _primitive(ints)


@lru_cache(maxsize=None)
def _dual_rays(vectors: tuple[Vec, ...]) -> tuple[Vec, ...]:
    """Minimal generating set of {m : <m, v> >= 0 for all v}.

    Accepts an arbitrary vector list (the cone it generates need not be
    pointed).  When the input does not span, the dual has a lineality
    space: the result then contains +/- a lattice basis of it alongside
    the pointed generators computed in saturated subspace coordinates.
    """
    vecs = [v for v in vectors if any(v)]
    if not vecs:
        units = [tuple(int(i == j) for j in range(DIM)) for i in range(DIM)]
        return tuple(sorted(units + [_neg(u) for u in units]))
    r = _rank(vecs)
    if r == DIM:
        return tuple(_facet_normals(vecs, DIM))
    lineal = _nullspace(vecs)
    basis = _nullspace(lineal)
    coords = [_coords_in_basis(v, basis) for v in vecs]
    pointed = [_lift_functional(n, basis) for n in _facet_normals(coords, r)]
    out = pointed + lineal + [_neg(b) for b in lineal]
    return tuple(sorted(out))


# ---------------------------------------------------------------------------
# cones and fans


@dataclass(frozen=True)
class Cone:
    """A strongly convex rational cone given by its primitive rays.

    Rays are stored canonically sorted, so structural equality is
    equality of ray sets.  Construction validates primitivity, pairwise
    non-proportionality, and pointedness.
    """

    rays: tuple[Vec, ...] = ()

    def __post_init__(self) -> None:
        rays = tuple(sorted(_as_vec(r) for r in self.rays))
        object.__setattr__(self, "rays", rays)
        for r in rays:
            if not any(r):
                raise ValueError("zero vector cannot be a ray")
            if not _is_primitive(r):
                raise ValueError(f"ray {r} is not primitive")
        for a, b in itertools.combinations(rays, 2):
            if a == b or a == _neg(b):
                raise ValueError(f"rays {a} and {b} are proportional")
        # pointedness: the dual is full-dimensional exactly for pointed cones
        if rays and _rank(_dual_rays(rays)) != DIM:
            raise ValueError("cone contains a line (not strongly convex)")

    @property
    def dim(self) -> int:
        return _rank(self.rays) if self.rays else 0

    def contains(self, x) -> bool:
        point = _as_vec(x)
        return all(_dot(m, point) >= 0 for m in _dual_rays(self.rays))


@dataclass(frozen=True)
class Fan:
    """A collection of maximal cones; order is presentation only."""

    maximal_cones: tuple[Cone, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "maximal_cones", tuple(self.maximal_cones))

    def rays(self) -> list[Vec]:
        seen = sorted({r for c in self.maximal_cones for r in c.rays})
        return seen


def _check_cap(c: Cone) -> None:
    if len(c.rays) > _RAY_CAP:
        raise CapExceededError(f"{len(c.rays)} rays exceeds the cap of {_RAY_CAP}")


def dual_generators(c: Cone) -> list[Vec]:
    """Primitive generators of the dual cone, canonically sorted.

    For a full-dimensional cone these are exactly the extremal rays of
    the dual; otherwise the dual's lineality is returned as +/- basis
    pairs alongside its pointed part.
    """
    _check_cap(c)
    return list(_dual_rays(c.rays))


def hilbert_basis(c: Cone) -> list[Vec]:
    """Minimal generating set of the semigroup of lattice points of ``c``.

    Every irreducible element lies in the zonotope spanned by the rays,
    so enumerating that box and greedily filtering by a strictly positive
    functional yields the (unique) minimal set; irreducibility of the
    result is re-verified before returning.
    """
    _check_cap(c)
    if not c.rays:
        return []
    dual = _dual_rays(c.rays)

    def inside(p: Vec) -> bool:
        return all(_dot(m, p) >= 0 for m in dual)

    lo = [sum(min(0, r[j]) for r in c.rays) for j in range(DIM)]
    hi = [sum(max(0, r[j]) for r in c.rays) for j in range(DIM)]
    weight = tuple(sum(m[j] for m in dual) for j in range(DIM))
    candidates = [
        p
        for p in itertools.product(*[range(lo[j], hi[j] + 1) for j in range(DIM)])
        if any(p) and inside(p)
    ]
    candidates.sort(key=lambda p: (_dot(weight, p), p))
    basis: list[Vec] = []
    for h in candidates:
        reducible = False
        for a in basis:
            diff = _sub(h, a)
            if any(diff) and inside(diff):
                reducible = True
                break
        if not reducible:
            basis.append(h)
    for h in basis:
        for a in basis:
            diff = _sub(h, a)
            if a != h and any(diff) and inside(diff):
                raise AssertionError(f"hilbert basis element {h} is reducible by {a}")
    return sorted(basis)


def faces(c: Cone) -> list[Cone]:
    """All faces of ``c`` (including itself and the zero face).

    Faces are intersections of facets, and every face is spanned by the
    rays it contains, so closure over facet ray-sets enumerates them.
    """
    _check_cap(c)
    all_rays = frozenset(c.rays)
    facet_sets = []
    for m in _dual_rays(c.rays):
        zeros = frozenset(r for r in c.rays if _dot(m, r) == 0)
        if zeros != all_rays:
            facet_sets.append(zeros)
    known = {all_rays}
    frontier = [all_rays]
    while frontier:
        f = frontier.pop()
        for ft in facet_sets:
            g = f & ft
            if g not in known:
                known.add(g)
                frontier.append(g)
    ordered = sorted(known, key=lambda rs: (len(rs), tuple(sorted(rs))))
    return [Cone(tuple(rs)) for rs in ordered]


def singular_faces(c: Cone) -> list[Cone]:
    """Proper faces of ``c`` that fail the smoothness test."""
    out = []
    for f in faces(c):
        if frozenset(f.rays) == frozenset(c.rays):
            continue
        if not is_smooth(f).smooth:
            out.append(f)
    return out


@dataclass(frozen=True)
class SmoothnessCertificate:
    """Self-verifying witness: for a smooth cone, ``matrix`` stacks the
    rays with integral completion rows and has determinant +/-1."""

    cone: Cone
    smooth: bool
    reason: str
    matrix: tuple[Vec, ...] | None = None
    determinant: int | None = None


@dataclass(frozen=True)
class SmoothnessReport:
    smooth: bool
    certificates: tuple[SmoothnessCertificate, ...]

    def __bool__(self) -> bool:
        return self.smooth


def _cone_certificate(c: Cone) -> SmoothnessCertificate:
    k = len(c.rays)
    if _rank(c.rays) != k:
        return SmoothnessCertificate(c, False, "not simplicial")
    diag, v = _smith_normal_form(list(c.rays), DIM)
    if any(d != 1 for d in diag):
        return SmoothnessCertificate(c, False, f"invariant factors {tuple(diag)}")
    w = _fraction_inverse(v)
    completion = [tuple(w[i]) for i in range(k, DIM)]
    matrix = tuple(list(c.rays) + completion)
    det = _det([list(row) for row in matrix])
    if abs(det) != 1:
        raise AssertionError("smooth certificate completion failed")
    return SmoothnessCertificate(c, True, "unimodular", matrix, det)


def is_smooth(obj: "Cone | Fan") -> SmoothnessReport:
    """Smoothness of a cone, or of every maximal cone of a fan.

    A cone is smooth iff it is simplicial and the Smith normal form of
    its ray matrix has all invariant factors equal to 1; the certificate
    records a unimodular completion of the ray matrix as a witness.
    """
    cones = obj.maximal_cones if isinstance(obj, Fan) else (obj,)
    certs = tuple(_cone_certificate(c) for c in cones)
    return SmoothnessReport(all(ct.smooth for ct in certs), certs)


def support_contains(f: Fan, x) -> bool:
    point = _as_vec(x)
    return any(c.contains(point) for c in f.maximal_cones)


def star_subdivide(f: Fan, rho) -> Fan:
    """Star subdivision of a fan at a primitive ray in its support.

    Cones not containing ``rho`` survive; a cone containing it is
    replaced by cone(facet, rho) for each of its facets whose supporting
    hyperplane separates strictly from ``rho``.  Support is preserved.
    """
    ray = _as_vec(rho)
    if not any(ray):
        raise ValueError("subdivision ray must be nonzero")
    if not _is_primitive(ray):
        raise ValueError(f"subdivision ray {ray} is not primitive")
    if not support_contains(f, ray):
        raise ValueError(f"subdivision ray {ray} lies outside the support of the fan")
    new_cones: list[Cone] = []
    for c in f.maximal_cones:
        if not c.contains(ray):
            new_cones.append(c)
            continue
        for m in _dual_rays(c.rays):
            if _dot(m, ray) <= 0:
                continue
            facet = tuple(r for r in c.rays if _dot(m, r) == 0)
            new_cones.append(Cone(facet + (ray,)))
    return Fan(tuple(dict.fromkeys(new_cones)))


def intersection_cone(a: Cone, b: Cone) -> Cone:
    """The cone a ∩ b (pointed whenever a is), via double duality."""
    combined = tuple(sorted(set(_dual_rays(a.rays)) | set(_dual_rays(b.rays))))
    return Cone(_dual_rays(combined))


def _is_face_of(candidate: Cone, c: Cone) -> bool:
    return any(candidate == f for f in faces(c))


def fan_intersections_are_faces(f: Fan) -> bool:
    """The defining fan condition, checked pairwise by brute force."""
    for a, b in itertools.combinations(f.maximal_cones, 2):
        meet = intersection_cone(a, b)
        if not (_is_face_of(meet, a) and _is_face_of(meet, b)):
            return False
    return True


# ---------------------------------------------------------------------------
# the uv = xyz resolution demo


def uv_xyz_cone() -> Cone:
    """The cone whose affine toric variety is the hypersurface uv = xyz."""
    return Cone(
        (
            (1, 0, 0, 0),
            (0, 1, 0, 0),
            (1, 0, 1, 0),
            (0, 1, 1, 0),
            (1, 0, 0, 1),
            (0, 1, 0, 1),
        )
    )


@dataclass(frozen=True)
class SubdivisionStep:
    ray: Vec
    fan: Fan
    support_ok: bool


@dataclass(frozen=True)
class ResolutionReport:
    cone: Cone
    singular: tuple[Cone, ...]
    candidates: tuple[Vec, ...]
    order: tuple[Vec, ...]
    steps: tuple[SubdivisionStep, ...]
    smoothness: SmoothnessReport
    samples: int


_SUPPORT_SAMPLES = 1000
_SAMPLE_SEED = 48112


def _sample_points(cone: Cone, count: int, seed: int) -> list[Vec]:
    rng = random.Random(seed)
    points = []
    for _ in range(count):
        coeffs = [rng.randint(0, 4) for _ in cone.rays]
        p = (0,) * DIM
        for t, r in zip(coeffs, cone.rays):
            p = _add(p, tuple(t * x for x in r))
        points.append(p)
    return points


def resolve_demo(samples: int = _SUPPORT_SAMPLES) -> ResolutionReport:
    """Resolve the uv = xyz cone by three star subdivisions.

    Candidate rays are the primitive halved ray-sums of the three
    singular faces.  All orderings of the three subdivisions are tried
    in deterministic order; the first one whose final fan is smooth is
    reported with per-step support verification on sampled points.

    Raises:
        ResolutionSearchError: if no ordering yields a smooth fan.
    """
    sigma = uv_xyz_cone()
    singular = tuple(singular_faces(sigma))
    candidates = tuple(sorted(_primitive(_ray_sum(f)) for f in singular))
    points = _sample_points(sigma, samples, _SAMPLE_SEED)

    for order in itertools.permutations(candidates):
        fan = Fan((sigma,))
        fans = []
        try:
            for ray in order:
                fan = star_subdivide(fan, ray)
                fans.append(fan)
        except ValueError:
            continue
        report = is_smooth(fan)
        if not report.smooth:
            continue
        steps = tuple(
            SubdivisionStep(ray, f, all(support_contains(f, p) for p in points))
            for ray, f in zip(order, fans)
        )
        return ResolutionReport(
            cone=sigma,
            singular=singular,
            candidates=candidates,
            order=order,
            steps=steps,
            smoothness=report,
            samples=samples,
        )
    raise ResolutionSearchError("no ordering of the candidate subdivisions is smooth")


def _ray_sum(c: Cone) -> Vec:
    total = (0,) * DIM
    for r in c.rays:
        total = _add(total, r)
    return total


# ---------------------------------------------------------------------------
# fan script format: `ray a b c d`, `cone i j ...`, `subdivide a b c d`


@dataclass(frozen=True)
class FanScript:
    fan: Fan
    subdivisions: tuple[tuple[int, Vec], ...]  # (source line, ray)


def parse_fan_script(text: str) -> FanScript:
    """Parse the fan text format.

    Raises:
        FanParseError: malformed syntax, with 1-based line/column.
        FanScriptError: structurally valid text with bad semantics
            (unknown ray index, invalid cone, empty fan).
    """
    import re

    rays: list[Vec] = []
    cones: list[Cone] = []
    subdivisions: list[tuple[int, Vec]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        spans = [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", line)]
        keyword, key_col = spans[0]
        args = spans[1:]

        def integers(expected: int | None) -> list[int]:
            if expected is not None and len(args) != expected:
                raise FanParseError(
                    f"{keyword} expects {expected} integers, got {len(args)}",
                    lineno,
                    key_col,
                )
            out = []
            for tok, col in args:
                try:
                    out.append(int(tok))
                except ValueError:
                    raise FanParseError(
                        f"expected an integer, got {tok!r}", lineno, col
                    ) from None
            return out

        if keyword == "ray":
            rays.append(tuple(integers(DIM)))
        elif keyword == "cone":
            idx = integers(None)
            if not idx:
                raise FanParseError("cone needs at least one ray index", lineno, key_col)
            picked = []
            for i in idx:
                if not 0 <= i < len(rays):
                    raise FanScriptError(f"ray index {i} is out of range", lineno)
                picked.append(rays[i])
            try:
                cones.append(Cone(tuple(picked)))
            except ValueError as exc:
                raise FanScriptError(str(exc), lineno) from None
        elif keyword == "subdivide":
            subdivisions.append((lineno, tuple(integers(DIM))))
        else:
            raise FanParseError(f"unknown keyword {keyword!r}", lineno, key_col)
    if not cones:
        raise FanScriptError("fan has no cones", len(text.splitlines()) or 1)
    return FanScript(Fan(tuple(cones)), tuple(subdivisions))
