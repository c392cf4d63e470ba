"""Geometric realizations, sweep orders, and tightness verification.

Heights along a direction are the only floating-point-sensitive quantity;
coordinates supplied as integers or fractions keep the whole computation
exact.  The halfspace restriction is modeled combinatorially by the full
induced subcomplex on the vertices beyond the threshold, which is a
deformation retract of the geometric restriction for linear embeddings in
general position.  Consequently every check below is a finite sequence of
mod-2 rank computations.

Two injectivity conventions appear:

* ``is_pi_tight`` checks the upper halfspaces (direction of the given
  vector), matching the definitional convention.
* The sweep algorithm consumes injectivity of the *below*-threshold
  prefixes, which is the upper check for the negated direction; callers
  needing that hypothesis use ``is_prefix_tight``.  For embeddings tight in
  almost all directions the two agree on generic vectors.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .complex_core import SimplicialComplex, link, restrict
from .errors import (
    DegenerateDirectionError,
    InvalidEmbeddingError,
    NotTightError,
    ThresholdHitsVertexError,
)
from .homology_z2 import (
    Gf2Space,
    betti,
    boundary_chain_masks,
    cycle_masks_in,
)

Number = int | float | Fraction
Vector = tuple[Number, ...]


@dataclass(frozen=True)
class GeometricRealization:
    """A complex plus vertex coordinates in R^k."""

    complex: SimplicialComplex
    coords: dict[int, Vector]
    ambient_dim: int

    def __post_init__(self):
        for v in self.complex.vertices:
            if v not in self.coords:
                raise InvalidEmbeddingError(f"vertex {v} has no coordinates")
            if len(self.coords[v]) != self.ambient_dim:
                raise InvalidEmbeddingError(
                    f"vertex {v} has {len(self.coords[v])} coordinates, expected {self.ambient_dim}"
                )

    def height(self, v: int, direction: Vector) -> Number:
        return sum(p * d for p, d in zip(self.coords[v], direction))

    def restricted(self, vertices: Iterable[int]) -> "GeometricRealization":
        keep = set(vertices)
        sub = restrict(self.complex, keep)
        return GeometricRealization(sub, {v: self.coords[v] for v in keep}, self.ambient_dim)


@dataclass(frozen=True)
class SweepOrder:
    """Vertices in strictly ascending height along a direction."""

    direction: Vector
    vertices: tuple[int, ...]
    heights: tuple[Number, ...]


def sweep_order(g: GeometricRealization, direction: Vector) -> SweepOrder:
    """Sort vertices by height; rejects ties (general position required)."""
    if all(d == 0 for d in direction):
        raise DegenerateDirectionError([])
    pairs = sorted((g.height(v, direction), v) for v in g.complex.vertices)
    ties = [
        (pairs[i][1], pairs[i + 1][1])
        for i in range(len(pairs) - 1)
        if pairs[i][0] == pairs[i + 1][0]
    ]
    if ties:
        raise DegenerateDirectionError(ties)
    return SweepOrder(tuple(direction), tuple(v for _, v in pairs), tuple(h for h, _ in pairs))


def perturb_direction(g: GeometricRealization, direction: Vector, seed: int = 0) -> Vector:
    """Deterministic tiny perturbation of a direction into general position.

    Noise magnitude starts at 1e-9 of the height spread and doubles until
    the sweep order is strict.
    """
    try:
        sweep_order(g, direction)
        return tuple(direction)
    except DegenerateDirectionError:
        pass
    heights = [float(g.height(v, direction)) for v in g.complex.vertices]
    spread = (max(heights) - min(heights)) if heights else 0.0
    if spread == 0.0:
        spread = max((abs(float(d)) for d in direction), default=1.0) or 1.0
    rng = random.Random(seed)
    scale = 1e-9 * spread
    for _ in range(64):
        candidate = tuple(float(d) + scale * rng.gauss(0.0, 1.0) for d in direction)
        try:
            sweep_order(g, candidate)
            return candidate
        except DegenerateDirectionError:
            scale *= 2.0
    raise DegenerateDirectionError([("perturbation failed", seed)])


def upper_subcomplex(g: GeometricRealization, direction: Vector, threshold: Number) -> SimplicialComplex:
    """Induced subcomplex on vertices strictly above the threshold height."""
    above = []
    for v in g.complex.vertices:
        h = g.height(v, direction)
        if h == threshold:
            raise ThresholdHitsVertexError(f"threshold {threshold} hits vertex {v}")
        if h > threshold:
            above.append(v)
    return restrict(g.complex, above)


# -- tightness -------------------------------------------------------------

@dataclass(frozen=True)
class TightnessFailure:
    threshold: float
    dim: int
    betti_sub: int
    image_rank: int


@dataclass(frozen=True)
class TightnessReport:
    tight: bool
    direction: Vector
    checks: int
    failures: tuple[TightnessFailure, ...]

    def __bool__(self) -> bool:
        return self.tight


def _injectivity_scan(g: GeometricRealization, order: SweepOrder) -> TightnessReport:
    """Check every upper set of the given sweep order against the complex."""
    c = g.complex
    dim = c.dimension
    n = len(order.vertices)
    failures: list[TightnessFailure] = []
    checks = 0

    # ambient boundary spaces, one per dimension, eliminated once and cloned
    x_faces = {i: c.faces(i) for i in range(dim + 1)}
    base_spaces = {i: Gf2Space(boundary_chain_masks(c, i + 1)) for i in range(dim + 1)}

    for j in range(1, n):
        upper_vertices = order.vertices[j:]
        a = restrict(c, upper_vertices)
        threshold = (order.heights[j - 1] + order.heights[j]) / 2
        for i in range(dim + 1):
            if i > a.dimension:
                continue
            cycles = cycle_masks_in(a, x_faces[i], i)
            beta_a = len(cycles) - Gf2Space(boundary_chain_masks(a, i + 1)).rank
            checks += 1
            if beta_a == 0:
                continue
            space = base_spaces[i].clone()
            base_rank = space.rank
            for z in cycles:
                space.add(z)
            image_rank = space.rank - base_rank
            if image_rank != beta_a:
                failures.append(TightnessFailure(float(threshold), i, beta_a, image_rank))
    return TightnessReport(not failures, order.direction, checks, tuple(failures))


def is_pi_tight(g: GeometricRealization, direction: Vector) -> TightnessReport:
    """Injectivity of H_*(upper halfspace part) -> H_*(complex), all levels.

    Checks the n-1 thresholds between consecutive vertex heights.  Only the
    +direction halfspaces are checked; tightness of the opposite sign is a
    separate call with the negated vector.
    """
    order = sweep_order(g, direction)
    return _injectivity_scan(g, order)


def is_prefix_tight(g: GeometricRealization, direction: Vector) -> TightnessReport:
    """Injectivity of every ascending sweep prefix into the full complex.

    The prefixes (below-threshold induced subcomplexes) are exactly the
    upper sets of the negated direction; this is the hypothesis the sweep
    construction consumes.
    """
    order = sweep_order(g, direction)
    reversed_order = SweepOrder(
        tuple(-d for d in direction),
        tuple(reversed(order.vertices)),
        tuple(-h for h in reversed(order.heights)),
    )
    return _injectivity_scan(g, reversed_order)


@dataclass(frozen=True)
class SampledTightnessReport:
    samples: int
    passed: int
    failures: tuple[tuple[int, Vector, TightnessReport], ...]

    @property
    def fraction(self) -> float:
        return self.passed / self.samples if self.samples else 1.0


def _thread_count() -> int:
    import os

    try:
        return max(1, int(os.environ.get("TIGHTMORSE_THREADS", "1")))
    except ValueError:
        return 1


def check_tightness_sampled(
    g: GeometricRealization, samples: int, seed: int = 0
) -> SampledTightnessReport:
    """Fraction of uniformly sampled directions that are pi-tight.

    Directions are drawn from the unit sphere and perturbed into general
    position when needed; each sample is deterministic given the seed.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    rng = random.Random(seed)
    directions = []
    for idx in range(samples):
        vec = tuple(rng.gauss(0.0, 1.0) for _ in range(g.ambient_dim))
        norm = sum(x * x for x in vec) ** 0.5 or 1.0
        directions.append(tuple(x / norm for x in vec))

    def run(item):
        idx, vec = item
        direction = perturb_direction(g, vec, seed=seed + idx)
        return idx, direction, is_pi_tight(g, direction)

    workers = _thread_count()
    items = list(enumerate(directions))
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, items))
    else:
        results = [run(item) for item in items]

    failures = tuple((idx, d, rep) for idx, d, rep in results if not rep.tight)
    return SampledTightnessReport(samples, samples - len(failures), failures)


# -- the Betti recursion at the top vertex ----------------------------------

@dataclass(frozen=True)
class RecursionViolation:
    dim: int
    lhs: int
    rhs: int


@dataclass(frozen=True)
class RecursionReport:
    ok: bool
    top_vertex: int | None
    violations: tuple[RecursionViolation, ...]


def verify_lemma_betti_recursion(g: GeometricRealization, direction: Vector) -> RecursionReport:
    """Check the link/deletion Betti identity at the top vertex.

    For the top vertex v with nonempty link L the identity reads, in
    non-reduced mod-2 Betti numbers with delta the Kronecker symbol,

        beta_i(L) + beta_{i+1}(C - v) - delta_{i0} = beta_{i+1}(C).

    Precondition (checked, NotTightError otherwise): every sweep prefix of
    the realization includes injectively, which is what makes the identity
    a theorem.  An isolated top vertex is handled with the reduced-homology
    form of the same identity: beta_0 drops by one and the higher terms
    match without the Kronecker correction.
    """
    report = is_prefix_tight(g, direction)
    if not report.tight:
        raise NotTightError("prefix injectivity fails; the identity is only claimed for tight embeddings", report)
    order = sweep_order(g, direction)
    c = g.complex
    if len(order.vertices) < 2:
        return RecursionReport(True, order.vertices[-1] if order.vertices else None, ())
    v = order.vertices[-1]
    rest = restrict(c, order.vertices[:-1])
    lk = link(c, v)
    b_c = betti(c)
    b_rest = betti(rest)
    violations: list[RecursionViolation] = []
    top = c.dimension
    if lk.is_empty:
        if b_c[0] != b_rest[0] + 1:
            violations.append(RecursionViolation(-1, b_rest[0] + 1, b_c[0]))
        for i in range(top + 1):
            lhs = b_rest[i + 1]
            rhs = b_c[i + 1]
            if lhs != rhs:
                violations.append(RecursionViolation(i, lhs, rhs))
    else:
        b_link = betti(lk)
        for i in range(top + 1):
            lhs = b_link[i] + b_rest[i + 1] - (1 if i == 0 else 0)
            rhs = b_c[i + 1]
            if lhs != rhs:
                violations.append(RecursionViolation(i, lhs, rhs))
    return RecursionReport(not violations, v, tuple(violations))


# -- optional exact embedding verification ----------------------------------

def _exact_coords(g: GeometricRealization) -> dict[int, tuple[Fraction, ...]]:
    out = {}
    for v, p in g.coords.items():
        out[v] = tuple(Fraction(x) if not isinstance(x, Fraction) else x for x in p)
    return out


def _affinely_independent(points: Sequence[tuple[Fraction, ...]]) -> bool:
    if len(points) <= 1:
        return True
    base = points[0]
    rows = [tuple(x - b for x, b in zip(p, base)) for p in points[1:]]
    # exact rank by fraction-free elimination
    rows = [list(r) for r in rows]
    rank = 0
    cols = len(rows[0])
    for col in range(cols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                factor = Fraction(rows[r][col], rows[rank][col])
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank == len(points) - 1


def _max_outside_mass(
    pa: list[tuple[Fraction, ...]],
    pb: list[tuple[Fraction, ...]],
    shared_in_a: list[int],
) -> Fraction | None:
    """Max total barycentric mass of conv(pa) ∩ conv(pb) outside the shared face.

    Solved exactly by enumerating basic feasible solutions of the contact
    polytope {A·l = B·m, sum l = sum m = 1, l, m >= 0}.  Returns None when
    the hulls do not intersect.
    """
    k = len(pa[0])
    s, t = len(pa), len(pb)
    nvars = s + t
    # equality rows: coordinates, then the two affine constraints
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for c in range(k):
        rows.append([pa[i][c] for i in range(s)] + [-pb[j][c] for j in range(t)])
        rhs.append(Fraction(0))
    rows.append([Fraction(1)] * s + [Fraction(0)] * t)
    rhs.append(Fraction(1))
    rows.append([Fraction(0)] * s + [Fraction(1)] * t)
    rhs.append(Fraction(1))

    objective = [Fraction(1) if (i < s and i not in shared_in_a) else Fraction(0) for i in range(nvars)]

    best: Fraction | None = None
    m = len(rows)
    for basis in itertools.combinations(range(nvars), min(m, nvars)):
        sol = _solve_square_subsystem(rows, rhs, basis)
        if sol is None:
            continue
        full = [Fraction(0)] * nvars
        ok = True
        for var, val in zip(basis, sol):
            if val < 0:
                ok = False
                break
            full[var] = val
        if not ok:
            continue
        # verify all equalities (the subsystem may be rank deficient)
        for row, b in zip(rows, rhs):
            if sum(rv * fv for rv, fv in zip(row, full)) != b:
                ok = False
                break
        if not ok:
            continue
        value = sum(o * fv for o, fv in zip(objective, full))
        if best is None or value > best:
            best = value
    return best


def _solve_square_subsystem(rows, rhs, basis):
    m = len(rows)
    a = [[rows[r][v] for v in basis] + [rhs[r]] for r in range(m)]
    n = len(basis)
    row = 0
    pivots = []
    for col in range(n):
        piv = next((r for r in range(row, m) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        for r in range(m):
            if r != row and a[r][col] != 0:
                factor = Fraction(a[r][col], a[row][col])
                a[r] = [x - factor * y for x, y in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    for r in range(row, m):
        if a[r][n] != 0:
            return None
    sol = [Fraction(0)] * n
    for r, col in enumerate(pivots):
        sol[col] = Fraction(a[r][n], a[r][col])
    return sol


def verify_embedding(g: GeometricRealization) -> None:
    """Exact check that the coordinates give a linear embedding.

    Every face must be affinely independent and every pair of faces must
    intersect exactly in their shared subface.  O(f^2) small exact linear
    programs; intended as an opt-in diagnostic, not a standing invariant.
    """
    coords = _exact_coords(g)
    c = g.complex
    for face in c.faces():
        if not _affinely_independent([coords[v] for v in face]):
            raise InvalidEmbeddingError(f"face {face} is affinely dependent")
    faces = list(c.faces())
    for a_idx in range(len(faces)):
        for b_idx in range(a_idx + 1, len(faces)):
            fa, fb = faces[a_idx], faces[b_idx]
            if set(fa) <= set(fb) or set(fb) <= set(fa):
                continue
            shared = set(fa) & set(fb)
            pa = [coords[v] for v in fa]
            pb = [coords[v] for v in fb]
            shared_in_a = [i for i, v in enumerate(fa) if v in shared]
            worst = _max_outside_mass(pa, pb, shared_in_a)
            if worst is None:
                if shared:
                    raise InvalidEmbeddingError(f"faces {fa} and {fb} miss their shared face")
                continue
            if worst > 0:
                raise InvalidEmbeddingError(f"faces {fa} and {fb} overlap outside their shared face")
