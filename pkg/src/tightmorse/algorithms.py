"""Constructive procedures: planar perfect Morse functions, relative
collapses, the sweep construction of perfect matchings on tight
realizations, and exact decision procedures for collapsibility and
non-evasiveness under explicit budgets.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .complex_core import (
    Face,
    SimplicialComplex,
    deletion,
    from_faces,
    link,
    restrict,
)
from .errors import (
    DimensionOutOfRangeError,
    EmptyComplexError,
    NotAcyclicError,
    NotASubcomplexError,
    NotTightError,
    LinkNotPlanarCollapsibleError,
    PerfectnessAssertionFailedError,
    StuckBeforeTargetError,
    StuckNoDeletableVertexError,
    StuckNoFreeEdgeError,
)
from .geometry import GeometricRealization, is_prefix_tight, sweep_order
from .homology_z2 import betti, inclusion_induced_injective, is_subcomplex
from .morse import (
    FaceSetCollapser,
    MorseMatching,
    Pair,
    lift_matching_over_cone,
    morse_vector,
    validate,
)


# -- collapse sequences ------------------------------------------------------

@dataclass(frozen=True)
class CollapseSequence:
    """Ordered elementary collapses from source down to target."""

    source: SimplicialComplex
    steps: tuple[Pair, ...]
    target: SimplicialComplex

    def __len__(self) -> int:
        return len(self.steps)


def _collapse_greedily(
    tracker: FaceSetCollapser,
    forbidden: frozenset[Face] = frozenset(),
) -> list[Pair]:
    """Deterministic greedy collapse: highest-dimensional free face first,
    lexicographic tiebreak; never touches forbidden faces."""
    steps: list[Pair] = []
    while True:
        candidates = [
            (s, t) for s, t in tracker.free_pairs() if s not in forbidden
        ]
        if not candidates:
            return steps
        s, t = min(candidates, key=lambda p: (-len(p[0]), p))
        tracker.remove_pair(s, t)
        steps.append((s, t))


# -- planar complexes --------------------------------------------------------

def planar_perfect_morse(d: SimplicialComplex) -> MorseMatching:
    """Perfect matching on a planar complex of dimension at most 2.

    While 2-faces remain, collapse an edge that lies in exactly one
    triangle (lexicographically smallest); on the remaining graph, match
    each non-root vertex with its spanning-forest edge.  Critical faces:
    one vertex per component, the non-forest edges, and no triangles.
    Raises StuckNoFreeEdgeError when triangles survive with no free edge,
    the signature of a non-planar input.
    """
    if d.is_empty:
        raise EmptyComplexError("planar routine needs a nonempty complex")
    if d.dimension > 2:
        raise DimensionOutOfRangeError("planar routine limited to dimension <= 2")

    tracker = FaceSetCollapser(d)
    pairs: list[Pair] = []
    while any(len(f) == 3 for f in tracker.faces):
        free_edges = [(s, t) for s, t in tracker.free_pairs() if len(s) == 2]
        if not free_edges:
            raise StuckNoFreeEdgeError(
                f"{sum(len(f) == 3 for f in tracker.faces)} triangles left with no free edge"
            )
        s, t = free_edges[0]
        tracker.remove_pair(s, t)
        pairs.append((s, t))

    # spanning forest on what is left (a graph)
    vertices = sorted(f[0] for f in tracker.faces if len(f) == 1)
    adjacency: dict[int, list[int]] = {v: [] for v in vertices}
    for f in sorted(tracker.faces):
        if len(f) == 2:
            adjacency[f[0]].append(f[1])
            adjacency[f[1]].append(f[0])
    seen: set[int] = set()
    for root in vertices:
        if root in seen:
            continue
        seen.add(root)
        queue = [root]
        while queue:
            u = queue.pop(0)
            for w in sorted(adjacency[u]):
                if w not in seen:
                    seen.add(w)
                    pairs.append(((w,), tuple(sorted((u, w)))))
                    queue.append(w)
    return MorseMatching(d, frozenset(pairs))


@dataclass(frozen=True)
class NonEvasivenessCertificate:
    """Recursive witness: delete ``vertex``, certify its link and deletion.

    A leaf (link_cert and deletion_cert both None) asserts the complex is
    the single point ``vertex``.
    """

    vertex: int
    link_cert: Optional["NonEvasivenessCertificate"] = None
    deletion_cert: Optional["NonEvasivenessCertificate"] = None

    @property
    def is_leaf(self) -> bool:
        return self.link_cert is None and self.deletion_cert is None

    def relabeled(self, mapping: dict[int, int]) -> "NonEvasivenessCertificate":
        return NonEvasivenessCertificate(
            mapping[self.vertex],
            self.link_cert.relabeled(mapping) if self.link_cert else None,
            self.deletion_cert.relabeled(mapping) if self.deletion_cert else None,
        )

    @property
    def size(self) -> int:
        n = 1
        if self.link_cert:
            n += self.link_cert.size
        if self.deletion_cert:
            n += self.deletion_cert.size
        return n


def verify_certificate(c: SimplicialComplex, cert: NonEvasivenessCertificate) -> bool:
    """Replay a certificate; True iff it proves c non-evasive."""
    if cert.is_leaf:
        return c.num_faces == 1 and c.vertices == (cert.vertex,)
    if not c.has_vertex(cert.vertex) or cert.link_cert is None or cert.deletion_cert is None:
        return False
    return verify_certificate(link(c, cert.vertex), cert.link_cert) and verify_certificate(
        deletion(c, cert.vertex), cert.deletion_cert
    )


def _is_nonempty_tree(g: SimplicialComplex) -> bool:
    """Nonempty, dimension <= 1, connected, acyclic."""
    if g.is_empty or g.dimension > 1:
        return False
    b = betti(g)
    return b[0] == 1 and b[1] == 0


def planar_acyclic_nonevasive(d: SimplicialComplex) -> NonEvasivenessCertificate:
    """Non-evasiveness certificate for a connected acyclic planar complex.

    Repeatedly deletes a vertex whose link is a nonempty tree (a path in
    the generic case), recursing on both the link and the deletion.
    Raises NotAcyclicError if reduced homology is nontrivial, and
    StuckNoDeletableVertexError when every vertex link is disconnected or
    cyclic, which signals a non-planar input.
    """
    if d.is_empty:
        raise EmptyComplexError("empty complex")
    if d.dimension > 2:
        raise DimensionOutOfRangeError("planar routine limited to dimension <= 2")
    b = betti(d)
    if b[0] != 1 or any(b[i] for i in range(1, len(b))):
        raise NotAcyclicError(f"Betti vector {tuple(b)} is not (1, 0, ...)")
    return _acyclic_cert(d)


def _acyclic_cert(c: SimplicialComplex) -> NonEvasivenessCertificate:
    if c.num_faces == 1:
        return NonEvasivenessCertificate(c.vertices[0])
    blocking: dict[int, tuple[int, ...]] = {}
    for v in c.vertices:
        lk = link(c, v)
        if _is_nonempty_tree(lk):
            return NonEvasivenessCertificate(
                v, _acyclic_cert(lk), _acyclic_cert(deletion(c, v))
            )
        blocking[v] = lk.f_vector
    raise StuckNoDeletableVertexError(blocking)


def relative_collapse(c: SimplicialComplex, d: SimplicialComplex) -> CollapseSequence:
    """Greedy collapse of c onto the subcomplex d, never touching d.

    Requires dim c <= 2 and the inclusion to be a homology isomorphism
    (equal Betti vectors plus injectivity in every dimension).  Raises
    StuckBeforeTargetError with the residual complex if the greedy run
    terminates early.
    """
    if c.dimension > 2:
        raise DimensionOutOfRangeError("relative collapse limited to dimension <= 2")
    if not is_subcomplex(d, c):
        raise NotASubcomplexError("target is not a subcomplex")
    b_c, b_d = betti(c), betti(d)
    iso = tuple(b_c) == tuple(b_d) + (0,) * (len(b_c) - len(b_d)) and all(
        inclusion_induced_injective(d, c, i) for i in range(c.dimension + 1)
    )
    if not iso:
        raise NotASubcomplexError(
            f"inclusion is not a homology isomorphism: {tuple(b_d)} vs {tuple(b_c)}"
        )
    forbidden = frozenset(d.faces())
    tracker = FaceSetCollapser(c)
    steps = _collapse_greedily(tracker, forbidden)
    if tracker.faces != set(d.faces()):
        raise StuckBeforeTargetError(from_faces(sorted(tracker.faces)))
    return CollapseSequence(c, tuple(steps), d)


# -- the sweep construction ---------------------------------------------------

def _closed_surface(c: SimplicialComplex) -> bool:
    """Pure 2-complex in which every edge lies in exactly two triangles."""
    if c.dimension != 2:
        return False
    count: dict[Face, int] = {e: 0 for e in c.face_set(1)}
    for t in c.face_set(2):
        for k in range(3):
            count[t[:k] + t[k + 1:]] += 1
    return all(n == 2 for n in count.values())


def _perfect_on_link(lower_link: SimplicialComplex) -> MorseMatching:
    """Perfect matching on a sweep lower link.

    Planar construction, with a fallback for the one legitimate non-planar
    case: the full link of the final vertex of a closed surface or
    3-manifold is a closed surface, handled by removing one triangle as an
    extra critical face and running the planar routine on the rest.
    """
    try:
        return planar_perfect_morse(lower_link)
    except StuckNoFreeEdgeError:
        if not _closed_surface(lower_link):
            raise
        top = min(lower_link.face_set(2))
        punctured = from_faces([f for f in lower_link.faces() if f != top])
        inner = planar_perfect_morse(punctured)
        return MorseMatching(lower_link, inner.pairs)


def sweep_perfect_morse(
    g: GeometricRealization,
    direction,
    assume_tight: bool = False,
) -> MorseMatching:
    """Perfect discrete Morse matching from a height sweep of a tight
    realization.

    Processes vertices in ascending height.  A vertex with empty lower
    link stays critical; otherwise the lower link gets a perfect matching
    which is lifted over the cone at the vertex.  The result is validated
    and compared against the Betti vector; a mismatch raises
    PerfectnessAssertionFailedError since the construction guarantees
    perfectness on genuinely tight general-position input.
    """
    order = sweep_order(g, direction)
    if not assume_tight:
        report = is_prefix_tight(g, direction)
        if not report.tight:
            raise NotTightError(
                f"{len(report.failures)} prefix injectivity failures", report
            )
    c = g.complex
    pairs: set[Pair] = set()
    earlier: set[int] = set()
    for v in order.vertices:
        full_link = link(c, v)
        lower = restrict(full_link, [u for u in full_link.vertices if u in earlier])
        if not lower.is_empty:
            try:
                m_link = _perfect_on_link(lower)
            except StuckNoFreeEdgeError as exc:
                raise LinkNotPlanarCollapsibleError(v, exc) from exc
            lifted = lift_matching_over_cone(v, lower, m_link)
            pairs |= lifted.pairs
        earlier.add(v)

    matching = MorseMatching(c, frozenset(pairs))
    validate(matching)
    mv = morse_vector(matching)
    bv = betti(c)
    if tuple(mv) != tuple(bv):
        raise PerfectnessAssertionFailedError(tuple(mv), tuple(bv))
    return matching


# -- canonical forms for memoization ------------------------------------------

def canonical_form(c: SimplicialComplex) -> tuple[frozenset[Face], dict[int, int]]:
    """Relabel vertices by a degree-refined ordering; returns (facets, map).

    The key is a sound over-approximation of isomorphism: equal keys imply
    isomorphic complexes (both equal the relabeled complex), while
    isomorphic complexes may still get different keys and simply miss the
    memo.
    """
    verts = c.vertices
    profile: dict[int, list[int]] = {v: [0] * (c.dimension + 1) for v in verts}
    for dim in range(c.dimension + 1):
        for f in c.face_set(dim):
            for v in f:
                profile[v][dim] += 1
    color: dict[int, object] = {v: tuple(profile[v]) for v in verts}
    adjacency: dict[int, list[int]] = {v: [] for v in verts}
    for a, b in c.face_set(1):
        adjacency[a].append(b)
        adjacency[b].append(a)
    for _ in range(2):
        color = {
            v: (color[v], tuple(sorted(color[u] for u in adjacency[v])))
            for v in verts
        }
    order = sorted(verts, key=lambda v: (repr(color[v]), v))
    relabel = {v: i for i, v in enumerate(order)}
    key = frozenset(tuple(sorted(relabel[u] for u in f)) for f in c.facets)
    return key, relabel


# -- non-evasiveness ----------------------------------------------------------

@dataclass(frozen=True)
class NonEvasiveResult:
    status: str  # "yes" | "no" | "budget"
    certificate: Optional[NonEvasivenessCertificate] = None
    reason: Optional[str] = None


class _BudgetExhausted(Exception):
    pass


class _Budget:
    def __init__(self, limit: int):
        self.remaining = limit

    def tick(self) -> None:
        if self.remaining <= 0:
            raise _BudgetExhausted
        self.remaining -= 1


def _acyclic_betti(c: SimplicialComplex) -> bool:
    b = betti(c)
    return b[0] == 1 and all(b[i] == 0 for i in range(1, len(b)))


def nonevasive(c: SimplicialComplex, budget: int = 10**6) -> NonEvasiveResult:
    """Exact recursive non-evasiveness with memoization and a node budget.

    Fast rejection: a non-evasive complex is collapsible hence mod-2
    acyclic, so a nontrivial Betti vector answers "no" immediately.
    """
    if c.is_empty:
        return NonEvasiveResult("no", reason="empty")
    memo: dict[frozenset[Face], object] = {}
    tracker = _Budget(budget)

    def search(cur: SimplicialComplex) -> NonEvasivenessCertificate | None:
        if cur.num_faces == 1:
            return NonEvasivenessCertificate(cur.vertices[0])
        tracker.tick()
        if not _acyclic_betti(cur):
            return None
        key, relabel = canonical_form(cur)
        if key in memo:
            hit = memo[key]
            if hit is None:
                return None
            back = {i: v for v, i in relabel.items()}
            return hit.relabeled(back)  # type: ignore[union-attr]
        result: NonEvasivenessCertificate | None = None
        star_size = {v: 0 for v in cur.vertices}
        for f in cur.faces():
            for v in f:
                star_size[v] += 1
        for v in sorted(cur.vertices, key=lambda u: (star_size[u], u)):
            lk = link(cur, v)
            if lk.is_empty:
                continue
            link_cert = search(lk)
            if link_cert is None:
                continue
            del_cert = search(deletion(cur, v))
            if del_cert is None:
                continue
            result = NonEvasivenessCertificate(v, link_cert, del_cert)
            break
        memo[key] = result.relabeled(relabel) if result else None
        return result

    if not _acyclic_betti(c):
        return NonEvasiveResult("no", reason="betti")
    try:
        cert = search(c)
    except _BudgetExhausted:
        return NonEvasiveResult("budget")
    if cert is None:
        return NonEvasiveResult("no", reason="exhausted")
    return NonEvasiveResult("yes", certificate=cert)


# -- collapsibility -----------------------------------------------------------

@dataclass(frozen=True)
class CollapsibleResult:
    status: str  # "yes" | "no" | "budget"
    sequence: Optional[CollapseSequence] = None
    reason: Optional[str] = None


def _single_vertex_target(c: SimplicialComplex, face_set: set[Face]) -> SimplicialComplex:
    return from_faces(sorted(face_set))


def collapsible(
    c: SimplicialComplex,
    strategy: str = "greedy",
    budget: int = 10**6,
    seed: int = 0,
    restarts: int = 50,
) -> CollapsibleResult:
    """Search for a full collapse to a single vertex.

    greedy: seeded random free-pair choices with restarts; never proves a
    negative beyond the exact prechecks (wrong Betti vector, or no free
    face at all).  backtracking: exhaustive over free-pair choices with
    memoized dead states; exact within the node budget.
    """
    if c.is_empty:
        return CollapsibleResult("no", reason="empty")
    if c.num_faces == 1:
        return CollapsibleResult("yes", CollapseSequence(c, (), c))
    if not _acyclic_betti(c):
        return CollapsibleResult("no", reason="betti")

    probe = FaceSetCollapser(c)
    if not probe.free_pairs():
        return CollapsibleResult("no", reason="no free face")

    if strategy == "greedy":
        for attempt in range(restarts):
            rng = random.Random(seed * 1_000_003 + attempt)
            tracker = FaceSetCollapser(c)
            steps: list[Pair] = []
            while True:
                free = tracker.free_pairs()
                if not free:
                    break
                s, t = free[rng.randrange(len(free))]
                tracker.remove_pair(s, t)
                steps.append((s, t))
            if len(tracker.faces) == 1:
                target = _single_vertex_target(c, tracker.faces)
                return CollapsibleResult("yes", CollapseSequence(c, tuple(steps), target))
        return CollapsibleResult("budget", reason=f"{restarts} greedy restarts failed")

    if strategy != "backtracking":
        raise ValueError(f"unknown strategy {strategy!r}")

    tracker = _Budget(budget)
    dead: set[frozenset[Face]] = set()

    def search(faces: frozenset[Face]) -> list[Pair] | None:
        if len(faces) == 1:
            return []
        tracker.tick()
        cur = from_faces(sorted(faces))
        key, _ = canonical_form(cur)
        if key in dead:
            return None
        free = _free_pairs_of(faces)
        for s, t in free:
            rest = search(faces - {s, t})
            if rest is not None:
                return [(s, t)] + rest
        dead.add(key)
        return None

    try:
        steps = search(frozenset(c.faces()))
    except _BudgetExhausted:
        return CollapsibleResult("budget")
    if steps is None:
        return CollapsibleResult("no", reason="exhausted")
    remaining = set(c.faces())
    for s, t in steps:
        remaining -= {s, t}
    return CollapsibleResult("yes", CollapseSequence(c, tuple(steps), _single_vertex_target(c, remaining)))


def _free_pairs_of(faces: frozenset[Face]) -> list[Pair]:
    """Free pairs of a raw face set (small inputs only)."""
    from .complex_core import subfaces

    counts: dict[Face, int] = {f: 0 for f in faces}
    last: dict[Face, Face] = {}
    for f in faces:
        for sub in subfaces(f):
            if sub in counts:
                counts[sub] += 1
                last[sub] = f
    out = []
    for f, n in counts.items():
        if n == 1:
            t = last[f]
            if len(t) == len(f) + 1:
                out.append((f, t))
    return sorted(out)
