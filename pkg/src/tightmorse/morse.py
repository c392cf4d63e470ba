"""Discrete Morse functions as acyclic matchings on the Hasse diagram.

A matching pairs faces with cofaces of one dimension higher; unmatched
faces are critical.  Acyclicity is checked layer by layer with Kahn-style
topological sorting, returning an explicit alternating V-cycle on failure.
An integer-valued function can be emitted for export, but the matching is
the canonical representation throughout the package.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .complex_core import Face, SimplicialComplex, canonical_face, cone
from .errors import (
    DanglingFaceError,
    EmptyLinkError,
    MatchingCycleError,
    MorseInvariantError,
    NotAMatchingError,
    NotCofaceError,
    NotFreeAtStepError,
)
from .homology_z2 import betti

Pair = tuple[Face, Face]


@dataclass(frozen=True)
class MorseVector:
    """Critical face counts per dimension."""

    counts: tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        return self.counts[i] if 0 <= i < len(self.counts) else 0

    def __iter__(self):
        return iter(self.counts)

    def __len__(self) -> int:
        return len(self.counts)

    @property
    def alternating_sum(self) -> int:
        return sum((-1) ** i * c for i, c in enumerate(self.counts))

    @property
    def total(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True)
class MorseMatching:
    """Partial matching on the face poset of a fixed complex."""

    complex: SimplicialComplex
    pairs: frozenset[Pair]

    @staticmethod
    def build(c: SimplicialComplex, pairs: Iterable[Sequence[Sequence[int]]]) -> "MorseMatching":
        canon = frozenset(
            (canonical_face(p[0]), canonical_face(p[1])) for p in pairs
        )
        return MorseMatching(c, canon)

    @property
    def matched_faces(self) -> set[Face]:
        out: set[Face] = set()
        for s, t in self.pairs:
            out.add(s)
            out.add(t)
        return out

    def __repr__(self) -> str:
        return f"MorseMatching({len(self.pairs)} pairs on {self.complex!r})"


def validate(m: MorseMatching) -> None:
    """Check matching structure and acyclicity.

    Raises DanglingFaceError, NotCofaceError, NotAMatchingError, or
    MatchingCycleError (with a witness V-cycle); returns None when valid.
    """
    c = m.complex
    seen: set[Face] = set()
    partner: dict[Face, Face] = {}
    for s, t in m.pairs:
        for f in (s, t):
            if f not in c:
                raise DanglingFaceError(f"face {f} not in complex")
        if len(t) != len(s) + 1 or not set(s) < set(t):
            raise NotCofaceError(f"{t} is not a coface of {s} one dimension up")
        for f in (s, t):
            if f in seen:
                raise NotAMatchingError(f"face {f} matched twice")
            seen.add(f)
        partner[s] = t

    # V-cycles live inside a single (i, i+1) layer, so check layers separately.
    by_dim: dict[int, dict[Face, Face]] = {}
    for s, t in m.pairs:
        by_dim.setdefault(len(s) - 1, {})[s] = t
    for dim, layer in sorted(by_dim.items()):
        _check_layer_acyclic(layer)


def _check_layer_acyclic(layer: dict[Face, Face]) -> None:
    """Kahn sort of the V-path digraph on one layer; witness on failure."""
    succ: dict[Face, list[Face]] = {}
    indeg: dict[Face, int] = {s: 0 for s in layer}
    for s, t in layer.items():
        nexts = []
        for k in range(len(t)):
            s2 = t[:k] + t[k + 1:]
            if s2 != s and s2 in layer:
                nexts.append(s2)
        succ[s] = nexts
        for s2 in nexts:
            indeg[s2] += 1
    queue = [s for s, d in indeg.items() if d == 0]
    remaining = set(layer)
    while queue:
        s = queue.pop()
        remaining.discard(s)
        for s2 in succ[s]:
            indeg[s2] -= 1
            if indeg[s2] == 0:
                queue.append(s2)
    if not remaining:
        return
    # every remaining node has an in-edge from remaining; walk until repeat
    start = min(remaining)
    walk = [start]
    positions = {start: 0}
    cur = start
    while True:
        cur = min(s2 for s2 in succ[cur] if s2 in remaining)
        if cur in positions:
            cycle = walk[positions[cur]:]
            witness: list[Face] = []
            for s in cycle:
                witness.extend((s, layer[s]))
            witness.append(cycle[0])
            raise MatchingCycleError(witness)
        positions[cur] = len(walk)
        walk.append(cur)


def is_valid(m: MorseMatching) -> bool:
    try:
        validate(m)
        return True
    except (DanglingFaceError, NotCofaceError, NotAMatchingError, MatchingCycleError):
        return False


def critical_faces(m: MorseMatching) -> list[Face]:
    matched = m.matched_faces
    return [f for f in m.complex.faces() if f not in matched]


def morse_vector(m: MorseMatching) -> MorseVector:
    counts = [0] * (m.complex.dimension + 1)
    for f in critical_faces(m):
        counts[len(f) - 1] += 1
    return MorseVector(tuple(counts))


def is_perfect(m: MorseMatching) -> bool:
    """Does the critical count equal the (non-reduced) Z2 Betti vector?"""
    validate(m)
    return tuple(morse_vector(m)) == tuple(betti(m.complex))


# -- collapse bookkeeping ---------------------------------------------------

class FaceSetCollapser:
    """Mutable face set supporting elementary collapses and facet removals.

    Tracks immediate cofaces so freeness tests stay local: a face is free
    iff it has exactly one immediate coface and that coface is a facet.
    """

    def __init__(self, c: SimplicialComplex):
        self.faces: set[Face] = set(c.faces())
        self.icof: dict[Face, set[Face]] = {f: set() for f in self.faces}
        for f in self.faces:
            if len(f) > 1:
                for k in range(len(f)):
                    self.icof[f[:k] + f[k + 1:]].add(f)
        self._free: set[Face] = {f for f in self.faces if self._is_free(f)}

    def _is_free(self, f: Face) -> bool:
        if f not in self.faces:
            return False
        cof = self.icof[f]
        if len(cof) != 1:
            return False
        (t,) = cof
        return not self.icof[t]

    def unique_coface(self, f: Face) -> Face:
        (t,) = self.icof[f]
        return t

    def free_pairs(self) -> list[tuple[Face, Face]]:
        return sorted((f, self.unique_coface(f)) for f in self._free)

    def facets_of_max_dim(self) -> list[Face]:
        top = max(len(f) for f in self.faces)
        return sorted(f for f in self.faces if len(f) == top)

    def _recheck(self, dirty: Iterable[Face]) -> None:
        for f in dirty:
            if self._is_free(f):
                self._free.add(f)
            else:
                self._free.discard(f)

    def _detach(self, f: Face) -> set[Face]:
        """Remove f; returns faces whose freeness may have changed."""
        self.faces.discard(f)
        self._free.discard(f)
        dirty: set[Face] = set()
        if len(f) > 1:
            for k in range(len(f)):
                sub = f[:k] + f[k + 1:]
                self.icof[sub].discard(f)
                dirty.add(sub)
                if len(sub) > 1:
                    for j in range(len(sub)):
                        dirty.add(sub[:j] + sub[j + 1:])
        return dirty

    def remove_pair(self, s: Face, t: Face) -> None:
        dirty = self._detach(t)
        dirty |= self._detach(s)
        self._recheck(d for d in dirty if d in self.faces)

    def remove_facet(self, f: Face) -> None:
        if self.icof[f]:
            raise MorseInvariantError(f"{f} is not maximal")
        dirty = self._detach(f)
        self._recheck(d for d in dirty if d in self.faces)

    def __len__(self) -> int:
        return len(self.faces)


def from_collapse_sequence(c: SimplicialComplex, seq) -> MorseMatching:
    """Matching whose pairs are the collapse pairs of a replayed sequence.

    ``seq`` is an iterable of (free face, coface) pairs, or an object with a
    ``steps`` attribute holding one.  Raises NotFreeAtStepError if a pair is
    not free when its turn comes.
    """
    steps = getattr(seq, "steps", seq)
    tracker = FaceSetCollapser(c)
    pairs: list[Pair] = []
    for k, (s, t) in enumerate(steps):
        s, t = canonical_face(s), canonical_face(t)
        if s not in tracker.faces or not tracker._is_free(s) or tracker.unique_coface(s) != t:
            raise NotFreeAtStepError(k, (s, t))
        tracker.remove_pair(s, t)
        pairs.append((s, t))
    return MorseMatching(c, frozenset(pairs))


def lift_matching_over_cone(v: int, link_complex: SimplicialComplex, m_link: MorseMatching) -> MorseMatching:
    """Lift a matching on a link to the closed star (the cone over it).

    Each pair (s, t) lifts to (v*s, v*t); the apex v is matched with v*w
    for the smallest-label critical vertex w.  Critical faces of the lift
    are v*u for the remaining critical faces u.  Raises EmptyLinkError if
    the link is empty (the caller marks v critical instead).
    """
    if link_complex.is_empty:
        raise EmptyLinkError(f"link of {v} is empty")
    validate(m_link)
    matched = m_link.matched_faces
    critical_vertices = [u for (u,) in link_complex.face_set(0) if (u,) not in matched]
    if not critical_vertices:
        raise MorseInvariantError("valid matching on a nonempty complex has a critical vertex")
    w = min(critical_vertices)
    star_complex = cone(link_complex, v)
    pairs: set[Pair] = {
        (tuple(sorted(s + (v,))), tuple(sorted(t + (v,)))) for s, t in m_link.pairs
    }
    pairs.add(((v,), tuple(sorted((v, w)))))
    return MorseMatching(star_complex, frozenset(pairs))


def random_discrete_morse(c: SimplicialComplex, seed: int = 0) -> MorseMatching:
    """Random free-face collapse; removes a random top face when stuck.

    Deterministic for a fixed seed.  The unmatched faces are exactly the
    top faces removed while stuck (the last vertex included).
    """
    rng = random.Random(seed)
    tracker = FaceSetCollapser(c)
    pairs: list[Pair] = []
    while tracker.faces:
        free = tracker.free_pairs()
        if free:
            s, t = free[rng.randrange(len(free))]
            tracker.remove_pair(s, t)
            pairs.append((s, t))
        else:
            tops = tracker.facets_of_max_dim()
            tracker.remove_facet(tops[rng.randrange(len(tops))])
    return MorseMatching(c, frozenset(pairs))


def to_integer_function(m: MorseMatching) -> dict[Face, int]:
    """Explicit weakly-increasing integer function inducing the matching.

    Matched pairs share a value, unmatched cover relations increase
    strictly; built by topologically sorting the pair-contracted Hasse
    diagram.
    """
    validate(m)
    c = m.complex
    node_of: dict[Face, Face] = {}
    for s, t in m.pairs:
        node_of[s] = s
        node_of[t] = s
    for f in c.faces():
        node_of.setdefault(f, f)

    matched_pairs = set(m.pairs)
    succ: dict[Face, set[Face]] = {n: set() for n in node_of.values()}
    indeg: dict[Face, int] = {n: 0 for n in node_of.values()}
    for t in c.faces():
        if len(t) < 2:
            continue
        for k in range(len(t)):
            s = t[:k] + t[k + 1:]
            if (s, t) in matched_pairs:
                continue
            a, b = node_of[s], node_of[t]
            if a != b and b not in succ[a]:
                succ[a].add(b)
                indeg[b] += 1

    order: list[Face] = []
    queue = sorted(n for n, d in indeg.items() if d == 0)
    while queue:
        n = queue.pop(0)
        order.append(n)
        ready = []
        for b in succ[n]:
            indeg[b] -= 1
            if indeg[b] == 0:
                ready.append(b)
        queue.extend(sorted(ready))
        queue.sort()
    if len(order) != len(succ):
        raise MorseInvariantError("contracted Hasse diagram is not acyclic")
    value = {n: i for i, n in enumerate(order)}
    return {f: value[node_of[f]] for f in c.faces()}
