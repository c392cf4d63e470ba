"""Exact mod-2 homology: bit-packed boundary matrices, Betti numbers,
and injectivity of inclusion-induced maps.

Rows of a matrix are Python integers used as bit vectors (bit j = column j),
so elimination is a loop of XORs on arbitrary-precision ints.  Face-to-index
maps are lexicographic, making every matrix reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complex_core import Face, SimplicialComplex
from .errors import DimensionOutOfRangeError, EmptyComplexError, NotASubcomplexError

# -- GF(2) kernels ---------------------------------------------------------

def gf2_rank(rows: list[int]) -> int:
    """Rank of the span of the given bit-vectors."""
    pivots: dict[int, int] = {}
    rank = 0
    for row in rows:
        while row:
            lead = row.bit_length() - 1
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = row
                rank += 1
                break
            row ^= piv
    return rank


class Gf2Space:
    """Incrementally built row space with rank queries."""

    def __init__(self, rows: list[int] | None = None):
        self.pivots: dict[int, int] = {}
        for row in rows or ():
            self.add(row)

    def add(self, row: int) -> bool:
        """Insert a vector; returns True if it enlarged the span."""
        while row:
            lead = row.bit_length() - 1
            piv = self.pivots.get(lead)
            if piv is None:
                self.pivots[lead] = row
                return True
            row ^= piv
        return False

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def clone(self) -> "Gf2Space":
        copy = Gf2Space()
        copy.pivots = dict(self.pivots)
        return copy

    def contains(self, row: int) -> bool:
        while row:
            piv = self.pivots.get(row.bit_length() - 1)
            if piv is None:
                return False
            row ^= piv
        return True


def gf2_kernel_basis(rows: list[int], ncols: int) -> list[int]:
    """Basis of the kernel {x : Mx = 0}, vectors as bit masks over columns."""
    reduced: list[tuple[int, int]] = []  # (pivot column, row)
    taken: dict[int, int] = {}
    for row in rows:
        while row:
            lead = row.bit_length() - 1
            if lead in taken:
                row ^= taken[lead]
            else:
                taken[lead] = row
                reduced.append((lead, row))
                break
    # back-substitute to reduced echelon form
    reduced.sort(reverse=True)
    for i, (lead, row) in enumerate(reduced):
        for j in range(i):
            lead_j, row_j = reduced[j]
            if (row_j >> lead) & 1:
                reduced[j] = (lead_j, row_j ^ row)
    pivot_cols = {lead for lead, _ in reduced}
    basis = []
    for col in range(ncols):
        if col in pivot_cols:
            continue
        vec = 1 << col
        for lead, row in reduced:
            if (row >> col) & 1:
                vec |= 1 << lead
        basis.append(vec)
    return basis


# -- boundary matrices -----------------------------------------------------

@dataclass(frozen=True)
class BitMatrix:
    """Mod-2 matrix with bit-packed rows.

    For a boundary matrix, rows are indexed by (i-1)-faces and columns by
    i-faces, both in lexicographic order.
    """

    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def rank(self) -> int:
        return gf2_rank(list(self.rows))

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def column(self, j: int) -> int:
        """Column j as a bit mask over rows."""
        mask = 0
        for i, row in enumerate(self.rows):
            mask |= ((row >> j) & 1) << i
        return mask


def boundary_matrix(c: SimplicialComplex, i: int) -> BitMatrix:
    """Incidence matrix of the boundary map from i-chains to (i-1)-chains."""
    if c.is_empty:
        raise EmptyComplexError("boundary matrix of the empty complex")
    if i < 1 or i > c.dimension:
        raise DimensionOutOfRangeError(f"dimension {i} outside 1..{c.dimension}")
    low = c.faces(i - 1)
    high = c.faces(i)
    index = {f: r for r, f in enumerate(low)}
    rows = [0] * len(low)
    for j, face in enumerate(high):
        for k in range(len(face)):
            sub = face[:k] + face[k + 1:]
            rows[index[sub]] |= 1 << j
    return BitMatrix(len(low), len(high), tuple(rows))


def boundary_chain_masks(c: SimplicialComplex, i: int) -> list[int]:
    """Boundaries of all i-faces as bit masks over the (i-1)-faces of c."""
    if i < 1 or i > c.dimension:
        return []
    low_index = {f: r for r, f in enumerate(c.faces(i - 1))}
    masks = []
    for face in c.faces(i):
        m = 0
        for k in range(len(face)):
            m |= 1 << low_index[face[:k] + face[k + 1:]]
        masks.append(m)
    return masks


# -- Betti numbers ---------------------------------------------------------

@dataclass(frozen=True)
class BettiVector:
    """Per-dimension mod-2 Betti numbers with an explicit convention flag."""

    values: tuple[int, ...]
    reduced: bool = False

    def __getitem__(self, i: int) -> int:
        return self.values[i] if 0 <= i < len(self.values) else 0

    def __iter__(self):
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def euler_characteristic(self) -> int:
        if self.reduced:
            raise ValueError("Euler characteristic uses the non-reduced convention")
        return sum((-1) ** i * b for i, b in enumerate(self.values))


def _boundary_ranks(c: SimplicialComplex) -> list[int]:
    """rank of the boundary map in each dimension 0..dim+1 (ends are 0)."""
    ranks = [0] * (c.dimension + 2)
    for i in range(1, c.dimension + 1):
        ranks[i] = boundary_matrix(c, i).rank()
    return ranks


def betti(c: SimplicialComplex, reduced: bool = False) -> BettiVector:
    """Betti numbers over Z2; non-reduced by default."""
    if c.is_empty:
        raise EmptyComplexError("Betti numbers of the empty complex")
    ranks = _boundary_ranks(c)
    values = [
        len(c.face_set(i)) - ranks[i] - ranks[i + 1]
        for i in range(c.dimension + 1)
    ]
    if reduced:
        values[0] -= 1
    return BettiVector(tuple(values), reduced=reduced)


def is_subcomplex(a: SimplicialComplex, x: SimplicialComplex) -> bool:
    if a.dimension > x.dimension:
        return False
    return all(a.face_set(d) <= x.face_set(d) for d in range(a.dimension + 1))


def cycle_masks_in(a: SimplicialComplex, x_faces: tuple[Face, ...], i: int) -> list[int]:
    """Basis of the i-cycles of a, written over the i-face basis of x."""
    a_faces = a.faces(i)
    if not a_faces:
        return []
    if i == 0:
        local = [1 << j for j in range(len(a_faces))]
    else:
        rows = boundary_matrix(a, i).rows if i <= a.dimension else ()
        local = gf2_kernel_basis(list(rows), len(a_faces))
    x_index = {f: j for j, f in enumerate(x_faces)}
    out = []
    for vec in local:
        m = 0
        for j, face in enumerate(a_faces):
            if (vec >> j) & 1:
                m |= 1 << x_index[face]
        out.append(m)
    return out


def inclusion_induced_injective(a: SimplicialComplex, x: SimplicialComplex, i: int) -> bool:
    """Is H_i(a) -> H_i(x) injective over Z2?

    Rank of the induced map is dim(Z_i(a) + B_i(x)) - dim B_i(x); the map is
    injective iff this equals the i-th Betti number of a.  An empty a is
    accepted (trivially injective).
    """
    if not is_subcomplex(a, x):
        raise NotASubcomplexError("first argument is not a subcomplex of the second")
    if a.is_empty or i > a.dimension:
        return True
    beta_a = _betti_single(a, i)
    if beta_a == 0:
        return True
    x_faces = x.faces(i)
    boundary_space = Gf2Space(boundary_chain_masks(x, i + 1))
    rank_b = boundary_space.rank
    for z in cycle_masks_in(a, x_faces, i):
        boundary_space.add(z)
    image_rank = boundary_space.rank - rank_b
    return image_rank == beta_a


def _betti_single(c: SimplicialComplex, i: int) -> int:
    if i < 0 or i > c.dimension:
        return 0
    r_i = boundary_matrix(c, i).rank() if i >= 1 else 0
    r_up = boundary_matrix(c, i + 1).rank() if i + 1 <= c.dimension else 0
    return len(c.face_set(i)) - r_i - r_up
