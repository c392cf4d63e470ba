import pytest
from hypothesis import given, settings, strategies as st

from tightmorse import betti, from_facets
from tightmorse.complex_core import from_faces
from tightmorse.errors import (
    DanglingFaceError,
    EmptyLinkError,
    MatchingCycleError,
    NotAMatchingError,
    NotCofaceError,
    NotFreeAtStepError,
)
from tightmorse.morse import (
    MorseMatching,
    critical_faces,
    from_collapse_sequence,
    is_perfect,
    is_valid,
    lift_matching_over_cone,
    morse_vector,
    random_discrete_morse,
    to_integer_function,
    validate,
)

from conftest import fan_disc


def matching(c, pairs):
    return MorseMatching.build(c, pairs)


def has_v_cycle_brute_force(m: MorseMatching) -> bool:
    """Oracle: enumerate all alternating V-paths on a small complex."""
    partner = {s: t for s, t in m.pairs}

    def successors(s):
        t = partner[s]
        for k in range(len(t)):
            s2 = t[:k] + t[k + 1:]
            if s2 != s and s2 in partner:
                yield s2

    for start in partner:
        stack = [(start, {start})]
        while stack:
            node, seen = stack.pop()
            for nxt in successors(node):
                if nxt == start:
                    return True
                if nxt not in seen:
                    stack.append((nxt, seen | {nxt}))
    return False


def test_empty_matching_valid(checkerboard):
    m = matching(checkerboard, [])
    validate(m)
    assert tuple(morse_vector(m)) == (6, 12, 4)


def test_single_pair_on_edge():
    c = from_facets([(1, 2)])
    m = matching(c, [(((1,)), (1, 2))])
    validate(m)
    assert critical_faces(m) == [(2,)]


def test_cyclic_matching_on_circle_rejected(boundary_delta2):
    m = matching(boundary_delta2, [((1,), (1, 2)), ((2,), (2, 3)), ((3,), (1, 3))])
    assert has_v_cycle_brute_force(m)  # oracle agrees this is cyclic
    with pytest.raises(MatchingCycleError) as exc:
        validate(m)
    witness = exc.value.witness
    assert witness[0] == witness[-1]
    assert len(witness) >= 5  # three up/down pairs and back


def test_acyclic_matching_on_circle_accepted(boundary_delta2):
    m = matching(boundary_delta2, [((1,), (1, 2)), ((3,), (2, 3))])
    validate(m)
    assert not has_v_cycle_brute_force(m)
    assert tuple(morse_vector(m)) == (1, 1)


def test_validator_agrees_with_brute_force_on_random_matchings(checkerboard):
    import random

    rng = random.Random(0)
    faces = checkerboard.faces()
    for _ in range(60):
        pairs = []
        used = set()
        for s in faces:
            if s in used or len(s) == 3 or rng.random() < 0.5:
                continue
            cofs = [t for t in faces if len(t) == len(s) + 1 and set(s) < set(t) and t not in used]
            if cofs:
                t = rng.choice(cofs)
                pairs.append((s, t))
                used |= {s, t}
        m = MorseMatching(checkerboard, frozenset(pairs))
        assert is_valid(m) == (not has_v_cycle_brute_force(m))


def test_structural_errors(triangle):
    with pytest.raises(DanglingFaceError):
        validate(matching(triangle, [((1, 4), (1, 2, 4))]))
    with pytest.raises(NotCofaceError):
        validate(matching(triangle, [((1,), (1, 2, 3))]))
    with pytest.raises(NotCofaceError):
        validate(matching(triangle, [((1,), (2, 3))]))
    with pytest.raises(NotAMatchingError):
        validate(matching(triangle, [((1,), (1, 2)), ((1,), (1, 3))]))


def test_is_perfect_on_collapse(simplex3):
    m = random_discrete_morse(simplex3, seed=0)
    assert tuple(morse_vector(m)) == (1, 0, 0, 0)
    assert is_perfect(m)


def test_empty_matching_on_sphere_not_perfect(boundary_delta3):
    m = matching(boundary_delta3, [])
    assert not is_perfect(m)
    assert tuple(morse_vector(m)) == (4, 6, 4)


def test_perfect_matching_on_sphere_constructed(boundary_delta3):
    # greedy construction: collapse after removing one facet, then add it back
    m = random_discrete_morse(boundary_delta3, seed=1)
    validate(m)
    assert tuple(morse_vector(m)) == (1, 0, 1)
    assert is_perfect(m)


def test_from_collapse_sequence_full_triangle(triangle):
    seq = [((2, 3), (1, 2, 3)), ((2,), (1, 2)), ((3,), (1, 3))]
    m = from_collapse_sequence(triangle, seq)
    validate(m)
    assert tuple(morse_vector(m)) == (1, 0, 0)


def test_from_collapse_sequence_empty(triangle):
    m = from_collapse_sequence(triangle, [])
    assert tuple(morse_vector(m)) == (3, 3, 1)


def test_from_collapse_sequence_rejects_non_free(triangle):
    with pytest.raises(NotFreeAtStepError) as exc:
        from_collapse_sequence(triangle, [((1,), (1, 2))])
    assert exc.value.step == 0


def test_collapse_of_simplex3(simplex3):
    m = random_discrete_morse(simplex3, seed=3)
    assert tuple(morse_vector(m)) == (1, 0, 0, 0)


# -- the cone lift ---------------------------------------------------------------

def test_lift_over_point_link():
    lk = from_facets([(5,)])
    m = matching(lk, [])
    lifted = lift_matching_over_cone(9, lk, m)
    validate(lifted)
    assert lifted.pairs == frozenset({((9,), (5, 9))})
    assert critical_faces(lifted) == [(5,)]


def test_lift_over_edge_link_quoted_rule():
    lk = from_facets([(1, 2)])
    m = matching(lk, [((1,), (1, 2))])  # critical vertex: 2
    lifted = lift_matching_over_cone(9, lk, m)
    validate(lifted)
    assert lifted.pairs == frozenset({((1, 9), (1, 2, 9)), ((9,), (2, 9))})


def test_lift_over_two_point_link_count_law():
    lk = from_facets([(1,), (2,)])
    m = matching(lk, [])
    lifted = lift_matching_over_cone(9, lk, m)
    validate(lifted)
    # c_{i+1} among apex faces = c_i(link) - delta_{i0}: one critical edge
    assert lifted.pairs == frozenset({((9,), (1, 9))})
    crit = critical_faces(lifted)
    assert (2, 9) in crit and len([f for f in crit if 9 in f]) == 1


def test_lift_count_law_on_link_complexes(checkerboard, annulus):
    for lk in (checkerboard, annulus, fan_disc(4)):
        from tightmorse.algorithms import planar_perfect_morse

        m = planar_perfect_morse(lk)
        apex = max(lk.vertices) + 1
        lifted = lift_matching_over_cone(apex, lk, m)
        validate(lifted)
        link_vector = morse_vector(m)
        lifted_crit = [f for f in critical_faces(lifted) if apex in f]
        counts = [0] * (lk.dimension + 2)
        for f in lifted_crit:
            counts[len(f) - 1] += 1
        expected = [0] + [link_vector[i] - (1 if i == 0 else 0) for i in range(lk.dimension + 1)]
        assert counts == expected


def test_lift_empty_link_rejected():
    with pytest.raises(EmptyLinkError):
        lift_matching_over_cone(9, from_faces([]), MorseMatching(from_faces([]), frozenset()))


# -- random discrete morse ----------------------------------------------------------

def test_rdm_on_e_all_seeds(checkerboard):
    for seed in range(40):
        m = random_discrete_morse(checkerboard, seed=seed)
        validate(m)
        assert tuple(morse_vector(m)) == (1, 3, 0)


def test_rdm_deterministic(checkerboard):
    a = random_discrete_morse(checkerboard, seed=7)
    b = random_discrete_morse(checkerboard, seed=7)
    assert a.pairs == b.pairs


def test_rdm_point():
    m = random_discrete_morse(from_facets([(3,)]), seed=0)
    assert tuple(morse_vector(m)) == (1,)


@settings(max_examples=30, deadline=None)
@given(
    st.lists(st.lists(st.integers(0, 6), min_size=1, max_size=4, unique=True),
             min_size=1, max_size=5),
    st.integers(0, 10),
)
def test_rdm_morse_inequalities(facets, seed):
    c = from_facets(facets)
    m = random_discrete_morse(c, seed=seed)
    validate(m)
    mv = morse_vector(m)
    b = betti(c)
    assert all(mv[i] >= b[i] for i in range(c.dimension + 1))
    assert mv.alternating_sum == c.euler_characteristic


def test_betti_invariant_under_elementary_collapse(checkerboard, annulus):
    from tightmorse.complex_core import free_faces

    for c in (checkerboard, annulus):
        before = tuple(betti(c))
        s, t = free_faces(c)[0]
        after = from_faces([f for f in c.faces() if f not in (s, t)])
        assert tuple(betti(after)) == before


# -- exported integer function --------------------------------------------------------

def test_integer_function_encodes_matching(boundary_delta3):
    m = random_discrete_morse(boundary_delta3, seed=2)
    f = to_integer_function(m)
    paired = {s: t for s, t in m.pairs}
    for face in boundary_delta3.faces():
        for k in range(len(face)):
            sub = face[:k] + face[k + 1:]
            if not sub:
                continue
            if paired.get(sub) == face:
                assert f[sub] == f[face]
            else:
                assert f[sub] < f[face]
    # at most 2-to-1
    from collections import Counter

    counts = Counter(f.values())
    assert all(n <= 2 for n in counts.values())
