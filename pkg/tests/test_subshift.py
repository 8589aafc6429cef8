import pytest

from morandim.subshift import EmptySubshiftError, Subshift, full_shift, minimal_forbidden
from morandim.words import Word


def brute_words(kappa, forbidden, n, slack):
    """Independent oracle: length-n words avoiding the forbidden factors that
    extend to length n + slack while still avoiding them.  With slack at least
    the number of automaton states, extendability is equivalent to membership
    in the prefix language of the subshift."""

    def avoids(word):
        return not any(
            word[i : i + len(f)] == f for f in forbidden for i in range(len(word) - len(f) + 1)
        )

    def extendable(word, k):
        if k == 0:
            return True
        return any(avoids(word + (s,)) and extendable(word + (s,), k - 1) for s in range(1, kappa + 1))

    out = set()
    stack = [()]
    while stack:
        word = stack.pop()
        if len(word) == n:
            if extendable(word, slack):
                out.add(word)
            continue
        for s in range(1, kappa + 1):
            cand = word + (s,)
            if avoids(cand):
                stack.append(cand)
    return out


def test_full_shift_counts():
    fs = full_shift(2)
    assert [fs.count_words(n) for n in range(4)] == [1, 2, 4, 8]
    assert len(set(fs.words(3))) == 8


def test_golden_mean_counts(golden):
    assert [golden.count_words(n) for n in (1, 2, 3, 4)] == [2, 3, 5, 8]
    assert golden.allowed_words(2) == {Word((1, 1), 2), Word((1, 2), 2), Word((2, 1), 2)}


def test_ladder_language(ladder):
    assert sorted(ladder.words(3)) == [(1, 1, 1), (1, 1, 2), (1, 2, 2), (2, 2, 2)]
    assert ladder.count_words(9) == 10


def test_empty_subshift():
    with pytest.raises(EmptySubshiftError):
        Subshift.build(2, [(1,), (2,)])
    with pytest.raises(EmptySubshiftError):
        Subshift.build(2, [()])


def test_dead_branch_pruned():
    # word 12 forbidden and 22 forbidden: after a 2 only 21... is possible,
    # 21 is fine, but 2 then needs 1 then anything; language stays infinite
    s = Subshift.build(2, [(1, 2), (2, 2)])
    # allowed infinite words: only 1^inf and words like 2 1^inf, (21)^inf...
    assert s.contains((2, 1, 1))
    assert not s.contains((1, 2))
    assert s.count_words(3) == len(brute_words(2, [(1, 2), (2, 2)], 3, s.n_states + 1))


@pytest.mark.parametrize(
    "kappa,forbidden",
    [
        (2, [(2, 2)]),
        (2, [(2, 1)]),
        (3, [(1, 3), (2, 2, 1)]),
        (3, [(1, 1), (2, 3)]),
        (2, [(1, 1, 1), (2, 2)]),
    ],
)
def test_against_brute_oracle(kappa, forbidden):
    s = Subshift.build(kappa, forbidden)
    for n in range(1, 6):
        assert set(s.words(n)) == brute_words(kappa, forbidden, n, s.n_states + 1)


def test_factoriality_and_shift_invariance(golden):
    for n in range(2, 6):
        for word in golden.words(n):
            assert golden.contains(word[1:])  # shift invariance
            assert golden.contains(word[:-1])  # prefix closure
            for i in range(len(word)):
                for j in range(i + 1, len(word) + 1):
                    assert golden.contains(word[i:j])


def test_level_consistency(golden):
    for n in range(1, 6):
        upper = set(golden.words(n + 1))
        lower = set(golden.words(n))
        assert {w[:-1] for w in upper} == lower
        for w in lower:
            assert any(u[:-1] == w for u in upper)


def test_minimal_forbidden_reduction():
    assert minimal_forbidden({(1, 2), (1, 1, 2), (2, 1)}) == ((1, 2), (2, 1))


def test_json_round_trip(golden):
    data = golden.to_json_dict()
    assert data == {"alphabet": 2, "forbidden": ["22"]}
    again = Subshift.from_json_dict(data)
    assert again.forbidden == golden.forbidden


def test_out_of_range_forbidden():
    with pytest.raises(ValueError):
        Subshift.build(3, [(2, 4)])
