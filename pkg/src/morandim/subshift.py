"""Subshifts presented by finite forbidden-word sets, with a follower automaton.

The automaton is built Aho-Corasick style over the minimal forbidden words,
transitions that would complete a forbidden factor are dropped, and the result
is trimmed so that every surviving state lies on an infinite path and is
reachable from the initial state.  Length-n words of the subshift are then
exactly the length-n paths from the initial state, which makes both exact
enumeration and exact counting (integer transfer matrices) available.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .words import Word


class EmptySubshiftError(ValueError):
    """Raised when the forbidden set rules out every infinite word."""


def _is_factor(small: tuple, big: tuple) -> bool:
    n, m = len(small), len(big)
    if n > m:
        return False
    return any(big[k : k + n] == small for k in range(m - n + 1))


def minimal_forbidden(words: set[tuple]) -> tuple[tuple, ...]:
    """Drop forbidden words that contain a shorter forbidden word as a factor."""
    keep: list[tuple] = []
    for w in sorted(set(words), key=lambda t: (len(t), t)):
        if not any(_is_factor(k, w) for k in keep):
            keep.append(w)
    return tuple(keep)


def _aho_corasick(kappa: int, forbidden: tuple[tuple, ...]):
    """Full transition table of the factor-avoidance DFA; ``None`` marks death."""
    from collections import deque

    goto: list[dict[int, int]] = [{}]
    terminal = [False]
    for w in forbidden:
        state = 0
        for s in w:
            nxt = goto[state].get(s)
            if nxt is None:
                nxt = len(goto)
                goto[state][s] = nxt
                goto.append({})
                terminal.append(False)
            state = nxt
        terminal[state] = True

    fail = [0] * len(goto)
    order = []
    queue = deque(goto[0].values())
    while queue:
        u = queue.popleft()
        order.append(u)
        terminal[u] = terminal[u] or terminal[fail[u]]
        for s, v in goto[u].items():
            f = fail[u]
            while f and s not in goto[f]:
                f = fail[f]
            cand = goto[f].get(s, 0)
            fail[v] = cand if cand != v else 0
            queue.append(v)

    delta: list[list[int | None]] = [[None] * (kappa + 1) for _ in goto]
    for u in [0] + order:
        for s in range(1, kappa + 1):
            if s in goto[u]:
                v = goto[u][s]
            elif u == 0:
                v = 0
            else:
                v = delta[fail[u]][s]
            delta[u][s] = None if (v is None or terminal[v]) else v
    if terminal[0]:
        delta[0] = [None] * (kappa + 1)
    return delta


@dataclass(frozen=True)
class Subshift:
    """A compact shift-invariant set of infinite words, given by forbidden factors.

    ``transitions[s][a]`` is the follower state after emitting symbol ``a`` in
    state ``s``, or ``None`` when no infinite continuation exists.  State 0 is
    initial.  Construction raises :class:`EmptySubshiftError` if nothing survives.
    """

    kappa: int
    forbidden: tuple[tuple[int, ...], ...]
    transitions: tuple[tuple[int | None, ...], ...] = field(compare=False)

    @classmethod
    def build(cls, kappa: int, forbidden) -> "Subshift":
        if kappa < 2:
            raise ValueError("alphabet size must be >= 2")
        words = set()
        for w in forbidden:
            t = tuple(w.symbols) if isinstance(w, Word) else tuple(w)
            if not t:
                raise EmptySubshiftError("the empty word is forbidden; nothing is allowed")
            if any(not 1 <= s <= kappa for s in t):
                raise ValueError(f"forbidden word {t} has symbols outside 1..{kappa}")
            words.add(t)
        reduced = minimal_forbidden(words)
        if any(len(w) == 1 for w in reduced) and len({w[0] for w in reduced if len(w) == 1}) == kappa:
            raise EmptySubshiftError("every symbol is forbidden")

        delta = _aho_corasick(kappa, reduced)
        n = len(delta)
        alive = [any(delta[u][s] is not None for s in range(1, kappa + 1)) for u in range(n)]
        # iteratively drop states whose every transition leads to a dead state
        changed = True
        while changed:
            changed = False
            for u in range(n):
                if alive[u] and not any(
                    delta[u][s] is not None and alive[delta[u][s]] for s in range(1, kappa + 1)
                ):
                    alive[u] = False
                    changed = True
        if not alive[0]:
            raise EmptySubshiftError("the forbidden set rules out every infinite word")
        reach = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for s in range(1, kappa + 1):
                v = delta[u][s]
                if v is not None and alive[v] and v not in reach:
                    reach.add(v)
                    stack.append(v)
        keep = sorted(reach)
        index = {u: i for i, u in enumerate(keep)}
        table = tuple(
            tuple(
                index[delta[u][s]]
                if s >= 1 and delta[u][s] is not None and alive[delta[u][s]]
                else None
                for s in range(0, kappa + 1)
            )
            for u in keep
        )
        return cls(kappa=kappa, forbidden=reduced, transitions=table)

    # -- language queries ---------------------------------------------------

    @property
    def n_states(self) -> int:
        return len(self.transitions)

    def state_after(self, symbols, start: int = 0) -> int | None:
        state = start
        for s in symbols:
            state = self.transitions[state][s]
            if state is None:
                return None
        return state

    def contains(self, word) -> bool:
        """Membership in the prefix language (words extendable to infinite ones)."""
        symbols = word.symbols if isinstance(word, Word) else tuple(word)
        return self.state_after(symbols) is not None

    def words(self, n: int, start: int = 0):
        """Yield the allowed length-n symbol tuples from ``start`` in lex order."""
        if n < 0:
            raise ValueError("length must be >= 0")
        stack = [((), start)]
        while stack:
            prefix, state = stack.pop()
            if len(prefix) == n:
                yield prefix
                continue
            for s in range(self.kappa, 0, -1):
                nxt = self.transitions[state][s]
                if nxt is not None:
                    stack.append((prefix + (s,), nxt))

    def allowed_words(self, n: int) -> set[Word]:
        return {Word(t, self.kappa) for t in self.words(n)}

    def count_words(self, n: int, start: int = 0) -> int:
        """Exact number of allowed length-n words; linear-algebra free DP."""
        if n < 0:
            raise ValueError("length must be >= 0")
        counts = [0] * self.n_states
        counts[start] = 1
        for _ in range(n):
            nxt = [0] * self.n_states
            for u, c in enumerate(counts):
                if c:
                    for s in range(1, self.kappa + 1):
                        v = self.transitions[u][s]
                        if v is not None:
                            nxt[v] += c
            counts = nxt
        return sum(counts)

    def transition_count_matrix(self) -> list[list[int]]:
        """M[u][v] = number of symbols leading from state u to state v."""
        n = self.n_states
        mat = [[0] * n for _ in range(n)]
        for u in range(n):
            for s in range(1, self.kappa + 1):
                v = self.transitions[u][s]
                if v is not None:
                    mat[u][v] += 1
        return mat

    def out_symbols(self, state: int) -> tuple[int, ...]:
        return tuple(s for s in range(1, self.kappa + 1) if self.transitions[state][s] is not None)

    def is_full_shift(self) -> bool:
        return not self.forbidden

    # -- serialization ------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "alphabet": self.kappa,
            "forbidden": ["".join(str(s) for s in w) for w in self.forbidden]
            if self.kappa <= 9
            else [list(w) for w in self.forbidden],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Subshift":
        kappa = data["alphabet"]
        raw = data.get("forbidden", [])
        words = []
        for item in raw:
            if isinstance(item, str):
                words.append(tuple(int(c) for c in item))
            else:
                words.append(tuple(int(s) for s in item))
        return cls.build(kappa, words)


def full_shift(kappa: int) -> Subshift:
    return Subshift.build(kappa, [])


def strongly_connected_components(matrix: list[list[int]]) -> list[list[int]]:
    """Tarjan SCCs of the support digraph of a nonnegative matrix, iterative."""
    n = len(matrix)
    adj = [[v for v in range(n) if matrix[u][v]] for u in range(n)]
    index = [None] * n
    low = [0] * n
    onstack = [False] * n
    stack: list[int] = []
    sccs: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] is not None:
            continue
        work = [(root, 0)]
        while work:
            u, pi = work[-1]
            if pi == 0:
                index[u] = low[u] = counter
                counter += 1
                stack.append(u)
                onstack[u] = True
            advanced = False
            for k in range(pi, len(adj[u])):
                v = adj[u][k]
                if index[v] is None:
                    work[-1] = (u, k + 1)
                    work.append((v, 0))
                    advanced = True
                    break
                elif onstack[v]:
                    low[u] = min(low[u], index[v])
            if advanced:
                continue
            work.pop()
            if low[u] == index[u]:
                comp = []
                while True:
                    v = stack.pop()
                    onstack[v] = False
                    comp.append(v)
                    if v == u:
                        break
                sccs.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[u])
    return sccs
