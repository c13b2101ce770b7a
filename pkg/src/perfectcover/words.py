"""Free-group words, evaluation, commutator-word search and generator lifting.

Words are stored freely reduced over an abstract alphabet x_1..x_m with
exponents +-1 per letter.  A word lies in the commutator subgroup of the
free group exactly when every letter index has total exponent sum zero;
that is the membership certificate this module hands out and checks.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass

from .errors import (
    InputError,
    InternalError,
    PreconditionError,
    SearchError,
    SizeLimitError,
)
from .groups import (
    ENUMERATION_CAP,
    PermGroup,
    StabilizerChain,
    conjugacy_classes,
    derived_subgroup,
    enumerate_elements,
)
from .perms import Permutation


def _reduce(letters):
    stack: list[tuple[int, int]] = []
    for idx, exp in letters:
        if exp not in (1, -1):
            raise InputError("letter exponents must be +1 or -1")
        if stack and stack[-1] == (idx, -exp):
            stack.pop()
        else:
            stack.append((idx, exp))
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """A freely reduced word over x_1..x_{size}; letters are (0-based index, +-1)."""

    size: int
    letters: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for idx, _ in self.letters:
            if not 0 <= idx < self.size:
                raise InputError(f"letter index {idx} out of range for size {self.size}")

    @classmethod
    def make(cls, size: int, letters) -> Word:
        return cls(size, _reduce(letters))

    @classmethod
    def empty(cls, size: int) -> Word:
        return cls(size, ())

    @classmethod
    def generator(cls, size: int, idx: int, exp: int = 1) -> Word:
        return cls.make(size, [(idx, exp)])

    def __mul__(self, other: Word) -> Word:
        if self.size != other.size:
            raise InputError("alphabet size mismatch")
        return Word.make(self.size, self.letters + other.letters)

    def inverse(self) -> Word:
        return Word(self.size, tuple((i, -e) for i, e in reversed(self.letters)))

    def commutator(self, other: Word) -> Word:
        return self.inverse() * other.inverse() * self * other

    def exponent_sums(self) -> list[int]:
        sums = [0] * self.size
        for idx, exp in self.letters:
            sums[idx] += exp
        return sums

    @property
    def in_commutator_subgroup(self) -> bool:
        return all(s == 0 for s in self.exponent_sums())

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "e"
        return " ".join(
            f"x{i + 1}" if e == 1 else f"x{i + 1}^-1" for i, e in self.letters
        )


_LETTER_RE = re.compile(r"^x(\d+)(\^-1)?$")


def parse_word(text: str, size: int) -> Word:
    """Parse the serialization produced by str(word), e.g. 'x1 x2 x1^-1 x2^-1'."""
    text = text.strip()
    if text in ("", "e"):
        return Word.empty(size)
    letters = []
    for token in text.split():
        m = _LETTER_RE.match(token)
        if not m:
            raise InputError(f"bad word letter {token!r}")
        idx = int(m.group(1)) - 1
        letters.append((idx, -1 if m.group(2) else 1))
    return Word.make(size, letters)


def evaluate_word(w: Word, perms) -> Permutation:
    """Substitute a tuple of permutations into w, composing left to right."""
    perms = tuple(perms)
    if len(perms) < w.size:
        raise InputError(
            f"word needs {w.size} values but only {len(perms)} were supplied"
        )
    if not perms:
        raise InputError("cannot evaluate a word over an empty tuple")
    degree = perms[0].degree
    result = Permutation.identity(degree)
    inverses = {}
    for idx, exp in w.letters:
        if exp == 1:
            result = result * perms[idx]
        else:
            inv = inverses.get(idx)
            if inv is None:
                inv = inverses[idx] = perms[idx].inverse()
            result = result * inv
    return result


def word_table(
    gens, degree: int, cap: int = ENUMERATION_CAP
) -> dict[Permutation, Word]:
    """Shortest-first words for every element of the generated group."""
    m = len(gens)
    identity = Permutation.identity(degree)
    table = {identity: Word.empty(m)}
    queue = deque([identity])
    moves = []
    for i, g in enumerate(gens):
        if g.is_identity():
            continue
        moves.append((g, Word.generator(m, i, 1)))
        moves.append((g.inverse(), Word.generator(m, i, -1)))
    while queue:
        x = queue.popleft()
        wx = table[x]
        for g, letter in moves:
            y = x * g
            if y not in table:
                if len(table) >= cap:
                    raise SizeLimitError(f"word table exceeded cap {cap}")
                table[y] = wx * letter
                queue.append(y)
    return table


def _commutator_pool(G: PermGroup, cap: int) -> dict[Permutation, tuple[Permutation, Permutation]]:
    """For each value [u, v] attained in G, one witness pair (u, v).

    Uses that {[u, v] : v in G} = u^-1 * class(u), so iterating class orbits
    with recorded conjugators visits every commutator value in O(|G|) work
    per class representative.
    """
    pool: dict[Permutation, tuple[Permutation, Permutation]] = {}
    gens = G.reduced_generators()
    for cls in conjugacy_classes(G, cap):
        u = cls[0]
        u_inv = u.inverse()
        conj = {u: G.identity}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            vx = conj[x]
            for g in gens:
                y = x.conjugate(g)
                if y not in conj:
                    conj[y] = vx * g
                    queue.append(y)
        for x, v in conj.items():
            value = u_inv * x
            if value not in pool:
                pool[value] = (u, v)
    return pool


def commutator_word_for(
    G: PermGroup,
    gens,
    target: Permutation,
    depth_cap: int = 32,
    cap: int = ENUMERATION_CAP,
) -> Word:
    """A word w with zero exponent sums and w(gens) = target.

    Works for perfect G: every element is then a bounded product of
    commutators of group elements, each of which turns into a commutator
    of generator words.  The returned word is freely reduced; depth_cap
    bounds its letter count and is doubled internally up to 256 before
    the search gives up.
    """
    gens = tuple(gens)
    m = len(gens)
    if target not in G:
        raise PreconditionError("target is not an element of the group")
    if derived_subgroup(G).order != G.order:
        raise PreconditionError("group is not perfect")
    if target.is_identity():
        return Word.empty(m)

    table = word_table(gens, G.degree, cap)
    if G.order > len(table):
        raise PreconditionError("the given tuple does not generate the group")
    pool = _commutator_pool(G, cap)

    def word_for_pair(u: Permutation, v: Permutation) -> Word:
        return table[u].commutator(table[v])

    candidate: Word | None = None
    if target in pool:
        candidate = word_for_pair(*pool[target])
    else:
        for k1, pair1 in pool.items():
            k2 = k1.inverse() * target
            pair2 = pool.get(k2)
            if pair2 is not None:
                candidate = word_for_pair(*pair1) * word_for_pair(*pair2)
                break
    if candidate is None:
        raise SearchError("target is not a product of at most two commutators")

    effective_cap = depth_cap
    while len(candidate) > effective_cap:
        if effective_cap >= 256:
            raise SearchError(
                f"shortest found word has {len(candidate)} letters, "
                f"over the cap of 256"
            )
        effective_cap *= 2

    if not candidate.in_commutator_subgroup:
        raise InternalError("constructed word has a nonzero exponent sum")
    if evaluate_word(candidate, gens) != target:
        raise InternalError("constructed word does not evaluate to its target")
    return candidate


def _candidate_tuples(n_elements, k: int, rng, exhaustive_limit: int = 10**6,
                      random_trials: int = 10**5):
    """Candidate tuples over n_elements^k: seeded-shuffled exhaustive stream
    when the space is small, otherwise seeded random sampling."""
    n = len(n_elements)
    if n**k <= exhaustive_limit:
        axes = []
        for _ in range(k):
            axis = list(n_elements)
            rng.shuffle(axis)
            axes.append(axis)

        def stream():
            idx = [0] * k
            while True:
                yield tuple(axes[i][idx[i]] for i in range(k))
                pos = k - 1
                while pos >= 0:
                    idx[pos] += 1
                    if idx[pos] < n:
                        break
                    idx[pos] = 0
                    pos -= 1
                if pos < 0:
                    return

        return stream(), True
    def sampled():
        for _ in range(random_trials):
            yield tuple(rng.choice(n_elements) for _ in range(k))
    return sampled(), False


def gaschutz_lift(
    G: PermGroup,
    N: PermGroup,
    coset_reps,
    k: int | None = None,
    rng=None,
    cap: int = ENUMERATION_CAP,
) -> list[Permutation]:
    """Adjust coset representatives within their cosets of N so they generate G.

    Requires N normal in G, the cosets a_i N to generate G/N, and
    k = len(coset_reps) at least the minimal number of generators of G;
    under those hypotheses a lift always exists, so an exhaustive search
    failure aborts as an internal error.
    """
    import random as _random

    from .structure import min_generators

    reps = list(coset_reps)
    if k is None:
        k = len(reps)
    if k != len(reps):
        raise PreconditionError("k must equal the number of coset representatives")
    if rng is None:
        rng = _random.Random(0)
    from .groups import is_normal

    if not is_normal(G, N):
        raise PreconditionError("subgroup is not normal")
    for a in reps:
        if a not in G:
            raise PreconditionError("representative is not in the group")
    with_n = PermGroup(G.degree, tuple(reps) + tuple(N.generators))
    if with_n.order != G.order:
        raise PreconditionError("the cosets do not generate the quotient")
    d = min_generators(G, k)
    if d is None:
        raise PreconditionError(f"group needs more than {k} generators")

    if PermGroup(G.degree, reps).order == G.order:
        return reps

    n_elements = sorted(enumerate_elements(N, cap))
    candidates, exhaustive = _candidate_tuples(n_elements, k, rng)
    for tup in candidates:
        lifted = [a * n for a, n in zip(reps, tup)]
        chain = StabilizerChain(G.degree, lifted)
        if chain.order() == G.order:
            return lifted
    if exhaustive:
        raise InternalError(
            "exhaustive lift search failed although the hypotheses hold"
        )
    raise SearchError("random lift search exhausted its trial budget")
