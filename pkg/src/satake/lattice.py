"""Root data, Weyl group combinatorics, and dominance orders, all in exact
integer/rational arithmetic.

Weights and coweights are plain integer tuples in a fixed lattice basis; a
coweight of one datum is a weight of its dual, so every operation here takes
the datum it should act through.  All functions are pure and safe for
concurrent use.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import DomainError, InvalidDatumError, ParseError
from .linalg import lp_feasible_point, smith_normal_form, solve_rational

Weight = tuple[int, ...]
WeylWord = tuple[int, ...]


@dataclass(frozen=True)
class RootDatum:
    """A based root datum: ambient lattice rank plus simple roots/coroots.

    The full root and coroot systems are derived, never stored.  ``name`` is
    a display label and does not participate in equality.
    """

    rank: int
    simple_roots: tuple[Weight, ...]
    simple_coroots: tuple[Weight, ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise InvalidDatumError("rank must be nonnegative")
        object.__setattr__(self, "simple_roots", tuple(tuple(int(c) for c in v) for v in self.simple_roots))
        object.__setattr__(self, "simple_coroots", tuple(tuple(int(c) for c in v) for v in self.simple_coroots))
        if len(self.simple_roots) != len(self.simple_coroots):
            raise InvalidDatumError("simple roots and coroots must pair up")
        for v in self.simple_roots + self.simple_coroots:
            if len(v) != self.rank:
                raise InvalidDatumError("root/coroot length does not match rank")

    @property
    def semisimple_rank(self) -> int:
        return len(self.simple_roots)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        label = self.name or "RootDatum"
        return f"{label}(rank={self.rank}, roots={list(self.simple_roots)})"


def pairing(weight: Sequence[int], coweight: Sequence[int]) -> int:
    """Natural pairing between the lattice and its dual: the dot product."""
    if len(weight) != len(coweight):
        raise DomainError("pairing of vectors with different lengths")
    return sum(a * b for a, b in zip(weight, coweight))


def cartan_matrix(rd: RootDatum) -> tuple[tuple[int, ...], ...]:
    """A[i][j] = <simple_roots[j], simple_coroots[i]>."""
    return tuple(
        tuple(pairing(alpha, cov) for alpha in rd.simple_roots)
        for cov in rd.simple_coroots
    )


def _components(a: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(a)
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and a[i][j] != 0:
                    seen[j] = True
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def _classify_block(a: Sequence[Sequence[int]], nodes: list[int]) -> str:
    """Classify one connected Cartan block; raises if it is not finite type."""
    n = len(nodes)
    if n == 1:
        return "A1"
    sub = {i: {j for j in nodes if j != i and a[i][j] != 0} for i in nodes}
    edges = [(i, j) for i in nodes for j in sub[i] if i < j]
    if len(edges) != n - 1:
        raise InvalidDatumError("not finite type: Cartan block is not a tree")
    marks = {(i, j): a[i][j] * a[j][i] for (i, j) in edges}
    if any(m >= 4 for m in marks.values()):
        raise InvalidDatumError("not finite type: edge mark >= 4")
    multi = [e for e, m in marks.items() if m > 1]
    deg3 = [i for i in nodes if len(sub[i]) == 3]
    if any(len(sub[i]) > 3 for i in nodes) or len(deg3) > 1:
        raise InvalidDatumError("not finite type: diagram branching too high")
    if multi and deg3:
        raise InvalidDatumError("not finite type: branch node with multiple edge")
    if len(multi) > 1:
        raise InvalidDatumError("not finite type: several multiple edges")

    if not multi and not deg3:
        return f"A{n}"

    if multi:
        (p, q) = multi[0]
        mark = marks[(p, q)]
        if mark == 3:
            if n != 2:
                raise InvalidDatumError("not finite type: triple edge in rank > 2")
            return "G2"
        # single double edge on a path
        ends = [i for i in nodes if len(sub[i]) == 1]
        if len(ends) != 2:
            raise InvalidDatumError("not finite type")
        # walk the path from one end
        order = [ends[0]]
        while len(order) < n:
            nxt = next(j for j in sub[order[-1]] if len(order) < 2 or j != order[-2])
            order.append(nxt)
        pos = {v: k for k, v in enumerate(order)}
        lo, hi = sorted((pos[p], pos[q]))
        if {lo, hi} == {0, 1} or {lo, hi} == {n - 2, n - 1}:
            if n == 2:
                return "B2"
            # orient: end node e of the double edge, its neighbour w
            e = order[0] if lo == 0 else order[n - 1]
            w = order[1] if lo == 0 else order[n - 2]
            # <alpha_w, alpha_e^vee> = -2 means alpha_w is the long root,
            # i.e. the short root sits at the end: type B
            return (f"B{n}" if a[e][w] == -2 else f"C{n}")
        if n == 4 and {lo, hi} == {1, 2}:
            return "F4"
        raise InvalidDatumError("not finite type: double edge in the interior")

    # simply laced with one branch node
    branch = deg3[0]
    arms = []
    for first in sub[branch]:
        length = 1
        prev, cur = branch, first
        while len(sub[cur]) == 2:
            nxt = next(j for j in sub[cur] if j != prev)
            prev, cur = cur, nxt
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return f"D{n}"
    if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
        return {2: "E6", 3: "E7", 4: "E8"}[arms[2]]
    raise InvalidDatumError("not finite type: bad branch arm lengths")


def cartan_type(rd: RootDatum) -> str:
    """Finite-type label, e.g. 'A2', 'B2 x A1', 'torus'.  Raises otherwise."""
    a = cartan_matrix(rd)
    s = rd.semisimple_rank
    for i in range(s):
        if a[i][i] != 2:
            raise InvalidDatumError("Cartan diagonal != 2")
    for i in range(s):
        for j in range(s):
            if i != j:
                if a[i][j] > 0:
                    raise InvalidDatumError("positive off-diagonal Cartan entry")
                if (a[i][j] == 0) != (a[j][i] == 0):
                    raise InvalidDatumError("asymmetric zero pattern in Cartan matrix")
    if s == 0:
        return "torus"
    names = [_classify_block(a, comp) for comp in _components(a)]
    return " x ".join(sorted(names))


def _independent_over_q(vectors: Sequence[Weight], rank: int) -> bool:
    if not vectors:
        return True
    d, _, _ = smith_normal_form([list(v) for v in vectors])
    nonzero = sum(1 for i in range(min(len(vectors), rank)) if d[i][i] != 0)
    return nonzero == len(vectors)


def validate_datum(rd: RootDatum) -> None:
    """Check every RootDatum invariant; raises InvalidDatumError on the first
    violation (bad Cartan diagonal, non-finite type, dependent roots)."""
    cartan_type(rd)
    if not _independent_over_q(rd.simple_roots, rd.rank):
        raise InvalidDatumError("simple roots linearly dependent")
    if not _independent_over_q(rd.simple_coroots, rd.rank):
        raise InvalidDatumError("simple coroots linearly dependent")


def is_dominant(rd: RootDatum, lam: Weight) -> bool:
    return all(pairing(lam, cov) >= 0 for cov in rd.simple_coroots)


def reflect(rd: RootDatum, i: int, lam: Weight) -> Weight:
    """Simple reflection s_i acting on a weight."""
    c = pairing(lam, rd.simple_coroots[i])
    alpha = rd.simple_roots[i]
    return tuple(x - c * a for x, a in zip(lam, alpha))


def apply_word(rd: RootDatum, word: Sequence[int], lam: Weight) -> Weight:
    """Apply a Weyl word, rightmost letter first: word=(i, j) acts as s_i s_j."""
    v = tuple(lam)
    for letter in reversed(word):
        if not 0 <= letter < rd.semisimple_rank:
            raise DomainError(f"Weyl letter {letter} out of range")
        v = reflect(rd, letter, v)
    return v


def dominant_representative(rd: RootDatum, lam: Weight) -> tuple[Weight, WeylWord]:
    """The dominant W-orbit representative and a word carrying lam onto it.

    Always reflects at the smallest violating index, so the word is
    deterministic.  apply_word(rd, word, lam) equals the returned weight.
    """
    v = tuple(lam)
    applied: list[int] = []
    while True:
        i = next((i for i, cov in enumerate(rd.simple_coroots) if pairing(v, cov) < 0), None)
        if i is None:
            return v, tuple(reversed(applied))
        v = reflect(rd, i, v)
        applied.append(i)


@lru_cache(maxsize=65536)
def weyl_orbit(rd: RootDatum, lam: Weight) -> tuple[Weight, ...]:
    """The W-orbit of a weight, sorted for determinism."""
    seen = {tuple(lam)}
    frontier = [tuple(lam)]
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(rd.semisimple_rank):
                w = reflect(rd, i, v)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return tuple(sorted(seen))


def weyl_group_order(rd: RootDatum) -> int:
    """|W|, computed as the orbit size of the strictly dominant weight 2rho."""
    reg = two_rho(rd)
    # 2rho pairs to 2 with every simple coroot, hence has trivial stabilizer
    return len(weyl_orbit(rd, reg))


def root_coefficients(rd: RootDatum, v: Sequence[int]) -> tuple[Fraction, ...] | None:
    """Coordinates of v in the simple-root basis, or None if v is outside
    their rational span."""
    return solve_rational(rd.simple_roots, v)


def leq_dominance(rd: RootDatum, lam: Weight, mu: Weight) -> bool:
    """lam <= mu: mu - lam is a nonnegative *integer* combination of simple
    roots."""
    diff = tuple(m - l for l, m in zip(lam, mu))
    coeffs = root_coefficients(rd, diff)
    return coeffs is not None and all(c >= 0 and c.denominator == 1 for c in coeffs)


def preceq(rd: RootDatum, lam: Weight, mu: Weight) -> bool:
    """lam ⪯ mu: mu - lam is a nonnegative *rational* combination of simple
    roots (the real-cone weakening of dominance order)."""
    diff = tuple(m - l for l, m in zip(lam, mu))
    coeffs = root_coefficients(rd, diff)
    return coeffs is not None and all(c >= 0 for c in coeffs)


def class_mod_root_lattice(rd: RootDatum, lam: Weight) -> tuple[int, ...]:
    """Canonical representative of lam in X/Q, via Smith normal form of the
    simple-root lattice.  Two weights get equal tuples iff they differ by an
    integral root-lattice element."""
    s = rd.semisimple_rank
    if s == 0:
        return tuple(lam)
    cols = [[rd.simple_roots[j][i] for j in range(s)] for i in range(rd.rank)]
    d, u, _ = smith_normal_form(cols)
    t = [sum(u[i][k] * lam[k] for k in range(rd.rank)) for i in range(rd.rank)]
    out = []
    for i in range(rd.rank):
        di = d[i][i] if i < s else 0
        out.append(t[i] % di if di != 0 else t[i])
    return tuple(out)


@lru_cache(maxsize=1024)
def positive_roots_with_coroots(rd: RootDatum) -> tuple[tuple[Weight, Weight], ...]:
    """All positive roots paired with their coroots, by orbit saturation of
    the simple pairs."""
    dual = dual_root_datum(rd)
    seen: set[tuple[Weight, Weight]] = set()
    frontier = list(zip(rd.simple_roots, rd.simple_coroots))
    seen.update(frontier)
    while frontier:
        nxt = []
        for root, cov in frontier:
            for i in range(rd.semisimple_rank):
                pair = (reflect(rd, i, root), reflect(dual, i, cov))
                if pair not in seen:
                    seen.add(pair)
                    nxt.append(pair)
        frontier = nxt
    positive = []
    for root, cov in sorted(seen):
        coeffs = root_coefficients(rd, root)
        assert coeffs is not None
        if all(c >= 0 for c in coeffs):
            positive.append((root, cov))
    return tuple(positive)


def positive_roots(rd: RootDatum) -> tuple[Weight, ...]:
    return tuple(root for root, _ in positive_roots_with_coroots(rd))


@lru_cache(maxsize=1024)
def two_rho(rd: RootDatum) -> Weight:
    """The sum of all positive roots (twice the Weyl vector, kept integral)."""
    total = [0] * rd.rank
    for root in positive_roots(rd):
        for i, c in enumerate(root):
            total[i] += c
    return tuple(total)


def coroot_height(rd: RootDatum, lam: Weight) -> int:
    """Pairing of lam with the sum of all positive coroots.  Nonnegative on
    dominant weights; the natural size measure for enumeration bounds."""
    total = [0] * rd.rank
    for _, cov in positive_roots_with_coroots(rd):
        for i, c in enumerate(cov):
            total[i] += c
    return pairing(lam, tuple(total))


def _fundamental_covector_bounds(rd: RootDatum, mu: Weight) -> list[int]:
    """For dominant mu: per-simple-root upper bounds on the coefficients c
    with mu - sum(c_i alpha_i) dominant.

    The bound is <mu, w_j> where w_j is the fundamental coweight expressed in
    the simple coroots; those coefficients are nonnegative for finite type,
    which is what makes the box search provably complete.
    """
    s = rd.semisimple_rank
    a = cartan_matrix(rd)
    bounds = []
    for j in range(s):
        # fundamental coweight w_j = sum_k m_k alpha_k^vee solves
        # sum_k m_k A[k][i] = delta_ij, i.e. columns are the rows of A
        target = [int(i == j) for i in range(s)]
        coeffs = solve_rational([list(a[k]) for k in range(s)], target)
        assert coeffs is not None
        assert all(c >= 0 for c in coeffs), "inverse Cartan must be nonnegative"
        bound = sum(c * pairing(mu, rd.simple_coroots[k]) for k, c in enumerate(coeffs))
        bounds.append(int(bound))  # floor of a nonnegative Fraction
    return bounds


@lru_cache(maxsize=65536)
def dominant_below(rd: RootDatum, mu: Weight) -> tuple[Weight, ...]:
    """All dominant weights lam with lam <= mu, sorted.  mu must be dominant."""
    if not is_dominant(rd, mu):
        raise DomainError(f"weight {mu} is not dominant")
    s = rd.semisimple_rank
    if s == 0:
        return (tuple(mu),)
    bounds = _fundamental_covector_bounds(rd, mu)
    found = []
    for combo in itertools.product(*(range(b + 1) for b in bounds)):
        lam = list(mu)
        for j, c in enumerate(combo):
            if c:
                for i, a in enumerate(rd.simple_roots[j]):
                    lam[i] -= c * a
        lam_t = tuple(lam)
        if is_dominant(rd, lam_t):
            found.append(lam_t)
    return tuple(sorted(found))


def saturation_set(rd: RootDatum, mu: Weight) -> tuple[Weight, ...]:
    """All weights nu whose dominant representative is <= mu: the union of
    the W-orbits of the dominant weights below mu."""
    out: set[Weight] = set()
    for lam in dominant_below(rd, mu):
        out.update(weyl_orbit(rd, lam))
    return tuple(sorted(out))


def conv_hull_leq(rd: RootDatum, lam: Weight, mu: Weight) -> bool:
    """Conv(W lam) ⊆ Conv(W mu), decided point-by-point with exact rational
    linear feasibility.  Deliberately independent of preceq."""
    if not is_dominant(rd, lam) or not is_dominant(rd, mu):
        raise DomainError("conv_hull_leq needs dominant weights")
    hull_points = weyl_orbit(rd, mu)
    n = len(hull_points)
    for v in weyl_orbit(rd, lam):
        rows = [[hull_points[j][i] for j in range(n)] for i in range(rd.rank)]
        rows.append([1] * n)
        rhs = list(v) + [1]
        if lp_feasible_point(rows, rhs) is None:
            return False
    return True


def dual_root_datum(rd: RootDatum) -> RootDatum:
    """Swap roots with coroots.  An exact involution on the stored data."""
    return RootDatum(
        rank=rd.rank,
        simple_roots=rd.simple_coroots,
        simple_coroots=rd.simple_roots,
        name=None if rd.name is None else f"{rd.name}^",
    )


def datum_to_json(rd: RootDatum) -> str:
    doc = {
        "name": rd.name,
        "rank": rd.rank,
        "simple_roots": [list(v) for v in rd.simple_roots],
        "simple_coroots": [list(v) for v in rd.simple_coroots],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def datum_from_json(text: str) -> RootDatum:
    """Parse the root-datum file format; validates the datum."""
    try:
        doc = json.loads(text)
        rd = RootDatum(
            rank=int(doc["rank"]),
            simple_roots=tuple(tuple(int(c) for c in v) for v in doc["simple_roots"]),
            simple_coroots=tuple(tuple(int(c) for c in v) for v in doc["simple_coroots"]),
            name=doc.get("name"),
        )
    except InvalidDatumError:
        raise
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise ParseError(f"malformed root datum file: {exc}") from exc
    validate_datum(rd)
    return rd
