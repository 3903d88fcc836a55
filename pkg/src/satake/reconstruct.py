"""Reconstruction of a based root datum from an anonymized, truncated
Grothendieck semiring, and the based-isomorphism checker that closes the
round trip.

Truncation semantics: every universally quantified comparison is evaluated
three-valued (True / False / None-for-inconclusive).  A False needs a fully
expandable counterexample; a True needs a witness that passes every
checkable exponent; anything the window cannot settle stays None and is
never silently resolved.  Mutual-witness conflicts (both directions claiming
True) are resolved by evidence strength or suppressed entirely, so windowed
artifacts degrade to None instead of to wrong verdicts.
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import DomainError, InconclusiveError, InconsistencyError, ParseError
from .lattice import (
    RootDatum,
    Weight,
    coroot_height,
    is_dominant,
    validate_datum,
)
from .linalg import (
    det_int,
    in_lattice_span,
    integer_solutions,
    smith_normal_form,
    solve_rational,
)
from .semiring import tensor_decompose

Verdict = bool | None
Expansion = tuple[dict[str, int], bool]  # id -> multiplicity, fully-expanded flag


@dataclass(frozen=True)
class ReconstructionConfig:
    """Bounds for the universally quantified comparisons.

    ``k_max`` caps the tensor-power exponent; ``strict`` escalates any
    inconclusive event left at the end of a reconstruction into an error
    instead of a report warning.
    """

    k_max: int = 4
    strict: bool = False

    def __post_init__(self) -> None:
        if self.k_max < 2:
            raise DomainError("k_max must be at least 2")


class AbstractSemiring:
    """An anonymized semiring window: opaque ids, a unit, and a partial
    product table.  ``complete=False`` marks products whose constituents may
    fall outside the id window.

    Product, power, and evidence caches are filled lazily and only ever
    grow; entries are immutable once written.
    """

    def __init__(self, ids, unit: str, products) -> None:
        self.ids: tuple[str, ...] = tuple(sorted(set(ids)))
        self.id_set = frozenset(self.ids)
        self.unit = unit
        if unit not in self.id_set:
            raise ParseError("semiring unit is not among the ids")
        self._products: dict[tuple[str, str], tuple[tuple[tuple[str, int], ...], bool]] = {}
        for (a, b), (terms, complete) in products.items():
            key = (a, b) if a <= b else (b, a)
            canon = tuple(sorted(terms.items()))
            if any(t not in self.id_set for t, _ in canon) or any(m < 1 for _, m in canon):
                raise ParseError(f"product ({a},{b}) has terms outside the id set")
            prior = self._products.get(key)
            if prior is not None and prior != (canon, bool(complete)):
                raise ParseError(f"conflicting product entries for ({a},{b})")
            self._products[key] = (canon, bool(complete))
        for a in self.ids:
            entry = self._products.get((a, unit) if a <= unit else (unit, a))
            if entry is None or dict(entry[0]) != {a: 1} or not entry[1]:
                raise ParseError(f"unit product for {a} is missing or wrong")
        self._powers: dict[tuple[str, int], Expansion] = {}
        self._times: dict[tuple[str, int, str], Expansion] = {}
        self._evidence: dict[tuple[str, str, int], tuple[str, int]] = {}
        self._expandable: dict[int, tuple[str, ...]] = {}

    def product(self, a: str, b: str) -> tuple[dict[str, int], bool]:
        key = (a, b) if a <= b else (b, a)
        entry = self._products.get(key)
        if entry is None:
            return {}, False
        return dict(entry[0]), entry[1]

    def has_product(self, a: str, b: str) -> bool:
        key = (a, b) if a <= b else (b, a)
        return key in self._products

    def _multiply(self, expansion: Expansion, x: str) -> Expansion:
        terms, complete = expansion
        out: dict[str, int] = {}
        for y, m in terms.items():
            pterms, pcomplete = self.product(y, x)
            if not pcomplete:
                complete = False
            for z, mz in pterms.items():
                out[z] = out.get(z, 0) + m * mz
        return out, complete

    def power(self, a: str, k: int) -> Expansion:
        if k < 1:
            return {self.unit: 1}, True
        key = (a, k)
        cached = self._powers.get(key)
        if cached is None:
            cached = ({a: 1}, True) if k == 1 else self._multiply(self.power(a, k - 1), a)
            self._powers[key] = cached
        return cached

    def power_times(self, b: str, k: int, u: str) -> Expansion:
        key = (b, k, u)
        cached = self._times.get(key)
        if cached is None:
            cached = self._multiply(self.power(b, k), u)
            self._times[key] = cached
        return cached

    def expandable_ids(self, k_max: int) -> tuple[str, ...]:
        """Ids whose powers stay fully expandable up to k_max: the abstract
        notion of 'small', used to keep witnesses honest."""
        cached = self._expandable.get(k_max)
        if cached is None:
            cached = tuple(x for x in self.ids if self.power(x, k_max)[1])
            self._expandable[k_max] = cached
        return cached


def dump_semiring(rd: RootDatum, height_bound: int, seed: int) -> tuple[AbstractSemiring, dict[str, Weight]]:
    """Forward direction: anonymize the dominant weights of a datum up to a
    height-and-coordinate bound, with all pairwise tensor products.

    Tokens come from a seeded pseudorandom shuffle, so identical inputs give
    identical dumps and different seeds give differently labeled ones.
    """
    if height_bound < 0:
        raise DomainError("height bound must be nonnegative")
    window: list[Weight] = []
    for coords in itertools.product(range(-height_bound, height_bound + 1), repeat=rd.rank):
        w = tuple(coords)
        if is_dominant(rd, w) and coroot_height(rd, w) <= height_bound:
            window.append(w)
    window.sort()
    tokens = [f"x{i:03d}" for i in range(len(window))]
    random.Random(seed).shuffle(tokens)
    label = dict(zip(window, tokens))
    products = {}
    for i, wa in enumerate(window):
        for wb in window[i:]:
            dec = tensor_decompose(rd, wa, wb)
            terms = {label[nu]: m for nu, m in dec.items() if nu in label}
            complete = len(terms) == len(dec)
            products[(label[wa], label[wb])] = (terms, complete)
    semiring = AbstractSemiring(ids=tokens, unit=label[(0,) * rd.rank], products=products)
    return semiring, {token: w for w, token in label.items()}


def _evidence(sr: AbstractSemiring, cfg: ReconstructionConfig, a: str, b: str) -> tuple[str, int]:
    """One-directional evidence for a ⪯ b.

    Returns ('T'|'F'|'?', n) where n counts the fully expandable exponents
    of a.  'T': some witness u contains every power's constituents, found
    explicitly.  'F': every candidate witness fails on complete data.
    """
    key = (a, b, cfg.k_max)
    cached = sr._evidence.get(key)
    if cached is not None:
        return cached
    powers_a: dict[int, dict[str, int]] = {}
    for k in range(1, cfg.k_max + 1):
        terms, complete = sr.power(a, k)
        if complete:
            powers_a[k] = terms
    checkable = sorted(powers_a)
    small = set(sr.expandable_ids(cfg.k_max))
    witness_found = False
    any_unknown = False
    for u in sr.ids:
        failed = False
        unknown = False
        for k in checkable:
            prod_terms, prod_complete = sr.power_times(b, k, u)
            for nu in powers_a[k]:
                if nu not in prod_terms:
                    if prod_complete:
                        failed = True
                    else:
                        unknown = True
                    break
            if failed:
                break
        if failed:
            continue
        # when the window clips the checkable exponents, only small witnesses
        # certify a True: a window-sized u makes many pairs look comparable
        # at the few exponents that remain visible
        if unknown or (u not in small and len(checkable) < cfg.k_max):
            any_unknown = True
            continue
        witness_found = True
        break
    # a single checkable exponent cannot separate the two sides of a pair,
    # so strength-1 positives stay inconclusive
    if witness_found and len(checkable) < 2:
        witness_found = False
        any_unknown = True
    verdict = "T" if witness_found else ("?" if any_unknown else "F")
    result = (verdict, len(checkable))
    sr._evidence[key] = result
    return result


def _directed_verdict(sr: AbstractSemiring, cfg: ReconstructionConfig,
                      a: str, b: str) -> tuple[Verdict, int]:
    """Suppression-resolved verdict for a ⪯ b with the evidence strength.

    Opposing witness claims are ranked by how many exponents each side could
    actually check; ties suppress both claims to inconclusive.
    """
    va, sa = _evidence(sr, cfg, a, b)
    vb, sb = _evidence(sr, cfg, b, a)
    if va == "T":
        if vb == "T" and sb >= sa:
            return None, sa
        return True, sa
    if va == "F":
        return False, sa
    return None, sa


def recover_preceq(sr: AbstractSemiring, cfg: ReconstructionConfig, a: str, b: str) -> Verdict:
    """Three-valued a ⪯ b on ids: search a witness u whose products contain
    the constituents of every power of a up to k_max.

    A True demands that every exponent up to k_max was fully checkable: a
    window can make non-comparable pairs look comparable at the few
    exponents it leaves visible, so partially checked positives stay None.
    """
    if a not in sr.id_set or b not in sr.id_set:
        raise DomainError("recover_preceq needs ids from the semiring")
    if a == b:
        return True
    verdict, strength = _directed_verdict(sr, cfg, a, b)
    if verdict is True and strength < cfg.k_max:
        return None
    return verdict


def _certified_sum(sr: AbstractSemiring, cfg: ReconstructionConfig,
                   a: str, b: str, min_grade: int) -> str:
    """recover_sum with a certification grade: each non-maximal constituent
    must be eliminated by a True edge of strength >= min_grade."""
    if not sr.has_product(a, b):
        raise InconclusiveError(f"product ({a},{b}) is not in the dump")
    terms, complete = sr.product(a, b)
    if not complete:
        raise InconclusiveError(f"incomplete product ({a},{b})")
    names = sorted(terms)
    if len(names) == 1:
        return names[0]
    verdicts = {(s, t): _directed_verdict(sr, cfg, s, t)
                for s in names for t in names if s != t}
    eliminated = set()
    for s in names:
        strengths = [st for t in names if t != s
                     for v, st in [verdicts[(s, t)]] if v is True]
        if strengths and max(strengths) >= min_grade:
            eliminated.add(s)
    candidates = [t for t in names if t not in eliminated]
    if len(candidates) == 1:
        top = candidates[0]
        if any(verdicts[(s, top)][0] is False for s in names if s != top):
            raise InconsistencyError(
                f"constituent order of ({a},{b}) contradicts a unique maximum")
        return top
    if not candidates:
        raise InconsistencyError(f"no maximal constituent left in ({a},{b})")
    raise InconclusiveError(f"ambiguous maximum in product ({a},{b})")


def recover_sum(sr: AbstractSemiring, cfg: ReconstructionConfig, a: str, b: str) -> str:
    """The id of the maximal constituent of v_a * v_b: the monoid sum a + b.

    Requires the product to be complete, and certifies the maximum at the
    most conservative grade (every elimination backed by fully checked
    order evidence).  Raises InconclusiveError when the window cannot
    certify a unique maximum, InconsistencyError when complete data
    contradicts having one.
    """
    return _certified_sum(sr, cfg, a, b, min_grade=cfg.k_max)


@dataclass(frozen=True)
class MonoidRecovery:
    """Group completion of the certified part of the id monoid."""

    generators: tuple[str, ...]
    embedding: dict[str, tuple[int, ...]]
    rank: int
    core: tuple[str, ...]
    relations: tuple[tuple[str, str, str], ...]
    skipped: tuple[str, ...]


def recover_monoid(sr: AbstractSemiring, cfg: ReconstructionConfig,
                   min_grade: int | None = None) -> MonoidRecovery:
    """Group-complete the id monoid in two stages.

    Seed stage: certify sums among the small (twice-expandable) ids through
    the order evidence at the given certification grade, and present the
    group completion of those relations by Smith normal form.  Character
    lattices are torsion-free, so torsion here signals corrupted input.

    Bootstrap stage: a complete product of two labeled ids has its maximal
    constituent at the sum of the labels.  When a labeled term carries that
    sum it is the maximum; when no label matches and exactly one term is
    unlabeled, that term must be the maximum and inherits the label.  Iterate
    to a fixed point; this extends the embedding across the window without
    any further order queries.
    """
    if min_grade is None:
        min_grade = cfg.k_max
    nonunit = [x for x in sr.ids if x != sr.unit]
    small = [x for x in nonunit if sr.power(x, 2)[1]]
    small_set = set(small) | {sr.unit}
    relations: list[tuple[str, str, str]] = []
    unresolved: list[tuple[str, str]] = []
    for i, a in enumerate(small):
        for b in small[i:]:
            if not (sr.has_product(a, b) and sr.product(a, b)[1]):
                continue
            try:
                c = _certified_sum(sr, cfg, a, b, min_grade=min_grade)
            except InconclusiveError:
                unresolved.append((a, b))
                continue
            if c not in small_set:
                # a sum landing outside the twice-expandable range would
                # enter the lattice presentation underdetermined; leave it
                # for the bootstrap stage instead
                continue
            relations.append((a, b, c))
    if nonunit and not relations:
        raise InconclusiveError("no certified sums: dump too small to complete the monoid")
    related = sorted({x for rel in relations for x in rel if x != sr.unit})
    index = {x: i for i, x in enumerate(related)}
    m = len(related)
    matrix = [[0] * len(relations) for _ in range(m)]
    for col, (a, b, c) in enumerate(relations):
        matrix[index[a]][col] += 1
        matrix[index[b]][col] += 1
        if c != sr.unit:
            matrix[index[c]][col] -= 1
    d, u, _ = smith_normal_form(matrix) if m else ([], [], [])
    snf_rank = sum(1 for i in range(min(m, len(relations))) if d[i][i] != 0)
    for i in range(snf_rank):
        if d[i][i] != 1:
            raise InconsistencyError("torsion in completion: corrupted semiring")
    free_rows = list(range(snf_rank, m))
    rank = len(free_rows)
    embedding: dict[str, tuple[int, ...]] = {sr.unit: (0,) * rank}
    for x in related:
        j = index[x]
        embedding[x] = tuple(u[i][j] for i in free_rows)
    for a, b, c in relations:
        left = tuple(p + q for p, q in zip(embedding[a], embedding[b]))
        if left != embedding.get(c, (0,) * rank):
            raise InconsistencyError("relation lattice failed to close")

    rev = {v: x for x, v in embedding.items()}
    if len(rev) != len(embedding):
        raise InconsistencyError("seed embedding is not injective")
    complete_products = [
        (a, b) for i, a in enumerate(nonunit) for b in nonunit[i:]
        if sr.has_product(a, b) and sr.product(a, b)[1]
    ]
    seen = set(relations)
    changed = True
    while changed:
        changed = False
        for a, b in complete_products:
            if a not in embedding or b not in embedding:
                continue
            target = tuple(p + q for p, q in zip(embedding[a], embedding[b]))
            terms, _ = sr.product(a, b)
            match = rev.get(target)
            if match is not None:
                if match not in terms:
                    raise InconsistencyError(
                        f"maximal constituent of ({a},{b}) is missing from the dump")
                if (a, b, match) not in seen:
                    relations.append((a, b, match))
                    seen.add((a, b, match))
                continue
            unlabeled = [t for t in terms if t not in embedding]
            if not unlabeled:
                raise InconsistencyError(
                    f"no constituent of ({a},{b}) can carry its maximum")
            if len(unlabeled) == 1:
                t = unlabeled[0]
                embedding[t] = target
                rev[target] = t
                relations.append((a, b, t))
                seen.add((a, b, t))
                changed = True

    core = sorted(x for x in embedding if x != sr.unit)
    unrelated = [x for x in nonunit if x not in embedding]
    generators: list[str] = []
    chosen: list[tuple[int, ...]] = []
    for x in sorted(core, key=lambda x: (sum(abs(c) for c in embedding[x]), embedding[x])):
        if not in_lattice_span(chosen, embedding[x]):
            generators.append(x)
            chosen.append(embedding[x])
    resolved = {(a, b) for a, b, _ in seen}
    skipped = [f"seed sum({a},{b}) ambiguous under truncation"
               for a, b in unresolved if (a, b) not in resolved]
    skipped.extend(f"id {x} left unlabeled" for x in unrelated)
    return MonoidRecovery(
        generators=tuple(generators),
        embedding=embedding,
        rank=rank,
        core=tuple([sr.unit] + core),
        relations=tuple(relations),
        skipped=tuple(skipped),
    )


def recover_Qplus(sr: AbstractSemiring, cfg: ReconstructionConfig,
                  monoid: MonoidRecovery) -> tuple[tuple[int, ...], ...]:
    """Generating vectors of the positive root cone: differences 2a - c over
    the visible constituents c of each certified square v_a^2.  Visible
    constituents of truncated squares are still genuine, so harvesting them
    is sound."""
    gens: set[tuple[int, ...]] = set()
    core = set(monoid.core)
    for a in monoid.core:
        terms, _ = sr.product(a, a)
        for c in terms:
            if c not in core:
                continue
            delta = tuple(2 * p - q for p, q in zip(monoid.embedding[a], monoid.embedding[c]))
            if any(delta):
                gens.add(delta)
    return tuple(sorted(gens))


def recover_leq(sr: AbstractSemiring, cfg: ReconstructionConfig, a: str, b: str,
                monoid: MonoidRecovery | None = None,
                q_generators: tuple[tuple[int, ...], ...] | None = None) -> Verdict:
    """Three-valued a <= b: a ⪯ b and the embedded difference lies in the
    group generated by the recovered positive cone."""
    if monoid is None:
        monoid = recover_monoid(sr, cfg)
    if q_generators is None:
        q_generators = recover_Qplus(sr, cfg, monoid)
    emb_a = monoid.embedding.get(a)
    emb_b = monoid.embedding.get(b)
    if emb_a is None or emb_b is None:
        return None
    diff = tuple(q - p for p, q in zip(emb_a, emb_b))
    if not in_lattice_span([list(g) for g in q_generators], list(diff)):
        return False
    return recover_preceq(sr, cfg, a, b)


def _positive_functional(gens: tuple[tuple[int, ...], ...]) -> list[Fraction]:
    """An exact rational functional phi with phi(g) >= 1 on every generator.

    Positivity on the primitive point of each ray gives positivity on the
    whole ray, so only one representative per direction matters.  The
    feasible set {phi : phi(g) >= 1}, taken inside the span of the rays, is
    a pointed polyhedron, so when nonempty it has a vertex where dim-many
    independent constraints are tight; exact vertex enumeration finds one.
    """
    r = len(gens[0])
    rays = sorted({tuple(c // gcd(*(abs(x) for x in g)) for c in g) for g in gens})

    def matrix_rank(columns: list[int]) -> int:
        mat = [[g[t] for t in columns] for g in rays]
        d, _, _ = smith_normal_form(mat)
        return sum(1 for i in range(min(len(mat), len(columns))) if d[i][i] != 0)

    # coordinate positions carrying the span of the rays; a functional
    # supported there reaches every functional on the span
    positions: list[int] = []
    for j in range(r):
        if matrix_rank(positions + [j]) == len(positions) + 1:
            positions.append(j)
    for combo in itertools.combinations(range(len(rays)), len(positions)):
        cols_m = [[rays[i][t] for i in combo] for t in positions]
        try:
            sol = solve_rational(cols_m, [1] * len(combo))
        except ValueError:
            continue
        if sol is None:
            continue
        phi = [Fraction(0)] * r
        for t, value in zip(positions, sol):
            phi[t] = value
        if all(sum(p * c for p, c in zip(phi, g)) >= 1 for g in rays):
            return phi
    raise InconsistencyError("harvested root cone is not pointed")


def extract_simple_roots(q_generators: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    """Minimal nonzero elements of the semigroup generated by the harvested
    cone vectors: the simple roots of the recovered datum."""
    gens = sorted(set(g for g in q_generators if any(g)))
    if not gens:
        return ()
    phi = _positive_functional(tuple(gens))

    def phi_val(v: tuple[int, ...]) -> Fraction:
        return sum(p * c for p, c in zip(phi, v))

    min_phi = min(phi_val(g) for g in gens)
    memo: dict[tuple[int, ...], bool] = {}

    def in_semigroup(v: tuple[int, ...]) -> bool:
        """Nonempty nonnegative-integer combination reaching v."""
        if v in memo:
            return memo[v]
        memo[v] = False  # cycle guard; phi strictly decreases so cycles are vacuous
        hit = False
        for g in gens:
            w = tuple(x - y for x, y in zip(v, g))
            if not any(w):
                hit = True
                break
            if phi_val(w) >= min_phi and in_semigroup(w):
                hit = True
                break
        memo[v] = hit
        return hit

    simples = []
    for g in gens:
        decomposable = False
        for h in gens:
            rest = tuple(x - y for x, y in zip(g, h))
            if any(rest) and phi_val(rest) >= min_phi and in_semigroup(rest):
                decomposable = True
                break
        if not decomposable:
            simples.append(g)
    return tuple(simples)


def extract_simple_coroots(sr: AbstractSemiring, cfg: ReconstructionConfig,
                           monoid: MonoidRecovery,
                           alpha: tuple[int, ...]) -> tuple[int, ...]:
    """The coroot functional of a recovered simple root: fit the pairing
    values m(mu) = largest m with 2*mu - m*alpha still dominant, read off
    inside the window, then verify the fit on every sample."""
    rev = {v: x for x, v in monoid.embedding.items()}
    samples: list[tuple[tuple[int, ...], int]] = []
    for x, v in sorted(monoid.embedding.items(), key=lambda kv: kv[1]):
        double = tuple(2 * c for c in v)
        if double not in rev:
            continue
        m = 0
        while tuple(d - (m + 1) * a for d, a in zip(double, alpha)) in rev:
            m += 1
        samples.append((v, m))
    columns = [[v[i] for v, _ in samples] for i in range(monoid.rank)]
    targets = [m for _, m in samples]
    try:
        coeffs = solve_rational(columns, targets)
    except ValueError as exc:
        raise InconclusiveError("window too small to determine a coroot") from exc
    if coeffs is None:
        raise InconsistencyError("non-additive coroot functional: corrupted window")
    if any(c.denominator != 1 for c in coeffs):
        raise InconsistencyError("coroot functional is not integral")
    cov = tuple(int(c) for c in coeffs)
    if sum(a * c for a, c in zip(alpha, cov)) != 2:
        raise InconsistencyError("recovered coroot does not pair to 2 with its root")
    return cov


@dataclass(frozen=True)
class RecoveredDatum:
    """Result of a reconstruction: the datum, the id labeling over the
    certified core, and the derivation log."""

    datum: RootDatum
    labeling: dict[str, Weight]
    log: tuple[str, ...]
    warnings: tuple[str, ...] = field(default=())


def assemble_root_datum(roots: tuple[tuple[int, ...], ...],
                        coroots: tuple[tuple[int, ...], ...],
                        rank: int,
                        labeling: dict[str, Weight],
                        log: tuple[str, ...],
                        warnings: tuple[str, ...] = ()) -> RecoveredDatum:
    """Build and validate the recovered datum; recovered data that fails the
    root-datum axioms signals inconsistency, not a parse problem."""
    order = sorted(range(len(roots)), key=lambda i: roots[i])
    datum = RootDatum(
        rank=rank,
        simple_roots=tuple(roots[i] for i in order),
        simple_coroots=tuple(coroots[i] for i in order),
        name="recovered",
    )
    try:
        validate_datum(datum)
    except Exception as exc:
        raise InconsistencyError(f"recovered datum is invalid: {exc}") from exc
    for x, w in labeling.items():
        if not is_dominant(datum, w):
            raise InconsistencyError(f"labeled id {x} embeds to a non-dominant weight")
    return RecoveredDatum(datum=datum, labeling=dict(labeling), log=log, warnings=warnings)


def verify_reconstruction(sr: AbstractSemiring, recovered: RecoveredDatum) -> list[str]:
    """Recompute every certified product from the recovered datum and diff it
    against the dump.  Any mismatch (including a single edited multiplicity)
    is reported."""
    mism: list[str] = []
    labeling = recovered.labeling
    weight_of = dict(labeling)
    labeled = set(labeling)
    core = sorted(labeled)
    by_weight = {w: x for x, w in labeling.items()}
    for i, a in enumerate(core):
        for b in core[i:]:
            if not sr.has_product(a, b):
                continue
            terms, complete = sr.product(a, b)
            expected = tensor_decompose(recovered.datum, weight_of[a], weight_of[b])
            visible = {by_weight[nu]: m for nu, m in expected.items() if nu in by_weight}
            for t, m in terms.items():
                if t in labeled and visible.get(t) != m:
                    mism.append(f"product ({a},{b}): term {t} has multiplicity {m}, expected {visible.get(t, 0)}")
            for t, m in visible.items():
                if t not in terms:
                    mism.append(f"product ({a},{b}): expected term {t} (multiplicity {m}) missing")
            dump_total = sum(terms.values())
            true_total = sum(expected.values())
            if complete and dump_total != true_total:
                mism.append(f"product ({a},{b}): complete but totals {dump_total} != {true_total}")
            if not complete and dump_total >= true_total:
                mism.append(f"product ({a},{b}): marked incomplete but already full")
    return mism


def _reconstruct_at_grade(sr: AbstractSemiring, cfg: ReconstructionConfig,
                          grade: int) -> RecoveredDatum:
    log: list[str] = [f"certification grade {grade}"]
    monoid = recover_monoid(sr, cfg, min_grade=grade)
    log.append(f"monoid: {len(monoid.core)} certified ids, {len(monoid.relations)} relations, "
               f"free rank {monoid.rank}")
    q_gens = recover_Qplus(sr, cfg, monoid)
    log.append(f"positive cone: {len(q_gens)} harvested generators")
    roots = extract_simple_roots(q_gens)
    log.append(f"simple roots: {len(roots)}")
    if q_gens and not roots:
        raise InconsistencyError("positive cone has no minimal elements")
    coroots = tuple(extract_simple_coroots(sr, cfg, monoid, alpha) for alpha in roots)
    log.append("coroot functionals fitted and verified")
    labeling = {x: monoid.embedding[x] for x in monoid.core}
    recovered = assemble_root_datum(roots, coroots, monoid.rank, labeling,
                                    log=tuple(log), warnings=monoid.skipped)
    mismatches = verify_reconstruction(sr, recovered)
    if mismatches:
        detail = "; ".join(mismatches[:5])
        raise InconsistencyError(f"dump does not match the recovered datum: {detail}")
    return recovered


def reconstruct_root_datum(sr: AbstractSemiring, cfg: ReconstructionConfig) -> RecoveredDatum:
    """Full pipeline: monoid completion, positive cone, simple roots and
    coroots, datum assembly, and the product-table self check.

    Seeds are retried at descending certification grades; a result is only
    accepted when every labeled product recomputed from the recovered datum
    matches the dump, so a permissive seed can never smuggle in a wrong
    datum.  The error of the most conservative attempt is reported when all
    grades fail.
    """
    if tuple(sr.ids) == (sr.unit,):
        trivial = RootDatum(rank=0, simple_roots=(), simple_coroots=(), name="recovered")
        return RecoveredDatum(datum=trivial, labeling={sr.unit: ()}, log=("trivial semiring: rank-0 datum",))
    first_error: Exception | None = None
    for grade in range(cfg.k_max, 1, -1):
        try:
            recovered = _reconstruct_at_grade(sr, cfg, grade)
        except (InconclusiveError, InconsistencyError) as exc:
            if first_error is None:
                first_error = exc
            continue
        if cfg.strict and recovered.warnings:
            raise InconclusiveError("strict mode: " + "; ".join(recovered.warnings[:5]))
        return recovered
    assert first_error is not None
    raise first_error


def _cartan_of(rd: RootDatum) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(sum(a * b for a, b in zip(root, cov)) for root in rd.simple_roots)
                 for cov in rd.simple_coroots)


def based_iso(rd1: RootDatum, rd2: RootDatum) -> tuple[tuple[int, ...], ...] | None:
    """A lattice isomorphism carrying the based datum rd1 onto rd2, or None.

    Searches all Cartan-preserving bijections of the simple roots (diagram
    automorphisms included: an anonymized semiring cannot see them), solves
    the induced integer-linear system for the lattice map, and scans a small
    box of the homogeneous solutions for a unimodular representative.
    """
    if rd1.rank != rd2.rank or rd1.semisimple_rank != rd2.semisimple_rank:
        return None
    r = rd1.rank
    s = rd1.semisimple_rank
    if r == 0:
        return ()
    if s == 0:
        # no based data to match: any lattice isomorphism works
        return tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
    a1 = _cartan_of(rd1)
    a2 = _cartan_of(rd2)
    for sigma in itertools.permutations(range(s)):
        if any(a2[sigma[i]][sigma[j]] != a1[i][j] for i in range(s) for j in range(s)):
            continue
        rows: list[list[int]] = []
        rhs: list[int] = []
        for i in range(s):
            for p in range(r):
                row = [0] * (r * r)
                for q in range(r):
                    row[p * r + q] = rd1.simple_roots[i][q]
                rows.append(row)
                rhs.append(rd2.simple_roots[sigma[i]][p])
        for i in range(s):
            for q in range(r):
                row = [0] * (r * r)
                for p in range(r):
                    row[p * r + q] = rd2.simple_coroots[sigma[i]][p]
                rows.append(row)
                rhs.append(rd1.simple_coroots[i][q])
        solved = integer_solutions(rows, rhs)
        if solved is None:
            continue
        x0, basis = solved
        span = 3  # unimodular representatives for the shipped data sit well inside
        for combo in itertools.product(range(-span, span + 1), repeat=len(basis)):
            entries = list(x0)
            for t, vec in zip(combo, basis):
                if t:
                    entries = [e + t * v for e, v in zip(entries, vec)]
            matrix = tuple(tuple(entries[p * r + q] for q in range(r)) for p in range(r))
            if abs(det_int(matrix)) == 1:
                return matrix
    return None


def semiring_to_json(sr: AbstractSemiring) -> str:
    products = []
    for (a, b), (terms, complete) in sorted(sr._products.items()):
        products.append({
            "a": a,
            "b": b,
            "terms": [{"id": t, "mult": m} for t, m in terms],
            "complete": complete,
        })
    doc = {"unit": sr.unit, "ids": list(sr.ids), "products": products}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def semiring_from_json(text: str) -> AbstractSemiring:
    try:
        doc = json.loads(text)
        ids = [str(x) for x in doc["ids"]]
        unit = str(doc["unit"])
        products = {}
        for entry in doc["products"]:
            key = (str(entry["a"]), str(entry["b"]))
            terms = {str(t["id"]): int(t["mult"]) for t in entry["terms"]}
            products[key] = (terms, bool(entry["complete"]))
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise ParseError(f"malformed semiring dump: {exc}") from exc
    return AbstractSemiring(ids=ids, unit=unit, products=products)
