from __future__ import annotations

import itertools

import pytest

from conftest import datum
from satake.errors import InconclusiveError, InconsistencyError, ParseError
from satake.fixtures import FIXTURES
from satake.lattice import RootDatum, cartan_matrix, cartan_type, dual_root_datum, leq_dominance, preceq
from satake.reconstruct import (
    AbstractSemiring,
    ReconstructionConfig,
    based_iso,
    dump_semiring,
    recover_monoid,
    recover_preceq,
    recover_Qplus,
    recover_leq,
    recover_sum,
    reconstruct_root_datum,
    semiring_from_json,
    semiring_to_json,
    verify_reconstruction,
)

CFG = ReconstructionConfig()


def sl2_dump(bound=4, seed=0):
    sr, truth = dump_semiring(datum("SL2"), bound, seed)
    return sr, truth, {w: t for t, w in truth.items()}


class TestDump:
    def test_sl2_window(self):
        sr, truth, _ = sl2_dump()
        assert len(sr.ids) == 5
        assert sorted(truth.values()) == [(0,), (1,), (2,), (3,), (4,)]

    def test_determinism(self):
        a, _ = dump_semiring(datum("SL3"), 8, seed=5)
        b, _ = dump_semiring(datum("SL3"), 8, seed=5)
        assert semiring_to_json(a) == semiring_to_json(b)

    def test_seeds_change_labels(self):
        a, ta = dump_semiring(datum("SL2"), 4, seed=0)
        b, tb = dump_semiring(datum("SL2"), 4, seed=1)
        assert ta != tb

    def test_rank0(self):
        trivial = RootDatum(0, (), ())
        sr, truth = dump_semiring(trivial, 3, seed=0)
        assert sr.ids == (sr.unit,)
        rec = reconstruct_root_datum(sr, CFG)
        assert rec.datum.rank == 0

    def test_boundary_flags(self):
        sr, truth, inv = sl2_dump()
        # (1)x(1) = (2)+(0) stays inside; (3)x(4) spills out
        assert sr.product(inv[(1,)], inv[(1,)])[1] is True
        assert sr.product(inv[(3,)], inv[(4,)])[1] is False

    def test_unit_products(self):
        sr, truth, inv = sl2_dump()
        for x in sr.ids:
            terms, complete = sr.product(x, sr.unit)
            assert terms == {x: 1} and complete

    def test_json_round_trip(self):
        sr, _ = dump_semiring(datum("Sp4"), 8, seed=2)
        text = semiring_to_json(sr)
        again = semiring_from_json(text)
        assert semiring_to_json(again) == text

    def test_malformed_json(self):
        with pytest.raises(ParseError):
            semiring_from_json("{\"unit\": \"a\"}")


class TestOrderRecovery:
    def test_preceq_examples(self):
        sr, truth, inv = sl2_dump()
        assert recover_preceq(sr, CFG, inv[(0,)], inv[(2,)]) is True
        assert recover_preceq(sr, CFG, inv[(2,)], inv[(0,)]) is False
        assert recover_preceq(sr, CFG, inv[(1,)], inv[(1,)]) is True

    def test_agreement_with_ground_truth(self):
        for name, bound in [("SL2", 8), ("PGL2", 8), ("Sp4", 20)]:
            rd = dual_root_datum(datum(name))
            sr, truth = dump_semiring(rd, FIXTURES[name].dump_bound, seed=0)
            ids = sorted(sr.ids)
            for a in ids:
                for b in ids:
                    verdict = recover_preceq(sr, CFG, a, b)
                    if verdict is None:
                        continue
                    assert verdict == preceq(rd, truth[a], truth[b]), (name, truth[a], truth[b])

    def test_leq_examples(self):
        sr, truth, inv = sl2_dump()
        monoid = recover_monoid(sr, CFG, min_grade=2)
        qgens = recover_Qplus(sr, CFG, monoid)
        assert recover_leq(sr, CFG, inv[(1,)], inv[(2,)], monoid, qgens) is False
        assert recover_leq(sr, CFG, inv[(0,)], inv[(2,)], monoid, qgens) is True
        assert recover_leq(sr, CFG, inv[(3,)], inv[(3,)], monoid, qgens) is True
        # the context arguments are optional and recomputed when omitted
        assert recover_leq(sr, CFG, inv[(0,)], inv[(2,)]) is True

    def test_leq_agreement(self):
        name = "PGL2"
        rd = dual_root_datum(datum(name))
        sr, truth = dump_semiring(rd, FIXTURES[name].dump_bound, seed=0)
        monoid = recover_monoid(sr, CFG, min_grade=2)
        qgens = recover_Qplus(sr, CFG, monoid)
        for a in sr.ids:
            for b in sr.ids:
                verdict = recover_leq(sr, CFG, a, b, monoid, qgens)
                if verdict is None:
                    continue
                assert verdict == leq_dominance(rd, truth[a], truth[b]), (truth[a], truth[b])


class TestSum:
    def test_examples(self):
        sr, truth, inv = sl2_dump()
        assert truth[recover_sum(sr, CFG, inv[(1,)], inv[(1,)])] == (2,)
        assert truth[recover_sum(sr, CFG, inv[(2,)], sr.unit)] == (2,)

    def test_sl3(self):
        sr, truth = dump_semiring(datum("SL3"), 8, seed=0)
        inv = {w: t for t, w in truth.items()}
        assert truth[recover_sum(sr, CFG, inv[(1, 0)], inv[(0, 1)])] == (1, 1)

    def test_incomplete_rejected(self):
        sr, truth, inv = sl2_dump()
        with pytest.raises(InconclusiveError):
            recover_sum(sr, CFG, inv[(4,)], inv[(4,)])

    def test_ground_truth_agreement(self):
        for name in ("PGL2", "Sp4"):
            rd = dual_root_datum(datum(name))
            sr, truth = dump_semiring(rd, FIXTURES[name].dump_bound, seed=0)
            ids = sorted(x for x in sr.ids if x != sr.unit)
            for i, a in enumerate(ids):
                for b in ids[i:]:
                    try:
                        c = recover_sum(sr, CFG, a, b)
                    except InconclusiveError:
                        continue
                    expected = tuple(x + y for x, y in zip(truth[a], truth[b]))
                    assert truth[c] == expected, (name, truth[a], truth[b])


class TestMonoid:
    def test_sl2_generator(self):
        sr, truth, inv = sl2_dump()
        monoid = recover_monoid(sr, CFG, min_grade=2)
        assert monoid.rank == 1
        assert [truth[g] for g in monoid.generators] == [(1,)]
        assert abs(monoid.embedding[inv[(1,)]][0]) == 1

    def test_sl3_rank(self):
        sr, truth = dump_semiring(datum("SL3"), 8, seed=0)
        monoid = recover_monoid(sr, CFG, min_grade=2)
        assert monoid.rank == 2
        assert len(monoid.generators) == 2

    def test_additivity_on_labels(self):
        sr, truth = dump_semiring(dual_root_datum(datum("Sp4")), 20, seed=0)
        monoid = recover_monoid(sr, CFG, min_grade=2)
        emb = monoid.embedding
        for a, b, c in monoid.relations:
            expected = tuple(x + y for x, y in zip(truth[a], truth[b]))
            assert truth[c] == expected


class TestQplus:
    def test_sl2(self):
        sr, truth, inv = sl2_dump()
        monoid = recover_monoid(sr, CFG, min_grade=2)
        gens = recover_Qplus(sr, CFG, monoid)
        scale = monoid.embedding[inv[(1,)]][0]  # +-1
        in_truth = sorted(abs(g[0] * scale) for g in gens)
        assert 2 in in_truth  # the root alpha = (2)
        assert all(v % 2 == 0 for v in in_truth)

    def test_pgl2(self):
        sr, truth = dump_semiring(datum("PGL2"), 8, seed=0)
        monoid = recover_monoid(sr, CFG, min_grade=2)
        gens = recover_Qplus(sr, CFG, monoid)
        norms = sorted(abs(g[0]) for g in gens)
        assert 1 in norms  # in PGL2 the root generates the full lattice


class TestRoundTrip:
    @pytest.mark.parametrize("name", list(FIXTURES))
    def test_fixture_round_trip(self, name):
        fx = FIXTURES[name]
        dual = dual_root_datum(fx.datum)
        sr, _ = dump_semiring(dual, fx.dump_bound, seed=0)
        recovered = reconstruct_root_datum(sr, CFG)
        assert based_iso(recovered.datum, dual) is not None

    def test_seed_independence(self):
        fx = FIXTURES["Sp4"]
        dual = dual_root_datum(fx.datum)
        outs = []
        for seed in (0, 99):
            sr, _ = dump_semiring(dual, fx.dump_bound, seed=seed)
            outs.append(reconstruct_root_datum(sr, CFG).datum)
        assert based_iso(outs[0], outs[1]) is not None

    @pytest.mark.parametrize("rd, bound", [
        (RootDatum(2, ((2, 0), (0, 2)), ((1, 0), (0, 1)), name="SL2xSL2"), 8),
        (RootDatum(1, (), (), name="GL1"), 3),
        (RootDatum(2, (), (), name="T2"), 2),
        (RootDatum(2, ((2, 0),), ((1, 0),), name="SL2xGL1"), 6),
    ])
    def test_non_fixture_round_trips(self, rd, bound):
        dual = dual_root_datum(rd)
        sr, _ = dump_semiring(dual, bound, seed=0)
        recovered = reconstruct_root_datum(sr, CFG)
        assert based_iso(recovered.datum, dual) is not None

    def test_g2_cartan(self):
        fx = FIXTURES["G2"]
        sr, _ = dump_semiring(dual_root_datum(fx.datum), fx.dump_bound, seed=0)
        recovered = reconstruct_root_datum(sr, CFG)
        assert cartan_type(recovered.datum) == "G2"

    def test_sl3_recovered_vs_dual_uses_diagram_flip(self):
        # reconstruction is blind to the outer automorphism; based_iso must
        # succeed against both the dual and the dual's flip
        fx = FIXTURES["SL3"]
        dual = dual_root_datum(fx.datum)
        sr, _ = dump_semiring(dual, fx.dump_bound, seed=0)
        recovered = reconstruct_root_datum(sr, CFG)
        flipped = RootDatum(
            rank=2,
            simple_roots=(dual.simple_roots[1], dual.simple_roots[0]),
            simple_coroots=(dual.simple_coroots[1], dual.simple_coroots[0]),
        )
        assert based_iso(recovered.datum, dual) is not None
        assert based_iso(recovered.datum, flipped) is not None


class TestNegativeControls:
    def test_sl2_vs_pgl2(self):
        assert based_iso(datum("SL2"), datum("PGL2")) is None

    def test_identity(self, fixture_datum):
        assert based_iso(fixture_datum, fixture_datum) is not None

    def test_corrupted_multiplicity_detected(self):
        sr, truth = dump_semiring(datum("SL2"), 4, seed=0)
        inv = {w: t for t, w in truth.items()}
        key = tuple(sorted((inv[(1,)], inv[(1,)])))
        terms, complete = sr.product(*key)
        terms[inv[(0,)]] = 2  # single multiplicity edit
        products = {k: (dict(v[0]), v[1]) for k, v in sr._products.items()}
        products[key] = (terms, complete)
        corrupted = AbstractSemiring(ids=sr.ids, unit=sr.unit, products=products)
        with pytest.raises(InconsistencyError):
            reconstruct_root_datum(corrupted, CFG)

    def test_shrunken_dump_inconclusive(self):
        sr, _ = dump_semiring(datum("SL3"), 4, seed=0)
        with pytest.raises(InconclusiveError):
            reconstruct_root_datum(sr, ReconstructionConfig(strict=True))

    def test_strict_never_flips_verdicts(self):
        sr, truth = dump_semiring(datum("SL2"), 6, seed=0)
        strictcfg = ReconstructionConfig(strict=True)
        for a in sr.ids:
            for b in sr.ids:
                assert recover_preceq(sr, CFG, a, b) == recover_preceq(sr, strictcfg, a, b)


class TestVerify:
    def test_clean_dump_verifies(self):
        fx = FIXTURES["PGL3"]
        sr, _ = dump_semiring(dual_root_datum(fx.datum), fx.dump_bound, seed=0)
        recovered = reconstruct_root_datum(sr, CFG)
        assert verify_reconstruction(sr, recovered) == []


class TestExtraction:
    def test_simple_roots_minimality(self):
        from satake.reconstruct import extract_simple_roots

        assert extract_simple_roots(((2,), (4,), (6,))) == ((2,),)
        assert set(extract_simple_roots(((1, 0), (0, 1), (1, 1), (2, 1)))) == {(1, 0), (0, 1)}
        assert extract_simple_roots(()) == ()

    def test_simple_roots_reject_unpointed(self):
        from satake.reconstruct import extract_simple_roots

        with pytest.raises(InconsistencyError):
            extract_simple_roots(((1,), (-1,)))

    def test_coroot_functional_sl2(self):
        from satake.reconstruct import extract_simple_coroots, recover_Qplus, recover_monoid
        from satake.reconstruct import extract_simple_roots

        sr, truth = dump_semiring(datum("SL2"), 6, seed=0)
        monoid = recover_monoid(sr, CFG, min_grade=2)
        roots = extract_simple_roots(recover_Qplus(sr, CFG, monoid))
        assert len(roots) == 1
        cov = extract_simple_coroots(sr, CFG, monoid, roots[0])
        assert sum(a * c for a, c in zip(roots[0], cov)) == 2
        # the embedded picture is the SL2 one up to a sign: |alpha| = 2, |alpha^| = 1
        assert sorted(abs(c) for c in roots[0]) == [2]
        assert sorted(abs(c) for c in cov) == [1]

