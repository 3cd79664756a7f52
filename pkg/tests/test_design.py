"""Design construction, validation, closure, search, serialization."""

import json
import random

import pytest

from conway_groupoids import design as dz
from conway_groupoids import f2, groupoid
from conway_groupoids.errors import InvalidInputError, ScaleError
from conway_groupoids.perm import Permutation


class TestValidate:
    def test_p3(self):
        report = dz.validate(dz.build_p3())
        assert report.is_2design and report.lam == 1 and report.is_supersimple

    def test_boolean(self):
        report = dz.validate(dz.build_boolean(3))
        assert report.lam == 3 and report.is_supersimple

    def test_three_point_overlap_flagged(self):
        d = dz.Design(6, [(0, 1, 2, 3), (0, 1, 2, 4)])
        report = dz.validate(d)
        assert not report.is_supersimple
        assert report.witness[0] == "blocks sharing three points"

    def test_uneven_coverage_flagged(self):
        d = dz.Design(6, [(0, 1, 2, 3)])
        report = dz.validate(d)
        assert not report.is_2design and report.lam is None

    def test_duplicate_blocks_collapse(self):
        d = dz.Design(5, [(0, 1, 2, 3), (3, 2, 1, 0)])
        assert len(d.blocks) == 1


class TestBuilders:
    def test_p3_structure(self):
        d = dz.build_p3()
        assert d.n == 13 and len(d.blocks) == 13
        # any two lines meet in exactly one point
        for i, b1 in enumerate(d.blocks):
            for b2 in d.blocks[i + 1:]:
                assert len(set(b1) & set(b2)) == 1

    def test_boolean_small(self):
        d2 = dz.build_boolean(2)
        assert d2.n == 4 and d2.blocks == ((0, 1, 2, 3),)
        d3 = dz.build_boolean(3)
        assert d3.n == 8 and len(d3.blocks) == 14 and d3.lam == 3
        for k in range(2, 6):
            d = dz.build_boolean(k)
            assert d.n == 2 * d.lam + 2

    def test_boolean_blocks_are_xor_quadruples(self):
        for a, b, c, d in dz.build_boolean(4).blocks:
            assert a ^ b ^ c ^ d == 0

    def test_sp_design_parameters(self):
        d = dz.build_sp_design(3, 1)
        assert (d.n, d.lam, len(d.blocks)) == (28, 5, 315)
        assert dz.validate(d).lam == 5
        d0 = dz.build_sp_design(3, 0)
        assert (d0.n, d0.lam, len(d0.blocks)) == (36, 9, 945)
        assert dz.validate(d0).lam == 9

    def test_sp_design_block_count_formula(self):
        for m, eps in ((3, 0), (3, 1)):
            d = dz.build_sp_design(m, eps)
            assert len(d.blocks) == dz.expected_block_count(d.n, d.lam)

    def test_sp_design_labels_sorted_and_typed(self):
        d = dz.build_sp_design(3, 1)
        s = f2.space(3)
        assert list(d.labels) == sorted(d.labels)
        assert all(s.theta0(v) == 1 for v in d.labels)

    def test_sp_m2_warns(self):
        dz.build_sp_design.cache_clear()
        with pytest.warns(UserWarning):
            dz.build_sp_design(2, 0)
        dz.build_sp_design.cache_clear()

    def test_affine_parameters(self):
        d = dz.build_affine_design(3)
        assert (d.n, d.lam, len(d.blocks)) == (64, 15, 5040)
        assert dz.validate(d).ok
        d2 = dz.build_affine_design(2)
        assert (d2.n, d2.lam) == (16, 3)
        assert dz.validate(d2).lam == 3

    def test_affine_membership_criterion_equivalence(self):
        # theta_0 sum condition <=> vanishing pairwise phi sum, m=2 exhaustive
        s = f2.space(2)
        d = dz.build_affine_design(2)
        import itertools

        for v1, v2, v3 in itertools.combinations(range(16), 3):
            v4 = v1 ^ v2 ^ v3
            if v4 in (v1, v2, v3):
                continue
            lhs = s.theta0(v1) ^ s.theta0(v2) ^ s.theta0(v3) ^ s.theta0(v4)
            rhs = s.phi(v1, v2) ^ s.phi(v1, v3) ^ s.phi(v2, v3)
            assert (lhs == 0) == (rhs == 0)
            assert (tuple(sorted((v1, v2, v3, v4))) in d.block_set) == (rhs == 0)


class TestClosure:
    def test_sizes(self):
        assert len(dz.build_p3().closure(0, 1)) == 4
        assert len(dz.build_sp_design(3, 1).closure(0, 1)) == 12
        assert len(dz.build_boolean(3).closure(0, 1)) == 8

    def test_contains_endpoints_and_size_everywhere(self):
        d = dz.build_sp_design(3, 1)
        rng = random.Random(2)
        for _ in range(100):
            a, b = rng.sample(range(d.n), 2)
            c = d.closure(a, b)
            assert a in c and b in c and len(c) == 2 * d.lam + 2

    def test_equal_points_rejected(self):
        with pytest.raises(InvalidInputError):
            dz.build_p3().closure(4, 4)


class TestAutomorphisms:
    def test_identity(self):
        d = dz.build_p3()
        assert dz.automorphism_check(d, Permutation.identity(13))

    def test_every_transvection_on_sp_design(self):
        s = f2.space(3)
        for eps in (0, 1):
            d = dz.build_sp_design(3, eps)
            for c in range(1, 64):
                p = groupoid.transvection_point_perm(s, eps, c)
                assert dz.automorphism_check(d, p)

    def test_affine_generators(self):
        s = f2.space(3)
        d = dz.build_affine_design(3)
        for i in range(6):
            assert dz.automorphism_check(d, groupoid.translation_perm(s, 1 << i))
        for c in range(1, 64):
            assert dz.automorphism_check(d, groupoid.affine_transvection_perm(s, c))

    def test_random_transposition_fails(self):
        d = dz.build_p3()
        failures = 0
        for a in range(12):
            p = Permutation.from_cycles(13, [(a, a + 1)])
            if not dz.automorphism_check(d, p):
                failures += 1
        assert failures > 0

    def test_degree_mismatch(self):
        with pytest.raises(InvalidInputError):
            dz.automorphism_check(dz.build_p3(), Permutation.identity(5))


class TestSearch:
    def test_single_block(self):
        found = dz.search_designs(4, 1)
        assert len(found) == 1 and found[0].blocks == ((0, 1, 2, 3),)

    def test_scale_guard(self):
        with pytest.raises(ScaleError):
            dz.search_designs(10, 3)

    def test_no_design_when_divisibility_fails(self):
        assert dz.search_designs(6, 1) == []

    def test_unique_8_3(self):
        found = dz.search_designs(8, 3)
        assert len(found) == 1
        assert dz.are_isomorphic(found[0], dz.build_boolean(3))

    def test_isomorphism_checker(self):
        d = dz.build_boolean(3)
        # relabel by a random permutation: still isomorphic
        rng = random.Random(8)
        images = list(range(8))
        rng.shuffle(images)
        relabeled = dz.Design(8, [tuple(images[x] for x in b) for b in d.blocks])
        assert dz.are_isomorphic(d, relabeled)
        assert not dz.are_isomorphic(d, dz.search_designs(9, 3)[0])


class TestJson:
    def test_round_trip(self):
        for d in (dz.build_p3(), dz.build_sp_design(3, 1)):
            data = dz.design_to_json(d)
            back = dz.design_from_json(json.loads(json.dumps(data)))
            assert back.n == d.n and back.blocks == d.blocks
            assert back.labels == d.labels
            assert dz.design_to_json(back) == data

    def test_schema_keys(self):
        data = dz.design_to_json(dz.build_sp_design(3, 1))
        assert set(data) == {"name", "n", "lambda", "blocks", "labels"}
        assert data["lambda"] == 5
        assert all(len(b) == 4 for b in data["blocks"])
        assert all(set(s) <= {"0", "1"} and len(s) == 6 for s in data["labels"])

    def test_file_round_trip(self, tmp_path):
        d = dz.build_boolean(3)
        path = tmp_path / "d.json"
        dz.dump_design(d, str(path))
        assert dz.load_design(str(path)).blocks == d.blocks
