from __future__ import annotations

from fractions import Fraction

import pytest

from saw_lab.core.errors import MVMError
from saw_lab.enumeration.engine import WalkClass
from saw_lab.mvm import maps
from saw_lab.mvm.audit import MVMInstance, audit_identity
from saw_lab.mvm.maps import (
    fifth_root_floor,
    map_insert_z,
    map_unfold_replace,
    pattern_swap_instance,
    reachable_endpoints,
    unfold_injectivity_check,
)
from saw_lab.patterns.occurrences import PatternType, embed_patterns
from saw_lab.patterns.shells import shell_of


def toy_instance(**kwargs) -> MVMInstance:
    return MVMInstance(
        name="toy",
        domain=[1, 2],
        image={1: frozenset({"a", "b"}), 2: frozenset({"b"})},
        codomain=["a", "b", "c"],
        **kwargs,
    )


class TestAudit:
    def test_contracting_factors(self):
        report = audit_identity(toy_instance())
        assert report.lambda_sum == 2
        assert report.lambda_max == Fraction(3, 2)
        assert report.worst == "b"
        assert report.max_preimages == 2
        assert report.identity_holds and report.inequality_holds
        assert report.passed

    def test_preimage_bound(self):
        report = audit_identity(toy_instance(preimage_bound=1))
        assert report.bound_violations == 1
        assert not report.passed
        assert report.warnings

    def test_per_image_bound(self):
        report = audit_identity(toy_instance(preimage_bound={"b": 2}))
        assert report.bound_holds

    def test_expected_claims(self):
        report = audit_identity(toy_instance(
            expected_sizes={1: 2, 2: 2},
            expected_lambda={"a": Fraction(1, 2), "b": Fraction(1)},
        ))
        assert report.size_mismatches == 1
        assert report.lambda_mismatches == 1
        assert not report.claims_hold

    def test_empty_image_rejected(self):
        inst = toy_instance()
        inst.image[2] = frozenset()
        with pytest.raises(MVMError):
            audit_identity(inst)

    def test_image_outside_codomain_rejected(self):
        inst = toy_instance()
        inst.image[2] = frozenset({"z"})
        with pytest.raises(MVMError):
            audit_identity(inst)

    def test_empty_domain_is_vacuous(self):
        report = audit_identity(MVMInstance("empty", [], {}, ["a"]))
        assert report.passed
        assert report.worst is None
        assert any("vacuous" in w for w in report.warnings)

    def test_to_dict(self):
        doc = audit_identity(toy_instance()).to_dict()
        assert doc["lambda_max"] == "3/2"
        assert doc["domain_size"] == "2"
        assert doc["passed"] is True

    def test_chunked_accumulation_matches_single_pass(self):
        inst = map_insert_z(2, 8, 2, j_range=range(1, 5))
        whole = audit_identity(inst)
        assert audit_identity(inst, chunk_size=7) == whole
        assert audit_identity(inst, workers=2, chunk_size=50) == whole

    def test_invalid_chunking(self):
        with pytest.raises(MVMError):
            audit_identity(toy_instance(), chunk_size=0)
        with pytest.raises(MVMError):
            audit_identity(toy_instance(), workers=0)


@pytest.mark.parametrize("n, root", [(0, 0), (1, 1), (31, 1), (32, 2), (243, 3)])
def test_fifth_root_floor(n, root):
    assert fifth_root_floor(n) == root


class TestInsertZ:
    def test_audit(self):
        report = audit_identity(map_insert_z(2, 4, 2))
        assert report.passed
        assert report.domain_size > 0
        assert report.max_preimages <= 2

    def test_explicit_j_range(self):
        report = audit_identity(map_insert_z(2, 6, 3, j_range=[1, 2, 3]))
        assert report.passed

    def test_several_preimages_within_bound(self):
        # +1,+1,+1,+2,+1,+2,+1,+1 has z-renewals at 2 and 4: preimages for j = 2 and j = 3
        report = audit_identity(map_insert_z(2, 8, 2, j_range=range(1, 5)))
        assert report.max_preimages == 2
        assert report.bound_holds
        assert report.passed

    def test_single_renewal_budget_keeps_maps_injective(self):
        report = audit_identity(map_insert_z(2, 8, 1, j_range=range(1, 5)))
        assert report.max_preimages == 1
        assert report.passed

    def test_invalid(self):
        with pytest.raises(MVMError):
            map_insert_z(2, 4, -1)
        with pytest.raises(MVMError):
            map_insert_z(2, 4, 2, j_range=[3])


class TestUnfoldReplace:
    def test_every_endpoint(self):
        for x in reachable_endpoints(2, 3):
            report = audit_identity(map_unfold_replace(2, 3, x))
            assert report.passed, (x, report.warnings)

    @pytest.fixture
    def short_bridge_lists(self, mocker):
        """Drop the first bridge of every bridge list the images are built from."""
        original = maps._class_codes

        def drop_first(dim, n, walk_class):
            codes = original(dim, n, walk_class)
            if walk_class is WalkClass.BRIDGE and len(codes) > 1:
                return codes[1:]
            return codes

        mocker.patch.object(maps, "_class_codes", side_effect=drop_first)
        maps._bridge_projection_counts.cache_clear()
        yield
        maps._bridge_projection_counts.cache_clear()

    def test_image_sizes_are_counted_independently(self, short_bridge_lists):
        reports = [audit_identity(map_unfold_replace(2, 4, x)) for x in reachable_endpoints(2, 4)]
        assert sum(r.size_mismatches for r in reports) > 0
        assert not all(r.passed for r in reports)

    def test_reachable_endpoints_are_in_the_half_space(self):
        points = reachable_endpoints(2, 2)
        assert points == sorted(points)
        assert all(p[0] > 0 for p in points)

    def test_endpoint_dimension(self):
        with pytest.raises(MVMError):
            map_unfold_replace(2, 3, (1, 0, 0))

    def test_unfold_injectivity(self):
        report = unfold_injectivity_check(2, 6)
        assert report.passed
        assert report.walks > 0 and report.endpoints > 0


class TestPatternSwap:
    @pytest.fixture
    def shell(self, pair):
        return shell_of(embed_patterns((PatternType.I,) * 3, pair), pair)

    def test_single_swap(self, shell, pair):
        inst = pattern_swap_instance([shell], shell.length(2, 1), pair, swaps=1)
        report = audit_identity(inst)
        assert report.domain_size == 3
        assert report.codomain_size == 3
        assert report.lambda_max == 1
        assert report.passed

    def test_double_swap(self, shell, pair):
        inst = pattern_swap_instance([shell], shell.length(3, 0), pair, swaps=2)
        report = audit_identity(inst)
        assert report.domain_size == 3
        assert report.lambda_max == 3
        assert report.passed

    def test_swap_count(self, shell, pair):
        with pytest.raises(MVMError):
            pattern_swap_instance([shell], shell.length(3, 0), pair, swaps=3)
