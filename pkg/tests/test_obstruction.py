import pytest

from splitbound.errors import (
    DegenerateFormError,
    HypothesisViolationError,
    PreconditionError,
)
from splitbound.finabel import enumerate_subgroups, make_group, subgroup_from_generators
from splitbound.obstruction import (
    ObstructionQuery,
    PartitionCandidate,
    comparison_bound,
    f_bound,
    index_divisor,
    min_splitting_exponent,
    partition_feasible,
    splitting_group_isotropic_bound,
    splitting_order_bound,
)
from splitbound.qzforms import (
    is_isotropic,
    radical,
    restrict,
    standard_module,
    zero_form,
)


def test_query_validation():
    with pytest.raises(PreconditionError):
        ObstructionQuery(4, 2, 0)
    with pytest.raises(PreconditionError):
        ObstructionQuery(2, 0, 0)
    with pytest.raises(PreconditionError):
        PartitionCandidate((1, 2))
    with pytest.raises(PreconditionError):
        PartitionCandidate((0,))


def test_order_bound():
    assert splitting_order_bound(ObstructionQuery(2, 3, 0)) == 16
    assert splitting_order_bound(ObstructionQuery(3, 2, 1)) == 1
    assert splitting_order_bound(ObstructionQuery(2, 5, 1)) == 2 ** 6
    with pytest.raises(HypothesisViolationError):
        splitting_order_bound(ObstructionQuery(2, 3, 3))


def test_f_values():
    assert f_bound(1) == 1
    assert f_bound(2) == 2
    assert f_bound(3) == 4
    assert f_bound(6) == 10
    # hand evaluation of the finite sum for r = 6: terms at v = 3..6 give 1 each
    assert f_bound(6) == 6 + 1 + 1 + 1 + 1
    for r in range(1, 30):
        assert f_bound(r + 1) >= f_bound(r)
    for e in (0, 1, 2):
        for r in range(max(1, e + 1), 20):
            assert f_bound(r + 1, e) >= f_bound(r, e)
    assert f_bound(2, 5) == 0


def test_feasibility_examples():
    q = ObstructionQuery(2, 3, 0)
    assert partition_feasible(q, PartitionCandidate((2, 1, 1)))
    assert not partition_feasible(q, PartitionCandidate((3,)))
    assert partition_feasible(ObstructionQuery(2, 2, 5), PartitionCandidate(()))


def test_min_splitting_exponent():
    total, wit = min_splitting_exponent(ObstructionQuery(2, 3, 0))
    assert total == 4 and wit.exponents == (2, 1, 1)
    total, wit = min_splitting_exponent(ObstructionQuery(2, 2, 0))
    assert total == 2
    total, wit = min_splitting_exponent(ObstructionQuery(2, 6, 0))
    assert total >= f_bound(6) == 10

    # witness is feasible and lexicographically least at its total
    q = ObstructionQuery(3, 7, 1)
    total, wit = min_splitting_exponent(q)
    assert partition_feasible(q, wit)

    def partitions_of(n, cap):
        if n == 0:
            yield ()
            return
        for first in range(1, min(n, cap) + 1):
            for rest in partitions_of(n - first, first):
                yield rest + (first,)

    best = None
    for cand in sorted(
        tuple(reversed(p)) for p in partitions_of(total, total)
    ):
        if partition_feasible(q, PartitionCandidate(cand)):
            best = cand
            break
    assert best == wit.exponents

    with pytest.raises(PreconditionError):
        min_splitting_exponent(ObstructionQuery(2, 41, 0))


def test_min_splitting_against_formula_sweep():
    for p in (2, 3):
        for r in range(1, 13):
            for e in range(0, 3):
                q = ObstructionQuery(p, r, e)
                total, wit = min_splitting_exponent(q)
                assert total >= f_bound(r, e)
                assert partition_feasible(q, wit)


def test_index_divisor():
    assert index_divisor(standard_module(make_group([4]))) == 4
    assert index_divisor(zero_form(make_group([2, 2]))) == 1
    for inv in ([2], [4], [2, 2], [8], [2, 4]):
        a = make_group(inv)
        assert index_divisor(standard_module(a)) == a.order
    # restriction to a subgroup strictly containing a Lagrangian
    w = standard_module(make_group([2, 2]))
    g = w.group
    s = subgroup_from_generators(
        g,
        [g.element((1, 0, 0, 0)), g.element((0, 0, 1, 0)), g.element((0, 1, 0, 0))],
    )
    r = restrict(w, s)
    m = index_divisor(r)
    assert m * m == s.order // radical(r).order


def test_isotropic_bound():
    w2 = standard_module(make_group([2]))
    assert splitting_group_isotropic_bound(w2, 0) == (2, [(2,)])
    w4 = standard_module(make_group([4]))
    order, types = splitting_group_isotropic_bound(w4, 1)
    assert order == 2 and types == [(2,)]
    w222 = standard_module(make_group([2, 2, 2]))
    order, types = splitting_group_isotropic_bound(w222, 0)
    assert order == 8 and types == [(2, 2, 2)]
    # every reported type is genuinely isotropic of the stated order
    for e in (0, 1):
        order, types = splitting_group_isotropic_bound(w4, e)
        for t in types:
            found = [
                s
                for s in enumerate_subgroups(w4.group)
                if s.order == order and s.sub_invariants == t and is_isotropic(w4, s)
            ]
            assert found
    with pytest.raises(DegenerateFormError):
        splitting_group_isotropic_bound(zero_form(make_group([2, 2])), 0)
    with pytest.raises(HypothesisViolationError):
        splitting_group_isotropic_bound(w4, 5)


def test_comparison_bound_routes():
    for p in (2, 3):
        for r in (2, 3):
            el = standard_module(make_group([p] * r))
            cy = standard_module(make_group([p ** r]))
            assert comparison_bound(el, cy, 0) == splitting_order_bound(
                ObstructionQuery(p, r, 0)
            )


def test_comparison_bound_rank6_reduction():
    el6 = standard_module(make_group([2, 2, 2]))
    cy8 = standard_module(make_group([8]))
    assert comparison_bound(el6, cy8, 0) == 16  # p^{r+1}, p=2, r=3


def test_comparison_bound_identical_modules():
    w = standard_module(make_group([4]))
    assert comparison_bound(w, w, 0) == 4  # one Lagrangian copy suffices


def test_comparison_bound_small_case_oracle():
    # brute-force oracle: the least order of an abelian 2-group that
    # contains copies of both Lagrangian type sets whose join is everything
    from splitbound.verify import iter_abelian_types

    def contains_joining_pair(g, types1, types2):
        by_type = {}
        for s in enumerate_subgroups(g):
            by_type.setdefault(s.sub_invariants, []).append(s)
        for t1 in types1:
            for t2 in types2:
                for s1 in by_type.get(t1, []):
                    for s2 in by_type.get(t2, []):
                        gens = [g.element(r) for r in s1.basis] + [
                            g.element(r) for r in s2.basis
                        ]
                        if subgroup_from_generators(g, gens).order == g.order:
                            return True
        return False

    for left, right in (([2, 2], [4]), ([2], [4])):
        el = standard_module(make_group(left))
        cy = standard_module(make_group(right))
        got = comparison_bound(el, cy, 0)
        _, types1 = splitting_group_isotropic_bound(el, 0)
        _, types2 = splitting_group_isotropic_bound(cy, 0)
        candidates = sorted(
            (make_group(inv) for inv in iter_abelian_types(64)),
            key=lambda g: g.order,
        )
        best = None
        for g in candidates:
            if g.order != 1 and (g.order % 2 or g.order & (g.order - 1)):
                continue  # 2-groups only: both type sets are 2-groups
            if contains_joining_pair(g, types1, types2):
                best = g.order
                break
        assert best == got
