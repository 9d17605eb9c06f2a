import json

import pytest

from sumsetlab import (
    BudgetExceeded,
    CannotSatisfyHypothesis,
    DegreeInfeasible,
    InstanceFormatError,
    NonUniformForbidden,
    NotInShrinkRegime,
    NotPrime,
    ParameterOutOfRange,
    PrimeField,
    SplitMix64,
    SumsetInstance,
    certificate_check,
    certificate_check_literal,
    compute_bounds,
    coverage_check,
    coverage_sweep,
    coverage_threshold,
    enumerate_restricted_sumset,
    instance_from_dict,
    instance_to_dict,
    load_instance,
    parameter_hypothesis_met,
    random_instance,
    run_experiment,
    shrink_sizes,
    uniform_forbidden,
)


def eh_instance(p=7, upto=4):
    """Sums of two distinct elements of {0, ..., upto-1} mod p."""
    A = tuple(range(upto))
    return SumsetInstance(p, [A, A], uniform_forbidden(2, {0}))


# ----------------------------------------------------------------------
# instances
# ----------------------------------------------------------------------

def test_instance_normalization():
    inst = SumsetInstance(7, [[3, 1, 2]], None)
    assert inst.sets == ((1, 2, 3),)
    assert inst.n == 1
    assert inst.uniform_m == 0
    assert inst.uniform_size == 3


def test_instance_missing_pairs_default_empty():
    inst = SumsetInstance(7, [[0, 1], [0, 1]], {(0, 1): [2]})
    assert inst.forbidden[(1, 0)] == frozenset()
    assert inst.uniform_m is None  # sizes 1 and 0


def test_instance_validation():
    with pytest.raises(InstanceFormatError):
        SumsetInstance(7, [[0, 1], []])
    with pytest.raises(InstanceFormatError):
        SumsetInstance(7, [[0, 7]])
    with pytest.raises(InstanceFormatError):
        SumsetInstance(7, [[0, 0, 1]])
    with pytest.raises(InstanceFormatError):
        SumsetInstance(7, [[0, 1]], {(0, 0): [1]})
    with pytest.raises(InstanceFormatError):
        SumsetInstance(7, [[0, 1], [2, 3]], {(0, 1): [9]})
    with pytest.raises(NotPrime):
        SumsetInstance(6, [[0, 1]])


# ----------------------------------------------------------------------
# enumeration
# ----------------------------------------------------------------------

def test_enumerate_pairwise_distinct():
    assert sorted(enumerate_restricted_sumset(eh_instance())) == [1, 2, 3, 4, 5]


def test_enumerate_unrestricted():
    inst = SumsetInstance(7, [(0, 1, 2), (0, 1, 2)])
    assert sorted(enumerate_restricted_sumset(inst)) == [0, 1, 2, 3, 4]


def test_enumerate_forbidden_everything():
    inst = SumsetInstance(5, [(0,), (0,)], uniform_forbidden(2, {0}))
    assert enumerate_restricted_sumset(inst) == set()


def test_enumerate_single_set():
    inst = SumsetInstance(11, [(1, 5, 9)])
    assert sorted(enumerate_restricted_sumset(inst)) == [1, 5, 9]


def test_enumerate_asymmetric_constraint():
    # only S_12 is set; the reversed difference stays legal
    inst = SumsetInstance(7, [(0, 1), (0, 1)], {(0, 1): [1]})
    # forbidden: a1 - a2 = 1, i.e. (1, 0); remaining sums: 0, 1, 1+1=2
    assert sorted(enumerate_restricted_sumset(inst)) == [0, 1, 2]


def test_enumerate_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_restricted_sumset(eh_instance(), budget=15)


def test_enumerate_wraps_mod_p():
    inst = SumsetInstance(5, [(3, 4), (3, 4)], uniform_forbidden(2, {0}))
    assert sorted(enumerate_restricted_sumset(inst)) == [2]  # 3 + 4 = 7 = 2 mod 5


# ----------------------------------------------------------------------
# bounds
# ----------------------------------------------------------------------

def test_bounds_erdos_heilbronn():
    inst = eh_instance()
    card = len(enumerate_restricted_sumset(inst))
    rep = compute_bounds(inst, card)
    assert rep.brute_cardinality == card == 5
    assert rep.thm2.value == 5 and rep.thm2.hypothesis_met
    assert rep.thm1.value == 5 and rep.thm1.hypothesis_met
    assert rep.thm3.value == 5 and rep.thm3.hypothesis_met
    assert not rep.old.hypothesis_met


def test_bounds_thm3_min():
    inst = SumsetInstance(13, [tuple(range(5))] * 2, uniform_forbidden(2, {0}))
    rep = compute_bounds(inst)
    assert rep.thm3.value == 7
    assert rep.brute_cardinality is None


def test_bounds_floor_value():
    inst = SumsetInstance(7, [tuple(range(4))] * 3)
    rep = compute_bounds(inst)
    assert rep.old.value == 7  # 3*floor(6/3) + 1
    assert rep.old.hypothesis_met
    assert rep.thm3.value == 7  # min(p, 10)
    assert not rep.thm1.hypothesis_met  # p = 7 <= 9


def test_bounds_near_uniform_sizes():
    inst = SumsetInstance(11, [(0, 1, 2), (0, 1, 2, 3)], uniform_forbidden(2, {0}))
    rep = compute_bounds(inst)
    assert rep.thm2.value == (2 + 3) - 2 + 1
    assert rep.thm1.value is None and rep.thm3.value is None


def test_bounds_sizes_spread_too_far():
    inst = SumsetInstance(11, [(0, 1), (0, 1, 2, 3)])
    assert compute_bounds(inst).thm2.value is None


def test_bounds_non_uniform_forbidden():
    inst = SumsetInstance(7, [(0, 1), (0, 1)], {(0, 1): [0]})
    rep = compute_bounds(inst)
    assert all(entry.value is None for entry in rep.entries())


def test_bounds_cauchy_davenport_specialization():
    # m = 0 reduces the near-uniform bound to sum(k_j) - n + 1
    inst = SumsetInstance(11, [(0, 1, 2), (0, 2, 4), (1, 2, 3)])
    rep = compute_bounds(inst)
    assert rep.thm2.value == 3 + 3 + 3 - 3 + 1


def test_bounds_distinct_elements_specialization():
    # S_ij = {0}, all A_j = A: the bound becomes n|A| - n^2 + 1
    for n, size in [(2, 4), (3, 5)]:
        A = tuple(range(size))
        inst = SumsetInstance(13, [A] * n, uniform_forbidden(n, {0}))
        assert compute_bounds(inst).thm2.value == n * size - n * n + 1


def test_improvement_over_floor_bound():
    hits = 0
    for p in (5, 7, 11, 13):
        for n in (2, 3):
            for m in (0, 1):
                for k in range(1, min(7, p + 1)):
                    if not (p > m * n and p <= n * (k - 1) - m * n * (n - 1)):
                        continue
                    hits += 1
                    inst = SumsetInstance(
                        p, [tuple(range(k))] * n, uniform_forbidden(n, set(range(m)))
                    )
                    rep = compute_bounds(inst)
                    assert rep.old.hypothesis_met
                    assert rep.thm3.value == p
                    assert p >= rep.old.value
                    if (p - 1) % n:
                        assert p > rep.old.value
                    else:
                        assert p == rep.old.value
    assert hits > 0


# ----------------------------------------------------------------------
# certificates
# ----------------------------------------------------------------------

def test_certificate_erdos_heilbronn():
    cert = certificate_check(eh_instance())
    assert cert.coefficient_integer == 4
    assert cert.coefficient_mod_p.value == 4
    assert cert.claimed_bound == 5
    assert cert.certificate_valid


def test_certificate_vanishes_mod_two():
    inst = SumsetInstance(2, [(0, 1), (0, 1)], uniform_forbidden(2, {0}))
    cert = certificate_check(inst)
    assert cert.coefficient_integer == 2
    assert cert.coefficient_mod_p.value == 0
    assert not cert.certificate_valid


def test_certificate_requires_uniform_forbidden():
    inst = SumsetInstance(5, [(0, 1), (0, 1, 2)], {(0, 1): [0]})
    with pytest.raises(NonUniformForbidden):
        certificate_check(inst)


def test_certificate_literal_asymmetric():
    inst = SumsetInstance(5, [(0, 1), (0, 1, 2)], {(0, 1): [0]})
    cert = certificate_check_literal(inst)
    assert cert.coefficient_integer == -1
    assert cert.coefficient_mod_p.value == 4
    assert cert.claimed_bound == 3
    assert cert.certificate_valid
    assert sorted(enumerate_restricted_sumset(inst)) == [1, 2, 3]


def test_certificate_degree_infeasible():
    inst = SumsetInstance(7, [(0,), (1,)], uniform_forbidden(2, {0}))
    with pytest.raises(DegreeInfeasible):
        certificate_check(inst)
    with pytest.raises(DegreeInfeasible):
        certificate_check_literal(inst)


def test_certificate_literal_budget():
    with pytest.raises(BudgetExceeded):
        certificate_check_literal(eh_instance(), budget=3)


def test_literal_agrees_with_leading_form():
    # on uniform instances only the top-degree part of the constraint
    # polynomial reaches the target, so the two routes agree exactly
    for seed in range(8):
        inst = random_instance(seed, 11, 2, 4, 1)
        lead = certificate_check(inst)
        literal = certificate_check_literal(inst)
        assert lead.coefficient_integer == literal.coefficient_integer
        assert lead.claimed_bound == literal.claimed_bound


def test_certificate_soundness_on_seeded_instances():
    for seed in range(25):
        inst = random_instance(seed, 11, 2, 3, 1)
        cert = certificate_check(inst)
        if cert.certificate_valid:
            card = len(enumerate_restricted_sumset(inst))
            assert card >= cert.claimed_bound


# ----------------------------------------------------------------------
# shrink construction
# ----------------------------------------------------------------------

def test_shrink_examples():
    assert shrink_sizes(7, 3, 0, 4) == (3, 3, 3)
    assert shrink_sizes(11, 3, 0, 6) == (5, 4, 4)
    assert shrink_sizes(7, 2, 1, 6) == (5, 5)


def test_shrink_regime_errors():
    with pytest.raises(NotInShrinkRegime):
        shrink_sizes(13, 2, 1, 5)  # p too large for the regime
    with pytest.raises(NotInShrinkRegime):
        shrink_sizes(2, 2, 1, 5)  # p <= mn


def test_shrink_invariants():
    for p in (5, 7, 11, 13, 17):
        for n in (2, 3, 4):
            for m in (0, 1, 2):
                for k in range(2, 12):
                    if not (p > m * n and p <= n * (k - 1) - m * n * (n - 1)):
                        continue
                    sizes = shrink_sizes(p, n, m, k)
                    kp = (p - 1) // n + m * (n - 1) + 1
                    assert sum(sz - 1 for sz in sizes) - m * n * (n - 1) == p - 1
                    assert all(sz in (kp, kp + 1) for sz in sizes)
                    assert max(sizes) <= k
                    assert sum(1 for sz in sizes if sz == kp + 1) == (p - 1) % n


def test_shrunk_instance_meets_bound():
    # shrink, then actually enumerate subsets of the first sizes_j elements
    p, n, m, k = 7, 2, 1, 6
    sizes = shrink_sizes(p, n, m, k)
    A = tuple(range(k))
    inst = SumsetInstance(
        p, [A[:sz] for sz in sizes], uniform_forbidden(n, {0})
    )
    assert len(enumerate_restricted_sumset(inst)) >= p


# ----------------------------------------------------------------------
# coverage threshold
# ----------------------------------------------------------------------

def test_threshold_values():
    assert coverage_threshold(7, 1) == 5
    assert coverage_threshold(11, 1) == 7
    assert coverage_threshold(13, 1) == 7
    assert coverage_threshold(11, 2) == 9
    assert coverage_threshold(13, 2) == 9


def test_threshold_is_least_size():
    for p in (7, 11, 13, 17):
        for m in (1, 2, 3):
            t = coverage_threshold(p, m)
            q = 4 * m * p + 4 * m * (m - 3) + 2
            assert (t + m - 1) ** 2 >= q
            if t > 1:
                assert (t - 1 + m - 1) ** 2 < q


def test_threshold_validation():
    with pytest.raises(ParameterOutOfRange):
        coverage_threshold(7, 0)
    with pytest.raises(ParameterOutOfRange):
        coverage_threshold(1, 1)


def test_coverage_check_covered():
    rep = coverage_check(7, {0}, {0, 1, 2, 3, 4})
    assert rep.n == 2
    assert rep.hypothesis_met
    assert rep.covered and rep.missing == ()


def test_coverage_check_single_summand():
    rep = coverage_check(7, {0}, {0, 1, 2})
    assert rep.n == 1
    assert not rep.hypothesis_met
    assert not rep.covered
    assert rep.missing == (3, 4, 5, 6)


def test_coverage_check_zero_summands():
    # |A| <= m forces n = 0; the empty sum covers only 0
    rep = coverage_check(7, {0, 1, 2}, {0, 1})
    assert rep.n == 0
    assert not rep.hypothesis_met
    assert rep.missing == (1, 2, 3, 4, 5, 6)


def test_coverage_exhaustive_small():
    sweep = coverage_sweep(7, 1)
    assert len(sweep.rows) == 21
    assert all(row.hypothesis_met and row.covered for row in sweep.rows)
    assert sweep.failures() == []


def test_coverage_sample_deterministic():
    a = coverage_sweep(11, 1, mode="sample", count=10, seed=3)
    b = coverage_sweep(11, 1, mode="sample", count=10, seed=3)
    assert a.rows == b.rows


def test_coverage_sweep_validation():
    with pytest.raises(ParameterOutOfRange):
        coverage_sweep(7, 1, size=8)
    with pytest.raises(ParameterOutOfRange):
        coverage_sweep(7, 1, mode="nope")
    with pytest.raises(BudgetExceeded):
        coverage_sweep(13, 1, budget=100)


# ----------------------------------------------------------------------
# seeded generation
# ----------------------------------------------------------------------

def test_splitmix_reference_vectors():
    # published first outputs of the splitmix64 stream
    r = SplitMix64(0)
    assert [r.next64() for _ in range(3)] == [
        16294208416658607535, 7960286522194355700, 487617019471545679,
    ]
    assert SplitMix64(1234567).next64() == 6457827717110365317


def test_splitmix_sample():
    assert SplitMix64(42).sample(10, 4) == SplitMix64(42).sample(10, 4)
    assert SplitMix64(7).sample(5, 5) == (0, 1, 2, 3, 4)
    assert SplitMix64(7).sample(5, 0) == ()
    with pytest.raises(ValueError):
        SplitMix64(7).sample(3, 4)


def test_random_instance_deterministic():
    a = random_instance(99, 13, 3, 4, 1)
    b = random_instance(99, 13, 3, 4, 1)
    assert a == b


def test_random_instance_golden():
    # generated once from the documented stream and pinned
    inst = random_instance(1, 7, 2, 3, 1)
    assert inst.sets == ((0, 1, 2), (0, 4, 5))
    assert inst.forbidden[(0, 1)] == frozenset({0})
    assert inst.forbidden[(1, 0)] == frozenset({3})


def test_random_instance_shapes():
    inst = random_instance(5, 11, 3, 4, 2)
    assert inst.sizes == (4, 4, 4)
    assert inst.uniform_m == 2
    assert len(inst.forbidden) == 6


def test_random_instance_unsatisfiable_hypothesis():
    with pytest.raises(CannotSatisfyHypothesis):
        random_instance(1, 2, 2, 1, 1, enforce="thm3")  # p = 2 <= mn = 2


def test_random_instance_validation():
    with pytest.raises(ParameterOutOfRange):
        random_instance(1, 7, 2, 9, 1)  # k > p
    with pytest.raises(ParameterOutOfRange):
        random_instance(1, 7, 0, 3, 1)


def test_parameter_hypothesis():
    assert parameter_hypothesis_met("none", 2, 5, 5, 5)
    assert parameter_hypothesis_met("thm3", 7, 2, 4, 1)
    assert not parameter_hypothesis_met("thm3", 2, 2, 1, 1)
    assert parameter_hypothesis_met("thm1", 7, 2, 4, 1)
    assert not parameter_hypothesis_met("thm1", 7, 2, 6, 1)
    with pytest.raises(ValueError):
        parameter_hypothesis_met("thm9", 7, 2, 4, 1)


# ----------------------------------------------------------------------
# experiment harness
# ----------------------------------------------------------------------

def test_experiment_soundness_small():
    rows = run_experiment(7, 40, (5, 7, 11), (2, 3), (0, 1), 5, enforce="thm3")
    assert len(rows) == 40
    for row in rows:
        assert row.sound
        assert row.violations == ()


def test_experiment_deterministic():
    a = run_experiment(3, 10, (5, 7), (2,), (0, 1), 4)
    b = run_experiment(3, 10, (5, 7), (2,), (0, 1), 4)
    assert [(r.p, r.n, r.k, r.m, r.cardinality) for r in a] == \
        [(r.p, r.n, r.k, r.m, r.cardinality) for r in b]


def test_experiment_zero_trials():
    assert run_experiment(1, 0, (5,), (2,), (0,), 3) == []


def test_experiment_unsatisfiable():
    with pytest.raises(CannotSatisfyHypothesis):
        run_experiment(1, 1, (5,), (2,), (3,), 4, enforce="thm3")  # mn = 6 > 5


# ----------------------------------------------------------------------
# instance documents
# ----------------------------------------------------------------------

def test_document_round_trip():
    inst = random_instance(4, 11, 3, 3, 1)
    doc = instance_to_dict(inst)
    assert instance_from_dict(doc) == inst


def test_document_canonical_shape():
    inst = SumsetInstance(7, [(2, 0), (1, 3)], {(0, 1): [4], (1, 0): []})
    doc = instance_to_dict(inst)
    assert doc == {"p": 7, "sets": [[0, 2], [1, 3]], "forbidden": {"1,2": [4]}}


@pytest.mark.parametrize("doc", [
    "not a dict",
    {"sets": [[0]]},
    {"p": 7},
    {"p": 7.5, "sets": [[0]]},
    {"p": True, "sets": [[0]]},
    {"p": 7, "sets": []},
    {"p": 7, "sets": [[0]], "extra": 1},
    {"p": 7, "sets": [["x"]]},
    {"p": 7, "sets": [[0], [1]], "forbidden": {"1": [0]}},
    {"p": 7, "sets": [[0], [1]], "forbidden": {"1,1": [0]}},
    {"p": 7, "sets": [[0], [1]], "forbidden": {"0,1": [0]}},
    {"p": 7, "sets": [[0], [1]], "forbidden": {"1,3": [0]}},
    {"p": 7, "sets": [[0], [1]], "forbidden": {"1,2": [7]}},
    {"p": 7, "sets": [[0], [1]], "forbidden": {"1,2": 3}},
])
def test_document_validation(doc):
    with pytest.raises(InstanceFormatError):
        instance_from_dict(doc)


def test_document_composite_modulus():
    with pytest.raises(NotPrime):
        instance_from_dict({"p": 6, "sets": [[0, 1]]})


def test_load_instance(tmp_path):
    path = tmp_path / "inst.json"
    inst = eh_instance()
    path.write_text(json.dumps(instance_to_dict(inst)))
    assert load_instance(path) == inst
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    with pytest.raises(InstanceFormatError):
        load_instance(bad)


# ----------------------------------------------------------------------
# soundness of the bound family on exhaustive small cases
# ----------------------------------------------------------------------

def test_bounds_sound_on_seeded_uniform_instances():
    field_cache = {}
    for seed in range(30):
        for p, n, k, m in [(5, 2, 3, 1), (7, 2, 4, 1), (7, 3, 3, 0), (11, 3, 4, 1)]:
            field_cache.setdefault(p, PrimeField(p))
            inst = random_instance(seed, p, n, k, m)
            card = len(enumerate_restricted_sumset(inst))
            rep = compute_bounds(inst, card)
            for entry in rep.entries():
                if entry.hypothesis_met and entry.value is not None:
                    assert card >= entry.value, (seed, p, n, k, m, entry)
