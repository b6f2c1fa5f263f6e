from itertools import permutations

import dataclasses
import numpy as np
import pytest

from stlie.homology import uce
from stlie.lie import bracket_vec, build_sl, is_perfect
from stlie.rings import (AlgebraSpec, preset_dual_numbers, preset_gf,
                         preset_matrix, quotient_Rm, radical)
from stlie.steinberg import (CheckResult, GuardExceeded, SuiteReport, T_elem,
                             build_hat, build_psi, build_st, compute_h2,
                             coset_index, formula_suite, klein_partition,
                             lift_generators, nu_suite, offending_span,
                             pair_sign, recenter, t_elem, verify_cocycle,
                             verify_main_theorem)

_cache = {}


def pipeline(R, n):
    """sl, cover, recentered lifts, offending data, st model (memoised)."""
    key = (R.name, n)
    if key not in _cache:
        sl = build_sl(R, n)
        cover = uce(sl.lie)
        lifts, rep = recenter(lift_generators(cover, sl))
        assert rep.ok, rep.failures()
        off = offending_span(lifts)
        model = build_st(lifts, off)
        _cache[key] = (sl, cover, lifts, off, model)
    return _cache[key]


def test_klein_partition_is_the_frozen_one():
    classes = klein_partition()
    assert len(classes) == 6
    seen = set()
    for cls in classes:
        assert len(cls) == 4
        seen |= set(cls)
    assert len(seen) == 24
    assert classes[0] == ((1, 2, 3, 4), (1, 4, 3, 2), (3, 2, 1, 4),
                          (3, 4, 1, 2))


def test_coset_index_values_and_invariance():
    assert coset_index(1, 2, 3, 4) == 1
    assert coset_index(3, 4, 1, 2) == 1
    assert coset_index(2, 1, 3, 4) == 4
    assert coset_index(3, 4, 2, 1) == 4
    assert coset_index(2, 4, 3, 1) == 4
    # theta is constant on left cosets: swapping (i k), (j l), or both
    # within positions never moves the class
    for (i, j, k, l) in permutations((1, 2, 3, 4)):
        c = coset_index(i, j, k, l)
        assert coset_index(k, j, i, l) == c
        assert coset_index(i, l, k, j) == c
        assert coset_index(k, l, i, j) == c
    # all six values occur
    assert {coset_index(*q) for q in permutations((1, 2, 3, 4))} == set(range(1, 7))


def test_pair_sign():
    assert pair_sign(1, 2) == 1
    assert pair_sign(2, 1) == -1
    assert pair_sign(2, 3) == 1


def test_suite_report_bookkeeping():
    rep = SuiteReport("demo")
    rep.add("first", True)
    rep.add("second", False, "broke")
    assert not rep.ok
    assert [c.name for c in rep.failures()] == ["second"]
    assert [c.passed for c in rep] == [True, False]
    assert isinstance(next(iter(rep)), CheckResult)


def test_lift_rejects_bad_spare_index():
    sl = build_sl(preset_gf(3), 3)
    cover = uce(sl.lie)
    with pytest.raises(ValueError):
        lift_generators(cover, sl, choice_k=lambda i, j: i)


def test_recentered_lift_is_independent_of_spare_index():
    # recentering wipes out the central ambiguity of the wedge lift, so
    # two different spare-index policies must land on the same family
    for R, n in ((preset_gf(2), 4), (preset_gf(3), 3)):
        sl = build_sl(R, n)
        cover = uce(sl.lie)
        f = R.field
        default, rep1 = recenter(lift_generators(cover, sl))
        other = lift_generators(
            cover, sl,
            choice_k=lambda i, j, n=n: max(k for k in range(n)
                                           if k not in (i, j)))
        other, rep2 = recenter(other)
        assert rep1.ok and rep2.ok
        assert f.equal(default.X, other.X), (R.name, n)


def test_build_st_requires_recentering():
    sl = build_sl(preset_gf(3), 3)
    cover = uce(sl.lie)
    raw = lift_generators(cover, sl)
    fixed, _ = recenter(raw)
    off = offending_span(fixed)
    with pytest.raises(ValueError):
        build_st(raw, off)


def test_offending_family_dimensions():
    _, _, lifts, off, _ = pipeline(preset_gf(2), 4)
    assert off.family_dims == {"same_pair": 0, "same_row": 0,
                               "same_col": 0, "disjoint": 6}
    assert off.subspace.dim == 6 and off.central

    _, _, _, off3, _ = pipeline(preset_gf(3), 3)
    assert off3.family_dims == {"same_pair": 0, "same_row": 3, "same_col": 3}
    assert off3.subspace.dim == 6

    _, _, _, off23, _ = pipeline(preset_gf(2), 3)
    assert off23.subspace.dim == 0

    _, _, _, off5, _ = pipeline(preset_gf(2), 5)
    assert off5.subspace.dim == 0
    assert off5.family_dims["disjoint"] == 0


def test_st_presentation_and_dimensions():
    for R, n, dim_st in ((preset_gf(2), 4, 15), (preset_gf(3), 3, 8),
                         (preset_gf(2), 5, 24)):
        sl, cover, _, _, model = pipeline(R, n)
        assert model.presentation.ok, model.presentation.failures()
        assert model.dim == dim_st == sl.lie.dim
        assert model.phi_kernel.dim == 0
        assert is_perfect(model.lie)


def test_t_subspace_complements_the_generators():
    for R, n in ((preset_gf(2), 4), (preset_gf(3), 3)):
        _, _, _, _, model = pipeline(R, n)
        assert model.t_subspace.dim == model.dim - n * (n - 1) * R.dim


def test_st_kernel_realises_cyclic_homology():
    # R = F_2[x]/x^2 has HC_1 = 1; st carries it as ker(st -> sl),
    # spanned by the values of t
    from stlie.cyclic import hc1_dim
    R = preset_dual_numbers(2)
    sl, cover, lifts, off, model = pipeline(R, 4)
    f = R.field
    assert hc1_dim(R) == 1
    assert model.phi_kernel.dim == 1
    assert model.dim == sl.lie.dim + 1
    E = f.eye(2)
    from stlie.linalg import Subspace
    tvals = [t_elem(model, E[lam], E[mu]) for lam in range(2)
             for mu in range(2)]
    span = Subspace.from_vectors(f, np.vstack(tvals), ambient=model.dim)
    assert span == model.phi_kernel
    # each t value is invisible downstairs
    for v in tvals:
        assert f.is_zero(f.matmul(model.phi, v.reshape(-1, 1)))


def test_t_vanishes_over_fields():
    _, _, _, _, model = pipeline(preset_gf(3), 3)
    f = model.ring.field
    assert f.is_zero(t_elem(model, [1], [1]))
    assert f.is_zero(t_elem(model, [2], [1]))


def test_T_bilinearity_and_hand_bracket():
    _, _, _, _, model = pipeline(preset_gf(3), 3)
    f = model.ring.field
    # T_12(1,1) covers e11 - e22; its adjoint action has the classical
    # weights: +1 on X_13, -1 on X_31, -2 on X_21
    T = T_elem(model, 0, 1, [1], [1])
    x13 = model.gen(0, 2, [1])
    assert f.equal(bracket_vec(model.lie, T, x13), x13)
    x31 = model.gen(2, 0, [1])
    assert f.equal(bracket_vec(model.lie, T, x31), f.reduce(-x31))
    x21 = model.gen(1, 0, [1])
    assert f.equal(bracket_vec(model.lie, T, x21), f.reduce(-2 * x21))


def test_formula_and_nu_suites_pass():
    for R, n in ((preset_gf(2), 4), (preset_gf(3), 3),
                 (preset_dual_numbers(2), 4)):
        _, _, lifts, _, model = pipeline(R, n)
        rep = formula_suite(model)
        assert rep.ok, rep.failures()
        nu = nu_suite(lifts)
        assert nu.ok, nu.failures()


def test_psi_generator_table_n4():
    R = preset_gf(2)
    _, _, _, _, model = pipeline(R, 4)
    Rq = quotient_Rm(R, radical(4))
    assert Rq.dim == 1
    psi = build_psi(model, Rq)
    assert psi.value_dim == 6
    g = psi.gen_table
    assert g.shape == (12, 12, 6)
    pairs = [(i, j) for i in range(4) for j in range(4) if i != j]
    pos = {p: a for a, p in enumerate(pairs)}
    # (X_12, X_34) lands in the coset-1 slot, (X_21, X_34) in slot 4
    assert g[pos[(0, 1)], pos[(2, 3)]].tolist() == [1, 0, 0, 0, 0, 0]
    assert g[pos[(1, 0)], pos[(2, 3)]].tolist() == [0, 0, 0, 1, 0, 0]
    assert g[pos[(2, 3)], pos[(0, 1)]].tolist() == [1, 0, 0, 0, 0, 0]
    # sharing an index kills the value
    assert np.all(np.array(g[pos[(0, 1)], pos[(0, 2)]], dtype=int) == 0)
    assert np.all(np.array(g[pos[(0, 1)], pos[(1, 2)]], dtype=int) == 0)


def test_psi_generator_table_n3_signs():
    R = preset_gf(3)
    _, _, _, _, model = pipeline(R, 3)
    Rq = quotient_Rm(R, radical(3))
    psi = build_psi(model, Rq)
    g = psi.gen_table
    pairs = [(i, j) for i in range(3) for j in range(3) if i != j]
    pos = {p: a for a, p in enumerate(pairs)}
    # same row i = 1: slot 0 with sign(j, l)
    assert g[pos[(0, 1)], pos[(0, 2)]].tolist() == [1, 0, 0, 0, 0, 0]
    assert g[pos[(0, 2)], pos[(0, 1)]].tolist() == [2, 0, 0, 0, 0, 0]
    # same column j = 1: slot 3 with sign(i, k)
    assert g[pos[(1, 0)], pos[(2, 0)]].tolist() == [0, 0, 0, 1, 0, 0]
    assert g[pos[(2, 0)], pos[(1, 0)]].tolist() == [0, 0, 0, 2, 0, 0]
    # opposed pairs see nothing
    assert np.all(np.array(g[pos[(0, 1)], pos[(1, 0)]], dtype=int) == 0)


def test_cocycle_certificate_and_mutation_detection():
    R = preset_gf(2)
    _, cover, _, _, model = pipeline(R, 4)
    psi = build_psi(model, quotient_Rm(R, radical(4)))
    rep = verify_cocycle(psi)
    assert rep.ok, rep.failures()
    # corrupting one entry must break the certificate
    mut = psi.tensor.copy()
    a, b, v = np.argwhere(np.array(mut, dtype=int) != 0)[0]
    mut[a, b, v] = 0
    broken = dataclasses.replace(psi, tensor=mut)
    bad = verify_cocycle(broken)
    failed = {c.name for c in bad.failures()}
    assert "psi is alternating" in failed
    assert "cocycle identity on all basis triples" in failed


def test_hat_extension_certificates():
    R = preset_gf(3)
    _, cover, _, _, model = pipeline(R, 3)
    psi = build_psi(model, quotient_Rm(R, radical(3)))
    hat = build_hat(psi, cover.dim)
    assert hat.report.ok, hat.report.failures()
    assert hat.lie.dim == model.dim + 6 == cover.dim == 14


def test_hat_with_zero_values_is_st_itself():
    # for n = 3 over F_2 the coefficient ring R_3 vanishes, so the
    # extension adds nothing and closedness is inherited from st
    R = preset_gf(2)
    _, cover, _, _, model = pipeline(R, 3)
    Rq = quotient_Rm(R, radical(3))
    assert Rq.dim == 0
    psi = build_psi(model, Rq)
    assert psi.value_dim == 0
    hat = build_hat(psi, cover.dim, h2_st=0)
    assert hat.report.ok, hat.report.failures()
    assert hat.lie.dim == model.dim == cover.dim


def test_verify_main_theorem_gf3_n3():
    v = verify_main_theorem(preset_gf(3), 3)
    assert v.passed, v.failures()
    assert (v.ring, v.field, v.n) == ("gf(3)", "gf(3)", 3)
    assert v.dims["h2_st"] == 6
    assert v.dims["W"] == 6
    assert v.dims["st"] == 8
    assert v.dims["uce"] == 14
    assert v.dims["st_hat"] == 14
    assert v.dims["hc1"] == 0
    assert len(v.checks) == len(set(c.name for c in v.checks))


def test_verify_main_theorem_n5_skips_cocycle():
    v = verify_main_theorem(preset_gf(2), 5)
    assert v.passed, v.failures()
    assert v.dims["h2_st"] == 0
    assert "st_hat" not in v.dims
    assert not any(c.name.startswith("cocycle") for c in v.checks)
    assert not any(c.name.startswith("nu") for c in v.checks)


def test_verify_main_theorem_rejects_broken_ring():
    from stlie.fields import Field
    f = Field(2)
    mul = f.zeros((3, 3, 3))
    mul[0, 0, 0] = 1
    mul[0, 1, 1] = mul[1, 0, 1] = 1
    mul[0, 2, 2] = mul[2, 0, 2] = 1
    mul[1, 2, 0] = mul[2, 1, 0] = 1   # a b = b a = 1 breaks associativity
    bad = AlgebraSpec(f, 3, ("1", "a", "b"), 0, mul, name="broken")
    v = verify_main_theorem(bad, 3)
    assert not v.passed
    assert v.checks[0].name == "ring axioms"
    assert not v.checks[0].passed
    assert len(v.checks) == 1


def test_guard_on_dimension_cap():
    with pytest.raises(GuardExceeded) as exc:
        verify_main_theorem(preset_matrix(2, 2), 5)
    assert exc.value.dim_sl == 99 and exc.value.cap == 80
    assert "99" in str(exc.value)
    with pytest.raises(GuardExceeded):
        compute_h2(preset_matrix(2, 2), 5, "sl")
    # raising the cap clears the guard (build only, not a full verify)
    out = compute_h2(preset_matrix(2, 2), 5, "sl", max_dim=99)
    assert out["match"]


def test_compute_h2_dictionaries():
    out = compute_h2(preset_gf(2), 4, "st")
    assert out["measured_h2"] == 6 and out["predicted_h2"] == 6
    assert out["match"] and out["target"] == "st" and out["dim"] == 15

    out = compute_h2(preset_gf(2), 4, "sl")
    assert out["measured_h2"] == 6 and out["match"]

    # dual numbers over F_2 at n = 3: R_3 = 0 but HC_1 = 1 survives in sl
    out = compute_h2(preset_dual_numbers(2), 3, "sl")
    assert out["measured_h2"] == 1 and out["predicted_h2"] == 1
    out = compute_h2(preset_dual_numbers(2), 3, "st")
    assert out["measured_h2"] == 0 and out["match"]

    with pytest.raises(ValueError):
        compute_h2(preset_gf(2), 2, "st")
    with pytest.raises(ValueError):
        compute_h2(preset_gf(2), 4, "both")
