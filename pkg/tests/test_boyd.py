import math

import numpy as np
import pytest

from orlidom import boyd as B
from orlidom import young as Y

INF = math.inf


class TestDilation:
    def test_h_power(self):
        assert B.h_global(Y.PowerYoung(2.0), 4.0) == pytest.approx(2.0, rel=1e-9)

    def test_h_at_one(self, catalog):
        for name, fn in catalog.items():
            if name == "tower_2":
                continue
            assert B.h_global(fn, 1.0) == pytest.approx(1.0, rel=1e-9), name

    def test_h_nondecreasing(self):
        fn = Y.ZygmundYoung(2.0, 1.0)
        vals = [B.h_global(fn, t) for t in (0.5, 1.0, 4.0, 100.0)]
        assert all(b >= a * (1 - 1e-12) for a, b in zip(vals, vals[1:]))

    def test_h_submultiplicative(self):
        fn = Y.ZygmundYoung(2.0, 1.0)
        for s, t in ((2.0, 10.0), (10.0, 100.0), (4.0, 4.0)):
            hst = B.h_global(fn, s * t)
            assert hst <= B.h_global(fn, s) * B.h_global(fn, t) * (1 + 1e-6)

    def test_hhat_power(self):
        assert B.hhat(Y.PowerYoung(3.0), 2.0, "global") == pytest.approx(8.0, rel=1e-9)

    def test_hhat_linf_jump(self):
        assert math.isinf(B.hhat(Y.LInfYoung(), 2.0, "local"))

    def test_hhat_zygmund_local(self):
        # oracle: the symbolic limsup (st)^2 l(st) / (s^2 l(s)) -> t^2
        got = B.hhat(Y.ZygmundYoung(2.0, 1.0), 10.0, "local")
        assert got == pytest.approx(100.0, rel=0.10)


class TestIndices:
    def test_power_exact(self):
        rep = B.indices(Y.PowerYoung(2.0))
        assert (rep.i_global, rep.I_global, rep.i_local, rep.I_local) == (2, 2, 2, 2)
        assert rep.method == "exact"

    def test_linf_local_infinite(self):
        rep = B.indices(Y.LInfYoung())
        assert rep.i_local == INF and rep.I_local == INF

    def test_zygmund_numeric_vs_exact(self):
        # oracle: exact family metadata (all four indices equal q)
        rep = B.indices(Y.ZygmundYoung(3.0, -1.0), prefer="numeric")
        assert rep.method == "numeric"
        assert rep.i_local == pytest.approx(3.0, abs=0.05)
        assert rep.I_local == pytest.approx(3.0, abs=0.05)

    def test_ordering_chain_exact(self, catalog):
        for name, fn in catalog.items():
            if fn.meta is None or fn.meta.indices is None:
                continue
            rep = B.indices(fn)
            assert 1 <= rep.i_global <= rep.I_global, name
            assert 1 <= rep.i_local <= rep.I_local, name
            assert rep.i_global <= rep.i_local, name
            assert rep.I_local <= rep.I_global, name

    def test_numeric_band_contains_exact(self, finite_catalog):
        for name, fn in finite_catalog.items():
            exact = fn.meta.indices
            rep = B.indices(fn, prefer="numeric")
            for got, want in ((rep.i_local, exact[2]), (rep.I_local, exact[3])):
                if want == INF:
                    assert got == INF or got > 50, name
                else:
                    assert abs(got - want) <= max(0.1, 3 * rep.uncertainty), name

    def test_constructed_domain_report(self, params_31):
        from orlidom.construct import build_B

        dom = build_B(Y.ZygmundYoung(2.0, 1.0), params_31)
        rep = B.indices(dom.B_ab)
        assert rep.method == "numeric"
        assert rep.I_local == pytest.approx(1.2, abs=0.05)


class TestUpperIndexCondition:
    def test_strictly_below(self):
        assert B.upper_index_condition(Y.PowerYoung(2.0), 1 / 3).verdict == "yes"

    def test_boundary_is_strict(self):
        assert B.upper_index_condition(Y.PowerYoung(3.0), 1 / 3).verdict == "no"

    def test_log_corrected(self):
        # t^2 log(e+t)-type target, alpha = 0.4: upper index 2 < 2.5
        assert B.upper_index_condition(Y.ZygmundYoung(2.0, 1.0), 0.4).verdict == "yes"

    def test_conjugate_consistency_examples(self):
        assert B.conjugate_index_consistency(Y.PowerYoung(2.0), 1 / 3).verdict == "yes"
        d = B.conjugate_index_consistency(Y.PowerYoung(4.0), 1 / 3)
        assert d.verdict == "yes" and d.witness["shared_verdict"] == "no"
        assert B.conjugate_index_consistency(Y.ZygmundYoung(2.0, 1.0), 0.45).verdict == "yes"


class TestPropositionConditions:
    """Near-infinity forms of the equivalent growth conditions."""

    ALPHAS = [round(0.1 * k, 1) for k in range(1, 10)]

    def _off_boundary(self, fn, alpha):
        upper = fn.meta.indices[3]
        thr = 1.0 / alpha
        if upper == INF:
            return True
        return abs(upper - thr) > 0.1 * thr

    def test_pointwise_and_tail_agree_with_index(self, finite_catalog):
        for name, fn in finite_catalog.items():
            for alpha in self.ALPHAS:
                if not self._off_boundary(fn, alpha):
                    continue
                want = "yes" if fn.meta.indices[3] < 1.0 / alpha else "no"
                d_iii = B.pointwise_growth_condition(fn, alpha)
                d_i = B.tail_integral_condition(fn, alpha)
                d_v = B.upper_index_condition(fn, alpha)
                assert d_v.verdict == want, (name, alpha)
                assert d_iii.verdict == want, (name, alpha, d_iii.diagnostics)
                assert d_i.verdict == want, (name, alpha, d_i.diagnostics)

    def test_conjugate_duality(self, finite_catalog):
        for name, fn in finite_catalog.items():
            for alpha in (0.2, 0.5, 0.8):
                if not self._off_boundary(fn, alpha):
                    continue
                d = B.conjugate_index_consistency(fn, alpha)
                assert d.verdict == "yes", (name, alpha, d.diagnostics)


class TestLemmaIndexArithmetic:
    def test_composition_formula(self, params_31):
        # 1/I(domain) = alpha + 1/(beta I(target)) whenever the lower index of
        # the target clears 1/(beta(1-alpha)); domain index computed numerically
        from orlidom.construct import build_B

        targets = [Y.PowerYoung(q) for q in (1.6, 2.0, 3.0, 6.0, 10.0)]
        targets += [Y.ZygmundYoung(2.0, 1.0), Y.ZygmundYoung(2.0, -1.0),
                    Y.ZygmundYoung(4.0, 1.0), Y.ZygmundYoung(3.0, -1.0),
                    Y.ExpSqrtLogYoung(2.0)]
        for fn in targets:
            i_B = fn.meta.indices[3]
            assert fn.meta.indices[2] > params_31.zero_power
            dom = build_B(fn, params_31)
            rep = B.indices(dom.B_ab)
            lhs = 1.0 / rep.I_local
            rhs = params_31.alpha + 1.0 / (params_31.beta * i_B)
            assert abs(lhs - rhs) <= 0.05, (fn.label(), lhs, rhs)
