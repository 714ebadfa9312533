import math
from fractions import Fraction

import pytest
from scipy.integrate import quad

from omegasum.analytic import gstar_bound
from omegasum.pipeline import (
    COHEN_DRESS_C0,
    COHEN_DRESS_X0,
    FIORI_PSI,
    RHO_LOG_X0,
    BoundSpec,
    ConfigError,
    PipelineConfig,
    assemble_m_bounds,
    assemble_M_bounds,
    bordelles_c,
    degrade_psi,
    derive_m2,
    derive_u,
    derive_U,
    derive_W,
    integral_log_alpha_bound,
    integral_log_bound,
    interval_convert,
    parse_config,
    round_up,
    run_pipeline,
    run_table1,
    schoenfeld_iterate,
    sqrt_substituted_integral_c,
    what_if_W,
)

# the printed upstream inputs, used to pin each stage in isolation
M2_A = derive_m2(18.364, 2.0, 0.38, math.log(1e6))
M2_B = derive_m2(37.712, 2.35, 0.306, 780.0)


def in_band(value, target, lo=0.90, hi=1.005):
    return lo * target <= value <= hi * target


def test_derive_m2_published():
    assert abs(M2_A.c - 57.88) <= 0.011
    assert M2_A.k == 1.0
    assert abs(M2_B.c - 117.67) <= 0.011
    assert M2_B.k == pytest.approx(1.35)


def test_derive_m2_second_term_only():
    spec = derive_m2(3.0, 2.0, 0.0, 10.0)
    assert spec.c == pytest.approx(2**4 * 9.0 / 10.0**3)


def test_derive_m2_validation():
    with pytest.raises(ValueError):
        derive_m2(1.0, 1.0, 1.0, 10.0)


G1 = gstar_bound(0.0)
G088 = gstar_bound(0.12)
G07 = gstar_bound(0.30)


def test_derive_u_published_rows():
    k1 = BoundSpec("m2", M2_A.c, 0.0, 1.0, 0.0)
    u1 = derive_u(0.33, 0.12, k1, G1, G088, math.log(3.0))
    assert in_band(u1.c, 1501.93)
    u2 = derive_u(0.16, 0.30, k1, G1, G07, 195.0)
    assert in_band(u2.c, 812.59)
    u3 = derive_u(1 - 790.0 / 995.0, 0.30, M2_B, G1, G07, 995.0)
    assert in_band(u3.c, 1714.26)


def test_derive_u_monotone_in_inputs():
    k1 = BoundSpec("m2", M2_A.c, 0.0, 1.0, 0.0)
    base = derive_u(0.33, 0.12, k1, G1, G088, math.log(3.0)).c
    worse_g = derive_u(0.33, 0.12, k1, G1 * 1.01, G088, math.log(3.0)).c
    assert worse_g > base
    bigger_k = BoundSpec("m2", M2_A.c * 1.01, 0.0, 1.0, 0.0)
    assert derive_u(0.33, 0.12, bigger_k, G1, G088, math.log(3.0)).c > base


def test_derive_u_validation():
    k1 = BoundSpec("m2", 57.88, 0.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        derive_u(0.0, 0.12, k1, G1, G088, 10.0)
    with pytest.raises(ValueError):
        derive_u(0.33, 0.5, k1, G1, G088, 10.0)
    deep = BoundSpec("m2", 117.67, 0.0, 1.35, 780.0)
    with pytest.raises(ValueError):
        derive_u(0.5, 0.3, deep, G1, G07, 800.0)  # 800 * 0.5 < 780


def test_integral_log_bound_dominates_quadrature():
    val, _ = quad(lambda t: 1.0 / math.log(t), 2.0, 1e6, limit=200)
    assert integral_log_bound(math.log(1e6)) >= val
    with pytest.raises(ValueError):
        integral_log_bound(math.log(1000.0))


def test_power_log_integral_dominates_quadrature(rng):
    for _ in range(20):
        alpha = rng.uniform(0.5, 3.0)
        a = rng.uniform(2.0, 50.0)
        x = rng.uniform(a * 2, 1e5)
        val, _ = quad(lambda t: 1.0 / math.log(t) ** alpha, a, x, limit=200)
        bound = integral_log_alpha_bound(alpha, math.log(a), math.log(x))
        assert bound >= val


def test_sqrt_substituted_integral_dominates_quadrature(rng):
    for _ in range(20):
        alpha = rng.uniform(1.2, 2.5)
        a = rng.uniform(2.0, 30.0)
        x = rng.uniform(a * 2, 3e4)
        val, _ = quad(lambda t: t / math.log(t) ** alpha, a, x, limit=200)
        bound = sqrt_substituted_integral_c(alpha, math.log(a)) * x**2 / math.log(x) ** alpha
        assert bound >= val


def test_bordelles_published_spots():
    c135 = bordelles_c(1.35, 995.0)
    assert 1714.26 * c135 <= 1765.793 * 1.0005
    assert c135 == pytest.approx(1.0300, abs=2e-4)
    half_c2 = sqrt_substituted_integral_c(2.0, math.log(1e16))
    assert half_c2 == pytest.approx(0.5728, abs=2e-4)
    assert 2.9189 * half_c2 == pytest.approx(1.67204, abs=2e-3)


def test_derive_U_published():
    u_specs = [
        BoundSpec("u1", 1501.93, 0.0, 1.0, 0.0),
        BoundSpec("u2", 812.59, 0.0, 1.0, 195.0),
        BoundSpec("u3", 1714.26, 0.0, 1.35, 995.0),
    ]
    cuts = (math.log(2.5e14), 200.0, 1000.0)
    specs = derive_U(u_specs, cuts)
    for spec, target in zip(specs, (3071.82, 1636.07, 3541.86)):
        assert in_band(spec.c, target)
    assert specs[2].k == pytest.approx(1.35)


def test_derive_U_coverage_gap():
    with pytest.raises(ValueError):
        derive_U([BoundSpec("u", 100.0, 0.0, 1.0, 50.0)], (60.0,))


def test_derive_W_published():
    w = derive_W(3071.82, 1636.07, 3541.86, 0.35)
    assert w.harmonic_small < 0.27 and w.harmonic_small_printed == 0.27
    assert w.harmonic_mid < 0.0782 and w.harmonic_mid_printed == 0.0782
    for got, target in zip(w.pieces, (831.0, 959.0, 2260.0)):
        assert in_band(got, target)
    assert w.pieces_ceil[2] <= 2260


def test_derive_W_interchangeable_inputs():
    # pipeline-derived U constants land within the same final budget
    rep = run_pipeline()
    by_name = {n.name: n.c for n in rep.nodes}
    w = derive_W(by_name["U_1"], by_name["U_2"], by_name["U_3"], 0.35)
    assert w.pieces_ceil[2] <= 2260


def test_what_if_published():
    assert what_if_W(0.9) == pytest.approx(1.53, abs=0.01)
    assert what_if_W(0.81) == pytest.approx(0.994, abs=0.01)
    with pytest.raises(ValueError):
        what_if_W(1.0)


def test_degrade_psi_deep_threshold():
    spec = degrade_psi(FIORI_PSI, 1.0, forced_log_xh=3000.0)
    assert spec.log_x0 == 3000.0
    assert spec.c == pytest.approx(3.2e-11, rel=0.05)
    assert spec.c < 8.96237e-4


def test_degrade_psi_beta_zero():
    spec = degrade_psi(FIORI_PSI, 0.0)
    lam = 4.0 * FIORI_PSI.omega2**2 / FIORI_PSI.omega3**2
    want = FIORI_PSI.omega1 * lam**FIORI_PSI.omega2 * math.exp(
        -FIORI_PSI.omega3 * math.sqrt(lam)
    ) + math.exp(-lam)
    assert spec.c == pytest.approx(want, rel=1e-12)
    assert spec.log_x0 == pytest.approx(lam)


def test_interval_convert_worked_row():
    got = interval_convert(20.0, 21.0, 4.26760e-5, 1.0)
    assert got == pytest.approx(8.96237e-4, abs=1e-9)


def test_schoenfeld_first_row():
    res = schoenfeld_iterate(
        COHEN_DRESS_C0, Fraction(0), 7.5109e1, 4,
        math.log(COHEN_DRESS_X0), RHO_LOG_X0, COHEN_DRESS_C0, COHEN_DRESS_X0,
    )
    assert res.k == Fraction(4, 5)
    assert res.c_M == pytest.approx(7.80973e-3, rel=0.01)
    assert abs(res.x_M_log - 43) <= 2
    assert all(res.conditions.values())


def test_schoenfeld_chained_row():
    res = schoenfeld_iterate(
        7.80973e-3, Fraction(4, 5), 3.95239e-1, 3,
        43.0, RHO_LOG_X0, COHEN_DRESS_C0, COHEN_DRESS_X0,
    )
    assert res.k == Fraction(27, 20)
    assert res.c_M == pytest.approx(6.09073e-2, rel=0.01)
    assert abs(res.x_M_log - 93) <= 2


def test_schoenfeld_last_row():
    res = schoenfeld_iterate(
        4.30429e-1, Fraction(31, 16), 7.5109e1, 4,
        288.0, RHO_LOG_X0, COHEN_DRESS_C0, COHEN_DRESS_X0,
    )
    assert res.k == Fraction(47, 20)
    assert res.c_M == pytest.approx(4.88346, rel=0.01)
    assert abs(res.x_M_log - 385) <= 2


def test_schoenfeld_validation():
    with pytest.raises(ValueError):
        schoenfeld_iterate(1.0, 2.0, 1.0, 1.0, 10.0, 10.0, 1.0, 100.0)


def test_table1_rows_and_audit():
    rep = run_table1()
    assert rep.all_met
    assert len(rep.rows) == 7
    for row in rep.rows:
        assert len(row.result.conditions) == 5
        assert all(row.result.conditions.values())


def test_assemble_M_pieces():
    mb = assemble_M_bounds()
    by_name = dict((p[0], p[1]) for p in mb.pieces)
    assert by_name["sqrt_range"] == pytest.approx(1.23643, abs=5e-4)
    assert by_name["linear"] == pytest.approx(1.99057, abs=5e-3)
    assert by_name["direct"] == pytest.approx(2.16537, abs=5e-4)
    assert in_band(mb.c_2, 2.91890)
    assert in_band(mb.c_235, 4.88346)


def test_assemble_m_bounds():
    smb = assemble_m_bounds()
    assert in_band(smb.c_2, 4.591)
    assert in_band(smb.c_235, 7.397)
    assert smb.piece_mid == pytest.approx(3.01, abs=0.01)


def test_config_roundtrip_and_errors():
    cfg = parse_config("epsilon = 0.35\n# comment\nfstar_m = 500\n")
    assert cfg.epsilon == 0.35 and cfg.fstar_m == 500
    assert cfg.stage2 == PipelineConfig().stage2
    with pytest.raises(ConfigError):
        parse_config("bogus = 1\n")
    with pytest.raises(ConfigError):
        parse_config("epsilon 0.35\n")
    with pytest.raises(ConfigError):
        parse_config("epsilon = abc\n")
    with pytest.raises(ConfigError):
        parse_config("cut_points = 1,2\n")


def test_pipeline_report_all_met():
    rep = run_pipeline()
    assert rep.all_met
    text = rep.to_json()
    assert '"paper_target"' in text
    # derived values stay inside the acceptance window of their targets
    for node in rep.nodes:
        if node.target is not None:
            assert 0.90 * node.target <= node.c <= 1.005 * node.target, node.name


def test_round_up():
    assert round_up(0.26953, 2) == 0.27
    assert round_up(0.078149, 4) == 0.0782
    assert round_up(0.27, 2) == 0.27
