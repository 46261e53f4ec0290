"""Acceptance criteria, one check per criterion.

Run under pytest (lines are printed in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

import itertools
import random
import time
from fractions import Fraction

import numpy as np
import pytest
from scipy import constants

from doccalc.amplitudes import TEST_GRAPHS, checkerboard_evolve, checkerboard_path_oracle, penrose_count
from doccalc.doc import doc_handle, leibniz_defect, xdx_commutator
from doccalc.geometry import (
    background,
    bianchi_cyclic,
    bianchi_sum,
    dA,
    dg,
    defect_formula,
    gauge_curvature,
    hamiltonian_flow,
    levi_civita_index_free,
    levi_civita_nested,
    metric_table,
    poisson_leibniz_defect,
    random_poly,
    var,
)
from doccalc.iterants import (
    EtaElement,
    Iterant,
    boost_apply,
    lorentz_boost,
    matmul2,
    perm_conjugation_check,
    perm_decompose,
    pythagorean_velocity,
    quaternion_check,
    reconstruct,
    to_matrix,
    velocity_addition,
)
from doccalc.ncalg import FREE, Expression, GaussianRational, J, atom, normalize, random_expression
from doccalc.walks import (
    STENCIL,
    ChaosConfig,
    ComplexField1D,
    SingularStart,
    WalkConfig,
    binomial_profile,
    brownian_ensemble,
    chaos_orbit,
    compton_residual,
    delta_grid,
    diffusion_fd_evolve,
    em_lorentz_step,
    jones_mass_symbolic,
    planck_numbers,
    quantum_walk_evolve,
    random_em_state,
    refinement_study,
)

RESULTS: list[str] = []


def c01_leibniz():
    rng = random.Random(1)
    D = doc_handle()
    start = time.perf_counter()
    bad = sum(not leibniz_defect(D, random_expression(rng), random_expression(rng)).is_zero()
              for _ in range(500))
    dt = time.perf_counter() - start
    return bad == 0 and dt < 10, f"500 pairs, {bad} nonzero defects, {dt:.2f} s"


def c02_xdx():
    x = atom("X")
    free = str(xdx_commutator(x))
    comm = xdx_commutator(x, commuting_series=True)
    xe = Expression.of(x)
    diff = xe.prime() - xe
    from doccalc.doc import commuting_series_table
    ok = free == "J(X'X' - 2X'X + XX)" and comm == normalize(J * diff * diff, commuting_series_table())
    return ok, f"free {free}; commuting {comm}"


def c03_gauge():
    bg, ab = background("gauge", 3), background("gauge", 3, abelian=True)
    bad = 0
    for i, j in itertools.product(range(1, 4), repeat=2):
        ai, aj = var("A", i), var("A", j)
        bad += gauge_curvature(bg, i, j) != normalize(dA(i, j) - dA(j, i) + ai * aj - aj * ai, bg.table)
        bad += gauge_curvature(ab, i, j) != normalize(dA(i, j) - dA(j, i), ab.table)
    return bad == 0, f"9 pairs x 2 options, {bad} mismatches"


def c04_levi_civita():
    bg = background("metric", 3)
    bad = 0
    for i, j, k in itertools.product(range(1, 4), repeat=3):
        got = levi_civita_nested(bg, i, j, k)
        bad += got != dg(i, j, k) - dg(k, i, j) + dg(j, i, k)
        bad += got != levi_civita_index_free(bg, i, j, k)
    return bad == 0, f"27 triples, {bad} mismatches"


def c05_bianchi():
    bad = sum(not bianchi_cyclic(i, j, k, t).is_zero()
              for i, j, k in itertools.product(range(1, 4), repeat=3) for t in (FREE, metric_table()))
    rng = random.Random(5)
    pool = (atom("X", 1), atom("X", 2), atom("Xd", 1), atom("Xd", 3), atom("g", 1, 2), atom("Y"))
    for _ in range(100):
        a, b, c = (random_expression(rng, pool) for _ in range(3))
        bad += not bianchi_sum(a, b, c, metric_table()).is_zero()
    return bad == 0, f"27 triples x 2 tables + 100 substitutions, {bad} nonzero"


def c06_poisson():
    rng = random.Random(6)
    bad = 0
    for _ in range(200):
        a, b = random_poly(rng), random_poly(rng)
        flow = ([random_poly(rng)], [random_poly(rng)])
        bad += poisson_leibniz_defect(a, b, flow) != defect_formula(a, b, flow)
    ham = 0
    for n in (1, 2):
        for _ in range(20):
            h = random_poly(rng, n, degree=4)
            a, b = random_poly(rng, n), random_poly(rng, n)
            ham += not poisson_leibniz_defect(a, b, hamiltonian_flow(h)).is_zero()
    return bad == 0 and ham == 0, f"200 triples: {bad} mismatches; 40 Hamiltonian flows: {ham} nonzero"


def c07_brownian():
    start = time.perf_counter()
    run = brownian_ensemble(WalkConfig(k=1.0, tau=1.0, steps=1000, walkers=100_000, seed=0))
    dt = time.perf_counter() - start
    rel = abs(run.slope - 1.0)
    return rel < 0.05 and dt < 30, f"slope {run.slope:.4f} (|err| {rel:.2%}), {dt:.1f} s"


def c08_diffusion():
    p = diffusion_fd_evolve(delta_grid(41), 20)
    ok = list(p) == binomial_profile(20, 41) and all(isinstance(v, Fraction) for v in p)
    return ok, f"20 steps, sum = {sum(p)}"


def c09_quantum_walk():
    # exact check with Gaussian-rational weights, then the float evolution to rounding level
    w = [GaussianRational(Fraction(z.real), Fraction(z.imag)) for z in STENCIL]
    v = GaussianRational(Fraction(3, 10), Fraction(2, 5))
    exact = sum((c * v for c in w), GaussianRational(0)) == v
    const = quantum_walk_evolve(ComplexField1D(np.full(32, 0.3 + 0.4j), 0.5, 0.25), 25)
    drift = float(np.max(np.abs(const.psi - (0.3 + 0.4j))))
    fixed = exact and drift <= 1e-15
    errs = [lv.l2_error for lv in refinement_study(levels=3)]
    mono = errs[0] > errs[1] > errs[2]
    return fixed and mono, f"fixed point exact {exact}, float drift {drift:.1e}; errors " + \
        ", ".join(f"{e:.2e}" for e in errs)


def c10_planck():
    p = planck_numbers(constants.hbar, constants.c, constants.G)
    rng = np.random.default_rng(10)
    worst = max(compton_residual(m, constants.hbar, constants.c) for m in 10 ** rng.uniform(-35, 5, 100))
    ok = p.residual < 1e-12 and worst < 1e-12 and jones_mass_symbolic()
    return ok, f"Planck residual {p.residual:.1e}, Compton max {worst:.1e}"


def c11_chaos():
    worst = 0.0
    cases = [(1.0, (1.0, 3.0)), (0.5, (0.1, 0.5)), (2.0, (0.3, 1.1)), (-1.0, (0.2, 0.7, 1.3)),
             (3.0, (0.5, -0.4, 0.9, 2.0)), (0.1, (1.0, 0.5))]
    for k, init in cases:
        res = chaos_orbit(ChaosConfig(k, init, maxsteps=200))
        y, n = res.orbit, len(init) - 1
        for t in range(len(y) - n - 1):
            new = y[t + n + 1]
            r = abs(new * (y[t + 1] - 2 * y[t]) - (k - y[t + n] * y[t]))
            worst = max(worst, r / max(1.0, max(abs(v) for v in y[t:t + n + 2]) ** 2))
    try:
        chaos_orbit(ChaosConfig(1.0, (0.75, 1.5)))
        fired = False
    except SingularStart:
        fired = True
    return worst < 1e-9 and fired, f"max scaled residual {worst:.1e}; singular start detected: {fired}"


def c12_checkerboard():
    start = time.perf_counter()
    bad = 0
    for source in (None, (1, 0), (GaussianRational(1), GaussianRational(0, 1))):
        lat = checkerboard_evolve(12, source)
        for a, b in lat.points():
            pl, pr = lat.psi(a, b)
            bad += pl != checkerboard_path_oracle((a, b), "L", source)
            bad += pr != checkerboard_path_oracle((a, b), "R", source)
    dt = time.perf_counter() - start
    return bad == 0 and dt < 60, f"91 points x 3 sources, {bad} mismatches, {dt:.1f} s"


def _brute_colorings(g):
    names = list(g.edges)
    return sum(all(len({c[e] for e in rot}) == 3 for rot in g.rotation.values())
               for c in (dict(zip(names, cols)) for cols in itertools.product(range(3), repeat=len(names))))


def c13_penrose():
    vals = {}
    ok = True
    for name, make in TEST_GRAPHS.items():
        g = make()
        r = penrose_count(g)
        vals[name] = str(r.value)
        ok &= r.planar and r.value == _brute_colorings(g)
    ok &= vals["theta"] == "6" and vals["bridged"] == "0" and len(vals) >= 5
    return ok, ", ".join(f"{k}={v}" for k, v in vals.items())


def c14_iterants():
    rng = random.Random(14)

    def rnd():
        return Fraction(rng.randint(-50, 50), rng.randint(1, 9))

    bad = 0
    for _ in range(10_000):
        m1 = [[rnd(), rnd()], [rnd(), rnd()]]
        m2 = [[rnd(), rnd()], [rnd(), rnd()]]
        p, q = EtaElement(Iterant(m1[0][0], m1[1][1]), Iterant(m1[0][1], m1[1][0])), \
            EtaElement(Iterant(m2[0][0], m2[1][1]), Iterant(m2[0][1], m2[1][0]))
        bad += to_matrix(p) != m1
        bad += to_matrix(p * q) != matmul2(m1, m2)
        bad += to_matrix(p + q) != [[m1[i][j] + m2[i][j] for j in range(2)] for i in range(2)]
        det = m1[0][0] * m1[1][1] - m1[0][1] * m1[1][0]
        bad += p * p.conjugate() != EtaElement(Iterant(det, det), Iterant(0, 0))
    quat = all(quaternion_check(False).values()) and all(quaternion_check(True).values())
    boosts = 0
    for _ in range(200):
        k1, k2 = Fraction(rng.randint(1, 30), rng.randint(1, 30)), Fraction(rng.randint(1, 30), rng.randint(1, 30))
        v1, v2 = pythagorean_velocity(k1), pythagorean_velocity(k2)
        boosts += lorentz_boost(v1) * lorentz_boost(v2) != lorentz_boost(velocity_addition(v1, v2))
        t, x = rnd(), rnd()
        tp, xp = boost_apply(lorentz_boost(v1), (t, x))
        boosts += tp * tp - xp * xp != t * t - x * x
    ok = bad == 0 and quat and boosts == 0
    return ok, f"10^4 pairs: {bad} failures; quaternions {quat}; boosts/intervals: {boosts} failures"


def c15_perm_theorem():
    rng = random.Random(15)
    bad = 0
    for n in range(1, 6):
        for _ in range(3):
            m = [[rng.randint(-20, 20) for _ in range(n)] for _ in range(n)]
            rec = reconstruct(perm_decompose(m), n)
            bad += any(rec[i, j] != m[i][j] for i in range(n) for j in range(n))
    inter = 0
    for _ in range(100):
        n = rng.randint(1, 6)
        perm = list(range(n))
        rng.shuffle(perm)
        inter += not perm_conjugation_check([Fraction(rng.randint(-9, 9)) for _ in range(n)], tuple(perm)).ok
    return bad == 0 and inter == 0, f"reconstruction failures {bad}; intertwining failures {inter}/100"


def c16_em():
    rng = np.random.default_rng(16)
    worst = max(em_lorentz_step(random_em_state(rng)).residual for _ in range(100))
    return worst < 1e-12, f"max residual {worst:.1e}"


CRITERIA = [
    (1, "Leibniz suite", c01_leibniz),
    (2, "[X,DX] normal form", c02_xdx),
    (3, "gauge curvature", c03_gauge),
    (4, "Levi-Civita reduction", c04_levi_civita),
    (5, "Bianchi cyclic sum", c05_bianchi),
    (6, "Poisson defect identity", c06_poisson),
    (7, "Brownian diffusion constant", c07_brownian),
    (8, "diffusion stencil", c08_diffusion),
    (9, "quantum walk consistency", c09_quantum_walk),
    (10, "Planck identities", c10_planck),
    (11, "chaos recursion", c11_chaos),
    (12, "checkerboard path sums", c12_checkerboard),
    (13, "Penrose coloring count", c13_penrose),
    (14, "iterants", c14_iterants),
    (15, "matrix decomposition", c15_perm_theorem),
    (16, "EM reconstruction", c16_em),
]


def _line(num, name, ok, detail):
    return f"{'PASS' if ok else 'FAIL'}  criterion {num:2d}  {name}: {detail}"


@pytest.mark.parametrize("num,name,fn", CRITERIA, ids=[f"c{n:02d}" for n, _, _ in CRITERIA])
def test_criterion(num, name, fn):
    ok, detail = fn()
    line = _line(num, name, ok, detail)
    RESULTS.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for num, name, fn in CRITERIA:
        ok, detail = fn()
        failed += not ok
        print(_line(num, name, ok, detail), flush=True)
    raise SystemExit(1 if failed else 0)
