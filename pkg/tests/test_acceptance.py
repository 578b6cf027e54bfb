"""The eight acceptance criteria at their stated tolerances.

Each criterion prints one ``PASS``/``FAIL`` line.  Run the module directly
(``python3 tests/test_acceptance.py``) for just those lines, or through
pytest, which repeats them in the terminal summary.
"""
from __future__ import annotations

import math
import sys
import time

import numpy as np

from h2c.bisectors import (bisector_crossing, bisector_from_spine, bisector_residual,
                           non_tg_witness, reflect_in_meridian, side_value)
from h2c.classifier import (HullTag, TangentClass, classify_tangent_subspace, closure_oracle,
                            hull_classify, whole_space_construction)
from h2c.geodesics import distance, geodesic_through, point_at_arclength
from h2c.hermitian import canonicalize
from h2c.sampling import (apply_isometry, points_on_complex_geodesic, points_on_geodesic,
                          points_on_real_plane, random_complex_geodesic, random_geodesic,
                          random_isometry, random_point, random_real_plane, random_unit_tangent)
from h2c.tangent import TangentVector, curvature, hermitian_complement, sectional_curvature
from h2c.verify import random_no_flat_configuration, random_three_span

SEED = 20240611
LINES: list[str] = []  # echoed in the pytest terminal summary


def report(n: int, ok: bool, detail: str) -> bool:
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    LINES.append(line)
    print(line, flush=True)
    return ok


def _hermitian_pair(rng):
    p = random_point(rng)
    t = random_unit_tangent(rng, p)
    return p, t, hermitian_complement(t)


def criterion_1(rng) -> bool:
    start = time.perf_counter()
    worst = 0.0
    for _ in range(100):
        _, t, n = _hermitian_pair(rng)
        worst = max(worst, abs(sectional_curvature(t, 1j * t) + 4),
                    abs(sectional_curvature(t, n) + 1))
    elapsed = time.perf_counter() - start
    return report(1, worst < 1e-10 and elapsed < 1.0,
                  f"sectional curvature -4/-1 on 100 points, max error {worst:.2e}, {elapsed:.2f} s")


def criterion_2(rng) -> bool:
    worst = 0.0
    for _ in range(1000):
        p, t, n = _hermitian_pair(rng)
        a = rng.uniform(-1, 1)
        b = math.sqrt(1 - a * a) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        s = TangentVector(p, 1j * a * t.img + b * n.img)
        want = -(1 + 3 * a * a) * t.img + 3j * a * b * n.img
        worst = max(worst, float(np.linalg.norm(curvature(t, s, s).img - want)))
    return report(2, worst < 1e-10, f"R(t,s)s closed form on 1000 samples, max residual {worst:.2e}")


def criterion_3(rng) -> bool:
    worst = 0.0
    for _ in range(1000):
        p, t1, t2 = _hermitian_pair(rng)
        th = rng.uniform(0, 2 * np.pi)
        a, b = math.cos(th), math.sin(th)
        t3 = TangentVector(p, 1j * a * t1.img + 1j * b * t2.img)
        r1 = curvature(t1, t2, t3).img - (-1j * b * t1.img + 1j * a * t2.img)
        r2 = curvature(t1, t3, t1).img - (4j * a * t1.img + 1j * b * t2.img)
        worst = max(worst, float(np.linalg.norm(r1)), float(np.linalg.norm(r2)))
    verdicts = [classify_tangent_subspace(*random_three_span(rng)) for _ in range(1000)]
    not_closed = sum(v is TangentClass.NOT_CLOSED for v in verdicts)
    return report(3, worst < 1e-10 and not_closed == 1000,
                  f"three-dimensional curvature values max residual {worst:.2e}, "
                  f"{not_closed}/1000 spans NotClosed")


def criterion_4(rng) -> bool:
    w = non_tg_witness(2.0, 0.5, 0.5)
    err_norm = abs(w.q_norm - (-1.5 - math.sqrt(26) / 2))
    err_res = abs(w.residual - 0.75 / math.sqrt(26))
    alphas = [a for a in np.geomspace(0.2, 5.0, 11) if abs(a - 1) > 1e-3][:10]
    params = np.linspace(-0.9, 0.9, 10)  # even count, so 0 is skipped
    smallest = math.inf
    positive = 0
    for alpha in alphas:
        for r in params:
            for s in params:
                wit = non_tg_witness(float(alpha), float(r), float(s))
                smallest = min(smallest, abs(wit.residual))
                positive += wit.q_norm >= 0
    ok = err_norm < 1e-10 and err_res < 1e-10 and smallest > 1e-6 and positive == 0
    return report(4, ok, f"witness errors {err_norm:.1e}/{err_res:.1e}, "
                         f"smallest grid residual {smallest:.2e} over 1000 cells")


def criterion_5(rng) -> bool:
    worst_p = worst_v4 = 0.0
    bad = 0
    for _ in range(200):
        g, p = random_no_flat_configuration(rng)
        tr = whole_space_construction(g, p)
        b = bisector_from_spine(g)
        im2 = (tr.epsilon ** 2).imag
        at_p, at_v4 = side_value(b, tr.p_rep), side_value(b, tr.v4)
        worst_p = max(worst_p, abs(at_p + 0.25 * tr.alpha ** 2 * im2))
        worst_v4 = max(worst_v4, abs(at_v4 - 0.25 * im2))
        # the normalized residual is the same quantity up to a factor -2
        worst_p = max(worst_p, abs(bisector_residual(b, tr.p_rep) + 2 * at_p))
        if np.sign(at_p) == np.sign(at_v4) or tr.x_on_spine or tr.p_on_meridian:
            bad += 1
    ok = worst_p < 1e-9 and worst_v4 < 1e-9 and bad == 0
    return report(5, ok, f"side formulas at p / v4 max error {worst_p:.2e} / {worst_v4:.2e}, "
                         f"{200 - bad}/200 constructions with opposite signs and x off the spine")


def _tagged_scene(rng, tag: HullTag):
    n = int(rng.integers(3, 7))
    if tag is HullTag.GEODESIC:
        return points_on_geodesic(rng, random_geodesic(rng), n)
    if tag is HullTag.COMPLEX_GEODESIC:
        return points_on_complex_geodesic(rng, random_complex_geodesic(rng), n)
    return points_on_real_plane(rng, random_real_plane(rng), n)


def criterion_6(rng) -> bool:
    start = time.perf_counter()
    wrong = refuted = short = 0
    worst = 0.0
    tags = (HullTag.GEODESIC, HullTag.COMPLEX_GEODESIC, HullTag.REAL_PLANE)
    for k, tag in enumerate(tags):
        for j in range(100):
            pts = _tagged_scene(rng, tag)
            hull = hull_classify(pts)
            if hull.tag is not tag:
                wrong += 1
                continue
            o = closure_oracle(pts, hull, samples=10_000, seed=1000 * k + j)
            worst = max(worst, o.max_residual)
            refuted += o.max_residual >= 1e-8
            short += o.samples != 10_000
    whole = sum(hull_classify([random_point(rng) for _ in range(3)]).tag is HullTag.WHOLE
                for _ in range(100))
    elapsed = time.perf_counter() - start
    ok = wrong == 0 and refuted == 0 and short == 0 and whole == 100 and elapsed < 30
    return report(6, ok, f"{300 - wrong}/300 tagged sets classified, oracle max residual "
                         f"{worst:.2e} over 10^4 samples each, {whole}/100 generic triples Whole, "
                         f"{elapsed:.1f} s")


def _equidistant_probe(rng, b):
    e_neg, e_pos = b.spine.w_basis
    while True:
        w = complex(*rng.uniform(-0.6, 0.6, size=2))
        if abs(w.imag) > 0.05 and abs(w) < 0.9:
            a = canonicalize(e_neg + w * e_pos)
            return a, reflect_in_meridian(b, a)


def criterion_7(rng) -> bool:
    worst = 0.0
    for _ in range(1000):
        p = random_point(rng)
        t = random_unit_tangent(rng, p)
        g = geodesic_through(p, canonicalize(p.rep + math.tanh(1.0) * t.img))
        theta = rng.uniform(-5, 5)
        worst = max(worst, abs(distance(p, point_at_arclength(g, p, t, theta)) - abs(theta)))
    gap = 0.0
    done = 0
    while done < 100:
        b = bisector_from_spine(random_geodesic(rng))
        p, q = random_point(rng), random_point(rng)
        if np.sign(bisector_residual(b, p)) == np.sign(bisector_residual(b, q)):
            continue
        a, a2 = _equidistant_probe(rng, b)
        x = bisector_crossing(b, p, q)
        gap = max(gap, abs(distance(x, a) - distance(x, a2)))
        done += 1
    return report(7, worst < 1e-9 and gap < 1e-6,
                  f"arclength max error {worst:.2e} on 1000 samples, "
                  f"crossing equidistance max gap {gap:.2e} on 100 crossings")


def _random_scene(rng):
    kind = int(rng.integers(0, 6))
    if kind < 3:
        return _tagged_scene(rng, (HullTag.GEODESIC, HullTag.COMPLEX_GEODESIC,
                                   HullTag.REAL_PLANE)[kind])
    if kind == 3:
        return [random_point(rng) for _ in range(int(rng.integers(3, 6)))]
    if kind == 4:
        return points_on_real_plane(rng, random_real_plane(rng), 3) + [random_point(rng)]
    x = random_point(rng)
    return [x, canonicalize(x.rep)]


def criterion_8(rng) -> bool:
    broken = 0
    seen = set()
    for _ in range(100):
        pts = _random_scene(rng)
        tag = hull_classify(pts).tag
        seen.add(tag)
        perm = [pts[i] for i in rng.permutation(len(pts))]
        U = random_isometry(rng)
        moved = [apply_isometry(U, x) for x in perm]
        if hull_classify(perm).tag is not tag or hull_classify(moved).tag is not tag:
            broken += 1
    return report(8, broken == 0, f"{100 - broken}/100 scenes keep their tag under permutation "
                                  f"and isometry ({len(seen)} distinct tags seen)")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4,
            criterion_5, criterion_6, criterion_7, criterion_8]


def _rng(n: int) -> np.random.Generator:
    return np.random.default_rng([SEED, n])


def test_criterion_1_sectional_curvature():
    assert criterion_1(_rng(1))


def test_criterion_2_plane_curvature_identity():
    assert criterion_2(_rng(2))


def test_criterion_3_no_closed_three_spaces():
    assert criterion_3(_rng(3))


def test_criterion_4_bisector_witness():
    assert criterion_4(_rng(4))


def test_criterion_5_side_formulas():
    assert criterion_5(_rng(5))


def test_criterion_6_hull_oracle():
    assert criterion_6(_rng(6))


def test_criterion_7_distance_calibration():
    assert criterion_7(_rng(7))


def test_criterion_8_invariance():
    assert criterion_8(_rng(8))


if __name__ == "__main__":
    results = [c(_rng(k)) for k, c in enumerate(CRITERIA, start=1)]
    sys.exit(0 if all(results) else 1)
