"""Acceptance criteria, one function each.

Each ``criterion_*`` returns (ok, detail) and is timed; the pytest wrappers
assert on it and a summary hook in conftest prints one PASS/FAIL line per
criterion.  ``python tests/test_acceptance.py`` runs them without pytest.
"""

import cmath
import itertools
import json
import math
import random
import sys
import time
from pathlib import Path

import numpy as np
import pytest
import scipy.linalg

HERE = Path(__file__).resolve().parent
sys.path.insert(0, str(HERE))

from hasse_forge import (EigenProgression, WittVector, build_field, build_tp_model, dim_infty,  # noqa: E402
                         frobenius_F, ghost, hurwitz_zeta, hurwitz_zeta_deriv0, bernoulli_poly,
                         log_gamma, matrix_log_q, point_counts, regdet_progression, scaling_check,
                         spec_from_json, spectrum_from_zeta, teichmuller, verify_theorem_a,
                         verschiebung_V, witt_from_int, wn_fp_iso, xi_image, zeta_from_counts,
                         zeta_of)

SPEC_DIR = HERE.parent / "specs"
SAMPLES = [2, 3, 1.5 + 0.7j, 2 - 1.3j]
RESULTS = {}


def load(name):
    return spec_from_json(json.loads((SPEC_DIR / name).read_text()))


def timed(key, title, limit=None):
    def wrap(fn):
        def run():
            t0 = time.perf_counter()
            ok, detail = fn()
            dt = time.perf_counter() - t0
            if limit is not None:
                detail += f"; {dt:.2f}s (limit {limit}s)"
                ok = ok and dt < limit
            else:
                detail += f"; {dt:.2f}s"
            RESULTS[key] = (title, ok, detail)
            return ok, detail
        run.__name__ = fn.__name__
        return run
    return wrap


# ---------------------------------------------------------------------------

@timed(1, "zeta equals the det ratio on four varieties", limit=5)
def criterion_1():
    worst, rows, poles, bad = 0.0, 0, 0, []
    for name in ["p1_f3.json", "p2_f2.json", "p1xp1_f3.json", "ec_f5.json"]:
        rep = verify_theorem_a(load(name), SAMPLES, raise_on_failure=False)
        for r in rep.rows:
            rows += 1
            if r.status == "ok":
                worst = max(worst, r.relerr)
            elif r.status in ("pole", "zero"):
                poles += 1
            else:
                bad.append((name, r.s))
    return not bad and worst <= 1e-8, f"{rows} samples, max relerr {worst:.1e}, {poles} pole/zero samples matched on vanishing loci, failures {bad}"


@timed(2, "Euler-factor grid and vanishing loci", limit=2)
def criterion_2():
    n, worst, vanish, bad = 0, 0.0, 0, 0
    for q in (2, 3, 4, 5, 7, 9):
        for i in range(5):
            for arg in (0.0, 0.9, -2.2, math.pi):
                lam = q ** (i / 2) * cmath.exp(1j * arg)
                alpha = cmath.log(lam) / math.log(q) if arg != math.pi else complex(i / 2, math.pi / math.log(q))
                extra = [alpha, alpha + 2j * math.pi / math.log(q)]
                for s in [2, 3, 1.5 + 0.7j, 2 - 1.3j] + extra:
                    res = regdet_progression(EigenProgression(lam, q), s)
                    exp = 1 - lam * q ** (-complex(s))
                    n += 1
                    if abs(exp) < 1e-12 or res.vanishing:
                        vanish += 1
                        bad += not (res.vanishing and res.value == 0 and abs(exp) < 1e-12)
                    else:
                        err = abs(res.value - exp) / abs(exp)
                        worst = max(worst, err)
                        bad += err > 1e-8
    return bad == 0 and n >= 100, f"{n} triples, {vanish} on vanishing loci, max relerr {worst:.1e}"


def supported_specs():
    return sorted(p.name for p in SPEC_DIR.glob("*.json"))


@timed(3, "anomalous dimension vanishes")
def criterion_3():
    worst, count = 0.0, 0
    for name in supported_specs():
        model = build_tp_model(spectrum_from_zeta(zeta_of(load(name))))
        for s in SAMPLES:
            for parity in (0, 1):
                worst = max(worst, abs(dim_infty(model, parity, s)))
                count += 1
    return worst <= 1e-10, f"{count} (spec, class, s) cases over {len(supported_specs())} specs, max |dim| {worst:.1e}"


@timed(4, "scaling law at delta = 1/(2 pi)")
def criterion_4():
    delta = 1 / (2 * math.pi)
    worst = 0.0
    for name in supported_specs():
        model = build_tp_model(spectrum_from_zeta(zeta_of(load(name))))
        for s in SAMPLES:
            for parity in (0, 1):
                rep = scaling_check(model, parity, s, delta)
                worst = max(worst, abs(rep.ratio - 1))
    return worst <= 1e-8, f"max |ratio - 1| {worst:.1e}"


@timed(5, "Weil bounds and the F_5 elliptic numerator")
def criterion_5():
    worst = 0.0
    for name in supported_specs():
        S = spectrum_from_zeta(zeta_of(load(name)))
        worst = max([worst] + [res for _, _, res in S.weil_residuals()])
    counts = point_counts(load("ec_f5.json"), 2)
    Z = zeta_from_counts(counts, [1, 2, 1])
    exact = Z.numerator() == [1, 3, 5]
    return worst <= 1e-9 and exact, f"max Weil residual {worst:.1e}; N = {counts.counts}, numerator {Z.numerator()}"


@timed(6, "Witt vector suite", limit=5)
def criterion_6():
    rng = random.Random(2024)
    checks = {}
    ok = True
    for p in (2, 3):
        for _ in range(1000):
            a = WittVector(p, [rng.randint(-10 ** 6, 10 ** 6) for _ in range(3)])
            b = WittVector(p, [rng.randint(-10 ** 6, 10 ** 6) for _ in range(3)])
            ga, gb = ghost(a), ghost(b)
            ok &= ghost(a + b) == [x + y for x, y in zip(ga, gb)]
            ok &= ghost(a * b) == [x * y for x, y in zip(ga, gb)]
        checks[f"ghost p={p}"] = ok
        for _ in range(50):
            a = WittVector(p, [rng.randint(-99, 99) for _ in range(3)])
            ok &= frobenius_F(verschiebung_V(a)).components == (a * p).components
        checks[f"FV p={p}"] = ok
        F = build_field(p, 2)
        for x, y in itertools.product([F.from_index(i) for i in range(F.q)], repeat=2):
            ok &= (teichmuller(x, 3) * teichmuller(y, 3)).components == teichmuller(x * y, 3).components
        checks[f"teich p={p}"] = ok
    for p, n in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1), (11, 1),
                 (13, 1), (17, 1), (19, 1), (23, 1)]:
        F = build_field(p, 1)
        vecs = [WittVector(p, c, F) for c in itertools.product([F(i) for i in range(p)], repeat=n)]
        img = [wn_fp_iso(v) for v in vecs]
        ok &= sorted(img) == list(range(p ** n))
        for (a, ia), (b, ib) in itertools.product(zip(vecs, img), repeat=2):
            ok &= wn_fp_iso(a + b) == (ia + ib) % p ** n and wn_fp_iso(a * b) == (ia * ib) % p ** n
    checks["iso"] = ok
    for p in (2, 3, 5, 7):
        F = build_field(p, 1)
        for n in (1, 2, 3):
            ok &= xi_image(p, n, F.one).components == witt_from_int(p, p, n, F).components
    checks["xi"] = ok
    return ok, "checks passed through: " + ", ".join(k for k, v in checks.items() if v)


@timed(7, "special functions")
def criterion_7():
    bern = max(abs(hurwitz_zeta(-n, a) + bernoulli_poly(n + 1, a) / (n + 1)) / max(1, abs(bernoulli_poly(n + 1, a) / (n + 1)))
               for n in range(6) for a in (0.5, 1.0, 2.3, 0.4 + 1.1j, 3 - 2j))
    h = 1e-5
    lerch = max(abs(hurwitz_zeta_deriv0(a) - (hurwitz_zeta(h, a) - hurwitz_zeta(-h, a)) / (2 * h))
                for a in (0.3, 1.0, 2.5, 0.5 + 0.5j, 4 - 3j, -0.5 + 1j))
    anchors = [abs(log_gamma(n) - math.lgamma(n)) / max(1, abs(math.lgamma(n))) for n in range(1, 30)]
    anchors += [abs(log_gamma(n + 0.5) - math.lgamma(n + 0.5)) / max(1, abs(math.lgamma(n + 0.5))) for n in range(30)]
    lg = max(anchors)
    return bern <= 1e-10 and lerch <= 1e-5 and lg <= 1e-12, \
        f"Bernoulli {bern:.1e}, Lerch vs finite difference {lerch:.1e}, log Gamma anchors {lg:.1e}"


@timed(8, "matrix log round trip with Jordan blocks")
def criterion_8():
    rng = np.random.default_rng(8)
    worst = comm = nil = 0.0
    jordan_cases = 0
    for _ in range(200):
        q = int(rng.choice([2, 3, 4, 5, 7]))
        n = int(rng.integers(1, 7))
        sizes = []
        while sum(sizes) < n:
            sizes.append(int(rng.integers(1, n - sum(sizes) + 1)))
        jordan_cases += max(sizes) > 1
        J = np.zeros((n, n), dtype=complex)
        k = 0
        for size in sizes:
            lam = q ** (int(rng.integers(0, 5)) / 2) * cmath.exp(1j * rng.uniform(-math.pi, math.pi))
            for i in range(size):
                J[k + i, k + i] = lam
                if i + 1 < size:
                    J[k + i, k + i + 1] = 1
            k += size
        Qm, _ = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
        P = Qm @ np.diag(rng.uniform(1, 2, n))
        M = P @ J @ np.linalg.inv(P)
        theta, S, U = matrix_log_q(M, q)
        scale = max(1.0, np.max(np.abs(M)))
        worst = max(worst, np.max(np.abs(scipy.linalg.expm(theta * math.log(q)) - M)) / scale)
        comm = max(comm, np.max(np.abs(S @ U - U @ S)) / scale)
        nil = max(nil, np.max(np.abs(np.linalg.matrix_power(U - np.eye(n), n))))
    return worst <= 1e-9 and comm <= 1e-9 and nil <= 1e-8, \
        f"200 matrices ({jordan_cases} with Jordan blocks), round trip {worst:.1e}, [S,U] {comm:.1e}, (U-I)^n {nil:.1e}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8]


@pytest.mark.parametrize("crit", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 9)])
def test_criterion(crit):
    ok, detail = crit()
    print(("PASS" if ok else "FAIL"), crit.__name__, detail)
    assert ok, detail


def report_lines():
    return [f"{'PASS' if ok else 'FAIL'} [{k}] {title}: {detail}" for k, (title, ok, detail) in sorted(RESULTS.items())]


if __name__ == "__main__":
    for crit in CRITERIA:
        crit()
    print("\n".join(report_lines()))
    sys.exit(0 if all(ok for _, ok, _ in RESULTS.values()) else 1)
