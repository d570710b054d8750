#!/usr/bin/env python3
"""High-precision reference evaluation of the gate-count lower-bound formulas.

This script is deliberately independent of the C++ implementation: it uses
mpmath at 60 significant digits and re-derives every quantity from the closed
forms. Its output is frozen into tests/fixtures/qcost_reference.json and the
C++ unit and acceptance tests compare against that file.

Usage:
    python3 tests/oracles/qcost_reference.py > tests/fixtures/qcost_reference.json
"""

import json

import mpmath as mp

mp.mp.dps = 60

LAMBDA = mp.mpf(6) / 5


def n_qsearch(size, marked):
    size = int(size)
    marked = int(marked)
    x = mp.mpf(size)
    kmax = int(mp.ceil(mp.log(x / (2 * mp.sqrt(x - 1))) / mp.log(LAMBDA))) + 4
    theta = mp.asin(mp.sqrt(mp.mpf(marked) / x))
    total = mp.mpf(0)
    survive = mp.mpf(1)
    for k in range(1, kmax + 1):
        mk = int(mp.floor(min(LAMBDA**k, mp.sqrt(x))))
        total += mp.mpf(mk) / 2 * survive
        if marked == 0:
            fail = mp.mpf(1)
        elif marked == size:
            fail = mp.mpf(0)
        else:
            fail = mp.mpf(1) / 2 + mp.sin(4 * (mk + 1) * theta) / (
                4 * (mk + 1) * mp.sin(2 * theta))
        survive *= fail
    return total


def qmin_sum(size, start=1):
    return mp.fsum(n_qsearch(size, s) / (s + 1) for s in range(start, size))


def ceil_log3_inv(eps):
    return int(mp.ceil(mp.log(1 / mp.mpf(eps)) / mp.log(3)))


def smallest_w(eps_seg):
    target = mp.log(eps_seg**2 / 2)
    w = 1
    while not (w - w * mp.log(w) <= target):
        w += 1
    return w


def ham_sim(norm1, norm_max, d, time_t, eps, ct=1):
    norm1 = mp.mpf(norm1)
    norm_max = mp.mpf(norm_max)
    d = mp.mpf(d)
    eps = mp.mpf(eps)
    gamma = eps / (mp.sqrt(2) * d**3 * time_t)
    eps_seg = eps / (90 * gamma * time_t * d**2 * mp.ceil(norm_max / gamma))
    w = smallest_w(eps_seg)
    width = norm1 - d**2 * gamma
    qubits = mp.ceil(mp.log(norm1 / gamma - d**2, 2)) - 1
    return 5 * time_t * width * w * 2 * qubits * ct, w


def qls(norm1, norm_max, d, kappa, eps):
    kappa = mp.mpf(kappa)
    eps = mp.mpf(eps)
    lg = mp.log(1 + 8 * kappa / eps)
    time_t = 2 * mp.sqrt(2) * kappa * lg
    dz = 2 * mp.pi / (kappa + 1) / mp.sqrt(lg)
    big_k = int(mp.floor((kappa + 1) / mp.pi * lg))
    alpha = 2 * mp.sqrt(mp.pi) * kappa / (kappa + 1) * mp.fsum(
        abs(k) * dz * mp.exp(-(k * dz) ** 2 / 2) for k in range(-big_k, big_k + 1))
    assert alpha > 1
    amp = mp.pi / (2 * mp.asin(1 / alpha)) + 1
    sim, _ = ham_sim(norm1, norm_max, d, time_t, eps)
    return amp * sim


def fmt(x):
    return float(mp.nstr(x, 25))


def main():
    out = {}

    grid = [
        dict(norm1=1, norm_max=1, d=1, kappa=1, eps=1e-3),
        dict(norm1=2.5, norm_max=0.5, d=2, kappa=3, eps=1e-3),
        dict(norm1=1, norm_max=1, d=1, kappa=10, eps=1e-4),
        dict(norm1=0.75, norm_max=0.25, d=4, kappa=1.7, eps=7.0710678118654757e-05),
        dict(norm1=3, norm_max=0.2, d=5, kappa=50, eps=1e-2),
    ]
    out["qls_grid"] = [dict(p, value=fmt(qls(**p))) for p in grid]

    out["qls_kappa_sweep"] = [
        dict(kappa=2**i, value=fmt(qls(1, 1, 1, 2**i, 1e-3))) for i in range(11)]
    out["qls_eps_sweep"] = [
        dict(eps=10.0**-i, value=fmt(qls(1, 1, 1, 2, 10.0**-i))) for i in range(1, 7)]

    eps_seg = mp.mpf("1e-3")
    out["w_for_eps_seg_1e-3"] = smallest_w(eps_seg)

    out["n_qsearch"] = [
        dict(size=n, marked=t, value=fmt(n_qsearch(n, t)))
        for n in (2, 4, 8, 16, 32, 64, 1000)
        for t in sorted({0, 1, 2, n // 4, n // 2, n} & set(range(n + 1)))]

    out["qmin_sum"] = [dict(size=n, value=fmt(qmin_sum(n))) for n in (2, 8, 32, 128)]

    # FindColumn-QStER with a unit QLS cost: 3*ceil(log3(1/eps))*(40 sqrt3 pi cmax/eps - 1)*sum.
    eps = mp.mpf("1e-3")
    qster = 3 * ceil_log3_inv(eps) * (40 * mp.sqrt(3) * mp.pi / eps - 1) * qmin_sum(64)
    out["qster_64_unit_qls"] = fmt(qster)

    # IsOptimal with a unit QLS cost and n - m = 100.
    is_opt = (24 * mp.sqrt(100) - 1) * (450 * mp.sqrt(6) * mp.pi / (11 * eps) - 1)
    out["is_optimal_100_unit_qls"] = fmt(is_opt)

    # Whole-iteration bound for an identity basis (slack basis) fixture.
    # n = 20, m = 10, d = 1, |A_B|_1 = 1, max|A_B| = 1, kappa = 1,
    # t_enter = 3, c_max = 1, t_u = 2, |u|_2 = 1.5, eps = delta = 1e-3.
    n, m, t_enter, c_max, t_u, u_norm = 20, 10, 3, mp.mpf(1), 2, mp.mpf("1.5")
    delta = mp.mpf("1e-3")
    part_opt = (24 * mp.sqrt(n - m) - 1) * (450 * mp.sqrt(6) * mp.pi / (11 * eps) - 1) * qls(
        1, 1, 1, 1, mp.mpf("0.1") * eps / mp.sqrt(2))
    part_col = 3 * ceil_log3_inv(eps) * (40 * mp.sqrt(3) * mp.pi * c_max / eps - 1) * qmin_sum(
        n - m) * qls(1, 1, 1, 1, eps / (10 * c_max * mp.sqrt(2)))
    part_unb = n_qsearch(m, t_u) * (50 * mp.sqrt(3) * mp.pi / (18 * delta) - 1) * qls(
        1, 1, 1, 1, delta / 10)
    part_row = n_qsearch(m, 0) * (mp.sqrt(3) * mp.pi * u_norm / (2 * delta) - 1) * qls(
        1, 1, 1, 1, delta / 2)
    out["identity_iteration"] = dict(
        n=n, m=m, t_enter=t_enter, c_max=1.0, t_u=t_u, u_norm2=1.5, eps=1e-3, delta=1e-3,
        is_optimal=fmt(part_opt), find_column=fmt(part_col), is_unbounded=fmt(part_unb),
        find_row=fmt(part_row), total=fmt(part_opt + part_col + part_unb + part_row))

    print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
