"""Independent oracles for the frozen expected values in the C++ tests.

Run with: python3 tests/oracles/freeze_values.py
Uses scipy quadrature, Monte Carlo, brute-force grids and scipy's LP solver;
none of it shares code with the C++ implementation.
"""
import itertools
import math

import numpy as np
from scipy import integrate, optimize, stats


def kl_quad(p_pdf, q_logpdf, p_logpdf, lo, hi):
    f = lambda x: math.exp(p_logpdf(x)) * (p_logpdf(x) - q_logpdf(x)) if p_logpdf(x) > -700 else 0.0
    return integrate.quad(f, lo, hi, limit=500, epsabs=1e-12)[0]


def main():
    rng = np.random.default_rng(12345)
    print("gaussian log density at 0:", stats.norm(0, 1).logpdf(0.0))
    print("bernoulli log mass p=.25 y=1:", math.log(0.25))

    # Exponential KL via quadrature and via Monte Carlo of the log-ratio.
    lg, lf = 10.0, 0.0188
    g = stats.expon(scale=1 / lg)
    f = stats.expon(scale=1 / lf)
    quad = kl_quad(None, f.logpdf, g.logpdf, 0, 60 / lg)
    y = rng.exponential(1 / lg, 1_000_000)
    mc = np.mean(g.logpdf(y) - f.logpdf(y))
    print("D(Exp(10)||Exp(0.0188)) quad=%.10f mc=%.6f" % (quad, mc))

    p, q = np.array([0.5, 0.5]), np.array([0.25, 0.75])
    print("discrete KL:", float(np.sum(p * np.log(p / q))))

    print("exp LLR increment lg=2 lf=1 y=.5:", stats.expon(scale=0.5).logpdf(0.5) - stats.expon().logpdf(0.5))

    # Gaussian vs exponential (cross family) by quadrature.
    print("D(Exp(1)||N(1,1)):", kl_quad(None, stats.norm(1, 1).logpdf, stats.expon().logpdf, 0, 60))

    # Rate quantities for others {1,2,4}.
    others = [1.0, 2.0, 4.0]
    fbar = 1 / sum(1 / d for d in others)
    print("F_bar{1,2,4} =", fbar)

    # u* by brute-force 1e-4 grid for d_gf=0.3, K=2.
    fk = lambda k: min(k * fbar, min(others))
    grid = np.arange(0, 1.00001, 1e-4)
    vals = [u * 0.3 + fk(2 - u) for u in grid]
    i = int(np.argmax(vals))
    print("u* grid:", grid[i], "value:", vals[i])

    # Chernoff maximin LPs via scipy.
    def maximin(gf, fg, K, truth, L=1):
        M = len(gf)
        actions = list(itertools.combinations(range(M), K))
        hyps = list(itertools.combinations(range(M), L))
        T = set(hyps[truth])
        A_ub, b_ub = [], []
        for h, alt in enumerate(hyps):
            if h == truth:
                continue
            Aset = set(alt)
            row = []
            for a in actions:
                d = sum(gf[c] for c in a if c in T and c not in Aset) + sum(fg[c] for c in a if c in Aset and c not in T)
                row.append(-d)
            A_ub.append(row + [1.0])
            b_ub.append(0.0)
        n = len(actions)
        res = optimize.linprog(c=[0] * n + [-1], A_ub=A_ub, b_ub=b_ub, A_eq=[[1] * n + [0]], b_eq=[1],
                               bounds=[(0, None)] * n + [(None, None)], method="highs")
        return res.x[:n], -res.fun

    w, v = maximin([1] * 4, [5] * 4, 1, 0)
    print("homogeneous M=4 K=1 maximin weights", np.round(w, 9), "value", v)
    w, v = maximin([0.7, 2.0], [3.0, 1.3], 1, 0)
    print("M=2 maximin", w, v)
    # Random instances: LP value vs closed form I*_m
    for trial in range(3):
        M = 5
        gf = rng.uniform(0.1, 3, M)
        fg = rng.uniform(0.1, 3, M)
        K = 2
        for m in range(M):
            oth = [fg[j] for j in range(M) if j != m]
            fb = 1 / sum(1 / d for d in oth)
            fk = lambda k: min(k * fb, min(oth))
            star = max(u * gf[m] + fk(K - u) for u in np.arange(0, 1.00001, 1e-4))
            _, v = maximin(gf, fg, K, m)
            print("  LP %.8f grid I* %.8f" % (v, star))
    # L=2, K=1 maximin on a small instance
    w, v = maximin([3.0, 6.0, 1.0, 2.0], [2.0, 2.0, 1.0, 4.0], 1, 0, L=2)
    print("L=2 maximin truth {0,1}:", np.round(w, 9), v)


if __name__ == "__main__":
    main()
