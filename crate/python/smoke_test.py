"""Smoke test for the yieldshape extension module.

Build and install first:  pip install --no-build-isolation ./crates/py
Then run:                  python3 python/smoke_test.py
"""

import math

import yieldshape as ys


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol


def main():
    # flat curve: closed-form discount factors and a lossless round trip
    swaps = ys.SwapCurve.flat(0.05, 30)
    curve = ys.bootstrap(swaps, strict=True)
    assert all(close(p, 1.05 ** -(n + 1)) for n, p in enumerate(curve.factors))
    assert all(close(x, 0.05) for x in ys.swap_rates_from_discounts(curve).rates)
    assert close(curve.annuity(3), sum(curve.factors[:3]))

    # zero curve conversions
    zero = ys.ZeroCurve([1, 2, 3, 4], [0.02, 0.025, 0.028, 0.03])
    discounts = zero.to_discount_curve()
    forwards = ys.forward_rates(discounts)
    growth = math.prod(1 + f for f in forwards)
    assert close(growth, 1 / discounts.factors[-1], 1e-10)
    assert ys.validate(discounts) == []
    assert close(ys.zero_yield_from_price(ys.zero_price(0.03, 7), 7), 0.03)

    # a 10 bp bump of the 1y rate lowers p_1 and raises every later factor
    bumped = ys.bootstrap(ys.SwapCurve([0.051] + [0.05] * 29))
    assert bumped.factors[0] < curve.factors[0]
    assert all(b > f for b, f in zip(bumped.factors[1:], curve.factors[1:]))

    # shape and arbitrage scan on a kinked zero curve
    kinked = ys.ZeroCurve([1, 2, 3, 4, 5, 6], [0.02, 0.026, 0.030, 0.031, 0.035, 0.037])
    verdict, margin = ys.classify_triple([(3, 0.030), (4, 0.031), (5, 0.035)])
    assert verdict == "convex" and margin > 0
    candidates = ys.scan_arbitrage(kinked, mode="all")
    assert candidates and all(c["margin"] > 0 for c in candidates)
    best = candidates[0]["butterfly"]
    assert best.kind == "zero_bond" and best.positions[1] == -1.0

    # zero butterfly P&L: non-negative on a convex triple, the reference spot value
    t1, t2, t3 = best.legs
    yields = [kinked.yield_at(t) for t in (t1, t2, t3)]
    assert all(ys.zero_butterfly_pnl(best, yields, a / 1e4, 0.5) >= -1e-12 for a in range(-500, 501, 10))
    spot = ys.zero_butterfly_pnl(ys.zero_butterfly(1, 2, 3).with_notional(2.0), [0.02, 0.03, 0.04], 0.01, 0.0)
    assert abs(spot - 9.802e-5) < 1e-8

    # swap butterfly on a convex rate-vs-annuity triple
    convex_swaps = ys.SwapCurve([0.02, 0.025, 0.04, 0.045])
    sb = ys.swap_butterfly(convex_swaps, [1, 2, 3])
    for bp in (-100, -10, -1, 1, 10, 100):
        pnl = ys.swap_butterfly_pnl(sb, convex_swaps, bp / 1e4, 1.0)
        assert pnl["carry"] > 0 and pnl["mark_to_market"] >= -1e-12

    # lemma checks: a parallel shift passes, a 1y bump breaks the ratio at n = 1
    assert all(r["status"] == "pass" for r in ys.check_lemmas(swaps, 0.01))
    report = {r["name"]: r for r in ys.check_lemmas(swaps, [0.001] + [0.0] * 29)}
    assert report["discount_ratio"]["status"] == "fail"
    assert report["discount_ratio"]["index"] == 1

    # errors surface as CurveError (a ValueError)
    try:
        ys.SwapCurve([0.05, float("inf")])
    except ys.CurveError:
        pass
    else:
        raise AssertionError("expected CurveError")

    print("yieldshape smoke test: ok")


if __name__ == "__main__":
    main()
