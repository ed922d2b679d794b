#!/usr/bin/env python3
"""Smoke test for the liedsw_py extension module.

Build the extension first, then run this script from anywhere:

    cargo build -p liedsw-py
    python3 python/smoke_test.py
"""

import sys
from importlib.machinery import ExtensionFileLoader
from importlib.util import module_from_spec, spec_from_loader
from pathlib import Path


def load_module():
    root = Path(__file__).resolve().parent.parent
    candidates = [
        root / "target" / profile / name
        for profile in ("debug", "release")
        for name in ("libliedsw_py.so", "liedsw_py.so", "liedsw_py.pyd")
    ]
    for so in candidates:
        if so.exists():
            spec = spec_from_loader(
                "liedsw_py", ExtensionFileLoader("liedsw_py", str(so))
            )
            mod = module_from_spec(spec)
            spec.loader.exec_module(mod)
            return mod
    sys.exit("extension not found; run `cargo build -p liedsw-py` first")


def main():
    lie = load_module()

    # exact arithmetic and display
    p = lie.Poly("[X,Y]")
    assert str(p) == "X.Y - Y.X", str(p)
    assert (p + (-p)).is_zero()
    assert p.is_lie() and not (p * p).is_lie()
    print("ok poly arithmetic")

    # the trace kills commutators
    assert lie.Poly("X.Y").commutator(lie.Poly("Y")).trace() == "0"
    print("ok formal trace")

    # projections: n*p on Lie elements, central variant n*(n-1)*p
    q = lie.Poly("[X,[X,Y]]")
    assert lie.dsw(q) == q.scale("3")
    assert lie.dsw(q, central=True) == q.scale("6")
    assert lie.dsw(q, weights=["1", "0"]) == lie.Poly("2*X.X.Y - 4*X.Y.X + 2*Y.X.X")
    print("ok projections")

    # the canonical idempotent fixes Lie elements
    assert lie.eulerian(q) == q
    print("ok idempotent")

    # splitting and reconstruction are mutually inverse on Lie elements
    parts = lie.split(q)
    assert lie.unsplit(parts) == q
    print("ok split/unsplit")

    # BCH: four generation methods, one series
    series = lie.bch(5)
    for method in ("dynkin", "variant", "resolvent"):
        assert lie.bch(5, method) == series
    assert series.is_lie()
    print("ok bch")

    # odd Kashiwara-Vergne: the X variant has A identically zero
    a, b = lie.kv_odd(5, "X")
    assert a.is_zero() and not b.is_zero()
    print("ok kv-odd")

    # a verification suite end to end
    results = lie.verify("split", max_degree=4, seed=1)
    assert results and all(passed for _, passed in results)
    print("ok verify suite")

    print("all smoke checks passed")


if __name__ == "__main__":
    main()
