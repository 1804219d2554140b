"""Smoke test for the pyftbetti extension module.

Build with `cargo build -p ftbetti-py --release`, then put the shared
library on the path as `pyftbetti.so` (see README), and run this script.
"""

import pyftbetti as fb


def trimmed(xs):
    while xs and xs[-1] == 0:
        xs = xs[:-1]
    return xs


def main():
    torus = fb.ManifoldCohomology.torus()
    model = fb.Model(torus)
    names = [g[0] for g in model.generators()]
    assert names == ["v_1", "v_a", "v_b", "v_ab", "w_1", "w_a", "w_b", "w_ab"], names

    w_ab = model.generator("w_ab")
    assert str(model.d(w_ab)) == "2 v_1 v_ab + 2 v_a v_b"
    v_a, v_b = model.generator("v_a"), model.generator("v_b")
    assert v_a * v_b == -(v_b * v_a)
    assert (v_a * v_a).is_zero()
    assert model.d(model.d(w_ab * model.generator("w_1"))).is_zero()

    table = model.betti(4)
    assert trimmed(table["dims"]) == [1, 2, 3, 5, 4, 1], table
    for i, b in enumerate(table["dims"]):
        assert b == fb.torus_betti_closed_form(4, i)

    again = fb.ManifoldCohomology.from_json(torus.to_json())
    assert again.to_json() == torus.to_json()

    sphere = fb.Model(fb.ManifoldCohomology.sphere(1))
    dims = sphere.betti(5)["dims"]
    assert [i for i, b in enumerate(dims) if b] == [0, 3], dims

    assert fb.theta_betti(6) == [1, 2, 3, 5, 7, 9, 11]
    assert fb.theta_betti(6, perturbed=False) == [1, 2, 3, 5, 7, 9, 11]
    assert fb.poincare_series([1, 1, 3, 2, 2], 5) == [1, 2, 3, 5, 7, 9]
    assert fb.matrix_rank("%%dims 2 2 2\n1 1 1/2\n2 2 -3\n") == 2

    report = fb.verify_theorem(8)
    assert report["all_passed"], report

    try:
        fb.ManifoldCohomology.sphere(0)
    except ValueError:
        pass
    else:
        raise AssertionError("sphere(0) should be rejected")

    print("pyftbetti smoke test passed")


if __name__ == "__main__":
    main()
